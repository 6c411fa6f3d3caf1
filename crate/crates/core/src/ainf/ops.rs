use num_traits::One;

use super::morphism::Morphism;
use super::{AInf, AInfError};
use crate::novikov::Exponent;

/// A failed A∞ relation (or unit axiom) on specific basis inputs.
#[derive(Clone, Debug)]
pub struct Violation {
    pub arity: usize,
    pub objects: Vec<String>,
    pub inputs: Vec<String>,
    pub output: Morphism,
}

fn sign(exp: i64) -> i64 {
    if exp.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// All ways to put `k` indistinguishable items into the slots marked `true`.
pub(crate) fn distributions(slots: &[bool], k: usize) -> Vec<Vec<usize>> {
    fn go(slots: &[bool], k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let i = cur.len();
        if i == slots.len() {
            if k == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let cap = if slots[i] { k } else { 0 };
        for c in 0..=cap {
            cur.push(c);
            go(slots, k - c, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(slots, k, &mut Vec::new(), &mut out);
    out
}

/// Evaluates the arity-`d` A∞ relation on `a`.
pub(crate) fn relation<C: AInf + ?Sized>(
    cat: &C,
    a: &[&Morphism],
    degrees: &[i32],
) -> Result<Morphism, AInfError> {
    let d = a.len();
    let mut total = cat.zero(a[0].src, a[d - 1].tgt);
    let mut dagger = 0i64;
    for n in 0..d {
        for m in 1..=d - n {
            let inner = cat.mu(&a[n..n + m])?;
            if inner.is_zero() {
                continue;
            }
            let mut args: Vec<&Morphism> = a[..n].to_vec();
            args.push(&inner);
            args.extend_from_slice(&a[n + m..]);
            let outer = cat.mu(&args)?;
            total = total.add(&outer.scale_int(sign(dagger)));
        }
        dagger += degrees[n] as i64 - 1;
    }
    Ok(total)
}

fn for_each_tuple<F>(dims: &[usize], mut f: F) -> Result<(), AInfError>
where
    F: FnMut(&[usize]) -> Result<(), AInfError>,
{
    if dims.contains(&0) {
        return Ok(());
    }
    let mut idx = vec![0; dims.len()];
    loop {
        f(&idx)?;
        let mut k = dims.len();
        loop {
            if k == 0 {
                return Ok(());
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < dims[k] {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Checks every A∞ relation of arity `1..=max_arity` on basis inputs.
/// An empty result means the structure is valid.
pub fn check_relations<C: AInf + ?Sized>(
    cat: &C,
    max_arity: usize,
) -> Result<Vec<Violation>, AInfError> {
    let n = cat.num_objects();
    let mut out = Vec::new();
    for d in 1..=max_arity {
        for_each_tuple(&vec![n; d + 1], |path| {
            let dims: Vec<usize> = (0..d).map(|k| cat.hom_dim(path[k], path[k + 1])).collect();
            for_each_tuple(&dims, |bs| {
                let ms: Vec<Morphism> = (0..d)
                    .map(|k| cat.basis(path[k], path[k + 1], bs[k]))
                    .collect();
                let refs: Vec<&Morphism> = ms.iter().collect();
                let degs: Vec<i32> = (0..d)
                    .map(|k| cat.degree(path[k], path[k + 1], bs[k]))
                    .collect();
                let r = relation(cat, &refs, &degs)?;
                if !r.is_zero() {
                    out.push(Violation {
                        arity: d,
                        objects: path.iter().map(|&p| cat.object_name(p)).collect(),
                        inputs: (0..d)
                            .map(|k| cat.basis_name(path[k], path[k + 1], bs[k]))
                            .collect(),
                        output: r,
                    });
                }
                Ok(())
            })
        })?;
    }
    Ok(out)
}

/// Checks the strict-unit axioms on basis inputs up to arity `max_arity`.
pub fn check_units<C: AInf + ?Sized>(
    cat: &C,
    max_arity: usize,
) -> Result<Vec<Violation>, AInfError> {
    let n = cat.num_objects();
    let mut out = Vec::new();
    let violation = |d: usize, path: &[usize], names: Vec<String>, m: Morphism| Violation {
        arity: d,
        objects: path.iter().map(|&p| cat.object_name(p)).collect(),
        inputs: names,
        output: m,
    };
    for x in 0..n {
        let Some(e) = cat.unit(x) else { continue };
        let r = cat.mu(&[&e])?;
        if !r.is_zero() {
            out.push(violation(1, &[x, x], vec!["e".into()], r));
        }
        for y in 0..n {
            for b in 0..cat.hom_dim(x, y) {
                let m = cat.basis(x, y, b);
                let r = cat.mu(&[&e, &m])?.sub(&m);
                if !r.is_zero() {
                    out.push(violation(
                        2,
                        &[x, x, y],
                        vec!["e".into(), cat.basis_name(x, y, b)],
                        r,
                    ));
                }
            }
            for b in 0..cat.hom_dim(y, x) {
                let m = cat.basis(y, x, b);
                let r = cat
                    .mu(&[&m, &e])?
                    .sub(&m.scale_int(sign(cat.degree(y, x, b) as i64)));
                if !r.is_zero() {
                    out.push(violation(
                        2,
                        &[y, x, x],
                        vec![cat.basis_name(y, x, b), "e".into()],
                        r,
                    ));
                }
            }
        }
        for d in 3..=max_arity.min(cat.max_arity()) {
            for pos in 0..d {
                for_each_tuple(&vec![n; d], |others| {
                    // Objects along the path, with the unit inserted at `pos`.
                    let mut path = Vec::with_capacity(d + 1);
                    path.extend_from_slice(&others[..pos]);
                    path.push(x);
                    path.push(x);
                    path.extend_from_slice(&others[pos..d - 1]);
                    let dims: Vec<usize> = (0..d)
                        .map(|k| {
                            if k == pos {
                                1
                            } else {
                                cat.hom_dim(path[k], path[k + 1])
                            }
                        })
                        .collect();
                    for_each_tuple(&dims, |bs| {
                        let ms: Vec<Morphism> = (0..d)
                            .map(|k| {
                                if k == pos {
                                    e.clone()
                                } else {
                                    cat.basis(path[k], path[k + 1], bs[k])
                                }
                            })
                            .collect();
                        let refs: Vec<&Morphism> = ms.iter().collect();
                        let r = cat.mu(&refs)?;
                        if !r.is_zero() {
                            out.push(Violation {
                                arity: d,
                                objects: path.iter().map(|&p| cat.object_name(p)).collect(),
                                inputs: (0..d)
                                    .map(|k| {
                                        if k == pos {
                                            "e".into()
                                        } else {
                                            cat.basis_name(path[k], path[k + 1], bs[k])
                                        }
                                    })
                                    .collect(),
                                output: r,
                            });
                        }
                        Ok(())
                    })
                })?;
            }
        }
    }
    Ok(out)
}

/// Refuses elements whose powers need not become small: some component has
/// filtration below 1 and a coefficient of nonpositive valuation.
pub(crate) fn check_convergent<C: AInf + ?Sized>(
    cat: &C,
    delta: &Morphism,
) -> Result<(), AInfError> {
    for (&b, c) in delta.coeffs() {
        let low_filtration =
            cat.filtration(delta.src, delta.tgt, b) < num_rational::BigRational::one();
        if low_filtration && !c.val_floor().is_positive() {
            return Err(AInfError::DivergentSum(
                cat.basis_name(delta.src, delta.tgt, b),
            ));
        }
    }
    Ok(())
}

/// `Σ_d μ^d(δ, …, δ)`.
pub fn mc_residual<C: AInf + ?Sized>(cat: &C, delta: &Morphism) -> Result<Morphism, AInfError> {
    if delta.src != delta.tgt {
        return Err(AInfError::NotComposable(0));
    }
    check_convergent(cat, delta)?;
    let mut total = cat.zero(delta.src, delta.tgt);
    if delta.is_zero() {
        return Ok(total.with_precision(delta.precision()));
    }
    for d in 1..=cat.max_arity() {
        let args = vec![delta; d];
        total = total.add(&cat.mu(&args)?);
    }
    Ok(total)
}

/// `Σ μ(δ_0, …, δ_0, c_1, δ_1, …, δ_1, c_2, …, c_d, δ_d, …, δ_d)`.
///
/// `deltas` has one entry per object along the path; `None` is the zero element.
pub fn deformed_mu<C: AInf + ?Sized>(
    cat: &C,
    deltas: &[Option<&Morphism>],
    inputs: &[&Morphism],
) -> Result<Morphism, AInfError> {
    let d = inputs.len();
    if d == 0 {
        return Err(AInfError::EmptyInput);
    }
    if deltas.len() != d + 1 {
        return Err(AInfError::Schema(format!(
            "need {} deformations, got {}",
            d + 1,
            deltas.len()
        )));
    }
    let slots: Vec<bool> = deltas
        .iter()
        .map(|x| x.is_some_and(|m| !m.is_zero()))
        .collect();
    for x in deltas.iter().flatten() {
        check_convergent(cat, x)?;
    }
    let mut total = cat.zero(inputs[0].src, inputs[d - 1].tgt);
    let mut prec: Option<Exponent> = None;
    for k in 0..=cat.max_arity().saturating_sub(d) {
        for dist in distributions(&slots, k) {
            let mut args: Vec<&Morphism> = Vec::with_capacity(d + k);
            for (i, &cnt) in dist.iter().enumerate() {
                if i > 0 {
                    args.push(inputs[i - 1]);
                }
                if cnt > 0 {
                    let x = deltas[i].expect("slot is live");
                    args.extend(std::iter::repeat_n(x, cnt));
                }
            }
            let r = cat.mu(&args)?;
            prec = Some(match prec {
                Some(p) if &p <= r.precision() => p,
                _ => r.precision().clone(),
            });
            total = total.add(&r);
        }
    }
    Ok(match prec {
        Some(p) => total.with_precision(&p),
        None => total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distributions_count() {
        assert_eq!(distributions(&[true, true, true], 2).len(), 6);
        assert_eq!(distributions(&[true, false, true], 2).len(), 3);
        assert_eq!(distributions(&[false, false], 1).len(), 0);
        assert_eq!(distributions(&[false, false], 0).len(), 1);
    }
}
