use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::ainf::{AInf, Morphism};
use crate::rational::Rational;

use super::category::{Summand, TwistedCategory};
use super::TwistedError;

/// Components `℘^d ∈ hom^{1-d}(X, X)`; absent components are zero.
#[derive(Clone, Debug)]
pub struct HomotopyIdempotent {
    pub carrier: usize,
    pub components: BTreeMap<usize, Morphism>,
}

impl HomotopyIdempotent {
    /// `℘¹ = e`, all higher components zero.
    pub fn unit<C: AInf + ?Sized>(cat: &C, x: usize) -> Option<Self> {
        let e = cat.unit(x)?;
        Some(Self {
            carrier: x,
            components: BTreeMap::from([(1, e)]),
        })
    }

    pub fn component<C: AInf + ?Sized>(&self, cat: &C, d: usize) -> Morphism {
        self.components
            .get(&d)
            .cloned()
            .unwrap_or_else(|| cat.zero(self.carrier, self.carrier))
    }
}

/// Largest `d` for which `hom^{1-d}(X, X)` can be nonzero (at least 1).
pub fn degree_bound<C: AInf + ?Sized>(cat: &C, x: usize) -> usize {
    let min = (0..cat.hom_dim(x, x))
        .map(|b| cat.degree(x, x, b))
        .min()
        .unwrap_or(0);
    (1 - min).max(1) as usize
}

#[derive(Clone, Debug)]
pub struct IdempotentReport {
    pub degree_bound: usize,
    /// `LHS - RHS` of the idempotent equation for `d = 1..=degree_bound + 1`.
    pub defects: Vec<(usize, Morphism)>,
}

impl IdempotentReport {
    pub fn passes(&self) -> bool {
        self.defects.iter().all(|(_, m)| m.is_zero())
    }

    pub fn failing(&self) -> Vec<usize> {
        self.defects
            .iter()
            .filter(|(_, m)| !m.is_zero())
            .map(|(d, _)| *d)
            .collect()
    }
}

fn compositions(d: usize, max_parts: usize) -> Vec<Vec<usize>> {
    fn go(left: usize, max_parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        if cur.len() == max_parts {
            return;
        }
        for s in 1..=left {
            cur.push(s);
            go(left - s, max_parts, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d, max_parts, &mut Vec::new(), &mut out);
    out
}

fn validate<C: AInf + ?Sized>(cat: &C, p: &HomotopyIdempotent) -> Result<usize, TwistedError> {
    let x = p.carrier;
    let bound = degree_bound(cat, x);
    for (&d, m) in &p.components {
        if (m.src, m.tgt) != (x, x) {
            return Err(TwistedError::Schema(format!(
                "component {d} is not an endomorphism of the carrier"
            )));
        }
        if d == 0
            || m.coeffs()
                .keys()
                .any(|&b| cat.degree(x, x, b) != 1 - d as i32)
        {
            return Err(TwistedError::ComponentDegree { d });
        }
        if d > bound && !m.is_zero() {
            return Err(TwistedError::DegreeBound { d, max: bound });
        }
    }
    Ok(bound)
}

/// Evaluates `Σ_r Σ_{s_1+…+s_r=d} μ^r(℘^{s_1}, …, ℘^{s_r})` minus `℘^{d-1}` (even `d`)
/// or `0` (odd `d`), for every `d` up to one past the degree bound.
pub fn check_idempotent<C: AInf + ?Sized>(
    cat: &C,
    p: &HomotopyIdempotent,
) -> Result<IdempotentReport, TwistedError> {
    let bound = validate(cat, p)?;
    let x = p.carrier;
    let comps: Vec<Morphism> = (0..=bound + 1).map(|d| p.component(cat, d)).collect();
    let mut defects = Vec::new();
    for d in 1..=bound + 1 {
        let mut lhs = cat.zero(x, x);
        for parts in compositions(d, cat.max_arity()) {
            if parts.iter().any(|&s| comps[s].is_zero()) {
                continue;
            }
            let args: Vec<&Morphism> = parts.iter().map(|&s| &comps[s]).collect();
            lhs = lhs.add(&cat.mu(&args)?);
        }
        if d % 2 == 0 {
            lhs = lhs.sub(&comps[d - 1]);
        }
        defects.push((d, lhs));
    }
    Ok(IdempotentReport {
        degree_bound: bound,
        defects,
    })
}

/// Position `i ∈ [-(n-1), 0]` of window summand `t`.
pub fn window_position(n: usize, t: usize) -> i64 {
    t as i64 - (n as i64 - 1)
}

/// One nonzero entry of the window residual, between positions `i < j`.
#[derive(Clone, Debug)]
pub struct WindowEntry {
    pub i: i64,
    pub j: i64,
    pub residual: Morphism,
}

/// The finite window `(X, …, X)` at positions `-(n-1)..=0` carrying `δ_℘`.
pub struct IdempotentWindow<C: AInf> {
    pub n: usize,
    pub category: TwistedCategory<C>,
    pub delta: Morphism,
    /// Nonzero blocks of `Σ μ(δ_℘, …, δ_℘)`.
    pub residual: Vec<WindowEntry>,
}

impl<C: AInf> IdempotentWindow<C> {
    pub fn is_maurer_cartan(&self) -> bool {
        self.residual.is_empty()
    }

    /// Distinct `j - i` among nonzero residual blocks.
    pub fn defect_lengths(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.residual.iter().map(|e| (e.j - e.i) as usize).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// Builds `δ_℘`: `℘¹` on `(i, i+1)` for even `i`, `℘¹ - e` for odd `i`, and
/// `℘^{j-i}` for `j > i + 1`; then evaluates its Maurer–Cartan residual.
///
/// Every entry `(i, j)` of the residual only involves positions between `i`
/// and `j`, so the finite window reproduces the infinite pattern exactly; the
/// entry at `(i, j)` is `±` the idempotent defect for `d = j - i`.
pub fn idempotent_window<C: AInf + Clone>(
    cat: &C,
    p: &HomotopyIdempotent,
    n: usize,
) -> Result<IdempotentWindow<C>, TwistedError> {
    let bound = validate(cat, p)?;
    let min = bound + 2;
    if n < min {
        return Err(TwistedError::WindowTooSmall { n, min });
    }
    let x = p.carrier;
    let e = cat
        .unit(x)
        .ok_or_else(|| TwistedError::Schema("carrier has no strict unit".into()))?;
    let p1 = p.component(cat, 1);

    // Level step exceeding any negative filtration in the entries keeps δ_℘ in F^{≥1}.
    let mut low = Rational::zero();
    let entries = p.components.values().chain(std::iter::once(&e));
    for m in entries {
        for &b in m.coeffs().keys() {
            let f = cat.filtration(x, x, b);
            if f < low {
                low = f;
            }
        }
    }
    let step = Rational::one() + low.abs();

    let mut w = TwistedCategory::new(cat.clone());
    let summands = (0..n)
        .map(|t| {
            let i = window_position(n, t);
            Summand {
                object: x,
                shift: -i as i32,
                level: &step * Rational::from_integer(i.into()),
            }
        })
        .collect();
    let wx = w.add_object("window", summands)?;

    let mut delta = w.zero(wx, wx);
    for t in 0..n {
        for u in t + 1..n {
            let entry = if u == t + 1 {
                if window_position(n, t).rem_euclid(2) == 0 {
                    p1.clone()
                } else {
                    p1.sub(&e)
                }
            } else {
                p.component(cat, u - t)
            };
            if !entry.is_zero() {
                delta = delta.add(&w.embed(wx, wx, t, u, &entry));
            }
        }
    }
    w.validate_pre_twisted(wx, &delta)?;
    let res = w.raw_mc_residual(&delta)?;
    let mut residual = Vec::new();
    for t in 0..n {
        for u in 0..n {
            let blk = w.block(&res, t, u);
            if !blk.is_zero() {
                residual.push(WindowEntry {
                    i: window_position(n, t),
                    j: window_position(n, u),
                    residual: blk,
                });
            }
        }
    }
    Ok(IdempotentWindow {
        n,
        category: w,
        delta,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_enumerate_ordered_partitions() {
        assert_eq!(compositions(3, 3).len(), 4);
        assert_eq!(compositions(3, 2), vec![vec![1, 2], vec![2, 1], vec![3]]);
        assert_eq!(window_position(4, 0), -3);
        assert_eq!(window_position(4, 3), 0);
    }
}
