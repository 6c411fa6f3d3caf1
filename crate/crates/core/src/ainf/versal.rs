use std::collections::BTreeMap;

use super::cohomology::{certify_quasi_iso, linear_map_matrix};
use super::family::{
    multi_indices, series_deformed_mu, Family, MorphSeries, MultiIndex, ScalarSeries,
};
use super::morphism::Morphism;
use super::ops::deformed_mu;
use super::{AInf, AInfError};
use crate::homalg::{solve, Matrix};
use crate::novikov::NovikovSeries;

/// Data for matching a target family against a versal source family.
#[derive(Clone, Debug)]
pub struct VersalMatchProblem {
    /// Versal family `δ` on `C` over `k[[x_1..x_j]]`.
    pub source: Family,
    /// Family `ε` on `D` over `k[[y_1..y_k]]`; `ε(0)` may be nonzero.
    pub target: Family,
    /// Closed degree-0 quasi-isomorphism `C → D` for `δ(0)` and `ε(0)`.
    pub seed: Morphism,
    /// Solve through total degree `order`.
    pub order: u32,
}

/// A ring map `η` and a morphism family `f` with `μ¹_{η(δ),ε}(f) = O(y^{order+1})`.
#[derive(Clone, Debug)]
pub struct VersalMatch {
    /// `η_i(y)` for each source parameter `x_i`; no constant terms.
    pub eta: Vec<ScalarSeries>,
    pub f: MorphSeries,
    /// `linear[i][j]` is the coefficient of `y_j` in `η_i`.
    pub linear: Vec<Vec<NovikovSeries>>,
    /// Lowest total degree at which the residual may be nonzero.
    pub residual_order: u32,
}

fn origin(fam: &Family, cat: &impl AInf) -> Morphism {
    let e = cat.truncation();
    fam.eval(cat, &vec![NovikovSeries::zero(e.clone()); fam.nparams])
}

fn nonzero(m: &Morphism) -> Option<&Morphism> {
    (!m.is_zero()).then_some(m)
}

/// `μ¹_{η(δ),ε}(f)` through total degree `max_deg`.
pub fn match_residual<C: AInf>(
    cat: &C,
    problem: &VersalMatchProblem,
    eta: &[ScalarSeries],
    f: &MorphSeries,
    max_deg: u32,
) -> Result<MorphSeries, AInfError> {
    let e = cat.truncation();
    let pulled = problem.source.pullback(eta, max_deg, e);
    let eps = problem.target.as_series().truncated(max_deg);
    series_deformed_mu(cat, &[Some(&pulled), Some(&eps)], &[f], max_deg)
}

/// Solves for `η` and `f` order by order in the total degree of `y`.
///
/// At each multi-index the unknowns `η_i` coefficients and the `hom⁰(C, D)`
/// coordinates of `f` enter linearly through `v ↦ μ²(v, f₀)` and the deformed
/// `μ¹`; the remaining terms are already determined by lower orders.
pub fn versal_match<C: AInf>(
    cat: &C,
    problem: &VersalMatchProblem,
) -> Result<VersalMatch, AInfError> {
    let e = cat.truncation().clone();
    let src = &problem.source;
    let tgt = &problem.target;
    let f0 = &problem.seed;
    let (c, d) = (src.carrier, tgt.carrier);
    if (f0.src, f0.tgt) != (c, d) {
        return Err(AInfError::Schema(
            "seed must go from the source carrier to the target carrier".into(),
        ));
    }
    src.validate()?;
    if !src.is_versal(cat)? {
        return Err(AInfError::NotVersal);
    }
    let d0 = origin(src, cat);
    let e0 = origin(tgt, cat);
    if !certify_quasi_iso(cat, f0, nonzero(&d0), nonzero(&e0))? {
        return Err(AInfError::NotQuasiIso);
    }

    let j = src.nparams;
    let k = tgt.nparams;
    let h0 = cat.degree_basis(c, d, 0);
    let h1 = cat.degree_basis(c, d, 1);

    // Columns: first the η unknowns, then the hom⁰(C, D) coordinates of f.
    let mut cols: Vec<Vec<NovikovSeries>> = Vec::with_capacity(j + h0.len());
    for i in 0..j {
        let v = src.linear_part(cat, i);
        let img = deformed_mu(cat, &[nonzero(&d0), nonzero(&d0), nonzero(&e0)], &[&v, f0])?;
        cols.push(to_coords(&img, &h1, cat)?);
    }
    let df = linear_map_matrix(cat, (c, d), &h0, (c, d), &h1, |b| {
        deformed_mu(cat, &[nonzero(&d0), nonzero(&e0)], &[b])
    })?;
    for jj in 0..h0.len() {
        cols.push(df.column(jj));
    }
    let system = Matrix::from_columns(&cols, h1.len(), &e);

    let mut eta: Vec<ScalarSeries> = vec![ScalarSeries::zero(k); j];
    let mut f = MorphSeries::constant(f0.clone(), k);
    if f.terms.is_empty() {
        f = MorphSeries::zero(c, d, k);
    }
    for order in 1..=problem.order {
        let res = match_residual(cat, problem, &eta, &f, order)?;
        let mut solved: BTreeMap<MultiIndex, Vec<NovikovSeries>> = BTreeMap::new();
        for m in multi_indices(k, order) {
            let r = match res.coeff(&m) {
                Some(r) => to_coords(r, &h1, cat)?,
                None => vec![NovikovSeries::zero(e.clone()); h1.len()],
            };
            let rhs: Vec<NovikovSeries> = r.iter().map(|x| -x).collect();
            match solve(&system, &rhs, &e)? {
                Some(x) => {
                    solved.insert(m, x);
                }
                None => return Err(AInfError::Inconsistent(m)),
            }
        }
        for (m, x) in solved {
            for i in 0..j {
                eta[i].insert(m.clone(), x[i].clone());
            }
            let fm = Morphism::from_coeffs(
                c,
                d,
                h0.iter().zip(&x[j..]).map(|(&b, v)| (b, v.clone())),
                e.clone(),
            );
            if !fm.is_zero() {
                f.insert(m, fm);
            }
        }
    }

    let check = match_residual(cat, problem, &eta, &f, problem.order)?;
    let residual_order = match check.order() {
        Some(o) => o,
        None => problem.order + 1,
    };
    let linear = (0..j)
        .map(|i| {
            (0..k)
                .map(|jj| {
                    let mut m = vec![0; k];
                    m[jj] = 1;
                    eta[i].coeff(&m, &e)
                })
                .collect()
        })
        .collect();
    Ok(VersalMatch {
        eta,
        f,
        linear,
        residual_order,
    })
}

fn to_coords<C: AInf>(
    m: &Morphism,
    basis: &[usize],
    cat: &C,
) -> Result<Vec<NovikovSeries>, AInfError> {
    for &b in m.coeffs().keys() {
        if !basis.contains(&b) {
            return Err(AInfError::DegreeViolation(format!(
                "residual has a component {} outside degree 1",
                cat.basis_name(m.src, m.tgt, b)
            )));
        }
    }
    Ok(basis.iter().map(|&b| m.coeff(b)).collect())
}
