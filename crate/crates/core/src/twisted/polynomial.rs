use std::collections::BTreeMap;

use crate::ainf::{AInf, AInfError, Morphism, MultiIndex};
use crate::novikov::{Exponent, NovikovSeries};

use super::category::{strictly_above, TwistedCategory};

/// Basis of `F^{≥1} hom¹(X, X)` relative to the summand levels, as hom indices.
pub fn pre_twisted_space<B: AInf>(cat: &TwistedCategory<B>, x: usize) -> Vec<usize> {
    let s = cat.summands(x);
    (0..cat.hom_dim(x, x))
        .filter(|&i| {
            let bi = cat.block_of(x, x, i);
            cat.degree(x, x, i) == 1 && strictly_above(&s[bi.row].level, &s[bi.col].level)
        })
        .collect()
}

/// A polynomial in the pre-twisted coordinates with Novikov coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    pub terms: BTreeMap<MultiIndex, NovikovSeries>,
}

impl Polynomial {
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    pub fn eval(&self, point: &[NovikovSeries], e: &Exponent) -> NovikovSeries {
        let mut acc = NovikovSeries::zero(e.clone());
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(m) {
                t = &t * &x.pow(k);
            }
            acc = &acc + &t;
        }
        acc
    }
}

/// The Maurer–Cartan equations of a pre-twisted object, one per output basis element.
#[derive(Clone, Debug)]
pub struct McSystem {
    pub object: usize,
    pub variables: Vec<usize>,
    pub equations: BTreeMap<usize, Polynomial>,
    /// Number of distinct filtration levels minus one; bounds every degree.
    pub degree_bound: u32,
}

impl McSystem {
    pub fn max_degree(&self) -> u32 {
        self.equations
            .values()
            .map(Polynomial::degree)
            .max()
            .unwrap_or(0)
    }

    /// `δ = Σ t_a v_a`.
    pub fn point_morphism<B: AInf>(
        &self,
        cat: &TwistedCategory<B>,
        point: &[NovikovSeries],
    ) -> Morphism {
        let x = self.object;
        Morphism::from_coeffs(
            x,
            x,
            self.variables
                .iter()
                .zip(point)
                .map(|(&v, c)| (v, c.clone())),
            cat.truncation().clone(),
        )
    }

    /// Residual coordinates at `point`, keyed by output basis index.
    pub fn eval(&self, point: &[NovikovSeries], e: &Exponent) -> BTreeMap<usize, NovikovSeries> {
        self.equations
            .iter()
            .map(|(&o, p)| (o, p.eval(point, e)))
            .filter(|(_, v)| !v.is_zero())
            .collect()
    }
}

/// Expands `Σ_d μ^d(δ, …, δ)` symbolically in the coordinates of `δ`.
///
/// Only chains of entries with strictly increasing levels compose, so the
/// expansion stops at the number of distinct levels minus one.
pub fn mc_polynomial_system<B: AInf>(
    cat: &TwistedCategory<B>,
    x: usize,
) -> Result<McSystem, AInfError> {
    let variables = pre_twisted_space(cat, x);
    let nv = variables.len();
    let mut levels: Vec<_> = cat.summands(x).iter().map(|s| s.level.clone()).collect();
    levels.sort();
    levels.dedup();
    let degree_bound = levels.len().saturating_sub(1) as u32;
    let max_d = (degree_bound as usize).min(cat.max_arity());
    let basis: Vec<Morphism> = variables.iter().map(|&v| cat.basis(x, x, v)).collect();
    let mut equations: BTreeMap<usize, Polynomial> = BTreeMap::new();

    fn go<B: AInf>(
        cat: &TwistedCategory<B>,
        x: usize,
        variables: &[usize],
        basis: &[Morphism],
        max_d: usize,
        chain: &mut Vec<usize>,
        equations: &mut BTreeMap<usize, Polynomial>,
    ) -> Result<(), AInfError> {
        if !chain.is_empty() {
            let args: Vec<&Morphism> = chain.iter().map(|&a| &basis[a]).collect();
            let out = cat.raw_mu(&args)?;
            let mut m = vec![0u32; variables.len()];
            for &a in chain.iter() {
                m[a] += 1;
            }
            for (&o, c) in out.coeffs() {
                let eq = equations.entry(o).or_insert_with(|| Polynomial {
                    terms: BTreeMap::new(),
                });
                let cur = eq.terms.remove(&m);
                let v = match cur {
                    Some(p) => &p + c,
                    None => c.clone(),
                };
                if !v.is_zero() {
                    eq.terms.insert(m.clone(), v);
                }
            }
        }
        if chain.len() == max_d {
            return Ok(());
        }
        let last_col = chain.last().map(|&a| cat.block_of(x, x, variables[a]).col);
        for a in 0..variables.len() {
            let bi = cat.block_of(x, x, variables[a]);
            if last_col.is_some_and(|c| c != bi.row) {
                continue;
            }
            chain.push(a);
            go(cat, x, variables, basis, max_d, chain, equations)?;
            chain.pop();
        }
        Ok(())
    }
    go(
        cat,
        x,
        &variables,
        &basis,
        max_d,
        &mut Vec::with_capacity(max_d),
        &mut equations,
    )?;
    equations.retain(|_, p| !p.terms.is_empty());
    debug_assert!(equations
        .values()
        .all(|p| p.terms.keys().all(|m| m.len() == nv)));
    Ok(McSystem {
        object: x,
        variables,
        equations,
        degree_bound,
    })
}
