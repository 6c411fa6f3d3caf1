use std::collections::BTreeMap;

use super::cohomology::HomCohomology;
use super::morphism::Morphism;
use super::ops::mc_residual;
use super::{AInf, AInfError};
use crate::homalg::{rank, Matrix};
use crate::novikov::{Exponent, NovikovSeries};

/// Exponent vector of a monomial `x^m`.
pub type MultiIndex = Vec<u32>;

pub fn total_degree(m: &[u32]) -> u32 {
    m.iter().sum()
}

/// All multi-indices in `n` variables of total degree `deg`, in increasing order.
pub fn multi_indices(n: usize, deg: u32) -> Vec<MultiIndex> {
    fn go(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if cur.len() + 1 == n {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in 0..=left {
            cur.push(k);
            go(n, left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if deg == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(n, deg, &mut Vec::new(), &mut out);
    out.sort();
    out
}

fn add_index(a: &[u32], b: &[u32]) -> MultiIndex {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// A power series in `nvars` formal variables with Novikov coefficients,
/// kept up to some total degree chosen by the caller.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarSeries {
    pub nvars: usize,
    pub terms: BTreeMap<MultiIndex, NovikovSeries>,
}

impl ScalarSeries {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: NovikovSeries) -> Self {
        let mut s = Self::zero(nvars);
        s.insert(vec![0; nvars], c);
        s
    }

    /// The variable `y_i`.
    pub fn var(nvars: usize, i: usize, e: &Exponent) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        let mut s = Self::zero(nvars);
        s.insert(m, NovikovSeries::one(e.clone()));
        s
    }

    pub fn insert(&mut self, m: MultiIndex, c: NovikovSeries) {
        assert_eq!(m.len(), self.nvars);
        let cur = self.terms.remove(&m);
        let v = match cur {
            Some(x) => &x + &c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(m, v);
        }
    }

    pub fn coeff(&self, m: &[u32], e: &Exponent) -> NovikovSeries {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| NovikovSeries::zero(e.clone()))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut s = self.clone();
        for (m, c) in &o.terms {
            s.insert(m.clone(), c.clone());
        }
        s
    }

    pub fn mul(&self, o: &Self, max_deg: u32) -> Self {
        let mut s = Self::zero(self.nvars);
        for (a, ca) in &self.terms {
            let da = total_degree(a);
            for (b, cb) in &o.terms {
                if da + total_degree(b) <= max_deg {
                    s.insert(add_index(a, b), ca * cb);
                }
            }
        }
        s
    }

    pub fn pow(&self, k: u32, max_deg: u32, e: &Exponent) -> Self {
        let mut acc = Self::constant(self.nvars, NovikovSeries::one(e.clone()));
        for _ in 0..k {
            acc = acc.mul(self, max_deg);
        }
        acc
    }

    pub fn truncated(&self, max_deg: u32) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| total_degree(m) <= max_deg)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }
}

/// A power series in formal variables with coefficients in one hom space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphSeries {
    pub src: usize,
    pub tgt: usize,
    pub nvars: usize,
    pub terms: BTreeMap<MultiIndex, Morphism>,
}

impl MorphSeries {
    pub fn zero(src: usize, tgt: usize, nvars: usize) -> Self {
        Self {
            src,
            tgt,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(m: Morphism, nvars: usize) -> Self {
        let mut s = Self::zero(m.src, m.tgt, nvars);
        s.insert(vec![0; nvars], m);
        s
    }

    pub fn insert(&mut self, m: MultiIndex, x: Morphism) {
        assert_eq!(m.len(), self.nvars);
        assert_eq!((x.src, x.tgt), (self.src, self.tgt));
        let v = match self.terms.remove(&m) {
            Some(cur) => cur.add(&x),
            None => x,
        };
        if !v.is_zero() {
            self.terms.insert(m, v);
        }
    }

    pub fn coeff(&self, m: &[u32]) -> Option<&Morphism> {
        self.terms.get(m)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut s = self.clone();
        for (m, x) in &o.terms {
            s.insert(m.clone(), x.clone());
        }
        s
    }

    /// `s · self`, truncated at total degree `max_deg`.
    pub fn scale_series(&self, s: &ScalarSeries, max_deg: u32) -> Self {
        let mut out = Self::zero(self.src, self.tgt, self.nvars);
        for (a, x) in &self.terms {
            let da = total_degree(a);
            for (b, c) in &s.terms {
                if da + total_degree(b) <= max_deg {
                    out.insert(add_index(a, b), x.scale(c));
                }
            }
        }
        out
    }

    /// Lowest total degree of a nonzero term, if any.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|m| total_degree(m)).min()
    }

    pub fn truncated(&self, max_deg: u32) -> Self {
        Self {
            src: self.src,
            tgt: self.tgt,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| total_degree(m) <= max_deg)
                .map(|(m, x)| (m.clone(), x.clone()))
                .collect(),
        }
    }
}

/// `μ` applied termwise to series inputs, truncated at total degree `max_deg`.
pub fn series_mu<C: AInf + ?Sized>(
    cat: &C,
    inputs: &[&MorphSeries],
    max_deg: u32,
) -> Result<MorphSeries, AInfError> {
    let nvars = inputs[0].nvars;
    let (src, tgt) = (inputs[0].src, inputs[inputs.len() - 1].tgt);
    let mut out = MorphSeries::zero(src, tgt, nvars);
    let mut picked: Vec<&Morphism> = Vec::with_capacity(inputs.len());
    fn go<'a, C: AInf + ?Sized>(
        cat: &C,
        inputs: &[&'a MorphSeries],
        max_deg: u32,
        deg: u32,
        idx: MultiIndex,
        picked: &mut Vec<&'a Morphism>,
        out: &mut MorphSeries,
    ) -> Result<(), AInfError> {
        let k = picked.len();
        if k == inputs.len() {
            let r = cat.mu(picked)?;
            out.insert(idx, r);
            return Ok(());
        }
        for (m, x) in &inputs[k].terms {
            let d = deg + total_degree(m);
            if d > max_deg {
                continue;
            }
            picked.push(x);
            go(cat, inputs, max_deg, d, add_index(&idx, m), picked, out)?;
            picked.pop();
        }
        Ok(())
    }
    go(
        cat,
        inputs,
        max_deg,
        0,
        vec![0; nvars],
        &mut picked,
        &mut out,
    )?;
    Ok(out)
}

/// Series version of the deformed structure map.
pub fn series_deformed_mu<C: AInf + ?Sized>(
    cat: &C,
    deltas: &[Option<&MorphSeries>],
    inputs: &[&MorphSeries],
    max_deg: u32,
) -> Result<MorphSeries, AInfError> {
    let d = inputs.len();
    assert_eq!(deltas.len(), d + 1);
    let nvars = inputs[0].nvars;
    let mut out = MorphSeries::zero(inputs[0].src, inputs[d - 1].tgt, nvars);
    let slots: Vec<bool> = deltas
        .iter()
        .map(|x| x.is_some_and(|s| !s.terms.is_empty()))
        .collect();
    for k in 0..=cat.max_arity().saturating_sub(d) {
        for dist in super::ops::distributions(&slots, k) {
            let mut args: Vec<&MorphSeries> = Vec::with_capacity(d + k);
            for (i, &cnt) in dist.iter().enumerate() {
                if i > 0 {
                    args.push(inputs[i - 1]);
                }
                for _ in 0..cnt {
                    args.push(deltas[i].expect("slot is live"));
                }
            }
            out = out.add(&series_mu(cat, &args, max_deg)?);
        }
    }
    Ok(out)
}

/// A family of deformations `δ(x) = Σ_m δ_m x^m` of one object.
///
/// Formal families live over `k[[x_1..x_j]]` and have `δ(0) = 0`; polynomial
/// families can be evaluated at points.
#[derive(Clone, Debug)]
pub struct Family {
    pub carrier: usize,
    pub nparams: usize,
    pub terms: BTreeMap<MultiIndex, Morphism>,
    pub formal: bool,
}

impl Family {
    pub fn new(carrier: usize, nparams: usize, formal: bool) -> Self {
        Self {
            carrier,
            nparams,
            terms: BTreeMap::new(),
            formal,
        }
    }

    /// `δ(x) = Σ x_i δ_i`.
    pub fn linear(carrier: usize, directions: Vec<Morphism>, formal: bool) -> Self {
        let n = directions.len();
        let mut f = Self::new(carrier, n, formal);
        for (i, d) in directions.into_iter().enumerate() {
            let mut m = vec![0; n];
            m[i] = 1;
            f.insert(m, d);
        }
        f
    }

    pub fn insert(&mut self, m: MultiIndex, x: Morphism) {
        assert_eq!(m.len(), self.nparams);
        assert_eq!((x.src, x.tgt), (self.carrier, self.carrier));
        let v = match self.terms.remove(&m) {
            Some(cur) => cur.add(&x),
            None => x,
        };
        if !v.is_zero() {
            self.terms.insert(m, v);
        }
    }

    pub fn validate(&self) -> Result<(), AInfError> {
        if self.formal && self.terms.contains_key(&vec![0; self.nparams]) {
            return Err(AInfError::Schema(
                "formal family must vanish at the origin".into(),
            ));
        }
        Ok(())
    }

    /// The linear coefficient `δ_i` (zero if absent).
    pub fn linear_part<C: AInf + ?Sized>(&self, cat: &C, i: usize) -> Morphism {
        let mut m = vec![0; self.nparams];
        m[i] = 1;
        self.terms
            .get(&m)
            .cloned()
            .unwrap_or_else(|| cat.zero(self.carrier, self.carrier))
    }

    pub fn as_series(&self) -> MorphSeries {
        MorphSeries {
            src: self.carrier,
            tgt: self.carrier,
            nvars: self.nparams,
            terms: self.terms.clone(),
        }
    }

    fn monomial(point: &[NovikovSeries], m: &[u32], e: &Exponent) -> NovikovSeries {
        let mut acc = NovikovSeries::one(e.clone());
        for (x, &k) in point.iter().zip(m) {
            acc = &acc * &x.pow(k);
        }
        acc
    }

    pub fn eval<C: AInf + ?Sized>(&self, cat: &C, point: &[NovikovSeries]) -> Morphism {
        assert_eq!(point.len(), self.nparams);
        let e = cat.truncation();
        let mut acc = cat.zero(self.carrier, self.carrier);
        for (m, x) in &self.terms {
            acc = acc.add(&x.scale(&Self::monomial(point, m, e)));
        }
        acc
    }

    /// Derivative `v(δ)` at `point`.
    pub fn tangent<C: AInf + ?Sized>(
        &self,
        cat: &C,
        point: &[NovikovSeries],
        v: &[NovikovSeries],
    ) -> Morphism {
        assert_eq!(v.len(), self.nparams);
        let e = cat.truncation();
        let mut acc = cat.zero(self.carrier, self.carrier);
        for (m, x) in &self.terms {
            for i in 0..self.nparams {
                if m[i] == 0 {
                    continue;
                }
                let mut lower = m.clone();
                lower[i] -= 1;
                let k = NovikovSeries::from_int(m[i] as i64, e.clone());
                let c = &(&k * &v[i]) * &Self::monomial(point, &lower, e);
                acc = acc.add(&x.scale(&c));
            }
        }
        acc
    }

    /// `Σ_m δ_m η^m` for a ring map `x_i ↦ η_i(y)`.
    pub fn pullback(&self, eta: &[ScalarSeries], max_deg: u32, e: &Exponent) -> MorphSeries {
        assert_eq!(eta.len(), self.nparams);
        let nvars = eta.first().map_or(0, |s| s.nvars);
        let mut out = MorphSeries::zero(self.carrier, self.carrier, nvars);
        for (m, x) in &self.terms {
            let mut mono = ScalarSeries::constant(nvars, NovikovSeries::one(e.clone()));
            for (i, &k) in m.iter().enumerate() {
                mono = mono.mul(&eta[i].pow(k, max_deg, e), max_deg);
            }
            out = out.add(&MorphSeries::constant(x.clone(), nvars).scale_series(&mono, max_deg));
        }
        out
    }

    /// `Σ_d μ^d(δ(x), …, δ(x))` up to total degree `max_deg`.
    pub fn residual_series<C: AInf + ?Sized>(
        &self,
        cat: &C,
        max_deg: u32,
    ) -> Result<MorphSeries, AInfError> {
        let s = self.as_series();
        let mut out = MorphSeries::zero(self.carrier, self.carrier, self.nparams);
        for d in 1..=cat.max_arity() {
            let args = vec![&s; d];
            out = out.add(&series_mu(cat, &args, max_deg)?);
        }
        Ok(out)
    }

    /// Obstruction class of `v` at `point`, in the basis of `H¹(hom(C_a, C_a))`.
    pub fn obstruction<C: AInf + ?Sized>(
        &self,
        cat: &C,
        point: &[NovikovSeries],
        v: &[NovikovSeries],
    ) -> Result<Vec<NovikovSeries>, AInfError> {
        let (h, delta) = self.cohomology_at(cat, point)?;
        let _ = delta;
        h.project(&self.tangent(cat, point, v), 1)
    }

    /// Deformed endomorphism cohomology at `point`, with `δ(point)`.
    pub fn cohomology_at<C: AInf + ?Sized>(
        &self,
        cat: &C,
        point: &[NovikovSeries],
    ) -> Result<(HomCohomology, Morphism), AInfError> {
        let delta = self.eval(cat, point);
        if !mc_residual(cat, &delta)?.is_zero() {
            return Err(AInfError::NotMaurerCartan);
        }
        let c = self.carrier;
        let d = (!delta.is_zero()).then_some(&delta);
        let h = HomCohomology::new(cat, c, c, d, d)?;
        Ok((h, delta))
    }

    /// Matrix of the obstruction map at `point` (columns: coordinate directions).
    pub fn obstruction_matrix<C: AInf + ?Sized>(
        &self,
        cat: &C,
        point: &[NovikovSeries],
    ) -> Result<Matrix<NovikovSeries>, AInfError> {
        let e = cat.truncation();
        let (h, _) = self.cohomology_at(cat, point)?;
        let mut cols = Vec::with_capacity(self.nparams);
        for i in 0..self.nparams {
            let mut v = vec![NovikovSeries::zero(e.clone()); self.nparams];
            v[i] = NovikovSeries::one(e.clone());
            cols.push(h.project(&self.tangent(cat, point, &v), 1)?);
        }
        Ok(Matrix::from_columns(&cols, h.rank(1), e))
    }

    /// The obstruction map at the origin is bijective onto `H¹`.
    pub fn is_versal<C: AInf + ?Sized>(&self, cat: &C) -> Result<bool, AInfError> {
        let e = cat.truncation();
        let origin = vec![NovikovSeries::zero(e.clone()); self.nparams];
        let m = self.obstruction_matrix(cat, &origin)?;
        if m.rows() != self.nparams {
            return Ok(false);
        }
        Ok(rank(&m, e)? == self.nparams)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multi_index_enumeration() {
        assert_eq!(
            multi_indices(2, 2),
            vec![vec![0, 2], vec![1, 1], vec![2, 0]]
        );
        assert_eq!(multi_indices(3, 1).len(), 3);
        assert_eq!(multi_indices(2, 0), vec![vec![0, 0]]);
        assert_eq!(multi_indices(0, 0), vec![Vec::<u32>::new()]);
    }

    #[test]
    fn scalar_series_arithmetic() {
        let e = Exponent::from_int(5);
        let y0 = ScalarSeries::var(2, 0, &e);
        let y1 = ScalarSeries::var(2, 1, &e);
        let s = y0.add(&y1);
        let sq = s.pow(2, 4, &e);
        assert_eq!(sq.coeff(&[1, 1], &e), NovikovSeries::from_int(2, e.clone()));
        assert_eq!(s.pow(3, 2, &e).terms.len(), 0);
    }
}
