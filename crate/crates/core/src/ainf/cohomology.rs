use std::collections::{BTreeMap, BTreeSet};

use super::morphism::Morphism;
use super::ops::deformed_mu;
use super::{AInf, AInfError};
use crate::homalg::{CochainComplex, CohomologyGroup, Field, Matrix};
use crate::novikov::{Exponent, NovikovSeries};

/// Matrix of a linear map between spans of basis elements, in those bases.
/// Fails if an image has components outside `tgt_basis`.
pub fn linear_map_matrix<C, F>(
    cat: &C,
    (sx, sy): (usize, usize),
    src_basis: &[usize],
    (tx, ty): (usize, usize),
    tgt_basis: &[usize],
    f: F,
) -> Result<Matrix<NovikovSeries>, AInfError>
where
    C: AInf + ?Sized,
    F: Fn(&Morphism) -> Result<Morphism, AInfError>,
{
    let e = cat.truncation();
    let pos: BTreeMap<usize, usize> = tgt_basis.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    let mut m = Matrix::zeros(tgt_basis.len(), src_basis.len(), e);
    for (j, &b) in src_basis.iter().enumerate() {
        let img = f(&cat.basis(sx, sy, b))?;
        let p = img.precision().clone();
        for i in 0..tgt_basis.len() {
            m.set(i, j, NovikovSeries::zero(p.clone()));
        }
        for (&o, c) in img.coeffs() {
            let i = *pos.get(&o).ok_or_else(|| {
                AInfError::DegreeViolation(format!(
                    "image of {} has a component {} outside the expected degree",
                    cat.basis_name(sx, sy, b),
                    cat.basis_name(tx, ty, o)
                ))
            })?;
            m.set(i, j, c.clone());
        }
    }
    Ok(m)
}

/// Cohomology of `hom(x, y)` under the differential deformed by `(δ_x, δ_y)`.
#[derive(Clone, Debug)]
pub struct HomCohomology {
    pub x: usize,
    pub y: usize,
    /// Basis indices of each degree.
    pub degrees: BTreeMap<i32, Vec<usize>>,
    pub complex: CochainComplex<NovikovSeries>,
    groups: BTreeMap<i32, CohomologyGroup<NovikovSeries>>,
    precision: Exponent,
}

impl HomCohomology {
    pub fn new<C: AInf + ?Sized>(
        cat: &C,
        x: usize,
        y: usize,
        dx: Option<&Morphism>,
        dy: Option<&Morphism>,
    ) -> Result<Self, AInfError> {
        let mut degrees: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for b in 0..cat.hom_dim(x, y) {
            degrees.entry(cat.degree(x, y, b)).or_default().push(b);
        }
        let mut diffs = BTreeMap::new();
        for (&k, basis) in &degrees {
            let empty = Vec::new();
            let tgt = degrees.get(&(k + 1)).unwrap_or(&empty);
            let m = linear_map_matrix(cat, (x, y), basis, (x, y), tgt, |b| {
                deformed_mu(cat, &[dx, dy], &[b])
            })?;
            diffs.insert(k, m);
        }
        let dims = degrees.iter().map(|(&k, v)| (k, v.len())).collect();
        let e = cat.truncation().clone();
        let complex = CochainComplex::new(dims, diffs, e.clone())?;
        let mut groups = BTreeMap::new();
        for &k in degrees.keys() {
            groups.insert(k, complex.cohomology(k)?);
        }
        Ok(Self {
            x,
            y,
            degrees,
            complex,
            groups,
            precision: e,
        })
    }

    pub fn rank(&self, k: i32) -> usize {
        self.groups.get(&k).map_or(0, CohomologyGroup::rank)
    }

    pub fn ranks(&self) -> BTreeMap<i32, usize> {
        self.groups.iter().map(|(&k, g)| (k, g.rank())).collect()
    }

    /// Coordinates of a morphism in the degree-`k` basis.
    pub fn to_vector(&self, m: &Morphism, k: i32) -> Result<Vec<NovikovSeries>, AInfError> {
        let empty = Vec::new();
        let basis = self.degrees.get(&k).unwrap_or(&empty);
        for &b in m.coeffs().keys() {
            if !basis.contains(&b) {
                return Err(AInfError::DegreeViolation(format!(
                    "component {b} is not in degree {k}"
                )));
            }
        }
        Ok(basis.iter().map(|&b| m.coeff(b)).collect())
    }

    pub fn to_morphism(&self, v: &[NovikovSeries], k: i32) -> Morphism {
        let empty = Vec::new();
        let basis = self.degrees.get(&k).unwrap_or(&empty);
        Morphism::from_coeffs(
            self.x,
            self.y,
            basis.iter().zip(v).map(|(&b, c)| (b, c.clone())),
            self.precision.clone(),
        )
    }

    /// The `i`-th cohomology basis class in degree `k`, as a cocycle.
    pub fn representative(&self, k: i32, i: usize) -> Morphism {
        self.to_morphism(&self.groups[&k].reps[i], k)
    }

    /// Class of a degree-`k` cocycle in the basis of representatives.
    pub fn project(&self, m: &Morphism, k: i32) -> Result<Vec<NovikovSeries>, AInfError> {
        let v = self.to_vector(m, k)?;
        match self.groups.get(&k) {
            Some(g) => Ok(g.project(&v)?),
            None => Ok(Vec::new()),
        }
    }

    pub fn is_exact(&self, m: &Morphism, k: i32) -> Result<bool, AInfError> {
        let e = &self.precision;
        Ok(self
            .project(m, k)?
            .iter()
            .all(|c| c.status(e) == crate::homalg::EntryStatus::Zero))
    }
}

/// Cone of a degree-0 map `φ: A → B`: degree `k` is `A^{k+1} ⊕ B^k` with
/// `d(a, b) = (s·d_A a, φ a + d_B b)`; `s` is chosen so that `d² = 0`.
fn cone_is_acyclic<C: AInf + ?Sized>(
    cat: &C,
    a: &HomCohomology,
    b: &HomCohomology,
    phi: &dyn Fn(&Morphism) -> Result<Morphism, AInfError>,
) -> Result<bool, AInfError> {
    let e = cat.truncation().clone();
    let empty = Vec::new();
    let deg_a = |k: i32| a.degrees.get(&k).unwrap_or(&empty);
    let deg_b = |k: i32| b.degrees.get(&k).unwrap_or(&empty);
    let mut ks: BTreeSet<i32> = a.degrees.keys().map(|k| k - 1).collect();
    ks.extend(b.degrees.keys().copied());
    let lo = *ks.iter().next().unwrap_or(&0);
    let hi = *ks.iter().next_back().unwrap_or(&0);

    let da = |k: i32| {
        a.complex
            .diffs
            .get(&k)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(deg_a(k + 1).len(), deg_a(k).len(), &e))
    };
    let db = |k: i32| {
        b.complex
            .diffs
            .get(&k)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(deg_b(k + 1).len(), deg_b(k).len(), &e))
    };
    let mut phis = BTreeMap::new();
    for k in lo..=hi + 1 {
        let m = linear_map_matrix(cat, (a.x, a.y), deg_a(k), (b.x, b.y), deg_b(k), |x| phi(x))?;
        phis.insert(k, m);
    }

    for s in [1i64, -1] {
        let mut dims = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for k in lo..=hi {
            let (na1, nb0) = (deg_a(k + 1).len(), deg_b(k).len());
            let (na2, nb1) = (deg_a(k + 2).len(), deg_b(k + 1).len());
            dims.insert(k, na1 + nb0);
            let mut m = Matrix::zeros(na2 + nb1, na1 + nb0, &e);
            let dak = da(k + 1);
            for i in 0..na2 {
                for j in 0..na1 {
                    let v = dak.get(i, j);
                    m.set(i, j, if s == 1 { v.clone() } else { -v });
                }
            }
            let p = &phis[&(k + 1)];
            for i in 0..nb1 {
                for j in 0..na1 {
                    m.set(na2 + i, j, p.get(i, j).clone());
                }
            }
            let dbk = db(k);
            for i in 0..nb1 {
                for j in 0..nb0 {
                    m.set(na2 + i, na1 + j, dbk.get(i, j).clone());
                }
            }
            diffs.insert(k, m);
        }
        let cone = CochainComplex::new(dims, diffs, e.clone())?;
        if cone.check_d_squared()? {
            return Ok(cone.ranks()?.values().all(|&r| r == 0));
        }
    }
    Err(AInfError::SeedNotClosed)
}

/// Certifies that a closed degree-0 morphism `f0: C → D` is a quasi-isomorphism:
/// composition with `f0` on either side is a quasi-isomorphism of hom complexes,
/// detected by acyclicity of the mapping cones.
pub fn certify_quasi_iso<C: AInf + ?Sized>(
    cat: &C,
    f0: &Morphism,
    dc: Option<&Morphism>,
    dd: Option<&Morphism>,
) -> Result<bool, AInfError> {
    let (c, d) = (f0.src, f0.tgt);
    if f0.coeffs().keys().any(|&b| cat.degree(c, d, b) != 0) {
        return Err(AInfError::DegreeViolation(
            "seed morphism must have degree 0".into(),
        ));
    }
    if !deformed_mu(cat, &[dc, dd], &[f0])?.is_zero() {
        return Err(AInfError::SeedNotClosed);
    }
    let cc = HomCohomology::new(cat, c, c, dc, dc)?;
    let cd = HomCohomology::new(cat, c, d, dc, dd)?;
    let dd_h = HomCohomology::new(cat, d, d, dd, dd)?;
    let right = cone_is_acyclic(cat, &cc, &cd, &|x| {
        deformed_mu(cat, &[dc, dc, dd], &[x, f0])
    })?;
    let left = cone_is_acyclic(cat, &dd_h, &cd, &|y| {
        deformed_mu(cat, &[dc, dd, dd], &[f0, y])
    })?;
    Ok(right && left)
}
