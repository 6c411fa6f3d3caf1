//! Even lattices, Mukai vectors on K3 surfaces and the sublattice spanned by
//! vectors of square `-2`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::homalg::{hermite_basis, saturation, subgroup_membership, IntegerMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("dimension mismatch: lattice has rank {expected}, vector has {got} coordinates")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("bound must be at least 1")]
    BadBound,
    #[error("n must be at least 1")]
    BadN,
}

/// `ℤ^rank` with a symmetric integer Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerLattice {
    gram: IntegerMatrix,
}

impl IntegerLattice {
    pub fn new(gram: IntegerMatrix) -> Result<Self, LatticeError> {
        let n = gram.rows();
        if gram.cols() != n {
            return Err(LatticeError::NotSymmetric);
        }
        for i in 0..n {
            for j in 0..i {
                if gram.get(i, j) != gram.get(j, i) {
                    return Err(LatticeError::NotSymmetric);
                }
            }
        }
        Ok(Self { gram })
    }

    /// `U ⊕ ⟨2n⟩`: `(a, b, c)² = 2ab + 2nc²`.
    pub fn u_plus_even(n: i64) -> Self {
        Self {
            gram: IntegerMatrix::from_i64(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 2 * n]], 3),
        }
    }

    /// Mukai lattice `U ⊕ Pic` in coordinates `(r, D, s)`, with
    /// `⟨(r, D, s), (r', D', s')⟩ = D·D' - r s' - s r'`.
    pub fn mukai_k3(pic_gram: &IntegerMatrix) -> Result<Self, LatticeError> {
        let p = pic_gram.rows();
        let n = p + 2;
        let mut g = IntegerMatrix::zeros(n, n);
        g.set(0, n - 1, BigInt::from(-1));
        g.set(n - 1, 0, BigInt::from(-1));
        for i in 0..p {
            for j in 0..p {
                g.set(1 + i, 1 + j, pic_gram.get(i, j).clone());
            }
        }
        Self::new(g)
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &IntegerMatrix {
        &self.gram
    }

    pub fn pairing(&self, v: &[BigInt], w: &[BigInt]) -> Result<BigInt, LatticeError> {
        let n = self.rank();
        for x in [v, w] {
            if x.len() != n {
                return Err(LatticeError::DimensionMismatch {
                    expected: n,
                    got: x.len(),
                });
            }
        }
        let mut acc = BigInt::zero();
        for i in 0..n {
            if v[i].is_zero() {
                continue;
            }
            for j in 0..n {
                acc += &v[i] * self.gram.get(i, j) * &w[j];
            }
        }
        Ok(acc)
    }

    pub fn square(&self, v: &[BigInt]) -> Result<BigInt, LatticeError> {
        self.pairing(v, v)
    }

    /// Every vector with all coordinates in `[-bound, bound]` and square `-2`.
    pub fn enumerate_square_minus2(&self, bound: i64) -> Result<Vec<Vec<BigInt>>, LatticeError> {
        if bound < 1 {
            return Err(LatticeError::BadBound);
        }
        let n = self.rank();
        let target = BigInt::from(-2);
        let mut out = Vec::new();
        let mut v = vec![-bound; n];
        loop {
            let bv: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
            if self.square(&bv)? == target {
                out.push(bv);
            }
            let mut k = n;
            loop {
                if k == 0 {
                    return Ok(out);
                }
                k -= 1;
                if v[k] < bound {
                    v[k] += 1;
                    break;
                }
                v[k] = -bound;
            }
        }
    }
}

/// Mukai vector `(r, D, s)` of a sheaf on a K3 surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MukaiVector {
    pub r: BigInt,
    pub d: Vec<BigInt>,
    pub s: BigInt,
}

impl MukaiVector {
    pub fn coords(&self) -> Vec<BigInt> {
        let mut v = vec![self.r.clone()];
        v.extend(self.d.iter().cloned());
        v.push(self.s.clone());
        v
    }
}

/// `ch(E)·√td` with `√td = (1, 0, 1)`: `(r, c₁, ch₂ + r)`.
pub fn mukai_vector(r: BigInt, c1: Vec<BigInt>, ch2: BigInt) -> MukaiVector {
    let s = ch2 + &r;
    MukaiVector { r, d: c1, s }
}

/// Euler pairing `χ(v, w) = -⟨v, w⟩`.
pub fn chi(
    lattice: &IntegerLattice,
    v: &MukaiVector,
    w: &MukaiVector,
) -> Result<BigInt, LatticeError> {
    Ok(-lattice.pairing(&v.coords(), &w.coords())?)
}

/// HNF basis of the span together with the HNF basis of its saturation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanReport {
    pub span: Vec<Vec<BigInt>>,
    pub saturation: Vec<Vec<BigInt>>,
    /// `[saturation : span]`.
    pub index: BigInt,
}

pub fn span_and_saturation(vectors: &[Vec<BigInt>], dim: usize) -> SpanReport {
    let span = hermite_basis(vectors, dim);
    let sat = saturation(&span, dim);
    let index = if span.is_empty() {
        BigInt::one()
    } else {
        crate::homalg::saturation_index(&span, dim)
    };
    SpanReport {
        span,
        saturation: sat,
        index,
    }
}

pub fn membership(v: &[BigInt], span_basis: &[Vec<BigInt>]) -> bool {
    if span_basis.is_empty() {
        return v.iter().all(Zero::is_zero);
    }
    subgroup_membership(v, span_basis)
}

/// The explicit square `-2` classes `(1, -n c² - 1, c)`, `c = 0..=3`, of `U ⊕ ⟨2n⟩`.
pub fn explicit_generators(n: i64) -> Vec<Vec<BigInt>> {
    (0..=3i64)
        .map(|c| vec![BigInt::one(), BigInt::from(-n * c * c - 1), BigInt::from(c)])
        .collect()
}

/// A linear functional mod 2 on `(a, b, c)` that vanishes on every square `-2` vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Congruence {
    pub coeffs: [u8; 3],
}

impl Congruence {
    pub fn eval(&self, v: &[BigInt]) -> u8 {
        let mut acc = BigInt::zero();
        for (c, x) in self.coeffs.iter().zip(v) {
            acc += BigInt::from(*c) * x;
        }
        if acc.is_even() {
            0
        } else {
            1
        }
    }

    pub fn describe(&self) -> String {
        let names = ["a", "b", "c"];
        let terms: Vec<&str> = names
            .iter()
            .zip(self.coeffs)
            .filter(|(_, c)| *c == 1)
            .map(|(n, _)| *n)
            .collect();
        format!("{} = 0 mod 2", terms.join("+"))
    }
}

/// For `(a, b, c)² = -2`: `ab + nc² = -1`, so `ab` is odd when `n` is even
/// (`a+b ≡ 0`), and for `n ≡ 1 (4)` parity forces `a+b+c ≡ 0`. No functional
/// for `n ≡ 3 (4)`.
pub fn congruence_obstruction(n: i64) -> Result<Option<Congruence>, LatticeError> {
    if n < 1 {
        return Err(LatticeError::BadN);
    }
    Ok(match n.rem_euclid(4) {
        0 | 2 => Some(Congruence { coeffs: [1, 1, 0] }),
        1 => Some(Congruence { coeffs: [1, 1, 1] }),
        _ => None,
    })
}

/// Summary of the square `-2` sublattice of `U ⊕ ⟨2n⟩` at a coordinate bound.
#[derive(Clone, Debug, Serialize)]
pub struct LatticeReport {
    pub n: i64,
    pub bound: i64,
    pub count_minus2: usize,
    /// Whether `(1, 0, 0)` lies in the span of the enumerated and explicit classes.
    pub member_100: bool,
    pub saturation_full: bool,
    pub congruence: Option<String>,
    /// Every enumerated class satisfies the congruence (vacuous without one).
    pub congruence_holds: bool,
    pub saturation_index: String,
}

pub fn lattice_report(n: i64, bound: i64) -> Result<LatticeReport, LatticeError> {
    if n < 1 {
        return Err(LatticeError::BadN);
    }
    let lat = IntegerLattice::u_plus_even(n);
    let found = lat.enumerate_square_minus2(bound)?;
    let count = found.len();
    let mut gens = found.clone();
    gens.extend(explicit_generators(n));
    let rep = span_and_saturation(&gens, 3);
    let e1 = vec![BigInt::one(), BigInt::zero(), BigInt::zero()];
    let member = membership(&e1, &rep.span);
    let full = rep.saturation.len() == 3
        && IntegerMatrix::from_rows(&rep.saturation, 3)
            .determinant()
            .abs()
            .is_one();
    let cong = congruence_obstruction(n)?;
    let holds = cong.is_none_or(|c| gens.iter().all(|v| c.eval(v) == 0));
    Ok(LatticeReport {
        n,
        bound,
        count_minus2: count,
        member_100: member,
        saturation_full: full,
        congruence: cong.map(|c| c.describe()),
        congruence_holds: holds,
        saturation_index: rep.index.to_string(),
    })
}
