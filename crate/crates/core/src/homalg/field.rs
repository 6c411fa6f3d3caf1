use std::fmt::Debug;

use num_traits::{One, Zero};

use super::LinAlgError;
use crate::novikov::{Exponent, Gaussian, NovikovSeries, Valuation};
use crate::rational::Rational;

/// How an entry behaves as a pivot candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EntryStatus {
    Zero,
    /// Certainly nonzero; smaller keys are preferred pivots.
    NonZero(Rational),
    /// Cannot be told apart from zero at the working precision; the true
    /// valuation is at least `floor`.
    Undecidable(Rational),
}

/// A field in which ranks can be decided (or refused).
pub trait Field: Clone + Debug + PartialEq {
    type Ctx: Clone + Debug;
    fn zero_in(ctx: &Self::Ctx) -> Self;
    fn one_in(ctx: &Self::Ctx) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `None` only for the (known) zero element.
    fn inv(&self) -> Option<Self>;
    fn status(&self, ctx: &Self::Ctx) -> EntryStatus;
}

impl Field for Rational {
    type Ctx = ();
    fn zero_in(_: &()) -> Self {
        <Rational as Zero>::zero()
    }
    fn one_in(_: &()) -> Self {
        <Rational as One>::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
    fn status(&self, _: &()) -> EntryStatus {
        if self.is_zero() {
            EntryStatus::Zero
        } else {
            EntryStatus::NonZero(<Rational as Zero>::zero())
        }
    }
}

/// Working precision for Novikov linear algebra: an entry counts as zero only
/// when it is known to vanish modulo `q^E`.
impl Field for NovikovSeries {
    type Ctx = Exponent;
    fn zero_in(e: &Exponent) -> Self {
        NovikovSeries::zero(e.clone())
    }
    fn one_in(e: &Exponent) -> Self {
        NovikovSeries::one(e.clone())
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        self.invert().ok()
    }
    fn status(&self, e: &Exponent) -> EntryStatus {
        match self.val() {
            Valuation::Infinite if self.truncation() >= e => EntryStatus::Zero,
            Valuation::Infinite => EntryStatus::Undecidable(self.truncation().value().clone()),
            Valuation::Finite(v) if &v >= e => EntryStatus::Undecidable(v.value().clone()),
            Valuation::Finite(v) => EntryStatus::NonZero(v.value().clone()),
        }
    }
}

pub fn novikov_from_rational(r: &Rational, e: &Exponent) -> NovikovSeries {
    NovikovSeries::constant(Gaussian::real(r.clone()), e.clone())
}

/// Dense row-major matrix acting on column vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize, ctx: &F::Ctx) -> Self {
        Self {
            rows,
            cols,
            data: vec![F::zero_in(ctx); rows * cols],
        }
    }

    pub fn identity(n: usize, ctx: &F::Ctx) -> Self {
        let mut m = Self::zeros(n, n, ctx);
        for i in 0..n {
            m.set(i, i, F::one_in(ctx));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix");
            data.extend(row);
        }
        Self {
            rows: r,
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(columns: &[Vec<F>], rows: usize, ctx: &F::Ctx) -> Self {
        let mut m = Self::zeros(rows, columns.len(), ctx);
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: F) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> Vec<F> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul_vec(&self, x: &[F], ctx: &F::Ctx) -> Vec<F> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero_in(ctx);
                for (j, xj) in x.iter().enumerate() {
                    acc = acc.add(&self.get(i, j).mul(xj));
                }
                acc
            })
            .collect()
    }

    pub fn mul(&self, o: &Self, ctx: &F::Ctx) -> Self {
        assert_eq!(self.cols, o.rows);
        let mut out = Self::zeros(self.rows, o.cols, ctx);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = F::zero_in(ctx);
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(o.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Columns `self | other`.
    pub fn hstack(&self, o: &Self) -> Self {
        assert_eq!(self.rows, o.rows);
        let rows = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i);
                r.extend(o.row(i));
                r
            })
            .collect();
        Self::from_rows(rows, self.cols + o.cols)
    }
}

/// Gauss–Jordan form. Every pivot column is a unit vector with its 1 in the
/// pivot row; non-pivot rows are zero in the eliminated columns.
#[derive(Clone, Debug)]
pub struct Reduced<F> {
    pub matrix: Matrix<F>,
    /// `(row, col)` in the order chosen.
    pub pivots: Vec<(usize, usize)>,
}

impl<F: Field> Reduced<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_row_of(&self, col: usize) -> Option<usize> {
        self.pivots.iter().find(|p| p.1 == col).map(|p| p.0)
    }
}

/// Full-pivoting Gauss–Jordan over the first `elim_cols` columns.
///
/// The pivot is an entry of least key; ties go to the smallest `(col, row)`.
/// Over a truncated field this refuses to continue when an undecidable entry
/// could have had a smaller valuation than the chosen pivot, or when only
/// undecidable entries remain.
pub fn reduce<F: Field>(
    m: &Matrix<F>,
    elim_cols: usize,
    ctx: &F::Ctx,
) -> Result<Reduced<F>, LinAlgError> {
    let mut a = m.clone();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row_used = vec![false; a.rows];
    let mut col_used = vec![false; elim_cols];
    loop {
        let mut best: Option<(Rational, usize, usize)> = None;
        let mut undecided: Option<Rational> = None;
        for (c, &cu) in col_used.iter().enumerate() {
            if cu {
                continue;
            }
            for (r, &ru) in row_used.iter().enumerate() {
                if ru {
                    continue;
                }
                match a.get(r, c).status(ctx) {
                    EntryStatus::Zero => {}
                    EntryStatus::NonZero(k) => {
                        if best.as_ref().is_none_or(|b| k < b.0) {
                            best = Some((k, r, c));
                        }
                    }
                    EntryStatus::Undecidable(f) => {
                        if undecided.as_ref().is_none_or(|u| &f < u) {
                            undecided = Some(f);
                        }
                    }
                }
            }
        }
        let (_, pr, pc) = match (best, undecided) {
            (None, None) => break,
            (None, Some(f)) => {
                return Err(LinAlgError::Undecidable {
                    floor: f.to_string(),
                    pivot: None,
                })
            }
            (Some((k, ..)), Some(f)) if f < k => {
                return Err(LinAlgError::Undecidable {
                    floor: f.to_string(),
                    pivot: Some(k.to_string()),
                })
            }
            (Some(b), _) => b,
        };
        let inv = a.get(pr, pc).inv().ok_or(LinAlgError::Undecidable {
            floor: "pivot".into(),
            pivot: None,
        })?;
        for j in 0..a.cols {
            let v = a.get(pr, j).mul(&inv);
            a.set(pr, j, v);
        }
        a.set(pr, pc, F::one_in(ctx));
        for r in 0..a.rows {
            if r == pr {
                continue;
            }
            let f = a.get(r, pc).clone();
            if f.status(ctx) == EntryStatus::Zero {
                continue;
            }
            for j in 0..a.cols {
                let v = a.get(r, j).sub(&f.mul(a.get(pr, j)));
                a.set(r, j, v);
            }
            a.set(r, pc, F::zero_in(ctx));
        }
        row_used[pr] = true;
        col_used[pc] = true;
        pivots.push((pr, pc));
    }
    Ok(Reduced { matrix: a, pivots })
}

pub fn rank<F: Field>(m: &Matrix<F>, ctx: &F::Ctx) -> Result<usize, LinAlgError> {
    Ok(reduce(m, m.cols(), ctx)?.rank())
}

/// Kernel basis: one vector per free column, with that coordinate 1.
pub fn kernel<F: Field>(m: &Matrix<F>, ctx: &F::Ctx) -> Result<Vec<Vec<F>>, LinAlgError> {
    let red = reduce(m, m.cols(), ctx)?;
    let mut out = Vec::new();
    for f in 0..m.cols() {
        if red.pivot_row_of(f).is_some() {
            continue;
        }
        let mut v = vec![F::zero_in(ctx); m.cols()];
        v[f] = F::one_in(ctx);
        for &(r, c) in &red.pivots {
            v[c] = red.matrix.get(r, f).neg();
        }
        out.push(v);
    }
    Ok(out)
}

/// Solves `m·x = b`. Free coordinates are set to zero, which makes the answer
/// the unique solution supported on the pivot columns. `None` if inconsistent.
pub fn solve<F: Field>(
    m: &Matrix<F>,
    b: &[F],
    ctx: &F::Ctx,
) -> Result<Option<Vec<F>>, LinAlgError> {
    assert_eq!(b.len(), m.rows());
    let rhs = Matrix::from_columns(&[b.to_vec()], m.rows(), ctx);
    let red = reduce(&m.hstack(&rhs), m.cols(), ctx)?;
    let last = m.cols();
    for r in 0..m.rows() {
        if red.pivots.iter().any(|p| p.0 == r) {
            continue;
        }
        match red.matrix.get(r, last).status(ctx) {
            EntryStatus::Zero => {}
            EntryStatus::NonZero(_) => return Ok(None),
            EntryStatus::Undecidable(f) => {
                return Err(LinAlgError::Undecidable {
                    floor: f.to_string(),
                    pivot: None,
                })
            }
        }
    }
    let mut x = vec![F::zero_in(ctx); m.cols()];
    for &(r, c) in &red.pivots {
        x[c] = red.matrix.get(r, last).clone();
    }
    Ok(Some(x))
}

/// A basis of the column space, taken from the original columns.
pub fn column_space<F: Field>(m: &Matrix<F>, ctx: &F::Ctx) -> Result<Vec<Vec<F>>, LinAlgError> {
    let red = reduce(m, m.cols(), ctx)?;
    let mut cols: Vec<usize> = red.pivots.iter().map(|p| p.1).collect();
    cols.sort_unstable();
    Ok(cols.into_iter().map(|c| m.column(c)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
            cols,
        )
    }

    #[test]
    fn rank_kernel_solve_over_rationals() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(rank(&m, &()).unwrap(), 2);
        let k = kernel(&m, &()).unwrap();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0], &()).iter().all(Zero::is_zero));
        let b = vec![int(1), int(2), int(1)];
        let x = solve(&m, &b, &()).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x, &()), b);
        assert!(solve(&m, &[int(1), int(0), int(0)], &()).unwrap().is_none());
    }

    #[test]
    fn least_solution_sets_free_variables_to_zero() {
        let m = q(&[&[1, 1]]);
        let x = solve(&m, &[int(3)], &()).unwrap().unwrap();
        assert_eq!(x, vec![int(3), int(0)]);
    }

    fn ser(e: i64, c: i64, trunc: i64) -> NovikovSeries {
        NovikovSeries::monomial(
            Gaussian::from_int(c),
            Exponent::from_int(e),
            Exponent::from_int(trunc),
        )
    }

    #[test]
    fn novikov_prefers_small_valuation_pivots() {
        let e = Exponent::from_int(4);
        let m = Matrix::from_rows(vec![vec![ser(2, 1, 8), ser(0, 1, 8)]], 2);
        let red = reduce(&m, 2, &e).unwrap();
        assert_eq!(red.pivots, vec![(0, 1)]);
    }

    #[test]
    fn novikov_refuses_undecidable_ranks() {
        let e = Exponent::from_int(4);
        // A zero entry known only modulo q^2 cannot be decided at E = 4.
        let m = Matrix::from_rows(vec![vec![NovikovSeries::zero(Exponent::from_int(2))]], 1);
        assert!(matches!(rank(&m, &e), Err(LinAlgError::Undecidable { .. })));
        // An entry of valuation >= E is likewise undecidable.
        let m = Matrix::from_rows(vec![vec![ser(5, 1, 9)]], 1);
        assert!(rank(&m, &e).is_err());
        let m = Matrix::from_rows(vec![vec![ser(1, 1, 9)]], 1);
        assert_eq!(rank(&m, &e).unwrap(), 1);
    }
}
