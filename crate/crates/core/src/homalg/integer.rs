use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::rational::{bigint_from_value, int_value};

/// A dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Panics on ragged input; `cols` fixes the width when `rows` is empty.
    pub fn from_rows(rows: &[Vec<BigInt>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged integer matrix");
            for (j, x) in r.iter().enumerate() {
                m.data[i * cols + j] = x.clone();
            }
        }
        m
    }

    pub fn from_i64(rows: &[Vec<i64>], cols: usize) -> Self {
        let rows: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_rows(&rows, cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let idx = i * o.cols + j;
                    out.data[idx] += a * o.get(k, j);
                }
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_dst += q·row_src
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(src, j) * q;
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col_dst += q·col_src
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, src) * q;
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let idx = i * self.cols + j;
            self.data[idx] = -&self.data[idx];
        }
    }

    /// Entries as decimal strings, so arbitrary precision survives JSON.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.to_rows()
                .iter()
                .map(|r| Value::Array(r.iter().map(|x| Value::String(x.to_string())).collect()))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self, String> {
        let rows = v.as_array().ok_or("matrix must be a list of rows")?;
        let parsed: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| {
                r.as_array()
                    .ok_or_else(|| "row must be a list".to_string())?
                    .iter()
                    .map(bigint_from_value)
                    .collect()
            })
            .collect::<Result<_, String>>()?;
        let cols = parsed.first().map_or(0, Vec::len);
        if parsed.iter().any(|r| r.len() != cols) {
            return Err("ragged matrix".into());
        }
        Ok(Self::from_rows(&parsed, cols))
    }
}

/// Output of [`smith_normal_form`]: `u · m · v = d`, with `v_inv = v⁻¹`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntegerMatrix,
    pub d: IntegerMatrix,
    pub v: IntegerMatrix,
    pub v_inv: IntegerMatrix,
}

impl SmithForm {
    /// The nonzero invariant factors `d₁ | d₂ | …`, all positive.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i).clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut v = IntegerMatrix::identity(cols);
    let mut v_inv = IntegerMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            // Smallest nonzero entry of the remaining block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = d.get(i, j);
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return SmithForm { u, d, v, v_inv };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                let q = -(d.get(i, t).div_floor(d.get(t, t)));
                if !q.is_zero() {
                    d.add_row(i, t, &q);
                    u.add_row(i, t, &q);
                }
                clean &= d.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                let q = -(d.get(t, j).div_floor(d.get(t, t)));
                if !q.is_zero() {
                    d.add_col(j, t, &q);
                    v.add_col(j, t, &q);
                    v_inv.add_row(t, j, &-&q);
                }
                clean &= d.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            // Enforce divisibility of the rest of the block by the pivot.
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !d.get(i, j).is_multiple_of(d.get(t, t)));
            match bad {
                Some((i, _)) => {
                    let one = BigInt::one();
                    d.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { u, d, v, v_inv }
}

/// Row-style Hermite normal form of the lattice spanned by `rows`; zero rows dropped.
pub fn hermite_basis(rows: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    let mut a = IntegerMatrix::from_rows(rows, dim);
    let mut r = 0;
    for c in 0..dim {
        if r == a.rows() {
            break;
        }
        // Euclid on column c among rows r.. until one nonzero entry remains.
        loop {
            let nz: Vec<usize> = (r..a.rows()).filter(|&i| !a.get(i, c).is_zero()).collect();
            if nz.len() <= 1 {
                if let Some(&i) = nz.first() {
                    a.swap_rows(r, i);
                }
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| a.get(i, c).abs()).unwrap();
            a.swap_rows(r, p);
            for i in r + 1..a.rows() {
                let q = -(a.get(i, c).div_floor(a.get(r, c)));
                if !q.is_zero() {
                    a.add_row(i, r, &q);
                }
            }
        }
        if a.get(r, c).is_zero() {
            continue;
        }
        if a.get(r, c).is_negative() {
            a.negate_row(r);
        }
        for i in 0..r {
            let q = -(a.get(i, c).div_floor(a.get(r, c)));
            if !q.is_zero() {
                a.add_row(i, r, &q);
            }
        }
        r += 1;
    }
    a.to_rows().into_iter().take(r).collect()
}

/// Basis of `(ℚ-span of gens) ∩ ℤᵐ`, in Hermite normal form.
pub fn saturation(gens: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    let sf = smith_normal_form(&IntegerMatrix::from_rows(gens, dim));
    let basis: Vec<Vec<BigInt>> = (0..sf.rank()).map(|i| sf.v_inv.row(i)).collect();
    hermite_basis(&basis, dim)
}

/// `[saturation : span]`, the product of the invariant factors.
pub fn saturation_index(gens: &[Vec<BigInt>], dim: usize) -> BigInt {
    smith_normal_form(&IntegerMatrix::from_rows(gens, dim))
        .invariant_factors()
        .iter()
        .product()
}

/// Whether `v` lies in the ℤ-span of `gens`.
pub fn subgroup_membership(v: &[BigInt], gens: &[Vec<BigInt>]) -> bool {
    let dim = v.len();
    let sf = smith_normal_form(&IntegerMatrix::from_rows(gens, dim));
    let factors = sf.invariant_factors();
    let w = IntegerMatrix::from_rows(&[v.to_vec()], dim).mul(&sf.v);
    (0..dim).all(|i| match factors.get(i) {
        Some(d) => w.get(0, i).is_multiple_of(d),
        None => w.get(0, i).is_zero(),
    })
}

pub fn int_vec(xs: &[i64]) -> Vec<BigInt> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn int_vec_json(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(int_value).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_smith(m: &IntegerMatrix) -> SmithForm {
        let sf = smith_normal_form(m);
        assert_eq!(sf.u.mul(m).mul(&sf.v), sf.d);
        assert_eq!(sf.v.mul(&sf.v_inv), IntegerMatrix::identity(m.cols()));
        assert_eq!(sf.u.determinant().abs(), BigInt::one());
        assert_eq!(sf.v.determinant().abs(), BigInt::one());
        for i in 0..sf.d.rows() {
            for j in 0..sf.d.cols() {
                if i != j {
                    assert!(sf.d.get(i, j).is_zero());
                }
            }
        }
        let f = sf.invariant_factors();
        for w in f.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        sf
    }

    #[test]
    fn smith_examples() {
        let id = IntegerMatrix::identity(3);
        assert_eq!(check_smith(&id).d, id);
        let m = IntegerMatrix::from_i64(&[vec![2, 0], vec![0, 3]], 2);
        assert_eq!(check_smith(&m).invariant_factors(), int_vec(&[1, 6]));
        let z = IntegerMatrix::zeros(2, 3);
        assert_eq!(check_smith(&z).d, z);
        let m = IntegerMatrix::from_i64(&[vec![4, 6, 8], vec![2, 4, 10], vec![6, 12, 2]], 3);
        check_smith(&m);
        check_smith(&IntegerMatrix::zeros(0, 3));
    }

    #[test]
    fn saturation_examples() {
        assert_eq!(saturation(&[int_vec(&[2, 0])], 2), vec![int_vec(&[1, 0])]);
        let full = saturation(&[int_vec(&[1, 1]), int_vec(&[1, -1])], 2);
        assert_eq!(full, vec![int_vec(&[1, 0]), int_vec(&[0, 1])]);
        assert_eq!(
            saturation_index(&[int_vec(&[1, 1]), int_vec(&[1, -1])], 2),
            BigInt::from(2)
        );
        assert!(saturation(&[], 2).is_empty());
    }

    #[test]
    fn membership_examples() {
        assert!(subgroup_membership(&int_vec(&[0, 0]), &[]));
        assert!(!subgroup_membership(&int_vec(&[1, 0]), &[int_vec(&[2, 0])]));
        assert!(subgroup_membership(&int_vec(&[4, 0]), &[int_vec(&[2, 0])]));
        assert!(!subgroup_membership(
            &int_vec(&[1, 0]),
            &[int_vec(&[1, 1]), int_vec(&[1, -1])]
        ));
        assert!(subgroup_membership(
            &int_vec(&[2, 0]),
            &[int_vec(&[1, 1]), int_vec(&[1, -1])]
        ));
    }

    #[test]
    fn determinant_small() {
        let m = IntegerMatrix::from_i64(&[vec![0, 2], vec![3, 1]], 2);
        assert_eq!(m.determinant(), BigInt::from(-6));
    }

    #[test]
    fn json_round_trip() {
        let m = IntegerMatrix::from_i64(&[vec![1, -2], vec![3, 4]], 2);
        assert_eq!(IntegerMatrix::from_json(&m.to_json()).unwrap(), m);
    }
}
