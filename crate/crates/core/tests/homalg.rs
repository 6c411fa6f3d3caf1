use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use pointlike_core::homalg::{
    int_vec, kernel, rank, saturation, saturation_index, smith_normal_form, solve,
    subgroup_membership, CochainComplex, IntegerMatrix, LinAlgError, Matrix,
};
use pointlike_core::novikov::{Exponent, Gaussian, NovikovSeries};
use pointlike_core::rational::{int, Rational};

fn imat(rows: &[Vec<i64>]) -> IntegerMatrix {
    IntegerMatrix::from_i64(rows, rows.first().map_or(0, Vec::len))
}

/// Determinant by cofactor expansion, independent of the library.
fn det(m: &[Vec<BigInt>]) -> BigInt {
    match m.len() {
        0 => BigInt::one(),
        1 => m[0][0].clone(),
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<BigInt>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let s = if j % 2 == 0 {
                    BigInt::one()
                } else {
                    -BigInt::one()
                };
                s * &m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors from determinantal divisors: `d₁⋯d_k = gcd of k×k minors`.
fn invariant_factors_oracle(m: &IntegerMatrix) -> Vec<BigInt> {
    let rows = m.to_rows();
    let mut prev = BigInt::one();
    let mut out = Vec::new();
    for k in 1..=m.rows().min(m.cols()) {
        let mut g = BigInt::zero();
        for rs in subsets(m.rows(), k) {
            for cs in subsets(m.cols(), k) {
                let minor: Vec<Vec<BigInt>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| rows[r][c].clone()).collect())
                    .collect();
                g = g.gcd(&det(&minor));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

fn small_matrix(r: usize, c: usize) -> impl Strategy<Value = IntegerMatrix> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, c), r)
        .prop_map(move |rows| IntegerMatrix::from_i64(&rows, c))
}

#[test]
fn smith_of_diag_two_three() {
    let m = imat(&[vec![2, 0], vec![0, 3]]);
    assert_eq!(invariant_factors_oracle(&m), int_vec(&[1, 6]));
    assert_eq!(smith_normal_form(&m).invariant_factors(), int_vec(&[1, 6]));
}

#[test]
fn smith_of_identity_and_zero() {
    let id = IntegerMatrix::identity(4);
    let sf = smith_normal_form(&id);
    assert_eq!(sf.d, id);
    assert!(sf.u.determinant().abs().is_one() && sf.v.determinant().abs().is_one());
    let z = IntegerMatrix::zeros(3, 2);
    assert_eq!(smith_normal_form(&z).d, z);
    assert_eq!(smith_normal_form(&z).rank(), 0);
}

proptest! {
    #[test]
    fn smith_factorization(m in small_matrix(3, 4)) {
        let sf = smith_normal_form(&m);
        prop_assert_eq!(sf.u.mul(&m).mul(&sf.v), sf.d.clone());
        prop_assert!(sf.u.determinant().abs().is_one());
        prop_assert!(sf.v.determinant().abs().is_one());
        prop_assert_eq!(sf.v.mul(&sf.v_inv), IntegerMatrix::identity(4));
        for i in 0..3 {
            for j in 0..4 {
                if i != j {
                    prop_assert!(sf.d.get(i, j).is_zero());
                }
            }
        }
        let f = sf.invariant_factors();
        for w in f.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
        prop_assert_eq!(f, invariant_factors_oracle(&m));
    }

    #[test]
    fn saturation_laws(gens in prop::collection::vec(prop::collection::vec(-5i64..=5, 3), 0..4)) {
        let g: Vec<Vec<BigInt>> = gens.iter().map(|v| int_vec(v)).collect();
        let sat = saturation(&g, 3);
        prop_assert_eq!(saturation(&sat, 3), sat.clone());
        for v in &g {
            prop_assert!(subgroup_membership(v, &sat) || sat.is_empty() && v.iter().all(Zero::is_zero));
        }
        if !g.iter().all(|v| v.iter().all(Zero::is_zero)) {
            prop_assert!(saturation_index(&g, 3).is_positive());
        }
        // Saturation = ℤ³ ∩ ℚ-span: a box vector lies in it iff adjoining it keeps the ℚ-rank.
        let qrank = |vs: &[Vec<BigInt>]| {
            let cols: Vec<Vec<Rational>> = vs.iter().map(|v| v.iter().map(|x| Rational::from_integer(x.clone())).collect()).collect();
            if cols.is_empty() { 0 } else { rank(&Matrix::from_columns(&cols, 3, &()), &()).unwrap() }
        };
        let r = qrank(&g);
        for a in -2i64..=2 {
            for b in -2i64..=2 {
                for c in -2i64..=2 {
                    let v = int_vec(&[a, b, c]);
                    let mut h = g.clone();
                    h.push(v.clone());
                    let in_span = qrank(&h) == r;
                    let in_sat = if sat.is_empty() { v.iter().all(Zero::is_zero) } else { subgroup_membership(&v, &sat) };
                    prop_assert_eq!(in_span, in_sat);
                }
            }
        }
    }

    #[test]
    fn membership_matches_bounded_search(
        g in prop::collection::vec(prop::collection::vec(-4i64..=4, 2), 2)
            .prop_filter("independent", |g| g[0][0] * g[1][1] - g[0][1] * g[1][0] != 0),
        v in prop::collection::vec(-6i64..=6, 2),
    ) {
        // Cramer bounds the coefficients by 48 here.
        let mut found = false;
        'outer: for a in -50i64..=50 {
            for b in -50i64..=50 {
                if a * g[0][0] + b * g[1][0] == v[0] && a * g[0][1] + b * g[1][1] == v[1] {
                    found = true;
                    break 'outer;
                }
            }
        }
        let gens = vec![int_vec(&g[0]), int_vec(&g[1])];
        prop_assert_eq!(subgroup_membership(&int_vec(&v), &gens), found);
    }

    #[test]
    fn rational_kernel_and_solve(rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 4), 3), x in prop::collection::vec(-3i64..=3, 4)) {
        let m = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&a| int(a)).collect()).collect(), 4);
        let k = kernel(&m, &()).unwrap();
        prop_assert_eq!(k.len() + rank(&m, &()).unwrap(), 4);
        for z in &k {
            prop_assert!(m.mul_vec(z, &()).iter().all(Zero::is_zero));
        }
        let xs: Vec<Rational> = x.iter().map(|&a| int(a)).collect();
        let b = m.mul_vec(&xs, &());
        let sol = solve(&m, &b, &()).unwrap().expect("b lies in the image");
        prop_assert_eq!(m.mul_vec(&sol, &()), b);
    }
}

fn qmat(rows: &[Vec<i64>], cols: usize) -> Matrix<Rational> {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&a| int(a)).collect())
            .collect(),
        cols,
    )
}

#[test]
fn cohomology_of_small_complexes() {
    let dims = BTreeMap::from([(0, 2), (1, 2)]);
    let zero = CochainComplex::new(
        dims.clone(),
        BTreeMap::from([(0, qmat(&[vec![0, 0], vec![0, 0]], 2))]),
        (),
    )
    .unwrap();
    assert_eq!(zero.ranks().unwrap(), dims);
    let id = CochainComplex::new(
        dims,
        BTreeMap::from([(0, qmat(&[vec![1, 0], vec![0, 1]], 2))]),
        (),
    )
    .unwrap();
    assert!(id.ranks().unwrap().values().all(|&r| r == 0));
    // Exterior algebra on two generators with vanishing differential.
    let ext = CochainComplex::<Rational>::new(
        BTreeMap::from([(0, 1), (1, 2), (2, 1)]),
        BTreeMap::new(),
        (),
    )
    .unwrap();
    assert_eq!(
        ext.ranks().unwrap(),
        BTreeMap::from([(0, 1), (1, 2), (2, 1)])
    );
}

#[test]
fn projection_kills_boundaries() {
    // ℚ → ℚ² → ℚ with d₀ = (1, 1)ᵀ and d₁ = (1, -1): exact in the middle.
    let c = CochainComplex::new(
        BTreeMap::from([(0, 1), (1, 2), (2, 1)]),
        BTreeMap::from([
            (0, qmat(&[vec![1], vec![1]], 1)),
            (1, qmat(&[vec![1, -1]], 2)),
        ]),
        (),
    )
    .unwrap();
    assert!(c.check_d_squared().unwrap());
    let h1 = c.cohomology(1).unwrap();
    assert_eq!(h1.rank(), 0);
    assert!(h1
        .project(&[int(3), int(3)])
        .unwrap()
        .iter()
        .all(Zero::is_zero));
    assert!(matches!(
        h1.project(&[int(1), int(0)]),
        Err(LinAlgError::NotClosed)
    ));
}

fn mono(e: i64, trunc: &Exponent) -> NovikovSeries {
    NovikovSeries::monomial(Gaussian::one(), Exponent::from_int(e), trunc.clone())
}

#[test]
fn novikov_cohomology_is_stable_under_raising_truncation() {
    // d = (q, q²), entries known modulo q⁸. Splitting off H¹ meets a 2×2
    // minor of valuation 2, so the answer is refused until E > 2.
    let known = Exponent::from_int(8);
    let ranks = |e: i64| {
        let t = Exponent::from_int(e);
        let d = Matrix::from_rows(vec![vec![mono(1, &known)], vec![mono(2, &known)]], 1);
        CochainComplex::new(
            BTreeMap::from([(0, 1), (1, 2)]),
            BTreeMap::from([(0, d)]),
            t,
        )
        .unwrap()
        .ranks()
    };
    let want = BTreeMap::from([(0, 0), (1, 1)]);
    for e in 3..=8 {
        assert_eq!(ranks(e).unwrap(), want);
    }
    for e in 1..=2 {
        assert!(matches!(ranks(e), Err(LinAlgError::Undecidable { .. })));
    }
}
