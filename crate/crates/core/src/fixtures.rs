//! Small categories and twisted complexes with known answers.

use std::collections::BTreeMap;

use crate::ainf::{
    AInf, AInfCategory, BasisElement, Family, Morphism, MultiIndex, VersalMatchProblem,
};
use crate::novikov::{Exponent, NovikovSeries};
use crate::twisted::{HomotopyIdempotent, Summand, TwistedCategory, TwistedError};

fn one_object(
    basis: &[(&str, i32)],
    products: &[(&str, &str, &str, i64)],
    e: Exponent,
) -> AInfCategory {
    let mut cat = AInfCategory::new(&["C"], e);
    cat.set_hom(
        0,
        0,
        basis
            .iter()
            .map(|(n, d)| BasisElement::new(n, *d))
            .collect(),
    );
    cat.set_unit(0, 0);
    for (a, b, out, c) in products {
        let ix = |n: &str| cat.basis_index(0, 0, n).expect("fixture basis");
        let (ia, ib, io) = (ix(a), ix(b), ix(out));
        cat.add_mu_int(&[0, 0, 0], &[ia, ib], io, *c);
    }
    cat.finish().expect("fixture is valid")
}

/// Cohomology of the 2-torus: `e, X, Y, XY` with `μ²(X, Y) = XY = -μ²(Y, X)`.
pub fn torus(e: Exponent) -> AInfCategory {
    one_object(
        &[("e", 0), ("X", 1), ("Y", 1), ("XY", 2)],
        &[("X", "Y", "XY", 1), ("Y", "X", "XY", -1)],
        e,
    )
}

/// Cohomology of the 2-sphere: `e, Z` with `|Z| = 2`.
pub fn sphere(e: Exponent) -> AInfCategory {
    one_object(&[("e", 0), ("Z", 2)], &[], e)
}

/// Ranks `(1, 2, 1)` but every product of positive-degree classes vanishes.
pub fn degenerate(e: Exponent) -> AInfCategory {
    one_object(&[("e", 0), ("X", 1), ("Y", 1), ("Z", 2)], &[], e)
}

/// DG algebra `e, u, v` with `du = v`, `u·u = v`, so `μ¹(u) = -v`, `μ²(u, u) = -v`.
pub fn dg_three(e: Exponent) -> AInfCategory {
    let mut cat = AInfCategory::new(&["C"], e);
    cat.set_hom(
        0,
        0,
        vec![
            BasisElement::new("e", 0),
            BasisElement::new("u", 1),
            BasisElement::new("v", 2),
        ],
    );
    cat.set_unit(0, 0);
    cat.add_mu_int(&[0, 0], &[1], 2, -1);
    cat.add_mu_int(&[0, 0, 0], &[1, 1], 2, -1);
    cat.finish().expect("fixture is valid")
}

/// Basis index of `name` in the single hom space of a one-object fixture.
pub fn ix(cat: &AInfCategory, name: &str) -> usize {
    cat.basis_index(0, 0, name).expect("fixture basis")
}

/// `x₁·X + x₂·Y` on the torus.
pub fn torus_family(cat: &AInfCategory, formal: bool) -> Family {
    Family::linear(
        0,
        vec![cat.basis(0, 0, ix(cat, "X")), cat.basis(0, 0, ix(cat, "Y"))],
        formal,
    )
}

/// Two twisted complexes over the torus: `T = C` and
/// `D = C ⊕ Cone(e: C[1] → C)`, with `D` quasi-isomorphic to `T` through the
/// inclusion of the first summand.
pub struct TwistedPair {
    pub cat: TwistedCategory<AInfCategory>,
    pub t: usize,
    pub d: usize,
}

impl TwistedPair {
    pub fn new(e: Exponent) -> Self {
        let base = torus(e);
        let mut cat = TwistedCategory::new(base);
        let t = cat
            .add_object("T", vec![Summand::new(0, 0, 0)])
            .expect("valid");
        let d = cat
            .add_object(
                "D",
                vec![
                    Summand::new(0, 0, 0),
                    Summand::new(0, 1, 0),
                    Summand::new(0, 0, 1),
                ],
            )
            .expect("valid");
        let one = NovikovSeries::one(cat.truncation().clone());
        let delta = cat.from_entries(d, d, [(1, 2, ix(&cat.base, "e"), one)]);
        cat.set_delta(d, delta)
            .expect("cone differential is Maurer-Cartan");
        Self { cat, t, d }
    }

    fn elem(&self, x: usize, y: usize, row: usize, col: usize, name: &str) -> Morphism {
        let one = NovikovSeries::one(self.cat.truncation().clone());
        self.cat
            .from_entries(x, y, [(row, col, ix(&self.cat.base, name), one)])
    }

    /// Inclusion `T → D` onto the first summand.
    pub fn seed(&self) -> Morphism {
        self.elem(self.t, self.d, 0, 0, "e")
    }

    /// `h = e` in the `T → C[1]` block; degree `-1`.
    pub fn homotopy(&self) -> Morphism {
        self.elem(self.t, self.d, 0, 1, "e")
    }

    /// `x₁·X + x₂·Y` on `T`.
    pub fn source_family(&self) -> Family {
        Family::linear(
            self.t,
            vec![
                self.elem(self.t, self.t, 0, 0, "X"),
                self.elem(self.t, self.t, 0, 0, "Y"),
            ],
            true,
        )
    }

    /// `x₁·X + x₂·Y` on every diagonal summand of `D`.
    pub fn diagonal(&self, name: &str) -> Morphism {
        let mut acc = self.cat.zero(self.d, self.d);
        for j in 0..3 {
            acc = acc.add(&self.elem(self.d, self.d, j, j, name));
        }
        acc
    }

    pub fn target_family(&self) -> Family {
        Family::linear(self.d, vec![self.diagonal("X"), self.diagonal("Y")], true)
    }

    /// Target family `ε(y) = diag(θ₁(y)·X + θ₂(y)·Y)` for an integer polynomial map `θ`.
    pub fn pulled_back_family(&self, theta: &[BTreeMap<MultiIndex, i64>; 2]) -> Family {
        let nvars = theta
            .iter()
            .flat_map(|t| t.keys())
            .map(Vec::len)
            .next()
            .unwrap_or(2);
        let mut fam = Family::new(self.d, nvars, true);
        for (i, name) in ["X", "Y"].iter().enumerate() {
            let dir = self.diagonal(name);
            for (m, &c) in &theta[i] {
                fam.insert(m.clone(), dir.scale_int(c));
            }
        }
        fam
    }

    pub fn problem(&self, target: Family, order: u32) -> VersalMatchProblem {
        VersalMatchProblem {
            source: self.source_family(),
            target,
            seed: self.seed(),
            order,
        }
    }
}

/// The nonlinear coordinate change `θ = (y₁ + y₂ + y₁², y₂ + y₁y₂)`.
pub fn planted_theta() -> [BTreeMap<MultiIndex, i64>; 2] {
    [
        BTreeMap::from([(vec![1, 0], 1), (vec![0, 1], 1), (vec![2, 0], 1)]),
        BTreeMap::from([(vec![0, 1], 1), (vec![1, 1], 1)]),
    ]
}

/// `θ = (y₂, y₁)`.
pub fn swapped_theta() -> [BTreeMap<MultiIndex, i64>; 2] {
    [
        BTreeMap::from([(vec![0, 1], 1)]),
        BTreeMap::from([(vec![1, 0], 1)]),
    ]
}

/// `V = C ⊕ C` over the torus with the projection onto the first summand.
pub fn summand_projection(e: Exponent) -> (TwistedCategory<AInfCategory>, HomotopyIdempotent) {
    let mut cat = TwistedCategory::new(torus(e));
    let v = cat
        .add_object("V", vec![Summand::new(0, 0, 0), Summand::new(0, 0, 0)])
        .expect("valid");
    let one = NovikovSeries::one(cat.truncation().clone());
    let p1 = cat.from_entries(v, v, [(0, 0, ix(&cat.base, "e"), one)]);
    (
        cat,
        HomotopyIdempotent {
            carrier: v,
            components: BTreeMap::from([(1, p1)]),
        },
    )
}

/// Contractible `V = Cone(e: C[1] → C)` over the torus with `℘¹ = e + X` where
/// `X` sits in the block from the second summand to the first; `℘¹` is not closed.
pub fn failing_idempotent(
    e: Exponent,
) -> Result<(TwistedCategory<AInfCategory>, HomotopyIdempotent), TwistedError> {
    let mut cat = TwistedCategory::new(torus(e));
    let v = cat.add_object("V", vec![Summand::new(0, 1, 0), Summand::new(0, 0, 1)])?;
    let one = NovikovSeries::one(cat.truncation().clone());
    let delta = cat.from_entries(v, v, [(0, 1, ix(&cat.base, "e"), one.clone())]);
    cat.set_delta(v, delta)?;
    let unit = cat.unit(v).expect("torus is unital");
    let nil = cat.from_entries(v, v, [(1, 0, ix(&cat.base, "X"), one)]);
    let p = HomotopyIdempotent {
        carrier: v,
        components: BTreeMap::from([(1, unit.add(&nil))]),
    };
    Ok((cat, p))
}

/// Single-summand wrapper of a one-object category, with the unit idempotent.
pub fn as_twisted(base: AInfCategory) -> (TwistedCategory<AInfCategory>, HomotopyIdempotent) {
    let mut cat = TwistedCategory::new(base);
    let v = cat
        .add_object("C", vec![Summand::new(0, 0, 0)])
        .expect("valid");
    let p = HomotopyIdempotent::unit(&cat, v).expect("unital");
    (cat, p)
}
