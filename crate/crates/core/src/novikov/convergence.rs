use num_traits::Signed;

use super::{Exponent, NovikovError, NovikovSeries, Valuation};
use crate::rational::Rational;

/// `val(x_i) >= b_i` for every coordinate.
pub fn polydisc_contains(b: &[Exponent], x: &[NovikovSeries]) -> Result<bool, NovikovError> {
    if b.len() != x.len() {
        return Err(NovikovError::DimensionMismatch {
            expected: b.len(),
            got: x.len(),
        });
    }
    Ok(b.iter().zip(x).all(|(bi, xi)| match xi.val() {
        Valuation::Infinite => true,
        Valuation::Finite(v) => &v >= bi,
    }))
}

/// Which exponents the omitted tail may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailKind {
    /// `ν ∈ ℕⁿ`
    PowerSeries,
    /// `ν ∈ ℤⁿ`
    Laurent,
}

/// `val(f_ν) >= α·‖ν‖₁ + β` for every omitted `ν`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailBound {
    pub alpha: Rational,
    pub beta: Rational,
    pub kind: TailKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Region {
    /// `{ p : p_i >= b_i }` in valuation coordinates.
    Polydisc(Vec<Rational>),
    /// A bounded polytope given by its vertices.
    Polytope(Vec<Vec<Rational>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergenceCertificate {
    pub dim: usize,
    pub support: Vec<(Vec<i64>, NovikovSeries)>,
    pub tail: Option<TailBound>,
}

impl ConvergenceCertificate {
    pub fn finite(dim: usize, support: Vec<(Vec<i64>, NovikovSeries)>) -> Self {
        Self {
            dim,
            support,
            tail: None,
        }
    }

    pub fn with_tail(
        dim: usize,
        support: Vec<(Vec<i64>, NovikovSeries)>,
        tail: TailBound,
    ) -> Result<Self, NovikovError> {
        if !tail.alpha.is_positive() {
            return Err(NovikovError::Literal("tail slope must be positive".into()));
        }
        Ok(Self {
            dim,
            support,
            tail: Some(tail),
        })
    }

    /// Whether `val(f_ν) + ν·p → +∞` is certified at every point of the region.
    ///
    /// The condition is linear in `p`, so vertices suffice. With the ℓ¹ bound,
    /// `α‖ν‖₁ + ν·p` grows along every direction of `ℤⁿ` iff `α > ‖p‖∞`, and
    /// along every direction of `ℕⁿ` iff `α + min_i p_i > 0`.
    pub fn converges_on(&self, region: &Region) -> Result<bool, NovikovError> {
        let Some(tail) = &self.tail else {
            return Ok(true);
        };
        let points: Vec<&Vec<Rational>> = match (region, tail.kind) {
            (Region::Polydisc(_), TailKind::Laurent) => return Err(NovikovError::UnboundedRegion),
            (Region::Polydisc(b), TailKind::PowerSeries) => vec![b],
            (Region::Polytope(vs), _) => vs.iter().collect(),
        };
        for p in &points {
            if p.len() != self.dim {
                return Err(NovikovError::DimensionMismatch {
                    expected: self.dim,
                    got: p.len(),
                });
            }
        }
        Ok(points.iter().all(|p| match tail.kind {
            TailKind::PowerSeries => {
                let m = p
                    .iter()
                    .min()
                    .cloned()
                    .unwrap_or_else(|| tail.alpha.clone());
                (&tail.alpha + m).is_positive()
            }
            TailKind::Laurent => p.iter().all(|c| tail.alpha > c.abs()),
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::novikov::Gaussian;
    use crate::rational::{int, rat};

    fn e(n: i64, d: i64) -> Exponent {
        Exponent::ratio(n, d)
    }

    fn mono(n: i64, d: i64) -> NovikovSeries {
        NovikovSeries::q_power(e(n, d), e(10, 1))
    }

    #[test]
    fn polydisc_membership() {
        let one = NovikovSeries::one(e(10, 1));
        assert!(polydisc_contains(&[e(0, 1), e(0, 1)], &[one.clone(), one.clone()]).unwrap());
        assert!(!polydisc_contains(&[e(1, 1), e(0, 1)], &[mono(1, 2), one]).unwrap());
        let x2 = &mono(2, 1) + &mono(3, 1);
        assert!(polydisc_contains(&[e(1, 2), e(2, 1)], &[mono(1, 2), x2]).unwrap());
        assert!(polydisc_contains(&[e(1, 1)], &[]).is_err());
    }

    fn tail(kind: TailKind) -> ConvergenceCertificate {
        let support = vec![(
            vec![0, 0],
            NovikovSeries::constant(Gaussian::one(), e(4, 1)),
        )];
        ConvergenceCertificate::with_tail(
            2,
            support,
            TailBound {
                alpha: int(1),
                beta: int(0),
                kind,
            },
        )
        .unwrap()
    }

    #[test]
    fn finite_support_always_converges() {
        let c = ConvergenceCertificate::finite(2, vec![]);
        assert!(c
            .converges_on(&Region::Polydisc(vec![int(-5), int(-5)]))
            .unwrap());
    }

    #[test]
    fn vertex_checks() {
        let near = Region::Polytope(vec![
            vec![rat(-1, 2), rat(-1, 2)],
            vec![rat(1, 2), rat(-1, 2)],
            vec![rat(0, 1), rat(1, 2)],
        ]);
        let far = Region::Polytope(vec![
            vec![int(-2), int(0)],
            vec![int(0), int(0)],
            vec![int(0), int(1)],
        ]);
        for kind in [TailKind::PowerSeries, TailKind::Laurent] {
            assert!(tail(kind).converges_on(&near).unwrap());
            assert!(!tail(kind).converges_on(&far).unwrap());
        }
    }

    #[test]
    fn polydisc_needs_power_series_tail() {
        let disc = Region::Polydisc(vec![int(0), rat(-1, 2)]);
        assert!(tail(TailKind::PowerSeries).converges_on(&disc).unwrap());
        assert_eq!(
            tail(TailKind::Laurent).converges_on(&disc),
            Err(NovikovError::UnboundedRegion)
        );
        let bad = Region::Polydisc(vec![int(-1), int(0)]);
        assert!(!tail(TailKind::PowerSeries).converges_on(&bad).unwrap());
    }

    #[test]
    fn rejects_nonpositive_slope() {
        let t = TailBound {
            alpha: int(0),
            beta: int(0),
            kind: TailKind::Laurent,
        };
        assert!(ConvergenceCertificate::with_tail(1, vec![], t).is_err());
    }
}
