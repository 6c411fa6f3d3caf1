use std::collections::BTreeMap;

use super::field::{column_space, kernel, rank, solve, EntryStatus, Field, Matrix};
use super::LinAlgError;

/// Cohomology in a single degree: cycles modulo the image of the incoming map.
#[derive(Clone, Debug)]
pub struct CohomologyGroup<F: Field> {
    pub dim: usize,
    /// Basis of the image of the incoming differential.
    pub boundaries: Vec<Vec<F>>,
    /// Cocycles whose classes form a basis of cohomology.
    pub reps: Vec<Vec<F>>,
    d_out: Option<Matrix<F>>,
    ctx: F::Ctx,
}

impl<F: Field> CohomologyGroup<F> {
    /// `d_in: C^{k-1} → C^k` and `d_out: C^k → C^{k+1}`, either may be absent.
    pub fn new(
        dim: usize,
        d_in: Option<&Matrix<F>>,
        d_out: Option<&Matrix<F>>,
        ctx: &F::Ctx,
    ) -> Result<Self, LinAlgError> {
        for (m, is_in) in [(d_in, true), (d_out, false)] {
            if let Some(m) = m {
                let got = if is_in { m.rows() } else { m.cols() };
                if got != dim {
                    return Err(LinAlgError::DimensionMismatch { expected: dim, got });
                }
            }
        }
        let cycles = match d_out {
            Some(m) => kernel(m, ctx)?,
            None => (0..dim)
                .map(|i| {
                    let mut v = vec![F::zero_in(ctx); dim];
                    v[i] = F::one_in(ctx);
                    v
                })
                .collect(),
        };
        let boundaries = match d_in {
            Some(m) => column_space(m, ctx)?,
            None => Vec::new(),
        };
        // Extend the boundary basis greedily by cycles that raise the rank.
        let mut reps = Vec::new();
        let mut current = boundaries.clone();
        let mut r = current.len();
        for z in cycles {
            current.push(z.clone());
            let next = rank(&Matrix::from_columns(&current, dim, ctx), ctx)?;
            if next > r {
                r = next;
                reps.push(z);
            } else {
                current.pop();
            }
        }
        Ok(Self {
            dim,
            boundaries,
            reps,
            d_out: d_out.cloned(),
            ctx: ctx.clone(),
        })
    }

    pub fn rank(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of the class of a cocycle `z` in the basis `reps`.
    pub fn project(&self, z: &[F]) -> Result<Vec<F>, LinAlgError> {
        if z.len() != self.dim {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.dim,
                got: z.len(),
            });
        }
        if let Some(d) = &self.d_out {
            for x in d.mul_vec(z, &self.ctx) {
                match x.status(&self.ctx) {
                    EntryStatus::Zero => {}
                    EntryStatus::NonZero(_) => return Err(LinAlgError::NotClosed),
                    EntryStatus::Undecidable(f) => {
                        return Err(LinAlgError::Undecidable {
                            floor: f.to_string(),
                            pivot: None,
                        })
                    }
                }
            }
        }
        let mut cols = self.boundaries.clone();
        cols.extend(self.reps.iter().cloned());
        let m = Matrix::from_columns(&cols, self.dim, &self.ctx);
        let c = solve(&m, z, &self.ctx)?.ok_or(LinAlgError::NotClosed)?;
        Ok(c[self.boundaries.len()..].to_vec())
    }

    /// Whether a cocycle is a coboundary.
    pub fn is_exact(&self, z: &[F]) -> Result<bool, LinAlgError> {
        Ok(self
            .project(z)?
            .iter()
            .all(|x| x.status(&self.ctx) == EntryStatus::Zero))
    }
}

/// Finite cochain complex. `diffs[k]` maps degree `k` to `k + 1`, as a
/// `dims[k+1] × dims[k]` matrix.
#[derive(Clone, Debug)]
pub struct CochainComplex<F: Field> {
    pub dims: BTreeMap<i32, usize>,
    pub diffs: BTreeMap<i32, Matrix<F>>,
    pub ctx: F::Ctx,
}

impl<F: Field> CochainComplex<F> {
    pub fn new(
        dims: BTreeMap<i32, usize>,
        diffs: BTreeMap<i32, Matrix<F>>,
        ctx: F::Ctx,
    ) -> Result<Self, LinAlgError> {
        for (&k, m) in &diffs {
            let src = dims.get(&k).copied().unwrap_or(0);
            let tgt = dims.get(&(k + 1)).copied().unwrap_or(0);
            if m.cols() != src || m.rows() != tgt {
                return Err(LinAlgError::DimensionMismatch {
                    expected: src,
                    got: m.cols(),
                });
            }
        }
        Ok(Self { dims, diffs, ctx })
    }

    /// `d_{k+1} ∘ d_k` vanishes for every `k` (within the working precision).
    pub fn check_d_squared(&self) -> Result<bool, LinAlgError> {
        for (k, d0) in &self.diffs {
            if let Some(d1) = self.diffs.get(&(k + 1)) {
                let p = d1.mul(d0, &self.ctx);
                for i in 0..p.rows() {
                    for j in 0..p.cols() {
                        match p.get(i, j).status(&self.ctx) {
                            EntryStatus::Zero => {}
                            EntryStatus::NonZero(_) => return Ok(false),
                            EntryStatus::Undecidable(f) => {
                                return Err(LinAlgError::Undecidable {
                                    floor: f.to_string(),
                                    pivot: None,
                                })
                            }
                        }
                    }
                }
            }
        }
        Ok(true)
    }

    pub fn cohomology(&self, k: i32) -> Result<CohomologyGroup<F>, LinAlgError> {
        let dim = self.dims.get(&k).copied().unwrap_or(0);
        CohomologyGroup::new(dim, self.diffs.get(&(k - 1)), self.diffs.get(&k), &self.ctx)
    }

    /// Cohomology rank in every degree that carries a space.
    pub fn ranks(&self) -> Result<BTreeMap<i32, usize>, LinAlgError> {
        self.dims
            .keys()
            .map(|&k| Ok((k, self.cohomology(k)?.rank())))
            .collect()
    }
}
