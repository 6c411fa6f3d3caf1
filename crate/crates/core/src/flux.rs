//! Flux linear algebra for Lagrangian cobordisms in a four-dimensional target:
//! the cup-product form on `⊕ H¹(Lᵢ)`, images of boundary restriction maps and
//! their isotropy, and the dimension counts that follow from it.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::homalg::{column_space, kernel, rank, solve, LinAlgError, Matrix};
use crate::rational::{int, rational_from_value, rational_to_value, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FluxError {
    #[error("rho has {got} rows but the ends have total H¹ dimension {expected}")]
    RhoShape { expected: usize, got: usize },
    #[error("duality certificate failed: rank {rank}, expected {expected}")]
    Duality { rank: usize, expected: usize },
    #[error("the form is degenerate")]
    DegenerateForm,
    #[error("escape needs genus at least 1")]
    GenusZero,
    #[error("subspace {0} is not isotropic")]
    NotIsotropic(usize),
    #[error("subspace {0} is full-dimensional")]
    FullDimensional(usize),
    #[error("box must have positive width and contain the origin")]
    BadBox,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("unknown cell {0}")]
    UnknownCell(String),
    #[error("boundary cocycles of end {0} do not span its first cohomology")]
    EndBasis(usize),
    #[error("malformed input: {0}")]
    Schema(String),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

pub type QMatrix = Matrix<Rational>;

pub fn qmatrix(rows: &[Vec<i64>], cols: usize) -> QMatrix {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect(),
        cols,
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EndSign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

/// A Lagrangian surface of genus `g` at one end of a cobordism; `H¹` has
/// basis `a₁, b₁, …, a_g, b_g` with `a_i ∪ b_i` the positive generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LagrangianEnd {
    pub genus: usize,
    pub sign: EndSign,
}

impl LagrangianEnd {
    pub fn new(genus: usize, sign: EndSign) -> Self {
        Self { genus, sign }
    }

    pub fn h1_dim(&self) -> usize {
        2 * self.genus
    }
}

pub fn total_dim(ends: &[LagrangianEnd]) -> usize {
    ends.iter().map(LagrangianEnd::h1_dim).sum()
}

/// `J_g`: block diagonal with blocks `[[0, 1], [-1, 0]]`.
pub fn standard_form(g: usize) -> QMatrix {
    omega_form(&[LagrangianEnd::new(g, EndSign::Positive)])
}

/// Block diagonal `±J_{g_i}`, negative ends entering with the opposite
/// orientation.
pub fn omega_form(ends: &[LagrangianEnd]) -> QMatrix {
    let n = total_dim(ends);
    let mut m = Matrix::zeros(n, n, &());
    let mut at = 0;
    for e in ends {
        let s = if e.sign == EndSign::Positive {
            int(1)
        } else {
            int(-1)
        };
        for h in 0..e.genus {
            let i = at + 2 * h;
            m.set(i, i + 1, s.clone());
            m.set(i + 1, i, -&s);
        }
        at += e.h1_dim();
    }
    m
}

pub fn pairing(form: &QMatrix, x: &[Rational], y: &[Rational]) -> Rational {
    form.mul_vec(y, &()).iter().zip(x).map(|(a, b)| a * b).sum()
}

/// A linear subspace of `ℚⁿ`, stored by a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub ambient: usize,
    pub basis: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn span(vectors: &[Vec<Rational>], ambient: usize) -> Result<Self, FluxError> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(FluxError::DimensionMismatch {
                expected: ambient,
                got: v.len(),
            });
        }
        if vectors.is_empty() {
            return Ok(Self {
                ambient,
                basis: Vec::new(),
            });
        }
        let m = Matrix::from_columns(vectors, ambient, &());
        Ok(Self {
            ambient,
            basis: column_space(&m, &())?,
        })
    }

    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        if self.basis.is_empty() {
            return v.iter().all(Zero::is_zero);
        }
        let m = Matrix::from_columns(&self.basis, self.ambient, &());
        matches!(solve(&m, v, &()), Ok(Some(_)))
    }
}

/// `base + span`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSubspace {
    pub base: Vec<Rational>,
    pub direction: Subspace,
}

impl AffineSubspace {
    pub fn linear(direction: Subspace) -> Self {
        Self {
            base: vec![Rational::zero(); direction.ambient],
            direction,
        }
    }

    pub fn contains(&self, p: &[Rational]) -> bool {
        let d: Vec<Rational> = p.iter().zip(&self.base).map(|(a, b)| a - b).collect();
        self.direction.contains(&d)
    }
}

pub fn check_isotropic(s: &Subspace, form: &QMatrix) -> bool {
    s.basis.iter().enumerate().all(|(i, x)| {
        s.basis[i + 1..]
            .iter()
            .all(|y| pairing(form, x, y).is_zero())
    })
}

pub fn is_nondegenerate(form: &QMatrix) -> Result<bool, FluxError> {
    Ok(rank(form, &())? == form.rows())
}

/// Isotropic and half-dimensional; the form must be nondegenerate.
pub fn check_lagrangian(s: &Subspace, form: &QMatrix) -> Result<bool, FluxError> {
    if !is_nondegenerate(form)? {
        return Err(FluxError::DegenerateForm);
    }
    Ok(check_isotropic(s, form) && 2 * s.dim() == form.rows())
}

/// Restriction `H¹(V) → ⊕ H¹(Lᵢ)` of a cobordism, as a matrix whose rows are
/// indexed by the ends' `H¹` bases in order.
#[derive(Clone, Debug, PartialEq)]
pub struct CobordismDatum {
    pub ends: Vec<LagrangianEnd>,
    pub rho: QMatrix,
    /// Require `rank ρ = Σ gᵢ`, i.e. a half-dimensional image.
    pub certify_duality: bool,
}

impl CobordismDatum {
    pub fn new(
        ends: Vec<LagrangianEnd>,
        rho: QMatrix,
        certify_duality: bool,
    ) -> Result<Self, FluxError> {
        let n = total_dim(&ends);
        if rho.rows() != n {
            return Err(FluxError::RhoShape {
                expected: n,
                got: rho.rows(),
            });
        }
        let d = Self {
            ends,
            rho,
            certify_duality,
        };
        if certify_duality {
            let r = rank(&d.rho, &())?;
            let expected = n / 2;
            if r != expected {
                return Err(FluxError::Duality { rank: r, expected });
            }
        }
        Ok(d)
    }

    pub fn form(&self) -> QMatrix {
        omega_form(&self.ends)
    }
}

/// Column space of `ρ`.
pub fn restriction_image(d: &CobordismDatum) -> Result<Subspace, FluxError> {
    let n = d.rho.rows();
    Ok(Subspace {
        ambient: n,
        basis: column_space(&d.rho, &())?,
    })
}

/// Lower bound `k - g` on the dimension of a rational-equivalence orbit in
/// `Sym^k` cut out by `g` independent conditions.
pub fn fiber_dimension_bound(k: i64, g: i64) -> i64 {
    k - g
}

/// Least `k` with `2gk > d_max`.
pub fn min_copies_to_escape(d_max: u64, g: u64) -> Result<u64, FluxError> {
    if g == 0 {
        return Err(FluxError::GenusZero);
    }
    Ok(d_max / (2 * g) + 1)
}

/// `Π [loᵢ, hiᵢ]`, containing the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FluxBox {
    pub bounds: Vec<(Rational, Rational)>,
}

impl FluxBox {
    pub fn new(bounds: Vec<(Rational, Rational)>) -> Result<Self, FluxError> {
        let zero = Rational::zero();
        if bounds
            .iter()
            .any(|(lo, hi)| lo >= hi || lo > &zero || hi < &zero)
        {
            return Err(FluxError::BadBox);
        }
        Ok(Self { bounds })
    }

    /// `[-r, r]ⁿ`.
    pub fn cube(n: usize, r: Rational) -> Result<Self, FluxError> {
        Self::new(vec![(-&r, r); n])
    }

    pub fn dim(&self) -> usize {
        self.bounds.len()
    }

    pub fn center(&self) -> Vec<Rational> {
        self.bounds
            .iter()
            .map(|(lo, hi)| (lo + hi) / int(2))
            .collect()
    }

    pub fn interior_contains(&self, p: &[Rational]) -> bool {
        p.len() == self.dim()
            && p.iter()
                .zip(&self.bounds)
                .all(|(x, (lo, hi))| lo < x && x < hi)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UncoveredFlux {
    pub point: Vec<Rational>,
    pub candidates_tried: usize,
}

/// A point of the open box off every subspace. Tries the center, then
/// `c + r·(s, s², …, sⁿ)`: a proper affine subspace lies in a hyperplane,
/// which meets this curve in at most `n` points, so `n·m + 1` values of `s`
/// always contain a free one.
pub fn uncovered_flux(
    subspaces: &[AffineSubspace],
    bx: &FluxBox,
    form: &QMatrix,
) -> Result<UncoveredFlux, FluxError> {
    let n = bx.dim();
    if form.rows() != n {
        return Err(FluxError::DimensionMismatch {
            expected: n,
            got: form.rows(),
        });
    }
    for (i, s) in subspaces.iter().enumerate() {
        if s.direction.ambient != n || s.base.len() != n {
            return Err(FluxError::DimensionMismatch {
                expected: n,
                got: s.direction.ambient,
            });
        }
        if !check_isotropic(&s.direction, form) {
            return Err(FluxError::NotIsotropic(i));
        }
        if s.direction.dim() >= n {
            return Err(FluxError::FullDimensional(i));
        }
    }
    let covered = |p: &[Rational]| subspaces.iter().any(|s| s.contains(p));
    let c = bx.center();
    if !covered(&c) {
        return Ok(UncoveredFlux {
            point: c,
            candidates_tried: 1,
        });
    }
    let r = bx
        .bounds
        .iter()
        .map(|(lo, hi)| (hi - lo) / int(4))
        .min()
        .expect("nonempty box");
    let budget = n * subspaces.len() + 1;
    let tt = int(budget as i64);
    for t in 1..=budget {
        let s = int(t as i64) / &tt;
        let mut pw = Rational::one();
        let p: Vec<Rational> = c
            .iter()
            .map(|ci| {
                pw = &pw * &s;
                ci + &r * &pw
            })
            .collect();
        if !covered(&p) {
            return Ok(UncoveredFlux {
                point: p,
                candidates_tried: t + 1,
            });
        }
    }
    unreachable!("{budget} points of the moment curve cannot all lie on the given hyperplanes")
}

/// `x ↦ x + c·Ω(v, x)·v`, which preserves `Ω`.
pub fn transvection(form: &QMatrix, v: &[Rational], c: &Rational) -> QMatrix {
    let n = form.rows();
    let mut m: QMatrix = Matrix::identity(n, &());
    // Ω(v, e_j) = (vᵀ Ω)_j
    let row: Vec<Rational> = (0..n)
        .map(|j| (0..n).map(|i| &v[i] * form.get(i, j)).sum())
        .collect();
    for i in 0..n {
        for j in 0..n {
            let add = c * &v[i] * &row[j];
            let cur = m.get(i, j).clone();
            m.set(i, j, cur + add);
        }
    }
    m
}

/// The `a`-coordinates of every handle, moved by the given transvections and
/// mixed by `mix` (columns of the result are `span · mix`).
pub fn transvected_datum(
    ends: Vec<LagrangianEnd>,
    transvections: &[(Vec<Rational>, Rational)],
    mix: &QMatrix,
) -> Result<CobordismDatum, FluxError> {
    let n = total_dim(&ends);
    let form = omega_form(&ends);
    let g = n / 2;
    let mut cols: Vec<Vec<Rational>> = (0..g)
        .map(|h| {
            let mut v = vec![Rational::zero(); n];
            v[2 * h] = Rational::one();
            v
        })
        .collect();
    for (v, c) in transvections {
        if v.len() != n {
            return Err(FluxError::DimensionMismatch {
                expected: n,
                got: v.len(),
            });
        }
        let t = transvection(&form, v, c);
        cols = cols.iter().map(|x| t.mul_vec(x, &())).collect();
    }
    if mix.rows() != g {
        return Err(FluxError::DimensionMismatch {
            expected: g,
            got: mix.rows(),
        });
    }
    let base = if g == 0 {
        Matrix::zeros(n, 0, &())
    } else {
        Matrix::from_columns(&cols, n, &())
    };
    let rho = if g == 0 {
        Matrix::zeros(n, mix.cols(), &())
    } else {
        base.mul(mix, &())
    };
    CobordismDatum::new(ends, rho, true)
}

/// Torus obtained by surgery of two spheres: a line of fluxes on the torus
/// end, and nothing on the sphere ends.
pub fn sphere_surgery_example() -> CobordismDatum {
    let ends = vec![
        LagrangianEnd::new(1, EndSign::Positive),
        LagrangianEnd::new(0, EndSign::Negative),
        LagrangianEnd::new(0, EndSign::Negative),
    ];
    CobordismDatum::new(ends, qmatrix(&[vec![1], vec![1]], 1), true).expect("valid")
}

/// Torus meeting a sphere in a circle `γ = a`: fluxes vanishing on `γ`.
pub fn clean_surgery_example() -> CobordismDatum {
    let ends = vec![
        LagrangianEnd::new(1, EndSign::Positive),
        LagrangianEnd::new(0, EndSign::Positive),
        LagrangianEnd::new(0, EndSign::Negative),
    ];
    CobordismDatum::new(ends, qmatrix(&[vec![0], vec![1]], 1), true).expect("valid")
}

/// `L × [0, 1]` for a genus `g` surface: the diagonal in `H¹(L) ⊕ H¹(L)`.
pub fn trivial_cylinder(g: usize) -> CobordismDatum {
    let n = 2 * g;
    let ends = vec![
        LagrangianEnd::new(g, EndSign::Positive),
        LagrangianEnd::new(g, EndSign::Negative),
    ];
    let mut rho = Matrix::zeros(2 * n, n, &());
    for i in 0..n {
        rho.set(i, i, int(1));
        rho.set(n + i, i, int(1));
    }
    CobordismDatum::new(ends, rho, true).expect("valid")
}

/// A finite CW complex by its cellular boundary maps.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CellComplex {
    /// `cells[k]` are the names of the `k`-cells.
    pub cells: Vec<Vec<String>>,
    /// `boundary[k][i]`: the boundary of the `i`-th `k`-cell as `((k-1)-cell, coefficient)`.
    pub boundary: Vec<Vec<Vec<(usize, i64)>>>,
}

impl CellComplex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn index(&self, dim: usize, name: &str) -> Option<usize> {
        self.cells.get(dim)?.iter().position(|c| c == name)
    }

    pub fn count(&self, dim: usize) -> usize {
        self.cells.get(dim).map_or(0, Vec::len)
    }

    pub fn add_cell(
        &mut self,
        dim: usize,
        name: &str,
        faces: &[(&str, i64)],
    ) -> Result<usize, FluxError> {
        let mut bd = Vec::new();
        for (f, c) in faces {
            let i = dim
                .checked_sub(1)
                .and_then(|d| self.index(d, f))
                .ok_or_else(|| FluxError::UnknownCell(f.to_string()))?;
            bd.push((i, *c));
        }
        while self.cells.len() <= dim {
            self.cells.push(Vec::new());
            self.boundary.push(Vec::new());
        }
        self.cells[dim].push(name.to_string());
        self.boundary[dim].push(bd);
        Ok(self.cells[dim].len() - 1)
    }

    /// `∂_k` as a `#(k-1)-cells × #k-cells` matrix.
    pub fn boundary_matrix(&self, k: usize) -> QMatrix {
        let rows = if k == 0 { 0 } else { self.count(k - 1) };
        let mut m: QMatrix = Matrix::zeros(rows, self.count(k), &());
        if k > 0 {
            for (j, bd) in self.boundary.get(k).into_iter().flatten().enumerate() {
                for &(i, c) in bd {
                    let cur = m.get(i, j).clone();
                    m.set(i, j, cur + int(c));
                }
            }
        }
        m
    }

    /// Product cells `σ×τ` with `∂(σ×τ) = ∂σ×τ + (-1)^{|σ|} σ×∂τ`.
    pub fn product(&self, other: &Self) -> Self {
        let mut out = Self::new();
        let top = self.cells.len() + other.cells.len();
        for n in 0..top.saturating_sub(1) {
            for p in 0..=n {
                let q = n - p;
                for (i, s) in self.cells.get(p).into_iter().flatten().enumerate() {
                    for (j, t) in other.cells.get(q).into_iter().flatten().enumerate() {
                        let mut faces: BTreeMap<String, i64> = BTreeMap::new();
                        if p > 0 {
                            for &(f, c) in &self.boundary[p][i] {
                                *faces
                                    .entry(format!("{}x{}", self.cells[p - 1][f], t))
                                    .or_default() += c;
                            }
                        }
                        if q > 0 {
                            let sign = if p % 2 == 0 { 1 } else { -1 };
                            for &(f, c) in &other.boundary[q][j] {
                                *faces
                                    .entry(format!("{}x{}", s, other.cells[q - 1][f]))
                                    .or_default() += sign * c;
                            }
                        }
                        let faces: Vec<(&str, i64)> = faces
                            .iter()
                            .filter(|(_, c)| **c != 0)
                            .map(|(f, c)| (f.as_str(), *c))
                            .collect();
                        out.add_cell(n, &format!("{s}x{t}"), &faces)
                            .expect("faces precede cells");
                    }
                }
            }
        }
        out
    }
}

/// One boundary component: its 1-cells and cocycles forming the symplectic
/// basis `a₁, b₁, …` of its `H¹`, each as `(1-cell, coefficient)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryEnd {
    pub end: LagrangianEnd,
    pub one_cells: Vec<String>,
    pub basis: Vec<Vec<(String, i64)>>,
}

/// `ρ` computed from cochains: each 1-cocycle of `V` is restricted to every
/// end and expressed in that end's basis modulo coboundaries.
pub fn cellular_restriction(
    v: &CellComplex,
    ends: &[BoundaryEnd],
) -> Result<CobordismDatum, FluxError> {
    let delta1 = v.boundary_matrix(2).transpose();
    let cocycles = if delta1.rows() == 0 {
        (0..v.count(1))
            .map(|i| {
                (0..v.count(1))
                    .map(|j| if i == j { int(1) } else { int(0) })
                    .collect()
            })
            .collect()
    } else {
        kernel(&delta1, &())?
    };
    let d1 = v.boundary_matrix(1);
    let mut blocks: Vec<Vec<Vec<Rational>>> = Vec::new();
    for (e, be) in ends.iter().enumerate() {
        let idx: Vec<usize> = be
            .one_cells
            .iter()
            .map(|c| {
                v.index(1, c)
                    .ok_or_else(|| FluxError::UnknownCell(c.clone()))
            })
            .collect::<Result<_, _>>()?;
        let m = idx.len();
        let mut cols: Vec<Vec<Rational>> = Vec::new();
        for b in &be.basis {
            let mut col = vec![Rational::zero(); m];
            for (name, c) in b {
                let k = be
                    .one_cells
                    .iter()
                    .position(|x| x == name)
                    .ok_or_else(|| FluxError::UnknownCell(name.clone()))?;
                col[k] += int(*c);
            }
            cols.push(col);
        }
        if cols.len() != be.end.h1_dim() {
            return Err(FluxError::EndBasis(e));
        }
        // Coboundaries of the end's 0-cells, restricted to its 1-cells.
        for w in 0..v.count(0) {
            let col: Vec<Rational> = idx.iter().map(|&i| d1.get(w, i).clone()).collect();
            if col.iter().any(|x| !x.is_zero()) {
                cols.push(col);
            }
        }
        let sys = if cols.is_empty() {
            Matrix::zeros(m, 0, &())
        } else {
            Matrix::from_columns(&cols, m, &())
        };
        let mut block = Vec::new();
        for z in &cocycles {
            let rz: Vec<Rational> = idx.iter().map(|&i| z[i].clone()).collect();
            let x = if sys.cols() == 0 {
                rz.iter().all(Zero::is_zero).then(Vec::new)
            } else {
                solve(&sys, &rz, &())?
            };
            let x = x.ok_or(FluxError::EndBasis(e))?;
            block.push(x[..be.end.h1_dim()].to_vec());
        }
        blocks.push(block);
    }
    let n: usize = ends.iter().map(|e| e.end.h1_dim()).sum();
    let columns: Vec<Vec<Rational>> = (0..cocycles.len())
        .map(|j| blocks.iter().flat_map(|b| b[j].iter().cloned()).collect())
        .collect();
    let rho = if columns.is_empty() {
        Matrix::zeros(n, 0, &())
    } else {
        Matrix::from_columns(&columns, n, &())
    };
    CobordismDatum::new(ends.iter().map(|e| e.end).collect(), rho, false)
}

/// `Σ × S¹` for `Σ` a torus with two discs removed, with both boundary tori
/// carrying the induced orientation.
pub fn punctured_torus_times_circle() -> (CellComplex, Vec<BoundaryEnd>) {
    let mut s = CellComplex::new();
    for v in ["v", "w1", "w2"] {
        s.add_cell(0, v, &[]).expect("vertex");
    }
    for (e, faces) in [
        ("a", vec![]),
        ("b", vec![]),
        ("e1", vec![("w1", 1), ("v", -1)]),
        ("e2", vec![("w2", 1), ("v", -1)]),
        ("c1", vec![]),
        ("c2", vec![]),
    ] {
        s.add_cell(1, e, &faces).expect("edge");
    }
    // Boundary word a b a⁻¹ b⁻¹ e1 c1 e1⁻¹ e2 c2 e2⁻¹ abelianizes to c1 + c2.
    s.add_cell(2, "F", &[("c1", 1), ("c2", 1)]).expect("face");
    let mut circle = CellComplex::new();
    circle.add_cell(0, "p", &[]).expect("vertex");
    circle.add_cell(1, "s", &[]).expect("edge");
    let v = s.product(&circle);
    let end = |i: u8| BoundaryEnd {
        end: LagrangianEnd::new(1, EndSign::Positive),
        one_cells: vec![format!("c{i}xp"), format!("w{i}xs")],
        basis: vec![vec![(format!("c{i}xp"), 1)], vec![(format!("w{i}xs"), 1)]],
    };
    (v, vec![end(1), end(2)])
}

/// A flux scenario as read from JSON.
#[derive(Clone, Debug, PartialEq)]
pub struct FluxScenario {
    pub data: Vec<CobordismDatum>,
    pub target_genus: Vec<Option<i64>>,
    pub bx: Option<FluxBox>,
    pub copies: Option<i64>,
}

fn schema(m: impl Into<String>) -> FluxError {
    FluxError::Schema(m.into())
}

fn ends_from_json(v: &Value) -> Result<Vec<LagrangianEnd>, FluxError> {
    serde_json::from_value(v.clone()).map_err(|e| schema(format!("ends: {e}")))
}

fn qmatrix_from_json(v: &Value, rows: usize) -> Result<QMatrix, FluxError> {
    let rs = v
        .as_array()
        .ok_or_else(|| schema("rho must be a list of rows"))?;
    if rs.len() != rows {
        return Err(FluxError::RhoShape {
            expected: rows,
            got: rs.len(),
        });
    }
    let mut out = Vec::new();
    for r in rs {
        let xs = r
            .as_array()
            .ok_or_else(|| schema("rho row must be a list"))?;
        out.push(
            xs.iter()
                .map(|x| rational_from_value(x).map_err(schema))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    let cols = out.first().map_or(0, Vec::len);
    if out.iter().any(|r| r.len() != cols) {
        return Err(schema("rho rows have different lengths"));
    }
    Ok(Matrix::from_rows(out, cols))
}

/// `{"ends": [...], "data": [{"rho": [[..]], "ends"?: [...], "certify_duality"?: bool,
/// "target_genus"?: g}], "box"?: [[lo, hi], ..], "copies"?: k}`.
pub fn scenario_from_json(v: &Value) -> Result<FluxScenario, FluxError> {
    let default_ends = v.get("ends").map(ends_from_json).transpose()?;
    let items = v
        .get("data")
        .and_then(Value::as_array)
        .ok_or_else(|| schema("scenario needs \"data\""))?;
    let mut data = Vec::new();
    let mut genus = Vec::new();
    for it in items {
        let ends = match it.get("ends") {
            Some(e) => ends_from_json(e)?,
            None => default_ends
                .clone()
                .ok_or_else(|| schema("datum has no ends"))?,
        };
        let rho = qmatrix_from_json(
            it.get("rho").ok_or_else(|| schema("datum needs \"rho\""))?,
            total_dim(&ends),
        )?;
        let certify = it
            .get("certify_duality")
            .and_then(Value::as_bool)
            .unwrap_or(false);
        data.push(CobordismDatum::new(ends, rho, certify)?);
        genus.push(it.get("target_genus").and_then(Value::as_i64));
    }
    let bx = match v.get("box") {
        Some(b) => {
            let rows = b.as_array().ok_or_else(|| schema("box must be a list"))?;
            let mut bounds = Vec::new();
            for r in rows {
                let pair = r
                    .as_array()
                    .filter(|p| p.len() == 2)
                    .ok_or_else(|| schema("box entry needs [lo, hi]"))?;
                let lo = rational_from_value(&pair[0]).map_err(schema)?;
                let hi = rational_from_value(&pair[1]).map_err(schema)?;
                bounds.push((lo, hi));
            }
            Some(FluxBox::new(bounds)?)
        }
        None => None,
    };
    Ok(FluxScenario {
        data,
        target_genus: genus,
        bx,
        copies: v.get("copies").and_then(Value::as_i64),
    })
}

fn vec_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_to_value).collect())
}

/// Per-datum verdicts, plus an escaping point when a box is given. `passes`
/// is false if a duality-certified datum fails isotropy.
pub fn evaluate_scenario(s: &FluxScenario) -> Result<(bool, Value), FluxError> {
    let mut ok = true;
    let mut reports = Vec::new();
    let mut subspaces = Vec::new();
    for (d, g) in s.data.iter().zip(&s.target_genus) {
        let img = restriction_image(d)?;
        let form = d.form();
        let iso = check_isotropic(&img, &form);
        let lag = if is_nondegenerate(&form)? {
            Some(check_lagrangian(&img, &form)?)
        } else {
            None
        };
        if d.certify_duality && !iso {
            ok = false;
        }
        let mut r = json!({
            "image_dim": img.dim(),
            "ambient_dim": img.ambient,
            "isotropic": iso,
            "lagrangian": lag,
            "duality_certified": d.certify_duality,
            "image_basis": img.basis.iter().map(|b| vec_json(b)).collect::<Vec<_>>(),
        });
        if let (Some(k), Some(g)) = (s.copies, g) {
            r["fiber_dimension_bound"] = json!(fiber_dimension_bound(k, *g));
        }
        reports.push(r);
        subspaces.push((AffineSubspace::linear(img), form));
    }
    let mut out = json!({ "passes": ok, "data": reports });
    if let Some(bx) = &s.bx {
        let n = bx.dim();
        let same: Vec<AffineSubspace> = subspaces
            .iter()
            .filter(|(a, _)| a.direction.ambient == n)
            .map(|(a, _)| a.clone())
            .collect();
        let form = subspaces
            .iter()
            .find(|(a, _)| a.direction.ambient == n)
            .map(|(_, f)| f.clone())
            .ok_or_else(|| schema("box dimension matches no datum"))?;
        let u = uncovered_flux(&same, bx, &form)?;
        out["uncovered"] =
            json!({ "point": vec_json(&u.point), "candidates_tried": u.candidates_tried });
    }
    Ok((ok, out))
}
