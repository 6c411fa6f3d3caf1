use std::collections::BTreeMap;

use num_traits::One;

use crate::ainf::{composable_path, distributions, AInf, AInfError, Morphism};
use crate::novikov::{Exponent, NovikovSeries};
use crate::rational::Rational;

use super::TwistedError;

/// One summand `X[σ]` of a formal direct sum, placed at filtration level `level`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub object: usize,
    pub shift: i32,
    pub level: Rational,
}

impl Summand {
    pub fn new(object: usize, shift: i32, level: i64) -> Self {
        Self {
            object,
            shift,
            level: Rational::from_integer(level.into()),
        }
    }
}

/// A twisted complex: summands plus a strictly filtered Maurer–Cartan element.
#[derive(Clone, Debug)]
pub struct TwistedObject {
    pub name: String,
    pub summands: Vec<Summand>,
    pub delta: Option<Morphism>,
}

/// Basis element `b ∈ hom(X_j, Y_k)` placed in block `(j, k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockIndex {
    pub row: usize,
    pub col: usize,
    pub b: usize,
}

/// Twisted complexes over an A∞ category `B`, themselves forming an A∞ category.
///
/// `hom(X, Y)` has basis the triples `(j, k, b)` with `b` a basis element of
/// `hom(X_j, Y_k)`; its degree is `|b| + σ_j - σ_k` and its filtration is the
/// base filtration plus `level_k - level_j`. Structure maps are those of the
/// additive enlargement, `(-1)^{σ}` times the base maps with `σ` the shift of
/// the first source summand, deformed by the objects' differentials.
#[derive(Clone, Debug)]
pub struct TwistedCategory<B: AInf> {
    pub base: B,
    objects: Vec<TwistedObject>,
    layout: Vec<Vec<Layout>>,
}

#[derive(Clone, Debug, Default)]
struct Layout {
    blocks: Vec<BlockIndex>,
    index: BTreeMap<BlockIndex, usize>,
}

fn parity_sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

impl<B: AInf> TwistedCategory<B> {
    pub fn new(base: B) -> Self {
        Self {
            base,
            objects: Vec::new(),
            layout: Vec::new(),
        }
    }

    /// Adds a pre-twisted object (no differential yet) and returns its index.
    pub fn add_object(
        &mut self,
        name: &str,
        summands: Vec<Summand>,
    ) -> Result<usize, TwistedError> {
        for s in &summands {
            if s.object >= self.base.num_objects() {
                return Err(AInfError::ObjectOutOfRange(s.object).into());
            }
        }
        self.objects.push(TwistedObject {
            name: name.to_string(),
            summands,
            delta: None,
        });
        self.rebuild_layout();
        Ok(self.objects.len() - 1)
    }

    fn rebuild_layout(&mut self) {
        let n = self.objects.len();
        let mut layout = vec![vec![Layout::default(); n]; n];
        for x in 0..n {
            for y in 0..n {
                let l = &mut layout[x][y];
                for (j, sj) in self.objects[x].summands.iter().enumerate() {
                    for (k, sk) in self.objects[y].summands.iter().enumerate() {
                        for b in 0..self.base.hom_dim(sj.object, sk.object) {
                            let bi = BlockIndex { row: j, col: k, b };
                            l.index.insert(bi, l.blocks.len());
                            l.blocks.push(bi);
                        }
                    }
                }
            }
        }
        self.layout = layout;
    }

    pub fn object(&self, x: usize) -> &TwistedObject {
        &self.objects[x]
    }

    pub fn summands(&self, x: usize) -> &[Summand] {
        &self.objects[x].summands
    }

    pub fn block_index(&self, x: usize, y: usize, bi: BlockIndex) -> Option<usize> {
        self.layout[x][y].index.get(&bi).copied()
    }

    pub fn block_of(&self, x: usize, y: usize, i: usize) -> BlockIndex {
        self.layout[x][y].blocks[i]
    }

    /// Places a base morphism `hom(X_j, Y_k)` into block `(j, k)` of `hom(X, Y)`.
    pub fn embed(&self, x: usize, y: usize, j: usize, k: usize, m: &Morphism) -> Morphism {
        let (sj, sk) = (&self.objects[x].summands[j], &self.objects[y].summands[k]);
        assert_eq!((m.src, m.tgt), (sj.object, sk.object), "block objects");
        let l = &self.layout[x][y];
        Morphism::from_coeffs(
            x,
            y,
            m.coeffs()
                .iter()
                .map(|(&b, c)| (l.index[&BlockIndex { row: j, col: k, b }], c.clone())),
            m.precision().clone(),
        )
    }

    /// The `(j, k)` block of a twisted morphism, as a base morphism.
    pub fn block(&self, m: &Morphism, j: usize, k: usize) -> Morphism {
        let (sj, sk) = (
            &self.objects[m.src].summands[j],
            &self.objects[m.tgt].summands[k],
        );
        let l = &self.layout[m.src][m.tgt];
        Morphism::from_coeffs(
            sj.object,
            sk.object,
            m.coeffs().iter().filter_map(|(&i, c)| {
                let bi = l.blocks[i];
                (bi.row == j && bi.col == k).then(|| (bi.b, c.clone()))
            }),
            m.precision().clone(),
        )
    }

    fn blocks(&self, m: &Morphism) -> BTreeMap<(usize, usize), Morphism> {
        let l = &self.layout[m.src][m.tgt];
        let mut raw: BTreeMap<(usize, usize), Vec<(usize, NovikovSeries)>> = BTreeMap::new();
        for (&i, c) in m.coeffs() {
            let bi = l.blocks[i];
            raw.entry((bi.row, bi.col))
                .or_default()
                .push((bi.b, c.clone()));
        }
        raw.into_iter()
            .map(|((j, k), cs)| {
                let (sj, sk) = (
                    &self.objects[m.src].summands[j],
                    &self.objects[m.tgt].summands[k],
                );
                (
                    (j, k),
                    Morphism::from_coeffs(sj.object, sk.object, cs, m.precision().clone()),
                )
            })
            .collect()
    }

    /// Structure maps of the additive enlargement, ignoring differentials.
    pub fn raw_mu(&self, inputs: &[&Morphism]) -> Result<Morphism, AInfError> {
        let path = composable_path(inputs, self.objects.len())?;
        let d = inputs.len();
        let (x0, xd) = (path[0], path[d]);
        let prec = std::cmp::min(
            crate::ainf::product_precision(inputs, &self.base.structure_floor()),
            self.base.truncation().clone(),
        );
        let blocks: Vec<BTreeMap<(usize, usize), Morphism>> =
            inputs.iter().map(|m| self.blocks(m)).collect();
        let mut acc = Morphism::zero(x0, xd, prec);
        let mut chosen: Vec<&Morphism> = Vec::with_capacity(d);
        self.raw_mu_rec(&blocks, x0, xd, None, None, &mut chosen, &mut acc)?;
        Ok(acc)
    }

    #[allow(clippy::too_many_arguments)]
    fn raw_mu_rec<'a>(
        &self,
        blocks: &'a [BTreeMap<(usize, usize), Morphism>],
        x0: usize,
        xd: usize,
        first: Option<usize>,
        cur: Option<usize>,
        chosen: &mut Vec<&'a Morphism>,
        acc: &mut Morphism,
    ) -> Result<(), AInfError> {
        let t = chosen.len();
        if t == blocks.len() {
            let (j0, kd) = (first.expect("nonempty"), cur.expect("nonempty"));
            let out = self.base.mu(chosen)?;
            if !out.is_zero() || out.precision() < acc.precision() {
                let sign = parity_sign(self.objects[x0].summands[j0].shift as i64);
                let emb = self.embed(x0, xd, j0, kd, &out);
                *acc = acc.add(&emb.scale_int(sign));
            }
            return Ok(());
        }
        for (&(j, k), m) in &blocks[t] {
            if cur.is_some_and(|c| c != j) {
                continue;
            }
            chosen.push(m);
            self.raw_mu_rec(blocks, x0, xd, first.or(Some(j)), Some(k), chosen, acc)?;
            chosen.pop();
        }
        Ok(())
    }

    /// `Σ_d raw_mu(δ, …, δ)` for a candidate differential on object `x`.
    pub fn raw_mc_residual(&self, delta: &Morphism) -> Result<Morphism, AInfError> {
        let mut total = Morphism::zero(delta.src, delta.tgt, delta.precision().clone());
        if delta.is_zero() {
            return Ok(total);
        }
        let levels = self.distinct_levels(delta.src);
        for d in 1..=self.base.max_arity().min(levels.saturating_sub(1)) {
            let args = vec![delta; d];
            total = total.add(&self.raw_mu(&args)?);
        }
        Ok(total)
    }

    fn distinct_levels(&self, x: usize) -> usize {
        let mut ls: Vec<&Rational> = self.objects[x].summands.iter().map(|s| &s.level).collect();
        ls.sort();
        ls.dedup();
        ls.len()
    }

    /// Checks degree, strict filtration and the Maurer–Cartan equation, then installs `δ`.
    pub fn set_delta(&mut self, x: usize, delta: Morphism) -> Result<(), TwistedError> {
        self.validate_pre_twisted(x, &delta)?;
        if !self.raw_mc_residual(&delta)?.is_zero() {
            return Err(AInfError::NotMaurerCartan.into());
        }
        self.objects[x].delta = (!delta.is_zero()).then_some(delta);
        Ok(())
    }

    /// Degree 1 and strictly increasing filtration level along every entry.
    pub fn validate_pre_twisted(&self, x: usize, delta: &Morphism) -> Result<(), TwistedError> {
        if (delta.src, delta.tgt) != (x, x) {
            return Err(AInfError::NotComposable(0).into());
        }
        for &i in delta.coeffs().keys() {
            let bi = self.block_of(x, x, i);
            if self.degree(x, x, i) != 1 {
                return Err(AInfError::DegreeViolation(format!(
                    "differential component {} has degree {}",
                    self.basis_name(x, x, i),
                    self.degree(x, x, i)
                ))
                .into());
            }
            let s = &self.objects[x].summands;
            if !strictly_above(&s[bi.row].level, &s[bi.col].level) {
                return Err(TwistedError::FiltrationOrder {
                    row: bi.row,
                    col: bi.col,
                });
            }
        }
        Ok(())
    }

    pub fn delta(&self, x: usize) -> Option<&Morphism> {
        self.objects[x].delta.as_ref()
    }

    /// Builds `Σ c · b` from `(row, col, base basis index, coefficient)` entries.
    pub fn from_entries<I>(&self, x: usize, y: usize, entries: I) -> Morphism
    where
        I: IntoIterator<Item = (usize, usize, usize, NovikovSeries)>,
    {
        let l = &self.layout[x][y];
        Morphism::from_coeffs(
            x,
            y,
            entries
                .into_iter()
                .map(|(j, k, b, c)| (l.index[&BlockIndex { row: j, col: k, b }], c)),
            self.truncation().clone(),
        )
    }
}

impl<B: AInf> AInf for TwistedCategory<B> {
    fn num_objects(&self) -> usize {
        self.objects.len()
    }

    fn object_name(&self, x: usize) -> String {
        self.objects[x].name.clone()
    }

    fn hom_dim(&self, x: usize, y: usize) -> usize {
        self.layout[x][y].blocks.len()
    }

    fn degree(&self, x: usize, y: usize, i: usize) -> i32 {
        let bi = self.layout[x][y].blocks[i];
        let (sj, sk) = (
            &self.objects[x].summands[bi.row],
            &self.objects[y].summands[bi.col],
        );
        self.base.degree(sj.object, sk.object, bi.b) + sj.shift - sk.shift
    }

    fn filtration(&self, x: usize, y: usize, i: usize) -> Rational {
        let bi = self.layout[x][y].blocks[i];
        let (sj, sk) = (
            &self.objects[x].summands[bi.row],
            &self.objects[y].summands[bi.col],
        );
        self.base.filtration(sj.object, sk.object, bi.b) + &sk.level - &sj.level
    }

    fn basis_name(&self, x: usize, y: usize, i: usize) -> String {
        let bi = self.layout[x][y].blocks[i];
        let (sj, sk) = (
            &self.objects[x].summands[bi.row],
            &self.objects[y].summands[bi.col],
        );
        format!(
            "{}[{},{}]",
            self.base.basis_name(sj.object, sk.object, bi.b),
            bi.row,
            bi.col
        )
    }

    fn max_arity(&self) -> usize {
        self.base.max_arity()
    }

    fn truncation(&self) -> &Exponent {
        self.base.truncation()
    }

    fn structure_floor(&self) -> Exponent {
        self.base.structure_floor()
    }

    fn mu(&self, inputs: &[&Morphism]) -> Result<Morphism, AInfError> {
        let path = composable_path(inputs, self.objects.len())?;
        let d = inputs.len();
        let slots: Vec<bool> = path
            .iter()
            .map(|&x| self.objects[x].delta.is_some())
            .collect();
        let mut total: Option<Morphism> = None;
        for k in 0..=self.base.max_arity().saturating_sub(d) {
            for dist in distributions(&slots, k) {
                let mut args: Vec<&Morphism> = Vec::with_capacity(d + k);
                for (i, &cnt) in dist.iter().enumerate() {
                    if i > 0 {
                        args.push(inputs[i - 1]);
                    }
                    if cnt > 0 {
                        let x = self.objects[path[i]].delta.as_ref().expect("slot is live");
                        args.extend(std::iter::repeat_n(x, cnt));
                    }
                }
                let r = self.raw_mu(&args)?;
                total = Some(match total {
                    Some(t) => t.add(&r),
                    None => r,
                });
            }
        }
        Ok(total.expect("the undeformed term is always present"))
    }

    fn unit(&self, x: usize) -> Option<Morphism> {
        let mut acc = self.zero(x, x);
        for (j, s) in self.objects[x].summands.iter().enumerate() {
            let e = self.base.unit(s.object)?;
            acc = acc.add(
                &self
                    .embed(x, x, j, j, &e)
                    .scale_int(parity_sign(s.shift as i64)),
            );
        }
        Some(acc)
    }
}

/// Whether `level_k >= level_j + 1`, the condition for a differential entry.
pub(crate) fn strictly_above(lo: &Rational, hi: &Rational) -> bool {
    hi - lo >= Rational::one()
}
