use std::collections::BTreeMap;

use crate::ainf::{AInf, HomCohomology, Morphism};
use crate::homalg::{column_space, rank, EntryStatus, Field, Matrix};
use crate::novikov::{Exponent, NovikovSeries};

use super::idempotent::HomotopyIdempotent;
use super::TwistedError;

/// Product of two image basis classes, in the cohomology basis of the target degree.
#[derive(Clone, Debug)]
pub struct ProductEntry {
    pub left: (i32, usize),
    pub right: (i32, usize),
    pub coords: Vec<NovikovSeries>,
}

/// Cohomology of the idempotent's image `[℘¹]·H·[℘¹]` with its products.
#[derive(Clone, Debug)]
pub struct EndoCohomology {
    pub ranks: BTreeMap<i32, usize>,
    /// Basis of the image in each degree, in the coordinates of `H^k`.
    pub image: BTreeMap<i32, Vec<Vec<NovikovSeries>>>,
    pub products: Vec<ProductEntry>,
}

impl EndoCohomology {
    pub fn rank(&self, k: i32) -> usize {
        self.ranks.get(&k).copied().unwrap_or(0)
    }
}

fn combine(h: &HomCohomology, coords: &[NovikovSeries], k: i32, e: &Exponent) -> Morphism {
    let mut acc = h.to_morphism(&[], k);
    for (i, c) in coords.iter().enumerate() {
        if c.status(e) != EntryStatus::Zero {
            acc = acc.add(&h.representative(k, i).scale(c));
        }
    }
    acc
}

/// Ranks of `[℘¹]·H^k·[℘¹]` and the products `H^i ⊗ H^j → H^{i+j}` among image classes.
pub fn endomorphism_cohomology<C: AInf + ?Sized>(
    cat: &C,
    p: &HomotopyIdempotent,
) -> Result<EndoCohomology, TwistedError> {
    let x = p.carrier;
    let e = cat.truncation().clone();
    let h = HomCohomology::new(cat, x, x, None, None)?;
    let p1 = p.component(cat, 1);
    let mut ranks = BTreeMap::new();
    let mut image = BTreeMap::new();
    for &k in h.ranks().keys() {
        let n = h.rank(k);
        let mut cols = Vec::with_capacity(n);
        for i in 0..n {
            let r = h.representative(k, i);
            let y = cat.mu(&[&p1, &cat.mu(&[&r, &p1])?])?;
            cols.push(h.project(&y, k)?);
        }
        let m = Matrix::from_columns(&cols, n, &e);
        let rk = rank(&m, &e)?;
        ranks.insert(k, rk);
        image.insert(k, column_space(&m, &e)?);
    }
    let mut products = Vec::new();
    for (&i, bi) in &image {
        for (&j, bj) in &image {
            if bi.is_empty() || bj.is_empty() || !h.degrees.contains_key(&(i + j)) {
                continue;
            }
            for (a, va) in bi.iter().enumerate() {
                let ma = combine(&h, va, i, &e);
                for (b, vb) in bj.iter().enumerate() {
                    let mb = combine(&h, vb, j, &e);
                    let prod = cat.mu(&[&ma, &mb])?;
                    products.push(ProductEntry {
                        left: (i, a),
                        right: (j, b),
                        coords: h.project(&prod, i + j)?,
                    });
                }
            }
        }
    }
    ranks.retain(|_, r| *r > 0);
    Ok(EndoCohomology {
        ranks,
        image,
        products,
    })
}

/// Ranks `(1, 2, 1)` in degrees `0, 1, 2`, nothing else, and a nonvanishing
/// product `H¹ ⊗ H¹ → H²`.
pub fn is_point_like<C: AInf + ?Sized>(
    cat: &C,
    p: &HomotopyIdempotent,
) -> Result<bool, TwistedError> {
    let endo = endomorphism_cohomology(cat, p)?;
    let expected: BTreeMap<i32, usize> = BTreeMap::from([(0, 1), (1, 2), (2, 1)]);
    if endo.ranks != expected {
        return Ok(false);
    }
    let e = cat.truncation();
    for pe in endo
        .products
        .iter()
        .filter(|pe| pe.left.0 == 1 && pe.right.0 == 1)
    {
        for c in &pe.coords {
            match c.status(e) {
                EntryStatus::Zero => {}
                EntryStatus::NonZero(_) => return Ok(true),
                EntryStatus::Undecidable(f) => {
                    return Err(crate::homalg::LinAlgError::Undecidable {
                        floor: f.to_string(),
                        pivot: None,
                    }
                    .into())
                }
            }
        }
    }
    Ok(false)
}
