//! Exact rank of sparse integer matrices by fraction-free elimination.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

type SparseRow = Vec<(usize, BigInt)>;

fn normalize(row: Vec<(usize, i64)>) -> SparseRow {
    let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
    for (c, v) in row {
        *acc.entry(c).or_default() += v;
    }
    acc.into_iter()
        .filter(|&(_, v)| v != 0)
        .map(|(c, v)| (c, BigInt::from(v)))
        .collect()
}

/// `a * x − b * y` for sparse rows sorted by column.
fn combine(a: &BigInt, x: &SparseRow, b: &BigInt, y: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let (col, val) = match (x.get(i), y.get(j)) {
            (Some((cx, vx)), Some((cy, _))) if cx < cy => {
                i += 1;
                (*cx, a * vx)
            }
            (Some((cx, _)), Some((cy, vy))) if cy < cx => {
                j += 1;
                (*cy, -(b * vy))
            }
            (Some((cx, vx)), Some((_, vy))) => {
                i += 1;
                j += 1;
                (*cx, a * vx - b * vy)
            }
            (Some((cx, vx)), None) => {
                i += 1;
                (*cx, a * vx)
            }
            (None, Some((cy, vy))) => {
                j += 1;
                (*cy, -(b * vy))
            }
            (None, None) => unreachable!(),
        };
        if !val.is_zero() {
            out.push((col, val));
        }
    }
    out
}

fn reduce_content(row: &mut SparseRow) {
    let g = row.iter().fold(BigInt::zero(), |g, (_, v)| g.gcd(v));
    let sign_flip = row.first().is_some_and(|(_, v)| v.is_negative());
    if g > BigInt::from(1) || sign_flip {
        let g = if sign_flip { -g } else { g };
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
}

/// Rank of the matrix whose rows are given as `(column, coefficient)` lists.
pub(crate) fn rank<I>(rows: I) -> usize
where
    I: IntoIterator<Item = Vec<(usize, i64)>>,
{
    let mut pivots: BTreeMap<usize, SparseRow> = BTreeMap::new();
    for raw in rows {
        let mut row = normalize(raw);
        while let Some((lead, coeff)) = row.first().cloned() {
            match pivots.get(&lead) {
                Some(p) => {
                    let pivot_coeff = p[0].1.clone();
                    row = combine(&pivot_coeff, &row, &coeff, p);
                    reduce_content(&mut row);
                }
                None => {
                    reduce_content(&mut row);
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// Dimension of the solution space of the homogeneous system.
pub(crate) fn nullity<I>(unknowns: usize, rows: I) -> usize
where
    I: IntoIterator<Item = Vec<(usize, i64)>>,
{
    unknowns - rank(rows)
}
