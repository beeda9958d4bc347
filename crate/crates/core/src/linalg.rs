//! Dense exact linear algebra over `ℚ`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::lincomb::LinComb;
use crate::rational::Rational;

pub type Matrix = Vec<Vec<Rational>>;

/// Row-reduces in place; returns the pivot columns.
pub fn rref(m: &mut Matrix, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = Rational::one() / &m[row][col];
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let f = other[col].clone();
            for (x, p) in other.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Basis of `{x : M x = 0}`, one vector per free column, with a `1` in
/// that column.
pub fn kernel(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -m[r][free].clone();
        }
        out.push(v);
    }
    out
}

/// Applies `m` to `v`.
pub fn apply(m: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| row.iter().zip(v).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum())
        .collect()
}

/// Coordinates of sparse vectors against the union of their supports.
pub struct Coordinates<K: Ord> {
    index: BTreeMap<K, usize>,
}

impl<K: Ord + Clone> Coordinates<K> {
    pub fn new<'a>(vectors: impl IntoIterator<Item = &'a LinComb<K>>) -> Self
    where
        K: 'a,
    {
        let mut index = BTreeMap::new();
        for v in vectors {
            for k in v.keys() {
                let n = index.len();
                index.entry(k.clone()).or_insert(n);
            }
        }
        Self { index }
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    /// `None` if `v` has support outside the coordinate set.
    pub fn dense(&self, v: &LinComb<K>) -> Option<Vec<Rational>> {
        let mut out = vec![Rational::zero(); self.index.len()];
        for (k, c) in v.iter() {
            out[*self.index.get(k)?] = c.clone();
        }
        Some(out)
    }
}

/// Dimension of the span of sparse vectors.
pub fn span_rank<K: Ord + Clone>(vectors: &[LinComb<K>]) -> usize {
    let coords = Coordinates::new(vectors);
    let rows: Matrix = vectors.iter().filter_map(|v| coords.dense(v)).collect();
    rank(&rows, coords.len())
}

/// Whether `target` lies in the span of `vectors`.
pub fn in_span<K: Ord + Clone>(vectors: &[LinComb<K>], target: &LinComb<K>) -> bool {
    let coords = Coordinates::new(vectors.iter().chain(std::iter::once(target)));
    let rows: Matrix = vectors.iter().filter_map(|v| coords.dense(v)).collect();
    let base = rank(&rows, coords.len());
    let mut with = rows;
    with.extend(coords.dense(target));
    rank(&with, coords.len()) == base
}
