//! Dense exact linear algebra over the rationals, plus a fraction-free
//! integer rank used to check that ranks do not depend on pivot order.

use num_rational::Ratio;
use num_traits::{One, Zero};

pub type Q = Ratio<i128>;

/// Row vectors; the module convention is right action `x ↦ x·M`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    /// Builds from rows of equal length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<Q>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length");
            data.extend_from_slice(r);
        }
        Matrix { rows: rows.len(), cols, data }
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Matrix { rows, cols, data: entries.iter().map(|&x| Q::from_integer(x as i128)).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Q {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Q) {
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Q] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let x = self.get(i, k);
                if x.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let y = other.get(k, j);
                    if !y.is_zero() {
                        out.data[i * other.cols + j] += x * y;
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// `x·M` for a row vector `x`.
    pub fn apply(&self, x: &[Q]) -> Vec<Q> {
        assert_eq!(x.len(), self.rows, "vector length");
        let mut out = vec![Q::zero(); self.cols];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let y = self.get(i, j);
                if !y.is_zero() {
                    *o += xi * y;
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        rref_rows(self.row_vecs(), self.cols).len()
    }
}

/// Reduced row echelon form of the span of `rows`; zero rows dropped.
pub fn rref_rows(mut rows: Vec<Vec<Q>>, cols: usize) -> Vec<Vec<Q>> {
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= inv;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    if !y.is_zero() {
                        *x -= f * y;
                    }
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    rows
}

pub fn pivot_columns(rref: &[Vec<Q>]) -> Vec<usize> {
    rref.iter().map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero row")).collect()
}

/// Incrementally maintained reduced row echelon basis.
#[derive(Clone, Debug, Default)]
pub struct Span {
    rows: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl Span {
    pub fn new() -> Self {
        Span::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Q]) -> Vec<Q> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p];
                for (x, y) in v.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x -= f * y;
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns whether the span grew.
    pub fn insert(&mut self, v: &[Q]) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else { return false };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= inv;
        }
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p];
                for (x, y) in row.iter_mut().zip(&v) {
                    if !y.is_zero() {
                        *x -= f * y;
                    }
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }
}

/// Basis of `{x : x·M = 0}`, one vector per non-pivot column `f` of the
/// reduced transpose, equal to 1 at `f` and 0 at the other such columns.
/// This basis depends only on the subspace: it is the reduced echelon form
/// taken with the column order reversed.
pub fn left_nullspace(m: &Matrix) -> Vec<Vec<Q>> {
    let n = m.rows;
    let red = rref_rows(m.transpose().row_vecs(), n);
    let piv = pivot_columns(&red);
    let mut is_piv = vec![false; n];
    for &p in &piv {
        is_piv[p] = true;
    }
    (0..n)
        .filter(|&f| !is_piv[f])
        .map(|f| {
            let mut v = vec![Q::zero(); n];
            v[f] = Q::one();
            for (row, &p) in red.iter().zip(&piv) {
                v[p] = -row[f];
            }
            v
        })
        .collect()
}

/// Pivot selection for the fraction-free elimination.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotOrder {
    /// First nonzero row, columns left to right.
    Natural,
    /// Last nonzero row, columns right to left.
    Reversed,
    /// Entry of least absolute value in the remaining block.
    SmallestEntry,
}

/// Rank by Bareiss elimination on an integer matrix obtained by clearing
/// denominators row by row.
pub fn bareiss_rank(m: &Matrix, order: PivotOrder) -> usize {
    let mut a: Vec<Vec<i128>> = (0..m.rows)
        .map(|i| {
            let row = m.row(i);
            let l = row.iter().fold(1i128, |l, x| num_integer_lcm(l, *x.denom()));
            row.iter().map(|x| x.numer() * (l / x.denom())).collect()
        })
        .collect();
    let (rows, cols) = (m.rows, m.cols);
    let col_order: Vec<usize> = match order {
        PivotOrder::Reversed => (0..cols).rev().collect(),
        _ => (0..cols).collect(),
    };
    let mut prev = 1i128;
    let mut r = 0;
    let mut used_cols = vec![false; cols];
    while r < rows {
        let pick = match order {
            PivotOrder::Natural => col_order
                .iter()
                .filter(|&&c| !used_cols[c])
                .find_map(|&c| (r..rows).find(|&i| a[i][c] != 0).map(|i| (i, c))),
            PivotOrder::Reversed => col_order
                .iter()
                .filter(|&&c| !used_cols[c])
                .find_map(|&c| (r..rows).rev().find(|&i| a[i][c] != 0).map(|i| (i, c))),
            PivotOrder::SmallestEntry => {
                let mut best: Option<(usize, usize)> = None;
                for i in r..rows {
                    for c in (0..cols).filter(|&c| !used_cols[c]) {
                        if a[i][c] != 0 && best.map_or(true, |(bi, bc)| a[i][c].abs() < a[bi][bc].abs()) {
                            best = Some((i, c));
                        }
                    }
                }
                best
            }
        };
        let Some((pi, pc)) = pick else { break };
        a.swap(r, pi);
        used_cols[pc] = true;
        let piv = a[r][pc];
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            let f = row[pc];
            for (x, &y) in row.iter_mut().zip(pivot_row) {
                *x = (piv * *x - f * y) / prev;
            }
        }
        prev = piv;
        r += 1;
    }
    r
}

fn num_integer_lcm(a: i128, b: i128) -> i128 {
    fn gcd(mut a: i128, mut b: i128) -> i128 {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a.abs()
    }
    (a / gcd(a, b) * b).abs()
}

pub fn is_zero_vec(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}
