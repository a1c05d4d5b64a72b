//! Sparse exact vectors and elimination, for the large but very sparse
//! coordinate spaces of free modules.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::linalg::Q;

/// Entries sorted by index, no explicit zeros.
pub type SVec = Vec<(usize, Q)>;

pub fn unit(i: usize) -> SVec {
    vec![(i, Q::one())]
}

pub fn from_dense(v: &[Q]) -> SVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, *x)).collect()
}

pub fn to_dense(v: &SVec, n: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); n];
    for &(i, x) in v {
        out[i] = x;
    }
    out
}

pub fn get(v: &SVec, i: usize) -> Q {
    v.binary_search_by_key(&i, |e| e.0).map(|k| v[k].1).unwrap_or_else(|_| Q::zero())
}

/// `y + a·x`.
pub fn axpy(y: &SVec, a: Q, x: &SVec) -> SVec {
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < y.len() || j < x.len() {
        let take_y = j == x.len() || (i < y.len() && y[i].0 < x[j].0);
        let take_x = i == y.len() || (j < x.len() && x[j].0 < y[i].0);
        if take_y {
            out.push(y[i]);
            i += 1;
        } else if take_x {
            out.push((x[j].0, a * x[j].1));
            j += 1;
        } else {
            let s = y[i].1 + a * x[j].1;
            if !s.is_zero() {
                out.push((y[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn scale(v: &mut SVec, a: Q) {
    for e in v.iter_mut() {
        e.1 *= a;
    }
}

/// Row echelon basis with pivots normalised to 1 (not fully reduced).
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SVec>,
    by_pivot: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &SVec) -> SVec {
        let mut acc: BTreeMap<usize, Q> = v.iter().copied().collect();
        let mut cursor = 0;
        while let Some((&i, &x)) = acc.range(cursor..).next() {
            cursor = i + 1;
            if let Some(&r) = self.by_pivot.get(&i) {
                acc.remove(&i);
                for &(j, y) in &self.rows[r][1..] {
                    let e = acc.entry(j).or_insert_with(Q::zero);
                    *e -= x * y;
                    if e.is_zero() {
                        acc.remove(&j);
                    }
                }
            }
        }
        acc.into_iter().collect()
    }

    pub fn contains(&self, v: &SVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v`; returns whether the span grew.
    pub fn insert(&mut self, v: &SVec) -> bool {
        let mut r = self.reduce(v);
        let Some(&(p, x)) = r.first() else { return false };
        scale(&mut r, x.recip());
        self.by_pivot.insert(p, self.rows.len());
        self.rows.push(r);
        true
    }

    /// The fully reduced echelon form, sorted by pivot.
    pub fn into_rref(self) -> Vec<SVec> {
        let mut rows = self.rows;
        rows.sort_by_key(|r| r[0].0);
        for k in (0..rows.len()).rev() {
            let p = rows[k][0].0;
            let pivot_row = rows[k].clone();
            for row in rows[..k].iter_mut() {
                let x = get(row, p);
                if !x.is_zero() {
                    *row = axpy(row, -x, &pivot_row);
                }
            }
        }
        rows
    }
}

pub fn rref(rows: &[SVec]) -> Vec<SVec> {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.into_rref()
}

/// Basis of `{c : Σ c_i rows_i = 0}` over `rows.len()` coefficients. Each
/// vector is 1 at one non-pivot index `f` of the reduced transpose and 0 at
/// the others, which makes the basis a function of the subspace alone.
pub fn left_nullspace(rows: &[SVec]) -> Vec<SVec> {
    let mut columns: BTreeMap<usize, SVec> = BTreeMap::new();
    for (i, r) in rows.iter().enumerate() {
        for &(c, x) in r {
            columns.entry(c).or_default().push((i, x));
        }
    }
    let columns: Vec<SVec> = columns.into_values().collect();
    let red = rref(&columns);
    let mut is_pivot = vec![false; rows.len()];
    for r in &red {
        is_pivot[r[0].0] = true;
    }
    let mut extra: Vec<SVec> = vec![Vec::new(); rows.len()];
    for r in &red {
        let p = r[0].0;
        for &(f, x) in &r[1..] {
            extra[f].push((p, -x));
        }
    }
    (0..rows.len())
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = std::mem::take(&mut extra[f]);
            v.push((f, Q::one()));
            v.sort_by_key(|e| e.0);
            v
        })
        .collect()
}

/// For a basis whose rows form an identity on some set of coordinates, the
/// coordinate belonging to each row.
pub fn identity_coordinates(rows: &[SVec]) -> Vec<usize> {
    let mut count: HashMap<usize, usize> = HashMap::new();
    for r in rows {
        for &(i, _) in r {
            *count.entry(i).or_insert(0) += 1;
        }
    }
    rows.iter()
        .map(|r| r.iter().find(|(i, x)| count[i] == 1 && x.is_one()).map(|e| e.0).expect("basis in reduced form"))
        .collect()
}
