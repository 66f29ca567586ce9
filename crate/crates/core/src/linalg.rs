//! Dense linear algebra over a [`Scalar`] field.
//!
//! Exact solves use incremental Gauss–Jordan elimination with pivots taken in
//! column order, so free variables come out in the monomial order of the
//! columns. Numeric solves use Gram–Schmidt least squares.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Row echelon data: each stored row has a leading 1 at its pivot column.
#[derive(Clone, Debug)]
pub struct Echelon<C> {
    ncols: usize,
    rows: BTreeMap<usize, Vec<C>>,
}

impl<C: Scalar> Echelon<C> {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    /// Reduces `row` against the stored rows; returns the remainder.
    pub fn reduce(&self, mut row: Vec<C>) -> Vec<C> {
        for (&p, prow) in &self.rows {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for j in p..self.ncols {
                if !prow[j].is_zero() {
                    row[j] = row[j].clone() - f.clone() * prow[j].clone();
                }
            }
        }
        row
    }

    /// Adds a row; returns true if it increased the rank.
    pub fn insert(&mut self, row: Vec<C>) -> bool {
        assert_eq!(row.len(), self.ncols, "row length");
        let row = self.reduce(row);
        let Some(p) = row.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = C::one() / row[p].clone();
        let row: Vec<C> = row.into_iter().map(|c| if c.is_zero() { c } else { c * inv.clone() }).collect();
        self.rows.insert(p, row);
        true
    }

    /// Fully reduced rows, keyed by pivot.
    pub fn reduced(&self) -> BTreeMap<usize, Vec<C>> {
        let mut rows = self.rows.clone();
        let pivots: Vec<usize> = rows.keys().rev().copied().collect();
        for &p in &pivots {
            let prow = rows[&p].clone();
            for (&q, row) in rows.iter_mut() {
                if q >= p || row[p].is_zero() {
                    continue;
                }
                let f = row[p].clone();
                for j in p..self.ncols {
                    if !prow[j].is_zero() {
                        row[j] = row[j].clone() - f.clone() * prow[j].clone();
                    }
                }
            }
        }
        rows
    }

    /// Basis of {x : Ax = 0}, one vector per free column in increasing order.
    pub fn nullspace(&self) -> Vec<Vec<C>> {
        let red = self.reduced();
        (0..self.ncols)
            .filter(|j| !red.contains_key(j))
            .map(|f| {
                let mut v = vec![C::zero(); self.ncols];
                v[f] = C::one();
                for (&p, row) in &red {
                    if !row[f].is_zero() {
                        v[p] = -row[f].clone();
                    }
                }
                v
            })
            .collect()
    }
}

pub fn rank<C: Scalar>(rows: &[Vec<C>], ncols: usize) -> usize {
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(r.clone());
    }
    e.rank()
}

pub fn nullspace<C: Scalar>(rows: &[Vec<C>], ncols: usize) -> Vec<Vec<C>> {
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(r.clone());
    }
    e.nullspace()
}

/// Exact solution set of `A x = b`: a particular solution with free variables
/// given by `free_value` (column index ↦ value) and the nullspace basis.
pub fn solve_affine<C: Scalar>(
    a: &[Vec<C>],
    b: &[C],
    ncols: usize,
    free_value: impl Fn(usize) -> C,
) -> Result<(Vec<C>, Vec<Vec<C>>)> {
    let mut e = Echelon::new(ncols + 1);
    for (row, rhs) in a.iter().zip(b) {
        let mut r = row.clone();
        r.push(rhs.clone());
        e.insert(r);
    }
    if e.rows.contains_key(&ncols) {
        return Err(Error::Inconsistent("linear system has no solution".into()));
    }
    let red = e.reduced();
    let mut x = vec![C::zero(); ncols];
    let free: Vec<usize> = (0..ncols).filter(|j| !red.contains_key(j)).collect();
    for &f in &free {
        x[f] = free_value(f);
    }
    for (&p, row) in &red {
        let mut v = row[ncols].clone();
        for &f in &free {
            if !row[f].is_zero() {
                v = v - row[f].clone() * x[f].clone();
            }
        }
        x[p] = v;
    }
    let null = free
        .iter()
        .map(|&f| {
            let mut v = vec![C::zero(); ncols];
            v[f] = C::one();
            for (&p, row) in &red {
                if !row[f].is_zero() {
                    v[p] = -row[f].clone();
                }
            }
            v
        })
        .collect();
    Ok((x, null))
}

/// Least squares for `A x ≈ b` with real-valued A, by modified Gram–Schmidt
/// with one reorthogonalization pass. Pivot-free; fails on rank deficiency.
pub fn least_squares<C: Scalar>(a: &[Vec<C>], b: &[C], ncols: usize) -> Result<Vec<C>> {
    let m = a.len();
    let dot = |u: &[C], v: &[C]| u.iter().zip(v).fold(C::zero(), |acc, (x, y)| acc + x.clone() * y.clone());
    let mut q: Vec<Vec<C>> = Vec::with_capacity(ncols);
    let mut norms: Vec<C> = Vec::with_capacity(ncols);
    let mut r = vec![vec![C::zero(); ncols]; ncols];
    for j in 0..ncols {
        let mut v: Vec<C> = (0..m).map(|i| a[i][j].clone()).collect();
        let size = v.iter().map(|c| c.magnitude()).fold(0.0, f64::max);
        for _ in 0..2 {
            for i in 0..j {
                let c = dot(&q[i], &v) / norms[i].clone();
                for (x, y) in v.iter_mut().zip(&q[i]) {
                    *x = x.clone() - c.clone() * y.clone();
                }
                r[i][j] = r[i][j].clone() + c;
            }
        }
        let rest = v.iter().map(|c| c.magnitude()).fold(0.0, f64::max);
        if rest == 0.0 || rest <= size * 1e-26 {
            return Err(Error::Inconsistent(format!("rank-deficient least squares at column {j}")));
        }
        norms.push(dot(&v, &v));
        q.push(v);
    }
    let mut rhs = b.to_vec();
    let mut c = vec![C::zero(); ncols];
    for j in 0..ncols {
        c[j] = dot(&q[j], &rhs) / norms[j].clone();
        for (x, y) in rhs.iter_mut().zip(&q[j]) {
            *x = x.clone() - c[j].clone() * y.clone();
        }
    }
    let mut x = vec![C::zero(); ncols];
    for j in (0..ncols).rev() {
        let mut v = c[j].clone();
        for k in j + 1..ncols {
            v = v - r[j][k].clone() * x[k].clone();
        }
        x[j] = v;
    }
    Ok(x)
}

/// Solves `A x = b` exactly (free variables zero) or in the least-squares sense.
pub fn solve<C: Scalar>(a: &[Vec<C>], b: &[C], ncols: usize) -> Result<Vec<C>> {
    if ncols == 0 {
        return Ok(Vec::new());
    }
    if C::EXACT {
        solve_affine(a, b, ncols, |_| C::zero()).map(|(x, _)| x)
    } else {
        least_squares(a, b, ncols)
    }
}
