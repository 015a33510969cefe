//! Small exact linear algebra: elimination over fields, Leibniz
//! determinants, and fraction-free rank tracking over the Laurent ring.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::ring::{Field, LaurentPoly, Scalar};

pub type Matrix<F> = Vec<Vec<F>>;

/// In-place reduced row echelon form; returns the pivot columns.
pub fn rref<F: Field>(m: &mut Matrix<F>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = x.mul_ref(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = f.mul_ref(&m[r][j]);
                    m[i][j].sub_assign_ref(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    rref(&mut m.clone()).len()
}

/// Solves `a x = b` for a system with full column rank. Overdetermined
/// systems are accepted when consistent.
pub fn solve<F: Field>(a: &Matrix<F>, b: &[F]) -> Result<Vec<F>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut aug: Matrix<F> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&cols) {
        return Err(Error::InconsistentSystem);
    }
    if pivots.len() < cols {
        return Err(Error::SingularSystem);
    }
    Ok((0..cols).map(|i| aug[i][cols].clone()).collect())
}

pub fn inverse<F: Field>(m: &Matrix<F>) -> Result<Matrix<F>> {
    let n = m.len();
    let mut aug: Matrix<F> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(Error::SingularSystem);
    }
    Ok(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Basis of the right kernel of `m` (with `cols` columns).
pub fn nullspace<F: Field>(m: &Matrix<F>, cols: usize) -> Vec<Vec<F>> {
    let mut r = m.clone();
    let pivots = rref(&mut r);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![F::zero(); cols];
            v[fc] = F::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = r[row][fc].neg_ref();
            }
            v
        })
        .collect()
}

/// Leibniz expansion; intended for the `n ≤ 4` matrices used here.
pub fn determinant<S: Scalar>(m: &Matrix<S>) -> S {
    let n = m.len();
    if n == 0 {
        return S::one();
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = S::zero();
    permute(&mut perm, 0, &mut |p| {
        let mut term = S::one();
        for (i, &j) in p.iter().enumerate() {
            term = term.mul_ref(&m[i][j]);
            if term.is_zero() {
                return;
            }
        }
        if inversions(p).is_multiple_of(2) {
            total.add_assign_ref(&term);
        } else {
            total.sub_assign_ref(&term);
        }
    });
    total
}

/// Visits every permutation of `v[k..]` (with `v[..k]` fixed).
pub fn permute(v: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        visit(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, visit);
        v.swap(k, i);
    }
}

pub fn inversions(p: &[usize]) -> usize {
    let mut c = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                c += 1;
            }
        }
    }
    c
}

/// Positive definiteness of a symmetric rational matrix via the signs of the
/// pivots of elimination without pivoting (equivalently, of the leading
/// principal minors).
pub fn is_positive_definite(m: &Matrix<BigRational>) -> bool {
    let n = m.len();
    let mut a = m.clone();
    for k in 0..n {
        if !a[k][k].is_positive() {
            return false;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &a[k][k];
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
        }
    }
    true
}

/// Row echelon form over the Laurent ring, built one sparse vector at a time
/// with fraction-free elimination. Rows are kept primitive (content divided
/// out) so coefficients do not grow.
#[derive(Debug, Clone)]
pub struct SparseEchelon<K: Ord + Clone> {
    rows: Vec<(K, BTreeMap<K, LaurentPoly>)>,
}

impl<K: Ord + Clone> Default for SparseEchelon<K> {
    fn default() -> Self {
        SparseEchelon { rows: Vec::new() }
    }
}

impl<K: Ord + Clone> SparseEchelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current rows; the remainder is zero iff `v`
    /// lies in their span.
    pub fn reduce(&self, mut v: BTreeMap<K, LaurentPoly>) -> BTreeMap<K, LaurentPoly> {
        for (pivot, row) in &self.rows {
            let Some(c) = v.get(pivot).cloned() else {
                continue;
            };
            let p = &row[pivot];
            for x in v.values_mut() {
                *x = x.mul(p);
            }
            for (k, r) in row {
                let t = r.mul(&c);
                let e = v.entry(k.clone()).or_default();
                e.sub_assign(&t);
            }
            v.retain(|_, x| !x.is_zero());
            make_primitive(&mut v);
        }
        v
    }

    /// Adds `v` if it is independent of the current rows.
    pub fn insert(&mut self, v: BTreeMap<K, LaurentPoly>) -> bool {
        let v = self.reduce(v);
        match v.keys().next().cloned() {
            Some(pivot) => {
                self.rows.push((pivot, v));
                true
            }
            None => false,
        }
    }
}

fn make_primitive<K: Ord>(v: &mut BTreeMap<K, LaurentPoly>) {
    let mut g = LaurentPoly::zero();
    for x in v.values() {
        g = g.gcd(x);
        if g.is_unit() {
            break;
        }
    }
    if !g.is_zero() && !g.is_unit() {
        for x in v.values_mut() {
            *x = x.exact_div(&g).expect("content divides every entry");
        }
    }
    // bound the exponent drift too
    if let Some(lo) = v.values().filter_map(LaurentPoly::low_exp).min() {
        if lo != 0 {
            for x in v.values_mut() {
                *x = x.shift(-lo);
            }
        }
    }
}
