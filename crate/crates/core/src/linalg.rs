//! Exact linear algebra over the rationals.
//!
//! Matrices are stored column-sparse; each column maps row indices to nonzero
//! entries. Ranks are computed either by fraction-free (Bareiss) elimination
//! over the integers, or as a lower bound by elimination modulo a large prime.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// 2^61 - 1.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    cols: Vec<BTreeMap<usize, Rational>>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            ncols,
            cols: vec![BTreeMap::new(); ncols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(nrows, ncols);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, *v);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(BTreeMap::len).sum()
    }

    pub fn get(&self, row: usize, col: usize) -> Rational {
        self.cols[col].get(&row).copied().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, row: usize, col: usize, v: Rational) {
        assert!(row < self.nrows && col < self.ncols, "index out of range");
        if v.is_zero() {
            self.cols[col].remove(&row);
        } else {
            self.cols[col].insert(row, v);
        }
    }

    pub fn add_to(&mut self, row: usize, col: usize, v: Rational) {
        if v.is_zero() {
            return;
        }
        assert!(row < self.nrows && col < self.ncols, "index out of range");
        let e = self.cols[col].entry(row).or_insert_with(Rational::zero);
        *e += v;
        if e.is_zero() {
            self.cols[col].remove(&row);
        }
    }

    /// Nonzero entries of column `col` as `(row, value)`.
    pub fn column(&self, col: usize) -> impl Iterator<Item = (usize, Rational)> + '_ {
        self.cols[col].iter().map(|(r, v)| (*r, *v))
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, Rational)> + '_ {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r, c, *v)))
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(BTreeMap::is_empty)
    }

    pub fn first_nonzero(&self) -> Option<(usize, usize, Rational)> {
        self.entries().next()
    }

    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols, rhs.nrows, "dimension mismatch in product");
        let mut out = SparseMatrix::zeros(self.nrows, rhs.ncols);
        for (j, col) in rhs.cols.iter().enumerate() {
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (k, b) in col {
                for (i, a) in &self.cols[*k] {
                    *acc.entry(*i).or_insert_with(Rational::zero) += a * b;
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.cols[j] = acc;
        }
        out
    }

    pub fn add(&self, rhs: &SparseMatrix) -> SparseMatrix {
        self.lin_comb(Rational::one(), rhs, Rational::one())
    }

    pub fn sub(&self, rhs: &SparseMatrix) -> SparseMatrix {
        self.lin_comb(Rational::one(), rhs, -Rational::one())
    }

    /// `a * self + b * rhs`.
    pub fn lin_comb(&self, a: Rational, rhs: &SparseMatrix, b: Rational) -> SparseMatrix {
        assert_eq!((self.nrows, self.ncols), (rhs.nrows, rhs.ncols));
        let mut out = self.scale(a);
        for (r, c, v) in rhs.entries() {
            out.add_to(r, c, v * b);
        }
        out
    }

    pub fn scale(&self, s: Rational) -> SparseMatrix {
        if s.is_zero() {
            return SparseMatrix::zeros(self.nrows, self.ncols);
        }
        let mut out = self.clone();
        for col in &mut out.cols {
            for v in col.values_mut() {
                *v *= s;
            }
        }
        out
    }

    /// `[self, rhs] = self*rhs - rhs*self`.
    pub fn commutator(&self, rhs: &SparseMatrix) -> SparseMatrix {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    pub fn trace(&self) -> Rational {
        (0..self.ncols.min(self.nrows))
            .map(|i| self.get(i, i))
            .fold(Rational::zero(), |a, b| a + b)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> SparseMatrix {
        let mut row_pos = vec![usize::MAX; self.nrows];
        for (new, &old) in rows.iter().enumerate() {
            row_pos[old] = new;
        }
        let mut out = SparseMatrix::zeros(rows.len(), cols.len());
        for (new_c, &old_c) in cols.iter().enumerate() {
            for (r, v) in &self.cols[old_c] {
                let nr = row_pos[*r];
                if nr != usize::MAX {
                    out.cols[new_c].insert(nr, *v);
                }
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut d = vec![vec![Rational::zero(); self.ncols]; self.nrows];
        for (r, c, v) in self.entries() {
            d[r][c] = v;
        }
        d
    }

    /// Exact rank by fraction-free elimination.
    pub fn rank(&self) -> usize {
        rank_fraction_free(self)
    }
}

/// Rank over the rationals by Bareiss elimination on an integer copy of the
/// matrix (each row scaled by the lcm of its denominators).
pub fn rank_fraction_free(m: &SparseMatrix) -> usize {
    if m.nrows == 0 || m.ncols == 0 || m.is_zero() {
        return 0;
    }
    let mut row_lcm = vec![1i64; m.nrows];
    for (r, _, v) in m.entries() {
        row_lcm[r] = row_lcm[r].lcm(v.denom());
    }
    // Work on the orientation with fewer rows.
    let transpose = m.nrows > m.ncols;
    let (nr, nc) = if transpose {
        (m.ncols, m.nrows)
    } else {
        (m.nrows, m.ncols)
    };
    let mut a = vec![vec![BigInt::zero(); nc]; nr];
    for (r, c, v) in m.entries() {
        let scaled = BigInt::from(*v.numer()) * BigInt::from(row_lcm[r] / v.denom());
        if transpose {
            a[c][r] = scaled;
        } else {
            a[r][c] = scaled;
        }
    }
    bareiss_rank(&mut a)
}

/// Fraction-free Gaussian elimination; destroys `a`.
pub fn bareiss_rank(a: &mut [Vec<BigInt>]) -> usize {
    let nr = a.len();
    if nr == 0 {
        return 0;
    }
    let nc = a[0].len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..nc {
        if rank == nr {
            break;
        }
        let Some(p) = (rank..nr).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = pivot_row[col].clone();
        for row in rest.iter_mut() {
            if row[col].is_zero() {
                for j in col + 1..nc {
                    if !row[j].is_zero() {
                        row[j] = &row[j] * &pivot / &prev;
                    }
                }
                continue;
            }
            let factor = row[col].clone();
            for j in col + 1..nc {
                let v = &row[j] * &pivot - &factor * &pivot_row[j];
                row[j] = if v.is_zero() { v } else { v / &prev };
            }
            row[col] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn to_mod(v: &Rational, p: u64) -> Option<u64> {
    let den = v.denom().unsigned_abs() % p;
    if den == 0 {
        return None;
    }
    let num = v.numer().rem_euclid(p as i64) as u64;
    let num = if v.denom().is_negative() {
        (p - num) % p
    } else {
        num
    };
    Some(mulmod(num, powmod(den, p - 2, p), p))
}

/// Rank modulo the prime `p`. This is a lower bound for the rank over the
/// rationals. Returns `None` if some denominator vanishes modulo `p`.
pub fn rank_mod_prime(m: &SparseMatrix, p: u64) -> Option<usize> {
    if m.nrows == 0 || m.ncols == 0 {
        return Some(0);
    }
    let transpose = m.nrows > m.ncols;
    let (nr, nc) = if transpose {
        (m.ncols, m.nrows)
    } else {
        (m.nrows, m.ncols)
    };
    let mut a = vec![vec![0u64; nc]; nr];
    for (r, c, v) in m.entries() {
        let x = to_mod(&v, p)?;
        if transpose {
            a[c][r] = x;
        } else {
            a[r][c] = x;
        }
    }
    let mut rank = 0;
    for col in 0..nc {
        if rank == nr {
            break;
        }
        let Some(piv) = (rank..nr).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = powmod(a[rank][col], p - 2, p);
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in rest.iter_mut() {
            if row[col] == 0 {
                continue;
            }
            let f = mulmod(row[col], inv, p);
            for j in col..nc {
                if pivot_row[j] != 0 {
                    row[j] = (row[j] + p - mulmod(f, pivot_row[j], p)) % p;
                }
            }
        }
        rank += 1;
    }
    Some(rank)
}
