//! Exact dense linear algebra for the small integer matrices produced by
//! simplicial and Čech differentials.

use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::field::{Coeff, Field};

/// A dense matrix over a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Coeff>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: alloc::vec![field.zero(); rows * cols],
        }
    }

    pub fn from_integers(field: Field, rows: &[Vec<i64>], cols: usize) -> Matrix {
        let mut m = Matrix::zeros(field, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.set(i, j, field.from_i64(v));
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Coeff {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Coeff) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<Coeff> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Coeff>]) -> Matrix {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Coeff]) -> Vec<Coeff> {
        (0..self.rows)
            .map(|i| {
                let mut acc = self.data.first().map(|c| c.field().zero()).unwrap();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.get(r, c).inv();
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let f = self.get(i, c).clone();
                for j in c..self.cols {
                    if self.get(r, j).is_zero() {
                        continue;
                    }
                    let v = self.get(i, j) - &(&f * self.get(r, j));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// A basis of `{v : A v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Coeff>> {
        let field = match self.data.first() {
            Some(c) => c.field(),
            None => return identity_basis_unknown_field(self.cols),
        };
        let mut m = self.clone();
        let pivots = m.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = alloc::vec![field.zero(); self.cols];
            v[free] = field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m.get(r, free);
            }
            basis.push(v);
        }
        basis
    }
}

fn identity_basis_unknown_field(cols: usize) -> Vec<Vec<Coeff>> {
    assert!(cols == 0, "nullspace of an empty matrix needs a field");
    Vec::new()
}

/// Rank of an integer matrix over `field`.
pub fn integer_rank(rows: &[Vec<i64>], cols: usize, field: Field) -> usize {
    if rows.is_empty() || cols == 0 {
        return 0;
    }
    match field {
        Field::Prime(p) => rank_mod_p(rows, cols, p),
        Field::Rationals => rank_rational(rows.to_vec(), cols),
    }
}

fn rank_mod_p(rows: &[Vec<i64>], cols: usize, p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| v.rem_euclid(p as i64) as u64).collect())
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, pr);
        let inv = pow_mod(m[rank][c], p - 2, p);
        for j in c..cols {
            m[rank][j] = m[rank][j] * inv % p;
        }
        for i in rank + 1..m.len() {
            let f = m[i][c];
            if f == 0 {
                continue;
            }
            for j in c..cols {
                m[i][j] = (m[i][j] + (p - f) * m[rank][j]) % p;
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Eliminates on ±1 pivots in machine integers (exact, no fractions); any
/// remaining block, or any overflow, is finished over `BigInt` by fraction-free
/// elimination.
fn rank_rational(mut m: Vec<Vec<i64>>, cols: usize) -> usize {
    let mut rank = 0;
    let mut live_cols: Vec<bool> = alloc::vec![true; cols];
    loop {
        let mut pivot = None;
        'search: for (i, row) in m.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if live_cols[j] && (v == 1 || v == -1) {
                    pivot = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        let prow = m.swap_remove(pi);
        let pv = prow[pj];
        let mut overflow = false;
        for row in m.iter_mut() {
            let f = row[pj];
            if f == 0 {
                continue;
            }
            // row -= (f / pv) * prow, with pv = ±1
            let q = f * pv;
            let mut next = row.clone();
            for j in 0..cols {
                if prow[j] == 0 {
                    continue;
                }
                match q.checked_mul(prow[j]).and_then(|t| row[j].checked_sub(t)) {
                    Some(v) => next[j] = v,
                    None => {
                        overflow = true;
                        break;
                    }
                }
            }
            if overflow {
                break;
            }
            *row = next;
        }
        if overflow {
            // Rows are still row-equivalent to the input; finish in big integers.
            let mut full = m;
            full.push(prow);
            return rank + bareiss_rank(&full, &live_cols);
        }
        live_cols[pj] = false;
        rank += 1;
        m.retain(|r| r.iter().enumerate().any(|(j, &v)| live_cols[j] && v != 0));
        if m.is_empty() {
            return rank;
        }
    }
    rank + bareiss_rank(&m, &live_cols)
}

/// Rank of the submatrix on the live columns, by fraction-free elimination.
fn bareiss_rank(m: &[Vec<i64>], live_cols: &[bool]) -> usize {
    let cols: Vec<usize> = (0..live_cols.len()).filter(|&j| live_cols[j]).collect();
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| cols.iter().map(|&j| BigInt::from(r[j])).collect())
        .collect();
    let zero = BigInt::from(0);
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for c in 0..cols.len() {
        let Some(p) = (rank..a.len()).find(|&i| a[i][c] != zero) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..a.len() {
            for j in c + 1..cols.len() {
                let v = (&a[rank][c] * &a[i][j] - &a[i][c] * &a[rank][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = zero.clone();
        }
        prev = a[rank][c].clone();
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn rank_of_boundary_of_triangle() {
        // edges -> vertices of a triangle: rank 2
        let d = vec![vec![-1, -1, 0], vec![1, 0, -1], vec![0, 1, 1]];
        assert_eq!(integer_rank(&d, 3, Field::Rationals), 2);
        assert_eq!(integer_rank(&d, 3, Field::prime(2).unwrap()), 2);
    }

    #[test]
    fn characteristic_dependent_rank() {
        let m = vec![vec![2, 0], vec![0, 3]];
        assert_eq!(integer_rank(&m, 2, Field::Rationals), 2);
        assert_eq!(integer_rank(&m, 2, Field::prime(2).unwrap()), 1);
        assert_eq!(integer_rank(&m, 2, Field::prime(3).unwrap()), 1);
    }

    #[test]
    fn non_unit_pivots_fall_back_exactly() {
        let m = vec![vec![2, 4, 6], vec![3, 6, 9], vec![2, 5, 7]];
        assert_eq!(integer_rank(&m, 3, Field::Rationals), 2);
    }

    #[test]
    fn nullspace_is_annihilated() {
        let f = Field::Rationals;
        let a = Matrix::from_integers(f, &[vec![1, 1, 0], vec![0, 1, 1]], 3);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(a.mul_vec(&ns[0]).iter().all(|c| c.is_zero()));
        assert_eq!(a.rank(), 2);
    }
}
