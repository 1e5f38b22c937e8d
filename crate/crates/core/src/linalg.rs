//! Sparse linear systems over a prime field `F_p`.
//!
//! Rows are streamed into an incrementally maintained reduced row echelon
//! basis. Pivot rows keep only their entries in non-pivot columns, which
//! stays sparse for the coboundary systems this crate builds (their rank is
//! close to the number of unknowns). An inconsistent system is reported
//! with an explicit certificate: coefficients `y` with `yᵀA = 0` and
//! `yᵀb ≠ 0`.

use std::collections::BTreeMap;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinearError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("right-hand side has {rhs} entries but the matrix has {rows} rows")]
    DimensionMismatch { rows: usize, rhs: usize },
    #[error("column {col} in row {row} is out of range for {cols} columns")]
    ColumnOutOfRange { row: usize, col: usize, cols: usize },
}

pub fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d: &u32| d * d <= n).all(|d| n % d != 0)
}

pub fn pow_mod(base: u32, mut exp: u64, p: u32) -> u32 {
    let p64 = p as u64;
    let mut acc = 1u64 % p64;
    let mut b = base as u64 % p64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % p64;
        }
        b = b * b % p64;
        exp >>= 1;
    }
    acc as u32
}

/// Multiplicative inverse of a nonzero residue modulo a prime.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    pow_mod(a, (p - 2) as u64, p)
}

/// A sparse matrix over `F_p`, one row of `(column, value)` pairs at a time.
#[derive(Debug, Clone)]
pub struct SparseMatrix {
    cols: usize,
    prime: u32,
    rows: Vec<Vec<(usize, u32)>>,
}

impl SparseMatrix {
    pub fn new(cols: usize, prime: u32) -> Result<Self, LinearError> {
        if !is_prime(prime) {
            return Err(LinearError::NotPrime(prime));
        }
        Ok(Self {
            cols,
            prime,
            rows: Vec::new(),
        })
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    /// Appends a row given as signed coefficients; repeated columns are
    /// summed and zero entries dropped.
    pub fn push_row(&mut self, entries: &[(usize, i64)]) -> Result<(), LinearError> {
        let p = self.prime as i64;
        let mut merged: BTreeMap<usize, i64> = BTreeMap::new();
        for &(col, value) in entries {
            if col >= self.cols {
                return Err(LinearError::ColumnOutOfRange {
                    row: self.rows.len(),
                    col,
                    cols: self.cols,
                });
            }
            *merged.entry(col).or_insert(0) += value;
        }
        let row = merged
            .into_iter()
            .map(|(c, v)| (c, v.rem_euclid(p) as u32))
            .filter(|&(_, v)| v != 0)
            .collect();
        self.rows.push(row);
        Ok(())
    }

    pub fn row(&self, i: usize) -> &[(usize, u32)] {
        &self.rows[i]
    }

    /// `A·x` over `F_p`.
    pub fn apply(&self, x: &[u32]) -> Vec<u32> {
        let p = self.prime as u64;
        self.rows
            .iter()
            .map(|row| {
                (row.iter().map(|&(c, v)| v as u64 * x[c] as u64 % p).sum::<u64>() % p) as u32
            })
            .collect()
    }
}

/// Result of [`solve_linear_fp`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolution {
    /// A solution with every free variable set to 0.
    Solution(Vec<u32>),
    /// Row coefficients `y` (as `(row, coefficient)`) with `yᵀA = 0` and
    /// `yᵀb ≠ 0`.
    Inconsistent(Vec<(usize, u32)>),
}

impl LinearSolution {
    pub fn is_solution(&self) -> bool {
        matches!(self, LinearSolution::Solution(_))
    }
}

/// Checks an inconsistency certificate: `yᵀA = 0` and `yᵀb ≠ 0`.
pub fn certifies_inconsistency(a: &SparseMatrix, b: &[u32], y: &[(usize, u32)]) -> bool {
    let p = a.prime() as u64;
    let mut combo = vec![0u64; a.cols()];
    let mut rhs = 0u64;
    for &(row, coeff) in y {
        for &(c, v) in a.row(row) {
            combo[c] = (combo[c] + coeff as u64 * v as u64) % p;
        }
        rhs = (rhs + coeff as u64 * b[row] as u64) % p;
    }
    combo.iter().all(|&v| v == 0) && rhs != 0
}

struct PivotRow {
    col: usize,
    /// Entries outside pivot columns, sorted by column. The pivot itself is 1.
    rest: Vec<(usize, u32)>,
    rhs: u32,
    /// This row as a combination of original rows, sorted by row index.
    combo: Vec<(usize, u32)>,
}

fn axpy_sorted(dst: &[(usize, u32)], scale: u32, src: &[(usize, u32)], p: u32) -> Vec<(usize, u32)> {
    // dst − scale·src
    let p64 = p as u64;
    let neg = |v: u32| ((p64 - (scale as u64 * v as u64) % p64) % p64) as u32;
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dst.len() || j < src.len() {
        let take_dst = j == src.len() || (i < dst.len() && dst[i].0 < src[j].0);
        let take_src = i == dst.len() || (j < src.len() && src[j].0 < dst[i].0);
        if take_dst {
            out.push(dst[i]);
            i += 1;
        } else if take_src {
            out.push((src[j].0, neg(src[j].1)));
            j += 1;
        } else {
            let v = ((dst[i].1 as u64 + neg(src[j].1) as u64) % p64) as u32;
            if v != 0 {
                out.push((dst[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out.retain(|&(_, v)| v != 0);
    out
}

/// Solves `A·x = b` over `F_p` by streaming reduction to reduced row
/// echelon form.
///
/// Deterministic: free variables are 0, and an inconsistent system reports
/// the certificate found at the first row that cannot be satisfied.
pub fn solve_linear_fp(a: &SparseMatrix, b: &[u32]) -> Result<LinearSolution, LinearError> {
    if b.len() != a.rows() {
        return Err(LinearError::DimensionMismatch {
            rows: a.rows(),
            rhs: b.len(),
        });
    }
    let p = a.prime();
    let p64 = p as u64;
    let n = a.cols();
    let mut pivots: Vec<PivotRow> = Vec::new();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; n];
    let mut scratch = vec![0u32; n];
    let mut touched: Vec<usize> = Vec::new();
    let mut used: Vec<(usize, u32)> = Vec::new();

    for (row_idx, &rhs_in) in b.iter().enumerate() {
        let row = a.row(row_idx);
        let mut rhs = rhs_in as u64 % p64;
        touched.clear();
        used.clear();
        for &(c, v) in row {
            if let Some(k) = pivot_of_col[c] {
                used.push((k, v));
            } else {
                if scratch[c] == 0 {
                    touched.push(c);
                }
                scratch[c] = ((scratch[c] as u64 + v as u64) % p64) as u32;
            }
        }
        for &(k, m) in &used {
            let pr = &pivots[k];
            rhs = (rhs + p64 - m as u64 * pr.rhs as u64 % p64) % p64;
            for &(c, v) in &pr.rest {
                if scratch[c] == 0 {
                    touched.push(c);
                }
                scratch[c] = ((scratch[c] as u64 + p64 - m as u64 * v as u64 % p64) % p64) as u32;
            }
        }
        touched.sort_unstable();
        touched.dedup();
        let remainder: Vec<(usize, u32)> = touched
            .iter()
            .filter(|&&c| scratch[c] != 0)
            .map(|&c| (c, scratch[c]))
            .collect();
        for &c in &touched {
            scratch[c] = 0;
        }

        // This row as a combination of original rows.
        let combo_of = |pivots: &[PivotRow], used: &[(usize, u32)]| {
            let mut combo = vec![(row_idx, 1u32)];
            for &(k, m) in used {
                combo = axpy_sorted(&combo, m, &pivots[k].combo, p);
            }
            combo
        };

        if remainder.is_empty() {
            if rhs != 0 {
                let mut combo = combo_of(&pivots, &used);
                combo.sort_unstable();
                return Ok(LinearSolution::Inconsistent(combo));
            }
            continue;
        }

        let (col, lead) = remainder[0];
        let lead_inv = inv_mod(lead, p) as u64;
        let scale = |v: u32| (v as u64 * lead_inv % p64) as u32;
        let rest: Vec<(usize, u32)> = remainder[1..].iter().map(|&(c, v)| (c, scale(v))).collect();
        let new_rhs = scale(rhs as u32);
        let mut combo = combo_of(&pivots, &used);
        combo.sort_unstable_by_key(|&(r, _)| r);
        let combo: Vec<(usize, u32)> = combo.into_iter().map(|(r, v)| (r, scale(v))).collect();

        // Eliminate the new pivot column from existing pivot rows.
        for pr in pivots.iter_mut() {
            if let Ok(pos) = pr.rest.binary_search_by_key(&col, |&(c, _)| c) {
                let m = pr.rest[pos].1;
                pr.rest.remove(pos);
                pr.rest = axpy_sorted(&pr.rest, m, &rest, p);
                pr.rhs = ((pr.rhs as u64 + p64 - m as u64 * new_rhs as u64 % p64) % p64) as u32;
                pr.combo = axpy_sorted(&pr.combo, m, &combo, p);
            }
        }
        pivot_of_col[col] = Some(pivots.len());
        pivots.push(PivotRow {
            col,
            rest,
            rhs: new_rhs,
            combo,
        });
    }

    let mut x = vec![0u32; n];
    for pr in &pivots {
        x[pr.col] = pr.rhs;
    }
    Ok(LinearSolution::Solution(x))
}
