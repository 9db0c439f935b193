//! Dense matrices of arbitrary-precision rationals with exact rank,
//! determinant, multiplication, and linear solving.
//!
//! Rank and determinant go through fraction-free (Bareiss) elimination on an
//! integer copy of the matrix obtained by clearing denominators row by row;
//! every intermediate division in the elimination is exact, which is asserted.
//! Pivoting always takes the first nonzero entry in column order so results
//! are reproducible.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Dense row-major matrix over the rationals.
///
/// Entries are kept in canonical reduced form by `BigRational` itself
/// (positive denominator, gcd 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimMismatch("ragged row lengths".into()));
        }
        Ok(RationalMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// New matrix made of the selected rows, in the given order.
    pub fn select_rows(&self, indices: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(indices.len() * self.cols);
        for &i in indices {
            entries.extend_from_slice(self.row(i));
        }
        RationalMatrix {
            rows: indices.len(),
            cols: self.cols,
            entries,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Exact product.
    pub fn matmul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = RationalMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j) + a * b;
                    out.set(i, j, cur);
                }
            }
        }
        Ok(out)
    }

    /// Integer copy with each row scaled by the lcm of its denominators.
    /// Row scaling does not change the rank; for determinants the scale
    /// product is divided back out.
    fn cleared(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let mut scale_product = BigInt::one();
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut l = BigInt::one();
            for e in self.row(i) {
                l = l.lcm(e.denom());
            }
            scale_product *= &l;
            out.push(
                self.row(i)
                    .iter()
                    .map(|e| e.numer() * (&l / e.denom()))
                    .collect(),
            );
        }
        (out, scale_product)
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        let (mut m, _) = self.cleared();
        bareiss(&mut m, self.cols).rank
    }

    /// Exact determinant; errors on non-square input.
    pub fn det(&self) -> Result<BigRational> {
        if self.rows != self.cols {
            return Err(Error::DimMismatch(format!(
                "determinant of {}x{}",
                self.rows, self.cols
            )));
        }
        if self.rows == 0 {
            return Ok(BigRational::one());
        }
        let (mut m, scale) = self.cleared();
        let outcome = bareiss(&mut m, self.cols);
        if outcome.rank < self.rows {
            return Ok(BigRational::zero());
        }
        let mut det = BigRational::new(outcome.last_pivot, scale);
        if outcome.sign < 0 {
            det = -det;
        }
        Ok(det)
    }

    /// One exact solution of `self * x = rhs`, or `None` when inconsistent.
    /// Free variables, if any, are set to zero.
    pub fn solve(&self, rhs: &[BigRational]) -> Result<Option<Vec<BigRational>>> {
        if rhs.len() != self.rows {
            return Err(Error::DimMismatch(format!(
                "rhs length {} for {} rows",
                rhs.len(),
                self.rows
            )));
        }
        // plain rational Gauss-Jordan on the augmented matrix; systems here
        // are small (altitude feet, debug solves)
        let n = self.rows;
        let c = self.cols;
        let mut aug: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut row: Vec<BigRational> = self.row(i).to_vec();
                row.push(rhs[i].clone());
                row
            })
            .collect();
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for col in 0..c {
            let Some(p) = (r..n).find(|&i| !aug[i][col].is_zero()) else {
                continue;
            };
            aug.swap(r, p);
            let inv = aug[r][col].recip();
            for j in col..=c {
                let v = &aug[r][j] * &inv;
                aug[r][j] = v;
            }
            for i in 0..n {
                if i == r || aug[i][col].is_zero() {
                    continue;
                }
                let f = aug[i][col].clone();
                for j in col..=c {
                    let v = &aug[i][j] - &f * &aug[r][j];
                    aug[i][j] = v;
                }
            }
            pivot_cols.push(col);
            r += 1;
            if r == n {
                break;
            }
        }
        // inconsistent iff a zero row has nonzero rhs
        for i in r..n {
            if !aug[i][c].is_zero() {
                return Ok(None);
            }
        }
        let mut x = vec![BigRational::zero(); c];
        for (i, &col) in pivot_cols.iter().enumerate() {
            x[col] = aug[i][c].clone();
        }
        Ok(Some(x))
    }
}

struct BareissOutcome {
    rank: usize,
    last_pivot: BigInt,
    sign: i8,
}

/// Fraction-free elimination in place. Every division by the previous pivot
/// is exact (the intermediates are minors of the input); a nonzero remainder
/// would mean a logic error, so it panics.
fn bareiss(m: &mut [Vec<BigInt>], cols: usize) -> BareissOutcome {
    let rows = m.len();
    let mut prev = BigInt::one();
    let mut sign = 1i8;
    let mut rank = 0;
    let mut r = 0;
    for col in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        if p != r {
            m.swap(r, p);
            sign = -sign;
        }
        for i in r + 1..rows {
            for j in col + 1..cols {
                let t = &m[r][col] * &m[i][j] - &m[i][col] * &m[r][j];
                let (q, rem) = t.div_rem(&prev);
                assert!(rem.is_zero(), "fraction-free elimination division not exact");
                m[i][j] = q;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[r][col].clone();
        rank += 1;
        r += 1;
        if r == rows {
            break;
        }
    }
    BareissOutcome {
        rank,
        last_pivot: prev,
        sign,
    }
}
