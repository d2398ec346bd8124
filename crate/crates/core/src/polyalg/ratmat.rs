//! Dense square matrices over the exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

/// An `n × n` matrix of `BigRational` entries (0-based accessors).
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    n: usize,
    entries: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zeros(n: usize) -> RatMatrix {
        RatMatrix { n, entries: vec![BigRational::zero(); n * n] }
    }

    pub fn identity(n: usize) -> RatMatrix {
        let mut m = RatMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> RatMatrix {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        let mut m = RatMatrix::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigRational::from(BigInt::from(v)));
            }
        }
        m
    }

    /// Builds from sparse `(row, col, numerator, denominator)` entries.
    pub fn from_rational_entries(n: usize, entries: &[(usize, usize, i64, i64)]) -> RatMatrix {
        let mut m = RatMatrix::zeros(n);
        for &(i, j, num, den) in entries {
            m.set(i, j, BigRational::new(BigInt::from(num), BigInt::from(den)));
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> &BigRational {
        &self.entries[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: BigRational) {
        self.entries[row * self.n + col] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// True when every entry is an integer.
    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|e| e.is_integer())
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut out = RatMatrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let mut out = RatMatrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = BigRational::zero();
                for k in 0..self.n {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc += a * other.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let mut out = self.clone();
        for i in 0..self.n * self.n {
            out.entries[i] += &other.entries[i];
        }
        out
    }

    pub fn neg(&self) -> RatMatrix {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e = -e.clone();
        }
        out
    }

    pub fn pow(&self, k: usize) -> RatMatrix {
        let mut acc = RatMatrix::identity(self.n);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact rank via Gaussian elimination.
    pub fn rank(&self) -> usize {
        let n = self.n;
        let mut work = self.entries.clone();
        let at = |w: &Vec<BigRational>, i: usize, j: usize| w[i * n + j].clone();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..n {
            let Some(pivot) = (row..n).find(|&r| !at(&work, r, col).is_zero()) else {
                continue;
            };
            if pivot != row {
                for j in 0..n {
                    work.swap(row * n + j, pivot * n + j);
                }
            }
            let lead = at(&work, row, col);
            for r in row + 1..n {
                let factor = at(&work, r, col) / &lead;
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let delta = &factor * &at(&work, row, j);
                    work[r * n + j] -= delta;
                }
            }
            rank += 1;
            row += 1;
            if row == n {
                break;
            }
        }
        rank
    }

    /// Exact determinant via fraction-free row reduction.
    pub fn det(&self) -> BigRational {
        let n = self.n;
        let mut work = self.clone();
        let mut det = BigRational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !work.get(r, col).is_zero()) else {
                return BigRational::zero();
            };
            if pivot != col {
                for j in 0..n {
                    let a = work.get(col, j).clone();
                    let b = work.get(pivot, j).clone();
                    work.set(col, j, b);
                    work.set(pivot, j, a);
                }
                det = -det;
            }
            let lead = work.get(col, col).clone();
            det *= &lead;
            for r in col + 1..n {
                if work.get(r, col).is_zero() {
                    continue;
                }
                let factor = work.get(r, col) / &lead;
                for j in col..n {
                    let w = work.get(r, j) - &factor * work.get(col, j);
                    work.set(r, j, w);
                }
            }
        }
        det
    }

    /// Exact inverse; `None` when singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        let n = self.n;
        let mut work = self.clone();
        let mut inv = RatMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !work.get(r, col).is_zero())?;
            if pivot != col {
                for j in 0..n {
                    let a = work.get(col, j).clone();
                    let b = work.get(pivot, j).clone();
                    work.set(col, j, b);
                    work.set(pivot, j, a);
                    let a = inv.get(col, j).clone();
                    let b = inv.get(pivot, j).clone();
                    inv.set(col, j, b);
                    inv.set(pivot, j, a);
                }
            }
            let lead = work.get(col, col).clone();
            for j in 0..n {
                let w = work.get(col, j) / &lead;
                work.set(col, j, w);
                let v = inv.get(col, j) / &lead;
                inv.set(col, j, v);
            }
            for r in 0..n {
                if r == col || work.get(r, col).is_zero() {
                    continue;
                }
                let factor = work.get(r, col).clone();
                for j in 0..n {
                    let w = work.get(r, j) - &factor * work.get(col, j);
                    work.set(r, j, w);
                    let v = inv.get(r, j) - &factor * inv.get(col, j);
                    inv.set(r, j, v);
                }
            }
        }
        Some(inv)
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rendered: Vec<Vec<String>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).to_string()).collect())
            .collect();
        let width = rendered
            .iter()
            .flatten()
            .map(String::len)
            .max()
            .unwrap_or(1);
        for row in &rendered {
            write!(f, "[")?;
            for (j, cell) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{cell:>width$}")?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
