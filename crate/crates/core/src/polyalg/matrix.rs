//! Square matrices with polynomial entries and exact minor extraction.

use super::poly::Poly;
use super::PolyError;
use num_bigint::BigInt;
use std::collections::HashMap;

/// An `n × n` matrix of polynomials.  Public accessors are 1-based to match
/// the index-set conventions used everywhere else.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymbolicMatrix {
    n: usize,
    entries: Vec<Poly>,
}

impl SymbolicMatrix {
    /// The generic matrix: entry `(i, j)` is the variable `x_{i,j}`.
    pub fn generic(n: usize) -> SymbolicMatrix {
        assert!(n >= 1);
        let entries = (1..=n)
            .flat_map(|i| (1..=n).map(move |j| Poly::x(i, j)))
            .collect();
        SymbolicMatrix { n, entries }
    }

    pub fn identity(n: usize) -> SymbolicMatrix {
        let entries = (0..n)
            .flat_map(|i| (0..n).map(move |j| if i == j { Poly::one() } else { Poly::zero() }))
            .collect();
        SymbolicMatrix { n, entries }
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> SymbolicMatrix {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        let entries = rows
            .iter()
            .flat_map(|row| row.iter().map(|&v| Poly::from_i64(v)))
            .collect();
        SymbolicMatrix { n, entries }
    }

    pub fn from_entries(n: usize, entries: Vec<Poly>) -> SymbolicMatrix {
        assert_eq!(entries.len(), n * n);
        SymbolicMatrix { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at 1-based `(row, col)`.
    pub fn entry(&self, row: usize, col: usize) -> &Poly {
        assert!(row >= 1 && row <= self.n && col >= 1 && col <= self.n);
        &self.entries[(row - 1) * self.n + (col - 1)]
    }

    pub fn transpose(&self) -> SymbolicMatrix {
        let mut entries = Vec::with_capacity(self.n * self.n);
        for i in 1..=self.n {
            for j in 1..=self.n {
                entries.push(self.entry(j, i).clone());
            }
        }
        SymbolicMatrix { n: self.n, entries }
    }

    pub fn add(&self, other: &SymbolicMatrix) -> SymbolicMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        SymbolicMatrix { n: self.n, entries }
    }

    pub fn mul(&self, other: &SymbolicMatrix) -> SymbolicMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let mut entries = Vec::with_capacity(self.n * self.n);
        for i in 1..=self.n {
            for j in 1..=self.n {
                let mut acc = Poly::zero();
                for k in 1..=self.n {
                    let a = self.entry(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc.add_assign_ref(&(a * other.entry(k, j)));
                }
                entries.push(acc);
            }
        }
        SymbolicMatrix { n: self.n, entries }
    }

    /// `k`-th power; `k = 0` gives the identity.
    pub fn pow(&self, k: usize) -> SymbolicMatrix {
        let mut acc = SymbolicMatrix::identity(self.n);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    fn check_index_sets(&self, rows: &[usize], cols: &[usize]) -> Result<(), PolyError> {
        if rows.len() != cols.len() {
            return Err(PolyError::IndexSetSizeMismatch { rows: rows.len(), cols: cols.len() });
        }
        for set in [rows, cols] {
            for w in set.windows(2) {
                if w[0] >= w[1] {
                    return Err(PolyError::IndexSetUnsorted);
                }
            }
            for &i in set {
                if i < 1 || i > self.n {
                    return Err(PolyError::IndexOutOfRange { index: i, n: self.n });
                }
            }
        }
        Ok(())
    }

    /// The minor `det(M[rows, cols])` for strictly increasing 1-based index
    /// sets of equal size, computed by cofactor expansion with memoization
    /// on column subsets.  The empty minor is the constant `1`; no external
    /// sign is ever applied.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<Poly, PolyError> {
        self.check_index_sets(rows, cols)?;
        let k = rows.len();
        assert!(k <= 32, "index sets limited to 32 entries");
        let mut memo: HashMap<u32, Poly> = HashMap::new();
        let full: u32 = if k == 32 { u32::MAX } else { (1u32 << k) - 1 };
        Ok(self.minor_memo(rows, cols, full, &mut memo))
    }

    fn minor_memo(
        &self,
        rows: &[usize],
        cols: &[usize],
        mask: u32,
        memo: &mut HashMap<u32, Poly>,
    ) -> Poly {
        if mask == 0 {
            return Poly::one();
        }
        if let Some(hit) = memo.get(&mask) {
            return hit.clone();
        }
        // expand along the row whose position equals the recursion depth
        let depth = rows.len() - mask.count_ones() as usize;
        let row = rows[depth];
        let mut acc = Poly::zero();
        let mut sign = BigInt::from(1);
        for (pos, &col) in cols.iter().enumerate() {
            if mask & (1 << pos) == 0 {
                continue;
            }
            let entry = self.entry(row, col);
            if !entry.is_zero() {
                let sub = self.minor_memo(rows, cols, mask & !(1 << pos), memo);
                acc.add_assign_ref(&(entry * &sub).scale(&sign));
            }
            sign = -sign;
        }
        memo.insert(mask, acc.clone());
        acc
    }

    /// The same minor computed independently as a signed sum over
    /// permutations; used to cross-check [`SymbolicMatrix::minor`].
    pub fn leibniz_minor(&self, rows: &[usize], cols: &[usize]) -> Result<Poly, PolyError> {
        self.check_index_sets(rows, cols)?;
        let k = rows.len();
        let mut perm: Vec<usize> = (0..k).collect();
        let mut acc = Poly::zero();
        let mut counters = vec![0usize; k];
        let mut parity = BigInt::from(1);
        let mut add_term = |perm: &[usize], sign: &BigInt| {
            let mut prod = Poly::one();
            for (i, &p) in perm.iter().enumerate() {
                prod = &prod * self.entry(rows[i], cols[p]);
                if prod.is_zero() {
                    return;
                }
            }
            acc.add_assign_ref(&prod.scale(sign));
        };
        add_term(&perm, &parity);
        // Heap's algorithm; every swap flips the sign
        let mut i = 0;
        while i < k {
            if counters[i] < i {
                if i % 2 == 0 {
                    perm.swap(0, i);
                } else {
                    perm.swap(counters[i], i);
                }
                parity = -parity;
                add_term(&perm, &parity);
                counters[i] += 1;
                i = 0;
            } else {
                counters[i] = 0;
                i += 1;
            }
        }
        Ok(acc)
    }

    pub fn det(&self) -> Poly {
        let all: Vec<usize> = (1..=self.n).collect();
        self.minor(&all, &all).expect("full index sets are valid")
    }
}
