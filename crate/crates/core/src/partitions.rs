//! Integer partitions and the combinatorics attached to nilpotent orbits.
//!
//! A partition `λ = [λ_1 ≥ λ_2 ≥ ... ≥ λ_l ≥ 1]` of `n` labels the orbit of
//! the nilpotent `n × n` Jordan matrix with block sizes `λ_i`.  This module
//! provides:
//!
//! - the rank counting function `f` and the rank sequence
//!   `r_k = rank(J_λ^k)` for `k = 1, ..., λ_1`,
//! - the dominance order, which governs which orbits lie in which closures,
//! - the index sequence `λ(i) = λ_1 + ... + λ_i - i + 1` used by the
//!   representation-theoretic generating sets,
//! - the parity test for partitions that occur as Jordan types inside
//!   `sp_2m` (odd parts must appear an even number of times).

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("partition must have at least one part")]
    Empty,
    #[error("partition parts must be positive")]
    ZeroPart,
    #[error("partition parts must be non-increasing, found {prev} before {next}")]
    NotSorted { prev: usize, next: usize },
    #[error("malformed partition literal {text:?}")]
    Unparseable { text: String },
    #[error("partitions of {left} and {right} are not comparable")]
    DifferentTotals { left: usize, right: usize },
    #[error("total {n} is odd, so no symplectic algebra sp_{n} exists")]
    OddTotal { n: usize },
}

/// A non-empty weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, PartitionError> {
        if parts.is_empty() {
            return Err(PartitionError::Empty);
        }
        for pair in parts.windows(2) {
            if pair[0] < pair[1] {
                return Err(PartitionError::NotSorted { prev: pair[0], next: pair[1] });
            }
        }
        if *parts.last().unwrap() == 0 {
            return Err(PartitionError::ZeroPart);
        }
        Ok(Partition { parts })
    }

    /// Parses `"[2,1]"` or `"2,1"` (whitespace tolerated).
    pub fn parse(text: &str) -> Result<Self, PartitionError> {
        let inner = text.trim();
        let inner = inner
            .strip_prefix('[')
            .and_then(|rest| rest.strip_suffix(']'))
            .unwrap_or(inner);
        let mut parts = Vec::new();
        for piece in inner.split(',') {
            let piece = piece.trim();
            let value: usize = piece
                .parse()
                .map_err(|_| PartitionError::Unparseable { text: text.to_owned() })?;
            parts.push(value);
        }
        Partition::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The integer being partitioned: `Σ λ_i`.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a valid partition always has at least one part
    }

    pub fn max_part(&self) -> usize {
        self.parts[0]
    }

    /// `λ_i` for 1-based `i`, zero when `i` exceeds the number of parts.
    pub fn part_or_zero(&self, i: usize) -> usize {
        if i >= 1 && i <= self.parts.len() {
            self.parts[i - 1]
        } else {
            0
        }
    }

    /// True for `[1, 1, ..., 1]`, whose orbit is the single point `{0}`.
    pub fn is_all_ones(&self) -> bool {
        self.parts[0] == 1
    }

    /// The sequence `r_k = rank(J_λ^k)` for `k = 1, ..., λ_1`.
    pub fn rank_sequence(&self) -> RankSequence {
        let mut ranks = Vec::with_capacity(self.max_part());
        for k in 1..=self.max_part() {
            let r = self
                .parts
                .iter()
                .map(|&p| p.saturating_sub(k))
                .sum::<usize>();
            ranks.push(r);
        }
        RankSequence { n: self.n(), ranks }
    }

    /// `λ(i) = λ_1 + ... + λ_i - i + 1` with zero padding, for `1 ≤ i ≤ n`.
    pub fn weyman_lambda(&self, i: usize) -> usize {
        assert!(i >= 1 && i <= self.n(), "index {i} outside 1..={}", self.n());
        let head: usize = (1..=i).map(|j| self.part_or_zero(j)).sum();
        head - i + 1
    }

    /// Dominance order: `self ⊴ other` iff every prefix sum of `self` is at
    /// most the corresponding prefix sum of `other` (zero-padded).  Only
    /// partitions of the same integer are comparable.
    pub fn dominance_leq(&self, other: &Partition) -> Result<bool, PartitionError> {
        if self.n() != other.n() {
            return Err(PartitionError::DifferentTotals { left: self.n(), right: other.n() });
        }
        let len = self.len().max(other.len());
        let mut sum_self = 0usize;
        let mut sum_other = 0usize;
        for i in 1..=len {
            sum_self += self.part_or_zero(i);
            sum_other += other.part_or_zero(i);
            if sum_self > sum_other {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether the partition occurs as the Jordan type of a nilpotent
    /// element of `sp_n`: `n` must be even and every odd part must appear
    /// an even number of times.
    pub fn gerstenhaber_valid(&self) -> Result<bool, PartitionError> {
        let n = self.n();
        if n % 2 != 0 {
            return Err(PartitionError::OddTotal { n });
        }
        let mut i = 0;
        while i < self.parts.len() {
            let part = self.parts[i];
            let mut mult = 0;
            while i < self.parts.len() && self.parts[i] == part {
                mult += 1;
                i += 1;
            }
            if part % 2 == 1 && mult % 2 == 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = PartitionError;
    fn try_from(parts: Vec<usize>) -> Result<Self, Self::Error> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

/// The rank counting function: `f(x) = x - 1` for positive `x`, else `0`.
/// Iterating it `k` times on a block size `λ_i` yields `max(λ_i - k, 0)`,
/// the rank contribution of a single Jordan block to `J_λ^k`.
pub fn rank_counting(x: i64) -> i64 {
    if x > 0 {
        x - 1
    } else {
        0
    }
}

/// Ranks of the powers of the Jordan matrix of a partition: entry `k - 1`
/// holds `r_k = rank(J_λ^k)`, for `k = 1, ..., λ_1`.  The sequence is
/// strictly decreasing and always ends in `r_{λ_1} = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankSequence {
    n: usize,
    ranks: Vec<usize>,
}

impl RankSequence {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Largest exponent carrying a rank condition (`= λ_1`).
    pub fn k_stop(&self) -> usize {
        self.ranks.len()
    }

    /// `rank(J_λ^k)` for any `k ≥ 0` (full rank `n` at `k = 0`, zero beyond
    /// `λ_1`).
    pub fn rank_at(&self, k: usize) -> usize {
        if k == 0 {
            self.n
        } else if k <= self.ranks.len() {
            self.ranks[k - 1]
        } else {
            0
        }
    }

    /// `(k, r_k)` pairs for `k = 1, ..., λ_1`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.ranks
            .iter()
            .enumerate()
            .map(|(i, &r)| (i + 1, r))
            .collect()
    }

    /// `max_k r_k`, which is attained at `k = 1`.
    pub fn max_rank(&self) -> usize {
        self.ranks[0]
    }
}

/// All partitions of `n` in reverse lexicographic order (`[n]` first,
/// `[1, ..., 1]` last).
pub fn enumerate_partitions(n: usize) -> Vec<Partition> {
    assert!(n >= 1, "no partitions of 0");
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(n, n, &mut current, &mut out);
    out
}

fn fill(remaining: usize, cap: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition { parts: current.clone() });
        return;
    }
    for part in (1..=cap.min(remaining)).rev() {
        current.push(part);
        fill(remaining - part, part, current, out);
        current.pop();
    }
}
