//! Variables and monomials with a graded lexicographic order.

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;

/// A variable of the coordinate ring: a matrix entry `x_{i,j}` (1-based)
/// or the localization variable `t`.
///
/// The derived order is row-major on the matrix entries with `t` above all
/// of them: `x_{1,1} < x_{1,2} < ... < x_{n,n} < t`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X { row: u16, col: u16 },
    T,
}

impl Var {
    pub fn x(row: usize, col: usize) -> Var {
        assert!(row >= 1 && col >= 1, "matrix entries are 1-based");
        Var::X { row: row as u16, col: col as u16 }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X { row, col } => write!(f, "x_{row}_{col}"),
            Var::T => write!(f, "t"),
        }
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A power product of variables.  Stored sorted by variable with all
/// exponents positive; the empty product is the monomial `1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    factors: Vec<(Var, u32)>,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial { factors: Vec::new() }
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs,
    /// merging repeats and dropping zero exponents.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Monomial {
        let mut factors: Vec<(Var, u32)> = Vec::new();
        for (var, exp) in pairs {
            if exp == 0 {
                continue;
            }
            factors.push((var, exp));
        }
        factors.sort_by_key(|&(var, _)| var);
        let mut merged: Vec<(Var, u32)> = Vec::with_capacity(factors.len());
        for (var, exp) in factors {
            match merged.last_mut() {
                Some((last, acc)) if *last == var => *acc += exp,
                _ => merged.push((var, exp)),
            }
        }
        Monomial { factors: merged }
    }

    pub fn var(v: Var) -> Monomial {
        Monomial { factors: vec![(v, 1)] }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn total_degree(&self) -> usize {
        self.factors.iter().map(|&(_, e)| e as usize).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.factors
            .binary_search_by_key(&v, |&(var, _)| var)
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn contains(&self, v: Var) -> bool {
        self.exponent(v) > 0
    }

    /// Factors in increasing variable order.
    pub fn factors(&self) -> &[(Var, u32)] {
        &self.factors
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut factors = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut a, mut b) = (self.factors.iter().peekable(), other.factors.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(va, ea)), Some(&&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => {
                        factors.push((va, ea));
                        a.next();
                    }
                    Ordering::Greater => {
                        factors.push((vb, eb));
                        b.next();
                    }
                    Ordering::Equal => {
                        factors.push((va, ea + eb));
                        a.next();
                        b.next();
                    }
                },
                (Some(&&pair), None) => {
                    factors.push(pair);
                    a.next();
                }
                (None, Some(&&pair)) => {
                    factors.push(pair);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Monomial { factors }
    }
}

/// Graded lexicographic order: total degree first, ties broken by the
/// exponent of the most significant variable (`t` highest, then `x_{n,n}`
/// down to `x_{1,1}`).
impl Ord for Monomial {
    fn cmp(&self, other: &Monomial) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            unequal => return unequal,
        }
        let mut a = self.factors.iter().rev();
        let mut b = other.factors.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    match va.cmp(&vb) {
                        Ordering::Equal => {}
                        unequal => return unequal,
                    }
                    match ea.cmp(&eb) {
                        Ordering::Equal => {}
                        unequal => return unequal,
                    }
                }
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (None, None) => return Ordering::Equal,
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for (i, (var, exp)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{var}")?;
            if *exp > 1 {
                write!(f, "^{exp}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Serialized as `[[i, j, exp], ...]` with `t` encoded as `[0, 0, exp]`.
impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let triples: Vec<[u32; 3]> = self
            .factors
            .iter()
            .map(|&(var, exp)| match var {
                Var::X { row, col } => [row as u32, col as u32, exp],
                Var::T => [0, 0, exp],
            })
            .collect();
        triples.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let triples = Vec::<[u32; 3]>::deserialize(deserializer)?;
        let mut pairs = Vec::with_capacity(triples.len());
        for [row, col, exp] in triples {
            let var = match (row, col) {
                (0, 0) => Var::T,
                (r, c) if r >= 1 && c >= 1 => {
                    if r > u16::MAX as u32 || c > u16::MAX as u32 {
                        return Err(D::Error::custom("variable index out of range"));
                    }
                    Var::X { row: r as u16, col: c as u16 }
                }
                _ => return Err(D::Error::custom("variable triple must be [i,j,e] or [0,0,e]")),
            };
            pairs.push((var, exp));
        }
        Ok(Monomial::from_pairs(pairs))
    }
}
