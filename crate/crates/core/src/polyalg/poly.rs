//! Sparse polynomials with exact integer coefficients.

use super::monomial::{Monomial, Var};
use super::ratmat::RatMatrix;
use super::PolyError;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A polynomial in the matrix entries `x_{i,j}` and the variable `t`,
/// stored as a map from monomials to non-zero `BigInt` coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: BTreeMap::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    pub fn from_i64(c: i64) -> Poly {
        Poly::constant(BigInt::from(c))
    }

    pub fn var(v: Var) -> Poly {
        Poly::term(Monomial::var(v), BigInt::one())
    }

    /// The matrix entry `x_{row,col}` (1-based).
    pub fn x(row: usize, col: usize) -> Poly {
        Poly::var(Var::x(row, col))
    }

    pub fn t() -> Poly {
        Poly::var(Var::T)
    }

    pub fn term(m: Monomial, c: BigInt) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Leading term in the monomial order, or `None` for zero.
    pub fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Terms with the leading monomial first.
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter().rev()
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.contains(v))
    }

    /// Number of terms in which `v` appears with positive exponent.
    pub fn occurrence_count(&self, v: Var) -> usize {
        self.terms.keys().filter(|m| m.contains(v)).count()
    }

    /// True when all terms share one total degree (vacuously for zero).
    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::total_degree);
        match degrees.next() {
            None => true,
            Some(first) => degrees.all(|d| d == first),
        }
    }

    pub fn max_abs_coefficient(&self) -> BigInt {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    fn insert_term(terms: &mut BTreeMap<Monomial, BigInt>, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &Poly) {
        for (m, c) in &other.terms {
            Self::insert_term(&mut self.terms, m.clone(), c.clone());
        }
    }

    pub fn sub_assign_ref(&mut self, other: &Poly) {
        for (m, c) in &other.terms {
            Self::insert_term(&mut self.terms, m.clone(), -c);
        }
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, coeff)| (m.clone(), coeff * c))
                .collect(),
        }
    }

    /// Applies `f` to every coefficient, dropping terms that map to zero.
    pub fn map_coefficients(&self, mut f: impl FnMut(&BigInt) -> BigInt) -> Poly {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mapped = f(c);
            if !mapped.is_zero() {
                terms.insert(m.clone(), mapped);
            }
        }
        Poly { terms }
    }

    /// Exact evaluation at a rational matrix point, with an optional value
    /// for `t`.  Fails if the polynomial mentions `t` and none is given, or
    /// if it mentions an entry outside the matrix.
    pub fn evaluate(
        &self,
        point: &RatMatrix,
        t: Option<&BigRational>,
    ) -> Result<BigRational, PolyError> {
        let n = point.n();
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut term = BigRational::from(c.clone());
            for &(var, exp) in m.factors() {
                let base = match var {
                    Var::X { row, col } => {
                        let (row, col) = (row as usize, col as usize);
                        if row > n || col > n {
                            return Err(PolyError::PointTooSmall { row, col, n });
                        }
                        point.get(row - 1, col - 1).clone()
                    }
                    Var::T => t.ok_or(PolyError::UnboundT)?.clone(),
                };
                for _ in 0..exp {
                    term *= &base;
                }
            }
            acc += term;
        }
        Ok(acc)
    }
}

impl Poly {
    /// Integer-only evaluation fast path: `entries` is the row-major grid
    /// of an `n × n` integer matrix.  Exact, like [`Poly::evaluate`], but
    /// avoids rational normalization.
    pub fn evaluate_integer(
        &self,
        n: usize,
        entries: &[BigInt],
        t: Option<&BigInt>,
    ) -> Result<BigInt, PolyError> {
        debug_assert_eq!(entries.len(), n * n);
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for &(var, exp) in m.factors() {
                let base = match var {
                    Var::X { row, col } => {
                        let (row, col) = (row as usize, col as usize);
                        if row > n || col > n {
                            return Err(PolyError::PointTooSmall { row, col, n });
                        }
                        &entries[(row - 1) * n + (col - 1)]
                    }
                    Var::T => t.ok_or(PolyError::UnboundT)?,
                };
                for _ in 0..exp {
                    term *= base;
                }
            }
            acc += term;
        }
        Ok(acc)
    }
}

/// The dense monomial budget `Σ_{d=1}^{deg g} C(d+n−1, n−1)`: how many
/// monomials of degree 1 through `deg g` exist in `n` variables.  This is
/// an upper index for coefficient extraction, not the sparse term count
/// (which is [`Poly::num_terms`]) — the two differ by orders of magnitude
/// for minors.  Undefined for the zero polynomial.
pub fn omega_g(g: &Poly, n: usize) -> Result<BigInt, PolyError> {
    let Some(deg) = g.total_degree() else {
        return Err(PolyError::DegreeUndefined);
    };
    let mut total = BigInt::zero();
    for d in 1..=deg {
        total += crate::combinat::binomial(d + n - 1, n - 1);
    }
    Ok(total)
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.sub_assign_ref(rhs);
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let (small, large) = if self.terms.len() <= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut terms = BTreeMap::new();
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                Poly::insert_term(&mut terms, ma.mul(mb), ca * cb);
            }
        }
        Poly { terms }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms_desc().enumerate() {
            let abs = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Serialized as a list of `[coefficient, monomial]` pairs with the leading
/// term first; coefficients travel as decimal strings to survive JSON
/// number precision limits.
impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<(String, &Monomial)> = self
            .terms_desc()
            .map(|(m, c)| (c.to_string(), m))
            .collect();
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let pairs = Vec::<(String, Monomial)>::deserialize(deserializer)?;
        let mut out = Poly::zero();
        for (text, m) in pairs {
            let c: BigInt = text
                .parse()
                .map_err(|_| D::Error::custom(format!("bad integer literal {text:?}")))?;
            Poly::insert_term(&mut out.terms, m, c);
        }
        Ok(out)
    }
}
