//! Coefficient multisets used for bound checking.

use super::poly::Poly;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// The multiset of integer coefficients appearing in one or more
/// polynomials: one entry per term, kept sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CoefficientSet {
    values: Vec<BigInt>,
}

impl CoefficientSet {
    pub fn new() -> CoefficientSet {
        CoefficientSet::default()
    }

    pub fn from_poly(p: &Poly) -> CoefficientSet {
        let mut set = CoefficientSet::new();
        set.absorb(p);
        set
    }

    pub fn from_polys<'a>(polys: impl IntoIterator<Item = &'a Poly>) -> CoefficientSet {
        let mut set = CoefficientSet::new();
        for p in polys {
            set.absorb(p);
        }
        set
    }

    pub fn absorb(&mut self, p: &Poly) {
        for (_, c) in p.terms_desc() {
            self.values.push(c.clone());
        }
        self.values.sort();
    }

    /// Multiset union.
    pub fn merge(&mut self, other: &CoefficientSet) {
        self.values.extend(other.values.iter().cloned());
        self.values.sort();
    }

    /// Total count, one per source term.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn multiplicity(&self, v: &BigInt) -> usize {
        self.values.iter().filter(|&x| x == v).count()
    }

    /// Values in increasing order, with repeats.
    pub fn iter(&self) -> impl Iterator<Item = &BigInt> {
        self.values.iter()
    }

    /// Largest absolute value, zero for the empty set.
    pub fn max_abs(&self) -> BigInt {
        self.values
            .iter()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

/// Serialized as decimal strings in increasing order (repeats kept).
impl Serialize for CoefficientSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.values.iter().map(BigInt::to_string).collect();
        strings.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CoefficientSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(deserializer)?;
        let mut values = Vec::with_capacity(strings.len());
        for s in strings {
            let v: BigInt = s
                .parse()
                .map_err(|_| D::Error::custom(format!("bad integer literal {s:?}")))?;
            values.push(v);
        }
        values.sort();
        Ok(CoefficientSet { values })
    }
}
