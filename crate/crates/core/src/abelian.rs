//! Finitely generated abelian groups in invariant-factor form.
//!
//! A group `Z^r ⊕ Z/d₁ ⊕ … ⊕ Z/d_k` is stored as `r` and the chain
//! `d₁ | d₂ | … | d_k` with every `dᵢ ≥ 2`. Every constructor canonicalizes,
//! so two values are isomorphic groups exactly when they compare equal.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::GroupError;

/// Largest group `enumerate_elements` will materialize.
pub const ENUMERATION_LIMIT: u64 = 10_000_000;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct FgAbelianGroup {
    free_rank: usize,
    invariant_factors: Vec<BigUint>,
}

/// Order of a group: a natural number or infinite.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Cardinality {
    Finite(BigUint),
    Infinite,
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinality::Finite(n) => write!(f, "{n}"),
            Cardinality::Infinite => f.write_str("infinite"),
        }
    }
}

/// Text style for rendering groups.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Notation {
    #[default]
    Unicode,
    Ascii,
}

/// Rewrites a multiset of cyclic orders (all ≥ 1) into an invariant-factor
/// chain using `Z/a ⊕ Z/b ≅ Z/gcd ⊕ Z/lcm`, then drops the ones.
fn merge_torsion(mut orders: Vec<BigUint>) -> Vec<BigUint> {
    orders.retain(|d| !d.is_one());
    for i in 0..orders.len() {
        for j in i + 1..orders.len() {
            let g = orders[i].gcd(&orders[j]);
            if g != orders[i] {
                let l = orders[i].lcm(&orders[j]);
                orders[i] = g;
                orders[j] = l;
            }
        }
    }
    orders.retain(|d| !d.is_one());
    orders
}

impl FgAbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup {
            free_rank: rank,
            invariant_factors: Vec::new(),
        }
    }

    /// `Z/order`, with `Z/0 ≅ Z`.
    pub fn cyclic(order: u64) -> Self {
        Self::from_factors(0, &[order])
    }

    /// `Z^free_rank ⊕ ⊕ Z/orderᵢ`; orders need not form a chain, 0 means `Z`.
    pub fn from_factors(free_rank: usize, orders: &[u64]) -> Self {
        let mut rank = free_rank;
        let mut torsion = Vec::new();
        for &d in orders {
            if d == 0 {
                rank += 1;
            } else {
                torsion.push(BigUint::from(d));
            }
        }
        FgAbelianGroup {
            free_rank: rank,
            invariant_factors: merge_torsion(torsion),
        }
    }

    /// Canonical form of `⊕ Z/entryᵢ ⊕ Z^(ambient_rank − count)`.
    pub fn canonicalize(diagonal: &[BigInt], ambient_rank: usize) -> Result<Self, GroupError> {
        if ambient_rank < diagonal.len() {
            return Err(GroupError::RankTooSmall {
                entries: diagonal.len(),
                ambient: ambient_rank,
            });
        }
        let mut rank = ambient_rank - diagonal.len();
        let mut torsion = Vec::new();
        for d in diagonal {
            if d.is_negative() {
                return Err(GroupError::NegativeEntry(d.to_string()));
            }
            if d.is_zero() {
                rank += 1;
            } else {
                torsion.push(d.magnitude().clone());
            }
        }
        Ok(FgAbelianGroup {
            free_rank: rank,
            invariant_factors: merge_torsion(torsion),
        })
    }

    /// Cokernel shape from the nonzero diagonal of a Smith form with `rows` rows.
    pub(crate) fn from_snf_diagonal(divisors: &[BigInt], rows: usize) -> Self {
        let torsion = divisors.iter().map(|d| d.magnitude().clone()).collect();
        FgAbelianGroup {
            free_rank: rows - divisors.len(),
            invariant_factors: merge_torsion(torsion),
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn invariant_factors(&self) -> &[BigUint] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Number of cyclic summands in the canonical decomposition.
    pub fn num_summands(&self) -> usize {
        self.free_rank + self.invariant_factors.len()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut torsion = self.invariant_factors.clone();
        torsion.extend(other.invariant_factors.iter().cloned());
        FgAbelianGroup {
            free_rank: self.free_rank + other.free_rank,
            invariant_factors: merge_torsion(torsion),
        }
    }

    /// `self^n`.
    pub fn power(&self, n: usize) -> Self {
        (0..n).fold(Self::trivial(), |acc, _| acc.direct_sum(self))
    }

    /// `Hom(self, target)` from the cyclic-factor formulas
    /// `Hom(Z, B) = B`, `Hom(Z/d, Z) = 0`, `Hom(Z/d, Z/e) = Z/gcd(d, e)`.
    pub fn hom_group(&self, target: &Self) -> Self {
        let rank = self.free_rank * target.free_rank;
        let mut torsion = Vec::new();
        for _ in 0..self.free_rank {
            torsion.extend(target.invariant_factors.iter().cloned());
        }
        for d in &self.invariant_factors {
            for e in &target.invariant_factors {
                torsion.push(d.gcd(e));
            }
        }
        FgAbelianGroup {
            free_rank: rank,
            invariant_factors: merge_torsion(torsion),
        }
    }

    /// `Ext¹(self, target)` from `Ext(Z, B) = 0` and `Ext(Z/d, B) = B/dB`.
    pub fn ext_group(&self, target: &Self) -> Self {
        self.invariant_factors
            .iter()
            .map(|d| target.quotient_by(d))
            .fold(Self::trivial(), |acc, q| acc.direct_sum(&q))
    }

    /// `self / m·self`.
    pub fn quotient_by_integer(&self, m: i64) -> Result<Self, GroupError> {
        if m < 1 {
            return Err(GroupError::NonPositiveModulus(m));
        }
        Ok(self.quotient_by(&BigUint::from(m as u64)))
    }

    fn quotient_by(&self, m: &BigUint) -> Self {
        let mut torsion: Vec<BigUint> = vec![m.clone(); self.free_rank];
        torsion.extend(self.invariant_factors.iter().map(|d| d.gcd(m)));
        FgAbelianGroup {
            free_rank: 0,
            invariant_factors: merge_torsion(torsion),
        }
    }

    pub fn cardinality(&self) -> Cardinality {
        if self.free_rank > 0 {
            Cardinality::Infinite
        } else {
            Cardinality::Finite(self.invariant_factors.iter().product())
        }
    }

    /// Invariant factors as machine integers, when they all fit.
    pub fn small_factors(&self) -> Option<Vec<u64>> {
        self.invariant_factors.iter().map(ToPrimitive::to_u64).collect()
    }

    /// Every element as a residue tuple in invariant-factor coordinates,
    /// in lexicographic order with the identity first.
    pub fn enumerate_elements(&self) -> Result<Vec<Vec<u64>>, GroupError> {
        if !self.is_finite() {
            return Err(GroupError::Infinite(self.to_string()));
        }
        let order = match self.cardinality() {
            Cardinality::Finite(n) => n,
            Cardinality::Infinite => unreachable!(),
        };
        if order > BigUint::from(ENUMERATION_LIMIT) {
            return Err(GroupError::TooLarge(order.to_string()));
        }
        let factors = self.small_factors().expect("order bounded above");
        let mut out = Vec::with_capacity(order.to_usize().unwrap_or(0));
        let mut current = vec![0u64; factors.len()];
        loop {
            out.push(current.clone());
            // odometer increment, last coordinate fastest
            let mut i = factors.len();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                current[i] += 1;
                if current[i] < factors[i] {
                    break;
                }
                current[i] = 0;
            }
        }
    }

    pub fn render(&self, notation: Notation) -> String {
        if self.is_trivial() {
            return "0".to_string();
        }
        let sep = match notation {
            Notation::Unicode => " ⊕ ",
            Notation::Ascii => " + ",
        };
        let terms = std::iter::repeat_n("Z".to_string(), self.free_rank)
            .chain(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        terms.collect::<Vec<_>>().join(sep)
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Notation::Unicode))
    }
}

/// Parses the rendered grammar: `0`, `Z`, `Z/d`, `Z^k`, joined by `⊕` or `+`.
impl FromStr for FgAbelianGroup {
    type Err = GroupError;

    fn from_str(text: &str) -> Result<Self, GroupError> {
        let fail = |reason: &str| GroupError::Parse {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let normalized = text.replace('⊕', "+");
        let mut group = FgAbelianGroup::trivial();
        for raw in normalized.split('+') {
            let term = raw.trim();
            let summand = if term == "0" {
                FgAbelianGroup::trivial()
            } else if term == "Z" {
                FgAbelianGroup::free(1)
            } else if let Some(k) = term.strip_prefix("Z^") {
                let k: usize = parse_natural(k).ok_or_else(|| fail("bad exponent"))?;
                FgAbelianGroup::free(k)
            } else if let Some(d) = term.strip_prefix("Z/") {
                let d: BigUint = d
                    .trim()
                    .parse()
                    .ok()
                    .filter(|_| d.trim().bytes().all(|b| b.is_ascii_digit()))
                    .ok_or_else(|| fail("bad cyclic order"))?;
                if d.is_zero() {
                    FgAbelianGroup::free(1)
                } else {
                    FgAbelianGroup {
                        free_rank: 0,
                        invariant_factors: merge_torsion(vec![d]),
                    }
                }
            } else if term.is_empty() {
                return Err(fail("empty term"));
            } else {
                return Err(fail(&format!("unknown term {term:?}")));
            };
            group = group.direct_sum(&summand);
        }
        Ok(group)
    }
}

fn parse_natural<T: FromStr>(s: &str) -> Option<T> {
    let s = s.trim();
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// JSON form `{"free_rank": n, "factors": [d, …]}`. Factors beyond `u64`
/// travel as decimal strings.
impl Serialize for FgAbelianGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let factors: Vec<serde_json::Value> = self
            .invariant_factors
            .iter()
            .map(|d| match d.to_u64() {
                Some(x) => serde_json::Value::from(x),
                None => serde_json::Value::from(d.to_string()),
            })
            .collect();
        let mut st = serializer.serialize_struct("FgAbelianGroup", 2)?;
        st.serialize_field("free_rank", &self.free_rank)?;
        st.serialize_field("factors", &factors)?;
        st.end()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupRecord {
    free_rank: usize,
    #[serde(default)]
    factors: Vec<FactorRecord>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FactorRecord {
    Number(i64),
    Text(String),
}

impl<'de> Deserialize<'de> for FgAbelianGroup {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let record = GroupRecord::deserialize(deserializer)?;
        let mut diagonal = Vec::with_capacity(record.factors.len());
        for f in record.factors {
            let d = match f {
                FactorRecord::Number(n) => BigInt::from(n),
                FactorRecord::Text(s) => parse_natural::<BigInt>(&s)
                    .ok_or_else(|| de::Error::custom(format!("bad factor {s:?}")))?,
            };
            if d.is_zero() {
                return Err(de::Error::custom("factor 0 is not torsion; use free_rank"));
            }
            diagonal.push(d);
        }
        let n = diagonal.len();
        let torsion = FgAbelianGroup::canonicalize(&diagonal, n).map_err(de::Error::custom)?;
        Ok(FgAbelianGroup::free(record.free_rank).direct_sum(&torsion))
    }
}
