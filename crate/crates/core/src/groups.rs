//! Structure groups described by the homotopy data the classifier consumes:
//! `π₀(G)`, `π₁(G)` and three hypothesis flags.
//!
//! Grammar accepted by [`parse_group_spec`]:
//!
//! ```text
//! EXPR := TERM ("x" TERM)*
//! TERM := "U(" n ")" | "SU(" n ")" | "SO(" n ")" | "Sp(" n ")"
//!       | "T^" k | "Z/" m | "Z" | "0" | "{" explicit JSON "}"
//!       | "G~/(" finite abelian group ")"
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::{FgAbelianGroup, Notation};
use crate::error::GroupError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupSpecError {
    #[error("unknown group {0:?}")]
    UnknownName(String),
    #[error("{name} is not in the catalog: {reason}; supply it as an explicit descriptor instead")]
    NotInCatalog { name: String, reason: String },
    #[error("malformed group expression {text:?}: {reason}")]
    Malformed { text: String, reason: String },
    #[error("covering quotient by infinite group {0}; model such a group with an explicit descriptor")]
    InfiniteGamma(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Catalog,
    Explicit,
    Product,
    CoveringQuotient,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GroupDescriptor {
    pub name: String,
    pub pi0: FgAbelianGroup,
    pub pi1: FgAbelianGroup,
    pub pi0_discrete: bool,
    pub pi0_abelian: bool,
    /// `π₀(G)` acts trivially on the higher homotopy groups.
    pub trivial_action: bool,
    pub provenance: Provenance,
}

impl GroupDescriptor {
    fn catalog(name: String, pi0: FgAbelianGroup, pi1: FgAbelianGroup) -> Self {
        GroupDescriptor {
            name,
            pi0,
            pi1,
            pi0_discrete: true,
            pi0_abelian: true,
            trivial_action: true,
            provenance: Provenance::Catalog,
        }
    }

    /// The trivial group.
    pub fn trivial() -> Self {
        Self::catalog("0".into(), FgAbelianGroup::trivial(), FgAbelianGroup::trivial())
    }

    pub fn satisfies_hypotheses(&self) -> bool {
        self.pi0_discrete && self.pi0_abelian && self.trivial_action
    }

    pub fn is_connected(&self) -> bool {
        self.pi0.is_trivial()
    }

    /// A group whose identity component is contractible: `π₁ = 0`.
    pub fn is_simply_connected(&self) -> bool {
        self.pi1.is_trivial()
    }

    /// Same homotopy data and flags, ignoring the name and provenance.
    pub fn same_homotopy_type(&self, other: &Self) -> bool {
        self.pi0 == other.pi0
            && self.pi1 == other.pi1
            && self.pi0_discrete == other.pi0_discrete
            && self.pi0_abelian == other.pi0_abelian
            && self.trivial_action == other.trivial_action
    }

    /// Text that [`parse_group_spec`] maps back to this descriptor.
    pub fn render(&self) -> String {
        self.name.clone()
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// JSON record for an explicit descriptor.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExplicitRecord {
    pi0: FgAbelianGroup,
    pi1: FgAbelianGroup,
    pi0_discrete: bool,
    trivial_action: bool,
    #[serde(default = "yes")]
    pi0_abelian: bool,
}

fn yes() -> bool {
    true
}

fn explicit(record: ExplicitRecord) -> GroupDescriptor {
    // a trivial π₀ is discrete whatever the record claims
    let pi0_discrete = record.pi0_discrete || record.pi0.is_trivial();
    let canonical = ExplicitRecord {
        pi0_discrete,
        ..record
    };
    GroupDescriptor {
        name: serde_json::to_string(&canonical).expect("record serializes"),
        pi0: canonical.pi0,
        pi1: canonical.pi1,
        pi0_discrete,
        pi0_abelian: canonical.pi0_abelian,
        trivial_action: canonical.trivial_action,
        provenance: Provenance::Explicit,
    }
}

/// Builds an explicit descriptor from homotopy data.
pub fn explicit_descriptor(
    pi0: FgAbelianGroup,
    pi1: FgAbelianGroup,
    pi0_discrete: bool,
    pi0_abelian: bool,
    trivial_action: bool,
) -> GroupDescriptor {
    explicit(ExplicitRecord {
        pi0,
        pi1,
        pi0_discrete,
        trivial_action,
        pi0_abelian,
    })
}

/// Homotopy groups of `A × B` split as direct sums; the flags conjoin.
pub fn product_descriptor(a: &GroupDescriptor, b: &GroupDescriptor) -> GroupDescriptor {
    GroupDescriptor {
        name: format!("{} x {}", a.name, b.name),
        pi0: a.pi0.direct_sum(&b.pi0),
        pi1: a.pi1.direct_sum(&b.pi1),
        pi0_discrete: a.pi0_discrete && b.pi0_discrete,
        pi0_abelian: a.pi0_abelian && b.pi0_abelian,
        trivial_action: a.trivial_action && b.trivial_action,
        provenance: Provenance::Product,
    }
}

/// `G̃/Γ` for a simply connected `G̃` and a finite central `Γ`: connected,
/// with `π₁ ≅ Γ`.
pub fn covering_quotient(gamma: &FgAbelianGroup) -> Result<GroupDescriptor, GroupSpecError> {
    if !gamma.is_finite() {
        return Err(GroupSpecError::InfiniteGamma(gamma.to_string()));
    }
    Ok(GroupDescriptor {
        name: format!("G~/({})", gamma.render(Notation::Ascii)),
        pi0: FgAbelianGroup::trivial(),
        pi1: gamma.clone(),
        pi0_discrete: true,
        pi0_abelian: true,
        trivial_action: true,
        provenance: Provenance::CoveringQuotient,
    })
}

/// Parses a group expression (see the module docs for the grammar).
pub fn parse_group_spec(text: &str) -> Result<GroupDescriptor, GroupSpecError> {
    let terms = split_product(text)?;
    let mut descriptors = terms
        .iter()
        .map(|t| parse_term(t))
        .collect::<Result<Vec<_>, _>>()?;
    let first = descriptors.remove(0);
    Ok(descriptors
        .iter()
        .fold(first, |acc, d| product_descriptor(&acc, d)))
}

/// Splits on top-level `x` separators, leaving JSON objects intact.
fn split_product(text: &str) -> Result<Vec<&str>, GroupSpecError> {
    let malformed = |reason: &str| GroupSpecError::Malformed {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    let mut terms = Vec::new();
    let mut depth = 0usize;
    let mut in_string = false;
    let mut escaped = false;
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        if in_string {
            match ch {
                _ if escaped => escaped = false,
                '\\' => escaped = true,
                '"' => in_string = false,
                _ => {}
            }
            continue;
        }
        match ch {
            '"' if depth > 0 => in_string = true,
            '{' | '[' => depth += 1,
            '}' | ']' => depth = depth.checked_sub(1).ok_or_else(|| malformed("unbalanced brackets"))?,
            'x' if depth == 0 => {
                terms.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 || in_string {
        return Err(malformed("unbalanced brackets"));
    }
    terms.push(text[start..].trim());
    if terms.iter().any(|t| t.is_empty()) {
        return Err(malformed("empty factor"));
    }
    Ok(terms)
}

fn parse_index(text: &str, inner: &str) -> Result<u64, GroupSpecError> {
    let inner = inner.trim();
    if inner.is_empty() || !inner.bytes().all(|b| b.is_ascii_digit()) {
        return Err(GroupSpecError::Malformed {
            text: text.to_string(),
            reason: format!("{inner:?} is not a non-negative integer"),
        });
    }
    inner.parse().map_err(|_| GroupSpecError::Malformed {
        text: text.to_string(),
        reason: "index out of range".into(),
    })
}

fn family_index<'a>(term: &'a str, family: &str) -> Option<&'a str> {
    term.strip_prefix(family)?
        .trim_start()
        .strip_prefix('(')?
        .strip_suffix(')')
}

fn parse_term(term: &str) -> Result<GroupDescriptor, GroupSpecError> {
    let z = || FgAbelianGroup::free(1);
    let zero = FgAbelianGroup::trivial;
    let not_in_catalog = |reason: &str| GroupSpecError::NotInCatalog {
        name: term.to_string(),
        reason: reason.to_string(),
    };

    if term.starts_with('{') {
        let record: ExplicitRecord =
            serde_json::from_str(term).map_err(|e| GroupSpecError::Malformed {
                text: term.to_string(),
                reason: e.to_string(),
            })?;
        return Ok(explicit(record));
    }
    if let Some(rest) = term.strip_prefix("G~/(") {
        let inner = rest.strip_suffix(')').ok_or_else(|| GroupSpecError::Malformed {
            text: term.to_string(),
            reason: "expected G~/(<finite group>)".into(),
        })?;
        let gamma: FgAbelianGroup = inner.parse().map_err(|e: GroupError| GroupSpecError::Malformed {
            text: term.to_string(),
            reason: e.to_string(),
        })?;
        return covering_quotient(&gamma);
    }
    if term == "0" {
        return Ok(GroupDescriptor::trivial());
    }
    if term == "Z" {
        return Ok(GroupDescriptor::catalog("Z".into(), z(), zero()));
    }
    if let Some(m) = term.strip_prefix("Z/") {
        let m = parse_index(term, m)?;
        if m == 0 {
            return Err(GroupSpecError::Malformed {
                text: term.to_string(),
                reason: "Z/0 is Z; write Z".into(),
            });
        }
        return Ok(GroupDescriptor::catalog(
            format!("Z/{m}"),
            FgAbelianGroup::cyclic(m),
            zero(),
        ));
    }
    if let Some(k) = term.strip_prefix("T^") {
        let k = parse_index(term, k)?;
        if k == 0 {
            return Err(not_in_catalog("the torus T^k needs k >= 1"));
        }
        return Ok(GroupDescriptor::catalog(
            format!("T^{k}"),
            zero(),
            FgAbelianGroup::free(k as usize),
        ));
    }
    // SU and Sp are checked before the one-letter prefixes they share.
    if let Some(n) = family_index(term, "SU") {
        let n = parse_index(term, n)?;
        if n < 2 {
            return Err(not_in_catalog("SU(n) is listed for n >= 2"));
        }
        return Ok(GroupDescriptor::catalog(format!("SU({n})"), zero(), zero()));
    }
    if let Some(n) = family_index(term, "Sp") {
        let n = parse_index(term, n)?;
        if n < 1 {
            return Err(not_in_catalog("Sp(n) is listed for n >= 1"));
        }
        return Ok(GroupDescriptor::catalog(format!("Sp({n})"), zero(), zero()));
    }
    if let Some(n) = family_index(term, "SO") {
        let n = parse_index(term, n)?;
        if n == 3 || n >= 5 {
            return Ok(GroupDescriptor::catalog(
                format!("SO({n})"),
                zero(),
                FgAbelianGroup::cyclic(2),
            ));
        }
        return Err(not_in_catalog(
            "the catalog lists pi1(SO(n)) only for n = 3 and n >= 5 (SO(2) is available as U(1))",
        ));
    }
    if let Some(n) = family_index(term, "U") {
        let n = parse_index(term, n)?;
        if n < 1 {
            return Err(not_in_catalog("U(n) is listed for n >= 1"));
        }
        return Ok(GroupDescriptor::catalog(format!("U({n})"), zero(), z()));
    }
    if family_index(term, "O").is_some() {
        return Err(not_in_catalog("orthogonal groups O(n) are not catalogued"));
    }
    Err(GroupSpecError::UnknownName(term.to_string()))
}

/// One line per catalogued family, for the `catalog` command.
pub fn catalog_entries() -> Vec<(&'static str, GroupDescriptor)> {
    let pick = |s: &str| parse_group_spec(s).expect("catalog entry parses");
    vec![
        ("U(n), n >= 1", pick("U(1)")),
        ("SU(n), n >= 2", pick("SU(2)")),
        ("Sp(n), n >= 1", pick("Sp(1)")),
        ("SO(n), n = 3 or n >= 5", pick("SO(3)")),
        ("T^k, k >= 1 (shown k = 2)", pick("T^2")),
        ("Z/m, m >= 1, discrete (shown m = 2)", pick("Z/2")),
        ("Z, discrete", pick("Z")),
        ("0, trivial group", pick("0")),
    ]
}

/// Concrete catalog names used by exhaustive checks.
pub fn sample_catalog_names() -> Vec<String> {
    let mut names = Vec::new();
    for n in 1..=4 {
        names.push(format!("U({n})"));
        names.push(format!("Sp({n})"));
    }
    for n in 2..=5 {
        names.push(format!("SU({n})"));
    }
    for n in [3, 5, 6, 7] {
        names.push(format!("SO({n})"));
    }
    for k in 1..=3 {
        names.push(format!("T^{k}"));
    }
    for m in 1..=6 {
        names.push(format!("Z/{m}"));
    }
    names.push("Z".into());
    names.push("0".into());
    names
}
