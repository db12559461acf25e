//! Brute-force cross-checks that recompute classification data by routes
//! unrelated to the production engine.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::abelian::{Cardinality, FgAbelianGroup};
use crate::classifier::{
    classify, classify_sphere, surface_closed_form, ClassifyError, ClosedSurface, Verdict,
};
use crate::cw::{CwComplex2, CwError, GroupPresentation, StandardSpace};
use crate::error::GroupError;
use crate::groups::GroupDescriptor;
use crate::homology::{cohomology_direct, cohomology_uct, HomologyError, MAX_DEGREE};

/// Largest number of generator assignments the homomorphism count will try.
pub const MAX_CANDIDATES: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Complex(#[from] CwError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("target group {0} is infinite; homomorphisms cannot be enumerated")]
    InfiniteTarget(String),
    #[error("refusing to enumerate {candidates} candidate assignments (limit {MAX_CANDIDATES})")]
    EnumerationTooLarge { candidates: BigUint },
    #[error("precondition not met: {0}")]
    Precondition(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum OracleValue {
    Group(FgAbelianGroup),
    Count(BigUint),
}

impl fmt::Display for OracleValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleValue::Group(g) => write!(f, "{g}"),
            OracleValue::Count(n) => write!(f, "{n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub subject: String,
    pub engine_value: OracleValue,
    pub oracle_value: OracleValue,
    pub agreement: bool,
}

impl OracleReport {
    fn new(subject: String, engine_value: OracleValue, oracle_value: OracleValue) -> Self {
        let agreement = engine_value == oracle_value;
        OracleReport {
            subject,
            engine_value,
            oracle_value,
            agreement,
        }
    }
}

/// Outcome of [`finite_class_enumeration`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum FiniteCheck {
    Compared(OracleReport),
    NotApplicable { subject: String, reason: String },
}

/// Counts homomorphisms from a presented group into a finite abelian group by
/// depth-first assignment of generator images. A relator is checked as soon as
/// its last generator has an image.
pub fn count_homomorphisms(
    presentation: &GroupPresentation,
    target: &FgAbelianGroup,
) -> Result<BigUint, OracleError> {
    if !target.is_finite() {
        return Err(OracleError::InfiniteTarget(target.to_string()));
    }
    let order = match target.cardinality() {
        Cardinality::Finite(n) => n,
        Cardinality::Infinite => unreachable!(),
    };
    let candidates = order.pow(presentation.generators.len() as u32);
    if candidates > BigUint::from(MAX_CANDIDATES) {
        return Err(OracleError::EnumerationTooLarge { candidates });
    }
    let elements = target.enumerate_elements()?;
    let moduli = target.small_factors().expect("bounded order");

    // exponent vector of each relator over the generators
    let n = presentation.generators.len();
    let exponents: Vec<Vec<i64>> = presentation
        .relators
        .iter()
        .map(|word| {
            let mut e = vec![0i64; n];
            for l in word {
                let g = presentation
                    .generators
                    .iter()
                    .position(|g| *g == l.edge)
                    .expect("relator letter is a generator");
                e[g] += l.sign.as_i64();
            }
            e
        })
        .collect();
    // relators become checkable once generator `last` is assigned
    let mut check_at: Vec<Vec<usize>> = vec![Vec::new(); n.max(1)];
    for (r, e) in exponents.iter().enumerate() {
        // a relator with zero exponent sum in every generator always holds
        if let Some(last) = e.iter().rposition(|&x| x != 0) {
            check_at[last].push(r);
        }
    }

    let mut images: Vec<usize> = vec![0; n];
    let holds = |r: usize, images: &[usize]| -> bool {
        moduli.iter().enumerate().all(|(coord, &m)| {
            let m = m as i128;
            let s: i128 = exponents[r]
                .iter()
                .zip(images)
                .map(|(&e, &img)| e as i128 * elements[img][coord] as i128)
                .sum();
            s.rem_euclid(m) == 0
        })
    };

    fn walk(
        depth: usize,
        images: &mut Vec<usize>,
        n_elements: usize,
        check_at: &[Vec<usize>],
        holds: &dyn Fn(usize, &[usize]) -> bool,
    ) -> u64 {
        if depth == images.len() {
            return 1;
        }
        let mut total = 0;
        for x in 0..n_elements {
            images[depth] = x;
            if check_at[depth].iter().all(|&r| holds(r, &images[..=depth])) {
                total += walk(depth + 1, images, n_elements, check_at, holds);
            }
        }
        total
    }

    if n == 0 {
        return Ok(BigUint::one());
    }
    let count = walk(0, &mut images, elements.len(), &check_at, &holds);
    Ok(BigUint::from(count))
}

/// `|H¹(M; G)|` from the engine against the number of homomorphisms from the
/// fundamental group of M into the finite abelian group G.
pub fn h1_hom_counting(m: &CwComplex2, g_discrete: &FgAbelianGroup) -> Result<OracleReport, OracleError> {
    if !g_discrete.is_finite() {
        return Err(OracleError::InfiniteTarget(g_discrete.to_string()));
    }
    let presentation = m.fundamental_group_presentation()?;
    let oracle = count_homomorphisms(&presentation, g_discrete)?;
    let engine = match cohomology_uct(m, g_discrete, 1)?.group.cardinality() {
        Cardinality::Finite(n) => n,
        Cardinality::Infinite => {
            return Err(OracleError::Precondition("H¹ with finite coefficients is infinite".into()))
        }
    };
    Ok(OracleReport::new(
        format!("|H¹({}; {g_discrete})| vs |Hom(π₁, {g_discrete})|", m.name),
        OracleValue::Count(engine),
        OracleValue::Count(oracle),
    ))
}

/// One report per degree comparing the universal-coefficient and cochain routes.
pub fn uct_vs_direct(m: &CwComplex2, pi: &FgAbelianGroup) -> Result<Vec<OracleReport>, OracleError> {
    (0..=MAX_DEGREE)
        .map(|n| {
            let uct = cohomology_uct(m, pi, n)?.group;
            let direct = cohomology_direct(m, pi, n)?.group;
            Ok(OracleReport::new(
                format!("H^{n}({}; {pi}) universal coefficients vs cochains", m.name),
                OracleValue::Group(uct),
                OracleValue::Group(direct),
            ))
        })
        .collect()
}

fn finite_order(g: &FgAbelianGroup) -> Option<BigUint> {
    match g.cardinality() {
        Cardinality::Finite(n) => Some(n),
        Cardinality::Infinite => None,
    }
}

/// Enumerates the classified group and compares its size with the product of
/// independently computed flanking orders: `|H²(M;π₁G)|` from a closed form
/// (or zero for a graph) and `|H¹(M;π₀G)|` from homomorphism counting.
pub fn finite_class_enumeration(
    m: &CwComplex2,
    shape: Option<StandardSpace>,
    g: &GroupDescriptor,
) -> Result<FiniteCheck, OracleError> {
    let subject = format!("|𝓑_{}({})| by enumeration vs closed forms", g.name, m.name);
    let result = classify(m, g)?;
    let classified = match (&result.verdict, &result.classified_group) {
        (Verdict::ExtensionUndetermined, _) | (_, None) => {
            return Err(OracleError::Precondition(format!(
                "verdict {} does not identify the bundle classes with a group",
                result.verdict
            )))
        }
        (_, Some(grp)) if !grp.is_finite() => {
            return Err(OracleError::Precondition(format!(
                "classified group {grp} is infinite"
            )))
        }
        (_, Some(grp)) => grp.clone(),
    };

    let not_applicable = |reason: &str| {
        Ok(FiniteCheck::NotApplicable {
            subject: subject.clone(),
            reason: reason.to_string(),
        })
    };

    let kernel_order = match shape.and_then(ClosedSurface::from_standard) {
        Some(ClosedSurface::Orientable { genus: 0 }) => finite_order(&classify_sphere(g, 2)?),
        Some(surface) => finite_order(&surface_closed_form(surface, &g.pi1)?),
        None if m.faces.is_empty() => Some(BigUint::one()),
        None => return not_applicable("no closed form for the second cohomology of this complex"),
    };
    let Some(kernel_order) = kernel_order else {
        return not_applicable("closed-form second cohomology is infinite");
    };

    let quotient_order = if g.pi0.is_trivial() {
        BigUint::one()
    } else if g.pi0.is_finite() {
        let presentation = m.fundamental_group_presentation()?;
        count_homomorphisms(&presentation, &g.pi0)?
    } else {
        return not_applicable("π₀(G) is infinite; homomorphisms cannot be enumerated");
    };

    let enumerated = classified.enumerate_elements()?.len();
    Ok(FiniteCheck::Compared(OracleReport::new(
        subject,
        OracleValue::Count(BigUint::from(enumerated)),
        OracleValue::Count(kernel_order * quotient_order),
    )))
}

/// Machine-sized count, when it fits.
pub fn count_as_u64(v: &OracleValue) -> Option<u64> {
    match v {
        OracleValue::Count(n) => n.to_u64(),
        OracleValue::Group(_) => None,
    }
}
