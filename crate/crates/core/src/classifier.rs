//! Classification of principal G-bundles over a path-connected 2-complex M.
//!
//! Under the hypotheses that `π₀(G)` is abelian and discrete and acts
//! trivially on the higher homotopy of G, the bundle classes form a pointed
//! set fitting into the exact sequence
//!
//! ```text
//! 0 → H²(M; π₁G) → 𝓑_G(M) → H¹(M; π₀G) → 0
//! ```
//!
//! When one flanking term vanishes 𝓑_G(M) is identified with the other. When
//! both are nonzero only the flanking terms are reported.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::abelian::{Cardinality, FgAbelianGroup};
use crate::cw::{CwComplex2, CwError, StandardSpace};
use crate::groups::{covering_quotient, GroupDescriptor, GroupSpecError, Provenance};
use crate::homology::{integral_homology, uct_from_homology, CohomologyGroup, HomologyError};

/// Hypothesis flags the exact sequence depends on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Hypothesis {
    Pi0Abelian,
    Pi0Discrete,
    TrivialAction,
}

impl Hypothesis {
    pub fn flag(self) -> &'static str {
        match self {
            Hypothesis::Pi0Abelian => "pi0_abelian",
            Hypothesis::Pi0Discrete => "pi0_discrete",
            Hypothesis::TrivialAction => "trivial_action",
        }
    }
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.flag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("hypothesis violated: {0} is false for the structure group")]
    HypothesisViolation(Hypothesis),
    #[error("dimension error: cell {cell:?} has dimension {dim} > 2")]
    Dimension { cell: String, dim: u32 },
    #[error("complex is not path-connected: {unreachable:?} is unreachable from the basepoint")]
    Disconnected { unreachable: String },
    #[error("invalid complex: {0}")]
    InvalidComplex(CwError),
    #[error("spheres S^{0} are not realizable here; use dimension 1 or 2")]
    SphereDimension(u32),
    #[error(transparent)]
    Group(#[from] GroupSpecError),
    #[error("cohomology failed: {0}")]
    Cohomology(HomologyError),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl From<CwError> for ClassifyError {
    fn from(e: CwError) -> Self {
        match e {
            CwError::Dimension { cell, dim } => ClassifyError::Dimension { cell, dim },
            CwError::Disconnected { unreachable } => ClassifyError::Disconnected { unreachable },
            other => ClassifyError::InvalidComplex(other),
        }
    }
}

impl From<HomologyError> for ClassifyError {
    fn from(e: HomologyError) -> Self {
        match e {
            HomologyError::Complex(c) => c.into(),
            other => ClassifyError::Cohomology(other),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    IsomorphicToKernel,
    IsomorphicToQuotient,
    BothTrivial,
    ExtensionUndetermined,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::IsomorphicToKernel => "IsomorphicToKernel",
            Verdict::IsomorphicToQuotient => "IsomorphicToQuotient",
            Verdict::BothTrivial => "BothTrivial",
            Verdict::ExtensionUndetermined => "ExtensionUndetermined",
        })
    }
}

/// Size of the set of bundle classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassCount {
    Finite(BigUint),
    Infinite,
    Unknown,
}

impl From<Cardinality> for ClassCount {
    fn from(c: Cardinality) -> Self {
        match c {
            Cardinality::Finite(n) => ClassCount::Finite(n),
            Cardinality::Infinite => ClassCount::Infinite,
        }
    }
}

impl fmt::Display for ClassCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassCount::Finite(n) => write!(f, "{n}"),
            ClassCount::Infinite => f.write_str("infinite"),
            ClassCount::Unknown => f.write_str("unknown"),
        }
    }
}

/// A rule used to reach a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Citation {
    /// The exact sequence itself.
    ExactSequence,
    /// Connected G: 𝓑_G(M) ≅ H²(M; π₁G).
    ConnectedGroup,
    /// π₁G = 0, including discrete G: 𝓑_G(M) ≅ H¹(M; π₀G).
    TrivialPi1,
    /// π₀G = π₁G = 0: only the trivial bundle.
    TrivialBundleOnly,
    /// U(1): 𝓑(M) ≅ H²(M; Z) in every dimension.
    CircleGroup,
    /// 𝓑_G(Sⁿ) ≅ π_{n-1}(G).
    SphereFormula,
    /// H²(M; π) ≅ π for closed orientable M.
    OrientableSurface,
    /// H²(M; π) ≅ π/2π for closed non-orientable M.
    NonOrientableSurface,
    /// G = G̃/Γ over a closed orientable surface: 𝓑_G(M) ≅ Γ.
    CoveringQuotient,
}

impl Citation {
    pub fn tag(self) -> &'static str {
        match self {
            Citation::ExactSequence => "exact-sequence",
            Citation::ConnectedGroup => "connected-group",
            Citation::TrivialPi1 => "trivial-pi1",
            Citation::TrivialBundleOnly => "trivial-bundle-only",
            Citation::CircleGroup => "circle-group",
            Citation::SphereFormula => "sphere-formula",
            Citation::OrientableSurface => "orientable-surface",
            Citation::NonOrientableSurface => "nonorientable-surface",
            Citation::CoveringQuotient => "covering-quotient",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            Citation::ExactSequence => "0 → H²(M;π₁G) → 𝓑_G(M) → H¹(M;π₀G) → 0",
            Citation::ConnectedGroup => "π₀G = 0 ⇒ 𝓑_G(M) ≅ H²(M;π₁G)",
            Citation::TrivialPi1 => "π₁G = 0 ⇒ 𝓑_G(M) ≅ H¹(M;π₀G); discrete G ⇒ 𝓑_G(M) ≅ H¹(M;G)",
            Citation::TrivialBundleOnly => "π₀G = π₁G = 0 ⇒ every bundle is trivial",
            Citation::CircleGroup => "𝓑_U(1)(M) ≅ [M, K(Z,2)] ≅ H²(M;Z)",
            Citation::SphereFormula => "𝓑_G(Sⁿ) ≅ π_{n−1}(G)",
            Citation::OrientableSurface => "M closed orientable ⇒ H²(M;π) ≅ π",
            Citation::NonOrientableSurface => "M closed non-orientable ⇒ H²(M;π) ≅ π/2π",
            Citation::CoveringQuotient => "G = G̃/Γ, M closed orientable ⇒ 𝓑_G(M) ≅ Γ",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationResult {
    pub complex: String,
    pub group: String,
    /// `H²(M; π₁G)`
    pub kernel_term: CohomologyGroup,
    /// `H¹(M; π₀G)`
    pub quotient_term: CohomologyGroup,
    pub verdict: Verdict,
    /// Present exactly when the verdict identifies 𝓑_G(M) with a group.
    pub classified_group: Option<FgAbelianGroup>,
    pub cardinality: ClassCount,
    pub citations: Vec<Citation>,
}

impl ClassificationResult {
    /// A short phrase naming the case of the exact sequence that applied.
    pub fn case_description(&self) -> &'static str {
        match self.verdict {
            Verdict::IsomorphicToKernel => "H¹(M;π₀G) vanishes, so 𝓑_G(M) ≅ H²(M;π₁G)",
            Verdict::IsomorphicToQuotient => "H²(M;π₁G) vanishes, so 𝓑_G(M) ≅ H¹(M;π₀G)",
            Verdict::BothTrivial => "both flanking groups vanish, so only the trivial bundle exists",
            Verdict::ExtensionUndetermined => {
                "both flanking groups are nonzero; the middle term is not determined"
            }
        }
    }
}

pub fn check_hypotheses(g: &GroupDescriptor) -> Result<(), ClassifyError> {
    if !g.pi0_abelian {
        return Err(ClassifyError::HypothesisViolation(Hypothesis::Pi0Abelian));
    }
    if !g.pi0_discrete {
        return Err(ClassifyError::HypothesisViolation(Hypothesis::Pi0Discrete));
    }
    if !g.trivial_action {
        return Err(ClassifyError::HypothesisViolation(Hypothesis::TrivialAction));
    }
    Ok(())
}

pub fn classify(m: &CwComplex2, g: &GroupDescriptor) -> Result<ClassificationResult, ClassifyError> {
    check_hypotheses(g)?;
    m.validate()?;
    let homology = integral_homology(m)?;
    let kernel_term = uct_from_homology(&homology, &g.pi1, 2)?;
    let quotient_term = uct_from_homology(&homology, &g.pi0, 1)?;

    let (verdict, classified_group) = match (
        kernel_term.group.is_trivial(),
        quotient_term.group.is_trivial(),
    ) {
        (true, true) => (Verdict::BothTrivial, Some(FgAbelianGroup::trivial())),
        (false, true) => (Verdict::IsomorphicToKernel, Some(kernel_term.group.clone())),
        (true, false) => (Verdict::IsomorphicToQuotient, Some(quotient_term.group.clone())),
        (false, false) => (Verdict::ExtensionUndetermined, None),
    };
    let cardinality = match &classified_group {
        Some(grp) => grp.cardinality().into(),
        None => ClassCount::Unknown,
    };

    let mut citations = vec![Citation::ExactSequence];
    match (g.pi0.is_trivial(), g.pi1.is_trivial()) {
        (true, true) => citations.push(Citation::TrivialBundleOnly),
        (true, false) => citations.push(Citation::ConnectedGroup),
        (false, true) => citations.push(Citation::TrivialPi1),
        (false, false) => {}
    }
    if g.provenance == Provenance::Catalog && g.name == "U(1)" {
        citations.push(Citation::CircleGroup);
    }

    Ok(ClassificationResult {
        complex: m.name.clone(),
        group: g.name.clone(),
        kernel_term,
        quotient_term,
        verdict,
        classified_group,
        cardinality,
        citations,
    })
}

/// `𝓑_G(Sⁿ) ≅ π_{n−1}(G)` for `n ∈ {1, 2}`.
pub fn classify_sphere(g: &GroupDescriptor, n: u32) -> Result<FgAbelianGroup, ClassifyError> {
    check_hypotheses(g)?;
    match n {
        1 => Ok(g.pi0.clone()),
        2 => Ok(g.pi1.clone()),
        other => Err(ClassifyError::SphereDimension(other)),
    }
}

/// A closed surface, for the closed-form second cohomology.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedSurface {
    Orientable { genus: u32 },
    NonOrientable { crosscaps: u32 },
}

impl ClosedSurface {
    pub fn from_standard(space: StandardSpace) -> Option<Self> {
        match space {
            StandardSpace::Sphere => Some(ClosedSurface::Orientable { genus: 0 }),
            StandardSpace::Orientable { genus } => Some(ClosedSurface::Orientable { genus }),
            StandardSpace::NonOrientable { crosscaps } => {
                Some(ClosedSurface::NonOrientable { crosscaps })
            }
            StandardSpace::Wedge { .. } => None,
        }
    }
}

/// `H²(M; π)` of a closed surface: `π` if orientable, `π/2π` otherwise.
pub fn surface_closed_form(
    surface: ClosedSurface,
    pi: &FgAbelianGroup,
) -> Result<FgAbelianGroup, ClassifyError> {
    match surface {
        ClosedSurface::Orientable { .. } => Ok(pi.clone()),
        ClosedSurface::NonOrientable { crosscaps: 0 } => Err(ClassifyError::InvalidComplex(
            CwError::InvalidStandard("a non-orientable surface needs at least one crosscap".into()),
        )),
        ClosedSurface::NonOrientable { .. } => {
            Ok(pi.quotient_by_integer(2).expect("2 is a positive modulus"))
        }
    }
}

/// Classifies over a standard space and cross-checks the result against the
/// closed forms that apply to it, recording each one used.
pub fn classify_standard(
    space: StandardSpace,
    g: &GroupDescriptor,
) -> Result<ClassificationResult, ClassifyError> {
    let m = space.build()?;
    let mut result = classify(&m, g)?;
    let mismatch = |what: &str, engine: &FgAbelianGroup, closed: &FgAbelianGroup| {
        ClassifyError::Inconsistent(format!(
            "{what} on {space}: engine gives {engine}, closed form gives {closed}"
        ))
    };

    if let Some(surface) = ClosedSurface::from_standard(space) {
        let closed = surface_closed_form(surface, &g.pi1)?;
        if closed != result.kernel_term.group {
            return Err(mismatch("H²(M;π₁G)", &result.kernel_term.group, &closed));
        }
        match surface {
            ClosedSurface::Orientable { genus: 0 } => {
                let sphere = classify_sphere(g, 2)?;
                if result.classified_group.as_ref() != Some(&sphere) {
                    return Err(mismatch("𝓑_G(S²)", &result.kernel_term.group, &sphere));
                }
                result.citations.push(Citation::SphereFormula);
            }
            ClosedSurface::Orientable { .. } => result.citations.push(Citation::OrientableSurface),
            ClosedSurface::NonOrientable { .. } => {
                result.citations.push(Citation::NonOrientableSurface)
            }
        }
        if g.provenance == Provenance::CoveringQuotient
            && matches!(surface, ClosedSurface::Orientable { .. })
        {
            if result.classified_group.as_ref() != Some(&g.pi1) {
                return Err(mismatch("𝓑_G(M) ≅ Γ", &result.kernel_term.group, &g.pi1));
            }
            result.citations.push(Citation::CoveringQuotient);
        }
    }
    Ok(result)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WittenReport {
    pub gamma: FgAbelianGroup,
    pub genus: u32,
    /// 𝓑_G(Σ_genus) from the engine, for `G = G̃/Γ`.
    pub classified: Option<FgAbelianGroup>,
    /// `classify_sphere(G, 2)` when the genus is zero.
    pub sphere: Option<FgAbelianGroup>,
    pub consistent: bool,
}

/// Checks `𝓑_{G̃/Γ}(Σ_g) ≅ Γ` through the general engine.
pub fn witten_cross_check(gamma: &FgAbelianGroup, genus: u32) -> Result<WittenReport, ClassifyError> {
    let g = covering_quotient(gamma)?;
    let m = StandardSpace::Orientable { genus }.build()?;
    let result = classify(&m, &g)?;
    let classified = result.classified_group;
    let sphere = if genus == 0 {
        Some(classify_sphere(&g, 2)?)
    } else {
        None
    };
    let consistent = classified.as_ref() == Some(gamma)
        && sphere.as_ref().is_none_or(|s| s == gamma);
    Ok(WittenReport {
        gamma: gamma.clone(),
        genus,
        classified,
        sphere,
        consistent,
    })
}

/// `true` when the count is exactly one class.
pub fn is_single_class(count: &ClassCount) -> bool {
    matches!(count, ClassCount::Finite(n) if n.is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cw::{Edge, Face, HigherCell, Letter};
    use crate::groups::{explicit_descriptor, parse_group_spec};

    fn g(rank: usize, factors: &[u64]) -> FgAbelianGroup {
        FgAbelianGroup::from_factors(rank, factors)
    }

    fn group(s: &str) -> GroupDescriptor {
        parse_group_spec(s).unwrap()
    }

    fn surface(space: StandardSpace) -> CwComplex2 {
        space.build().unwrap()
    }

    fn klein() -> CwComplex2 {
        CwComplex2 {
            name: "klein".into(),
            vertices: vec!["v".into()],
            edges: ["a", "b"]
                .iter()
                .map(|e| Edge {
                    name: e.to_string(),
                    src: "v".into(),
                    dst: "v".into(),
                })
                .collect(),
            faces: vec![Face {
                name: "f".into(),
                word: vec![Letter::plus("a"), Letter::plus("b"), Letter::plus("a"), Letter::minus("b")],
            }],
            basepoint: Some("v".into()),
            higher_cells: vec![],
        }
    }

    #[test]
    fn torus_circle_bundles() {
        let r = classify(&surface(StandardSpace::Orientable { genus: 1 }), &group("U(1)")).unwrap();
        assert_eq!(r.verdict, Verdict::IsomorphicToKernel);
        assert_eq!(r.classified_group, Some(g(1, &[])));
        assert_eq!(r.cardinality, ClassCount::Infinite);
        assert!(r.citations.contains(&Citation::ConnectedGroup));
        assert!(r.citations.contains(&Citation::CircleGroup));
    }

    #[test]
    fn klein_bottle_circle_bundles() {
        let r = classify(&klein(), &group("U(1)")).unwrap();
        assert_eq!(r.verdict, Verdict::IsomorphicToKernel);
        assert_eq!(r.classified_group, Some(g(0, &[2])));
        assert_eq!(r.cardinality, ClassCount::Finite(2u32.into()));
    }

    #[test]
    fn simply_connected_gives_trivial() {
        for space in [
            StandardSpace::Sphere,
            StandardSpace::Orientable { genus: 3 },
            StandardSpace::NonOrientable { crosscaps: 2 },
            StandardSpace::Wedge { circles: 2 },
        ] {
            let r = classify(&surface(space), &group("SU(2)")).unwrap();
            assert_eq!(r.verdict, Verdict::BothTrivial);
            assert!(is_single_class(&r.cardinality));
        }
    }

    #[test]
    fn discrete_group_over_genus_two() {
        let r = classify(&surface(StandardSpace::Orientable { genus: 2 }), &group("Z/6")).unwrap();
        assert_eq!(r.verdict, Verdict::IsomorphicToQuotient);
        assert_eq!(r.classified_group, Some(g(0, &[6]).power(4)));
        assert_eq!(r.cardinality, ClassCount::Finite(1296u32.into()));
    }

    #[test]
    fn undetermined_extension() {
        let d = explicit_descriptor(g(0, &[2]), g(0, &[2]), true, true, true);
        let r = classify(&surface(StandardSpace::Orientable { genus: 1 }), &d).unwrap();
        assert_eq!(r.verdict, Verdict::ExtensionUndetermined);
        assert_eq!(r.kernel_term.group, g(0, &[2]));
        assert_eq!(r.quotient_term.group, g(0, &[2, 2]));
        assert_eq!(r.classified_group, None);
        assert_eq!(r.cardinality, ClassCount::Unknown);
    }

    #[test]
    fn hypothesis_violations_name_the_flag() {
        let m = surface(StandardSpace::Sphere);
        let cases = [
            (explicit_descriptor(g(0, &[2]), g(0, &[]), true, false, true), Hypothesis::Pi0Abelian),
            (explicit_descriptor(g(1, &[]), g(0, &[]), false, true, true), Hypothesis::Pi0Discrete),
            (explicit_descriptor(g(0, &[2]), g(0, &[]), true, true, false), Hypothesis::TrivialAction),
        ];
        for (d, flag) in cases {
            assert_eq!(classify(&m, &d), Err(ClassifyError::HypothesisViolation(flag)));
            assert_eq!(classify_sphere(&d, 2), Err(ClassifyError::HypothesisViolation(flag)));
        }
    }

    #[test]
    fn complex_errors_map_to_classifier_errors() {
        let mut m = surface(StandardSpace::Orientable { genus: 1 });
        m.higher_cells.push(HigherCell { name: "ball".into(), dim: 3 });
        assert!(matches!(classify(&m, &group("U(1)")), Err(ClassifyError::Dimension { dim: 3, .. })));

        let mut m = surface(StandardSpace::Orientable { genus: 1 });
        m.vertices.push("far".into());
        assert!(matches!(classify(&m, &group("U(1)")), Err(ClassifyError::Disconnected { .. })));

        let mut m = surface(StandardSpace::Orientable { genus: 1 });
        m.edges[0].src = "ghost".into();
        assert!(matches!(classify(&m, &group("U(1)")), Err(ClassifyError::InvalidComplex(_))));
    }

    #[test]
    fn sphere_formula() {
        assert_eq!(classify_sphere(&group("U(1)"), 2).unwrap(), g(1, &[]));
        assert_eq!(classify_sphere(&group("SO(3)"), 2).unwrap(), g(0, &[2]));
        assert_eq!(classify_sphere(&group("Z/4"), 1).unwrap(), g(0, &[4]));
        assert_eq!(classify_sphere(&group("U(1)"), 3), Err(ClassifyError::SphereDimension(3)));
        assert_eq!(classify_sphere(&group("U(1)"), 0), Err(ClassifyError::SphereDimension(0)));
    }

    #[test]
    fn closed_forms() {
        let orient = |genus| ClosedSurface::Orientable { genus };
        let nonor = |crosscaps| ClosedSurface::NonOrientable { crosscaps };
        assert_eq!(surface_closed_form(orient(3), &g(0, &[2])).unwrap(), g(0, &[2]));
        assert_eq!(surface_closed_form(nonor(1), &g(1, &[])).unwrap(), g(0, &[2]));
        assert!(surface_closed_form(nonor(2), &g(0, &[3])).unwrap().is_trivial());
        assert!(surface_closed_form(nonor(0), &g(0, &[3])).is_err());
    }

    #[test]
    fn standard_classification_cites_closed_forms() {
        let r = classify_standard(StandardSpace::Orientable { genus: 1 }, &group("U(1)")).unwrap();
        assert!(r.citations.contains(&Citation::OrientableSurface));
        let r = classify_standard(StandardSpace::NonOrientable { crosscaps: 3 }, &group("U(1)")).unwrap();
        assert!(r.citations.contains(&Citation::NonOrientableSurface));
        let r = classify_standard(StandardSpace::Sphere, &group("SO(3)")).unwrap();
        assert!(r.citations.contains(&Citation::SphereFormula));
        let so3 = covering_quotient(&g(0, &[2])).unwrap();
        let r = classify_standard(StandardSpace::Orientable { genus: 2 }, &so3).unwrap();
        assert!(r.citations.contains(&Citation::CoveringQuotient));
    }

    #[test]
    fn witten_examples() {
        let r = witten_cross_check(&g(0, &[2]), 1).unwrap();
        assert!(r.consistent);
        assert_eq!(r.classified, Some(g(0, &[2])));
        assert!(witten_cross_check(&FgAbelianGroup::trivial(), 2).unwrap().consistent);
        let r = witten_cross_check(&g(0, &[3]), 0).unwrap();
        assert!(r.consistent);
        assert_eq!(r.sphere, Some(g(0, &[3])));
        assert!(witten_cross_check(&g(1, &[]), 1).is_err());
    }
}
