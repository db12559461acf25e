//! Classification of principal G-bundles over two-dimensional CW-complexes.
//!
//! The pipeline is: a combinatorial complex ([`cw`]) yields integer boundary
//! matrices, exact Smith reduction ([`linalg`]) turns them into homology and
//! cohomology groups in canonical form ([`abelian`], [`homology`]), and the
//! [`classifier`] assembles the cohomology of the structure group's homotopy
//! data ([`groups`]) into the set of bundle classes. The [`oracle`] module
//! recomputes the same quantities by brute force.

pub mod abelian;
pub mod classifier;
pub mod cw;
pub mod error;
pub mod groups;
pub mod homology;
pub mod linalg;
pub mod oracle;
pub mod report;

pub use abelian::{Cardinality, FgAbelianGroup, Notation};
pub use classifier::{
    classify, classify_sphere, classify_standard, surface_closed_form, witten_cross_check,
    ClassCount, ClassificationResult, ClassifyError, ClosedSurface, Hypothesis, Verdict,
};
pub use cw::{build_standard, CwComplex2, CwError, GroupPresentation, StandardSpace};
pub use groups::{covering_quotient, parse_group_spec, product_descriptor, GroupDescriptor};
pub use homology::{cohomology_direct, cohomology_uct, integral_homology, HomologyProfile};
pub use linalg::{smith_normal_form, IntMatrix, SnfDecomposition};
