//! Cellular homology and cohomology of 2-complexes.
//!
//! [`cohomology_uct`] is the production route: integral homology followed by
//! the universal coefficient splitting `Hⁿ(M;π) ≅ Hom(Hₙ, π) ⊕ Ext(Hₙ₋₁, π)`.
//! [`cohomology_direct`] recomputes the same groups from the cochain complex
//! `Hom(Cₙ, π)` and exists as a second opinion.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::abelian::FgAbelianGroup;
use crate::cw::{BoundaryMaps, CwComplex2, CwError};
use crate::error::LinalgError;
use crate::linalg::{self, IntMatrix};

/// Highest degree accepted by the cohomology routines.
pub const MAX_DEGREE: u32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error(transparent)]
    Complex(#[from] CwError),
    #[error("cohomology degree {0} outside 0..=3")]
    Degree(u32),
    #[error("linear algebra failure: {0}")]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyProfile {
    pub h0: FgAbelianGroup,
    pub h1: FgAbelianGroup,
    pub h2: FgAbelianGroup,
}

impl HomologyProfile {
    /// `Hₙ(M)`, zero outside `0..=2`.
    pub fn degree(&self, n: i64) -> FgAbelianGroup {
        match n {
            0 => self.h0.clone(),
            1 => self.h1.clone(),
            2 => self.h2.clone(),
            _ => FgAbelianGroup::trivial(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologyGroup {
    pub degree: u32,
    pub coefficients: FgAbelianGroup,
    pub group: FgAbelianGroup,
}

pub fn integral_homology(m: &CwComplex2) -> Result<HomologyProfile, HomologyError> {
    let BoundaryMaps { d1, d2 } = m.boundary_matrices()?;
    homology_from_boundaries(&d1, &d2)
}

fn homology_from_boundaries(d1: &IntMatrix, d2: &IntMatrix) -> Result<HomologyProfile, HomologyError> {
    let h0 = linalg::cokernel_invariants(d1);
    let h1 = linalg::subquotient(d1, d2)?;
    let h2 = FgAbelianGroup::free(linalg::kernel_rank(d2));
    Ok(HomologyProfile { h0, h1, h2 })
}

fn check_degree(degree: u32) -> Result<(), HomologyError> {
    if degree > MAX_DEGREE {
        Err(HomologyError::Degree(degree))
    } else {
        Ok(())
    }
}

/// Universal coefficient assembly from a known homology profile.
pub fn uct_from_homology(
    homology: &HomologyProfile,
    pi: &FgAbelianGroup,
    degree: u32,
) -> Result<CohomologyGroup, HomologyError> {
    check_degree(degree)?;
    let n = i64::from(degree);
    let hom = homology.degree(n).hom_group(pi);
    let ext = homology.degree(n - 1).ext_group(pi);
    Ok(CohomologyGroup {
        degree,
        coefficients: pi.clone(),
        group: hom.direct_sum(&ext),
    })
}

pub fn cohomology_uct(
    m: &CwComplex2,
    pi: &FgAbelianGroup,
    degree: u32,
) -> Result<CohomologyGroup, HomologyError> {
    check_degree(degree)?;
    uct_from_homology(&integral_homology(m)?, pi, degree)
}

pub fn cohomology_direct(
    m: &CwComplex2,
    pi: &FgAbelianGroup,
    degree: u32,
) -> Result<CohomologyGroup, HomologyError> {
    check_degree(degree)?;
    let BoundaryMaps { d1, d2 } = m.boundary_matrices()?;
    let cells = [d1.rows(), d1.cols(), d2.cols(), 0];
    let n = degree as usize;

    // δⁿ : Cⁿ → Cⁿ⁺¹ is the transpose of ∂ₙ₊₁.
    let coboundary = |k: usize| -> IntMatrix {
        match k {
            0 => d1.transpose(),
            1 => d2.transpose(),
            _ => IntMatrix::zeros(cells.get(k + 1).copied().unwrap_or(0), cells[k]),
        }
    };
    let outgoing = coboundary(n);
    let incoming = if n == 0 {
        IntMatrix::zeros(cells[0], 0)
    } else {
        coboundary(n - 1)
    };

    let mut orders: Vec<BigInt> = vec![BigInt::from(0); pi.free_rank()];
    orders.extend(pi.invariant_factors().iter().map(|d| BigInt::from(d.clone())));
    let mut group = FgAbelianGroup::trivial();
    for d in &orders {
        group = group.direct_sum(&cochain_cohomology(&outgoing, &incoming, d)?);
    }
    Ok(CohomologyGroup {
        degree,
        coefficients: pi.clone(),
        group,
    })
}

/// Cohomology at the middle of `Cⁿ⁻¹ → Cⁿ → Cⁿ⁺¹` with coefficients `Z/d`
/// (`d = 0` meaning `Z`).
///
/// `(Z/d)^c` is modelled as `Z^c / dZ^c`: the cocycles are the lattice
/// `{x : δx ∈ dZ}` and the coboundaries are `im δ + dZ`, both obtained by
/// appending `d·I` blocks to the integer coboundary matrices.
fn cochain_cohomology(
    outgoing: &IntMatrix,
    incoming: &IntMatrix,
    d: &BigInt,
) -> Result<FgAbelianGroup, HomologyError> {
    let c = outgoing.cols();
    let (cocycles, coboundaries) = if d == &BigInt::from(0) {
        (linalg::kernel_basis(outgoing), incoming.clone())
    } else {
        let augmented = outgoing.hstack(&IntMatrix::identity(outgoing.rows()).scaled(d))?;
        let cocycles = linalg::kernel_basis(&augmented).row_block(0..c);
        let coboundaries = incoming.hstack(&IntMatrix::identity(c).scaled(d))?;
        (cocycles, coboundaries)
    };
    lattice_quotient(&cocycles, &coboundaries)
}

/// `L₁ / L₂` for lattices given by generating columns, with `L₂ ⊆ L₁`.
///
/// With `G` generating `L₁`, `L₁ ≅ Z^g / ker G`; writing the generators of
/// `L₂` as `G·Y` gives `L₁/L₂ ≅ coker [Y | ker G]`.
fn lattice_quotient(big: &IntMatrix, small: &IntMatrix) -> Result<FgAbelianGroup, HomologyError> {
    let y = linalg::solve(big, small)?.ok_or(LinalgError::NotAComplex)?;
    let relations = y.hstack(&linalg::kernel_basis(big))?;
    Ok(linalg::cokernel_invariants(&relations))
}

/// Betti numbers `(b₀, b₁, b₂)` for quick reporting.
pub fn betti_numbers(h: &HomologyProfile) -> (usize, usize, usize) {
    (h.h0.free_rank(), h.h1.free_rank(), h.h2.free_rank())
}

/// Torsion coefficients of `H₁` as machine integers, when they fit.
pub fn torsion_coefficients(h: &HomologyProfile) -> Option<Vec<u64>> {
    h.h1.invariant_factors().iter().map(|d| d.to_u64()).collect()
}
