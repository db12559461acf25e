#![allow(dead_code)]
//! Oracles shared by the integration tests. Nothing here calls the closed-form
//! Hom/Ext formulas or the cohomology routines it is used to check.

use gbundle::cw::{Edge, Face, Letter, Sign};
use gbundle::linalg::{self, IntMatrix};
use gbundle::{CwComplex2, FgAbelianGroup};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use proptest::prelude::*;

pub fn g(rank: usize, factors: &[u64]) -> FgAbelianGroup {
    FgAbelianGroup::from_factors(rank, factors)
}

pub fn factors(a: &FgAbelianGroup) -> Vec<u64> {
    a.invariant_factors().iter().map(|d| d.to_u64().unwrap()).collect()
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// All residue tuples of a finite group given by cyclic orders.
pub fn elements(orders: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for &d in orders {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..d).map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out
}

fn killed_by(x: &[u64], n: u64, orders: &[u64]) -> bool {
    x.iter().zip(orders).all(|(&xi, &d)| (xi * n).is_multiple_of(d))
}

/// `|Hom(A, B)[n]|` for finite A, B by enumerating candidate generator images:
/// a homomorphism out of `⊕ Z/aᵢ` is a choice of `xᵢ ∈ B` with `aᵢ·xᵢ = 0`.
pub fn brute_hom_torsion_count(a: &[u64], b: &[u64], n: u64) -> u64 {
    let elems = elements(b);
    a.iter()
        .map(|&ai| {
            elems
                .iter()
                .filter(|x| killed_by(x, ai, b) && killed_by(x, n, b))
                .count() as u64
        })
        .product()
}

/// `|H[n]|` for a finite group in canonical form.
pub fn torsion_count(h: &FgAbelianGroup, n: u64) -> u64 {
    factors(h).iter().map(|&d| gcd(n, d)).product()
}

/// Diagonal presentation matrix of `B = Z^s ⊕ ⊕ Z/b_j` on `s + t` generators.
fn presentation(b: &FgAbelianGroup) -> IntMatrix {
    let n = b.num_summands();
    let mut diag: Vec<BigInt> = vec![BigInt::from(0); b.free_rank()];
    diag.extend(b.invariant_factors().iter().map(|d| BigInt::from(d.clone())));
    IntMatrix::diagonal(n, n, &diag)
}

fn block_diagonal(blocks: &[IntMatrix]) -> IntMatrix {
    let rows: usize = blocks.iter().map(IntMatrix::rows).sum();
    let cols: usize = blocks.iter().map(IntMatrix::cols).sum();
    let mut out = IntMatrix::zeros(rows, cols);
    let (mut r0, mut c0) = (0, 0);
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                out.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
        r0 += b.rows();
        c0 += b.cols();
    }
    out
}

/// `Ext(A, B) = ⊕ B / aᵢB`, each summand as the cokernel of `[D_B | aᵢ·I]`.
pub fn matrix_ext(a: &FgAbelianGroup, b: &FgAbelianGroup) -> FgAbelianGroup {
    let d_b = presentation(b);
    let n = d_b.rows();
    let blocks: Vec<IntMatrix> = factors(a)
        .iter()
        .map(|&ai| d_b.hstack(&IntMatrix::identity(n).scaled(&BigInt::from(ai))).unwrap())
        .collect();
    if blocks.is_empty() {
        return FgAbelianGroup::trivial();
    }
    linalg::cokernel_invariants(&block_diagonal(&blocks))
}

/// `L₁/L₂` for lattices given by generating columns with `L₂ ⊆ L₁`.
fn lattice_quotient(big: &IntMatrix, small: &IntMatrix) -> FgAbelianGroup {
    let y = linalg::solve(big, small).unwrap().expect("L2 inside L1");
    linalg::cokernel_invariants(&y.hstack(&linalg::kernel_basis(big)).unwrap())
}

/// `B[a] = {x : a·x = 0}` as `{x ∈ Z^n : a·x ∈ im D_B} / im D_B`.
fn a_torsion(b: &FgAbelianGroup, a: u64) -> FgAbelianGroup {
    let d_b = presentation(b);
    let n = d_b.rows();
    let stacked = IntMatrix::identity(n).scaled(&BigInt::from(a)).hstack(&d_b).unwrap();
    let l1 = linalg::kernel_basis(&stacked).row_block(0..n);
    lattice_quotient(&l1.hstack(&d_b).unwrap(), &d_b)
}

/// `Hom(A, B) = B^r ⊕ ⊕ B[aᵢ]` by lattice computations.
pub fn matrix_hom(a: &FgAbelianGroup, b: &FgAbelianGroup) -> FgAbelianGroup {
    let mut out = FgAbelianGroup::trivial();
    for _ in 0..a.free_rank() {
        out = out.direct_sum(b);
    }
    for ai in factors(a) {
        out = out.direct_sum(&a_torsion(b, ai));
    }
    out
}

/// Finite groups whose cyclic factors come from {2,3,4,6,8}, order ≤ 64.
pub fn small_finite_groups() -> Vec<FgAbelianGroup> {
    let choices = [2u64, 3, 4, 6, 8];
    let mut seen: Vec<FgAbelianGroup> = vec![FgAbelianGroup::trivial()];
    let mut frontier = vec![(vec![], 1u64)];
    while let Some((orders, size)) = frontier.pop() {
        for &c in &choices {
            if size * c <= 64 && orders.last().is_none_or(|&l| l <= c) {
                let mut next: Vec<u64> = orders.clone();
                next.push(c);
                let grp = g(0, &next);
                if !seen.contains(&grp) {
                    seen.push(grp);
                }
                frontier.push((next, size * c));
            }
        }
    }
    seen
}

pub fn arb_small_group() -> impl Strategy<Value = FgAbelianGroup> {
    (0usize..=1, prop::collection::vec(prop::sample::select(vec![2u64, 3, 4, 6, 8]), 0..3))
        .prop_map(|(r, f)| g(r, &f))
}

pub fn arb_matrix(max_dim: usize) -> impl Strategy<Value = IntMatrix> {
    (0..=max_dim, 0..=max_dim).prop_flat_map(|(r, c)| {
        prop::collection::vec(-9i64..=9, r * c)
            .prop_map(move |flat| IntMatrix::from_i64(r, c, &flat).unwrap())
    })
}

/// A valid random 2-complex: a spanning tree over the vertices, extra edges,
/// and faces whose words are closed walks (a random walk from the basepoint
/// closed up along the tree).
pub fn arb_complex() -> impl Strategy<Value = CwComplex2> {
    (
        1usize..=4,
        prop::collection::vec((any::<u8>(), any::<u8>()), 0..4),
        prop::collection::vec(prop::collection::vec(any::<u8>(), 0..7), 0..3),
        prop::collection::vec(any::<u8>(), 4),
    )
        .prop_map(|(nv, extra, walks, parents)| {
            let vertices: Vec<String> = (0..nv).map(|i| format!("v{i}")).collect();
            let mut edges = Vec::new();
            let mut parent = vec![0usize; nv];
            for i in 1..nv {
                parent[i] = parents[i] as usize % i;
                edges.push((parent[i], i));
            }
            for (s, d) in extra {
                edges.push((s as usize % nv, d as usize % nv));
            }
            // a loop so that nontrivial words exist even on one vertex
            edges.push((0, 0));

            let mut faces = Vec::new();
            for (f, steps) in walks.iter().enumerate() {
                let mut at = 0usize;
                let mut word: Vec<(usize, Sign)> = Vec::new();
                for &step in steps {
                    let incident: Vec<(usize, Sign, usize)> = edges
                        .iter()
                        .enumerate()
                        .flat_map(|(j, &(s, d))| {
                            let mut v = Vec::new();
                            if s == at {
                                v.push((j, Sign::Plus, d));
                            }
                            if d == at {
                                v.push((j, Sign::Minus, s));
                            }
                            v
                        })
                        .collect();
                    let (j, sign, next) = incident[step as usize % incident.len()];
                    word.push((j, sign));
                    at = next;
                }
                // walk back to vertex 0 along tree edges
                while at != 0 {
                    let j = at - 1; // tree edge of vertex `at` is edges[at-1] = (parent, at)
                    word.push((j, Sign::Minus));
                    at = parent[at];
                }
                faces.push(Face {
                    name: format!("f{f}"),
                    word: word
                        .into_iter()
                        .map(|(j, s)| Letter::new(format!("e{j}"), s))
                        .collect(),
                });
            }
            CwComplex2 {
                name: "random".into(),
                vertices,
                edges: edges
                    .iter()
                    .enumerate()
                    .map(|(j, &(s, d))| Edge {
                        name: format!("e{j}"),
                        src: format!("v{s}"),
                        dst: format!("v{d}"),
                    })
                    .collect(),
                faces,
                basepoint: Some("v0".into()),
                higher_cells: vec![],
            }
        })
}

/// The torus subdivided with two vertices: the meridian is split in two.
pub fn two_vertex_torus() -> CwComplex2 {
    let e = |n: &str, s: &str, d: &str| Edge { name: n.into(), src: s.into(), dst: d.into() };
    CwComplex2 {
        name: "torus-2v".into(),
        vertices: vec!["p".into(), "q".into()],
        edges: vec![e("a1", "p", "q"), e("a2", "q", "p"), e("b", "p", "p"), e("c", "q", "q")],
        // a1 c a1^-1 b^-1 and a2 b a2^-1 c^-1: two squares glued into a torus
        faces: vec![
            Face { name: "f1".into(), word: vec![Letter::plus("a1"), Letter::plus("c"), Letter::minus("a1"), Letter::minus("b")] },
            Face { name: "f2".into(), word: vec![Letter::plus("a2"), Letter::plus("b"), Letter::minus("a2"), Letter::minus("c")] },
        ],
        basepoint: Some("p".into()),
        higher_cells: vec![],
    }
}

/// The Klein bottle subdivided like [`two_vertex_torus`] but with one square
/// glued with a twist.
pub fn two_vertex_klein() -> CwComplex2 {
    let mut k = two_vertex_torus();
    k.name = "klein-2v".into();
    k.faces[1].word = vec![Letter::plus("a2"), Letter::minus("b"), Letter::minus("a2"), Letter::minus("c")];
    k
}
