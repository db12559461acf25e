//! Exact integer matrices and Smith normal form.
//!
//! Every matrix entry is an unbounded [`BigInt`]. Intermediate values in a
//! Smith reduction can grow far beyond the input magnitudes, so there is no
//! fixed-width fast path.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::abelian::FgAbelianGroup;
use crate::error::LinalgError;

/// Dense row-major matrix of unbounded integers.
///
/// Zero rows or zero columns are allowed; such a matrix is the zero map to or
/// from the trivial module.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::ShapeMismatch {
                rows,
                cols,
                len: entries.len(),
            });
        }
        Ok(IntMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Diagonal `rows × cols` matrix with the given leading diagonal entries.
    pub fn diagonal(rows: usize, cols: usize, diag: &[BigInt]) -> Self {
        assert!(diag.len() <= rows.min(cols), "diagonal longer than matrix");
        let mut m = Self::zeros(rows, cols);
        for (i, d) in diag.iter().enumerate() {
            m.entries[i * cols + i] = d.clone();
        }
        m
    }

    /// Builds a matrix from rows of machine integers. Panics on ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            entries.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    /// `rows × cols` matrix read from a flat row-major slice.
    pub fn from_i64(rows: usize, cols: usize, flat: &[i64]) -> Result<Self, LinalgError> {
        Self::new(rows, cols, flat.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.entries[i * self.cols + j] = value;
    }

    fn at_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    /// Matrix product; `None` when inner dimensions disagree.
    pub fn checked_mul(&self, rhs: &IntMatrix) -> Option<IntMatrix> {
        if self.cols != rhs.rows {
            return None;
        }
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        *out.at_mut(i, j) += a * b;
                    }
                }
            }
        }
        Some(out)
    }

    /// Multiplies every entry by `k`.
    pub fn scaled(&self, k: &BigInt) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * k).collect(),
        }
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hstack(&self, rhs: &IntMatrix) -> Result<IntMatrix, LinalgError> {
        if self.rows != rhs.rows {
            return Err(LinalgError::Incompatible {
                op: "hstack",
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let cols = self.cols + rhs.cols;
        let mut out = IntMatrix::zeros(self.rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[i * cols + j] = self.get(i, j).clone();
            }
            for j in 0..rhs.cols {
                out.entries[i * cols + self.cols + j] = rhs.get(i, j).clone();
            }
        }
        Ok(out)
    }

    /// The sub-matrix made of rows `range`.
    pub fn row_block(&self, range: std::ops::Range<usize>) -> IntMatrix {
        let rows = range.len();
        let entries = self.entries[range.start * self.cols..range.end * self.cols].to_vec();
        IntMatrix {
            rows,
            cols: self.cols,
            entries,
        }
    }

    /// The sub-matrix made of columns `range`.
    pub fn col_block(&self, range: std::ops::Range<usize>) -> IntMatrix {
        let cols = range.len();
        let mut out = IntMatrix::zeros(self.rows, cols);
        for i in 0..self.rows {
            for (jj, j) in range.clone().enumerate() {
                out.entries[i * cols + jj] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        Ok(sign * a.get(n - 1, n - 1))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] -= k * row[src]
    fn sub_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let delta = k * self.get(src, j);
            *self.at_mut(dst, j) -= delta;
        }
    }

    /// col[dst] -= k * col[src]
    fn sub_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let delta = k * self.get(i, src);
            *self.at_mut(i, dst) -= delta;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let x = self.at_mut(i, j);
            *x = -std::mem::take(x);
        }
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs).unwrap_or_else(|| {
            panic!(
                "matrix product of {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )
        })
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ";")?;
            }
            for j in 0..self.cols {
                write!(f, " {}", self.get(i, j))?;
            }
        }
        write!(f, " ]")
    }
}

/// A Smith decomposition `u · a · v = s` of some matrix `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfDecomposition {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// Number of nonzero diagonal entries of `s`.
    pub rank: usize,
}

impl SnfDecomposition {
    /// Shape `(rows, cols)` of the decomposed matrix.
    pub fn source_shape(&self) -> (usize, usize) {
        (self.s.rows(), self.s.cols())
    }

    /// All `min(rows, cols)` diagonal entries of `s`, zeros included.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s.get(i, i).clone())
            .collect()
    }

    /// The nonzero diagonal entries (elementary divisors).
    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.s.get(i, i).clone()).collect()
    }
}

/// Position of a nonzero entry of minimal absolute value in `a[t.., t..]`.
fn min_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a.get(bi, bj).abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
            if x.abs().is_one() {
                return best;
            }
        }
    }
    best
}

/// Computes the Smith normal form of `a` with its unimodular transforms.
///
/// Row and column reduction pivoting on a nonzero entry of least absolute
/// value; `u` accumulates the row operations and `v` the column operations.
pub fn smith_normal_form(a: &IntMatrix) -> SnfDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut t = 0;

    while t < m.min(n) {
        let Some((pi, pj)) = min_pivot(&s, t) else {
            break;
        };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        let pivot = s.get(t, t).clone();
        let mut residue = false;
        for i in t + 1..m {
            if s.get(i, t).is_zero() {
                continue;
            }
            let q = s.get(i, t).div_floor(&pivot);
            s.sub_row_multiple(i, t, &q);
            u.sub_row_multiple(i, t, &q);
            residue |= !s.get(i, t).is_zero();
        }
        for j in t + 1..n {
            if s.get(t, j).is_zero() {
                continue;
            }
            let q = s.get(t, j).div_floor(&pivot);
            s.sub_col_multiple(j, t, &q);
            v.sub_col_multiple(j, t, &q);
            residue |= !s.get(t, j).is_zero();
        }
        if residue {
            // a smaller remainder now exists in row or column t
            continue;
        }

        // Row and column t are clear. Enforce divisibility of the rest.
        let offender = (t + 1..m).find(|&i| {
            (t + 1..n).any(|j| !s.get(i, j).is_multiple_of(&pivot))
        });
        if let Some(i) = offender {
            let minus_one = -BigInt::one();
            s.sub_row_multiple(t, i, &minus_one);
            u.sub_row_multiple(t, i, &minus_one);
            continue;
        }

        if pivot.is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }

    SnfDecomposition { s, u, v, rank: t }
}

/// Canonical form of `Z^rows / a·Z^cols`.
pub fn cokernel_invariants(a: &IntMatrix) -> FgAbelianGroup {
    let snf = smith_normal_form(a);
    FgAbelianGroup::from_snf_diagonal(&snf.elementary_divisors(), a.rows())
}

/// Dimension of the kernel of `a` acting on `Z^cols`.
pub fn kernel_rank(a: &IntMatrix) -> usize {
    a.cols() - smith_normal_form(a).rank
}

/// Columns form a basis of the integer kernel of `a` (`cols × nullity`).
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    snf.v.col_block(snf.rank..a.cols())
}

/// Some integer solution `x` of `a · x = b`, or `None` if none exists.
pub fn solve(a: &IntMatrix, b: &IntMatrix) -> Result<Option<IntMatrix>, LinalgError> {
    if a.rows() != b.rows() {
        return Err(LinalgError::Incompatible {
            op: "solve",
            left: (a.rows(), a.cols()),
            right: (b.rows(), b.cols()),
        });
    }
    // a = u⁻¹ s v⁻¹, so a x = b  <=>  s (v⁻¹ x) = u b.
    let snf = smith_normal_form(a);
    let ub = &snf.u * b;
    let mut z = IntMatrix::zeros(a.cols(), b.cols());
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            let rhs = ub.get(i, j);
            if i < snf.rank {
                let (q, r) = rhs.div_rem(snf.s.get(i, i));
                if !r.is_zero() {
                    return Ok(None);
                }
                z.set(i, j, q);
            } else if !rhs.is_zero() {
                return Ok(None);
            }
        }
    }
    Ok(Some(&snf.v * &z))
}

/// The subquotient `ker(outgoing) / im(incoming)` of `Z^n`.
///
/// Requires `outgoing · incoming = 0`. The kernel is given an explicit basis
/// from a Smith decomposition; the image is rewritten in that basis by an
/// exact solve and its cokernel is returned.
pub fn subquotient(outgoing: &IntMatrix, incoming: &IntMatrix) -> Result<FgAbelianGroup, LinalgError> {
    if outgoing.cols() != incoming.rows() {
        return Err(LinalgError::Incompatible {
            op: "subquotient",
            left: (outgoing.rows(), outgoing.cols()),
            right: (incoming.rows(), incoming.cols()),
        });
    }
    let basis = kernel_basis(outgoing);
    let coords = solve(&basis, incoming)?.ok_or(LinalgError::NotAComplex)?;
    Ok(cokernel_invariants(&coords))
}
