//! The numerical invariants behind the separation arguments.
//!
//! For a cubic P on W these are: the derivative-span dimension nu(P), the
//! stabilizer Lie-algebra dimension (the kernel of a 165x81 linear system)
//! and the orbit dimension 80 - dim. The trace function [`tau`] and its
//! symmetrization [`tau_sym`] witness semistability of points of P(E)
//! under the stabilizer action.

use num_traits::Zero;

use crate::error::Error;
use crate::formmatrix::Point;
use crate::forms::{monomial_basis, Endo, Form};
use crate::group::transposition_endo;
use crate::linalg::{kernel, rank, Matrix, Subspace};
use crate::rng::SplitMix64;
use crate::scalar::Scalar;

/// The three invariants of one cubic, bundled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InvariantProfile {
    pub nu: usize,
    pub stab_lie_dim: usize,
    pub orbit_dim: usize,
}

/// Matrix whose nine rows are the coefficient vectors of the partial
/// derivatives of `p`; for a cubic this is the 9x45 derivative matrix.
pub fn derivative_span_matrix(p: &Form) -> Matrix {
    assert!(p.degree() >= 1);
    let width = monomial_basis(p.degree() - 1).len();
    let rows: Vec<Vec<Scalar>> = (1..=9)
        .map(|i| p.partial_derivative(i).coeff_vector())
        .collect();
    debug_assert!(rows.iter().all(|r| r.len() == width));
    Matrix::from_rows(&rows)
}

/// Dimension of the span of the nine partial derivatives. Defined as 0 for
/// the zero form.
pub fn nu(p: &Form) -> usize {
    if p.is_zero() {
        return 0;
    }
    rank(&derivative_span_matrix(p))
}

/// The linear system cutting out the stabilizer Lie algebra
/// { a in End(W) | sum_i dP/dx_i * (a x)_i = 0 }.
///
/// Rows are indexed by the degree-(deg P) monomials in canonical order
/// (165 rows for a cubic); columns by the 81 entries of `a`, row-major, so
/// column 9i+j carries the coefficient vector of dP/dx_i * x_j.
pub fn stab_system_matrix(p: &Form) -> Matrix {
    let height = monomial_basis(p.degree()).len();
    let mut m = Matrix::zero(height, 81);
    for i in 0..9 {
        let partial = p.partial_derivative(i + 1);
        for j in 0..9 {
            let product = partial.mul(&Form::variable(j + 1));
            let col = product.coeff_vector();
            for (row, value) in col.into_iter().enumerate() {
                if !value.is_zero() {
                    m.set(row, 9 * i + j, value);
                }
            }
        }
    }
    m
}

/// Kernel of the stabilizer system: the Lie algebra of the stabilizer of
/// `p` inside End(W), as a subspace of the 81-dimensional coordinate space.
pub fn stab_lie_kernel(p: &Form) -> Result<Subspace, Error> {
    if p.is_zero() {
        return Err(Error::ZeroForm);
    }
    Ok(kernel(&stab_system_matrix(p)))
}

/// Dimension of the stabilizer Lie algebra of a nonzero cubic.
pub fn stab_lie_dim(p: &Form) -> Result<usize, Error> {
    Ok(stab_lie_kernel(p)?.dim())
}

/// Projective orbit dimension, 80 - stab_lie_dim.
pub fn orbit_dim(p: &Form) -> Result<usize, Error> {
    Ok(80 - stab_lie_dim(p)?)
}

/// All three invariants in one pass.
pub fn profile(p: &Form) -> Result<InvariantProfile, Error> {
    let stab = stab_lie_dim(p)?;
    Ok(InvariantProfile {
        nu: nu(p),
        stab_lie_dim: stab,
        orbit_dim: 80 - stab,
    })
}

fn apply_at(a: &Endo, p: &Point) -> Matrix {
    let image = a.apply_vec(p.coords());
    Matrix::from_fn(3, 3, |r, c| image[3 * r + c].clone())
}

/// The trace invariant
/// Tr( a(p1) adj(a(p2)) a(p3) adj(a(p1+p2+p3)) ).
///
/// Invariant under a -> U a(.) V for unimodular U, V; homogeneous of
/// degree 6 in a (the two adjugates are quadratic in the entries).
pub fn tau(a: &Endo, p1: &Point, p2: &Point, p3: &Point) -> Scalar {
    let sum = p1.add(p2).add(p3);
    let m1 = apply_at(a, p1);
    let m2 = apply_at(a, p2).adjugate3x3();
    let m3 = apply_at(a, p3);
    let m4 = apply_at(a, &sum).adjugate3x3();
    m1.mul(&m2).mul(&m3).mul(&m4).trace()
}

/// Fully stabilizer-invariant version: tau(a) + tau(T a), with T the
/// transposition of W.
pub fn tau_sym(a: &Endo, p1: &Point, p2: &Point, p3: &Point) -> Scalar {
    let ta = transposition_endo().compose(a);
    tau(a, p1, p2, p3) + tau(&ta, p1, p2, p3)
}

const WITNESS_ATTEMPTS: usize = 32;
const WITNESS_COORD_BOUND: i64 = 5;

/// Search for a point triple with tau_sym(a) != 0, which certifies that
/// [a] is semistable. Samples up to 32 integer triples with coordinates in
/// -5..=5, deterministically from the seed. `None` means no witness was
/// found and is inconclusive; it never proves instability.
pub fn semistable_witness(a: &Endo, seed: u64) -> Option<[Point; 3]> {
    let mut rng = SplitMix64::new(seed);
    for _ in 0..WITNESS_ATTEMPTS {
        let points: [Point; 3] = std::array::from_fn(|_| {
            Point::from_ints(std::array::from_fn(|_| {
                rng.next_in_range(-WITNESS_COORD_BOUND, WITNESS_COORD_BOUND)
            }))
        });
        if !tau_sym(a, &points[0], &points[1], &points[2]).is_zero() {
            return Some(points);
        }
    }
    None
}
