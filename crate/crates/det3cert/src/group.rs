//! The stabilizer of det3 and its action on End(W).
//!
//! Elements are written in the canonical shape A -> U (A or A^T) V with U, V
//! unimodular 3x3 matrices; [`StabElement::to_endo`] realizes them as 9x9
//! matrices on W. Diagonal one-parameter curves t -> diag(t^l) m diag(t^r)
//! drive the compression patterns to zero, which is the destabilization
//! argument certified by [`DiagonalCurve::min_exponent`].

use num_traits::Zero;

use crate::error::Error;
use crate::formmatrix::FormMatrix;
use crate::forms::{Endo, Form};
use crate::linalg::{random_unimodular, Matrix};
use crate::rng::SplitMix64;
use crate::scalar::{scalar, Scalar};

/// A stabilizer element A -> U (A^T if transpose_first) V with
/// det U = det V = 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabElement {
    u: Matrix,
    v: Matrix,
    transpose_first: bool,
}

impl StabElement {
    pub fn new(u: Matrix, v: Matrix, transpose_first: bool) -> Result<Self, Error> {
        if (u.rows(), u.cols()) != (3, 3) || (v.rows(), v.cols()) != (3, 3) {
            return Err(Error::NotUnimodular);
        }
        if u.det3x3() != scalar(1) || v.det3x3() != scalar(1) {
            return Err(Error::NotUnimodular);
        }
        Ok(StabElement {
            u,
            v,
            transpose_first,
        })
    }

    pub fn identity() -> Self {
        StabElement {
            u: Matrix::identity(3),
            v: Matrix::identity(3),
            transpose_first: false,
        }
    }

    /// The pure transposition A -> A^T.
    pub fn transposition() -> Self {
        StabElement {
            u: Matrix::identity(3),
            v: Matrix::identity(3),
            transpose_first: true,
        }
    }

    /// Random element: unimodular U, V from shear products plus a random
    /// transpose bit.
    pub fn random(rng: &mut SplitMix64) -> Self {
        let u = random_sl3_with(rng);
        let v = random_sl3_with(rng);
        let transpose_first = rng.next_bool();
        StabElement {
            u,
            v,
            transpose_first,
        }
    }

    pub fn u(&self) -> &Matrix {
        &self.u
    }

    pub fn v(&self) -> &Matrix {
        &self.v
    }

    pub fn transpose_first(&self) -> bool {
        self.transpose_first
    }

    /// Group law: the composite "apply `other`, then `self`".
    pub fn compose(&self, other: &StabElement) -> StabElement {
        if !self.transpose_first {
            StabElement {
                u: self.u.mul(&other.u),
                v: other.v.mul(&self.v),
                transpose_first: other.transpose_first,
            }
        } else {
            StabElement {
                u: self.u.mul(&other.v.transpose()),
                v: other.u.transpose().mul(&self.v),
                transpose_first: !other.transpose_first,
            }
        }
    }

    /// The 9x9 matrix of p -> U (p^T?) V on W.
    pub fn to_endo(&self) -> Endo {
        let mut m = Matrix::zero(9, 9);
        for r in 0..3 {
            for c in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        let coeff = self.u.get(r, k) * self.v.get(l, c);
                        if coeff.is_zero() {
                            continue;
                        }
                        // input slot: p[k][l], or p[l][k] when transposing first
                        let src = if self.transpose_first { 3 * l + k } else { 3 * k + l };
                        let cur = m.get(3 * r + c, src) + coeff;
                        m.set(3 * r + c, src, cur);
                    }
                }
            }
        }
        Endo::new(m)
    }
}

/// The 9x9 matrix of transposition p -> p^T.
pub fn transposition_endo() -> Endo {
    StabElement::transposition().to_endo()
}

/// Deterministic unimodular 3x3 sample for the given seed: a product of
/// 4..=8 elementary shears, so the determinant is exactly 1.
pub fn random_sl3(seed: u64) -> Matrix {
    random_sl3_with(&mut SplitMix64::new(seed))
}

/// As [`random_sl3`], drawing from a caller-owned stream.
pub fn random_sl3_with(rng: &mut SplitMix64) -> Matrix {
    let steps = rng.next_in_range(4, 8) as usize;
    random_unimodular(3, steps, rng)
}

/// Left action of the stabilizer on End(W): h . a = to_endo(h) * a.
pub fn act_left(h: &StabElement, a: &Endo) -> Endo {
    h.to_endo().compose(a)
}

/// The endomorphism p -> M p of W for a 3x3 matrix M.
pub fn left_mul_endo(m: &Matrix) -> Endo {
    assert_eq!((m.rows(), m.cols()), (3, 3));
    let mut out = Matrix::zero(9, 9);
    for r in 0..3 {
        for c in 0..3 {
            for k in 0..3 {
                out.set(3 * r + c, 3 * k + c, m.get(r, k).clone());
            }
        }
    }
    Endo::new(out)
}

/// The endomorphism p -> p N of W for a 3x3 matrix N.
pub fn right_mul_endo(n: &Matrix) -> Endo {
    assert_eq!((n.rows(), n.cols()), (3, 3));
    let mut out = Matrix::zero(9, 9);
    for r in 0..3 {
        for c in 0..3 {
            for l in 0..3 {
                out.set(3 * r + c, 3 * r + l, n.get(l, c).clone());
            }
        }
    }
    Endo::new(out)
}

/// Basis of the traceless 3x3 matrices: the six off-diagonal units and
/// diag(1,-1,0), diag(0,1,-1).
pub fn sl3_basis() -> Vec<Matrix> {
    let mut basis = Vec::with_capacity(8);
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                let mut m = Matrix::zero(3, 3);
                m.set(i, j, scalar(1));
                basis.push(m);
            }
        }
    }
    for d in 0..2 {
        let mut m = Matrix::zero(3, 3);
        m.set(d, d, scalar(1));
        m.set(d + 1, d + 1, scalar(-1));
        basis.push(m);
    }
    basis
}

/// A seeded singular endomorphism: U diag(1,..,1,0,..) V with unimodular
/// U, V, so the rank is exactly 9 - (number of zeroed slots) <= 8.
pub fn random_singular_endo(rng: &mut SplitMix64) -> Endo {
    let u = random_unimodular(9, 12, rng);
    let v = random_unimodular(9, 12, rng);
    let zeroed = rng.next_in_range(1, 3) as usize;
    let mut d = Matrix::identity(9);
    for k in 0..zeroed {
        d.set(8 - k, 8 - k, Scalar::zero());
    }
    Endo::new(u.mul(&d).mul(&v))
}

/// One-parameter diagonal curve diag(t^left) . m . diag(t^right).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiagonalCurve {
    left_exponents: [i64; 3],
    right_exponents: [i64; 3],
}

impl DiagonalCurve {
    pub fn new(left_exponents: [i64; 3], right_exponents: [i64; 3]) -> Self {
        DiagonalCurve {
            left_exponents,
            right_exponents,
        }
    }

    /// Entry (i, j) of diag(t^l) m diag(t^r) scales by t^(l_i + r_j); the
    /// minimum of that exponent over the nonzero entries of m decides
    /// whether the whole curve tends to 0 (result >= 1). `None` encodes
    /// +infinity, the zero matrix.
    pub fn min_exponent(&self, m: &FormMatrix) -> Option<i64> {
        assert_eq!(m.degree(), 1, "patterns are matrices of linear forms");
        let mut min: Option<i64> = None;
        for i in 0..3 {
            for j in 0..3 {
                if m.entry(i, j).is_zero() {
                    continue;
                }
                let e = self.left_exponents[i] + self.right_exponents[j];
                min = Some(match min {
                    Some(cur) => cur.min(e),
                    None => e,
                });
            }
        }
        min
    }
}

/// Compression pattern: image has zero third row.
pub fn compression_b1() -> FormMatrix {
    zero_out(&[(2, 0), (2, 1), (2, 2)])
}

/// Compression pattern: image has zero third column.
pub fn compression_b2() -> FormMatrix {
    zero_out(&[(0, 2), (1, 2), (2, 2)])
}

/// Compression pattern: generic first row and column, zero 2x2 lower-right
/// block.
pub fn compression_b3() -> FormMatrix {
    zero_out(&[(1, 1), (1, 2), (2, 1), (2, 2)])
}

/// Generic matrix with the listed slots forced to zero; the remaining slots
/// keep their own fresh variable, which covers all constants at once.
fn zero_out(slots: &[(usize, usize)]) -> FormMatrix {
    let entries: [[Form; 3]; 3] = std::array::from_fn(|r| {
        std::array::from_fn(|c| {
            if slots.contains(&(r, c)) {
                Form::zero(1)
            } else {
                Form::variable(3 * r + c + 1)
            }
        })
    });
    FormMatrix::new(entries).expect("degree 1 everywhere")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::det3;

    #[test]
    fn identity_maps_to_identity_endo() {
        assert_eq!(StabElement::identity().to_endo(), Endo::identity());
    }

    #[test]
    fn transposition_is_the_expected_permutation() {
        // swaps (x2,x4), (x3,x7), (x6,x8); fixes x1, x5, x9
        let perm: [usize; 9] = [0, 3, 6, 1, 4, 7, 2, 5, 8];
        let expected = Endo::new(Matrix::from_fn(9, 9, |r, c| {
            if perm[r] == c {
                scalar(1)
            } else {
                Scalar::zero()
            }
        }));
        assert_eq!(transposition_endo(), expected);
    }

    #[test]
    fn generators_fix_det3() {
        let mut rng = SplitMix64::new(1);
        let d = det3();
        for i in 0..40 {
            let mut h = StabElement::random(&mut rng);
            // force both components to show up
            h.transpose_first = i % 2 == 0;
            assert_eq!(d.compose_linear(&h.to_endo()), d);
        }
    }

    #[test]
    fn new_rejects_non_unimodular_factors() {
        let two = Matrix::from_int_rows(&[&[2, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let err = StabElement::new(two, Matrix::identity(3), false).unwrap_err();
        assert_eq!(err, Error::NotUnimodular);
    }

    #[test]
    fn to_endo_is_a_homomorphism() {
        let mut rng = SplitMix64::new(2);
        for _ in 0..20 {
            let h1 = StabElement::random(&mut rng);
            let h2 = StabElement::random(&mut rng);
            let composed = h1.compose(&h2).to_endo();
            let product = h1.to_endo().compose(&h2.to_endo());
            assert_eq!(composed, product);
        }
    }

    #[test]
    fn uv_part_orientation() {
        // to_endo of (U1 U2, V2 V1) equals the product of the two endos
        let mut rng = SplitMix64::new(4);
        let u1 = random_sl3_with(&mut rng);
        let v1 = random_sl3_with(&mut rng);
        let u2 = random_sl3_with(&mut rng);
        let v2 = random_sl3_with(&mut rng);
        let h1 = StabElement::new(u1.clone(), v1.clone(), false).unwrap();
        let h2 = StabElement::new(u2.clone(), v2.clone(), false).unwrap();
        let combined = StabElement::new(u1.mul(&u2), v2.mul(&v1), false).unwrap();
        assert_eq!(combined.to_endo(), h1.to_endo().compose(&h2.to_endo()));
    }

    #[test]
    fn random_sl3_is_deterministic_and_unimodular() {
        for seed in 0..20u64 {
            let a = random_sl3(seed);
            let b = random_sl3(seed);
            assert_eq!(a, b);
            assert_eq!(a.det3x3(), scalar(1));
        }
    }

    #[test]
    fn random_sl3_distinct_across_seeds() {
        let draws: Vec<Matrix> = (0..100).map(random_sl3).collect();
        let mut distinct = 0;
        for (i, a) in draws.iter().enumerate() {
            if draws[..i].iter().all(|b| b != a) {
                distinct += 1;
            }
        }
        assert!(distinct >= 95, "only {distinct}/100 distinct draws");
    }

    #[test]
    fn act_left_examples() {
        let mut rng = SplitMix64::new(6);
        let a = Endo::new(Matrix::from_fn(9, 9, |_, _| scalar(rng.next_in_range(-2, 2))));
        assert_eq!(act_left(&StabElement::identity(), &a), a);

        let d = det3();
        for _ in 0..10 {
            let h = StabElement::random(&mut rng);
            let moved = act_left(&h, &a);
            assert_eq!(d.compose_linear(&moved), d.compose_linear(&a));
        }

        let h1 = StabElement::random(&mut rng);
        let h2 = StabElement::random(&mut rng);
        assert_eq!(
            act_left(&h1, &act_left(&h2, &a)),
            act_left(&h1.compose(&h2), &a)
        );
    }

    #[test]
    fn left_right_mul_endos_match_direct_computation() {
        let mut rng = SplitMix64::new(8);
        let m = random_sl3_with(&mut rng);
        let n = random_sl3_with(&mut rng);
        let p: Vec<Scalar> = (0..9).map(|_| scalar(rng.next_in_range(-4, 4))).collect();
        let pm = Matrix::from_fn(3, 3, |r, c| p[3 * r + c].clone());

        let lp = left_mul_endo(&m).apply_vec(&p);
        let expected = m.mul(&pm);
        for r in 0..3 {
            for c in 0..3 {
                assert_eq!(lp[3 * r + c], *expected.get(r, c));
            }
        }

        let rp = right_mul_endo(&n).apply_vec(&p);
        let expected = pm.mul(&n);
        for r in 0..3 {
            for c in 0..3 {
                assert_eq!(rp[3 * r + c], *expected.get(r, c));
            }
        }
    }

    #[test]
    fn sl3_basis_is_traceless_and_independent() {
        let basis = sl3_basis();
        assert_eq!(basis.len(), 8);
        for m in &basis {
            assert!(m.trace().is_zero());
        }
        let rows: Vec<Vec<Scalar>> = basis
            .iter()
            .map(|m| (0..9).map(|i| m.get(i / 3, i % 3).clone()).collect())
            .collect();
        assert_eq!(crate::linalg::span_dim(&rows), 8);
    }

    #[test]
    fn random_singular_endo_has_low_rank() {
        let mut rng = SplitMix64::new(10);
        for _ in 0..10 {
            let a = random_singular_endo(&mut rng);
            assert!(crate::linalg::rank(a.matrix()) <= 8);
        }
    }

    #[test]
    fn destabilizing_curves_on_compression_patterns() {
        let c1 = DiagonalCurve::new([1, 1, -2], [0, 0, 0]);
        assert_eq!(c1.min_exponent(&compression_b1()), Some(1));

        let c2 = DiagonalCurve::new([0, 0, 0], [1, 1, -2]);
        assert_eq!(c2.min_exponent(&compression_b2()), Some(1));

        let c3 = DiagonalCurve::new([2, -1, -1], [2, -1, -1]);
        assert_eq!(c3.min_exponent(&compression_b3()), Some(1));
    }

    #[test]
    fn min_exponent_edge_cases() {
        let trivial = DiagonalCurve::new([0, 0, 0], [0, 0, 0]);
        assert_eq!(trivial.min_exponent(&FormMatrix::generic()), Some(0));
        assert_eq!(trivial.min_exponent(&FormMatrix::zero(1)), None);
        // the b1 curve does not send the full generic matrix to zero
        let c1 = DiagonalCurve::new([1, 1, -2], [0, 0, 0]);
        assert_eq!(c1.min_exponent(&FormMatrix::generic()), Some(-2));
    }
}
