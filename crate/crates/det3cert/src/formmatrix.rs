//! 3x3 matrices of forms.
//!
//! A [`FormMatrix`] with degree-1 entries is the "matrix of linear forms"
//! view of an endomorphism of W: the entry at (r, c) is the linear form
//! giving coordinate 3r+c of the image. [`FormMatrix::from_endo`] and
//! [`FormMatrix::to_endo`] convert between this view and the 9x9 [`Endo`]
//! view; the determinant of the matrix view equals the composite
//! `det3 ∘ a` of the endo view, which ties the two pictures together and is
//! pinned by tests. Adjugates are computed by explicit 2x2 cofactors so
//! everything stays inside the polynomial ring.

use crate::error::Error;
use crate::forms::{Endo, Form};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// 3x3 matrix with form entries of one common degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormMatrix {
    degree: u32,
    entries: [[Form; 3]; 3],
}

/// A point of W, the space of 3x3 matrices, in x1..x9 coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Point {
    coords: [Scalar; 9],
}

impl Point {
    pub fn new(coords: [Scalar; 9]) -> Self {
        Point { coords }
    }

    pub fn from_ints(coords: [i64; 9]) -> Self {
        Point::new(coords.map(crate::scalar::scalar))
    }

    pub fn coords(&self) -> &[Scalar; 9] {
        &self.coords
    }

    pub fn add(&self, other: &Point) -> Point {
        let mut coords = self.coords.clone();
        for (c, o) in coords.iter_mut().zip(&other.coords) {
            *c += o;
        }
        Point::new(coords)
    }

    /// Reshape into the 3x3 matrix the coordinates describe (row-major).
    pub fn as_matrix3(&self) -> Matrix {
        Matrix::from_fn(3, 3, |r, c| self.coords[3 * r + c].clone())
    }
}

impl FormMatrix {
    pub fn new(entries: [[Form; 3]; 3]) -> Result<Self, Error> {
        let degree = entries[0][0].degree();
        for row in &entries {
            for e in row {
                if e.degree() != degree {
                    return Err(Error::DegreeMismatch {
                        left: degree,
                        right: e.degree(),
                    });
                }
            }
        }
        Ok(FormMatrix { degree, entries })
    }

    pub fn zero(degree: u32) -> Self {
        FormMatrix {
            degree,
            entries: std::array::from_fn(|_| std::array::from_fn(|_| Form::zero(degree))),
        }
    }

    /// Diagonal matrix f * I.
    pub fn scalar_identity(f: &Form) -> Self {
        let mut m = FormMatrix::zero(f.degree());
        for i in 0..3 {
            m.entries[i][i] = f.clone();
        }
        m
    }

    /// The generic matrix: entries x1..x9 laid out row-major.
    pub fn generic() -> Self {
        FormMatrix {
            degree: 1,
            entries: std::array::from_fn(|r| {
                std::array::from_fn(|c| Form::variable(3 * r + c + 1))
            }),
        }
    }

    /// The generic skew-symmetric matrix
    /// rows (0, x1, -x2), (-x1, 0, x3), (x2, -x3, 0).
    pub fn generic_skew() -> Self {
        let x = |i: usize| Form::variable(i);
        let z = || Form::zero(1);
        FormMatrix {
            degree: 1,
            entries: [
                [z(), x(1), x(2).neg()],
                [x(1).neg(), z(), x(3)],
                [x(2), x(3).neg(), z()],
            ],
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn entry(&self, r: usize, c: usize) -> &Form {
        &self.entries[r][c]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Form::is_zero)
    }

    /// Entrywise map; the closure must send all nine entries to one degree.
    pub fn map(&self, mut f: impl FnMut(&Form) -> Form) -> FormMatrix {
        let entries = std::array::from_fn(|r| std::array::from_fn(|c| f(&self.entries[r][c])));
        FormMatrix::new(entries).expect("entrywise map must keep degrees uniform")
    }

    pub fn add(&self, other: &FormMatrix) -> Result<FormMatrix, Error> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        let mut out = self.clone();
        for r in 0..3 {
            for c in 0..3 {
                out.entries[r][c] = out.entries[r][c].add(&other.entries[r][c])?;
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> FormMatrix {
        self.map(Form::neg)
    }

    pub fn transpose(&self) -> FormMatrix {
        FormMatrix {
            degree: self.degree,
            entries: std::array::from_fn(|r| std::array::from_fn(|c| self.entries[c][r].clone())),
        }
    }

    /// Symbolic matrix product; degrees add.
    pub fn mul(&self, other: &FormMatrix) -> FormMatrix {
        let degree = self.degree + other.degree;
        let mut out = FormMatrix::zero(degree);
        for r in 0..3 {
            for c in 0..3 {
                let mut acc = Form::zero(degree);
                for k in 0..3 {
                    acc = acc
                        .add(&self.entries[r][k].mul(&other.entries[k][c]))
                        .expect("product degrees agree");
                }
                out.entries[r][c] = acc;
            }
        }
        out
    }

    /// Multiply every entry by one form.
    pub fn scale_form(&self, f: &Form) -> FormMatrix {
        self.map(|e| e.mul(f))
    }

    /// Left-multiply by a constant 3x3 matrix: M * self.
    pub fn left_mul_const(&self, m: &Matrix) -> FormMatrix {
        assert_eq!((m.rows(), m.cols()), (3, 3));
        let mut out = FormMatrix::zero(self.degree);
        for r in 0..3 {
            for c in 0..3 {
                let mut acc = Form::zero(self.degree);
                for k in 0..3 {
                    acc = acc
                        .add(&self.entries[k][c].scale(m.get(r, k)))
                        .expect("degrees agree");
                }
                out.entries[r][c] = acc;
            }
        }
        out
    }

    /// Right-multiply by a constant 3x3 matrix: self * N.
    pub fn right_mul_const(&self, n: &Matrix) -> FormMatrix {
        assert_eq!((n.rows(), n.cols()), (3, 3));
        let mut out = FormMatrix::zero(self.degree);
        for r in 0..3 {
            for c in 0..3 {
                let mut acc = Form::zero(self.degree);
                for k in 0..3 {
                    acc = acc
                        .add(&self.entries[r][k].scale(n.get(k, c)))
                        .expect("degrees agree");
                }
                out.entries[r][c] = acc;
            }
        }
        out
    }

    /// Determinant by cofactor expansion along the first row; degree 3d.
    pub fn det(&self) -> Form {
        let e = &self.entries;
        let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
            e[r1][c1]
                .mul(&e[r2][c2])
                .sub(&e[r1][c2].mul(&e[r2][c1]))
                .expect("equal degrees")
        };
        e[0][0]
            .mul(&minor(1, 2, 1, 2))
            .sub(&e[0][1].mul(&minor(1, 2, 0, 2)))
            .and_then(|acc| acc.add(&e[0][2].mul(&minor(1, 2, 0, 1))))
            .expect("equal degrees")
    }

    /// Adjugate: the transposed cofactor matrix, computed from nine
    /// symbolic 2x2 determinants; entries have degree 2d.
    pub fn adjugate(&self) -> FormMatrix {
        let e = &self.entries;
        let cof = |r: usize, c: usize| {
            let (r1, r2) = ((r + 1) % 3, (r + 2) % 3);
            let (c1, c2) = ((c + 1) % 3, (c + 2) % 3);
            // cyclic index choice carries the (-1)^{r+c} sign
            e[r1][c1]
                .mul(&e[r2][c2])
                .sub(&e[r1][c2].mul(&e[r2][c1]))
                .expect("equal degrees")
        };
        let entries: [[Form; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| cof(j, i)));
        FormMatrix::new(entries).expect("cofactors share one degree")
    }

    pub fn trace(&self) -> Form {
        self.entries[0][0]
            .add(&self.entries[1][1])
            .and_then(|s| s.add(&self.entries[2][2]))
            .expect("diagonal degrees agree")
    }

    /// Evaluate every entry at a point of W.
    pub fn eval(&self, p: &Point) -> Matrix {
        Matrix::from_fn(3, 3, |r, c| self.entries[r][c].eval(p.coords()))
    }

    /// Substitute the endomorphism into every entry: the matrix of
    /// p -> self(a(p)).
    pub fn compose(&self, a: &Endo) -> FormMatrix {
        self.map(|e| e.compose_linear(a))
    }

    /// Matrix-of-linear-forms view of an endomorphism: entry (r, c) is
    /// coordinate 3r+c of the image, as a linear form.
    pub fn from_endo(a: &Endo) -> FormMatrix {
        let entries: [[Form; 3]; 3] = std::array::from_fn(|r| {
            std::array::from_fn(|c| {
                let mut f = Form::zero(1);
                let row = 3 * r + c;
                for j in 0..9 {
                    let coeff = a.entry(row, j);
                    if !num_traits::Zero::is_zero(coeff) {
                        f = f
                            .add(&Form::variable(j + 1).scale(coeff))
                            .expect("degree 1");
                    }
                }
                f
            })
        });
        FormMatrix { degree: 1, entries }
    }

    /// Inverse of [`FormMatrix::from_endo`]; requires degree-1 entries.
    pub fn to_endo(&self) -> Result<Endo, Error> {
        if self.degree != 1 {
            return Err(Error::DegreeViolation {
                expected: 1,
                got: self.degree,
            });
        }
        let mut m = Matrix::zero(9, 9);
        for r in 0..3 {
            for c in 0..3 {
                for (e, coeff) in self.entries[r][c].terms() {
                    let var = e
                        .exponents()
                        .iter()
                        .position(|&x| x == 1)
                        .expect("degree-1 monomial");
                    m.set(3 * r + c, var, coeff.clone());
                }
            }
        }
        Ok(Endo::new(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{det3, p2};
    use crate::rng::SplitMix64;
    use crate::scalar::scalar;

    fn x(i: usize) -> Form {
        Form::variable(i)
    }

    fn random_linear_matrix(rng: &mut SplitMix64) -> FormMatrix {
        let entries: [[Form; 3]; 3] = std::array::from_fn(|_| {
            std::array::from_fn(|_| {
                let mut f = Form::zero(1);
                for j in 1..=9 {
                    let c = rng.next_in_range(-2, 2);
                    if c != 0 {
                        f = f.add(&x(j).scale(&scalar(c))).unwrap();
                    }
                }
                f
            })
        });
        FormMatrix::new(entries).unwrap()
    }

    #[test]
    fn det_of_generic_is_det3() {
        assert_eq!(FormMatrix::generic().det(), det3());
    }

    #[test]
    fn det_of_generic_skew_vanishes() {
        let d = FormMatrix::generic_skew().det();
        assert!(d.is_zero());
        assert_eq!(d.degree(), 3);
    }

    #[test]
    fn det_of_scalar_identity() {
        let m = FormMatrix::scalar_identity(&x(1));
        let cube = x(1).mul(&x(1)).mul(&x(1));
        assert_eq!(m.det(), cube);
    }

    #[test]
    fn adjugate_of_generic_skew_is_rank_one() {
        // u^T u with u = (x3, x2, x1)
        let u = [x(3), x(2), x(1)];
        let expected = FormMatrix::new(std::array::from_fn(|i| {
            std::array::from_fn(|j| u[i].mul(&u[j]))
        }))
        .unwrap();
        assert_eq!(FormMatrix::generic_skew().adjugate(), expected);
    }

    #[test]
    fn adjugate_of_scalar_identity() {
        let m = FormMatrix::scalar_identity(&x(1));
        let sq = x(1).mul(&x(1));
        assert_eq!(m.adjugate(), FormMatrix::scalar_identity(&sq));
    }

    #[test]
    fn adjugate_identity_on_random_linear_matrices() {
        let mut rng = SplitMix64::new(3);
        for _ in 0..10 {
            let m = random_linear_matrix(&mut rng);
            let adj = m.adjugate();
            let det = m.det();
            let lhs = m.mul(&adj);
            let rhs = FormMatrix::scalar_identity(&det);
            assert_eq!(lhs, rhs);
            assert_eq!(adj.mul(&m), rhs);
        }
    }

    #[test]
    fn trace_examples() {
        let m = FormMatrix::scalar_identity(&x(1));
        assert_eq!(m.trace(), x(1).scale(&scalar(3)));
        let zero = FormMatrix::zero(1);
        assert!(zero.mul(&FormMatrix::generic()).is_zero());
    }

    #[test]
    fn trace_of_adjugate_times_symmetric_pencil_is_twice_p2() {
        let a = FormMatrix::generic_skew();
        let s = crate::boundary::p2_pencil().1;
        let t = a.adjugate().mul(&s).trace();
        assert_eq!(t, p2().scale(&scalar(2)));
    }

    #[test]
    fn eval_examples() {
        let e1 = Point::from_ints([1, 0, 0, 0, 0, 0, 0, 0, 0]);
        let m = FormMatrix::generic().eval(&e1);
        for r in 0..3 {
            for c in 0..3 {
                let expect = if (r, c) == (0, 0) { scalar(1) } else { scalar(0) };
                assert_eq!(*m.get(r, c), expect);
            }
        }

        // alpha = beta = gamma = 1
        let p = Point::from_ints([1, 1, 1, 0, 0, 0, 0, 0, 0]);
        let skew = FormMatrix::generic_skew().eval(&p);
        let expected = Matrix::from_int_rows(&[&[0, 1, -1], &[-1, 0, 1], &[1, -1, 0]]);
        assert_eq!(skew, expected);

        let z = FormMatrix::zero(1).eval(&p);
        assert!(z.is_zero());
    }

    #[test]
    fn endo_round_trip() {
        assert_eq!(FormMatrix::from_endo(&Endo::identity()), FormMatrix::generic());

        let mut rng = SplitMix64::new(9);
        for _ in 0..10 {
            let a = Endo::new(Matrix::from_fn(9, 9, |_, _| scalar(rng.next_in_range(-3, 3))));
            let m = FormMatrix::from_endo(&a);
            assert_eq!(m.to_endo().unwrap(), a);
        }
    }

    #[test]
    fn to_endo_rejects_wrong_degree() {
        let quad = FormMatrix::scalar_identity(&x(1).mul(&x(1)));
        assert_eq!(
            quad.to_endo().unwrap_err(),
            Error::DegreeViolation { expected: 1, got: 2 }
        );
    }

    #[test]
    fn generic_skew_endo_transcription() {
        // p -> [[0, p1, -p2], [-p1, 0, p3], [p2, -p3, 0]] written as a 9x9
        let b = Endo::from_int_rows(&[
            &[0, 0, 0, 0, 0, 0, 0, 0, 0],
            &[1, 0, 0, 0, 0, 0, 0, 0, 0],
            &[0, -1, 0, 0, 0, 0, 0, 0, 0],
            &[-1, 0, 0, 0, 0, 0, 0, 0, 0],
            &[0, 0, 0, 0, 0, 0, 0, 0, 0],
            &[0, 0, 1, 0, 0, 0, 0, 0, 0],
            &[0, 1, 0, 0, 0, 0, 0, 0, 0],
            &[0, 0, -1, 0, 0, 0, 0, 0, 0],
            &[0, 0, 0, 0, 0, 0, 0, 0, 0],
        ]);
        assert_eq!(FormMatrix::from_endo(&b), FormMatrix::generic_skew());
    }

    #[test]
    fn skew_symmetry() {
        let b = FormMatrix::generic_skew();
        assert!(b.add(&b.transpose()).unwrap().is_zero());
    }

    #[test]
    fn eval_commutes_with_mul_and_det() {
        let mut rng = SplitMix64::new(21);
        for _ in 0..10 {
            let a = random_linear_matrix(&mut rng);
            let b = random_linear_matrix(&mut rng);
            let p = Point::new(std::array::from_fn(|_| scalar(rng.next_in_range(-3, 3))));
            assert_eq!(a.mul(&b).eval(&p), a.eval(&p).mul(&b.eval(&p)));
            assert_eq!(a.det().eval(p.coords()), a.eval(&p).det3x3());
        }
    }

    #[test]
    fn det_is_multiplicative() {
        let mut rng = SplitMix64::new(33);
        for _ in 0..5 {
            let a = random_linear_matrix(&mut rng);
            let b = random_linear_matrix(&mut rng);
            assert_eq!(a.mul(&b).det(), a.det().mul(&b.det()));
        }
    }

    #[test]
    fn det_of_endo_view_is_composition() {
        let mut rng = SplitMix64::new(17);
        for _ in 0..10 {
            let a = Endo::new(Matrix::from_fn(9, 9, |_, _| scalar(rng.next_in_range(-2, 2))));
            let via_matrix = FormMatrix::from_endo(&a).det();
            let via_composition = det3().compose_linear(&a);
            assert_eq!(via_matrix, via_composition);
        }
    }
}
