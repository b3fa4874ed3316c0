//! Limits into the boundary and the two tangent-space dimensions.
//!
//! [`pencil_det`] expands det(A + tS) exactly by powers of t; the projective
//! limit as t -> 0 is the form at the lowest surviving power, which is how
//! the degenerate cubic p2 arises from the skew pencil. The two tangent
//! computations at the generic skew point both land on 34: the first-order
//! deformations preserving det(b + tc) = O(t^2), and the tangent space of
//! the group orbit through [b]. Both are returned as projective dimensions
//! (affine dimension minus one).

use std::collections::BTreeMap;

use crate::error::Error;
use crate::formmatrix::FormMatrix;
use crate::forms::{Endo, Form};
use crate::group::sl3_basis;
use crate::linalg::{kernel, span_dim, Matrix, Subspace};
use crate::scalar::Scalar;

/// Polynomial family of forms: a finitely supported map t-exponent -> Form,
/// all of one degree. Stored forms are nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveForm {
    degree: u32,
    coeffs: BTreeMap<u32, Form>,
}

impl CurveForm {
    pub fn new(degree: u32) -> Self {
        CurveForm {
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// Add a form at the given power of t; zero contributions are dropped.
    pub fn insert(&mut self, power: u32, f: Form) {
        assert_eq!(f.degree(), self.degree, "curve coefficients share a degree");
        if f.is_zero() {
            return;
        }
        match self.coeffs.entry(power) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(f);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get().add(&f).expect("degrees agree");
                if sum.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn support(&self) -> Vec<u32> {
        self.coeffs.keys().copied().collect()
    }

    /// Coefficient at t^power (zero form if absent).
    pub fn coeff(&self, power: u32) -> Form {
        self.coeffs
            .get(&power)
            .cloned()
            .unwrap_or_else(|| Form::zero(self.degree))
    }

    /// The form at the smallest t-exponent: the projective limit of the
    /// family [c(t)] as t -> 0. An identically zero family has no limit.
    pub fn limit(&self) -> Result<&Form, Error> {
        self.coeffs
            .first_key_value()
            .map(|(_, f)| f)
            .ok_or(Error::EmptyCurve)
    }

    /// Substitute a rational value for t.
    pub fn eval(&self, t: &Scalar) -> Form {
        let mut acc = Form::zero(self.degree);
        for (&power, f) in &self.coeffs {
            let mut factor = Scalar::from_integer(1.into());
            for _ in 0..power {
                factor *= t;
            }
            acc = acc.add(&f.scale(&factor)).expect("degrees agree");
        }
        acc
    }

    /// Multiply the whole family by t^k.
    pub fn shift(&self, k: u32) -> CurveForm {
        CurveForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(p, f)| (p + k, f.clone())).collect(),
        }
    }

    /// Reparameterize t -> c t; each coefficient at t^p scales by c^p.
    pub fn reparameterize(&self, c: &Scalar) -> CurveForm {
        let mut out = CurveForm::new(self.degree);
        for (&power, f) in &self.coeffs {
            let mut factor = Scalar::from_integer(1.into());
            for _ in 0..power {
                factor *= c;
            }
            out.insert(power, f.scale(&factor));
        }
        out
    }
}

/// Exact expansion of det(A + tS) by powers of t, for matrices of linear
/// forms. The t^0 coefficient is det A, the t^3 coefficient det S, and the
/// t^1 coefficient is Tr(adj(A) S).
pub fn pencil_det(a: &FormMatrix, s: &FormMatrix) -> CurveForm {
    assert_eq!(a.degree(), 1, "pencil matrices have linear entries");
    assert_eq!(s.degree(), 1, "pencil matrices have linear entries");
    // Leibniz expansion: each entry is (A[r][c]) + t (S[r][c]).
    const PERMS: [(i64, [usize; 3]); 6] = [
        (1, [0, 1, 2]),
        (1, [1, 2, 0]),
        (1, [2, 0, 1]),
        (-1, [0, 2, 1]),
        (-1, [1, 0, 2]),
        (-1, [2, 1, 0]),
    ];
    let mut by_power = [Form::zero(3), Form::zero(3), Form::zero(3), Form::zero(3)];
    for (sign, perm) in PERMS {
        // choose A or S independently in each of the three rows
        for mask in 0..8u32 {
            let mut product = Form::one();
            let mut power = 0usize;
            for (row, &col) in perm.iter().enumerate() {
                let take_s = mask & (1 << row) != 0;
                let entry = if take_s {
                    power += 1;
                    s.entry(row, col)
                } else {
                    a.entry(row, col)
                };
                product = product.mul(entry);
            }
            let signed = product.scale(&crate::scalar::scalar(sign));
            by_power[power] = by_power[power].add(&signed).expect("degree 3");
        }
    }
    let mut curve = CurveForm::new(3);
    for (power, f) in by_power.into_iter().enumerate() {
        curve.insert(power as u32, f);
    }
    curve
}

/// Projective limit of the family as t -> 0 (lowest surviving coefficient).
pub fn curve_limit(c: &CurveForm) -> Result<Form, Error> {
    c.limit().cloned()
}

/// The skew pencil: A the generic skew matrix, S the symmetric matrix of
/// fresh linear forms whose first-order term is exactly 2 p2.
pub fn p2_pencil() -> (FormMatrix, FormMatrix) {
    let a = FormMatrix::generic_skew();
    let x = |i: usize| Form::variable(i);
    let two = crate::scalar::scalar(2);
    let s = FormMatrix::new([
        [x(6).scale(&two), x(8), x(9)],
        [x(8), x(5).scale(&two), x(7)],
        [x(9), x(7), x(4).scale(&two)],
    ])
    .expect("degree 1");
    (a, s)
}

/// The 165x81 system expressing `Tr(adj(b) c) = 0` as a condition on the
/// unknown endomorphism c (columns row-major over the 81 coordinates of c,
/// matching the stabilizer system layout). Requires degree-1 entries and
/// det(b) = 0.
pub fn blowup_center_system(b: &FormMatrix) -> Result<Matrix, Error> {
    if b.degree() != 1 {
        return Err(Error::DegreeViolation {
            expected: 1,
            got: b.degree(),
        });
    }
    if !b.det().is_zero() {
        return Err(Error::NotSingular);
    }
    let adj = b.adjugate();
    let mut m = Matrix::zero(165, 81);
    for slot in 0..9 {
        let (r, c) = (slot / 3, slot % 3);
        for k in 0..9 {
            let mut entries: [[Form; 3]; 3] =
                std::array::from_fn(|_| std::array::from_fn(|_| Form::zero(1)));
            entries[r][c] = Form::variable(k + 1);
            let elem = FormMatrix::new(entries).expect("degree 1");
            let condition = adj.mul(&elem).trace();
            for (row, value) in condition.coeff_vector().into_iter().enumerate() {
                if !num_traits::Zero::is_zero(&value) {
                    m.set(row, 9 * slot + k, value);
                }
            }
        }
    }
    Ok(m)
}

/// Kernel of [`blowup_center_system`]: first-order deformations c of b with
/// det(b + tc) = O(t^2).
pub fn blowup_center_tangent_kernel(b: &FormMatrix) -> Result<Subspace, Error> {
    Ok(kernel(&blowup_center_system(b)?))
}

/// Projective dimension of the tangent space of the blowup center at [b]:
/// the kernel dimension of the first-order condition, minus one. The kernel
/// always contains b itself since Tr(adj(b) b) = 3 det(b) = 0.
pub fn blowup_center_tangent_dim(b: &FormMatrix) -> Result<usize, Error> {
    Ok(blowup_center_tangent_kernel(b)?.dim() - 1)
}

/// The 8 + 8 + 81 generators of the orbit tangent space at [b]: left
/// multiplications M b, right multiplications b N over the traceless basis,
/// and the precompositions b(c(.)) over the eighty-one elementary
/// endomorphisms, each flattened to its 81-vector.
pub fn orbit_tangent_generators(b: &FormMatrix) -> Vec<Vec<Scalar>> {
    assert_eq!(b.degree(), 1);
    let mut generators: Vec<Vec<Scalar>> = Vec::with_capacity(97);
    for m in sl3_basis() {
        let g = b.left_mul_const(&m);
        generators.push(g.to_endo().expect("degree 1").flatten());
    }
    for n in sl3_basis() {
        let g = b.right_mul_const(&n);
        generators.push(g.to_endo().expect("degree 1").flatten());
    }
    for slot in 0..9 {
        for k in 0..9 {
            let mut unit = Matrix::zero(9, 9);
            unit.set(slot, k, crate::scalar::scalar(1));
            let g = b.compose(&Endo::new(unit));
            generators.push(g.to_endo().expect("degree 1").flatten());
        }
    }
    generators
}

/// Projective dimension of the tangent space at [b] of the orbit of b under
/// the stabilizer acting on the left and all of GL(W) on the right: the
/// span of the 97 generators, minus one.
pub fn orbit_tangent_dim(b: &FormMatrix) -> usize {
    span_dim(&orbit_tangent_generators(b)) - 1
}

/// The singular endomorphism witnessing that p1 lies in the image of the
/// determinant locus: identity on x1..x8 and x9 -> -x1-x5, of rank 8, with
/// det3 composed with it equal to p1.
pub fn traceless_witness() -> Endo {
    let mut m = Matrix::identity(9);
    m.set(8, 8, Scalar::from_integer(0.into()));
    m.set(8, 0, crate::scalar::scalar(-1));
    m.set(8, 4, crate::scalar::scalar(-1));
    Endo::new(m)
}
