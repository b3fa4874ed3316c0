//! Sparse homogeneous polynomials in nine variables over exact rationals.
//!
//! The nine variables x1..x9 are the coordinates of the space W of 3x3
//! matrices, laid out row-major: x1 x2 x3 / x4 x5 x6 / x7 x8 x9. A [`Form`]
//! of degree d is a sparse element of the C(d+8, 8)-dimensional space of
//! degree-d forms on W (165 for cubics, 45 for quadrics, 9 for linear
//! forms). [`Endo`] is a linear endomorphism of W in those coordinates and
//! acts on forms by substitution, see [`Form::compose_linear`].
//!
//! The one monomial order used everywhere is graded reverse-lexicographic
//! with x1 > x2 > ... > x9; [`monomial_basis`] lists each degree in
//! decreasing order and fixes the slot layout of [`Form::coeff_vector`].

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::error::Error;
use crate::linalg::Matrix;
use crate::scalar::{format_scalar, parse_scalar, scalar, Scalar};

/// Exponent vector of a monomial in x1..x9.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Exponent9([u8; 9]);

impl Exponent9 {
    pub fn new(exponents: [u8; 9]) -> Self {
        Exponent9(exponents)
    }

    /// Exponent vector of the single variable x_i (1-based).
    pub fn variable(i: usize) -> Self {
        assert!((1..=9).contains(&i), "variable index must be 1..=9");
        let mut e = [0u8; 9];
        e[i - 1] = 1;
        Exponent9(e)
    }

    pub fn exponents(&self) -> &[u8; 9] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    fn checked_add(&self, other: &Exponent9) -> Exponent9 {
        let mut e = self.0;
        for (slot, extra) in e.iter_mut().zip(other.0) {
            *slot = slot.checked_add(extra).expect("exponent overflow");
        }
        Exponent9(e)
    }
}

impl Ord for Exponent9 {
    /// Graded reverse-lexicographic order with x1 > x2 > ... > x9.
    /// Within one degree, a > b iff the rightmost nonzero entry of a - b is
    /// negative.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for i in (0..9).rev() {
            let d = self.0[i] as i32 - other.0[i] as i32;
            if d != 0 {
                return if d < 0 {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Exponent9 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

static BASIS_CACHE: OnceLock<Mutex<HashMap<u32, &'static [Exponent9]>>> = OnceLock::new();

/// All degree-d monomials in x1..x9, largest first under the crate order;
/// slot i of this list is slot i of every degree-d coefficient vector.
pub fn monomial_basis(degree: u32) -> &'static [Exponent9] {
    let cache = BASIS_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().unwrap();
    if let Some(b) = map.get(&degree) {
        return b;
    }
    let mut all = Vec::new();
    let mut current = [0u8; 9];
    enumerate_exponents(degree, 0, &mut current, &mut all);
    all.sort_by(|a, b| b.cmp(a));
    let leaked: &'static [Exponent9] = Box::leak(all.into_boxed_slice());
    map.insert(degree, leaked);
    leaked
}

fn enumerate_exponents(remaining: u32, slot: usize, current: &mut [u8; 9], out: &mut Vec<Exponent9>) {
    if slot == 8 {
        current[8] = remaining as u8;
        out.push(Exponent9(*current));
        return;
    }
    for e in 0..=remaining {
        current[slot] = e as u8;
        enumerate_exponents(remaining - e, slot + 1, current, out);
    }
    current[slot] = 0;
}

/// Sparse homogeneous form of a fixed degree. Stored coefficients are
/// always nonzero and every exponent vector sums to the degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Form {
    degree: u32,
    terms: BTreeMap<Exponent9, Scalar>,
}

impl Form {
    pub fn zero(degree: u32) -> Self {
        Form {
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The constant form 1 (degree 0).
    pub fn one() -> Self {
        Form::monomial(Scalar::one(), Exponent9::new([0; 9]))
    }

    /// The linear form x_i (1-based).
    pub fn variable(i: usize) -> Self {
        Form::monomial(Scalar::one(), Exponent9::variable(i))
    }

    /// Single-term form; degree is read off the exponent vector.
    pub fn monomial(coeff: Scalar, exponent: Exponent9) -> Self {
        let mut f = Form::zero(exponent.degree());
        f.add_term(exponent, coeff);
        f
    }

    /// Sum the given terms into a form of the stated degree.
    pub fn from_terms(degree: u32, terms: impl IntoIterator<Item = (Exponent9, Scalar)>) -> Self {
        let mut f = Form::zero(degree);
        for (e, c) in terms {
            f.add_term(e, c);
        }
        f
    }

    fn add_term(&mut self, exponent: Exponent9, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        assert_eq!(
            exponent.degree(),
            self.degree,
            "term degree does not match form degree"
        );
        match self.terms.entry(exponent) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in decreasing monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent9, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, exponent: &Exponent9) -> Scalar {
        self.terms.get(exponent).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add(&self, other: &Form) -> Result<Form, Error> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Form) -> Result<Form, Error> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Form {
        Form {
            degree: self.degree,
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Form {
        if c.is_zero() {
            return Form::zero(self.degree);
        }
        Form {
            degree: self.degree,
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Exact product; the degree is the sum of the degrees.
    pub fn mul(&self, other: &Form) -> Form {
        let mut out = Form::zero(self.degree + other.degree);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.checked_add(eb), ca * cb);
            }
        }
        out
    }

    /// d/dx_i (1-based). The input must have degree >= 1.
    pub fn partial_derivative(&self, var: usize) -> Form {
        assert!(self.degree >= 1, "cannot differentiate a degree-0 form");
        assert!((1..=9).contains(&var), "variable index must be 1..=9");
        let idx = var - 1;
        let mut out = Form::zero(self.degree - 1);
        for (e, c) in &self.terms {
            let k = e.0[idx];
            if k == 0 {
                continue;
            }
            let mut lowered = *e;
            lowered.0[idx] -= 1;
            out.add_term(lowered, c * scalar(k as i64));
        }
        out
    }

    /// Value at a point of W.
    pub fn eval(&self, coords: &[Scalar; 9]) -> Scalar {
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (value, &exp) in coords.iter().zip(&e.0) {
                for _ in 0..exp {
                    term *= value;
                }
            }
            acc += term;
        }
        acc
    }

    /// Substitution x_i -> sum_j a[i][j] x_j, i.e. the composite f(a(x)).
    /// Composing twice multiplies the matrices: f.compose_linear(a)
    /// .compose_linear(b) equals f.compose_linear(a.compose(b)).
    pub fn compose_linear(&self, a: &Endo) -> Form {
        let images: Vec<Form> = (0..9)
            .map(|i| {
                let mut row = Form::zero(1);
                for j in 0..9 {
                    let c = a.matrix().get(i, j);
                    if !c.is_zero() {
                        row.add_term(Exponent9::variable(j + 1), c.clone());
                    }
                }
                row
            })
            .collect();
        let mut out = Form::zero(self.degree);
        for (e, c) in &self.terms {
            let mut prod = Form::one();
            for (image, &exp) in images.iter().zip(&e.0) {
                for _ in 0..exp {
                    prod = prod.mul(image);
                }
            }
            out = out.add(&prod.scale(c)).expect("degrees agree by construction");
        }
        out
    }

    /// Coefficients in the canonical slot order of [`monomial_basis`];
    /// length C(degree+8, 8).
    pub fn coeff_vector(&self) -> Vec<Scalar> {
        monomial_basis(self.degree)
            .iter()
            .map(|e| self.coeff(e))
            .collect()
    }

    /// Projective equality: true iff self = c * other for some nonzero c.
    /// Both forms must be nonzero and of equal degree.
    pub fn proj_equal(&self, other: &Form) -> Result<bool, Error> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        if self.is_zero() || other.is_zero() {
            return Err(Error::ZeroForm);
        }
        let (lead_exp, lead_coeff) = self.terms.iter().next_back().expect("nonzero");
        let other_coeff = other.coeff(lead_exp);
        if other_coeff.is_zero() {
            return Ok(false);
        }
        let ratio = lead_coeff / other_coeff;
        Ok(*self == other.scale(&ratio))
    }

    /// Text format, one term per line: `num/den x1^e1 .. x9^e9` with zero
    /// exponents omitted, terms in decreasing monomial order. Round-trips
    /// through [`Form::from_text`] exactly.
    pub fn to_text(&self) -> String {
        let mut lines = Vec::with_capacity(self.terms.len());
        for (e, c) in self.terms() {
            let mut line = format_scalar(c);
            for (i, &exp) in e.exponents().iter().enumerate() {
                if exp > 0 {
                    line.push_str(&format!(" x{}^{}", i + 1, exp));
                }
            }
            lines.push(line);
        }
        lines.join("\n")
    }

    /// Parse the text format. The degree is inferred from the first term,
    /// so the zero form (no terms at all) is rejected.
    pub fn from_text(text: &str) -> Result<Form, Error> {
        let mut parsed: Vec<(Exponent9, Scalar)> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let coeff = parse_scalar(tokens.next().expect("nonempty line"))?;
            let mut exps = [0u8; 9];
            for tok in tokens {
                let body = tok
                    .strip_prefix('x')
                    .ok_or_else(|| Error::Parse(format!("expected variable token, got `{tok}`")))?;
                let (var, exp) = match body.split_once('^') {
                    Some((v, e)) => (v, e),
                    None => (body, "1"),
                };
                let var: usize = var
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad variable in `{tok}`")))?;
                if !(1..=9).contains(&var) {
                    return Err(Error::Parse(format!("variable out of range in `{tok}`")));
                }
                let exp: u8 = exp
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?;
                exps[var - 1] = exps[var - 1]
                    .checked_add(exp)
                    .ok_or_else(|| Error::Parse("exponent overflow".into()))?;
            }
            parsed.push((Exponent9::new(exps), coeff));
        }
        let Some(first) = parsed.first() else {
            return Err(Error::Parse(
                "empty form text: degree cannot be inferred".into(),
            ));
        };
        let degree = first.0.degree();
        if let Some((e, _)) = parsed.iter().find(|(e, _)| e.degree() != degree) {
            return Err(Error::Parse(format!(
                "inhomogeneous input: found degrees {} and {}",
                degree,
                e.degree()
            )));
        }
        Ok(Form::from_terms(degree, parsed))
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 (degree {})", self.degree);
        }
        write!(f, "{}", self.to_text().replace('\n', ", "))
    }
}

/// Linear endomorphism of W as a 9x9 rational matrix in the x1..x9
/// coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Endo {
    matrix: Matrix,
}

impl Endo {
    pub fn new(matrix: Matrix) -> Self {
        assert_eq!((matrix.rows(), matrix.cols()), (9, 9), "Endo must be 9x9");
        Endo { matrix }
    }

    pub fn identity() -> Self {
        Endo::new(Matrix::identity(9))
    }

    pub fn zero() -> Self {
        Endo::new(Matrix::zero(9, 9))
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Endo::new(Matrix::from_int_rows(rows))
    }

    pub fn diagonal_ints(diag: [i64; 9]) -> Self {
        Endo::new(Matrix::from_fn(9, 9, |r, c| {
            if r == c {
                scalar(diag[r])
            } else {
                Scalar::zero()
            }
        }))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        self.matrix.get(i, j)
    }

    /// Matrix product self * other: apply `other` first, then `self`.
    pub fn compose(&self, other: &Endo) -> Endo {
        Endo::new(self.matrix.mul(&other.matrix))
    }

    pub fn add(&self, other: &Endo) -> Endo {
        Endo::new(self.matrix.add(&other.matrix))
    }

    pub fn scale(&self, c: &Scalar) -> Endo {
        Endo::new(self.matrix.scale(c))
    }

    pub fn apply_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(v)
    }

    /// The 81 entries, row-major; the coordinate vector of this element of
    /// End(W) used by every tangent-space computation.
    pub fn flatten(&self) -> Vec<Scalar> {
        (0..9)
            .flat_map(|r| (0..9).map(move |c| self.matrix.get(r, c).clone()))
            .collect()
    }
}

const PERMUTATIONS3: [(i64, [usize; 3]); 6] = [
    (1, [0, 1, 2]),
    (1, [1, 2, 0]),
    (1, [2, 0, 1]),
    (-1, [0, 2, 1]),
    (-1, [1, 0, 2]),
    (-1, [2, 1, 0]),
];

/// Determinant of the generic 3x3 matrix as a cubic form on W:
/// x1(x5x9 - x6x8) - x2(x4x9 - x6x7) + x3(x4x8 - x5x7).
pub fn det3() -> Form {
    let mut terms = Vec::with_capacity(6);
    for (sign, perm) in PERMUTATIONS3 {
        let mut e = [0u8; 9];
        for (row, &col) in perm.iter().enumerate() {
            e[3 * row + col] += 1;
        }
        terms.push((Exponent9::new(e), scalar(sign)));
    }
    Form::from_terms(3, terms)
}

/// Determinant of the generic traceless 3x3 matrix: the (3,3) slot of the
/// generic matrix is replaced by -x1-x5 and the determinant expanded.
pub fn p1() -> Form {
    let x = |i: usize| Form::variable(i);
    let corner = x(1).neg().sub(&x(5)).expect("degree 1");
    let entries = [
        [x(1), x(2), x(3)],
        [x(4), x(5), x(6)],
        [x(7), x(8), corner],
    ];
    let mut out = Form::zero(3);
    for (sign, perm) in PERMUTATIONS3 {
        let prod = entries[0][perm[0]]
            .mul(&entries[1][perm[1]])
            .mul(&entries[2][perm[2]]);
        out = out.add(&prod.scale(&scalar(sign))).expect("degree 3");
    }
    out
}

/// The universal degree-2 ternary form spread over nine variables:
/// x4x1^2 + x5x2^2 + x6x3^2 + x7x1x2 + x8x2x3 + x9x1x3.
pub fn p2() -> Form {
    let term = |vars: &[usize]| {
        let mut e = [0u8; 9];
        for &v in vars {
            e[v - 1] += 1;
        }
        (Exponent9::new(e), Scalar::one())
    };
    Form::from_terms(
        3,
        [
            term(&[4, 1, 1]),
            term(&[5, 2, 2]),
            term(&[6, 3, 3]),
            term(&[7, 1, 2]),
            term(&[8, 2, 3]),
            term(&[9, 1, 3]),
        ],
    )
}

/// The three canonical cubics in one call.
pub fn canonical_forms() -> (Form, Form, Form) {
    (det3(), p1(), p2())
}
