//! Exact rational scalars.
//!
//! [`Scalar`] is the only coefficient type in this crate. It is an
//! arbitrary-precision rational kept in lowest terms with a positive
//! denominator, so every arithmetic result is exact and every equality test
//! is decidable. Wire format is `numerator/denominator` in base ten.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Arbitrary-precision rational number. `num_rational` normalizes on
/// construction (lowest terms, positive denominator), which is exactly the
/// representation invariant this crate relies on.
pub type Scalar = BigRational;

/// Integer as a scalar.
pub fn scalar(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Fraction `n/d` as a scalar. `d` must be nonzero.
pub fn scalar_frac(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Render as `num/den`, denominator always present, e.g. `-3/2`, `16/1`.
pub fn format_scalar(s: &Scalar) -> String {
    format!("{}/{}", s.numer(), s.denom())
}

/// Parse `num/den` or a bare integer.
pub fn parse_scalar(text: &str) -> Result<Scalar, Error> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let numer: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad numerator `{num}`")))?;
    let denom: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad denominator `{den}`")))?;
    if denom.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{text}`")));
    }
    Ok(BigRational::new(numer, denom))
}

/// Crude size measure used for pivot selection: total decimal digits of
/// numerator and denominator. Smaller pivots keep elimination numbers small.
pub fn scalar_size(s: &Scalar) -> usize {
    s.numer().abs().to_string().len() + s.denom().to_string().len()
}

pub fn is_one(s: &Scalar) -> bool {
    s.is_one()
}
