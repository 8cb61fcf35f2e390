use alloc::string::String;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

/// Exact rational scalar, always kept in canonical form (positive
/// denominator, coprime numerator and denominator).
pub type Rational = num_rational::BigRational;

/// `numer / denom` as an exact rational. Panics on a zero denominator.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// The non-negative rational square root of `x`, if it exists.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    let exact = |v: &BigInt| {
        let root = v.sqrt();
        (&root * &root == *v).then_some(root)
    };
    if x.numer().sign() == num_bigint::Sign::Minus {
        return None;
    }
    Some(Rational::new(exact(x.numer())?, exact(x.denom())?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError {
    input: String,
    zero_denominator: bool,
}

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zero_denominator {
            write!(f, "rational {:?} has a zero denominator", self.input)
        } else {
            write!(f, "{:?} is not a rational of the form p or p/q", self.input)
        }
    }
}

impl core::error::Error for ParseRationalError {}

/// Parses `"p"` or `"p/q"` with decimal integers `p`, `q`. The result is
/// reduced to canonical form.
pub fn parse_rational(input: &str) -> Result<Rational, ParseRationalError> {
    let err = |zero_denominator| ParseRationalError {
        input: input.into(),
        zero_denominator,
    };
    let text = input.trim();
    let (numer, denom) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), Some(q.trim())),
        None => (text, None),
    };
    let numer = BigInt::from_str(numer).map_err(|_| err(false))?;
    let denom = match denom {
        Some(q) => BigInt::from_str(q).map_err(|_| err(false))?,
        None => BigInt::from(1),
    };
    if denom.is_zero() {
        return Err(err(true));
    }
    Ok(Rational::new(numer, denom))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_roots() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&int(0)), Some(int(0)));
        assert_eq!(rational_sqrt(&int(2)), None);
        assert_eq!(rational_sqrt(&rat(1, 8)), None);
        assert_eq!(rational_sqrt(&int(-4)), None);
    }
    use alloc::string::ToString;

    #[test]
    fn parses_canonical_forms() {
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("-3").unwrap(), int(-3));
        assert_eq!(parse_rational(" 2/-4 ").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("0/7").unwrap(), int(0));
    }

    #[test]
    fn rejects_zero_denominator_and_garbage() {
        let e = parse_rational("1/0").unwrap_err();
        assert!(e.to_string().contains("zero denominator"));
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/2/3").is_err());
    }

    #[test]
    fn display_round_trips() {
        for text in ["0", "-7", "3/8", "-12/5"] {
            assert_eq!(parse_rational(text).unwrap().to_string(), text);
        }
    }
}
