//! Exact scalars: arbitrary-precision rationals.
//!
//! Every coefficient in the library is a [`Rational`]. They are always stored
//! in reduced form with a positive denominator, so equality is plain
//! structural equality and no operation ever rounds.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn from_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p"` or `"p/q"` with optional sign; rejects zero denominators.
pub fn parse(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("invalid rational {text:?}"));
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num_str.parse().map_err(|_| bad())?;
    let den: BigInt = den_str.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Canonical string form: `"p"` for integers, `"p/q"` otherwise, q > 0.
pub fn render(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_vec(items: &[String]) -> Result<Vec<Rational>> {
    items.iter().map(|s| parse(s)).collect()
}

pub fn render_vec(items: &[Rational]) -> Vec<String> {
    items.iter().map(render).collect()
}

pub fn is_zero_vec(items: &[Rational]) -> bool {
    items.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_accepts_integers_and_fractions() {
        assert_eq!(parse("7").unwrap(), from_int(7));
        assert_eq!(parse("-3/6").unwrap(), ratio(-1, 2));
        assert_eq!(parse(" 5/-10 ").unwrap(), ratio(-1, 2));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn render_is_reduced_with_positive_denominator() {
        assert_eq!(render(&ratio(-4, 8)), "-1/2");
        assert_eq!(render(&ratio(6, 3)), "2");
        assert_eq!(parse(&render(&ratio(-22, 7))).unwrap(), ratio(-22, 7));
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-200i64..200, 1i64..60).prop_map(|(n, d)| ratio(n, d))
    }

    proptest! {
        #[test]
        fn field_axioms_hold_exactly(a in arb_rational(), b in arb_rational(), c in arb_rational()) {
            prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
            prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
            prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
            prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        }

        #[test]
        fn render_parse_roundtrip(a in arb_rational()) {
            prop_assert_eq!(parse(&render(&a)).unwrap(), a);
        }
    }
}
