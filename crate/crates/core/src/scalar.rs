//! Exact scalars from text.

use num::BigRational;

use crate::error::{Error, Result};

/// Parses `p` or `p/q` with integer `p`, `q`; decimals and floats are rejected.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || Error::Scalar(text.to_string());
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: num::BigInt = num.parse().map_err(|_| bad())?;
    let d: num::BigInt = den.parse().map_err(|_| bad())?;
    if d == num::BigInt::from(0) {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractions() {
        assert_eq!(parse_rational("1/2").unwrap(), BigRational::new(1.into(), 2.into()));
        assert_eq!(parse_rational("-3").unwrap(), BigRational::from_integer((-3).into()));
        assert_eq!(parse_rational(" 4 / -8 ").unwrap(), BigRational::new((-1).into(), 2.into()));
        for bad in ["0.5", "1e3", "", "1/0", "x"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }
}
