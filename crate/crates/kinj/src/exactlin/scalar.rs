use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// The coefficient field every computation runs over. There is no global
/// default wired into the types; each algebra, complex, and matrix carries
/// scalars of one field, chosen at construction time.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Field {
    /// Arbitrary-precision rationals. The default for the CLI.
    Rational,
    /// Integers modulo a prime p.
    Fp(u64),
}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("modulus {0} is not a prime")]
    NotPrime(u64),
    #[error("cannot parse field spec {0:?}, expected \"rational\" or \"fp:<p>\"")]
    BadSpec(String),
    #[error("cannot parse scalar {text:?} for {field:?}: {reason}")]
    BadScalar {
        text: String,
        field: Field,
        reason: String,
    },
    #[error("division by zero")]
    DivisionByZero,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).is_some_and(|sq| sq <= p) {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl Field {
    /// Builds a prime field, rejecting composite moduli.
    pub fn fp(p: u64) -> Result<Field, FieldError> {
        if is_prime(p) {
            Ok(Field::Fp(p))
        } else {
            Err(FieldError::NotPrime(p))
        }
    }

    /// Parses CLI-style specs: `rational` or `fp:<p>`.
    pub fn parse_spec(spec: &str) -> Result<Field, FieldError> {
        if spec == "rational" {
            return Ok(Field::Rational);
        }
        if let Some(p) = spec.strip_prefix("fp:") {
            let p: u64 = p
                .parse()
                .map_err(|_| FieldError::BadSpec(spec.to_string()))?;
            return Field::fp(p);
        }
        Err(FieldError::BadSpec(spec.to_string()))
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(BigRational::zero()),
            Field::Fp(p) => Scalar::Fp { v: 0, p: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(BigRational::one()),
            Field::Fp(p) => Scalar::Fp { v: 1 % *p, p: *p },
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Fp(p) => {
                let v = n.rem_euclid(*p as i64) as u64;
                Scalar::Fp { v, p: *p }
            }
        }
    }

    /// Reads one scalar from its JSON form: `"p/q"` strings (or bare integer
    /// strings/numbers) for the rationals, integers in `[0, p)` for `F_p`.
    pub fn scalar_from_json(&self, value: &serde_json::Value) -> Result<Scalar, FieldError> {
        let bad = |reason: &str| FieldError::BadScalar {
            text: value.to_string(),
            field: *self,
            reason: reason.to_string(),
        };
        match self {
            Field::Rational => match value {
                serde_json::Value::String(s) => {
                    let (num, den) = match s.split_once('/') {
                        Some((n, d)) => (n, d),
                        None => (s.as_str(), "1"),
                    };
                    let num: BigInt = num.trim().parse().map_err(|_| bad("bad numerator"))?;
                    let den: BigInt = den.trim().parse().map_err(|_| bad("bad denominator"))?;
                    if den.is_zero() {
                        return Err(bad("zero denominator"));
                    }
                    Ok(Scalar::Rat(BigRational::new(num, den)))
                }
                serde_json::Value::Number(n) => {
                    let i = n.as_i64().ok_or_else(|| bad("not an integer"))?;
                    Ok(self.from_i64(i))
                }
                _ => Err(bad("expected string or integer")),
            },
            Field::Fp(p) => match value {
                serde_json::Value::Number(n) => {
                    let i = n.as_u64().ok_or_else(|| bad("expected integer in [0,p)"))?;
                    if i >= *p {
                        return Err(bad("residue out of range"));
                    }
                    Ok(Scalar::Fp { v: i, p: *p })
                }
                _ => Err(bad("expected integer in [0,p)")),
            },
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            Field::Fp(p) => write!(f, "fp:{p}"),
        }
    }
}

/// A field element. Mixed-field arithmetic is a programming error and panics;
/// every public entry point normalizes inputs to one field up front.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Scalar {
    Rat(BigRational),
    Fp { v: u64, p: u64 },
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn invmod(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        return None;
    }
    // extended Euclid on signed 128-bit, p is prime
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        let r = r0 - q * r1;
        r0 = r1;
        r1 = r;
        let s = s0 - q * s1;
        s0 = s1;
        s1 = s;
    }
    debug_assert_eq!(r0, 1);
    Some(s0.rem_euclid(p as i128) as u64)
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rational,
            Scalar::Fp { p, .. } => Field::Fp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp { v, p } => *v == 1 % *p,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => Scalar::Fp {
                v: (a + b) % p,
                p: *p,
            },
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Fp { v, p } => Scalar::Fp {
                v: (p - v) % p,
                p: *p,
            },
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => Scalar::Fp {
                v: mulmod(*a, *b, *p),
                p: *p,
            },
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn inv(&self) -> Result<Scalar, FieldError> {
        match self {
            Scalar::Rat(a) => {
                if a.is_zero() {
                    Err(FieldError::DivisionByZero)
                } else {
                    Ok(Scalar::Rat(a.recip()))
                }
            }
            Scalar::Fp { v, p } => invmod(*v, *p)
                .map(|v| Scalar::Fp { v, p: *p })
                .ok_or(FieldError::DivisionByZero),
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        Ok(self.mul(&other.inv()?))
    }

    /// JSON form matching `Field::scalar_from_json`.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Scalar::Rat(r) => {
                let s = format!("{}/{}", r.numer(), r.denom());
                serde_json::Value::String(s)
            }
            Scalar::Fp { v, .. } => serde_json::Value::Number((*v).into()),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

impl Scalar {
    /// Absolute numerator+denominator size, used only to pick nice pivots in
    /// displays; not a norm.
    pub fn is_integer(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.denom().is_one(),
            Scalar::Fp { .. } => true,
        }
    }

    pub fn abs_cmp_one(&self) -> std::cmp::Ordering {
        match self {
            Scalar::Rat(r) => r.abs().cmp(&BigRational::one()),
            Scalar::Fp { .. } => std::cmp::Ordering::Equal,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_spec_parsing() {
        assert_eq!(Field::parse_spec("rational").unwrap(), Field::Rational);
        assert_eq!(Field::parse_spec("fp:7").unwrap(), Field::Fp(7));
        assert!(Field::parse_spec("fp:6").is_err());
        assert!(Field::parse_spec("real").is_err());
    }

    #[test]
    fn fp_arithmetic_round_trip() {
        let f = Field::fp(7).unwrap();
        let a = f.from_i64(-3); // 4 mod 7
        let b = f.from_i64(5);
        assert_eq!(a.add(&b), f.from_i64(2));
        assert_eq!(a.mul(&b), f.from_i64(6));
        let inv = b.inv().unwrap();
        assert_eq!(b.mul(&inv), f.one());
    }

    #[test]
    fn rational_json_round_trip() {
        let f = Field::Rational;
        let x = f.from_i64(3).div(&f.from_i64(-6)).unwrap();
        let j = x.to_json();
        assert_eq!(j, serde_json::json!("-1/2"));
        assert_eq!(f.scalar_from_json(&j).unwrap(), x);
        // bare integers accepted on input
        assert_eq!(
            f.scalar_from_json(&serde_json::json!("4")).unwrap(),
            f.from_i64(4)
        );
        assert_eq!(
            f.scalar_from_json(&serde_json::json!(4)).unwrap(),
            f.from_i64(4)
        );
    }

    #[test]
    fn fp_json_rejects_out_of_range() {
        let f = Field::fp(5).unwrap();
        assert!(f.scalar_from_json(&serde_json::json!(5)).is_err());
        assert!(f.scalar_from_json(&serde_json::json!(-1)).is_err());
        assert_eq!(
            f.scalar_from_json(&serde_json::json!(3)).unwrap(),
            f.from_i64(3)
        );
    }
}
