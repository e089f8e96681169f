//! Exact scalars: prime fields GF(p) for word-sized p, and the rationals.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The base field of every computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Prime(u64),
    Rational,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// GF(p). Fails unless `p` is prime.
    pub fn prime(p: u64) -> Result<Self> {
        if p > u32::MAX as u64 || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a supported prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn rational() -> Self {
        Field::Rational
    }

    /// Number of elements, when finite.
    pub fn order(&self) -> Option<u64> {
        match self {
            Field::Prime(p) => Some(*p),
            Field::Rational => None,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match *self {
            Field::Prime(p) => Scalar::Prime {
                value: v.rem_euclid(p as i64) as u64,
                modulus: p,
            },
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
        }
    }

    /// The `k`-th element of a finite field in the canonical order 0, 1, ..., p-1.
    pub fn element(&self, k: u64) -> Scalar {
        match *self {
            Field::Prime(p) => Scalar::Prime {
                value: k % p,
                modulus: p,
            },
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(k))),
        }
    }

    /// Parses `"3"`, `"-1"` or `"num/den"`. Over GF(p) fractions are read as num·den⁻¹.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid scalar {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (
                BigInt::from_str(n.trim()).map_err(|_| bad())?,
                BigInt::from_str(d.trim()).map_err(|_| bad())?,
            ),
            None => (BigInt::from_str(s).map_err(|_| bad())?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(bad());
        }
        match *self {
            Field::Prime(p) => {
                let pb = BigInt::from(p);
                let reduce = |x: &BigInt| x.mod_floor(&pb).to_u64().expect("residue fits");
                let n = Scalar::Prime {
                    value: reduce(&num),
                    modulus: p,
                };
                let d = Scalar::Prime {
                    value: reduce(&den),
                    modulus: p,
                };
                let dinv = d.inverse().ok_or_else(|| {
                    Error::Parse(format!("denominator of {s:?} vanishes in GF({p})"))
                })?;
                Ok(&n * &dinv)
            }
            Field::Rational => Ok(Scalar::Rational(BigRational::new(num, den))),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "GF({p})"),
            Field::Rational => write!(f, "Q"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `gf<p>`, `GF(p)`, `q`, `Q`, `rational`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        if t == "q" || t == "rational" || t == "qq" {
            return Ok(Field::Rational);
        }
        let digits = t
            .strip_prefix("gf(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| t.strip_prefix("gf"))
            .ok_or_else(|| Error::Parse(format!("unknown field {s:?}")))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("unknown field {s:?}")))?;
        Field::prime(p)
    }
}

/// A field element in canonical form: a residue `0 <= value < modulus`, or a reduced fraction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Prime { value: u64, modulus: u64 },
    Rational(BigRational),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Prime { modulus, .. } => Field::Prime(*modulus),
            Scalar::Rational(_) => Field::Rational,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Prime { value, .. } => *value == 0,
            Scalar::Rational(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Prime { value, .. } => *value == 1,
            Scalar::Rational(r) => r.is_one(),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        match self {
            Scalar::Prime { value, modulus } => Some(Scalar::Prime {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            }),
            Scalar::Rational(r) => Some(Scalar::Rational(r.recip())),
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

macro_rules! field_mismatch {
    ($a:expr, $b:expr) => {
        panic!("field mismatch: {} vs {}", $a.field(), $b.field())
    };
}

impl std::ops::Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Prime { value: a, modulus: p }, Scalar::Prime { value: b, modulus: q })
                if p == q =>
            {
                Scalar::Prime {
                    value: ((*a as u128 + *b as u128) % *p as u128) as u64,
                    modulus: *p,
                }
            }
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            _ => field_mismatch!(self, rhs),
        }
    }
}

impl std::ops::Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl std::ops::Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Prime { value: a, modulus: p }, Scalar::Prime { value: b, modulus: q })
                if p == q =>
            {
                Scalar::Prime {
                    value: mul_mod(*a, *b, *p),
                    modulus: *p,
                }
            }
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            _ => field_mismatch!(self, rhs),
        }
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Prime { value, modulus } => Scalar::Prime {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
            Scalar::Rational(r) => Scalar::Rational(-r),
        }
    }
}

impl std::ops::AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl fmt::Display for Scalar {
    /// Residues print as decimals; rationals as `n` or `num/den`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Prime { value, .. } => write!(f, "{value}"),
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom().abs())
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_is_checked() {
        assert!(Field::prime(2).is_ok());
        assert!(Field::prime(5).is_ok());
        assert!(Field::prime(4).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(0).is_err());
    }

    #[test]
    fn residues_are_canonical() {
        let f = Field::prime(5).unwrap();
        assert_eq!(f.from_i64(-1), f.from_i64(4));
        assert_eq!(f.parse_scalar("-1").unwrap().to_string(), "4");
        assert_eq!(f.parse_scalar("1/2").unwrap(), f.from_i64(3));
        assert!(f.parse_scalar("1/5").is_err());
    }

    #[test]
    fn rationals_reduce() {
        let q = Field::Rational;
        let x = q.parse_scalar("4/-6").unwrap();
        assert_eq!(x.to_string(), "-2/3");
        assert_eq!(q.parse_scalar("3").unwrap().to_string(), "3");
        let inv = x.inverse().unwrap();
        assert!((&x * &inv).is_one());
    }

    #[test]
    fn field_names_parse() {
        assert_eq!("gf2".parse::<Field>().unwrap(), Field::Prime(2));
        assert_eq!("GF(5)".parse::<Field>().unwrap(), Field::Prime(5));
        assert_eq!("q".parse::<Field>().unwrap(), Field::Rational);
        assert!("gf6".parse::<Field>().is_err());
        assert!("real".parse::<Field>().is_err());
    }

    #[test]
    fn gf_inverse() {
        let f = Field::prime(7).unwrap();
        for k in 1..7 {
            let x = f.from_i64(k);
            assert!((&x * &x.inverse().unwrap()).is_one());
        }
        assert!(f.zero().inverse().is_none());
    }
}
