//! Exact field scalars: arbitrary-precision rationals and prime fields.
//!
//! Every computation fixes one [`Field`] descriptor up front; mixing scalars
//! from different fields is a programming error and panics.

use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::Error;

/// The coefficient field of a computation.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Field {
    /// Exact rational numbers.
    Rational,
    /// The prime field with the given modulus.
    Prime(u64),
}

impl Field {
    pub fn zero(self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::zero()),
            Field::Prime(p) => Scalar::Prime { value: 0, modulus: p },
        }
    }

    pub fn one(self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::one()),
            Field::Prime(p) => Scalar::Prime { value: 1 % p, modulus: p },
        }
    }

    pub fn integer(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => {
                let m = n.rem_euclid(p as i64) as u64;
                Scalar::Prime { value: m, modulus: p }
            }
        }
    }

    /// Parses "rational" or "fp:P".
    pub fn parse_descriptor(s: &str) -> Result<Field, Error> {
        if s == "rational" {
            return Ok(Field::Rational);
        }
        if let Some(p) = s.strip_prefix("fp:") {
            let p: u64 = p
                .parse()
                .map_err(|_| Error::Input(format!("invalid prime field modulus `{p}`")))?;
            return Field::prime(p);
        }
        Err(Error::Input(format!("unknown field descriptor `{s}` (expected `rational` or `fp:P`)")))
    }

    pub fn prime(p: u64) -> Result<Field, Error> {
        if !is_prime(p) {
            return Err(Error::Input(format!("{p} is not prime")));
        }
        if p >= 1 << 31 {
            return Err(Error::Input(format!("prime modulus {p} too large (need p < 2^31)")));
        }
        Ok(Field::Prime(p))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            Field::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of the chosen field.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Prime { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Prime { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Prime { value, .. } => *value == 1,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime { value: a, modulus: p }, Scalar::Prime { value: b, modulus: q }) => {
                assert_eq!(p, q, "scalars from different prime fields");
                Scalar::Prime { value: (a + b) % p, modulus: *p }
            }
            _ => panic!("scalars from different fields"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime { value, modulus } => {
                Scalar::Prime { value: (modulus - value) % modulus, modulus: *modulus }
            }
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime { value: a, modulus: p }, Scalar::Prime { value: b, modulus: q }) => {
                assert_eq!(p, q, "scalars from different prime fields");
                let v = ((*a as u128 * *b as u128) % *p as u128) as u64;
                Scalar::Prime { value: v, modulus: *p }
            }
            _ => panic!("scalars from different fields"),
        }
    }

    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::Prime { value, modulus } => {
                // Extended Euclid on (value, modulus).
                let (mut r0, mut r1) = (*modulus as i128, *value as i128);
                let (mut t0, mut t1) = (0i128, 1i128);
                while r1 != 0 {
                    let q = r0 / r1;
                    (r0, r1) = (r1, r0 - q * r1);
                    (t0, t1) = (t1, t0 - q * t1);
                }
                debug_assert_eq!(r0, 1, "modulus not prime");
                let v = t0.rem_euclid(*modulus as i128) as u64;
                Scalar::Prime { value: v, modulus: *modulus }
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inv())
    }

    /// Parses an integer or "p/q" literal into the given field.
    pub fn parse(s: &str, field: Field) -> Result<Scalar, Error> {
        let s = s.trim();
        match field {
            Field::Rational => {
                let r = BigRational::from_str(s)
                    .or_else(|_| BigInt::from_str(s).map(BigRational::from_integer))
                    .map_err(|_| Error::Input(format!("invalid rational literal `{s}`")))?;
                Ok(Scalar::Rational(r))
            }
            Field::Prime(p) => {
                if let Some((num, den)) = s.split_once('/') {
                    let n = Scalar::parse(num, field)?;
                    let d = Scalar::parse(den, field)?;
                    if d.is_zero() {
                        return Err(Error::Input(format!("division by zero in `{s}`")));
                    }
                    return Ok(n.div(&d));
                }
                let n: i64 = s
                    .parse()
                    .map_err(|_| Error::Input(format!("invalid integer literal `{s}`")))?;
                Ok(Field::Prime(p).integer(n))
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

/// True when the scalar renders with a leading minus: negative rationals,
/// and prime-field values in the upper half (balanced representatives, so
/// -1 mod p displays as a subtraction rather than p-1).
pub fn is_negative(s: &Scalar) -> bool {
    match s {
        Scalar::Rational(r) => r.is_negative(),
        Scalar::Prime { value, modulus } => *value != 0 && *value > modulus / 2,
    }
}
