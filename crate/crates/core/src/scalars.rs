//! Exact field arithmetic: prime fields GF(p) and arbitrary-precision
//! rationals.
//!
//! A [`FieldContext`] names the field an element lives in; two [`Scalar`]s
//! combine only when their contexts are equal. Values are kept in canonical
//! form at all times — residues in `[0, p)` for the prime kind, reduced
//! fractions with positive denominator for the rational kind — so equality of
//! scalars is plain equality of representatives.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Largest admissible prime modulus. Keeping p below 2^31 means products of
/// two residues fit in a u64 before reduction via u128.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum ContextKind {
    Prime(u64),
    Rational,
}

/// The field a scalar belongs to: GF(p) for a prime p, or the rationals.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct FieldContext {
    kind: ContextKind,
}

impl FieldContext {
    /// A prime-field context. The modulus is checked by trial division and
    /// rejected immediately if composite.
    pub fn prime(p: u64) -> Result<Self> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldContext {
            kind: ContextKind::Prime(p),
        })
    }

    /// The exact-rational context.
    pub fn rational() -> Self {
        FieldContext {
            kind: ContextKind::Rational,
        }
    }

    pub fn is_prime_kind(&self) -> bool {
        matches!(self.kind, ContextKind::Prime(_))
    }

    /// The modulus, for prime contexts.
    pub fn modulus(&self) -> Option<u64> {
        match self.kind {
            ContextKind::Prime(p) => Some(p),
            ContextKind::Rational => None,
        }
    }

    /// The canonical image of an integer in this field.
    pub fn integer(&self, n: i64) -> Scalar {
        match self.kind {
            ContextKind::Prime(p) => {
                let m = n.rem_euclid(p as i64) as u64;
                Scalar {
                    ctx: *self,
                    repr: Repr::Residue(m),
                }
            }
            ContextKind::Rational => Scalar {
                ctx: *self,
                repr: Repr::Ratio(BigRational::from_integer(BigInt::from(n))),
            },
        }
    }

    pub fn zero(&self) -> Scalar {
        self.integer(0)
    }

    pub fn one(&self) -> Scalar {
        self.integer(1)
    }

    /// Parses "n" (either kind) or "n/d" (rational kind only).
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        match self.kind {
            ContextKind::Prime(p) => {
                let n: i64 = s
                    .parse()
                    .map_err(|_| Error::ParseError(format!("bad residue {s:?}")))?;
                let _ = p;
                Ok(self.integer(n))
            }
            ContextKind::Rational => {
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (s, "1"),
                };
                let num: BigInt = num
                    .parse()
                    .map_err(|_| Error::ParseError(format!("bad numerator {num:?}")))?;
                let den: BigInt = den
                    .parse()
                    .map_err(|_| Error::ParseError(format!("bad denominator {den:?}")))?;
                if den.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar {
                    ctx: *self,
                    repr: Repr::Ratio(BigRational::new(num, den)),
                })
            }
        }
    }

    /// All p elements of GF(p), in the order 0, 1, …, p−1.
    pub fn elements(&self) -> Result<Vec<Scalar>> {
        match self.kind {
            ContextKind::Prime(p) => Ok((0..p)
                .map(|v| Scalar {
                    ctx: *self,
                    repr: Repr::Residue(v),
                })
                .collect()),
            ContextKind::Rational => Err(Error::NotEnumerable),
        }
    }
}

impl fmt::Display for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ContextKind::Prime(p) => write!(f, "GF({p})"),
            ContextKind::Rational => write!(f, "Q"),
        }
    }
}

/// Enumerates the elements of a finite context; see [`FieldContext::elements`].
pub fn enumerate_scalars(ctx: &FieldContext) -> Result<Vec<Scalar>> {
    ctx.elements()
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Repr {
    Residue(u64),
    Ratio(BigRational),
}

/// An element of a field, in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    ctx: FieldContext,
    repr: Repr,
}

impl Scalar {
    pub fn context(&self) -> FieldContext {
        self.ctx
    }

    /// The canonical residue, for prime-field scalars.
    pub fn residue(&self) -> Option<u64> {
        match &self.repr {
            Repr::Residue(v) => Some(*v),
            Repr::Ratio(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Residue(v) => *v == 0,
            Repr::Ratio(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Residue(v) => *v == 1,
            Repr::Ratio(r) => r.is_one(),
        }
    }

    fn check_ctx(&self, other: &Scalar) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch(
                self.ctx.to_string(),
                other.ctx.to_string(),
            ));
        }
        Ok(())
    }

    fn lift(&self, v: u64) -> Scalar {
        Scalar {
            ctx: self.ctx,
            repr: Repr::Residue(v),
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        self.check_ctx(other)?;
        Ok(match (&self.repr, &other.repr) {
            (Repr::Residue(a), Repr::Residue(b)) => {
                let p = self.ctx.modulus().unwrap();
                self.lift(add_mod(*a, *b, p))
            }
            (Repr::Ratio(a), Repr::Ratio(b)) => Scalar {
                ctx: self.ctx,
                repr: Repr::Ratio(a + b),
            },
            _ => unreachable!("context equality implies matching representations"),
        })
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match &self.repr {
            Repr::Residue(a) => {
                let p = self.ctx.modulus().unwrap();
                self.lift(if *a == 0 { 0 } else { p - a })
            }
            Repr::Ratio(r) => Scalar {
                ctx: self.ctx,
                repr: Repr::Ratio(-r),
            },
        }
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check_ctx(other)?;
        Ok(match (&self.repr, &other.repr) {
            (Repr::Residue(a), Repr::Residue(b)) => {
                let p = self.ctx.modulus().unwrap();
                self.lift(mul_mod(*a, *b, p))
            }
            (Repr::Ratio(a), Repr::Ratio(b)) => Scalar {
                ctx: self.ctx,
                repr: Repr::Ratio(a * b),
            },
            _ => unreachable!("context equality implies matching representations"),
        })
    }

    pub fn inv(&self) -> Result<Scalar> {
        match &self.repr {
            Repr::Residue(a) => {
                let p = self.ctx.modulus().unwrap();
                let i = inv_mod(*a, p).ok_or(Error::DivisionByZero)?;
                Ok(self.lift(i))
            }
            Repr::Ratio(r) => {
                if r.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar {
                    ctx: self.ctx,
                    repr: Repr::Ratio(r.recip()),
                })
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        self.check_ctx(other)?;
        self.mul(&other.inv()?)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Residue(v) => write!(f, "{v}"),
            Repr::Ratio(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else if r.denom().is_negative() {
                    // BigRational::new keeps the denominator positive; this
                    // branch only guards hand-built values.
                    write!(f, "{}/{}", -r.numer(), -r.denom())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Modular inverse by extended Euclid; `None` for zero.
fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a == 0 {
        return None;
    }
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "modulus must be prime");
    Some(t0.rem_euclid(p as i128) as u64)
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}
