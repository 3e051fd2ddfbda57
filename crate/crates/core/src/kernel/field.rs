//! Coefficient fields and their elements.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ratfunc::{fmt_rational, RatFn, UPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    Prime(u64),
    /// Rational functions in one parameter over the rationals.
    RationalFunctions { param: String },
}

/// A coefficient field, optionally with a designated value for the
/// parameter `q` (the indeterminate itself for rational functions).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    kind: FieldKind,
    q_value: Option<Scalar>,
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec {
            kind: FieldKind::Rationals,
            q_value: None,
        }
    }

    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidAlgebra(format!("{p} is not prime")));
        }
        if p >= 1 << 32 {
            return Err(Error::InvalidAlgebra(format!("prime {p} exceeds 2^32")));
        }
        Ok(FieldSpec {
            kind: FieldKind::Prime(p),
            q_value: None,
        })
    }

    pub fn rational_functions(param: impl Into<String>) -> Self {
        FieldSpec {
            kind: FieldKind::RationalFunctions {
                param: param.into(),
            },
            q_value: None,
        }
    }

    /// Designates a value for `q` in a field without an indeterminate.
    pub fn with_q(mut self, q: &BigRational) -> Result<Self> {
        if let FieldKind::RationalFunctions { .. } = self.kind {
            return Err(Error::InvalidAlgebra(
                "a rational function field already carries its parameter".into(),
            ));
        }
        self.q_value = Some(self.from_rational(q)?);
        Ok(self)
    }

    pub fn kind(&self) -> &FieldKind {
        &self.kind
    }

    /// Name under which `q` may appear in expressions, if any.
    pub fn param_name(&self) -> Option<&str> {
        match &self.kind {
            FieldKind::RationalFunctions { param } => Some(param),
            _ if self.q_value.is_some() => Some("q"),
            _ => None,
        }
    }

    pub fn q(&self) -> Option<Scalar> {
        match &self.kind {
            FieldKind::RationalFunctions { .. } => Some(Scalar::Fn(RatFn::param())),
            _ => self.q_value.clone(),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_int(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        match &self.kind {
            FieldKind::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            FieldKind::Prime(p) => Scalar::Mod(Fp::new(n.rem_euclid(*p as i64) as u64, *p)),
            FieldKind::RationalFunctions { .. } => Scalar::Fn(RatFn::from_int(n)),
        }
    }

    pub fn from_rational(&self, r: &BigRational) -> Result<Scalar> {
        match &self.kind {
            FieldKind::Rationals => Ok(Scalar::Rat(r.clone())),
            FieldKind::Prime(p) => {
                let p_big = BigInt::from(*p);
                let num = r.numer().mod_floor(&p_big).to_u64().unwrap();
                let den = r.denom().mod_floor(&p_big).to_u64().unwrap();
                let den = Fp::new(den, *p).inv()?;
                Ok(Scalar::Mod(Fp::new(num, *p).mul(den)))
            }
            FieldKind::RationalFunctions { .. } => Ok(Scalar::Fn(RatFn::constant(r.clone()))),
        }
    }

    /// The q-integer `1 + q + ... + q^(n-1)`.
    pub fn q_integer(&self, n: u32) -> Result<Scalar> {
        let q = self.q().ok_or_else(|| {
            Error::PreconditionViolated("q-integers need a field with a designated q".into())
        })?;
        let mut acc = self.zero();
        let mut power = self.one();
        for _ in 0..n {
            acc = &acc + &power;
            power = &power * &q;
        }
        Ok(acc)
    }

    /// Renders a scalar using this field's parameter name.
    pub fn fmt_scalar(&self, s: &Scalar) -> String {
        match (s, &self.kind) {
            (Scalar::Fn(f), FieldKind::RationalFunctions { param }) => f.fmt_with(param),
            _ => s.to_string(),
        }
    }

    pub fn describe(&self) -> String {
        match (&self.kind, &self.q_value) {
            (FieldKind::Rationals, None) => "Q".into(),
            (FieldKind::Rationals, Some(q)) => format!("Q (q = {q})"),
            (FieldKind::Prime(p), None) => format!("F_{p}"),
            (FieldKind::Prime(p), Some(q)) => format!("F_{p} (q = {q})"),
            (FieldKind::RationalFunctions { param }, _) => format!("Q({param})"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Element of a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: u64, modulus: u64) -> Self {
        Fp {
            value: value % modulus,
            modulus,
        }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    fn add(self, o: Fp) -> Fp {
        Fp::new(self.value + o.value, self.modulus)
    }

    fn neg(self) -> Fp {
        Fp::new(self.modulus - self.value, self.modulus)
    }

    fn mul(self, o: Fp) -> Fp {
        Fp::new(
            ((self.value as u128 * o.value as u128) % self.modulus as u128) as u64,
            self.modulus,
        )
    }

    fn inv(self) -> Result<Fp> {
        if self.value == 0 {
            return Err(Error::DivisionByZero);
        }
        // Fermat: a^(p-2)
        let mut base = self;
        let mut e = self.modulus - 2;
        let mut acc = Fp::new(1, self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        Ok(acc)
    }
}

/// Element of a [`FieldSpec`]. Binary operations on elements of different
/// fields are a logic error and panic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod(Fp),
    Fn(RatFn),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod(m) => m.value == 0,
            Scalar::Fn(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod(m) => m.value == 1,
            Scalar::Fn(f) => f.is_one(),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Rat(r) if r.is_zero() => Err(Error::DivisionByZero),
            Scalar::Rat(r) => Ok(Scalar::Rat(r.recip())),
            Scalar::Mod(m) => Ok(Scalar::Mod(m.inv()?)),
            Scalar::Fn(f) => Ok(Scalar::Fn(f.inv()?)),
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// The unit of the same field.
    pub fn one_like(&self) -> Scalar {
        match self {
            Scalar::Rat(_) => Scalar::Rat(BigRational::one()),
            Scalar::Mod(m) => Scalar::Mod(Fp::new(1, m.modulus)),
            Scalar::Fn(_) => Scalar::Fn(RatFn::one()),
        }
    }

    pub fn zero_like(&self) -> Scalar {
        match self {
            Scalar::Rat(_) => Scalar::Rat(BigRational::zero()),
            Scalar::Mod(m) => Scalar::Mod(Fp::new(0, m.modulus)),
            Scalar::Fn(_) => Scalar::Fn(RatFn::zero()),
        }
    }

    /// Plain rational value when the element is one (constants in `Q(q)` included).
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Rat(r) => Some(r.clone()),
            Scalar::Mod(m) => Some(BigRational::from_integer(BigInt::from(m.value))),
            Scalar::Fn(f) => f.as_constant(),
        }
    }

    /// Specializes the parameter of a rational function to `t`; other
    /// elements are returned unchanged.
    pub fn eval_at(&self, t: &BigRational) -> Result<Scalar> {
        match self {
            Scalar::Fn(f) => Ok(Scalar::Rat(f.eval(t)?)),
            other => Ok(other.clone()),
        }
    }

    /// Whether printing should pull out a leading minus sign.
    pub fn has_negative_sign(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_negative(),
            Scalar::Mod(_) => false,
            Scalar::Fn(f) => {
                f.is_polynomial()
                    && f.numer().term_count() == 1
                    && f.numer().leading().is_some_and(|c| c.is_negative())
            }
        }
    }

    /// Whether the printed form is a single token product (no `+`/`-`/`/`
    /// at top level), so it may be written as a factor without parentheses.
    pub fn is_atomic(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.denom().is_one() && !r.is_negative(),
            Scalar::Mod(_) => true,
            Scalar::Fn(f) => {
                f.is_polynomial()
                    && f.numer().term_count() == 1
                    && !f.numer().leading().unwrap().is_negative()
                    && f
                        .numer()
                        .leading()
                        .map(|c| c.denom().is_one())
                        .unwrap_or(true)
            }
        }
    }

    pub fn ratfn(&self) -> Option<&RatFn> {
        match self {
            Scalar::Fn(f) => Some(f),
            _ => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => f.write_str(&fmt_rational(r)),
            Scalar::Mod(m) => write!(f, "{}", m.value),
            Scalar::Fn(r) => write!(f, "{r}"),
        }
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalars from different fields: {a:?} and {b:?}")
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod(a), Scalar::Mod(b)) => Scalar::Mod(a.add(*b)),
            (Scalar::Fn(a), Scalar::Fn(b)) => Scalar::Fn(a.add(b)),
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            (Scalar::Mod(a), Scalar::Mod(b)) => Scalar::Mod(a.add(b.neg())),
            (Scalar::Fn(a), Scalar::Fn(b)) => Scalar::Fn(a.sub(b)),
            _ => mismatch(self, rhs),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod(a), Scalar::Mod(b)) => Scalar::Mod(a.mul(*b)),
            (Scalar::Fn(a), Scalar::Fn(b)) => Scalar::Fn(a.mul(b)),
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod(a) => Scalar::Mod(a.neg()),
            Scalar::Fn(a) => Scalar::Fn(a.neg()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// `(1 - q)`-style helper used in tests and examples: a polynomial in the
/// parameter with integer coefficients.
pub fn q_poly(coeffs: &[i64]) -> Scalar {
    Scalar::Fn(RatFn::from_poly(UPoly::from_coeffs(
        coeffs
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect(),
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_integer_expands() {
        let f = FieldSpec::rational_functions("q");
        assert_eq!(f.q_integer(3).unwrap(), q_poly(&[1, 1, 1]));
        assert!(f.q_integer(0).unwrap().is_zero());
    }

    #[test]
    fn q_integer_at_designated_value() {
        let f = FieldSpec::rationals().with_q(&BigRational::from_integer(2.into())).unwrap();
        // 1 + 2 + 4 + 8
        assert_eq!(f.q_integer(4).unwrap(), f.from_int(15));
    }

    #[test]
    fn q_integer_needs_q() {
        assert!(matches!(
            FieldSpec::rationals().q_integer(2),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn prime_field_rejects_composites() {
        assert!(FieldSpec::prime(15).is_err());
        let f = FieldSpec::prime(7).unwrap();
        let three = f.from_int(3);
        assert_eq!(&three * &three.inv().unwrap(), f.one());
        assert_eq!(f.from_int(-1), f.from_int(6));
        assert_eq!(f.zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn prime_field_from_fraction() {
        let f = FieldSpec::prime(7).unwrap();
        let half = f.from_rational(&BigRational::new(1.into(), 2.into())).unwrap();
        assert_eq!(&half * &f.from_int(2), f.one());
        assert!(f.from_rational(&BigRational::new(1.into(), 7.into())).is_err());
    }

    #[test]
    fn evaluate_at_q() {
        let s = q_poly(&[1, -1]);
        assert_eq!(
            s.eval_at(&BigRational::from_integer(3.into())).unwrap(),
            Scalar::Rat(BigRational::from_integer((-2).into()))
        );
    }
}
