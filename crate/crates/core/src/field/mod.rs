//! Exact scalars.
//!
//! A [`FieldElement`] lives in a cyclotomic field Q(ζ_n), optionally extended by one
//! adjoined square root `w` of a real positive radicand r ∈ Q(ζ_n) (so that data such as
//! √φ for the Fibonacci category, which is not cyclotomic, can still be written exactly).
//! The value is `a + b·w` with `a, b ∈ Q(ζ_n)`; the radicand is carried only while `b ≠ 0`.
//!
//! Binary operations between elements of different orders embed both operands into
//! Q(ζ_lcm). Operands carrying two different radicands have no common field here; the
//! `try_*` methods report this as [`FieldError::IncompatibleRadicands`], the operator
//! impls panic.

mod cyclo;
mod parse;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use cyclo::Cyclo;
pub use parse::parse_field_element;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands adjoin different square roots and have no common field")]
    IncompatibleRadicands,
    #[error("cannot parse field element `{text}`: {reason}")]
    Parse { text: String, reason: String },
}

#[derive(Clone)]
struct Radical {
    coeff: Cyclo,
    radicand: Arc<Cyclo>,
}

/// Exact element of Q(ζ_n)(√r).
#[derive(Clone)]
pub struct FieldElement {
    base: Cyclo,
    rad: Option<Radical>,
}

fn common_order(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

impl FieldElement {
    pub fn zero(order: u32) -> Self {
        FieldElement {
            base: Cyclo::zero(order),
            rad: None,
        }
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(order, BigRational::one())
    }

    pub fn from_rational(order: u32, q: BigRational) -> Self {
        FieldElement {
            base: Cyclo::from_rational(order, &q),
            rad: None,
        }
    }

    pub fn from_int(order: u32, k: i64) -> Self {
        Self::from_rational(order, BigRational::from_integer(BigInt::from(k)))
    }

    pub fn frac(order: u32, p: i64, q: i64) -> Self {
        Self::from_rational(order, BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// ζ_n^k.
    pub fn zeta(order: u32, k: i64) -> Self {
        FieldElement {
            base: Cyclo::zeta_power(order, k),
            rad: None,
        }
    }

    /// The adjoined root `w` with `w² = radicand`. The radicand must be a real positive
    /// number (checked numerically) that is not itself a square; callers validate the
    /// latter by supplying data that needs the extension.
    pub fn sqrt_of(radicand: &FieldElement) -> Self {
        assert!(radicand.rad.is_none(), "nested radicals are not supported");
        let (re, im) = radicand.to_complex();
        assert!(
            re > 0.0 && im.abs() < 1e-9,
            "adjoined square roots need a real positive radicand"
        );
        let n = radicand.order();
        FieldElement {
            base: Cyclo::zero(n),
            rad: Some(Radical {
                coeff: Cyclo::from_rational(n, &BigRational::one()),
                radicand: Arc::new(radicand.base.clone()),
            }),
        }
    }

    /// Cyclotomic order of the representation.
    pub fn order(&self) -> u32 {
        self.base.n
    }

    /// Radicand of the adjoined root, if this element uses it.
    pub fn radicand(&self) -> Option<FieldElement> {
        self.rad.as_ref().map(|r| FieldElement {
            base: (*r.radicand).clone(),
            rad: None,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero() && self.rad.is_none()
    }

    pub fn is_one(&self) -> bool {
        self.rad.is_none() && self.base.as_rational().is_some_and(|q| q.is_one())
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.rad.is_some() {
            return None;
        }
        self.base.as_rational()
    }

    /// Re-express in Q(ζ_m) for a multiple m of the current order.
    pub fn embed(&self, m: u32) -> Self {
        FieldElement {
            base: self.base.embed(m),
            rad: self.rad.as_ref().map(|r| Radical {
                coeff: r.coeff.embed(m),
                radicand: Arc::new(r.radicand.embed(m)),
            }),
        }
    }

    fn aligned(&self, other: &Self) -> Result<(Self, Self, Option<Arc<Cyclo>>), FieldError> {
        let m = common_order(self.order(), other.order());
        let a = self.embed(m);
        let b = other.embed(m);
        let rad = match (&a.rad, &b.rad) {
            (Some(x), Some(y)) => {
                if !x.radicand.eq_value(&y.radicand) {
                    return Err(FieldError::IncompatibleRadicands);
                }
                Some(x.radicand.clone())
            }
            (Some(x), None) => Some(x.radicand.clone()),
            (None, Some(y)) => Some(y.radicand.clone()),
            (None, None) => None,
        };
        Ok((a, b, rad))
    }

    fn build(base: Cyclo, coeff: Cyclo, radicand: Option<Arc<Cyclo>>) -> Self {
        let rad = match radicand {
            Some(r) if !coeff.is_zero() => Some(Radical { coeff, radicand: r }),
            _ => None,
        };
        FieldElement { base, rad }
    }

    fn rad_coeff(&self) -> Cyclo {
        match &self.rad {
            Some(r) => r.coeff.clone(),
            None => Cyclo::zero(self.order()),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, FieldError> {
        let (a, b, r) = self.aligned(other)?;
        Ok(Self::build(
            a.base.add(&b.base),
            a.rad_coeff().add(&b.rad_coeff()),
            r,
        ))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, FieldError> {
        let (a, b, r) = self.aligned(other)?;
        match (&a.rad, &b.rad) {
            (None, None) => Ok(Self::build(
                a.base.mul(&b.base),
                Cyclo::zero(a.order()),
                None,
            )),
            _ => {
                let rr = r.clone().expect("radicand present");
                let (a0, a1) = (a.base.clone(), a.rad_coeff());
                let (b0, b1) = (b.base.clone(), b.rad_coeff());
                let base = a0.mul(&b0).add(&a1.mul(&b1).mul(&rr));
                let coeff = a0.mul(&b1).add(&a1.mul(&b0));
                Ok(Self::build(base, coeff, r))
            }
        }
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, FieldError> {
        let inv = other.inverse().ok_or(FieldError::DivisionByZero)?;
        self.try_mul(&inv)
    }

    pub fn inverse(&self) -> Option<Self> {
        match &self.rad {
            None => self
                .base
                .inverse()
                .map(|b| FieldElement { base: b, rad: None }),
            Some(r) => {
                // (a + b w)^{-1} = (a - b w) / (a² - b² r)
                let a = &self.base;
                let b = &r.coeff;
                let norm = a.mul(a).add(&b.mul(b).mul(&r.radicand).neg());
                let ninv = norm.inverse()?;
                Some(Self::build(
                    a.mul(&ninv),
                    b.neg().mul(&ninv),
                    Some(r.radicand.clone()),
                ))
            }
        }
    }

    fn neg_ref(&self) -> Self {
        FieldElement {
            base: self.base.neg(),
            rad: self.rad.as_ref().map(|r| Radical {
                coeff: r.coeff.neg(),
                radicand: r.radicand.clone(),
            }),
        }
    }

    /// Complex conjugation: ζ ↦ ζ^{-1}; the adjoined root of a real positive radicand is fixed.
    pub fn conjugate(&self) -> Self {
        FieldElement {
            base: self.base.galois(-1),
            rad: self.rad.as_ref().map(|r| Radical {
                coeff: r.coeff.galois(-1),
                radicand: r.radicand.clone(),
            }),
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        let mut base = if k < 0 {
            self.inverse().expect("negative power of zero")
        } else {
            self.clone()
        };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one(self.order());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Numerical value at ζ_n = exp(2πi/n), with `w` the positive square root.
    pub fn to_complex(&self) -> (f64, f64) {
        let (mut re, mut im) = self.base.to_complex();
        if let Some(r) = &self.rad {
            let (rr, _) = r.radicand.to_complex();
            let w = rr.sqrt();
            let (cr, ci) = r.coeff.to_complex();
            re += cr * w;
            im += ci * w;
        }
        (re, im)
    }

    /// Decimal display of the numerical value, marked approximate with a leading `~`.
    pub fn approx_string(&self, digits: usize) -> String {
        let digits = digits.min(15);
        let (re, im) = self.to_complex();
        let clean = |x: f64| {
            if x.abs() < 0.5 * 10f64.powi(-(digits as i32)) {
                0.0
            } else {
                x
            }
        };
        let (re, im) = (clean(re), clean(im));
        if im == 0.0 {
            format!("~{:.*}", digits, re)
        } else if im < 0.0 {
            format!("~{:.*} - {:.*}i", digits, re, digits, -im)
        } else {
            format!("~{:.*} + {:.*}i", digits, re, digits, im)
        }
    }

    /// Coefficients in the power basis of Q(ζ_n) for the plain and the `w` part.
    pub fn coefficients(&self) -> (Vec<BigRational>, Vec<BigRational>) {
        let d = self.base.num.len();
        let a = (0..d).map(|k| self.base.coeff(k)).collect();
        let b = match &self.rad {
            Some(r) => (0..d).map(|k| r.coeff.coeff(k)).collect(),
            None => vec![BigRational::zero(); d],
        };
        (a, b)
    }

    pub(crate) fn from_parts(
        order: u32,
        plain: &[(i64, BigRational)],
        with_root: &[(i64, BigRational)],
        radicand: Option<&FieldElement>,
    ) -> Self {
        let base = Cyclo::from_exponent_coeffs(order, plain);
        let coeff = Cyclo::from_exponent_coeffs(order, with_root);
        let r = radicand.map(|r| Arc::new(r.embed(order).base.clone()));
        Self::build(base, coeff, r)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        if !self.base.eq_value(&other.base) {
            return false;
        }
        match (&self.rad, &other.rad) {
            (None, None) => true,
            (Some(x), Some(y)) => x.radicand.eq_value(&y.radicand) && x.coeff.eq_value(&y.coeff),
            _ => false,
        }
    }
}

impl Eq for FieldElement {}

fn fmt_poly(f: &mut fmt::Formatter<'_>, c: &Cyclo, suffix: &str, first: &mut bool) -> fmt::Result {
    for k in (0..c.num.len()).rev() {
        let q = c.coeff(k);
        if q.is_zero() {
            continue;
        }
        let neg = q < BigRational::zero();
        let mag = if neg { -q.clone() } else { q.clone() };
        if *first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        *first = false;
        let mut factors: Vec<String> = Vec::new();
        if !mag.is_one() || (k == 0 && suffix.is_empty()) {
            factors.push(mag.to_string());
        }
        match k {
            0 => {}
            1 => factors.push("z".into()),
            _ => factors.push(format!("z^{k}")),
        }
        if !suffix.is_empty() {
            factors.push(suffix.into());
        }
        write!(f, "{}", factors.join("*"))?;
    }
    Ok(())
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        fmt_poly(f, &self.base, "", &mut first)?;
        if let Some(r) = &self.rad {
            fmt_poly(f, &r.coeff, "w", &mut first)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [Q(z_{})", self, self.order())?;
        if let Some(r) = self.radicand() {
            write!(f, ", w^2 = {r}")?;
        }
        write!(f, "]")
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                self.$try(rhs).expect("field operation failed")
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$try(&rhs).expect("field operation failed")
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                (&self).$try(rhs).expect("field operation failed")
            }
        }
        impl $tr<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                self.$try(&rhs).expect("field operation failed")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl std::ops::AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        *self = &*self + rhs;
    }
}

impl std::ops::MulAssign<&FieldElement> for FieldElement {
    fn mul_assign(&mut self, rhs: &FieldElement) {
        *self = &*self * rhs;
    }
}

/// Sum of an iterator of elements in Q(ζ_order).
pub fn sum<'a, I: IntoIterator<Item = &'a FieldElement>>(order: u32, it: I) -> FieldElement {
    it.into_iter()
        .fold(FieldElement::zero(order), |acc, x| &acc + x)
}

#[cfg(test)]
mod tests;
