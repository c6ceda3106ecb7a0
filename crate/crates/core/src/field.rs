//! Exact scalars: the rationals and simple extensions `Q[t]/(m(t))`.
//!
//! A [`Field`] is a cheap, shareable handle on a [`FieldDescriptor`]. Every
//! [`FieldElement`] carries its field, stored as the coefficient vector
//! `c0 + c1 t + ... + c_{m-1} t^{m-1}` already reduced modulo the minimal
//! polynomial. Over the rationals `m = 1`.
//!
//! Irreducibility of a supplied minimal polynomial is not checked up front.
//! If it is false, inversion eventually hits a non-unit gcd and reports
//! [`Error::ReducibleModulus`].

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Builds `num/den` in canonical form.
pub fn normalize(num: BigInt, den: BigInt) -> Result<Rational> {
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(num, den))
}

pub fn rational(num: i64, den: i64) -> Rational {
    normalize(BigInt::from(num), BigInt::from(den)).expect("nonzero denominator")
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `"p"`, `"p/q"` or a plain decimal such as `"-1.25"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::ParseRational(text.to_string());
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        return normalize(num, den).map_err(|_| bad());
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.trim_start().starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !frac.chars().all(|c| c.is_ascii_digit())
            || !whole_digits.chars().all(|c| c.is_ascii_digit())
            || (whole_digits.is_empty() && frac.is_empty())
        {
            return Err(bad());
        }
        let digits = format!("{whole_digits}{frac}");
        let mut num: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits.parse().map_err(|_| bad())?
        };
        if negative {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10), frac.len());
        return normalize(num, den);
    }
    let num: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(num))
}

/// `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    Extension,
}

/// Description of a scalar field: either `Q` or `Q[t]/(min_poly)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldDescriptor {
    kind: FieldKind,
    /// Monic minimal polynomial, coefficients low-to-high. Empty for `Q`.
    min_poly: Vec<Rational>,
    label: String,
}

impl FieldDescriptor {
    pub fn rationals() -> Self {
        FieldDescriptor {
            kind: FieldKind::Rationals,
            min_poly: Vec::new(),
            label: "Q".to_string(),
        }
    }

    /// `Q[t]/(min_poly)`; `min_poly` is given low-to-high and must be monic of
    /// degree at least two.
    pub fn extension(min_poly: Vec<Rational>, label: impl Into<String>) -> Result<Self> {
        let mut min_poly = min_poly;
        while min_poly.last().is_some_and(Zero::is_zero) {
            min_poly.pop();
        }
        if min_poly.len() < 3 {
            return Err(Error::InvalidMinPoly(format!(
                "degree {} < 2",
                min_poly.len().saturating_sub(1)
            )));
        }
        if !min_poly.last().is_some_and(One::is_one) {
            return Err(Error::InvalidMinPoly("not monic".into()));
        }
        Ok(FieldDescriptor {
            kind: FieldKind::Extension,
            min_poly,
            label: label.into(),
        })
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn min_poly(&self) -> &[Rational] {
        &self.min_poly
    }

    /// Extension degree over `Q`.
    pub fn degree(&self) -> usize {
        match self.kind {
            FieldKind::Rationals => 1,
            FieldKind::Extension => self.min_poly.len() - 1,
        }
    }
}

/// Shared handle on a field descriptor.
#[derive(Clone, Debug)]
pub struct Field(Arc<FieldDescriptor>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Field {}

impl From<FieldDescriptor> for Field {
    fn from(desc: FieldDescriptor) -> Self {
        Field(Arc::new(desc))
    }
}

impl Field {
    pub fn rationals() -> Self {
        FieldDescriptor::rationals().into()
    }

    pub fn extension(min_poly: Vec<Rational>, label: impl Into<String>) -> Result<Self> {
        Ok(FieldDescriptor::extension(min_poly, label)?.into())
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.degree()
    }

    pub fn is_rationals(&self) -> bool {
        self.0.kind == FieldKind::Rationals
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![Rational::zero(); self.degree()],
            field: self.clone(),
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_rational(Rational::one())
    }

    pub fn from_rational(&self, r: Rational) -> FieldElement {
        let mut coeffs = vec![Rational::zero(); self.degree()];
        coeffs[0] = r;
        FieldElement {
            coeffs,
            field: self.clone(),
        }
    }

    pub fn from_int(&self, value: i64) -> FieldElement {
        self.from_rational(int(value))
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> FieldElement {
        self.from_rational(rational(num, den))
    }

    /// The class of `t`. Over `Q` this is an error: there is no generator.
    pub fn generator(&self) -> Result<FieldElement> {
        if self.is_rationals() {
            return Err(Error::Precondition("Q has no extension generator".into()));
        }
        let mut coeffs = vec![Rational::zero(); self.degree()];
        coeffs[1] = Rational::one();
        Ok(FieldElement {
            coeffs,
            field: self.clone(),
        })
    }

    /// Element with the given coefficients (low-to-high), reduced modulo the
    /// minimal polynomial. Any length is accepted.
    pub fn element(&self, coeffs: Vec<Rational>) -> FieldElement {
        FieldElement {
            coeffs: self.reduce(coeffs),
            field: self.clone(),
        }
    }

    fn reduce(&self, mut coeffs: Vec<Rational>) -> Vec<Rational> {
        let m = self.degree();
        if !self.is_rationals() {
            let mp = &self.0.min_poly;
            while coeffs.len() > m {
                let top = coeffs.pop().expect("nonempty");
                if top.is_zero() {
                    continue;
                }
                // t^m = -(mp_0 + ... + mp_{m-1} t^{m-1})
                let base = coeffs.len() - m;
                for (i, c) in mp[..m].iter().enumerate() {
                    if !c.is_zero() {
                        coeffs[base + i] -= &top * c;
                    }
                }
            }
        } else if coeffs.len() > 1 {
            // Over Q only the constant term is meaningful.
            coeffs.truncate(1);
        }
        coeffs.resize(m, Rational::zero());
        coeffs
    }
}

/// An element of a [`Field`].
#[derive(Clone)]
pub struct FieldElement {
    coeffs: Vec<Rational>,
    field: Field,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.is_rationals() {
            return write!(f, "{}", format_rational(&self.coeffs[0]));
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", format_rational(c))?,
                1 => write!(f, "({})*t", format_rational(c))?,
                _ => write!(f, "({})*t^{k}", format_rational(c))?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field == other.field
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Coefficients low-to-high; length equals the extension degree.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn to_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(FieldElement {
            coeffs,
            field: self.field.clone(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(FieldElement {
            coeffs,
            field: self.field.clone(),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        if self.field.is_rationals() {
            return Ok(FieldElement {
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
                field: self.field.clone(),
            });
        }
        let m = self.coeffs.len();
        let mut prod = vec![Rational::zero(); 2 * m - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(self.field.element(prod))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inverse()?)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm on the
    /// representative and the minimal polynomial.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NotInvertible);
        }
        if self.field.is_rationals() {
            return Ok(self.field.from_rational(self.coeffs[0].recip()));
        }
        let desc = self.field.descriptor();
        let (gcd, s) = upoly::gcd_cofactor(desc.min_poly(), &self.coeffs);
        if gcd.len() > 1 {
            return Err(Error::ReducibleModulus {
                label: desc.label().to_string(),
                gcd_degree: gcd.len() - 1,
            });
        }
        let scale = gcd[0].recip();
        Ok(self
            .field
            .element(s.into_iter().map(|c| c * &scale).collect()))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        FieldElement {
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
            field: self.field.clone(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Image under the field endomorphism sending `t` to `image_of_t`.
    pub fn apply_endomorphism(&self, image_of_t: &FieldElement) -> Result<Self> {
        self.check_field(image_of_t)?;
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.checked_mul(image_of_t)?;
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<'a> $tr<&'a FieldElement> for &'a FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &'a FieldElement) -> FieldElement {
                self.$checked(rhs).expect("field mismatch")
            }
        }
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$checked(&rhs).expect("field mismatch")
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &'a FieldElement) -> FieldElement {
                self.$checked(rhs).expect("field mismatch")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            field: self.field.clone(),
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// Dense univariate polynomials over `Q`, low-to-high, used for inversion.
mod upoly {
    use super::Rational;
    use num_traits::Zero;

    fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
        while p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
        p
    }

    fn sub_scaled_shift(a: &mut Vec<Rational>, b: &[Rational], c: &Rational, shift: usize) {
        if a.len() < b.len() + shift {
            a.resize(b.len() + shift, Rational::zero());
        }
        for (i, bi) in b.iter().enumerate() {
            if !bi.is_zero() {
                a[i + shift] -= c * bi;
            }
        }
    }

    fn divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let mut r = trim(a.to_vec());
        let lead = b.last().expect("nonzero divisor").clone();
        let mut q = vec![Rational::zero(); r.len().saturating_sub(b.len()) + 1];
        while r.len() >= b.len() && !r.is_empty() {
            let shift = r.len() - b.len();
            let c = r.last().expect("nonempty") / &lead;
            sub_scaled_shift(&mut r, b, &c, shift);
            q[shift] = c;
            r = trim(r);
        }
        (trim(q), r)
    }

    fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = a.to_vec();
        sub_scaled_shift(&mut out, b, &Rational::from_integer(1.into()), 0);
        trim(out)
    }

    /// Returns `(g, s)` with `s * x ≡ g (mod m)` and `g = gcd(m, x)`.
    pub(super) fn gcd_cofactor(m: &[Rational], x: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let (mut r0, mut r1) = (trim(m.to_vec()), trim(x.to_vec()));
        let (mut s0, mut s1) = (Vec::new(), vec![Rational::from_integer(1.into())]);
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1);
            let s = sub(&s0, &mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        (r0, s0)
    }
}
