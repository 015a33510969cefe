//! Exact coefficient arithmetic.
//!
//! Everything scalar lives in the Laurent ring ℚ[s, s⁻¹] with `s² = q`, or in
//! its fraction field. Half-integer powers of `q` appear in the generator
//! action, so `s` rather than `q` is the formal variable; integer powers of
//! `q` are even powers of `s`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserialize, Deserializer};
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};

/// Commutative ring operations shared by every coefficient type.
pub trait Scalar:
    Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + Zero + One + 'static
{
    fn add_assign_ref(&mut self, other: &Self);
    fn sub_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    fn add_ref(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r.add_assign_ref(other);
        r
    }

    fn sub_ref(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r.sub_assign_ref(other);
        r
    }
}

pub trait Field: Scalar {
    /// `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn div_ref(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul_ref(&i))
    }
}

/// Scalars that contain the Laurent ring, so structure constants of the
/// algebra can be promoted into them.
pub trait Coefficient: Scalar {
    fn from_laurent(p: &LaurentPoly) -> Self;
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Scalar for BigRational {
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

// ---------------------------------------------------------------------------
// Dense univariate helpers over ℚ. Vectors are ascending and carry no
// trailing zeros; the empty vector is zero.

fn trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let mut rem = a.to_vec();
    let lead = b.last().unwrap();
    let mut quot = vec![BigRational::zero(); a.len() - b.len() + 1];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + b.len() - 1] / lead;
        if !Zero::is_zero(&c) {
            for (i, bi) in b.iter().enumerate() {
                rem[k + i] -= &c * bi;
            }
        }
        quot[k] = c;
    }
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

fn poly_make_monic(v: &mut [BigRational]) {
    if let Some(lead) = v.last().cloned() {
        if !lead.is_one() {
            for c in v.iter_mut() {
                *c /= &lead;
            }
        }
    }
}

fn poly_gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        let (_, r) = poly_divrem(&x, &y);
        x = y;
        y = r;
        poly_make_monic(&mut y);
    }
    poly_make_monic(&mut x);
    x
}

// ---------------------------------------------------------------------------

/// Laurent polynomial in `s` with rational coefficients.
///
/// Stored densely from the lowest nonzero exponent; both ends are trimmed so
/// equal polynomials have identical representations.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i32,
    coeffs: Vec<BigRational>,
}

impl LaurentPoly {
    fn from_raw(low: i32, mut coeffs: Vec<BigRational>) -> Self {
        trim(&mut coeffs);
        let lead_zeros = coeffs.iter().take_while(|c| Zero::is_zero(*c)).count();
        if lead_zeros == coeffs.len() {
            return LaurentPoly::default();
        }
        coeffs.drain(..lead_zeros);
        LaurentPoly {
            low: low + lead_zeros as i32,
            coeffs,
        }
    }

    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(0, c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(int(c))
    }

    pub fn monomial(exp: i32, c: BigRational) -> Self {
        Self::from_raw(exp, vec![c])
    }

    /// `s^exp`.
    pub fn s_pow(exp: i32) -> Self {
        Self::monomial(exp, BigRational::one())
    }

    /// `q^exp = s^(2 exp)`.
    pub fn q_pow(exp: i32) -> Self {
        Self::s_pow(2 * exp)
    }

    /// Builds from `(exponent of s, coefficient)` pairs; repeated exponents add.
    pub fn from_terms<I: IntoIterator<Item = (i32, BigRational)>>(terms: I) -> Self {
        let terms: Vec<_> = terms.into_iter().collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![BigRational::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - lo) as usize] += c;
        }
        Self::from_raw(lo, coeffs)
    }

    /// Same as [`from_terms`](Self::from_terms) with exponents of `q`.
    pub fn from_q_terms<I: IntoIterator<Item = (i32, i64)>>(terms: I) -> Self {
        Self::from_terms(terms.into_iter().map(|(e, c)| (2 * e, int(c))))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Units of the Laurent ring are exactly the nonzero monomials.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn low_exp(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn high_exp(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    pub fn coeff(&self, exp: i32) -> BigRational {
        let i = exp - self.low;
        if i < 0 || i as usize >= self.coeffs.len() {
            BigRational::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigRational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !Zero::is_zero(*c))
            .map(move |(i, c)| (self.low + i as i32, c))
    }

    pub fn has_only_even_powers(&self) -> bool {
        self.terms().all(|(e, _)| e % 2 == 0)
    }

    /// Multiplies by `s^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if Zero::is_zero(c) {
            return Self::zero();
        }
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r.add_assign(other);
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r.sub_assign(other);
        r
    }

    fn combine_assign(&mut self, other: &Self, negate: bool) {
        if other.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = if negate { other.neg() } else { other.clone() };
            return;
        }
        let lo = self.low.min(other.low);
        let hi = self.high_exp().unwrap().max(other.high_exp().unwrap());
        if lo < self.low {
            let pad = (self.low - lo) as usize;
            let mut v = vec![BigRational::zero(); pad];
            v.append(&mut self.coeffs);
            self.coeffs = v;
            self.low = lo;
        }
        let len = (hi - lo + 1) as usize;
        if self.coeffs.len() < len {
            self.coeffs.resize(len, BigRational::zero());
        }
        let off = (other.low - lo) as usize;
        for (i, c) in other.coeffs.iter().enumerate() {
            if negate {
                self.coeffs[off + i] -= c;
            } else {
                self.coeffs[off + i] += c;
            }
        }
        let coeffs = std::mem::take(&mut self.coeffs);
        *self = Self::from_raw(self.low, coeffs);
    }

    pub fn add_assign(&mut self, other: &Self) {
        self.combine_assign(other, false);
    }

    pub fn sub_assign(&mut self, other: &Self) {
        self.combine_assign(other, true);
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.is_unit() && other.coeffs[0].is_one() {
            return self.shift(other.low);
        }
        if self.is_unit() && self.coeffs[0].is_one() {
            return other.shift(self.low);
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !Zero::is_zero(b) {
                    out[i + j] += a * b;
                }
            }
        }
        Self::from_raw(self.low + other.low, out)
    }

    /// Integer power; negative exponents are defined only for units.
    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            let inv = self.unit_inverse().ok_or(Error::NegativePowerOfNonUnit)?;
            return inv.pow(-e);
        }
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    pub fn unit_inverse(&self) -> Option<Self> {
        self.is_unit()
            .then(|| Self::monomial(-self.low, self.coeffs[0].recip()))
    }

    /// Coefficients of the polynomial part `s^(-low) · self`.
    fn poly_part(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Exact quotient `self / divisor` in the Laurent ring.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (q, r) = poly_divrem(self.poly_part(), divisor.poly_part());
        if !r.is_empty() {
            return Err(Error::NotDivisible);
        }
        Ok(Self::from_raw(self.low - divisor.low, q))
    }

    /// Monic gcd of the polynomial parts; the result has a nonzero constant
    /// term, so it is a canonical associate in the Laurent ring.
    pub fn gcd(&self, other: &Self) -> Self {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => Self::zero(),
            (true, false) => other.monic_poly_part(),
            (false, true) => self.monic_poly_part(),
            (false, false) => Self::from_raw(0, poly_gcd(self.poly_part(), other.poly_part())),
        }
    }

    fn monic_poly_part(&self) -> Self {
        let mut v = self.coeffs.clone();
        poly_make_monic(&mut v);
        Self::from_raw(0, v)
    }

    /// Leading (highest exponent) coefficient.
    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    /// Evaluates with `s = v`.
    pub fn eval_at(&self, v: &BigRational) -> Result<BigRational> {
        if self.is_zero() {
            return Ok(BigRational::zero());
        }
        if Zero::is_zero(v) {
            return if self.low < 0 {
                Err(Error::EvalAtZero)
            } else {
                Ok(self.coeff(0))
            };
        }
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * v + c;
        }
        Ok(acc * pow_rational(v, self.low))
    }

    /// Evaluates at a rational value of `q = s²`; only even powers of `s`
    /// are allowed.
    pub fn eval_q(&self, qv: &BigRational) -> Result<BigRational> {
        if !self.has_only_even_powers() {
            return Err(Error::OddPower);
        }
        let halved = Self::from_terms(self.terms().map(|(e, c)| (e / 2, c.clone())));
        halved.eval_at(qv)
    }

    /// Substitutes `s ↦ s^k` (k ≠ 0).
    pub fn substitute_power(&self, k: i32) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e * k, c.clone())))
    }
}

pub fn pow_rational(v: &BigRational, e: i32) -> BigRational {
    let r = num_traits::pow(v.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        r.recip()
    } else {
        r
    }
}

impl Scalar for LaurentPoly {
    fn add_assign_ref(&mut self, other: &Self) {
        self.add_assign(other)
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        self.sub_assign(other)
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl std::ops::Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                <$t>::add(&self, &rhs)
            }
        }
        impl std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                <$t>::sub(&self, &rhs)
            }
        }
        impl std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                <$t>::mul(&self, &rhs)
            }
        }
        impl std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                <$t>::neg(&self)
            }
        }
        impl Zero for $t {
            fn zero() -> $t {
                <$t>::zero()
            }
            fn is_zero(&self) -> bool {
                <$t>::is_zero(self)
            }
        }
        impl One for $t {
            fn one() -> $t {
                <$t>::one()
            }
        }
    };
}

owned_ops!(LaurentPoly);
owned_ops!(RationalFunction);

impl Coefficient for LaurentPoly {
    fn from_laurent(p: &LaurentPoly) -> Self {
        p.clone()
    }
}

fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_q_power(e: i32) -> Option<String> {
    match e {
        0 => None,
        2 => Some("q".to_string()),
        e if e % 2 == 0 => Some(format!("q^{}", e / 2)),
        e => Some(format!("q^({}/2)", e)),
    }
}

/// Renders in powers of `q`, ascending, e.g. `1 - q^6` or `-q^(1/2)`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match fmt_q_power(e) {
                None => write!(f, "{}", fmt_rational(&abs))?,
                Some(p) if abs.is_one() => write!(f, "{p}")?,
                Some(p) => write!(f, "{}*{p}", fmt_rational(&abs))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// Serialized as `[[exponent of s, "num/den"], ...]`, ascending.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<_> = self.terms().collect();
        let mut seq = serializer.serialize_seq(Some(terms.len()))?;
        for (e, c) in terms {
            seq.serialize_element(&(e, format!("{}/{}", c.numer(), c.denom())))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<(i32, String)> = Vec::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(raw.len());
        for (e, c) in raw {
            let c = BigRational::from_str(&c).map_err(de::Error::custom)?;
            terms.push((e, c));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

// ---------------------------------------------------------------------------

/// Element of the fraction field of the Laurent ring.
///
/// Canonical form: the denominator is a monic polynomial in `s` with nonzero
/// constant term, coprime to the numerator. Any power of `s` is carried by
/// the numerator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunction {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let num = num.shift(-den.low);
        let den = den.shift(-den.low);
        let (num, den) = if den.is_unit() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_unit() {
                (num, den)
            } else {
                (
                    num.exact_div(&g).expect("gcd divides numerator"),
                    den.exact_div(&g).expect("gcd divides denominator"),
                )
            }
        };
        let lead = den.leading_coeff().unwrap().clone();
        if lead.is_one() {
            RationalFunction { num, den }
        } else {
            let inv = lead.recip();
            RationalFunction {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from(LaurentPoly::one())
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The value as a Laurent polynomial when the denominator is trivial.
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        self.den.is_unit().then_some(&self.num)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::reduce(self.num.add(&other.num), self.den.clone());
        }
        Self::reduce(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_unit() && other.den.is_unit() {
            return Self::from(self.num.mul(&other.num));
        }
        Self::reduce(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        let inv = other.inv().ok_or(Error::DivisionByZero)?;
        Ok(self.mul(&inv))
    }

    /// Value at `s = 1` after full reduction.
    pub fn limit_at_one(&self) -> Result<BigRational> {
        let one = BigRational::one();
        let d = self.den.eval_at(&one)?;
        if Zero::is_zero(&d) {
            return Err(Error::PoleAtOne);
        }
        Ok(self.num.eval_at(&one)? / d)
    }

    /// Evaluates at a rational `q`; both parts must be even in `s`.
    pub fn eval_q(&self, qv: &BigRational) -> Result<BigRational> {
        let d = self.den.eval_q(qv)?;
        if Zero::is_zero(&d) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval_q(qv)? / d)
    }
}

impl From<LaurentPoly> for RationalFunction {
    fn from(p: LaurentPoly) -> Self {
        RationalFunction {
            num: p,
            den: LaurentPoly::one(),
        }
    }
}

/// Reduced value at `s = 1` (equivalently `q → 1`).
pub fn rational_limit_at_one(r: &RationalFunction) -> Result<BigRational> {
    r.limit_at_one()
}

impl Scalar for RationalFunction {
    fn add_assign_ref(&mut self, other: &Self) {
        *self = self.add(other);
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        *self = RationalFunction::sub(self, other);
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn neg_ref(&self) -> Self {
        self.neg()
    }
}

impl Field for RationalFunction {
    fn inv(&self) -> Option<Self> {
        RationalFunction::inv(self)
    }
}

impl Coefficient for RationalFunction {
    fn from_laurent(p: &LaurentPoly) -> Self {
        RationalFunction::from(p.clone())
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_unit() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

impl Serialize for RationalFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("RationalFunction", 2)?;
        st.serialize_field("num", &self.num)?;
        st.serialize_field("den", &self.den)?;
        st.end()
    }
}
