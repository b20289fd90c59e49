use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde_json::Value;

use super::GaussRat;
use crate::error::{Error, Result};
use crate::json;

/// A Laurent polynomial in ζ with Gaussian-rational coefficients.
///
/// Stored sparsely; a zero coefficient is never kept, so structural equality
/// is coefficient-wise equality.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, GaussRat>,
}

impl LaurentPoly {
    pub fn new() -> Self {
        LaurentPoly { coeffs: BTreeMap::new() }
    }

    pub fn constant(c: GaussRat) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(exp: i64, c: GaussRat) -> Self {
        let mut p = Self::new();
        p.add_term(exp, &c);
        p
    }

    /// ζ^k with coefficient 1.
    pub fn zeta_pow(k: i64) -> Self {
        Self::monomial(k, GaussRat::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, GaussRat)>>(terms: I) -> Self {
        let mut p = Self::new();
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    /// −ζ² − ζ⁻², the value of a trivial loop.
    pub fn loop_value() -> Self {
        Self::from_terms([(2, -GaussRat::one()), (-2, -GaussRat::one())])
    }

    pub fn add_term(&mut self, exp: i64, c: &GaussRat) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exp).or_insert_with(GaussRat::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i64) -> GaussRat {
        self.coeffs.get(&exp).cloned().unwrap_or_else(GaussRat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &GaussRat)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    /// Multiply by ζ^k.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, a)| (e + k, a.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute ζ ↦ iζ: the coefficient at exponent k picks up i^k.
    pub fn twist(&self) -> Self {
        LaurentPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, a)| (*e, a * &GaussRat::i_pow(*e)))
                .collect(),
        }
    }

    /// Exact value at a fourth root of unity.
    pub fn eval(&self, zeta: &GaussRat) -> Result<GaussRat> {
        let k = zeta
            .unit_exponent()
            .ok_or_else(|| Error::NotFourthRoot(zeta.to_string()))?;
        let mut acc = GaussRat::zero();
        for (e, a) in &self.coeffs {
            acc += &(a * &GaussRat::i_pow(k * e));
        }
        Ok(acc)
    }

    /// Approximate value at an arbitrary complex ζ = (re, im). Floating point;
    /// only for diagnostics, never for verification.
    pub fn eval_approx(&self, re: f64, im: f64) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let (r, th) = ((re * re + im * im).sqrt(), im.atan2(re));
        let mut acc = (0.0, 0.0);
        for (e, a) in &self.coeffs {
            let (ar, ai) = (a.re.to_f64().unwrap_or(f64::NAN), a.im.to_f64().unwrap_or(f64::NAN));
            let m = r.powi(*e as i32);
            let (zr, zi) = (m * (th * *e as f64).cos(), m * (th * *e as f64).sin());
            acc.0 += ar * zr - ai * zi;
            acc.1 += ar * zi + ai * zr;
        }
        acc
    }

    /// `[[exp, re_num, re_den, im_num, im_den], ...]`, sorted by exponent.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.coeffs
                .iter()
                .map(|(e, c)| {
                    Value::Array(vec![
                        json::i64_value(*e),
                        json::int_value(c.re.numer()),
                        json::int_value(c.re.denom()),
                        json::int_value(c.im.numer()),
                        json::int_value(c.im.denom()),
                    ])
                })
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let ctx = "laurent polynomial";
        let mut p = Self::new();
        let mut last: Option<i64> = None;
        for (idx, t) in json::as_array(v, ctx)?.iter().enumerate() {
            let at = format!("{ctx}[{idx}]");
            let t = json::as_array(t, &at)?;
            if t.len() != 5 {
                return Err(Error::input(at, "expected a 5-tuple"));
            }
            let e = json::as_i64(&t[0], &at)?;
            if last.is_some_and(|l| l >= e) {
                return Err(Error::input(at, "exponents must be strictly increasing"));
            }
            last = Some(e);
            let re = json::as_rat(&Value::Array(vec![t[1].clone(), t[2].clone()]), &at)?;
            let im = json::as_rat(&Value::Array(vec![t[3].clone(), t[4].clone()]), &at)?;
            p.add_term(e, &GaussRat::new(re, im));
        }
        Ok(p)
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        Self::new()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        Self::constant(GaussRat::one())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .rev()
            .map(|(e, c)| match e {
                0 => format!("{c}"),
                _ => format!("{c}·z^{e}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, c);
        }
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, &-c);
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::new();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-GaussRat::one())
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-GaussRat::one())
    }
}
