//! Elements of the skein algebra over the multicurve basis, their ℤ₂
//! grading, and elements of the tensor product with 𝒜.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::diagram::{SimpleMulticurve, Surface};
use crate::error::{Error, Result};
use crate::homology::{HomClass, Z2Class};
use crate::json::{as_array, as_i64, field, i64_value};
use crate::ring::{GaussRat, LaurentPoly};

#[derive(Clone, PartialEq, Eq)]
pub struct Skein {
    surface: Surface,
    terms: BTreeMap<SimpleMulticurve, LaurentPoly>,
}

impl Skein {
    pub fn zero(surface: &Surface) -> Self {
        Skein { surface: surface.clone(), terms: BTreeMap::new() }
    }

    /// The basis element `mc` with coefficient 1.
    pub fn basis(mc: SimpleMulticurve, surface: &Surface) -> Result<Self> {
        mc.validate(surface)?;
        let mut s = Skein::zero(surface);
        s.terms.insert(mc, LaurentPoly::one());
        Ok(s)
    }

    /// The empty multicurve, the unit of the algebra.
    pub fn unit(surface: &Surface) -> Self {
        Skein::basis(SimpleMulticurve::empty(), surface).expect("empty multicurve is valid")
    }

    pub fn surface(&self) -> &Surface {
        &self.surface
    }

    pub fn add_term(&mut self, mc: SimpleMulticurve, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(mc.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&mc);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SimpleMulticurve, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coeff(&self, mc: &SimpleMulticurve) -> LaurentPoly {
        self.terms.get(mc).cloned().unwrap_or_default()
    }

    fn check_surface(&self, other: &Skein) -> Result<()> {
        if self.surface != other.surface {
            return Err(Error::SurfaceMismatch(format!("{:?}", self.surface), format!("{:?}", other.surface)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Skein) -> Result<Skein> {
        self.check_surface(other)?;
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Skein) -> Result<Skein> {
        self.add(&other.scale(&-LaurentPoly::one()))
    }

    pub fn scale(&self, c: &LaurentPoly) -> Skein {
        let mut out = Skein::zero(&self.surface);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), &(v * c));
        }
        out
    }

    /// Substitutes ζ ↦ iζ in every coefficient.
    pub fn twist(&self) -> Skein {
        Skein { surface: self.surface.clone(), terms: self.terms.iter().map(|(k, v)| (k.clone(), v.twist())).collect() }
    }

    /// Coefficients at a fourth root of unity, zeros dropped.
    pub fn eval(&self, zeta: &GaussRat) -> Result<BTreeMap<SimpleMulticurve, GaussRat>> {
        let mut out = BTreeMap::new();
        for (k, v) in &self.terms {
            let x = v.eval(zeta)?;
            if !x.is_zero() {
                out.insert(k.clone(), x);
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms.iter().map(|(mc, c)| json!({"multicurve": multicurve_to_json(mc), "coeff": c.to_json()})).collect(),
        )
    }

    pub fn from_json(v: &Value, surface: &Surface) -> Result<Skein> {
        let mut out = Skein::zero(surface);
        for (i, t) in as_array(v, "skein")?.iter().enumerate() {
            let ctx = format!("skein[{i}]");
            let mc = multicurve_from_json(field(t, "multicurve", &ctx)?, &ctx)?;
            mc.validate(surface)?;
            if out.terms.contains_key(&mc) {
                return Err(Error::input(ctx, "repeated multicurve"));
            }
            let c = LaurentPoly::from_json(field(t, "coeff", &ctx)?)?;
            out.add_term(mc, &c);
        }
        Ok(out)
    }
}

impl fmt::Debug for Skein {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(k, v)| format!("({v})·{k:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn multicurve_to_json(mc: &SimpleMulticurve) -> Value {
    let slopes: Vec<Value> =
        mc.slopes.iter().map(|(&(p, q), &m)| Value::Array(vec![i64_value(p), i64_value(q), i64_value(m as i64)])).collect();
    json!({"slopes": slopes, "boundary_parallel": mc.boundary_parallel})
}

pub fn multicurve_from_json(v: &Value, ctx: &str) -> Result<SimpleMulticurve> {
    let mut mc = SimpleMulticurve::empty();
    for s in as_array(field(v, "slopes", ctx)?, ctx)? {
        let a = as_array(s, ctx)?;
        if a.len() != 3 {
            return Err(Error::input(ctx, "slope entries are [p, q, multiplicity]"));
        }
        let (p, q, m) = (as_i64(&a[0], ctx)?, as_i64(&a[1], ctx)?, as_i64(&a[2], ctx)?);
        let m = u32::try_from(m).map_err(|_| Error::input(ctx, "multiplicity must be non-negative"))?;
        let part = SimpleMulticurve::slope(p, q, m)?;
        for (k, n) in part.slopes {
            *mc.slopes.entry(k).or_insert(0) += n;
        }
    }
    let bp = v.get("boundary_parallel").map(|b| as_i64(b, ctx)).transpose()?.unwrap_or(0);
    mc.boundary_parallel = u32::try_from(bp).map_err(|_| Error::input(ctx, "boundary_parallel must be non-negative"))?;
    Ok(mc)
}

/// ℤ₂ class of a basis multicurve.
pub fn z2_class(mc: &SimpleMulticurve, surface: &Surface) -> Z2Class {
    mc.class(surface.rank()).mod2()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSkein {
    pub parts: BTreeMap<Z2Class, Skein>,
}

pub fn grade(x: &Skein) -> GradedSkein {
    let mut parts: BTreeMap<Z2Class, Skein> = BTreeMap::new();
    for (mc, c) in x.terms() {
        parts.entry(z2_class(mc, x.surface())).or_insert_with(|| Skein::zero(x.surface())).add_term(mc.clone(), c);
    }
    GradedSkein { parts }
}

/// A character of H₁(F;ℤ₂), u ↦ (−1)^{⟨values, u⟩}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub values: Vec<u8>,
}

impl Character {
    pub fn eval(&self, u: &Z2Class) -> i64 {
        let dot: u32 = self.values.iter().zip(&u.0).map(|(&a, &b)| (a & b) as u32).sum();
        if dot % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

pub fn character_act(x: &Skein, c: &Character) -> Result<Skein> {
    if c.values.len() != x.surface().rank() {
        return Err(Error::DimensionMismatch { expected: x.surface().rank(), got: c.values.len() });
    }
    let mut out = Skein::zero(x.surface());
    for (mc, v) in x.terms() {
        let sign = c.eval(&z2_class(mc, x.surface()));
        out.add_term(mc.clone(), &v.scale(&GaussRat::from_int(sign)));
    }
    Ok(out)
}

/// An element of K_ζ(F) ⊗ 𝒜 on the basis (multicurve, canonical lift).
#[derive(Clone, Default, PartialEq, Eq)]
pub struct TensorElem {
    terms: BTreeMap<(SimpleMulticurve, HomClass), LaurentPoly>,
}

impl TensorElem {
    pub fn zero() -> Self {
        TensorElem::default()
    }

    pub fn add_term(&mut self, mc: SimpleMulticurve, lift: HomClass, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let key = (mc, lift);
        let slot = self.terms.entry(key.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(SimpleMulticurve, HomClass), &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mc: &SimpleMulticurve, lift: &HomClass) -> LaurentPoly {
        self.terms.get(&(mc.clone(), lift.clone())).cloned().unwrap_or_default()
    }

    /// Whether every term pairs a multicurve with the lift of its own ℤ₂ class.
    pub fn is_diagonal(&self, surface: &Surface) -> bool {
        self.terms.keys().all(|(mc, lift)| z2_class(mc, surface) == lift.mod2())
    }

    /// First key where the two elements differ, with both coefficients.
    pub fn first_difference(&self, other: &TensorElem) -> Option<(SimpleMulticurve, HomClass, LaurentPoly, LaurentPoly)> {
        let keys: std::collections::BTreeSet<_> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter().find_map(|k| {
            let (a, b) = (self.coeff(&k.0, &k.1), other.coeff(&k.0, &k.1));
            (a != b).then(|| (k.0.clone(), k.1.clone(), a, b))
        })
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|((mc, lift), c)| {
                    json!({
                        "multicurve": multicurve_to_json(mc),
                        "lift": lift.0.iter().map(|&x| i64_value(x)).collect::<Vec<_>>(),
                        "coeff": c.to_json(),
                    })
                })
                .collect(),
        )
    }
}

impl fmt::Debug for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|((mc, l), v)| format!("({v})·{mc:?}⊗[{l}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> Surface {
        Surface::torus()
    }

    fn basis(p: i64, q: i64, m: u32) -> Skein {
        Skein::basis(SimpleMulticurve::slope(p, q, m).unwrap(), &t()).unwrap()
    }

    #[test]
    fn grading_examples() {
        let g = grade(&basis(1, 0, 1));
        assert_eq!(g.parts.keys().cloned().collect::<Vec<_>>(), vec![Z2Class(vec![1, 0])]);
        let g = grade(&Skein::unit(&t()));
        assert_eq!(g.parts.keys().cloned().collect::<Vec<_>>(), vec![Z2Class(vec![0, 0])]);
        assert_eq!(grade(&basis(1, 1, 2)).parts.keys().next(), Some(&Z2Class(vec![0, 0])));
    }

    #[test]
    fn character_examples() {
        let x = basis(1, 0, 1);
        let trivial = Character { values: vec![0, 0] };
        assert_eq!(character_act(&x, &trivial).unwrap(), x);
        let c = Character { values: vec![1, 0] };
        assert_eq!(character_act(&x, &c).unwrap(), x.scale(&-LaurentPoly::one()));
        let even = basis(1, 1, 2).add(&Skein::unit(&t())).unwrap();
        for values in [vec![0, 1], vec![1, 0], vec![1, 1]] {
            assert_eq!(character_act(&even, &Character { values }).unwrap(), even);
        }
    }

    #[test]
    fn json_round_trip() {
        let mut x = basis(2, -1, 3).scale(&LaurentPoly::zeta_pow(-3));
        x = x.add(&Skein::unit(&t()).scale(&LaurentPoly::loop_value())).unwrap();
        let text = serde_json::to_string(&x.to_json()).unwrap();
        let back = Skein::from_json(&serde_json::from_str(&text).unwrap(), &t()).unwrap();
        assert_eq!(back, x);
        assert!(text.contains(r#""slopes":[[2,-1,3]]"#));
    }

    #[test]
    fn rejects_mixed_or_bad_multicurves() {
        let v: Value = serde_json::from_str(r#"[{"multicurve": {"slopes": [[1,0,1],[0,1,1]], "boundary_parallel": 0}, "coeff": []}]"#).unwrap();
        assert!(Skein::from_json(&v, &t()).is_err());
        let v: Value = serde_json::from_str(r#"[{"multicurve": {"slopes": [[2,2,1]], "boundary_parallel": 0}, "coeff": []}]"#).unwrap();
        assert!(Skein::from_json(&v, &t()).is_err());
    }
}
