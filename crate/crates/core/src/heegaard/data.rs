//! Genus-1 Heegaard data: red attaching curves above the torus, blue below.

use serde_json::{json, Value};

use crate::diagram::Surface;
use crate::error::{Error, Result};
use crate::homology::{smith_form, HomClass, Lattice, Z2Class};
use crate::json::{as_array, as_i64, field, i64_value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn name(self) -> &'static str {
        match self {
            Color::Red => "red",
            Color::Blue => "blue",
        }
    }
}

/// One attaching curve, by color and position in its list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CurveRef {
    pub color: Color,
    pub index: usize,
}

impl CurveRef {
    pub fn red(index: usize) -> Self {
        CurveRef { color: Color::Red, index }
    }

    pub fn blue(index: usize) -> Self {
        CurveRef { color: Color::Blue, index }
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.color.name(), self.index)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeegaardData {
    pub surface: Surface,
    pub red: Vec<HomClass>,
    pub blue: Vec<HomClass>,
}

fn gcd(a: i64, b: i64) -> i64 {
    num_integer::gcd(a, b)
}

impl HeegaardData {
    /// Validates primitivity and disjointness within each color.
    pub fn new(red: Vec<HomClass>, blue: Vec<HomClass>) -> Result<Self> {
        let lattice = Lattice::symplectic(1);
        for (color, list) in [("red", &red), ("blue", &blue)] {
            for (i, c) in list.iter().enumerate() {
                lattice.check(c)?;
                if gcd(c.0[0], c.0[1]) != 1 {
                    return Err(Error::input(format!("{color}[{i}]"), format!("class {c} is not primitive")));
                }
                for (j, d) in list.iter().enumerate().skip(i + 1) {
                    if lattice.omega(c, d)? != 0 {
                        return Err(Error::input(format!("{color}[{j}]"), format!("{color} curves {i} and {j} intersect")));
                    }
                }
            }
        }
        Ok(HeegaardData { surface: Surface::torus(), red, blue })
    }

    /// The lens space with red (1,0) and blue (q,p); H₁ = ℤ/p.
    pub fn lens(p: i64, q: i64) -> Result<Self> {
        HeegaardData::new(vec![HomClass(vec![1, 0])], vec![HomClass(vec![q, p])])
    }

    pub fn lattice(&self) -> Lattice {
        Lattice::symplectic(1)
    }

    pub fn class_of(&self, c: CurveRef) -> Result<&HomClass> {
        let list = match c.color {
            Color::Red => &self.red,
            Color::Blue => &self.blue,
        };
        list.get(c.index).ok_or_else(|| Error::input("curve", format!("no curve {}", c.label())))
    }

    pub fn curves(&self) -> Vec<CurveRef> {
        (0..self.red.len()).map(CurveRef::red).chain((0..self.blue.len()).map(CurveRef::blue)).collect()
    }

    /// All GF(2) decompositions x = ρ + β with ρ ∈ ⟨R⟩₂ and β ∈ ⟨B⟩₂, as (ρ, β).
    pub fn z2_decompositions(&self, x: &Z2Class) -> Vec<(Z2Class, Z2Class)> {
        let span = |list: &[HomClass]| -> Vec<Z2Class> {
            let mut out = vec![Z2Class::zero(2)];
            for g in list {
                let g2 = g.mod2();
                let extra: Vec<Z2Class> = out.iter().map(|v| v.add(&g2)).collect();
                for e in extra {
                    if !out.contains(&e) {
                        out.push(e);
                    }
                }
            }
            out
        };
        let reds = span(&self.red);
        let blues = span(&self.blue);
        let mut out = Vec::new();
        for r in &reds {
            for b in &blues {
                if &r.add(b) == x {
                    out.push((r.clone(), b.clone()));
                }
            }
        }
        out
    }

    /// Whether x is zero in H₁(M; ℤ₂).
    pub fn is_z2_null(&self, x: &Z2Class) -> bool {
        !self.z2_decompositions(x).is_empty()
    }

    pub fn to_json(&self) -> Value {
        let list = |l: &[HomClass]| Value::Array(l.iter().map(|c| json!([i64_value(c.0[0]), i64_value(c.0[1])])).collect());
        json!({"red": list(&self.red), "blue": list(&self.blue)})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let read = |key: &str| -> Result<Vec<HomClass>> {
            as_array(field(v, key, "heegaard")?, key)?
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let ctx = format!("{key}[{i}]");
                    let a = as_array(c, &ctx)?;
                    if a.len() != 2 {
                        return Err(Error::input(ctx, "expected [p, q]"));
                    }
                    Ok(HomClass(vec![as_i64(&a[0], &ctx)?, as_i64(&a[1], &ctx)?]))
                })
                .collect()
        };
        HeegaardData::new(read("red")?, read("blue")?)
    }
}

/// H₁(M; ℤ) as invariant factors other than 1, with 0 standing for a ℤ summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldH1 {
    pub factors: Vec<i64>,
    pub two_torsion: bool,
}

pub fn manifold_h1(h: &HeegaardData) -> ManifoldH1 {
    let rows: Vec<Vec<i64>> = h.red.iter().chain(&h.blue).map(|c| c.0.clone()).collect();
    let nonzero = if rows.is_empty() { Vec::new() } else { smith_form(&rows).nonzero() };
    let mut factors: Vec<i64> = nonzero.iter().copied().filter(|&d| d != 1).collect();
    factors.extend(std::iter::repeat_n(0, 2 - nonzero.len()));
    let two_torsion = factors.iter().any(|&d| d != 0 && d % 2 == 0);
    ManifoldH1 { factors, two_torsion }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn h(red: [i64; 2], blue: [i64; 2]) -> HeegaardData {
        HeegaardData::new(vec![HomClass(red.to_vec())], vec![HomClass(blue.to_vec())]).unwrap()
    }

    #[test]
    fn lens_examples() {
        assert_eq!(manifold_h1(&h([1, 0], [0, 1])), ManifoldH1 { factors: vec![], two_torsion: false });
        assert_eq!(manifold_h1(&h([1, 0], [1, 2])), ManifoldH1 { factors: vec![2], two_torsion: true });
        assert_eq!(manifold_h1(&h([1, 0], [1, 3])), ManifoldH1 { factors: vec![3], two_torsion: false });
        assert_eq!(manifold_h1(&h([1, 0], [1, 0])).factors, vec![0]);
    }

    /// Order and exponent of ℤ²/⟨a, b⟩ by listing residues of a box of side |det|.
    fn brute_group(a: [i64; 2], b: [i64; 2]) -> (i64, i64) {
        let d = (a[0] * b[1] - a[1] * b[0]).abs();
        // coordinates of (x, y) in the basis a, b, scaled by d and reduced mod d
        let coords = |x: i64, y: i64| ((x * b[1] - y * b[0]).rem_euclid(d), (a[0] * y - a[1] * x).rem_euclid(d));
        let mut seen = std::collections::BTreeSet::new();
        let mut exponent = 1;
        for x in 0..d {
            for y in 0..d {
                let (s, t) = coords(x, y);
                if seen.insert((s, t)) {
                    let order = (1..=d).find(|k| (k * s) % d == 0 && (k * t) % d == 0).unwrap();
                    exponent = exponent.max(order);
                }
            }
        }
        (seen.len() as i64, exponent)
    }

    #[test]
    fn h1_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut checked = 0;
        while checked < 60 {
            let a = [rng.gen_range(-6..=6), rng.gen_range(-6..=6)];
            let b = [rng.gen_range(-6..=6), rng.gen_range(-6..=6)];
            if gcd(a[0], a[1]) != 1 || gcd(b[0], b[1]) != 1 || a[0] * b[1] - a[1] * b[0] == 0 {
                continue;
            }
            let got = manifold_h1(&h(a, b));
            let (order, exponent) = brute_group(a, b);
            assert_eq!(got.factors.iter().product::<i64>(), order);
            assert_eq!(got.factors.last().copied().unwrap_or(1), exponent);
            assert_eq!(got.two_torsion, order % 2 == 0);
            checked += 1;
        }
    }

    #[test]
    fn decompositions() {
        let rp3 = h([1, 0], [1, 2]);
        assert_eq!(rp3.z2_decompositions(&Z2Class(vec![1, 0])).len(), 2);
        assert!(!rp3.is_z2_null(&Z2Class(vec![0, 1])));
        let l31 = h([1, 0], [1, 3]);
        assert!(l31.is_z2_null(&Z2Class(vec![0, 1])));
    }

    #[test]
    fn json_and_validation() {
        let v: Value = serde_json::from_str(r#"{"red": [[1,0]], "blue": [[1,3]]}"#).unwrap();
        let d = HeegaardData::from_json(&v).unwrap();
        assert_eq!(d, HeegaardData::lens(3, 1).unwrap());
        assert_eq!(HeegaardData::from_json(&d.to_json()).unwrap(), d);
        for bad in [r#"{"red": [[2,0]], "blue": []}"#, r#"{"red": [[1,0],[0,1]], "blue": []}"#, r#"{"red": [[1]], "blue": []}"#] {
            assert!(HeegaardData::from_json(&serde_json::from_str(bad).unwrap()).is_err());
        }
    }
}
