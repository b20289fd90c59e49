//! The twisted group algebra 𝒜 on H₁(F;ℤ) with [γ][η] = i^{−ω(γ,η)}[γ+η],
//! modulo [2γ] = 1.
//!
//! Every element is stored on the basis of canonical lifts (0/1 coordinate
//! vectors). A general generator [γ] is rewritten as i^{ω(η,γ)}[η], where η is
//! the canonical lift of γ mod 2.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::{HomClass, Lattice};
use crate::error::Result;
use crate::ring::GaussRat;

/// Rewrite [γ] as `unit · [key]` with `key` the 0/1 lift of γ.
pub fn a_canonicalize(gamma: &HomClass, lattice: &Lattice) -> Result<(GaussRat, HomClass)> {
    lattice.check(gamma)?;
    let key = gamma.canonical_lift();
    let e = lattice.omega(&key, gamma)?;
    Ok((GaussRat::i_pow(e), key))
}

/// Exponent form of [`a_canonicalize`]: [γ] = i^k·[key].
pub fn a_canonicalize_exp(gamma: &HomClass, lattice: &Lattice) -> Result<(i64, HomClass)> {
    lattice.check(gamma)?;
    let key = gamma.canonical_lift();
    let e = lattice.omega(&key, gamma)?;
    Ok((e.rem_euclid(4), key))
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct AElem {
    terms: BTreeMap<HomClass, GaussRat>,
}

impl AElem {
    pub fn zero() -> Self {
        AElem::default()
    }

    /// [0], the unit.
    pub fn one(lattice: &Lattice) -> Self {
        AElem::generator(&HomClass::zero(lattice.rank()), lattice).expect("zero class fits")
    }

    /// The canonicalized image of [γ].
    pub fn generator(gamma: &HomClass, lattice: &Lattice) -> Result<Self> {
        let (u, key) = a_canonicalize(gamma, lattice)?;
        let mut a = AElem::zero();
        a.add_term(key, &u);
        Ok(a)
    }

    fn add_term(&mut self, key: HomClass, c: &GaussRat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key.clone()).or_insert_with(GaussRat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&HomClass, &GaussRat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &HomClass) -> GaussRat {
        self.terms.get(key).cloned().unwrap_or_else(GaussRat::zero)
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        let mut out = AElem::zero();
        for (k, v) in &self.terms {
            out.add_term(k.clone(), &(v * c));
        }
        out
    }

    pub fn add(&self, other: &AElem) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v);
        }
        out
    }

    /// Distributive product, re-canonicalized.
    pub fn mul(&self, other: &AElem, lattice: &Lattice) -> Result<Self> {
        let mut out = AElem::zero();
        for (g, a) in &self.terms {
            for (h, b) in &other.terms {
                let w = lattice.omega(g, h)?;
                let (u, key) = a_canonicalize(&g.add(h), lattice)?;
                let c = &(a * b) * &(&GaussRat::i_pow(-w) * &u);
                out.add_term(key, &c);
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for AElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(k, c)| format!("{c}[{k}]")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use proptest::prelude::*;

    fn torus() -> Lattice {
        Lattice::symplectic(1)
    }

    fn g(v: &[i64]) -> AElem {
        AElem::generator(&HomClass(v.to_vec()), &torus()).unwrap()
    }

    fn unit_times(u: GaussRat, key: &[i64]) -> AElem {
        let mut a = AElem::zero();
        a.add_term(HomClass(key.to_vec()), &u);
        a
    }

    #[test]
    fn canonicalize_examples() {
        let l = torus();
        assert_eq!(
            a_canonicalize(&HomClass(vec![3, 0]), &l).unwrap(),
            (GaussRat::one(), HomClass(vec![1, 0]))
        );
        assert_eq!(
            a_canonicalize(&HomClass(vec![1, 2]), &l).unwrap(),
            (-GaussRat::one(), HomClass(vec![1, 0]))
        );
        assert_eq!(
            a_canonicalize(&HomClass(vec![0, 0]), &l).unwrap(),
            (GaussRat::one(), HomClass(vec![0, 0]))
        );
    }

    #[test]
    fn product_examples() {
        let l = torus();
        let e1 = g(&[1, 0]);
        let e2 = g(&[0, 1]);
        assert_eq!(e1.mul(&e2, &l).unwrap(), unit_times(-GaussRat::i(), &[1, 1]));
        assert_eq!(e1.mul(&e1, &l).unwrap(), unit_times(GaussRat::one(), &[0, 0]));
        assert_eq!(e2.mul(&e1, &l).unwrap(), unit_times(GaussRat::i(), &[1, 1]));
    }

    #[test]
    fn dimension_mismatch() {
        assert!(a_canonicalize(&HomClass(vec![1, 0, 0]), &torus()).is_err());
    }

    fn class() -> impl Strategy<Value = HomClass> {
        (-5i64..6, -5i64..6).prop_map(|(a, b)| HomClass(vec![a, b]))
    }

    proptest! {
        #[test]
        fn associative(a in class(), b in class(), c in class()) {
            let l = torus();
            let (x, y, z) = (AElem::generator(&a, &l)?, AElem::generator(&b, &l)?, AElem::generator(&c, &l)?);
            prop_assert_eq!(x.mul(&y, &l)?.mul(&z, &l)?, x.mul(&y.mul(&z, &l)?, &l)?);
        }

        #[test]
        fn generators_square_to_one(a in class()) {
            let l = torus();
            let x = AElem::generator(&a, &l)?;
            prop_assert_eq!(x.mul(&x, &l)?, AElem::one(&l));
        }

        #[test]
        fn grading(a in class(), b in class()) {
            let l = torus();
            let p = AElem::generator(&a, &l)?.mul(&AElem::generator(&b, &l)?, &l)?;
            let keys: Vec<_> = p.terms().map(|(k, _)| k.clone()).collect();
            prop_assert_eq!(keys, vec![a.add(&b).canonical_lift()]);
        }

        #[test]
        fn canonicalize_agrees_with_product(a in class()) {
            // [a₁e₁][a₂e₂] = i^{−ω(a₁e₁,a₂e₂)}[a], and [aⱼeⱼ] = [(aⱼ mod 2)eⱼ]
            // exactly, so [a] = i^{ω(a₁e₁,a₂e₂)}·[ε₁e₁]·[ε₂e₂].
            let l = torus();
            let (a1, a2) = (HomClass(vec![a.0[0], 0]), HomClass(vec![0, a.0[1]]));
            let w = l.omega(&a1, &a2)?;
            let f1 = AElem::generator(&a1.canonical_lift(), &l)?;
            let f2 = AElem::generator(&a2.canonical_lift(), &l)?;
            let via_product = f1.mul(&f2, &l)?.scale(&GaussRat::i_pow(w));
            prop_assert_eq!(via_product, AElem::generator(&a, &l)?);
        }
    }
}
