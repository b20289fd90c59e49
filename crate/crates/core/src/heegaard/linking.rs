//! ℤ₂-linking numbers of ℤ₂-null links and the signed product on K⁰ at a
//! fourth root of unity.

use std::collections::BTreeSet;

use num_traits::Zero;

use super::data::HeegaardData;
use crate::diagram::{stack, Diagram, SimpleMulticurve};
use crate::error::{Error, Result};
use crate::homology::{HomClass, Z2Class};
use crate::ring::{GaussRat, LaurentPoly};
use crate::skein::{basis_product, bracket, Skein};

fn omega2(a: &Z2Class, b: &Z2Class) -> u8 {
    (a.0[0] * b.0[1] + a.0[1] * b.0[0]) % 2
}

/// Crossings where `bounding` is over `other`, plus the mod-2 intersection
/// of `other` with the red half of a GF(2) decomposition of `bounding`: the
/// capping surface hangs down from `bounding`, blue caps below and red caps
/// above. One value per decomposition.
fn surface_counts(d: &Diagram, bounding: &[bool], h: &HeegaardData) -> Vec<u8> {
    let sum = |want: bool| {
        d.classes().iter().zip(bounding).filter(|(_, &b)| b == want).fold(HomClass::zero(2), |acc, (c, _)| acc.add(c))
    };
    let (upper, lower) = (sum(true).mod2(), sum(false).mod2());
    let over = d.crossings().iter().filter(|x| bounding[x.over.comp] && !bounding[x.under.comp]).count();
    h.z2_decompositions(&upper).iter().map(|(rho, _)| ((over % 2) as u8 + omega2(&lower, rho)) % 2).collect()
}

/// lk₂ of the first `split` components of `d` against the rest. Both capping
/// surfaces and every GF(2) decomposition are tried and must agree.
pub fn lk2_split(d: &Diagram, split: usize, h: &HeegaardData) -> Result<u8> {
    if split > d.n_components() {
        return Err(Error::input("split", format!("{split} exceeds {} components", d.n_components())));
    }
    let first: Vec<bool> = (0..d.n_components()).map(|c| c < split).collect();
    let second: Vec<bool> = first.iter().map(|b| !b).collect();
    for (name, part) in [("first", &first), ("second", &second)] {
        let x = d.classes().iter().zip(part.iter()).filter(|(_, &b)| b).fold(HomClass::zero(2), |acc, (c, _)| acc.add(c));
        if !h.is_z2_null(&x.mod2()) {
            return Err(Error::Grading(format!("{name} link has class {x}, not zero in H1(M; Z2)")));
        }
    }
    let values: BTreeSet<u8> = surface_counts(d, &first, h).into_iter().chain(surface_counts(d, &second, h)).collect();
    match values.len() {
        1 => Ok(*values.iter().next().expect("one value")),
        _ => Err(Error::Grading("lk2 depends on the capping surface".into())),
    }
}

/// lk₂ with `above` stacked over `below`.
pub fn lk2(above: &Diagram, below: &Diagram, h: &HeegaardData) -> Result<u8> {
    lk2_split(&stack(above, below)?, above.n_components(), h)
}

/// lk₂ of basis multicurves stacked `a` over `b`, from their classes alone.
pub fn lk2_classes(a: &HomClass, b: &HomClass, h: &HeegaardData) -> Result<u8> {
    let (a2, b2) = (a.mod2(), b.mod2());
    if !h.is_z2_null(&a2) || !h.is_z2_null(&b2) {
        return Err(Error::Grading(format!("classes {a} and {b} must vanish in H1(M; Z2)")));
    }
    let (rho, _) = h.z2_decompositions(&a2).into_iter().next().expect("null class decomposes");
    Ok((omega2(&a2, &b2) + omega2(&b2, &rho)) % 2)
}

fn evaluate(x: &Skein, zeta: &GaussRat) -> Result<Skein> {
    let mut out = Skein::zero(x.surface());
    for (mc, c) in x.eval(zeta)? {
        out.add_term(mc, &LaurentPoly::constant(c));
    }
    Ok(out)
}

/// (−1)^{lk₂(x, y)} ⟨x over y⟩ at `zeta`, with constant coefficients.
pub fn k0_product(x: &Diagram, y: &Diagram, h: &HeegaardData, zeta: &GaussRat, cap: usize) -> Result<Skein> {
    let d = stack(x, y)?;
    let sign = lk2_split(&d, x.n_components(), h)?;
    let b = evaluate(&bracket(&d, cap)?, zeta)?;
    Ok(if sign == 1 { b.scale(&-LaurentPoly::constant(GaussRat::from_int(1))) } else { b })
}

/// The bilinear extension of the signed product to skein elements with
/// constant coefficients.
pub fn k0_mul(a: &Skein, b: &Skein, h: &HeegaardData, zeta: &GaussRat, cap: usize) -> Result<Skein> {
    let mut out = Skein::zero(a.surface());
    for (alpha, ca) in a.terms() {
        for (beta, cb) in b.terms() {
            let coeff = &ca.eval(zeta)? * &cb.eval(zeta)?;
            if coeff.is_zero() {
                continue;
            }
            let sign = lk2_classes(&alpha.class(2), &beta.class(2), h)?;
            let prod = evaluate(&basis_product(alpha, beta, a.surface(), cap)?, zeta)?;
            let s = if sign == 1 { -coeff } else { coeff };
            out = out.add(&prod.scale(&LaurentPoly::constant(s)))?;
        }
    }
    Ok(out)
}

/// The basis element `mc` with coefficient 1, checked to be ℤ₂-null in M.
pub fn k0_basis(mc: SimpleMulticurve, h: &HeegaardData) -> Result<Skein> {
    if !h.is_z2_null(&mc.class(2).mod2()) {
        return Err(Error::Grading(format!("{mc:?} is not zero in H1(M; Z2)")));
    }
    Skein::basis(mc, &h.surface)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{build_diagram, ComponentSpec, DiagramSpec, Point, Surface};
    use crate::skein::realize_diagram;

    fn mc(p: i64, q: i64, m: u32) -> SimpleMulticurve {
        SimpleMulticurve::slope(p, q, m).unwrap()
    }

    fn real(m: &SimpleMulticurve, phase: u8) -> Diagram {
        realize_diagram(m, &Surface::torus(), phase).unwrap()
    }

    #[test]
    fn split_null_curves() {
        let h = HeegaardData::lens(3, 1).unwrap();
        assert_eq!(lk2(&real(&mc(1, 0, 2), 0), &real(&mc(1, 0, 2), 1), &h).unwrap(), 0);
    }

    #[test]
    fn hopf_in_a_disk() {
        // two squares overlapping at a corner; the first passes over once and under once
        let sq = |x0: i64, y0: i64, levels: Vec<i64>| ComponentSpec {
            vertices: vec![
                Point::rats(x0, 40, y0, 40),
                Point::rats(x0 + 10, 40, y0, 40),
                Point::rats(x0 + 10, 40, y0 + 10, 40),
                Point::rats(x0, 40, y0 + 10, 40),
                Point::rats(x0, 40, y0, 40),
            ],
            level: 0,
            segment_levels: Some(levels),
        };
        let a = sq(3, 3, vec![2, 2, 0, 0]);
        let b = sq(8, 8, vec![1, 1, 1, 1]);
        let d = build_diagram(DiagramSpec { surface: Surface::torus(), components: vec![a, b], overrides: vec![] }).unwrap();
        assert_eq!(d.n_crossings(), 2);
        for h in [HeegaardData::lens(3, 1).unwrap(), HeegaardData::lens(2, 1).unwrap()] {
            assert_eq!(lk2_split(&d, 1, &h).unwrap(), 1);
        }
    }

    #[test]
    fn rp3_example_and_decomposition_independence() {
        let h = HeegaardData::lens(2, 1).unwrap();
        // (1,0) decomposes as red or as blue (1,2); both give the same answer
        assert_eq!(h.z2_decompositions(&Z2Class(vec![1, 0])).len(), 2);
        assert_eq!(lk2(&real(&mc(1, 0, 1), 0), &real(&mc(0, 1, 2), 1), &h).unwrap(), 0);
        assert!(matches!(lk2(&real(&mc(0, 1, 1), 0), &real(&mc(1, 0, 1), 1), &h), Err(Error::Grading(_))));
    }

    #[test]
    fn order_swap_and_class_formula() {
        let h = HeegaardData::lens(3, 1).unwrap();
        let slopes = [(1, 0, 1), (0, 1, 1), (1, 1, 1), (2, 1, 1), (1, -1, 2)];
        for &(p, q, m) in &slopes {
            for &(r, s, n) in &slopes {
                let (a, b) = (mc(p, q, m), mc(r, s, n));
                let d = stack(&real(&a, 0), &real(&b, 1)).unwrap();
                let ab = lk2_split(&d, a.n() as usize, &h).unwrap();
                assert_eq!(ab, lk2_classes(&a.class(2), &b.class(2), &h).unwrap());
                // restacking the other way changes every crossing between them
                let ba = lk2(&real(&b, 0), &real(&a, 1), &h).unwrap();
                assert_eq!((ab + ba) as usize % 2, d.n_crossings() % 2, "{a:?} {b:?}");
            }
        }
    }

    #[test]
    fn signs_follow_lk2() {
        let h = HeegaardData::lens(3, 1).unwrap();
        let zeta = -GaussRat::i();
        let (x, y) = (real(&mc(1, 0, 1), 0), real(&mc(0, 1, 1), 1));
        let plain = evaluate(&bracket(&stack(&x, &y).unwrap(), 20).unwrap(), &zeta).unwrap();
        let signed = k0_product(&x, &y, &h, &zeta, 20).unwrap();
        let l = lk2(&x, &y, &h).unwrap();
        let expected = if l == 1 { plain.scale(&-LaurentPoly::constant(GaussRat::from_int(1))) } else { plain };
        assert_eq!(signed, expected);
        assert_eq!(lk2_classes(&HomClass(vec![1, 0]), &HomClass(vec![0, 1]), &h).unwrap(), l);
    }

    #[test]
    fn triple_associativity_at_minus_i() {
        let h = HeegaardData::lens(3, 1).unwrap();
        let zeta = -GaussRat::i();
        let (x, y, z) = (
            k0_basis(mc(1, 0, 1), &h).unwrap(),
            k0_basis(mc(0, 1, 1), &h).unwrap(),
            k0_basis(mc(1, 1, 1), &h).unwrap(),
        );
        let left = k0_mul(&k0_mul(&x, &y, &h, &zeta, 20).unwrap(), &z, &h, &zeta, 20).unwrap();
        let right = k0_mul(&x, &k0_mul(&y, &z, &h, &zeta, 20).unwrap(), &h, &zeta, 20).unwrap();
        assert_eq!(left, right);
        assert!(!left.is_zero());
    }
}
