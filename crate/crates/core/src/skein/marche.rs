//! The maps φ: K_{iζ}(F) → K_ζ(F) ⊗ 𝒜 on multicurves and ψ on diagrams, and
//! an exact check that bracketing commutes with them.

use serde_json::{json, Value};

use super::bracket::bracket;
use super::element::{multicurve_to_json, Skein, TensorElem};
use crate::diagram::{
    orient_data, resolve_with, same_direction_count, ArcSystem, Diagram, OrientedDiagram, State,
};
use crate::error::Result;
use crate::homology::{a_canonicalize, HomClass};
use crate::ring::GaussRat;

/// φ(α) = (−1)^{n(α)} α ⊗ [ᾱ], extended linearly.
pub fn phi(x: &Skein) -> Result<TensorElem> {
    let lattice = x.surface().lattice();
    let rank = x.surface().rank();
    let mut out = TensorElem::zero();
    for (mc, c) in x.terms() {
        let (unit, lift) = a_canonicalize(&mc.class(rank), &lattice)?;
        let sign = GaussRat::sign_pow(mc.n() as i64);
        out.add_term(mc.clone(), lift, &c.scale(&(&sign * &unit)));
    }
    Ok(out)
}

/// ψ(D) = coeff · D ⊗ [lift].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiImage {
    pub coeff: GaussRat,
    pub diagram: Diagram,
    pub lift: HomClass,
}

/// ψ for a given orientation: (−1)^{n(D)} i^{−w(D̄)} D ⊗ [Ξ], with [Ξ] canonicalized.
pub fn psi_oriented(od: &OrientedDiagram) -> Result<PsiImage> {
    let d = &od.base;
    let data = orient_data(od);
    let (unit, lift) = a_canonicalize(&data.xi, &d.surface().lattice())?;
    let coeff = &(&GaussRat::sign_pow(d.n_components() as i64) * &GaussRat::i_pow(-data.writhe)) * &unit;
    Ok(PsiImage { coeff, diagram: d.clone(), lift })
}

/// ψ with every component oriented along its vertex order.
pub fn psi(d: &Diagram) -> Result<PsiImage> {
    psi_oriented(&OrientedDiagram::forward(d.clone()))
}

#[derive(Clone, Debug)]
pub struct CommReport {
    pub holds: bool,
    /// (⟨·⟩_ζ ⊗ Id)(ψ(D))
    pub lhs: TensorElem,
    /// φ(⟨D⟩_{iζ})
    pub rhs: TensorElem,
    pub states_checked: usize,
    /// Every state satisfied ss + ns = cr, i^{c+w} = (−1)^{ss}, [s̄] = (−1)^{½Ξ·s̄}[Ξ],
    /// and the mod-2 Euler characteristic identities.
    pub state_identities_hold: bool,
    pub witness: Option<Value>,
}

impl CommReport {
    pub fn to_json(&self) -> Value {
        json!({
            "holds": self.holds,
            "states_checked": self.states_checked,
            "state_identities_hold": self.state_identities_hold,
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "witness": self.witness.clone().unwrap_or(Value::Null),
        })
    }
}

struct StateFailure {
    state: State,
    what: &'static str,
}

fn check_states(d: &Diagram) -> Result<(usize, Option<StateFailure>)> {
    let od = OrientedDiagram::forward(d.clone());
    let data = orient_data(&od);
    let lattice = d.surface().lattice();
    let rank = d.surface().rank();
    let cr = d.n_crossings();
    let sys = ArcSystem::new(d);
    let (xi_unit, xi_key) = a_canonicalize(&data.xi, &lattice)?;
    let mut count = 0;
    for s in State::all(cr) {
        count += 1;
        let r = resolve_with(d, &sys, &s)?;
        let ss = data.ss(&s);
        let fail = |what| Ok((count, Some(StateFailure { state: s.clone(), what })));
        if ss + data.ns(&s) != cr {
            return fail("ss + ns = cr");
        }
        if GaussRat::i_pow(s.c() + data.writhe) != GaussRat::sign_pow(ss as i64) {
            return fail("i^(c+w) = (-1)^ss");
        }
        let s_bar = r.traced_class(rank);
        let pairing = lattice.omega(&data.xi, &s_bar)?;
        let (s_unit, s_key) = a_canonicalize(&s_bar, &lattice)?;
        if pairing % 2 != 0 || s_key != xi_key || s_unit != &GaussRat::sign_pow(pairing / 2) * &xi_unit {
            return fail("[s] = (-1)^(Xi.s/2) [Xi]");
        }
        let m = same_direction_count(&data, &s, &r) as i64;
        let n = r.n() as i64;
        let chi = d.n_components() as i64 - cr as i64;
        if (n + m + chi).rem_euclid(2) != 0 {
            return fail("n + m + chi = 0 mod 2");
        }
        if (cr as i64 + ss as i64 + pairing / 2 - m).rem_euclid(2) != 0 {
            return fail("m = cr + ss + Xi.s/2 mod 2");
        }
    }
    Ok((count, None))
}

/// Checks (⟨·⟩_ζ ⊗ Id)∘ψ(D) = φ(⟨D⟩_{iζ}) exactly, with ⟨D⟩_{iζ} obtained by
/// substituting ζ ↦ iζ in ⟨D⟩_ζ, along with the per-state identities.
pub fn verify_comm(d: &Diagram, cap: usize) -> Result<CommReport> {
    let b = bracket(d, cap)?;
    let image = psi(d)?;
    let mut lhs = TensorElem::zero();
    for (mc, c) in b.terms() {
        lhs.add_term(mc.clone(), image.lift.clone(), &c.scale(&image.coeff));
    }
    let rhs = phi(&b.twist())?;
    let (states_checked, failure) = check_states(d)?;
    let difference = lhs.first_difference(&rhs);
    let witness = match (&difference, &failure) {
        (Some((mc, lift, l, r)), _) => Some(json!({
            "kind": "square",
            "multicurve": multicurve_to_json(mc),
            "lift": lift.0,
            "lhs": l.to_json(),
            "rhs": r.to_json(),
        })),
        (None, Some(f)) => Some(json!({"kind": "state", "state": f.state.0, "identity": f.what})),
        (None, None) => None,
    };
    Ok(CommReport {
        holds: difference.is_none() && failure.is_none(),
        state_identities_hold: failure.is_none(),
        lhs,
        rhs,
        states_checked,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use crate::diagram::SimpleMulticurve;
    use crate::ring::LaurentPoly;
    use crate::diagram::{build_diagram, random_diagram, stack, DiagramSpec, Point, Surface};
    use crate::skein::bracket::realize_diagram;
    use crate::skein::DEFAULT_CROSSING_CAP;

    fn mc(p: i64, q: i64, m: u32) -> SimpleMulticurve {
        SimpleMulticurve::slope(p, q, m).unwrap()
    }

    fn cross_stack() -> Diagram {
        let s = Surface::torus();
        stack(&realize_diagram(&mc(1, 0, 1), &s, 0).unwrap(), &realize_diagram(&mc(0, 1, 1), &s, 1).unwrap()).unwrap()
    }

    #[test]
    fn phi_examples() {
        let t = Surface::torus();
        let a = phi(&Skein::basis(mc(1, 1, 1), &t).unwrap()).unwrap();
        assert_eq!(a.coeff(&mc(1, 1, 1), &HomClass(vec![1, 1])), -LaurentPoly::one());
        assert_eq!(a.len(), 1);
        let e = phi(&Skein::unit(&t)).unwrap();
        assert_eq!(e.coeff(&SimpleMulticurve::empty(), &HomClass(vec![0, 0])), LaurentPoly::one());
        let two = phi(&Skein::basis(mc(1, 1, 2), &t).unwrap()).unwrap();
        assert_eq!(two.coeff(&mc(1, 1, 2), &HomClass(vec![0, 0])), LaurentPoly::one());
        assert!(two.is_diagonal(&t));
    }

    #[test]
    fn psi_on_crossingless_agrees_with_phi() {
        let t = Surface::torus();
        for (p, q, m) in [(1, 0, 1), (2, 1, 2), (1, -1, 3)] {
            let d = realize_diagram(&mc(p, q, m), &t, 0).unwrap();
            let image = psi(&d).unwrap();
            let f = phi(&Skein::basis(mc(p, q, m), &t).unwrap()).unwrap();
            let (_, expected) = f.terms().next().map(|(k, v)| (k.clone(), v.clone())).unwrap();
            assert_eq!(LaurentPoly::constant(image.coeff.clone()), expected);
            assert_eq!(f.coeff(&mc(p, q, m), &image.lift), expected);
        }
    }

    #[test]
    fn psi_on_one_crossing_stack() {
        let image = psi(&cross_stack()).unwrap();
        assert_eq!(image.coeff, -GaussRat::i());
        assert_eq!(image.lift, HomClass(vec![1, 1]));
    }

    #[test]
    fn psi_orientation_independent() {
        let mut diagrams = vec![cross_stack()];
        for seed in 0..10 {
            diagrams.push(random_diagram(seed, &Surface::torus(), 3, 5).unwrap());
            diagrams.push(random_diagram(seed, &Surface::punctured_torus(Point::rats(1, 58, 1, 58)), 3, 5).unwrap());
        }
        for d in diagrams {
            let n = d.n_components();
            let reference = psi(&d).unwrap();
            for bits in 0..1u32 << n {
                let dirs = (0..n).map(|c| if bits >> c & 1 == 0 { 1 } else { -1 }).collect();
                let image = psi_oriented(&OrientedDiagram::new(d.clone(), dirs).unwrap()).unwrap();
                assert_eq!((image.coeff, image.lift), (reference.coeff.clone(), reference.lift.clone()));
            }
        }
    }

    #[test]
    fn flipped_orientation_worked_instance() {
        // −i[(1,1)] = +i[(1,−1)]: flipping the vertical component gives w = −1 and Ξ = (1,−1)
        let od = OrientedDiagram::new(cross_stack(), vec![1, -1]).unwrap();
        let data = orient_data(&od);
        assert_eq!(data.writhe, -1);
        assert_eq!(data.xi, HomClass(vec![1, -1]));
        let image = psi_oriented(&od).unwrap();
        assert_eq!((image.coeff, image.lift), (-GaussRat::i(), HomClass(vec![1, 1])));
    }

    #[test]
    fn comm_examples() {
        let empty = build_diagram(DiagramSpec { surface: Surface::torus(), components: vec![], overrides: vec![] }).unwrap();
        assert!(verify_comm(&empty, DEFAULT_CROSSING_CAP).unwrap().holds);
        let r = verify_comm(&cross_stack(), DEFAULT_CROSSING_CAP).unwrap();
        assert!(r.holds, "{:?}", r.witness);
        assert_eq!(r.lhs.coeff(&mc(1, 1, 1), &HomClass(vec![1, 1])), LaurentPoly::monomial(1, -GaussRat::i()));
        assert_eq!(r.lhs.coeff(&mc(1, -1, 1), &HomClass(vec![1, 1])), LaurentPoly::monomial(-1, -GaussRat::i()));
    }

    #[test]
    fn comm_on_random_diagrams() {
        for s in [Surface::disk(), Surface::torus(), Surface::punctured_torus(Point::rats(1, 58, 1, 58))] {
            for seed in 0..8 {
                let d = random_diagram(100 + seed, &s, 3, 6).unwrap();
                let r = verify_comm(&d, DEFAULT_CROSSING_CAP).unwrap();
                assert!(r.holds, "seed {seed} on {s:?}: {:?}", r.witness);
                assert!(r.lhs.is_diagonal(&s));
            }
        }
    }

    #[test]
    fn witness_on_failure() {
        // a wrong right-hand side is reported with its first differing key
        let d = cross_stack();
        let b = bracket(&d, DEFAULT_CROSSING_CAP).unwrap();
        let lhs = phi(&b.twist()).unwrap();
        let rhs = phi(&b).unwrap();
        assert!(lhs.first_difference(&rhs).is_some());
    }
}
