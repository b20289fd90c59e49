use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use skein_core::diagram::{
    build_diagram, diagram_from_json, random_diagram, stack, Diagram, OrientedDiagram, SimpleMulticurve, Surface,
};
use skein_core::heegaard::{
    heegaard_audit, k0_product, lk2, manifold_h1, quotient_at, relation_set, rows_match_under_phi, HeegaardData,
    SlideBounds,
};
use skein_core::homology::{a_canonicalize, AElem, HomClass, Lattice};
use skein_core::ring::{GaussRat, LaurentPoly};
use skein_core::skein::{bracket, phi, psi, psi_oriented, realize_diagram, verify_comm, Skein};

use crate::config::{Cli, Command, Common};

/// Failing cases listed in a report are capped at this many.
const SHOWN: usize = 8;

pub struct Outcome {
    pub result: Value,
    /// False only when an identity that should hold was violated.
    pub passed: bool,
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_diagram(path: &Path) -> Result<Diagram> {
    let spec = diagram_from_json(&read_json(path)?).with_context(|| format!("in {}", path.display()))?;
    build_diagram(spec).with_context(|| format!("in {}", path.display()))
}

fn read_heegaard(path: &Path) -> Result<HeegaardData> {
    HeegaardData::from_json(&read_json(path)?).with_context(|| format!("in {}", path.display()))
}

/// The element with each coefficient replaced by its value at `zeta`.
fn at(x: &Skein, zeta: &Option<GaussRat>) -> Result<Skein> {
    let Some(z) = zeta else { return Ok(x.clone()) };
    let mut out = Skein::zero(x.surface());
    for (mc, c) in x.eval(z)? {
        out.add_term(mc, &LaurentPoly::constant(c));
    }
    Ok(out)
}

fn suite_surface(k: usize) -> Surface {
    match k % 3 {
        0 => Surface::disk(),
        1 => Surface::torus(),
        _ => Surface::punctured_torus_default(),
    }
}

fn suite_seed(seed: u64, k: usize) -> u64 {
    seed.wrapping_mul(1_000_003).wrapping_add(k as u64)
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    let c = &cli.common;
    match &cli.command {
        Command::Bracket { diagram } => {
            let d = read_diagram(diagram)?;
            let b = at(&bracket(&d, c.max_crossings)?, &c.zeta.value())?;
            Ok(Outcome { result: json!({"crossings": d.n_crossings(), "bracket": b.to_json()}), passed: true })
        }
        Command::Product { above, below, heegaard } => product(c, above, below, heegaard.as_deref()),
        Command::VerifyComm { diagram, trials } => verify_comm_cmd(c, diagram.as_deref(), *trials),
        Command::VerifyMarche { trials } => verify_marche(c, *trials),
        Command::HeegaardAudit { heegaard, bounds } => {
            let h = read_heegaard(heegaard)?;
            let report = heegaard_audit(&h, &bounds.resolve())?;
            let two_torsion = report["two_torsion"].as_bool() == Some(true);
            let all_zero = report["witness_count"].as_u64() == Some(0)
                && report["writhe_mod4_histogram"].as_object().is_some_and(|m| m.keys().all(|k| k == "0"));
            let psi_pass = report["psi"]["all_pass"].as_bool() == Some(true);
            let formula = report["writhe_formula_agrees"].as_bool() == Some(true);
            let passed = formula && (two_torsion || (all_zero && psi_pass));
            Ok(Outcome { result: report, passed })
        }
        Command::QuotientDim { heegaard, bounds } => quotient_dim(c, &read_heegaard(heegaard)?, &bounds.resolve()),
        Command::AAlgebra { trials } => a_algebra(c, *trials),
    }
}

fn product(c: &Common, above: &Path, below: &Path, heegaard: Option<&Path>) -> Result<Outcome> {
    let (x, y) = (read_diagram(above)?, read_diagram(below)?);
    let result = match heegaard {
        Some(p) => {
            let h = read_heegaard(p)?;
            let zeta = c.zeta.require("a signed product")?;
            let sign = lk2(&x, &y, &h)?;
            let prod = k0_product(&x, &y, &h, &zeta, c.max_crossings)?;
            json!({"lk2": sign, "product": prod.to_json()})
        }
        None => {
            let d = stack(&x, &y)?;
            json!({"crossings": d.n_crossings(), "product": at(&bracket(&d, c.max_crossings)?, &c.zeta.value())?.to_json()})
        }
    };
    Ok(Outcome { result, passed: true })
}

fn verify_comm_cmd(c: &Common, file: Option<&Path>, trials: usize) -> Result<Outcome> {
    if let Some(p) = file {
        let r = verify_comm(&read_diagram(p)?, c.max_crossings)?;
        return Ok(Outcome { passed: r.holds, result: r.to_json() });
    }
    let (mut states, mut failures) = (0, Vec::new());
    for k in 0..trials {
        let surface = suite_surface(k);
        let seed = suite_seed(c.seed, k);
        let d = random_diagram(seed, &surface, 3, 6.min(c.max_crossings))?;
        let r = verify_comm(&d, c.max_crossings)?;
        states += r.states_checked;
        if !r.holds {
            failures.push(json!({"trial": k, "surface": surface.kind.name(), "seed": seed, "witness": r.witness}));
        }
    }
    let passed = failures.is_empty();
    let failed = failures.len();
    failures.truncate(SHOWN);
    Ok(Outcome {
        result: json!({"trials": trials, "states_checked": states, "failed": failed, "failures": failures}),
        passed,
    })
}

fn verify_marche(c: &Common, trials: usize) -> Result<Outcome> {
    let mut failures = Vec::new();
    let mut fail = |check: &str, trial: usize| failures.push(json!({"check": check, "trial": trial}));
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    for k in 0..trials {
        let surface = suite_surface(k);
        let d = random_diagram(suite_seed(c.seed, k), &surface, 3, 6.min(c.max_crossings))?;
        let reference = psi(&d)?;
        let n = d.n_components();
        for bits in 1..1u32 << n {
            let dirs = (0..n).map(|i| if bits >> i & 1 == 0 { 1 } else { -1 }).collect();
            let image = psi_oriented(&OrientedDiagram::new(d.clone(), dirs)?)?;
            if (image.coeff, image.lift) != (reference.coeff.clone(), reference.lift.clone()) {
                fail("psi is independent of orientation", k);
                break;
            }
        }
        if !phi(&bracket(&d, c.max_crossings)?.twist())?.is_diagonal(&surface) {
            fail("phi lands in the diagonal part", k);
        }
        if surface.is_periodic() {
            let (p, q) = loop {
                let (p, q) = (rng.gen_range(-3i64..=3), rng.gen_range(-3i64..=3));
                if num_integer::gcd(p, q) == 1 {
                    break (p, q);
                }
            };
            let mc = SimpleMulticurve::slope(p, q, rng.gen_range(1..=3))?;
            let image = psi(&realize_diagram(&mc, &surface, 0)?)?;
            let f = phi(&Skein::basis(mc.clone(), &surface)?)?;
            if f.coeff(&mc, &image.lift) != LaurentPoly::constant(image.coeff) {
                fail("psi agrees with phi on multicurves", k);
            }
        }
    }
    let passed = failures.is_empty();
    let failed = failures.len();
    failures.truncate(SHOWN);
    Ok(Outcome { result: json!({"trials": trials, "failed": failed, "failures": failures}), passed })
}

fn quotient_dim(c: &Common, h: &HeegaardData, bounds: &SlideBounds) -> Result<Outcome> {
    let zetas = match c.zeta.value() {
        Some(z) => vec![(c.zeta.name(), z)],
        None => vec![("-i", -GaussRat::i()), ("-1", GaussRat::from_int(-1))],
    };
    let set = relation_set(h, bounds, c.truncation, c.max_crossings)?;
    let mut dims = Vec::new();
    let mut quotients = serde_json::Map::new();
    for (name, z) in &zetas {
        let q = quotient_at(&set, z, c.truncation)?;
        dims.push(q.dimension);
        quotients.insert(name.to_string(), q.to_json());
    }
    let h1 = manifold_h1(h);
    let mut result = json!({"h1": h1.factors, "two_torsion": h1.two_torsion, "quotients": quotients});
    let mut passed = true;
    if dims.len() == 2 {
        let agree = dims[0] == dims[1];
        let rows = rows_match_under_phi(&set)?;
        result["dimensions_agree"] = json!(agree);
        result["rows_match_under_phi"] = json!(rows);
        passed = h1.two_torsion || (agree && rows);
    }
    Ok(Outcome { result, passed })
}

fn a_algebra(c: &Common, trials: usize) -> Result<Outcome> {
    let lattice = Lattice::symplectic(1);
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    let class = |r: &mut ChaCha8Rng| HomClass(vec![r.gen_range(-4..=4), r.gen_range(-4..=4)]);
    let mut failures = Vec::new();
    let one = AElem::one(&lattice);
    for k in 0..trials {
        let (a, b, g) = (class(&mut rng), class(&mut rng), class(&mut rng));
        let delta = class(&mut rng);
        let elem = |x: &HomClass, r: &mut ChaCha8Rng| -> Result<AElem> {
            let w = GaussRat::from_parts(r.gen_range(-3..=3), 1, r.gen_range(-3..=3), 1);
            Ok(AElem::generator(x, &lattice)?.scale(&w))
        };
        let (x, y, z) = (elem(&a, &mut rng)?.add(&elem(&b, &mut rng)?), elem(&b, &mut rng)?, elem(&g, &mut rng)?);
        let mut check = |name: &str, ok: bool| {
            if !ok {
                failures.push(json!({"trial": k, "check": name, "classes": [a.0, b.0, g.0]}));
            }
        };
        check("associativity", x.mul(&y, &lattice)?.mul(&z, &lattice)? == x.mul(&y.mul(&z, &lattice)?, &lattice)?);
        let ga = AElem::generator(&a, &lattice)?;
        check("square is one", ga.mul(&ga, &lattice)? == one);
        let prod = ga.mul(&AElem::generator(&b, &lattice)?, &lattice)?;
        check("grading", prod.terms().count() == 1 && prod.terms().all(|(key, _)| key.mod2() == a.add(&b).mod2()));
        let shifted = a.add(&delta.scale(2));
        let twist = GaussRat::i_pow(lattice.omega(&a, &delta.scale(2))?);
        let (u, key) = a_canonicalize(&shifted, &lattice)?;
        check(
            "canonical form",
            AElem::generator(&shifted, &lattice)? == ga.scale(&twist) && key == a.canonical_lift() && u.unit_exponent().is_some(),
        );
    }
    let passed = failures.is_empty();
    let failed = failures.len();
    failures.truncate(SHOWN);
    Ok(Outcome { result: json!({"trials": trials, "failed": failed, "failures": failures}), passed })
}
