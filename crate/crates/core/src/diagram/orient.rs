//! Oriented diagrams: crossing signs, writhe, the Seifert class and the
//! mod-2 Euler characteristic identity for states.

use super::build::Diagram;
use super::resolve::{resolve, Resolution, State};
use crate::error::{Error, Result};
use crate::homology::HomClass;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedDiagram {
    pub base: Diagram,
    /// ±1 per component, relative to the vertex order.
    pub directions: Vec<i8>,
}

impl OrientedDiagram {
    pub fn new(base: Diagram, directions: Vec<i8>) -> Result<Self> {
        if directions.len() != base.n_components() {
            return Err(Error::DimensionMismatch { expected: base.n_components(), got: directions.len() });
        }
        if let Some(i) = directions.iter().position(|&d| d != 1 && d != -1) {
            return Err(Error::input(format!("directions[{i}]"), "must be +1 or -1"));
        }
        Ok(OrientedDiagram { base, directions })
    }

    /// Every component oriented along its vertex order.
    pub fn forward(base: Diagram) -> Self {
        let n = base.n_components();
        OrientedDiagram { base, directions: vec![1; n] }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientData {
    pub writhe: i64,
    /// Class of the oriented diagram, which is also the class of its Seifert smoothing.
    pub xi: HomClass,
    pub signs: Vec<i64>,
    /// The smoothing choice at each crossing that respects the orientation.
    pub seifert: Vec<i8>,
}

impl OrientData {
    /// Number of crossings where `s` takes the Seifert smoothing.
    pub fn ss(&self, s: &State) -> usize {
        self.seifert.iter().zip(&s.0).filter(|(a, b)| a == b).count()
    }

    pub fn ns(&self, s: &State) -> usize {
        self.seifert.len() - self.ss(s)
    }

    pub fn seifert_state(&self) -> State {
        State(self.seifert.clone())
    }
}

pub fn orient_data(od: &OrientedDiagram) -> OrientData {
    let d = &od.base;
    let signs: Vec<i64> = d
        .crossings()
        .iter()
        .map(|x| x.handedness() * od.directions[x.over.comp] as i64 * od.directions[x.under.comp] as i64)
        .collect();
    let seifert = signs.iter().map(|&s| if s > 0 { 1 } else { -1 }).collect();
    let xi = d
        .classes()
        .iter()
        .zip(&od.directions)
        .fold(HomClass::zero(d.surface().rank()), |acc, (c, &dir)| acc.add(&c.scale(dir as i64)));
    OrientData { writhe: signs.iter().sum(), xi, signs, seifert }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityReport {
    pub n: usize,
    pub m: usize,
    pub chi: i64,
    /// n + m + χ ≡ 0 (mod 2).
    pub holds: bool,
    /// m ≡ cr + ss + ½ Ξ·s̄ (mod 2).
    pub formula_agrees: bool,
}

/// Number of non-Seifert crossings whose two smoothing arcs are traversed in
/// the same sense, i.e. both from the over strand or both from the under strand.
pub fn same_direction_count(od: &OrientData, s: &State, r: &Resolution) -> usize {
    (0..s.0.len()).filter(|&x| s.0[x] != od.seifert[x] && r.leaves_over[x][0] == r.leaves_over[x][1]).count()
}

pub fn euler_parity_report(od: &OrientedDiagram, s: &State) -> Result<ParityReport> {
    let d = &od.base;
    let data = orient_data(od);
    let r = resolve(d, s)?;
    let n = r.n();
    let m = same_direction_count(&data, s, &r);
    let cr = d.n_crossings() as i64;
    let chi = d.n_components() as i64 - cr;
    let lattice = d.surface().lattice();
    let pairing = lattice.omega(&data.xi, &r.traced_class(d.surface().rank()))?;
    debug_assert_eq!(pairing.rem_euclid(2), 0);
    let predicted = cr + data.ss(s) as i64 + pairing / 2;
    Ok(ParityReport {
        n,
        m,
        chi,
        holds: (n as i64 + m as i64 + chi).rem_euclid(2) == 0,
        formula_agrees: (predicted - m as i64).rem_euclid(2) == 0,
    })
}

pub fn euler_parity_check(od: &OrientedDiagram, s: &State) -> Result<bool> {
    Ok(euler_parity_report(od, s)?.holds)
}
