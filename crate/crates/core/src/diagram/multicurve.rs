//! Simple multicurves up to isotopy, and a canonical geometric realization.

use std::collections::BTreeMap;
use std::fmt;

use super::build::ComponentSpec;
use super::geom::{bezout_for_slope, normalize_slope, q, Point, Q};
use super::surface::{Surface, SurfaceKind};
use crate::error::{Error, Result};
use crate::homology::HomClass;

/// Primitive slopes with multiplicities, plus curves parallel to the puncture.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleMulticurve {
    pub slopes: BTreeMap<(i64, i64), u32>,
    pub boundary_parallel: u32,
}

impl SimpleMulticurve {
    pub fn empty() -> Self {
        SimpleMulticurve::default()
    }

    pub fn slope(p: i64, q: i64, mult: u32) -> Result<Self> {
        let mut mc = SimpleMulticurve::empty();
        if mult > 0 {
            let ((a, b), g) = normalize_slope(p, q).ok_or_else(|| Error::NotMulticurve("slope (0,0)".into()))?;
            if g != 1 {
                return Err(Error::NotMulticurve(format!("slope ({p},{q}) is not primitive")));
            }
            mc.slopes.insert((a, b), mult);
        }
        Ok(mc)
    }

    pub fn is_empty(&self) -> bool {
        self.slopes.is_empty() && self.boundary_parallel == 0
    }

    /// Number of components n(α).
    pub fn n(&self) -> u32 {
        self.slopes.values().sum::<u32>() + self.boundary_parallel
    }

    /// Class of the curve with all slope components oriented alike.
    pub fn class(&self, rank: usize) -> HomClass {
        let mut c = HomClass::zero(rank);
        for (&(p, q), &m) in &self.slopes {
            c = c.add(&HomClass(vec![p * m as i64, q * m as i64]));
        }
        c
    }

    /// Checks the disjointness constraints for `surface`.
    pub fn validate(&self, surface: &Surface) -> Result<()> {
        if surface.kind == SurfaceKind::Disk && !self.is_empty() {
            return Err(Error::NotMulticurve("the disk carries no essential curves".into()));
        }
        if surface.kind != SurfaceKind::PuncturedTorus && self.boundary_parallel > 0 {
            return Err(Error::NotMulticurve("boundary-parallel curves need a puncture".into()));
        }
        if self.slopes.len() > 1 {
            return Err(Error::NotMulticurve(format!("mixed slopes {:?}", self.slopes.keys().collect::<Vec<_>>())));
        }
        for (&(p, q), &m) in &self.slopes {
            if m == 0 || normalize_slope(p, q) != Some(((p, q), 1)) {
                return Err(Error::NotMulticurve(format!("bad slope entry ({p},{q}) x{m}")));
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SimpleMulticurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "∅");
        }
        let mut parts: Vec<String> = self.slopes.iter().map(|((p, q), m)| format!("({p},{q})^{m}")).collect();
        if self.boundary_parallel > 0 {
            parts.push(format!("∂^{}", self.boundary_parallel));
        }
        write!(f, "{}", parts.join("+"))
    }
}

/// A crossingless nontrivial component: its class and, on the punctured
/// torus when the class is zero, its winding around the puncture.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveData {
    pub class: HomClass,
    pub winding: Option<i64>,
}

pub fn canonical_multicurve(components: &[CurveData], surface: &Surface) -> Result<SimpleMulticurve> {
    let mut mc = SimpleMulticurve::empty();
    for (i, c) in components.iter().enumerate() {
        match surface.kind {
            SurfaceKind::Disk => {
                return Err(Error::NotMulticurve(format!("component {i} bounds a disk")));
            }
            _ if c.class.is_zero() => match (surface.kind, c.winding) {
                (SurfaceKind::PuncturedTorus, Some(1 | -1)) => mc.boundary_parallel += 1,
                (SurfaceKind::PuncturedTorus, Some(w)) if w != 0 => {
                    return Err(Error::NotMulticurve(format!("component {i} winds {w} times around the puncture")));
                }
                _ => return Err(Error::NotMulticurve(format!("component {i} bounds a disk"))),
            },
            _ => {
                let (key, g) = normalize_slope(c.class.0[0], c.class.0[1]).expect("nonzero class");
                if g != 1 {
                    return Err(Error::NotMulticurve(format!("component {i} has non-primitive class {}", c.class)));
                }
                *mc.slopes.entry(key).or_insert(0) += 1;
            }
        }
    }
    mc.validate(surface)?;
    Ok(mc)
}

/// Parameter at which each slope line starts, by phase.
fn line_start(phase: u8) -> Q {
    if phase == 0 {
        q(1, 97)
    } else {
        q(3, 89)
    }
}

/// Components realizing `mc` on `surface`. Realizations with phases 0 and 1
/// never share a parallel curve, so they can be stacked.
pub fn realize(mc: &SimpleMulticurve, surface: &Surface, phase: u8, level: i64) -> Result<Vec<ComponentSpec>> {
    mc.validate(surface)?;
    let ph = phase as i64 % 2;
    let p_pt = surface.puncture.clone().unwrap_or_else(Point::zero);
    let mut out = Vec::new();
    let mut line_margin = (1, 1);
    for (&(p, qq), &m) in &mc.slopes {
        let m = m as i64;
        let (u, v) = bezout_for_slope(p, qq);
        let c_p = &(&p_pt.x * &Q::from_integer(qq.into())) - &(&p_pt.y * &Q::from_integer(p.into()));
        let dir = Point::ints(p, qq);
        for k in 0..m {
            let c = &c_p + &q(2 * k + 1 + ph, 2 * m + 3);
            let base = &Point::ints(u, v).scale(&c) + &dir.scale(&line_start(phase));
            out.push(ComponentSpec::new(vec![base.clone(), &base + &dir], level));
        }
        line_margin = (2 * m + 3, p.abs() + qq.abs() + 1);
    }
    let k_bp = mc.boundary_parallel as i64;
    for j in 0..k_bp {
        let r = q(2 * j + 1 + ph, (2 * k_bp + 3) * 4 * line_margin.0 * line_margin.1);
        let corner = |sx: i64, sy: i64| {
            Point::new(&p_pt.x + &(&r * &Q::from_integer(sx.into())), &p_pt.y + &(&r * &Q::from_integer(sy.into())))
        };
        let ring = vec![corner(1, -1), corner(1, 1), corner(-1, 1), corner(-1, -1), corner(1, -1)];
        out.push(ComponentSpec::new(ring, level));
    }
    Ok(out)
}
