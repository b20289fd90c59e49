use std::fmt;

use super::geom::Point;
use crate::homology::Lattice;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SurfaceKind {
    Disk,
    Torus,
    PuncturedTorus,
}

impl SurfaceKind {
    pub fn name(self) -> &'static str {
        match self {
            SurfaceKind::Disk => "disk",
            SurfaceKind::Torus => "torus",
            SurfaceKind::PuncturedTorus => "punctured_torus",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "disk" => Some(SurfaceKind::Disk),
            "torus" => Some(SurfaceKind::Torus),
            "punctured_torus" => Some(SurfaceKind::PuncturedTorus),
            _ => None,
        }
    }
}

/// A supported surface. The disk is modelled as the whole plane; the torus as
/// ℝ²/ℤ². The punctured torus removes the lattice translates of `puncture`,
/// and windings around it are counted with the horizontal ray pointing in +x.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Surface {
    pub kind: SurfaceKind,
    pub puncture: Option<Point>,
}

impl Surface {
    pub fn disk() -> Self {
        Surface { kind: SurfaceKind::Disk, puncture: None }
    }

    pub fn torus() -> Self {
        Surface { kind: SurfaceKind::Torus, puncture: None }
    }

    pub fn punctured_torus(puncture: Point) -> Self {
        Surface { kind: SurfaceKind::PuncturedTorus, puncture: Some(puncture.reduce_mod1()) }
    }

    /// Punctured torus with the puncture at the origin.
    pub fn punctured_torus_default() -> Self {
        Surface::punctured_torus(Point::zero())
    }

    pub fn is_periodic(&self) -> bool {
        self.kind != SurfaceKind::Disk
    }

    pub fn rank(&self) -> usize {
        if self.is_periodic() {
            2
        } else {
            0
        }
    }

    pub fn lattice(&self) -> Lattice {
        if self.is_periodic() {
            Lattice::symplectic(1)
        } else {
            Lattice::new(Vec::new()).expect("empty form is antisymmetric")
        }
    }
}

impl fmt::Debug for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.puncture {
            Some(p) => write!(f, "{}@{:?}", self.kind.name(), p),
            None => write!(f, "{}", self.kind.name()),
        }
    }
}
