//! Seeded random diagrams in general position.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::build::{build_diagram, ComponentSpec, Diagram, DiagramSpec, Override};
use super::geom::{q, Point};
use super::surface::{Surface, SurfaceKind};
use crate::error::{Error, Result};

/// Denominator of the coordinate grid; prime to keep degeneracies rare.
const GRID: i64 = 29;

fn coord(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> crate::diagram::Q {
    q(rng.gen_range(lo * GRID..hi * GRID) + 1, GRID)
}

fn random_component(rng: &mut ChaCha8Rng, kind: SurfaceKind, level: i64) -> ComponentSpec {
    match kind {
        SurfaceKind::Disk => {
            let k = rng.gen_range(3..=5);
            let mut v: Vec<Point> = (0..k).map(|_| Point::new(coord(rng, 0, 2), coord(rng, 0, 2))).collect();
            v.push(v[0].clone());
            ComponentSpec::new(v, level)
        }
        _ => {
            let classes = [(1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (1, 2), (0, 0)];
            let &(a, b) = classes.choose(rng).expect("non-empty");
            let k = if (a, b) == (0, 0) { rng.gen_range(3..=4) } else { rng.gen_range(1..=3) };
            let start = Point::new(coord(rng, 0, 1), coord(rng, 0, 1));
            let mut v = vec![start.clone()];
            for _ in 1..k {
                let jitter = Point::new(coord(rng, -1, 1), coord(rng, -1, 1)).scale(&q(1, 2));
                v.push(&start + &jitter);
            }
            v.push(&start + &Point::ints(a, b));
            ComponentSpec::new(v, level)
        }
    }
}

/// A random valid diagram with between 1 and `max_crossings` crossings.
pub fn random_diagram(seed: u64, surface: &Surface, max_components: usize, max_crossings: usize) -> Result<Diagram> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    const ATTEMPTS: usize = 2000;
    for _ in 0..ATTEMPTS {
        let n = rng.gen_range(1..=max_components.max(1));
        let mut levels: Vec<i64> = (0..n as i64).collect();
        levels.shuffle(&mut rng);
        let components = levels.iter().map(|&l| random_component(&mut rng, surface.kind, l)).collect();
        let mut spec = DiagramSpec { surface: surface.clone(), components, overrides: Vec::new() };
        let built = loop {
            match build_diagram(spec.clone()) {
                Err(Error::MissingOverride { component, index }) => {
                    spec.overrides.push(Override { component, crossing_index: index, over: rng.gen() });
                }
                other => break other,
            }
        };
        if let Ok(d) = built {
            if (1..=max_crossings).contains(&d.n_crossings()) {
                return Ok(d);
            }
        }
    }
    Err(Error::PerturbationFailed(ATTEMPTS))
}

/// A random diagram in which every segment has its own height, so no
/// over/under overrides are needed and crossings can be smoothed.
pub fn random_layered_diagram(seed: u64, surface: &Surface, max_components: usize, max_crossings: usize) -> Result<Diagram> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    const ATTEMPTS: usize = 2000;
    for _ in 0..ATTEMPTS {
        let n = rng.gen_range(1..=max_components.max(1));
        let mut components: Vec<ComponentSpec> = (0..n).map(|_| random_component(&mut rng, surface.kind, 0)).collect();
        let total: usize = components.iter().map(|c| c.segments()).sum();
        let mut heights: Vec<i64> = (0..total as i64).collect();
        heights.shuffle(&mut rng);
        let mut rest = heights.as_slice();
        for c in components.iter_mut() {
            let (mine, tail) = rest.split_at(c.segments());
            c.segment_levels = Some(mine.to_vec());
            rest = tail;
        }
        if let Ok(d) = build_diagram(DiagramSpec { surface: surface.clone(), components, overrides: Vec::new() }) {
            if (1..=max_crossings).contains(&d.n_crossings()) {
                return Ok(d);
            }
        }
    }
    Err(Error::PerturbationFailed(ATTEMPTS))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_valid() {
        for s in [Surface::disk(), Surface::torus(), Surface::punctured_torus(Point::rats(1, 58, 1, 58))] {
            let a = random_diagram(7, &s, 3, 6).unwrap();
            let b = random_diagram(7, &s, 3, 6).unwrap();
            assert_eq!(a, b);
            assert!((1..=6).contains(&a.n_crossings()));
            let l = random_layered_diagram(7, &s, 3, 6).unwrap();
            assert!(l.spec().overrides.is_empty());
        }
    }
}
