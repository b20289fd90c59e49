//! Smoothing every crossing of a diagram and tracing the resulting curves.
//!
//! Smoothing convention. Let σ be the sign of `over_dir × under_dir` for the
//! drawn directions. The A-smoothing (choice +1, weight ζ) opens a channel
//! between the two regions swept when the over strand turns counterclockwise.
//! For σ > 0 it joins (over_in, under_out) and (over_out, under_in); for σ < 0
//! it joins (over_in, under_in) and (over_out, under_out). The B-smoothing
//! (choice −1) uses the other pairing.

use super::build::Diagram;
use super::geom::{lattice_translates_in_box, winding_number, Point};
use super::multicurve::{canonical_multicurve, CurveData, SimpleMulticurve};
use super::surface::SurfaceKind;
use crate::error::{Error, Result};
use crate::homology::HomClass;

/// A choice of smoothing per crossing: +1 is A, −1 is B.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State(pub Vec<i8>);

impl State {
    pub fn all(n: usize) -> impl Iterator<Item = State> {
        (0u64..1u64 << n).map(move |bits| State((0..n).map(|k| if bits >> k & 1 == 0 { 1 } else { -1 }).collect()))
    }

    pub fn c(&self) -> i64 {
        self.0.iter().map(|&x| x as i64).sum()
    }
}

/// Where an arc meets a crossing: its start (`at_end = false`) or its end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct End {
    arc: usize,
    at_end: bool,
}

impl End {
    fn slot(self) -> usize {
        2 * self.arc + self.at_end as usize
    }
}

#[derive(Clone, Debug)]
struct Arc {
    points: Vec<Point>,
    /// Crossing and strand at each end, absent for crossingless components.
    ends: Option<[(usize, bool); 2]>,
    /// Integer offset of each end's position from the reduced crossing point.
    end_offsets: [[i64; 2]; 2],
    class_if_closed: HomClass,
}

/// Arcs of a diagram between consecutive passages, with end bookkeeping.
#[derive(Clone, Debug)]
pub struct ArcSystem {
    arcs: Vec<Arc>,
    /// For crossing x: ends [over_in, over_out, under_in, under_out].
    crossing_ends: Vec<[End; 4]>,
    handedness: Vec<i64>,
}

const OVER_IN: usize = 0;
const OVER_OUT: usize = 1;
const UNDER_IN: usize = 2;
const UNDER_OUT: usize = 3;

impl ArcSystem {
    pub fn new(d: &Diagram) -> Self {
        let periodic = d.surface().is_periodic();
        let offset = |p: &Point, x: usize| -> [i64; 2] {
            if periodic {
                (p - &d.crossings()[x].point).as_int_vec().expect("lift of the crossing point")
            } else {
                [0, 0]
            }
        };
        let placeholder = End { arc: usize::MAX, at_end: false };
        let mut crossing_ends = vec![[placeholder; 4]; d.n_crossings()];
        let mut arcs = Vec::new();
        for (c, comp) in d.components().iter().enumerate() {
            let order = d.passage_order(c);
            let shift = d.shift(c);
            if order.is_empty() {
                arcs.push(Arc {
                    points: comp.vertices.clone(),
                    ends: None,
                    end_offsets: [[0, 0]; 2],
                    class_if_closed: d.classes()[c].clone(),
                });
                continue;
            }
            let k = comp.segments();
            let m = order.len();
            for j in 0..m {
                let (xa, oa) = order[j];
                let (xb, ob) = order[(j + 1) % m];
                let pa = d.crossings()[xa].passage(oa);
                let pb = d.crossings()[xb].passage(ob);
                let wrap = j + 1 == m;
                let mut points = vec![pa.lift.clone()];
                let last = pb.seg + if wrap { k } else { 0 };
                for i in pa.seg + 1..=last {
                    points.push(comp.unrolled_vertex(i, &shift));
                }
                let end_pt = if wrap { &pb.lift + &shift } else { pb.lift.clone() };
                points.push(end_pt.clone());
                let idx = arcs.len();
                let base = |over: bool, out: bool| match (over, out) {
                    (true, false) => OVER_IN,
                    (true, true) => OVER_OUT,
                    (false, false) => UNDER_IN,
                    (false, true) => UNDER_OUT,
                };
                crossing_ends[xa][base(oa, true)] = End { arc: idx, at_end: false };
                crossing_ends[xb][base(ob, false)] = End { arc: idx, at_end: true };
                arcs.push(Arc {
                    end_offsets: [offset(&pa.lift, xa), offset(&end_pt, xb)],
                    points,
                    ends: Some([(xa, oa), (xb, ob)]),
                    class_if_closed: HomClass::zero(0),
                });
            }
        }
        let handedness = d.crossings().iter().map(|x| x.handedness()).collect();
        ArcSystem { arcs, crossing_ends, handedness }
    }

    /// Partner of every end slot under the state.
    fn pairing(&self, s: &State) -> Vec<End> {
        let mut partner = vec![End { arc: 0, at_end: false }; 2 * self.arcs.len()];
        for (x, ends) in self.crossing_ends.iter().enumerate() {
            let a_positive = s.0[x] as i64 * self.handedness[x] > 0;
            let pairs = if a_positive {
                [(OVER_IN, UNDER_OUT), (OVER_OUT, UNDER_IN)]
            } else {
                [(OVER_IN, UNDER_IN), (OVER_OUT, UNDER_OUT)]
            };
            for (a, b) in pairs {
                partner[ends[a].slot()] = ends[b];
                partner[ends[b].slot()] = ends[a];
            }
        }
        partner
    }
}

/// A curve of the smoothed diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvedComponent {
    /// Class in the direction of traversal.
    pub class: HomClass,
    /// Winding around the puncture, computed for null-homologous curves on
    /// the punctured torus.
    pub winding: Option<i64>,
    pub trivial: bool,
    /// Lifted closed polygon, first point not repeated.
    pub polygon: Vec<Point>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    pub components: Vec<ResolvedComponent>,
    pub c: i64,
    pub t: usize,
    pub s_prime: SimpleMulticurve,
    /// Per crossing, for each of its two smoothing arcs, whether the traversal
    /// passes from the over strand to the under strand.
    pub leaves_over: Vec<[bool; 2]>,
}

/// Total winding of a closed lifted polygon around all lattice translates of `p`.
pub fn puncture_winding(polygon: &[Point], p: &Point) -> i64 {
    lattice_translates_in_box(polygon, p).iter().map(|c| winding_number(polygon, c)).sum()
}

/// Whether a crossingless curve bounds a disk on the surface.
pub fn triviality(class: &HomClass, winding: Option<i64>, kind: SurfaceKind) -> bool {
    match kind {
        SurfaceKind::Disk => true,
        SurfaceKind::Torus => class.is_zero(),
        SurfaceKind::PuncturedTorus => class.is_zero() && winding.unwrap_or(0) == 0,
    }
}

fn shifted(points: &[Point], t: [i64; 2], reverse: bool) -> Vec<Point> {
    let off = Point::from_int_vec(t);
    let it: Box<dyn Iterator<Item = &Point>> =
        if reverse { Box::new(points.iter().rev()) } else { Box::new(points.iter()) };
    it.map(|p| p + &off).collect()
}

pub fn resolve(d: &Diagram, s: &State) -> Result<Resolution> {
    resolve_with(d, &ArcSystem::new(d), s)
}

/// As [`resolve`], reusing a precomputed arc system.
pub fn resolve_with(d: &Diagram, sys: &ArcSystem, s: &State) -> Result<Resolution> {
    if s.0.len() != d.n_crossings() {
        return Err(Error::DimensionMismatch { expected: d.n_crossings(), got: s.0.len() });
    }
    let kind = d.kind();
    let rank = d.surface().rank();
    let need_polygon = kind == SurfaceKind::PuncturedTorus;
    let partner = sys.pairing(s);
    let mut visited = vec![false; sys.arcs.len()];
    let mut leaves_over = vec![[false; 2]; d.n_crossings()];
    let mut filled = vec![0usize; d.n_crossings()];
    let mut components = Vec::new();

    for start in 0..sys.arcs.len() {
        if visited[start] {
            continue;
        }
        visited[start] = true;
        let first = &sys.arcs[start];
        if first.ends.is_none() {
            let class = first.class_if_closed.clone();
            let mut polygon = first.points.clone();
            polygon.pop();
            components.push(finish(class, polygon, need_polygon, d, kind));
            continue;
        }
        let mut t = [0i64, 0];
        let mut polygon = Vec::new();
        let (mut arc, mut forward) = (start, true);
        loop {
            let a = &sys.arcs[arc];
            if need_polygon {
                let mut pts = shifted(&a.points, t, !forward);
                pts.pop();
                polygon.extend(pts);
            }
            let exit = End { arc, at_end: forward };
            let [(x0, o0), (x1, o1)] = a.ends.expect("arc with ends");
            let (x, exit_over) = if forward { (x1, o1) } else { (x0, o0) };
            leaves_over[x][filled[x]] = exit_over;
            filled[x] += 1;
            let entry = partner[exit.slot()];
            let n_exit = a.end_offsets[exit.at_end as usize];
            let n_entry = sys.arcs[entry.arc].end_offsets[entry.at_end as usize];
            t = [t[0] + n_exit[0] - n_entry[0], t[1] + n_exit[1] - n_entry[1]];
            arc = entry.arc;
            forward = !entry.at_end;
            if arc == start {
                debug_assert!(forward, "returned to the start arc backwards");
                break;
            }
            visited[arc] = true;
        }
        let class = if rank == 0 { HomClass::zero(0) } else { HomClass(t.to_vec()) };
        components.push(finish(class, polygon, need_polygon, d, kind));
    }

    let t = components.iter().filter(|c| c.trivial).count();
    let curves: Vec<CurveData> = components
        .iter()
        .filter(|c| !c.trivial)
        .map(|c| CurveData { class: c.class.clone(), winding: c.winding })
        .collect();
    let s_prime = canonical_multicurve(&curves, d.surface())?;
    Ok(Resolution { components, c: s.c(), t, s_prime, leaves_over })
}

fn finish(class: HomClass, polygon: Vec<Point>, need_polygon: bool, d: &Diagram, kind: SurfaceKind) -> ResolvedComponent {
    let winding = match (&d.surface().puncture, need_polygon && class.is_zero()) {
        (Some(p), true) => Some(puncture_winding(&polygon, p)),
        _ => None,
    };
    let trivial = triviality(&class, winding, kind);
    ResolvedComponent { class, winding, trivial, polygon }
}

impl Resolution {
    /// Sum of the traced classes.
    pub fn traced_class(&self, rank: usize) -> HomClass {
        self.components.iter().fold(HomClass::zero(rank), |a, c| a.add(&c.class))
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::build::tests::{cross_stack, line};
    use crate::diagram::build::{build_diagram, ComponentSpec, DiagramSpec, Override};
    use crate::diagram::surface::Surface;
    use std::collections::BTreeSet;

    #[test]
    fn one_crossing_states() {
        let d = cross_stack();
        let mut classes = BTreeSet::new();
        for s in State::all(1) {
            let r = resolve(&d, &s).unwrap();
            assert_eq!(r.n(), 1);
            assert_eq!(r.t, 0);
            assert_eq!(r.c.abs(), 1);
            let c = &r.components[0].class;
            classes.insert(if c.0[0] < 0 { c.neg() } else { c.clone() });
        }
        assert_eq!(classes, BTreeSet::from([HomClass(vec![1, 1]), HomClass(vec![1, -1])]));
    }

    #[test]
    fn a_smoothing_of_horizontal_over_vertical() {
        let r = resolve(&cross_stack(), &State(vec![1])).unwrap();
        let c = &r.components[0].class;
        assert!(*c == HomClass(vec![1, 1]) || *c == HomClass(vec![-1, -1]));
    }

    #[test]
    fn crossingless_unchanged() {
        let d = build_diagram(DiagramSpec {
            surface: Surface::torus(),
            components: vec![line(1, 0, Point::rats(0, 1, 1, 2), 0)],
            overrides: vec![],
        })
        .unwrap();
        let r = resolve(&d, &State(vec![])).unwrap();
        assert_eq!(r.c, 0);
        assert_eq!(r.components[0].class, HomClass(vec![1, 0]));
        assert_eq!(r.s_prime, SimpleMulticurve::slope(1, 0, 1).unwrap());
    }

    fn small_square(surface: Surface) -> Diagram {
        let v = [(1, 4), (3, 4)];
        let pts = vec![
            Point::rats(v[0].0, v[0].1, v[0].0, v[0].1),
            Point::rats(v[1].0, v[1].1, v[0].0, v[0].1),
            Point::rats(v[1].0, v[1].1, v[1].0, v[1].1),
            Point::rats(v[0].0, v[0].1, v[1].0, v[1].1),
            Point::rats(v[0].0, v[0].1, v[0].0, v[0].1),
        ];
        build_diagram(DiagramSpec { surface, components: vec![ComponentSpec::new(pts, 0)], overrides: vec![] }).unwrap()
    }

    #[test]
    fn contractible_loop_is_trivial() {
        for s in [Surface::disk(), Surface::torus(), Surface::punctured_torus_default()] {
            let r = resolve(&small_square(s), &State(vec![])).unwrap();
            assert_eq!(r.t, 1);
            assert!(r.s_prime.is_empty());
        }
    }

    #[test]
    fn puncture_encircling_loop_is_essential() {
        let r = resolve(&small_square(Surface::punctured_torus(Point::rats(1, 2, 1, 2))), &State(vec![])).unwrap();
        assert_eq!(r.components[0].winding, Some(1));
        assert_eq!(r.t, 0);
        assert_eq!(r.s_prime.boundary_parallel, 1);
    }

    #[test]
    fn triviality_rules() {
        assert!(triviality(&HomClass(vec![0, 0]), None, SurfaceKind::Torus));
        assert!(!triviality(&HomClass(vec![1, 0]), None, SurfaceKind::Torus));
        assert!(!triviality(&HomClass(vec![0, 0]), Some(-1), SurfaceKind::PuncturedTorus));
        assert!(triviality(&HomClass(vec![]), None, SurfaceKind::Disk));
    }

    #[test]
    fn figure_eight_curl() {
        // one-crossing curl on the disk: states give 2 loops or 1 loop
        let comp = ComponentSpec::new(
            vec![Point::ints(0, 0), Point::ints(2, 2), Point::ints(2, 0), Point::ints(0, 2), Point::ints(0, 0)],
            0,
        );
        let d = build_diagram(DiagramSpec {
            surface: Surface::disk(),
            components: vec![comp],
            overrides: vec![Override { component: 0, crossing_index: 0, over: true }],
        })
        .unwrap();
        let mut counts: Vec<usize> = State::all(1).map(|s| resolve(&d, &s).unwrap().t).collect();
        counts.sort();
        assert_eq!(counts, vec![1, 2]);
    }

    #[test]
    fn z2_class_preserved() {
        let d = cross_stack();
        for s in State::all(1) {
            let r = resolve(&d, &s).unwrap();
            assert_eq!(r.traced_class(2).mod2(), d.total_class().mod2());
        }
    }
}
