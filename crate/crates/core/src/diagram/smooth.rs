//! Geometric smoothing of one crossing, matching the pairing used by the
//! state sum.

use num_traits::One;

use super::build::{build_diagram, ComponentSpec, Diagram, DiagramSpec};
use super::geom::{q, Point, Q};
use crate::error::{Error, Result};

/// How far from the crossing, in segment parameter, the strands are cut.
fn cut() -> Q {
    q(1, 1 << 40)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Strand {
    Over,
    Under,
}

/// One end of a cut strand: `out` is the side after the crossing.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct CutEnd {
    strand: Strand,
    out: bool,
}

/// A piece of the original curve between two cut ends, in its component frame.
struct Piece {
    from: CutEnd,
    to: CutEnd,
    points: Vec<Point>,
    heights: Vec<i64>,
    /// The crossing point seen from each end of `points`.
    lifts: [Point; 2],
}

fn point_at(comp: &ComponentSpec, shift: &Point, seg: usize, t: &Q) -> Point {
    let a = comp.unrolled_vertex(seg, shift);
    let b = comp.unrolled_vertex(seg + 1, shift);
    &a + &(&b - &a).scale(t)
}

pub fn smooth_crossing(d: &Diagram, x: usize, sign: i8) -> Result<Diagram> {
    let crossing = d.crossings().get(x).ok_or_else(|| Error::input("crossing", format!("no crossing {x}")))?;
    if sign != 1 && sign != -1 {
        return Err(Error::input("sign", format!("{sign} is not ±1")));
    }
    if !d.spec().overrides.is_empty() {
        return Err(Error::Unsupported("smoothing a diagram that uses over/under overrides".into()));
    }
    let e = cut();
    let passage = |s: Strand| crossing.passage(s == Strand::Over);
    for s in [Strand::Over, Strand::Under] {
        let p = passage(s);
        let near = d.crossings().iter().flat_map(|c| [&c.over, &c.under]).any(|o| {
            o.comp == p.comp && o.seg == p.seg && o.t != p.t && {
                let gap = &o.t - &p.t;
                gap.clone() * &gap < &e * &e * q(4, 1)
            }
        });
        if p.t <= e || p.t >= Q::one() - &e || near {
            return Err(Error::Unsupported(format!("crossing {x} is too close to a vertex or another crossing")));
        }
    }
    let position = |end: CutEnd| {
        let p = passage(end.strand);
        (p.seg, if end.out { &p.t + &e } else { &p.t - &e })
    };

    // arcs of the cut curve, each from an out end forward to the next in end
    let (a, b) = (crossing.over.comp, crossing.under.comp);
    let ends = |strand, out| CutEnd { strand, out };
    let arcs: Vec<(CutEnd, CutEnd)> = if a == b {
        vec![
            (ends(Strand::Over, true), ends(Strand::Under, false)),
            (ends(Strand::Under, true), ends(Strand::Over, false)),
        ]
    } else {
        vec![
            (ends(Strand::Over, true), ends(Strand::Over, false)),
            (ends(Strand::Under, true), ends(Strand::Under, false)),
        ]
    };
    let pieces: Vec<Piece> = arcs
        .iter()
        .map(|&(from, to)| {
            let comp_index = passage(from.strand).comp;
            let comp = &d.components()[comp_index];
            let shift = d.shift(comp_index);
            let (s0, t0) = position(from);
            let (s1, t1) = position(to);
            let wrap = (s1, &t1) <= (s0, &t0);
            let last = s1 + if wrap { comp.segments() } else { 0 };
            let mut points = vec![point_at(comp, &shift, s0, &t0)];
            points.extend((s0 + 1..=last).map(|i| comp.unrolled_vertex(i, &shift)));
            points.push(point_at(comp, &shift, last, &t1));
            let heights = (s0..=last).map(|i| comp.height(i % comp.segments())).collect();
            let end_lift = &passage(to.strand).lift + &if wrap { shift } else { Point::zero() };
            Piece { from, to, points, heights, lifts: [passage(from.strand).lift.clone(), end_lift] }
        })
        .collect();

    let a_positive = sign as i64 * crossing.handedness() > 0;
    let partner = |end: CutEnd| CutEnd {
        strand: if end.strand == Strand::Over { Strand::Under } else { Strand::Over },
        out: if a_positive { !end.out } else { end.out },
    };

    let mut components: Vec<ComponentSpec> =
        d.components().iter().enumerate().filter(|&(c, _)| c != a && c != b).map(|(_, c)| c.clone()).collect();
    let mut used = vec![false; pieces.len()];
    while let Some(start) = used.iter().position(|u| !u) {
        let mut points: Vec<Point> = Vec::new();
        let mut heights: Vec<i64> = Vec::new();
        let mut offset = Point::zero();
        let mut first_lift: Option<Point> = None;
        let (mut k, mut forward) = (start, true);
        loop {
            used[k] = true;
            let p = &pieces[k];
            let (mut pts, mut hs, lifts) = if forward {
                (p.points.clone(), p.heights.clone(), [&p.lifts[0], &p.lifts[1]])
            } else {
                let mut pts = p.points.clone();
                pts.reverse();
                let mut hs = p.heights.clone();
                hs.reverse();
                (pts, hs, [&p.lifts[1], &p.lifts[0]])
            };
            match &first_lift {
                None => first_lift = Some(lifts[0].clone()),
                Some(_) => offset = &offset - lifts[0],
            }
            let placed: Vec<Point> = pts.drain(..).map(|v| &v + &offset).collect();
            if let Some(&h) = heights.last() {
                // connector across the smoothed crossing
                hs.insert(0, h);
            }
            points.extend(placed);
            heights.append(&mut hs);
            offset = &offset + lifts[1];
            let exit = if forward { p.to } else { p.from };
            let next = partner(exit);
            let (nk, nf) = pieces
                .iter()
                .enumerate()
                .find_map(|(i, piece)| {
                    if piece.from == next {
                        Some((i, true))
                    } else if piece.to == next {
                        Some((i, false))
                    } else {
                        None
                    }
                })
                .expect("every cut end bounds a piece");
            if nk == start && nf {
                break;
            }
            (k, forward) = (nk, nf);
        }
        let close = &(&offset - first_lift.as_ref().expect("set on first piece")) + &points[0];
        heights.push(*heights.last().expect("non-empty"));
        points.push(close);
        components.push(ComponentSpec { vertices: points, level: 0, segment_levels: Some(heights) });
    }
    build_diagram(DiagramSpec { surface: d.surface().clone(), components, overrides: vec![] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::build::tests::cross_stack;

    #[test]
    fn one_crossing_torus() {
        let d = cross_stack();
        let total = d.total_class();
        for sign in [1, -1] {
            let s = smooth_crossing(&d, 0, sign).unwrap();
            assert_eq!(s.n_crossings(), 0);
            assert_eq!(s.n_components(), 1);
            assert_eq!(s.total_class().mod2(), total.mod2());
        }
        let classes: Vec<_> = [1, -1].iter().map(|&s| smooth_crossing(&d, 0, s).unwrap().classes()[0].clone()).collect();
        assert_ne!(classes[0], classes[1]);
    }

    #[test]
    fn rejects_bad_input() {
        let d = cross_stack();
        assert!(smooth_crossing(&d, 1, 1).is_err());
        assert!(smooth_crossing(&d, 0, 0).is_err());
    }
}
