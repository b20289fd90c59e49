//! Validated diagrams: crossings, passages and per-component homology.
//!
//! A component is an open polyline `v₀ … v_k` in the universal cover whose
//! closing vertex satisfies `v_k − v₀ ∈ ℤ²` (torus kinds) or `v_k = v₀` (disk).
//! Its homology class is `v_k − v₀`.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use super::geom::{candidate_translates, point_on_segment, segment_meet, Meet, Point, Q};
use super::surface::{Surface, SurfaceKind};
use crate::error::{Error, Result};
use crate::homology::HomClass;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentSpec {
    pub vertices: Vec<Point>,
    pub level: i64,
    /// Optional per-segment heights overriding `level`.
    pub segment_levels: Option<Vec<i64>>,
}

impl ComponentSpec {
    pub fn new(vertices: Vec<Point>, level: i64) -> Self {
        ComponentSpec { vertices, level, segment_levels: None }
    }

    pub fn segments(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn height(&self, seg: usize) -> i64 {
        self.segment_levels.as_ref().map_or(self.level, |l| l[seg])
    }

    /// Vertex `i` of the periodic unrolling, `i ≥ 0`.
    pub fn unrolled_vertex(&self, i: usize, shift: &Point) -> Point {
        let k = self.segments();
        let (q, r) = (i / k, i % k);
        &self.vertices[r] + &shift.scale(&Q::from_integer((q as i64).into()))
    }

    /// The same curve traversed backwards.
    pub fn reversed(&self) -> ComponentSpec {
        ComponentSpec {
            vertices: self.vertices.iter().rev().cloned().collect(),
            level: self.level,
            segment_levels: self.segment_levels.as_ref().map(|l| l.iter().rev().copied().collect()),
        }
    }

    pub fn translated(&self, by: &Point) -> ComponentSpec {
        ComponentSpec {
            vertices: self.vertices.iter().map(|v| v + by).collect(),
            level: self.level,
            segment_levels: self.segment_levels.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Override {
    pub component: usize,
    pub crossing_index: usize,
    pub over: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramSpec {
    pub surface: Surface,
    pub components: Vec<ComponentSpec>,
    pub overrides: Vec<Override>,
}

/// One strand of a crossing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Passage {
    pub comp: usize,
    pub seg: usize,
    /// Parameter along the segment, strictly inside (0, 1).
    pub t: Q,
    /// The crossing point in the frame of this component's vertex list.
    pub lift: Point,
    /// Direction of the segment.
    pub dir: Point,
}

impl Passage {
    fn position(&self) -> (usize, &Q) {
        (self.seg, &self.t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub over: Passage,
    pub under: Passage,
    /// The crossing point reduced to the fundamental domain.
    pub point: Point,
}

impl Crossing {
    /// Sign of `over_dir × under_dir`; never zero.
    pub fn handedness(&self) -> i64 {
        if self.over.dir.cross(&self.under.dir).is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn passage(&self, over: bool) -> &Passage {
        if over {
            &self.over
        } else {
            &self.under
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    spec: DiagramSpec,
    classes: Vec<HomClass>,
    crossings: Vec<Crossing>,
    /// Per component, its passages in order along the curve as (crossing, is_over).
    order: Vec<Vec<(usize, bool)>>,
}

fn seg_name(comp: usize, seg: usize) -> String {
    format!("(component {comp}, segment {seg})")
}

fn component_class(surface: &Surface, c: usize, comp: &ComponentSpec) -> Result<HomClass> {
    if comp.vertices.len() < 2 {
        return Err(Error::BadComponent { component: c, msg: "needs at least two vertices".into() });
    }
    if let Some(l) = &comp.segment_levels {
        if l.len() != comp.segments() {
            return Err(Error::BadComponent {
                component: c,
                msg: format!("{} segment levels for {} segments", l.len(), comp.segments()),
            });
        }
    }
    for (s, w) in comp.vertices.windows(2).enumerate() {
        if w[0] == w[1] {
            return Err(Error::BadComponent { component: c, msg: format!("segment {s} has zero length") });
        }
    }
    let shift = &comp.vertices[comp.segments()] - &comp.vertices[0];
    Ok(match (surface.is_periodic(), shift.as_int_vec()) {
        (false, _) if !shift.is_zero() => {
            return Err(Error::BadComponent { component: c, msg: "polyline is not closed".into() })
        }
        (false, _) => HomClass::zero(0),
        (true, Some(v)) => HomClass(v.to_vec()),
        (true, None) => {
            return Err(Error::BadComponent {
                component: c,
                msg: "last vertex differs from the first by a non-integer vector".into(),
            })
        }
    })
}

/// Whether the meeting at (s, t) is the shared vertex of consecutive segments.
fn adjacent(k: usize, a: usize, b: usize, s: &Q, t: &Q) -> bool {
    let (zero, one) = (Q::zero(), Q::one());
    (*s == one && *t == zero && b == (a + 1) % k) || (*s == zero && *t == one && a == (b + 1) % k)
}

fn lex_positive(n: [i64; 2]) -> bool {
    n[0] > 0 || (n[0] == 0 && n[1] > 0)
}

struct RawCrossing {
    first: Passage,
    second: Passage,
    point: Point,
}

impl RawCrossing {
    fn ordered_positions(&self) -> ((usize, &Q), (usize, &Q)) {
        let (p, q) = (self.first.position(), self.second.position());
        if p <= q {
            (p, q)
        } else {
            (q, p)
        }
    }
}

pub fn build_diagram(spec: DiagramSpec) -> Result<Diagram> {
    let surface = &spec.surface;
    let mut classes = Vec::new();
    for (c, comp) in spec.components.iter().enumerate() {
        classes.push(component_class(surface, c, comp)?);
    }

    if let Some(p) = &surface.puncture {
        for (c, comp) in spec.components.iter().enumerate() {
            for w in comp.vertices.windows(2) {
                for n in candidate_translates(&w[0], &w[1], p, p) {
                    if point_on_segment(&(p + &Point::from_int_vec(n)), &w[0], &w[1]) {
                        return Err(Error::ThroughPuncture(c));
                    }
                }
            }
        }
    }

    let segs: Vec<(usize, usize)> = spec
        .components
        .iter()
        .enumerate()
        .flat_map(|(c, comp)| (0..comp.segments()).map(move |s| (c, s)))
        .collect();
    let ends = |(c, s): (usize, usize)| {
        let v = &spec.components[c].vertices;
        (&v[s], &v[s + 1])
    };

    let mut raw = Vec::new();
    for i in 0..segs.len() {
        let (a0, a1) = ends(segs[i]);
        for j in i..segs.len() {
            let (b0, b1) = ends(segs[j]);
            let translates =
                if surface.is_periodic() { candidate_translates(a0, a1, b0, b1) } else { vec![[0, 0]] };
            for n in translates {
                if i == j && !lex_positive(n) {
                    continue;
                }
                let off = Point::from_int_vec(n);
                let (c0, c1) = (b0 + &off, b1 + &off);
                let Some(meet) = segment_meet(a0, a1, &c0, &c1) else { continue };
                let (ca, sa) = segs[i];
                let (cb, sb) = segs[j];
                let names = || (seg_name(ca, sa), seg_name(cb, sb));
                let (s, t) = match meet {
                    Meet::Overlap => {
                        let (a, b) = names();
                        return Err(Error::Geometry { a, b, what: "overlap along a positive length".into() });
                    }
                    Meet::Point { s, t } => (s, t),
                };
                let interior = |x: &Q| x.is_positive() && *x < Q::one();
                if interior(&s) && interior(&t) {
                    let lift_a = a0 + &(a1 - a0).scale(&s);
                    let lift_b = b0 + &(b1 - b0).scale(&t);
                    let point = if surface.is_periodic() { lift_a.reduce_mod1() } else { lift_a.clone() };
                    raw.push(RawCrossing {
                        first: Passage { comp: ca, seg: sa, t: s, lift: lift_a, dir: a1 - a0 },
                        second: Passage { comp: cb, seg: sb, t, lift: lift_b, dir: b1 - b0 },
                        point,
                    });
                } else if !(ca == cb && adjacent(spec.components[ca].segments(), sa, sb, &s, &t)) {
                    let (a, b) = names();
                    return Err(Error::Geometry { a, b, what: "meet at a vertex".into() });
                }
            }
        }
    }

    let mut seen: BTreeMap<&Point, usize> = BTreeMap::new();
    for (k, r) in raw.iter().enumerate() {
        if let Some(&prev) = seen.get(&r.point) {
            let p = &raw[prev];
            return Err(Error::Geometry {
                a: seg_name(p.first.comp, p.first.seg),
                b: seg_name(r.first.comp, r.first.seg),
                what: format!("form a triple point at {:?}", r.point),
            });
        }
        seen.insert(&r.point, k);
    }

    // self-crossings of each component, in order of their first passage
    let mut self_index: BTreeMap<usize, usize> = BTreeMap::new();
    let mut per_comp: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (k, r) in raw.iter().enumerate() {
        if r.first.comp == r.second.comp {
            per_comp.entry(r.first.comp).or_default().push(k);
        }
    }
    for list in per_comp.values_mut() {
        list.sort_by(|&x, &y| raw[x].ordered_positions().cmp(&raw[y].ordered_positions()));
        for (idx, &k) in list.iter().enumerate() {
            self_index.insert(k, idx);
        }
    }

    let mut overrides: BTreeMap<(usize, usize), bool> = BTreeMap::new();
    for o in &spec.overrides {
        let count = per_comp.get(&o.component).map_or(0, |l| l.len());
        if o.crossing_index >= count || overrides.insert((o.component, o.crossing_index), o.over).is_some() {
            return Err(Error::BadOverride { component: o.component, index: o.crossing_index });
        }
    }

    let mut crossings = Vec::with_capacity(raw.len());
    for (k, r) in raw.into_iter().enumerate() {
        let h1 = spec.components[r.first.comp].height(r.first.seg);
        let h2 = spec.components[r.second.comp].height(r.second.seg);
        let first_over = if let Some(&idx) = self_index.get(&k) {
            let first_is_earlier = r.first.position() <= r.second.position();
            match overrides.get(&(r.first.comp, idx)) {
                Some(&over) => over == first_is_earlier,
                None if h1 != h2 => h1 > h2,
                None => return Err(Error::MissingOverride { component: r.first.comp, index: idx }),
            }
        } else if h1 == h2 {
            return Err(Error::Geometry {
                a: seg_name(r.first.comp, r.first.seg),
                b: seg_name(r.second.comp, r.second.seg),
                what: "cross at equal levels".into(),
            });
        } else {
            h1 > h2
        };
        let (over, under) = if first_over { (r.first, r.second) } else { (r.second, r.first) };
        crossings.push(Crossing { over, under, point: r.point });
    }

    let mut order: Vec<Vec<(usize, bool)>> = vec![Vec::new(); spec.components.len()];
    for (k, x) in crossings.iter().enumerate() {
        order[x.over.comp].push((k, true));
        order[x.under.comp].push((k, false));
    }
    for list in order.iter_mut() {
        list.sort_by(|a, b| {
            crossings[a.0].passage(a.1).position().cmp(&crossings[b.0].passage(b.1).position())
        });
    }
    Ok(Diagram { spec, classes, crossings, order })
}

impl Diagram {
    pub fn spec(&self) -> &DiagramSpec {
        &self.spec
    }

    pub fn surface(&self) -> &Surface {
        &self.spec.surface
    }

    pub fn components(&self) -> &[ComponentSpec] {
        &self.spec.components
    }

    pub fn n_components(&self) -> usize {
        self.spec.components.len()
    }

    pub fn classes(&self) -> &[HomClass] {
        &self.classes
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn n_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn passage_order(&self, comp: usize) -> &[(usize, bool)] {
        &self.order[comp]
    }

    /// Shift `v_k − v₀` of a component.
    pub fn shift(&self, comp: usize) -> Point {
        let v = &self.spec.components[comp].vertices;
        &v[v.len() - 1] - &v[0]
    }

    /// Sum of the component classes.
    pub fn total_class(&self) -> HomClass {
        self.classes.iter().fold(HomClass::zero(self.surface().rank()), |a, c| a.add(c))
    }

    pub fn kind(&self) -> SurfaceKind {
        self.spec.surface.kind
    }
}
