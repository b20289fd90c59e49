//! Compound handle slides of a straight multicurve over parallel copies of the
//! attaching curves.
//!
//! Band schema: the start is the canonical straight realization of a simple
//! multicurve at level 0. Band `i` is a thin straight strip from a fixed point
//! on its start component to a fixed point on its own parallel copy of the
//! chosen attaching curve, displaced by an integer `winding` in the cover.
//! Band `i` sits at level `1 + i`; red copies lie above every band and blue
//! copies below the start, so all bands are blackboard framed.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use super::data::{Color, CurveRef, HeegaardData};
use crate::diagram::geom::{bezout_for_slope, candidate_translates, normalize_slope, q, segment_meet, sign};
use crate::diagram::{
    build_diagram, orient_data, realize, ComponentSpec, Diagram, DiagramSpec, OrientedDiagram, Point, SimpleMulticurve,
    Q,
};
use crate::error::{Error, Result};
use crate::homology::HomClass;
use crate::json::i64_value;
use crate::skein::multicurve_to_json;

/// Half-width of a band, as a fraction of the direction vector it runs along.
fn eta() -> Q {
    q(1, 1 << 24)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Band {
    /// Index of the start component the band leaves from.
    pub component: usize,
    pub curve: CurveRef,
    /// Lattice displacement of the copy-side endpoint from its lift nearest
    /// the start-side endpoint.
    pub winding: [i64; 2],
}

impl Band {
    pub fn to_json(&self) -> Value {
        json!({
            "component": self.component,
            "curve": self.curve.label(),
            "winding": [i64_value(self.winding[0]), i64_value(self.winding[1])],
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlideRelation {
    pub start: SimpleMulticurve,
    pub start_diagram: Diagram,
    pub result: Diagram,
    pub bands: Vec<Band>,
    /// Class of each copy as traversed by the result, forced by the band geometry.
    pub directions: Vec<HomClass>,
    pub used: BTreeMap<CurveRef, u32>,
    pub slide_class: HomClass,
}

impl SlideRelation {
    fn total(&self, color: Color) -> HomClass {
        self.bands
            .iter()
            .zip(&self.directions)
            .filter(|(b, _)| b.curve.color == color)
            .fold(HomClass::zero(2), |acc, (_, d)| acc.add(d))
    }

    pub fn red_total(&self) -> HomClass {
        self.total(Color::Red)
    }

    pub fn blue_total(&self) -> HomClass {
        self.total(Color::Blue)
    }

    /// Writhe of the result oriented along the start, read off the crossings.
    pub fn writhe(&self) -> i64 {
        orient_data(&OrientedDiagram::forward(self.result.clone())).writhe
    }

    /// ω(s̄, b̄ − r̄) + ω(r̄, b̄).
    pub fn writhe_from_classes(&self) -> i64 {
        let omega = |a: &HomClass, b: &HomClass| a.0[0] * b.0[1] - a.0[1] * b.0[0];
        let (r, b) = (self.red_total(), self.blue_total());
        omega(&self.start.class(2), &b.sub(&r)) + omega(&r, &b)
    }

    pub fn to_json(&self) -> Value {
        let bands: Vec<Value> = self
            .bands
            .iter()
            .zip(&self.directions)
            .map(|(b, d)| {
                let mut v = b.to_json();
                v["direction"] = json!([i64_value(d.0[0]), i64_value(d.0[1])]);
                v
            })
            .collect();
        json!({
            "start": multicurve_to_json(&self.start),
            "bands": bands,
            "slide_class": [i64_value(self.slide_class.0[0]), i64_value(self.slide_class.0[1])],
            "crossings": self.result.n_crossings(),
            "writhe": i64_value(self.writhe()),
        })
    }
}

struct Placed {
    band: Band,
    x: Point,
    delta: Point,
    y: Point,
    sigma: Point,
    dir: Point,
    copy: (Point, Point),
    band_level: i64,
    copy_level: i64,
}

fn copy_line(class: &HomClass, slot: usize, n_bands: usize, color: Color) -> Result<(Point, Point)> {
    let ((a, b), _) = normalize_slope(class.0[0], class.0[1])
        .ok_or_else(|| Error::InvalidBand("attaching curve has zero class".into()))?;
    let (u, v) = bezout_for_slope(a, b);
    let jitter = match color {
        Color::Red => q(1, 211),
        Color::Blue => q(1, 223),
    };
    let offset = &q(2 * slot as i64 + 1, 2 * n_bands as i64 + 2) + &jitter;
    let base = Point::ints(u, v).scale(&offset);
    let end = &base + &Point::ints(a, b);
    Ok((base, end))
}

/// The lattice translate of `p` closest to `target` in each coordinate.
fn nearest_lift(p: &Point, target: &Point) -> Point {
    let half = q(1, 2);
    let round = |a: &Q, b: &Q| (&(b - a) + &half).floor();
    Point::new(&p.x + &round(&p.x, &target.x), &p.y + &round(&p.y, &target.y))
}

/// Whether segment `g` meets any lattice translate of the segments in `obstacles`.
fn meets_any(g: (&Point, &Point), obstacles: &[(Point, Point)]) -> bool {
    obstacles.iter().any(|(o0, o1)| {
        candidate_translates(g.0, g.1, o0, o1).into_iter().any(|n| {
            let shift = Point::from_int_vec(n);
            segment_meet(g.0, g.1, &(o0 + &shift), &(o1 + &shift)).is_some()
        })
    })
}

/// The compound slide of `start` along `bands`, each band using a fresh copy.
/// A single band sum of `start` with a parallel copy of `band.curve`.
pub fn elementary_slide(start: &SimpleMulticurve, band: Band, h: &HeegaardData) -> Result<SlideRelation> {
    compound_slide(start, &[band], h)
}

pub fn compound_slide(start: &SimpleMulticurve, bands: &[Band], h: &HeegaardData) -> Result<SlideRelation> {
    if start.is_empty() {
        return Err(Error::InvalidBand("the start is empty, so a band has no endpoint on it".into()));
    }
    if bands.is_empty() {
        return Err(Error::InvalidBand("no bands".into()));
    }
    let comps = realize(start, &h.surface, 0, 0)?;
    let nb = bands.len();
    let mut per_comp: Vec<Vec<usize>> = vec![Vec::new(); comps.len()];
    for (i, b) in bands.iter().enumerate() {
        per_comp
            .get_mut(b.component)
            .ok_or_else(|| Error::InvalidBand(format!("band {i} names missing component {}", b.component)))?
            .push(i);
    }
    let mut placed: Vec<Option<Placed>> = (0..nb).map(|_| None).collect();
    for (k, idxs) in per_comp.iter().enumerate() {
        let c = &comps[k];
        let t_dir = &c.vertices[1] - &c.vertices[0];
        for (j, &i) in idxs.iter().enumerate() {
            let band = bands[i];
            let class = h.class_of(band.curve)?;
            let copy = copy_line(class, i, nb, band.curve.color)?;
            let c_dir = &copy.1 - &copy.0;
            let t = &q(j as i64 + 1, idxs.len() as i64 + 1) + &q(1, 1013);
            let x = &c.vertices[0] + &t_dir.scale(&t);
            let tau = &q(1, 3) + &q(i as i64 + 1, 131);
            let on_copy = &copy.0 + &c_dir.scale(&tau);
            let nearest = nearest_lift(&on_copy, &x);
            let y = &nearest + &Point::from_int_vec(band.winding);
            let v = &y - &x;
            let (s_t, s_c) = (sign(&v.cross(&t_dir)), sign(&v.cross(&c_dir)));
            if s_t == 0 || s_c == 0 {
                return Err(Error::InvalidBand(format!("band {i} is parallel to a curve it joins")));
            }
            // the strip is embedded only if the copy is entered on the side the start leaves
            let dir = if s_c == -s_t { c_dir } else { c_dir.scale(&-Q::from_integer(1.into())) };
            let copy_level = match band.curve.color {
                Color::Red => 1 + nb as i64 + i as i64,
                Color::Blue => -1 - i as i64,
            };
            placed[i] = Some(Placed {
                band,
                delta: t_dir.scale(&eta()),
                sigma: dir.scale(&eta()),
                x,
                y,
                dir,
                copy,
                band_level: 1 + i as i64,
                copy_level,
            });
        }
    }
    let placed: Vec<Placed> = placed.into_iter().map(|p| p.expect("every band placed")).collect();

    // nothing else may cross the start or a copy where a band is attached
    for (i, p) in placed.iter().enumerate() {
        let mut for_start: Vec<(Point, Point)> = Vec::new();
        let mut for_copy: Vec<(Point, Point)> = Vec::new();
        for (k, c) in comps.iter().enumerate() {
            if k != p.band.component {
                for_start.push((c.vertices[0].clone(), c.vertices[1].clone()));
            }
            for_copy.push((c.vertices[0].clone(), c.vertices[1].clone()));
        }
        for (j, o) in placed.iter().enumerate() {
            for_start.push(o.copy.clone());
            if j != i {
                for_copy.push(o.copy.clone());
                for_start.push((o.x.clone(), o.y.clone()));
                for_copy.push((o.x.clone(), o.y.clone()));
            }
        }
        let g_start = (&p.x - &p.delta, &p.x + &p.delta);
        let g_copy = (&p.y - &p.sigma, &p.y + &p.sigma);
        if meets_any((&g_start.0, &g_start.1), &for_start) || meets_any((&g_copy.0, &g_copy.1), &for_copy) {
            return Err(Error::InvalidBand(format!("band {i} is attached at a crossing")));
        }
    }

    let mut components = Vec::with_capacity(comps.len());
    for (k, c) in comps.iter().enumerate() {
        if per_comp[k].is_empty() {
            components.push(c.clone());
            continue;
        }
        let base = c.vertices[0].clone();
        let t_dir = &c.vertices[1] - &base;
        let mut shift = Point::zero();
        let mut verts = vec![base.clone()];
        let mut levels = Vec::new();
        for &i in &per_comp[k] {
            let p = &placed[i];
            verts.push(&(&p.x - &p.delta) + &shift);
            levels.push(0);
            verts.push(&(&p.y + &p.sigma) + &shift);
            levels.push(p.band_level);
            verts.push(&(&(&p.y + &p.dir) - &p.sigma) + &shift);
            levels.push(p.copy_level);
            shift = &shift + &p.dir;
            verts.push(&(&p.x + &p.delta) + &shift);
            levels.push(p.band_level);
        }
        verts.push(&(&base + &t_dir) + &shift);
        levels.push(0);
        components.push(ComponentSpec { vertices: verts, level: 0, segment_levels: Some(levels) });
    }
    let result = build_diagram(DiagramSpec { surface: h.surface.clone(), components, overrides: vec![] })?;
    let start_diagram = build_diagram(DiagramSpec { surface: h.surface.clone(), components: comps, overrides: vec![] })?;
    let directions: Vec<HomClass> = placed
        .iter()
        .map(|p| HomClass(p.dir.as_int_vec().expect("integral direction").to_vec()))
        .collect();
    let mut used = BTreeMap::new();
    for b in bands {
        *used.entry(b.curve).or_insert(0) += 1;
    }
    let slide_class = directions.iter().fold(HomClass::zero(2), |acc, d| acc.add(d));
    Ok(SlideRelation { start: start.clone(), start_diagram, result, bands: bands.to_vec(), directions, used, slide_class })
}

/// Bounds for the band schema.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SlideBounds {
    pub max_multiplicity: u32,
    pub max_slope: i64,
    pub max_arcs: usize,
    pub winding_range: i64,
}

impl SlideBounds {
    pub fn to_json(&self) -> Value {
        json!({
            "max_multiplicity": self.max_multiplicity,
            "max_slope": self.max_slope,
            "max_arcs": self.max_arcs,
            "winding_range": self.winding_range,
        })
    }
}

impl Default for SlideBounds {
    fn default() -> Self {
        SlideBounds { max_multiplicity: 2, max_slope: 1, max_arcs: 2, winding_range: 1 }
    }
}

/// Simple multicurves on the torus that vanish in H₁(F; ℤ₂), within the bounds.
pub fn even_starts(bounds: &SlideBounds) -> Vec<SimpleMulticurve> {
    let mut out = BTreeSet::new();
    for p in -bounds.max_slope..=bounds.max_slope {
        for qq in -bounds.max_slope..=bounds.max_slope {
            if num_integer::gcd(p, qq) != 1 {
                continue;
            }
            for m in (2..=bounds.max_multiplicity).step_by(2) {
                out.insert(SimpleMulticurve::slope(p, qq, m).expect("primitive slope"));
            }
        }
    }
    out.into_iter().collect()
}

/// Multisets of size `k` drawn from `0..n`, in lexicographic order.
fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for tail in multisets(n, k - 1) {
        let lo = tail.last().copied().unwrap_or(0);
        for i in lo..n {
            let mut v = tail.clone();
            v.push(i);
            out.push(v);
        }
    }
    out
}

/// Every compound slide of the schema whose copies sum to zero mod 2, in a
/// fixed order. Configurations that are not in general position are skipped.
pub fn generate_relations(h: &HeegaardData, bounds: &SlideBounds) -> Vec<SlideRelation> {
    let mut out = Vec::new();
    let w = bounds.winding_range.max(0);
    for start in even_starts(bounds) {
        let n = start.n() as usize;
        let mut options = Vec::new();
        for component in 0..n {
            for curve in h.curves() {
                for a in -w..=w {
                    for b in -w..=w {
                        options.push(Band { component, curve, winding: [a, b] });
                    }
                }
            }
        }
        for k in 1..=bounds.max_arcs {
            for pick in multisets(options.len(), k) {
                let bands: Vec<Band> = pick.iter().map(|&i| options[i]).collect();
                let parity = bands.iter().fold(HomClass::zero(2), |acc, b| {
                    acc.add(h.class_of(b.curve).expect("curve from the data"))
                });
                if !parity.mod2().is_zero() {
                    continue;
                }
                if let Ok(rel) = compound_slide(&start, &bands, h) {
                    out.push(rel);
                }
            }
        }
    }
    out
}
