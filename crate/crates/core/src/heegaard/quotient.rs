//! Truncated presentations of K⁰_ζ(M) = K⁰_ζ(F)/⟨S⟩_ζ at a fourth root of unity.
//!
//! The spanning set is every ℤ₂-trivial multicurve of complexity at most N,
//! where (p,q)^m has complexity m(|p|+|q|). A slide relation is kept when its
//! start lies in the spanning set, its result has at most `cap` crossings and
//! the symbolic bracket of start minus result is supported in the spanning
//! set. The kept set does not depend on ζ, so presentations at different ζ
//! are directly comparable. Dimensions are upper bounds.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde_json::{json, Value};

use super::data::HeegaardData;
use super::slide::{generate_relations, SlideBounds, SlideRelation};
use crate::diagram::SimpleMulticurve;
use crate::error::{Error, Result};
use crate::linalg::{SparseMatrix, SparseRow};
use crate::ring::GaussRat;
use crate::skein::{bracket, multicurve_to_json, Skein};

pub fn complexity(mc: &SimpleMulticurve) -> u64 {
    mc.slopes.iter().map(|(&(p, q), &m)| m as u64 * (p.unsigned_abs() + q.unsigned_abs())).sum::<u64>()
        + mc.boundary_parallel as u64
}

/// ℤ₂-trivial multicurves on the torus of complexity at most `n`, ∅ first.
pub fn truncation_basis(n: u64) -> Vec<SimpleMulticurve> {
    let mut out = vec![SimpleMulticurve::empty()];
    let reach = (n / 2) as i64;
    let mut slopes = Vec::new();
    for p in -reach..=reach {
        for q in -reach..=reach {
            if num_integer::gcd(p, q) == 1 {
                if let Ok(mc) = SimpleMulticurve::slope(p, q, 1) {
                    if !slopes.contains(&mc) {
                        slopes.push(mc);
                    }
                }
            }
        }
    }
    for s in slopes {
        let ((p, q), _) = s.slopes.iter().next().map(|(k, v)| (*k, *v)).expect("one slope");
        for m in (2u32..).step_by(2) {
            let mc = SimpleMulticurve::slope(p, q, m).expect("primitive");
            if complexity(&mc) > n {
                break;
            }
            out.push(mc);
        }
    }
    out.sort_by(|a, b| (complexity(a), a).cmp(&(complexity(b), b)));
    out
}

/// Kept relations with ⟨s⟩ − ⟨D⟩ in symbolic ζ.
#[derive(Clone, Debug)]
pub struct RelationSet {
    pub basis: Vec<SimpleMulticurve>,
    pub relations: Vec<(SlideRelation, Skein)>,
    pub generated: usize,
    pub over_cap: usize,
    pub outside: usize,
}

pub fn relation_set(h: &HeegaardData, bounds: &SlideBounds, truncation: u64, cap: usize) -> Result<RelationSet> {
    let basis = truncation_basis(truncation);
    let mut out = RelationSet { basis, relations: Vec::new(), generated: 0, over_cap: 0, outside: 0 };
    for rel in generate_relations(h, bounds) {
        if complexity(&rel.start) > truncation {
            continue;
        }
        out.generated += 1;
        if rel.result.n_crossings() > cap {
            out.over_cap += 1;
            continue;
        }
        let element = Skein::basis(rel.start.clone(), &h.surface)?.sub(&bracket(&rel.result, cap)?)?;
        if element.terms().all(|(mc, _)| complexity(mc) <= truncation && mc.class(2).mod2().is_zero()) {
            out.relations.push((rel, element));
        } else {
            out.outside += 1;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct TruncatedQuotient {
    pub zeta: GaussRat,
    pub truncation: u64,
    pub basis: Vec<SimpleMulticurve>,
    pub matrix: SparseMatrix,
    pub rank: usize,
    pub dimension: usize,
    pub generated: usize,
    pub over_cap: usize,
    pub outside: usize,
}

impl TruncatedQuotient {
    pub fn to_json(&self) -> Value {
        json!({
            "presentation": "truncated",
            "dimension_is_upper_bound": true,
            "zeta": self.zeta.to_string(),
            "truncation": self.truncation,
            "basis_size": self.basis.len(),
            "basis": self.basis.iter().map(multicurve_to_json).collect::<Vec<_>>(),
            "relations_generated": self.generated,
            "relations_kept": self.matrix.nrows(),
            "relations_over_crossing_cap": self.over_cap,
            "relations_outside_truncation": self.outside,
            "rank": self.rank,
            "dimension": self.dimension,
        })
    }
}

/// Row of a relation at ζ over the basis columns.
pub fn relation_row(element: &Skein, zeta: &GaussRat, index: &BTreeMap<SimpleMulticurve, usize>) -> Result<SparseRow> {
    let mut row = SparseRow::new();
    for (mc, c) in element.eval(zeta)? {
        let col = *index.get(&mc).ok_or_else(|| Error::Unsupported(format!("{mc:?} outside the truncation")))?;
        row.insert(col, c);
    }
    Ok(row)
}

pub fn quotient_at(set: &RelationSet, zeta: &GaussRat, truncation: u64) -> Result<TruncatedQuotient> {
    if &(zeta * zeta) * &(zeta * zeta) != GaussRat::from_int(1) {
        return Err(Error::NotFourthRoot(zeta.to_string()));
    }
    let index: BTreeMap<SimpleMulticurve, usize> = set.basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut matrix = SparseMatrix::new(set.basis.len());
    for (_, element) in &set.relations {
        matrix.push_row(relation_row(element, zeta, &index)?)?;
    }
    let rank = matrix.rank();
    Ok(TruncatedQuotient {
        zeta: zeta.clone(),
        truncation,
        basis: set.basis.clone(),
        dimension: set.basis.len() - rank,
        rank,
        matrix,
        generated: set.generated,
        over_cap: set.over_cap,
        outside: set.outside,
    })
}

pub fn truncated_quotient(
    h: &HeegaardData,
    zeta: &GaussRat,
    truncation: u64,
    bounds: &SlideBounds,
    cap: usize,
) -> Result<TruncatedQuotient> {
    quotient_at(&relation_set(h, bounds, truncation, cap)?, zeta, truncation)
}

/// Whether every kept row at −i, after the sign (−1)^{n(α)} of φ on each
/// column, equals (−1)^{n(s)} times the row at −1.
pub fn rows_match_under_phi(set: &RelationSet) -> Result<bool> {
    let (mi, m1) = (-GaussRat::i(), GaussRat::from_int(-1));
    let index: BTreeMap<SimpleMulticurve, usize> = set.basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    for (rel, element) in &set.relations {
        let at_i = relation_row(element, &mi, &index)?;
        let at_1 = relation_row(element, &m1, &index)?;
        let start_sign = GaussRat::sign_pow(rel.start.n() as i64);
        let phi_side: SparseRow = at_i.iter().map(|(&j, c)| (j, c * &GaussRat::sign_pow(set.basis[j].n() as i64))).collect();
        let target: SparseRow =
            at_1.iter().map(|(&j, c)| (j, c * &start_sign)).filter(|(_, c)| !c.is_zero()).collect();
        if phi_side != target {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_sizes() {
        assert_eq!(truncation_basis(0), vec![SimpleMulticurve::empty()]);
        assert_eq!(truncation_basis(1).len(), 1);
        // ∅, (1,0)², (0,1)²
        assert_eq!(truncation_basis(2).len(), 3);
        // plus (1,0)⁴, (0,1)⁴, (1,1)², (1,−1)²
        assert_eq!(truncation_basis(4).len(), 7);
    }

    #[test]
    fn zero_truncation() {
        let h = HeegaardData::lens(3, 1).unwrap();
        let q = truncated_quotient(&h, &GaussRat::from_int(-1), 0, &SlideBounds::default(), 12).unwrap();
        assert_eq!((q.dimension, q.matrix.nrows()), (1, 0));
    }

    #[test]
    fn rejects_other_roots() {
        let h = HeegaardData::lens(3, 1).unwrap();
        let half = GaussRat::from_parts(1, 2, 0, 1);
        assert!(truncated_quotient(&h, &half, 0, &SlideBounds::default(), 12).is_err());
    }

    fn bounds() -> SlideBounds {
        SlideBounds { max_multiplicity: 4, max_slope: 1, max_arcs: 2, winding_range: 0 }
    }

    #[test]
    fn sphere_is_one_dimensional() {
        let set = relation_set(&HeegaardData::lens(1, 0).unwrap(), &bounds(), 4, 14).unwrap();
        for zeta in [-GaussRat::i(), GaussRat::from_int(-1)] {
            assert_eq!(quotient_at(&set, &zeta, 4).unwrap().dimension, 1);
        }
        assert!(rows_match_under_phi(&set).unwrap());
    }

    #[test]
    fn l31_dimensions_agree() {
        let set = relation_set(&HeegaardData::lens(3, 1).unwrap(), &bounds(), 4, 14).unwrap();
        let a = quotient_at(&set, &-GaussRat::i(), 4).unwrap();
        let b = quotient_at(&set, &GaussRat::from_int(-1), 4).unwrap();
        assert_eq!(a.dimension, b.dimension);
        assert!(a.dimension < a.basis.len());
    }
}
