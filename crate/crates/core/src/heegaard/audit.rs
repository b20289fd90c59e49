//! Writhes of handle slides modulo 4 and the behaviour of ψ on slide relations.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::data::{manifold_h1, HeegaardData, ManifoldH1};
use super::slide::{generate_relations, SlideBounds, SlideRelation};
use crate::error::Result;
use crate::homology::HomClass;
use crate::json::i64_value;
use crate::ring::GaussRat;
use crate::skein::psi;

/// Witnesses listed in a report are capped at this many.
const WITNESS_LIMIT: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WritheAudit {
    pub relations: usize,
    /// w mod 4 → count.
    pub histogram: BTreeMap<i64, usize>,
    /// Relations where the crossing writhe differs from the class formula.
    pub disagreements: Vec<usize>,
    /// Relations with w ≡ 2 mod 4.
    pub witnesses: Vec<usize>,
}

impl WritheAudit {
    pub fn all_zero_mod4(&self) -> bool {
        self.histogram.keys().all(|&k| k == 0)
    }

    pub fn formula_agrees(&self) -> bool {
        self.disagreements.is_empty()
    }
}

pub fn writhe_audit_of(rels: &[SlideRelation]) -> WritheAudit {
    let mut audit = WritheAudit { relations: rels.len(), histogram: BTreeMap::new(), disagreements: vec![], witnesses: vec![] };
    for (i, rel) in rels.iter().enumerate() {
        let w = rel.writhe();
        if w != rel.writhe_from_classes() {
            audit.disagreements.push(i);
        }
        *audit.histogram.entry(w.rem_euclid(4)).or_insert(0) += 1;
        if w.rem_euclid(4) == 2 {
            audit.witnesses.push(i);
        }
    }
    audit
}

pub fn writhe_mod4_audit(h: &HeegaardData, bounds: &SlideBounds) -> (Vec<SlideRelation>, WritheAudit) {
    let rels = generate_relations(h, bounds);
    let audit = writhe_audit_of(&rels);
    (rels, audit)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiFailure {
    pub relation: usize,
    /// i^{−w} of the result.
    pub twist: GaussRat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiRelationReport {
    pub checked: usize,
    pub failures: Vec<PsiFailure>,
}

impl PsiRelationReport {
    pub fn all_pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks ψ(s) = (−1)^n s ⊗ [0] and ψ(D) = (−1)^n D ⊗ [0] for every relation s − D.
pub fn psi_on_relations(rels: &[SlideRelation]) -> Result<PsiRelationReport> {
    let zero = HomClass::zero(2);
    let mut failures = Vec::new();
    for (i, rel) in rels.iter().enumerate() {
        let expected = GaussRat::sign_pow(rel.start.n() as i64);
        let (ps, pd) = (psi(&rel.start_diagram)?, psi(&rel.result)?);
        let ok = ps.lift == zero && pd.lift == zero && ps.coeff == expected && pd.coeff == expected;
        if !ok {
            failures.push(PsiFailure { relation: i, twist: GaussRat::i_pow(-rel.writhe()) });
        }
    }
    Ok(PsiRelationReport { checked: rels.len(), failures })
}

/// Combined H₁, writhe and ψ audit as a JSON report.
pub fn heegaard_audit(h: &HeegaardData, bounds: &SlideBounds) -> Result<Value> {
    let ManifoldH1 { factors, two_torsion } = manifold_h1(h);
    let (rels, audit) = writhe_mod4_audit(h, bounds);
    let psi_report = psi_on_relations(&rels)?;
    let histogram: serde_json::Map<String, Value> = audit.histogram.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    let witnesses: Vec<Value> = audit
        .witnesses
        .iter()
        .take(WITNESS_LIMIT)
        .map(|&i| {
            let mut v = rels[i].to_json();
            v["writhe_mod4"] = i64_value(rels[i].writhe().rem_euclid(4));
            v
        })
        .collect();
    let psi_failures: Vec<Value> = psi_report
        .failures
        .iter()
        .take(WITNESS_LIMIT)
        .map(|f| json!({"relation": f.relation, "i_pow_minus_writhe": f.twist.to_string()}))
        .collect();
    Ok(json!({
        "h1": factors.iter().map(|&d| i64_value(d)).collect::<Vec<_>>(),
        "two_torsion": two_torsion,
        "relations": audit.relations,
        "writhe_mod4_histogram": histogram,
        "writhe_formula_agrees": audit.formula_agrees(),
        "witness_count": audit.witnesses.len(),
        "witnesses": witnesses,
        "psi": {
            "checked": psi_report.checked,
            "failures": psi_report.failures.len(),
            "all_pass": psi_report.all_pass(),
            "examples": psi_failures,
        },
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SlideBounds {
        SlideBounds { winding_range: 0, ..Default::default() }
    }

    #[test]
    fn no_two_torsion_means_zero_mod4() {
        for h in [HeegaardData::lens(3, 1).unwrap(), HeegaardData::lens(1, 0).unwrap()] {
            let (rels, audit) = writhe_mod4_audit(&h, &small());
            assert!(audit.relations > 0);
            assert!(audit.all_zero_mod4());
            assert!(audit.formula_agrees());
            assert!(psi_on_relations(&rels).unwrap().all_pass());
        }
    }

    #[test]
    fn rp3_has_a_witness() {
        let h = HeegaardData::lens(2, 1).unwrap();
        let (rels, audit) = writhe_mod4_audit(&h, &small());
        assert!(!audit.witnesses.is_empty());
        assert!(audit.formula_agrees());
        let report = psi_on_relations(&rels).unwrap();
        assert_eq!(report.failures.len(), audit.witnesses.len());
        assert!(report.failures.iter().all(|f| f.twist == GaussRat::from_int(-1)));
    }

    #[test]
    fn empty_list_passes() {
        assert!(psi_on_relations(&[]).unwrap().all_pass());
    }

    #[test]
    fn report_layout() {
        let v = heegaard_audit(&HeegaardData::lens(2, 1).unwrap(), &small()).unwrap();
        assert_eq!(v["h1"], json!([2]));
        assert_eq!(v["two_torsion"], json!(true));
        assert_eq!(v["witnesses"][0]["writhe_mod4"], json!(2));
    }
}
