//! Brute-force audit of the mod-4 divisibility of ω(α, α′) for α ∈ L, α′ ∈ L′
//! with α + α′ even, where ω vanishes on L and on L′ and A/(L + L′) has no
//! 2-torsion.

use std::collections::BTreeMap;

use super::smith::smith_form;
use super::{HomClass, Lattice};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Hypothesis {
    FormNonzeroOnFirst { a: usize, b: usize, value: i64 },
    FormNonzeroOnSecond { a: usize, b: usize, value: i64 },
    /// Invariant factors of the quotient; at least one is even.
    TwoTorsion { invariant_factors: Vec<i64> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub alpha: HomClass,
    pub alpha_prime: HomClass,
    pub omega: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AuditOutcome {
    /// Hypotheses hold and every sampled pairing is ≡ 0 mod 4.
    AllDivisible,
    /// Hypotheses fail; the sampled data is still reported.
    HypothesisViolated { violations: Vec<Hypothesis>, witness: Option<Witness> },
    /// Hypotheses hold but a pairing is not divisible by 4.
    Counterexample(Witness),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisibilityReport {
    pub outcome: AuditOutcome,
    pub pairs_checked: usize,
    /// ω(α, α′) mod 4 → count.
    pub histogram: BTreeMap<i64, usize>,
    pub quotient_invariant_factors: Vec<i64>,
}

fn combinations(gens: &[HomClass], rank: usize, bound: i64) -> Vec<HomClass> {
    let mut out = vec![HomClass::zero(rank)];
    for g in gens {
        let mut next = Vec::with_capacity(out.len() * (2 * bound as usize + 1));
        for base in &out {
            for k in -bound..=bound {
                next.push(base.add(&g.scale(k)));
            }
        }
        out = next;
    }
    out
}

pub fn lemma_divisibility_audit(
    lattice: &Lattice,
    sub: &[HomClass],
    sub_prime: &[HomClass],
    bound: i64,
) -> Result<DivisibilityReport> {
    for c in sub.iter().chain(sub_prime) {
        lattice.check(c)?;
    }
    let mut violations = Vec::new();
    for (gens, first) in [(sub, true), (sub_prime, false)] {
        for a in 0..gens.len() {
            for b in a + 1..gens.len() {
                let value = lattice.omega(&gens[a], &gens[b])?;
                if value != 0 {
                    violations.push(if first {
                        Hypothesis::FormNonzeroOnFirst { a, b, value }
                    } else {
                        Hypothesis::FormNonzeroOnSecond { a, b, value }
                    });
                }
            }
        }
    }

    let rank = lattice.rank();
    let all: Vec<&HomClass> = sub.iter().chain(sub_prime).collect();
    let matrix: Vec<Vec<i64>> = (0..rank).map(|r| all.iter().map(|c| c.0[r]).collect()).collect();
    let mut factors = if all.is_empty() { Vec::new() } else { smith_form(&matrix).nonzero() };
    factors.retain(|&d| d != 1);
    if factors.iter().any(|d| d % 2 == 0) {
        violations.push(Hypothesis::TwoTorsion { invariant_factors: factors.clone() });
    }

    let alphas = combinations(sub, rank, bound);
    let alpha_primes = combinations(sub_prime, rank, bound);
    let mut histogram = BTreeMap::new();
    let mut witness = None;
    let mut pairs = 0;
    for a in &alphas {
        for ap in &alpha_primes {
            if !a.add(ap).mod2().is_zero() {
                continue;
            }
            pairs += 1;
            let w = lattice.omega(a, ap)?;
            *histogram.entry(w.rem_euclid(4)).or_insert(0) += 1;
            if witness.is_none() && w.rem_euclid(4) != 0 {
                witness = Some(Witness { alpha: a.clone(), alpha_prime: ap.clone(), omega: w });
            }
        }
    }

    let outcome = match (violations.is_empty(), witness) {
        (false, witness) => AuditOutcome::HypothesisViolated { violations, witness },
        (true, None) => AuditOutcome::AllDivisible,
        (true, Some(w)) => AuditOutcome::Counterexample(w),
    };
    Ok(DivisibilityReport { outcome, pairs_checked: pairs, histogram, quotient_invariant_factors: factors })
}
