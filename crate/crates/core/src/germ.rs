//! Germs, cogerms, detection and germ extensions.
//!
//! A germ of `U` is an element `u` admitting some `v >= u` (its cogerm) with
//!
//! 1. `u = Sup ]., u[` and `v = Inf ]v, .[`,
//! 2. `[u, .[ = [u, v] ⊔ ]v, .[` and `]., v] = ]., u[ ⊔ [u, v]`,
//! 3. `[u, v]` totally ordered.
//!
//! Everything here is decided by evaluating those quantifiers directly.

use thiserror::Error;

use crate::poset::{Interval, Poset};
use crate::set::ElemSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GermRecord {
    pub germ: usize,
    pub cogerm: usize,
    /// `[germ, cogerm]` from bottom to top.
    pub chain: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GermError {
    #[error("the poset is not a germ extension of the given subset")]
    NotAGermExtension,
    #[error("element {0} satisfies neither case of the classification")]
    NoCaseFound(usize),
    #[error("element {0} satisfies both cases of the classification")]
    BothCases(usize),
}

/// Whether `v` satisfies the cogerm conditions for `u`.
pub fn is_cogerm_for(poset: &Poset, u: usize, v: usize) -> bool {
    if !poset.leq(u, v) {
        return false;
    }
    if poset.sup(&poset.interval(Interval::BelowOpen(u))) != Some(u) {
        return false;
    }
    if poset.inf(&poset.interval(Interval::AboveOpen(v))) != Some(v) {
        return false;
    }
    let span = poset.interval(Interval::Closed(u, v));
    let above_v = poset.interval(Interval::AboveOpen(v));
    let below_u = poset.interval(Interval::BelowOpen(u));
    // Both unions are disjoint automatically: nothing is both <= v and > v,
    // or both >= u and < u.
    span.union(&above_v) == *poset.up(u) && below_u.union(&span) == *poset.down(v) && poset.is_chain(&span)
}

/// Every `v >= u` satisfying the cogerm conditions. Has at most one entry.
pub fn cogerm_candidates(poset: &Poset, u: usize) -> Vec<usize> {
    poset.up(u).iter().filter(|&v| is_cogerm_for(poset, u, v)).collect()
}

pub fn germ_record(poset: &Poset, u: usize) -> Option<GermRecord> {
    let candidates = cogerm_candidates(poset, u);
    assert!(
        candidates.len() <= 1,
        "`{}` has several cogerms: {candidates:?}",
        poset.label(u)
    );
    candidates.first().map(|&v| GermRecord {
        germ: u,
        cogerm: v,
        chain: poset.sort_chain(&poset.interval(Interval::Closed(u, v))),
    })
}

pub fn is_germ(poset: &Poset, u: usize) -> bool {
    germ_record(poset, u).is_some()
}

/// `Grm(U)` with cogerms, in index order.
pub fn germs(poset: &Poset) -> Vec<GermRecord> {
    (0..poset.len()).filter_map(|u| germ_record(poset, u)).collect()
}

pub fn germ_set(poset: &Poset) -> ElemSet {
    ElemSet::from_indices(poset.len(), germs(poset).into_iter().map(|g| g.germ))
}

/// `U_{<=s} = ]., s] ∩ U`.
pub fn u_below(poset: &Poset, subset: &ElemSet, s: usize) -> ElemSet {
    poset.down(s).intersection(subset)
}

/// `U_{<=B} = {u ∈ U | u <= b for all b ∈ B}`; equal to `U` when `B` is empty.
pub fn u_below_all(poset: &Poset, subset: &ElemSet, bound: &ElemSet) -> ElemSet {
    poset.lower_bounds(bound).intersection(subset)
}

/// `U` detects `S` when `s <= t ⇔ U_{<=s} ⊆ U_{<=t}` for all `s, t`.
pub fn detects(poset: &Poset, subset: &ElemSet) -> bool {
    let traces: Vec<ElemSet> = (0..poset.len()).map(|s| u_below(poset, subset, s)).collect();
    (0..poset.len()).all(|s| (0..poset.len()).all(|t| poset.leq(s, t) == traces[s].is_subset(&traces[t])))
}

/// Every element outside `subset` is a germ of `poset`.
pub fn is_germ_extension(poset: &Poset, subset: &ElemSet) -> bool {
    subset.complement().iter().all(|s| is_germ(poset, s))
}

/// Germs of the full subposet on `subset`, reported in the indices of `poset`.
pub fn subset_germs(poset: &Poset, subset: &ElemSet) -> Vec<GermRecord> {
    let members: Vec<usize> = subset.iter().collect();
    germs(&poset.full_subposet(subset))
        .into_iter()
        .map(|g| GermRecord {
            germ: members[g.germ],
            cogerm: members[g.cogerm],
            chain: g.chain.into_iter().map(|i| members[i]).collect(),
        })
        .collect()
}

/// How `U_{<=s}` arises from `U`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElementCase {
    /// `U_{<=s} = U_{<=B}`; the witness is the largest such `B`.
    Lambda { witness: ElemSet },
    /// `U_{<=s} = ]., r[_U` for the germ `r` of `U`.
    GermCut { germ: usize },
}

/// Both halves of the classification evaluated independently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseEvaluation {
    pub lambda: Option<ElemSet>,
    pub germ_cuts: Vec<usize>,
}

/// Evaluates both cases for `s` without requiring a germ extension.
pub fn evaluate_cases(poset: &Poset, subset: &ElemSet, subset_germs: &[GermRecord], s: usize) -> CaseEvaluation {
    let trace = u_below(poset, subset, s);
    let witness = ElemSet::from_indices(poset.len(), subset.iter().filter(|&b| trace.is_subset(poset.down(b))));
    let lambda = (u_below_all(poset, subset, &witness) == trace).then_some(witness);
    let germ_cuts = subset_germs
        .iter()
        .map(|g| g.germ)
        .filter(|&r| poset.interval(Interval::BelowOpen(r)).intersection(subset) == trace)
        .collect();
    CaseEvaluation { lambda, germ_cuts }
}

/// A germ extension `U ⊆ S`, prepared for classifying elements of `S`.
pub struct GermExtension<'a> {
    poset: &'a Poset,
    subset: &'a ElemSet,
    subset_germs: Vec<GermRecord>,
}

impl<'a> GermExtension<'a> {
    pub fn new(poset: &'a Poset, subset: &'a ElemSet) -> Result<Self, GermError> {
        if !is_germ_extension(poset, subset) {
            return Err(GermError::NotAGermExtension);
        }
        Ok(GermExtension {
            poset,
            subset,
            subset_germs: subset_germs(poset, subset),
        })
    }

    pub fn subset_germs(&self) -> &[GermRecord] {
        &self.subset_germs
    }

    pub fn classify(&self, s: usize) -> Result<ElementCase, GermError> {
        let eval = evaluate_cases(self.poset, self.subset, &self.subset_germs, s);
        match (eval.lambda, eval.germ_cuts.as_slice()) {
            (Some(witness), []) => Ok(ElementCase::Lambda { witness }),
            (None, [germ]) => Ok(ElementCase::GermCut { germ: *germ }),
            (None, []) => Err(GermError::NoCaseFound(s)),
            _ => Err(GermError::BothCases(s)),
        }
    }
}

/// Classifies `s` for a germ extension `S` of `U` (checked).
pub fn classify(poset: &Poset, subset: &ElemSet, s: usize) -> Result<ElementCase, GermError> {
    GermExtension::new(poset, subset)?.classify(s)
}
