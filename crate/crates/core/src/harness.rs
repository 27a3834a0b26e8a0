//! Executable versions of the structural theorems, run over exhaustive corpora.
//!
//! Each predicate checks one statement on one instance and reports a failure
//! detail when the statement does not hold. Instances are posets `U`, pairs
//! `U ⊆ S`, or lattices `T`. Predicates only use the public operations of the
//! other modules. The duality probe is reported separately and never counts as
//! a failure.

use std::fmt::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};

use rayon::prelude::*;
use serde::Serialize;

use crate::closure::{self, ClosureError, GermClosure};
use crate::document::{DocumentKind, PosetDocument};
use crate::embed;
use crate::enumerate::{self, EnumError, LATTICE_CAP, POSET_CAP};
use crate::germ;
use crate::lattice::{self, Lattice, DEFAULT_LOWER_SET_CAP};
use crate::poset::{Interval, Poset};
use crate::set::ElemSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Posets,
    Pairs,
    Lattices,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PredicateKind {
    /// Failures are errors.
    Theorem,
    /// Counterexamples are reported but do not fail the suite.
    Probe,
}

pub enum Instance {
    Poset(Poset),
    Pair { whole: Poset, subset: ElemSet },
    Lattice(Lattice),
}

impl Instance {
    pub fn domain(&self) -> Domain {
        match self {
            Instance::Poset(_) => Domain::Posets,
            Instance::Pair { .. } => Domain::Pairs,
            Instance::Lattice(_) => Domain::Lattices,
        }
    }

    /// The instance as a poset document; pairs carry the subset on a comment line.
    pub fn to_document(&self) -> String {
        match self {
            Instance::Poset(p) => PosetDocument::from_poset(p, None, Some(DocumentKind::Poset)).to_text(),
            Instance::Pair { whole, subset } => {
                let mut text = PosetDocument::from_poset(whole, None, Some(DocumentKind::Poset)).to_text();
                let _ = writeln!(text, "# subset: {}", whole.set_label(subset));
                text
            }
            Instance::Lattice(l) => PosetDocument::from_poset(l.poset(), None, Some(DocumentKind::Lattice)).to_text(),
        }
    }
}

type Check = fn(&Instance) -> Result<(), String>;

pub struct Predicate {
    pub name: &'static str,
    pub kind: PredicateKind,
    pub domains: &'static [Domain],
    pub summary: &'static str,
    check: Check,
}

impl Predicate {
    /// Runs the check, turning a panic into a failure.
    pub fn evaluate(&self, instance: &Instance) -> Result<(), String> {
        match catch_unwind(AssertUnwindSafe(|| (self.check)(instance))) {
            Ok(r) => r,
            Err(payload) => Err(match payload.downcast_ref::<String>() {
                Some(s) => format!("panicked: {s}"),
                None => match payload.downcast_ref::<&str>() {
                    Some(s) => format!("panicked: {s}"),
                    None => "panicked".to_string(),
                },
            }),
        }
    }
}

fn ensure(cond: bool, detail: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(detail())
    }
}

fn masks_between(lo: &ElemSet, hi: &ElemSet) -> Vec<ElemSet> {
    let free: Vec<usize> = hi.difference(lo).iter().collect();
    (0..1u64 << free.len())
        .map(|bits| {
            let mut s = lo.clone();
            for (k, &x) in free.iter().enumerate() {
                if bits >> k & 1 == 1 {
                    s.insert(x);
                }
            }
            s
        })
        .collect()
}

/// The full subposet on `r` together with `u` expressed in its indices.
fn restrict(whole: &Poset, r: &ElemSet, u: &ElemSet) -> (Poset, ElemSet) {
    let members: Vec<usize> = r.iter().collect();
    let sub = whole.full_subposet(r);
    let inner = ElemSet::from_indices(
        members.len(),
        members
            .iter()
            .enumerate()
            .filter(|(_, &x)| u.contains(x))
            .map(|(k, _)| k),
    );
    (sub, inner)
}

fn poset_of(instance: &Instance) -> &Poset {
    match instance {
        Instance::Poset(p) => p,
        Instance::Lattice(l) => l.poset(),
        Instance::Pair { whole, .. } => whole,
    }
}

fn lattice_of(instance: &Instance) -> &Lattice {
    match instance {
        Instance::Lattice(l) => l,
        _ => unreachable!("lattice predicate on a non-lattice instance"),
    }
}

fn pair_of(instance: &Instance) -> (&Poset, &ElemSet) {
    match instance {
        Instance::Pair { whole, subset } => (whole, subset),
        _ => unreachable!("pair predicate on a non-pair instance"),
    }
}

fn check_cogerm_uniqueness(instance: &Instance) -> Result<(), String> {
    let u = poset_of(instance);
    for x in 0..u.len() {
        let c = germ::cogerm_candidates(u, x);
        ensure(c.len() <= 1, || format!("`{}` has cogerms {c:?}", u.label(x)))?;
    }
    let op = u.opposite();
    let germs = germ::germs(u);
    for g in &germs {
        let dual = germ::germ_record(&op, g.cogerm);
        ensure(dual.as_ref().map(|d| d.cogerm) == Some(g.germ), || {
            format!(
                "cogerm `{}` of `{}` is not a germ of the opposite with cogerm `{}`",
                u.label(g.cogerm),
                u.label(g.germ),
                u.label(g.germ)
            )
        })?;
    }
    ensure(germ::germs(&op).len() == germs.len(), || {
        "germ counts of U and U^op differ".into()
    })
}

fn check_germ_order(instance: &Instance) -> Result<(), String> {
    let u = poset_of(instance);
    let germs = germ::germs(u);
    for a in &germs {
        for b in &germs {
            if a.germ == b.germ {
                continue;
            }
            let (x, v, y, w) = (a.germ, a.cogerm, b.germ, b.cogerm);
            if u.lt(x, y) {
                ensure(u.leq(y, w) && u.lt(v, y) && u.leq(x, v), || {
                    format!(
                        "`{}` < `{}` but not cogerm(`{}`) < `{}`",
                        u.label(x),
                        u.label(y),
                        u.label(x),
                        u.label(y)
                    )
                })?;
            }
            if u.leq(y, v) {
                ensure(u.leq(y, w) && u.lt(w, x) && u.leq(x, v), || {
                    format!(
                        "`{}` <= cogerm(`{}`) but not cogerm(`{}`) < `{}`",
                        u.label(y),
                        u.label(x),
                        u.label(y),
                        u.label(x)
                    )
                })?;
            }
        }
    }
    Ok(())
}

fn check_detection(instance: &Instance) -> Result<(), String> {
    let (s, u) = pair_of(instance);
    if germ::is_germ_extension(s, u) {
        ensure(germ::detects(s, u), || {
            "germ extension not detected by the subset".into()
        })?;
    }
    Ok(())
}

fn check_exclusive_cases(instance: &Instance) -> Result<(), String> {
    let (s, u) = pair_of(instance);
    let Ok(ext) = germ::GermExtension::new(s, u) else {
        return Ok(());
    };
    for x in 0..s.len() {
        let eval = germ::evaluate_cases(s, u, ext.subset_germs(), x);
        let count = usize::from(eval.lambda.is_some()) + eval.germ_cuts.len();
        ensure(count == 1, || {
            format!("`{}` satisfies {count} cases: {eval:?}", s.label(x))
        })?;
        ext.classify(x).map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn check_detection_converse(instance: &Instance) -> Result<(), String> {
    let (s, u) = pair_of(instance);
    if !germ::detects(s, u) {
        return Ok(());
    }
    let sg = germ::subset_germs(s, u);
    let covered = (0..s.len()).all(|x| {
        let eval = germ::evaluate_cases(s, u, &sg, x);
        eval.lambda.is_some() || !eval.germ_cuts.is_empty()
    });
    if covered {
        ensure(germ::is_germ_extension(s, u), || {
            "hypotheses hold but S is not a germ extension".into()
        })?;
    }
    Ok(())
}

fn check_sub_extension(instance: &Instance) -> Result<(), String> {
    let (whole, base) = match instance {
        Instance::Pair { whole, subset } => {
            if !germ::is_germ_extension(whole, subset) {
                return Ok(());
            }
            (whole.clone(), subset.clone())
        }
        Instance::Poset(u) => {
            let c = GermClosure::new(u);
            (c.poset().clone(), c.embedded_base())
        }
        Instance::Lattice(_) => unreachable!(),
    };
    for r in masks_between(&base, &whole.all()) {
        let (sub, inner) = restrict(&whole, &r, &base);
        ensure(germ::is_germ_extension(&sub, &inner), || {
            format!("full subposet {} is not a germ extension", whole.set_label(&r))
        })?;
    }
    Ok(())
}

/// Full embeddings of `target` into the closure that send `inclusion[u]` to `ū`.
fn count_extensions(closure: &GermClosure, target: &Poset, inclusion: &[usize]) -> usize {
    let mut fixed = vec![None; target.len()];
    for (u, &x) in inclusion.iter().enumerate() {
        fixed[x] = Some(closure.embedding()[u]);
    }
    target.full_embeddings(closure.poset(), &fixed).len()
}

fn check_universal_property(instance: &Instance) -> Result<(), String> {
    match instance {
        Instance::Poset(u) => {
            let c = GermClosure::new(u);
            ensure(u.is_full_embedding(c.poset(), c.embedding()), || {
                "u ↦ ]., u] is not a full embedding".into()
            })?;
            for x in 0..u.len() {
                ensure(c.set(c.embedding()[x]) == u.down(x), || {
                    format!("image of `{}` is not ]., {}]", u.label(x), u.label(x))
                })?;
            }
            let ubar = c.embedded_base();
            ensure(germ::is_germ_extension(c.poset(), &ubar), || {
                "G(U) is not a germ extension of Ū".into()
            })?;
            for r in masks_between(&ubar, &c.poset().all()) {
                let (sub, _) = restrict(c.poset(), &r, &ubar);
                let members: Vec<usize> = r.iter().collect();
                let inclusion: Vec<usize> = c
                    .embedding()
                    .iter()
                    .map(|e| members.iter().position(|m| m == e).expect("Ū ⊆ R"))
                    .collect();
                let j = c
                    .canonical_embed(&sub, &inclusion)
                    .map_err(|e| format!("{}: {e}", c.poset().set_label(&r)))?;
                ensure(j == members, || {
                    format!("j on {} is not the inclusion", c.poset().set_label(&r))
                })?;
                let n = count_extensions(&c, &sub, &inclusion);
                ensure(n == 1, || {
                    format!("{n} embeddings of {} extend u ↦ ū", c.poset().set_label(&r))
                })?;
            }
            Ok(())
        }
        Instance::Pair { whole, subset } => {
            let base = whole.full_subposet(subset);
            let c = GermClosure::new(&base);
            let inclusion: Vec<usize> = subset.iter().collect();
            match c.canonical_embed(whole, &inclusion) {
                Ok(_) => {
                    let n = count_extensions(&c, whole, &inclusion);
                    ensure(n == 1, || format!("{n} embeddings extend u ↦ ū"))
                }
                Err(ClosureError::NotAGermExtension) => ensure(!germ::is_germ_extension(whole, subset), || {
                    "canonical_embed rejected a germ extension".into()
                }),
                Err(e) => Err(e.to_string()),
            }
        }
        Instance::Lattice(_) => unreachable!(),
    }
}

fn check_disjointness(instance: &Instance) -> Result<(), String> {
    let u = poset_of(instance);
    let lambda = closure::lambda_sets(u);
    let ghat = closure::ghat_sets(u);
    for (s, r) in &ghat {
        ensure(!lambda.contains(s), || {
            format!("]., {}[ = {} lies in Λ(U)", u.label(*r), u.set_label(s))
        })?;
    }
    for (i, (s, _)) in ghat.iter().enumerate() {
        ensure(ghat[i + 1..].iter().all(|(t, _)| t != s), || {
            format!("two germs share {}", u.set_label(s))
        })?;
    }
    // Λ(U) straight from its definition.
    let mut direct: Vec<ElemSet> = (0..1u64 << u.len())
        .map(|m| germ::u_below_all(u, &u.all(), &ElemSet::from_mask(u.len(), m)))
        .collect();
    direct.sort_by(|a, b| a.canonical_cmp(b));
    direct.dedup();
    ensure(direct == lambda, || "Λ(U) differs from {U_{<=B} | B ⊆ U}".into())?;
    let c = GermClosure::new(u);
    ensure(
        c.lambda_part().is_disjoint(&c.ghat_part()) && c.lambda_part().union(&c.ghat_part()) == c.poset().all(),
        || "closure parts do not split G(U)".into(),
    )
}

fn check_intersection_closure(instance: &Instance) -> Result<(), String> {
    let u = poset_of(instance);
    let c = GermClosure::new(u);
    ensure(
        c.index_of(&u.empty_set()).is_some() && c.index_of(&u.all()).is_some(),
        || "∅ or U missing from G(U)".into(),
    )?;
    let lambda = c.lambda_part();
    let l = c.lattice().map_err(|e| format!("G(U) is not a lattice: {e}"))?;
    for a in 0..c.len() {
        for b in 0..c.len() {
            let inter = c.set(a).intersection(c.set(b));
            let Some(m) = c.index_of(&inter) else {
                return Err(format!(
                    "{} ∩ {} is missing",
                    u.set_label(c.set(a)),
                    u.set_label(c.set(b))
                ));
            };
            if !c.poset().comparable(a, b) {
                ensure(lambda.contains(m), || format!("{} is not in Λ(U)", u.set_label(&inter)))?;
            }
            ensure(l.meet(a, b) == m, || "lattice meet is not intersection".into())?;
            ensure(l.join(a, b) == c.join(a, b), || {
                "lattice join is not the least superset".into()
            })?;
        }
    }
    Ok(())
}

fn check_extension_germs(instance: &Instance) -> Result<(), String> {
    let (s, u) = pair_of(instance);
    if !germ::is_germ_extension(s, u) {
        return Ok(());
    }
    let sg = germ::subset_germs(s, u);
    let sub_germs = ElemSet::from_indices(s.len(), sg.iter().map(|g| g.germ));
    let s_germs = germ::germ_set(s);
    ensure(s_germs.intersection(u).is_subset(&sub_germs), || {
        "U ∩ Grm(S) ⊄ Grm(U)".into()
    })?;
    for g in &sg {
        let (r, hat) = (g.germ, g.cogerm);
        let name = s.label(r);
        ensure(s.interval(Interval::Closed(r, hat)).is_subset(u), || {
            format!("[{name}, ^{name}]_S leaves U")
        })?;
        let below = s.interval(Interval::BelowOpen(r));
        if s.sup(&below) == Some(r) {
            let rec = germ::germ_record(s, r);
            ensure(rec.map(|x| x.cogerm) == Some(hat), || {
                format!("`{name}` is not a germ of S with the same cogerm")
            })?;
        } else {
            let Some(top) = s.greatest_of(&below) else {
                return Err(format!(
                    "]., {name}[_S has neither supremum {name} nor a greatest element"
                ));
            };
            ensure(s.least_of(&s.interval(Interval::AboveOpen(top))) == Some(r), || {
                format!("`{name}` is not least above `{}`", s.label(top))
            })?;
            ensure(!u.contains(top), || format!("`{}` lies in U", s.label(top)))?;
            let rec = germ::germ_record(s, top);
            ensure(rec.map(|x| x.cogerm) == Some(hat), || {
                format!("`{}` is not a germ of S with cogerm of `{name}`", s.label(top))
            })?;
            ensure(!germ::is_germ(s, r), || format!("`{name}` is still a germ of S"))?;
        }
    }
    Ok(())
}

fn check_reconstruction(instance: &Instance) -> Result<(), String> {
    match instance {
        Instance::Poset(u) => {
            let c = GermClosure::new(u);
            let non_germs = germ::germ_set(c.poset()).complement();
            ensure(non_germs == c.embedded_base(), || {
                "Ū differs from G(U) − Grm(G(U))".into()
            })?;
            let t = closure::aut_transport(u).map_err(|e| e.to_string())?;
            ensure(t.base_order == t.closure_order, || "automorphism orders differ".into())
        }
        Instance::Lattice(l) => {
            let rec = closure::reconstruct_from_lattice(l).map_err(|e| e.to_string())?;
            ensure(rec.closure.poset().is_isomorphic(l.poset()), || {
                "T ≇ G(T − Grm(T))".into()
            })
        }
        Instance::Pair { .. } => unreachable!(),
    }
}

fn check_extensible_criterion(instance: &Instance) -> Result<(), String> {
    let l = lattice_of(instance);
    let t = l.poset();
    for m in 0..1u64 << l.len() {
        let subset = ElemSet::from_mask(l.len(), m);
        let r = embed::is_germ_extensible(l, &subset);
        let name = t.set_label(&subset);
        ensure(r.extensible == r.criterion_holds(), || {
            format!(
                "{name}: ν injective = {} but criterion = {}",
                r.extensible,
                r.criterion_holds()
            )
        })?;
        let cp = r.closure.poset();
        for a in 0..cp.len() {
            for b in cp.up(a).iter() {
                ensure(t.leq(r.nu_image[a], r.nu_image[b]), || {
                    format!("{name}: ν is not monotone")
                })?;
            }
        }
        if r.extensible {
            for i in 0..cp.len() {
                ensure(embed::trace_in_base(l, &r, r.nu_image[i]) == *r.closure.set(i), || {
                    format!("{name}: α ∘ ν ≠ id")
                })?;
            }
            for x in r.g_bar.as_ref().expect("extensible").iter() {
                let alpha = embed::trace_in_base(l, &r, x);
                let back = r.closure.index_of(&alpha).map(|i| r.nu_image[i]);
                ensure(back == Some(x), || format!("{name}: ν ∘ α ≠ id at `{}`", t.label(x)))?;
            }
        }
    }
    Ok(())
}

fn check_partition(instance: &Instance) -> Result<(), String> {
    let l = lattice_of(instance);
    let cells = embed::verify_partition(l, embed::DEFAULT_PARTITION_CAP).map_err(|e| e.to_string())?;
    let total: u64 = cells.iter().map(|c| 1u64 << (c.top.len() - c.base.len())).sum();
    ensure(total == 1u64 << l.len(), || format!("cells count {total} subsets"))?;
    let mut all: Vec<u64> = cells.iter().flat_map(|c| c.members.iter().map(ElemSet::mask)).collect();
    all.sort_unstable();
    all.dedup();
    ensure(all.len() as u64 == 1u64 << l.len(), || "cells overlap".into())?;
    let non_germs = germ::germ_set(l.poset()).complement();
    let base = embed::unique_base(l, &l.poset().all()).map_err(|e| e.to_string())?;
    ensure(base == non_germs, || "unique base of T is not T − Grm(T)".into())?;
    let r = embed::is_germ_extensible(l, &non_germs);
    ensure(r.g_bar == Some(l.poset().all()), || "Ḡ(T − Grm(T)) ≠ T".into())
}

fn check_irreducible_g_bar(instance: &Instance) -> Result<(), String> {
    let l = lattice_of(instance);
    let report = embed::check_claim(l);
    ensure(report.holds(), || {
        format!(
            "E extensible = {}, Ḡ(E) = {}, G_T = {}, α/ν inverse = {}",
            report.irreducibles_extensible,
            report.g_bar.as_ref().map_or("-".into(), |s| l.poset().set_label(s)),
            l.poset().set_label(&report.g_t),
            report.alpha_inverts_nu
        )
    })
}

fn check_lower_set_consistency(instance: &Instance) -> Result<(), String> {
    let u = poset_of(instance);
    let c = GermClosure::new(u);
    let lsl = lattice::lower_set_lattice(u, DEFAULT_LOWER_SET_CAP).map_err(|e| e.to_string())?;
    let l = &lsl.lattice;
    let principal: ElemSet = ElemSet::from_indices(
        l.len(),
        (0..u.len()).map(|x| lsl.index_of(u.down(x)).expect("principal")),
    );
    ensure(*l.irreducibles() == principal, || {
        "Irr(I↓(U)) is not the principal lower sets".into()
    })?;
    let as_sets = |s: &ElemSet| -> Vec<ElemSet> {
        let mut v: Vec<ElemSet> = s.iter().map(|i| lsl.sets[i].clone()).collect();
        v.sort_by(|a, b| a.canonical_cmp(b));
        v
    };
    let pick = |part: ElemSet| -> Vec<ElemSet> {
        let mut v: Vec<ElemSet> = part.iter().map(|i| c.set(i).clone()).collect();
        v.sort_by(|a, b| a.canonical_cmp(b));
        v
    };
    ensure(as_sets(&l.lambda_e()) == pick(c.lambda_part()), || {
        "ΛE of I↓(U) differs from Λ(U)".into()
    })?;
    ensure(as_sets(&embed::ghat_t(l)) == pick(c.ghat_part()), || {
        "Ĝ of I↓(U) differs from Ĝ(U)".into()
    })?;
    ensure(as_sets(&embed::g_t(l)) == c.sets(), || {
        "G_{I↓(U)} differs from G(U)".into()
    })
}

fn check_op_duality(instance: &Instance) -> Result<(), String> {
    let u = poset_of(instance);
    let dual_closure = GermClosure::new(&u.opposite());
    let closure_dual = GermClosure::new(u).poset().opposite();
    ensure(dual_closure.poset().is_isomorphic(&closure_dual), || {
        format!(
            "|G(U^op)| = {}, |G(U)^op| = {}, not isomorphic",
            dual_closure.len(),
            closure_dual.len()
        )
    })
}

use Domain::{Lattices, Pairs, Posets};
use PredicateKind::{Probe, Theorem};

pub static PREDICATES: &[Predicate] = &[
    Predicate {
        name: "cogerm-uniqueness",
        kind: Theorem,
        domains: &[Posets],
        summary: "a germ has one cogerm, and cogerms are the germs of U^op",
        check: check_cogerm_uniqueness,
    },
    Predicate {
        name: "germ-order",
        kind: Theorem,
        domains: &[Posets],
        summary: "relative position of two germs and their cogerms",
        check: check_germ_order,
    },
    Predicate {
        name: "detection",
        kind: Theorem,
        domains: &[Pairs],
        summary: "U detects every germ extension of U",
        check: check_detection,
    },
    Predicate {
        name: "exclusive-cases",
        kind: Theorem,
        domains: &[Pairs],
        summary: "each element of a germ extension satisfies exactly one case",
        check: check_exclusive_cases,
    },
    Predicate {
        name: "detection-converse",
        kind: Theorem,
        domains: &[Pairs],
        summary: "detection plus the case split gives a germ extension",
        check: check_detection_converse,
    },
    Predicate {
        name: "intermediate-extension",
        kind: Theorem,
        domains: &[Pairs, Posets],
        summary: "intermediate full subposets stay germ extensions",
        check: check_sub_extension,
    },
    Predicate {
        name: "universal-property",
        kind: Theorem,
        domains: &[Posets, Pairs],
        summary: "germ extensions embed uniquely into G(U) over u ↦ ū",
        check: check_universal_property,
    },
    Predicate {
        name: "disjointness",
        kind: Theorem,
        domains: &[Posets],
        summary: "G(U) is the disjoint union of Λ(U) and Ĝ(U)",
        check: check_disjointness,
    },
    Predicate {
        name: "intersection-closure",
        kind: Theorem,
        domains: &[Posets],
        summary: "G(U) is closed under ∩ and is a lattice",
        check: check_intersection_closure,
    },
    Predicate {
        name: "extension-germs",
        kind: Theorem,
        domains: &[Pairs],
        summary: "germs of U inside a germ extension",
        check: check_extension_germs,
    },
    Predicate {
        name: "reconstruction",
        kind: Theorem,
        domains: &[Posets, Lattices],
        summary: "U is recovered from G(U), and T from T − Grm(T)",
        check: check_reconstruction,
    },
    Predicate {
        name: "extensible-criterion",
        kind: Theorem,
        domains: &[Lattices],
        summary: "ν injective iff every germ exceeds the join below it",
        check: check_extensible_criterion,
    },
    Predicate {
        name: "partition",
        kind: Theorem,
        domains: &[Lattices],
        summary: "the intervals [U, Ḡ(U)] partition the power set of T",
        check: check_partition,
    },
    Predicate {
        name: "irreducible-g-bar",
        kind: Theorem,
        domains: &[Lattices],
        summary: "Irr(T) is germ extensible with Ḡ(E) = G_T",
        check: check_irreducible_g_bar,
    },
    Predicate {
        name: "lower-set-consistency",
        kind: Theorem,
        domains: &[Posets],
        summary: "G(U) equals G_T for T the lower sets of U",
        check: check_lower_set_consistency,
    },
    Predicate {
        name: "op-duality",
        kind: Probe,
        domains: &[Posets],
        summary: "G(U^op) is isomorphic to G(U)^op",
        check: check_op_duality,
    },
];

pub fn predicate(name: &str) -> Option<&'static Predicate> {
    PREDICATES.iter().find(|p| p.name == name)
}

/// Corpus bounds for the three instance domains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SuiteSpec {
    /// Posets `U` with `|U| <= poset_max`.
    pub poset_max: usize,
    /// Pairs `U ⊆ S` with `|S| <= pair_max`.
    pub pair_max: usize,
    /// Lattices with `1 <= |T| <= lattice_max`; 0 disables the domain.
    pub lattice_max: usize,
    pub up_to_iso: bool,
}

impl Default for SuiteSpec {
    fn default() -> Self {
        SuiteSpec {
            poset_max: 5,
            pair_max: 4,
            lattice_max: 6,
            up_to_iso: true,
        }
    }
}

impl From<enumerate::CorpusSpec> for SuiteSpec {
    /// A poset corpus drives the poset and pair domains, a lattice corpus the lattice domain.
    fn from(spec: enumerate::CorpusSpec) -> Self {
        match spec.kind {
            enumerate::CorpusKind::Posets => SuiteSpec {
                poset_max: spec.max_size,
                pair_max: spec.max_size.min(4),
                lattice_max: 0,
                up_to_iso: spec.up_to_iso,
            },
            enumerate::CorpusKind::Lattices => SuiteSpec {
                poset_max: 0,
                pair_max: 0,
                lattice_max: spec.max_size,
                up_to_iso: spec.up_to_iso,
            },
        }
    }
}

#[derive(Default)]
pub struct Corpus {
    pub posets: Vec<Instance>,
    pub pairs: Vec<Instance>,
    pub lattices: Vec<Instance>,
}

impl Corpus {
    pub fn build(spec: &SuiteSpec) -> Result<Corpus, EnumError> {
        if spec.poset_max > POSET_CAP {
            return Err(EnumError::CapExceeded {
                size: spec.poset_max,
                cap: POSET_CAP,
            });
        }
        if spec.pair_max > POSET_CAP {
            return Err(EnumError::CapExceeded {
                size: spec.pair_max,
                cap: POSET_CAP,
            });
        }
        if spec.lattice_max > LATTICE_CAP {
            return Err(EnumError::CapExceeded {
                size: spec.lattice_max,
                cap: LATTICE_CAP,
            });
        }
        let mut corpus = Corpus::default();
        for n in 0..=spec.poset_max {
            corpus.posets.extend(
                enumerate::enumerate_posets(n, spec.up_to_iso)?
                    .into_iter()
                    .map(Instance::Poset),
            );
        }
        for n in 0..=spec.pair_max {
            for whole in enumerate::enumerate_posets(n, spec.up_to_iso)? {
                for m in 0..1u64 << n {
                    corpus.pairs.push(Instance::Pair {
                        subset: ElemSet::from_mask(n, m),
                        whole: whole.clone(),
                    });
                }
            }
        }
        for n in 1..=spec.lattice_max {
            corpus.lattices.extend(
                enumerate::enumerate_lattices(n, spec.up_to_iso)?
                    .into_iter()
                    .map(Instance::Lattice),
            );
        }
        Ok(corpus)
    }

    pub fn domain(&self, d: Domain) -> &[Instance] {
        match d {
            Domain::Posets => &self.posets,
            Domain::Pairs => &self.pairs,
            Domain::Lattices => &self.lattices,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub domain: Domain,
    pub index: usize,
    pub instance: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PredicateReport {
    pub name: String,
    pub kind: PredicateKind,
    pub checked: usize,
    pub failures: Vec<Failure>,
}

impl PredicateReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs every predicate in `selection` over its domains. Reports come back in
/// selection order and failures in instance order.
pub fn run_suite(corpus: &Corpus, selection: &[&'static Predicate]) -> Vec<PredicateReport> {
    selection
        .iter()
        .map(|p| {
            let mut checked = 0;
            let mut failures = Vec::new();
            for &d in p.domains {
                let instances = corpus.domain(d);
                checked += instances.len();
                let results: Vec<Result<(), String>> = instances.par_iter().map(|i| p.evaluate(i)).collect();
                for (index, (r, inst)) in results.into_iter().zip(instances).enumerate() {
                    if let Err(detail) = r {
                        failures.push(Failure {
                            domain: d,
                            index,
                            instance: inst.to_document(),
                            detail,
                        });
                    }
                }
            }
            PredicateReport {
                name: p.name.to_string(),
                kind: p.kind,
                checked,
                failures,
            }
        })
        .collect()
}

/// Resolves predicate names; an empty list selects everything.
pub fn select(names: &[String]) -> Result<Vec<&'static Predicate>, String> {
    if names.is_empty() {
        return Ok(PREDICATES.iter().collect());
    }
    names
        .iter()
        .map(|n| predicate(n).ok_or_else(|| format!("unknown predicate `{n}`")))
        .collect()
}

/// Theorem predicates all pass; probe counterexamples do not count.
pub fn suite_passed(reports: &[PredicateReport]) -> bool {
    reports.iter().all(|r| r.kind == PredicateKind::Probe || r.passed())
}

pub fn render_text(reports: &[PredicateReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let verdict = match (r.kind, r.passed()) {
            (PredicateKind::Theorem, true) => "PASS".to_string(),
            (PredicateKind::Theorem, false) => format!("FAIL ({} failures)", r.failures.len()),
            (PredicateKind::Probe, _) => format!("{} counterexamples", r.failures.len()),
        };
        let kind = match r.kind {
            PredicateKind::Theorem => "theorem",
            PredicateKind::Probe => "probe",
        };
        let _ = writeln!(out, "{:<24} {:<8} checked {:>6}  {verdict}", r.name, kind, r.checked);
        for f in &r.failures {
            let _ = writeln!(out, "  {:?} #{}: {}", f.domain, f.index, f.detail);
            for line in f.instance.lines() {
                let _ = writeln!(out, "    {line}");
            }
        }
    }
    out
}

/// One JSON object per line: a summary per predicate, then one per failure.
pub fn render_json_lines(reports: &[PredicateReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let summary = serde_json::json!({
            "predicate": r.name,
            "kind": r.kind,
            "checked": r.checked,
            "failures": r.failures.len(),
            "passed": r.passed(),
        });
        let _ = writeln!(out, "{summary}");
        for f in &r.failures {
            let line = serde_json::json!({
                "predicate": r.name,
                "domain": f.domain,
                "index": f.index,
                "detail": f.detail,
                "instance": f.instance,
            });
            let _ = writeln!(out, "{line}");
        }
    }
    out
}
