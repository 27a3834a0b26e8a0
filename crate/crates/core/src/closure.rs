//! The germ closure `G(U) = Λ(U) ⊔ Ĝ(U)` of a finite poset, its canonical
//! embedding property, and reconstruction of a lattice from its non-germs.

use std::collections::HashMap;

use thiserror::Error;

use crate::germ::{self, GermRecord};
use crate::lattice::{Lattice, LatticeError};
use crate::poset::{Interval, Poset};
use crate::set::ElemSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosureError {
    #[error("the poset is not a germ extension of the embedded subposet")]
    NotAGermExtension,
    #[error("the inclusion map is not an isomorphism onto a full subposet")]
    NotAFullEmbedding,
    #[error("internal check failed: {0}")]
    Internal(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClosureKind {
    /// `s = U_{<=B}`; the witness is the largest such `B`.
    Lambda { witness: ElemSet },
    /// `s = ]., r[_U` for the germ `r`.
    Ghat { germ: usize },
}

/// `G(U)` as a poset of lower sets of `U` ordered by inclusion.
#[derive(Debug, Clone)]
pub struct GermClosure {
    base: Poset,
    sets: Vec<ElemSet>,
    kinds: Vec<ClosureKind>,
    poset: Poset,
    embed: Vec<usize>,
    index: HashMap<ElemSet, usize>,
}

/// `Λ(U)`: intersections of principal lower sets, plus `U = U_{<=∅}`.
pub fn lambda_sets(base: &Poset) -> Vec<ElemSet> {
    let mut found: Vec<ElemSet> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut push = |s: ElemSet, found: &mut Vec<ElemSet>| {
        if seen.insert(s.clone()) {
            found.push(s);
        }
    };
    push(base.all(), &mut found);
    for u in 0..base.len() {
        push(base.down(u).clone(), &mut found);
    }
    let principals: Vec<ElemSet> = (0..base.len()).map(|u| base.down(u).clone()).collect();
    let mut k = 0;
    while k < found.len() {
        let s = found[k].clone();
        for p in &principals {
            push(s.intersection(p), &mut found);
        }
        k += 1;
    }
    found.sort_by(|a, b| a.canonical_cmp(b));
    found
}

/// `Ĝ(U)`: one set `]., r[_U` per germ `r`.
pub fn ghat_sets(base: &Poset) -> Vec<(ElemSet, usize)> {
    germ::germs(base)
        .into_iter()
        .map(|g| (base.interval(Interval::BelowOpen(g.germ)), g.germ))
        .collect()
}

impl GermClosure {
    pub fn new(base: &Poset) -> GermClosure {
        let lambda = lambda_sets(base);
        let ghat = ghat_sets(base);
        let mut entries: Vec<(ElemSet, ClosureKind)> = lambda
            .into_iter()
            .map(|s| {
                let witness = ElemSet::from_indices(base.len(), (0..base.len()).filter(|&b| s.is_subset(base.down(b))));
                (s, ClosureKind::Lambda { witness })
            })
            .collect();
        for (s, r) in ghat {
            assert!(
                entries.iter().all(|(t, _)| *t != s),
                "{} lies in both Λ(U) and Ĝ(U)",
                base.set_label(&s)
            );
            entries.push((s, ClosureKind::Ghat { germ: r }));
        }
        entries.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        let (sets, kinds): (Vec<_>, Vec<_>) = entries.into_iter().unzip();
        let m = sets.len();
        let labels = sets.iter().map(|s| base.set_label(s)).collect();
        let up = sets
            .iter()
            .map(|s| ElemSet::from_indices(m, (0..m).filter(|&j| s.is_subset(&sets[j]))))
            .collect();
        let poset = Poset::from_up_sets_unchecked(labels, up);
        let index: HashMap<ElemSet, usize> = sets.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let embed = (0..base.len()).map(|u| index[base.down(u)]).collect();
        GermClosure {
            base: base.clone(),
            sets,
            kinds,
            poset,
            embed,
            index,
        }
    }

    pub fn base(&self) -> &Poset {
        &self.base
    }

    /// The closure as a poset; element labels render the lower sets.
    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[ElemSet] {
        &self.sets
    }

    pub fn set(&self, i: usize) -> &ElemSet {
        &self.sets[i]
    }

    pub fn kind(&self, i: usize) -> &ClosureKind {
        &self.kinds[i]
    }

    pub fn kinds(&self) -> &[ClosureKind] {
        &self.kinds
    }

    pub fn index_of(&self, set: &ElemSet) -> Option<usize> {
        self.index.get(set).copied()
    }

    /// `u ↦ ū = ]., u]_U`, as closure indices.
    pub fn embedding(&self) -> &[usize] {
        &self.embed
    }

    /// `Ū` as a subset of the closure.
    pub fn embedded_base(&self) -> ElemSet {
        ElemSet::from_indices(self.len(), self.embed.iter().copied())
    }

    pub fn lambda_part(&self) -> ElemSet {
        ElemSet::from_indices(
            self.len(),
            (0..self.len()).filter(|&i| matches!(self.kinds[i], ClosureKind::Lambda { .. })),
        )
    }

    pub fn ghat_part(&self) -> ElemSet {
        self.lambda_part().complement()
    }

    /// Meet in the closure: plain intersection.
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        self.index_of(&self.sets[a].intersection(&self.sets[b]))
    }

    /// Join in the closure: intersection of every member containing both.
    pub fn join(&self, a: usize, b: usize) -> usize {
        let both = self.sets[a].union(&self.sets[b]);
        let mut acc = self.base.all();
        for s in self.sets.iter().filter(|s| both.is_subset(s)) {
            acc.intersect_with(s);
        }
        self.index[&acc]
    }

    pub fn lattice(&self) -> Result<Lattice, LatticeError> {
        Lattice::from_poset(self.poset.clone())
    }

    /// The canonical map `j(s) = U_{<=s}` from a germ extension `S` of `U`
    /// into the closure. `inclusion[u]` is the element of `S` playing `u`.
    pub fn canonical_embed(&self, target: &Poset, inclusion: &[usize]) -> Result<Vec<usize>, ClosureError> {
        if !self.base.is_full_embedding(target, inclusion) {
            return Err(ClosureError::NotAFullEmbedding);
        }
        let image = ElemSet::from_indices(target.len(), inclusion.iter().copied());
        if !germ::is_germ_extension(target, &image) {
            return Err(ClosureError::NotAGermExtension);
        }
        let mut back = vec![usize::MAX; target.len()];
        for (u, &s) in inclusion.iter().enumerate() {
            back[s] = u;
        }
        let j: Vec<usize> = (0..target.len())
            .map(|s| {
                let trace = ElemSet::from_indices(
                    self.base.len(),
                    germ::u_below(target, &image, s).iter().map(|x| back[x]),
                );
                self.index_of(&trace).ok_or_else(|| {
                    ClosureError::Internal(format!(
                        "trace {} of `{}` is not in G(U)",
                        self.base.set_label(&trace),
                        target.label(s)
                    ))
                })
            })
            .collect::<Result<_, _>>()?;
        if !target.is_full_embedding(&self.poset, &j) {
            return Err(ClosureError::Internal("j is not a full embedding".into()));
        }
        Ok(j)
    }
}

pub fn germ_closure(base: &Poset) -> GermClosure {
    GermClosure::new(base)
}

/// `T ≅ G(U)` for `U = T − Grm(T)`.
#[derive(Debug, Clone)]
pub struct Reconstruction {
    /// `T − Grm(T)` as a subset of `T`.
    pub non_germs: ElemSet,
    pub closure: GermClosure,
    /// `t ↦ U_{<=t}` as closure indices.
    pub iso: Vec<usize>,
}

pub fn reconstruct_from_lattice(lattice: &Lattice) -> Result<Reconstruction, ClosureError> {
    let t = lattice.poset();
    let non_germs = germ::germ_set(t).complement();
    let base = t.full_subposet(&non_germs);
    let closure = GermClosure::new(&base);
    let inclusion: Vec<usize> = non_germs.iter().collect();
    let iso = closure.canonical_embed(t, &inclusion)?;
    if iso.len() != closure.len() {
        return Err(ClosureError::Internal(format!(
            "|T| = {} but |G(U)| = {}",
            iso.len(),
            closure.len()
        )));
    }
    Ok(Reconstruction {
        non_germs,
        closure,
        iso,
    })
}

/// Automorphism orders of `U` and `G(U)` and the lift `α ↦ (U_{<=B} ↦ U_{<=α(B)})`.
#[derive(Debug, Clone)]
pub struct AutTransport {
    pub base_order: u64,
    pub closure_order: u64,
    /// One closure automorphism per automorphism of the base.
    pub lifted: Vec<Vec<usize>>,
}

pub fn aut_transport(base: &Poset) -> Result<AutTransport, ClosureError> {
    let closure = GermClosure::new(base);
    let auts = base.isomorphisms(base);
    let mut lifted = Vec::with_capacity(auts.len());
    for alpha in &auts {
        let map: Vec<usize> = closure
            .sets()
            .iter()
            .map(|s| {
                let moved = ElemSet::from_indices(base.len(), s.iter().map(|x| alpha[x]));
                closure
                    .index_of(&moved)
                    .ok_or_else(|| ClosureError::Internal(format!("{} has no image", base.set_label(s))))
            })
            .collect::<Result<_, _>>()?;
        if !closure.poset().is_full_embedding(closure.poset(), &map) {
            return Err(ClosureError::Internal("lifted map is not an automorphism".into()));
        }
        lifted.push(map);
    }
    let closure_auts = closure.poset().isomorphisms(closure.poset());
    let embedded = closure.embedded_base();
    for phi in &closure_auts {
        let mut restricted = Vec::with_capacity(base.len());
        for &e in closure.embedding() {
            if !embedded.contains(phi[e]) {
                return Err(ClosureError::Internal("automorphism moves Ū".into()));
            }
            restricted.push(closure.embedding().iter().position(|&x| x == phi[e]).unwrap());
        }
        if !base.is_full_embedding(base, &restricted) {
            return Err(ClosureError::Internal("restriction is not an automorphism".into()));
        }
    }
    let out = AutTransport {
        base_order: auts.len() as u64,
        closure_order: closure_auts.len() as u64,
        lifted,
    };
    if out.base_order != out.closure_order {
        return Err(ClosureError::Internal(format!(
            "|Aut(U)| = {} but |Aut(G(U))| = {}",
            out.base_order, out.closure_order
        )));
    }
    Ok(out)
}

/// Germs of the closure; these are exactly the elements outside `Ū`.
pub fn closure_germs(closure: &GermClosure) -> Vec<GermRecord> {
    germ::germs(closure.poset())
}
