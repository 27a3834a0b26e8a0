//! Germ extensible subsets of a finite lattice `T`.
//!
//! For a subset `U` (with the induced order) the map `ν : G(U) → T` sends a
//! lower set to the join of its members. `U` is germ extensible when `ν` is
//! injective; its image is `Ḡ(U)`. Every subset `S` of `T` sits in exactly one
//! interval `[U, Ḡ(U)]` with `U` germ extensible.

use std::collections::HashMap;

use thiserror::Error;

use crate::closure::GermClosure;
use crate::germ;
use crate::lattice::Lattice;
use crate::set::ElemSet;

/// Default bound on `|T|` for [`verify_partition`].
pub const DEFAULT_PARTITION_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error("lattice has {size} elements, more than the cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("internal check failed: {0}")]
    Internal(String),
}

/// `ν(s)`: the join in `T` of the members of `s` (given as elements of `T`).
pub fn nu(lattice: &Lattice, members: &ElemSet) -> usize {
    lattice.join_all(members.iter())
}

#[derive(Debug, Clone)]
pub struct EmbedResult {
    /// `U` as a subset of `T`.
    pub subset: ElemSet,
    /// `G(U)` over the full subposet on `U`; base element `k` is the `k`-th member of `subset`.
    pub closure: GermClosure,
    /// `ν` on each closure element.
    pub nu_image: Vec<usize>,
    /// Whether `ν` is injective.
    pub extensible: bool,
    /// Germs `r` of `U` with `r = ∨_{u<r} u`, as elements of `T`.
    pub violating_germs: Vec<usize>,
    /// `Ḡ(U)`, present when extensible.
    pub g_bar: Option<ElemSet>,
}

impl EmbedResult {
    /// Whether the join criterion holds for every germ of `U`.
    pub fn criterion_holds(&self) -> bool {
        self.violating_germs.is_empty()
    }

    /// The closure element mapped to `t` by `ν`, when extensible.
    pub fn preimage(&self, t: usize) -> Option<usize> {
        self.nu_image.iter().position(|&x| x == t)
    }
}

fn members(set: &ElemSet) -> Vec<usize> {
    set.iter().collect()
}

pub fn is_germ_extensible(lattice: &Lattice, subset: &ElemSet) -> EmbedResult {
    let t = lattice.poset();
    let inside = members(subset);
    let base = t.full_subposet(subset);
    let closure = GermClosure::new(&base);
    let violating_germs = germ::germs(&base)
        .into_iter()
        .map(|g| inside[g.germ])
        .filter(|&r| {
            let below = subset.iter().filter(|&u| t.lt(u, r));
            lattice.join_all(below) == r
        })
        .collect();
    let nu_image: Vec<usize> = closure
        .sets()
        .iter()
        .map(|s| lattice.join_all(s.iter().map(|k| inside[k])))
        .collect();
    let image = ElemSet::from_indices(t.len(), nu_image.iter().copied());
    let extensible = image.len() == nu_image.len();
    EmbedResult {
        subset: subset.clone(),
        closure,
        nu_image,
        extensible,
        violating_germs,
        g_bar: extensible.then_some(image),
    }
}

/// `t ↦ {u ∈ U | u <= t}`, in the base indices of `result.closure`.
pub fn trace_in_base(lattice: &Lattice, result: &EmbedResult, t: usize) -> ElemSet {
    let inside = members(&result.subset);
    ElemSet::from_indices(
        inside.len(),
        (0..inside.len()).filter(|&k| lattice.poset().leq(inside[k], t)),
    )
}

/// `G♯_T = {t | t = r^∞ σ^∞ (t)}`.
pub fn g_sharp(lattice: &Lattice) -> ElemSet {
    ElemSet::from_indices(
        lattice.len(),
        (0..lattice.len()).filter(|&t| lattice.r_inf(lattice.sigma_inf(t)) == t),
    )
}

/// `Ĝ_T = G♯_T − ΛE`.
pub fn ghat_t(lattice: &Lattice) -> ElemSet {
    g_sharp(lattice).difference(&lattice.lambda_e())
}

/// `G_T = ΛE ⊔ Ĝ_T`.
pub fn g_t(lattice: &Lattice) -> ElemSet {
    lattice.lambda_e().union(&ghat_t(lattice))
}

#[derive(Debug, Clone)]
pub struct ClaimReport {
    pub irreducibles_extensible: bool,
    pub g_bar: Option<ElemSet>,
    pub g_t: ElemSet,
    /// `α(t) = {e ∈ E | e <= t}` inverts `ν` on both sides.
    pub alpha_inverts_nu: bool,
}

impl ClaimReport {
    pub fn holds(&self) -> bool {
        self.irreducibles_extensible && self.g_bar.as_ref() == Some(&self.g_t) && self.alpha_inverts_nu
    }
}

/// Checks that `E = Irr(T)` is germ extensible with `Ḡ(E) = G_T`.
pub fn check_claim(lattice: &Lattice) -> ClaimReport {
    let irr = lattice.irreducibles().clone();
    let result = is_germ_extensible(lattice, &irr);
    let g_t = g_t(lattice);
    let alpha_inverts_nu = result.extensible
        && (0..result.closure.len()).all(|i| {
            let t = result.nu_image[i];
            trace_in_base(lattice, &result, t) == *result.closure.set(i)
        })
        && g_t.iter().all(|t| {
            let alpha = trace_in_base(lattice, &result, t);
            result.closure.index_of(&alpha).is_some_and(|i| result.nu_image[i] == t)
        });
    ClaimReport {
        irreducibles_extensible: result.extensible,
        g_bar: result.g_bar,
        g_t,
        alpha_inverts_nu,
    }
}

/// The germs of `S` (induced order) that equal the join in `T` of the members
/// of `S` strictly below them.
pub fn removable_germs(lattice: &Lattice, subset: &ElemSet) -> Vec<usize> {
    let t = lattice.poset();
    germ::subset_germs(t, subset)
        .into_iter()
        .map(|g| g.germ)
        .filter(|&s| lattice.join_all(subset.iter().filter(|&x| t.lt(x, s))) == s)
        .collect()
}

/// The unique germ extensible `U` with `U ⊆ S ⊆ Ḡ(U)`.
pub fn unique_base(lattice: &Lattice, subset: &ElemSet) -> Result<ElemSet, EmbedError> {
    unique_base_with_top(lattice, subset).map(|(u, _)| u)
}

fn unique_base_with_top(lattice: &Lattice, subset: &ElemSet) -> Result<(ElemSet, ElemSet), EmbedError> {
    let mut base = subset.clone();
    for s in removable_germs(lattice, subset) {
        base.remove(s);
    }
    let result = is_germ_extensible(lattice, &base);
    let top = result
        .g_bar
        .ok_or_else(|| EmbedError::Internal(format!("{} is not germ extensible", lattice.poset().set_label(&base))))?;
    if !subset.is_subset(&top) {
        return Err(EmbedError::Internal(format!(
            "{} is not inside Ḡ({})",
            lattice.poset().set_label(subset),
            lattice.poset().set_label(&base)
        )));
    }
    Ok((base, top))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionCell {
    pub base: ElemSet,
    pub top: ElemSet,
    /// Every `S` with `base ⊆ S ⊆ top`, in ascending mask order.
    pub members: Vec<ElemSet>,
}

/// Groups all `2^|T|` subsets by their unique base and checks that each group
/// is exactly the interval `[U, Ḡ(U)]`.
pub fn verify_partition(lattice: &Lattice, cap: usize) -> Result<Vec<PartitionCell>, EmbedError> {
    let n = lattice.len();
    if n > cap || n >= 64 {
        return Err(EmbedError::CapExceeded { size: n, cap });
    }
    let mut cells: Vec<PartitionCell> = Vec::new();
    let mut by_base: HashMap<ElemSet, usize> = HashMap::new();
    for mask in 0..(1u64 << n) {
        let s = ElemSet::from_mask(n, mask);
        let (base, top) = unique_base_with_top(lattice, &s)?;
        let k = *by_base.entry(base.clone()).or_insert_with(|| {
            cells.push(PartitionCell {
                base,
                top,
                members: Vec::new(),
            });
            cells.len() - 1
        });
        cells[k].members.push(s);
    }
    let mut covered = 0u64;
    for cell in &cells {
        let free = cell.top.len() - cell.base.len();
        if cell.members.len() as u64 != 1u64 << free {
            return Err(EmbedError::Internal(format!(
                "cell of {} has {} members, expected 2^{free}",
                lattice.poset().set_label(&cell.base),
                cell.members.len()
            )));
        }
        if cell
            .members
            .iter()
            .any(|m| !cell.base.is_subset(m) || !m.is_subset(&cell.top))
        {
            return Err(EmbedError::Internal("cell member outside its interval".into()));
        }
        covered += cell.members.len() as u64;
    }
    if covered != 1u64 << n {
        return Err(EmbedError::Internal(format!("cells cover {covered} subsets")));
    }
    Ok(cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{default_labels, Poset};

    fn chain(n: usize) -> Lattice {
        Lattice::from_poset(Poset::chain(default_labels(n)).unwrap()).unwrap()
    }

    fn boolean2() -> Lattice {
        let p = Poset::from_relations(["0", "a", "b", "1"], &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]).unwrap();
        Lattice::from_poset(p).unwrap()
    }

    #[test]
    fn empty_subset_maps_to_bottom() {
        let l = boolean2();
        let r = is_germ_extensible(&l, &ElemSet::empty(4));
        assert!(r.extensible);
        assert_eq!(r.g_bar, Some(ElemSet::singleton(4, 0)));
        assert_eq!(nu(&l, &ElemSet::empty(4)), 0);
    }

    #[test]
    fn chains_inside_a_chain() {
        let l = chain(4);
        let through_bottom = ElemSet::from_indices(4, [0, 2]);
        let r = is_germ_extensible(&l, &through_bottom);
        assert!(!r.extensible);
        assert_eq!(r.violating_germs, vec![0]);
        let above = ElemSet::from_indices(4, [1, 3]);
        let r = is_germ_extensible(&l, &above);
        assert!(r.extensible);
        assert_eq!(r.g_bar, Some(ElemSet::from_indices(4, [0, 1, 3])));
    }

    #[test]
    fn discrete_subset() {
        let l = boolean2();
        let r = is_germ_extensible(&l, &ElemSet::from_indices(4, [1, 2]));
        assert!(r.extensible);
        assert_eq!(r.g_bar, Some(l.poset().all()));
    }

    #[test]
    fn g_t_of_small_lattices() {
        let c = chain(4);
        assert_eq!(g_t(&c), c.poset().all());
        assert_eq!(ghat_t(&c), ElemSet::singleton(4, 0));
        let b = boolean2();
        assert_eq!(b.lambda_e(), b.poset().all());
        assert!(ghat_t(&b).is_empty());
        assert_eq!(g_t(&b), b.poset().all());
        assert!(check_claim(&c).holds());
        assert!(check_claim(&b).holds());
    }

    #[test]
    fn unique_base_examples() {
        let l = chain(3);
        assert_eq!(unique_base(&l, &ElemSet::singleton(3, 0)).unwrap(), ElemSet::empty(3));
        assert_eq!(
            unique_base(&l, &ElemSet::from_indices(3, [0, 1])).unwrap(),
            ElemSet::singleton(3, 1)
        );
        let ext = ElemSet::from_indices(3, [1, 2]);
        assert_eq!(unique_base(&l, &ext).unwrap(), ext);
    }

    #[test]
    fn two_chain_partition() {
        let cells = verify_partition(&chain(2), DEFAULT_PARTITION_CAP).unwrap();
        assert_eq!(cells.len(), 2);
        assert_eq!(cells[0].base, ElemSet::empty(2));
        assert_eq!(cells[0].top, ElemSet::singleton(2, 0));
        assert_eq!(cells[1].base, ElemSet::singleton(2, 1));
        assert_eq!(cells[1].top, ElemSet::full(2));
        assert_eq!(
            verify_partition(&chain(5), 4).unwrap_err(),
            EmbedError::CapExceeded { size: 5, cap: 4 }
        );
    }
}
