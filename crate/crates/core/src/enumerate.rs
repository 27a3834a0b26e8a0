//! Exhaustive generation of small posets and lattices.
//!
//! Orders are handled as `u64` bit matrices while enumerating: bit `i * n + j`
//! of a key, or bit `j` of `up[i]`, means `i <= j`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::Lattice;
use crate::poset::{default_labels, Poset};
use crate::set::ElemSet;

pub const POSET_CAP: usize = 7;
pub const LATTICE_CAP: usize = 8;
/// Relation filtering walks `3^(n(n-1)/2)` antisymmetric relations.
pub const FILTER_CAP: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("size {size} is above the cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorpusKind {
    Posets,
    Lattices,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub max_size: usize,
    pub kind: CorpusKind,
    pub up_to_iso: bool,
}

impl CorpusSpec {
    pub fn cap(&self) -> usize {
        match self.kind {
            CorpusKind::Posets => POSET_CAP,
            CorpusKind::Lattices => LATTICE_CAP,
        }
    }
}

fn check_cap(size: usize, cap: usize) -> Result<(), EnumError> {
    if size > cap {
        Err(EnumError::CapExceeded { size, cap })
    } else {
        Ok(())
    }
}

fn to_poset(n: usize, up: &[u64]) -> Poset {
    let rows = up.iter().map(|&m| ElemSet::from_mask(n, m)).collect();
    Poset::from_up_sets_unchecked(default_labels(n), rows)
}

fn is_transitive(up: &[u64]) -> bool {
    up.iter().all(|&row| {
        let mut reach = 0u64;
        let mut rest = row;
        while rest != 0 {
            let j = rest.trailing_zeros() as usize;
            reach |= up[j];
            rest &= rest - 1;
        }
        reach == row
    })
}

/// Every labelled partial order on `0..n`, by filtering antisymmetric
/// reflexive relations for transitivity.
pub fn labelled_by_filtering(n: usize) -> Result<Vec<Poset>, EnumError> {
    check_cap(n, FILTER_CAP)?;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let total = 3usize.pow(pairs.len() as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut up: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
        let mut c = code;
        for &(i, j) in &pairs {
            match c % 3 {
                1 => up[i] |= 1 << j,
                2 => up[j] |= 1 << i,
                _ => {}
            }
            c /= 3;
        }
        if is_transitive(&up) {
            out.push(to_poset(n, &up));
        }
    }
    Ok(out)
}

/// Lower sets of the order on `0..k` given by `up`, as masks.
fn lower_set_masks(k: usize, up: &[u64]) -> Vec<u64> {
    let down: Vec<u64> = (0..k)
        .map(|j| (0..k).filter(|&i| up[i] >> j & 1 == 1).fold(0, |m, i| m | 1 << i))
        .collect();
    (0..1u64 << k)
        .filter(|&m| (0..k).all(|j| m >> j & 1 == 0 || down[j] & !m == 0))
        .collect()
}

fn extend(n: usize, up: &[u64], visit: &mut dyn FnMut(&[u64])) {
    let k = up.len();
    if k == n {
        visit(up);
        return;
    }
    let lowers = lower_set_masks(k, up);
    let full = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    for &below in &lowers {
        for &lower_rest in &lowers {
            let above = full & !lower_rest;
            if below & above != 0 {
                continue;
            }
            // Every element below the new one must lie below every element above it.
            let ok = (0..k).filter(|&i| below >> i & 1 == 1).all(|i| up[i] & above == above);
            if !ok {
                continue;
            }
            let mut next = up.to_vec();
            for (i, row) in next.iter_mut().enumerate() {
                if below >> i & 1 == 1 {
                    *row |= 1 << k;
                }
            }
            next.push(above | 1 << k);
            extend(n, &next, visit);
        }
    }
}

/// Calls `visit` on every labelled partial order on `0..n`, built by adding
/// one element at a time with compatible strict down- and up-sets.
pub fn for_each_labelled(n: usize, mut visit: impl FnMut(Poset)) -> Result<(), EnumError> {
    check_cap(n, POSET_CAP)?;
    extend(n, &[], &mut |up| visit(to_poset(n, up)));
    Ok(())
}

pub fn labelled_by_extension(n: usize) -> Result<Vec<Poset>, EnumError> {
    let mut out = Vec::new();
    for_each_labelled(n, |p| out.push(p))?;
    Ok(out)
}

pub fn count_labelled(n: usize) -> Result<u64, EnumError> {
    let mut count = 0;
    for_each_labelled(n, |_| count += 1)?;
    Ok(count)
}

fn order_key(poset: &Poset, perm: &[usize]) -> u64 {
    let n = perm.len();
    let mut key = 0u64;
    for i in 0..n {
        for j in 0..n {
            if poset.leq(perm[i], perm[j]) {
                key |= 1 << (i * n + j);
            }
        }
    }
    key
}

fn element_invariant(poset: &Poset, a: usize) -> (usize, usize, usize, usize) {
    (
        poset.down(a).len(),
        poset.up(a).len(),
        poset.lower_covers(a).len(),
        poset.upper_covers(a).len(),
    )
}

/// Canonical form: the smallest order key over relabellings that list
/// elements by increasing invariant. Returns the key and a witnessing
/// `position -> element` map.
pub fn canonical_form(poset: &Poset) -> (u64, Vec<usize>) {
    let n = poset.len();
    assert!(n <= 8, "canonical keys hold at most 8 elements");
    let mut elems: Vec<usize> = (0..n).collect();
    elems.sort_by_key(|&a| element_invariant(poset, a));
    let mut blocks: Vec<(usize, usize)> = Vec::new();
    let mut start = 0;
    for i in 1..=n {
        if i == n || element_invariant(poset, elems[i]) != element_invariant(poset, elems[start]) {
            blocks.push((start, i));
            start = i;
        }
    }
    let mut best: Option<(u64, Vec<usize>)> = None;
    permute_blocks(poset, &mut elems, &blocks, 0, &mut best);
    best.unwrap_or((0, Vec::new()))
}

fn permute_blocks(
    poset: &Poset,
    perm: &mut Vec<usize>,
    blocks: &[(usize, usize)],
    b: usize,
    best: &mut Option<(u64, Vec<usize>)>,
) {
    let Some(&(lo, hi)) = blocks.get(b) else {
        let key = order_key(poset, perm);
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            *best = Some((key, perm.clone()));
        }
        return;
    };
    heap_permute(perm, lo, hi - lo, &mut |p| {
        permute_blocks(poset, p, blocks, b + 1, best)
    });
}

/// Heap's algorithm over `perm[lo..hi]`.
fn heap_permute(perm: &mut Vec<usize>, lo: usize, k: usize, f: &mut dyn FnMut(&mut Vec<usize>)) {
    if k <= 1 {
        f(perm);
        return;
    }
    for i in 0..k - 1 {
        heap_permute(perm, lo, k - 1, f);
        if k.is_multiple_of(2) {
            perm.swap(lo + i, lo + k - 1);
        } else {
            perm.swap(lo, lo + k - 1);
        }
    }
    heap_permute(perm, lo, k - 1, f);
}

/// The poset relabelled into canonical position order, with default labels.
pub fn canonical_poset(poset: &Poset) -> (u64, Poset) {
    let (key, perm) = canonical_form(poset);
    let n = poset.len();
    let up = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| poset.leq(perm[i], perm[j]))
                .fold(0u64, |m, j| m | 1 << j)
        })
        .collect::<Vec<_>>();
    (key, to_poset(n, &up))
}

/// One representative per isomorphism class of posets of size `n`, in
/// canonical form and sorted by canonical key.
pub fn unlabelled_posets(n: usize) -> Result<Vec<Poset>, EnumError> {
    check_cap(n, POSET_CAP)?;
    let mut level = vec![Poset::antichain(Vec::new()).expect("empty poset")];
    for k in 1..=n {
        let mut found: HashMap<u64, Poset> = HashMap::new();
        for rep in &level {
            let up: Vec<u64> = (0..k - 1).map(|i| rep.up(i).mask()).collect();
            for below in lower_set_masks(k - 1, &up) {
                // New maximal element `k - 1` above `below`.
                let mut next = up.clone();
                for (i, row) in next.iter_mut().enumerate() {
                    if below >> i & 1 == 1 {
                        *row |= 1 << (k - 1);
                    }
                }
                next.push(1 << (k - 1));
                let (key, canon) = canonical_poset(&to_poset(k, &next));
                found.entry(key).or_insert(canon);
            }
        }
        let mut reps: Vec<(u64, Poset)> = found.into_iter().collect();
        reps.sort_by_key(|(key, _)| *key);
        level = reps.into_iter().map(|(_, p)| p).collect();
    }
    Ok(level)
}

pub fn enumerate_posets(n: usize, up_to_iso: bool) -> Result<Vec<Poset>, EnumError> {
    if up_to_iso {
        unlabelled_posets(n)
    } else {
        labelled_by_extension(n)
    }
}

/// Adds a bottom `0` and a top `1` around `interior`.
fn bounded(interior: &Poset) -> Poset {
    let m = interior.len();
    let mut labels = vec!["0".to_string()];
    labels.extend(interior.labels().iter().cloned());
    labels.push("1".to_string());
    Poset::from_fn(labels, |a, b| {
        a == 0 || b == m + 1 || (a != m + 1 && b != 0 && interior.leq(a - 1, b - 1))
    })
    .expect("bounding preserves the order axioms")
}

/// Lattices of size `n`. Up to isomorphism, a lattice with at least two
/// elements is determined by the poset strictly between its bounds.
pub fn enumerate_lattices(n: usize, up_to_iso: bool) -> Result<Vec<Lattice>, EnumError> {
    check_cap(n, LATTICE_CAP)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    if !up_to_iso {
        let mut out = Vec::new();
        for_each_labelled(n, |p| {
            if let Ok(l) = Lattice::from_poset(p) {
                out.push(l);
            }
        })?;
        return Ok(out);
    }
    if n == 1 {
        let point = Poset::chain(vec!["0".to_string()]).expect("one point");
        return Ok(vec![Lattice::from_poset(point).expect("one point is a lattice")]);
    }
    Ok(unlabelled_posets(n - 2)?
        .iter()
        .filter_map(|interior| Lattice::from_poset(bounded(interior)).ok())
        .collect())
}

/// Every corpus member of size `0..=max_size` (lattices start at size 1).
pub fn corpus_posets(spec: &CorpusSpec) -> Result<Vec<Poset>, EnumError> {
    check_cap(spec.max_size, spec.cap())?;
    let mut out = Vec::new();
    for n in 0..=spec.max_size {
        match spec.kind {
            CorpusKind::Posets => out.extend(enumerate_posets(n, spec.up_to_iso)?),
            CorpusKind::Lattices => out.extend(
                enumerate_lattices(n, spec.up_to_iso)?
                    .into_iter()
                    .map(Lattice::into_poset),
            ),
        }
    }
    Ok(out)
}
