//! Finite posets backed by bit matrices.
//!
//! Elements are indexed densely `0..n`; labels only matter at the I/O boundary.
//! Row `i` of the relation stores `[i, .[` (everything above or equal to `i`),
//! and the transposed rows store `]., i]`.

use std::collections::HashMap;
use std::ops::ControlFlow;

use thiserror::Error;

use crate::set::ElemSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("relations create a cycle between `{a}` and `{b}`")]
    Cycle { a: String, b: String },
    #[error("unknown element `{0}`")]
    UnknownLabel(String),
    #[error("duplicate element `{0}`")]
    DuplicateLabel(String),
    #[error("relation is not a partial order: {0}")]
    NotPartialOrder(String),
}

/// The eight interval shapes over a poset.
///
/// `Closed(u, v)` is `[u,v]`, `OpenLeft(u, v)` is `]u,v]`, `OpenRight(u, v)` is
/// `[u,v[`, `Open(u, v)` is `]u,v[`; the one-sided variants are the principal
/// lower and upper sets with or without their endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Interval {
    Closed(usize, usize),
    OpenLeft(usize, usize),
    OpenRight(usize, usize),
    Open(usize, usize),
    BelowClosed(usize),
    BelowOpen(usize),
    AboveClosed(usize),
    AboveOpen(usize),
}

#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    up: Vec<ElemSet>,
    down: Vec<ElemSet>,
}

/// `a, b, ..., z` and then `e26, e27, ...`.
pub fn default_labels(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("e{i}")
            }
        })
        .collect()
}

fn check_labels(labels: &[String]) -> Result<HashMap<&str, usize>, PosetError> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.as_str(), i).is_some() {
            return Err(PosetError::DuplicateLabel(l.clone()));
        }
    }
    Ok(index)
}

impl Poset {
    /// Reflexive-transitive closure of the generating pairs `(a, b)` meaning `a <= b`.
    pub fn from_relations<L, S>(labels: L, pairs: &[(S, S)]) -> Result<Poset, PosetError>
    where
        L: IntoIterator,
        L::Item: Into<String>,
        S: AsRef<str>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let index = check_labels(&labels)?;
        let lookup = |l: &str| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| PosetError::UnknownLabel(l.to_string()))
        };
        let n = labels.len();
        let mut up: Vec<ElemSet> = (0..n).map(|i| ElemSet::singleton(n, i)).collect();
        for (a, b) in pairs {
            let (a, b) = (lookup(a.as_ref())?, lookup(b.as_ref())?);
            up[a].insert(b);
        }
        warshall(&mut up);
        for i in 0..n {
            for j in up[i].iter() {
                if j != i && up[j].contains(i) {
                    return Err(PosetError::Cycle {
                        a: labels[i].clone(),
                        b: labels[j].clone(),
                    });
                }
            }
        }
        Ok(Self::from_up_sets_unchecked(labels, up))
    }

    /// Builds a poset from a relation predicate, validating the order axioms.
    pub fn from_fn<F>(labels: Vec<String>, leq: F) -> Result<Poset, PosetError>
    where
        F: Fn(usize, usize) -> bool,
    {
        let n = labels.len();
        let up: Vec<ElemSet> = (0..n)
            .map(|i| ElemSet::from_indices(n, (0..n).filter(|&j| leq(i, j))))
            .collect();
        validate(&labels, &up)?;
        Ok(Self::from_up_sets_unchecked(labels, up))
    }

    pub(crate) fn from_up_sets_unchecked(labels: Vec<String>, up: Vec<ElemSet>) -> Poset {
        let n = labels.len();
        let mut down: Vec<ElemSet> = (0..n).map(|_| ElemSet::empty(n)).collect();
        for (i, row) in up.iter().enumerate() {
            for j in row.iter() {
                down[j].insert(i);
            }
        }
        let p = Poset { labels, up, down };
        debug_assert!(p.check_invariants().is_ok());
        p
    }

    /// A chain `labels[0] < labels[1] < ...`.
    pub fn chain(labels: Vec<String>) -> Result<Poset, PosetError> {
        Poset::from_fn(labels, |i, j| i <= j)
    }

    pub fn antichain(labels: Vec<String>) -> Result<Poset, PosetError> {
        Poset::from_fn(labels, |i, j| i == j)
    }

    /// Re-verifies reflexivity, antisymmetry, transitivity and label uniqueness.
    pub fn check_invariants(&self) -> Result<(), PosetError> {
        validate(&self.labels, &self.up)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize, PosetError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| PosetError::UnknownLabel(label.to_string()))
    }

    /// Resolves a list of labels to an element set.
    pub fn subset_of_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<ElemSet, PosetError> {
        let mut s = self.empty_set();
        for l in labels {
            s.insert(self.index_of(l.as_ref())?);
        }
        Ok(s)
    }

    /// `{a,b}` style rendering of a subset, members in index order.
    pub fn set_label(&self, set: &ElemSet) -> String {
        let names: Vec<&str> = set.iter().map(|i| self.labels[i].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn with_labels(&self, labels: Vec<String>) -> Result<Poset, PosetError> {
        assert_eq!(labels.len(), self.len());
        check_labels(&labels)?;
        Ok(Poset {
            labels,
            up: self.up.clone(),
            down: self.down.clone(),
        })
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// `[a, .[`
    pub fn up(&self, a: usize) -> &ElemSet {
        &self.up[a]
    }

    /// `]., a]`
    pub fn down(&self, a: usize) -> &ElemSet {
        &self.down[a]
    }

    pub fn empty_set(&self) -> ElemSet {
        ElemSet::empty(self.len())
    }

    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.len())
    }

    pub fn interval(&self, kind: Interval) -> ElemSet {
        let strict = |s: &ElemSet, x: usize| {
            let mut s = s.clone();
            s.remove(x);
            s
        };
        match kind {
            Interval::Closed(u, v) => self.up[u].intersection(&self.down[v]),
            Interval::OpenLeft(u, v) => strict(&self.up[u], u).intersection(&self.down[v]),
            Interval::OpenRight(u, v) => self.up[u].intersection(&strict(&self.down[v], v)),
            Interval::Open(u, v) => strict(&self.up[u], u).intersection(&strict(&self.down[v], v)),
            Interval::BelowClosed(v) => self.down[v].clone(),
            Interval::BelowOpen(v) => strict(&self.down[v], v),
            Interval::AboveClosed(u) => self.up[u].clone(),
            Interval::AboveOpen(u) => strict(&self.up[u], u),
        }
    }

    /// Elements above every member of `set` (all elements when `set` is empty).
    pub fn upper_bounds(&self, set: &ElemSet) -> ElemSet {
        let mut acc = self.all();
        for v in set.iter() {
            acc.intersect_with(&self.up[v]);
        }
        acc
    }

    pub fn lower_bounds(&self, set: &ElemSet) -> ElemSet {
        let mut acc = self.all();
        for v in set.iter() {
            acc.intersect_with(&self.down[v]);
        }
        acc
    }

    /// The least element of `set`, if it has one.
    pub fn least_of(&self, set: &ElemSet) -> Option<usize> {
        set.iter().find(|&s| set.is_subset(&self.up[s]))
    }

    pub fn greatest_of(&self, set: &ElemSet) -> Option<usize> {
        set.iter().find(|&s| set.is_subset(&self.down[s]))
    }

    /// Least upper bound; `sup(∅)` is the smallest element when it exists.
    pub fn sup(&self, set: &ElemSet) -> Option<usize> {
        self.least_of(&self.upper_bounds(set))
    }

    /// Greatest lower bound; `inf(∅)` is the greatest element when it exists.
    pub fn inf(&self, set: &ElemSet) -> Option<usize> {
        self.greatest_of(&self.lower_bounds(set))
    }

    pub fn minimum(&self) -> Option<usize> {
        self.least_of(&self.all())
    }

    pub fn maximum(&self) -> Option<usize> {
        self.greatest_of(&self.all())
    }

    pub fn minimal_elements(&self, set: &ElemSet) -> Vec<usize> {
        set.iter()
            .filter(|&s| self.down[s].intersection(set).len() == 1)
            .collect()
    }

    pub fn maximal_elements(&self, set: &ElemSet) -> Vec<usize> {
        set.iter()
            .filter(|&s| self.up[s].intersection(set).len() == 1)
            .collect()
    }

    pub fn is_chain(&self, set: &ElemSet) -> bool {
        let items: Vec<usize> = set.iter().collect();
        items
            .iter()
            .enumerate()
            .all(|(k, &a)| items[k + 1..].iter().all(|&b| self.comparable(a, b)))
    }

    pub fn is_lower_set(&self, set: &ElemSet) -> bool {
        set.iter().all(|s| self.down[s].is_subset(set))
    }

    pub fn is_upper_set(&self, set: &ElemSet) -> bool {
        set.iter().all(|s| self.up[s].is_subset(set))
    }

    /// Sorts the members of a chain from bottom to top.
    pub fn sort_chain(&self, set: &ElemSet) -> Vec<usize> {
        let mut items: Vec<usize> = set.iter().collect();
        items.sort_by_key(|&i| self.down[i].len());
        items
    }

    /// Same labels, relation transposed.
    pub fn opposite(&self) -> Poset {
        Poset {
            labels: self.labels.clone(),
            up: self.down.clone(),
            down: self.up.clone(),
        }
    }

    /// The induced order on `set`; element `k` of the result is the `k`-th member of `set`.
    pub fn full_subposet(&self, set: &ElemSet) -> Poset {
        let members: Vec<usize> = set.iter().collect();
        let m = members.len();
        let labels = members.iter().map(|&i| self.labels[i].clone()).collect();
        let up = members
            .iter()
            .map(|&i| ElemSet::from_indices(m, (0..m).filter(|&k| self.leq(i, members[k]))))
            .collect();
        Poset::from_up_sets_unchecked(labels, up)
    }

    /// Cover pairs `(a, b)` with `a < b` and nothing strictly between, in index order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in self.up[a].iter() {
                if a != b && self.interval(Interval::Open(a, b)).is_empty() {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn lower_covers(&self, a: usize) -> Vec<usize> {
        let below = self.interval(Interval::BelowOpen(a));
        self.maximal_elements(&below)
    }

    pub fn upper_covers(&self, a: usize) -> Vec<usize> {
        let above = self.interval(Interval::AboveOpen(a));
        self.minimal_elements(&above)
    }

    fn invariant(&self, a: usize) -> (usize, usize, usize, usize) {
        (
            self.down[a].len(),
            self.up[a].len(),
            self.lower_covers(a).len(),
            self.upper_covers(a).len(),
        )
    }

    /// Sorted `(|]., a]|, |[a, .[|)` pairs.
    pub fn degree_sequence(&self) -> Vec<(usize, usize)> {
        let mut d: Vec<_> = (0..self.len())
            .map(|a| (self.down[a].len(), self.up[a].len()))
            .collect();
        d.sort_unstable();
        d
    }

    /// Every bijection `self -> other` preserving and reflecting `<=`.
    pub fn isomorphisms(&self, other: &Poset) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.for_each_isomorphism(other, |m| {
            out.push(m.to_vec());
            ControlFlow::Continue(())
        });
        out
    }

    pub fn find_isomorphism(&self, other: &Poset) -> Option<Vec<usize>> {
        let mut found = None;
        self.for_each_isomorphism(other, |m| {
            found = Some(m.to_vec());
            ControlFlow::Break(())
        });
        found
    }

    pub fn is_isomorphic(&self, other: &Poset) -> bool {
        self.find_isomorphism(other).is_some()
    }

    pub fn automorphism_count(&self) -> u64 {
        let mut count = 0u64;
        self.for_each_isomorphism(self, |_| {
            count += 1;
            ControlFlow::Continue(())
        });
        count
    }

    fn for_each_isomorphism<F>(&self, other: &Poset, visit: F)
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if self.len() != other.len() || self.degree_sequence() != other.degree_sequence() {
            return;
        }
        let mine: Vec<_> = (0..self.len()).map(|a| self.invariant(a)).collect();
        let theirs: Vec<_> = (0..other.len()).map(|a| other.invariant(a)).collect();
        let fixed = vec![None; self.len()];
        backtrack_embeddings(self, other, &fixed, |a, b| mine[a] == theirs[b], visit);
    }

    /// Every injective map `self -> target` preserving and reflecting `<=`
    /// (an isomorphism onto a full subposet) that agrees with `fixed` where it
    /// is `Some`.
    pub fn full_embeddings(&self, target: &Poset, fixed: &[Option<usize>]) -> Vec<Vec<usize>> {
        assert_eq!(fixed.len(), self.len());
        let mut out = Vec::new();
        backtrack_embeddings(
            self,
            target,
            fixed,
            |_, _| true,
            |m| {
                out.push(m.to_vec());
                ControlFlow::Continue(())
            },
        );
        out
    }

    /// Checks that `map` is injective and preserves and reflects `<=`.
    pub fn is_full_embedding(&self, target: &Poset, map: &[usize]) -> bool {
        if map.len() != self.len() || map.iter().any(|&b| b >= target.len()) {
            return false;
        }
        let image = ElemSet::from_indices(target.len(), map.iter().copied());
        if image.len() != map.len() {
            return false;
        }
        (0..self.len()).all(|a| (0..self.len()).all(|b| self.leq(a, b) == target.leq(map[a], map[b])))
    }
}

fn validate(labels: &[String], up: &[ElemSet]) -> Result<(), PosetError> {
    check_labels(labels)?;
    for (i, row) in up.iter().enumerate() {
        if !row.contains(i) {
            return Err(PosetError::NotPartialOrder(format!("`{}` is not <= itself", labels[i])));
        }
        for j in row.iter() {
            if j != i && up[j].contains(i) {
                return Err(PosetError::Cycle {
                    a: labels[i].clone(),
                    b: labels[j].clone(),
                });
            }
            if !up[j].is_subset(row) {
                return Err(PosetError::NotPartialOrder(format!(
                    "not transitive through `{}`",
                    labels[j]
                )));
            }
        }
    }
    Ok(())
}

fn warshall(up: &mut [ElemSet]) {
    let n = up.len();
    for k in 0..n {
        let row_k = up[k].clone();
        for row in up.iter_mut() {
            if row.contains(k) {
                row.union_with(&row_k);
            }
        }
    }
}

fn backtrack_embeddings<C, F>(from: &Poset, to: &Poset, fixed: &[Option<usize>], compatible: C, mut visit: F)
where
    C: Fn(usize, usize) -> bool,
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let n = from.len();
    if n > to.len() {
        return;
    }
    // Fixed elements first so that their constraints prune the free ones.
    let mut order: Vec<usize> = (0..n).filter(|&a| fixed[a].is_some()).collect();
    order.extend((0..n).filter(|&a| fixed[a].is_none()));
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; to.len()];

    #[allow(clippy::too_many_arguments)]
    fn go<C, F>(
        depth: usize,
        order: &[usize],
        from: &Poset,
        to: &Poset,
        fixed: &[Option<usize>],
        compatible: &C,
        map: &mut [usize],
        used: &mut [bool],
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        C: Fn(usize, usize) -> bool,
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if depth == order.len() {
            return visit(map);
        }
        let a = order[depth];
        let candidates: Vec<usize> = match fixed[a] {
            Some(b) => vec![b],
            None => (0..to.len()).collect(),
        };
        for b in candidates {
            if b >= to.len() || used[b] || !compatible(a, b) {
                continue;
            }
            let consistent = order[..depth].iter().all(|&p| {
                let q = map[p];
                from.leq(a, p) == to.leq(b, q) && from.leq(p, a) == to.leq(q, b)
            });
            if !consistent {
                continue;
            }
            map[a] = b;
            used[b] = true;
            let flow = go(depth + 1, order, from, to, fixed, compatible, map, used, visit);
            used[b] = false;
            map[a] = usize::MAX;
            flow?;
        }
        ControlFlow::Continue(())
    }

    let _ = go(0, &order, from, to, fixed, &compatible, &mut map, &mut used, &mut visit);
}

impl std::fmt::Debug for Poset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rel: Vec<String> = self
            .covers()
            .into_iter()
            .map(|(a, b)| format!("{}<{}", self.labels[a], self.labels[b]))
            .collect();
        write!(f, "Poset[{}; {}]", self.labels.join(" "), rel.join(" "))
    }
}
