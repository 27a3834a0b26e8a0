//! Finite lattices with tabulated joins and meets, the lattice of lower sets
//! of a poset, and the operators `r` and `σ` on join-irreducible elements.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::poset::Poset;
use crate::set::ElemSet;

/// Default bound on the number of lower sets enumerated for one poset.
pub const DEFAULT_LOWER_SET_CAP: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Join,
    Meet,
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Bound::Join => "join",
            Bound::Meet => "meet",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("the empty poset is not a lattice")]
    Empty,
    #[error("not a lattice: `{a}` and `{b}` have no {missing}")]
    NotALattice { a: String, b: String, missing: Bound },
    #[error("more than {cap} elements")]
    CapExceeded { cap: usize },
}

#[derive(Clone)]
pub struct Lattice {
    poset: Poset,
    join: Vec<usize>,
    meet: Vec<usize>,
    irr: ElemSet,
    bottom: usize,
    top: usize,
}

impl Lattice {
    pub fn from_poset(poset: Poset) -> Result<Lattice, LatticeError> {
        let n = poset.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let mut join = vec![usize::MAX; n * n];
        let mut meet = vec![usize::MAX; n * n];
        for a in 0..n {
            for b in a..n {
                let pair = ElemSet::from_indices(n, [a, b]);
                let missing = |m| LatticeError::NotALattice {
                    a: poset.label(a).to_string(),
                    b: poset.label(b).to_string(),
                    missing: m,
                };
                let j = poset.sup(&pair).ok_or_else(|| missing(Bound::Join))?;
                let m = poset.inf(&pair).ok_or_else(|| missing(Bound::Meet))?;
                join[a * n + b] = j;
                join[b * n + a] = j;
                meet[a * n + b] = m;
                meet[b * n + a] = m;
            }
        }
        Ok(Self::from_tables(poset, join, meet))
    }

    fn from_tables(poset: Poset, join: Vec<usize>, meet: Vec<usize>) -> Lattice {
        let n = poset.len();
        let bottom = poset.minimum().expect("finite lattice has a least element");
        let top = poset.maximum().expect("finite lattice has a greatest element");
        let irr = ElemSet::from_indices(n, (0..n).filter(|&t| t != bottom && poset.lower_covers(t).len() == 1));
        Lattice {
            poset,
            join,
            meet,
            irr,
            bottom,
            top,
        }
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn into_poset(self) -> Poset {
        self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    /// Join of a finite family; the empty join is the bottom element.
    pub fn join_all<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Meet of a finite family; the empty meet is the top element.
    pub fn meet_all<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Join-irreducible elements: those covering exactly one element.
    pub fn irreducibles(&self) -> &ElemSet {
        &self.irr
    }

    pub fn is_irreducible(&self, t: usize) -> bool {
        self.irr.contains(t)
    }

    /// Full subposet on the join-irreducibles, in index order.
    pub fn irreducible_poset(&self) -> Poset {
        self.poset.full_subposet(&self.irr)
    }

    /// Elements equal to the meet of the irreducibles above them.
    pub fn lambda_e(&self) -> ElemSet {
        ElemSet::from_indices(
            self.len(),
            (0..self.len()).filter(|&t| self.meet_all(self.irr.iter().filter(|&e| self.poset.leq(t, e))) == t),
        )
    }

    /// Join of the irreducibles strictly below `t`.
    pub fn r(&self, t: usize) -> usize {
        self.join_all(self.irr.iter().filter(|&e| self.poset.lt(e, t)))
    }

    /// Meet of the irreducibles strictly above `t`.
    pub fn sigma(&self, t: usize) -> usize {
        self.meet_all(self.irr.iter().filter(|&e| self.poset.lt(t, e)))
    }

    /// `t, r(t), r²(t), ...` up to and including the fixpoint.
    pub fn r_trace(&self, t: usize) -> Vec<usize> {
        iterate_to_fixpoint(t, |x| self.r(x))
    }

    pub fn sigma_trace(&self, t: usize) -> Vec<usize> {
        iterate_to_fixpoint(t, |x| self.sigma(x))
    }

    pub fn r_inf(&self, t: usize) -> usize {
        *self.r_trace(t).last().unwrap()
    }

    pub fn sigma_inf(&self, t: usize) -> usize {
        *self.sigma_trace(t).last().unwrap()
    }
}

fn iterate_to_fixpoint<F: Fn(usize) -> usize>(start: usize, step: F) -> Vec<usize> {
    let mut trace = vec![start];
    loop {
        let cur = *trace.last().unwrap();
        let next = step(cur);
        if next == cur {
            return trace;
        }
        trace.push(next);
    }
}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice({:?})", self.poset)
    }
}

/// `I↓(U)`: the lower sets of a poset ordered by inclusion.
#[derive(Clone, Debug)]
pub struct LowerSetLattice {
    pub sets: Vec<ElemSet>,
    pub lattice: Lattice,
}

impl LowerSetLattice {
    pub fn index_of(&self, set: &ElemSet) -> Option<usize> {
        self.sets.iter().position(|s| s == set)
    }
}

/// All lower sets of `poset`, ordered by (cardinality, mask).
///
/// Walks the elements along a linear extension; an element may be added only
/// once everything strictly below it is present, so every branch ends in a
/// distinct lower set.
pub fn lower_sets(poset: &Poset, cap: usize) -> Result<Vec<ElemSet>, LatticeError> {
    let mut order: Vec<usize> = (0..poset.len()).collect();
    order.sort_by_key(|&i| poset.down(i).len());
    let mut out = Vec::new();
    let mut current = poset.empty_set();

    fn go(
        k: usize,
        order: &[usize],
        poset: &Poset,
        current: &mut ElemSet,
        out: &mut Vec<ElemSet>,
        cap: usize,
    ) -> Result<(), LatticeError> {
        if k == order.len() {
            if out.len() == cap {
                return Err(LatticeError::CapExceeded { cap });
            }
            out.push(current.clone());
            return Ok(());
        }
        let x = order[k];
        go(k + 1, order, poset, current, out, cap)?;
        let mut below = poset.down(x).clone();
        below.remove(x);
        if below.is_subset(current) {
            current.insert(x);
            go(k + 1, order, poset, current, out, cap)?;
            current.remove(x);
        }
        Ok(())
    }

    go(0, &order, poset, &mut current, &mut out, cap)?;
    out.sort_by(|a, b| a.canonical_cmp(b));
    Ok(out)
}

/// Builds `I↓(U)` with union as join and intersection as meet.
pub fn lower_set_lattice(poset: &Poset, cap: usize) -> Result<LowerSetLattice, LatticeError> {
    let sets = lower_sets(poset, cap)?;
    let m = sets.len();
    let index: HashMap<&ElemSet, usize> = sets.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let labels = sets.iter().map(|s| poset.set_label(s)).collect();
    let up = sets
        .iter()
        .map(|s| ElemSet::from_indices(m, (0..m).filter(|&j| s.is_subset(&sets[j]))))
        .collect();
    let order = Poset::from_up_sets_unchecked(labels, up);
    let mut join = vec![0; m * m];
    let mut meet = vec![0; m * m];
    for a in 0..m {
        for b in 0..m {
            join[a * m + b] = index[&sets[a].union(&sets[b])];
            meet[a * m + b] = index[&sets[a].intersection(&sets[b])];
        }
    }
    let lattice = Lattice::from_tables(order, join, meet);
    Ok(LowerSetLattice { sets, lattice })
}
