//! Brute-force reference implementations used as test oracles. They only read
//! `Poset::leq` and evaluate the definitions literally over index vectors.

#![allow(dead_code)]

use std::collections::BTreeSet;

use germs::poset::{default_labels, Poset};
use proptest::prelude::*;

/// Random posets: a random DAG on `0..n` (edges `i -> j` with `i < j`), closed transitively.
pub fn arb_poset(max: usize) -> impl Strategy<Value = Poset> {
    (0..=max).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let mut pairs = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[k] {
                        pairs.push((default_labels(n)[i].clone(), default_labels(n)[j].clone()));
                    }
                    k += 1;
                }
            }
            Poset::from_relations(default_labels(n), &pairs).unwrap()
        })
    })
}

pub fn elems(p: &Poset) -> Vec<usize> {
    (0..p.len()).collect()
}

pub fn least(p: &Poset, s: &[usize]) -> Option<usize> {
    s.iter().copied().find(|&x| s.iter().all(|&y| p.leq(x, y)))
}

pub fn greatest(p: &Poset, s: &[usize]) -> Option<usize> {
    s.iter().copied().find(|&x| s.iter().all(|&y| p.leq(y, x)))
}

pub fn sup(p: &Poset, s: &[usize]) -> Option<usize> {
    let ub: Vec<usize> = elems(p)
        .into_iter()
        .filter(|&y| s.iter().all(|&x| p.leq(x, y)))
        .collect();
    least(p, &ub)
}

pub fn inf(p: &Poset, s: &[usize]) -> Option<usize> {
    let lb: Vec<usize> = elems(p)
        .into_iter()
        .filter(|&y| s.iter().all(|&x| p.leq(y, x)))
        .collect();
    greatest(p, &lb)
}

fn lt(p: &Poset, a: usize, b: usize) -> bool {
    a != b && p.leq(a, b)
}

/// Cogerms of `u`, straight from the three germ conditions.
pub fn cogerms(p: &Poset, u: usize) -> Vec<usize> {
    let all = elems(p);
    let below_u: Vec<usize> = all.iter().copied().filter(|&x| lt(p, x, u)).collect();
    if sup(p, &below_u) != Some(u) {
        return Vec::new();
    }
    all.iter()
        .copied()
        .filter(|&v| p.leq(u, v))
        .filter(|&v| {
            let above_v: Vec<usize> = all.iter().copied().filter(|&x| lt(p, v, x)).collect();
            let span: Vec<usize> = all.iter().copied().filter(|&x| p.leq(u, x) && p.leq(x, v)).collect();
            inf(p, &above_v) == Some(v)
                && all.iter().all(|&x| p.leq(u, x) == (span.contains(&x) || lt(p, v, x)))
                && all.iter().all(|&x| p.leq(x, v) == (lt(p, x, u) || span.contains(&x)))
                && span.iter().all(|&x| span.iter().all(|&y| p.leq(x, y) || p.leq(y, x)))
        })
        .collect()
}

/// `(germ, cogerm)` pairs in index order.
pub fn germs(p: &Poset) -> Vec<(usize, usize)> {
    elems(p)
        .into_iter()
        .filter_map(|u| cogerms(p, u).first().map(|&v| (u, v)))
        .collect()
}

/// Lower sets of `G(U)` as sorted index vectors.
pub fn closure_sets(p: &Poset) -> BTreeSet<Vec<usize>> {
    let n = p.len();
    let mut out = BTreeSet::new();
    for mask in 0u32..1 << n {
        let b: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        out.insert((0..n).filter(|&u| b.iter().all(|&x| p.leq(u, x))).collect());
    }
    for (r, _) in germs(p) {
        out.insert((0..n).filter(|&x| lt(p, x, r)).collect());
    }
    out
}

/// Lattice operations by search over the order.
pub struct BruteLattice<'a> {
    pub p: &'a Poset,
}

impl BruteLattice<'_> {
    pub fn join(&self, s: &[usize]) -> usize {
        sup(self.p, s).expect("lattice")
    }

    pub fn meet(&self, s: &[usize]) -> usize {
        inf(self.p, s).expect("lattice")
    }

    pub fn irreducibles(&self) -> Vec<usize> {
        elems(self.p)
            .into_iter()
            .filter(|&t| {
                elems(self.p)
                    .into_iter()
                    .filter(|&x| {
                        lt(self.p, x, t) && elems(self.p).iter().all(|&y| !(lt(self.p, x, y) && lt(self.p, y, t)))
                    })
                    .count()
                    == 1
            })
            .collect()
    }

    pub fn lambda_e(&self) -> Vec<usize> {
        let e = self.irreducibles();
        elems(self.p)
            .into_iter()
            .filter(|&t| {
                let above: Vec<usize> = e.iter().copied().filter(|&x| self.p.leq(t, x)).collect();
                self.meet(&above) == t
            })
            .collect()
    }

    pub fn r(&self, t: usize) -> usize {
        let e: Vec<usize> = self.irreducibles().into_iter().filter(|&x| lt(self.p, x, t)).collect();
        self.join(&e)
    }

    pub fn sigma(&self, t: usize) -> usize {
        let e: Vec<usize> = self.irreducibles().into_iter().filter(|&x| lt(self.p, t, x)).collect();
        self.meet(&e)
    }

    fn fix(&self, mut t: usize, f: impl Fn(usize) -> usize) -> usize {
        loop {
            let next = f(t);
            if next == t {
                return t;
            }
            t = next;
        }
    }

    pub fn g_t(&self) -> Vec<usize> {
        let lambda = self.lambda_e();
        elems(self.p)
            .into_iter()
            .filter(|&t| lambda.contains(&t) || self.fix(self.fix(t, |x| self.sigma(x)), |x| self.r(x)) == t)
            .collect()
    }

    /// Whether the subset `u` (indices of T) maps injectively into T by joins.
    pub fn nu_injective(&self, u: &[usize]) -> bool {
        let sub = self
            .p
            .full_subposet(&germs::ElemSet::from_indices(self.p.len(), u.iter().copied()));
        let images: Vec<usize> = closure_sets(&sub)
            .iter()
            .map(|s| self.join(&s.iter().map(|&k| u[k]).collect::<Vec<_>>()))
            .collect();
        let distinct: BTreeSet<usize> = images.iter().copied().collect();
        distinct.len() == images.len()
    }
}

/// The dimension formula in `i128`, for small arguments.
pub fn dimension_i128(e: usize, g: usize, aut: u64, x: u32, dim_v: u64) -> i128 {
    let mut sum: i128 = 0;
    let mut binom: i128 = 1;
    for i in 0..=e {
        let base = g as i128 - i as i128;
        let term = binom * base.pow(x);
        sum += if i % 2 == 0 { term } else { -term };
        binom = binom * (e - i) as i128 / (i + 1) as i128;
    }
    assert_eq!(sum % aut as i128, 0);
    sum / aut as i128 * dim_v as i128
}
