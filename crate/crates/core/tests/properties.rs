mod common;

use std::collections::BTreeSet;

use common::{arb_poset, BruteLattice};
use germs::embed::{g_t, is_germ_extensible, nu, unique_base, verify_partition};
use germs::germ::{germs as germ_records, is_germ_extension};
use germs::lattice::lower_set_lattice;
use germs::repdim::{alternating_sum, dimension_from_parts, g_size};
use germs::{ElemSet, GermClosure, Lattice, Poset, PosetDocument};
use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

fn closure_lattice(p: &Poset) -> Lattice {
    GermClosure::new(p).lattice().expect("germ closures are lattices")
}

fn sorted(s: &ElemSet) -> Vec<usize> {
    s.iter().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn germs_match_definition(p in arb_poset(7)) {
        let got: Vec<(usize, usize)> = germ_records(&p).iter().map(|r| (r.germ, r.cogerm)).collect();
        prop_assert_eq!(got, common::germs(&p));
        for u in 0..p.len() {
            prop_assert!(common::cogerms(&p, u).len() <= 1);
        }
    }

    #[test]
    fn germ_cogerm_swap_under_opposite(p in arb_poset(7)) {
        let op = p.opposite();
        let mut forward: Vec<(usize, usize)> = germ_records(&p).iter().map(|r| (r.cogerm, r.germ)).collect();
        let mut backward: Vec<(usize, usize)> = germ_records(&op).iter().map(|r| (r.germ, r.cogerm)).collect();
        forward.sort();
        backward.sort();
        prop_assert_eq!(forward, backward);
    }

    #[test]
    fn sup_is_inf_of_opposite(p in arb_poset(7), mask in any::<u64>()) {
        let s = ElemSet::from_mask(p.len(), mask & ((1u64 << p.len()) - 1));
        let op = p.opposite();
        prop_assert_eq!(p.sup(&s), op.inf(&s));
        prop_assert_eq!(p.inf(&s), op.sup(&s));
        prop_assert_eq!(p.sup(&s), common::sup(&p, &sorted(&s)));
    }

    #[test]
    fn closure_sets_match_definition(p in arb_poset(6)) {
        let c = GermClosure::new(&p);
        let got: BTreeSet<Vec<usize>> = c.sets().iter().map(sorted).collect();
        prop_assert_eq!(got.len(), c.len());
        prop_assert_eq!(got, common::closure_sets(&p));
        prop_assert!(is_germ_extension(c.poset(), &ElemSet::from_indices(c.len(), c.embedding().iter().copied())));
    }

    #[test]
    fn document_round_trip(p in arb_poset(7)) {
        let doc = PosetDocument::from_poset(&p, Some("random"), None);
        let text = doc.to_text();
        let parsed = PosetDocument::parse(&text).unwrap();
        prop_assert_eq!(parsed.to_text(), text.clone());
        prop_assert_eq!(parsed.normalize().unwrap().to_text(), doc.normalize().unwrap().to_text());
        prop_assert_eq!(PosetDocument::from_json(&doc.to_json()).unwrap(), doc);
        let back = parsed.to_poset().unwrap();
        prop_assert_eq!(back.labels(), p.labels());
        for a in 0..p.len() {
            for b in 0..p.len() {
                prop_assert_eq!(back.leq(a, b), p.leq(a, b));
            }
        }
    }

    #[test]
    fn lower_set_lattice_is_distributive_with_irreducibles_u(p in arb_poset(6)) {
        let lsl = lower_set_lattice(&p, 1 << 12).unwrap();
        let l = &lsl.lattice;
        for a in 0..l.len() {
            for b in 0..l.len() {
                for c in 0..l.len() {
                    prop_assert_eq!(l.meet(a, l.join(b, c)), l.join(l.meet(a, b), l.meet(a, c)));
                }
            }
        }
        let irr = l.irreducible_poset();
        prop_assert!(irr.is_isomorphic(&p));
        prop_assert_eq!(sorted(l.irreducibles()), BruteLattice { p: l.poset() }.irreducibles());
        for u in 0..p.len() {
            let principal = lsl.index_of(p.down(u)).unwrap();
            prop_assert!(l.is_irreducible(principal));
        }
    }

    #[test]
    fn lattice_operators_match_search(p in arb_poset(5)) {
        let l = closure_lattice(&p);
        let brute = BruteLattice { p: l.poset() };
        for a in 0..l.len() {
            for b in 0..l.len() {
                prop_assert_eq!(l.join(a, b), brute.join(&[a, b]));
                prop_assert_eq!(l.meet(a, b), brute.meet(&[a, b]));
            }
            prop_assert_eq!(l.r(a), brute.r(a));
            prop_assert_eq!(l.sigma(a), brute.sigma(a));
        }
        prop_assert_eq!(sorted(&l.lambda_e()), brute.lambda_e());
        prop_assert_eq!(sorted(&g_t(&l)), brute.g_t());
        prop_assert_eq!(g_t(&l).len(), g_size(&l.irreducible_poset()));
    }

    #[test]
    fn nu_injective_iff_join_criterion(p in arb_poset(4), mask in any::<u64>()) {
        let l = closure_lattice(&p);
        let u = ElemSet::from_mask(l.len(), mask & ((1u64 << l.len()) - 1));
        let res = is_germ_extensible(&l, &u);
        prop_assert_eq!(res.extensible, res.criterion_holds());
        prop_assert_eq!(res.extensible, BruteLattice { p: l.poset() }.nu_injective(&sorted(&u)));
        let members: Vec<usize> = u.iter().collect();
        for a in 0..res.closure.len() {
            for b in 0..res.closure.len() {
                if res.closure.poset().leq(a, b) {
                    prop_assert!(l.poset().leq(res.nu_image[a], res.nu_image[b]));
                }
            }
            let image = ElemSet::from_indices(l.len(), res.closure.set(a).iter().map(|k| members[k]));
            prop_assert_eq!(res.nu_image[a], nu(&l, &image));
        }
    }

    #[test]
    fn partition_counts_every_subset(p in arb_poset(4)) {
        let l = closure_lattice(&p);
        let cells = verify_partition(&l, 12).unwrap();
        let total: u64 = cells.iter().map(|c| 1u64 << (c.top.len() - c.base.len())).sum();
        prop_assert_eq!(total, 1u64 << l.len());
        for c in &cells {
            prop_assert_eq!(&unique_base(&l, &c.base).unwrap(), &c.base);
            prop_assert_eq!(&unique_base(&l, &c.top).unwrap(), &c.base);
        }
    }

    #[test]
    fn dimension_scales_with_dim_v(p in arb_poset(5), x in 0u32..8, k in 1u32..50) {
        let g = g_size(&p);
        let aut = p.automorphism_count();
        let d1 = dimension_from_parts(p.len(), g, aut, x, &BigUint::from(1u32)).unwrap();
        let dk = dimension_from_parts(p.len(), g, aut, x, &BigUint::from(k)).unwrap();
        prop_assert_eq!(dk.clone(), &d1 * k);
        let doubled = dimension_from_parts(p.len(), g, aut, x, &BigUint::from(2 * k)).unwrap();
        prop_assert_eq!(doubled, dk * 2u32);
        prop_assert_eq!(BigInt::from(common::dimension_i128(p.len(), g, aut, x, 1)), BigInt::from(d1));
    }

    #[test]
    fn empty_x_gives_zero_unless_e_empty(p in arb_poset(6), k in 1u32..20) {
        let d = dimension_from_parts(p.len(), g_size(&p), p.automorphism_count(), 0, &BigUint::from(k)).unwrap();
        let want = if p.is_empty() { BigUint::from(k) } else { BigUint::from(0u32) };
        prop_assert_eq!(d, want);
    }

    #[test]
    fn alternating_sum_handles_large_e(e in 0usize..12, g in 0usize..12, x in 0u32..6) {
        let want = common::dimension_i128(e, g, 1, x, 1);
        prop_assert_eq!(alternating_sum(e, g, x), BigInt::from(want));
    }
}
