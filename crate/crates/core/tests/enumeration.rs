use germs::enumerate::{
    canonical_form, count_labelled, enumerate_lattices, labelled_by_extension, labelled_by_filtering, unlabelled_posets,
};
use germs::Lattice;

#[test]
fn labelled_strategies_agree() {
    for n in 0..=5 {
        let mut a: Vec<Vec<u64>> = labelled_by_filtering(n)
            .unwrap()
            .iter()
            .map(|p| (0..n).map(|i| p.up(i).mask()).collect())
            .collect();
        let mut b: Vec<Vec<u64>> = labelled_by_extension(n)
            .unwrap()
            .iter()
            .map(|p| (0..n).map(|i| p.up(i).mask()).collect())
            .collect();
        a.sort();
        b.sort();
        let len = b.len();
        b.dedup();
        assert_eq!(b.len(), len, "extension emitted a duplicate at n = {n}");
        assert_eq!(a, b, "n = {n}");
    }
    assert_eq!(count_labelled(5).unwrap(), 4231);
    assert_eq!(count_labelled(6).unwrap(), 130023);
}

#[test]
fn unlabelled_counts() {
    let counts: Vec<usize> = (0..=7).map(|n| unlabelled_posets(n).unwrap().len()).collect();
    assert_eq!(counts, vec![1, 1, 2, 5, 16, 63, 318, 2045]);
}

#[test]
fn representatives_are_pairwise_non_isomorphic() {
    for n in 0..=5 {
        let reps = unlabelled_posets(n).unwrap();
        for (i, p) in reps.iter().enumerate() {
            assert_eq!(canonical_form(p).0, canonical_form(p).0);
            for q in &reps[i + 1..] {
                assert!(!p.is_isomorphic(q));
            }
        }
    }
}

#[test]
fn lattice_counts() {
    let counts: Vec<usize> = (1..=8).map(|n| enumerate_lattices(n, true).unwrap().len()).collect();
    assert_eq!(counts, vec![1, 1, 1, 2, 5, 15, 53, 222]);
    for n in 1..=5 {
        let labelled = enumerate_lattices(n, false).unwrap();
        for l in &labelled {
            Lattice::from_poset(l.poset().clone()).unwrap();
        }
        let classes = enumerate_lattices(n, true).unwrap();
        for l in &labelled {
            assert_eq!(classes.iter().filter(|c| c.poset().is_isomorphic(l.poset())).count(), 1);
        }
    }
}
