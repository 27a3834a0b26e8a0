//! Acceptance criteria, one PASS/FAIL line each. Built with `harness = false`
//! so the lines always reach the test log.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use germs::closure::reconstruct_from_lattice;
use germs::embed::verify_partition;
use germs::enumerate::{
    count_labelled, enumerate_lattices, labelled_by_extension, labelled_by_filtering, unlabelled_posets,
};
use germs::germ::germs as germ_records;
use germs::harness::{run_suite, select, suite_passed, Corpus, PredicateKind, PredicateReport};
use germs::repdim::{dimension_from_parts, g_size};
use germs::{DocumentKind, GermClosure, Lattice, Poset, PosetDocument, SuiteSpec};
use num_bigint::BigUint;

type Outcome = Result<String, String>;

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn read_doc(name: &str) -> Result<PosetDocument, String> {
    let text = std::fs::read_to_string(golden_dir().join(name)).map_err(|e| format!("{name}: {e}"))?;
    PosetDocument::parse(&text).map_err(|e| format!("{name}: {e}"))
}

fn strip_comments(text: &str) -> String {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect()
}

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn closure_labels(c: &GermClosure) -> Vec<String> {
    c.poset().labels().to_vec()
}

/// Closure documents match the checked-in files byte for byte.
fn golden_documents() -> Result<usize, String> {
    let mut checked = 0;
    let mut entries: Vec<PathBuf> = std::fs::read_dir(golden_dir())
        .map_err(|e| e.to_string())?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "closure"))
        .collect();
    entries.sort();
    for expected in entries {
        let stem = expected.file_stem().unwrap().to_string_lossy().into_owned();
        let doc = read_doc(&format!("{stem}.poset"))?;
        let poset = doc.to_poset().map_err(|e| e.to_string())?;
        let closure = GermClosure::new(&poset);
        let name = format!("G({})", doc.name.as_deref().unwrap_or("U"));
        let got = PosetDocument::from_poset(closure.poset(), Some(&name), Some(DocumentKind::Lattice)).to_text();
        let want = strip_comments(&std::fs::read_to_string(&expected).map_err(|e| e.to_string())?);
        check(got == want, || {
            format!("{stem}: closure document differs\n{got}---\n{want}")
        })?;
        checked += 1;
    }
    Ok(checked)
}

fn criterion_golden() -> Outcome {
    let start = Instant::now();
    let documents = golden_documents()?;
    for n in 1..=5 {
        let p = read_doc(&format!("chain{n}.poset"))?
            .to_poset()
            .map_err(|e| e.to_string())?;
        let g = germ_records(&p);
        let bottom = p.minimum().unwrap();
        let top = p.maximum().unwrap();
        check(g.len() == 1 && g[0].germ == bottom && g[0].cogerm == top, || {
            format!("chain {n}: germs {g:?}")
        })?;
        check(GermClosure::new(&p).len() == n + 1, || {
            format!("chain {n}: |G| != {}", n + 1)
        })?;
    }
    for n in 2..=5 {
        let p = read_doc(&format!("antichain{n}.poset"))?
            .to_poset()
            .map_err(|e| e.to_string())?;
        check(germ_records(&p).is_empty(), || format!("antichain {n} has germs"))?;
        check(GermClosure::new(&p).len() == n + 2, || {
            format!("antichain {n}: |G| != {}", n + 2)
        })?;
    }
    for (file, want) in [
        ("vee.poset", ["{}", "{a}", "{b}", "{a,b}", "{a,b,c}"]),
        ("wedge.poset", ["{}", "{c}", "{a,c}", "{b,c}", "{a,b,c}"]),
    ] {
        let p = read_doc(file)?.to_poset().map_err(|e| e.to_string())?;
        let c = GermClosure::new(&p);
        let mut got = closure_labels(&c);
        let mut want: Vec<String> = want.iter().map(|s| s.to_string()).collect();
        got.sort();
        want.sort();
        check(got == want, || format!("{file}: closure {got:?}"))?;
    }
    let n = read_doc("n.poset")?.to_poset().map_err(|e| e.to_string())?;
    check(GermClosure::new(&n).len() == 6, || "N: |G| != 6".into())?;

    let t = read_doc("t12.lattice")?.to_poset().map_err(|e| e.to_string())?;
    let germs: Vec<&str> = germ_records(&t).iter().map(|r| t.label(r.germ)).collect();
    check(germs == ["0", "ab", "1"], || format!("T: germs {germs:?}"))?;
    let lattice = Lattice::from_poset(t).map_err(|e| e.to_string())?;
    let rec = reconstruct_from_lattice(&lattice).map_err(|e| e.to_string())?;
    check(rec.iso.len() == 12, || "T: reconstruction is not a bijection".into())?;

    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("{documents} closure documents, {elapsed:.2?}"))
}

fn default_suite() -> Result<(Vec<PredicateReport>, Duration), String> {
    let start = Instant::now();
    let corpus = Corpus::build(&SuiteSpec::default()).map_err(|e| e.to_string())?;
    let reports = run_suite(&corpus, &select(&[])?);
    Ok((reports, start.elapsed()))
}

fn criterion_suite(reports: &[PredicateReport], elapsed: Duration) -> Outcome {
    let theorems: Vec<&PredicateReport> = reports.iter().filter(|r| r.kind == PredicateKind::Theorem).collect();
    check(theorems.len() == 15, || {
        format!("{} theorem predicates registered", theorems.len())
    })?;
    for r in &theorems {
        check(r.checked > 0, || format!("{} checked nothing", r.name))?;
    }
    let failing: Vec<String> = theorems
        .iter()
        .filter(|r| !r.passed())
        .map(|r| {
            format!(
                "{} ({} failures, first: {})",
                r.name,
                r.failures.len(),
                r.failures[0].detail
            )
        })
        .collect();
    check(suite_passed(reports), || failing.join("; "))?;
    check(elapsed < Duration::from_secs(300), || format!("took {elapsed:?}"))?;
    let checks: usize = theorems.iter().map(|r| r.checked).sum();
    Ok(format!("15 predicates, {checks} instance checks, {elapsed:.2?}"))
}

fn criterion_partition() -> Outcome {
    let mut lattices = 0;
    for n in 1..=SuiteSpec::default().lattice_max {
        for l in enumerate_lattices(n, true).map_err(|e| e.to_string())? {
            let cells = verify_partition(&l, 12).map_err(|e| e.to_string())?;
            let total: u64 = cells.iter().map(|c| 1u64 << (c.top.len() - c.base.len())).sum();
            check(total == 1u64 << n, || format!("{:?}: cells count {total} subsets", l))?;
            lattices += 1;
        }
    }
    Ok(format!("{lattices} lattices"))
}

fn point(n: usize) -> Poset {
    Poset::antichain(germs::poset::default_labels(n)).unwrap()
}

fn criterion_dimension() -> Outcome {
    let one = BigUint::from(1u32);
    let dim = |p: &Poset, x: u32| -> Result<BigUint, String> {
        dimension_from_parts(p.len(), g_size(p), p.automorphism_count(), x, &one).map_err(|e| e.to_string())
    };
    for x in 0..=10 {
        check(dim(&point(0), x)? == one, || format!("E = ∅, |X| = {x}"))?;
        let want = (BigUint::from(1u32) << x) - 1u32;
        check(dim(&point(1), x)? == want, || format!("E = point, |X| = {x}"))?;
    }
    check(dim(&point(2), 2)? == one, || "2-antichain, |X| = 2".into())?;
    let mut sweeps = 0;
    for n in 0..=5 {
        for p in unlabelled_posets(n).map_err(|e| e.to_string())? {
            for x in 0..=6 {
                dim(&p, x)?;
                sweeps += 1;
            }
        }
    }
    Ok(format!("divisibility holds on {sweeps} (E, |X|) pairs"))
}

fn criterion_enumeration() -> Outcome {
    let labelled = [1u64, 1, 3, 19, 219, 4231];
    let unlabelled = [1usize, 1, 2, 5, 16, 63];
    for n in 0..=5 {
        let filtered = labelled_by_filtering(n).map_err(|e| e.to_string())?;
        let extended = labelled_by_extension(n).map_err(|e| e.to_string())?;
        check(filtered.len() as u64 == labelled[n], || {
            format!("filtering gives {} at n = {n}", filtered.len())
        })?;
        check(extended.len() as u64 == labelled[n], || {
            format!("extension gives {} at n = {n}", extended.len())
        })?;
        check(count_labelled(n).map_err(|e| e.to_string())? == labelled[n], || {
            format!("count at n = {n}")
        })?;
        let mut a: Vec<Vec<bool>> = filtered.iter().map(relation_matrix).collect();
        let mut b: Vec<Vec<bool>> = extended.iter().map(relation_matrix).collect();
        a.sort();
        b.sort();
        check(a == b, || format!("strategies disagree at n = {n}"))?;
        let u = unlabelled_posets(n).map_err(|e| e.to_string())?.len();
        check(u == unlabelled[n], || format!("{u} unlabelled posets at n = {n}"))?;
    }
    Ok("labelled 1,1,3,19,219,4231; unlabelled 1,1,2,5,16,63".into())
}

fn relation_matrix(p: &Poset) -> Vec<bool> {
    (0..p.len())
        .flat_map(|a| (0..p.len()).map(move |b| p.leq(a, b)))
        .collect()
}

fn criterion_duality(reports: &[PredicateReport]) -> Outcome {
    let probe = reports
        .iter()
        .find(|r| r.name == "op-duality")
        .ok_or_else(|| "op-duality probe missing".to_string())?;
    check(probe.passed(), || {
        format!("{} counterexamples (reported, not fatal)", probe.failures.len())
    })?;
    Ok(format!("0 counterexamples over {} posets", probe.checked))
}

fn print(number: usize, title: &str, outcome: &Outcome) -> bool {
    match outcome {
        Ok(detail) => {
            println!("PASS {number} {title}: {detail}");
            true
        }
        Err(detail) => {
            println!("FAIL {number} {title}: {detail}");
            false
        }
    }
}

fn main() -> ExitCode {
    let suite = default_suite();
    let mut ok = true;
    ok &= print(1, "golden examples", &criterion_golden());
    let suite_outcome = match &suite {
        Ok((reports, elapsed)) => criterion_suite(reports, *elapsed),
        Err(e) => Err(e.clone()),
    };
    ok &= print(2, "exhaustive theorem suite", &suite_outcome);
    ok &= print(3, "partition counting", &criterion_partition());
    ok &= print(4, "dimension formula", &criterion_dimension());
    ok &= print(5, "enumeration counts", &criterion_enumeration());
    let duality = match &suite {
        Ok((reports, _)) => criterion_duality(reports),
        Err(e) => Err(e.clone()),
    };
    // A duality counterexample is reported for investigation and does not fail the run.
    print(6, "op-duality probe", &duality);
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
