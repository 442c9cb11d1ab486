//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any
//! failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use e2pm::capabilities::{
    find_compose_inert_triples, find_icp_triples, find_retraction_pairs, find_weak_icp_no_distinctness,
    find_weak_icp_no_nontriviality, full_report, is_associative, is_commutative, right_identity,
    strict_classifiers, verify_placement, ClassifierReading, IcpTriple,
};
use e2pm::cnf::{cell_var, decode, encode, parse_model};
use e2pm::corpus::{by_name, check_roles, corpus_all, load_table, save_structured, save_table, CORPUS_NAMES};
use e2pm::iso::{compose, core_permutations, transport, verify_capability_invariance, verify_functoriality};
use e2pm::search::{
    derive_nontriviality_separation, minimal_size, search, search_k_combinator, Predicate, SearchSpec,
    SearchStatus,
};
use e2pm::table::invert_permutation;
use e2pm::{decompose, validate_e2pm, CayleyTable, E2pm, Element, PointedMagma};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use Predicate::*;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

const SAMPLE_SEED: u64 = 0x5eed_1507;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn within(start: Instant, limit: Duration) -> Outcome {
    let took = start.elapsed();
    ensure!(took < limit, "took {took:?}, limit {limit:?}");
    Ok(())
}

fn n4_e2pms() -> Vec<CayleyTable> {
    common::all_tables(4).filter(common::is_e2pm).collect()
}

fn corpus_golden() -> Outcome {
    let start = Instant::now();
    let all = corpus_all();
    ensure!(all.len() == 12, "expected 12 tables, found {}", all.len());
    for (w, name) in all.iter().zip(CORPUS_NAMES) {
        ensure!(w.name == name, "order: {} at the slot of {name}", w.name);
        let t = w.magma.table();
        ensure!(validate_e2pm(t.clone(), 0, 1).is_ok(), "{} is not an E2PM", w.name);
        let rep = full_report(&w.magma);
        let flags = (rep.r(), rep.d(), rep.h());
        ensure!(flags == (w.expected.r, w.expected.d, w.expected.h), "{} flags {flags:?}", w.name);
        ensure!(
            (rep.r(), rep.d(), rep.h()) == (common::r_mutual(t), common::d_strict(t), common::h(t)),
            "{} disagrees with the oracle",
            w.name
        );
        let problems = check_roles(&w.magma, &w.roles);
        ensure!(problems.is_empty(), "{}: {problems:?}", w.name);
    }
    let has = |name: &str, t: IcpTriple| find_icp_triples(&by_name(name).unwrap().magma).contains(&t);
    ensure!(has("witness5", IcpTriple { a: 3, b: 2, c: 4 }), "witness5 triple missing");
    ensure!(has("hNotD10", IcpTriple { a: 8, b: 6, c: 7 }), "hNotD10 triple missing");
    ensure!(has("witness10", IcpTriple { a: 8, b: 6, c: 7 }), "witness10 triple missing");
    let w10 = by_name("witness10").unwrap().roles;
    ensure!((w10.s, w10.r, w10.tau.clone()) == (Some(2), Some(3), vec![4]), "witness10 roles");
    let k5 = by_name("kripke5").unwrap().magma;
    ensure!(
        find_retraction_pairs(&k5, true, true).iter().any(|p| (p.s, p.r) == (2, 3)),
        "kripke5 pair (2,3) missing"
    );
    let d4 = by_name("dNotS4").unwrap().magma;
    ensure!(find_retraction_pairs(&d4, false, false).is_empty(), "dNotS4 has a retraction pair");
    within(start, Duration::from_secs(1))
}

fn no_icp_at_four() -> Outcome {
    let start = Instant::now();
    let tables: Vec<CayleyTable> = common::all_tables(4).collect();
    ensure!(tables.len() == 65_536, "enumerated {} tables", tables.len());
    ensure!(!tables.iter().any(|t| common::is_e2pm(t) && common::h(t)), "oracle found an n=4 ICP table");
    let families = common::n4_families();
    for (req, oracle) in families {
        let expected: Vec<CayleyTable> = tables.iter().filter(|t| oracle(t)).cloned().collect();
        let out = search(&SearchSpec::from_lists(4, req, &[])).map_err(|e| e.to_string())?;
        ensure!(out.exhaustive, "{req:?} search not exhaustive");
        ensure!(out.witnesses == expected, "{req:?}: engine {} vs oracle {}", out.witnesses.len(), expected.len());
    }
    within(start, Duration::from_secs(10))
}

fn tight_bounds() -> Outcome {
    let cases: [(&[Predicate], &[Predicate], usize, usize); 4] = [
        (&[E2PM, D], &[RMutual], 3, 4),
        (&[E2PM, H], &[RMutual], 3, 5),
        (&[E2PM, H], &[D], 3, 5),
        (&[E2PM, RMutual, D, H], &[], 4, 5),
    ];
    for (req, forb, lo, expected) in cases {
        let template = SearchSpec::from_lists(lo, req, forb);
        let rep = minimal_size(&template, lo, expected + 1, 1).map_err(|e| e.to_string())?;
        ensure!(rep.first_found == Some(expected), "{req:?} -{forb:?}: first found {:?}", rep.first_found);
        for size in &rep.sizes {
            let out = size.outcome.as_ref().map_err(|e| format!("n={}: {e}", size.n))?;
            if size.n < expected {
                ensure!(out.status == SearchStatus::Unsat && out.exhaustive, "n={} not certified Unsat", size.n);
            } else {
                let w = out.first().ok_or("Found without a witness")?;
                let m = PointedMagma::new(w.clone(), 0, 1);
                let rep = full_report(&m);
                ensure!(rep.recheck(&m).is_ok(), "witness report does not recheck");
                let mut spec = template.clone();
                spec.n = size.n;
                ensure!(spec.satisfied_by(w), "witness fails {req:?} -{forb:?}");
            }
        }
    }
    Ok(())
}

fn onesided_anchored(m: &PointedMagma) -> bool {
    !find_retraction_pairs(m, false, true).is_empty()
}

fn no_associativity() -> Outcome {
    let mut checked = 0;
    for t in n4_e2pms() {
        let m = PointedMagma::new(t, 0, 1);
        if !strict_classifiers(&m).is_empty() && onesided_anchored(&m) {
            ensure!(!is_associative(m.table()).holds, "associative n=4 table {:?}", m.table());
            checked += 1;
        }
    }
    ensure!(checked > 0, "no n=4 table carries both structures");
    for w in corpus_all().into_iter().filter(|w| w.expected.r && w.expected.d) {
        let t = w.magma.table();
        ensure!(!is_associative(t).holds, "{} is associative", w.name);
        ensure!(right_identity(t).is_none(), "{} has a right identity", w.name);
        ensure!(!is_commutative(t).holds, "{} is commutative", w.name);
    }
    Ok(())
}

fn placement() -> Outcome {
    let mut count = 0;
    for w in corpus_all() {
        let rep = full_report(&w.magma);
        if rep.r() && rep.d() {
            let ok = verify_placement(&w.magma, ClassifierReading::Strict).map_err(|e| format!("{}: {e}", w.name))?;
            ensure!(ok, "{} places a retraction member among the classifiers", w.name);
            count += 1;
        }
    }
    ensure!(count > 0, "no corpus table has R and D");
    Ok(())
}

fn icp_agrees(m: &PointedMagma) -> bool {
    let ci: Vec<IcpTriple> = find_compose_inert_triples(m).into_iter().map(Into::into).collect();
    find_icp_triples(m) == ci
}

fn icp_equivalence() -> Outcome {
    for w in corpus_all() {
        ensure!(icp_agrees(&w.magma), "{} disagrees", w.name);
    }
    for t in n4_e2pms() {
        ensure!(icp_agrees(&PointedMagma::new(t.clone(), 0, 1)), "n=4 disagreement on {t:?}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let mut with_icp = 0;
    for k in 0..1000 {
        let n = rng.gen_range(5..=8);
        let t = common::random_e2pm(n, k % 2 == 0, &mut rng);
        ensure!(common::is_e2pm(&t), "generator produced a non-E2PM");
        let m = PointedMagma::new(t, 0, 1);
        ensure!(icp_agrees(&m), "random disagreement on {:?}", m.table());
        with_icp += usize::from(!find_icp_triples(&m).is_empty());
    }
    ensure!(with_icp > 0, "no random sample carried an ICP");
    let k4 = by_name("kripke4").unwrap().magma;
    ensure!(!find_weak_icp_no_distinctness(&k4).is_empty(), "kripke4 weak-no-distinctness is empty");
    ensure!(find_icp_triples(&k4).is_empty(), "kripke4 has a full ICP");
    let sep = derive_nontriviality_separation().map_err(|e| e.to_string())?;
    ensure!(sep.order() == 6, "separation has size {}", sep.order());
    let m = validate_e2pm(sep, 0, 1).map_err(|e| e.to_string())?;
    ensure!(full_report(&m).r(), "separation lacks R");
    ensure!(!find_weak_icp_no_nontriviality(&m).is_empty(), "separation weak set empty");
    ensure!(find_icp_triples(&m).is_empty(), "separation has a full ICP");
    Ok(())
}

fn k_combinator() -> Outcome {
    let start = Instant::now();
    for n in 2..=4 {
        let out = search_k_combinator(n, None).map_err(|e| format!("n={n}: {e}"))?;
        ensure!(out.status == SearchStatus::Unsat && out.exhaustive, "n={n}: {:?}", out.status);
    }
    let one = search_k_combinator(1, None).map_err(|e| e.to_string())?;
    ensure!(one.status == SearchStatus::Found, "n=1: {:?}", one.status);
    within(start, Duration::from_secs(60))
}

fn perms_for(m: &E2pm) -> Vec<Vec<Element>> {
    if m.order() <= 6 {
        core_permutations(m.order(), m.z1(), m.z2())
    } else {
        common::sample_perms(m.order(), m.z1(), m.z2(), 1000, SAMPLE_SEED)
    }
}

fn invariance() -> Outcome {
    for w in corpus_all() {
        let n = w.magma.order();
        let perms = perms_for(&w.magma);
        let expected = if n <= 6 { (1..=n - 2).product() } else { 1000 };
        ensure!(perms.len() == expected, "{}: {} permutations", w.name, perms.len());
        let decomposable = decompose(&w.magma).is_ok();
        for p in &perms {
            ensure!(verify_capability_invariance(&w.magma, p).unwrap_or(false), "{} under {p:?}", w.name);
            if decomposable {
                ensure!(verify_functoriality(&w.magma, p).unwrap_or(false), "{} classes under {p:?}", w.name);
            }
        }
    }
    Ok(())
}

fn cnf_pipeline() -> Outcome {
    let spec = SearchSpec::from_lists(5, &[E2PM, RMutual, D, H], &[]).with_limit(1);
    let doc = encode(&spec).map_err(|e| e.to_string())?;
    let found = search(&spec).map_err(|e| e.to_string())?;
    let w = found.first().ok_or("engine found nothing at n=5")?;
    let model = doc.model_for_table(w);
    ensure!(doc.satisfied_by(&model), "engine model violates the CNF");
    let text = format!("s SATISFIABLE\nv {} 0\n", model.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" "));
    let decoded = decode(&parse_model(&text).map_err(|e| e.to_string())?, 5).map_err(|e| e.to_string())?;
    let m = PointedMagma::new(decoded, 0, 1);
    let rep = full_report(&m);
    ensure!(rep.recheck(&m).is_ok() && rep.r() && rep.d() && rep.h(), "decoded table fails the report");

    let families = common::n4_families();
    for (req, oracle) in families {
        let doc = encode(&SearchSpec::from_lists(4, req, &[])).map_err(|e| e.to_string())?;
        let solver = common::Dpll::new(doc.variable_count, &doc.clauses);
        for t in common::all_tables(4) {
            let units: Vec<i32> =
                (2..4).flat_map(|i| (0..4).map(move |j| (i, j))).map(|(i, j)| cell_var(4, i, j, t.op(i, j))).collect();
            ensure!(solver.solve(&units).is_some() == oracle(&t), "{req:?} disagrees on {t:?}");
        }
    }
    Ok(())
}

fn data_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data/corpus")
}

fn properties() -> Outcome {
    for w in corpus_all() {
        let doc = w.to_document();
        for ext in ["tbl", "json"] {
            let path = data_dir().join(format!("{}.{ext}", w.name));
            let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
            let loaded = load_table(&text).map_err(|e| format!("{}: {e}", path.display()))?;
            let saved = if ext == "tbl" {
                save_table(&loaded.table, loaded.z1, loaded.z2)
            } else {
                save_structured(&loaded)
            };
            ensure!(saved == text, "{} does not round-trip", path.display());
            ensure!(loaded.table == doc.table, "{} differs from the built-in table", path.display());
        }
        let m = &w.magma;
        let n = m.order();
        let id: Vec<Element> = (0..n).collect();
        ensure!(transport(m, &id).ok().as_ref() == Some(m), "{}: identity moves the table", w.name);
        let ps = common::sample_perms(n, 0, 1, 10, SAMPLE_SEED);
        for pair in ps.windows(2) {
            let (p, q) = (&pair[0], &pair[1]);
            let lhs = transport(m, &compose(p, q)).map_err(|e| e.to_string())?;
            let rhs = transport(&transport(m, q).map_err(|e| e.to_string())?, p).map_err(|e| e.to_string())?;
            ensure!(lhs == rhs, "{}: composition law fails", w.name);
            let back = transport(&lhs, &invert_permutation(&compose(p, q))).map_err(|e| e.to_string())?;
            ensure!(&back == m, "{}: inverse law fails", w.name);
        }
    }
    let specs = [
        SearchSpec::from_lists(4, &[E2PM], &[]).with_limit(7),
        SearchSpec::from_lists(5, &[E2PM, H], &[D]).with_limit(3),
        SearchSpec::from_lists(4, &[E2PM, D], &[]),
    ];
    for spec in &specs {
        let a = search(spec).map_err(|e| e.to_string())?;
        let b = search(spec).map_err(|e| e.to_string())?;
        ensure!(a == b, "two runs differ for {:?}", spec.constraints);
        ensure!(a.explored == b.explored && a.nodes == b.nodes, "counts differ");
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("corpus golden suite", corpus_golden),
        ("no ICP at size four", no_icp_at_four),
        ("tight bounds", tight_bounds),
        ("no associativity", no_associativity),
        ("retraction placement", placement),
        ("ICP equivalence and separations", icp_equivalence),
        ("K-combinator at finite scale", k_combinator),
        ("isomorphism invariance", invariance),
        ("CNF pipeline", cnf_pipeline),
        ("property suite", properties),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let took = start.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("PASS {:>2} {name} ({took:.2}s)", i + 1),
            Err(e) => {
                failures += 1;
                println!("FAIL {:>2} {name} ({took:.2}s): {e}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
