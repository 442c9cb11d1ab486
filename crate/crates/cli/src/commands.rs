use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use e2pm::capabilities::{
    find_weak_icp_no_distinctness, find_weak_icp_no_nontriviality, full_report_with, verify_placement,
    ClassifierReading, DichotomyStatus,
};
use e2pm::cnf::{decode, encode, parse_model};
use e2pm::corpus::{
    check_roles, corpus_all, derived_entries, load_table, save_structured, save_table, LoadedTable,
    NamedWitness,
};
use e2pm::iso::{
    core_permutations, find_isomorphisms, verify_capability_invariance_with, verify_functoriality,
};
use e2pm::search::{
    derive_nontriviality_separation, minimal_size, search_with_threads, Predicate, SearchOutcome,
    SearchSpec,
};
use e2pm::{validate_e2pm, CayleyTable, E2pm, Element, PointedMagma, SearchError, ValidationError};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::report::{Item, RunReport};

/// Settings shared by every subcommand.
pub struct Settings {
    pub budget: Option<u64>,
    pub threads: usize,
    pub seed: u64,
    pub reading: Option<ClassifierReading>,
}

impl Settings {
    fn reading(&self) -> ClassifierReading {
        self.reading.unwrap_or_default()
    }

    fn apply(&self, spec: &mut SearchSpec) {
        if let Some(b) = self.budget {
            spec.budget = Some(b);
        }
        if let Some(r) = self.reading {
            spec.classifier_reading = r;
        }
    }
}

fn rows(t: &CayleyTable) -> Vec<String> {
    t.to_string().lines().map(str::to_string).collect()
}

fn tick(b: bool) -> &'static str {
    if b {
        "✓"
    } else {
        "✗"
    }
}

fn axiom(e: &ValidationError) -> &'static str {
    match e {
        ValidationError::AbsorberOutOfRange(_) | ValidationError::SameAbsorbers => "designated absorbers",
        ValidationError::AbsorberMissing(_) | ValidationError::ExtraAbsorber(_) => "exactly two left-absorbers",
        ValidationError::ExtensionalityViolation(..) => "extensionality",
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load(path: &Path) -> Result<LoadedTable> {
    load_table(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_spec(path: &Path) -> Result<SearchSpec> {
    serde_json::from_str(&read(path)?).with_context(|| format!("parsing spec {}", path.display()))
}

fn display_name(path: &Path, doc: &LoadedTable) -> String {
    doc.name
        .clone()
        .unwrap_or_else(|| path.file_name().map_or_else(|| path.display().to_string(), |f| f.to_string_lossy().into()))
}

/// Validates and compares one corpus document against its recorded
/// expectations.
fn corpus_item(name: &str, doc: &LoadedTable, reading: ClassifierReading) -> Item {
    let m = match validate_e2pm(doc.table.clone(), doc.z1, doc.z2) {
        Ok(m) => m,
        Err(e) => {
            return Item::new(name, false)
                .fact("axiom", axiom(&e))
                .fact("error", e.to_string())
        }
    };
    let report = full_report_with(&m, reading);
    let found = report.summary();
    let mut problems = Vec::new();
    if let Some(exp) = doc.expected {
        let pairs = [
            ("R", exp.r, found.r),
            ("D", exp.d, found.d),
            ("H", exp.h, found.h),
            ("associative", exp.associative, found.associative),
            ("right_identity", exp.right_identity, found.right_identity),
            ("commutative", exp.commutative, found.commutative),
        ];
        for (flag, want, got) in pairs {
            if want != got {
                problems.push(format!("{flag}: expected {want}, found {got}"));
            }
        }
    }
    if let Some(roles) = &doc.roles {
        problems.extend(check_roles(&m, roles));
    }
    if let Err(e) = report.recheck(&m) {
        problems.push(format!("witness re-check: {e}"));
    }
    Item::new(name, problems.is_empty())
        .fact("capabilities", format!("R{} D{} H{}", tick(found.r), tick(found.d), tick(found.h)))
        .fact("problems", problems)
}

pub fn verify_corpus(ctx: &Settings, dir: Option<&Path>, include_derived: bool) -> Result<RunReport> {
    let reading = ctx.reading();
    let mut items = Vec::new();
    match dir {
        Some(dir) => {
            let mut paths: Vec<PathBuf> = fs::read_dir(dir)
                .with_context(|| format!("listing {}", dir.display()))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "json"))
                .collect();
            paths.sort();
            for p in paths {
                let doc = load(&p)?;
                items.push(corpus_item(&display_name(&p, &doc), &doc, reading));
            }
        }
        None => {
            let mut entries: Vec<NamedWitness> = corpus_all();
            if include_derived {
                entries.extend(derived_entries());
            }
            for w in entries {
                items.push(corpus_item(w.name, &w.to_document(), reading));
            }
        }
    }
    let passed = items.iter().filter(|i| i.ok).count();
    let total = items.len();
    let ok = passed == total;
    Ok(RunReport::new(format!("{passed}/{total} pass"), if ok { 0 } else { 1 }, items))
}

fn pairs_json(ps: &[e2pm::capabilities::RetractionPair]) -> Vec<[Element; 2]> {
    ps.iter().map(|p| [p.s, p.r]).collect()
}

fn triples_json(ts: &[e2pm::capabilities::IcpTriple]) -> Vec<[Element; 3]> {
    ts.iter().map(|t| [t.a, t.b, t.c]).collect()
}

pub fn check(ctx: &Settings, path: &Path) -> Result<RunReport> {
    let doc = load(path)?;
    let name = display_name(path, &doc);
    let m = match validate_e2pm(doc.table.clone(), doc.z1, doc.z2) {
        Ok(m) => m,
        Err(e) => {
            let item = Item::new(name, false).fact("axiom", axiom(&e)).fact("error", e.to_string());
            return Ok(RunReport::new("not an E2PM", 1, vec![item]));
        }
    };
    let reading = ctx.reading();
    let r = full_report_with(&m, reading);
    let s = r.summary();
    let mut item = Item::new(name, true)
        .fact("n", m.order())
        .fact("absorbers", [m.z1(), m.z2()])
        .fact("capabilities", format!("R{} D{} H{}", tick(s.r), tick(s.d), tick(s.h)))
        .fact(
            "laws",
            format!(
                "associative{} right-identity{} commutative{}",
                tick(s.associative),
                tick(s.right_identity),
                tick(s.commutative)
            ),
        )
        .fact("retraction_pairs", pairs_json(&r.r_mutual))
        .fact(
            "onesided_pairs",
            pairs_json(&r.r_onesided.iter().copied().filter(|p| p.anchored).collect::<Vec<_>>()),
        );
    item = decomposition_facts(item, &r.d);
    item = item
        .fact("icp_triples", triples_json(&r.h))
        .fact(
            "compose_inert_triples",
            r.compose_inert.iter().map(|t| [t.eta, t.g, t.rho]).collect::<Vec<_>>(),
        )
        .fact("weak_icp_no_distinctness", triples_json(&find_weak_icp_no_distinctness(&m)))
        .fact("weak_icp_no_nontriviality", triples_json(&find_weak_icp_no_nontriviality(&m)));
    if let Ok(placed) = verify_placement(&m, reading) {
        item = item.fact("placement", placed);
    }
    if let Some(roles) = &doc.roles {
        let problems = check_roles(&m, roles);
        item.ok = problems.is_empty();
        item = item.fact("role_problems", problems);
    }
    let code = if item.ok { 0 } else { 1 };
    Ok(RunReport::new(if code == 0 { "checked" } else { "role mismatch" }, code, vec![item]))
}

fn decomposition_facts(item: Item, d: &DichotomyStatus) -> Item {
    match d {
        DichotomyStatus::Decomposed(rep) => item
            .fact("Z", &rep.decomposition.zeros)
            .fact("C", &rep.decomposition.classifiers)
            .fact("N", &rep.decomposition.nonclassifiers)
            .fact("classifier_witnesses", &rep.witnesses)
            .fact(
                "degenerate",
                rep.degenerate.map_or_else(|| "no".to_string(), |g| format!("{g:?}")),
            ),
        DichotomyStatus::Violation(v) => item
            .fact("violation_element", v.element)
            .fact("violation_inputs", [v.mixed_outputs.0, v.mixed_outputs.1]),
        DichotomyStatus::EmptyCore => item.fact("decomposition", "empty core"),
    }
}

pub fn decompose(path: &Path) -> Result<RunReport> {
    let doc = load(path)?;
    let name = display_name(path, &doc);
    let m = PointedMagma::new(doc.table.clone(), doc.z1, doc.z2);
    if let Err(e) = validate_e2pm(doc.table, doc.z1, doc.z2) {
        let item = Item::new(name, false).fact("axiom", axiom(&e)).fact("error", e.to_string());
        return Ok(RunReport::new("not an E2PM", 1, vec![item]));
    }
    Ok(match e2pm::decompose(&m) {
        Ok(dec) => {
            let item = Item::new(name, true)
                .fact("Z", dec.zeros)
                .fact("C", dec.classifiers)
                .fact("N", dec.nonclassifiers);
            RunReport::new("decomposed", 0, vec![item])
        }
        Err(e2pm::DecomposeError::Violation(v)) => {
            let item = Item::new(name, false)
                .fact("violation_element", v.element)
                .fact("violation_inputs", [v.mixed_outputs.0, v.mixed_outputs.1]);
            RunReport::new("dichotomy violated", 1, vec![item])
        }
        Err(e) => RunReport::new("no decomposition", 1, vec![Item::new(name, false).fact("error", e.to_string())]),
    })
}

fn outcome_item(label: String, o: &SearchOutcome) -> Item {
    let mut item = Item::new(label, o.found())
        .fact("status", format!("{:?}", o.status))
        .fact("explored", o.explored)
        .fact("pruned", o.pruned)
        .fact("nodes", o.nodes)
        .fact("exhaustive", o.exhaustive)
        .fact("witness_count", o.witnesses.len());
    if let Some(w) = o.first() {
        let m = PointedMagma::new(w.clone(), 0, 1);
        let s = full_report_with(&m, ClassifierReading::Strict).summary();
        item = item
            .fact("first_witness", rows(w))
            .fact("first_witness_capabilities", format!("R{} D{} H{}", tick(s.r), tick(s.d), tick(s.h)));
    }
    item
}

fn status_code(o: &SearchOutcome) -> i32 {
    if o.found() {
        0
    } else {
        1
    }
}

pub fn search(ctx: &Settings, path: &Path, limit: Option<usize>, all_witnesses: bool) -> Result<RunReport> {
    let mut spec = load_spec(path)?;
    ctx.apply(&mut spec);
    if let Some(l) = limit {
        spec.limit = Some(l);
    }
    let out = search_with_threads(&spec, ctx.threads)?;
    let mut item = outcome_item(format!("n = {}", spec.n), &out);
    if all_witnesses {
        item = item.fact(
            "witnesses",
            out.witnesses.iter().map(|w| rows(w).join(" / ")).collect::<Vec<_>>(),
        );
    }
    Ok(RunReport::new(format!("{:?}", out.status), status_code(&out), vec![item]))
}

fn template(ctx: &Settings, require: &[Predicate], forbid: &[Predicate], symmetry: bool) -> SearchSpec {
    let mut spec = SearchSpec::from_lists(2, require, forbid).with_limit(1);
    spec.symmetry_breaking = symmetry;
    ctx.apply(&mut spec);
    spec
}

pub fn bounds(ctx: &Settings, require: &[Predicate], forbid: &[Predicate], min: usize, max: usize) -> Result<RunReport> {
    let spec = template(ctx, require, forbid, false);
    let rep = minimal_size(&spec, min, max, ctx.threads)?;
    let mut items = Vec::new();
    let mut limited = false;
    for s in &rep.sizes {
        match &s.outcome {
            Ok(o) => items.push(outcome_item(format!("n = {}", s.n), o)),
            Err(e) => {
                limited = true;
                items.push(Item::new(format!("n = {}", s.n), false).fact("status", "ResourceLimit").fact("error", e.to_string()));
            }
        }
    }
    let (status, code) = match rep.first_found {
        Some(n) if rep.tight() => (format!("first found at n = {n}, certified Unsat below"), 0),
        Some(n) => (format!("first found at n = {n}"), if limited { 3 } else { 0 }),
        None if limited => ("resource limit".to_string(), 3),
        None => (format!("Unsat for every n in {min}..={max}"), 1),
    };
    Ok(RunReport::new(status, code, items))
}

pub fn sweep(
    ctx: &Settings,
    require: &[Predicate],
    forbid: &[Predicate],
    min: usize,
    max: usize,
    symmetry: bool,
) -> Result<RunReport> {
    let base = template(ctx, require, forbid, symmetry);
    let mut items = Vec::new();
    let mut code = 0;
    for n in min..=max {
        let mut spec = base.clone();
        spec.n = n;
        match search_with_threads(&spec, ctx.threads) {
            Ok(o) => {
                if !o.found() && code == 0 {
                    code = 1;
                }
                items.push(outcome_item(format!("n = {n}"), &o));
            }
            Err(SearchError::ResourceLimit { budget, nodes }) => {
                code = 3;
                items.push(
                    Item::new(format!("n = {n}"), false)
                        .fact("status", "ResourceLimit")
                        .fact("budget", budget)
                        .fact("nodes", nodes),
                );
            }
            Err(e) => return Err(e.into()),
        }
    }
    let found = items.iter().filter(|i| i.ok).count();
    Ok(RunReport::new(format!("{found}/{} sizes found", items.len()), code, items))
}

fn sampled_perms(m: &E2pm, samples: usize, seed: u64) -> Vec<Vec<Element>> {
    let n = m.order();
    let core: Vec<Element> = m.core();
    if (1..=core.len()).product::<usize>() <= samples {
        return core_permutations(n, m.z1(), m.z2());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            let mut images = core.clone();
            images.shuffle(&mut rng);
            let mut perm: Vec<Element> = (0..n).collect();
            for (&c, &i) in core.iter().zip(&images) {
                perm[c] = i;
            }
            perm
        })
        .collect()
}

fn as_e2pm(path: &Path) -> Result<(String, E2pm)> {
    let doc = load(path)?;
    let name = display_name(path, &doc);
    let m = validate_e2pm(doc.table, doc.z1, doc.z2).with_context(|| format!("{name} is not an E2PM"))?;
    Ok((name, m))
}

pub fn iso(ctx: &Settings, first: &Path, second: Option<&Path>, samples: usize) -> Result<RunReport> {
    let (n1, m1) = as_e2pm(first)?;
    match second {
        Some(p) => {
            let (n2, m2) = as_e2pm(p)?;
            let isos = find_isomorphisms(&m1, &m2)?;
            let perms: Vec<Vec<Element>> = isos.into_iter().map(|w| w.perm).collect();
            let found = !perms.is_empty();
            let item = Item::new(format!("{n1} -> {n2}"), found)
                .fact("count", perms.len())
                .fact("isomorphisms", perms);
            Ok(RunReport::new(if found { "isomorphic" } else { "none" }, if found { 0 } else { 1 }, vec![item]))
        }
        None => {
            let perms = sampled_perms(&m1, samples, ctx.seed);
            let has_dec = e2pm::decompose(&m1).is_ok();
            let mut failures = Vec::new();
            for p in &perms {
                let inv = verify_capability_invariance_with(&m1, p, ctx.reading())?;
                let fun = if has_dec { verify_functoriality(&m1, p)? } else { true };
                if !(inv && fun) {
                    failures.push(p.clone());
                }
            }
            let ok = failures.is_empty();
            let item = Item::new(n1, ok)
                .fact("permutations_checked", perms.len())
                .fact("functoriality_checked", has_dec)
                .fact("seed", ctx.seed)
                .fact("failures", failures);
            Ok(RunReport::new(if ok { "invariant" } else { "invariance failed" }, if ok { 0 } else { 1 }, vec![item]))
        }
    }
}

pub fn encode_cmd(ctx: &Settings, spec_path: &Path, out: Option<&Path>, model: Option<&Path>) -> Result<RunReport> {
    let mut spec = load_spec(spec_path)?;
    ctx.apply(&mut spec);
    let doc = encode(&spec)?;
    let mut item = Item::new(format!("n = {}", spec.n), true)
        .fact("variables", doc.variable_count)
        .fact("clauses", doc.clauses.len());
    if let Some(out) = out {
        fs::write(out, doc.to_dimacs()).with_context(|| format!("writing {}", out.display()))?;
        item = item.fact("written", out.display().to_string());
    }
    let mut code = 0;
    if let Some(mp) = model {
        let lits = parse_model(&read(mp)?)?;
        match decode(&lits, spec.n) {
            Ok(table) => {
                let ok = spec.satisfied_by(&table);
                item = item.fact("decoded", rows(&table)).fact("satisfies_spec", ok);
                item.ok = ok;
            }
            Err(e) => {
                item.ok = false;
                item = item.fact("decode_error", e.to_string());
            }
        }
        code = if item.ok { 0 } else { 1 };
    } else if out.is_none() {
        item = item.fact("dimacs", doc.to_dimacs().lines().map(str::to_string).collect::<Vec<_>>());
    }
    Ok(RunReport::new(if code == 0 { "encoded" } else { "model rejected" }, code, vec![item]))
}

pub fn derive_separation() -> Result<RunReport> {
    let table = derive_nontriviality_separation()?;
    let frozen = derived_entries()
        .into_iter()
        .find(|w| w.name == "nontrivialitySep6")
        .context("derived corpus entry missing")?;
    let m = PointedMagma::new(table.clone(), 0, 1);
    let weak = find_weak_icp_no_nontriviality(&m);
    let matches = &table == frozen.magma.table();
    let item = Item::new("nontrivialitySep6", matches)
        .fact("table", rows(&table))
        .fact("weak_icp_no_nontriviality", triples_json(&weak))
        .fact("icp_triples", triples_json(&e2pm::capabilities::find_icp_triples(&m)))
        .fact("matches_frozen", matches);
    Ok(RunReport::new(if matches { "derived" } else { "differs from frozen entry" }, if matches { 0 } else { 1 }, vec![item]))
}

pub fn export_corpus(dir: &Path) -> Result<RunReport> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut items = Vec::new();
    for w in corpus_all().into_iter().chain(derived_entries()) {
        let doc = w.to_document();
        let tbl = dir.join(format!("{}.tbl", w.name));
        let json = dir.join(format!("{}.json", w.name));
        fs::write(&tbl, save_table(&doc.table, doc.z1, doc.z2))?;
        fs::write(&json, save_structured(&doc))?;
        items.push(Item::new(w.name, true).fact("files", vec![tbl.display().to_string(), json.display().to_string()]));
    }
    let count = items.len();
    Ok(RunReport::new(format!("{count} tables written"), 0, items))
}
