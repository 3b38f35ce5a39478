//! The nine acceptance criteria, one line each.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use elie::document::ReportDocument;
use elie::suites::{suite, suites};
use elie::{run_jobs, RunConfig};
use elie_core::cartan::Family;
use elie_core::electrical::{crosscheck, Attachment, Backend, Check, RunOptions, Status, VerificationReport};

fn run(names: &[&str], backend: Backend, seed: u64) -> Result<ReportDocument, String> {
    let mut jobs = Vec::new();
    for name in names {
        let s = suite(name).ok_or_else(|| format!("missing suite {name}"))?;
        jobs.extend(s.jobs().map_err(|e| format!("{name}: {e}"))?);
    }
    let opts = RunOptions {
        backend,
        seed,
        ..RunOptions::default()
    };
    let (reports, timings) = run_jobs(&jobs, &opts);
    let mut cfg = RunConfig::new("run");
    cfg.suites = names.iter().map(|s| s.to_string()).collect();
    cfg.backend = backend;
    cfg.seed = seed;
    Ok(ReportDocument::new(cfg, reports, timings))
}

fn all_pass(doc: &ReportDocument) -> Result<(), String> {
    match doc.reports.iter().find(|r| !r.passed()) {
        None => Ok(()),
        Some(r) => {
            let bad = r.checks.iter().find(|c| c.gating && !c.status.is_ok());
            Err(format!("{}: {:?}", r.title, bad.map(|c| (&c.name, c.status, &c.witness))))
        }
    }
}

fn find<'a>(doc: &'a ReportDocument, title: &str) -> Result<&'a VerificationReport, String> {
    doc.reports
        .iter()
        .find(|r| r.title == title)
        .ok_or_else(|| format!("no report {title:?}"))
}

fn check<'a>(r: &'a VerificationReport, name: &str) -> Result<&'a Check, String> {
    r.checks
        .iter()
        .find(|c| c.name == name)
        .ok_or_else(|| format!("{}: no check {name:?}", r.title))
}

fn ok_check(r: &VerificationReport, name: &str) -> Result<(), String> {
    let c = check(r, name)?;
    if c.status.is_ok() {
        Ok(())
    } else {
        Err(format!("{}: {name} is {}", r.title, c.status))
    }
}

fn within(start: Instant, limit: u64) -> Result<(), String> {
    let t = start.elapsed();
    if t <= Duration::from_secs(limit) {
        Ok(())
    } else {
        Err(format!("took {t:?}, limit {limit}s"))
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn deformed_serre() -> Result<(), String> {
    let start = Instant::now();
    let doc = run(&["thm1_2"], Backend::Auto, 0)?;
    all_pass(&doc)?;
    for name in ["A1", "A2", "A3", "A4", "B2", "B3", "C2", "C3", "D4", "G", "RANK2(1,2)", "RANK2(1,3)", "RANK2(2,2)"] {
        let r = find(&doc, &format!("vertex relations in {name}"))?;
        ensure(r.checks.iter().all(|c| c.status == Status::Pass), || format!("{name}: not symbolic"))?;
    }
    let a2 = find(&doc, "vertex relations in A2")?;
    let c = check(a2, "vertex relation u1,u2")?;
    ensure(c.reference == "(ad u1)^2(u2) + 2(-a1*a2) u1 = 0" && c.status == Status::Pass, || {
        format!("A2 example: {} {}", c.reference, c.status)
    })?;
    let a3 = find(&doc, "vertex relations in A3")?;
    let pairs = a3.checks.iter().filter(|c| c.name.starts_with("vertex relation")).count();
    ensure(pairs == 6, || format!("A3 has {pairs} ordered-pair checks"))?;
    within(start, 120)
}

fn flatness() -> Result<(), String> {
    let start = Instant::now();
    let doc = run(&["thm1_3"], Backend::Auto, 0)?;
    all_pass(&doc)?;
    for r in &doc.reports {
        match &r.checks[0].data {
            Some(Attachment::Dimensions { deformed, undeformed }) if deformed == undeformed && !deformed.is_empty() => {}
            other => return Err(format!("{}: {other:?}", r.title)),
        }
    }
    for t in ["TYPE_A_ROOT_1 flatness in A4 (b2 = 0)", "TYPE_A_ROOT_4 flatness in A4 (b2 = 0)", "AFFINE_A flatness in AFFINE_A3"] {
        find(&doc, t)?;
    }
    within(start, 300)
}

fn conjugation() -> Result<(), String> {
    let start = Instant::now();
    let doc = run(&["thm1_4", "ex1_10"], Backend::Auto, 0)?;
    all_pass(&doc)?;
    for n in 2..=5 {
        find(&doc, &format!("chain conjugation in sl_{n}"))?;
    }
    let g1 = find(&doc, "conjugation by e^(a2f2)e^(a1f1)e^(a3f3) in sl_4")?;
    let g2 = find(&doc, "conjugation by e^(a1f1)e^(a3f3)e^(a2f2) in sl_4")?;
    for (r, n) in [(g1, "g' Ad g(u2)"), (g2, "g'' Ad g(u1)"), (g2, "g'' Ad g(u3)")] {
        ok_check(r, n)?;
    }
    ensure(g2.params.get("b").map(String::as_str) == Some("-a1*a2*a3"), || format!("g'' params {:?}", g2.params))?;
    ensure(g1.params.get("b1").map(String::as_str) == Some("-a1*a2"), || format!("g' params {:?}", g1.params))?;
    within(start, 60)
}

const OMEGA_6: [[&str; 6]; 6] = [
    ["0", "b1*b2*b3*b4", "0", "0", "0", "0"],
    ["-b1*b2*b3*b4", "0", "-b2*b3*b4", "0", "0", "0"],
    ["0", "b2*b3*b4", "0", "b3*b4", "0", "0"],
    ["0", "0", "-b3*b4", "0", "-b4", "0"],
    ["0", "0", "0", "b4", "0", "1"],
    ["0", "0", "0", "0", "-1", "0"],
];

fn form() -> Result<(), String> {
    let start = Instant::now();
    let doc = run(&["thm1_6"], Backend::Auto, 0)?;
    all_pass(&doc)?;
    let r6 = find(&doc, "form on sl_6")?;
    match &check(r6, "form omega")?.data {
        Some(Attachment::Matrix { rows }) => {
            let want: Vec<Vec<String>> = OMEGA_6.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect();
            ensure(*rows == want, || format!("omega_6 = {rows:?}"))?;
        }
        other => return Err(format!("omega attachment {other:?}")),
    }
    for n in 2..=6 {
        let r = find(&doc, &format!("form on sl_{n}"))?;
        for i in 1..n {
            ok_check(r, &format!("form u{i} invariance"))?;
        }
    }
    for n in [4, 6] {
        let r = find(&doc, &format!("form on sl_{n}"))?;
        for i in 1..n {
            ok_check(r, &format!("form u{i} v1"))?;
        }
        let r = find(&doc, &format!("symplectic identification for sl_{n}"))?;
        for part in ["closure", "membership", "linear system"] {
            ok_check(r, &format!("sp identification n={n} {part}"))?;
        }
    }
    for n in [3, 5] {
        ok_check(find(&doc, &format!("form on sl_{n}"))?, "form kernel")?;
    }
    within(start, 120)
}

fn edge_models() -> Result<(), String> {
    let start = Instant::now();
    let doc = run(&["thm1_5", "thm1_7a", "thm1_7b", "thm1_8a", "thm1_8b", "thm1_8c"], Backend::Auto, 0)?;
    all_pass(&doc)?;
    for t in [
        "TYPE_A_ROOT_1 relations in A4 (b2 = 0)",
        "TYPE_A_ROOT_4 relations in A4 (b2 = 0)",
        "AFFINE_A relations in AFFINE_A3",
        "AFFINE_A relations in AFFINE_A4",
        "D_BRANCH relations in D5",
        "C_CHAIN relations in C4",
        "B_CHAIN relations in B4",
    ] {
        find(&doc, t)?;
    }
    let rooted = doc.reports.iter().filter(|r| r.title.starts_with("TYPE_A_ROOT_")).count();
    ensure(rooted == 12, || format!("{rooted} TYPE_A_ROOT reports"))?;
    within(start, 180)
}

fn decomposition() -> Result<(), String> {
    let start = Instant::now();
    let doc = run(&["thm1_9"], Backend::Auto, 0)?;
    all_pass(&doc)?;
    let r = find(&doc, "decomposition of sp_6")?;
    let mut got = BTreeMap::new();
    for c in &r.checks {
        if let Some(Attachment::Values { entries }) = &c.data {
            got.extend(entries.clone());
        }
    }
    let want: BTreeMap<String, String> =
        [("b'1", "-32*b1^2*b2^2"), ("b'2", "-8*b2^2")].map(|(k, v)| (k.to_string(), v.to_string())).into();
    ensure(got == want, || format!("b' = {got:?}"))?;
    ok_check(r, "J dimension")?;
    ensure(r.checks.iter().filter(|c| c.name.starts_with("u''")).count() == 4, || "u'' checks".into())?;
    let ex = find(&doc, "sp_6 worked example")?;
    ensure(ex.checks.len() == 4, || "example checks".into())?;
    within(start, 120)
}

fn recursion() -> Result<(), String> {
    let start = Instant::now();
    let doc = run(&["prop3_1", "prop3_6"], Backend::Auto, 0)?;
    all_pass(&doc)?;
    for t in ["iterated u in A2", "iterated u in B2", "iterated u in G", "local relations in A4"] {
        find(&doc, t)?;
    }
    let g2 = find(&doc, "iterated u in G")?;
    ok_check(g2, "iterated u1^3 u2")?;
    ok_check(g2, "iterated u1^4 u2 vanishes")?;
    within(start, 60)
}

fn shared_names() -> Vec<&'static str> {
    suites().iter().filter(|s| s.shared()).map(|s| s.name()).collect()
}

fn cross_oracle() -> Result<(), String> {
    let start = Instant::now();
    let cc = crosscheck(Family::A, 3, 100, 7).map_err(|e| e.to_string())?;
    ensure(cc.passed() && cc.checks.len() == 100, || format!("crosscheck: {:?}", cc.checks.iter().find(|c| !c.status.is_ok())))?;
    let names = shared_names();
    let auto = run(&names, Backend::Auto, 0)?;
    let km = run(&names, Backend::Km, 0)?;
    ensure(auto.reports.len() == km.reports.len(), || "report counts differ".into())?;
    for (a, k) in auto.reports.iter().zip(&km.reports) {
        ensure(a.outcome_map() == k.outcome_map(), || format!("{}: outcomes differ", a.title))?;
    }
    within(start, 120)
}

fn determinism() -> Result<(), String> {
    let names: Vec<&str> = suites().iter().map(|s| s.name()).collect();
    let first = run(&names, Backend::Auto, 11)?.body();
    let second = run(&names, Backend::Auto, 11)?.body();
    ensure(first == second, || "report bodies differ".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Result<(), String>); 9] = [
        ("1 deformed Serre relations", deformed_serre),
        ("2 flatness", flatness),
        ("3 conjugation", conjugation),
        ("4 invariant form", form),
        ("5 edge models", edge_models),
        ("6 sp decomposition", decomposition),
        ("7 recursion and local relations", recursion),
        ("8 cross-oracle agreement", cross_oracle),
        ("9 determinism", determinism),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        match f() {
            Ok(()) => println!("PASS criterion {name} ({:.2}s)", start.elapsed().as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {name}: {e}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
