//! Acceptance run: every criterion prints one PASS/FAIL line. Runs
//! without the libtest harness so the lines are never captured.

use std::time::{Duration, Instant};

use steiner_core::suites::{run_suite, SuiteReport};

const SEED: u64 = 2024;

struct Outcome {
    ok: bool,
    line: String,
}

fn timed(names: &[&str]) -> (Vec<SuiteReport>, Vec<Duration>) {
    let mut reports = Vec::new();
    let mut times = Vec::new();
    for name in names {
        let start = Instant::now();
        let report = run_suite(name, SEED).unwrap_or_else(|e| panic!("suite {name} errored: {e}"));
        let elapsed = start.elapsed();
        reports.push(report);
        times.push(elapsed);
    }
    (reports, times)
}

fn criterion(number: usize, title: &str, names: &[&str], limit_each: Duration) -> (Outcome, Vec<SuiteReport>) {
    let (reports, times) = timed(names);
    let mut ok = true;
    let mut parts = Vec::new();
    for (report, time) in reports.iter().zip(&times) {
        let in_time = *time <= limit_each;
        ok &= report.passed() && in_time;
        parts.push(format!(
            "{} {}/{} ok in {:.1}s{}",
            report.name,
            report.cases - report.failures.min(report.cases),
            report.cases,
            time.as_secs_f64(),
            if in_time { "" } else { " (over time limit)" }
        ));
        for example in &report.examples {
            eprintln!("  [{}] {example}", report.name);
        }
    }
    let verdict = if ok { "PASS" } else { "FAIL" };
    let line = format!("criterion {number} {verdict}: {title}: {}", parts.join("; "));
    (Outcome { ok, line }, reports)
}

fn main() {
    let minutes = |m: u64| Duration::from_secs(60 * m);
    let plan: Vec<(usize, &str, Vec<&str>, Duration)> = vec![
        (1, "extension solver agrees with exhaustive search", vec!["sse"], minutes(10)),
        (2, "representative families", vec!["repfam"], minutes(2)),
        (3, "branching packings and matroid characterisation", vec!["matroid"], minutes(5)),
        (4, "edge connectivity by flow and by deletion", vec!["menger"], minutes(1)),
        (
            5,
            "deletion solvers agree with exhaustive search",
            vec!["bdds", "pw1ds", "tdds", "pvc", "scattered"],
            minutes(15),
        ),
        (6, "ordering back-degree bounds", vec!["ordering"], minutes(1)),
        (7, "shape after hitting triangles, 4-cycles and spiders", vec!["structure"], minutes(5)),
    ];
    let mut outcomes = Vec::new();
    let mut first_json = Vec::new();
    let mut all_names = Vec::new();
    for (number, title, names, limit) in &plan {
        let (outcome, reports) = criterion(*number, title, names, *limit);
        println!("{}", outcome.line);
        first_json.extend(reports.iter().map(SuiteReport::to_json));
        all_names.extend(names.iter().copied());
        outcomes.push(outcome);
    }

    let rerun: Vec<String> = all_names
        .iter()
        .map(|name| run_suite(name, SEED).expect("suite reruns").to_json())
        .collect();
    let identical = rerun == first_json;
    let line = format!(
        "criterion 8 {}: reruns with the same seed give byte-identical reports ({} suites)",
        if identical { "PASS" } else { "FAIL" },
        rerun.len()
    );
    println!("{line}");
    outcomes.push(Outcome { ok: identical, line });

    let failed = outcomes.iter().filter(|o| !o.ok).count();
    println!("acceptance: {} of {} criteria passed", outcomes.len() - failed, outcomes.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
