//! One line per acceptance criterion. Inputs the degree cap refuses are
//! counted and make criterion 1 print FAIL; the test itself fails on any
//! wrong certificate, stage check failure, nondeterminism or failing suite.

use std::time::Instant;

use sl2pf::decompose::DecomposeOptions;
use sl2pf::selftest::{
    constant_field_suite, family_identity_suite, residue_suite, round_trip, unit_matrix_suite, word_law_suite,
    RoundTrip, SuiteReport,
};

const SEED: u64 = 2024;
const SAMPLES: usize = 1000;
const RUNS: [(u32, usize); 3] = [(3, 200), (5, 50), (9, 50)];

fn line(k: usize, pass: bool, detail: &str) {
    println!("criterion {k}: {} {detail}", if pass { "PASS" } else { "FAIL" });
}

fn runs(opts: &DecomposeOptions) -> Vec<RoundTrip> {
    RUNS.iter().map(|&(q, n)| round_trip(q, n, 8, 3, SEED, opts)).collect()
}

fn suite(k: usize, s: &SuiteReport, hard: &mut Vec<String>) {
    line(k, s.passed, &format!("{}: {}", s.name, s.detail));
    if !s.passed {
        hard.push(format!("criterion {k}"));
    }
}

fn main() {
    let mut hard = Vec::new();

    let start = Instant::now();
    let plain = runs(&DecomposeOptions::default());
    let secs = start.elapsed().as_secs_f64();
    let all = plain.iter().all(RoundTrip::all_exact) && secs <= 120.0;
    let detail: Vec<String> = plain.iter().map(RoundTrip::summary).collect();
    line(1, all, &format!("{} (total {secs:.1}s)", detail.join("; ")));
    for rt in &plain {
        if rt.wrong > 0 {
            hard.push(format!("criterion 1 q={}: {:?}", rt.q, rt.first_problem));
        }
    }

    suite(2, &constant_field_suite(&DecomposeOptions::default()), &mut hard);
    suite(3, &family_identity_suite(SAMPLES, SEED), &mut hard);
    suite(4, &residue_suite(SAMPLES, SEED), &mut hard);
    suite(5, &unit_matrix_suite(), &mut hard);
    suite(6, &word_law_suite(SAMPLES, SEED), &mut hard);

    let checked = runs(&DecomposeOptions::checked());
    let stage_checks: u64 = checked.iter().map(|rt| rt.stage_checks).sum();
    let failures: usize = checked.iter().map(|rt| rt.wrong).sum();
    let same_outcome = checked.iter().zip(&plain).all(|(c, p)| c.exact == p.exact);
    let ok7 = failures == 0 && stage_checks > 0 && same_outcome;
    line(7, ok7, &format!("{stage_checks} stage checks over the decomposed inputs, {failures} failures"));
    if !ok7 {
        hard.push("criterion 7".into());
    }

    let again = runs(&DecomposeOptions::default());
    let identical = again.iter().zip(&plain).all(|(a, p)| a.certificates == p.certificates);
    let compared: usize = plain.iter().map(|rt| rt.certificates.iter().flatten().count()).sum();
    line(8, identical, &format!("{compared} certificates compared byte for byte, refusals matched"));
    if !identical {
        hard.push("criterion 8".into());
    }

    if !hard.is_empty() {
        eprintln!("failed: {hard:?}");
        std::process::exit(1);
    }
}
