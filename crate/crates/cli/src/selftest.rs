use logiprob_core::deduction::check_proof;
use logiprob_core::event::{boolean_restriction_check, random_joint_model, verify_b_identities, ProbModel};
use logiprob_core::formula::{is_tautology, parse_formula, random_formula, render_formula};
use logiprob_core::qnumber::filter_laws_check;
use logiprob_core::rational::{int, ratio};
use logiprob_core::synthesis::prove_tautology;
use logiprob_core::CheckReport;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::output::Report;

fn names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("A{i}")).collect()
}

fn round_trip(seed: u64, count: usize) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let atoms = names(3);
    let mut report = CheckReport::default();
    for _ in 0..count {
        let f = random_formula(&atoms, 6, &mut rng);
        let text = render_formula(&f);
        report.record("render-parse", parse_formula(&text).as_ref() == Ok(&f), || text.clone());
        let proved = prove_tautology(&f);
        let taut = is_tautology(&f).unwrap_or(false);
        report.record("prove-iff-tautology", proved.is_ok() == taut, || text.clone());
        if let Ok((proof, _)) = proved {
            let closed = proof.last_sequent().is_some_and(|s| s.hypotheses.is_empty() && s.conclusion == f);
            report.record("proof-checks", check_proof(&proof).is_ok() && closed, || text.clone());
        }
    }
    report
}

pub fn run(seed: u64) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let product =
        ProbModel::product(names(5).into_iter().zip([ratio(1, 2), ratio(1, 3), ratio(3, 4), ratio(1, 10), ratio(5, 7)]))
            .expect("valid product model");
    let joint = random_joint_model(names(5), &mut rng).expect("valid joint model");
    let degenerate =
        ProbModel::product(names(4).into_iter().zip([int(1), int(0), int(0), int(1)])).expect("valid degenerate model");

    let suites: Vec<(&str, CheckReport)> = vec![
        ("b-identities/product", verify_b_identities(&product, 200, seed).expect("nonempty model")),
        ("b-identities/joint", verify_b_identities(&joint, 200, seed).expect("nonempty model")),
        ("boolean-restriction", boolean_restriction_check(&degenerate, 200, seed).expect("degenerate model")),
        ("filter-laws", filter_laws_check(200, seed)),
        ("formula-round-trip", round_trip(seed, 100)),
    ];

    let mut text = String::new();
    let mut all_ok = true;
    let mut docs = Vec::new();
    for (name, report) in &suites {
        all_ok &= report.passed();
        let verdict = if report.passed() { "ok" } else { "FAIL" };
        text.push_str(&format!("{verdict}\t{name}\t{} checks\n", report.total_checks()));
        for v in &report.violations {
            text.push_str(&format!("\t{v}\n"));
        }
        docs.push(json!({ "suite": name, "passed": report.passed(), "checks": report.total_checks(), "violations": report.violations }));
    }
    let doc = json!({ "seed": seed, "suites": docs, "passed": all_ok });
    if all_ok {
        Report::ok(text, doc)
    } else {
        Report::failed(text, doc)
    }
}
