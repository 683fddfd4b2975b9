use logiprob_core::event::{
    b_eval, bernoulli_pmf, binomial_tail, count_range, lln_bound, series_members, t_sum, verify_b_identities,
    ProbModel, TestScheme,
};
use serde_json::json;

use crate::output::{rational, rational_json, read_input, show, CliError, Report};

pub fn bernoulli(r: u64, k: u64, p: &str) -> Result<Report, CliError> {
    let p = rational(p, "p")?;
    let v = bernoulli_pmf(r, k, &p)?;
    Ok(Report::ok(show(&v), json!({ "r": r, "k": k, "p": p.to_string(), "probability": rational_json(&v) })))
}

pub fn tail(r: u64, a: &str, b: &str, p: &str) -> Result<Report, CliError> {
    let (a, b, p) = (rational(a, "a")?, rational(b, "b")?, rational(p, "p")?);
    let (counts, warnings) = count_range(r, &a, &b)?;
    let v = binomial_tail(r, &a, &b, &p)?;
    let mut text = show(&v);
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    if let Some((k, l)) = counts {
        text.push_str(&format!("\ncounts {k}..={l}"));
    } else {
        text.push_str("\ncounts: none");
    }
    Ok(Report::ok(
        text,
        json!({
            "r": r, "a": a.to_string(), "b": b.to_string(), "p": p.to_string(),
            "counts": counts.map(|(k, l)| json!([k, l])),
            "warnings": warnings,
            "probability": rational_json(&v),
        }),
    ))
}

pub fn bound(r: u64, p: &str, eps: &str) -> Result<Report, CliError> {
    let (p, eps) = (rational(p, "p")?, rational(eps, "eps")?);
    let v = lln_bound(r, &p, &eps)?;
    Ok(Report::ok(show(&v), json!({ "r": r, "p": p.to_string(), "eps": eps.to_string(), "bound": rational_json(&v) })))
}

pub fn series(r: usize, k: usize, base: &str, p: Option<&str>) -> Result<Report, CliError> {
    let prob = p.map(|p| rational(p, "p")).transpose()?;
    let scheme = TestScheme::new(base, r, prob.clone().unwrap_or_else(|| logiprob_core::rational::ratio(1, 2)))?;
    let members = series_members(&scheme, r, k)?;
    let sum = t_sum(&scheme, r, k)?;
    let mut text: String = members.iter().map(|m| format!("{m}\n")).collect();
    text.push_str(&format!("members: {}\nsum: {sum}", members.len()));
    let mut doc = json!({
        "r": r, "k": k,
        "members": members.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "sum": sum.to_string(),
    });
    if prob.is_some() {
        let model = scheme.model(r)?;
        let v = b_eval(&model, &sum)?;
        text.push_str(&format!("\nprobability: {}", show(&v)));
        doc["probability"] = rational_json(&v);
    }
    Ok(Report::ok(text, doc))
}

pub fn verify_b(path: &str, trials: usize, seed: u64) -> Result<Report, CliError> {
    let model = ProbModel::from_json(&read_input(path)?)?;
    let report = verify_b_identities(&model, trials, seed)?;
    let mut text: String = report.checked.iter().map(|(label, n)| format!("{label}\t{n} checked\n")).collect();
    for v in &report.violations {
        text.push_str(&format!("violation: {v}\n"));
    }
    text.push_str(&format!("violations: {}", report.violations.len()));
    let doc = json!({
        "atoms": model.atoms(),
        "independent": model.is_independent(),
        "trials": trials,
        "seed": seed,
        "checked": report.checked,
        "violations": report.violations,
    });
    Ok(if report.passed() { Report::ok(text, doc) } else { Report::failed(text, doc) })
}
