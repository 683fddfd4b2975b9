use logiprob_core::deduction::{check_proof, parse_proof, render_proof};
use logiprob_core::formula::{
    atoms_of, falsifying_assignment, parse_formula, render_formula, truth_table, Formula, TruthAssignment,
    DEFAULT_ATOM_LIMIT,
};
use logiprob_core::synthesis::{prove_tautology, SynthesisError};
use serde_json::{json, Map, Value};

use crate::output::{read_input, CliError, Report};

fn formula(text: &str) -> Result<Formula, CliError> {
    parse_formula(text).map_err(|e| CliError(format!("formula: {e}")))
}

fn assignment_json(g: &TruthAssignment) -> Value {
    Value::Object(g.iter().map(|(a, v)| (a.to_string(), json!(u8::from(v)))).collect::<Map<_, _>>())
}

pub fn parse(text: &str) -> Result<Report, CliError> {
    let f = formula(text)?;
    let rendered = render_formula(&f);
    Ok(Report::ok(
        rendered.clone(),
        json!({
            "formula": rendered,
            "atoms": atoms_of(&f),
            "connectives": f.connective_count(),
            "depth": f.depth(),
        }),
    ))
}

pub fn table(text: &str) -> Result<Report, CliError> {
    let f = formula(text)?;
    let t = truth_table(&f)?;
    let rows: Vec<Value> = t
        .rows
        .iter()
        .map(|row| json!({ "assignment": assignment_json(&row.assignment), "value": u8::from(row.value) }))
        .collect();
    Ok(Report::ok(
        t.to_tsv(),
        json!({ "formula": render_formula(&f), "atoms": t.atoms, "rows": rows, "tautology": t.all_true() }),
    ))
}

pub fn tauto(text: &str) -> Result<Report, CliError> {
    let f = formula(text)?;
    let rendered = render_formula(&f);
    Ok(match falsifying_assignment(&f, DEFAULT_ATOM_LIMIT)? {
        None => Report::ok("tautology", json!({ "formula": rendered, "tautology": true })),
        Some(g) => Report::failed(
            format!("not a tautology: false under {g}"),
            json!({ "formula": rendered, "tautology": false, "falsified_by": assignment_json(&g) }),
        ),
    })
}

pub fn prove(text: &str, trace: bool) -> Result<Report, CliError> {
    let f = formula(text)?;
    let rendered = render_formula(&f);
    match prove_tautology(&f) {
        Ok((proof, tr)) => {
            let proof_text = render_proof(&proof);
            let mut out = proof_text.clone();
            if trace {
                out.push_str(&tr.render());
            }
            let mut doc = json!({ "formula": rendered, "steps": proof.len(), "proof": proof_text });
            if trace {
                doc["trace"] = json!(tr.render());
            }
            Ok(Report::ok(out, doc))
        }
        Err(SynthesisError::NotATautology(g)) => Ok(Report::failed(
            format!("not a tautology: false under {g}"),
            json!({ "formula": rendered, "tautology": false, "falsified_by": assignment_json(&g) }),
        )),
        Err(e) => Err(CliError(e.to_string())),
    }
}

pub fn check(path: &str) -> Result<Report, CliError> {
    let text = read_input(path)?;
    let proof = parse_proof(&text).map_err(|e| CliError(format!("proof: {e}")))?;
    Ok(match check_proof(&proof) {
        Ok(()) => {
            let last = proof.last_sequent().expect("checked proofs are nonempty");
            Report::ok(
                format!("ok: {} steps, {last}", proof.len()),
                json!({ "valid": true, "steps": proof.len(), "conclusion": last.to_string() }),
            )
        }
        Err(v) => Report::failed(
            format!("rejected: {v}"),
            json!({ "valid": false, "step": v.step, "rule": v.rule, "reason": v.reason }),
        ),
    })
}
