use clap::Subcommand;
use logiprob_core::qnumber::{
    agreement_set, describe, infinitely_near, infinitesimal_witness, parse_index_set, parse_seq, q_eq,
    Classification, QNumber,
};
use num::{BigRational, Signed};
use serde_json::json;

use crate::output::{rational_json, show, CliError, Report};

const SYNTAX_HELP: &str = "\
Set expressions (prefix): nat | empty | res A M | thr M | fin {1 2 3} | cofin {4}
                          | and X Y | or X Y | not X
Sequence expressions:     const Q | id | ratfn C0 C1 .. / D0 D1 .. (coefficients of n^0, n^1, ..)
                          | add X Y | sub X Y | mul X Y | div X Y | at N V X
Example: `ratfn 1 / 0 1` is 1/n; `at 3 7 const 5` is 5 except 7 at n = 3.";

#[derive(Debug, Subcommand)]
#[command(after_help = SYNTAX_HELP)]
pub enum Demo {
    /// Natural density of an index set and its filter membership.
    #[command(after_help = SYNTAX_HELP)]
    Density {
        #[arg(required = true, num_args = 1.., allow_negative_numbers = true)]
        set: Vec<String>,
    },
    /// Share of 1..=n lying in an index set. The last argument is n.
    #[command(after_help = SYNTAX_HELP)]
    Freq {
        #[arg(required = true, num_args = 2.., allow_negative_numbers = true)]
        args: Vec<String>,
    },
    /// Classify a sequence as standard, infinitesimal, infinitely large or
    /// finite nonstandard.
    #[command(after_help = SYNTAX_HELP)]
    Classify {
        #[arg(required = true, num_args = 1.., allow_negative_numbers = true)]
        seq: Vec<String>,
        /// Scale 1/m for the infinitesimal witness of `a/n` forms.
        #[arg(long, default_value_t = 10)]
        m: u64,
    },
    /// Decide whether two sequences are infinitely near. Quote each sequence.
    #[command(after_help = SYNTAX_HELP)]
    Near { left: String, right: String },
}

pub fn run(demo: Demo) -> Result<Report, CliError> {
    match demo {
        Demo::Density { set } => density(&set.join(" ")),
        Demo::Freq { mut args } => {
            let n_text = args.pop().expect("clap enforces two arguments");
            let n: u64 = n_text.parse().map_err(|_| CliError(format!("`{n_text}` is not a natural number")))?;
            freq(&args.join(" "), n)
        }
        Demo::Classify { seq, m } => classify(&seq.join(" "), m),
        Demo::Near { left, right } => near(&left, &right),
    }
}

fn density(text: &str) -> Result<Report, CliError> {
    let s = parse_index_set(text)?;
    let d = s.density();
    let member = s.in_filter();
    let text = format!(
        "set: {s}\ndensity: {}\nperiod: {}\noffset: {}\nin filter: {}",
        show(&d),
        s.period(),
        s.offset(),
        if member { "yes" } else { "no" }
    );
    Ok(Report::ok(
        text,
        json!({ "set": s.to_string(), "density": rational_json(&d), "period": s.period(), "offset": s.offset(), "in_filter": member }),
    ))
}

fn freq(text: &str, n: u64) -> Result<Report, CliError> {
    let s = parse_index_set(text)?;
    let f = s.freq(n)?;
    let count = s.count_upto(n);
    Ok(Report::ok(
        format!("set: {s}\nmembers in 1..={n}: {count}\nfrequency: {}", show(&f)),
        json!({ "set": s.to_string(), "n": n, "count": count, "frequency": rational_json(&f) }),
    ))
}

/// `a / n` read off a canonical form with constant numerator and a
/// denominator proportional to `n`.
fn reciprocal_coefficient(q: &QNumber) -> Option<BigRational> {
    let c = q.seq().canonical();
    let den = c.den.coeffs();
    (c.num.degree() == Some(0) && den.len() == 2 && num::Zero::is_zero(&den[0])).then(|| c.num.leading() / &den[1])
}

fn classify(text: &str, m: u64) -> Result<Report, CliError> {
    let q = parse_seq(text)?;
    let class = q.classify();
    let mut out = format!("sequence: {}\nclass: {class}", describe(q.seq()));
    let mut doc = json!({ "sequence": q.seq().to_string(), "readable": describe(q.seq()), "class": class.to_string() });
    if let (Classification::Infinitesimal, Some(a)) = (&class, reciprocal_coefficient(&q)) {
        let a = a.abs();
        let w = infinitesimal_witness(&a, m)?;
        let sample = 2 * w.threshold.max(1);
        let share = w.freq_bound(sample)?;
        out.push_str(&format!(
            "\nwitness: k = {} (least natural above {a}); |x_n| < 1/{m} for all n > {}\n\
             frequency of that set at n = {sample}: (n - {})/n = {share}",
            w.k, w.threshold, w.threshold
        ));
        doc["witness"] = json!({ "a": a.to_string(), "m": m, "k": w.k, "threshold": w.threshold, "sample_n": sample, "frequency": share.to_string() });
    }
    Ok(Report::ok(out, doc))
}

fn near(left: &str, right: &str) -> Result<Report, CliError> {
    let (a, b) = (parse_seq(left)?, parse_seq(right)?);
    let near = infinitely_near(&a, &b)?;
    let equal = q_eq(&a, &b)?;
    let agree = agreement_set(a.seq(), b.seq())?;
    let diff = a.sub(&b)?;
    let verdict = if near { "infinitely near" } else { "not infinitely near" };
    Ok(Report::ok(
        format!(
            "left: {}\nright: {}\ndifference: {} ({})\nagreement set: {agree}\nq-equal: {}\n{verdict}",
            describe(a.seq()),
            describe(b.seq()),
            describe(diff.seq()),
            diff.classify(),
            if equal { "yes" } else { "no" },
        ),
        json!({
            "left": a.seq().to_string(),
            "right": b.seq().to_string(),
            "difference": diff.seq().to_string(),
            "difference_class": diff.classify().to_string(),
            "agreement_set": agree.to_string(),
            "q_equal": equal,
            "infinitely_near": near,
        }),
    ))
}
