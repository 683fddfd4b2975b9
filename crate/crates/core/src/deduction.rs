//! Sequents, justified natural deductions and a linear-time proof checker.
//!
//! The calculus has one axiom, `C |- C`, and four rules: conjunction removal
//! (split into left and right), conjunction introduction, double-negation
//! removal, and negation introduction with discharge. Hypotheses form a set;
//! rule conclusions take unions of premise hypotheses. Discharging a formula
//! that is not among a premise's hypotheses is allowed and removes nothing.
//!
//! Step indices are zero-based in memory and one-based in the text format.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::formula::{parse_formula, Formula, FormulaError};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sequent {
    pub hypotheses: BTreeSet<Formula>,
    pub conclusion: Formula,
}

impl Sequent {
    pub fn new(hypotheses: impl IntoIterator<Item = Formula>, conclusion: Formula) -> Self {
        Sequent { hypotheses: hypotheses.into_iter().collect(), conclusion }
    }

    pub fn axiom(c: Formula) -> Self {
        Sequent::new([c.clone()], c)
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, h) in self.hypotheses.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{h}")?;
        }
        if !self.hypotheses.is_empty() {
            f.write_str(" ")?;
        }
        write!(f, "|- {}", self.conclusion)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Justification {
    Axiom,
    /// From `(A & B)` conclude `A`.
    ConjElimLeft(usize),
    /// From `(A & B)` conclude `B`.
    ConjElimRight(usize),
    ConjIntro(usize, usize),
    /// From `(~(~C))` conclude `C`.
    NegElim(usize),
    /// From `G1, C |- A` and `G2, C |- (~A)` conclude `G1, G2 |- (~C)`.
    NegIntro { pos: usize, neg: usize, discharged: Formula },
}

impl Justification {
    pub fn rule_name(&self) -> &'static str {
        match self {
            Justification::Axiom => "AX",
            Justification::ConjElimLeft(_) => "R&L",
            Justification::ConjElimRight(_) => "R&R",
            Justification::ConjIntro(..) => "I&",
            Justification::NegElim(_) => "R~",
            Justification::NegIntro { .. } => "I~",
        }
    }

    pub fn premises(&self) -> Vec<usize> {
        match self {
            Justification::Axiom => vec![],
            Justification::ConjElimLeft(i) | Justification::ConjElimRight(i) | Justification::NegElim(i) => {
                vec![*i]
            }
            Justification::ConjIntro(i, j) => vec![*i, *j],
            Justification::NegIntro { pos, neg, .. } => vec![*pos, *neg],
        }
    }

    /// Same rule with every premise index moved by `offset`.
    pub fn shifted(&self, offset: usize) -> Justification {
        match self {
            Justification::Axiom => Justification::Axiom,
            Justification::ConjElimLeft(i) => Justification::ConjElimLeft(i + offset),
            Justification::ConjElimRight(i) => Justification::ConjElimRight(i + offset),
            Justification::ConjIntro(i, j) => Justification::ConjIntro(i + offset, j + offset),
            Justification::NegElim(i) => Justification::NegElim(i + offset),
            Justification::NegIntro { pos, neg, discharged } => Justification::NegIntro {
                pos: pos + offset,
                neg: neg + offset,
                discharged: discharged.clone(),
            },
        }
    }
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Axiom => f.write_str("AX"),
            Justification::ConjElimLeft(i) => write!(f, "R&L {}", i + 1),
            Justification::ConjElimRight(i) => write!(f, "R&R {}", i + 1),
            Justification::ConjIntro(i, j) => write!(f, "I& {} {}", i + 1, j + 1),
            Justification::NegElim(i) => write!(f, "R~ {}", i + 1),
            Justification::NegIntro { pos, neg, discharged } => {
                write!(f, "I~ {} {} {}", pos + 1, neg + 1, discharged)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Step {
    pub sequent: Sequent,
    pub justification: Justification,
}

impl Step {
    pub fn new(sequent: Sequent, justification: Justification) -> Self {
        Step { sequent, justification }
    }
}

/// An ordered list of justified steps. Construction does not check anything;
/// use [`check_proof`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Proof {
    pub steps: Vec<Step>,
}

impl Proof {
    pub fn new(steps: Vec<Step>) -> Self {
        Proof { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn push(&mut self, sequent: Sequent, justification: Justification) -> usize {
        self.steps.push(Step::new(sequent, justification));
        self.steps.len() - 1
    }

    pub fn last_sequent(&self) -> Option<&Sequent> {
        self.steps.last().map(|s| &s.sequent)
    }

    /// Appends all steps of `other`, renumbering its premise references.
    /// Returns the offset at which `other` starts.
    pub fn append(&mut self, other: &Proof) -> usize {
        let offset = self.steps.len();
        self.steps.extend(
            other.steps.iter().map(|s| Step::new(s.sequent.clone(), s.justification.shifted(offset))),
        );
        offset
    }
}

impl fmt::Display for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, step) in self.steps.iter().enumerate() {
            writeln!(f, "{}. {} ; {}", i + 1, step.sequent, step.justification)?;
        }
        Ok(())
    }
}

/// First failed condition of a step. `step` is one-based; 0 stands for the
/// proof as a whole.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("step {step} ({rule}): {reason}")]
pub struct Violation {
    pub step: usize,
    pub rule: &'static str,
    pub reason: String,
}

fn premise<'p>(proof: &'p Proof, index: usize, at: usize) -> Result<&'p Sequent, String> {
    if index >= at {
        Err(format!("premise {} does not precede this step", index + 1))
    } else {
        Ok(&proof.steps[index].sequent)
    }
}

fn same_hypotheses(this: &Sequent, prem: &Sequent, p: usize) -> Result<(), String> {
    if this.hypotheses == prem.hypotheses {
        Ok(())
    } else {
        Err(format!("hypotheses differ from those of premise {}", p + 1))
    }
}

fn check_rule(proof: &Proof, index: usize) -> Result<(), String> {
    let step = &proof.steps[index];
    let this = &step.sequent;
    match &step.justification {
        Justification::Axiom => {
            let expected: BTreeSet<Formula> = [this.conclusion.clone()].into();
            if this.hypotheses == expected {
                Ok(())
            } else {
                Err("axiom must have exactly its conclusion as hypothesis".into())
            }
        }
        Justification::ConjElimLeft(p) | Justification::ConjElimRight(p) => {
            let prem = premise(proof, *p, index)?;
            let Formula::Conj(l, r) = &prem.conclusion else {
                return Err(format!("premise {} does not conclude a conjunction", p + 1));
            };
            let (wanted, side) = match step.justification {
                Justification::ConjElimLeft(_) => (l.as_ref(), "left"),
                _ => (r.as_ref(), "right"),
            };
            if *wanted != this.conclusion {
                return Err(format!("conclusion is not the {side} conjunct of premise {}", p + 1));
            }
            same_hypotheses(this, prem, *p)
        }
        Justification::ConjIntro(i, j) => {
            let left = premise(proof, *i, index)?;
            let right = premise(proof, *j, index)?;
            let expected = Formula::conj(left.conclusion.clone(), right.conclusion.clone());
            if this.conclusion != expected {
                return Err(format!("conclusion is not {expected}"));
            }
            let union: BTreeSet<Formula> = left.hypotheses.union(&right.hypotheses).cloned().collect();
            if this.hypotheses != union {
                return Err("hypotheses are not the union of the premises' hypotheses".into());
            }
            Ok(())
        }
        Justification::NegElim(p) => {
            let prem = premise(proof, *p, index)?;
            let expected = Formula::neg(Formula::neg(this.conclusion.clone()));
            if prem.conclusion != expected {
                return Err(format!("premise {} does not conclude {expected}", p + 1));
            }
            same_hypotheses(this, prem, *p)
        }
        Justification::NegIntro { pos, neg, discharged } => {
            let a = premise(proof, *pos, index)?;
            let not_a = premise(proof, *neg, index)?;
            let expected_neg = Formula::neg(a.conclusion.clone());
            if not_a.conclusion != expected_neg {
                return Err(format!(
                    "premise {} concludes {}, expected {expected_neg}",
                    neg + 1,
                    not_a.conclusion
                ));
            }
            let expected = Formula::neg(discharged.clone());
            if this.conclusion != expected {
                return Err(format!("conclusion is not {expected}"));
            }
            let union: BTreeSet<Formula> = a
                .hypotheses
                .iter()
                .chain(&not_a.hypotheses)
                .filter(|h| *h != discharged)
                .cloned()
                .collect();
            if this.hypotheses != union {
                return Err("hypotheses are not the premises' hypotheses minus the discharged formula".into());
            }
            Ok(())
        }
    }
}

/// Checks that step `index` (zero-based) is licensed by its justification.
pub fn check_step(proof: &Proof, index: usize) -> Result<(), Violation> {
    let Some(step) = proof.steps.get(index) else {
        return Err(Violation { step: index + 1, rule: "-", reason: "no such step".into() });
    };
    check_rule(proof, index).map_err(|reason| Violation {
        step: index + 1,
        rule: step.justification.rule_name(),
        reason,
    })
}

/// Checks every step in order and reports the earliest violation.
pub fn check_proof(proof: &Proof) -> Result<(), Violation> {
    if proof.is_empty() {
        return Err(Violation { step: 0, rule: "-", reason: "empty proof".into() });
    }
    (0..proof.len()).try_for_each(|i| check_step(proof, i))
}

/// The final sequent of a proof that passes the checker.
pub fn conclusion_of(proof: &Proof) -> Result<&Sequent, Violation> {
    check_proof(proof)?;
    Ok(proof.last_sequent().expect("checked proofs are nonempty"))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofParseError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("line {line}: {source}")]
    Formula {
        line: usize,
        #[source]
        source: FormulaError,
    },
}

/// Parses the one-step-per-line text format:
///
/// ```text
/// <n>. <h1>, <h2>, ... |- <formula> ; <rule>
/// ```
///
/// with rule one of `AX`, `R&L i`, `R&R i`, `I& i j`, `R~ i`, `I~ i j <formula>`.
/// Blank lines and lines starting with `#` are skipped.
pub fn parse_proof(text: &str) -> Result<Proof, ProofParseError> {
    let mut proof = Proof::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let lineno = lineno + 1;
        let err = |message: String| ProofParseError::Line { line: lineno, message };
        let formula = |s: &str| parse_formula(s).map_err(|source| ProofParseError::Formula { line: lineno, source });

        let (number, rest) = line.split_once('.').ok_or_else(|| err("missing step number".into()))?;
        let number: usize = number.trim().parse().map_err(|_| err(format!("bad step number `{number}`")))?;
        if number != proof.len() + 1 {
            return Err(err(format!("expected step number {}, found {number}", proof.len() + 1)));
        }
        let (hyps, rest) = rest.split_once("|-").ok_or_else(|| err("missing `|-`".into()))?;
        let (conclusion, rule) = rest.rsplit_once(';').ok_or_else(|| err("missing `;` before rule".into()))?;

        let hypotheses = hyps
            .split(',')
            .map(str::trim)
            .filter(|h| !h.is_empty())
            .map(formula)
            .collect::<Result<BTreeSet<_>, _>>()?;
        let conclusion = formula(conclusion.trim())?;

        let mut tokens = rule.split_whitespace();
        let name = tokens.next().ok_or_else(|| err("missing rule".into()))?;
        let mut index = || -> Result<usize, ProofParseError> {
            let tok = tokens.next().ok_or_else(|| err(format!("rule {name} needs a step reference")))?;
            match tok.parse::<usize>() {
                Ok(n) if n >= 1 => Ok(n - 1),
                _ => Err(err(format!("bad step reference `{tok}`"))),
            }
        };
        let justification = match name {
            "AX" => Justification::Axiom,
            "R&L" => Justification::ConjElimLeft(index()?),
            "R&R" => Justification::ConjElimRight(index()?),
            "I&" => {
                let i = index()?;
                Justification::ConjIntro(i, index()?)
            }
            "R~" => Justification::NegElim(index()?),
            "I~" => {
                let pos = index()?;
                let neg = index()?;
                let discharged: Vec<&str> = tokens.by_ref().collect();
                if discharged.is_empty() {
                    return Err(err("I~ needs the discharged formula".into()));
                }
                Justification::NegIntro { pos, neg, discharged: formula(&discharged.join(" "))? }
            }
            other => return Err(err(format!("unknown rule `{other}`"))),
        };
        if !matches!(justification, Justification::NegIntro { .. }) {
            if let Some(extra) = tokens.next() {
                return Err(err(format!("unexpected `{extra}` after rule")));
            }
        }
        proof.push(Sequent { hypotheses, conclusion }, justification);
    }
    Ok(proof)
}

/// Renders the text format accepted by [`parse_proof`].
pub fn render_proof(proof: &Proof) -> String {
    proof.to_string()
}
