//! Propositional natural deduction with constructive tautology proofs,
//! exact event-algebra probability, and Q-numbers over the density filter.

pub mod deduction;
pub mod event;
pub mod formula;
pub mod qnumber;
pub mod rational;
pub mod report;
pub mod synthesis;

pub use deduction::{check_proof, parse_proof, render_proof, Justification, Proof, Sequent, Step, Violation};
pub use event::{b_eval, EventExpr, ProbModel, TestScheme};
pub use formula::{eval_formula, is_tautology, parse_formula, render_formula, Formula, TruthAssignment, TruthTable};
pub use qnumber::{IndexSet, QNumber, SeqReal};
pub use report::CheckReport;
pub use synthesis::{derive_literal_sequent, prove_tautology, SynthesisTrace};
