//! Constructive completeness: natural deductions built from truth tables.
//!
//! [`derive_literal_sequent`] proves, for one assignment `g`, the sequent whose
//! hypotheses are the literal forms of the atoms of `f` and whose conclusion
//! is the literal form of `f`. [`eliminate_hypothesis`] merges two such proofs
//! that differ only in the sign of one atom, removing that atom from the
//! hypotheses. [`prove_tautology`] runs the first for every row of the truth
//! table and then folds the second over the atoms until nothing is left.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::deduction::{Justification, Proof, Sequent};
use crate::formula::{
    atoms_of, eval_formula, falsifying_assignment, literal_form, Formula, FormulaError, TruthAssignment,
};

/// Default cap on atoms for [`prove_tautology`]; 2^k proofs are materialized.
pub const DEFAULT_PROOF_ATOM_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthesisError {
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error("not a tautology: falsified by {0}")]
    NotATautology(TruthAssignment),
    #[error("premise shape mismatch: {0}")]
    ShapeMismatch(String),
}

/// Proof of `{ B^g : B in atoms_of(f) } |- f^g`.
pub fn derive_literal_sequent(f: &Formula, g: &TruthAssignment) -> Result<Proof, FormulaError> {
    // fail early on unbound atoms so the builder can assume evaluation succeeds
    for atom in atoms_of(f) {
        if g.get(&atom).is_none() {
            return Err(FormulaError::UnboundAtom(atom));
        }
    }
    let mut proof = Proof::default();
    LiteralBuilder { g, proof: &mut proof }.build(f)?;
    Ok(proof)
}

struct LiteralBuilder<'a> {
    g: &'a TruthAssignment,
    proof: &'a mut Proof,
}

impl LiteralBuilder<'_> {
    fn hyps(&self, i: usize) -> &BTreeSet<Formula> {
        &self.proof.steps[i].sequent.hypotheses
    }

    fn concl(&self, i: usize) -> &Formula {
        &self.proof.steps[i].sequent.conclusion
    }

    fn axiom(&mut self, c: Formula) -> usize {
        self.proof.push(Sequent::axiom(c), Justification::Axiom)
    }

    fn conj_intro(&mut self, i: usize, j: usize) -> usize {
        let hyps = self.hyps(i).union(self.hyps(j)).cloned().collect::<Vec<_>>();
        let concl = Formula::conj(self.concl(i).clone(), self.concl(j).clone());
        self.proof.push(Sequent::new(hyps, concl), Justification::ConjIntro(i, j))
    }

    fn conj_elim(&mut self, i: usize, left: bool) -> usize {
        let Formula::Conj(l, r) = self.concl(i) else { unreachable!("conj_elim on non-conjunction") };
        let concl = if left { l.as_ref().clone() } else { r.as_ref().clone() };
        let seq = Sequent { hypotheses: self.hyps(i).clone(), conclusion: concl };
        let just = if left { Justification::ConjElimLeft(i) } else { Justification::ConjElimRight(i) };
        self.proof.push(seq, just)
    }

    fn neg_intro(&mut self, pos: usize, neg: usize, discharged: Formula) -> usize {
        let hyps = self
            .hyps(pos)
            .iter()
            .chain(self.hyps(neg))
            .filter(|h| **h != discharged)
            .cloned()
            .collect::<Vec<_>>();
        let concl = Formula::neg(discharged.clone());
        self.proof.push(Sequent::new(hyps, concl), Justification::NegIntro { pos, neg, discharged })
    }

    /// Emits steps ending in a proof of `f^g` and returns that step's index.
    fn build(&mut self, f: &Formula) -> Result<usize, FormulaError> {
        let value = eval_formula(f, self.g)?;
        match f {
            Formula::Atom(_) => Ok(self.axiom(literal_form(f, self.g)?)),
            Formula::Neg(inner) => {
                let i = self.build(inner)?;
                if value {
                    // inner^g is already (~inner) = f
                    return Ok(i);
                }
                // i concludes inner; refute (~inner)
                let neg_f = self.axiom(f.clone());
                Ok(self.neg_intro(i, neg_f, f.clone()))
            }
            Formula::Conj(l, r) => {
                if value {
                    let i = self.build(l)?;
                    let j = self.build(r)?;
                    return Ok(self.conj_intro(i, j));
                }
                // refute via the falsified conjunct, preferring the left one
                let left_false = !eval_formula(l, self.g)?;
                let (falsified, other) = if left_false { (l, r) } else { (r, l) };
                let mut neg_side = self.build(falsified)?;
                let have: BTreeSet<String> = atoms_of(falsified).into_iter().collect();
                if atoms_of(other).iter().any(|a| !have.contains(a)) {
                    // carry the other conjunct's hypotheses along: I& then R&
                    let k = self.build(other)?;
                    neg_side = if left_false {
                        let both = self.conj_intro(neg_side, k);
                        self.conj_elim(both, true)
                    } else {
                        let both = self.conj_intro(k, neg_side);
                        self.conj_elim(both, false)
                    };
                }
                let whole = self.axiom(f.clone());
                let part = self.conj_elim(whole, left_false);
                Ok(self.neg_intro(part, neg_side, f.clone()))
            }
        }
    }
}

fn split_hypothesis(seq: &Sequent, b: &Formula) -> Option<BTreeSet<Formula>> {
    if !seq.hypotheses.contains(b) {
        return None;
    }
    Some(seq.hypotheses.iter().filter(|h| *h != b).cloned().collect())
}

/// Given proofs of `(~b), G |- A` and `b, G |- A`, proves `G |- A`.
pub fn eliminate_hypothesis(neg_proof: &Proof, pos_proof: &Proof, b: &Formula) -> Result<Proof, SynthesisError> {
    let mismatch = |m: &str| SynthesisError::ShapeMismatch(m.to_owned());
    let neg_seq = neg_proof.last_sequent().ok_or_else(|| mismatch("first proof is empty"))?;
    let pos_seq = pos_proof.last_sequent().ok_or_else(|| mismatch("second proof is empty"))?;
    if neg_seq.conclusion != pos_seq.conclusion {
        return Err(mismatch("the proofs have different conclusions"));
    }
    let not_b = Formula::neg(b.clone());
    let rest_neg =
        split_hypothesis(neg_seq, &not_b).ok_or_else(|| mismatch(&format!("first proof lacks hypothesis {not_b}")))?;
    let rest_pos =
        split_hypothesis(pos_seq, b).ok_or_else(|| mismatch(&format!("second proof lacks hypothesis {b}")))?;
    if rest_neg != rest_pos {
        return Err(mismatch("the remaining hypotheses differ"));
    }
    let a = neg_seq.conclusion.clone();
    let not_a = Formula::neg(a.clone());
    if rest_neg.contains(b) || rest_neg.contains(&not_b) || rest_neg.contains(&not_a) {
        return Err(mismatch("remaining hypotheses overlap the eliminated formula"));
    }

    let mut proof = neg_proof.clone();
    let n_end = proof.len() - 1;
    let p_end = proof.append(pos_proof) + pos_proof.len() - 1;
    let with_not_a = || rest_neg.iter().cloned().chain([not_a.clone()]);

    let ax = proof.push(Sequent::axiom(not_a.clone()), Justification::Axiom);
    let nn_b = proof.push(
        Sequent::new(with_not_a(), Formula::neg(not_b.clone())),
        Justification::NegIntro { pos: n_end, neg: ax, discharged: not_b.clone() },
    );
    let n_b = proof.push(
        Sequent::new(with_not_a(), not_b.clone()),
        Justification::NegIntro { pos: p_end, neg: ax, discharged: b.clone() },
    );
    let nn_a = proof.push(
        Sequent::new(rest_neg.iter().cloned(), Formula::neg(not_a.clone())),
        Justification::NegIntro { pos: n_b, neg: nn_b, discharged: not_a.clone() },
    );
    proof.push(Sequent::new(rest_neg.iter().cloned(), a), Justification::NegElim(nn_a));
    Ok(proof)
}

/// One hypothesis-elimination round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationRound {
    pub atom: String,
    /// Merged proofs in order of the remaining assignment prefix.
    pub merged: Vec<Proof>,
}

/// Record of a [`prove_tautology`] run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthesisTrace {
    pub atoms: Vec<String>,
    pub assignment_count: usize,
    pub assignments: Vec<TruthAssignment>,
    pub per_assignment: Vec<Proof>,
    pub rounds: Vec<EliminationRound>,
}

impl SynthesisTrace {
    /// Text form with every line prefixed by `# `, so it can follow a proof
    /// in the same stream.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# assignments: {}", self.assignment_count);
        let _ = writeln!(out, "# row\t{}\tsteps\tsequent", self.atoms.join("\t"));
        for (i, (g, p)) in self.assignments.iter().zip(&self.per_assignment).enumerate() {
            let bits: Vec<String> = g.iter().map(|(_, v)| u8::from(v).to_string()).collect();
            let seq = p.last_sequent().map(ToString::to_string).unwrap_or_default();
            let _ = writeln!(out, "# {i}\t{}\t{}\t{seq}", bits.join("\t"), p.len());
        }
        for (n, round) in self.rounds.iter().enumerate() {
            let _ = writeln!(out, "# round {}: eliminate {}", n + 1, round.atom);
            for (j, p) in round.merged.iter().enumerate() {
                let seq = p.last_sequent().map(ToString::to_string).unwrap_or_default();
                let _ = writeln!(out, "#   merge {j}: rows {} and {} -> {} steps, {seq}", 2 * j, 2 * j + 1, p.len());
            }
        }
        out
    }
}

pub fn prove_tautology(f: &Formula) -> Result<(Proof, SynthesisTrace), SynthesisError> {
    prove_tautology_with_limit(f, DEFAULT_PROOF_ATOM_LIMIT)
}

/// Proof of `|- f` for a tautology `f`. Atoms are eliminated last-first;
/// within a round, proofs are paired by the values of the atoms not yet
/// eliminated.
pub fn prove_tautology_with_limit(f: &Formula, limit: usize) -> Result<(Proof, SynthesisTrace), SynthesisError> {
    if let Some(g) = falsifying_assignment(f, limit)? {
        return Err(SynthesisError::NotATautology(g));
    }
    let atoms = atoms_of(f);
    let count = 1usize << atoms.len();
    let assignments: Vec<TruthAssignment> =
        (0..count as u64).map(|i| TruthAssignment::from_index(&atoms, i)).collect();
    let per_assignment = assignments
        .iter()
        .map(|g| derive_literal_sequent(f, g))
        .collect::<Result<Vec<_>, _>>()?;

    // rows 2j and 2j+1 differ exactly in the last remaining atom
    let mut layer = per_assignment.clone();
    let mut rounds = Vec::with_capacity(atoms.len());
    for atom in atoms.iter().rev() {
        let b = Formula::Atom(atom.clone());
        let merged = layer
            .chunks(2)
            .map(|pair| eliminate_hypothesis(&pair[0], &pair[1], &b))
            .collect::<Result<Vec<_>, _>>()?;
        rounds.push(EliminationRound { atom: atom.clone(), merged: merged.clone() });
        layer = merged;
    }
    let proof = layer.pop().expect("one proof remains after all rounds");
    let trace = SynthesisTrace { atoms, assignment_count: count, assignments, per_assignment, rounds };
    Ok((proof, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deduction::{check_proof, conclusion_of};
    use crate::formula::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn g(pairs: &[(&str, u8)]) -> TruthAssignment {
        pairs.iter().map(|&(a, v)| (a, v == 1)).collect()
    }

    #[test]
    fn atom_is_one_axiom() {
        let p = derive_literal_sequent(&f("A"), &g(&[("A", 1)])).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(conclusion_of(&p).unwrap(), &Sequent::axiom(f("A")));
        let q = derive_literal_sequent(&f("A"), &g(&[("A", 0)])).unwrap();
        assert_eq!(conclusion_of(&q).unwrap(), &Sequent::axiom(f("(~A)")));
    }

    #[test]
    fn true_conjunction_ends_in_conj_intro() {
        let p = derive_literal_sequent(&f("(A & B)"), &g(&[("A", 1), ("B", 1)])).unwrap();
        assert_eq!(conclusion_of(&p).unwrap(), &Sequent::new([f("A"), f("B")], f("(A & B)")));
        assert!(matches!(p.steps.last().unwrap().justification, Justification::ConjIntro(..)));
    }

    #[test]
    fn false_conjunction_ends_in_neg_intro() {
        let p = derive_literal_sequent(&f("(A & B)"), &g(&[("A", 0), ("B", 1)])).unwrap();
        assert_eq!(conclusion_of(&p).unwrap(), &Sequent::new([f("(~A)"), f("B")], f("(~(A & B))")));
        assert!(matches!(p.steps.last().unwrap().justification, Justification::NegIntro { .. }));
    }

    #[test]
    fn false_conjunction_without_new_atoms_skips_carry() {
        // the right conjunct adds no atoms, so a four-step continuation suffices
        let p = derive_literal_sequent(&f("(A & (~(~A)))"), &g(&[("A", 0)])).unwrap();
        assert_eq!(conclusion_of(&p).unwrap(), &Sequent::new([f("(~A)")], f("(~(A & (~(~A))))")));
        assert_eq!(p.len(), 4);
    }

    #[test]
    fn right_falsified_conjunction() {
        let p = derive_literal_sequent(&f("(A & B)"), &g(&[("A", 1), ("B", 0)])).unwrap();
        assert_eq!(conclusion_of(&p).unwrap(), &Sequent::new([f("A"), f("(~B)")], f("(~(A & B))")));
    }

    #[test]
    fn false_negation_uses_axiom_and_discharge() {
        let p = derive_literal_sequent(&f("(~A)"), &g(&[("A", 1)])).unwrap();
        assert_eq!(conclusion_of(&p).unwrap(), &Sequent::new([f("A")], f("(~(~A))")));
        assert_eq!(p.len(), 3);
        let q = derive_literal_sequent(&f("(~A)"), &g(&[("A", 0)])).unwrap();
        assert_eq!(q.len(), 1);
    }

    #[test]
    fn unbound_atom() {
        assert_eq!(
            derive_literal_sequent(&f("(A & B)"), &g(&[("A", 1)])),
            Err(FormulaError::UnboundAtom("B".into()))
        );
    }

    #[test]
    fn merging_two_literal_proofs() {
        let t = f("(~(A & (~A)))");
        let neg = derive_literal_sequent(&t, &g(&[("A", 0)])).unwrap();
        let pos = derive_literal_sequent(&t, &g(&[("A", 1)])).unwrap();
        let merged = eliminate_hypothesis(&neg, &pos, &f("A")).unwrap();
        assert_eq!(merged.len(), neg.len() + pos.len() + 5);
        assert_eq!(conclusion_of(&merged).unwrap(), &Sequent::new([], t));
    }

    #[test]
    fn merging_removes_first_hypothesis_only() {
        let t = f("(~((~(A & (~C))) & ((A & B) & (~C))))");
        let neg = derive_literal_sequent(&t, &g(&[("A", 0), ("B", 1), ("C", 0)])).unwrap();
        let pos = derive_literal_sequent(&t, &g(&[("A", 1), ("B", 1), ("C", 0)])).unwrap();
        let merged = eliminate_hypothesis(&neg, &pos, &f("A")).unwrap();
        assert_eq!(conclusion_of(&merged).unwrap(), &Sequent::new([f("B"), f("(~C)")], t));
    }

    #[test]
    fn merge_shape_errors() {
        let a = derive_literal_sequent(&f("A"), &g(&[("A", 0)])).unwrap();
        let b = derive_literal_sequent(&f("B"), &g(&[("B", 1)])).unwrap();
        assert!(matches!(eliminate_hypothesis(&a, &b, &f("A")), Err(SynthesisError::ShapeMismatch(_))));
        let t = f("(~(A & (~A)))");
        let neg = derive_literal_sequent(&t, &g(&[("A", 0)])).unwrap();
        // swapped roles
        assert!(eliminate_hypothesis(&neg, &neg, &f("A")).is_err());
        assert!(eliminate_hypothesis(&Proof::default(), &neg, &f("A")).is_err());
    }

    #[test]
    fn proves_reference_tautologies() {
        for text in ["(~ (A & (~A)))", "(~((~(A & (~C))) & ((A & B) & (~C))))"] {
            let t = f(text);
            let (proof, trace) = prove_tautology(&t).unwrap();
            assert_eq!(check_proof(&proof), Ok(()));
            assert_eq!(conclusion_of(&proof).unwrap(), &Sequent::new([], t.clone()));
            assert_eq!(trace.assignment_count, 1 << atoms_of(&t).len());
            assert_eq!(trace.rounds.len(), atoms_of(&t).len());
            for p in trace.per_assignment.iter().chain(trace.rounds.iter().flat_map(|r| &r.merged)) {
                assert_eq!(check_proof(p), Ok(()));
            }
        }
    }

    #[test]
    fn non_tautology_reports_assignment() {
        match prove_tautology(&f("A")) {
            Err(SynthesisError::NotATautology(g)) => assert_eq!(g.get("A"), Some(false)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn atom_limit() {
        let t = f("(~(A & (~A))) & (~(B & (~B))) & (~(C & (~C)))");
        assert!(matches!(
            prove_tautology_with_limit(&t, 2),
            Err(SynthesisError::Formula(FormulaError::AtomLimit { count: 3, limit: 2 }))
        ));
    }

    #[test]
    fn deterministic() {
        let t = f("(~((~(A & (~C))) & ((A & B) & (~C))))");
        assert_eq!(prove_tautology(&t).unwrap().0, prove_tautology(&t).unwrap().0);
    }

    #[test]
    fn trace_renders_as_comments() {
        let (_, trace) = prove_tautology(&f("(~(A & (~A)))")).unwrap();
        let text = trace.render();
        assert!(text.lines().all(|l| l.starts_with("# ")));
        assert!(text.contains("round 1: eliminate A"));
    }
}
