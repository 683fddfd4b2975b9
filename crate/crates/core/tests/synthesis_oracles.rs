use std::collections::BTreeSet;

use logiprob_core::deduction::{check_proof, parse_proof, render_proof, Proof, Sequent};
use logiprob_core::formula::{
    atoms_of, eval_formula, is_tautology, literal_form, random_formula, Formula, TruthAssignment,
};
use logiprob_core::synthesis::{derive_literal_sequent, prove_tautology, SynthesisError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn atoms(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn proof_atoms(proof: &Proof) -> Vec<String> {
    let mut out = BTreeSet::new();
    for step in &proof.steps {
        out.extend(atoms_of(&step.sequent.conclusion));
        for h in &step.sequent.hypotheses {
            out.extend(atoms_of(h));
        }
    }
    out.into_iter().collect()
}

/// Every sequent is valid: whenever its conclusion is false, so is one of its
/// hypotheses.
fn sound_everywhere(proof: &Proof) -> Result<(), String> {
    let names = proof_atoms(proof);
    for index in 0..1u64 << names.len() {
        let g = TruthAssignment::from_index(&names, index);
        for (i, step) in proof.steps.iter().enumerate() {
            let Sequent { hypotheses, conclusion } = &step.sequent;
            if !eval_formula(conclusion, &g).unwrap() && hypotheses.iter().all(|h| eval_formula(h, &g).unwrap()) {
                return Err(format!("step {} `{}` fails under {g}", i + 1, step.sequent));
            }
        }
    }
    Ok(())
}

/// Half unconditioned draws, half draws conditioned on being tautologies.
fn corpus(seed: u64, count: usize) -> Vec<Formula> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names = atoms(&["A", "B", "C"]);
    let draw = |rng: &mut ChaCha8Rng| {
        let depth = rng.random_range(1..=6);
        random_formula(&names, depth, rng)
    };
    let mut out: Vec<Formula> = (0..count / 2).map(|_| draw(&mut rng)).collect();
    while out.len() < count {
        let f = draw(&mut rng);
        if is_tautology(&f).unwrap() {
            out.push(f);
        }
    }
    out
}

#[test]
fn completeness_round_trip() {
    let mut proved = 0;
    for f in corpus(2024, 500) {
        let taut = is_tautology(&f).unwrap();
        match prove_tautology(&f) {
            Ok((proof, trace)) => {
                assert!(taut, "proved a non-tautology {f}");
                check_proof(&proof).unwrap_or_else(|v| panic!("{f}: {v}"));
                let last = proof.last_sequent().unwrap();
                assert!(last.hypotheses.is_empty());
                assert_eq!(last.conclusion, f);
                assert_eq!(trace.assignment_count, 1 << atoms_of(&f).len());
                sound_everywhere(&proof).unwrap();
                proved += 1;
            }
            Err(SynthesisError::NotATautology(g)) => {
                assert!(!taut, "{f} is a tautology");
                assert!(!eval_formula(&f, &g).unwrap());
            }
            Err(e) => panic!("{f}: {e}"),
        }
    }
    // the generator must exercise both outcomes
    assert!(proved >= 250 && proved < 500, "proved {proved}");
}

#[test]
fn tautology_corpus_proofs_are_sound() {
    let tautologies = [
        "(~(A & (~A)))",
        "(~((~(A & (~C))) & ((A & B) & (~C))))",
        "(~((A & B) & (~A)))",
        "(~(~(~(A & (~A)))))",
        "(~((~(~A)) & (~A)))",
        "(~((A & (~B)) & ((~A) & C)))",
    ];
    for t in tautologies {
        let f: Formula = t.parse().unwrap();
        let (proof, _) = prove_tautology(&f).unwrap();
        check_proof(&proof).unwrap();
        sound_everywhere(&proof).unwrap();
    }
}

#[test]
fn empty_hypothesis_conclusions_are_tautologies() {
    for f in corpus(77, 300) {
        let Ok((proof, _)) = prove_tautology(&f) else { continue };
        for step in proof.steps.iter().filter(|s| s.sequent.hypotheses.is_empty()) {
            assert!(is_tautology(&step.sequent.conclusion).unwrap());
        }
    }
}

#[test]
fn literal_sequent_contract() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let names = atoms(&["A", "B", "C", "D"]);
    for _ in 0..500 {
        let depth = rng.random_range(0..=6);
        let f = random_formula(&names, depth, &mut rng);
        let fa = atoms_of(&f);
        let g = TruthAssignment::from_index(&fa, rng.random_range(0..1u64 << fa.len()));
        let proof = derive_literal_sequent(&f, &g).unwrap();
        check_proof(&proof).unwrap_or_else(|v| panic!("{f} under {g}: {v}"));
        let expected: BTreeSet<Formula> =
            fa.iter().map(|a| literal_form(&Formula::Atom(a.clone()), &g).unwrap()).collect();
        let last = proof.last_sequent().unwrap();
        assert_eq!(last.hypotheses, expected, "{f} under {g}");
        assert_eq!(last.conclusion, literal_form(&f, &g).unwrap());
        sound_everywhere(&proof).unwrap();
        assert!(proof.len() <= 5 * f.connective_count() + f.leaf_count(), "{f}: {} steps", proof.len());
    }
}

#[test]
fn full_proof_size_bound() {
    for f in corpus(5, 200) {
        let Ok((proof, _)) = prove_tautology(&f) else { continue };
        let k = atoms_of(&f).len();
        let per = 5 * f.connective_count() + f.leaf_count();
        assert!(proof.len() <= (1 << k) * per + ((1 << k) - 1) * 5);
    }
}

#[test]
fn synthesis_is_deterministic_and_round_trips() {
    for f in corpus(3, 100) {
        let Ok((first, trace)) = prove_tautology(&f) else { continue };
        let (second, trace2) = prove_tautology(&f).unwrap();
        let text = render_proof(&first);
        assert_eq!(text, render_proof(&second));
        assert_eq!(trace.render(), trace2.render());
        assert_eq!(parse_proof(&text).unwrap(), first);
        assert_eq!(render_proof(&parse_proof(&text).unwrap()), text);
    }
}
