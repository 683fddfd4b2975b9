//! Shared inputs for the benchmarks.

use logiprob_core::formula::{parse_formula, Formula};

pub const REFERENCE_TAUTOLOGY: &str = "(~((~(A & (~C))) & ((A & B) & (~C))))";

/// `(~(X & (~X)))` with `X` a left-nested conjunction of `n` atoms, a
/// tautology over `n` atoms.
pub fn contradiction_denial(n: usize) -> Formula {
    let x = (1..=n).map(|i| format!("P{i}")).collect::<Vec<_>>().join(" & ");
    parse_formula(&format!("~(({x}) & ~({x}))")).expect("well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use logiprob_core::formula::is_tautology;

    #[test]
    fn inputs_are_tautologies() {
        assert!(is_tautology(&parse_formula(REFERENCE_TAUTOLOGY).unwrap()).unwrap());
        for n in 1..=6 {
            assert!(is_tautology(&contradiction_denial(n)).unwrap());
        }
    }
}
