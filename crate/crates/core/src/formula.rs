//! Propositional formulas over atoms with negation and conjunction, their
//! concrete syntax, and two-valued evaluation.
//!
//! Atoms are the leaves of the tree, so a set of atoms is always a basic set:
//! no atom is a conjunction or negation of other atoms. Every other formula is
//! built from atoms by `~` and `&`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Default cap on the number of distinct atoms for exhaustive enumeration.
pub const DEFAULT_ATOM_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("atom `{0}` is not bound by the assignment")]
    UnboundAtom(String),
    #[error("formula has {count} atoms, limit is {limit}")]
    AtomLimit { count: usize, limit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Neg(Box<Formula>),
    Conj(Box<Formula>, Box<Formula>),
}

impl Formula {
    /// Builds an atom, checking the name against the atom grammar.
    pub fn atom(name: impl Into<String>) -> Result<Formula, FormulaError> {
        let name = name.into();
        if is_atom_name(&name) {
            Ok(Formula::Atom(name))
        } else {
            Err(FormulaError::Syntax {
                pos: 0,
                message: format!("`{name}` is not a valid atom name"),
            })
        }
    }

    pub fn neg(inner: Formula) -> Formula {
        Formula::Neg(Box::new(inner))
    }

    pub fn conj(left: Formula, right: Formula) -> Formula {
        Formula::Conj(Box::new(left), Box::new(right))
    }

    /// Number of `~` and `&` nodes.
    pub fn connective_count(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::Neg(inner) => 1 + inner.connective_count(),
            Formula::Conj(l, r) => 1 + l.connective_count() + r.connective_count(),
        }
    }

    /// Number of atom leaves, counting repeats.
    pub fn leaf_count(&self) -> usize {
        match self {
            Formula::Atom(_) => 1,
            Formula::Neg(inner) => inner.leaf_count(),
            Formula::Conj(l, r) => l.leaf_count() + r.leaf_count(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::Neg(inner) => 1 + inner.depth(),
            Formula::Conj(l, r) => 1 + l.depth().max(r.depth()),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(name) => f.write_str(name),
            Formula::Neg(inner) => write!(f, "(~{inner})"),
            Formula::Conj(l, r) => write!(f, "({l} & {r})"),
        }
    }
}

impl std::str::FromStr for Formula {
    type Err = FormulaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}

fn is_atom_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses the concrete syntax: `~` or `!` for negation, infix `&` for
/// conjunction. Parentheses are optional; without them `~` binds tighter than
/// `&` and `&` associates to the left.
pub fn parse_formula(text: &str) -> Result<Formula, FormulaError> {
    let mut parser = Parser { src: text.as_bytes(), pos: 0 };
    let f = parser.conjunction()?;
    parser.skip_ws();
    if parser.pos < parser.src.len() {
        return Err(parser.error(format!("unexpected `{}`", parser.src[parser.pos] as char)));
    }
    Ok(f)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> FormulaError {
        FormulaError::Syntax { pos: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn conjunction(&mut self) -> Result<Formula, FormulaError> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'&') {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = Formula::conj(acc, rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, FormulaError> {
        match self.peek() {
            Some(b'~') | Some(b'!') => {
                self.pos += 1;
                Ok(Formula::neg(self.unary()?))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.conjunction()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                Ok(Formula::Atom(name.to_owned()))
            }
            Some(c) => Err(self.error(format!("expected a formula, found `{}`", c as char))),
            None => Err(self.error("expected a formula, found end of input")),
        }
    }
}

/// Canonical fully parenthesized text.
pub fn render_formula(f: &Formula) -> String {
    f.to_string()
}

/// Distinct atom names, sorted by name. Truth tables list their columns in
/// this order.
pub fn atoms_of(f: &Formula) -> Vec<String> {
    fn walk<'a>(f: &'a Formula, out: &mut BTreeSet<&'a str>) {
        match f {
            Formula::Atom(name) => {
                out.insert(name);
            }
            Formula::Neg(inner) => walk(inner, out),
            Formula::Conj(l, r) => {
                walk(l, out);
                walk(r, out);
            }
        }
    }
    let mut out = BTreeSet::new();
    walk(f, &mut out);
    out.into_iter().map(str::to_owned).collect()
}

/// A Boolean function restricted to finitely many atoms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TruthAssignment {
    bindings: Vec<(String, bool)>,
}

impl TruthAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Row `index` of the lexicographic enumeration over `atoms`: the first
    /// atom is the most significant bit.
    pub fn from_index(atoms: &[String], index: u64) -> Self {
        let k = atoms.len();
        let bindings = atoms
            .iter()
            .enumerate()
            .map(|(j, a)| (a.clone(), (index >> (k - 1 - j)) & 1 == 1))
            .collect();
        TruthAssignment { bindings }
    }

    pub fn with(mut self, atom: impl Into<String>, value: bool) -> Self {
        self.set(atom, value);
        self
    }

    pub fn set(&mut self, atom: impl Into<String>, value: bool) {
        let atom = atom.into();
        match self.bindings.iter_mut().find(|(a, _)| *a == atom) {
            Some(slot) => slot.1 = value,
            None => self.bindings.push((atom, value)),
        }
    }

    pub fn get(&self, atom: &str) -> Option<bool> {
        self.bindings.iter().find(|(a, _)| a == atom).map(|&(_, v)| v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, bool)> {
        self.bindings.iter().map(|(a, v)| (a.as_str(), *v))
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }
}

impl<S: Into<String>> FromIterator<(S, bool)> for TruthAssignment {
    fn from_iter<I: IntoIterator<Item = (S, bool)>>(iter: I) -> Self {
        let mut g = TruthAssignment::new();
        for (a, v) in iter {
            g.set(a, v);
        }
        g
    }
}

impl fmt::Display for TruthAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (a, v)) in self.bindings.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{a}={}", u8::from(*v))?;
        }
        Ok(())
    }
}

/// Extends `g` to `f` by `g(~A) = 1 - g(A)` and `g(A & B) = g(A) * g(B)`.
pub fn eval_formula(f: &Formula, g: &TruthAssignment) -> Result<bool, FormulaError> {
    match f {
        Formula::Atom(name) => g.get(name).ok_or_else(|| FormulaError::UnboundAtom(name.clone())),
        Formula::Neg(inner) => Ok(!eval_formula(inner, g)?),
        Formula::Conj(l, r) => {
            let l = eval_formula(l, g)?;
            let r = eval_formula(r, g)?;
            Ok(l && r)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub assignment: TruthAssignment,
    pub value: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    pub atoms: Vec<String>,
    pub rows: Vec<TableRow>,
}

impl TruthTable {
    /// Tab-separated export: one column per atom, then `value`.
    pub fn to_tsv(&self) -> String {
        let mut out = self.atoms.join("\t");
        if !self.atoms.is_empty() {
            out.push('\t');
        }
        out.push_str("value\n");
        for row in &self.rows {
            for (_, v) in row.assignment.iter() {
                out.push_str(if v { "1\t" } else { "0\t" });
            }
            out.push_str(if row.value { "1\n" } else { "0\n" });
        }
        out
    }

    pub fn all_true(&self) -> bool {
        self.rows.iter().all(|r| r.value)
    }
}

fn check_limit(atoms: &[String], limit: usize) -> Result<(), FormulaError> {
    if atoms.len() > limit {
        Err(FormulaError::AtomLimit { count: atoms.len(), limit })
    } else {
        Ok(())
    }
}

fn assignments(atoms: &[String]) -> impl Iterator<Item = TruthAssignment> + '_ {
    (0..1u64 << atoms.len()).map(move |i| TruthAssignment::from_index(atoms, i))
}

pub fn truth_table(f: &Formula) -> Result<TruthTable, FormulaError> {
    truth_table_with_limit(f, DEFAULT_ATOM_LIMIT)
}

pub fn truth_table_with_limit(f: &Formula, limit: usize) -> Result<TruthTable, FormulaError> {
    let atoms = atoms_of(f);
    check_limit(&atoms, limit)?;
    let rows = assignments(&atoms)
        .map(|g| {
            let value = eval_formula(f, &g)?;
            Ok(TableRow { assignment: g, value })
        })
        .collect::<Result<Vec<_>, FormulaError>>()?;
    Ok(TruthTable { atoms, rows })
}

/// First assignment, in table order, under which `f` evaluates to 0.
pub fn falsifying_assignment(f: &Formula, limit: usize) -> Result<Option<TruthAssignment>, FormulaError> {
    let atoms = atoms_of(f);
    check_limit(&atoms, limit)?;
    for g in assignments(&atoms) {
        if !eval_formula(f, &g)? {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

pub fn is_tautology(f: &Formula) -> Result<bool, FormulaError> {
    is_tautology_with_limit(f, DEFAULT_ATOM_LIMIT)
}

pub fn is_tautology_with_limit(f: &Formula, limit: usize) -> Result<bool, FormulaError> {
    Ok(falsifying_assignment(f, limit)?.is_none())
}

/// `f` when `g` makes it true, `(~f)` otherwise.
pub fn literal_form(f: &Formula, g: &TruthAssignment) -> Result<Formula, FormulaError> {
    if eval_formula(f, g)? {
        Ok(f.clone())
    } else {
        Ok(Formula::neg(f.clone()))
    }
}

/// Random formula over `atoms` with depth at most `max_depth`. Leaves are
/// picked uniformly; every atom need not occur.
pub fn random_formula<R: rand::Rng>(atoms: &[String], max_depth: usize, rng: &mut R) -> Formula {
    if max_depth == 0 || rng.random_bool(0.25) {
        return Formula::Atom(atoms[rng.random_range(0..atoms.len())].clone());
    }
    if rng.random_bool(0.5) {
        Formula::neg(random_formula(atoms, max_depth - 1, rng))
    } else {
        Formula::conj(random_formula(atoms, max_depth - 1, rng), random_formula(atoms, max_depth - 1, rng))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const REFERENCE_TAUTOLOGY: &str = "(~((~(A & (~C))) & ((A & B) & (~C))))";

    fn atom(name: &str) -> Formula {
        Formula::atom(name).unwrap()
    }

    fn assign(pairs: &[(&str, u8)]) -> TruthAssignment {
        pairs.iter().map(|&(a, v)| (a, v == 1)).collect()
    }

    #[test]
    fn parses_simple_conjunction() {
        assert_eq!(parse_formula("(A & B)").unwrap(), Formula::conj(atom("A"), atom("B")));
    }

    #[test]
    fn parses_second_table_formula() {
        let a = atom("A");
        let b = atom("B");
        let c = atom("C");
        let left = Formula::neg(Formula::conj(a.clone(), Formula::neg(c.clone())));
        let right = Formula::conj(Formula::conj(a, b), Formula::neg(c));
        let expected = Formula::neg(Formula::conj(left, right));
        let parsed = parse_formula(REFERENCE_TAUTOLOGY).unwrap();
        assert_eq!(parsed, expected);
        assert_eq!(render_formula(&parsed), REFERENCE_TAUTOLOGY);
    }

    #[test]
    fn rejects_dangling_operator() {
        let err = parse_formula("A &").unwrap_err();
        assert_eq!(
            err,
            FormulaError::Syntax { pos: 3, message: "expected a formula, found end of input".into() }
        );
    }

    #[test]
    fn rejects_unbalanced_and_empty() {
        assert!(matches!(parse_formula("(A & B"), Err(FormulaError::Syntax { pos: 6, .. })));
        assert!(matches!(parse_formula("()"), Err(FormulaError::Syntax { pos: 1, .. })));
        assert!(matches!(parse_formula("A B"), Err(FormulaError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_formula(""), Err(FormulaError::Syntax { pos: 0, .. })));
        assert!(matches!(parse_formula("(A & B))"), Err(FormulaError::Syntax { pos: 7, .. })));
        assert!(Formula::atom("1x").is_err());
        assert!(Formula::atom("").is_err());
    }

    #[test]
    fn lenient_input_precedence() {
        // ~ binds tighter, & associates left
        let f = parse_formula("~A & B & !C").unwrap();
        assert_eq!(render_formula(&f), "(((~A) & B) & (~C))");
        let g = parse_formula("~ ~ x_1").unwrap();
        assert_eq!(render_formula(&g), "(~(~x_1))");
    }

    #[test]
    fn renders_canonically() {
        assert_eq!(render_formula(&Formula::conj(atom("A"), atom("B"))), "(A & B)");
        assert_eq!(render_formula(&Formula::neg(atom("A"))), "(~A)");
    }

    #[test]
    fn atom_order() {
        assert_eq!(atoms_of(&parse_formula("(A & (~A))").unwrap()), vec!["A"]);
        assert_eq!(atoms_of(&parse_formula(REFERENCE_TAUTOLOGY).unwrap()), vec!["A", "B", "C"]);
        assert_eq!(atoms_of(&parse_formula("(B & (A & B))").unwrap()), vec!["A", "B"]);
        assert_eq!(atoms_of(&atom("Z")), vec!["Z"]);
    }

    #[test]
    fn evaluates_first_table_rows() {
        let ab = parse_formula("(A & B)").unwrap();
        assert!(!eval_formula(&ab, &assign(&[("A", 0), ("B", 1)])).unwrap());
        let na = parse_formula("(~A)").unwrap();
        assert!(!eval_formula(&na, &assign(&[("A", 1)])).unwrap());
        assert_eq!(
            eval_formula(&ab, &assign(&[("A", 1)])),
            Err(FormulaError::UnboundAtom("B".into()))
        );
    }

    #[test]
    fn first_truth_table() {
        // A B | (~A) (A & B), rows in table order
        let expected = [(0, 0, 1, 0), (0, 1, 1, 0), (1, 0, 0, 0), (1, 1, 0, 1)];
        let conj = truth_table(&parse_formula("(A & B)").unwrap()).unwrap();
        assert_eq!(conj.rows.len(), 4);
        for (row, &(a, b, not_a, and)) in conj.rows.iter().zip(&expected) {
            assert_eq!(row.assignment.get("A"), Some(a == 1));
            assert_eq!(row.assignment.get("B"), Some(b == 1));
            assert_eq!(row.value, and == 1);
            let neg = eval_formula(&parse_formula("(~A)").unwrap(), &row.assignment).unwrap();
            assert_eq!(neg, not_a == 1);
        }
    }

    #[test]
    fn second_truth_table_all_ones() {
        let f = parse_formula(REFERENCE_TAUTOLOGY).unwrap();
        let table = truth_table(&f).unwrap();
        assert_eq!(table.rows.len(), 8);
        assert!(table.all_true());
        let single = truth_table(&atom("A")).unwrap();
        assert_eq!(single.rows.iter().map(|r| r.value).collect::<Vec<_>>(), vec![false, true]);
    }

    #[test]
    fn tsv_export() {
        let table = truth_table(&parse_formula("(A & B)").unwrap()).unwrap();
        assert_eq!(table.to_tsv(), "A\tB\tvalue\n0\t0\t0\n0\t1\t0\n1\t0\t0\n1\t1\t1\n");
    }

    #[test]
    fn tautology_decisions() {
        assert!(is_tautology(&parse_formula("(~ (A & (~A)))").unwrap()).unwrap());
        assert!(is_tautology(&parse_formula(REFERENCE_TAUTOLOGY).unwrap()).unwrap());
        assert!(!is_tautology(&atom("A")).unwrap());
        let g = falsifying_assignment(&atom("A"), 20).unwrap().unwrap();
        assert_eq!(g.get("A"), Some(false));
    }

    #[test]
    fn atom_limit_enforced() {
        let wide = (0..5).map(|i| format!("X{i}")).collect::<Vec<_>>().join(" & ");
        let f = parse_formula(&wide).unwrap();
        assert_eq!(
            truth_table_with_limit(&f, 4).unwrap_err(),
            FormulaError::AtomLimit { count: 5, limit: 4 }
        );
        assert!(is_tautology_with_limit(&f, 4).is_err());
    }

    #[test]
    fn literal_forms() {
        let a = atom("A");
        assert_eq!(literal_form(&a, &assign(&[("A", 1)])).unwrap(), a);
        assert_eq!(literal_form(&a, &assign(&[("A", 0)])).unwrap(), Formula::neg(a.clone()));
        let ab = parse_formula("(A & B)").unwrap();
        assert_eq!(
            render_formula(&literal_form(&ab, &assign(&[("A", 1), ("B", 0)])).unwrap()),
            "(~(A & B))"
        );
    }
}

#[cfg(test)]
mod properties {
    use super::*;
    use proptest::prelude::*;

    fn formula_strategy(atoms: &'static [&'static str], depth: u32) -> impl Strategy<Value = Formula> {
        let leaf = proptest::sample::select(atoms).prop_map(|a| Formula::Atom(a.to_string()));
        leaf.prop_recursive(depth, 64, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::neg),
                (inner.clone(), inner).prop_map(|(l, r)| Formula::conj(l, r)),
            ]
        })
    }

    const ATOMS: &[&str] = &["A", "B", "C", "D1", "x_2"];

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn render_then_parse_is_identity(f in formula_strategy(ATOMS, 8)) {
            prop_assert!(f.depth() <= 8);
            prop_assert_eq!(parse_formula(&render_formula(&f)).unwrap(), f);
        }
    }

    proptest! {
        #[test]
        fn evaluation_is_boolean_homomorphism(
            f in formula_strategy(ATOMS, 5),
            h in formula_strategy(ATOMS, 5),
            index in 0u64..32,
        ) {
            let atoms: Vec<String> = ATOMS.iter().map(|a| a.to_string()).collect();
            let g = TruthAssignment::from_index(&atoms, index);
            let (vf, vh) = (eval_formula(&f, &g).unwrap(), eval_formula(&h, &g).unwrap());
            prop_assert_eq!(eval_formula(&Formula::neg(f.clone()), &g).unwrap(), !vf);
            prop_assert_eq!(eval_formula(&Formula::conj(f.clone(), h), &g).unwrap(), vf && vh);
            prop_assert_eq!(eval_formula(&Formula::conj(f.clone(), f.clone()), &g).unwrap(), vf);
            prop_assert_eq!(eval_formula(&Formula::neg(Formula::neg(f.clone())), &g).unwrap(), vf);
            // the literal form is always true under its own assignment
            prop_assert!(eval_formula(&literal_form(&f, &g).unwrap(), &g).unwrap());
        }

        #[test]
        fn table_agrees_with_tautology_check(f in formula_strategy(&["A", "B", "C"], 6)) {
            let table = truth_table(&f).unwrap();
            prop_assert_eq!(table.rows.len(), 1 << table.atoms.len());
            prop_assert_eq!(table.all_true(), is_tautology(&f).unwrap());
            for row in &table.rows {
                prop_assert_eq!(row.value, eval_formula(&f, &row.assignment).unwrap());
            }
        }
    }
}
