//! Event algebra over a finite outcome space, B-functions given by exact
//! rational weights, and the Bernoulli test-series machinery built on them.
//!
//! An outcome is a row assigning a truth value to every atomic event of the
//! model. A [`ProbModel`] puts a nonnegative weight on each row (the weights
//! sum to one) and `b(E)` is the total weight of the rows where `E` occurs.
//! Two events are equal when they occur on the same rows.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use itertools::Itertools;
use num::{BigRational, One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use thiserror::Error;

use crate::rational::{binomial, ceil_to_i64, floor_to_i64, is_probability, parse_rational};
use crate::report::CheckReport;

/// Largest number of atomic events a model may enumerate.
pub const MAX_MODEL_ATOMS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EventError {
    #[error("unknown atomic event `{0}`")]
    UnknownAtom(String),
    #[error("atomic event `{0}` listed twice")]
    DuplicateAtom(String),
    #[error("a model holds at most {MAX_MODEL_ATOMS} atomic events, got {0}")]
    TooManyAtoms(usize),
    #[error("`{0}` is not a valid atomic event name")]
    BadAtomName(String),
    #[error("probability {0} is outside [0, 1]")]
    ProbabilityOutOfRange(BigRational),
    #[error("negative weight {0}")]
    NegativeWeight(BigRational),
    #[error("weights sum to {0}, not 1")]
    WeightSum(BigRational),
    #[error("bad outcome row `{0}`")]
    BadRow(String),
    #[error("outcome row `{0}` listed twice")]
    DuplicateRow(String),
    #[error("invalid range: {0}")]
    Range(String),
    #[error("model is not degenerate: a row has weight {0}")]
    NotDegenerate(BigRational),
    #[error("model file: {0}")]
    ModelFile(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum EventExpr {
    Atom(String),
    Product(Box<EventExpr>, Box<EventExpr>),
    Complement(Box<EventExpr>),
    /// Shorthand for `#((#A) * (#B))`.
    Sum(Box<EventExpr>, Box<EventExpr>),
    True,
    False,
}

impl EventExpr {
    pub fn atom(name: impl Into<String>) -> Self {
        EventExpr::Atom(name.into())
    }

    pub fn product(a: EventExpr, b: EventExpr) -> Self {
        EventExpr::Product(Box::new(a), Box::new(b))
    }

    pub fn complement(a: EventExpr) -> Self {
        EventExpr::Complement(Box::new(a))
    }

    pub fn sum(a: EventExpr, b: EventExpr) -> Self {
        EventExpr::Sum(Box::new(a), Box::new(b))
    }

    /// Left-associated product; `T` for no factors.
    pub fn product_all(items: impl IntoIterator<Item = EventExpr>) -> Self {
        items.into_iter().reduce(EventExpr::product).unwrap_or(EventExpr::True)
    }

    /// Left-associated sum; `F` for no terms.
    pub fn sum_all(items: impl IntoIterator<Item = EventExpr>) -> Self {
        items.into_iter().reduce(EventExpr::sum).unwrap_or(EventExpr::False)
    }

    /// Replaces every sum by its definition in terms of product and complement.
    pub fn desugar(&self) -> EventExpr {
        match self {
            EventExpr::Atom(_) | EventExpr::True | EventExpr::False => self.clone(),
            EventExpr::Product(a, b) => EventExpr::product(a.desugar(), b.desugar()),
            EventExpr::Complement(a) => EventExpr::complement(a.desugar()),
            EventExpr::Sum(a, b) => EventExpr::complement(EventExpr::product(
                EventExpr::complement(a.desugar()),
                EventExpr::complement(b.desugar()),
            )),
        }
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        fn walk(e: &EventExpr, out: &mut BTreeSet<String>) {
            match e {
                EventExpr::Atom(n) => {
                    out.insert(n.clone());
                }
                EventExpr::Product(a, b) | EventExpr::Sum(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                EventExpr::Complement(a) => walk(a, out),
                EventExpr::True | EventExpr::False => {}
            }
        }
        let mut out = BTreeSet::new();
        walk(self, &mut out);
        out
    }

    fn fmt_chain(&self, f: &mut fmt::Formatter<'_>, product: bool) -> fmt::Result {
        match (self, product) {
            (EventExpr::Product(a, b), true) | (EventExpr::Sum(a, b), false) => {
                a.fmt_chain(f, product)?;
                f.write_str(if product { " * " } else { " + " })?;
                b.fmt_chain(f, product)
            }
            _ => write!(f, "{self}"),
        }
    }
}

impl fmt::Display for EventExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EventExpr::Atom(n) => f.write_str(n),
            EventExpr::True => f.write_str("T"),
            EventExpr::False => f.write_str("F"),
            EventExpr::Complement(a) => write!(f, "(#{a})"),
            EventExpr::Product(..) => {
                f.write_str("(")?;
                self.fmt_chain(f, true)?;
                f.write_str(")")
            }
            EventExpr::Sum(..) => {
                f.write_str("(")?;
                self.fmt_chain(f, false)?;
                f.write_str(")")
            }
        }
    }
}

/// Event with atoms resolved to column indices; sums already desugared.
enum Compiled {
    Atom(usize),
    And(Box<Compiled>, Box<Compiled>),
    Not(Box<Compiled>),
    Const(bool),
}

impl Compiled {
    fn occurs(&self, row: &[bool]) -> bool {
        match self {
            Compiled::Atom(i) => row[*i],
            Compiled::And(a, b) => a.occurs(row) && b.occurs(row),
            Compiled::Not(a) => !a.occurs(row),
            Compiled::Const(v) => *v,
        }
    }
}

/// Finite outcome space with exact weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbModel {
    atoms: Vec<String>,
    index: HashMap<String, usize>,
    weights: Vec<BigRational>,
    marginals: Option<Vec<BigRational>>,
}

fn valid_atom_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn index_atoms(atoms: &[String]) -> Result<HashMap<String, usize>, EventError> {
    if atoms.len() > MAX_MODEL_ATOMS {
        return Err(EventError::TooManyAtoms(atoms.len()));
    }
    let mut index = HashMap::new();
    for (i, a) in atoms.iter().enumerate() {
        if !valid_atom_name(a) {
            return Err(EventError::BadAtomName(a.clone()));
        }
        if index.insert(a.clone(), i).is_some() {
            return Err(EventError::DuplicateAtom(a.clone()));
        }
    }
    Ok(index)
}

impl ProbModel {
    /// Product measure: atomic events are mutually independent with the
    /// given probabilities.
    pub fn product(atoms: impl IntoIterator<Item = (String, BigRational)>) -> Result<Self, EventError> {
        let (names, probs): (Vec<String>, Vec<BigRational>) = atoms.into_iter().unzip();
        let index = index_atoms(&names)?;
        if let Some(bad) = probs.iter().find(|p| !is_probability(p)) {
            return Err(EventError::ProbabilityOutOfRange(bad.clone()));
        }
        let m = names.len();
        let weights = (0..1usize << m)
            .map(|row| {
                (0..m)
                    .map(|j| if row_bit(row, m, j) { probs[j].clone() } else { BigRational::one() - &probs[j] })
                    .fold(BigRational::one(), |acc, w| acc * w)
            })
            .collect();
        Ok(ProbModel { atoms: names, index, weights, marginals: Some(probs) })
    }

    /// Arbitrary joint distribution. Rows are given as bit vectors in atom
    /// order; rows not listed get weight zero.
    pub fn joint(
        atoms: Vec<String>,
        rows: impl IntoIterator<Item = (Vec<bool>, BigRational)>,
    ) -> Result<Self, EventError> {
        let index = index_atoms(&atoms)?;
        let m = atoms.len();
        let mut weights = vec![BigRational::zero(); 1 << m];
        let mut seen = BTreeSet::new();
        for (bits, w) in rows {
            let label: String = bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
            if bits.len() != m {
                return Err(EventError::BadRow(label));
            }
            if w.is_negative() {
                return Err(EventError::NegativeWeight(w));
            }
            let row = bits.iter().fold(0usize, |acc, &b| (acc << 1) | usize::from(b));
            if !seen.insert(row) {
                return Err(EventError::DuplicateRow(label));
            }
            weights[row] = w;
        }
        let total: BigRational = weights.iter().sum();
        if !total.is_one() {
            return Err(EventError::WeightSum(total));
        }
        Ok(ProbModel { atoms, index, weights, marginals: None })
    }

    /// Reads the JSON model file: either
    /// `{"atoms": [{"name": "A", "p": "1/2"}, ...]}` for a product measure or
    /// `{"atoms": ["A", "B"], "joint": [{"bits": "10", "weight": "1/4"}, ...]}`.
    pub fn from_json(text: &str) -> Result<Self, EventError> {
        let file: ModelFile = serde_json::from_str(text).map_err(|e| EventError::ModelFile(e.to_string()))?;
        let rational = |r: RationalText| -> Result<BigRational, EventError> {
            match r {
                RationalText::Int(i) => Ok(BigRational::from_integer(i.into())),
                RationalText::Text(s) => parse_rational(&s).map_err(|e| EventError::ModelFile(e.to_string())),
            }
        };
        match file {
            ModelFile::Joint { atoms, joint } => {
                let rows = joint
                    .into_iter()
                    .map(|row| {
                        let bits = row
                            .bits
                            .chars()
                            .map(|c| match c {
                                '0' => Ok(false),
                                '1' => Ok(true),
                                _ => Err(EventError::BadRow(row.bits.clone())),
                            })
                            .collect::<Result<Vec<_>, _>>()?;
                        Ok((bits, rational(row.weight)?))
                    })
                    .collect::<Result<Vec<_>, EventError>>()?;
                ProbModel::joint(atoms, rows)
            }
            ModelFile::Product { atoms } => {
                let atoms = atoms
                    .into_iter()
                    .map(|a| Ok((a.name, rational(a.p)?)))
                    .collect::<Result<Vec<_>, EventError>>()?;
                ProbModel::product(atoms)
            }
        }
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    pub fn row_count(&self) -> usize {
        self.weights.len()
    }

    /// Per-atom probabilities when the model was built as a product measure.
    pub fn marginals(&self) -> Option<&[BigRational]> {
        self.marginals.as_deref()
    }

    pub fn is_independent(&self) -> bool {
        self.marginals.is_some()
    }

    pub fn is_degenerate(&self) -> bool {
        self.weights.iter().all(|w| w.is_zero() || w.is_one())
    }

    /// Truth values of the atoms on outcome `row`; the first atom is the most
    /// significant bit.
    pub fn row_values(&self, row: usize) -> Vec<bool> {
        let m = self.atoms.len();
        (0..m).map(|j| row_bit(row, m, j)).collect()
    }

    fn compile(&self, e: &EventExpr) -> Result<Compiled, EventError> {
        Ok(match e {
            EventExpr::Atom(n) => {
                Compiled::Atom(*self.index.get(n).ok_or_else(|| EventError::UnknownAtom(n.clone()))?)
            }
            EventExpr::True => Compiled::Const(true),
            EventExpr::False => Compiled::Const(false),
            EventExpr::Product(a, b) => Compiled::And(Box::new(self.compile(a)?), Box::new(self.compile(b)?)),
            EventExpr::Complement(a) => Compiled::Not(Box::new(self.compile(a)?)),
            EventExpr::Sum(a, b) => Compiled::Not(Box::new(Compiled::And(
                Box::new(Compiled::Not(Box::new(self.compile(a)?))),
                Box::new(Compiled::Not(Box::new(self.compile(b)?))),
            ))),
        })
    }

    /// For each outcome row, whether `e` occurs on it.
    pub fn occurrence(&self, e: &EventExpr) -> Result<Vec<bool>, EventError> {
        let c = self.compile(e)?;
        let mut row = vec![false; self.atoms.len()];
        Ok((0..self.row_count())
            .map(|r| {
                fill_row(&mut row, r);
                c.occurs(&row)
            })
            .collect())
    }

    /// Event equality: same occurrence on every outcome.
    pub fn same_event(&self, a: &EventExpr, b: &EventExpr) -> Result<bool, EventError> {
        Ok(self.occurrence(a)? == self.occurrence(b)?)
    }
}

fn row_bit(row: usize, m: usize, j: usize) -> bool {
    (row >> (m - 1 - j)) & 1 == 1
}

fn fill_row(row: &mut [bool], r: usize) {
    let m = row.len();
    for (j, slot) in row.iter_mut().enumerate() {
        *slot = row_bit(r, m, j);
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RationalText {
    Int(i64),
    Text(String),
}

#[derive(Deserialize)]
struct AtomSpec {
    name: String,
    p: RationalText,
}

#[derive(Deserialize)]
struct RowSpec {
    bits: String,
    weight: RationalText,
}

#[derive(Deserialize)]
#[serde(untagged, deny_unknown_fields)]
enum ModelFile {
    Joint { atoms: Vec<String>, joint: Vec<RowSpec> },
    Product { atoms: Vec<AtomSpec> },
}

/// Total weight of the outcomes on which `e` occurs.
pub fn b_eval(model: &ProbModel, e: &EventExpr) -> Result<BigRational, EventError> {
    let occurs = model.occurrence(e)?;
    Ok(model
        .weights
        .iter()
        .zip(occurs)
        .filter(|(w, hit)| *hit && !w.is_zero())
        .map(|(w, _)| w)
        .sum())
}

/// Random event over `atoms`, at most `depth` operators deep.
pub fn random_event<R: Rng>(atoms: &[String], depth: u32, rng: &mut R) -> EventExpr {
    if depth == 0 || rng.random_bool(0.3) {
        return match rng.random_range(0..20) {
            0 => EventExpr::True,
            1 => EventExpr::False,
            _ => EventExpr::Atom(atoms[rng.random_range(0..atoms.len())].clone()),
        };
    }
    match rng.random_range(0..3) {
        0 => EventExpr::product(random_event(atoms, depth - 1, rng), random_event(atoms, depth - 1, rng)),
        1 => EventExpr::complement(random_event(atoms, depth - 1, rng)),
        _ => EventExpr::sum(random_event(atoms, depth - 1, rng), random_event(atoms, depth - 1, rng)),
    }
}

/// Joint model with small random integer row weights, normalized. Some rows
/// get weight zero, so atoms are in general dependent.
pub fn random_joint_model<R: Rng>(atoms: Vec<String>, rng: &mut R) -> Result<ProbModel, EventError> {
    if atoms.len() > MAX_MODEL_ATOMS {
        return Err(EventError::TooManyAtoms(atoms.len()));
    }
    let m = atoms.len();
    let mut raw: Vec<u64> = (0..1usize << m).map(|_| rng.random_range(0..=9)).collect();
    if raw.iter().all(|&w| w == 0) {
        raw[0] = 1;
    }
    let total: u64 = raw.iter().sum();
    let rows = raw.into_iter().enumerate().map(|(row, w)| {
        let bits = (0..m).map(|j| row_bit(row, m, j)).collect();
        (bits, BigRational::new(w.into(), total.into()))
    });
    ProbModel::joint(atoms, rows)
}

/// Checks the B-function identities on `trials` random triples of events:
/// the defining equation, monotonicity, `b(T) = 1`, `b(F) = 0`, complements,
/// both distributive expansions and their equality, the addition formula,
/// additivity for antithetical events, independence transfer to complements,
/// and annihilation `b(A * #A * C) = 0`.
pub fn verify_b_identities(model: &ProbModel, trials: usize, seed: u64) -> Result<CheckReport, EventError> {
    if model.atoms().is_empty() {
        return Err(EventError::Range("model has no atomic events".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = |e: &EventExpr| b_eval(model, e);
    let one = BigRational::one();
    let mut report = CheckReport::default();

    report.record("p2", b(&EventExpr::True)? == one, || "b(T) != 1".into());
    report.record("p4", b(&EventExpr::False)?.is_zero(), || "b(F) != 0".into());

    for _ in 0..trials {
        let atoms = model.atoms();
        let ea = random_event(atoms, 3, &mut rng);
        let eb = random_event(atoms, 3, &mut rng);
        let ec = random_event(atoms, 3, &mut rng);
        let show = || format!("A={ea} B={eb} C={ec}");
        let (ba, bb, bc) = (b(&ea)?, b(&eb)?, b(&ec)?);
        let ab = EventExpr::product(ea.clone(), eb.clone());
        let ac = EventExpr::product(ea.clone(), ec.clone());
        let bc_ = EventExpr::product(eb.clone(), ec.clone());
        let abc = EventExpr::product(ab.clone(), ec.clone());
        let (b_ab, b_ac, b_bc, b_abc) = (b(&ab)?, b(&ac)?, b(&bc_)?, b(&abc)?);

        let a_not_b = EventExpr::product(ea.clone(), EventExpr::complement(eb.clone()));
        report.record("b-def", &b_ab + b(&a_not_b)? == ba, show);
        report.record("p1", b_ab <= ba, show);
        report.record("p3", &bb + b(&EventExpr::complement(eb.clone()))? == one, show);

        let expansion = &b_ab + &b_ac - &b_abc;
        let a_times_sum = b(&EventExpr::product(ea.clone(), EventExpr::sum(eb.clone(), ec.clone())))?;
        let sum_of_products = b(&EventExpr::sum(ab.clone(), ac.clone()))?;
        report.record("p5", a_times_sum == expansion, show);
        report.record("p6", sum_of_products == expansion, show);
        report.record("p7", a_times_sum == sum_of_products, show);

        let b_sum = b(&EventExpr::sum(eb.clone(), ec.clone()))?;
        report.record("p8", b_sum == &bb + &bc - &b_bc, show);

        // p9 on an always-antithetical pair, and on the random pair when it qualifies
        let anti = EventExpr::product(EventExpr::complement(eb.clone()), ec.clone());
        let b_anti = b(&anti)?;
        report.record("p9", b(&EventExpr::sum(eb.clone(), anti.clone()))? == &bb + &b_anti, show);
        if b_bc.is_zero() {
            report.record("p9", b_sum == &bb + &bc, show);
        }

        let not_c = EventExpr::complement(ec.clone());
        if b_bc == &bb * &bc {
            report.record("p10", b(&EventExpr::product(eb.clone(), not_c.clone()))? == &bb * b(&not_c)?, show);
        }
        if let Some((x, y)) = independent_pair(model, &mut rng) {
            let (bx, by) = (b(&x)?, b(&y)?);
            let not_y = EventExpr::complement(y.clone());
            let pair = || format!("B={x} C={y}");
            report.record("p10", b(&EventExpr::product(x.clone(), y.clone()))? == &bx * &by, pair);
            report.record("p10", b(&EventExpr::product(x.clone(), not_y.clone()))? == &bx * b(&not_y)?, pair);
        }

        let annihilated = EventExpr::product(EventExpr::product(ea.clone(), EventExpr::complement(ea.clone())), ec.clone());
        report.record("p11", b(&annihilated)?.is_zero(), show);
    }
    Ok(report)
}

/// Two events over disjoint atom sets of a product model; independent by
/// construction.
fn independent_pair<R: Rng>(model: &ProbModel, rng: &mut R) -> Option<(EventExpr, EventExpr)> {
    let atoms = model.atoms();
    if !model.is_independent() || atoms.len() < 2 {
        return None;
    }
    let split = rng.random_range(1..atoms.len());
    let mut shuffled = atoms.to_vec();
    for i in (1..shuffled.len()).rev() {
        shuffled.swap(i, rng.random_range(0..=i));
    }
    let (left, right) = shuffled.split_at(split);
    Some((random_event(left, 3, rng), random_event(right, 3, rng)))
}

/// On a model whose every row weighs 0 or 1, checks that `b` behaves as a
/// Boolean function: values in {0, 1}, `b(#A) = 1 - b(A)` and
/// `b(A * B) = b(A) b(B)`.
pub fn boolean_restriction_check(model: &ProbModel, trials: usize, seed: u64) -> Result<CheckReport, EventError> {
    if let Some(w) = model.weights().iter().find(|w| !(w.is_zero() || w.is_one())) {
        return Err(EventError::NotDegenerate(w.clone()));
    }
    if model.atoms().is_empty() {
        return Err(EventError::Range("model has no atomic events".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CheckReport::default();
    for _ in 0..trials {
        let ea = random_event(model.atoms(), 3, &mut rng);
        let eb = random_event(model.atoms(), 3, &mut rng);
        let show = || format!("A={ea} B={eb}");
        let ba = b_eval(model, &ea)?;
        let bb = b_eval(model, &eb)?;
        report.record("two-valued", (ba.is_zero() || ba.is_one()) && (bb.is_zero() || bb.is_one()), show);
        report.record("complement", b_eval(model, &EventExpr::complement(ea.clone()))? == BigRational::one() - &ba, show);
        report.record("product", b_eval(model, &EventExpr::product(ea.clone(), eb.clone()))? == &ba * &bb, show);
    }
    Ok(report)
}

/// `r` independent trials of one event, each occurring with probability `p`.
/// Trial `i` (1-based) is the atomic event named `<base><i>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestScheme {
    base: String,
    trials: usize,
    p: BigRational,
}

impl TestScheme {
    pub fn new(base: impl Into<String>, trials: usize, p: BigRational) -> Result<Self, EventError> {
        let base = base.into();
        if !valid_atom_name(&base) {
            return Err(EventError::BadAtomName(base));
        }
        if trials == 0 {
            return Err(EventError::Range("a test series needs at least one trial".into()));
        }
        if !is_probability(&p) {
            return Err(EventError::ProbabilityOutOfRange(p));
        }
        Ok(TestScheme { base, trials, p })
    }

    pub fn trials(&self) -> usize {
        self.trials
    }

    pub fn p(&self) -> &BigRational {
        &self.p
    }

    pub fn trial(&self, i: usize) -> EventExpr {
        EventExpr::Atom(format!("{}{i}", self.base))
    }

    /// Product measure over the first `r` trials.
    pub fn model(&self, r: usize) -> Result<ProbModel, EventError> {
        self.check_range(r, 0)?;
        ProbModel::product((1..=r).map(|i| (format!("{}{i}", self.base), self.p.clone())))
    }

    fn check_range(&self, r: usize, k: usize) -> Result<(), EventError> {
        if r == 0 || r > self.trials {
            return Err(EventError::Range(format!("range r={r} outside 1..={}", self.trials)));
        }
        if k > r {
            return Err(EventError::Range(format!("k={k} exceeds r={r}")));
        }
        Ok(())
    }
}

/// All products of trials `1..=r`, each trial either as is or complemented,
/// with exactly `k` uncomplemented. Ordered lexicographically by the set of
/// uncomplemented positions.
pub fn series_members(scheme: &TestScheme, r: usize, k: usize) -> Result<Vec<EventExpr>, EventError> {
    scheme.check_range(r, k)?;
    Ok((1..=r)
        .combinations(k)
        .map(|hits| {
            let mut hits = hits.into_iter().peekable();
            EventExpr::product_all((1..=r).map(|i| {
                if hits.peek() == Some(&i) {
                    hits.next();
                    scheme.trial(i)
                } else {
                    EventExpr::complement(scheme.trial(i))
                }
            }))
        })
        .collect())
}

/// The event "exactly `k` of the first `r` trials occur": the sum of
/// [`series_members`].
pub fn t_sum(scheme: &TestScheme, r: usize, k: usize) -> Result<EventExpr, EventError> {
    Ok(EventExpr::sum_all(series_members(scheme, r, k)?))
}

fn check_pmf_args(r: u64, k: u64, p: &BigRational) -> Result<(), EventError> {
    if k > r {
        return Err(EventError::Range(format!("k={k} exceeds r={r}")));
    }
    if !is_probability(p) {
        return Err(EventError::ProbabilityOutOfRange(p.clone()));
    }
    Ok(())
}

fn pmf_unchecked(r: u64, k: u64, p: &BigRational) -> BigRational {
    let q = BigRational::one() - p;
    BigRational::from_integer(binomial(r, k)) * num::pow(p.clone(), k as usize) * num::pow(q, (r - k) as usize)
}

/// `r! / (k! (r-k)!) p^k (1-p)^(r-k)`.
pub fn bernoulli_pmf(r: u64, k: u64, p: &BigRational) -> Result<BigRational, EventError> {
    check_pmf_args(r, k, p)?;
    Ok(pmf_unchecked(r, k, p))
}

/// Integer success counts `k..=l` covered by real bounds `a..=b` within `0..=r`,
/// with `k = ceil(a)` and `l = floor(b)`. Bounds outside `[0, r]` are clipped
/// and reported in the returned warnings. `None` when the range is empty.
pub fn count_range(r: u64, a: &BigRational, b: &BigRational) -> Result<(Option<(u64, u64)>, Vec<String>), EventError> {
    if a > b {
        return Err(EventError::Range(format!("lower bound {a} exceeds upper bound {b}")));
    }
    let mut warnings = Vec::new();
    let r_i = r as i64;
    let mut k = ceil_to_i64(a).ok_or_else(|| EventError::Range(format!("bound {a} too large")))?;
    let mut l = floor_to_i64(b).ok_or_else(|| EventError::Range(format!("bound {b} too large")))?;
    if k < 0 {
        warnings.push(format!("lower bound {a} clipped to 0"));
        k = 0;
    }
    if l > r_i {
        warnings.push(format!("upper bound {b} clipped to {r}"));
        l = r_i;
    }
    if k > l {
        return Ok((None, warnings));
    }
    Ok((Some((k as u64, l as u64)), warnings))
}

/// Result of [`f_event`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RangeEvent {
    pub event: EventExpr,
    /// Integer success-count bounds after rounding, or `None` if empty.
    pub counts: Option<(u64, u64)>,
    pub warnings: Vec<String>,
}

/// The event "between `a` and `b` of the first `r` trials occur", built as
/// `t(r,k) + t(r,k+1) + ... + t(r,l)` for `k = ceil(a)`, `l = floor(b)`.
/// An empty count range gives `F`.
pub fn f_event(scheme: &TestScheme, r: usize, a: &BigRational, b: &BigRational) -> Result<RangeEvent, EventError> {
    scheme.check_range(r, 0)?;
    let (counts, warnings) = count_range(r as u64, a, b)?;
    let event = match counts {
        None => EventExpr::False,
        Some((k, l)) => {
            let mut acc = t_sum(scheme, r, k as usize)?;
            for j in k + 1..=l {
                acc = EventExpr::sum(acc, t_sum(scheme, r, j as usize)?);
            }
            acc
        }
    };
    Ok(RangeEvent { event, counts, warnings })
}

/// Exact `sum over integer k in [a, b] ∩ [0, r]` of the Bernoulli pmf.
pub fn binomial_tail(r: u64, a: &BigRational, b: &BigRational, p: &BigRational) -> Result<BigRational, EventError> {
    check_pmf_args(r, 0, p)?;
    let (counts, _) = count_range(r, a, b)?;
    Ok(match counts {
        None => BigRational::zero(),
        Some((k, l)) => (k..=l).map(|j| pmf_unchecked(r, j, p)).sum(),
    })
}

/// `1 - p(1-p) / (r eps^2)`; may be negative.
pub fn lln_bound(r: u64, p: &BigRational, eps: &BigRational) -> Result<BigRational, EventError> {
    if r == 0 {
        return Err(EventError::Range("r must be at least 1".into()));
    }
    if !is_probability(p) {
        return Err(EventError::ProbabilityOutOfRange(p.clone()));
    }
    if !eps.is_positive() {
        return Err(EventError::Range(format!("eps must be positive, got {eps}")));
    }
    let variance = p * (BigRational::one() - p);
    Ok(BigRational::one() - variance / (BigRational::from_integer(r.into()) * eps * eps))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarianceCheck {
    /// `sum_k (k - rp)^2 pmf(r, k, p)`
    pub weighted_sum: BigRational,
    /// `r p (1 - p)`
    pub closed_form: BigRational,
}

impl VarianceCheck {
    pub fn holds(&self) -> bool {
        self.weighted_sum == self.closed_form
    }
}

/// Compares the second central moment of the binomial distribution with
/// `r p (1-p)`. `r = 0` is admitted here (both sides are 0).
pub fn variance_identity_check(r: u64, p: &BigRational) -> Result<VarianceCheck, EventError> {
    check_pmf_args(r, 0, p)?;
    let r_q = BigRational::from_integer(r.into());
    let mean = &r_q * p;
    let weighted_sum = (0..=r)
        .map(|k| {
            let d = BigRational::from_integer(k.into()) - &mean;
            &d * &d * pmf_unchecked(r, k, p)
        })
        .sum();
    let closed_form = r_q * p * (BigRational::one() - p);
    Ok(VarianceCheck { weighted_sum, closed_form })
}

/// Number of occurring trials among the first `r` atoms of an outcome row.
pub fn success_count(row: &[bool], r: usize) -> usize {
    row.iter().take(r).filter(|&&v| v).count()
}

/// Relative frequency `success_count / r` of an outcome row.
pub fn frequency(row: &[bool], r: usize) -> BigRational {
    BigRational::new(success_count(row, r).into(), r.into())
}
