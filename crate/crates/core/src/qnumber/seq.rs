use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::{BigRational, Signed, Zero};

use super::index_set::IndexSet;
use super::poly::Poly;
use super::QError;

/// Symbolic real sequence indexed by `n = 1, 2, 3, ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SeqReal {
    Constant(BigRational),
    /// `n ↦ n`
    Identity,
    /// `num(n) / den(n)`. Where `den(n) = 0` the value is taken as 0.
    RationalFunction { num: Poly, den: Poly },
    /// `base` with finitely many values replaced.
    PiecewiseEventual { base: Box<SeqReal>, overrides: BTreeMap<u64, BigRational> },
}

/// `num / den` plus point overrides. Every index where `den` vanishes or the
/// value deviates from `num / den` is in `overrides` after arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Canonical {
    pub num: Poly,
    pub den: Poly,
    pub overrides: BTreeMap<u64, BigRational>,
}

impl Canonical {
    fn base_at(&self, n: u64) -> BigRational {
        let d = self.den.eval(n);
        if d.is_zero() {
            BigRational::zero()
        } else {
            self.num.eval(n) / d
        }
    }

    pub fn at(&self, n: u64) -> BigRational {
        self.overrides.get(&n).cloned().unwrap_or_else(|| self.base_at(n))
    }

    /// Indices where the value is not given by a nonvanishing `num / den`.
    fn exceptional(&self) -> Result<BTreeSet<u64>, QError> {
        let mut out: BTreeSet<u64> = self.overrides.keys().copied().collect();
        out.extend(self.den.positive_integer_roots()?);
        Ok(out)
    }

    fn into_seq(self) -> SeqReal {
        let base = if self.den == Poly::one() {
            match self.num.degree() {
                None | Some(0) => SeqReal::Constant(self.num.leading()),
                Some(1) if self.num == Poly::identity() => SeqReal::Identity,
                _ => SeqReal::RationalFunction { num: self.num, den: self.den },
            }
        } else {
            SeqReal::RationalFunction { num: self.num, den: self.den }
        };
        if self.overrides.is_empty() {
            base
        } else {
            SeqReal::PiecewiseEventual { base: Box::new(base), overrides: self.overrides }
        }
    }
}

impl SeqReal {
    pub fn constant(c: BigRational) -> Self {
        SeqReal::Constant(c)
    }

    pub fn rational_function(num: Poly, den: Poly) -> Result<Self, QError> {
        if den.is_zero() {
            return Err(QError::ZeroDenominator);
        }
        Ok(SeqReal::RationalFunction { num, den })
    }

    /// `a / n`
    pub fn reciprocal(a: BigRational) -> Self {
        SeqReal::RationalFunction { num: Poly::constant(a), den: Poly::identity() }
    }

    pub fn with_override(self, n: u64, value: BigRational) -> Result<Self, QError> {
        if n == 0 {
            return Err(QError::ZeroIndex);
        }
        Ok(match self {
            SeqReal::PiecewiseEventual { base, mut overrides } => {
                overrides.insert(n, value);
                SeqReal::PiecewiseEventual { base, overrides }
            }
            other => SeqReal::PiecewiseEventual { base: Box::new(other), overrides: [(n, value)].into() },
        })
    }

    pub fn canonical(&self) -> Canonical {
        match self {
            SeqReal::Constant(c) => Canonical { num: Poly::constant(c.clone()), den: Poly::one(), overrides: BTreeMap::new() },
            SeqReal::Identity => Canonical { num: Poly::identity(), den: Poly::one(), overrides: BTreeMap::new() },
            SeqReal::RationalFunction { num, den } => {
                Canonical { num: num.clone(), den: den.clone(), overrides: BTreeMap::new() }
            }
            SeqReal::PiecewiseEventual { base, overrides } => {
                let mut c = base.canonical();
                c.overrides.extend(overrides.iter().filter(|(&n, _)| n > 0).map(|(n, v)| (*n, v.clone())));
                c
            }
        }
    }

    pub fn at(&self, n: u64) -> BigRational {
        self.canonical().at(n)
    }
}

/// Human-readable form, e.g. `(1)/(n)` or `5 except n=3: 7`.
pub fn describe(s: &SeqReal) -> String {
    let c = s.canonical();
    let mut out = if c.den == Poly::one() {
        c.num.to_string()
    } else {
        format!("({})/({})", c.num, c.den)
    };
    if !c.overrides.is_empty() {
        let parts: Vec<String> = c.overrides.iter().map(|(n, v)| format!("n={n}: {v}")).collect();
        out.push_str(&format!(" except {}", parts.join(", ")));
    }
    out
}

fn write_coeffs(f: &mut fmt::Formatter<'_>, p: &Poly) -> fmt::Result {
    if p.is_zero() {
        return f.write_str(" 0");
    }
    p.coeffs().iter().try_for_each(|c| write!(f, " {c}"))
}

/// Prefix notation accepted by the sequence-expression parser.
impl fmt::Display for SeqReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqReal::Constant(c) => write!(f, "const {c}"),
            SeqReal::Identity => f.write_str("id"),
            SeqReal::RationalFunction { num, den } => {
                f.write_str("ratfn")?;
                write_coeffs(f, num)?;
                f.write_str(" /")?;
                write_coeffs(f, den)
            }
            SeqReal::PiecewiseEventual { base, overrides } => {
                // innermost override first so that re-parsing rebuilds the same map
                for (n, v) in overrides.iter().rev() {
                    write!(f, "at {n} {v} ")?;
                }
                write!(f, "{base}")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

impl Op {
    fn apply(self, a: &BigRational, b: &BigRational) -> BigRational {
        match self {
            Op::Add => a + b,
            Op::Sub => a - b,
            Op::Mul => a * b,
            Op::Div if b.is_zero() => BigRational::zero(),
            Op::Div => a / b,
        }
    }
}

/// Q-number: a sequence standing for its class under agreement on a
/// density-one index set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QNumber(pub SeqReal);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    /// Eventually equal to the given constant.
    Standard(BigRational),
    /// Tends to 0 without being eventually 0.
    Infinitesimal,
    /// Tends to ±infinity.
    InfinitelyLarge { positive: bool },
    /// Finite nonzero limit, not eventually constant.
    FiniteNonstandard { limit: BigRational },
    /// No limit. Unreachable for rational-function representatives.
    Mixed,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Standard(c) => write!(f, "standard({c})"),
            Classification::Infinitesimal => f.write_str("infinitesimal"),
            Classification::InfinitelyLarge { positive: true } => f.write_str("infinitely-large(+)"),
            Classification::InfinitelyLarge { positive: false } => f.write_str("infinitely-large(-)"),
            Classification::FiniteNonstandard { limit } => write!(f, "finite-nonstandard(limit {limit})"),
            Classification::Mixed => f.write_str("mixed"),
        }
    }
}

impl QNumber {
    pub fn standard(c: BigRational) -> Self {
        QNumber(SeqReal::Constant(c))
    }

    pub fn identity() -> Self {
        QNumber(SeqReal::Identity)
    }

    pub fn seq(&self) -> &SeqReal {
        &self.0
    }

    fn combine(&self, other: &QNumber, op: Op) -> Result<QNumber, QError> {
        let (a, b) = (self.0.canonical(), other.0.canonical());
        let (num, den) = match op {
            Op::Add => (&(&a.num * &b.den) + &(&b.num * &a.den), &a.den * &b.den),
            Op::Sub => (&(&a.num * &b.den) - &(&b.num * &a.den), &a.den * &b.den),
            Op::Mul => (&a.num * &b.num, &a.den * &b.den),
            Op::Div => {
                if b.num.is_zero() {
                    return Err(QError::DivisionByZero);
                }
                (&a.num * &b.den, &a.den * &b.num)
            }
        };
        let mut exceptional = a.exceptional()?;
        exceptional.extend(b.exceptional()?);
        if op == Op::Div {
            exceptional.extend(b.num.positive_integer_roots()?);
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_zero() { (num, den) } else { (num.div_rem(&g).0, den.div_rem(&g).0) };
        // make the denominator monic
        let lead = den.leading();
        let (num, den) = (num.scale(&lead.recip()), den.scale(&lead.recip()));
        let mut out = Canonical { num, den, overrides: BTreeMap::new() };
        for n in exceptional {
            let v = op.apply(&a.at(n), &b.at(n));
            if v != out.base_at(n) {
                out.overrides.insert(n, v);
            }
        }
        Ok(QNumber(out.into_seq()))
    }

    pub fn add(&self, other: &QNumber) -> Result<QNumber, QError> {
        self.combine(other, Op::Add)
    }

    pub fn sub(&self, other: &QNumber) -> Result<QNumber, QError> {
        self.combine(other, Op::Sub)
    }

    pub fn mul(&self, other: &QNumber) -> Result<QNumber, QError> {
        self.combine(other, Op::Mul)
    }

    /// Fails when the divisor is Q-equal to 0. At indices where the divisor
    /// vanishes the quotient is taken as 0.
    pub fn div(&self, other: &QNumber) -> Result<QNumber, QError> {
        self.combine(other, Op::Div)
    }

    pub fn classify(&self) -> Classification {
        let c = self.0.canonical();
        let (pn, pd) = (c.num.degree(), c.den.degree().expect("nonzero denominator"));
        let Some(pn) = pn else {
            return Classification::Standard(BigRational::zero());
        };
        let ratio = c.num.leading() / c.den.leading();
        if pn < pd {
            Classification::Infinitesimal
        } else if pn > pd {
            Classification::InfinitelyLarge { positive: ratio.is_positive() }
        } else if (&c.num - &c.den.scale(&ratio)).is_zero() {
            Classification::Standard(ratio)
        } else {
            Classification::FiniteNonstandard { limit: ratio }
        }
    }

    pub fn is_infinitesimal(&self) -> bool {
        self.classify() == Classification::Infinitesimal
    }
}

/// The exact set of indices where two sequences take the same value.
pub fn agreement_set(r: &SeqReal, s: &SeqReal) -> Result<IndexSet, QError> {
    let (a, b) = (r.canonical(), s.canonical());
    let mut exceptional = a.exceptional()?;
    exceptional.extend(b.exceptional()?);
    let cross = &(&a.num * &b.den) - &(&b.num * &a.den);
    if cross.is_zero() {
        let differ = exceptional.into_iter().filter(|&n| a.at(n) != b.at(n)).collect();
        return Ok(IndexSet::Cofinite(differ));
    }
    let mut agree: BTreeSet<u64> = cross.positive_integer_roots()?.difference(&exceptional).copied().collect();
    agree.extend(exceptional.into_iter().filter(|&n| a.at(n) == b.at(n)));
    Ok(IndexSet::Finite(agree))
}

pub fn q_eq(a: &QNumber, b: &QNumber) -> Result<bool, QError> {
    Ok(agreement_set(&a.0, &b.0)?.in_filter())
}

/// Equal, or differing by an infinitesimal.
pub fn infinitely_near(a: &QNumber, b: &QNumber) -> Result<bool, QError> {
    Ok(q_eq(a, b)? || a.sub(b)?.is_infinitesimal())
}

/// Witness that `a/n` is infinitesimal at scale `1/m`: with `k` the least
/// natural above `a`, every `n > m·k` has `a/n < 1/m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfinitesimalWitness {
    pub k: u64,
    pub threshold: u64,
}

impl InfinitesimalWitness {
    pub fn set(&self) -> IndexSet {
        IndexSet::Threshold(self.threshold)
    }

    /// Share of `1..=n` above the threshold: `(n - m·k)/n` once `n > m·k`.
    pub fn freq_bound(&self, n: u64) -> Result<BigRational, QError> {
        self.set().freq(n)
    }
}

pub fn infinitesimal_witness(a: &BigRational, m: u64) -> Result<InfinitesimalWitness, QError> {
    if !a.is_positive() {
        return Err(QError::Domain(format!("coefficient must be positive, got {a}")));
    }
    if m == 0 {
        return Err(QError::ZeroIndex);
    }
    let k = crate::rational::floor_to_i64(a)
        .and_then(|f| u64::try_from(f + 1).ok())
        .ok_or_else(|| QError::Domain(format!("coefficient {a} too large")))?;
    let threshold = m.checked_mul(k).ok_or_else(|| QError::Domain("threshold overflows".into()))?;
    Ok(InfinitesimalWitness { k, threshold })
}
