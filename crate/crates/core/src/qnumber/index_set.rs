use std::collections::BTreeSet;
use std::fmt;

use num::integer::lcm;
use num::{BigRational, One};

use super::QError;

/// Set of naturals `1, 2, 3, ...` from a decidable class closed under the
/// Boolean operations. Membership is eventually periodic, which makes the
/// natural density a computable rational.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum IndexSet {
    Finite(BTreeSet<u64>),
    /// Every natural except the listed ones.
    Cofinite(BTreeSet<u64>),
    /// `n ≡ a (mod m)`, with `0 <= a < m`.
    Residue { a: u64, m: u64 },
    /// `n > m`.
    Threshold(u64),
    Intersection(Box<IndexSet>, Box<IndexSet>),
    Union(Box<IndexSet>, Box<IndexSet>),
    Complement(Box<IndexSet>),
}

impl IndexSet {
    pub fn all() -> Self {
        IndexSet::Cofinite(BTreeSet::new())
    }

    pub fn empty() -> Self {
        IndexSet::Finite(BTreeSet::new())
    }

    pub fn residue(a: u64, m: u64) -> Result<Self, QError> {
        if m == 0 {
            return Err(QError::ZeroModulus);
        }
        Ok(IndexSet::Residue { a: a % m, m })
    }

    pub fn evens() -> Self {
        IndexSet::Residue { a: 0, m: 2 }
    }

    pub fn and(a: IndexSet, b: IndexSet) -> Self {
        IndexSet::Intersection(Box::new(a), Box::new(b))
    }

    pub fn or(a: IndexSet, b: IndexSet) -> Self {
        IndexSet::Union(Box::new(a), Box::new(b))
    }

    pub fn not(a: IndexSet) -> Self {
        IndexSet::Complement(Box::new(a))
    }

    pub fn contains(&self, n: u64) -> bool {
        match self {
            IndexSet::Finite(s) => s.contains(&n),
            IndexSet::Cofinite(s) => n >= 1 && !s.contains(&n),
            IndexSet::Residue { a, m } => n % m == *a,
            IndexSet::Threshold(m) => n > *m,
            IndexSet::Intersection(x, y) => x.contains(n) && y.contains(n),
            IndexSet::Union(x, y) => x.contains(n) || y.contains(n),
            IndexSet::Complement(x) => !x.contains(n),
        }
    }

    /// Membership repeats with this period beyond [`IndexSet::offset`].
    pub fn period(&self) -> u64 {
        match self {
            IndexSet::Residue { m, .. } => *m,
            IndexSet::Intersection(x, y) | IndexSet::Union(x, y) => lcm(x.period(), y.period()),
            IndexSet::Complement(x) => x.period(),
            _ => 1,
        }
    }

    /// Index after which membership is purely periodic.
    pub fn offset(&self) -> u64 {
        match self {
            IndexSet::Finite(s) | IndexSet::Cofinite(s) => s.last().copied().unwrap_or(0),
            IndexSet::Threshold(m) => *m,
            IndexSet::Residue { .. } => 0,
            IndexSet::Intersection(x, y) | IndexSet::Union(x, y) => x.offset().max(y.offset()),
            IndexSet::Complement(x) => x.offset(),
        }
    }

    /// Number of members in `1..=n`.
    pub fn count_upto(&self, n: u64) -> u64 {
        let (offset, period) = (self.offset(), self.period());
        let direct = |lo: u64, hi: u64| (lo..=hi).filter(|&i| self.contains(i)).count() as u64;
        if n <= offset + period {
            return direct(1, n);
        }
        let head = direct(1, offset);
        let per_period = direct(offset + 1, offset + period);
        let full = (n - offset) / period;
        let tail_start = offset + full * period + 1;
        head + full * per_period + direct(tail_start, n)
    }

    /// Share of `1..=n` that lies in the set.
    pub fn freq(&self, n: u64) -> Result<BigRational, QError> {
        if n == 0 {
            return Err(QError::ZeroIndex);
        }
        Ok(BigRational::new(self.count_upto(n).into(), n.into()))
    }

    /// Limit of [`IndexSet::freq`] as `n` grows.
    pub fn density(&self) -> BigRational {
        let (offset, period) = (self.offset(), self.period());
        let members = (offset + 1..=offset + period).filter(|&i| self.contains(i)).count() as u64;
        BigRational::new(members.into(), period.into())
    }

    /// Membership in the filter of density-one sets.
    pub fn in_filter(&self) -> bool {
        self.density().is_one()
    }

    /// Upper bound on `|freq(n) - density|·n`, valid for every `n >= 1`.
    pub fn convergence_constant(&self) -> u64 {
        self.offset() + self.period()
    }

    pub fn is_empty(&self) -> bool {
        self.count_upto(self.offset() + self.period()) == 0
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        IndexSet::and(self.clone(), IndexSet::not(other.clone())).is_empty()
    }

    /// Same members, decided by comparing up to the joint periodic horizon.
    pub fn same_members(&self, other: &IndexSet) -> bool {
        self.is_subset(other) && other.is_subset(self)
    }
}

fn write_elems(f: &mut fmt::Formatter<'_>, s: &BTreeSet<u64>) -> fmt::Result {
    f.write_str("{")?;
    for (i, n) in s.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{n}")?;
    }
    f.write_str("}")
}

/// Prefix notation accepted by the set-expression parser.
impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexSet::Finite(s) if s.is_empty() => f.write_str("empty"),
            IndexSet::Cofinite(s) if s.is_empty() => f.write_str("nat"),
            IndexSet::Finite(s) => {
                f.write_str("fin ")?;
                write_elems(f, s)
            }
            IndexSet::Cofinite(s) => {
                f.write_str("cofin ")?;
                write_elems(f, s)
            }
            IndexSet::Residue { a, m } => write!(f, "res {a} {m}"),
            IndexSet::Threshold(m) => write!(f, "thr {m}"),
            IndexSet::Intersection(x, y) => write!(f, "and {x} {y}"),
            IndexSet::Union(x, y) => write!(f, "or {x} {y}"),
            IndexSet::Complement(x) => write!(f, "not {x}"),
        }
    }
}
