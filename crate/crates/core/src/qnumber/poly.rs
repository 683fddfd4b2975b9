use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::{BigRational, Integer, One, Signed, ToPrimitive, Zero};

use super::QError;

/// Largest root-search bound accepted when locating positive integer roots.
pub const ROOT_SEARCH_LIMIT: u64 = 1_000_000;

/// Polynomial in `n` with rational coefficients, lowest degree first.
/// Trailing zero coefficients are always trimmed, so the zero polynomial has
/// no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly(Vec<BigRational>);

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::new(vec![c])
    }

    /// The polynomial `n`.
    pub fn identity() -> Self {
        Poly::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.0.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, n: u64) -> BigRational {
        let x = BigRational::from_integer(n.into());
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * &x + c)
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        Poly::new(self.0.iter().map(|a| a * c).collect())
    }

    /// Quotient and remainder; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let d = divisor.degree().expect("polynomial division by zero");
        let lead = divisor.leading();
        let mut rem = self.0.clone();
        let mut quot = vec![BigRational::zero(); self.0.len().saturating_sub(d)];
        while rem.len() > d && !rem.is_empty() {
            let shift = rem.len() - 1 - d;
            let factor = rem.last().unwrap() / &lead;
            for (i, c) in divisor.0.iter().enumerate() {
                rem[shift + i] -= &factor * c;
            }
            quot[shift] = factor;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic greatest common divisor; zero only when both inputs are zero.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.leading();
        a.scale(&(BigRational::one() / lead))
    }

    /// Integer coefficients proportional to this polynomial.
    fn integer_coeffs(&self) -> Vec<BigInt> {
        let lcm = self.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        self.0.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect()
    }

    /// Every `n >= 1` with `p(n) = 0`. Fails when the Cauchy root bound
    /// exceeds [`ROOT_SEARCH_LIMIT`]. The zero polynomial has no finite root
    /// set and is rejected by the caller.
    pub fn positive_integer_roots(&self) -> Result<BTreeSet<u64>, QError> {
        assert!(!self.is_zero(), "zero polynomial vanishes everywhere");
        let mut coeffs = self.integer_coeffs();
        // a factor n^j contributes only the root 0
        let lowest = coeffs.iter().position(|c| !c.is_zero()).unwrap();
        coeffs.drain(..lowest);
        if coeffs.len() == 1 {
            return Ok(BTreeSet::new());
        }
        let lead = coeffs.last().unwrap().abs();
        let max_ratio = coeffs[..coeffs.len() - 1]
            .iter()
            .map(|c| BigRational::new(c.abs(), lead.clone()))
            .max()
            .unwrap();
        let bound = (max_ratio + BigRational::one()).floor().to_integer();
        let bound = bound.to_u64().filter(|&b| b <= ROOT_SEARCH_LIMIT).ok_or(QError::RootBound(bound))?;
        // an integer root divides the constant term
        let constant = coeffs[0].abs();
        let limit = constant.to_u64().map_or(bound, |c| c.min(bound));
        let mut roots = BTreeSet::new();
        for n in 1..=limit {
            if !(&constant % BigInt::from(n)).is_zero() {
                continue;
            }
            let x = BigInt::from(n);
            let value = coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * &x + c);
            if value.is_zero() {
                roots.insert(n);
            }
        }
        Ok(roots)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let len = self.0.len().max(rhs.0.len());
        let zero = BigRational::zero();
        Poly::new(
            (0..len)
                .map(|i| self.0.get(i).unwrap_or(&zero) + rhs.0.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

/// Human-readable form in the variable `n`, highest degree first.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (deg, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let show_coeff = deg == 0 || !mag.is_one();
            if show_coeff {
                if mag.is_integer() || deg == 0 {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            match deg {
                0 => {}
                1 => f.write_str("n")?,
                _ => write!(f, "n^{deg}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn p(cs: &[i64]) -> Poly {
        Poly::new(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn trims_and_degrees() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[0]).degree(), None);
    }

    #[test]
    fn arithmetic() {
        let a = p(&[1, 1]);
        let b = p(&[-1, 1]);
        assert_eq!(&a * &b, p(&[-1, 0, 1]));
        assert_eq!(&a + &b, p(&[0, 2]));
        assert_eq!(&a - &a, Poly::zero());
        assert_eq!((&a * &b).eval(5), int(24));
    }

    #[test]
    fn division_and_gcd() {
        let a = &p(&[-1, 1]) * &p(&[2, 1]);
        let (q, r) = a.div_rem(&p(&[-1, 1]));
        assert_eq!(q, p(&[2, 1]));
        assert!(r.is_zero());
        let g = (&a).gcd(&(&p(&[-1, 1]) * &p(&[0, 3])));
        assert_eq!(g, p(&[-1, 1]));
        assert_eq!(p(&[3]).gcd(&p(&[0, 1])), p(&[1]));
    }

    #[test]
    fn integer_roots() {
        // (n - 3)(n - 7)(n + 2) n
        let f = &(&(&p(&[-3, 1]) * &p(&[-7, 1])) * &p(&[2, 1])) * &p(&[0, 1]);
        assert_eq!(f.positive_integer_roots().unwrap(), [3, 7].into());
        let g = Poly::new(vec![ratio(-1, 2), ratio(1, 4)]);
        assert_eq!(g.positive_integer_roots().unwrap(), [2].into());
        assert!(p(&[5]).positive_integer_roots().unwrap().is_empty());
        assert!(p(&[1, 1]).positive_integer_roots().unwrap().is_empty());
        assert!(matches!(p(&[-2_000_000, 1]).positive_integer_roots(), Err(QError::RootBound(_))));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 0, -3]).to_string(), "-3n^2 + 1");
        assert_eq!(p(&[0, 1]).to_string(), "n");
        assert_eq!(Poly::new(vec![ratio(1, 2), ratio(-1, 3)]).to_string(), "-(1/3)n + 1/2");
        assert_eq!(Poly::zero().to_string(), "0");
    }
}
