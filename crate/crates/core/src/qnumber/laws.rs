use num::{BigRational, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::index_set::IndexSet;
use super::seq::{infinitesimal_witness, QNumber, SeqReal};
use crate::report::CheckReport;

/// Random set from the supported class, at most `depth` operators deep.
pub fn random_index_set<R: Rng>(depth: u32, rng: &mut R) -> IndexSet {
    if depth == 0 || rng.random_bool(0.35) {
        let elems = |rng: &mut R| (0..rng.random_range(0..5)).map(|_| rng.random_range(1..=30)).collect();
        return match rng.random_range(0..4) {
            0 => IndexSet::Finite(elems(rng)),
            1 => IndexSet::Cofinite(elems(rng)),
            2 => {
                let m = rng.random_range(1..=6);
                IndexSet::Residue { a: rng.random_range(0..m), m }
            }
            _ => IndexSet::Threshold(rng.random_range(0..=40)),
        };
    }
    match rng.random_range(0..3) {
        0 => IndexSet::and(random_index_set(depth - 1, rng), random_index_set(depth - 1, rng)),
        1 => IndexSet::or(random_index_set(depth - 1, rng), random_index_set(depth - 1, rng)),
        _ => IndexSet::not(random_index_set(depth - 1, rng)),
    }
}

/// Random density-one set: a cofinite or threshold set, or a union with one.
fn random_filter_set<R: Rng>(rng: &mut R) -> IndexSet {
    let core = if rng.random_bool(0.5) {
        IndexSet::Threshold(rng.random_range(0..=40))
    } else {
        IndexSet::Cofinite((0..rng.random_range(0..4)).map(|_| rng.random_range(1..=30)).collect())
    };
    match rng.random_range(0..3) {
        0 => core,
        1 => IndexSet::or(core, random_index_set(2, rng)),
        _ => IndexSet::not(IndexSet::and(IndexSet::not(core), random_index_set(2, rng))),
    }
}

/// Checks the frequency and filter laws on `samples` random sets:
/// `freq(N) = 1`, `freq(∅) = 0`, splitting `freq(B)` along `A`,
/// `freq(A) + freq(N - A) = 1`, closure of the filter under intersection and
/// supersets, the convergence rate of frequencies to the density, the
/// threshold witness for `a/n`, and that the evens and odds both lie outside
/// the filter.
pub fn filter_laws_check(samples: usize, seed: u64) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = CheckReport::default();
    let nat = IndexSet::all();
    let empty = IndexSet::empty();

    report.record("s5", nat.in_filter() && !empty.in_filter(), || "N or ∅ misplaced".into());
    let evens = IndexSet::evens();
    let odds = IndexSet::not(evens.clone());
    report.record("non-ultrafilter", !evens.in_filter() && !odds.in_filter(), || "evens or odds in filter".into());

    for _ in 0..samples {
        let a = random_index_set(3, &mut rng);
        let b = random_index_set(3, &mut rng);
        let n = rng.random_range(1..=500u64);
        let f = |s: &IndexSet| s.freq(n).expect("n >= 1");
        let show = || format!("A={a} B={b} n={n}");

        report.record("s1", f(&nat).is_one(), show);
        report.record("s4", f(&empty).is_zero(), show);
        let not_a = IndexSet::not(a.clone());
        let split = f(&IndexSet::and(a.clone(), b.clone())) + f(&IndexSet::and(not_a.clone(), b.clone()));
        report.record("s2", split == f(&b), show);
        report.record("s3", f(&a) + f(&not_a) == BigRational::one(), show);

        let gap = (f(&a) - a.density()) * BigRational::from_integer(n.into());
        let limit = BigRational::from_integer(a.convergence_constant().into());
        report.record("density-rate", gap <= limit && -gap <= limit, show);

        if let IndexSet::Finite(_) = a {
            report.record("finite-excluded", !a.in_filter(), show);
        }

        let fa = random_filter_set(&mut rng);
        let fb = random_filter_set(&mut rng);
        let show2 = || format!("A={fa} B={fb}");
        report.record("filter-sample", fa.in_filter() && fb.in_filter(), show2);
        report.record("s6", IndexSet::and(fa.clone(), fb.clone()).in_filter(), show2);
        let sup = IndexSet::or(fa.clone(), b.clone());
        report.record("s7", fa.is_subset(&sup) && sup.in_filter(), show2);
        if a.in_filter() && b.in_filter() {
            report.record("s6", IndexSet::and(a.clone(), b.clone()).in_filter(), show);
        }

        let coeff = BigRational::new(rng.random_range(1..=5000i64).into(), rng.random_range(1..=7i64).into());
        let m = rng.random_range(1..=50u64);
        let show3 = || format!("a={coeff} m={m}");
        let witness = infinitesimal_witness(&coeff, m).expect("positive coefficient");
        let inv_m = BigRational::new(1.into(), m.into());
        let holds = witness.set().in_filter()
            && (witness.threshold + 1..=witness.threshold + 50)
                .all(|n| &coeff / BigRational::from_integer(n.into()) < inv_m);
        let infinitesimal = QNumber(SeqReal::reciprocal(coeff.clone())).is_infinitesimal();
        report.record("s8", holds && infinitesimal, show3);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laws_hold() {
        let report = filter_laws_check(200, 11);
        assert!(report.passed(), "{:?}", report.violations);
        for label in ["s1", "s2", "s3", "s4", "s5", "s6", "s7", "s8", "density-rate", "non-ultrafilter"] {
            assert!(report.count(label) > 0, "{label} never checked");
        }
    }

    #[test]
    fn filter_sets_are_dense() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..300 {
            assert!(random_filter_set(&mut rng).in_filter());
        }
    }
}
