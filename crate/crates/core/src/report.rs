use std::collections::BTreeMap;

/// Tally of a randomized verification sweep: how many instances of each law
/// were checked and a description of every instance that failed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub checked: BTreeMap<&'static str, usize>,
    pub violations: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn total_checks(&self) -> usize {
        self.checked.values().sum()
    }

    pub fn count(&self, label: &str) -> usize {
        self.checked.get(label).copied().unwrap_or(0)
    }

    pub fn record(&mut self, label: &'static str, holds: bool, detail: impl FnOnce() -> String) {
        *self.checked.entry(label).or_default() += 1;
        if !holds {
            self.violations.push(format!("{label}: {}", detail()));
        }
    }
}
