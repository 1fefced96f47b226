use serde::{Deserialize, Serialize};

use super::field::{random_primes, ScalarMode};
use super::rowspace::{Comparison, Verdict};

/// How a verdict is certified: over the rationals, or modulo several primes
/// whose ranks must all agree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificationMode {
    Exact,
    Modular(Vec<u64>),
}

impl CertificationMode {
    /// `count` random 62-bit primes derived from `seed`.
    pub fn modular(seed: u64, count: usize) -> Self {
        CertificationMode::Modular(random_primes(seed, count))
    }

    pub fn primes(&self) -> &[u64] {
        match self {
            CertificationMode::Exact => &[],
            CertificationMode::Modular(p) => p,
        }
    }

    pub fn scalar_modes(&self) -> Vec<ScalarMode> {
        match self {
            CertificationMode::Exact => vec![ScalarMode::Exact],
            CertificationMode::Modular(p) => p.iter().map(|&p| ScalarMode::Modular(p)).collect(),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            CertificationMode::Exact => "exact",
            CertificationMode::Modular(_) => "modular",
        }
    }
}

/// One comparison carried out in several scalar modes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiComparison {
    pub per_mode: Vec<(ScalarMode, Comparison)>,
    /// All modes produced identical ranks.
    pub consistent: bool,
    /// Componentwise maximum of the ranks (a modular rank never exceeds the exact one).
    pub combined: Comparison,
}

impl MultiComparison {
    pub fn new(per_mode: Vec<(ScalarMode, Comparison)>) -> Self {
        assert!(!per_mode.is_empty());
        let consistent = per_mode.windows(2).all(|w| w[0].1 == w[1].1);
        let rank_a = per_mode.iter().map(|(_, c)| c.rank_a).max().unwrap();
        let rank_b = per_mode.iter().map(|(_, c)| c.rank_b).max().unwrap();
        let rank_join = per_mode.iter().map(|(_, c)| c.rank_join).max().unwrap();
        let combined = Comparison { rank_a, rank_b, rank_join, verdict: Verdict::from_ranks(rank_a, rank_b, rank_join) };
        MultiComparison { per_mode, consistent, combined }
    }

    pub fn verdict(&self) -> Verdict {
        self.combined.verdict
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inconsistent_primes_are_flagged() {
        let c = |a, b, j| Comparison { rank_a: a, rank_b: b, rank_join: j, verdict: Verdict::from_ranks(a, b, j) };
        let m = MultiComparison::new(vec![(ScalarMode::Modular(5), c(2, 3, 3)), (ScalarMode::Modular(7), c(3, 3, 3))]);
        assert!(!m.consistent);
        assert_eq!(m.verdict(), Verdict::Equal);
        let m = MultiComparison::new(vec![(ScalarMode::Exact, c(2, 3, 3))]);
        assert!(m.consistent);
        assert_eq!(m.verdict(), Verdict::StrictlyContained);
    }

    #[test]
    fn modes_from_seed() {
        let m = CertificationMode::modular(1, 3);
        assert_eq!(m.primes().len(), 3);
        assert_eq!(m.scalar_modes().len(), 3);
        assert!(CertificationMode::Exact.primes().is_empty());
    }
}
