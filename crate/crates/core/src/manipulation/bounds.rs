use serde::Serialize;

use crate::exact::{factorial, int, pow, Frac, FracJson};

pub const MANIPULATION_FORMULA: &str = "eps^2 / (2 n^3 q^6 (q!)^2)";
pub const FOUR_MANIPULATION_FORMULA: &str = "eps^2 / (10^4 n^3 q^30)";

/// Lower bound on `P(f is manipulable at X)` for neutral `f`, `q >= 4`,
/// at distance `eps` from the dictators.
pub fn manipulation_bound(eps: &Frac, n: usize, q: usize) -> Frac {
    let qf = int(factorial(q));
    pow(eps, 2) / (int(2) * pow(&int(n as u64), 3) * pow(&int(q as u64), 6) * pow(&qf, 2))
}

/// Lower bound on `P(X is a 4-manipulation point)` under the same hypotheses.
pub fn four_manipulation_bound(eps: &Frac, n: usize, q: usize) -> Frac {
    pow(eps, 2) / (pow(&int(10), 4) * pow(&int(n as u64), 3) * pow(&int(q as u64), 30))
}

/// Lower bound on the probability that resetting a random coordinate yields
/// a manipulation pair: `eps^2 / (2 n^4 q^6 (q!)^3)`.
pub fn reset_pair_bound(eps: &Frac, n: usize, q: usize) -> Frac {
    let qf = int(factorial(q));
    pow(eps, 2) / (int(2) * pow(&int(n as u64), 4) * pow(&int(q as u64), 6) * pow(&qf, 3))
}

/// Lower bound for the 4-block permutation law: `eps^2 / (10^9 n^4 q^34)`.
pub fn block4_pair_bound(eps: &Frac, n: usize, q: usize) -> Frac {
    pow(eps, 2) / (pow(&int(10), 9) * pow(&int(n as u64), 4) * pow(&int(q as u64), 34))
}

/// One bound compared against an observed fraction.
#[derive(Clone, Debug, Serialize)]
pub struct BoundCheck {
    pub formula: &'static str,
    pub value: FracJson,
    /// Whether the bound's hypotheses (`q >= 4`, neutrality) were verified.
    pub applicable: bool,
    pub pass: bool,
}

impl BoundCheck {
    pub fn new(formula: &'static str, value: Frac, observed: &Frac, applicable: bool) -> Self {
        let pass = *observed >= value;
        BoundCheck { formula, value: FracJson(value), applicable, pass }
    }

    /// True unless the bound applies and fails.
    pub fn ok(&self) -> bool {
        !self.applicable || self.pass
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{ratio, zero};

    #[test]
    fn four_manipulation_example() {
        let b = four_manipulation_bound(&ratio(1, 2), 3, 4);
        let expected = ratio(1, 4) / (int(10_000) * int(27) * pow(&int(4), 30));
        assert_eq!(b, expected);
        assert_eq!(four_manipulation_bound(&zero(), 3, 4), zero());
    }

    #[test]
    fn manipulation_example() {
        // 2 * 8 * 4096 * 576 = 37748736
        assert_eq!(manipulation_bound(&int(1), 2, 4), ratio(1, 37_748_736u64));
        assert!(reset_pair_bound(&int(1), 2, 4) < manipulation_bound(&int(1), 2, 4));
        assert!(block4_pair_bound(&int(1), 2, 4) < four_manipulation_bound(&int(1), 2, 4));
    }

    #[test]
    fn check_flags() {
        let c = BoundCheck::new(MANIPULATION_FORMULA, ratio(1, 10), &ratio(1, 20), false);
        assert!(!c.pass && c.ok());
        let c = BoundCheck::new(MANIPULATION_FORMULA, ratio(1, 10), &ratio(1, 20), true);
        assert!(!c.ok());
    }
}
