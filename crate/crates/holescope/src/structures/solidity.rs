use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

/// Density and solidity of an integer set (e.g. a jetset).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solidity {
    /// No two consecutive integers are both missing between the least and
    /// greatest members.
    pub dense: bool,
    /// Largest n such that the set is n-solid: for n >= 2, it contains n
    /// consecutive integers; for n = 1, two members differing by 1 or 3.
    /// Zero when neither holds.
    pub max_solid: usize,
}

pub fn solidity(set: &BTreeSet<i64>) -> Solidity {
    let items: Vec<i64> = set.iter().copied().collect();
    let mut dense = true;
    let mut longest_run = if items.is_empty() { 0 } else { 1 };
    let mut run = 1usize;
    for w in items.windows(2) {
        let gap = w[1] - w[0];
        if gap > 2 {
            dense = false;
        }
        if gap == 1 {
            run += 1;
        } else {
            run = 1;
        }
        longest_run = longest_run.max(run);
    }
    let max_solid = if longest_run >= 2 {
        longest_run
    } else {
        let one_solid = items
            .iter()
            .any(|&a| set.contains(&(a + 1)) || set.contains(&(a + 3)));
        usize::from(one_solid)
    };
    Solidity { dense, max_solid }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(xs: &[i64]) -> BTreeSet<i64> {
        xs.iter().copied().collect()
    }

    #[test]
    fn runs_of_consecutive_integers() {
        assert_eq!(solidity(&s(&[3, 4, 5, 9])), Solidity { dense: false, max_solid: 3 });
        assert_eq!(solidity(&s(&[1, 2])), Solidity { dense: true, max_solid: 2 });
    }

    #[test]
    fn one_solid_via_gap_three() {
        // 2 and 5 differ by 3, no consecutive pair
        let r = solidity(&s(&[2, 5]));
        assert_eq!(r.max_solid, 1);
        assert!(!r.dense); // 3,4 both missing between 2 and 5
    }

    #[test]
    fn spread_set_is_zero_solid() {
        let r = solidity(&s(&[0, 5, 10]));
        assert_eq!(r.max_solid, 0);
        assert!(!r.dense);
    }

    #[test]
    fn singleton_and_empty() {
        assert_eq!(solidity(&s(&[7])), Solidity { dense: true, max_solid: 0 });
        assert_eq!(solidity(&s(&[])), Solidity { dense: true, max_solid: 0 });
    }

    #[test]
    fn dense_allows_single_gaps() {
        // 1,3,5: every hole is isolated, but no pair differs by 1 or 3
        let r = solidity(&s(&[1, 3, 5]));
        assert!(r.dense);
        assert_eq!(r.max_solid, 0);
    }

    #[test]
    fn shifting_by_zero_two_raises_solidity() {
        // n-solid => A + {0,2} is (n+1)-solid, for n > 0
        for xs in [vec![2i64, 5], vec![3, 4], vec![0, 1, 2, 9]] {
            let a = s(&xs);
            let n = solidity(&a).max_solid;
            assert!(n > 0);
            let shifted: BTreeSet<i64> =
                a.iter().flat_map(|&v| [v, v + 2]).collect();
            assert!(solidity(&shifted).max_solid > n);
        }
    }
}
