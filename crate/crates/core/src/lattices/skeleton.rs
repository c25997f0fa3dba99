use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::rational::factorial;

/// Multiset of atom sizes of a partition, sorted descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Skeleton {
    parts: Vec<usize>,
}

impl Skeleton {
    pub fn from_parts(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidSkeleton(format!(
                "parts must be positive and nonempty, got {parts:?}"
            )));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `[η]`, the number of parts counted with multiplicity.
    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }
}

impl fmt::Display for Skeleton {
    /// `2+1` style.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(usize::to_string).collect();
        f.write_str(&parts.join("+"))
    }
}

impl FromStr for Skeleton {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split('+')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad skeleton part {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Skeleton::from_parts(parts)
    }
}

/// `E_N`: all skeletons of `N`, ordered by part count descending, then by
/// parts lexicographically (so `1+1+1` first and `N` last).
pub fn skeletons_of(n: usize) -> Vec<Skeleton> {
    let mut out = Vec::new();
    fn rec(remaining: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Skeleton>) {
        if remaining == 0 {
            out.push(Skeleton { parts: cur.clone() });
            return;
        }
        for p in (1..=max.min(remaining)).rev() {
            cur.push(p);
            rec(remaining - p, p, cur, out);
            cur.pop();
        }
    }
    if n > 0 {
        rec(n, n, &mut Vec::new(), &mut out);
    }
    out.sort_by(|a, b| {
        b.parts
            .len()
            .cmp(&a.parts.len())
            .then_with(|| a.parts.cmp(&b.parts))
    });
    out
}

/// Number of partitions of `{1..n}` with skeleton `η`:
/// `n! / ∏ e_s!` divided by `∏ m_k!` over multiplicities `m_k` of equal parts.
pub fn skeleton_count(n: usize, eta: &Skeleton) -> Result<BigInt> {
    if eta.total() != n {
        return Err(Error::InvalidSkeleton(format!(
            "{eta} sums to {}, expected {n}",
            eta.total()
        )));
    }
    let mut denom = BigInt::from(1);
    for &e in &eta.parts {
        denom *= factorial(e as u64);
    }
    let mut k = 0;
    while k < eta.parts.len() {
        let run = eta.parts[k..]
            .iter()
            .take_while(|&&x| x == eta.parts[k])
            .count();
        denom *= factorial(run as u64);
        k += run;
    }
    Ok(factorial(n as u64) / denom)
}

/// The merge order on `E_N`: `η ⪯̃ κ` iff the parts of `η` can be grouped
/// onto the parts of `κ` (a surjection `θ` with block sums `k_r`).
pub fn skeleton_order(eta: &Skeleton, kappa: &Skeleton) -> bool {
    if eta.total() != kappa.total() || eta.part_count() < kappa.part_count() {
        return false;
    }
    let mut remaining = kappa.parts.clone();
    assign(&eta.parts, 0, &mut remaining)
}

/// Places `parts[i..]` (descending) into bins with the given remaining
/// capacities; every bin must end exactly full.
fn assign(parts: &[usize], i: usize, remaining: &mut [usize]) -> bool {
    if i == parts.len() {
        return remaining.iter().all(|&r| r == 0);
    }
    let part = parts[i];
    for r in 0..remaining.len() {
        if remaining[r] < part {
            continue;
        }
        // Bins with equal remaining capacity are interchangeable.
        if remaining[..r].contains(&remaining[r]) {
            continue;
        }
        remaining[r] -= part;
        let ok = assign(parts, i + 1, remaining);
        remaining[r] += part;
        if ok {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattices::partition::{enumerate_partitions, skeleton};

    fn sk(s: &str) -> Skeleton {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(sk("1+2").to_string(), "2+1");
        assert!("0+3".parse::<Skeleton>().is_err());
        assert!("a".parse::<Skeleton>().is_err());
    }

    #[test]
    fn enumeration_order() {
        let names: Vec<String> = skeletons_of(4).iter().map(ToString::to_string).collect();
        assert_eq!(names, ["1+1+1+1", "2+1+1", "2+2", "3+1", "4"]);
        assert_eq!(skeletons_of(8).len(), 22);
    }

    fn brute_count(n: usize, eta: &Skeleton) -> usize {
        enumerate_partitions(n)
            .iter()
            .filter(|p| &skeleton(p) == eta)
            .count()
    }

    #[test]
    fn counts_match_brute_force() {
        assert_eq!(brute_count(3, &sk("1+1+1")), 1);
        assert_eq!(brute_count(3, &sk("2+1")), 3);
        assert_eq!(brute_count(4, &sk("2+2")), 3);
        for (n, s) in [(3, "1+1+1"), (3, "2+1"), (4, "2+2")] {
            assert_eq!(
                skeleton_count(n, &sk(s)).unwrap(),
                BigInt::from(brute_count(n, &sk(s)))
            );
        }
        assert!(matches!(
            skeleton_count(4, &sk("2+1")),
            Err(Error::InvalidSkeleton(_))
        ));
    }

    #[test]
    fn merge_order() {
        assert!(skeleton_order(&sk("1+1+1"), &sk("2+1")));
        assert!(!skeleton_order(&sk("2+1"), &sk("1+1+1")));
        assert!(skeleton_order(&sk("3+1+1"), &sk("3+2")));
        assert!(skeleton_order(&sk("3+1+1"), &sk("4+1")));
        assert!(!skeleton_order(&sk("2+2"), &sk("3+1")));
        assert!(skeleton_order(&sk("2+2"), &sk("2+2")));
    }
}
