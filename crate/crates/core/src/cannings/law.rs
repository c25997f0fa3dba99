use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattices::{format_subset, Mask};
use crate::limits::Limits;
use crate::rational::Rational;

/// An indexed partition `ν = (ν_1, …, ν_N)` of `{1..N}`: `ν_i` is the set
/// of children of individual `i`, possibly empty.
pub type IndexedPartition = Vec<Mask>;

/// Exact finite offspring law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OffspringLaw {
    n: usize,
    support: Vec<(IndexedPartition, Rational)>,
    exchangeable: bool,
}

impl OffspringLaw {
    /// Validates every atom, merges repeated atoms and drops zero weights.
    pub fn new(n: usize, atoms: Vec<(IndexedPartition, Rational)>) -> Result<Self> {
        if n == 0 || n > 31 {
            return Err(Error::InvalidLaw(format!("ground size {n} out of range")));
        }
        let full: Mask = (1 << n) - 1;
        let mut merged: Vec<(IndexedPartition, Rational)> = Vec::new();
        let mut position: HashMap<IndexedPartition, usize> = HashMap::new();
        let mut total = Rational::zero();
        for (nu, p) in atoms {
            if p.is_negative() {
                return Err(Error::InvalidLaw(format!("negative weight {p}")));
            }
            if nu.len() != n {
                return Err(Error::InvalidLaw(format!(
                    "atom has {} parts, expected {n}",
                    nu.len()
                )));
            }
            let mut union: Mask = 0;
            for &part in &nu {
                if part & union != 0 || part & !full != 0 {
                    return Err(Error::InvalidLaw(format!(
                        "{} is not an indexed partition",
                        format_atom(&nu)
                    )));
                }
                union |= part;
            }
            if union != full {
                return Err(Error::InvalidLaw(format!(
                    "{} does not cover every individual",
                    format_atom(&nu)
                )));
            }
            total += &p;
            if p.is_zero() {
                continue;
            }
            match position.get(&nu) {
                Some(&k) => merged[k].1 += p,
                None => {
                    position.insert(nu.clone(), merged.len());
                    merged.push((nu, p));
                }
            }
        }
        if !total.is_one() {
            return Err(Error::InvalidLaw(format!("weights sum to {total}, not 1")));
        }
        let exchangeable = check_exchangeable(n, &merged, &position);
        Ok(Self {
            n,
            support: merged,
            exchangeable,
        })
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn full_mask(&self) -> Mask {
        (1 << self.n) - 1
    }

    pub fn support(&self) -> &[(IndexedPartition, Rational)] {
        &self.support
    }

    pub fn is_exchangeable(&self) -> bool {
        self.exchangeable
    }

    /// Atoms grouped by weight, weights in increasing order.
    pub fn weight_classes(&self) -> Vec<(Rational, Vec<&IndexedPartition>)> {
        let mut groups: BTreeMap<&Rational, Vec<&IndexedPartition>> = BTreeMap::new();
        for (nu, p) in &self.support {
            groups.entry(p).or_default().push(nu);
        }
        groups
            .into_iter()
            .map(|(p, atoms)| (p.clone(), atoms))
            .collect()
    }

    /// Law of the family-size vector `(|ν_1|, …, |ν_N|)`.
    pub fn size_profile(&self) -> Vec<(Vec<usize>, Rational)> {
        let mut groups: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
        for (nu, p) in &self.support {
            let sizes = nu.iter().map(|m| m.count_ones() as usize).collect();
            *groups.entry(sizes).or_insert_with(Rational::zero) += p;
        }
        groups.into_iter().collect()
    }

    pub fn require_exchangeable(&self) -> Result<()> {
        if self.exchangeable {
            Ok(())
        } else {
            Err(Error::NotExchangeable)
        }
    }
}

pub fn format_atom(nu: &[Mask]) -> String {
    let parts: Vec<String> = nu.iter().map(|&m| format_subset(m)).collect();
    format!("({})", parts.join(","))
}

/// Relabels individuals and indices together: `(π·ν)_{π(i)} = π(ν_i)`.
fn relabel(nu: &[Mask], perm: &[usize]) -> IndexedPartition {
    let mut out = vec![0; nu.len()];
    for (i, &part) in nu.iter().enumerate() {
        let mut image = 0;
        for (j, &pj) in perm.iter().enumerate() {
            if part >> j & 1 == 1 {
                image |= 1 << pj;
            }
        }
        out[perm[i]] = image;
    }
    out
}

/// Invariance under the transposition `(1 2)` and the cycle `(1 2 … N)`,
/// which generate the symmetric group.
fn check_exchangeable(
    n: usize,
    support: &[(IndexedPartition, Rational)],
    position: &HashMap<IndexedPartition, usize>,
) -> bool {
    if n == 1 {
        return true;
    }
    let mut swap: Vec<usize> = (0..n).collect();
    swap.swap(0, 1);
    let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    [swap, cycle].iter().all(|perm| {
        support.iter().all(|(nu, p)| {
            position
                .get(&relabel(nu, perm))
                .is_some_and(|&k| support[k].1 == *p)
        })
    })
}

/// Each of `N` children picks a parent uniformly and independently.
pub fn wright_fisher_law(n: usize) -> Result<OffspringLaw> {
    wright_fisher_law_with(n, &Limits::default())
}

pub fn wright_fisher_law_with(n: usize, limits: &Limits) -> Result<OffspringLaw> {
    limits.check("Wright-Fisher population size", n, limits.wright_fisher_n)?;
    if n == 0 {
        return Err(Error::InvalidLaw("population size must be positive".into()));
    }
    let count = n.pow(n as u32);
    let weight = Rational::new(1.into(), count.into());
    let atoms = (0..count)
        .map(|mut code| {
            let mut nu = vec![0; n];
            for child in 0..n {
                nu[code % n] |= 1 << child;
                code /= n;
            }
            (nu, weight.clone())
        })
        .collect();
    OffspringLaw::new(n, atoms)
}

/// A uniform ordered pair `b ≠ d`: `d` dies and `b` occupies both slots,
/// so `ν_b = {b, d}`, `ν_d = ∅` and `ν_i = {i}` otherwise.
pub fn moran_law(n: usize) -> Result<OffspringLaw> {
    moran_law_with(n, &Limits::default())
}

pub fn moran_law_with(n: usize, limits: &Limits) -> Result<OffspringLaw> {
    limits.check("Moran population size", n, limits.moran_n)?;
    if n < 2 {
        return Err(Error::InvalidLaw(
            "the Moran model needs at least two individuals".into(),
        ));
    }
    let weight = Rational::new(1.into(), (n * (n - 1)).into());
    let mut atoms = Vec::with_capacity(n * (n - 1));
    for b in 0..n {
        for d in (0..n).filter(|&d| d != b) {
            let mut nu: IndexedPartition = (0..n).map(|i| 1 << i).collect();
            nu[b] |= 1 << d;
            nu[d] = 0;
            atoms.push((nu, weight.clone()));
        }
    }
    OffspringLaw::new(n, atoms)
}

/// Every individual has exactly itself as offspring.
pub fn identity_law(n: usize) -> Result<OffspringLaw> {
    OffspringLaw::new(n, vec![((0..n).map(|i| 1 << i).collect(), Rational::one())])
}
