use crate::error::Result;
use crate::limits::Limits;
use crate::poset::{build_poset_with, moebius_matrix_with, FinitePoset, Verification, ZetaPair};

/// Subsets of `{1..N}` encoded as bitmasks (bit `i-1` for element `i`).
pub type Mask = u32;

pub fn format_subset(mask: Mask) -> String {
    let items: Vec<String> = (0..32)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| (b + 1).to_string())
        .collect();
    format!("{{{}}}", items.join(","))
}

/// The Boolean lattice `(𝔅(I), ⊆)` with `|I| = N`.
///
/// Elements are indexed by (cardinality, mask value). The order relation
/// and Möbius function are available in closed form for any `N` within the
/// cap; [`SubsetLattice::poset`] materializes an explicit [`FinitePoset`].
#[derive(Clone, Debug)]
pub struct SubsetLattice {
    n: usize,
    masks: Vec<Mask>,
    index: Vec<u32>,
}

pub fn subset_lattice(n: usize) -> Result<SubsetLattice> {
    subset_lattice_with(n, &Limits::default())
}

pub fn subset_lattice_with(n: usize, limits: &Limits) -> Result<SubsetLattice> {
    limits.check("subset lattice ground set", n, limits.subset_n)?;
    let mut masks: Vec<Mask> = (0..1u32 << n).collect();
    masks.sort_by_key(|&m| (m.count_ones(), m));
    let mut index = vec![0u32; masks.len()];
    for (i, &m) in masks.iter().enumerate() {
        index[m as usize] = i as u32;
    }
    Ok(SubsetLattice { n, masks, index })
}

impl SubsetLattice {
    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn full_mask(&self) -> Mask {
        ((1u64 << self.n) - 1) as Mask
    }

    pub fn mask(&self, i: usize) -> Mask {
        self.masks[i]
    }

    pub fn masks(&self) -> &[Mask] {
        &self.masks
    }

    pub fn index_of(&self, mask: Mask) -> usize {
        self.index[mask as usize] as usize
    }

    pub fn cardinality(&self, i: usize) -> usize {
        self.masks[i].count_ones() as usize
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.masks[i] & !self.masks[j] == 0
    }

    /// `μ(J,K) = (-1)^{|K|-|J|}` for `J ⊆ K`.
    pub fn mu(&self, i: usize, j: usize) -> Option<i64> {
        self.leq(i, j).then(|| {
            if (self.cardinality(j) - self.cardinality(i)).is_multiple_of(2) {
                1
            } else {
                -1
            }
        })
    }

    pub fn labels(&self) -> Vec<String> {
        self.masks.iter().map(|&m| format_subset(m)).collect()
    }

    pub fn poset(&self, limits: &Limits) -> Result<FinitePoset> {
        let labels: Vec<SubsetLabel> = self.masks.iter().map(|&m| SubsetLabel(m)).collect();
        build_poset_with(&labels, |a, b| a.0 & !b.0 == 0, Verification::Auto, limits)
    }

    pub fn zeta_pair(&self, limits: &Limits) -> Result<ZetaPair> {
        moebius_matrix_with(&self.poset(limits)?, limits)
    }
}

struct SubsetLabel(Mask);

impl std::fmt::Display for SubsetLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_subset(self.0))
    }
}
