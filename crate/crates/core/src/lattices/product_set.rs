use crate::error::Result;
use crate::lattices::subset::{format_subset, Mask};
use crate::limits::Limits;
use crate::poset::{build_poset_with, FinitePoset, Verification};

/// `(𝔅(I)^T, ⊆)` with the product order, elements as `T`-tuples of masks.
#[derive(Clone, Debug)]
pub struct ProductSetLattice {
    n: usize,
    copies: usize,
    poset: FinitePoset,
    /// Tuples in poset index order.
    tuples: Vec<Vec<Mask>>,
}

pub fn format_tuple(tuple: &[Mask]) -> String {
    let parts: Vec<String> = tuple.iter().map(|&m| format_subset(m)).collect();
    format!("({})", parts.join(","))
}

pub fn product_set_lattice(n: usize, copies: usize, limits: &Limits) -> Result<ProductSetLattice> {
    let bits = n * copies;
    limits.check("product-of-sets lattice ground set", bits, limits.subset_n)?;
    limits.check(
        "product-of-sets lattice",
        1usize << bits,
        limits.poset_states,
    )?;
    let per = 1u32 << n;
    let all: Vec<Vec<Mask>> = (0..1u32 << bits)
        .map(|code| (0..copies).map(|t| (code >> (t * n)) % per).collect())
        .collect();
    let labels: Vec<TupleLabel> = all.iter().map(|t| TupleLabel(t.clone())).collect();
    let poset = build_poset_with(
        &labels,
        |a, b| a.0.iter().zip(&b.0).all(|(x, y)| x & !y == 0),
        Verification::Auto,
        limits,
    )?;
    let tuples = (0..poset.len())
        .map(|i| all[poset.source_position(i)].clone())
        .collect();
    Ok(ProductSetLattice {
        n,
        copies,
        poset,
        tuples,
    })
}

impl ProductSetLattice {
    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn copies(&self) -> usize {
        self.copies
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn tuple(&self, i: usize) -> &[Mask] {
        &self.tuples[i]
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    /// `μ(J⃗,K⃗) = (-1)^{Σ_t (|K_t| - |J_t|)}` for `J⃗ ⊆ K⃗`.
    pub fn mu(&self, i: usize, j: usize) -> Option<i64> {
        if !self.poset.leq(i, j) {
            return None;
        }
        let diff: u32 = self.tuples[j]
            .iter()
            .zip(&self.tuples[i])
            .map(|(k, jj)| k.count_ones() - jj.count_ones())
            .sum();
        Some(if diff.is_multiple_of(2) { 1 } else { -1 })
    }

    /// The order isomorphism onto `𝔅(I × {1..T})`: bit `t·N + i` is set
    /// iff `i ∈ J_t`.
    pub fn flatten(&self, i: usize) -> Mask {
        flatten_tuple(&self.tuples[i], self.n)
    }
}

pub fn flatten_tuple(tuple: &[Mask], n: usize) -> Mask {
    tuple
        .iter()
        .enumerate()
        .fold(0, |acc, (t, &m)| acc | m << (t * n))
}

struct TupleLabel(Vec<Mask>);

impl std::fmt::Display for TupleLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_tuple(&self.0))
    }
}
