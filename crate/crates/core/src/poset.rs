//! Finite posets, their zeta and Möbius matrices, and product posets.
//!
//! Elements are stored in a canonical linear extension: a stable sort by
//! (height in the order, input position). Under that order the zeta matrix
//! is unitriangular, so its inverse is exact and `det Z = 1`.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{Error, OrderAxiom, Result};
use crate::limits::Limits;
use crate::rational::{int, MatrixView, Rational, RationalMatrix};

/// Fixed-width bit set over element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
        }
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + t)
            })
        })
    }

    /// Elements of `self ∩ other`.
    pub fn iter_and<'a>(&'a self, other: &'a BitSet) -> impl Iterator<Item = usize> + 'a {
        self.words
            .iter()
            .zip(&other.words)
            .enumerate()
            .flat_map(|(k, (&a, &b))| {
                let mut w = a & b;
                std::iter::from_fn(move || {
                    if w == 0 {
                        return None;
                    }
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + t)
                })
            })
    }
}

/// Whether order axioms are checked when a poset is built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Verification {
    /// Verify when the poset has at most `Limits::verify_states` elements.
    #[default]
    Auto,
    Always,
    /// Skip verification; for orders that are correct by construction.
    Never,
}

#[derive(Clone, Debug)]
pub struct FinitePoset {
    labels: Vec<String>,
    /// `source[i]` is the input position of the element at index `i`.
    source: Vec<usize>,
    /// `up[i]` holds every `j` with `i ⪯ j`.
    up: Vec<BitSet>,
    /// `down[j]` holds every `i` with `i ⪯ j`.
    down: Vec<BitSet>,
    lookup: HashMap<String, usize>,
}

impl PartialEq for FinitePoset {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.up == other.up
    }
}

impl FinitePoset {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.lookup.get(label).copied()
    }

    /// Input position of the element stored at index `i`.
    pub fn source_position(&self, i: usize) -> usize {
        self.source[i]
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    pub fn up_set(&self, a: usize) -> &BitSet {
        &self.up[a]
    }

    pub fn down_set(&self, b: usize) -> &BitSet {
        &self.down[b]
    }

    /// Number of pairs `a ⪯ b`.
    pub fn comparable_pairs(&self) -> usize {
        self.up.iter().map(BitSet::count).sum()
    }

    /// Global minimum, if there is one.
    pub fn bottom(&self) -> Option<usize> {
        (0..self.len()).find(|&a| self.up[a].count() == self.len())
    }

    /// Global maximum, if there is one.
    pub fn top(&self) -> Option<usize> {
        (0..self.len()).find(|&b| self.down[b].count() == self.len())
    }
}

/// Builds a poset from distinct labels and an order predicate.
///
/// The index order is a stable topological sort by (height, input
/// position), where height is the length of the longest chain below the
/// element.
pub fn build_poset<L, F>(labels: &[L], leq: F) -> Result<FinitePoset>
where
    L: ToString,
    F: Fn(&L, &L) -> bool,
{
    build_poset_with(labels, leq, Verification::Auto, &Limits::default())
}

pub fn build_poset_with<L, F>(
    labels: &[L],
    leq: F,
    verification: Verification,
    limits: &Limits,
) -> Result<FinitePoset>
where
    L: ToString,
    F: Fn(&L, &L) -> bool,
{
    let n = labels.len();
    limits.check("poset", n, limits.poset_states)?;
    let names: Vec<String> = labels.iter().map(ToString::to_string).collect();
    let mut seen = HashMap::with_capacity(n);
    for (i, name) in names.iter().enumerate() {
        if seen.insert(name.clone(), i).is_some() {
            return Err(Error::DuplicateLabel(name.clone()));
        }
    }

    // Relation in input order.
    let mut up_in: Vec<BitSet> = (0..n).map(|_| BitSet::new(n)).collect();
    for i in 0..n {
        for j in 0..n {
            if leq(&labels[i], &labels[j]) {
                up_in[i].insert(j);
            }
        }
    }

    let verify = match verification {
        Verification::Always => true,
        Verification::Never => false,
        Verification::Auto => n <= limits.verify_states,
    };
    if verify {
        verify_order(&names, &up_in)?;
    }

    let order = canonical_order(&up_in);
    let mut position = vec![0; n];
    for (idx, &src) in order.iter().enumerate() {
        position[src] = idx;
    }

    let mut up: Vec<BitSet> = (0..n).map(|_| BitSet::new(n)).collect();
    let mut down: Vec<BitSet> = (0..n).map(|_| BitSet::new(n)).collect();
    for (src_a, row) in up_in.iter().enumerate() {
        let a = position[src_a];
        for src_b in row.iter() {
            let b = position[src_b];
            up[a].insert(b);
            down[b].insert(a);
        }
    }
    let labels: Vec<String> = order.iter().map(|&s| names[s].clone()).collect();
    let lookup = labels
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, l)| (l, i))
        .collect();
    Ok(FinitePoset {
        labels,
        source: order,
        up,
        down,
        lookup,
    })
}

fn verify_order(names: &[String], up: &[BitSet]) -> Result<()> {
    let n = names.len();
    let violation = |kind, a: usize, b: usize, c: usize| Error::PartialOrderViolation {
        kind,
        a: names[a].clone(),
        b: names[b].clone(),
        c: names[c].clone(),
    };
    for a in 0..n {
        if !up[a].contains(a) {
            return Err(violation(OrderAxiom::Reflexivity, a, a, a));
        }
    }
    for a in 0..n {
        for b in up[a].iter() {
            if b != a && up[b].contains(a) {
                return Err(violation(OrderAxiom::Antisymmetry, a, b, a));
            }
        }
    }
    for a in 0..n {
        for b in up[a].iter() {
            if !up[b].is_subset(&up[a]) {
                let c = up[b]
                    .iter()
                    .find(|&c| !up[a].contains(c))
                    .expect("non-subset has a witness");
                return Err(violation(OrderAxiom::Transitivity, a, b, c));
            }
        }
    }
    Ok(())
}

/// Input positions sorted by (height, input position).
fn canonical_order(up: &[BitSet]) -> Vec<usize> {
    let n = up.len();
    let mut down_count = vec![0usize; n];
    for row in up {
        for j in row.iter() {
            down_count[j] += 1;
        }
    }
    // Sorting by the size of the down-set is already a linear extension;
    // heights are filled in along it.
    let mut ext: Vec<usize> = (0..n).collect();
    ext.sort_by_key(|&i| (down_count[i], i));
    let mut height = vec![0usize; n];
    for &a in &ext {
        for b in up[a].iter() {
            if b != a {
                height[b] = height[b].max(height[a] + 1);
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (height[i], i));
    order
}

/// Möbius function stored on comparable pairs only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoebiusFunction {
    /// `up[a]` lists `(b, μ(a,b))` for every `b ⪰ a`, by increasing `b`.
    up: Vec<Vec<(usize, i64)>>,
    /// `down[b]` lists `(a, μ(a,b))` for every `a ⪯ b`, by increasing `a`.
    down: Vec<Vec<(usize, i64)>>,
}

impl MoebiusFunction {
    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    /// `μ(a,b)`, or `None` when `a ⋠ b`.
    pub fn get(&self, a: usize, b: usize) -> Option<i64> {
        self.up[a]
            .binary_search_by_key(&b, |&(c, _)| c)
            .ok()
            .map(|k| self.up[a][k].1)
    }

    pub fn row(&self, a: usize) -> &[(usize, i64)] {
        &self.up[a]
    }

    pub fn column(&self, b: usize) -> &[(usize, i64)] {
        &self.down[b]
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.up
            .iter()
            .enumerate()
            .flat_map(|(a, row)| row.iter().map(move |&(b, m)| (a, b, m)))
    }
}

/// Möbius function by the recursion `μ(a,a) = 1`,
/// `μ(a,b) = -Σ_{a⪯c≺b} μ(a,c)` for `a ≺ b`.
pub fn moebius_function(p: &FinitePoset) -> MoebiusFunction {
    let n = p.len();
    let mut up = vec![Vec::new(); n];
    let mut vals = vec![0i64; n];
    for a in 0..n {
        let above: Vec<usize> = p.up_set(a).iter().collect();
        for &b in &above {
            let m = if b == a {
                1
            } else {
                let mut s: i64 = 0;
                for c in p.up_set(a).iter_and(p.down_set(b)) {
                    if c != b {
                        s = s.checked_add(vals[c]).expect("Möbius value overflows i64");
                    }
                }
                -s
            };
            vals[b] = m;
            up[a].push((b, m));
        }
    }
    let mut down = vec![Vec::new(); n];
    for (a, row) in up.iter().enumerate() {
        for &(b, m) in row {
            down[b].push((a, m));
        }
    }
    MoebiusFunction { up, down }
}

pub fn zeta_matrix(p: &FinitePoset) -> RationalMatrix {
    RationalMatrix::from_fn(p.len(), p.len(), |a, b| {
        if p.leq(a, b) {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
}

/// Zeta matrix, its exact inverse, and the integer Möbius function.
#[derive(Clone, Debug)]
pub struct ZetaPair {
    pub poset: FinitePoset,
    pub zeta: RationalMatrix,
    pub moebius: RationalMatrix,
    pub mu: MoebiusFunction,
}

impl ZetaPair {
    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }
}

/// Builds the [`ZetaPair`] and verifies `Z·Z⁻¹ = Z⁻¹·Z = I` exactly.
pub fn moebius_matrix(p: &FinitePoset) -> Result<ZetaPair> {
    moebius_matrix_with(p, &Limits::default())
}

pub fn moebius_matrix_with(p: &FinitePoset, limits: &Limits) -> Result<ZetaPair> {
    limits.check_dense("zeta matrix", p.len())?;
    let mu = moebius_function(p);
    let zeta = zeta_matrix(p);
    let mut moebius = RationalMatrix::zeros(p.len(), p.len());
    for (a, b, m) in mu.pairs() {
        moebius[(a, b)] = int(m);
    }
    if !zeta.mul(&moebius)?.is_identity() || !moebius.mul(&zeta)?.is_identity() {
        return Err(Error::Verification(
            "zeta times Möbius is not the identity".into(),
        ));
    }
    Ok(ZetaPair {
        poset: p.clone(),
        zeta,
        moebius,
        mu,
    })
}

/// Returns `(Z', (Z⁻¹)')`, checking that the second inverts the first.
pub fn transpose_pair(zp: &ZetaPair) -> Result<(RationalMatrix, RationalMatrix)> {
    let zt = zp.zeta.transpose();
    let mt = zp.moebius.transpose();
    if !zt.mul(&mt)?.is_identity() || !mt.mul(&zt)?.is_identity() {
        return Err(Error::Verification(
            "transposed Möbius matrix does not invert transposed zeta".into(),
        ));
    }
    Ok((zt, mt))
}

/// Product order on `P1 × P2`; labels are `(a,b)`.
pub fn product_poset(p1: &FinitePoset, p2: &FinitePoset) -> Result<FinitePoset> {
    product_poset_with(p1, p2, &Limits::default())
}

pub fn product_poset_with(
    p1: &FinitePoset,
    p2: &FinitePoset,
    limits: &Limits,
) -> Result<FinitePoset> {
    let size = p1.len().checked_mul(p2.len()).ok_or(Error::SizeOverflow {
        what: "product poset",
        requested: usize::MAX,
        cap: limits.poset_states,
    })?;
    limits.check("product poset", size, limits.poset_states)?;
    let pairs: Vec<(usize, usize)> = (0..p1.len())
        .flat_map(|a| (0..p2.len()).map(move |b| (a, b)))
        .collect();
    let labels: Vec<PairLabel> = pairs
        .iter()
        .map(|&(a, b)| PairLabel {
            a,
            b,
            text: format!("({},{})", p1.label(a), p2.label(b)),
        })
        .collect();
    build_poset_with(
        &labels,
        |x, y| p1.leq(x.a, y.a) && p2.leq(x.b, y.b),
        Verification::Never,
        limits,
    )
}

/// Component indices `(i1, i2)` of every element of `product_poset(p1, p2)`.
pub fn product_components(p2_len: usize, product: &FinitePoset) -> Vec<(usize, usize)> {
    (0..product.len())
        .map(|i| {
            let s = product.source_position(i);
            (s / p2_len, s % p2_len)
        })
        .collect()
}

struct PairLabel {
    a: usize,
    b: usize,
    text: String,
}

impl std::fmt::Display for PairLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.text)
    }
}

/// Lazy zeta matrix `Z` (or `Z'`) of a poset.
pub struct ZetaView<'a> {
    pub poset: &'a FinitePoset,
    pub transposed: bool,
}

impl MatrixView for ZetaView<'_> {
    fn nrows(&self) -> usize {
        self.poset.len()
    }

    fn ncols(&self) -> usize {
        self.poset.len()
    }

    fn row_nonzeros(&self, i: usize) -> Vec<(usize, Rational)> {
        let set = if self.transposed {
            self.poset.down_set(i)
        } else {
            self.poset.up_set(i)
        };
        set.iter().map(|j| (j, Rational::one())).collect()
    }
}

/// Lazy Möbius matrix `Z⁻¹` (or `(Z⁻¹)'`) of a poset.
pub struct MoebiusView<'a> {
    pub mu: &'a MoebiusFunction,
    pub transposed: bool,
}

impl MatrixView for MoebiusView<'_> {
    fn nrows(&self) -> usize {
        self.mu.len()
    }

    fn ncols(&self) -> usize {
        self.mu.len()
    }

    fn row_nonzeros(&self, i: usize) -> Vec<(usize, Rational)> {
        let row = if self.transposed {
            self.mu.column(i)
        } else {
            self.mu.row(i)
        };
        row.iter()
            .filter(|&&(_, m)| m != 0)
            .map(|&(j, m)| (j, int(m)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> FinitePoset {
        let labels: Vec<usize> = (0..n).collect();
        build_poset(&labels, |a, b| a <= b).unwrap()
    }

    #[test]
    fn chain_keeps_input_order() {
        let p = chain(3);
        assert_eq!(p.labels(), ["0", "1", "2"]);
        assert!(p.lt(0, 2));
        assert_eq!(p.bottom(), Some(0));
        assert_eq!(p.top(), Some(2));
    }

    #[test]
    fn index_order_is_a_linear_extension() {
        // Input lists the top first.
        let labels = ["top", "mid", "bot"];
        let rank = |s: &&str| match *s {
            "bot" => 0,
            "mid" => 1,
            _ => 2,
        };
        let p = build_poset(&labels, |a, b| rank(a) <= rank(b)).unwrap();
        assert_eq!(p.labels(), ["bot", "mid", "top"]);
        assert!(zeta_matrix(&p).is_upper_triangular());
    }

    #[test]
    fn antichain_zeta_is_identity() {
        let p = build_poset(&["a", "b"], |x, y| x == y).unwrap();
        assert!(zeta_matrix(&p).is_identity());
        let p3 = build_poset(&["a", "b", "c"], |x, y| x == y).unwrap();
        assert!(zeta_matrix(&p3).is_identity());
    }

    #[test]
    fn transitivity_failure_has_witness() {
        let pairs = [("a", "b"), ("b", "c")];
        let err =
            build_poset(&["a", "b", "c"], |x, y| x == y || pairs.contains(&(*x, *y))).unwrap_err();
        assert_eq!(
            err,
            Error::PartialOrderViolation {
                kind: OrderAxiom::Transitivity,
                a: "a".into(),
                b: "b".into(),
                c: "c".into(),
            }
        );
    }

    #[test]
    fn reflexivity_and_antisymmetry_failures() {
        let err = build_poset(&["a", "b"], |x, y| x != y || *x == "a").unwrap_err();
        assert!(matches!(
            err,
            Error::PartialOrderViolation {
                kind: OrderAxiom::Reflexivity,
                ..
            }
        ));
        let err = build_poset(&["a", "b"], |_, _| true).unwrap_err();
        assert!(matches!(
            err,
            Error::PartialOrderViolation {
                kind: OrderAxiom::Antisymmetry,
                ..
            }
        ));
        assert_eq!(
            build_poset(&["a", "a"], |_, _| true).unwrap_err(),
            Error::DuplicateLabel("a".into())
        );
    }

    #[test]
    fn two_chain_zeta() {
        let z = zeta_matrix(&chain(2));
        assert_eq!(
            z,
            RationalMatrix::from_i64(&[&[(1, 1), (1, 1)], &[(0, 1), (1, 1)]])
        );
    }

    #[test]
    fn three_chain_moebius() {
        let zp = moebius_matrix(&chain(3)).unwrap();
        assert_eq!(zp.mu.get(0, 1), Some(-1));
        assert_eq!(zp.mu.get(0, 2), Some(0));
        assert_eq!(zp.mu.get(1, 2), Some(-1));
        assert_eq!(zp.mu.get(2, 0), None);
        for a in 0..3 {
            assert_eq!(zp.mu.get(a, a), Some(1));
        }
    }

    #[test]
    fn two_chain_transpose_pair() {
        let zp = moebius_matrix(&chain(2)).unwrap();
        let (zt, mt) = transpose_pair(&zp).unwrap();
        assert_eq!(
            zt,
            RationalMatrix::from_i64(&[&[(1, 1), (0, 1)], &[(1, 1), (1, 1)]])
        );
        assert!(mt.mul(&zt).unwrap().is_identity());
    }

    #[test]
    fn square_is_product_of_chains() {
        let c = chain(2);
        let sq = product_poset(&c, &c).unwrap();
        assert_eq!(sq.len(), 4);
        let zp = moebius_matrix(&sq).unwrap();
        let bot = sq.index_of("(0,0)").unwrap();
        let top = sq.index_of("(1,1)").unwrap();
        assert_eq!(zp.mu.get(bot, top), Some(1));
        let comps = product_components(2, &sq);
        assert_eq!(comps[bot], (0, 0));
        assert_eq!(comps[top], (1, 1));
    }

    #[test]
    fn antichain_times_poset_is_disjoint_copies() {
        let anti = build_poset(&["x", "y"], |a, b| a == b).unwrap();
        let c = chain(3);
        let prod = product_poset(&anti, &c).unwrap();
        let comps = product_components(3, &prod);
        for i in 0..prod.len() {
            for j in 0..prod.len() {
                let (a1, b1) = comps[i];
                let (a2, b2) = comps[j];
                assert_eq!(prod.leq(i, j), a1 == a2 && b1 <= b2);
            }
        }
    }

    #[test]
    fn product_respects_cap() {
        let c = chain(3);
        let limits = Limits::default().with_state_cap(8);
        assert!(matches!(
            product_poset_with(&c, &c, &limits),
            Err(Error::SizeOverflow {
                requested: 9,
                cap: 8,
                ..
            })
        ));
    }

    #[test]
    fn views_match_dense() {
        let c = chain(3);
        let zp = moebius_matrix(&c).unwrap();
        for transposed in [false, true] {
            let zv = ZetaView {
                poset: &c,
                transposed,
            };
            let mv = MoebiusView {
                mu: &zp.mu,
                transposed,
            };
            let z = if transposed {
                zp.zeta.transpose()
            } else {
                zp.zeta.clone()
            };
            let m = if transposed {
                zp.moebius.transpose()
            } else {
                zp.moebius.clone()
            };
            for i in 0..3 {
                assert_eq!(zv.row_nonzeros(i), z.row_nonzeros(i));
                assert_eq!(mv.row_nonzeros(i), m.row_nonzeros(i));
            }
        }
    }
}
