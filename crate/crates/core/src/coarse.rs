//! Coarse-graining of matrices along an equivalence relation.
//!
//! `H` is compatible with `∼` when the class sums `Σ_{c∈b̃} H(a,c)` do not
//! depend on the representative `a` of `ã`. The coarse matrix is then
//! `H̃(ã,b̃) = Σ_{c∈b̃} H(a,c)`. A dual kernel `Q` is aggregated the other
//! way round, over source classes: `Q̃(ã,b̃) = Σ_{c∈ã} Q(c,b)`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::duality::{variant_dual, DualityVariant, Kernel};
use crate::error::{Error, Result};
use crate::lattices::{skeletons_of, Partition, PartitionLattice, Skeleton, SubsetLattice};
use crate::limits::Limits;
use crate::poset::{moebius_function, MoebiusView, ZetaPair, ZetaView};
use crate::rational::{binomial, int, MatrixView, Rational, RationalMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceRelation {
    class_of: Vec<usize>,
    members: Vec<Vec<usize>>,
    labels: Vec<String>,
}

impl EquivalenceRelation {
    /// `class_of[a]` is the class index of element `a`; classes are
    /// `0..labels.len()` and each must be nonempty.
    pub fn new(class_of: Vec<usize>, labels: Vec<String>) -> Result<Self> {
        let mut members = vec![Vec::new(); labels.len()];
        for (a, &c) in class_of.iter().enumerate() {
            members
                .get_mut(c)
                .ok_or_else(|| {
                    Error::DimensionMismatch(format!("class {c} of element {a} has no label"))
                })?
                .push(a);
        }
        if let Some(c) = members.iter().position(Vec::is_empty) {
            return Err(Error::DimensionMismatch(format!(
                "class {} is empty",
                labels[c]
            )));
        }
        Ok(Self {
            class_of,
            members,
            labels,
        })
    }

    /// Classes are the distinct keys, in increasing key order.
    pub fn from_keys<K: Ord + Clone + ToString>(keys: &[K]) -> Self {
        let mut index: BTreeMap<K, usize> = keys.iter().map(|k| (k.clone(), 0)).collect();
        for (i, v) in index.values_mut().enumerate() {
            *v = i;
        }
        let labels = index.keys().map(ToString::to_string).collect();
        let class_of = keys.iter().map(|k| index[k]).collect();
        Self::new(class_of, labels).expect("keys index every class")
    }

    pub fn trivial(n: usize) -> Self {
        Self::from_keys(&(0..n).collect::<Vec<_>>())
    }

    pub fn one_class(n: usize) -> Self {
        Self::new(vec![0; n], vec!["*".into()]).expect("one nonempty class")
    }

    /// `J ∼ K` iff `|J| = |K|`; classes labelled `"0".."N"`.
    pub fn cardinality(lattice: &SubsetLattice) -> Self {
        let keys: Vec<usize> = (0..lattice.len()).map(|i| lattice.cardinality(i)).collect();
        Self::from_keys(&keys)
    }

    /// `α ∼ β` iff they have the same skeleton; classes follow
    /// [`skeletons_of`] and are labelled `"2+1"` style.
    pub fn skeleton(lattice: &PartitionLattice) -> Self {
        let skeletons = skeletons_of(lattice.ground_size());
        let class_of = lattice
            .partitions()
            .iter()
            .map(|p| {
                let s = p.skeleton();
                skeletons
                    .iter()
                    .position(|x| *x == s)
                    .expect("skeleton of n")
            })
            .collect();
        let labels = skeletons.iter().map(ToString::to_string).collect();
        Self::new(class_of, labels).expect("every skeleton occurs")
    }

    /// Product relation on a product set indexed by `components`.
    pub fn product(r1: &Self, r2: &Self, components: &[(usize, usize)]) -> Self {
        let n2 = r2.class_count();
        let class_of = components
            .iter()
            .map(|&(a, b)| r1.class_of[a] * n2 + r2.class_of[b])
            .collect();
        let mut labels = Vec::with_capacity(r1.class_count() * n2);
        for l1 in &r1.labels {
            for l2 in &r2.labels {
                labels.push(format!("({l1},{l2})"));
            }
        }
        Self::new(class_of, labels).expect("product of nonempty classes")
    }

    pub fn element_count(&self) -> usize {
        self.class_of.len()
    }

    pub fn class_count(&self) -> usize {
        self.members.len()
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    pub fn members(&self, class: usize) -> &[usize] {
        &self.members[class]
    }

    pub fn class_size(&self, class: usize) -> usize {
        self.members[class].len()
    }

    /// `ĥ(ã) = |ã|`.
    pub fn class_sizes(&self) -> Vec<Rational> {
        self.members.iter().map(|m| int(m.len() as i64)).collect()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, class: usize) -> &str {
        &self.labels[class]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoarseResult {
    pub compatible: bool,
    pub coarse: Option<RationalMatrix>,
    /// `(a₁, a₂, b̃)` with `a₁ ∼ a₂` and differing class sums over `b̃`.
    pub witness: Option<(usize, usize, usize)>,
}

impl CoarseResult {
    fn into_matrix(self, matrix: &'static str) -> Result<RationalMatrix> {
        match (self.coarse, self.witness) {
            (Some(m), _) => Ok(m),
            (None, Some((a1, a2, class))) => Err(Error::IncompatibleMatrix {
                matrix,
                a1,
                a2,
                class,
            }),
            (None, None) => unreachable!("incompatible result without witness"),
        }
    }
}

/// Class sums of row `a`.
fn class_sums<M: MatrixView + ?Sized>(h: &M, rel: &EquivalenceRelation, a: usize) -> Vec<Rational> {
    let mut sums = vec![Rational::zero(); rel.class_count()];
    for (c, x) in h.row_nonzeros(a) {
        sums[rel.class_of(c)] += x;
    }
    sums
}

/// Tests the coarse-graining condition over every representative and
/// builds `H̃` when it holds.
pub fn check_compatibility<M: MatrixView + ?Sized>(
    h: &M,
    rel: &EquivalenceRelation,
) -> Result<CoarseResult> {
    let n = rel.element_count();
    if h.nrows() != n || h.ncols() != n {
        return Err(Error::DimensionMismatch(format!(
            "matrix is {}x{}, relation covers {n} elements",
            h.nrows(),
            h.ncols()
        )));
    }
    let k = rel.class_count();
    let mut coarse = RationalMatrix::zeros(k, k);
    for class in 0..k {
        let members = rel.members(class);
        let first = members[0];
        let reference = class_sums(h, rel, first);
        for &other in &members[1..] {
            let sums = class_sums(h, rel, other);
            if let Some(b) = (0..k).find(|&b| sums[b] != reference[b]) {
                return Ok(CoarseResult {
                    compatible: false,
                    coarse: None,
                    witness: Some((first, other, b)),
                });
            }
        }
        for (b, x) in reference.into_iter().enumerate() {
            coarse[(class, b)] = x;
        }
    }
    Ok(CoarseResult {
        compatible: true,
        coarse: Some(coarse),
        witness: None,
    })
}

/// Source-class aggregation `Q̃(ã,b̃) = Σ_{c∈ã} Q(c,b)`, which is the
/// transpose of the row-sum coarsening of `Q'`.
pub fn coarse_source_sums(q: &RationalMatrix, rel: &EquivalenceRelation) -> Result<CoarseResult> {
    let mut r = check_compatibility(&q.transpose(), rel)?;
    r.coarse = r.coarse.map(|m| m.transpose());
    Ok(r)
}

/// Closed-form coarse zeta and Möbius matrices of a subset lattice under
/// cardinality, indexed by `0..=N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoarseSetMatrices {
    /// `Z̃(j,k) = C(N−j, k−j)`
    pub zeta: RationalMatrix,
    /// `(Z⁻¹)~(j,k) = (−1)^{k−j} C(N−j, k−j)`
    pub moebius: RationalMatrix,
    /// `(Z')~(j,k) = C(j,k)`
    pub zeta_transpose: RationalMatrix,
    /// `((Z')⁻¹)~(j,k) = (−1)^{j−k} C(j,k)`
    pub moebius_transpose: RationalMatrix,
}

pub fn coarse_set_matrices(n: usize) -> Result<CoarseSetMatrices> {
    coarse_set_matrices_with(n, &Limits::default())
}

pub fn coarse_set_matrices_with(n: usize, limits: &Limits) -> Result<CoarseSetMatrices> {
    limits.check("coarse subset lattice ground set", n, limits.subset_n)?;
    let m = n + 1;
    let signed = |sign_exp: usize, c| {
        let v = Rational::from_integer(c);
        if sign_exp.is_multiple_of(2) {
            v
        } else {
            -v
        }
    };
    let up = |j: usize, k: usize, alternate: bool| {
        if j <= k {
            signed(
                if alternate { k - j } else { 0 },
                binomial((n - j) as u64, (k - j) as u64),
            )
        } else {
            Rational::zero()
        }
    };
    let down = |j: usize, k: usize, alternate: bool| {
        if k <= j {
            signed(
                if alternate { j - k } else { 0 },
                binomial(j as u64, k as u64),
            )
        } else {
            Rational::zero()
        }
    };
    Ok(CoarseSetMatrices {
        zeta: RationalMatrix::from_fn(m, m, |j, k| up(j, k, false)),
        moebius: RationalMatrix::from_fn(m, m, |j, k| up(j, k, true)),
        zeta_transpose: RationalMatrix::from_fn(m, m, |j, k| down(j, k, false)),
        moebius_transpose: RationalMatrix::from_fn(m, m, |j, k| down(j, k, true)),
    })
}

/// The same four matrices, by coarsening the materialized lattice's zeta
/// matrix and recursively computed Möbius function (no closed forms).
pub fn enumerate_set_coarsening(n: usize, limits: &Limits) -> Result<CoarseSetMatrices> {
    let lattice = crate::lattices::subset_lattice_with(n, limits)?;
    let poset = lattice.poset(limits)?;
    let mu = moebius_function(&poset);
    let rel = EquivalenceRelation::cardinality(&lattice);
    let coarse = |m: &dyn MatrixView, name| check_compatibility(m, &rel)?.into_matrix(name);
    Ok(CoarseSetMatrices {
        zeta: coarse(
            &ZetaView {
                poset: &poset,
                transposed: false,
            },
            "Z",
        )?,
        moebius: coarse(
            &MoebiusView {
                mu: &mu,
                transposed: false,
            },
            "Z^-1",
        )?,
        zeta_transpose: coarse(
            &ZetaView {
                poset: &poset,
                transposed: true,
            },
            "Z'",
        )?,
        moebius_transpose: coarse(
            &MoebiusView {
                mu: &mu,
                transposed: true,
            },
            "(Z')^-1",
        )?,
    })
}

/// Coarse zeta and Möbius matrices of the partition lattice under the
/// skeleton relation, indexed by [`skeletons_of`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoarsePartitionMatrices {
    pub skeletons: Vec<Skeleton>,
    pub zeta: RationalMatrix,
    pub moebius: RationalMatrix,
}

impl CoarsePartitionMatrices {
    pub fn labels(&self) -> Vec<String> {
        self.skeletons.iter().map(ToString::to_string).collect()
    }
}

pub fn coarse_partition_matrices(n: usize) -> Result<CoarsePartitionMatrices> {
    coarse_partition_matrices_with(n, &Limits::default())
}

/// `Z̃(η,κ) = |{γ : <γ> = κ, α ⪯ γ}|` and `(Z⁻¹)~(η,κ) = Σ μ(α,γ)` over
/// the same `γ`, for a representative `α` of `η`. Every entry is recomputed
/// from a second representative and must agree.
pub fn coarse_partition_matrices_with(
    n: usize,
    limits: &Limits,
) -> Result<CoarsePartitionMatrices> {
    let lattice = crate::lattices::partition_lattice_with(n, limits)?;
    let poset = lattice.poset();
    let mu = moebius_function(poset);
    let rel = EquivalenceRelation::skeleton(&lattice);
    let k = rel.class_count();
    let rows = |alpha: usize| {
        let mut z = vec![Rational::zero(); k];
        let mut m = vec![Rational::zero(); k];
        for &(gamma, value) in mu.row(alpha) {
            let class = rel.class_of(gamma);
            z[class] += Rational::one();
            m[class] += int(value);
        }
        (z, m)
    };
    let mut zeta = RationalMatrix::zeros(k, k);
    let mut moebius = RationalMatrix::zeros(k, k);
    for eta in 0..k {
        let members = rel.members(eta);
        let canonical = representative(&lattice, &rel, eta);
        let (z, m) = rows(canonical);
        let other = *members.last().expect("nonempty class");
        if rows(other) != (z.clone(), m.clone()) {
            return Err(Error::Verification(format!(
                "coarse partition row for {} depends on the representative",
                rel.label(eta)
            )));
        }
        for kappa in 0..k {
            zeta[(eta, kappa)] = z[kappa].clone();
            moebius[(eta, kappa)] = m[kappa].clone();
        }
    }
    let skeletons = skeletons_of(n);
    Ok(CoarsePartitionMatrices {
        skeletons,
        zeta,
        moebius,
    })
}

/// The partition with consecutive blocks of sizes `η` (largest first).
fn representative(lattice: &PartitionLattice, rel: &EquivalenceRelation, class: usize) -> usize {
    let skeleton: Skeleton = rel.label(class).parse().expect("skeleton label");
    let mut rgs = Vec::with_capacity(skeleton.total());
    for (b, &size) in skeleton.parts().iter().enumerate() {
        rgs.extend(std::iter::repeat_n(b as u8, size));
    }
    let p = Partition::from_rgs(rgs).expect("consecutive blocks form an RGS");
    lattice.index_of(&p).expect("partition of n")
}

/// Output of the class-size `ĥ`-transform pipeline.
#[derive(Debug, Clone)]
pub struct CoarsePipeline {
    pub labels: Vec<String>,
    pub p_coarse: RationalMatrix,
    pub h_coarse: RationalMatrix,
    /// `ĥ(ã) = |ã|`
    pub h_hat: Vec<Rational>,
    /// `H̃_ĥ = H̃ D_ĥ⁻¹`
    pub h_hat_matrix: RationalMatrix,
    /// `H̃_ĥ⁻¹ = D_ĥ (H⁻¹)~`
    pub h_hat_inverse: RationalMatrix,
    pub q: RationalMatrix,
    /// `Q̃`, before the `ĥ`-transform.
    pub q_coarse: RationalMatrix,
    /// `Q̃_{ĥ⁻¹,ĥ} = D_ĥ⁻¹ Q̃ D_ĥ`
    pub q_hat: Kernel,
    pub p_coarse_kernel: Kernel,
}

/// Coarse duality for an explicit `H`, `H⁻¹`, `P` and dual `Q`.
///
/// Fails with [`Error::IncompatibleMatrix`] when `H`, `H⁻¹` or `P` is not
/// compatible with `rel`. Compatibility of `Q` is derived, not assumed:
/// it is checked and a failure is a verification error.
pub fn coarse_pipeline(
    p: &RationalMatrix,
    h: &RationalMatrix,
    h_inv: &RationalMatrix,
    q: &RationalMatrix,
    rel: &EquivalenceRelation,
) -> Result<CoarsePipeline> {
    let h_coarse = check_compatibility(h, rel)?.into_matrix("H")?;
    let h_inv_coarse = check_compatibility(h_inv, rel)?.into_matrix("H^-1")?;
    let p_coarse = check_compatibility(p, rel)?.into_matrix("P")?;
    let q_coarse = coarse_source_sums(q, rel)?
        .coarse
        .ok_or_else(|| Error::Verification("dual kernel is not compatible".into()))?;

    let h_hat = rel.class_sizes();
    let d = RationalMatrix::diagonal(&h_hat);
    let d_inv = RationalMatrix::diagonal(&h_hat.iter().map(|x| x.recip()).collect::<Vec<_>>());
    let h_hat_matrix = h_coarse.mul(&d_inv)?;
    let h_hat_inverse = d.mul(&h_inv_coarse)?;
    if !h_hat_matrix.mul(&h_hat_inverse)?.is_identity() {
        return Err(Error::Verification("(H⁻¹)~ is not the inverse of H̃".into()));
    }
    let q_hat = d_inv.mul(&q_coarse)?.mul(&d)?;
    if q_hat.transpose() != h_hat_inverse.mul(&p_coarse)?.mul(&h_hat_matrix)? {
        return Err(Error::Verification("coarse duality fails".into()));
    }

    let p_kernel = Kernel::new(p.clone())?;
    let q_kernel = Kernel::new(q.clone())?;
    let p_coarse_kernel = Kernel::new(p_coarse.clone())?;
    let q_hat = Kernel::new(q_hat)?;
    if p_kernel.is_stochastic() && !p_coarse_kernel.is_stochastic() {
        return Err(Error::Verification("coarse P lost stochasticity".into()));
    }
    if q_kernel.is_stochastic() && !q_hat.is_stochastic() {
        return Err(Error::Verification("coarse Q lost stochasticity".into()));
    }
    if q_kernel.is_substochastic() && !q_hat.is_substochastic() {
        return Err(Error::Verification("coarse Q lost substochasticity".into()));
    }
    Ok(CoarsePipeline {
        labels: rel.labels().to_vec(),
        p_coarse,
        h_coarse,
        h_hat,
        h_hat_matrix,
        h_hat_inverse,
        q: q.clone(),
        q_coarse,
        q_hat,
        p_coarse_kernel,
    })
}

/// Computes the `v`-dual of `P` on `zp` and runs [`coarse_pipeline`].
pub fn variant_pipeline(
    p: &RationalMatrix,
    zp: &ZetaPair,
    v: DualityVariant,
    rel: &EquivalenceRelation,
) -> Result<CoarsePipeline> {
    let q = variant_dual(p, zp, v)?;
    coarse_pipeline(p, &v.h_matrix(zp), &v.h_inverse(zp), &q, rel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattices::{partition_lattice, subset_lattice};
    use crate::rational::rat;

    fn set_setup(n: usize) -> (SubsetLattice, ZetaPair, EquivalenceRelation) {
        let l = subset_lattice(n).unwrap();
        let zp = l.zeta_pair(&Limits::default()).unwrap();
        let rel = EquivalenceRelation::cardinality(&l);
        (l, zp, rel)
    }

    #[test]
    fn identity_is_compatible() {
        let (_, _, rel) = set_setup(3);
        let r = check_compatibility(&RationalMatrix::identity(8), &rel).unwrap();
        assert!(r.compatible);
        assert!(r.coarse.unwrap().is_identity());
    }

    #[test]
    fn zeta_cardinality_entry() {
        let (_, zp, rel) = set_setup(3);
        let z = check_compatibility(&zp.zeta, &rel).unwrap().coarse.unwrap();
        assert_eq!(z[(1, 2)], int(2));
        assert_eq!(rel.labels(), ["0", "1", "2", "3"]);
    }

    #[test]
    fn asymmetric_matrix_is_incompatible() {
        let (l, _, rel) = set_setup(2);
        let one = l.index_of(0b01);
        let h = RationalMatrix::from_fn(4, 4, |j, k| int((j == one && k == one) as i64));
        let r = check_compatibility(&h, &rel).unwrap();
        assert!(!r.compatible && r.coarse.is_none());
        let (a1, a2, class) = r.witness.unwrap();
        assert_eq!((rel.class_of(a1), rel.class_of(a2), class), (1, 1, 1));
        assert_eq!(
            r.into_matrix("H").unwrap_err(),
            Error::IncompatibleMatrix {
                matrix: "H",
                a1,
                a2,
                class: 1
            }
        );
    }

    #[test]
    fn closed_forms_small() {
        let c = coarse_set_matrices(3).unwrap();
        assert_eq!(c.zeta[(1, 2)], int(2));
        assert_eq!(c.moebius[(1, 2)], int(-2));
        assert_eq!(c.zeta_transpose[(2, 1)], int(2));
        assert_eq!(c.moebius_transpose[(2, 1)], int(-2));
        for j in 0..4 {
            assert_eq!(c.zeta[(j, j)], int(1));
        }
        assert!(coarse_set_matrices(21).is_err());
    }

    #[test]
    fn closed_forms_match_enumeration() {
        for n in 0..=6 {
            assert_eq!(
                enumerate_set_coarsening(n, &Limits::default()).unwrap(),
                coarse_set_matrices(n).unwrap()
            );
        }
    }

    #[test]
    fn transpose_does_not_commute_with_coarsening() {
        let (_, zp, rel) = set_setup(2);
        let zt = check_compatibility(&zp.zeta.transpose(), &rel)
            .unwrap()
            .coarse
            .unwrap();
        let z = check_compatibility(&zp.zeta, &rel).unwrap().coarse.unwrap();
        assert_ne!(zt, z.transpose());
        assert_eq!(zt[(1, 0)], int(1));
        assert_eq!(z.transpose()[(1, 0)], int(2));
    }

    #[test]
    fn partition_coarse_values() {
        let c = coarse_partition_matrices(3).unwrap();
        assert_eq!(c.labels(), ["1+1+1", "2+1", "3"]);
        assert_eq!(c.zeta[(0, 1)], int(3));
        assert_eq!(c.zeta[(0, 0)], int(1));
        assert_eq!(c.moebius[(0, 2)], int(2));
        assert!(c.zeta.mul(&c.moebius).unwrap().is_identity());
    }

    #[test]
    fn partition_coarse_support_is_merge_order() {
        let c = coarse_partition_matrices(5).unwrap();
        for (i, eta) in c.skeletons.iter().enumerate() {
            for (j, kappa) in c.skeletons.iter().enumerate() {
                assert_eq!(
                    !c.zeta[(i, j)].is_zero(),
                    crate::lattices::skeleton_order(eta, kappa),
                    "{eta} vs {kappa}"
                );
            }
        }
        let l = partition_lattice(5).unwrap();
        let zp = l.zeta_pair(&Limits::default()).unwrap();
        let rel = EquivalenceRelation::skeleton(&l);
        assert_eq!(
            check_compatibility(&zp.zeta, &rel).unwrap().coarse.unwrap(),
            c.zeta
        );
        assert_eq!(
            check_compatibility(&zp.moebius, &rel)
                .unwrap()
                .coarse
                .unwrap(),
            c.moebius
        );
    }

    #[test]
    fn pipeline_trivial_relation() {
        let (l, zp, _) = set_setup(2);
        let p = RationalMatrix::from_fn(4, 4, |_, _| rat(1, 4));
        let rel = EquivalenceRelation::trivial(l.len());
        let r = variant_pipeline(&p, &zp, DualityVariant::Zeta, &rel).unwrap();
        assert_eq!(r.p_coarse, p);
        assert_eq!(r.q_hat.matrix(), &r.q);
    }

    #[test]
    fn pipeline_one_class() {
        // Z has nonconstant row sums, so the one-class relation needs a
        // compatible H; the identity is the simplest.
        let (_, zp, _) = set_setup(2);
        let rel = EquivalenceRelation::one_class(4);
        assert!(!check_compatibility(&zp.zeta, &rel).unwrap().compatible);
        let p = RationalMatrix::from_fn(4, 4, |j, k| if j == k { rat(1, 2) } else { rat(1, 6) });
        let id = RationalMatrix::identity(4);
        let r = coarse_pipeline(&p, &id, &id, &p.transpose(), &rel).unwrap();
        assert_eq!(r.p_coarse, RationalMatrix::identity(1));
        assert_eq!(r.q_hat.matrix(), &RationalMatrix::identity(1));
    }

    #[test]
    fn pipeline_rejects_incompatible_p() {
        let (l, zp, rel) = set_setup(2);
        let one = l.index_of(0b01);
        let p = RationalMatrix::from_fn(4, 4, |j, k| {
            int((if j == one { k == one } else { k == j }) as i64)
        });
        let mut p2 = p.clone();
        p2[(one, one)] = int(0);
        p2[(one, l.index_of(0b11))] = int(1);
        let err = variant_pipeline(&p2, &zp, DualityVariant::Zeta, &rel).unwrap_err();
        assert!(matches!(err, Error::IncompatibleMatrix { matrix: "P", .. }));
    }

    #[test]
    fn relation_validation() {
        assert!(EquivalenceRelation::new(vec![0, 2], vec!["a".into(), "b".into()]).is_err());
        assert!(EquivalenceRelation::new(vec![0, 0], vec!["a".into(), "b".into()]).is_err());
        let r = EquivalenceRelation::from_keys(&[3, 1, 3]);
        assert_eq!(r.labels(), ["1", "3"]);
        assert_eq!(r.members(1), [0, 2]);
    }
}
