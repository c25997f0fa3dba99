use num_traits::{One, Zero};
use serde::Serialize;

use crate::cannings::law::OffspringLaw;
use crate::coarse::{coarse_pipeline, CoarsePipeline, EquivalenceRelation};
use crate::duality::{variant_dual, DualityVariant, Kernel};
use crate::error::{Error, Result};
use crate::lattices::{subset_lattice_with, Mask, SubsetLattice};
use crate::limits::Limits;
use crate::poset::ZetaPair;
use crate::rational::{binomial, Rational, RationalMatrix};

/// `∪_{i∈J} ν_i`
pub fn offspring_of(nu: &[Mask], set: Mask) -> Mask {
    nu.iter()
        .enumerate()
        .filter(|&(i, _)| set >> i & 1 == 1)
        .fold(0, |acc, (_, &part)| acc | part)
}

/// The parents of `J`: the unique minimal `K` with `∪_{i∈K} ν_i ⊇ J`,
/// or `None` when no such set exists.
///
/// Each member of `J` has at most one parent because the `ν_i` are
/// disjoint, so every cover contains `{i : ν_i ∩ J ≠ ∅}`; that set is
/// returned once it is confirmed to cover `J`.
pub fn minimal_cover(nu: &[Mask], set: Mask) -> Option<Mask> {
    let parents = nu
        .iter()
        .enumerate()
        .filter(|&(_, &part)| part & set != 0)
        .fold(0, |acc, (i, _)| acc | 1 << i);
    (offspring_of(nu, parents) & set == set).then_some(parents)
}

#[derive(Debug, Clone)]
pub struct ForwardSetKernel {
    pub law: OffspringLaw,
    pub lattice: SubsetLattice,
    pub p: Kernel,
}

#[derive(Debug, Clone)]
pub struct BackwardSetKernel {
    pub law: OffspringLaw,
    pub lattice: SubsetLattice,
    pub q: Kernel,
}

fn dense_lattice(law: &OffspringLaw, limits: &Limits) -> Result<SubsetLattice> {
    let lattice = subset_lattice_with(law.ground_size(), limits)?;
    limits.check_dense("set-valued Cannings kernel", lattice.len())?;
    Ok(lattice)
}

/// `P(J,K) = ℙ(∪_{i∈J} ν_i = K)`.
pub fn forward_kernel(law: &OffspringLaw) -> Result<ForwardSetKernel> {
    forward_kernel_with(law, &Limits::default())
}

pub fn forward_kernel_with(law: &OffspringLaw, limits: &Limits) -> Result<ForwardSetKernel> {
    let lattice = dense_lattice(law, limits)?;
    let n = lattice.len();
    let p = accumulate(law, n, |nu, j| {
        Some(lattice.index_of(offspring_of(nu, lattice.mask(j))))
    });
    let p = Kernel::new(p)?;
    if !p.is_stochastic() {
        return Err(Error::Verification(
            "forward kernel is not stochastic".into(),
        ));
    }
    Ok(ForwardSetKernel {
        law: law.clone(),
        lattice,
        p,
    })
}

/// `Q(J,K)`: probability that `K` is the set of parents of `J`.
pub fn backward_kernel(law: &OffspringLaw) -> Result<BackwardSetKernel> {
    backward_kernel_with(law, &Limits::default())
}

pub fn backward_kernel_with(law: &OffspringLaw, limits: &Limits) -> Result<BackwardSetKernel> {
    let lattice = dense_lattice(law, limits)?;
    let n = lattice.len();
    let mut orphan = false;
    let q = accumulate(law, n, |nu, j| {
        let cover = minimal_cover(nu, lattice.mask(j));
        orphan |= cover.is_none();
        cover.map(|c| lattice.index_of(c))
    });
    if orphan {
        return Err(Error::Verification(
            "haploid individual without a parent".into(),
        ));
    }
    let q = Kernel::new(q)?;
    if !q.is_stochastic() {
        return Err(Error::Verification(
            "backward kernel is not stochastic".into(),
        ));
    }
    Ok(BackwardSetKernel {
        law: law.clone(),
        lattice,
        q,
    })
}

/// `M(j, step(ν, j)) = ℙ(step(ν, j) = ·)` summed over atoms, counting atoms of
/// equal weight in integers first. A `None` step loses the atom's mass.
pub(crate) fn accumulate(
    law: &OffspringLaw,
    n: usize,
    mut step: impl FnMut(&[Mask], usize) -> Option<usize>,
) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(n, n);
    let mut counts = vec![0u64; n * n];
    for (w, atoms) in law.weight_classes() {
        counts.iter_mut().for_each(|c| *c = 0);
        for nu in atoms {
            for j in 0..n {
                if let Some(k) = step(nu, j) {
                    counts[j * n + k] += 1;
                }
            }
        }
        for (idx, &c) in counts.iter().enumerate() {
            if c > 0 {
                m[(idx / n, idx % n)] += &w * Rational::from_integer(c.into());
            }
        }
    }
    m
}

/// `Q(J,K) = Σ_{L⊆K} (−1)^{|K|−|L|} Σ_{M⊇J} P(L,M)`, by direct summation
/// over submasks and supermasks.
pub fn sylvester_dual(p: &RationalMatrix, lattice: &SubsetLattice) -> RationalMatrix {
    let n = lattice.len();
    let full = lattice.full_mask();
    // upper[L][J] = Σ_{M⊇J} P(L,M)
    let upper = RationalMatrix::from_fn(n, n, |l, j| {
        let jm = lattice.mask(j);
        let free = full & !jm;
        submasks(free)
            .map(|extra| p[(l, lattice.index_of(jm | extra))].clone())
            .sum()
    });
    RationalMatrix::from_fn(n, n, |j, k| {
        let km = lattice.mask(k);
        submasks(km)
            .map(|lm| {
                let term = upper[(lattice.index_of(lm), j)].clone();
                if (km.count_ones() - lm.count_ones()).is_multiple_of(2) {
                    term
                } else {
                    -term
                }
            })
            .sum()
    })
}

/// All submasks of `m`, including `0` and `m`.
pub fn submasks(m: Mask) -> impl Iterator<Item = Mask> {
    let mut next = Some(m);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 { None } else { Some((cur - 1) & m) };
        Some(cur)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DualityRoutes {
    /// `Q' = (Z')⁻¹ P Z'` by matrix products.
    pub matrix: bool,
    /// The inclusion-exclusion form, summed directly.
    pub sylvester: bool,
}

impl DualityRoutes {
    pub fn holds(&self) -> bool {
        self.matrix && self.sylvester
    }
}

pub fn verify_transpose_zeta_duality(
    fk: &ForwardSetKernel,
    bk: &BackwardSetKernel,
) -> Result<DualityRoutes> {
    verify_transpose_zeta_duality_with(fk, bk, &Limits::default())
}

pub fn verify_transpose_zeta_duality_with(
    fk: &ForwardSetKernel,
    bk: &BackwardSetKernel,
    limits: &Limits,
) -> Result<DualityRoutes> {
    if fk.law != bk.law {
        return Err(Error::InvalidLaw(
            "forward and backward kernels use different laws".into(),
        ));
    }
    let zp = fk.lattice.zeta_pair(limits)?;
    let matrix = variant_dual(fk.p.matrix(), &zp, DualityVariant::ZetaTranspose)? == *bk.q.matrix();
    let sylvester = sylvester_dual(fk.p.matrix(), &fk.lattice) == *bk.q.matrix();
    Ok(DualityRoutes { matrix, sylvester })
}

/// `H̃_ĥ(i,j) = C(i,j)/C(N,j)` for `i ≥ j`.
pub fn hypergeometric_matrix(n: usize) -> RationalMatrix {
    RationalMatrix::from_fn(n + 1, n + 1, |i, j| {
        if i >= j {
            Rational::new(binomial(i as u64, j as u64), binomial(n as u64, j as u64))
        } else {
            Rational::zero()
        }
    })
}

/// `H̃_ĥ⁻¹(i,j) = (−1)^{i−j} C(i,j) C(N,i)` for `i ≥ j`.
pub fn hypergeometric_inverse(n: usize) -> RationalMatrix {
    RationalMatrix::from_fn(n + 1, n + 1, |i, j| {
        if i >= j {
            let v =
                Rational::from_integer(binomial(i as u64, j as u64) * binomial(n as u64, i as u64));
            if (i - j) % 2 == 0 {
                v
            } else {
                -v
            }
        } else {
            Rational::zero()
        }
    })
}

/// `P̃(i,j) = ℙ(|ν_1| + … + |ν_i| = j)`.
pub fn coarse_forward_direct(law: &OffspringLaw) -> RationalMatrix {
    let n = law.ground_size();
    let mut p = RationalMatrix::zeros(n + 1, n + 1);
    for (sizes, w) in law.size_profile() {
        let mut total = 0;
        p[(0, 0)] += &w;
        for (i, size) in sizes.iter().enumerate() {
            total += size;
            p[(i + 1, total)] += &w;
        }
    }
    p
}

/// `Q̃_{ĥ⁻¹,ĥ}(i,j) = C(N,j)/C(N,i) · Σ E[∏_{r≤j} C(|ν_r|, l_r)]` over
/// compositions `l_1 + … + l_j = i` with every `l_r ≥ 1`.
pub fn coarse_backward_moments(law: &OffspringLaw) -> RationalMatrix {
    let n = law.ground_size();
    // moment[j][i] = Σ_{l_1+…+l_j = i, l_r ≥ 1} E[∏_{r≤j} C(|ν_r|, l_r)]
    let mut moment = vec![vec![Rational::zero(); n + 1]; n + 1];
    for (sizes, w) in law.size_profile() {
        // ways[i] for the first j parents, built up one parent at a time.
        let mut ways = vec![Rational::zero(); n + 1];
        ways[0] = Rational::one();
        moment[0][0] += &w;
        for j in 1..=n {
            let size = sizes[j - 1] as u64;
            let mut next = vec![Rational::zero(); n + 1];
            for (i, acc) in ways.iter().enumerate() {
                if acc.is_zero() {
                    continue;
                }
                for l in 1..=(n - i).min(size as usize) {
                    next[i + l] += acc * Rational::from_integer(binomial(size, l as u64));
                }
            }
            ways = next;
            for i in 0..=n {
                moment[j][i] += &ways[i] * &w;
            }
        }
    }
    RationalMatrix::from_fn(n + 1, n + 1, |i, j| {
        Rational::new(binomial(n as u64, j as u64), binomial(n as u64, i as u64)) * &moment[j][i]
    })
}

/// Coarse Cannings chain with every closed form checked against the
/// pipeline output.
#[derive(Debug, Clone)]
pub struct CanningsCoarse {
    pub pipeline: CoarsePipeline,
    pub forward_direct: bool,
    pub class_sizes_binomial: bool,
    pub hypergeometric: bool,
    pub hypergeometric_inverse: bool,
    pub moment_formula: bool,
}

impl CanningsCoarse {
    pub fn all_hold(&self) -> bool {
        self.forward_direct
            && self.class_sizes_binomial
            && self.hypergeometric
            && self.hypergeometric_inverse
            && self.moment_formula
    }
}

pub fn coarsen_to_cannings(
    fk: &ForwardSetKernel,
    bk: &BackwardSetKernel,
) -> Result<CanningsCoarse> {
    coarsen_to_cannings_with(fk, bk, &Limits::default())
}

pub fn coarsen_to_cannings_with(
    fk: &ForwardSetKernel,
    bk: &BackwardSetKernel,
    limits: &Limits,
) -> Result<CanningsCoarse> {
    fk.law.require_exchangeable()?;
    let zp: ZetaPair = fk.lattice.zeta_pair(limits)?;
    let v = DualityVariant::ZetaTranspose;
    if variant_dual(fk.p.matrix(), &zp, v)? != *bk.q.matrix() {
        return Err(Error::Verification(
            "backward kernel is not the transpose-zeta dual".into(),
        ));
    }
    let rel = EquivalenceRelation::cardinality(&fk.lattice);
    let pipeline = coarse_pipeline(
        fk.p.matrix(),
        &v.h_matrix(&zp),
        &v.h_inverse(&zp),
        bk.q.matrix(),
        &rel,
    )?;
    let n = fk.law.ground_size();
    let class_sizes_binomial = pipeline
        .h_hat
        .iter()
        .enumerate()
        .all(|(j, h)| *h == Rational::from_integer(binomial(n as u64, j as u64)));
    Ok(CanningsCoarse {
        forward_direct: coarse_forward_direct(&fk.law) == pipeline.p_coarse,
        class_sizes_binomial,
        hypergeometric: hypergeometric_matrix(n) == pipeline.h_hat_matrix,
        hypergeometric_inverse: hypergeometric_inverse(n) == pipeline.h_hat_inverse,
        moment_formula: coarse_backward_moments(&fk.law) == *pipeline.q_hat.matrix(),
        pipeline,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cannings::law::{identity_law, moran_law, wright_fisher_law};
    use crate::rational::{int, rat};

    fn wf2() -> (ForwardSetKernel, BackwardSetKernel) {
        let law = wright_fisher_law(2).unwrap();
        (
            forward_kernel(&law).unwrap(),
            backward_kernel(&law).unwrap(),
        )
    }

    #[test]
    fn covers() {
        let nu = [0b011, 0, 0b100];
        assert_eq!(offspring_of(&nu, 0b101), 0b111);
        assert_eq!(minimal_cover(&nu, 0b110), Some(0b101));
        assert_eq!(minimal_cover(&nu, 0), Some(0));
        assert_eq!(minimal_cover(&[0b01, 0], 0b10), None);
        let mut all: Vec<Mask> = submasks(0b101).collect();
        all.sort();
        assert_eq!(all, [0, 1, 4, 5]);
    }

    #[test]
    fn wright_fisher_two_kernels() {
        let (fk, bk) = wf2();
        let l = &fk.lattice;
        let one = l.index_of(0b01);
        let both = l.index_of(0b11);
        assert_eq!(fk.p.matrix().row(one), vec![rat(1, 4); 4].as_slice());
        assert_eq!(bk.q.matrix()[(one, one)], rat(1, 2));
        assert_eq!(bk.q.matrix()[(one, l.index_of(0b10))], rat(1, 2));
        assert_eq!(
            bk.q.matrix().row(both),
            &[int(0), rat(1, 4), rat(1, 4), rat(1, 2)]
        );
        assert_eq!(fk.p.matrix()[(0, 0)], int(1));
        assert_eq!(fk.p.matrix()[(both, both)], int(1));
        assert_eq!(bk.q.matrix()[(0, 0)], int(1));
    }

    #[test]
    fn duality_routes() {
        let (fk, bk) = wf2();
        assert!(verify_transpose_zeta_duality(&fk, &bk).unwrap().holds());
        let law = moran_law(3).unwrap();
        let r = verify_transpose_zeta_duality(
            &forward_kernel(&law).unwrap(),
            &backward_kernel(&law).unwrap(),
        )
        .unwrap();
        assert!(r.holds());
        let id = identity_law(3).unwrap();
        let (f, b) = (forward_kernel(&id).unwrap(), backward_kernel(&id).unwrap());
        assert!(f.p.matrix().is_identity() && b.q.matrix().is_identity());
        assert!(verify_transpose_zeta_duality(&f, &b).unwrap().holds());
    }

    #[test]
    fn wright_fisher_two_coarse() {
        let (fk, bk) = wf2();
        let c = coarsen_to_cannings(&fk, &bk).unwrap();
        assert!(c.all_hold());
        assert_eq!(
            c.pipeline.q_hat.matrix(),
            &RationalMatrix::from_i64(&[
                &[(1, 1), (0, 1), (0, 1)],
                &[(0, 1), (1, 1), (0, 1)],
                &[(0, 1), (1, 2), (1, 2)],
            ])
        );
        assert_eq!(
            c.pipeline.p_coarse.row(1),
            &[rat(1, 4), rat(1, 2), rat(1, 4)]
        );
    }

    #[test]
    fn hypergeometric_values() {
        assert_eq!(hypergeometric_matrix(3)[(2, 1)], rat(2, 3));
        assert_eq!(hypergeometric_inverse(3)[(2, 1)], int(-6));
        for n in 0..=6 {
            assert!(hypergeometric_matrix(n)
                .mul(&hypergeometric_inverse(n))
                .unwrap()
                .is_identity());
        }
    }

    #[test]
    fn moran_coarse_closed_forms() {
        for n in 2..=4 {
            let law = moran_law(n).unwrap();
            let c = coarsen_to_cannings(
                &forward_kernel(&law).unwrap(),
                &backward_kernel(&law).unwrap(),
            )
            .unwrap();
            assert!(c.all_hold(), "Moran N={n}");
        }
    }

    #[test]
    fn non_exchangeable_law_is_rejected() {
        let law = OffspringLaw::new(
            2,
            vec![(vec![0b11, 0], rat(2, 3)), (vec![0, 0b11], rat(1, 3))],
        )
        .unwrap();
        let (fk, bk) = (
            forward_kernel(&law).unwrap(),
            backward_kernel(&law).unwrap(),
        );
        assert!(verify_transpose_zeta_duality(&fk, &bk).unwrap().holds());
        assert_eq!(
            coarsen_to_cannings(&fk, &bk).unwrap_err(),
            Error::NotExchangeable
        );
    }
}
