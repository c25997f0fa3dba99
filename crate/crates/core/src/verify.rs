//! The `verify-all` suite: every exact identity the library relies on,
//! checked at sizes bounded by `max_n`, plus the seeded Monte Carlo
//! comparison.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cannings::{
    backward_kernel, coarsen_multiallelic, coarsen_to_cannings, forward_kernel,
    monte_carlo_duality, moran_law, multiallelic_kernels, verify_transpose_zeta_duality,
    wright_fisher_law, OffspringLaw,
};
use crate::coarse::{
    check_compatibility, coarse_partition_matrices_with, coarse_set_matrices,
    enumerate_set_coarsening, EquivalenceRelation,
};
use crate::duality::{
    h_dual, positivity_certificate, strong_condition_check, support_implication_check,
    variant_dual, DualityVariant,
};
use crate::error::Result;
use crate::lattices::{partition_lattice_with, partition_moebius_closed_form, subset_lattice_with};
use crate::limits::Limits;
use crate::poset::{
    build_poset, moebius_function, product_components, product_poset_with, ZetaPair,
};
use crate::rational::{int, rat, Rational, RationalMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Upper bound on every ground-set size used by the suite.
    pub max_n: usize,
    pub kernels_per_variant: usize,
    pub reps: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            max_n: 4,
            kernels_per_variant: 100,
            reps: 100_000,
            seed: 2024,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub max_n: usize,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn run(name: &str, f: impl FnOnce() -> Result<(bool, String)>) -> CheckResult {
    let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
    CheckResult {
        name: name.to_string(),
        passed,
        detail,
    }
}

pub fn verify_all(config: &VerifyConfig, limits: &Limits) -> VerifyReport {
    let m = config.max_n;
    let checks = vec![
        run("zeta-inverse", || zeta_inverse(m.min(5), limits)),
        run("moebius-closed-forms", || closed_forms(m.min(5), limits)),
        run("moebius-product", || product_formula(m.min(4), limits)),
        run("positivity-criteria", || {
            positivity(m.min(3), config, limits)
        }),
        run("strong-criteria", || strong(m.min(3), config, limits)),
        run("duality-powers", || {
            duality_powers(m.min(3), config, limits)
        }),
        run("coarse-set-closed-forms", || coarse_sets(m.min(12), limits)),
        run("coarse-partition", || coarse_partitions(m.min(5), limits)),
        run("cannings-duality", || cannings_duality(m.min(4))),
        run("coarse-cannings", || coarse_cannings(m.min(4), m.min(6))),
        run("multi-allelic", || multi_allelic(m.min(3))),
        run("wright-fisher-2", wright_fisher_two),
        run("monte-carlo", || monte_carlo(m.min(4), config)),
    ];
    VerifyReport {
        max_n: m,
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

fn subset_pair(n: usize, limits: &Limits) -> Result<ZetaPair> {
    subset_lattice_with(n, limits)?.zeta_pair(limits)
}

fn zeta_inverse(max_n: usize, limits: &Limits) -> Result<(bool, String)> {
    let mut sizes = Vec::new();
    for n in 0..=max_n {
        let zp = subset_pair(n, limits)?;
        if zp.zeta.inverse()? != zp.moebius {
            return Ok((false, format!("subset lattice N={n}")));
        }
        sizes.push(zp.len());
    }
    for n in 1..=max_n {
        let zp = partition_lattice_with(n, limits)?.zeta_pair(limits)?;
        if zp.zeta.inverse()? != zp.moebius {
            return Ok((false, format!("partition lattice n={n}")));
        }
        sizes.push(zp.len());
    }
    Ok((true, format!("orders {sizes:?}")))
}

fn closed_forms(max_n: usize, limits: &Limits) -> Result<(bool, String)> {
    let mut pairs = 0;
    for n in 0..=max_n {
        let l = subset_lattice_with(n, limits)?;
        let mu = moebius_function(&l.poset(limits)?);
        for (a, b, v) in mu.pairs() {
            if l.mu(a, b) != Some(v) {
                return Ok((false, format!("subset N={n} pair ({a},{b})")));
            }
            pairs += 1;
        }
    }
    for n in 1..=max_n {
        let l = partition_lattice_with(n, limits)?;
        let mu = moebius_function(l.poset());
        for (a, b, v) in mu.pairs() {
            if partition_moebius_closed_form(l.partition(a), l.partition(b))? != v {
                return Ok((false, format!("partition n={n} pair ({a},{b})")));
            }
            pairs += 1;
        }
    }
    Ok((true, format!("{pairs} comparable pairs")))
}

fn product_formula(max_n: usize, limits: &Limits) -> Result<(bool, String)> {
    let chain = |k: usize| build_poset(&(0..k).collect::<Vec<_>>(), |a, b| a <= b);
    let mut cases = vec![(chain(4)?, chain(5)?), (chain(3)?, chain(3)?)];
    for (a, b) in [(1, 2), (2, 2), (max_n, max_n)] {
        cases.push((
            subset_lattice_with(a, limits)?.poset(limits)?,
            subset_lattice_with(b, limits)?.poset(limits)?,
        ));
    }
    let mut sizes = Vec::new();
    for (p1, p2) in &cases {
        let prod = product_poset_with(p1, p2, limits)?;
        let (m1, m2, m) = (
            moebius_function(p1),
            moebius_function(p2),
            moebius_function(&prod),
        );
        let comp = product_components(p2.len(), &prod);
        for (x, y, v) in m.pairs() {
            let (x1, x2) = comp[x];
            let (y1, y2) = comp[y];
            let expected = m1.get(x1, y1).zip(m2.get(x2, y2)).map(|(a, b)| a * b);
            if expected != Some(v) {
                return Ok((false, format!("product of sizes {}x{}", p1.len(), p2.len())));
            }
        }
        sizes.push(prod.len());
    }
    Ok((true, format!("product orders {sizes:?}")))
}

/// Nonnegative rational matrix with entries `k/6`, each nonzero with
/// probability `density`.
pub fn random_kernel(rng: &mut impl Rng, n: usize, density: f64) -> RationalMatrix {
    RationalMatrix::from_fn(n, n, |_, _| {
        if rng.gen_bool(density) {
            rat(rng.gen_range(1..=6), 6)
        } else {
            int(0)
        }
    })
}

/// A kernel whose columns (or rows, per variant) lie in the cone of the
/// strong condition: each is `Z w` or `Z' w` for some `w ≥ 0`. With
/// `stochastic`, `w > 0` and rows (row variants only) are normalized to sum
/// to one, which keeps them in the cone and makes the kernel irreducible.
pub fn cone_kernel(
    rng: &mut impl Rng,
    zp: &ZetaPair,
    v: DualityVariant,
    stochastic: bool,
) -> RationalMatrix {
    let n = zp.len();
    let zt = zp.zeta.transpose();
    let mut vectors: Vec<Vec<Rational>> = (0..n)
        .map(|_| {
            let low = i64::from(stochastic);
            let w: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(low..=6), 6)).collect();
            let h = match v {
                DualityVariant::Zeta | DualityVariant::MoebiusTranspose => &zp.zeta,
                DualityVariant::ZetaTranspose | DualityVariant::Moebius => &zt,
            };
            h.mul_vec(&w).expect("square")
        })
        .collect();
    let by_rows = matches!(
        v,
        DualityVariant::Moebius | DualityVariant::MoebiusTranspose
    );
    if by_rows && stochastic {
        for row in &mut vectors {
            let total: Rational = row.iter().sum();
            row.iter_mut().for_each(|x| *x /= &total);
        }
    }
    RationalMatrix::from_fn(n, n, |i, j| {
        if by_rows {
            vectors[i][j].clone()
        } else {
            vectors[j][i].clone()
        }
    })
}

fn positivity(n: usize, config: &VerifyConfig, limits: &Limits) -> Result<(bool, String)> {
    let zp = subset_pair(n, limits)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut counts = Vec::new();
    for v in DualityVariant::ALL {
        let (mut yes, mut no) = (0, 0);
        for k in 0..config.kernels_per_variant {
            let p = match k % 4 {
                0 => random_kernel(&mut rng, zp.len(), 1.0),
                1 => random_kernel(&mut rng, zp.len(), 0.15),
                2 => RationalMatrix::identity(zp.len())
                    .scale(&int(3))
                    .add(&random_kernel(&mut rng, zp.len(), 0.05))?,
                _ => cone_kernel(&mut rng, &zp, v, false),
            };
            let r = positivity_certificate(&p, &zp, v)?;
            if !r.consistent() {
                return Ok((
                    false,
                    format!("{v}: verdict differs from Q >= 0 on instance {k}"),
                ));
            }
            if r.condition_i {
                yes += 1;
            } else {
                no += 1;
            }
        }
        counts.push(format!("{v}: {yes} nonnegative, {no} not"));
    }
    Ok((true, counts.join("; ")))
}

fn strong(n: usize, config: &VerifyConfig, limits: &Limits) -> Result<(bool, String)> {
    let zp = subset_pair(n, limits)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0x5eed);
    let per = (config.kernels_per_variant / 4).max(1);
    let mut invariant_checks = 0;
    for v in DualityVariant::ALL {
        for k in 0..per {
            let stochastic = k % 2 == 0;
            let p = cone_kernel(&mut rng, &zp, v, stochastic);
            let r = strong_condition_check(&p, &zp, v)?;
            if !r.condition_ii || r.monotone_holds != Some(true) {
                return Ok((false, format!("{v}: monotonicity fails on instance {k}")));
            }
            for flag in [r.invariant_in_cone, r.dual_invariant_monotone]
                .into_iter()
                .flatten()
            {
                if !flag {
                    return Ok((
                        false,
                        format!("{v}: invariant distribution check fails on instance {k}"),
                    ));
                }
                invariant_checks += 1;
            }
            let q = &r.q;
            if !support_implication_check(&p, q, &zp, v.support_direction()) {
                return Ok((
                    false,
                    format!("{v}: support implication fails on instance {k}"),
                ));
            }
        }
    }
    Ok((
        true,
        format!(
            "{} kernels, {invariant_checks} invariant-distribution checks",
            4 * per
        ),
    ))
}

fn duality_powers(n: usize, config: &VerifyConfig, limits: &Limits) -> Result<(bool, String)> {
    let zp = subset_pair(n, limits)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ 0xd0a1);
    for v in DualityVariant::ALL {
        let p = random_kernel(&mut rng, zp.len(), 0.5);
        let h = v.h_matrix(&zp);
        let q = variant_dual(&p, &zp, v)?;
        if h_dual(&p, &h)? != q {
            return Ok((false, format!("{v}: general and variant duals differ")));
        }
        let qt = q.transpose();
        for k in 1..=4 {
            if h.mul(&qt.pow(k)?)? != p.pow(k)?.mul(&h)? {
                return Ok((false, format!("{v}: power {k}")));
            }
        }
    }
    Ok((true, "H (Q')^n = P^n H for n <= 4".into()))
}

fn coarse_sets(max_n: usize, limits: &Limits) -> Result<(bool, String)> {
    for n in 0..=max_n {
        if enumerate_set_coarsening(n, limits)? != coarse_set_matrices(n)? {
            return Ok((false, format!("N={n}")));
        }
    }
    Ok((true, format!("N <= {max_n}")))
}

fn coarse_partitions(max_n: usize, limits: &Limits) -> Result<(bool, String)> {
    for n in 1..=max_n {
        let c = coarse_partition_matrices_with(n, limits)?;
        let l = partition_lattice_with(n, limits)?;
        let zp = l.zeta_pair(limits)?;
        let rel = EquivalenceRelation::skeleton(&l);
        let z = check_compatibility(&zp.zeta, &rel)?.coarse;
        let m = check_compatibility(&zp.moebius, &rel)?.coarse;
        if z.as_ref() != Some(&c.zeta)
            || m.as_ref() != Some(&c.moebius)
            || !c.zeta.mul(&c.moebius)?.is_identity()
        {
            return Ok((false, format!("n={n}")));
        }
    }
    Ok((true, format!("n <= {max_n}")))
}

fn laws(max_n: usize) -> Result<Vec<(String, OffspringLaw)>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.push((format!("WF N={n}"), wright_fisher_law(n)?));
        if n >= 2 {
            out.push((format!("Moran N={n}"), moran_law(n)?));
        }
    }
    Ok(out)
}

fn cannings_duality(max_n: usize) -> Result<(bool, String)> {
    for (name, law) in laws(max_n)? {
        let fk = forward_kernel(&law)?;
        let bk = backward_kernel(&law)?;
        if !verify_transpose_zeta_duality(&fk, &bk)?.holds() {
            return Ok((false, name));
        }
    }
    Ok((true, format!("WF and Moran, N <= {max_n}")))
}

fn coarse_cannings(max_n: usize, max_hyper: usize) -> Result<(bool, String)> {
    for (name, law) in laws(max_n)? {
        let c = coarsen_to_cannings(&forward_kernel(&law)?, &backward_kernel(&law)?)?;
        if !c.all_hold()
            || !c.pipeline.p_coarse_kernel.is_stochastic()
            || !c.pipeline.q_hat.is_stochastic()
        {
            return Ok((false, name));
        }
    }
    for n in (max_n + 1)..=max_hyper {
        let law = wright_fisher_law(n)?;
        let c = coarsen_to_cannings(&forward_kernel(&law)?, &backward_kernel(&law)?)?;
        if !(c.hypergeometric && c.hypergeometric_inverse && c.class_sizes_binomial) {
            return Ok((false, format!("hypergeometric WF N={n}")));
        }
    }
    Ok((
        true,
        format!("closed forms for N <= {max_n}, hypergeometric matrices for N <= {max_hyper}"),
    ))
}

fn multi_allelic(max_n: usize) -> Result<(bool, String)> {
    let mut done = Vec::new();
    for (name, law) in laws(max_n)? {
        for types in [2, 3] {
            if (types + 1usize).pow(law.ground_size() as u32) > 256 {
                continue;
            }
            let ma = multiallelic_kernels(&law, types)?;
            let c = coarsen_multiallelic(&ma)?;
            if !ma.duality.holds() || !c.all_hold() || !c.pipeline.q_hat.is_substochastic() {
                return Ok((false, format!("{name}, T={types}")));
            }
            done.push(format!("{name} T={types}"));
        }
    }
    Ok((true, done.join(", ")))
}

fn wright_fisher_two() -> Result<(bool, String)> {
    let law = wright_fisher_law(2)?;
    let fk = forward_kernel(&law)?;
    let bk = backward_kernel(&law)?;
    let l = &fk.lattice;
    let one = l.index_of(0b01);
    let both = l.index_of(0b11);
    let quarter = vec![rat(1, 4); 4];
    let ok_p = fk.p.matrix().row(one) == quarter.as_slice();
    let ok_q = bk.q.matrix().row(both) == [int(0), rat(1, 4), rat(1, 4), rat(1, 2)];
    let c = coarsen_to_cannings(&fk, &bk)?;
    let ok_coarse = c.pipeline.q_hat.matrix().row(2) == [int(0), rat(1, 2), rat(1, 2)];
    Ok((
        ok_p && ok_q && ok_coarse,
        format!("P({{1}},.) {ok_p}, Q({{1,2}},.) {ok_q}, coarse Q(2,.) {ok_coarse}"),
    ))
}

fn monte_carlo(n: usize, config: &VerifyConfig) -> Result<(bool, String)> {
    if n < 2 {
        return Ok((true, "skipped below N=2".into()));
    }
    let law = wright_fisher_law(n)?;
    let mut worst: f64 = 0.0;
    for steps in 1..=3 {
        let r = monte_carlo_duality(&law, 0b11, 0b1, steps, config.reps, config.seed)?;
        worst = worst.max(r.forward_z).max(r.backward_z);
        if !r.within(4.0) {
            return Ok((
                false,
                format!("n={steps}: z-scores {} and {}", r.forward_z, r.backward_z),
            ));
        }
    }
    Ok((true, format!("WF N={n}, largest z-score {worst:.3}")))
}
