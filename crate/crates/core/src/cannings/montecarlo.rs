use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cannings::haploid::{
    coarse_backward_moments, coarse_forward_direct, hypergeometric_matrix, minimal_cover,
    offspring_of,
};
use crate::cannings::law::OffspringLaw;
use crate::error::{Error, Result};
use crate::lattices::{format_subset, Mask};
use crate::rational::{format_rational, Rational};

/// Inverse-CDF sampler over the atoms of a law.
struct AtomSampler<'a> {
    law: &'a OffspringLaw,
    /// `⌊F_k · 2⁶⁴⌋` for every atom but the last.
    thresholds: Vec<u64>,
}

impl<'a> AtomSampler<'a> {
    fn new(law: &'a OffspringLaw) -> Self {
        let atoms = law.support();
        let mut cumulative = Rational::from_integer(0.into());
        let mut thresholds = Vec::with_capacity(atoms.len().saturating_sub(1));
        for (_, p) in &atoms[..atoms.len() - 1] {
            cumulative += p;
            let scaled: BigInt = (cumulative.numer() << 64u32) / cumulative.denom();
            thresholds.push(scaled.to_u64().unwrap_or(u64::MAX));
        }
        Self { law, thresholds }
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> &'a [Mask] {
        let u = rng.next_u64();
        let k = self.thresholds.partition_point(|&t| t <= u);
        &self.law.support()[k].0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub mean: f64,
    pub std_error: f64,
}

impl Estimate {
    fn from_samples(samples: &[f64]) -> Self {
        let n = samples.len() as f64;
        if samples.iter().all(|&x| x == samples[0]) {
            return Self {
                mean: samples[0],
                std_error: 0.0,
            };
        }
        let mean = samples.iter().sum::<f64>() / n;
        let std_error = if samples.len() > 1 {
            let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
            (var / n).sqrt()
        } else {
            0.0
        };
        Self { mean, std_error }
    }

    /// `|mean − exact|` in standard errors; zero error requires an exact hit.
    pub fn z_score(&self, exact: f64) -> f64 {
        let diff = (self.mean - exact).abs();
        if self.std_error == 0.0 {
            if diff < 1e-12 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            diff / self.std_error
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MonteCarloReport {
    pub population: usize,
    pub start: String,
    pub dual_start: String,
    pub steps: u32,
    pub reps: usize,
    pub seed: u64,
    /// Mean of `H̃_ĥ(|X_n|, |b|)` over forward runs from `a`.
    pub forward: Estimate,
    /// Mean of `H̃_ĥ(|a|, |Y_n|)` over ancestral runs from `b`.
    pub backward: Estimate,
    /// `(P̃ⁿ H̃_ĥ)(|a|, |b|)`, which equals `(H̃_ĥ (Q̃'_{ĥ⁻¹,ĥ})ⁿ)(|a|, |b|)`.
    pub exact: String,
    pub exact_value: f64,
    pub forward_z: f64,
    pub backward_z: f64,
}

impl MonteCarloReport {
    pub fn within(&self, standard_errors: f64) -> bool {
        self.forward_z <= standard_errors && self.backward_z <= standard_errors
    }
}

/// Exact `E[H̃_ĥ(X̃_n, j)]` from `X̃_0 = i`, cross-checked through the
/// dual side.
pub fn exact_duality_value(law: &OffspringLaw, i: usize, j: usize, steps: u32) -> Result<Rational> {
    law.require_exchangeable()?;
    let n = law.ground_size();
    let h = hypergeometric_matrix(n);
    let forward = coarse_forward_direct(law).pow(steps)?.mul(&h)?;
    let backward = h.mul(&coarse_backward_moments(law).transpose().pow(steps)?)?;
    if forward != backward {
        return Err(Error::Verification(format!(
            "coarse duality fails after {steps} steps"
        )));
    }
    Ok(forward[(i, j)].clone())
}

/// Forward runs from `a` and ancestral runs from `b`, `reps` each.
///
/// Replica `r` draws from `ChaCha8(seed)` on stream `2r` (forward) and
/// `2r + 1` (ancestral), so the result does not depend on thread count.
pub fn monte_carlo_duality(
    law: &OffspringLaw,
    a: Mask,
    b: Mask,
    steps: u32,
    reps: usize,
    seed: u64,
) -> Result<MonteCarloReport> {
    let full = law.full_mask();
    if a & !full != 0 || b & !full != 0 {
        return Err(Error::InvalidLaw(
            "start sets must be subsets of the population".into(),
        ));
    }
    if reps == 0 {
        return Err(Error::InvalidLaw("at least one replica is needed".into()));
    }
    let n = law.ground_size();
    let (i, j) = (a.count_ones() as usize, b.count_ones() as usize);
    let exact = exact_duality_value(law, i, j, steps)?;
    let h: Vec<Vec<f64>> = {
        let m = hypergeometric_matrix(n);
        (0..=n)
            .map(|r| {
                m.row(r)
                    .iter()
                    .map(|x| x.to_f64().unwrap_or(f64::NAN))
                    .collect()
            })
            .collect()
    };
    let sampler = AtomSampler::new(law);
    let rng_for = |stream: u64| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        rng
    };
    let samples: Vec<(f64, f64)> = (0..reps as u64)
        .into_par_iter()
        .map(|r| {
            let mut rng = rng_for(2 * r);
            let mut x = a;
            for _ in 0..steps {
                x = offspring_of(sampler.draw(&mut rng), x);
            }
            let mut rng = rng_for(2 * r + 1);
            let mut y = b;
            for _ in 0..steps {
                y = minimal_cover(sampler.draw(&mut rng), y).expect("haploid ancestry");
            }
            (h[x.count_ones() as usize][j], h[i][y.count_ones() as usize])
        })
        .collect();
    let forward = Estimate::from_samples(&samples.iter().map(|s| s.0).collect::<Vec<_>>());
    let backward = Estimate::from_samples(&samples.iter().map(|s| s.1).collect::<Vec<_>>());
    let exact_value = exact.to_f64().unwrap_or(f64::NAN);
    Ok(MonteCarloReport {
        population: n,
        start: format_subset(a),
        dual_start: format_subset(b),
        steps,
        reps,
        seed,
        forward_z: forward.z_score(exact_value),
        backward_z: backward.z_score(exact_value),
        forward,
        backward,
        exact: format_rational(&exact),
        exact_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cannings::law::{moran_law, wright_fisher_law};

    #[test]
    fn zero_steps_is_exact() {
        let law = wright_fisher_law(3).unwrap();
        let r = monte_carlo_duality(&law, 0b011, 0b001, 0, 50, 7).unwrap();
        assert_eq!(r.forward.std_error, 0.0);
        assert_eq!(r.backward.std_error, 0.0);
        assert!((r.forward.mean - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(r.exact, "2/3");
        assert!(r.within(0.0));
    }

    #[test]
    fn deterministic_given_seed() {
        let law = moran_law(4).unwrap();
        let r1 = monte_carlo_duality(&law, 0b0011, 0b0001, 2, 2000, 11).unwrap();
        let r2 = monte_carlo_duality(&law, 0b0011, 0b0001, 2, 2000, 11).unwrap();
        assert_eq!(r1.forward, r2.forward);
        assert_eq!(r1.backward, r2.backward);
        assert!(r1.within(4.0));
    }

    #[test]
    fn sampler_frequencies() {
        let law = wright_fisher_law(2).unwrap();
        let s = AtomSampler::new(&law);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut counts = [0usize; 4];
        for _ in 0..40_000 {
            let nu = s.draw(&mut rng);
            let k = law
                .support()
                .iter()
                .position(|(x, _)| x.as_slice() == nu)
                .unwrap();
            counts[k] += 1;
        }
        for c in counts {
            assert!((c as f64 - 10_000.0).abs() < 500.0, "{counts:?}");
        }
    }

    #[test]
    fn exact_values_agree_both_sides() {
        let law = wright_fisher_law(4).unwrap();
        for steps in 0..=5 {
            exact_duality_value(&law, 2, 1, steps).unwrap();
        }
        let full = exact_duality_value(&law, 2, 4, 3).unwrap();
        let p = coarse_forward_direct(&law).pow(3).unwrap();
        assert_eq!(full, p[(2, 4)]);
    }
}
