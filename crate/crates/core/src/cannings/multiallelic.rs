use num_traits::One;

use crate::cannings::haploid::{accumulate, minimal_cover, offspring_of, submasks, DualityRoutes};
use crate::cannings::law::OffspringLaw;
use crate::coarse::{coarse_pipeline, CoarsePipeline, EquivalenceRelation};
use crate::duality::{variant_dual, DualityVariant, Kernel};
use crate::error::{Error, Result};
use crate::lattices::product_set::format_tuple;
use crate::lattices::Mask;
use crate::limits::Limits;
use crate::poset::{build_poset_with, moebius_matrix_with, FinitePoset, Verification, ZetaPair};
use crate::rational::{binomial, factorial, Rational, RationalMatrix};

/// Kernels of the `T`-type model on tuples of pairwise disjoint sets.
///
/// Both kernels live on the disjoint tuples `(J_1, …, J_T)`, a down-set of
/// the product lattice, so the restricted zeta matrix keeps its Möbius
/// inverse. Covering tuples form a closed class of the forward chain.
#[derive(Debug, Clone)]
pub struct MultiAllelicKernels {
    pub law: OffspringLaw,
    pub types: usize,
    /// `states[k][t]` is `J_{t+1}` for the `k`-th state in poset order.
    pub states: Vec<Vec<Mask>>,
    pub zeta: ZetaPair,
    pub p: Kernel,
    pub q: Kernel,
    /// `1 − Σ_K Q(J,K)` per state.
    pub defect: Vec<Rational>,
    pub covering: Vec<bool>,
    pub duality: DualityRoutes,
    /// Lookup from type-assignment code to state index.
    index: Vec<usize>,
}

impl MultiAllelicKernels {
    pub fn labels(&self) -> Vec<String> {
        self.states.iter().map(|s| format_tuple(s)).collect()
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.zeta.poset
    }

    /// `P` restricted to covering tuples.
    pub fn p_covering(&self) -> RationalMatrix {
        let keep: Vec<usize> = (0..self.states.len())
            .filter(|&k| self.covering[k])
            .collect();
        RationalMatrix::from_fn(keep.len(), keep.len(), |a, b| {
            self.p.matrix()[(keep[a], keep[b])].clone()
        })
    }

    pub fn index_of(&self, tuple: &[Mask]) -> Option<usize> {
        let n = self.law.ground_size();
        let mut code = 0;
        for i in (0..n).rev() {
            let t = tuple
                .iter()
                .position(|m| m >> i & 1 == 1)
                .map_or(0, |t| t + 1);
            code = code * (self.types + 1) + t;
        }
        let k = self.index[code];
        (self.states[k] == tuple).then_some(k)
    }
}

fn decode(code: usize, n: usize, types: usize) -> Vec<Mask> {
    let mut tuple = vec![0; types];
    let mut c = code;
    for i in 0..n {
        let t = c % (types + 1);
        if t > 0 {
            tuple[t - 1] |= 1 << i;
        }
        c /= types + 1;
    }
    tuple
}

struct TupleLabel(Vec<Mask>);

impl std::fmt::Display for TupleLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_tuple(&self.0))
    }
}

pub fn multiallelic_kernels(law: &OffspringLaw, types: usize) -> Result<MultiAllelicKernels> {
    multiallelic_kernels_with(law, types, &Limits::default())
}

pub fn multiallelic_kernels_with(
    law: &OffspringLaw,
    types: usize,
    limits: &Limits,
) -> Result<MultiAllelicKernels> {
    if types < 2 {
        return Err(Error::InvalidLaw(format!(
            "need at least two types, got {types}"
        )));
    }
    let n = law.ground_size();
    let count = (types + 1).checked_pow(n as u32).unwrap_or(usize::MAX);
    limits.check(
        "multi-allelic state space",
        count,
        limits.multiallelic_states,
    )?;
    limits.check_dense("multi-allelic kernel", count)?;

    let tuples: Vec<Vec<Mask>> = (0..count).map(|c| decode(c, n, types)).collect();
    let labels: Vec<TupleLabel> = tuples.iter().map(|t| TupleLabel(t.clone())).collect();
    let poset = build_poset_with(
        &labels,
        |a, b| a.0.iter().zip(&b.0).all(|(x, y)| x & !y == 0),
        Verification::Auto,
        limits,
    )?;
    let mut index = vec![0; count];
    let states: Vec<Vec<Mask>> = (0..count)
        .map(|k| {
            let code = poset.source_position(k);
            index[code] = k;
            tuples[code].clone()
        })
        .collect();
    let zeta = moebius_matrix_with(&poset, limits)?;
    let full = law.full_mask();
    let covering: Vec<bool> = states
        .iter()
        .map(|s| s.iter().fold(0, |a, m| a | m) == full)
        .collect();

    let lookup = |tuple: &[Mask]| {
        let mut code = 0;
        for i in (0..n).rev() {
            let t = tuple
                .iter()
                .position(|m| m >> i & 1 == 1)
                .map_or(0, |t| t + 1);
            code = code * (types + 1) + t;
        }
        index[code]
    };

    let p = accumulate(law, count, |nu, k| {
        let image: Vec<Mask> = states[k].iter().map(|&j| offspring_of(nu, j)).collect();
        Some(lookup(&image))
    });
    let q = accumulate(law, count, |nu, k| {
        let parents: Vec<Mask> = states[k]
            .iter()
            .map(|&j| minimal_cover(nu, j).expect("haploid law covers every individual"))
            .collect();
        let disjoint = parents
            .iter()
            .try_fold(0, |acc: Mask, &m| (acc & m == 0).then_some(acc | m))
            .is_some();
        disjoint.then(|| lookup(&parents))
    });
    let p = Kernel::new(p)?;
    let q = Kernel::new(q)?;
    if !p.is_stochastic() || !q.is_substochastic() {
        return Err(Error::Verification(
            "multi-allelic kernels have the wrong mass".into(),
        ));
    }
    let defect = q
        .matrix()
        .row_sums()
        .into_iter()
        .map(|s| Rational::one() - s)
        .collect();

    let matrix = variant_dual(p.matrix(), &zeta, DualityVariant::ZetaTranspose)? == *q.matrix();
    let sylvester = product_sylvester(p.matrix(), &states, n, types, &lookup) == *q.matrix();
    Ok(MultiAllelicKernels {
        law: law.clone(),
        types,
        states,
        zeta,
        p,
        q,
        defect,
        covering,
        duality: DualityRoutes { matrix, sylvester },
        index,
    })
}

/// `Q(J⃗,K⃗) = Σ_{L⃗⊆K⃗} (−1)^{Σ_t |K_t|−|L_t|} Σ_{M⃗⊇J⃗} P(L⃗,M⃗)`, with
/// `M⃗` ranging over disjoint tuples.
fn product_sylvester(
    p: &RationalMatrix,
    states: &[Vec<Mask>],
    n: usize,
    types: usize,
    lookup: &dyn Fn(&[Mask]) -> usize,
) -> RationalMatrix {
    let count = states.len();
    let full: Mask = (1 << n) - 1;
    // Supertuples of J⃗: each unassigned individual joins one coordinate or
    // none.
    let supers = |j: &[Mask]| -> Vec<usize> {
        let used = j.iter().fold(0, |a, m| a | m);
        let free: Vec<usize> = (0..n).filter(|&i| (full & !used) >> i & 1 == 1).collect();
        let total = (types + 1).pow(free.len() as u32);
        (0..total)
            .map(|mut code| {
                let mut m = j.to_vec();
                for &i in &free {
                    let t = code % (types + 1);
                    if t > 0 {
                        m[t - 1] |= 1 << i;
                    }
                    code /= types + 1;
                }
                lookup(&m)
            })
            .collect()
    };
    let above: Vec<Vec<usize>> = states.iter().map(|j| supers(j)).collect();
    let upper: Vec<Vec<Rational>> = (0..count)
        .map(|l| {
            above
                .iter()
                .map(|ms| ms.iter().map(|&m| p[(l, m)].clone()).sum())
                .collect()
        })
        .collect();
    RationalMatrix::from_fn(count, count, |j, k| {
        let kt = &states[k];
        let support = kt.iter().fold(0, |a, m| a | m);
        submasks(support)
            .map(|keep| {
                let lt: Vec<Mask> = kt.iter().map(|m| m & keep).collect();
                let term = upper[lookup(&lt)][j].clone();
                if (support.count_ones() - keep.count_ones()) % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .sum()
    })
}

/// `N! / (∏_t e_t! · (N − Σe)!)`, the number of disjoint tuples with
/// cardinalities `e`.
pub fn tuple_class_size(n: usize, e: &[usize]) -> Rational {
    let rest = n - e.iter().sum::<usize>();
    let denom = e
        .iter()
        .fold(factorial(rest as u64), |acc, &x| acc * factorial(x as u64));
    Rational::new(factorial(n as u64), denom)
}

#[derive(Debug, Clone)]
pub struct MultiAllelicCoarse {
    pub pipeline: CoarsePipeline,
    /// Class cardinality vectors, in class order.
    pub classes: Vec<Vec<usize>>,
    pub class_sizes_multinomial: bool,
    pub hypergeometric: bool,
    pub forward_direct: bool,
}

impl MultiAllelicCoarse {
    pub fn all_hold(&self) -> bool {
        self.class_sizes_multinomial && self.hypergeometric && self.forward_direct
    }

    pub fn class_index(&self, e: &[usize]) -> Option<usize> {
        self.classes.iter().position(|c| c == e)
    }
}

/// Coarse-grains by the vector of type counts `(|J_1|, …, |J_T|)`.
pub fn coarsen_multiallelic(ma: &MultiAllelicKernels) -> Result<MultiAllelicCoarse> {
    ma.law.require_exchangeable()?;
    let n = ma.law.ground_size();
    let keys: Vec<Vec<usize>> = ma
        .states
        .iter()
        .map(|s| s.iter().map(|m| m.count_ones() as usize).collect())
        .collect();
    let rel = EquivalenceRelation::from_keys(
        &keys.iter().map(|k| CountKey(k.clone())).collect::<Vec<_>>(),
    );
    let mut classes: Vec<Vec<usize>> = keys.clone();
    classes.sort();
    classes.dedup();

    let v = DualityVariant::ZetaTranspose;
    let pipeline = coarse_pipeline(
        ma.p.matrix(),
        &v.h_matrix(&ma.zeta),
        &v.h_inverse(&ma.zeta),
        ma.q.matrix(),
        &rel,
    )?;

    let class_sizes_multinomial = classes
        .iter()
        .zip(&pipeline.h_hat)
        .all(|(e, h)| tuple_class_size(n, e) == *h);
    let hypergeometric = classes.iter().enumerate().all(|(a, d)| {
        classes.iter().enumerate().all(|(b, e)| {
            let choose = d.iter().zip(e).fold(Rational::one(), |acc, (&dt, &et)| {
                acc * Rational::from_integer(binomial(dt as u64, et as u64))
            });
            pipeline.h_hat_matrix[(a, b)] == choose / tuple_class_size(n, e)
        })
    });

    let mut direct = RationalMatrix::zeros(classes.len(), classes.len());
    for (sizes, w) in ma.law.size_profile() {
        for (a, d) in classes.iter().enumerate() {
            let mut start = 0;
            let image: Vec<usize> = d
                .iter()
                .map(|&dt| {
                    let s = sizes[start..start + dt].iter().sum();
                    start += dt;
                    s
                })
                .collect();
            let b = classes
                .binary_search(&image)
                .expect("image counts form a class");
            direct[(a, b)] += &w;
        }
    }
    Ok(MultiAllelicCoarse {
        forward_direct: direct == pipeline.p_coarse,
        pipeline,
        classes,
        class_sizes_multinomial,
        hypergeometric,
    })
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct CountKey(Vec<usize>);

impl std::fmt::Display for CountKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}
