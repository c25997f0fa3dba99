//! H-duality of kernels with zeta and Möbius matrices.
//!
//! A kernel `Q` is an `H`-dual of `P` when `H Q' = P H`. For the four
//! matrices `H ∈ {Z, Z', Z⁻¹, (Z⁻¹)'}` the dual is nonnegative exactly when
//! certain cumulative margins of `P` lie in the Möbius-positive cones
//! `F₊ = {g : Z⁻¹g ≥ 0}` or `F'₊ = {g : (Z⁻¹)'g ≥ 0}`. One descriptor per
//! variant drives both the cone test and the monotonicity checks, so the
//! four cases share a single code path.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poset::{FinitePoset, ZetaPair};
use crate::rational::{format_rational, vec_to_strings, Rational, RationalMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelKind {
    General,
    Substochastic,
    Stochastic,
}

/// A square rational matrix whose stochasticity class is computed, never
/// asserted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kernel {
    matrix: RationalMatrix,
    kind: KernelKind,
}

impl Kernel {
    pub fn new(matrix: RationalMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "kernel must be square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let kind = classify(&matrix);
        Ok(Self { matrix, kind })
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> RationalMatrix {
        self.matrix
    }

    pub fn kind(&self) -> KernelKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.matrix.rows() == 0
    }

    pub fn is_stochastic(&self) -> bool {
        self.kind == KernelKind::Stochastic
    }

    pub fn is_substochastic(&self) -> bool {
        matches!(
            self.kind,
            KernelKind::Stochastic | KernelKind::Substochastic
        )
    }
}

fn classify(m: &RationalMatrix) -> KernelKind {
    if !m.is_nonnegative() {
        return KernelKind::General;
    }
    let sums = m.row_sums();
    if sums.iter().all(One::is_one) {
        KernelKind::Stochastic
    } else if sums.iter().all(|s| *s <= Rational::one()) {
        KernelKind::Substochastic
    } else {
        KernelKind::General
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DualityVariant {
    /// `H = Z`
    Zeta,
    /// `H = Z'`
    ZetaTranspose,
    /// `H = Z⁻¹`
    Moebius,
    /// `H = (Z⁻¹)'`
    MoebiusTranspose,
}

impl DualityVariant {
    pub const ALL: [DualityVariant; 4] = [
        DualityVariant::Zeta,
        DualityVariant::ZetaTranspose,
        DualityVariant::Moebius,
        DualityVariant::MoebiusTranspose,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DualityVariant::Zeta => "zeta",
            DualityVariant::ZetaTranspose => "zeta-transpose",
            DualityVariant::Moebius => "moebius",
            DualityVariant::MoebiusTranspose => "moebius-transpose",
        }
    }

    /// The duality matrix `H`.
    pub fn h_matrix(self, zp: &ZetaPair) -> RationalMatrix {
        match self {
            DualityVariant::Zeta => zp.zeta.clone(),
            DualityVariant::ZetaTranspose => zp.zeta.transpose(),
            DualityVariant::Moebius => zp.moebius.clone(),
            DualityVariant::MoebiusTranspose => zp.moebius.transpose(),
        }
    }

    /// `H⁻¹`, read off the zeta pair rather than recomputed.
    pub fn h_inverse(self, zp: &ZetaPair) -> RationalMatrix {
        match self {
            DualityVariant::Zeta => zp.moebius.clone(),
            DualityVariant::ZetaTranspose => zp.moebius.transpose(),
            DualityVariant::Moebius => zp.zeta.clone(),
            DualityVariant::MoebiusTranspose => zp.zeta.transpose(),
        }
    }

    fn descriptor(self) -> Descriptor {
        use Cone::*;
        use Cumulate::*;
        use Margin::*;
        match self {
            DualityVariant::Zeta => Descriptor {
                margin: Column,
                cumulate: Below,
                cone: Plain,
                monotone: Monotone::IncreasingInRow,
            },
            DualityVariant::ZetaTranspose => Descriptor {
                margin: Column,
                cumulate: Above,
                cone: Transposed,
                monotone: Monotone::DecreasingInRow,
            },
            DualityVariant::Moebius => Descriptor {
                margin: Row,
                cumulate: Above,
                cone: Transposed,
                monotone: Monotone::DecreasingInColumn,
            },
            DualityVariant::MoebiusTranspose => Descriptor {
                margin: Row,
                cumulate: Below,
                cone: Plain,
                monotone: Monotone::IncreasingInColumn,
            },
        }
    }

    /// Support implication that holds for this variant's dual.
    pub fn support_direction(self) -> SupportDirection {
        match self {
            DualityVariant::Zeta | DualityVariant::Moebius => SupportDirection::Upward,
            DualityVariant::ZetaTranspose | DualityVariant::MoebiusTranspose => {
                SupportDirection::Downward
            }
        }
    }
}

impl fmt::Display for DualityVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DualityVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "zeta" | "z" => Ok(DualityVariant::Zeta),
            "zeta-transpose" | "zt" => Ok(DualityVariant::ZetaTranspose),
            "moebius" | "mobius" | "m" => Ok(DualityVariant::Moebius),
            "moebius-transpose" | "mobius-transpose" | "mt" => Ok(DualityVariant::MoebiusTranspose),
            _ => Err(Error::Parse(format!("unknown duality variant {s:?}"))),
        }
    }
}

/// Which margin of `P` is accumulated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Margin {
    /// `Σ_{d∈S(x)} P(•,d)`, a function of the row index.
    Column,
    /// `Σ_{c∈S(x)} P(c,•)`, a function of the column index.
    Row,
}

/// The summation set `S(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Cumulate {
    /// `{d : d ⪯ x}`
    Below,
    /// `{d : x ⪯ d}`
    Above,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Cone {
    /// `F₊`, tested with `Z⁻¹`.
    Plain,
    /// `F'₊`, tested with `(Z⁻¹)'`.
    Transposed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Monotone {
    /// `a₁ ⪯ a₂ ⇒ Q(a₁,b) ≤ Q(a₂,b)`
    IncreasingInRow,
    /// `a₁ ⪯ a₂ ⇒ Q(a₁,b) ≥ Q(a₂,b)`
    DecreasingInRow,
    /// `b₁ ⪯ b₂ ⇒ Q(a,b₁) ≤ Q(a,b₂)`
    IncreasingInColumn,
    /// `b₁ ⪯ b₂ ⇒ Q(a,b₁) ≥ Q(a,b₂)`
    DecreasingInColumn,
}

#[derive(Debug, Clone, Copy)]
struct Descriptor {
    margin: Margin,
    cumulate: Cumulate,
    cone: Cone,
    monotone: Monotone,
}

impl Descriptor {
    fn in_set(&self, p: &FinitePoset, x: usize, d: usize) -> bool {
        match self.cumulate {
            Cumulate::Below => p.leq(d, x),
            Cumulate::Above => p.leq(x, d),
        }
    }

    /// Cumulative margin `g_x` of `P` for index `x`.
    fn cumulative(&self, p: &FinitePoset, kernel: &RationalMatrix, x: usize) -> Vec<Rational> {
        let n = p.len();
        (0..n)
            .map(|y| {
                (0..n)
                    .filter(|&d| self.in_set(p, x, d))
                    .map(|d| match self.margin {
                        Margin::Column => kernel[(y, d)].clone(),
                        Margin::Row => kernel[(d, y)].clone(),
                    })
                    .sum()
            })
            .collect()
    }

    /// Plain margin: column `x` or row `x` of `P`.
    fn single(&self, kernel: &RationalMatrix, x: usize) -> Vec<Rational> {
        match self.margin {
            Margin::Column => kernel.column(x),
            Margin::Row => kernel.row(x).to_vec(),
        }
    }
}

/// Result of testing `g` against a Möbius-positive cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeReport {
    pub member: bool,
    /// `Z⁻¹g`, or `(Z⁻¹)'g` for the transposed cone.
    pub image: Vec<Rational>,
    pub first_negative: Option<usize>,
}

/// Cone test for `F₊` (or `F'₊` when `transposed`).
///
/// Membership also forces `g ≥ 0`, since `g = Z·image`; that consequence is
/// re-checked here and reported as a verification error if it ever fails.
pub fn cone_membership(g: &[Rational], zp: &ZetaPair, transposed: bool) -> Result<ConeReport> {
    if g.len() != zp.len() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} on a poset of {} elements",
            g.len(),
            zp.len()
        )));
    }
    let image = cone_image(g, zp, transposed);
    let first_negative = image.iter().position(Signed::is_negative);
    let member = first_negative.is_none();
    if member && g.iter().any(Signed::is_negative) {
        return Err(Error::Verification(
            "cone member with a negative entry".into(),
        ));
    }
    Ok(ConeReport {
        member,
        image,
        first_negative,
    })
}

/// `Z⁻¹g` (or `(Z⁻¹)'g`) from the sparse Möbius function.
fn cone_image(g: &[Rational], zp: &ZetaPair, transposed: bool) -> Vec<Rational> {
    (0..zp.len())
        .map(|a| {
            let terms = if transposed {
                zp.mu.column(a)
            } else {
                zp.mu.row(a)
            };
            terms
                .iter()
                .filter(|&&(_, m)| m != 0)
                .map(|&(c, m)| &g[c] * Rational::from_integer(m.into()))
                .sum()
        })
        .collect()
}

/// `Q` with `Q' = H⁻¹ P H`, after an exact nonsingularity check.
/// The identity `H Q' = P H` is re-verified before returning.
pub fn h_dual(p: &RationalMatrix, h: &RationalMatrix) -> Result<RationalMatrix> {
    if !h.is_square() || !p.is_square() || h.rows() != p.rows() {
        return Err(Error::DimensionMismatch(format!(
            "P is {}x{}, H is {}x{}",
            p.rows(),
            p.cols(),
            h.rows(),
            h.cols()
        )));
    }
    if h.rank() < h.rows() {
        return Err(Error::SingularH);
    }
    let h_inv = h.inverse()?;
    dual_with_inverse(p, h, &h_inv)
}

/// Dual for a known pair `(H, H⁻¹)`.
pub fn dual_with_inverse(
    p: &RationalMatrix,
    h: &RationalMatrix,
    h_inv: &RationalMatrix,
) -> Result<RationalMatrix> {
    let q_t = h_inv.mul(p)?.mul(h)?;
    if h.mul(&q_t)? != p.mul(h)? {
        return Err(Error::Verification("H Q' != P H".into()));
    }
    Ok(q_t.transpose())
}

/// Dual of `P` for one of the four zeta/Möbius variants.
pub fn variant_dual(
    p: &RationalMatrix,
    zp: &ZetaPair,
    v: DualityVariant,
) -> Result<RationalMatrix> {
    dual_with_inverse(p, &v.h_matrix(zp), &v.h_inverse(zp))
}

/// Per-index cone tests for condition (i), with the verdict cross-checked
/// against the directly computed dual.
#[derive(Debug, Clone)]
pub struct PositivityReport {
    pub variant: DualityVariant,
    /// Cone test of the cumulative margin for each index.
    pub per_index: Vec<ConeReport>,
    pub condition_i: bool,
    pub q: RationalMatrix,
    pub q_nonnegative: bool,
}

impl PositivityReport {
    /// Condition (i) and `Q ≥ 0` agree, as they must.
    pub fn consistent(&self) -> bool {
        self.condition_i == self.q_nonnegative
    }

    pub fn witnesses(&self) -> Vec<usize> {
        self.per_index
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.member)
            .map(|(x, _)| x)
            .collect()
    }
}

pub fn positivity_certificate(
    p: &RationalMatrix,
    zp: &ZetaPair,
    v: DualityVariant,
) -> Result<PositivityReport> {
    check_shape(p, zp)?;
    let desc = v.descriptor();
    let transposed = desc.cone == Cone::Transposed;
    let q = variant_dual(p, zp, v)?;
    let mut per_index = Vec::with_capacity(zp.len());
    for x in 0..zp.len() {
        let g = desc.cumulative(&zp.poset, p, x);
        let report = cone_membership(&g, zp, transposed)?;
        // The cone image is exactly a row (column margins) or a column
        // (row margins) of Q.
        let slice = match desc.margin {
            Margin::Column => q.row(x).to_vec(),
            Margin::Row => q.column(x),
        };
        if report.image != slice {
            return Err(Error::Verification(format!(
                "{v}: cone image for index {x} differs from the dual kernel"
            )));
        }
        per_index.push(report);
    }
    let condition_i = per_index.iter().all(|r| r.member);
    let q_nonnegative = q.is_nonnegative();
    Ok(PositivityReport {
        variant: v,
        per_index,
        condition_i,
        q,
        q_nonnegative,
    })
}

fn check_shape(p: &RationalMatrix, zp: &ZetaPair) -> Result<()> {
    if p.rows() != zp.len() || p.cols() != zp.len() {
        return Err(Error::DimensionMismatch(format!(
            "kernel is {}x{}, poset has {} elements",
            p.rows(),
            p.cols(),
            zp.len()
        )));
    }
    Ok(())
}

/// A monotonicity violation `(x₁, x₂, y)` with `x₁ ⪯ x₂`: for row
/// monotonicity `y` is the column `b`, for column monotonicity the row `a`.
pub type MonotoneViolation = (usize, usize, usize);

/// Outcome of the strong condition (ii).
#[derive(Debug, Clone)]
pub struct StrongReport {
    pub variant: DualityVariant,
    pub condition_ii: bool,
    /// Columns (or rows) of `P` outside the cone.
    pub failing: Vec<usize>,
    pub q: RationalMatrix,
    pub monotone: Monotone,
    /// Monotonicity of `Q` over all comparable pairs (checked whenever the
    /// strong condition holds).
    pub monotone_holds: Option<bool>,
    pub violations: Vec<MonotoneViolation>,
    /// For Möbius variants with stochastic irreducible `P`: the invariant
    /// distribution of `P` lies in the cone.
    pub invariant_in_cone: Option<bool>,
    /// For Möbius variants with stochastic irreducible `Q`: its invariant
    /// distribution is monotone in the stated direction.
    pub dual_invariant_monotone: Option<bool>,
}

pub fn strong_condition_check(
    p: &RationalMatrix,
    zp: &ZetaPair,
    v: DualityVariant,
) -> Result<StrongReport> {
    check_shape(p, zp)?;
    let desc = v.descriptor();
    let transposed = desc.cone == Cone::Transposed;
    let mut failing = Vec::new();
    for x in 0..zp.len() {
        let g = desc.single(p, x);
        if !cone_membership(&g, zp, transposed)?.member {
            failing.push(x);
        }
    }
    let condition_ii = failing.is_empty();
    let q = variant_dual(p, zp, v)?;
    let mut report = StrongReport {
        variant: v,
        condition_ii,
        failing,
        q: q.clone(),
        monotone: desc.monotone,
        monotone_holds: None,
        violations: Vec::new(),
        invariant_in_cone: None,
        dual_invariant_monotone: None,
    };
    if !condition_ii {
        return Ok(report);
    }
    report.violations = monotone_violations(&q, &zp.poset, desc.monotone);
    report.monotone_holds = Some(report.violations.is_empty() && q.is_nonnegative());

    if desc.margin == Margin::Row {
        if let Ok(pk) = Kernel::new(p.clone()) {
            if let Ok(rho) = invariant_distribution(&pk) {
                report.invariant_in_cone = Some(cone_membership(&rho, zp, transposed)?.member);
            }
        }
        if let Ok(qk) = Kernel::new(q.clone()) {
            if let Ok(rho_hat) = invariant_distribution(&qk) {
                let increasing = desc.monotone == Monotone::IncreasingInColumn;
                let ok = (0..zp.len()).all(|b1| {
                    zp.poset.up_set(b1).iter().all(|b2| {
                        if increasing {
                            rho_hat[b1] <= rho_hat[b2]
                        } else {
                            rho_hat[b1] >= rho_hat[b2]
                        }
                    })
                });
                report.dual_invariant_monotone = Some(ok);
            }
        }
    }
    Ok(report)
}

/// Every comparable pair violating the stated monotonicity of `q`.
pub fn monotone_violations(
    q: &RationalMatrix,
    p: &FinitePoset,
    m: Monotone,
) -> Vec<MonotoneViolation> {
    let n = p.len();
    let mut out = Vec::new();
    for x1 in 0..n {
        for x2 in p.up_set(x1).iter() {
            if x2 == x1 {
                continue;
            }
            for y in 0..n {
                let ok = match m {
                    Monotone::IncreasingInRow => q[(x1, y)] <= q[(x2, y)],
                    Monotone::DecreasingInRow => q[(x1, y)] >= q[(x2, y)],
                    Monotone::IncreasingInColumn => q[(y, x1)] <= q[(y, x2)],
                    Monotone::DecreasingInColumn => q[(y, x1)] >= q[(y, x2)],
                };
                if !ok {
                    out.push((x1, x2, y));
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SupportDirection {
    /// `(P(c,d)>0 ⇒ c⪯d)` implies `(Q(c,d)>0 ⇒ d⪯c)`.
    Upward,
    /// `(P(c,d)>0 ⇒ d⪯c)` implies `(Q(c,d)>0 ⇒ c⪯d)`.
    Downward,
}

/// Checks the support implication; vacuously true when `P`'s support
/// does not satisfy the hypothesis.
pub fn support_implication_check(
    p: &RationalMatrix,
    q: &RationalMatrix,
    zp: &ZetaPair,
    direction: SupportDirection,
) -> bool {
    let poset = &zp.poset;
    let n = poset.len();
    let support_ok = |m: &RationalMatrix, upward: bool| {
        (0..n).all(|c| {
            (0..n).all(|d| {
                !m[(c, d)].is_positive()
                    || if upward {
                        poset.leq(c, d)
                    } else {
                        poset.leq(d, c)
                    }
            })
        })
    };
    match direction {
        SupportDirection::Upward => !support_ok(p, true) || support_ok(q, false),
        SupportDirection::Downward => !support_ok(p, false) || support_ok(q, true),
    }
}

/// The `h`-transform `D_h⁻¹ Q D_h`.
#[derive(Debug, Clone)]
pub struct HTransform {
    pub kernel: Kernel,
    /// `Q h = h`, equivalent to stochasticity of the transform when `Q ≥ 0`.
    pub eigenvector: bool,
}

pub fn h_transform(q: &RationalMatrix, h: &[Rational]) -> Result<HTransform> {
    if h.len() != q.rows() || !q.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "h has length {}, Q is {}x{}",
            h.len(),
            q.rows(),
            q.cols()
        )));
    }
    if let Some(index) = h.iter().position(|x| !x.is_positive()) {
        return Err(Error::NonpositiveH { index });
    }
    let t = RationalMatrix::from_fn(q.rows(), q.cols(), |a, b| &q[(a, b)] * &h[b] / &h[a]);
    let eigenvector = q.mul_vec(h)? == h;
    let kernel = Kernel::new(t)?;
    if q.is_nonnegative() && kernel.is_stochastic() != eigenvector {
        return Err(Error::Verification(
            "h-transform stochasticity disagrees with Qh = h".into(),
        ));
    }
    Ok(HTransform {
        kernel,
        eigenvector,
    })
}

/// Signed point weights whose up-sums (down-sums when transposed)
/// reconstruct `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentingMeasure {
    pub weights: Vec<Rational>,
    pub transposed: bool,
}

impl RepresentingMeasure {
    pub fn is_nonnegative(&self) -> bool {
        self.weights.iter().all(|w| !w.is_negative())
    }
}

/// `weights = Z⁻¹g`, with `g(a) = Σ_{b⪰a} weights(b)` re-verified by
/// direct summation over up-sets.
pub fn representing_measure(g: &[Rational], zp: &ZetaPair) -> Result<RepresentingMeasure> {
    representing_measure_with(g, zp, false)
}

/// As [`representing_measure`]; with `transposed`, `weights = (Z⁻¹)'g` and
/// `g(a) = Σ_{b⪯a} weights(b)`.
pub fn representing_measure_with(
    g: &[Rational],
    zp: &ZetaPair,
    transposed: bool,
) -> Result<RepresentingMeasure> {
    let report = cone_membership(g, zp, transposed)?;
    let weights = report.image;
    for a in 0..zp.len() {
        let set = if transposed {
            zp.poset.down_set(a)
        } else {
            zp.poset.up_set(a)
        };
        let back: Rational = set.iter().map(|b| weights[b].clone()).sum();
        if back != g[a] {
            return Err(Error::Verification(format!(
                "reconstruction fails at element {}",
                zp.poset.label(a)
            )));
        }
    }
    Ok(RepresentingMeasure {
        weights,
        transposed,
    })
}

/// Exact invariant distribution `ρ'P = ρ'`, `Σρ = 1` of a stochastic
/// irreducible kernel.
pub fn invariant_distribution(p: &Kernel) -> Result<Vec<Rational>> {
    let m = p.matrix();
    let n = m.rows();
    if let Some(row) = (0..n)
        .find(|&i| m.row(i).iter().sum::<Rational>() != Rational::one())
        .or_else(|| (!m.is_nonnegative()).then(|| m.first_negative().map_or(0, |(i, _)| i)))
    {
        return Err(Error::NotStochastic { row });
    }
    check_irreducible(m)?;
    // (P' - I) ρ = 0 with the last equation replaced by Σρ = 1.
    let mut a = m.transpose().sub(&RationalMatrix::identity(n))?;
    for j in 0..n {
        a[(n - 1, j)] = Rational::one();
    }
    let mut rhs = vec![Rational::zero(); n];
    rhs[n - 1] = Rational::one();
    let rho = a.inverse()?.mul_vec(&rhs)?;
    if m.vec_mul(&rho)? != rho {
        return Err(Error::Verification("ρ'P != ρ'".into()));
    }
    Ok(rho)
}

/// Strong connectivity of the support digraph.
pub fn check_irreducible(m: &RationalMatrix) -> Result<()> {
    let n = m.rows();
    if n == 0 {
        return Ok(());
    }
    for reverse in [false, true] {
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                let edge = if reverse { &m[(j, i)] } else { &m[(i, j)] };
                if !seen[j] && !edge.is_zero() {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        if let Some(k) = seen.iter().position(|s| !s) {
            let (from, to) = if reverse { (k, 0) } else { (0, k) };
            return Err(Error::NotIrreducible { from, to });
        }
    }
    Ok(())
}

/// JSON report for the CLI: condition (i), condition (ii) and `Q ≥ 0`.
#[derive(Debug, Clone, Serialize)]
pub struct CertificateSummary {
    pub variant: DualityVariant,
    pub condition_i: bool,
    pub condition_ii: bool,
    #[serde(rename = "Q_nonnegative")]
    pub q_nonnegative: bool,
    pub witnesses: Vec<String>,
    pub monotone: Monotone,
    pub monotone_holds: Option<bool>,
    pub support_implication: bool,
    #[serde(rename = "Q")]
    pub q: Vec<Vec<String>>,
}

pub fn certificate_summary(
    p: &RationalMatrix,
    zp: &ZetaPair,
    v: DualityVariant,
) -> Result<CertificateSummary> {
    let pos = positivity_certificate(p, zp, v)?;
    if !pos.consistent() {
        return Err(Error::Verification(format!(
            "{v}: condition (i) = {} but Q >= 0 is {}",
            pos.condition_i, pos.q_nonnegative
        )));
    }
    let strong = strong_condition_check(p, zp, v)?;
    let mut witnesses: Vec<String> = pos
        .witnesses()
        .into_iter()
        .map(|x| {
            let r = &pos.per_index[x];
            let neg = r.first_negative.expect("non-member has a negative entry");
            format!(
                "cumulative margin at {} leaves the cone at {} ({})",
                zp.poset.label(x),
                zp.poset.label(neg),
                format_rational(&r.image[neg])
            )
        })
        .collect();
    witnesses.extend(
        strong
            .failing
            .iter()
            .map(|&x| format!("margin at {} is outside the cone", zp.poset.label(x))),
    );
    Ok(CertificateSummary {
        variant: v,
        condition_i: pos.condition_i,
        condition_ii: strong.condition_ii,
        q_nonnegative: pos.q_nonnegative,
        witnesses,
        monotone: strong.monotone,
        monotone_holds: strong.monotone_holds,
        support_implication: support_implication_check(p, &pos.q, zp, v.support_direction()),
        q: pos.q.to_strings(),
    })
}

pub fn vector_strings(v: &[Rational]) -> Vec<String> {
    vec_to_strings(v)
}
