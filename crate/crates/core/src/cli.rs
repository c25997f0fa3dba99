//! Command-line front end.
//!
//! Exit status: 0 on success, 1 when a verification fails (the report is
//! still written), 2 for invalid arguments or input, 3 when a size cap is
//! exceeded.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cannings::{
    backward_kernel_with, coarsen_multiallelic, coarsen_to_cannings_with, forward_kernel_with,
    monte_carlo_duality, moran_law_with, multiallelic_kernels_with,
    verify_transpose_zeta_duality_with, wright_fisher_law_with, OffspringLaw,
};
use crate::coarse::{
    check_compatibility, coarse_set_matrices_with, variant_pipeline, EquivalenceRelation,
};
use crate::duality::{certificate_summary, DualityVariant};
use crate::error::{Error, Result};
use crate::lattices::{partition_lattice_with, product_set_lattice, subset_lattice_with};
use crate::limits::Limits;
use crate::poset::{
    build_poset_with, moebius_function, moebius_matrix_with, FinitePoset, MoebiusView,
    Verification, ZetaPair, ZetaView,
};
use crate::rational::{format_rational, MatrixView, RationalMatrix};
use crate::verify::{verify_all, VerifyConfig};

#[derive(Debug, Parser)]
#[command(
    name = "moebius-dual",
    version,
    about = "Exact zeta/Möbius duality toolkit"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Elements, zeta or Möbius matrix of a lattice.
    Lattice(LatticeArgs),
    /// Dual kernel and positivity certificate for a kernel on a poset.
    Duality(DualityArgs),
    /// Coarse-grained zeta/Möbius matrices, or the class-size pipeline for a kernel.
    Coarsen(CoarsenArgs),
    /// Exact set-valued Cannings kernels and their verification report.
    Cannings(CanningsArgs),
    /// Monte Carlo estimate of both sides of the hypergeometric duality.
    Simulate(SimulateArgs),
    /// Run the full verification suite.
    VerifyAll(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LatticeKind {
    Subsets,
    Partitions,
    ProductSets,
    Chain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Elements,
    Zeta,
    Moebius,
}

#[derive(Debug, clap::Args)]
pub struct LatticeArgs {
    #[arg(value_enum)]
    pub kind: LatticeKind,
    #[arg(long)]
    pub n: usize,
    /// Number of factors for `product-sets`.
    #[arg(long, default_value_t = 2)]
    pub copies: usize,
    #[arg(long, value_enum, default_value_t = Emit::Zeta)]
    pub emit: Emit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PosetKind {
    Subsets,
    Partitions,
    Chain,
}

#[derive(Debug, clap::Args)]
pub struct DualityArgs {
    #[arg(long, value_enum)]
    pub poset: PosetKind,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub variant: DualityVariant,
    /// Kernel as a JSON matrix with "p/q" entries.
    #[arg(long)]
    pub kernel: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CoarseMatrix {
    Zeta,
    Moebius,
    ZetaTranspose,
    MoebiusTranspose,
}

#[derive(Debug, clap::Args)]
pub struct CoarsenArgs {
    /// `subsets` coarsens by cardinality, `partitions` by skeleton.
    #[arg(long, value_enum)]
    pub poset: PosetKind,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = CoarseMatrix::Zeta)]
    pub matrix: CoarseMatrix,
    /// Use the binomial closed forms (subsets only).
    #[arg(long)]
    pub closed_form: bool,
    /// Run the class-size pipeline on this kernel instead.
    #[arg(long, requires = "variant")]
    pub kernel: Option<PathBuf>,
    #[arg(long)]
    pub variant: Option<DualityVariant>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Wf,
    Moran,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyScope {
    All,
    Duality,
    Coarse,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelEmit {
    Forward,
    Backward,
    CoarseForward,
    CoarseBackward,
    Hypergeometric,
}

#[derive(Debug, clap::Args)]
pub struct CanningsArgs {
    #[arg(long, value_enum)]
    pub model: Model,
    /// Population size.
    #[arg(long = "N", visible_alias = "n")]
    pub population: usize,
    /// Number of types; 1 is the haploid model.
    #[arg(long = "T", visible_alias = "t", default_value_t = 1)]
    pub types: usize,
    #[arg(long, value_enum, default_value_t = VerifyScope::All)]
    pub verify: VerifyScope,
    /// Emit a kernel matrix instead of the report.
    #[arg(long, value_enum)]
    pub emit: Option<KernelEmit>,
}

#[derive(Debug, clap::Args)]
pub struct SimulateArgs {
    #[arg(long, value_enum, default_value_t = Model::Wf)]
    pub model: Model,
    #[arg(long = "N", visible_alias = "n", default_value_t = 4)]
    pub population: usize,
    #[arg(long)]
    pub steps: u32,
    #[arg(long, default_value_t = 100_000)]
    pub reps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Size of the forward start set `{1..i}`.
    #[arg(long)]
    pub start: usize,
    /// Size of the ancestral start set `{1..j}`.
    #[arg(long)]
    pub dual_start: usize,
}

#[derive(Debug, clap::Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 4)]
    pub max_n: usize,
    #[arg(long, default_value_t = 100)]
    pub kernels: usize,
    #[arg(long, default_value_t = 100_000)]
    pub reps: usize,
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
}

/// What a command produces before formatting.
#[derive(Debug, Clone)]
pub enum Output {
    Matrix {
        matrix: RationalMatrix,
        labels: Vec<String>,
    },
    Report {
        value: Value,
        passed: bool,
    },
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SizeOverflow { .. } => 3,
        Error::Verification(_) => 1,
        _ => 2,
    }
}

/// Parses `args`, runs the command and writes its output. Returns the exit
/// status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = Limits::from_env().and_then(|limits| execute(&cli.command, &limits));
    match result {
        Ok(output) => {
            let passed = !matches!(output, Output::Report { passed: false, .. });
            let text = match render(&output, cli.format) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: {e}");
                    return exit_code(&e);
                }
            };
            if let Err(e) = write_output(cli.output.as_ref(), &text) {
                eprintln!("error: cannot write output: {e}");
                return 2;
            }
            if passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            let witness = match &e {
                Error::Verification(msg) => Some(json!({ "passed": false, "error": msg })),
                Error::IncompatibleMatrix {
                    matrix,
                    a1,
                    a2,
                    class,
                } => Some(json!({
                    "compatible": false,
                    "matrix": matrix,
                    "witness": { "a1": a1, "a2": a2, "class": class },
                })),
                _ => None,
            };
            if let Some(w) = witness {
                let _ = write_output(cli.output.as_ref(), &format!("{w:#}\n"));
            }
            exit_code(&e)
        }
    }
}

fn write_output(path: Option<&PathBuf>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => fs::write(p, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

pub fn execute(command: &Command, limits: &Limits) -> Result<Output> {
    match command {
        Command::Lattice(a) => lattice(a, limits),
        Command::Duality(a) => duality(a, limits),
        Command::Coarsen(a) => coarsen(a, limits),
        Command::Cannings(a) => cannings(a, limits),
        Command::Simulate(a) => simulate(a, limits),
        Command::VerifyAll(a) => {
            let config = VerifyConfig {
                max_n: a.max_n,
                kernels_per_variant: a.kernels,
                reps: a.reps,
                seed: a.seed,
            };
            let report = verify_all(&config, limits);
            Ok(Output::Report {
                passed: report.passed,
                value: serde_json::to_value(&report).expect("report serializes"),
            })
        }
    }
}

pub fn render(output: &Output, format: Format) -> Result<String> {
    Ok(match (output, format) {
        (Output::Matrix { matrix, labels }, Format::Json) => {
            format!("{}\n", matrix.to_json(Some(labels)))
        }
        (Output::Matrix { matrix, labels }, Format::Csv) => matrix.to_csv(Some(labels)),
        (Output::Matrix { matrix, labels }, Format::Pretty) => pretty_matrix(matrix, labels),
        (Output::Report { value, .. }, Format::Json) => format!("{value:#}\n"),
        (Output::Report { value, .. }, Format::Csv) => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["key", "value"]).expect("in-memory write");
            flatten(value, String::new(), &mut |k, v| {
                w.write_record([k, v]).expect("in-memory write");
            });
            String::from_utf8(w.into_inner().expect("flush")).expect("utf8 csv")
        }
        (Output::Report { value, .. }, Format::Pretty) => {
            let mut out = String::new();
            flatten(value, String::new(), &mut |k, v| {
                out.push_str(&format!("{k}: {v}\n"));
            });
            out
        }
    })
}

fn flatten(value: &Value, prefix: String, emit: &mut dyn FnMut(&str, &str)) {
    let join = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(v, join(k), emit);
            }
        }
        Value::Array(items) if items.iter().any(|v| v.is_object() || v.is_array()) => {
            for (i, v) in items.iter().enumerate() {
                flatten(v, join(&i.to_string()), emit);
            }
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            emit(&prefix, &format!("[{}]", parts.join(", ")));
        }
        other => emit(&prefix, &scalar(other)),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn pretty_matrix(m: &RationalMatrix, labels: &[String]) -> String {
    let cells: Vec<Vec<String>> = m.to_strings();
    let label_width = labels.iter().map(|l| l.chars().count()).max().unwrap_or(0);
    let widths: Vec<usize> = (0..m.cols())
        .map(|j| {
            cells
                .iter()
                .map(|r| r[j].len())
                .chain(std::iter::once(labels[j].chars().count()))
                .max()
                .unwrap_or(0)
        })
        .collect();
    let pad = |s: &str, w: usize| format!("{}{s}", " ".repeat(w.saturating_sub(s.chars().count())));
    let mut out = pad("", label_width);
    for (j, l) in labels.iter().enumerate() {
        out.push_str("  ");
        out.push_str(&pad(l, widths[j]));
    }
    out.push('\n');
    for (i, row) in cells.iter().enumerate() {
        out.push_str(&pad(&labels[i], label_width));
        for (j, c) in row.iter().enumerate() {
            out.push_str("  ");
            out.push_str(&pad(c, widths[j]));
        }
        out.push('\n');
    }
    out
}

fn chain(n: usize, limits: &Limits) -> Result<FinitePoset> {
    limits.check("chain", n, limits.poset_states)?;
    build_poset_with(
        &(0..n).collect::<Vec<_>>(),
        |a, b| a <= b,
        Verification::Auto,
        limits,
    )
}

fn poset_for(kind: PosetKind, n: usize, limits: &Limits) -> Result<FinitePoset> {
    match kind {
        PosetKind::Subsets => subset_lattice_with(n, limits)?.poset(limits),
        PosetKind::Partitions => Ok(partition_lattice_with(n, limits)?.poset().clone()),
        PosetKind::Chain => chain(n, limits),
    }
}

fn dense_pair(kind: PosetKind, n: usize, limits: &Limits) -> Result<ZetaPair> {
    moebius_matrix_with(&poset_for(kind, n, limits)?, limits)
}

fn lattice(a: &LatticeArgs, limits: &Limits) -> Result<Output> {
    let poset = match a.kind {
        LatticeKind::Subsets => poset_for(PosetKind::Subsets, a.n, limits)?,
        LatticeKind::Partitions => poset_for(PosetKind::Partitions, a.n, limits)?,
        LatticeKind::Chain => poset_for(PosetKind::Chain, a.n, limits)?,
        LatticeKind::ProductSets => product_set_lattice(a.n, a.copies, limits)?.poset().clone(),
    };
    let labels = poset.labels().to_vec();
    match a.emit {
        Emit::Elements => Ok(Output::Report {
            value: json!({ "size": labels.len(), "elements": labels }),
            passed: true,
        }),
        Emit::Zeta | Emit::Moebius => {
            limits.check_dense("lattice matrix", poset.len())?;
            let matrix = if a.emit == Emit::Zeta {
                dense_from_view(&ZetaView {
                    poset: &poset,
                    transposed: false,
                })
            } else {
                let mu = moebius_function(&poset);
                dense_from_view(&MoebiusView {
                    mu: &mu,
                    transposed: false,
                })
            };
            Ok(Output::Matrix { matrix, labels })
        }
    }
}

fn dense_from_view(v: &dyn MatrixView) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(v.nrows(), v.ncols());
    for i in 0..v.nrows() {
        for (j, x) in v.row_nonzeros(i) {
            m[(i, j)] = x;
        }
    }
    m
}

fn read_kernel(path: &PathBuf) -> Result<RationalMatrix> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    RationalMatrix::from_json(&text)
}

fn duality(a: &DualityArgs, limits: &Limits) -> Result<Output> {
    let zp = dense_pair(a.poset, a.n, limits)?;
    let p = read_kernel(&a.kernel)?;
    if p.rows() != zp.len() || p.cols() != zp.len() {
        return Err(Error::DimensionMismatch(format!(
            "kernel is {}x{}, poset has {} elements",
            p.rows(),
            p.cols(),
            zp.len()
        )));
    }
    if !p.is_nonnegative() {
        return Err(Error::Parse("kernel entries must be nonnegative".into()));
    }
    let summary = certificate_summary(&p, &zp, a.variant)?;
    let mut value = serde_json::to_value(&summary).expect("summary serializes");
    value["labels"] = json!(zp.poset.labels());
    Ok(Output::Report {
        value,
        passed: true,
    })
}

fn relation_for(
    kind: PosetKind,
    n: usize,
    limits: &Limits,
) -> Result<(FinitePoset, EquivalenceRelation)> {
    match kind {
        PosetKind::Subsets => {
            let l = subset_lattice_with(n, limits)?;
            Ok((l.poset(limits)?, EquivalenceRelation::cardinality(&l)))
        }
        PosetKind::Partitions => {
            let l = partition_lattice_with(n, limits)?;
            let rel = EquivalenceRelation::skeleton(&l);
            Ok((l.poset().clone(), rel))
        }
        PosetKind::Chain => Err(Error::Parse(
            "coarsening is defined for subsets (cardinality) and partitions (skeleton)".into(),
        )),
    }
}

fn coarsen(a: &CoarsenArgs, limits: &Limits) -> Result<Output> {
    if let (Some(path), Some(v)) = (&a.kernel, a.variant) {
        let (poset, rel) = relation_for(a.poset, a.n, limits)?;
        let zp = moebius_matrix_with(&poset, limits)?;
        let p = read_kernel(path)?;
        let r = variant_pipeline(&p, &zp, v, &rel)?;
        let export =
            |m: &RationalMatrix| m.to_export(Some(r.labels.clone()), Some(r.labels.clone()));
        return Ok(Output::Report {
            value: json!({
                "variant": v,
                "classes": r.labels,
                "h_hat": r.h_hat.iter().map(format_rational).collect::<Vec<_>>(),
                "P_coarse": export(&r.p_coarse),
                "H_hat": export(&r.h_hat_matrix),
                "H_hat_inverse": export(&r.h_hat_inverse),
                "Q_hat": export(r.q_hat.matrix()),
                "P_coarse_stochastic": r.p_coarse_kernel.is_stochastic(),
                "Q_hat_stochastic": r.q_hat.is_stochastic(),
            }),
            passed: true,
        });
    }
    if a.closed_form {
        if a.poset != PosetKind::Subsets {
            return Err(Error::Parse(
                "closed forms are available for subsets only".into(),
            ));
        }
        let c = coarse_set_matrices_with(a.n, limits)?;
        let matrix = match a.matrix {
            CoarseMatrix::Zeta => c.zeta,
            CoarseMatrix::Moebius => c.moebius,
            CoarseMatrix::ZetaTranspose => c.zeta_transpose,
            CoarseMatrix::MoebiusTranspose => c.moebius_transpose,
        };
        let labels = (0..=a.n).map(|j| j.to_string()).collect();
        return Ok(Output::Matrix { matrix, labels });
    }
    let (poset, rel) = relation_for(a.poset, a.n, limits)?;
    let mu;
    let view: Box<dyn MatrixView + '_> = match a.matrix {
        CoarseMatrix::Zeta | CoarseMatrix::ZetaTranspose => Box::new(ZetaView {
            poset: &poset,
            transposed: a.matrix == CoarseMatrix::ZetaTranspose,
        }),
        CoarseMatrix::Moebius | CoarseMatrix::MoebiusTranspose => {
            mu = moebius_function(&poset);
            Box::new(MoebiusView {
                mu: &mu,
                transposed: a.matrix == CoarseMatrix::MoebiusTranspose,
            })
        }
    };
    let r = check_compatibility(view.as_ref(), &rel)?;
    match r.coarse {
        Some(matrix) => Ok(Output::Matrix {
            matrix,
            labels: rel.labels().to_vec(),
        }),
        None => {
            let (a1, a2, class) = r.witness.expect("incompatible result has a witness");
            Ok(Output::Report {
                value: json!({
                    "compatible": false,
                    "witness": {
                        "a1": poset.label(a1),
                        "a2": poset.label(a2),
                        "class": rel.label(class),
                    }
                }),
                passed: true,
            })
        }
    }
}

fn law_for(model: Model, n: usize, limits: &Limits) -> Result<OffspringLaw> {
    match model {
        Model::Wf => wright_fisher_law_with(n, limits),
        Model::Moran => moran_law_with(n, limits),
    }
}

fn cannings(a: &CanningsArgs, limits: &Limits) -> Result<Output> {
    let law = law_for(a.model, a.population, limits)?;
    let model = match a.model {
        Model::Wf => "wf",
        Model::Moran => "moran",
    };
    if a.types == 0 {
        return Err(Error::Parse("--T must be at least 1".into()));
    }
    if a.types >= 2 {
        return multi_allelic(a, &law, model, limits);
    }
    let fk = forward_kernel_with(&law, limits)?;
    let bk = backward_kernel_with(&law, limits)?;
    let labels = fk.lattice.labels();
    let coarse_needed = a.verify == VerifyScope::All
        || a.verify == VerifyScope::Coarse
        || matches!(
            a.emit,
            Some(
                KernelEmit::CoarseForward | KernelEmit::CoarseBackward | KernelEmit::Hypergeometric
            )
        );
    let coarse = if coarse_needed {
        Some(coarsen_to_cannings_with(&fk, &bk, limits)?)
    } else {
        None
    };
    if let Some(emit) = a.emit {
        let coarse_labels: Vec<String> = (0..=a.population).map(|j| j.to_string()).collect();
        let (matrix, labels) = match emit {
            KernelEmit::Forward => (fk.p.matrix().clone(), labels),
            KernelEmit::Backward => (bk.q.matrix().clone(), labels),
            KernelEmit::CoarseForward => {
                (coarse.expect("computed").pipeline.p_coarse, coarse_labels)
            }
            KernelEmit::CoarseBackward => (
                coarse.expect("computed").pipeline.q_hat.matrix().clone(),
                coarse_labels,
            ),
            KernelEmit::Hypergeometric => (
                coarse.expect("computed").pipeline.h_hat_matrix,
                coarse_labels,
            ),
        };
        return Ok(Output::Matrix { matrix, labels });
    }
    let mut value = json!({
        "model": model,
        "N": a.population,
        "T": 1,
        "states": fk.lattice.len(),
        "exchangeable": law.is_exchangeable(),
        "forward_stochastic": fk.p.is_stochastic(),
        "backward_stochastic": bk.q.is_stochastic(),
    });
    let mut passed = fk.p.is_stochastic() && bk.q.is_stochastic();
    if matches!(a.verify, VerifyScope::All | VerifyScope::Duality) {
        let routes = verify_transpose_zeta_duality_with(&fk, &bk, limits)?;
        passed &= routes.holds();
        value["duality"] = json!(routes);
    }
    if let Some(c) = coarse {
        passed &= c.all_hold() && c.pipeline.q_hat.is_stochastic();
        value["coarse"] = json!({
            "forward_direct": c.forward_direct,
            "class_sizes_binomial": c.class_sizes_binomial,
            "hypergeometric": c.hypergeometric,
            "hypergeometric_inverse": c.hypergeometric_inverse,
            "moment_formula": c.moment_formula,
            "P_coarse_stochastic": c.pipeline.p_coarse_kernel.is_stochastic(),
            "Q_hat_stochastic": c.pipeline.q_hat.is_stochastic(),
            "Q_hat": c.pipeline.q_hat.matrix().to_strings(),
        });
    }
    value["passed"] = json!(passed);
    Ok(Output::Report { value, passed })
}

fn multi_allelic(
    a: &CanningsArgs,
    law: &OffspringLaw,
    model: &str,
    limits: &Limits,
) -> Result<Output> {
    let ma = multiallelic_kernels_with(law, a.types, limits)?;
    let coarse = match a.verify {
        VerifyScope::All | VerifyScope::Coarse => Some(coarsen_multiallelic(&ma)?),
        _ => None,
    };
    if let Some(emit) = a.emit {
        let (matrix, labels) = match emit {
            KernelEmit::Forward => (ma.p.matrix().clone(), ma.labels()),
            KernelEmit::Backward => (ma.q.matrix().clone(), ma.labels()),
            _ => {
                let c = match coarse {
                    Some(c) => c,
                    None => coarsen_multiallelic(&ma)?,
                };
                let labels = c.pipeline.labels.clone();
                let m = match emit {
                    KernelEmit::CoarseForward => c.pipeline.p_coarse,
                    KernelEmit::CoarseBackward => c.pipeline.q_hat.into_matrix(),
                    _ => c.pipeline.h_hat_matrix,
                };
                (m, labels)
            }
        };
        return Ok(Output::Matrix { matrix, labels });
    }
    let max_defect = ma.defect.iter().max().cloned().unwrap_or_default();
    let mut value = json!({
        "model": model,
        "N": a.population,
        "T": a.types,
        "states": ma.states.len(),
        "covering_states": ma.covering.iter().filter(|&&c| c).count(),
        "exchangeable": law.is_exchangeable(),
        "forward_stochastic": ma.p.is_stochastic(),
        "backward_substochastic": ma.q.is_substochastic(),
        "max_defect": format_rational(&max_defect),
    });
    let mut passed = ma.p.is_stochastic() && ma.q.is_substochastic();
    if matches!(a.verify, VerifyScope::All | VerifyScope::Duality) {
        passed &= ma.duality.holds();
        value["duality"] = json!(ma.duality);
    }
    if let Some(c) = coarse {
        passed &= c.all_hold() && c.pipeline.q_hat.is_substochastic();
        value["coarse"] = json!({
            "classes": c.pipeline.labels,
            "class_sizes_multinomial": c.class_sizes_multinomial,
            "hypergeometric": c.hypergeometric,
            "forward_direct": c.forward_direct,
            "P_coarse_stochastic": c.pipeline.p_coarse_kernel.is_stochastic(),
            "Q_hat_substochastic": c.pipeline.q_hat.is_substochastic(),
        });
    }
    value["passed"] = json!(passed);
    Ok(Output::Report { value, passed })
}

fn simulate(a: &SimulateArgs, limits: &Limits) -> Result<Output> {
    let law = law_for(a.model, a.population, limits)?;
    if a.start > a.population || a.dual_start > a.population {
        return Err(Error::Parse(format!(
            "start sizes must be at most N = {}",
            a.population
        )));
    }
    let first = |k: usize| ((1u64 << k) - 1) as u32;
    let r = monte_carlo_duality(
        &law,
        first(a.start),
        first(a.dual_start),
        a.steps,
        a.reps,
        a.seed,
    )?;
    let mut value = serde_json::to_value(&r).expect("report serializes");
    value["within_4_standard_errors"] = json!(r.within(4.0));
    Ok(Output::Report {
        value,
        passed: true,
    })
}
