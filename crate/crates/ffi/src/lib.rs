//! C interface to `moebius-dual`.
//!
//! Objects are opaque handles created by `md_*` constructors and released
//! with the matching `*_free`. Every fallible function returns an
//! [`MdStatus`]; on failure a message is available from
//! [`md_last_error_message`] on the same thread. Strings returned through
//! `char **` out-parameters are owned by the caller and must be released
//! with [`md_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use moebius_dual::cli::{self, CanningsArgs, Command, KernelEmit, Model, Output, VerifyScope};
use moebius_dual::duality::{certificate_summary, variant_dual, DualityVariant};
use moebius_dual::lattices::{partition_lattice_with, subset_lattice_with};
use moebius_dual::poset::{build_poset_with, moebius_matrix_with, Verification, ZetaPair};
use moebius_dual::rational::format_rational;
use moebius_dual::verify::{verify_all, VerifyConfig};
use moebius_dual::{Error, Limits, RationalMatrix};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    SizeOverflow = 4,
    Verification = 5,
    Incompatible = 6,
    Internal = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MdVariant {
    Zeta = 0,
    ZetaTranspose = 1,
    Moebius = 2,
    MoebiusTranspose = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MdModel {
    WrightFisher = 0,
    Moran = 1,
}

/// A finite poset together with its zeta and Möbius matrices.
pub struct MdPoset(ZetaPair);

/// A dense matrix of exact rationals.
pub struct MdMatrix(RationalMatrix);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> MdStatus {
    match e {
        Error::SizeOverflow { .. } => MdStatus::SizeOverflow,
        Error::Verification(_) => MdStatus::Verification,
        Error::Parse(_) => MdStatus::Parse,
        Error::IncompatibleMatrix { .. } => MdStatus::Incompatible,
        _ => MdStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> Result<(), MdStatus>) -> MdStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MdStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            MdStatus::Internal
        }
    }
}

fn lib<T>(r: moebius_dual::Result<T>) -> Result<T, MdStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

fn null(what: &str) -> MdStatus {
    set_error(format!("{what} is null"));
    MdStatus::NullPointer
}

unsafe fn out<T>(slot: *mut T, value: T) -> Result<(), MdStatus> {
    if slot.is_null() {
        return Err(null("output pointer"));
    }
    slot.write(value);
    Ok(())
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, MdStatus> {
    p.as_ref().ok_or_else(|| null(what))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior nul").into_raw()
}

fn variant(v: MdVariant) -> DualityVariant {
    match v {
        MdVariant::Zeta => DualityVariant::Zeta,
        MdVariant::ZetaTranspose => DualityVariant::ZetaTranspose,
        MdVariant::Moebius => DualityVariant::Moebius,
        MdVariant::MoebiusTranspose => DualityVariant::MoebiusTranspose,
    }
}

fn limits() -> Result<Limits, MdStatus> {
    lib(Limits::from_env())
}

fn new_poset(
    build: impl FnOnce(&Limits) -> moebius_dual::Result<ZetaPair>,
    slot: *mut *mut MdPoset,
) -> MdStatus {
    guard(|| {
        let l = limits()?;
        let zp = lib(build(&l))?;
        unsafe { out(slot, Box::into_raw(Box::new(MdPoset(zp)))) }
    })
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next `md_*` call on the same thread.
#[no_mangle]
pub extern "C" fn md_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub unsafe extern "C" fn md_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Subset lattice of `{1..n}`.
#[no_mangle]
pub unsafe extern "C" fn md_poset_subsets(n: usize, poset: *mut *mut MdPoset) -> MdStatus {
    new_poset(|l| subset_lattice_with(n, l)?.zeta_pair(l), poset)
}

/// Partition lattice of `{1..n}` ordered by refinement.
#[no_mangle]
pub unsafe extern "C" fn md_poset_partitions(n: usize, poset: *mut *mut MdPoset) -> MdStatus {
    new_poset(|l| partition_lattice_with(n, l)?.zeta_pair(l), poset)
}

/// The chain `0 < 1 < … < n-1`.
#[no_mangle]
pub unsafe extern "C" fn md_poset_chain(n: usize, poset: *mut *mut MdPoset) -> MdStatus {
    new_poset(
        |l| {
            l.check("chain", n, l.poset_states)?;
            let p = build_poset_with(
                &(0..n).collect::<Vec<_>>(),
                |a, b| a <= b,
                Verification::Auto,
                l,
            )?;
            moebius_matrix_with(&p, l)
        },
        poset,
    )
}

#[no_mangle]
pub unsafe extern "C" fn md_poset_free(poset: *mut MdPoset) {
    if !poset.is_null() {
        drop(Box::from_raw(poset));
    }
}

/// Number of elements; 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn md_poset_len(poset: *const MdPoset) -> usize {
    poset.as_ref().map_or(0, |p| p.0.len())
}

#[no_mangle]
pub unsafe extern "C" fn md_poset_label(
    poset: *const MdPoset,
    index: usize,
    label: *mut *mut c_char,
) -> MdStatus {
    guard(|| {
        let p = handle(poset, "poset")?;
        if index >= p.0.len() {
            set_error(format!("index {index} out of range"));
            return Err(MdStatus::InvalidArgument);
        }
        out(label, c_string(p.0.poset.label(index).to_string()))
    })
}

/// Möbius function `μ(a, b)`; 0 when `a` and `b` are not comparable.
#[no_mangle]
pub unsafe extern "C" fn md_poset_mu(
    poset: *const MdPoset,
    a: usize,
    b: usize,
    mu: *mut i64,
) -> MdStatus {
    guard(|| {
        let p = handle(poset, "poset")?;
        if a >= p.0.len() || b >= p.0.len() {
            set_error("index out of range".into());
            return Err(MdStatus::InvalidArgument);
        }
        out(mu, p.0.mu.get(a, b).unwrap_or(0))
    })
}

#[no_mangle]
pub unsafe extern "C" fn md_poset_zeta(
    poset: *const MdPoset,
    matrix: *mut *mut MdMatrix,
) -> MdStatus {
    guard(|| {
        let p = handle(poset, "poset")?;
        out(matrix, Box::into_raw(Box::new(MdMatrix(p.0.zeta.clone()))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn md_poset_moebius(
    poset: *const MdPoset,
    matrix: *mut *mut MdMatrix,
) -> MdStatus {
    guard(|| {
        let p = handle(poset, "poset")?;
        out(
            matrix,
            Box::into_raw(Box::new(MdMatrix(p.0.moebius.clone()))),
        )
    })
}

/// Parses a matrix from its JSON form (`"entries"` as `"p/q"` strings).
#[no_mangle]
pub unsafe extern "C" fn md_matrix_from_json(
    json: *const c_char,
    matrix: *mut *mut MdMatrix,
) -> MdStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        let text = CStr::from_ptr(json).to_str().map_err(|_| {
            set_error("json is not UTF-8".into());
            MdStatus::Parse
        })?;
        let m = lib(RationalMatrix::from_json(text))?;
        out(matrix, Box::into_raw(Box::new(MdMatrix(m))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn md_matrix_to_json(
    matrix: *const MdMatrix,
    json: *mut *mut c_char,
) -> MdStatus {
    guard(|| {
        let m = handle(matrix, "matrix")?;
        out(json, c_string(m.0.to_json(None)))
    })
}

#[no_mangle]
pub unsafe extern "C" fn md_matrix_rows(matrix: *const MdMatrix) -> usize {
    matrix.as_ref().map_or(0, |m| m.0.rows())
}

#[no_mangle]
pub unsafe extern "C" fn md_matrix_cols(matrix: *const MdMatrix) -> usize {
    matrix.as_ref().map_or(0, |m| m.0.cols())
}

/// Entry `(i, j)` as a `"p/q"` string.
#[no_mangle]
pub unsafe extern "C" fn md_matrix_entry(
    matrix: *const MdMatrix,
    i: usize,
    j: usize,
    entry: *mut *mut c_char,
) -> MdStatus {
    guard(|| {
        let m = handle(matrix, "matrix")?;
        if i >= m.0.rows() || j >= m.0.cols() {
            set_error(format!("entry ({i}, {j}) out of range"));
            return Err(MdStatus::InvalidArgument);
        }
        out(entry, c_string(format_rational(&m.0[(i, j)])))
    })
}

#[no_mangle]
pub unsafe extern "C" fn md_matrix_free(matrix: *mut MdMatrix) {
    if !matrix.is_null() {
        drop(Box::from_raw(matrix));
    }
}

/// Dual kernel `Q` with `Q' = H⁻¹ P H` for the chosen `H`.
#[no_mangle]
pub unsafe extern "C" fn md_dual(
    poset: *const MdPoset,
    kernel: *const MdMatrix,
    v: MdVariant,
    dual: *mut *mut MdMatrix,
) -> MdStatus {
    guard(|| {
        let p = handle(poset, "poset")?;
        let k = handle(kernel, "kernel")?;
        let q = lib(variant_dual(&k.0, &p.0, variant(v)))?;
        out(dual, Box::into_raw(Box::new(MdMatrix(q))))
    })
}

/// Positivity certificate of `kernel` as JSON, the same document the
/// `duality` command prints.
#[no_mangle]
pub unsafe extern "C" fn md_certificate_json(
    poset: *const MdPoset,
    kernel: *const MdMatrix,
    v: MdVariant,
    json: *mut *mut c_char,
) -> MdStatus {
    guard(|| {
        let p = handle(poset, "poset")?;
        let k = handle(kernel, "kernel")?;
        let summary = lib(certificate_summary(&k.0, &p.0, variant(v)))?;
        let text = serde_json::to_string_pretty(&summary).map_err(|e| {
            set_error(e.to_string());
            MdStatus::Internal
        })?;
        out(json, c_string(text))
    })
}

/// Builds the exact Cannings kernels for `n` individuals and `types` types
/// and runs every check; `passed` receives the verdict and `json`, if not
/// null, the full report.
#[no_mangle]
pub unsafe extern "C" fn md_cannings_verify(
    model: MdModel,
    n: usize,
    types: usize,
    passed: *mut bool,
    json: *mut *mut c_char,
) -> MdStatus {
    guard(|| {
        let args = CanningsArgs {
            model: match model {
                MdModel::WrightFisher => Model::Wf,
                MdModel::Moran => Model::Moran,
            },
            population: n,
            types,
            verify: VerifyScope::All,
            emit: None::<KernelEmit>,
        };
        let output = lib(cli::execute(&Command::Cannings(args), &limits()?))?;
        let Output::Report { value, passed: ok } = output else {
            set_error("unexpected matrix output".into());
            return Err(MdStatus::Internal);
        };
        out(passed, ok)?;
        if !json.is_null() {
            json.write(c_string(format!("{value:#}")));
        }
        Ok(())
    })
}

/// Runs the verification suite; see the `verify-all` command.
#[no_mangle]
pub unsafe extern "C" fn md_verify_all(
    max_n: usize,
    reps: usize,
    seed: u64,
    passed: *mut bool,
    json: *mut *mut c_char,
) -> MdStatus {
    guard(|| {
        let config = VerifyConfig {
            max_n,
            reps,
            seed,
            ..VerifyConfig::default()
        };
        let report = verify_all(&config, &limits()?);
        out(passed, report.passed)?;
        if !json.is_null() {
            let text = serde_json::to_string_pretty(&report).map_err(|e| {
                set_error(e.to_string());
                MdStatus::Internal
            })?;
            json.write(c_string(text));
        }
        Ok(())
    })
}
