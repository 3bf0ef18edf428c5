//! C ABI over the `rebalance` crate.
//!
//! Datasets and results are opaque handles owned by the caller and released
//! with the matching `*_free` function. Every fallible call returns an
//! [`RbStatus`]; on failure a description is kept per thread and can be read
//! with [`rb_last_error_message`]. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rebalance::cli::{default_sampler, MethodName};
use rebalance::io::{read_csv, write_csv};
use rebalance::synthgen::{make_imbalanced, ImbalancedConfig};
use rebalance::{Dataset, Error, RatioSpec, ResampleResult};

/// Status code returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    UnknownMethod = 3,
    BufferTooSmall = 4,
    ClassCount = 10,
    Ratio = 11,
    Index = 12,
    Dimension = 13,
    NeighborCount = 14,
    Cluster = 15,
    DegenerateInput = 16,
    Weight = 17,
    InvalidDataset = 18,
    Parse = 19,
    Shape = 20,
    DatasetMismatch = 21,
    Io = 22,
    Panic = 99,
}

/// Opaque dataset handle.
pub struct RbDataset(Dataset);

/// Opaque resampling result handle.
pub struct RbResult {
    dataset: RbDataset,
    kept_indices: Vec<usize>,
    n_synthetic: usize,
}

impl From<ResampleResult> for RbResult {
    fn from(r: ResampleResult) -> Self {
        Self {
            n_synthetic: r.n_synthetic(),
            kept_indices: r.kept_indices,
            dataset: RbDataset(r.dataset),
        }
    }
}

/// Class summary of a dataset.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RbClassStats {
    pub n_minority: usize,
    pub n_majority: usize,
    pub ratio: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

struct Failure(RbStatus, String);

fn status_of(e: &Error) -> RbStatus {
    match e {
        Error::ClassCount { .. } => RbStatus::ClassCount,
        Error::Ratio(_) => RbStatus::Ratio,
        Error::Index { .. } => RbStatus::Index,
        Error::Dimension { .. } => RbStatus::Dimension,
        Error::NeighborCount { .. } => RbStatus::NeighborCount,
        Error::Cluster { .. } => RbStatus::Cluster,
        Error::DegenerateInput(_) => RbStatus::DegenerateInput,
        Error::Weight(_) => RbStatus::Weight,
        Error::InvalidDataset(_) => RbStatus::InvalidDataset,
        Error::Parse { .. } | Error::Csv(_) => RbStatus::Parse,
        Error::Shape(_) => RbStatus::Shape,
        Error::DatasetMismatch => RbStatus::DatasetMismatch,
        Error::Io(_) => RbStatus::Io,
        Error::Stage { source, .. } => status_of(source),
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null() -> Failure {
    Failure(RbStatus::NullPointer, "null pointer argument".into())
}

/// Runs `f`, converting errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> RbStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RbStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            RbStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(RbStatus::InvalidUtf8, "string argument is not valid UTF-8".into()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(null)
}

fn emit<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    unsafe { *out = Box::into_raw(Box::new(value)) };
    Ok(())
}

/// Copies `src` into a caller buffer. `*needed` always receives the full
/// length (UTF-8 bytes plus the terminating NUL for strings).
unsafe fn copy_out<T: Copy>(src: &[T], buf: *mut T, buf_len: usize, needed: *mut usize) -> Result<(), Failure> {
    if !needed.is_null() {
        *needed = src.len();
    }
    if buf_len < src.len() {
        return Err(Failure(
            RbStatus::BufferTooSmall,
            format!("buffer holds {buf_len} elements, {} required", src.len()),
        ));
    }
    if !src.is_empty() {
        if buf.is_null() {
            return Err(null());
        }
        ptr::copy_nonoverlapping(src.as_ptr(), buf, src.len());
    }
    Ok(())
}

/// Copies the last error message of this thread into `buf` (NUL-terminated)
/// and returns the buffer size the full message needs. Returns 0 when no
/// error has been recorded.
///
/// # Safety
/// `buf` must be null or valid for `buf_len` bytes.
#[no_mangle]
pub unsafe extern "C" fn rb_last_error_message(buf: *mut c_char, buf_len: usize) -> usize {
    LAST_ERROR.with(|e| match e.borrow().as_ref() {
        None => 0,
        Some(msg) => {
            let bytes = msg.as_bytes_with_nul();
            if !buf.is_null() && buf_len > 0 {
                let n = bytes.len().min(buf_len);
                ptr::copy_nonoverlapping(bytes.as_ptr().cast(), buf, n);
                *buf.add(n - 1) = 0;
            }
            bytes.len()
        }
    })
}

/// Builds a dataset from a row-major `n_samples x n_features` matrix and one
/// NUL-terminated label per row.
///
/// # Safety
/// `features` must hold `n_samples * n_features` values, `labels` must hold
/// `n_samples` valid C strings and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rb_dataset_new(
    features: *const f64,
    n_samples: usize,
    n_features: usize,
    labels: *const *const c_char,
    out: *mut *mut RbDataset,
) -> RbStatus {
    guard(|| {
        let len = n_samples
            .checked_mul(n_features)
            .ok_or_else(|| Failure(RbStatus::Shape, "matrix size overflows".into()))?;
        if n_samples > 0 && (features.is_null() || labels.is_null()) {
            return Err(null());
        }
        let values = if len == 0 {
            Vec::new()
        } else {
            std::slice::from_raw_parts(features, len).to_vec()
        };
        let mut owned = Vec::with_capacity(n_samples);
        for i in 0..n_samples {
            owned.push(str_arg(*labels.add(i))?.to_owned());
        }
        emit(out, RbDataset(Dataset::new(values, n_features, owned)?))
    })
}

/// Reads a CSV file with header `f0,...,label`.
///
/// # Safety
/// `path` must be a valid C string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rb_dataset_read_csv(path: *const c_char, out: *mut *mut RbDataset) -> RbStatus {
    guard(|| emit(out, RbDataset(read_csv(str_arg(path)?)?)))
}

/// # Safety
/// `ds` must be a live handle and `path` a valid C string.
#[no_mangle]
pub unsafe extern "C" fn rb_dataset_write_csv(ds: *const RbDataset, path: *const c_char) -> RbStatus {
    guard(|| Ok(write_csv(&handle(ds)?.0, str_arg(path)?)?))
}

/// # Safety
/// `ds` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rb_dataset_free(ds: *mut RbDataset) {
    if !ds.is_null() {
        drop(Box::from_raw(ds));
    }
}

/// # Safety
/// `ds` must be a live handle; the out pointers must be writable or null.
#[no_mangle]
pub unsafe extern "C" fn rb_dataset_dimensions(
    ds: *const RbDataset,
    n_samples: *mut usize,
    n_features: *mut usize,
) -> RbStatus {
    guard(|| {
        let d = &handle(ds)?.0;
        if !n_samples.is_null() {
            *n_samples = d.n_samples();
        }
        if !n_features.is_null() {
            *n_features = d.n_features();
        }
        Ok(())
    })
}

/// # Safety
/// `ds` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rb_dataset_stats(ds: *const RbDataset, out: *mut RbClassStats) -> RbStatus {
    guard(|| {
        let s = handle(ds)?.0.class_stats()?;
        let out = out.as_mut().ok_or_else(null)?;
        *out = RbClassStats {
            n_minority: s.n_minority,
            n_majority: s.n_majority,
            ratio: s.balancing_ratio(),
        };
        Ok(())
    })
}

/// Copies the row-major feature matrix into `buf`.
///
/// # Safety
/// `ds` must be a live handle and `buf` valid for `buf_len` values.
#[no_mangle]
pub unsafe extern "C" fn rb_dataset_copy_features(
    ds: *const RbDataset,
    buf: *mut f64,
    buf_len: usize,
    needed: *mut usize,
) -> RbStatus {
    guard(|| copy_out(handle(ds)?.0.features(), buf, buf_len, needed))
}

/// Copies the label of `row` into `buf` as a NUL-terminated string.
///
/// # Safety
/// `ds` must be a live handle and `buf` valid for `buf_len` bytes.
#[no_mangle]
pub unsafe extern "C" fn rb_dataset_copy_label(
    ds: *const RbDataset,
    row: usize,
    buf: *mut c_char,
    buf_len: usize,
    needed: *mut usize,
) -> RbStatus {
    guard(|| {
        let d = &handle(ds)?.0;
        if row >= d.n_samples() {
            return Err(Error::Index {
                index: row,
                len: d.n_samples(),
            }
            .into());
        }
        let label =
            CString::new(d.label(row)).map_err(|_| Failure(RbStatus::InvalidDataset, "label holds NUL".into()))?;
        let bytes: Vec<c_char> = label.as_bytes_with_nul().iter().map(|&b| b as c_char).collect();
        copy_out(&bytes, buf, buf_len, needed)
    })
}

/// Two-class Gaussian data: `round(w_min * n)` rows labelled `"0"` first,
/// then the rest labelled `"1"`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rb_generate(
    n_samples: usize,
    n_features: usize,
    w_min: f64,
    w_maj: f64,
    class_sep: f64,
    sigma: f64,
    seed: u64,
    out: *mut *mut RbDataset,
) -> RbStatus {
    guard(|| {
        let cfg = ImbalancedConfig {
            class_sep,
            sigma,
            ..ImbalancedConfig::new(n_samples, n_features, [w_min, w_maj])
        };
        emit(out, RbDataset(make_imbalanced(&cfg, seed)?))
    })
}

/// Runs the sampler named as on the command line (`"smote"`,
/// `"tomek"`, ...) with default settings. `ratio` is `"auto"` or a number
/// in (0, 1]; null means `"auto"`.
///
/// # Safety
/// `ds` must be a live handle, `method` a valid C string, `ratio` null or a
/// valid C string, and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rb_resample(
    ds: *const RbDataset,
    method: *const c_char,
    ratio: *const c_char,
    seed: u64,
    out: *mut *mut RbResult,
) -> RbStatus {
    guard(|| {
        let d = &handle(ds)?.0;
        let name = str_arg(method)?;
        let method = MethodName::from_cli_name(name)
            .ok_or_else(|| Failure(RbStatus::UnknownMethod, format!("unknown method '{name}'")))?;
        let ratio: RatioSpec = if ratio.is_null() {
            RatioSpec::Auto
        } else {
            str_arg(ratio)?.parse()?
        };
        emit(out, RbResult::from(default_sampler(method, ratio).fit_sample(d, seed)?))
    })
}

/// Borrowed view of the resampled dataset; valid until the result is freed.
///
/// # Safety
/// `res` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rb_result_dataset(res: *const RbResult) -> *const RbDataset {
    res.as_ref().map_or(ptr::null(), |r| &r.dataset)
}

/// Number of output rows copied from the input.
///
/// # Safety
/// `res` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rb_result_n_kept(res: *const RbResult) -> usize {
    res.as_ref().map_or(0, |r| r.kept_indices.len())
}

/// Number of generated output rows (they follow the kept rows).
///
/// # Safety
/// `res` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rb_result_n_synthetic(res: *const RbResult) -> usize {
    res.as_ref().map_or(0, |r| r.n_synthetic)
}

/// Input row index of every kept output row.
///
/// # Safety
/// `res` must be a live handle and `buf` valid for `buf_len` values.
#[no_mangle]
pub unsafe extern "C" fn rb_result_copy_kept_indices(
    res: *const RbResult,
    buf: *mut usize,
    buf_len: usize,
    needed: *mut usize,
) -> RbStatus {
    guard(|| copy_out(&handle(res)?.kept_indices, buf, buf_len, needed))
}

/// # Safety
/// `res` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rb_result_free(res: *mut RbResult) {
    if !res.is_null() {
        drop(Box::from_raw(res));
    }
}
