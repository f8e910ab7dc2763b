//! C interface to `gapped_repeats`.
//!
//! Every function returns a [`GrStatus`]; on failure a message is available
//! from [`gr_last_error`] on the same thread. Handles are opaque and owned by
//! the caller, who releases them with the matching `*_free` function.
//! Positions are 1-indexed and inclusive, as in the Rust API.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gapped_repeats::classify::{GenCase, PeriodicKind};
use gapped_repeats::{
    bound_value, check_word, enumerate_maximal_gapped_repeats, enumerate_runs, generate, CheckId,
    Classification, Error, GapConstraint, GeneratorSpec, Rational, RepeatClass, RunIndex,
};

#[repr(i32)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    /// A copy length fell outside the constraint domain.
    Domain = 4,
    Taxonomy = 5,
    Usage = 6,
    Io = 7,
    OutOfRange = 8,
    BufferTooSmall = 9,
    /// A value does not fit the C type it is returned in.
    Overflow = 10,
    Panic = 11,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrClass {
    Private = 0,
    Ppp = 1,
    Spp = 2,
    Tpp = 3,
    Psp = 4,
    Ssp = 5,
    /// Both prefix and suffix semiperiodic.
    PspSsp = 6,
    Ordinary = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrGenerator {
    Random = 0,
    Fibonacci = 1,
    ThueMorse = 2,
    Power = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GrRepeat {
    pub beg1: u64,
    pub end1: u64,
    pub beg2: u64,
    pub end2: u64,
    pub period: u64,
    pub copy_len: u64,
    pub gap_len: u64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GrRun {
    pub beg: u64,
    pub end: u64,
    pub period: u64,
    pub exp_num: i64,
    pub exp_den: i64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GrBound {
    pub n: u64,
    pub count: u64,
    pub bound_num: i64,
    pub bound_den: i64,
}

/// Parsed gap constraint.
pub struct GrConstraint {
    inner: GapConstraint,
}

/// Classified maximal gapped repeats of one word.
pub struct GrRepeats {
    items: Vec<(GrRepeat, GrClass)>,
}

/// Runs of one word.
pub struct GrRuns {
    items: Vec<GrRun>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

struct Failure(GrStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::UndefinedInput(_) | Error::InvalidArgument(_) => GrStatus::InvalidArgument,
            Error::Domain { .. } => GrStatus::Domain,
            Error::TaxonomyViolation(_) => GrStatus::Taxonomy,
            Error::Usage(_) => GrStatus::Usage,
            Error::Io(_) => GrStatus::Io,
        };
        Failure(status, e.to_string())
    }
}

fn fail<T>(status: GrStatus, msg: &str) -> Result<T, Failure> {
    Err(Failure(status, msg.to_owned()))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> GrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GrStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            GrStatus::Panic
        }
    }
}

unsafe fn bytes<'a>(data: *const u8, len: usize) -> Result<&'a [u8], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return fail(GrStatus::NullPointer, "word pointer is null");
    }
    Ok(std::slice::from_raw_parts(data, len))
}

unsafe fn out_ref<'a, T>(p: *mut T) -> Result<&'a mut T, Failure> {
    p.as_mut()
        .ok_or_else(|| Failure(GrStatus::NullPointer, "output pointer is null".into()))
}

unsafe fn constraint_ref<'a>(con: *const GrConstraint) -> Result<&'a GapConstraint, Failure> {
    con.as_ref()
        .map(|c| &c.inner)
        .ok_or_else(|| Failure(GrStatus::NullPointer, "constraint is null".into()))
}

fn to_i64(r: i128) -> Result<i64, Failure> {
    i64::try_from(r)
        .map_err(|_| Failure(GrStatus::Overflow, format!("{r} does not fit in int64_t")))
}

fn split(r: Rational) -> Result<(i64, i64), Failure> {
    Ok((to_i64(*r.numer())?, to_i64(*r.denom())?))
}

fn class_code(c: &RepeatClass) -> GrClass {
    match c {
        RepeatClass::Periodic(PeriodicKind::Private) => GrClass::Private,
        RepeatClass::Periodic(PeriodicKind::Generated(GenCase::Prefixly)) => GrClass::Ppp,
        RepeatClass::Periodic(PeriodicKind::Generated(GenCase::Suffixly)) => GrClass::Spp,
        RepeatClass::Periodic(PeriodicKind::Generated(GenCase::Totally)) => GrClass::Tpp,
        RepeatClass::Semiperiodic {
            prefix: true,
            suffix: true,
        } => GrClass::PspSsp,
        RepeatClass::Semiperiodic { prefix: true, .. } => GrClass::Psp,
        RepeatClass::Semiperiodic { .. } => GrClass::Ssp,
        RepeatClass::Ordinary => GrClass::Ordinary,
    }
}

/// Message for the last failure on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gr_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses a constraint spec such as `alpha:2` or `band:1:10` over `1..=domain`.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gr_constraint_parse(
    spec: *const c_char,
    domain: u64,
    out: *mut *mut GrConstraint,
) -> GrStatus {
    guard(|| {
        let out = out_ref(out)?;
        *out = ptr::null_mut();
        if spec.is_null() {
            return fail(GrStatus::NullPointer, "spec is null");
        }
        let text = CStr::from_ptr(spec)
            .to_str()
            .map_err(|_| Failure(GrStatus::InvalidUtf8, "spec is not UTF-8".into()))?;
        let inner = GapConstraint::parse(text, domain)?;
        *out = Box::into_raw(Box::new(GrConstraint { inner }));
        Ok(())
    })
}

/// # Safety
/// `con` must come from [`gr_constraint_parse`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn gr_constraint_free(con: *mut GrConstraint) {
    if !con.is_null() {
        drop(Box::from_raw(con));
    }
}

/// Classified maximal gapped repeats of `word`. With a null `con` every
/// maximal gapped repeat is returned, otherwise only those admitted by it.
///
/// # Safety
/// `word` must point to `len` readable bytes; `con` must be null or valid;
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gr_repeats_new(
    word: *const u8,
    len: usize,
    con: *const GrConstraint,
    out: *mut *mut GrRepeats,
) -> GrStatus {
    guard(|| {
        let out = out_ref(out)?;
        *out = ptr::null_mut();
        let w = bytes(word, len)?;
        let classes = if con.is_null() {
            Classification::of_repeats(
                w,
                RunIndex::of_word(w),
                &enumerate_maximal_gapped_repeats(w),
            )?
        } else {
            Classification::of_word(w, constraint_ref(con)?)?
        };
        let items = classes
            .classified
            .iter()
            .map(|c| {
                let r = c.repeat;
                let rec = GrRepeat {
                    beg1: r.beg1 as u64,
                    end1: r.end1() as u64,
                    beg2: r.beg2() as u64,
                    end2: r.end2() as u64,
                    period: r.period as u64,
                    copy_len: r.copy_len as u64,
                    gap_len: r.gap_len() as u64,
                };
                (rec, class_code(&c.class))
            })
            .collect();
        *out = Box::into_raw(Box::new(GrRepeats { items }));
        Ok(())
    })
}

/// # Safety
/// `set` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gr_repeats_len(set: *const GrRepeats) -> usize {
    set.as_ref().map_or(0, |s| s.items.len())
}

/// Copies repeat `index` (0-based) and its class into the outputs; either
/// output may be null.
///
/// # Safety
/// `set` must be a live handle; non-null outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn gr_repeats_get(
    set: *const GrRepeats,
    index: usize,
    out: *mut GrRepeat,
    class: *mut GrClass,
) -> GrStatus {
    guard(|| {
        let set = set
            .as_ref()
            .ok_or_else(|| Failure(GrStatus::NullPointer, "repeat set is null".into()))?;
        let Some(&(rec, cls)) = set.items.get(index) else {
            return fail(GrStatus::OutOfRange, "repeat index out of range");
        };
        if let Some(o) = out.as_mut() {
            *o = rec;
        }
        if let Some(c) = class.as_mut() {
            *c = cls;
        }
        Ok(())
    })
}

/// # Safety
/// `set` must come from [`gr_repeats_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn gr_repeats_free(set: *mut GrRepeats) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// All runs of `word`, sorted by `(beg, end)`.
///
/// # Safety
/// `word` must point to `len` readable bytes; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gr_runs_new(
    word: *const u8,
    len: usize,
    out: *mut *mut GrRuns,
) -> GrStatus {
    guard(|| {
        let out = out_ref(out)?;
        *out = ptr::null_mut();
        let w = bytes(word, len)?;
        let items = enumerate_runs(w)
            .into_iter()
            .map(|r| {
                let (exp_num, exp_den) = split(r.exponent)?;
                Ok(GrRun {
                    beg: r.beg as u64,
                    end: r.end as u64,
                    period: r.period as u64,
                    exp_num,
                    exp_den,
                })
            })
            .collect::<Result<_, Failure>>()?;
        *out = Box::into_raw(Box::new(GrRuns { items }));
        Ok(())
    })
}

/// # Safety
/// `set` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gr_runs_len(set: *const GrRuns) -> usize {
    set.as_ref().map_or(0, |s| s.items.len())
}

/// # Safety
/// `set` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gr_runs_get(
    set: *const GrRuns,
    index: usize,
    out: *mut GrRun,
) -> GrStatus {
    guard(|| {
        let set = set
            .as_ref()
            .ok_or_else(|| Failure(GrStatus::NullPointer, "run set is null".into()))?;
        let out = out_ref(out)?;
        *out = *set
            .items
            .get(index)
            .ok_or_else(|| Failure(GrStatus::OutOfRange, "run index out of range".into()))?;
        Ok(())
    })
}

/// # Safety
/// `set` must come from [`gr_runs_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn gr_runs_free(set: *mut GrRuns) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Constrained repeat count against `n(1 + max{∂, Δ})` for `word`.
///
/// # Safety
/// `word` must point to `len` readable bytes; `con` must be valid; `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn gr_bound(
    word: *const u8,
    len: usize,
    con: *const GrConstraint,
    out: *mut GrBound,
) -> GrStatus {
    guard(|| {
        let out = out_ref(out)?;
        let w = bytes(word, len)?;
        let con = constraint_ref(con)?;
        let count = gapped_repeats::enumerate_constrained(w, con)?.len() as u64;
        let (bound_num, bound_den) = split(bound_value(w.len() as u64, &con.stats()))?;
        *out = GrBound {
            n: w.len() as u64,
            count,
            bound_num,
            bound_den,
        };
        Ok(())
    })
}

/// Runs every check on `word`; `failed` receives the number of assertable
/// checks that failed.
///
/// # Safety
/// `word` must point to `len` readable bytes; `con` must be valid; `failed`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn gr_verify(
    word: *const u8,
    len: usize,
    con: *const GrConstraint,
    failed: *mut u32,
) -> GrStatus {
    guard(|| {
        let failed = out_ref(failed)?;
        let w = bytes(word, len)?;
        let reports = check_word(w, constraint_ref(con)?, &CheckId::ALL)?;
        *failed = reports
            .iter()
            .filter(|r| r.check_id.is_assertable() && !r.passed())
            .count() as u32;
        Ok(())
    })
}

/// Writes a generated word into `buf`. `length` is ignored for
/// [`GrGenerator::Power`], which repeats `block` `count` times; `alphabet`
/// and `seed` apply to [`GrGenerator::Random`] only. `written` always receives the needed length, so a
/// call with `cap == 0` sizes the buffer.
///
/// # Safety
/// `block` must point to `block_len` bytes when used; `buf` to `cap`
/// writable bytes; `written` must be writable.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn gr_generate(
    kind: GrGenerator,
    length: usize,
    alphabet: u32,
    seed: u64,
    block: *const u8,
    block_len: usize,
    count: usize,
    buf: *mut u8,
    cap: usize,
    written: *mut usize,
) -> GrStatus {
    guard(|| {
        let written = out_ref(written)?;
        let spec = match kind {
            GrGenerator::Random => GeneratorSpec::random(length, alphabet, seed),
            GrGenerator::Fibonacci => GeneratorSpec::fibonacci(length),
            GrGenerator::ThueMorse => GeneratorSpec::thue_morse(length),
            GrGenerator::Power => GeneratorSpec::power(bytes(block, block_len)?, count),
        };
        let w = generate(&spec)?;
        *written = w.len();
        if w.len() > cap {
            return fail(GrStatus::BufferTooSmall, "buffer too small");
        }
        if !w.is_empty() {
            if buf.is_null() {
                return fail(GrStatus::NullPointer, "buffer is null");
            }
            ptr::copy_nonoverlapping(w.as_ptr(), buf, w.len());
        }
        Ok(())
    })
}
