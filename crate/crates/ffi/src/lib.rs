//! C ABI over `bicomplex-laplace`.
//!
//! Every fallible function returns a [`BlStatus`] and writes its result
//! through an out-pointer. On failure `bl_last_error()` returns a message for
//! the calling thread. Images and signals are opaque handles created by the
//! `*_new_*` functions and released with the matching `*_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bicomplex_laplace::inverse::Warning;
use bicomplex_laplace::{
    catalog_lookup, invert_grid, laplace_point, Bicomplex, BromwichConfig, Complex64, Error,
    IdempotentPair, ImageFunction, InversionPoint, Method, QuadratureConfig, RationalFunction,
    SignalSpec,
};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Singular = 3,
    Domain = 4,
    ConvergenceRegion = 5,
    InvalidImage = 6,
    Numeric = 7,
    Panic = 8,
}

impl From<&Error> for BlStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidArgument(_) | Error::UnknownPair(_) | Error::Parse(_) => {
                BlStatus::InvalidArgument
            }
            Error::Singular(_) => BlStatus::Singular,
            Error::Domain(_) => BlStatus::Domain,
            Error::ConvergenceRegion { .. } => BlStatus::ConvergenceRegion,
            Error::InvalidImage(_) => BlStatus::InvalidImage,
            Error::PoleProximity { .. }
            | Error::Truncation(_)
            | Error::InversionConvergence { .. }
            | Error::NumericFailure(_)
            | Error::InvalidPole { .. } => BlStatus::Numeric,
        }
    }
}

#[repr(C)]
pub enum BlMethod {
    Auto = 0,
    Bromwich = 1,
    Residue = 2,
}

impl From<BlMethod> for Method {
    fn from(m: BlMethod) -> Self {
        match m {
            BlMethod::Auto => Method::Auto,
            BlMethod::Bromwich => Method::Bromwich,
            BlMethod::Residue => Method::Residue,
        }
    }
}

/// `a0 + i1 a1 + i2 a2 + i1i2 a3`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlBicomplex {
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlComplex {
    pub re: f64,
    pub im: f64,
}

/// Warning bits in [`BlInversion::warnings`].
pub const BL_WARN_NON_REAL: u32 = 1;
pub const BL_WARN_AMPLIFIED: u32 = 2;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlInversion {
    pub t: f64,
    pub f: f64,
    pub reality_defect: f64,
    pub refinements: u32,
    pub warnings: u32,
}

/// Bromwich line parameters; obtain defaults from `bl_bromwich_config_default`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlBromwichConfig {
    pub abscissa_offset: f64,
    pub half_height: f64,
    pub step_h: f64,
    pub refine_tol: f64,
    pub max_refinements: u32,
    pub reality_tol: f64,
}

/// Opaque image function.
pub struct BlImage(ImageFunction);

/// Opaque object function.
pub struct BlSignal(SignalSpec);

impl From<BlBicomplex> for Bicomplex {
    fn from(x: BlBicomplex) -> Self {
        Bicomplex::new_unchecked(x.a0, x.a1, x.a2, x.a3)
    }
}

impl From<Bicomplex> for BlBicomplex {
    fn from(x: Bicomplex) -> Self {
        BlBicomplex {
            a0: x.a0,
            a1: x.a1,
            a2: x.a2,
            a3: x.a3,
        }
    }
}

impl From<BlComplex> for Complex64 {
    fn from(z: BlComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

impl From<Complex64> for BlComplex {
    fn from(z: Complex64) -> Self {
        BlComplex { re: z.re, im: z.im }
    }
}

impl From<BromwichConfig> for BlBromwichConfig {
    fn from(c: BromwichConfig) -> Self {
        BlBromwichConfig {
            abscissa_offset: c.abscissa_offset,
            half_height: c.half_height,
            step_h: c.step_h,
            refine_tol: c.refine_tol,
            max_refinements: c.max_refinements as u32,
            reality_tol: c.reality_tol,
        }
    }
}

impl From<BlBromwichConfig> for BromwichConfig {
    fn from(c: BlBromwichConfig) -> Self {
        BromwichConfig {
            abscissa_offset: c.abscissa_offset,
            half_height: c.half_height,
            step_h: c.step_h,
            refine_tol: c.refine_tol,
            max_refinements: c.max_refinements as usize,
            reality_tol: c.reality_tol,
        }
    }
}

impl From<&InversionPoint> for BlInversion {
    fn from(p: &InversionPoint) -> Self {
        let warnings = p.warnings.iter().fold(0, |acc, w| {
            acc | match w {
                Warning::NonRealObject { .. } => BL_WARN_NON_REAL,
                Warning::ExponentialAmplification { .. } => BL_WARN_AMPLIFIED,
            }
        });
        BlInversion {
            t: p.t,
            f: p.f,
            reality_defect: p.reality_defect,
            refinements: p.refinements as u32,
            warnings,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

/// Runs `body`, converting errors and panics into a status plus message.
fn guard(body: impl FnOnce() -> Result<(), (BlStatus, String)>) -> BlStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => BlStatus::Ok,
        Ok(Err((status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            BlStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (BlStatus, String) {
    (BlStatus::from(&e), e.to_string())
}

fn null(name: &str) -> (BlStatus, String) {
    (BlStatus::NullPointer, format!("{name} is null"))
}

unsafe fn out_ref<'a, T>(p: *mut T, name: &str) -> Result<&'a mut T, (BlStatus, String)> {
    p.as_mut().ok_or_else(|| null(name))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, name: &str) -> Result<&'a [T], (BlStatus, String)> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(name));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, (BlStatus, String)> {
    if p.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (BlStatus::InvalidArgument, format!("{name} is not UTF-8")))
}

/// Message for the most recent failure on this thread, or null if none.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn bl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub extern "C" fn bl_bicomplex_mul(x: BlBicomplex, y: BlBicomplex) -> BlBicomplex {
    (Bicomplex::from(x) * Bicomplex::from(y)).into()
}

#[no_mangle]
pub extern "C" fn bl_bicomplex_norm(x: BlBicomplex) -> f64 {
    Bicomplex::from(x).norm()
}

#[no_mangle]
pub extern "C" fn bl_bicomplex_is_singular(x: BlBicomplex) -> bool {
    Bicomplex::from(x).is_singular()
}

/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bl_bicomplex_inverse(x: BlBicomplex, out: *mut BlBicomplex) -> BlStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = Bicomplex::from(x).inverse().map_err(lib_err)?.into();
        Ok(())
    })
}

/// # Safety
/// `xi1` and `xi2` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bl_bicomplex_to_idempotent(
    x: BlBicomplex,
    xi1: *mut BlComplex,
    xi2: *mut BlComplex,
) -> BlStatus {
    guard(|| {
        let (o1, o2) = (out_ref(xi1, "xi1")?, out_ref(xi2, "xi2")?);
        let p = Bicomplex::from(x).to_idempotent();
        *o1 = p.xi1.into();
        *o2 = p.xi2.into();
        Ok(())
    })
}

#[no_mangle]
pub extern "C" fn bl_bicomplex_from_idempotent(xi1: BlComplex, xi2: BlComplex) -> BlBicomplex {
    Bicomplex::from_idempotent(IdempotentPair::new(xi1.into(), xi2.into())).into()
}

#[no_mangle]
pub extern "C" fn bl_bromwich_config_default() -> BlBromwichConfig {
    BromwichConfig::default().into()
}

/// Image of a catalog pair (`"unit_step"`, `"sin"`, `"cos"`, `"damped_cos"`,
/// `"damped_sin"`).
///
/// # Safety
/// `id` must be null or a nul-terminated string; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bl_image_new_catalog(
    id: *const c_char,
    omega: f64,
    a: f64,
    out: *mut *mut BlImage,
) -> BlStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let entry = catalog_lookup(str_arg(id, "id")?, omega, a).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(BlImage(entry.image_function())));
        Ok(())
    })
}

/// Rational image with separate components. Coefficient arrays are in
/// ascending powers of `s`.
///
/// # Safety
/// Each array must be null (only when its length is 0) or valid for its
/// length; `out` must be null or valid for writes.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn bl_image_new_rational(
    num1: *const BlComplex,
    num1_len: usize,
    den1: *const BlComplex,
    den1_len: usize,
    num2: *const BlComplex,
    num2_len: usize,
    den2: *const BlComplex,
    den2_len: usize,
    abscissa_k: f64,
    out: *mut *mut BlImage,
) -> BlStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let poly = |p: &[BlComplex]| p.iter().map(|&z| Complex64::from(z)).collect::<Vec<_>>();
        let r1 = RationalFunction::new(
            poly(slice(num1, num1_len, "num1")?),
            poly(slice(den1, den1_len, "den1")?),
        )
        .map_err(lib_err)?;
        let r2 = RationalFunction::new(
            poly(slice(num2, num2_len, "num2")?),
            poly(slice(den2, den2_len, "den2")?),
        )
        .map_err(lib_err)?;
        if !abscissa_k.is_finite() {
            return Err((
                BlStatus::InvalidArgument,
                "abscissa_k must be finite".into(),
            ));
        }
        *out = Box::into_raw(Box::new(BlImage(ImageFunction::rational_pair(
            r1, r2, abscissa_k,
        ))));
        Ok(())
    })
}

/// # Safety
/// `image` must be null or a handle from `bl_image_new_*` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bl_image_free(image: *mut BlImage) {
    if !image.is_null() {
        drop(Box::from_raw(image));
    }
}

/// Inverts `image` at `len` strictly increasing times `t > 0`.
///
/// `results` and `statuses` receive one entry per time. The call returns
/// `BL_STATUS_OK` when every point succeeded; otherwise the first per-point
/// failure is returned and failed entries have `f = NaN`. Grid validation
/// errors fill nothing.
///
/// # Safety
/// `image` must be a live handle; `times`, `results` and `statuses` must be
/// valid for `len` elements (`statuses` may be null); `config` may be null
/// for defaults.
#[no_mangle]
pub unsafe extern "C" fn bl_invert(
    image: *const BlImage,
    times: *const f64,
    len: usize,
    method: BlMethod,
    config: *const BlBromwichConfig,
    results: *mut BlInversion,
    statuses: *mut BlStatus,
) -> BlStatus {
    guard(|| {
        let image = image.as_ref().ok_or_else(|| null("image"))?;
        let times = slice(times, len, "times")?;
        if len > 0 && results.is_null() {
            return Err(null("results"));
        }
        let cfg = config
            .as_ref()
            .map_or_else(BromwichConfig::default, |c| (*c).into());
        let points = invert_grid(&image.0, times, &cfg, method.into()).map_err(lib_err)?;
        let mut first_failure = None;
        for (i, (t, p)) in times.iter().zip(&points).enumerate() {
            let (row, status) = match p {
                Ok(p) => (BlInversion::from(p), BlStatus::Ok),
                Err(e) => {
                    if first_failure.is_none() {
                        first_failure = Some((BlStatus::from(e), format!("t = {t}: {e}")));
                    }
                    let nan = BlInversion {
                        t: *t,
                        f: f64::NAN,
                        reality_defect: f64::NAN,
                        refinements: 0,
                        warnings: 0,
                    };
                    (nan, BlStatus::from(e))
                }
            };
            *results.add(i) = row;
            if !statuses.is_null() {
                *statuses.add(i) = status;
            }
        }
        first_failure.map_or(Ok(()), Err)
    })
}

/// Object function of a catalog pair.
///
/// # Safety
/// As for `bl_image_new_catalog`.
#[no_mangle]
pub unsafe extern "C" fn bl_signal_new_catalog(
    id: *const c_char,
    omega: f64,
    a: f64,
    out: *mut *mut BlSignal,
) -> BlStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let entry = catalog_lookup(str_arg(id, "id")?, omega, a).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(BlSignal(entry.object())));
        Ok(())
    })
}

/// Piecewise-linear signal through `(t[i], f[i])`, zero after the last
/// sample, with declared exponential order `order_k`.
///
/// # Safety
/// `t` and `f` must be valid for `len` elements; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bl_signal_new_samples(
    t: *const f64,
    f: *const f64,
    len: usize,
    order_k: f64,
    out: *mut *mut BlSignal,
) -> BlStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let ts = slice(t, len, "t")?;
        let fs = slice(f, len, "f")?;
        let samples = ts.iter().copied().zip(fs.iter().copied()).collect();
        let signal = SignalSpec::from_samples("samples", order_k, samples).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(BlSignal(signal)));
        Ok(())
    })
}

/// # Safety
/// `signal` must be null or a handle from `bl_signal_new_*` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bl_signal_free(signal: *mut BlSignal) {
    if !signal.is_null() {
        drop(Box::from_raw(signal));
    }
}

/// Forward transform of `signal` at `xi` with default quadrature settings.
///
/// # Safety
/// `signal` must be a live handle; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bl_laplace(
    signal: *const BlSignal,
    xi: BlBicomplex,
    out: *mut BlBicomplex,
) -> BlStatus {
    guard(|| {
        let signal = signal.as_ref().ok_or_else(|| null("signal"))?;
        let out = out_ref(out, "out")?;
        *out = laplace_point(&signal.0, &xi.into(), &QuadratureConfig::default())
            .map_err(lib_err)?
            .into();
        Ok(())
    })
}
