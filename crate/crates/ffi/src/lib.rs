//! C ABI over the rulekit core: opaque spec handles, plain-old-data sample
//! structs, and status codes. Strings cross the boundary as NUL-terminated
//! UTF-8; every string returned by this library must be released with
//! [`rk_string_free`]. All functions are safe to call from multiple threads
//! on distinct handles; a handle itself is immutable after load.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use rulekit::classify::{classify_surface, GridConfig};
use rulekit::frenet::frame_jet_at;
use rulekit::ruled::formulas::BracketInterpretation;
use rulekit::ruled::{
    curvatures_oracle, fundamental_forms, gram_schmidt, surface_jet, IndicatrixKind,
};
use rulekit::{DualCurveSpec, Tolerances};

/// Opaque curve-spec handle.
pub struct RkSpec {
    spec: DualCurveSpec,
    tol: Tolerances,
}

/// Status code returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum RkStatus {
    Ok = 0,
    NullArgument = 1,
    Utf8 = 2,
    Io = 3,
    Parse = 4,
    Validation = 5,
    Numerical = 6,
    Singular = 7,
    Internal = 8,
}

/// Which frame line directs the surface.
#[repr(C)]
#[derive(Clone, Copy)]
pub enum RkKind {
    Tangent = 0,
    PrincipalNormal = 1,
    Binormal = 2,
}

impl From<RkKind> for IndicatrixKind {
    fn from(k: RkKind) -> IndicatrixKind {
        match k {
            RkKind::Tangent => IndicatrixKind::Tangent,
            RkKind::PrincipalNormal => IndicatrixKind::PrincipalNormal,
            RkKind::Binormal => IndicatrixKind::Binormal,
        }
    }
}

/// Dual Frenet data at one parameter value. Vector fields are the real
/// direction parts; `*_moment` are the dual (moment) parts.
#[repr(C)]
#[derive(Clone, Copy)]
pub struct RkFrenetSample {
    pub s: f64,
    pub speed: f64,
    pub speed_dual: f64,
    pub kappa: f64,
    pub kappa_dual: f64,
    pub tau: f64,
    pub tau_dual: f64,
    pub tangent: [f64; 3],
    pub tangent_moment: [f64; 3],
    pub normal: [f64; 3],
    pub normal_moment: [f64; 3],
    pub binormal: [f64; 3],
    pub binormal_moment: [f64; 3],
}

/// Curvature of one surface point from both pipelines.
#[repr(C)]
#[derive(Clone, Copy)]
pub struct RkCurvatureSample {
    pub s: f64,
    pub v: f64,
    pub k_oracle: f64,
    pub h_half: f64,
    pub h_trace: f64,
    pub k_closed_form: f64,
    pub h_closed_form: f64,
    pub y2_norm: f64,
    pub position: [f64; 3],
}

fn catch<F: FnOnce() -> RkStatus>(f: F) -> RkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => RkStatus::Internal,
    }
}

unsafe fn spec_ref<'a>(handle: *const RkSpec) -> Option<&'a RkSpec> {
    handle.as_ref()
}

fn load_spec(spec: DualCurveSpec, out: *mut *mut RkSpec) -> RkStatus {
    let tol = Tolerances::default();
    if !spec.validate(100, &tol).pass {
        return RkStatus::Validation;
    }
    let boxed = Box::new(RkSpec { spec, tol });
    unsafe {
        *out = Box::into_raw(boxed);
    }
    RkStatus::Ok
}

/// Loads a curve spec from a file. On success writes a handle to `out`;
/// release it with `rk_spec_free`.
///
/// # Safety
/// `path` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rk_spec_load(path: *const c_char, out: *mut *mut RkSpec) -> RkStatus {
    if path.is_null() || out.is_null() {
        return RkStatus::NullArgument;
    }
    catch(|| {
        let path = match CStr::from_ptr(path).to_str() {
            Ok(p) => p,
            Err(_) => return RkStatus::Utf8,
        };
        match DualCurveSpec::from_path(Path::new(path)) {
            Ok(spec) => load_spec(spec, out),
            Err(rulekit::curve::SpecError::Io(_)) => RkStatus::Io,
            Err(_) => RkStatus::Parse,
        }
    })
}

/// Parses a curve spec from text (same format as the spec files).
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rk_spec_from_str(text: *const c_char, out: *mut *mut RkSpec) -> RkStatus {
    if text.is_null() || out.is_null() {
        return RkStatus::NullArgument;
    }
    catch(|| {
        let text = match CStr::from_ptr(text).to_str() {
            Ok(t) => t,
            Err(_) => return RkStatus::Utf8,
        };
        match DualCurveSpec::from_str(text) {
            Ok(spec) => load_spec(spec, out),
            Err(_) => RkStatus::Parse,
        }
    })
}

/// Releases a spec handle. A null handle is a no-op.
///
/// # Safety
/// `handle` must be null or a pointer from `rk_spec_load`/`rk_spec_from_str`
/// that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn rk_spec_free(handle: *mut RkSpec) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Writes the parameter domain `[s0, s1]` of the spec.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rk_spec_domain(
    handle: *const RkSpec,
    s0: *mut f64,
    s1: *mut f64,
) -> RkStatus {
    let (Some(h), false, false) = (spec_ref(handle), s0.is_null(), s1.is_null()) else {
        return RkStatus::NullArgument;
    };
    *s0 = h.spec.domain.0;
    *s1 = h.spec.domain.1;
    RkStatus::Ok
}

/// Evaluates the dual Frenet frame at parameter `s`.
///
/// # Safety
/// `handle` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn rk_frenet_eval(
    handle: *const RkSpec,
    s: f64,
    out: *mut RkFrenetSample,
) -> RkStatus {
    let (Some(h), false) = (spec_ref(handle), out.is_null()) else {
        return RkStatus::NullArgument;
    };
    catch(|| {
        let frame = match frame_jet_at(&h.spec, s, &h.tol) {
            Ok(fj) => fj.frame(),
            Err(_) => return RkStatus::Numerical,
        };
        let v3 = |v: rulekit::Vec3f| [v.x, v.y, v.z];
        *out = RkFrenetSample {
            s,
            speed: frame.speed.real,
            speed_dual: frame.speed.dual,
            kappa: frame.kappa.real,
            kappa_dual: frame.kappa.dual,
            tau: frame.tau.real,
            tau_dual: frame.tau.dual,
            tangent: v3(frame.t.real),
            tangent_moment: v3(frame.t.dual),
            normal: v3(frame.n.real),
            normal_moment: v3(frame.n.dual),
            binormal: v3(frame.b.real),
            binormal_moment: v3(frame.b.dual),
        };
        RkStatus::Ok
    })
}

/// Evaluates Gaussian and mean curvature of the `kind` surface at `(s, v)`
/// by both pipelines.
///
/// # Safety
/// `handle` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn rk_curvature_eval(
    handle: *const RkSpec,
    kind: RkKind,
    s: f64,
    v: f64,
    out: *mut RkCurvatureSample,
) -> RkStatus {
    let (Some(h), false) = (spec_ref(handle), out.is_null()) else {
        return RkStatus::NullArgument;
    };
    catch(|| {
        let kind = IndicatrixKind::from(kind);
        let fj = match frame_jet_at(&h.spec, s, &h.tol) {
            Ok(fj) => fj,
            Err(_) => return RkStatus::Numerical,
        };
        let sj = match surface_jet(&fj, kind, v, &h.tol) {
            Ok(sj) => sj,
            Err(_) => return RkStatus::Singular,
        };
        let oc = match curvatures_oracle(&fundamental_forms(&sj), &h.tol) {
            Ok(oc) => oc,
            Err(_) => return RkStatus::Singular,
        };
        let gs = match gram_schmidt(&sj, &h.tol) {
            Ok(gs) => gs,
            Err(_) => return RkStatus::Singular,
        };
        let interp = BracketInterpretation::CompanionBase;
        let k_closed = rulekit::ruled::closed_form_k(&fj, kind, v, interp, &h.tol);
        let h_closed = rulekit::ruled::closed_form_h(&fj, kind, v, interp, &h.tol);
        let (Ok(kc), Ok(hc)) = (k_closed, h_closed) else {
            return RkStatus::Singular;
        };
        *out = RkCurvatureSample {
            s,
            v,
            k_oracle: oc.k,
            h_half: oc.h_half,
            h_trace: oc.h_trace,
            k_closed_form: kc,
            h_closed_form: hc.value,
            y2_norm: gs.y2_norm,
            position: [sj.position.x, sj.position.y, sj.position.z],
        };
        RkStatus::Ok
    })
}

/// Classifies the `kind` surface on an `s_count x v_count` grid over
/// `[v_min, v_max]` and returns the report as a JSON string in `out_json`.
/// Release the string with `rk_string_free`.
///
/// # Safety
/// `handle` and `out_json` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn rk_classify_json(
    handle: *const RkSpec,
    kind: RkKind,
    s_count: usize,
    v_min: f64,
    v_max: f64,
    v_count: usize,
    out_json: *mut *mut c_char,
) -> RkStatus {
    let (Some(h), false) = (spec_ref(handle), out_json.is_null()) else {
        return RkStatus::NullArgument;
    };
    catch(|| {
        if s_count < 5 || v_count < 5 || v_min >= v_max || v_min.is_nan() || v_max.is_nan() {
            return RkStatus::Validation;
        }
        let grid = GridConfig {
            s_count,
            v_min,
            v_max,
            v_count,
        };
        let report = match classify_surface(
            &h.spec,
            IndicatrixKind::from(kind),
            &grid,
            BracketInterpretation::CompanionBase,
            &h.tol,
        ) {
            Ok(r) => r,
            Err(_) => return RkStatus::Numerical,
        };
        let text = match serde_json::to_string_pretty(&report) {
            Ok(t) => t,
            Err(_) => return RkStatus::Internal,
        };
        match CString::new(text) {
            Ok(cs) => {
                *out_json = cs.into_raw();
                RkStatus::Ok
            }
            Err(_) => RkStatus::Internal,
        }
    })
}

/// Releases a string returned by this library. A null pointer is a no-op.
///
/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Static description of a status code. Never needs freeing.
#[no_mangle]
pub extern "C" fn rk_status_message(status: RkStatus) -> *const c_char {
    let text: &'static [u8] = match status {
        RkStatus::Ok => b"ok\0",
        RkStatus::NullArgument => b"null argument\0",
        RkStatus::Utf8 => b"invalid utf-8\0",
        RkStatus::Io => b"i/o error\0",
        RkStatus::Parse => b"spec parse error\0",
        RkStatus::Validation => b"spec validation failed\0",
        RkStatus::Numerical => b"numerical failure (frame undefined)\0",
        RkStatus::Singular => b"singular surface point\0",
        RkStatus::Internal => b"internal error\0",
    };
    text.as_ptr() as *const c_char
}
