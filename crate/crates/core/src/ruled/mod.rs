//! Ruled surfaces swept by the dual Frenet frame's lines.
//!
//! Each dual frame vector traces a curve of dual unit vectors, i.e. a moving
//! line; the surface it sweeps is `phi(s, v) = x cross x* + v x`, with the
//! canonical base point `x cross x*` (the point of each line nearest the
//! origin). Curvature comes out of two fully independent pipelines:
//!
//! * classical fundamental forms of the parametrized map (this file), and
//! * closed-form expressions in the frame invariants ([`formulas`]).
//!
//! Both are exercised against each other point by point in the tests and in
//! the `verify` workflow.

pub mod formulas;

pub use formulas::{
    canonical_brackets, closed_form_h, closed_form_k, distribution_parameter, BracketInterpretation,
    BracketSet, ClosedFormH,
};

use thiserror::Error;

use crate::dual::{DualVec, Vec3, Vec3f};
use crate::frenet::FrameJet;
use crate::jet::Jet;
use crate::real::Real;
use crate::Tolerances;

/// Which frame line sweeps the surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum IndicatrixKind {
    Tangent,
    PrincipalNormal,
    Binormal,
}

impl IndicatrixKind {
    pub const ALL: [IndicatrixKind; 3] = [
        IndicatrixKind::Tangent,
        IndicatrixKind::PrincipalNormal,
        IndicatrixKind::Binormal,
    ];

    pub fn short(self) -> &'static str {
        match self {
            IndicatrixKind::Tangent => "t",
            IndicatrixKind::PrincipalNormal => "n",
            IndicatrixKind::Binormal => "b",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            IndicatrixKind::Tangent => "tangent",
            IndicatrixKind::PrincipalNormal => "principal_normal",
            IndicatrixKind::Binormal => "binormal",
        }
    }
}

#[derive(Debug, Error)]
pub enum SurfaceError {
    #[error("singular surface point at (s, v) = ({s}, {v}): |phi_s x phi_v| = {magnitude:.3e}")]
    SingularPoint { s: f64, v: f64, magnitude: f64 },
    #[error("singular denominator in {context} ({value:.3e})")]
    SingularDenominator { context: &'static str, value: f64 },
}

/// The frame vector (with derivatives) that directs the surface of `kind`.
pub fn director(fj: &FrameJet, kind: IndicatrixKind) -> DualVec<Jet> {
    match kind {
        IndicatrixKind::Tangent => fj.t,
        IndicatrixKind::PrincipalNormal => fj.n,
        IndicatrixKind::Binormal => fj.b,
    }
}

/// Surface position only; total, defined even where the normal is not.
pub fn ruling_point(fj: &FrameJet, kind: IndicatrixKind, v: f64) -> Vec3f {
    let x = director(fj, kind);
    let base = x.real.cross(x.dual);
    (base + x.real.scale(v)).value()
}

/// Position and partials of the surface map at one `(s, v)`, plus the jet
/// payload needed by the shape-operator pipeline.
#[derive(Clone, Debug)]
pub struct SurfaceJet {
    pub kind: IndicatrixKind,
    pub s: f64,
    pub v: f64,
    pub position: Vec3f,
    pub phi_s: Vec3f,
    pub phi_v: Vec3f,
    pub phi_ss: Vec3f,
    pub phi_sv: Vec3f,
    /// Identically zero: the map is linear in `v`.
    pub phi_vv: Vec3f,
    /// `(phi_s x phi_v) / ||phi_s x phi_v||`.
    pub unit_normal: Vec3f,
    pos_jet: Vec3<Jet>,
    dir_jet: Vec3<Jet>,
}

/// Evaluates the surface map and its partials at `(s, v)`.
pub fn surface_jet(
    fj: &FrameJet,
    kind: IndicatrixKind,
    v: f64,
    tol: &Tolerances,
) -> Result<SurfaceJet, SurfaceError> {
    let x = director(fj, kind);
    let dir_jet = x.real;
    let base = x.real.cross(x.dual);
    let pos_jet = base + dir_jet.scale(v);

    let phi_s_jet = pos_jet.map(|j| j.derivative());
    let phi_ss_jet = phi_s_jet.map(|j| j.derivative());

    let position = pos_jet.value();
    let phi_s = phi_s_jet.value();
    let phi_v = dir_jet.value();
    let phi_ss = phi_ss_jet.value();
    let phi_sv = dir_jet.map(|j| j.derivative()).value();

    let cross = phi_s.cross(phi_v);
    let magnitude = cross.norm_f();
    if !(magnitude > tol.singular_eps) {
        return Err(SurfaceError::SingularPoint {
            s: fj.s,
            v,
            magnitude,
        });
    }

    Ok(SurfaceJet {
        kind,
        s: fj.s,
        v,
        position,
        phi_s,
        phi_v,
        phi_ss,
        phi_sv,
        phi_vv: Vec3f::zero(),
        unit_normal: cross.scale(1.0 / magnitude),
        pos_jet,
        dir_jet,
    })
}

/// First and second fundamental form coefficients.
#[derive(Clone, Copy, Debug)]
pub struct FundamentalForms {
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub l: f64,
    pub m: f64,
    pub nf: f64,
    /// `EG - F^2`, the squared area element.
    pub w2: f64,
}

pub fn fundamental_forms(sj: &SurfaceJet) -> FundamentalForms {
    let e = sj.phi_s.dot(sj.phi_s);
    let f = sj.phi_s.dot(sj.phi_v);
    let g = sj.phi_v.dot(sj.phi_v);
    let l = sj.phi_ss.dot(sj.unit_normal);
    let m = sj.phi_sv.dot(sj.unit_normal);
    let nf = sj.phi_vv.dot(sj.unit_normal);
    FundamentalForms {
        e,
        f,
        g,
        l,
        m,
        nf,
        w2: e * g - f * f,
    }
}

/// Gaussian and mean curvature from the fundamental forms.
#[derive(Clone, Copy, Debug)]
pub struct OracleCurvatures {
    pub k: f64,
    /// Half-trace (common) mean curvature convention.
    pub h_half: f64,
    /// Full-trace convention, `2 * h_half`.
    pub h_trace: f64,
}

pub fn curvatures_oracle(
    ff: &FundamentalForms,
    tol: &Tolerances,
) -> Result<OracleCurvatures, SurfaceError> {
    if !(ff.w2 > tol.w2_eps) {
        return Err(SurfaceError::SingularDenominator {
            context: "EG - F^2",
            value: ff.w2,
        });
    }
    let k = (ff.l * ff.nf - ff.m * ff.m) / ff.w2;
    let h_half = (ff.e * ff.nf + ff.g * ff.l - 2.0 * ff.f * ff.m) / (2.0 * ff.w2);
    Ok(OracleCurvatures {
        k,
        h_half,
        h_trace: 2.0 * h_half,
    })
}

/// Orthonormal tangent basis from the ruling direction and the surface
/// velocity, plus the jet payload for the shape operator.
#[derive(Clone, Debug)]
pub struct GramSchmidtFrame {
    /// The ruling direction (already unit).
    pub e1: Vec3f,
    /// Normalized component of `phi_s` orthogonal to the ruling.
    pub e2: Vec3f,
    /// `e1 x e2`. Opposite in sign to [`SurfaceJet::unit_normal`].
    pub surface_normal: Vec3f,
    pub y2_norm: f64,
    nj: Vec3<Jet>,
}

pub fn gram_schmidt(sj: &SurfaceJet, tol: &Tolerances) -> Result<GramSchmidtFrame, SurfaceError> {
    let e1j = sj.dir_jet;
    let phi_s_jet = sj.pos_jet.map(|j| j.derivative());
    let fj = phi_s_jet.dot(e1j);
    let y2 = phi_s_jet - e1j * fj;
    let y2sq = y2.dot(y2);
    let y2_norm = y2sq.value().max(0.0).sqrt();
    if !(y2_norm > tol.singular_eps) {
        return Err(SurfaceError::SingularPoint {
            s: sj.s,
            v: sj.v,
            magnitude: y2_norm,
        });
    }
    let y2n_jet = Real::sqrt(y2sq);
    let e2j = y2.map(|c| c / y2n_jet);
    let nj = e1j.cross(e2j);
    Ok(GramSchmidtFrame {
        e1: e1j.value(),
        e2: e2j.value(),
        surface_normal: nj.value(),
        y2_norm,
        nj,
    })
}

/// Shape operator in the `{e1, e2}` basis, with the orientation
/// `n = e1 x e2`. Built from two independent derivative routes: the normal
/// field's rate along the ruling (a `v`-jet) and along the directrix (the
/// stored `s`-jets), combined into true directional derivatives.
#[derive(Clone, Copy, Debug)]
pub struct ShapeOperator2x2 {
    /// `<S(e1), e1>`; zero up to roundoff, the ruling is asymptotic.
    pub s11: f64,
    /// `<S(e2), e1>`.
    pub s12: f64,
    /// `<S(e1), e2>`; agrees with `s12` by self-adjointness.
    pub s21: f64,
    /// `<S(e2), e2>`.
    pub s22: f64,
}

impl ShapeOperator2x2 {
    pub fn det(&self) -> f64 {
        self.s11 * self.s22 - self.s12 * self.s21
    }

    pub fn trace(&self) -> f64 {
        self.s11 + self.s22
    }
}

pub fn shape_operator(
    sj: &SurfaceJet,
    gs: &GramSchmidtFrame,
    _tol: &Tolerances,
) -> Result<ShapeOperator2x2, SurfaceError> {
    // Rate of the normal along the ruling: rebuild the normal as a function
    // of v at fixed s and differentiate the jet.
    let c_prime = sj.phi_s - sj.phi_sv.scale(sj.v);
    let vj = Jet::variable(sj.v);
    let phi_s_of_v = c_prime.map(Jet::constant) + sj.phi_sv.map(Jet::constant) * vj;
    let e1c = sj.phi_v.map(Jet::constant);
    let f_of_v = phi_s_of_v.dot(e1c);
    let y2_of_v = phi_s_of_v - e1c * f_of_v;
    let y2n_of_v = Real::sqrt(y2_of_v.dot(y2_of_v));
    let e2_of_v = y2_of_v.map(|c| c / y2n_of_v);
    let n_of_v = e1c.cross(e2_of_v);
    let dn_dv = n_of_v.map(|j| j.derivative()).value();

    let s11 = dn_dv.dot(gs.e1);
    let s21 = dn_dv.dot(gs.e2);

    // Rate along the directrix, converted to the derivative along e2:
    // the tangent vector e2 is (phi_s - F phi_v) / ||Y2||.
    let dn_ds = gs.nj.map(|j| j.derivative()).value();
    let f0 = sj.phi_s.dot(sj.phi_v);
    let s_e2 = (dn_ds - dn_dv.scale(f0)).scale(1.0 / gs.y2_norm);
    let s12 = s_e2.dot(gs.e1);
    let s22 = s_e2.dot(gs.e2);

    Ok(ShapeOperator2x2 { s11, s12, s21, s22 })
}
