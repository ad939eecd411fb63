//! Dual-number line geometry.
//!
//! A dual unit vector encodes a directed line in space; a differentiable
//! curve of dual unit vectors encodes a ruled surface. This crate builds the
//! full chain: dual arithmetic, a small expression language whose evaluation
//! carries analytic derivatives, the dual Frenet frame of a spec'd curve, the
//! three ruled surfaces swept by the frame's tangent / principal normal /
//! binormal lines, Gaussian and mean curvature by two independent pipelines
//! (closed forms and classical fundamental forms), and classification of each
//! surface as developable, minimal, or Weingarten.
//!
//! The `rulekit` binary exposes the same machinery as `frenet`, `surface`,
//! `classify`, and `verify` subcommands; see the repository README.

// Threshold guards are written `!(x > eps)` so that NaN fails the guard.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod classify;
pub mod curve;
pub mod dual;
pub mod export;
pub mod expr;
pub mod frenet;
pub mod jet;
pub mod real;
pub mod ruled;

pub use curve::{DualCurveSpec, ValidationReport};
pub use dual::{Dual, DualScalar, DualVec, DualVec3, LineR3, Vec3, Vec3f};
pub use frenet::{DualFrenetFrame, FrameJet};
pub use jet::Jet;
pub use ruled::IndicatrixKind;

/// Numeric thresholds used across the crate. Defaults are the contract
/// values exercised by the test suite; all are overridable.
#[derive(Clone, Copy, Debug)]
pub struct Tolerances {
    /// Divisor threshold below which a dual number counts as pure-dual.
    pub dual_div_eps: f64,
    /// Real-norm threshold below which a dual vector counts as pure-dual.
    pub pure_dual_eps: f64,
    /// Dual-unit-sphere membership tolerance for spec validation.
    pub on_sphere_eps: f64,
    /// Smallest admissible real curvature; below it the frame is undefined.
    pub kappa_min: f64,
    /// Surface points with `||phi_s x phi_v||` below this are singular.
    pub singular_eps: f64,
    /// Area-element floor for the fundamental-forms curvature formulas.
    pub w2_eps: f64,
    /// Points with `||Y2||` below this are excluded from closed-form vs
    /// oracle comparisons (curvature scales like `||Y2||^-4` there).
    pub y2_compare_min: f64,
    /// Developability threshold on `max |K|`.
    pub tol_k: f64,
    /// Minimality threshold on `max |H|` (half-trace convention).
    pub tol_h: f64,
    /// Weingarten threshold on the normalized curvature Jacobian.
    pub tol_w: f64,
    /// Side-condition floor separating "nonzero" from numerical dust.
    pub nonzero_min: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            dual_div_eps: 1e-12,
            pure_dual_eps: 1e-12,
            on_sphere_eps: 1e-8,
            kappa_min: 1e-8,
            singular_eps: 1e-10,
            w2_eps: 1e-12,
            y2_compare_min: 1e-3,
            tol_k: 1e-8,
            tol_h: 1e-8,
            tol_w: 1e-6,
            nonzero_min: 1e-4,
        }
    }
}
