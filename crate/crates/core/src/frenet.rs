//! Dual Frenet apparatus of a dual spherical curve.
//!
//! The frame is computed once with jet-valued coefficients, so every
//! parameter derivative downstream (frame derivatives, curvature/torsion
//! rates, surface partials) is analytic rather than finite-difference.
//! Derivatives with respect to the dual arc length are taken as
//! `d/ds_hat = (1/speed) d/ds` with a dual-number division; the parameter
//! itself is never assumed to be arc length.

use thiserror::Error;

use crate::curve::DualCurveSpec;
use crate::dual::{Dual, DualError, DualScalar, DualVec, DualVec3};
use crate::expr::EvalError;
use crate::jet::Jet;
use crate::Tolerances;

#[derive(Debug, Error)]
pub enum FrenetError {
    #[error("expression evaluation failed at s = {s}: {err}")]
    Eval { s: f64, err: EvalError },
    #[error("pure-dual speed at s = {s} (|d alpha/ds| = {abs_real:.3e}); curve is not regular there")]
    PureDualSpeed { s: f64, abs_real: f64 },
    #[error("pure-dual curvature at s = {s} (kappa = {kappa:.3e} below threshold {min:.3e})")]
    PureDualCurvature { s: f64, kappa: f64, min: f64 },
}

impl FrenetError {
    fn from_dual(err: DualError, s: f64, kappa_min: f64) -> FrenetError {
        match err {
            DualError::PureDualVector { abs_real, .. }
            | DualError::DivisionByPureDual { abs_real, .. } => FrenetError::PureDualCurvature {
                s,
                kappa: abs_real,
                min: kappa_min,
            },
            other => FrenetError::PureDualCurvature {
                s,
                kappa: f64::NAN,
                min: kappa_min,
            }
            .tap_unreachable(other),
        }
    }

    fn tap_unreachable(self, _err: DualError) -> FrenetError {
        self
    }
}

/// Dual Frenet frame at one parameter value (order-zero data).
#[derive(Clone, Copy, Debug)]
pub struct DualFrenetFrame {
    pub s: f64,
    /// Dual speed `||d alpha_hat / ds||`, i.e. `d s_hat / ds`.
    pub speed: DualScalar,
    pub t: DualVec3,
    pub n: DualVec3,
    pub b: DualVec3,
    pub kappa: DualScalar,
    pub tau: DualScalar,
    /// Disagreement between the two torsion projections
    /// `<dN/ds_hat, B>` and `-<dB/ds_hat, N>`.
    pub tau_cross_residual: f64,
    /// Real curvature is barely above the pure-dual threshold.
    pub near_inflection: bool,
}

/// Frame with jet-valued coefficients: the frame plus its parameter
/// derivatives, available analytically via [`Jet::derivative`].
#[derive(Clone, Debug)]
pub struct FrameJet {
    pub s: f64,
    pub speed: Dual<Jet>,
    pub t: DualVec<Jet>,
    pub n: DualVec<Jet>,
    pub b: DualVec<Jet>,
    pub kappa: Dual<Jet>,
    pub tau: Dual<Jet>,
    pub tau_cross_residual: f64,
    pub near_inflection: bool,
}

fn deriv_vec(v: &DualVec<Jet>) -> DualVec<Jet> {
    DualVec {
        real: v.real.map(|j| j.derivative()),
        dual: v.dual.map(|j| j.derivative()),
    }
}

fn deriv_dual(d: &Dual<Jet>) -> Dual<Jet> {
    Dual {
        real: d.real.derivative(),
        dual: d.dual.derivative(),
    }
}

impl FrameJet {
    /// Derivative with respect to the dual arc length:
    /// `(1/speed) d/ds`, a dual division. The speed's real part is
    /// guaranteed positive at construction.
    pub fn d_dshat(&self, v: &DualVec<Jet>) -> DualVec<Jet> {
        deriv_vec(v)
            .try_div_eps(self.speed, 0.0)
            .expect("speed real part is positive by construction")
    }

    /// Order-zero slice of the frame.
    pub fn frame(&self) -> DualFrenetFrame {
        DualFrenetFrame {
            s: self.s,
            speed: Dual::new(self.speed.real.value(), self.speed.dual.value()),
            t: self.t.value(),
            n: self.n.value(),
            b: self.b.value(),
            kappa: Dual::new(self.kappa.real.value(), self.kappa.dual.value()),
            tau: Dual::new(self.tau.real.value(), self.tau.dual.value()),
            tau_cross_residual: self.tau_cross_residual,
            near_inflection: self.near_inflection,
        }
    }

    pub fn t_prime(&self) -> DualVec3 {
        deriv_vec(&self.t).value()
    }

    pub fn t_second(&self) -> DualVec3 {
        deriv_vec(&deriv_vec(&self.t)).value()
    }

    pub fn n_prime(&self) -> DualVec3 {
        deriv_vec(&self.n).value()
    }

    pub fn n_second(&self) -> DualVec3 {
        deriv_vec(&deriv_vec(&self.n)).value()
    }

    pub fn b_prime(&self) -> DualVec3 {
        deriv_vec(&self.b).value()
    }

    pub fn b_second(&self) -> DualVec3 {
        deriv_vec(&deriv_vec(&self.b)).value()
    }

    pub fn kappa_prime(&self) -> DualScalar {
        let d = deriv_dual(&self.kappa);
        Dual::new(d.real.value(), d.dual.value())
    }

    pub fn tau_prime(&self) -> DualScalar {
        let d = deriv_dual(&self.tau);
        Dual::new(d.real.value(), d.dual.value())
    }

    pub fn speed_prime(&self) -> DualScalar {
        let d = deriv_dual(&self.speed);
        Dual::new(d.real.value(), d.dual.value())
    }

    /// Real part of the speed, `||d alpha / ds||`, as a jet.
    pub fn rho(&self) -> Jet {
        self.speed.real
    }

    /// Ratio of dual to real speed. This is the rate of moment advance per
    /// unit of real turning of the directrix and vanishes exactly when the
    /// parameter can be rescaled to dual unit speed.
    pub fn delta(&self) -> Jet {
        self.speed.dual / self.speed.real
    }

    /// Curvature re-expressed for a curve traced at unit real speed:
    /// `kappa_hat * speed / ||speed_real||`. The closed-form curvature
    /// expressions assume that normalization.
    pub fn kappa_unit_speed(&self) -> Dual<Jet> {
        Dual {
            real: self.kappa.real,
            dual: self.kappa.dual + self.kappa.real * self.delta(),
        }
    }

    /// Torsion under the same unit-real-speed normalization.
    pub fn tau_unit_speed(&self) -> Dual<Jet> {
        Dual {
            real: self.tau.real,
            dual: self.tau.dual + self.tau.real * self.delta(),
        }
    }

    /// Derivative of a jet per unit real arc length, `(1/rho) d/ds`.
    pub fn d_arclen(&self, f: Jet) -> Jet {
        f.derivative() / self.speed.real
    }
}

/// Computes the frame with full jet payload at parameter `s`.
pub fn frame_jet_at(
    spec: &DualCurveSpec,
    s: f64,
    tol: &Tolerances,
) -> Result<FrameJet, FrenetError> {
    let alpha = spec
        .eval_jets(s)
        .map_err(|err| FrenetError::Eval { s, err })?;
    let alpha_prime = deriv_vec(&alpha);

    let speed = alpha_prime
        .try_norm_eps(tol.pure_dual_eps)
        .map_err(|_| FrenetError::PureDualSpeed {
            s,
            abs_real: alpha_prime.real.value().norm_f(),
        })?;

    let t = alpha_prime
        .try_div_eps(speed, tol.pure_dual_eps)
        .expect("speed already checked");

    let dt_dshat = deriv_vec(&t)
        .try_div_eps(speed, tol.pure_dual_eps)
        .expect("speed already checked");

    let kappa = dt_dshat
        .try_norm_eps(tol.kappa_min)
        .map_err(|err| FrenetError::from_dual(err, s, tol.kappa_min))?;
    if kappa.real.value() <= tol.kappa_min {
        return Err(FrenetError::PureDualCurvature {
            s,
            kappa: kappa.real.value(),
            min: tol.kappa_min,
        });
    }

    let n = dt_dshat
        .try_div_eps(kappa, tol.kappa_min)
        .expect("kappa already checked");
    let b = t.cross(n);

    let dn_dshat = deriv_vec(&n)
        .try_div_eps(speed, tol.pure_dual_eps)
        .expect("speed already checked");
    let db_dshat = deriv_vec(&b)
        .try_div_eps(speed, tol.pure_dual_eps)
        .expect("speed already checked");

    let tau = dn_dshat.dot(b);
    let tau_alt = -(db_dshat.dot(n));
    let tau_cross_residual = (tau.real.value() - tau_alt.real.value())
        .abs()
        .max((tau.dual.value() - tau_alt.dual.value()).abs());

    let near_inflection = kappa.real.value() < tol.kappa_min * 1e3;

    Ok(FrameJet {
        s,
        speed,
        t,
        n,
        b,
        kappa,
        tau,
        tau_cross_residual,
        near_inflection,
    })
}

/// Frame at `s` without the jet payload.
pub fn frame_at(
    spec: &DualCurveSpec,
    s: f64,
    tol: &Tolerances,
) -> Result<DualFrenetFrame, FrenetError> {
    frame_jet_at(spec, s, tol).map(|fj| fj.frame())
}

/// Residuals of the frame derivative relations at one point.
#[derive(Clone, Copy, Debug)]
pub struct FrenetResiduals {
    /// `dT/ds_hat - kappa N`
    pub tangent: f64,
    /// `dN/ds_hat + kappa T - tau B`
    pub normal: f64,
    /// `dB/ds_hat + tau N`
    pub binormal: f64,
}

impl FrenetResiduals {
    pub fn max(&self) -> f64 {
        self.tangent.max(self.normal).max(self.binormal)
    }
}

/// Evaluates the three Frenet derivative identities as residuals, real and
/// dual parts together.
pub fn frenet_residuals(fj: &FrameJet) -> FrenetResiduals {
    let dt = fj.d_dshat(&fj.t);
    let dn = fj.d_dshat(&fj.n);
    let db = fj.d_dshat(&fj.b);

    let r_t = (dt - fj.n.mul_dual(fj.kappa)).value();
    let r_n = (dn + fj.t.mul_dual(fj.kappa) - fj.b.mul_dual(fj.tau)).value();
    let r_b = (db + fj.n.mul_dual(fj.tau)).value();

    FrenetResiduals {
        tangent: r_t.abs_max(),
        normal: r_n.abs_max(),
        binormal: r_b.abs_max(),
    }
}

/// Residuals of the six cross-product identities tying the frame's real and
/// moment parts together.
#[derive(Clone, Copy, Debug)]
pub struct MomentResiduals {
    /// `T x N - B`, `N x B - T`, `B x T - N` (real parts).
    pub real: [f64; 3],
    /// `T* - (N* x B + N x B*)` and cyclic (moment parts).
    pub dual: [f64; 3],
}

impl MomentResiduals {
    pub fn max(&self) -> f64 {
        self.real
            .iter()
            .chain(self.dual.iter())
            .fold(0.0_f64, |m, &x| m.max(x))
    }
}

pub fn moment_identities(f: &DualFrenetFrame) -> MomentResiduals {
    let (t, n, b) = (f.t.real, f.n.real, f.b.real);
    let (ts, ns, bs) = (f.t.dual, f.n.dual, f.b.dual);
    MomentResiduals {
        real: [
            (t.cross(n) - b).abs_max(),
            (n.cross(b) - t).abs_max(),
            (b.cross(t) - n).abs_max(),
        ],
        dual: [
            (ts - (ns.cross(b) + n.cross(bs))).abs_max(),
            (ns - (bs.cross(t) + b.cross(ts))).abs_max(),
            (bs - (ts.cross(n) + t.cross(ns))).abs_max(),
        ],
    }
}

/// Max deviation of the frame from dual orthonormality: unit dual norms and
/// pairwise dual orthogonality, real and dual parts separately, plus
/// `B = T x N`.
pub fn orthonormality_residual(f: &DualFrenetFrame) -> f64 {
    let one = DualScalar::one();
    let mut m: f64 = 0.0;
    for v in [&f.t, &f.n, &f.b] {
        m = m.max((v.dot(*v) - one).abs_max());
    }
    m = m.max(f.t.dot(f.n).abs_max());
    m = m.max(f.n.dot(f.b).abs_max());
    m = m.max(f.b.dot(f.t).abs_max());
    m = m.max((f.t.cross(f.n) - f.b).abs_max());
    m
}
