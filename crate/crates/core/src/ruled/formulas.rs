//! Closed-form Gaussian and mean curvature of the indicatrix surfaces,
//! expressed in the frame invariants and the canonical base-curve brackets.
//!
//! The expressions assume the directrix is traced at dual unit speed. For an
//! arbitrary regular parameter the equivalent statement uses the
//! speed-normalized curvature and torsion ([`FrameJet::kappa_unit_speed`],
//! [`FrameJet::tau_unit_speed`]) and derivatives per unit real arc length;
//! all evaluation here goes through that normalization, so the results are
//! parametrization-invariant point functions of the surface.
//!
//! The first-derivative block of the tangent surface mixes two scalar
//! products that transpose into each other (`<beta_N, T>` versus
//! `<beta_T, N>`); they are genuinely different quantities. Every evaluator
//! takes a [`BracketInterpretation`] selecting which of the two readings to
//! use, and the `verify` workflow picks the reading that agrees with the
//! fundamental-forms oracle instead of trusting either on faith.

use serde::{Deserialize, Serialize};

use crate::dual::Vec3;
use crate::frenet::FrameJet;
use crate::jet::Jet;
use crate::Tolerances;

use super::{director, IndicatrixKind, SurfaceError};

/// Which way to read the transposable scalar products.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BracketInterpretation {
    /// Base points of the companion lines dotted with this surface's
    /// director (the reading the closed forms are written in).
    CompanionBase,
    /// This surface's own base point dotted with the companion directors
    /// (the transposed reading).
    OwnBase,
}

impl BracketInterpretation {
    pub const ALL: [BracketInterpretation; 2] = [
        BracketInterpretation::CompanionBase,
        BracketInterpretation::OwnBase,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BracketInterpretation::CompanionBase => "companion_base",
            BracketInterpretation::OwnBase => "own_base",
        }
    }
}

/// All nine scalar products `<beta_X, Y>` of the canonical base curves
/// `beta_X = X x X*` against the real frame directions, as jets.
pub struct BracketSet {
    dot: [[Jet; 3]; 3],
    rho: Jet,
}

fn kind_index(kind: IndicatrixKind) -> usize {
    match kind {
        IndicatrixKind::Tangent => 0,
        IndicatrixKind::PrincipalNormal => 1,
        IndicatrixKind::Binormal => 2,
    }
}

impl BracketSet {
    pub fn compute(fj: &FrameJet) -> BracketSet {
        let frame = [fj.t.real, fj.n.real, fj.b.real];
        let mut dot = [[Jet::constant(0.0); 3]; 3];
        for (i, kind) in IndicatrixKind::ALL.iter().enumerate() {
            let x = director(fj, *kind);
            let beta: Vec3<Jet> = x.real.cross(x.dual);
            for (j, y) in frame.iter().enumerate() {
                dot[i][j] = beta.dot(*y);
            }
        }
        BracketSet {
            dot,
            rho: fj.rho(),
        }
    }

    /// `<beta_base, with>` at the evaluation point.
    pub fn value(&self, base: IndicatrixKind, with: IndicatrixKind) -> f64 {
        self.dot[kind_index(base)][kind_index(with)].value()
    }

    /// Derivative of the bracket per unit real arc length.
    pub fn rate(&self, base: IndicatrixKind, with: IndicatrixKind) -> f64 {
        (self.dot[kind_index(base)][kind_index(with)].derivative() / self.rho).value()
    }
}

/// The canonical base-curve brackets of one surface: `<beta, T>`, `<beta, N>`,
/// `<beta, B>` with their arc-length rates.
#[derive(Clone, Copy, Debug)]
pub struct KindBrackets {
    pub with_t: f64,
    pub with_n: f64,
    pub with_b: f64,
    pub rate_t: f64,
    pub rate_n: f64,
    pub rate_b: f64,
}

pub fn canonical_brackets(fj: &FrameJet, kind: IndicatrixKind) -> KindBrackets {
    let set = BracketSet::compute(fj);
    KindBrackets {
        with_t: set.value(kind, IndicatrixKind::Tangent),
        with_n: set.value(kind, IndicatrixKind::PrincipalNormal),
        with_b: set.value(kind, IndicatrixKind::Binormal),
        rate_t: set.rate(kind, IndicatrixKind::Tangent),
        rate_n: set.rate(kind, IndicatrixKind::PrincipalNormal),
        rate_b: set.rate(kind, IndicatrixKind::Binormal),
    }
}

/// Scalar ingredients of the closed forms at one parameter value, ready to
/// evaluate at any ruling offset `v`. Speed normalization already applied.
#[derive(Clone, Copy, Debug)]
pub struct FormulaInputs {
    pub kind: IndicatrixKind,
    pub interpretation: BracketInterpretation,
    /// Curvature, real and dual parts.
    pub k: f64,
    pub ks: f64,
    /// Torsion, real and dual parts.
    pub t: f64,
    pub ts: f64,
    /// Arc-length rates of the four above.
    pub dk: f64,
    pub dks: f64,
    pub dt: f64,
    pub dts: f64,
    /// First bracket and its rate (`<beta_N, T>`-slot for the tangent
    /// surface, `<beta_T, N>`-slot for the principal normal, `<beta_N, B>`
    /// for the binormal).
    pub b1: f64,
    pub db1: f64,
    /// Second bracket (`<beta_B, N>`-slot), only used by the principal
    /// normal surface.
    pub b2: f64,
    pub db2: f64,
}

impl FormulaInputs {
    pub fn new(
        fj: &FrameJet,
        kind: IndicatrixKind,
        interpretation: BracketInterpretation,
    ) -> FormulaInputs {
        let kap = fj.kappa_unit_speed();
        let tau = fj.tau_unit_speed();
        let set = BracketSet::compute(fj);

        use BracketInterpretation::*;
        use IndicatrixKind::*;
        let ((base1, with1), (base2, with2)) = match (kind, interpretation) {
            (Tangent, CompanionBase) => ((PrincipalNormal, Tangent), (PrincipalNormal, Tangent)),
            (Tangent, OwnBase) => ((Tangent, PrincipalNormal), (Tangent, PrincipalNormal)),
            (PrincipalNormal, CompanionBase) => {
                ((Tangent, PrincipalNormal), (Binormal, PrincipalNormal))
            }
            (PrincipalNormal, OwnBase) => {
                ((PrincipalNormal, Tangent), (PrincipalNormal, Binormal))
            }
            (Binormal, CompanionBase) => ((PrincipalNormal, Binormal), (PrincipalNormal, Binormal)),
            (Binormal, OwnBase) => ((Binormal, PrincipalNormal), (Binormal, PrincipalNormal)),
        };

        FormulaInputs {
            kind,
            interpretation,
            k: kap.real.value(),
            ks: kap.dual.value(),
            t: tau.real.value(),
            ts: tau.dual.value(),
            dk: fj.d_arclen(kap.real).value(),
            dks: fj.d_arclen(kap.dual).value(),
            dt: fj.d_arclen(tau.real).value(),
            dts: fj.d_arclen(tau.dual).value(),
            b1: set.value(base1, with1),
            db1: set.rate(base1, with1),
            b2: set.value(base2, with2),
            db2: set.rate(base2, with2),
        }
    }

    /// The squared norm of the non-ruling tangent component, as the closed
    /// forms express it. This is the common denominator base of `K` and `H`.
    pub fn y2sq(&self, v: f64) -> f64 {
        let FormulaInputs {
            k, ks, t, ts, b1, b2, ..
        } = *self;
        match self.kind {
            IndicatrixKind::Tangent => k * k * (v - b1) * (v - b1) + ks * ks,
            IndicatrixKind::PrincipalNormal => {
                k * k * b1 * b1 + (2.0 * k * ts - 2.0 * k * k * v) * b1 + ks * ks
                    - (2.0 * t * ks + 2.0 * t * t * v) * b2
                    + 2.0 * ks * t * v
                    + t * t * b2 * b2
                    + ts * ts
                    - 2.0 * k * ts * v
                    + v * v * (k * k + t * t)
            }
            IndicatrixKind::Binormal => t * t * (b1 - v) * (b1 - v) + ts * ts,
        }
    }

    fn check_denominator(&self, v: f64, tol: &Tolerances) -> Result<f64, SurfaceError> {
        let y2sq = self.y2sq(v);
        if !(y2sq.sqrt() > tol.dual_div_eps) {
            return Err(SurfaceError::SingularDenominator {
                context: "closed-form |Y2|",
                value: y2sq,
            });
        }
        Ok(y2sq)
    }

    /// Closed-form Gaussian curvature at ruling offset `v`.
    pub fn k_at(&self, v: f64, tol: &Tolerances) -> Result<f64, SurfaceError> {
        let y2sq = self.check_denominator(v, tol)?;
        let num = match self.kind {
            IndicatrixKind::Tangent => self.k * self.k * self.ks * self.ks,
            IndicatrixKind::PrincipalNormal => {
                let w = self.k * self.ks + self.t * self.ts;
                w * w
            }
            IndicatrixKind::Binormal => self.t * self.t * self.ts * self.ts,
        };
        Ok(-num / (y2sq * y2sq))
    }

    /// Closed-form mean curvature (trace convention) at ruling offset `v`,
    /// with the individual numerator terms kept for diagnostics.
    pub fn h_at(&self, v: f64, tol: &Tolerances) -> Result<ClosedFormH, SurfaceError> {
        let y2sq = self.check_denominator(v, tol)?;
        let FormulaInputs {
            k,
            ks,
            t,
            ts,
            dk,
            dks,
            dt,
            dts,
            b1,
            db1,
            ..
        } = *self;

        let terms: Vec<(&'static str, f64)> = match self.kind {
            IndicatrixKind::Tangent => vec![
                ("-k^2 t b^2", -k * k * t * b1 * b1),
                (
                    "b (ks' k + 2 v k^2 t - ks k')",
                    b1 * (dks * k + 2.0 * v * k * k * t - ks * dk),
                ),
                ("-ks k b'", -ks * k * db1),
                ("-v k ks'", -v * k * dks),
                ("-v^2 k^2 t", -v * v * k * k * t),
                ("-ks^2 t", -ks * ks * t),
                ("v ks k'", v * ks * dk),
            ],
            IndicatrixKind::PrincipalNormal => vec![
                (
                    "(ks' k - k' ks + ts' t - t' ts)(a - v)",
                    (dks * k - dk * ks + dts * t - dt * ts) * (b1 - v),
                ),
                (
                    "(k' t - t' k)(a - v)^2",
                    (dk * t - dt * k) * (b1 * b1 - 2.0 * v * b1 + v * v),
                ),
                ("-a' (k ks + t ts)", -db1 * (k * ks + t * ts)),
                ("ks' ts - ts' ks", dks * ts - dts * ks),
            ],
            IndicatrixKind::Binormal => vec![
                ("-t^2 k b^2", -t * t * k * b1 * b1),
                (
                    "b (-t' ts + 2 v t^2 k + ts' t)",
                    b1 * (-dt * ts + 2.0 * v * t * t * k + dts * t),
                ),
                ("-t ts b'", -t * ts * db1),
                ("-k ts^2", -k * ts * ts),
                ("v t' ts", v * dt * ts),
                ("-v ts' t", -v * dts * t),
                ("-v^2 t^2 k", -v * v * t * t * k),
            ],
        };

        let numerator: f64 = terms.iter().map(|(_, x)| x).sum();
        Ok(ClosedFormH {
            value: numerator / y2sq.powf(1.5),
            numerator,
            terms,
        })
    }
}

/// Mean curvature value with its numerator term breakdown.
#[derive(Clone, Debug)]
pub struct ClosedFormH {
    pub value: f64,
    pub numerator: f64,
    pub terms: Vec<(&'static str, f64)>,
}

/// Closed-form Gaussian curvature of the `kind` surface at `(s of fj, v)`.
pub fn closed_form_k(
    fj: &FrameJet,
    kind: IndicatrixKind,
    v: f64,
    interpretation: BracketInterpretation,
    tol: &Tolerances,
) -> Result<f64, SurfaceError> {
    FormulaInputs::new(fj, kind, interpretation).k_at(v, tol)
}

/// Closed-form mean curvature (trace convention) of the `kind` surface.
pub fn closed_form_h(
    fj: &FrameJet,
    kind: IndicatrixKind,
    v: f64,
    interpretation: BracketInterpretation,
    tol: &Tolerances,
) -> Result<ClosedFormH, SurfaceError> {
    FormulaInputs::new(fj, kind, interpretation).h_at(v, tol)
}

/// Classical distribution parameter of the `kind` surface, from the
/// speed-normalized invariants. Zero exactly on developable surfaces.
pub fn distribution_parameter(
    fj: &FrameJet,
    kind: IndicatrixKind,
    tol: &Tolerances,
) -> Result<f64, SurfaceError> {
    let kap = fj.kappa_unit_speed();
    let tau = fj.tau_unit_speed();
    let (k, ks) = (kap.real.value(), kap.dual.value());
    let (t, ts) = (tau.real.value(), tau.dual.value());
    match kind {
        IndicatrixKind::Tangent => {
            if !(k.abs() > tol.dual_div_eps) {
                return Err(SurfaceError::SingularDenominator {
                    context: "distribution parameter, tangent",
                    value: k,
                });
            }
            Ok(ks / k)
        }
        IndicatrixKind::PrincipalNormal => {
            let den = k * k + t * t;
            if !(den > tol.dual_div_eps) {
                return Err(SurfaceError::SingularDenominator {
                    context: "distribution parameter, principal normal",
                    value: den,
                });
            }
            Ok((k * ks + t * ts) / den)
        }
        IndicatrixKind::Binormal => {
            if !(t.abs() > tol.dual_div_eps) {
                return Err(SurfaceError::SingularDenominator {
                    context: "distribution parameter, binormal",
                    value: t,
                });
            }
            Ok(ts / t)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::DualCurveSpec;
    use crate::frenet::frame_jet_at;
    use crate::ruled::{curvatures_oracle, fundamental_forms, surface_jet};
    use crate::Tolerances;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn synthetic(kind: IndicatrixKind, k: f64, ks: f64, t: f64, ts: f64, b1: f64) -> FormulaInputs {
        FormulaInputs {
            kind,
            interpretation: BracketInterpretation::CompanionBase,
            k,
            ks,
            t,
            ts,
            dk: 0.0,
            dks: 0.0,
            dt: 0.0,
            dts: 0.0,
            b1,
            db1: 0.0,
            b2: 0.0,
            db2: 0.0,
        }
    }

    #[test]
    fn tangent_k_by_direct_substitution() {
        let f = synthetic(IndicatrixKind::Tangent, 1.0, 0.5, 0.0, 0.0, 0.0);
        let k = f.k_at(0.0, &tol()).unwrap();
        assert!((k + 4.0).abs() < 1e-14, "{k}");
    }

    #[test]
    fn tangent_k_vanishes_without_dual_curvature() {
        let f = synthetic(IndicatrixKind::Tangent, 1.3, 0.0, 0.7, 0.2, 0.4);
        for v in [-2.0, -0.3, 0.0, 1.1, 2.0] {
            assert_eq!(f.k_at(v, &tol()).unwrap(), -0.0);
        }
    }

    #[test]
    fn binormal_k_by_direct_substitution() {
        let f = synthetic(IndicatrixKind::Binormal, 0.0, 0.0, 2.0, 1.0, 0.0);
        let k = f.k_at(0.0, &tol()).unwrap();
        assert!((k + 4.0).abs() < 1e-14, "{k}");
    }

    #[test]
    fn tangent_h_constant_case() {
        // k = ks = t = 1, all rates and brackets zero, v = 0: the only
        // surviving numerator term is -ks^2 t = -1 over |Y2|^3 = 1.
        let f = synthetic(IndicatrixKind::Tangent, 1.0, 1.0, 1.0, 0.0, 0.0);
        let h = f.h_at(0.0, &tol()).unwrap();
        assert!((h.value + 1.0).abs() < 1e-14, "{}", h.value);
    }

    #[test]
    fn tangent_h_vanishes_for_flat_inputs() {
        let f = synthetic(IndicatrixKind::Tangent, 1.4, 0.0, 0.0, 0.9, 0.8);
        for v in [-2.0, 0.0, 0.5, 2.0] {
            let h = f.h_at(v, &tol()).unwrap();
            assert_eq!(h.value, 0.0);
        }
    }

    #[test]
    fn binormal_h_term_collection() {
        // With t, ts constant and b = b' = 0 the numerator collapses to
        // -k (ts^2 + v^2 t^2).
        let (k, t, ts) = (0.8, 1.7, 0.6);
        let f = synthetic(IndicatrixKind::Binormal, k, 0.3, t, ts, 0.0);
        for v in [-1.0, 0.3, 2.0] {
            let h = f.h_at(v, &tol()).unwrap();
            let want = -k * (ts * ts + v * v * t * t);
            assert!((h.numerator - want).abs() < 1e-12);
        }
    }

    #[test]
    fn tangent_binormal_formula_duality() {
        // Swapping curvature and torsion data maps the tangent K onto the
        // binormal K; (v-b)^2 is symmetric in the sign of (b-v).
        let cases = [
            (1.2, 0.4, 0.9, -0.3, 0.7, 0.25),
            (0.6, -0.8, 2.1, 0.5, -1.4, -1.0),
            (2.0, 0.05, 0.3, 1.7, 0.0, 1.9),
        ];
        for (k, ks, t, ts, b, v) in cases {
            let tangent = synthetic(IndicatrixKind::Tangent, k, ks, t, ts, b);
            let binormal = synthetic(IndicatrixKind::Binormal, t, ts, k, ks, b);
            let a = tangent.k_at(v, &tol()).unwrap();
            let b = binormal.k_at(v, &tol()).unwrap();
            assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
        }
    }

    #[test]
    fn singular_denominator_is_an_error() {
        let f = synthetic(IndicatrixKind::Tangent, 1.0, 0.0, 0.0, 0.0, 0.0);
        assert!(matches!(
            f.k_at(0.0, &tol()),
            Err(SurfaceError::SingularDenominator { .. })
        ));
    }

    #[test]
    fn own_director_bracket_vanishes() {
        // <beta_X, X> = <X x X*, X> = 0 for every kind: scalar triple
        // product with a repeated factor.
        let spec = DualCurveSpec::from_str(
            "const.h = 0.6\nconst.c = 0.24\n\
             alpha_x = sqrt(1 - h^2)*cos(s)\n\
             alpha_y = sqrt(1 - h^2)*sin(s)\n\
             alpha_z = h\n\
             alphastar_x = -c*s*sin(s)\n\
             alphastar_y = c*s*cos(s)\n\
             alphastar_z = 0\n\
             domain = 0, 6.283185307179586\n",
        )
        .unwrap();
        let fj = frame_jet_at(&spec, 1.7, &tol()).unwrap();
        let bt = canonical_brackets(&fj, IndicatrixKind::Tangent);
        let bn = canonical_brackets(&fj, IndicatrixKind::PrincipalNormal);
        let bb = canonical_brackets(&fj, IndicatrixKind::Binormal);
        assert!(bt.with_t.abs() < 1e-13);
        assert!(bn.with_n.abs() < 1e-13);
        assert!(bb.with_b.abs() < 1e-13);
    }

    #[test]
    fn zero_moment_spec_has_zero_brackets() {
        let spec = DualCurveSpec::from_str(
            "alpha_x = cos(s)\nalpha_y = sin(s)\nalpha_z = 0\n\
             alphastar_x = 0\nalphastar_y = 0\nalphastar_z = 0\n\
             domain = 0, 6.283185307179586\n",
        )
        .unwrap();
        let fj = frame_jet_at(&spec, 0.9, &tol()).unwrap();
        let b = canonical_brackets(&fj, IndicatrixKind::Tangent);
        for x in [b.with_t, b.with_n, b.with_b, b.rate_t, b.rate_n, b.rate_b] {
            assert!(x.abs() < 1e-13);
        }
    }

    #[test]
    fn closed_forms_match_oracle_on_the_helicoid() {
        // The principal-normal surface of this spec is a helicoid; its
        // parameter is neither unit-real-speed (rho = 0.8) nor unit dual
        // speed, so this exercises the speed normalization end to end.
        let spec = DualCurveSpec::from_str(
            "const.h = 0.6\nconst.c = 0.24\n\
             alpha_x = sqrt(1 - h^2)*cos(s)\n\
             alpha_y = sqrt(1 - h^2)*sin(s)\n\
             alpha_z = h\n\
             alphastar_x = -c*s*sin(s)\n\
             alphastar_y = c*s*cos(s)\n\
             alphastar_z = 0\n\
             domain = 0, 6.283185307179586\n",
        )
        .unwrap();
        let t = tol();
        for s in [0.4, 1.8, 3.3, 5.6] {
            let fj = frame_jet_at(&spec, s, &t).unwrap();
            for v in [-1.6, -0.4, 0.8, 2.0] {
                let sj = surface_jet(&fj, IndicatrixKind::PrincipalNormal, v, &t).unwrap();
                let oc = curvatures_oracle(&fundamental_forms(&sj), &t).unwrap();
                let k_closed = closed_form_k(
                    &fj,
                    IndicatrixKind::PrincipalNormal,
                    v,
                    BracketInterpretation::CompanionBase,
                    &t,
                )
                .unwrap();
                assert!(
                    (k_closed - oc.k).abs() <= 1e-9 * oc.k.abs().max(1.0),
                    "s={s} v={v}: {k_closed} vs {}",
                    oc.k
                );
                let h_closed = closed_form_h(
                    &fj,
                    IndicatrixKind::PrincipalNormal,
                    v,
                    BracketInterpretation::CompanionBase,
                    &t,
                )
                .unwrap();
                assert!(h_closed.value.abs() < 1e-9, "helicoid is minimal");
            }
        }
    }

    #[test]
    fn distribution_parameter_ratios() {
        let f = |k: f64, ks: f64| {
            // Direct ratio for the tangent surface.
            ks / k
        };
        assert!((f(1.0, 0.5) - 0.5).abs() < 1e-15);

        // On the helicoid spec the principal-normal distribution parameter
        // equals the pitch, and K along a ruling follows the classical
        // -d^2/(d^2+u^2)^2 profile with the striction at the axis.
        let spec = DualCurveSpec::from_str(
            "const.h = 0.6\nconst.c = 0.24\n\
             alpha_x = sqrt(1 - h^2)*cos(s)\n\
             alpha_y = sqrt(1 - h^2)*sin(s)\n\
             alpha_z = h\n\
             alphastar_x = -c*s*sin(s)\n\
             alphastar_y = c*s*cos(s)\n\
             alphastar_z = 0\n\
             domain = 0, 6.283185307179586\n",
        )
        .unwrap();
        let t = tol();
        let fj = frame_jet_at(&spec, 2.2, &t).unwrap();
        let d = distribution_parameter(&fj, IndicatrixKind::PrincipalNormal, &t).unwrap();
        let pitch = 0.24 / 0.8;
        assert!((d.abs() - pitch).abs() < 1e-10, "{d}");

        // Fit the striction offset by scanning; it should sit at u0 = 0
        // and reproduce the oracle K along the ruling.
        let k_of = |v: f64| {
            let sj = surface_jet(&fj, IndicatrixKind::PrincipalNormal, v, &t).unwrap();
            curvatures_oracle(&fundamental_forms(&sj), &t).unwrap().k
        };
        let probe = [-1.5, -0.8, 0.6, 1.3];
        let mut best = (f64::INFINITY, 0.0);
        let mut u0 = -0.5;
        while u0 <= 0.5 {
            let mismatch: f64 = probe
                .iter()
                .map(|&v| {
                    let u = v - u0;
                    let model = -d * d / (d * d + u * u).powi(2);
                    (k_of(v) - model).abs()
                })
                .sum();
            if mismatch < best.0 {
                best = (mismatch, u0);
            }
            u0 += 0.001;
        }
        assert!(best.1.abs() < 5e-3, "striction offset {}", best.1);
        assert!(best.0 < 1e-6, "profile mismatch {}", best.0);

        // Binormal parameter is singular when the torsion vanishes.
        let circle = DualCurveSpec::from_str(
            "alpha_x = cos(s)\nalpha_y = sin(s)\nalpha_z = 0\n\
             alphastar_x = 0\nalphastar_y = 0\nalphastar_z = 0\n\
             domain = 0, 6.283185307179586\n",
        )
        .unwrap();
        let fj = frame_jet_at(&circle, 0.3, &t).unwrap();
        assert!(matches!(
            distribution_parameter(&fj, IndicatrixKind::Binormal, &t),
            Err(SurfaceError::SingularDenominator { .. })
        ));
    }
}
