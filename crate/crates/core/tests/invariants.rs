//! Cross-module invariants exercised over the whole shipped corpus:
//! nonpositivity of ruled-surface Gaussian curvature, consistency of the
//! Gram-Schmidt norm with the closed-form denominator, cross-route symmetry
//! of the shape operator, and invariance of classification verdicts under
//! reparametrization.

use std::path::{Path, PathBuf};

use rulekit::classify::{classify_surface, curvature_grid, GridConfig, PointStatus};
use rulekit::expr;
use rulekit::frenet::frame_jet_at;
use rulekit::ruled::formulas::{BracketInterpretation, FormulaInputs};
use rulekit::ruled::{gram_schmidt, shape_operator, surface_jet, IndicatrixKind};
use rulekit::{DualCurveSpec, Tolerances};

fn corpus() -> Vec<(String, DualCurveSpec)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let mut paths: Vec<PathBuf> = std::fs::read_dir(&dir)
        .unwrap()
        .chain(std::fs::read_dir(dir.join("family")).unwrap())
        .filter_map(|e| {
            let p = e.unwrap().path();
            (p.is_file() && p.extension().map(|x| x == "curve").unwrap_or(false)).then_some(p)
        })
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            (
                p.file_stem().unwrap().to_string_lossy().to_string(),
                DualCurveSpec::from_path(&p).unwrap(),
            )
        })
        .collect()
}

#[test]
fn gaussian_curvature_is_nonpositive_everywhere() {
    let tol = Tolerances::default();
    let grid = GridConfig::default();
    for (name, spec) in &corpus() {
        for kind in IndicatrixKind::ALL {
            let g = curvature_grid(spec, kind, &grid, BracketInterpretation::CompanionBase, &tol)
                .unwrap();
            for p in &g.samples {
                if p.status == PointStatus::Singular {
                    continue;
                }
                assert!(
                    p.k_oracle <= 1e-12,
                    "{name}/{} at ({}, {}): K = {}",
                    kind.name(),
                    p.s,
                    p.v,
                    p.k_oracle
                );
                assert!(p.k_closed <= 1e-12, "{name}: closed form K positive");
            }
        }
    }
}

#[test]
fn gram_schmidt_norm_matches_closed_form_denominator() {
    // The actual |Y2| carries one factor of the real speed relative to the
    // closed-form expression, which is written per unit real arc length.
    let tol = Tolerances::default();
    for (name, spec) in &corpus() {
        for kind in IndicatrixKind::ALL {
            for i in 0..12 {
                let s = spec.domain.0 + (spec.domain.1 - spec.domain.0) * i as f64 / 11.0;
                let fj = frame_jet_at(spec, s, &tol).unwrap();
                let rho = fj.rho().value();
                let inputs = FormulaInputs::new(&fj, kind, BracketInterpretation::CompanionBase);
                for v in [-1.7, -0.4, 0.9, 2.0] {
                    let Ok(sj) = surface_jet(&fj, kind, v, &tol) else {
                        continue;
                    };
                    let Ok(gs) = gram_schmidt(&sj, &tol) else {
                        continue;
                    };
                    if gs.y2_norm < tol.y2_compare_min {
                        continue;
                    }
                    let actual = (gs.y2_norm / rho).powi(2);
                    let closed = inputs.y2sq(v);
                    let scale = closed.abs().max(1.0);
                    assert!(
                        (actual - closed).abs() <= 1e-6 * scale,
                        "{name}/{} at ({s}, {v}): |Y2|^2/rho^2 = {actual} vs {closed}",
                        kind.name()
                    );
                }
            }
        }
    }
}

#[test]
fn shape_operator_routes_agree() {
    // s12 comes from the normal's rate along the directrix, s21 from its
    // rate along the ruling; self-adjointness ties them together.
    let tol = Tolerances::default();
    for (name, spec) in &corpus() {
        for kind in IndicatrixKind::ALL {
            for i in 0..10 {
                let s = spec.domain.0 + (spec.domain.1 - spec.domain.0) * (i as f64 + 0.5) / 10.0;
                let fj = frame_jet_at(spec, s, &tol).unwrap();
                for v in [-1.3, 0.6, 1.9] {
                    let Ok(sj) = surface_jet(&fj, kind, v, &tol) else {
                        continue;
                    };
                    let Ok(gs) = gram_schmidt(&sj, &tol) else {
                        continue;
                    };
                    if gs.y2_norm < tol.y2_compare_min {
                        continue;
                    }
                    let op = shape_operator(&sj, &gs, &tol).unwrap();
                    let scale = op.s12.abs().max(1.0);
                    assert!(
                        (op.s12 - op.s21).abs() <= 1e-9 * scale,
                        "{name}/{} at ({s}, {v}): {} vs {}",
                        kind.name(),
                        op.s12,
                        op.s21
                    );
                    assert!(op.s11.abs() <= 1e-9, "ruling not asymptotic: {}", op.s11);
                }
            }
        }
    }
}

#[test]
fn surface_partials_match_finite_differences() {
    // Analytic partials of the surface map against order-4 central
    // differences of the position in s (phi_v and phi_vv are exact by the
    // map's linearity in v).
    let tol = Tolerances::default();
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let spec = DualCurveSpec::from_path(&dir.join("helicoid.curve")).unwrap();
    let h = 1e-4;
    for kind in [IndicatrixKind::Tangent, IndicatrixKind::PrincipalNormal] {
        for (s, v) in [(0.7, 0.3), (2.4, -1.1), (5.0, 1.6)] {
            let fj = frame_jet_at(&spec, s, &tol).unwrap();
            let sj = surface_jet(&fj, kind, v, &tol).unwrap();
            let pos = |s: f64| {
                let fj = frame_jet_at(&spec, s, &tol).unwrap();
                rulekit::ruled::ruling_point(&fj, kind, v)
            };
            let stencil = [pos(s + 2.0 * h), pos(s + h), pos(s - h), pos(s - 2.0 * h)];
            let fd = (stencil[1] - stencil[2]).scale(8.0 / (12.0 * h))
                - (stencil[0] - stencil[3]).scale(1.0 / (12.0 * h));
            assert!(
                (sj.phi_s - fd).abs_max() < 1e-6,
                "{} phi_s at ({s},{v})",
                kind.name()
            );
            let fd2 = (stencil[1] + stencil[2] - sj.position.scale(2.0)).scale(16.0 / (12.0 * h * h))
                - (stencil[0] + stencil[3] - sj.position.scale(2.0)).scale(1.0 / (12.0 * h * h));
            assert!(
                (sj.phi_ss - fd2).abs_max() < 1e-5,
                "{} phi_ss at ({s},{v})",
                kind.name()
            );
        }
    }
}

#[test]
fn nonvanishing_dual_curvature_gives_nonflat_tangent_surface() {
    // Contrapositive direction of the tangent-surface theorem on a member
    // with nonzero effective dual curvature: hypothesis fails and the
    // surface is genuinely curved, which the record reports as consistent.
    let tol = Tolerances::default();
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let spec = DualCurveSpec::from_path(&dir.join("helicoid.curve")).unwrap();
    let record = rulekit::classify::theorem_predicate(
        &spec,
        IndicatrixKind::Tangent,
        &GridConfig::default(),
        BracketInterpretation::CompanionBase,
        &tol,
    )
    .unwrap();
    assert!(!record.hypothesis_satisfied);
    assert!(record.conclusion_max_abs_k > 1.0);
    assert!(!record.conclusion_satisfied);
    assert_eq!(record.consistency, "consistent");
}

#[test]
fn weingarten_verdict_survives_reparametrization() {
    // Tracing the same curve at twice the rate rescales the Jacobian but
    // must not flip the verdict.
    let tol = Tolerances::default();
    let grid = GridConfig::default();
    let cases = [
        ("helicoid.curve", IndicatrixKind::PrincipalNormal, true),
        ("spiral_offset.curve", IndicatrixKind::Tangent, false),
        ("theorem1_plane.curve", IndicatrixKind::Binormal, true),
    ];
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    for (file, kind, expected) in cases {
        let spec = DualCurveSpec::from_path(&dir.join(file)).unwrap();
        let mut fast = spec.clone();
        let two_s = expr::parse("2*s").unwrap();
        for e in fast.alpha.iter_mut().chain(fast.alpha_star.iter_mut()) {
            *e = e.substitute_param(&two_s);
        }
        fast.domain = (spec.domain.0 / 2.0, spec.domain.1 / 2.0);

        let a = classify_surface(&spec, kind, &grid, BracketInterpretation::CompanionBase, &tol)
            .unwrap();
        let b = classify_surface(&fast, kind, &grid, BracketInterpretation::CompanionBase, &tol)
            .unwrap();
        assert_eq!(a.weingarten, expected, "{file}: {}", a.max_norm_jacobian);
        assert_eq!(
            a.weingarten, b.weingarten,
            "{file}: verdict changed under reparametrization ({} vs {})",
            a.max_norm_jacobian, b.max_norm_jacobian
        );
        assert_eq!(a.developable, b.developable);
        assert_eq!(a.minimal, b.minimal);
    }
}
