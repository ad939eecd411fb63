//! Curve specifications: six component expressions, a parameter domain, and
//! named constants, loaded from a simple `key = value` text format.
//!
//! A spec defines a dual curve on the dual unit sphere. Membership
//! (`||alpha|| = 1`, `<alpha, alpha*> = 0`) is checked by sampling, not
//! assumed; the parameter is an arbitrary regular parameter, not required to
//! be arc length of any kind.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use thiserror::Error;

use crate::dual::{DualVec, Vec3};
use crate::expr::{self, Constants, EvalError, Expr, ParseError};
use crate::jet::{Jet, JET_ORDER};
use crate::Tolerances;

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("i/o error reading spec: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("line {line}: bad expression: {err}")]
    Expr { line: usize, err: ParseError },
    #[error("missing key `{key}`")]
    MissingKey { key: &'static str },
    #[error("unbound constant `{name}` used in `{key}`")]
    UnboundConstant { name: String, key: String },
    #[error("domain must satisfy s0 < s1, got [{s0}, {s1}]")]
    EmptyDomain { s0: f64, s1: f64 },
}

/// Parsed parametric definition of a dual curve `alpha + eps alpha*`.
#[derive(Clone, Debug)]
pub struct DualCurveSpec {
    /// Components of the direction curve `alpha`.
    pub alpha: [Expr; 3],
    /// Components of the moment curve `alpha*`.
    pub alpha_star: [Expr; 3],
    /// Closed parameter interval `[s0, s1]`.
    pub domain: (f64, f64),
    /// Constant bindings, applied at evaluation time.
    pub constants: Constants,
}

/// On-sphere validation outcome.
#[derive(Clone, Copy, Debug)]
pub struct ValidationReport {
    /// Max of `| ||alpha|| - 1 |` over the samples.
    pub max_norm_dev: f64,
    /// Max of `| <alpha, alpha*> |` over the samples.
    pub max_moment_dev: f64,
    /// Smallest real curvature seen, if every sampled frame exists.
    pub min_kappa: Option<f64>,
    pub samples: usize,
    pub pass: bool,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: max |norm-1| = {:.3e}, max |<a,a*>| = {:.3e}, min kappa = {}",
            if self.pass { "pass" } else { "fail" },
            self.max_norm_dev,
            self.max_moment_dev,
            match self.min_kappa {
                Some(k) => format!("{k:.6}"),
                None => "undefined".into(),
            }
        )
    }
}

impl DualCurveSpec {
    /// Parses the text spec format: `key = value` per line, `#` comments,
    /// LF or CRLF endings. Keys: `alpha_x/y/z`, `alphastar_x/y/z`,
    /// `domain = s0, s1`, `const.NAME = number`.
    #[allow(clippy::should_implement_trait)]
    pub fn from_str(text: &str) -> Result<DualCurveSpec, SpecError> {
        let mut fields: BTreeMap<String, (Expr, usize)> = BTreeMap::new();
        let mut constants = Constants::new();
        let mut domain: Option<(f64, f64)> = None;

        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.trim_end_matches('\r');
            let line = match line.find('#') {
                Some(pos) => &line[..pos],
                None => line,
            };
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| SpecError::Format {
                line: line_no,
                msg: format!("expected `key = value`, got `{line}`"),
            })?;
            let key = key.trim();
            let value = value.trim();

            if let Some(name) = key.strip_prefix("const.") {
                let name = name.trim();
                if name.is_empty() || name == "s" {
                    return Err(SpecError::Format {
                        line: line_no,
                        msg: format!("invalid constant name `{name}`"),
                    });
                }
                let num: f64 = value.parse().map_err(|_| SpecError::Format {
                    line: line_no,
                    msg: format!("constant `{name}` is not a number: `{value}`"),
                })?;
                constants.insert(name.to_string(), num);
                continue;
            }

            match key {
                "domain" => {
                    let (a, b) = value.split_once(',').ok_or_else(|| SpecError::Format {
                        line: line_no,
                        msg: format!("domain must be `s0, s1`, got `{value}`"),
                    })?;
                    let s0: f64 = a.trim().parse().map_err(|_| SpecError::Format {
                        line: line_no,
                        msg: format!("bad domain start `{}`", a.trim()),
                    })?;
                    let s1: f64 = b.trim().parse().map_err(|_| SpecError::Format {
                        line: line_no,
                        msg: format!("bad domain end `{}`", b.trim()),
                    })?;
                    domain = Some((s0, s1));
                }
                "alpha_x" | "alpha_y" | "alpha_z" | "alphastar_x" | "alphastar_y"
                | "alphastar_z" => {
                    let e = expr::parse(value)
                        .map_err(|err| SpecError::Expr { line: line_no, err })?;
                    if fields.insert(key.to_string(), (e, line_no)).is_some() {
                        return Err(SpecError::Format {
                            line: line_no,
                            msg: format!("duplicate key `{key}`"),
                        });
                    }
                }
                other => {
                    return Err(SpecError::Format {
                        line: line_no,
                        msg: format!("unknown key `{other}`"),
                    });
                }
            }
        }

        let mut take = |key: &'static str| -> Result<Expr, SpecError> {
            fields
                .remove(key)
                .map(|(e, _)| e)
                .ok_or(SpecError::MissingKey { key })
        };
        let alpha = [take("alpha_x")?, take("alpha_y")?, take("alpha_z")?];
        let alpha_star = [
            take("alphastar_x")?,
            take("alphastar_y")?,
            take("alphastar_z")?,
        ];
        let domain = domain.ok_or(SpecError::MissingKey { key: "domain" })?;
        if !(domain.0 < domain.1) {
            return Err(SpecError::EmptyDomain {
                s0: domain.0,
                s1: domain.1,
            });
        }

        let spec = DualCurveSpec {
            alpha,
            alpha_star,
            domain,
            constants,
        };
        spec.check_bound_names()?;
        Ok(spec)
    }

    pub fn from_path(path: &Path) -> Result<DualCurveSpec, SpecError> {
        let text = std::fs::read_to_string(path)?;
        Self::from_str(&text)
    }

    /// Rebinds one constant; lets a single spec sweep a parameter.
    pub fn with_constant(mut self, name: &str, value: f64) -> DualCurveSpec {
        self.constants.insert(name.to_string(), value);
        self
    }

    fn check_bound_names(&self) -> Result<(), SpecError> {
        let keys = [
            "alpha_x",
            "alpha_y",
            "alpha_z",
            "alphastar_x",
            "alphastar_y",
            "alphastar_z",
        ];
        for (i, e) in self.alpha.iter().chain(self.alpha_star.iter()).enumerate() {
            for name in e.free_constants() {
                if !self.constants.contains_key(&name) {
                    return Err(SpecError::UnboundConstant {
                        name,
                        key: keys[i].to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Evaluates `alpha + eps alpha*` as a jet-valued dual vector at `s`.
    pub fn eval_jets(&self, s: f64) -> Result<DualVec<Jet>, EvalError> {
        let j = |e: &Expr| expr::eval_jet(e, s, JET_ORDER, &self.constants);
        Ok(DualVec {
            real: Vec3::new(j(&self.alpha[0])?, j(&self.alpha[1])?, j(&self.alpha[2])?),
            dual: Vec3::new(
                j(&self.alpha_star[0])?,
                j(&self.alpha_star[1])?,
                j(&self.alpha_star[2])?,
            ),
        })
    }

    /// Samples dual-unit-sphere membership at `n_samples` uniform points and
    /// records the smallest real curvature encountered (`None` if any frame
    /// is undefined).
    pub fn validate(&self, n_samples: usize, tol: &Tolerances) -> ValidationReport {
        let n = n_samples.max(2);
        let mut max_norm_dev: f64 = 0.0;
        let mut max_moment_dev: f64 = 0.0;
        let mut min_kappa: Option<f64> = None;
        let mut frames_ok = true;
        for i in 0..n {
            let s = self.domain.0 + (self.domain.1 - self.domain.0) * i as f64 / (n - 1) as f64;
            match self.eval_jets(s) {
                Ok(v) => {
                    let a = v.real.value();
                    let astar = v.dual.value();
                    max_norm_dev = max_norm_dev.max((a.norm_f() - 1.0).abs());
                    max_moment_dev = max_moment_dev.max(a.dot(astar).abs());
                }
                Err(_) => {
                    frames_ok = false;
                    max_norm_dev = f64::INFINITY;
                    continue;
                }
            }
            match crate::frenet::frame_at(self, s, tol) {
                Ok(frame) => {
                    let k = frame.kappa.real;
                    min_kappa = Some(match min_kappa {
                        Some(prev) => prev.min(k),
                        None => k,
                    });
                }
                Err(_) => frames_ok = false,
            }
        }
        if !frames_ok {
            min_kappa = None;
        }
        ValidationReport {
            max_norm_dev,
            max_moment_dev,
            min_kappa,
            samples: n,
            pass: max_norm_dev <= tol.on_sphere_eps && max_moment_dev <= tol.on_sphere_eps,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CIRCLE: &str = "\
# planar unit circle, zero moment
alpha_x = cos(s)
alpha_y = sin(s)
alpha_z = 0
alphastar_x = 0
alphastar_y = 0
alphastar_z = 0
domain = 0, 6.283185307179586
";

    #[test]
    fn parses_circle_spec() {
        let spec = DualCurveSpec::from_str(CIRCLE).unwrap();
        assert_eq!(spec.domain.0, 0.0);
        let report = spec.validate(50, &Tolerances::default());
        assert!(report.pass, "{report}");
        assert!((report.min_kappa.unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn accepts_crlf_and_trailing_comments() {
        let text = CIRCLE.replace('\n', "\r\n").replace(
            "alpha_x = cos(s)",
            "alpha_x = cos(s)   # direction x",
        );
        let spec = DualCurveSpec::from_str(&text).unwrap();
        assert!(spec.validate(20, &Tolerances::default()).pass);
    }

    #[test]
    fn circle_with_tangential_moment_stays_on_sphere() {
        let text = "\
const.r = 0.5
alpha_x = cos(s)
alpha_y = sin(s)
alpha_z = 0
alphastar_x = -r*sin(s)
alphastar_y = r*cos(s)
alphastar_z = 0
domain = 0, 6.283185307179586
";
        let spec = DualCurveSpec::from_str(text).unwrap();
        let report = spec.validate(40, &Tolerances::default());
        assert!(report.pass);

        // Same curve with any constant r still passes.
        let swept = spec.with_constant("r", 2.5);
        assert!(swept.validate(40, &Tolerances::default()).pass);
    }

    #[test]
    fn radius_two_circle_fails_validation() {
        let text = "\
alpha_x = 2*cos(s)
alpha_y = 2*sin(s)
alpha_z = 0
alphastar_x = 0
alphastar_y = 0
alphastar_z = 0
domain = 0, 6.283185307179586
";
        let spec = DualCurveSpec::from_str(text).unwrap();
        let report = spec.validate(30, &Tolerances::default());
        assert!(!report.pass);
        assert!((report.max_norm_dev - 1.0).abs() < 1e-12);
    }

    #[test]
    fn format_errors_carry_line_numbers() {
        let text = "alpha_x = cos(s)\nnot a key value\n";
        match DualCurveSpec::from_str(text).unwrap_err() {
            SpecError::Format { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }

        let text = "alpha_x = cos(s\n";
        match DualCurveSpec::from_str(text).unwrap_err() {
            SpecError::Expr { line, .. } => assert_eq!(line, 1),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unbound_constant_is_reported_at_load() {
        let text = "\
alpha_x = cos(w*s)
alpha_y = sin(w*s)
alpha_z = 0
alphastar_x = 0
alphastar_y = 0
alphastar_z = 0
domain = 0, 1
";
        match DualCurveSpec::from_str(text).unwrap_err() {
            SpecError::UnboundConstant { name, .. } => assert_eq!(name, "w"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_key_and_bad_domain() {
        assert!(matches!(
            DualCurveSpec::from_str("alpha_x = 1\ndomain = 0, 1\n").unwrap_err(),
            SpecError::MissingKey { .. }
        ));
        let text = CIRCLE.replace("domain = 0, 6.283185307179586", "domain = 2, 2");
        assert!(matches!(
            DualCurveSpec::from_str(&text).unwrap_err(),
            SpecError::EmptyDomain { .. }
        ));
    }
}
