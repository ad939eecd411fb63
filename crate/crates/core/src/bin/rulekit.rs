//! Command-line front end: load curve specs, evaluate frames, surfaces,
//! curvature grids, classification, and closed-form verification, and write
//! CSV / OBJ / JSON artifacts.
//!
//! Exit codes: 0 success, 1 i/o, 2 validation, 3 numerical failure,
//! 4 closed-form/oracle mismatch in `verify`. Classification verdicts are
//! data, never nonzero exits. All outputs are byte-deterministic.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use rulekit::classify::{
    classify_surface, curvature_grid, ClassifyError, CurvatureGrid, GridConfig, PointStatus,
};
use rulekit::curve::SpecError;
use rulekit::export::{fmt_sig, CsvWriter, ObjMesh};
use rulekit::frenet::{
    frame_jet_at, frenet_residuals, moment_identities, orthonormality_residual, FrenetError,
};
use rulekit::ruled::formulas::BracketInterpretation;
use rulekit::ruled::IndicatrixKind;
use rulekit::{DualCurveSpec, Tolerances};

#[derive(Parser)]
#[command(
    name = "rulekit",
    version,
    about = "Dual-number line geometry: frames, ruled surfaces, curvature, classification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample the dual Frenet apparatus along the curve and write a CSV.
    Frenet(FrenetArgs),
    /// Mesh the indicatrix surfaces (OBJ) and write their curvature grids.
    Surface(SurfaceArgs),
    /// Classify surfaces as developable / minimal / Weingarten (JSON).
    Classify(ClassifyArgs),
    /// Compare closed-form curvatures against the oracle over a spec corpus.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    T,
    N,
    B,
    All,
}

impl KindArg {
    fn kinds(self) -> Vec<IndicatrixKind> {
        match self {
            KindArg::T => vec![IndicatrixKind::Tangent],
            KindArg::N => vec![IndicatrixKind::PrincipalNormal],
            KindArg::B => vec![IndicatrixKind::Binormal],
            KindArg::All => IndicatrixKind::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum FormatArg {
    Csv,
    Obj,
    Json,
}

#[derive(Args)]
struct GridArgs {
    /// Number of parameter samples over the spec domain.
    #[arg(long, default_value_t = 41)]
    s_count: usize,
    /// Lower end of the ruling-offset window.
    #[arg(long, default_value_t = -2.0, allow_hyphen_values = true)]
    v_min: f64,
    /// Upper end of the ruling-offset window.
    #[arg(long, default_value_t = 2.0, allow_hyphen_values = true)]
    v_max: f64,
    /// Number of ruling-offset samples.
    #[arg(long, default_value_t = 21)]
    v_count: usize,
}

impl GridArgs {
    fn config(&self) -> Result<GridConfig, AppError> {
        if self.s_count < 5 || self.v_count < 5 {
            return Err(AppError::Validation(
                "grid counts must be at least 5".into(),
            ));
        }
        if self.v_min >= self.v_max || !self.v_min.is_finite() || !self.v_max.is_finite() {
            return Err(AppError::Validation(
                "ruling window must be finite with v_min < v_max".into(),
            ));
        }
        Ok(GridConfig {
            s_count: self.s_count,
            v_min: self.v_min,
            v_max: self.v_max,
            v_count: self.v_count,
        })
    }
}

#[derive(Args)]
struct TolArgs {
    /// Developability threshold on max |K|.
    #[arg(long = "tol-K", default_value_t = 1e-8)]
    tol_k: f64,
    /// Minimality threshold on max |H| (half-trace).
    #[arg(long = "tol-H", default_value_t = 1e-8)]
    tol_h: f64,
    /// Weingarten threshold on the normalized curvature Jacobian.
    #[arg(long = "tol-W", default_value_t = 1e-6)]
    tol_w: f64,
}

impl TolArgs {
    fn tolerances(&self) -> Tolerances {
        Tolerances {
            tol_k: self.tol_k,
            tol_h: self.tol_h,
            tol_w: self.tol_w,
            ..Tolerances::default()
        }
    }
}

#[derive(Args)]
struct FrenetArgs {
    /// Curve spec file.
    #[arg(long)]
    spec: PathBuf,
    /// Number of parameter samples.
    #[arg(long, default_value_t = 41)]
    s_count: usize,
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[command(flatten)]
    tol: TolArgs,
}

#[derive(Args)]
struct SurfaceArgs {
    #[arg(long)]
    spec: PathBuf,
    /// Which indicatrix surface(s) to evaluate.
    #[arg(long, value_enum, default_value_t = KindArg::All)]
    kind: KindArg,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Restrict output to one format (default: both OBJ and CSV).
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    #[command(flatten)]
    tol: TolArgs,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    spec: PathBuf,
    #[arg(long, value_enum, default_value_t = KindArg::All)]
    kind: KindArg,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[command(flatten)]
    tol: TolArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Directory of `.curve` spec files.
    #[arg(long)]
    corpus: PathBuf,
    /// Relative Gaussian-curvature gate for the pass/fail verdict.
    #[arg(long, default_value_t = rulekit::classify::DEFAULT_VERIFY_REL_K)]
    verify_tol: f64,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[command(flatten)]
    tol: TolArgs,
}

enum AppError {
    Io(String),
    Validation(String),
    Numerical(String),
    VerifyMismatch,
}

impl AppError {
    fn code(&self) -> u8 {
        match self {
            AppError::Io(_) => 1,
            AppError::Validation(_) => 2,
            AppError::Numerical(_) => 3,
            AppError::VerifyMismatch => 4,
        }
    }

    fn message(&self) -> String {
        match self {
            AppError::Io(m) | AppError::Validation(m) | AppError::Numerical(m) => m.clone(),
            AppError::VerifyMismatch => {
                "closed-form curvature disagrees with the oracle beyond tolerance".into()
            }
        }
    }
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> Self {
        AppError::Io(e.to_string())
    }
}

impl From<SpecError> for AppError {
    fn from(e: SpecError) -> Self {
        match e {
            SpecError::Io(err) => AppError::Io(err.to_string()),
            other => AppError::Validation(other.to_string()),
        }
    }
}

impl From<FrenetError> for AppError {
    fn from(e: FrenetError) -> Self {
        AppError::Numerical(e.to_string())
    }
}

fn main() -> ExitCode {
    init_thread_pool();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Frenet(args) => cmd_frenet(args),
        Command::Surface(args) => cmd_surface(args),
        Command::Classify(args) => cmd_classify(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.code())
        }
    }
}

/// RULEKIT_THREADS caps grid parallelism; unset means the rayon default.
fn init_thread_pool() {
    if let Ok(v) = std::env::var("RULEKIT_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

fn load_spec(path: &Path, tol: &Tolerances) -> Result<DualCurveSpec, AppError> {
    let spec = DualCurveSpec::from_path(path)?;
    let report = spec.validate(100, tol);
    if !report.pass {
        return Err(AppError::Validation(format!(
            "spec {} is not on the dual unit sphere: {report}",
            path.display()
        )));
    }
    Ok(spec)
}

fn write_out(dir: &Path, name: &str, contents: &str) -> Result<(), AppError> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join(name), contents)?;
    Ok(())
}

fn cmd_frenet(args: FrenetArgs) -> Result<(), AppError> {
    let tol = args.tol.tolerances();
    let spec = load_spec(&args.spec, &tol)?;
    if args.s_count < 2 {
        return Err(AppError::Validation("s-count must be at least 2".into()));
    }

    let mut csv = CsvWriter::new(&[
        "s",
        "kappa",
        "kappa_star",
        "tau",
        "tau_star",
        "speed",
        "speed_star",
        "residual_frenet",
        "residual_orthonormality",
        "residual_moment",
        "residual_tau_split",
    ]);
    for i in 0..args.s_count {
        let s = spec.domain.0
            + (spec.domain.1 - spec.domain.0) * i as f64 / (args.s_count - 1) as f64;
        let fj = frame_jet_at(&spec, s, &tol)?;
        let frame = fj.frame();
        csv.row(&[
            fmt_sig(s),
            fmt_sig(frame.kappa.real),
            fmt_sig(frame.kappa.dual),
            fmt_sig(frame.tau.real),
            fmt_sig(frame.tau.dual),
            fmt_sig(frame.speed.real),
            fmt_sig(frame.speed.dual),
            fmt_sig(frenet_residuals(&fj).max()),
            fmt_sig(orthonormality_residual(&frame)),
            fmt_sig(moment_identities(&frame).max()),
            fmt_sig(frame.tau_cross_residual),
        ]);
    }
    write_out(&args.out, "frenet.csv", &csv.finish())
}

fn grid_csv(grid: &CurvatureGrid) -> String {
    let mut csv = CsvWriter::new(&[
        "s",
        "v",
        "K_oracle",
        "H_half",
        "H_trace",
        "K_paper",
        "H_paper",
        "Y2_norm",
        "singular_flag",
    ]);
    for p in &grid.samples {
        let flag = match p.status {
            PointStatus::Ok => "0",
            PointStatus::Singular => "1",
            PointStatus::Excluded => "2",
        };
        csv.row(&[
            fmt_sig(p.s),
            fmt_sig(p.v),
            fmt_sig(p.k_oracle),
            fmt_sig(p.h_half),
            fmt_sig(p.h_trace),
            fmt_sig(p.k_closed),
            fmt_sig(p.h_closed),
            fmt_sig(p.y2_norm),
            flag.to_string(),
        ]);
    }
    csv.finish()
}

fn cmd_surface(args: SurfaceArgs) -> Result<(), AppError> {
    let tol = args.tol.tolerances();
    let spec = load_spec(&args.spec, &tol)?;
    let grid = args.grid.config()?;

    for kind in args.kind.kinds() {
        let g = curvature_grid(&spec, kind, &grid, BracketInterpretation::CompanionBase, &tol)
            .map_err(classify_to_app)?;
        let stem = format!("surface_{}", kind.short());

        if args.format != Some(FormatArg::Csv) {
            let mesh = ObjMesh {
                positions: g.samples.iter().map(|p| p.position).collect(),
                singular: g
                    .samples
                    .iter()
                    .map(|p| p.status == PointStatus::Singular)
                    .collect(),
                s_values: g.s_values.clone(),
                v_values: g.v_values.clone(),
                name: stem.clone(),
            };
            let (obj, sidecar) = mesh.write();
            write_out(&args.out, &format!("{stem}.obj"), &obj)?;
            write_out(&args.out, &format!("{stem}_singular.txt"), &sidecar)?;
        }
        if args.format != Some(FormatArg::Obj) {
            write_out(&args.out, &format!("{stem}.csv"), &grid_csv(&g))?;
        }
    }
    Ok(())
}

fn classify_to_app(e: ClassifyError) -> AppError {
    AppError::Numerical(e.to_string())
}

fn cmd_classify(args: ClassifyArgs) -> Result<(), AppError> {
    let tol = args.tol.tolerances();
    let spec = load_spec(&args.spec, &tol)?;
    let grid = args.grid.config()?;
    let kinds = args.kind.kinds();
    let single = kinds.len() == 1;

    let mut succeeded = 0usize;
    for kind in kinds {
        let name = format!("classify_{}.json", kind.short());
        match classify_surface(&spec, kind, &grid, BracketInterpretation::CompanionBase, &tol) {
            Ok(report) => {
                let mut text = serde_json::to_string_pretty(&report)
                    .map_err(|e| AppError::Io(e.to_string()))?;
                text.push('\n');
                write_out(&args.out, &name, &text)?;
                succeeded += 1;
            }
            Err(err) if single => return Err(classify_to_app(err)),
            Err(err) => {
                // Degenerate kinds are data when several were requested.
                let text = format!(
                    "{}\n",
                    serde_json::json!({
                        "kind": kind.name(),
                        "error": err.to_string(),
                    })
                );
                write_out(&args.out, &name, &text)?;
            }
        }
    }
    if succeeded == 0 {
        return Err(AppError::Numerical(
            "no requested surface kind could be classified".into(),
        ));
    }
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<(), AppError> {
    let tol = args.tol.tolerances();
    let grid = args.grid.config()?;

    let mut paths: Vec<PathBuf> = std::fs::read_dir(&args.corpus)
        .map_err(|e| AppError::Validation(format!("corpus dir {}: {e}", args.corpus.display())))?
        .filter_map(|entry| {
            let p = entry.ok()?.path();
            (p.is_file() && p.extension().map(|x| x == "curve").unwrap_or(false)).then_some(p)
        })
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(AppError::Validation(format!(
            "corpus dir {} contains no .curve files",
            args.corpus.display()
        )));
    }

    let mut corpus = Vec::new();
    for path in &paths {
        let spec = load_spec(path, &tol)?;
        let name = path
            .file_stem()
            .map(|x| x.to_string_lossy().to_string())
            .unwrap_or_default();
        corpus.push((name, spec));
    }

    let report =
        rulekit::classify::verify_formulas_with_gate(&corpus, &grid, &tol, args.verify_tol)
            .map_err(classify_to_app)?;

    let mut text =
        serde_json::to_string_pretty(&report).map_err(|e| AppError::Io(e.to_string()))?;
    text.push('\n');
    write_out(&args.out, "verify.json", &text)?;

    let mut csv = CsvWriter::new(&[
        "kind",
        "interpretation",
        "member",
        "max_rel_k_disagreement",
        "points_compared",
        "selected",
    ]);
    for k in &report.kinds {
        for interp in &k.interpretations {
            for m in &interp.per_member {
                csv.row(&[
                    k.kind.clone(),
                    interp.interpretation.clone(),
                    m.member.clone(),
                    fmt_sig(m.max_rel_k_disagreement),
                    m.points_compared.to_string(),
                    (k.selected == interp.interpretation).to_string(),
                ]);
            }
        }
    }
    write_out(&args.out, "verify.csv", &csv.finish())?;

    if report.all_pass {
        Ok(())
    } else {
        Err(AppError::VerifyMismatch)
    }
}
