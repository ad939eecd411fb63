//! Exit-code contract and output shape of the `rulekit` binary.

use std::path::{Path, PathBuf};
use std::process::Command;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_rulekit")
}

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn run(args: &[&str], out: &Path) -> (i32, String) {
    let output = Command::new(bin())
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .unwrap();
    (
        output.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&output.stderr).to_string(),
    )
}

fn write_spec(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn missing_file_exits_1() {
    let tmp = tempfile::tempdir().unwrap();
    let (code, err) = run(
        &["frenet", "--spec", "/nonexistent/x.curve"],
        tmp.path(),
    );
    assert_eq!(code, 1, "{err}");
}

#[test]
fn malformed_spec_exits_2_with_line_number() {
    let tmp = tempfile::tempdir().unwrap();
    let spec = write_spec(
        tmp.path(),
        "bad.curve",
        "alpha_x = cos(s)\nalpha_y equals sin(s)\n",
    );
    let (code, err) = run(&["frenet", "--spec", spec.to_str().unwrap()], tmp.path());
    assert_eq!(code, 2, "{err}");
    assert!(err.contains("line 2"), "stderr: {err}");
}

#[test]
fn off_sphere_spec_exits_2() {
    let tmp = tempfile::tempdir().unwrap();
    let spec = write_spec(
        tmp.path(),
        "off.curve",
        "alpha_x = 2*cos(s)\nalpha_y = 2*sin(s)\nalpha_z = 0\n\
         alphastar_x = 0\nalphastar_y = 0\nalphastar_z = 0\ndomain = 0, 6\n",
    );
    let (code, err) = run(&["classify", "--spec", spec.to_str().unwrap()], tmp.path());
    assert_eq!(code, 2, "{err}");
}

#[test]
fn degenerate_single_kind_exits_3() {
    let tmp = tempfile::tempdir().unwrap();
    // The circle's binormal line is constant; that surface is a single line.
    let (code, err) = run(
        &[
            "classify",
            "--spec",
            corpus().join("circle.curve").to_str().unwrap(),
            "--kind",
            "b",
        ],
        tmp.path(),
    );
    assert_eq!(code, 3, "{err}");
}

#[test]
fn degenerate_kind_within_all_is_data() {
    let tmp = tempfile::tempdir().unwrap();
    let (code, err) = run(
        &[
            "classify",
            "--spec",
            corpus().join("circle.curve").to_str().unwrap(),
            "--kind",
            "all",
        ],
        tmp.path(),
    );
    assert_eq!(code, 0, "{err}");
    let b: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(tmp.path().join("classify_b.json")).unwrap())
            .unwrap();
    assert!(b["error"].as_str().unwrap().contains("singular"));
    let t: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(tmp.path().join("classify_t.json")).unwrap())
            .unwrap();
    assert_eq!(t["developable"], true);
    assert_eq!(t["minimal"], true);
    assert_eq!(t["weingarten"], true);
}

#[test]
fn empty_corpus_exits_2() {
    let tmp = tempfile::tempdir().unwrap();
    let empty = tmp.path().join("empty");
    std::fs::create_dir(&empty).unwrap();
    let (code, err) = run(
        &["verify", "--corpus", empty.to_str().unwrap()],
        tmp.path(),
    );
    assert_eq!(code, 2, "{err}");
}

#[test]
fn bad_grid_arguments_exit_2() {
    let tmp = tempfile::tempdir().unwrap();
    let (code, _) = run(
        &[
            "surface",
            "--spec",
            corpus().join("circle.curve").to_str().unwrap(),
            "--v-count",
            "3",
        ],
        tmp.path(),
    );
    assert_eq!(code, 2);
    let (code, _) = run(
        &[
            "surface",
            "--spec",
            corpus().join("circle.curve").to_str().unwrap(),
            "--v-min",
            "2",
            "--v-max",
            "-2",
        ],
        tmp.path(),
    );
    assert_eq!(code, 2);
}

#[test]
fn pure_dual_speed_spec_exits_3() {
    let tmp = tempfile::tempdir().unwrap();
    // Constant direction with a growing moment: the real part of the
    // velocity vanishes identically.
    let spec = write_spec(
        tmp.path(),
        "frozen.curve",
        "alpha_x = 1\nalpha_y = 0\nalpha_z = 0\n\
         alphastar_x = 0\nalphastar_y = s\nalphastar_z = 0\ndomain = 0, 1\n",
    );
    let (code, err) = run(&["frenet", "--spec", spec.to_str().unwrap()], tmp.path());
    assert_eq!(code, 3, "{err}");
}

#[test]
fn frenet_csv_has_expected_columns_and_values() {
    let tmp = tempfile::tempdir().unwrap();
    let (code, err) = run(
        &[
            "frenet",
            "--spec",
            corpus().join("circle.curve").to_str().unwrap(),
            "--s-count",
            "5",
        ],
        tmp.path(),
    );
    assert_eq!(code, 0, "{err}");
    let text = std::fs::read_to_string(tmp.path().join("frenet.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "s,kappa,kappa_star,tau,tau_star,speed,speed_star,residual_frenet,\
         residual_orthonormality,residual_moment,residual_tau_split"
    );
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[1], "1.00000000000"); // kappa
    assert_eq!(first[2], "0"); // kappa_star
    assert_eq!(first[3], "0"); // tau
    assert_eq!(text.lines().count(), 6);
}

#[test]
fn surface_outputs_mesh_grid_and_sidecar() {
    let tmp = tempfile::tempdir().unwrap();
    let (code, err) = run(
        &[
            "surface",
            "--spec",
            corpus().join("circle.curve").to_str().unwrap(),
            "--kind",
            "t",
            "--s-count",
            "9",
            "--v-count",
            "9",
        ],
        tmp.path(),
    );
    assert_eq!(code, 0, "{err}");
    let obj = std::fs::read_to_string(tmp.path().join("surface_t.obj")).unwrap();
    // Vertex count is the grid size minus the dropped v = 0 column.
    assert_eq!(obj.matches("\nv ").count(), 81 - 9);
    // The two cell columns touching the dropped column are skipped:
    // (9-1) rows x (8-2) columns x 2 triangles.
    assert_eq!(obj.matches("\nf ").count(), 96);
    let sidecar = std::fs::read_to_string(tmp.path().join("surface_t_singular.txt")).unwrap();
    assert_eq!(sidecar.lines().count(), 9);
    // The circle's tangent surface is the z = 0 plane: every emitted vertex
    // is coplanar, so all face normals are parallel.
    for line in obj.lines().filter(|l| l.starts_with("v ")) {
        let z: f64 = line.split(' ').nth(3).unwrap().parse().unwrap();
        assert!(z.abs() < 1e-12, "non-planar vertex: {line}");
    }

    let csv = std::fs::read_to_string(tmp.path().join("surface_t.csv")).unwrap();
    assert!(csv.starts_with(
        "s,v,K_oracle,H_half,H_trace,K_paper,H_paper,Y2_norm,singular_flag\n"
    ));
    assert_eq!(csv.lines().count(), 1 + 81);

    // Format filter: obj only.
    let only = tempfile::tempdir().unwrap();
    let (code, _) = run(
        &[
            "surface",
            "--spec",
            corpus().join("circle.curve").to_str().unwrap(),
            "--kind",
            "t",
            "--format",
            "obj",
        ],
        only.path(),
    );
    assert_eq!(code, 0);
    assert!(only.path().join("surface_t.obj").exists());
    assert!(!only.path().join("surface_t.csv").exists());
}

#[test]
fn verify_writes_reports_and_exits_0_on_shipped_corpus() {
    let tmp = tempfile::tempdir().unwrap();
    let (code, err) = run(
        &["verify", "--corpus", corpus().to_str().unwrap()],
        tmp.path(),
    );
    assert_eq!(code, 0, "{err}");
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(tmp.path().join("verify.json")).unwrap())
            .unwrap();
    assert_eq!(report["all_pass"], true);
    for kind in report["kinds"].as_array().unwrap() {
        assert_eq!(kind["selected"], "companion_base");
        assert!(!kind["h_diagnostics"]["per_term_max_abs"]
            .as_array()
            .unwrap()
            .is_empty());
    }
    let csv = std::fs::read_to_string(tmp.path().join("verify.csv")).unwrap();
    assert!(csv.starts_with(
        "kind,interpretation,member,max_rel_k_disagreement,points_compared,selected\n"
    ));
}

#[test]
fn thread_cap_does_not_change_output() {
    // RULEKIT_THREADS caps grid parallelism; values must not depend on the
    // schedule.
    let spec = corpus().join("spiral_offset.curve");
    let mut blobs = Vec::new();
    for threads in ["1", "4"] {
        let tmp = tempfile::tempdir().unwrap();
        let status = Command::new(bin())
            .env("RULEKIT_THREADS", threads)
            .args(["surface", "--spec", spec.to_str().unwrap(), "--kind", "n"])
            .arg("--out")
            .arg(tmp.path())
            .status()
            .unwrap();
        assert!(status.success());
        blobs.push(std::fs::read(tmp.path().join("surface_n.csv")).unwrap());
    }
    assert_eq!(blobs[0], blobs[1]);
}

#[test]
fn verify_mismatch_exits_4() {
    // The closed forms track the oracle to ~1e-12 relative on the shipped
    // corpus; a gate below the floating-point floor forces the distinguished
    // mismatch exit while still writing the full report.
    let tmp = tempfile::tempdir().unwrap();
    let (code, err) = run(
        &[
            "verify",
            "--corpus",
            corpus().to_str().unwrap(),
            "--verify-tol",
            "1e-18",
        ],
        tmp.path(),
    );
    assert_eq!(code, 4, "{err}");
    assert!(err.contains("disagrees"), "{err}");
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(tmp.path().join("verify.json")).unwrap())
            .unwrap();
    assert_eq!(report["all_pass"], false);
}

#[test]
fn verify_corpus_of_developables_passes_degenerately() {
    let tmp = tempfile::tempdir().unwrap();
    let mini = tmp.path().join("mini");
    std::fs::create_dir(&mini).unwrap();
    std::fs::copy(corpus().join("circle.curve"), mini.join("circle.curve")).unwrap();
    let (code, err) = run(&["verify", "--corpus", mini.to_str().unwrap()], tmp.path());
    assert_eq!(code, 0, "{err}");
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(tmp.path().join("verify.json")).unwrap())
            .unwrap();
    // The binormal surface never yields comparable points for the circle.
    let notes = report["notes"].as_array().unwrap();
    assert!(
        notes.iter().any(|n| n.as_str().unwrap().contains("degenerate")),
        "{notes:?}"
    );
}
