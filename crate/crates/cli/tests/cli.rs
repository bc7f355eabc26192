//! End-to-end tests of the command-line interface: exit codes, schema
//! stability, golden values and byte-level determinism.

use std::io::Write;
use std::process::{Command, Output};

fn write_doc(content: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().expect("temp file");
    f.write_all(content.as_bytes()).expect("write");
    f
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polarlam"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

const GLASS_EPOXY: &str =
    r#""material": {"polar": {"T0": 92.38, "T1": 86.97, "R0": 44.86, "R1": 43.82}}"#;

fn glass_epoxy_stack(angles: &str) -> String {
    format!(r#"{{{GLASS_EPOXY}, "stacking_deg": {angles}}}"#)
}

#[test]
fn check_cross_ply_feasible() {
    let doc = write_doc(&glass_epoxy_stack("[0, 90]"));
    let out = run(&["check", doc.path().to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "feasible");
    assert_eq!(v["case_used"], "aligned orthotropic");
    let margins = v["margins"].as_array().unwrap();
    let m8 = margins.iter().find(|m| m["name"] == "aligned.8").unwrap();
    assert!((m8["value"].as_f64().unwrap() - 6594.1443).abs() < 1e-6);
}

#[test]
fn check_unidirectional_reduces() {
    let doc = write_doc(&glass_epoxy_stack("[0, 0, 0]"));
    let out = run(&["check", doc.path().to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["case_used"], "general (uncoupled reduction)");
    assert_eq!(v["laminate"]["coupling_is_zero"], true);
}

#[test]
fn check_exit_codes_cover_the_three_verdicts() {
    let feasible = write_doc(
        r#"{"abd": {"A": {"T0": 92.38, "T1": 86.97, "R0": 0, "R1": 0},
                    "B": {"R0": 0, "R1": 30},
                    "D": {"T0": 92.38, "T1": 86.97, "R0": 0, "R1": 0}}}"#,
    );
    assert_eq!(
        run(&["check", feasible.path().to_str().unwrap()])
            .status
            .code(),
        Some(0)
    );

    let infeasible = write_doc(
        r#"{"abd": {"A": {"T0": 92.38, "T1": 86.97, "R0": 0, "R1": 0},
                    "B": {"R0": 0, "R1": 40.5},
                    "D": {"T0": 92.38, "T1": 86.97, "R0": 0, "R1": 0}}}"#,
    );
    assert_eq!(
        run(&["check", infeasible.path().to_str().unwrap()])
            .status
            .code(),
        Some(3)
    );

    // the coupled isotropic threshold value itself is marginal
    let marginal = write_doc(
        r#"{"abd": {"A": {"T0": 92.38, "T1": 86.97, "R0": 0, "R1": 0},
                    "B": {"R0": 0, "R1": 36.59300616238026},
                    "D": {"T0": 92.38, "T1": 86.97, "R0": 0, "R1": 0}}}"#,
    );
    assert_eq!(
        run(&["check", marginal.path().to_str().unwrap()])
            .status
            .code(),
        Some(4)
    );
}

#[test]
fn forced_case_mismatch_exits_five() {
    let doc = write_doc(&glass_epoxy_stack("[0, 60, -60]"));
    let out = run(&["check", doc.path().to_str().unwrap(), "--case", "isotropic"]);
    assert_eq!(out.status.code(), Some(5));
    let out = run(&["check", doc.path().to_str().unwrap(), "--case", "aligned"]);
    assert_eq!(out.status.code(), Some(5));
    // general applies to anything
    let out = run(&["check", doc.path().to_str().unwrap(), "--case", "general"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn input_errors_exit_two() {
    let bad_json = write_doc("{ not json");
    assert_eq!(
        run(&["check", bad_json.path().to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );

    let unknown_field = write_doc(r#"{"stacking": [0, 90]}"#);
    assert_eq!(
        run(&["check", unknown_field.path().to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );

    let no_material = write_doc(r#"{"stacking_deg": [0, 90]}"#);
    assert_eq!(
        run(&["check", no_material.path().to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );

    let both_shapes = write_doc(&format!(
        r#"{{{GLASS_EPOXY}, "stacking_deg": [0],
            "abd": {{"A": {{"T0": 1, "T1": 1, "R0": 0, "R1": 0}},
                     "B": {{"R0": 0, "R1": 0}},
                     "D": {{"T0": 1, "T1": 1, "R0": 0, "R1": 0}}}}}}"#
    ));
    assert_eq!(
        run(&["check", both_shapes.path().to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn abd_reports_zero_coupling_for_unidirectional() {
    let doc = write_doc(&glass_epoxy_stack("[0, 0]"));
    let out = run(&["abd", doc.path().to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["laminate"]["coupling_is_zero"], true);
    assert_eq!(v["laminate"]["b"]["r0"], 0.0);
    assert_eq!(v["laminate"]["b"]["r1"], 0.0);
    assert!((v["laminate"]["a"]["cartesian"]["t1111"].as_f64().unwrap() - 486.46).abs() < 1e-9);
}

#[test]
fn abd_cross_ply_matches_lamination_values() {
    let doc = write_doc(&glass_epoxy_stack("[0, 90]"));
    let out = run(&["abd", doc.path().to_str().unwrap(), "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let b = &v["laminate"]["b"];
    assert!((b["r1"].as_f64().unwrap() - 21.91).abs() < 1e-9);
    assert_eq!(b["r0"].as_f64().unwrap(), 0.0);
    assert!((b["phi1_deg"].as_f64().unwrap().abs() - 90.0).abs() < 1e-9);
    assert_eq!(v["laminate"]["a"]["symmetry"], "square symmetry");
}

#[test]
fn abd_requires_stacking() {
    let doc = write_doc(
        r#"{"abd": {"A": {"T0": 1, "T1": 1, "R0": 0, "R1": 0},
                    "B": {"R0": 0, "R1": 0},
                    "D": {"T0": 1, "T1": 1, "R0": 0, "R1": 0}}}"#,
    );
    assert_eq!(
        run(&["abd", doc.path().to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn eighteen_ply_coupled_isotropic_detected() {
    let doc = write_doc(&glass_epoxy_stack(
        "[0, 60, -60, -60, 60, 60, -60, 0, 60, 60, 0, -60, 0, -60, 0, 0, -60, 60]",
    ));
    let out = run(&["check", doc.path().to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["case_used"], "coupled isotropic");
    assert_eq!(v["laminate"]["a"]["symmetry"], "isotropy");
    assert_eq!(v["laminate"]["d"]["symmetry"], "isotropy");
    assert_eq!(v["laminate"]["coupling_is_zero"], false);
}

#[test]
fn diagram_golden_values() {
    let doc = write_doc(&glass_epoxy_stack("[0]"));
    let out = run(&[
        "diagram",
        doc.path().to_str().unwrap(),
        "--tensor",
        "A",
        "--component",
        "T1111",
        "--step-deg",
        "90",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<String> = stdout(&out).lines().map(str::to_string).collect();
    assert_eq!(lines[0], "theta_deg,value");
    assert_eq!(lines.len(), 6); // header + 0, 90, 180, 270, 360
    let value = |line: &str| line.split(',').nth(1).unwrap().parse::<f64>().unwrap();
    assert!((value(&lines[1]) - 486.46).abs() < 1e-9);
    assert!((value(&lines[2]) - 135.9).abs() < 1e-9);
    assert!((value(&lines[5]) - 486.46).abs() < 1e-9);
}

#[test]
fn diagram_coupling_of_unidirectional_is_zero() {
    let doc = write_doc(&glass_epoxy_stack("[0, 0]"));
    let out = run(&[
        "diagram",
        doc.path().to_str().unwrap(),
        "--tensor",
        "B",
        "--component",
        "T1212",
        "--step-deg",
        "45",
    ]);
    for line in stdout(&out).lines().skip(1) {
        let v: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert_eq!(v, 0.0);
    }
}

#[test]
fn scan_boundary_and_grid_errors() {
    let doc = write_doc(
        r#"{"abd": {"A": {"T0": 92.38, "T1": 86.97, "R0": 0, "R1": 0},
                    "B": {"R0": 0, "R1": 0},
                    "D": {"T0": 92.38, "T1": 86.97, "R0": 0, "R1": 0}}}"#,
    );
    let path = doc.path().to_str().unwrap();
    let out = run(&["scan", path, "--grid", "r1b=36:37:11"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    // feasible up to the sixth row (36.5), infeasible from 36.6 on
    let verdicts: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(2).unwrap())
        .collect();
    assert_eq!(verdicts.len(), 11);
    assert!(verdicts[..6].iter().all(|v| *v == "feasible"));
    assert!(verdicts[6..].iter().all(|v| *v == "infeasible"));

    assert_eq!(
        run(&["scan", path, "--grid", "t0=0:1:3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["scan", path, "--grid", "r1b=0:1"]).status.code(),
        Some(2)
    );

    let stack_doc = write_doc(&glass_epoxy_stack("[0, 90]"));
    assert_eq!(
        run(&[
            "scan",
            stack_doc.path().to_str().unwrap(),
            "--grid",
            "r1b=0:1:2"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn scan_four_harmonic_axis_boundary() {
    // square-symmetric layer triple: feasibility along the r0b axis ends
    // at T0/sqrt(3) for the isotropic-extension configuration
    let doc = write_doc(
        r#"{"abd": {"A": {"T0": 1.0, "T1": 0.9, "R0": 0, "R1": 0},
                    "B": {"R0": 0, "R1": 0},
                    "D": {"T0": 1.0, "T1": 0.9, "R0": 0, "R1": 0}}}"#,
    );
    let out = run(&[
        "scan",
        doc.path().to_str().unwrap(),
        "--grid",
        "r0b=0.5:0.65:16",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let boundary = 1.0 / 3.0_f64.sqrt(); // 0.5774
    for line in stdout(&out).lines().skip(1) {
        let mut cells = line.split(',');
        let r0b: f64 = cells.next().unwrap().parse().unwrap();
        let _r1b = cells.next().unwrap();
        let verdict = cells.next().unwrap();
        if r0b < boundary - 1e-6 {
            assert_eq!(verdict, "feasible", "at r0b={r0b}");
        } else if r0b > boundary + 1e-6 {
            assert_eq!(verdict, "infeasible", "at r0b={r0b}");
        }
    }
}

#[test]
fn scan_probe_conjecture_columns() {
    let doc = write_doc(
        r#"{"abd": {"A": {"T0": 1.0, "T1": 0.9, "R0": 0.2, "R1": 0.1},
                    "B": {"R0": 0, "R1": 0},
                    "D": {"T0": 1.0, "T1": 0.9, "R0": 0.2, "R1": 0.1}}}"#,
    );
    let path = doc.path().to_str().unwrap();
    let out = run(&[
        "scan",
        path,
        "--grid",
        "r1b=0.05:0.15:2",
        "--probe-conjecture",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "r0b,r1b,verdict,case_used,worst_margin,worst_normalized,agree_general,probe_violations"
    );
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells.len(), 8);
        assert_eq!(cells[6], "true", "closed and general paths agree at {line}");
        assert_eq!(cells[7], "0", "no counterexample candidates at {line}");
    }
    // deterministic output
    let again = run(&[
        "scan",
        path,
        "--grid",
        "r1b=0.05:0.15:2",
        "--probe-conjecture",
    ]);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn verify_single_input_and_corrupted_tolerance() {
    let doc = write_doc(&glass_epoxy_stack("[0, 45, 90]"));
    let out = run(&["verify", doc.path().to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["agreements"], 1);
    assert_eq!(v["disagreements"].as_array().unwrap().len(), 0);

    let out = run(&[
        "verify",
        doc.path().to_str().unwrap(),
        "--json",
        "--tol",
        "1e3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["marginal"], 1);
    assert!(v["note"].as_str().unwrap().contains("marginal"));
}

#[test]
fn verify_random_stream_agrees() {
    let out = run(&[
        "verify",
        "--random",
        "--samples",
        "60",
        "--seed",
        "1",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["agreements"], 60);
}

#[test]
fn classify_reports_all_tensors() {
    let doc = write_doc(&glass_epoxy_stack("[0, 90]"));
    let out = run(&["classify", doc.path().to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["material"], "ordinary orthotropy (k=0)");
    assert_eq!(v["a"], "square symmetry");
    assert_eq!(v["b"], "R0-orthotropy");
}

#[test]
fn output_is_byte_deterministic() {
    let doc = write_doc(&glass_epoxy_stack("[0, 30, 90, -45]"));
    let path = doc.path().to_str().unwrap();
    let a = run(&["check", path, "--json"]);
    let b = run(&["check", path, "--json"]);
    assert_eq!(a.stdout, b.stdout);

    let a = run(&[
        "verify",
        "--random",
        "--samples",
        "10",
        "--seed",
        "7",
        "--json",
    ]);
    let b = run(&[
        "verify",
        "--random",
        "--samples",
        "10",
        "--seed",
        "7",
        "--json",
    ]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn stdin_input_accepted() {
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_polarlam"))
        .args(["check", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::null())
        .spawn()
        .unwrap();
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(glass_epoxy_stack("[0, 90]").as_bytes())
        .unwrap();
    let status = child.wait().unwrap();
    assert_eq!(status.code(), Some(0));
}

#[test]
fn engineering_material_pipeline() {
    let doc = write_doc(
        r#"{"material": {"engineering": {"E1": 181, "E2": 10.3, "G12": 7.17, "nu12": 0.28}},
            "stacking_deg": [0, 90, 90, 0]}"#,
    );
    let out = run(&["check", doc.path().to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // symmetric stack: no coupling
    assert_eq!(v["case_used"], "general (uncoupled reduction)");
}

#[test]
fn thickness_flag_overrides_document() {
    let doc = write_doc(&glass_epoxy_stack("[0, 90]"));
    let out = run(&[
        "check",
        doc.path().to_str().unwrap(),
        "--json",
        "--h",
        "2.0",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["laminate"]["thickness"], 2.0);
}
