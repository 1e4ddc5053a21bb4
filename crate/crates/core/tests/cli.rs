use std::path::PathBuf;
use std::process::Command;

use hoffman::cli::{run, EXIT_ERROR, EXIT_INCONCLUSIVE, EXIT_IO, EXIT_OK, EXIT_USAGE};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn hoffman(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("hoffman").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn decompose_c4() {
    let (code, out, _) = hoffman(&["decompose", &fixture("c4_fat.hgf")]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("addends: 2\n"), "{out}");
    assert_eq!(out.matches(" h3").count(), 2, "{out}");
}

#[test]
fn decompose_json() {
    let (code, out, _) = hoffman(&["--format", "json", "decompose", &fixture("c4_fat.hgf")]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let addends = v["addends"].as_array().unwrap();
    assert_eq!(addends.len(), 2);
    assert!(addends.iter().all(|a| a["catalog"] == "h3"));
}

#[test]
fn triangle_covers() {
    let (code, out, _) = hoffman(&["covers", "--family", "h2", "--graph", &fixture("k3.g6")]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("2 equivalence classes\n"), "{out}");
}

#[test]
fn octahedron_covers_json() {
    let (code, out, _) = hoffman(&["--format", "json", "covers", "--family", "h2", "--graph", &fixture("octahedron.hgf")]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["classes"], 2);
}

#[test]
fn search_nh_h2_h5() {
    let (code, out, err) = hoffman(&["search-nh", "--family", "h2,h5", "--max", "9"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("lower bound: 8\n"), "{out}");
    assert!(out.trim_end().ends_with("N_H = 8"), "{out}");
    assert!(err.contains("wall time"), "{err}");
}

#[test]
fn search_nh_not_found_is_inconclusive() {
    let (code, out, _) = hoffman(&["search-nh", "--family", "h2,h5", "--max", "7"]);
    assert_eq!(code, EXIT_INCONCLUSIVE);
    assert!(out.contains("N_H = NOT_FOUND"), "{out}");
}

#[test]
fn verify_exit_codes() {
    let (code, out, _) = hoffman(&["verify", "--family", "h2", "--order", "7"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("verdict: UNIQUE_COVERS"), "{out}");
    let (code, out, _) = hoffman(&["verify", "--family", "h2,h3,h5", "--order", "7"]);
    assert_eq!(code, EXIT_INCONCLUSIVE);
    assert!(out.contains("aut mismatches: 1"), "{out}");
}

#[test]
fn closure_notice_on_stderr() {
    let (code, _, err) = hoffman(&["enum-sums", "--family", "h3", "--order", "2"]);
    assert_eq!(code, EXIT_OK);
    assert!(err.contains("note: using the closure {h2,h3} of {h3}"), "{err}");
}

#[test]
fn domain_errors_exit_one() {
    let (code, _, err) = hoffman(&["verify", "--family", "h5", "--no-closure", "--order", "4"]);
    assert_eq!(code, EXIT_ERROR);
    assert!(err.starts_with("error: MissingH2"), "{err}");
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(hoffman(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(hoffman(&["verify", "--family", "h2"]).0, EXIT_USAGE);
    assert_eq!(hoffman(&["lower-bound", "--family", "h7"]).0, EXIT_USAGE);
}

#[test]
fn missing_file_exits_74() {
    let (code, _, err) = hoffman(&["decompose", "/nonexistent/graph.hgf"]);
    assert_eq!(code, EXIT_IO);
    assert!(err.contains("/nonexistent/graph.hgf"), "{err}");
}

#[test]
fn out_directory_has_members_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("x4");
    let (code, _, _) = hoffman(&["enum-sums", "--family", "h2", "--order", "4", "--out", out_dir.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out_dir.join("manifest.json")).unwrap()).unwrap();
    let certs = manifest["certificates"].as_array().unwrap();
    assert_eq!(manifest["count"], certs.len());
    for c in certs {
        let text = std::fs::read_to_string(out_dir.join(format!("{}.hgf", c.as_str().unwrap()))).unwrap();
        let g = hoffman::io::read_hgf(&text).unwrap();
        assert_eq!(hoffman::canonical_form(&g).hex(), c.as_str().unwrap());
    }
}

#[test]
fn family_from_hgf_file() {
    let h2 = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(h2.path(), hoffman::io::write_hgf(&hoffman::Catalog::H2.graph())).unwrap();
    let (code, out, _) = hoffman(&["lower-bound", "--family", h2.path().to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "7\n");
}

#[test]
fn job_count_does_not_change_output() {
    let bin = env!("CARGO_BIN_EXE_hoffman");
    let runs: Vec<Vec<u8>> = ["1", "3"]
        .iter()
        .map(|j| {
            let o = Command::new(bin)
                .args(["--jobs", j, "enum-line", "--family", "h2,h3", "--order", "6"])
                .output()
                .unwrap();
            assert!(o.status.success());
            o.stdout
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
}

#[test]
fn binary_reads_stdin() {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_hoffman"))
        .arg("aut")
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"Bw\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success());
    assert!(String::from_utf8(o.stdout).unwrap().starts_with("order: 6\n"));
}

#[test]
fn closure_rejects_members_outside_o() {
    let (code, _, err) = hoffman(&["closure", "--family", "h1"]);
    assert_eq!(code, EXIT_ERROR);
    assert!(err.starts_with("error: MemberOutsideO"), "{err}");
}

#[test]
fn verify_json_report() {
    let (code, out, _) = hoffman(&["--format", "json", "verify", "--family", "h2", "--order", "6"]);
    assert_eq!(code, EXIT_INCONCLUSIVE);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "INCONCLUSIVE");
    assert_eq!(v["x_certificates"].as_array().unwrap().len(), v["x_count"].as_u64().unwrap() as usize);
    assert!(v["wall_time_seconds"].as_f64().unwrap() >= 0.0);
}
