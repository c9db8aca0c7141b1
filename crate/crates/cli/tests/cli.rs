use glq_cli::{run, EXIT_OK, EXIT_USAGE, EXIT_VERIFY_FAILED};

fn glq(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["glq"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn reps_csv_has_eight_rows() {
    let (code, out, _) = glq(&["reps", "--q", "3", "--n", "2", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "id,dim,generic,cuspidal,central,dual,orbit,support");
    assert_eq!(lines.len(), 9);
    assert_eq!(lines.iter().filter(|l| l.contains(",true,true,")).count(), 3);
}

#[test]
fn gamma_rows_and_schema() {
    let (code, out, _) = glq(&["gamma", "--q", "3", "--n", "2", "--m", "1", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), "q,n,m,pi_id,sigma_id,psi_a,method,re,im,abs,provenance");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 12);
    assert!(rows.iter().all(|r| r.contains("intertwining_oracle delta=")));
}

#[test]
fn output_is_deterministic() {
    let a = glq(&["gamma", "--q", "2", "--n", "2", "--m", "2", "--format", "json"]);
    let b = glq(&["gamma", "--q", "2", "--n", "2", "--m", "2", "--format", "json"]);
    assert_eq!(a.1, b.1);
    let a = glq(&["verify", "thm.kondo", "--scope", "2:3", "--format", "json"]);
    let b = glq(&["verify", "kondo", "--scope", "2:3", "--format", "json", "--jobs", "2"]);
    assert_eq!(a.0, EXIT_OK);
    assert_eq!(a.1, b.1);
}

#[test]
fn verify_appendix_passes() {
    let (code, out, _) = glq(&["verify", "appendix_gamma_pi_pidual", "--scope", "2:3,2:5,3:2"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("PASS"));
}

#[test]
fn failing_verification_exits_two() {
    let (code, out, err) = glq(&["verify", "rem.three_block_simple", "--scope", "3:2", "--tolerance", "1e-300"]);
    assert_eq!(code, EXIT_VERIFY_FAILED, "{out}{err}");
}

#[test]
fn usage_and_envelope_errors_exit_one() {
    assert_eq!(glq(&["reps", "--q", "3"]).0, EXIT_USAGE);
    let (code, _, err) = glq(&["reps", "--q", "3", "--n", "4"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("exceeds"), "{err}");
    assert_eq!(glq(&["reps", "--q", "6", "--n", "2"]).0, EXIT_USAGE);
    assert_eq!(glq(&["verify", "thm.unknown"]).0, EXIT_USAGE);
    assert_eq!(glq(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(glq(&["gamma", "--q", "3", "--n", "2"]).0, EXIT_USAGE);
    assert_eq!(glq(&["reps", "--q", "3", "--n", "2", "--format", "xml"]).0, EXIT_USAGE);
}

#[test]
fn cache_dir_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let (code, first, _) = glq(&["table", "--q", "4", "--n", "2", "--cache-dir", d]);
    assert_eq!(code, EXIT_OK);
    assert!(dir.path().join("gl2_f4.glq").exists());
    let (_, second, _) = glq(&["table", "--q", "4", "--n", "2", "--cache-dir", d]);
    assert_eq!(first, second);
}

#[test]
fn bessel_and_kloosterman() {
    let (code, out, _) = glq(&["bessel", "--q", "2", "--n", "3", "--domain", "three_block", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.lines().count() > 1);
    let (code, out, _) = glq(&["kloosterman", "--q", "5", "--n", "2", "--c", "1..2", "--format", "csv"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 1 + 20 * 2);
}
