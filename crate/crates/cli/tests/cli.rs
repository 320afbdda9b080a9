use std::process::{Command, Output};

fn ramsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ramsum"))
        .args(args)
        .env_remove("RAMSUM_ZERO_TABLE")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// CSV lines after the '#' manifest block.
fn body(text: &str) -> Vec<String> {
    text.lines().filter(|l| !l.starts_with('#')).map(str::to_string).collect()
}

fn without_timestamp(text: &str) -> String {
    text.lines().filter(|l| !l.starts_with("# timestamp:")).collect::<Vec<_>>().join("\n")
}

#[test]
fn csum_mobius_rows() {
    let out = ramsum(&["csum", "--n", "1", "--beta", "1", "--qmax", "5"]);
    assert!(out.status.success());
    assert_eq!(body(&stdout(&out)), ["q,c_q", "1,1", "2,-1", "3,-1", "4,0", "5,-1"]);
}

#[test]
fn csum_beta_two_last_row() {
    let out = ramsum(&["csum", "--n", "16", "--beta", "2", "--qmax", "4"]);
    assert!(out.status.success());
    assert_eq!(body(&stdout(&out)).last().unwrap(), "4,12");
}

#[test]
fn manifest_block() {
    let text = stdout(&ramsum(&["csum", "--n", "6", "--qmax", "3"]));
    let manifest: Vec<&str> = text.lines().take_while(|l| l.starts_with('#')).collect();
    assert_eq!(manifest.len(), 5);
    assert!(manifest[1].contains("csum"));
    assert!(manifest[2].contains("n=6"));
    assert!(manifest[4].starts_with("# timestamp:"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(ramsum(&["csum", "--n", "1", "--beta", "0", "--qmax", "5"]).status.code(), Some(2));
    assert_eq!(ramsum(&["series", "--n", "1", "--s", "2+xi", "--qmax", "5"]).status.code(), Some(2));
    assert_eq!(
        ramsum(&["explicit-c", "--n", "1", "--xmin", "5", "--xmax", "6", "--pairs", "101"]).status.code(),
        Some(2)
    );
    assert_eq!(
        ramsum(&["explicit-c", "--n", "1", "--xmin", "5", "--xmax", "6", "--table", "/nonexistent/zeros.txt"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(ramsum(&["explicit-psi", "--n", "6", "--xmin", "3", "--xmax", "4"]).status.code(), Some(2));
}

#[test]
fn numeric_failures_exit_three() {
    let out = ramsum(&["series", "--n", "1", "--s", "0.5+14.134725141734693i", "--cutoffs", "10"]);
    assert_eq!(out.status.code(), Some(3));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "14.134725141734693\n15.0\n").unwrap();
    let out = ramsum(&["zeros", "verify", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let rows = body(&stdout(&out));
    assert!(rows[1].ends_with(",true"));
    assert!(rows[2].ends_with(",false"));
}

#[test]
fn explicit_c_is_deterministic() {
    let args = ["explicit-c", "--n", "12", "--xmin", "5.5", "--xmax", "40.5", "--pairs", "25"];
    let a = stdout(&ramsum(&args));
    let b = stdout(&ramsum(&args));
    assert_eq!(without_timestamp(&a), without_timestamp(&b));
    let rows = body(&a);
    assert_eq!(rows[0], "x,actual_sharp,formula,residual");
    assert_eq!(rows.len(), 37);
    assert!(rows[1].starts_with("5.5,"));
}

#[test]
fn out_flag_and_table_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("zeros.txt");
    let out = ramsum(&["zeros", "dump", "bundled", "--out", dump.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&dump).unwrap();
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 100);

    let args = ["explicit-c", "--n", "12", "--xmin", "10.5", "--xmax", "12.5"];
    let bundled = body(&stdout(&ramsum(&args)));
    let mut with_file = args.to_vec();
    with_file.extend(["--table", dump.to_str().unwrap()]);
    assert_eq!(body(&stdout(&ramsum(&with_file))), bundled);

    let env_run = Command::new(env!("CARGO_BIN_EXE_ramsum"))
        .args(args)
        .env("RAMSUM_ZERO_TABLE", &dump)
        .output()
        .unwrap();
    let text = stdout(&env_run);
    assert!(text.contains(dump.to_str().unwrap()));
    assert_eq!(body(&text), bundled);
}

#[test]
fn refine_recovers_zeros() {
    let dir = tempfile::tempdir().unwrap();
    let seeds = dir.path().join("seeds.txt");
    std::fs::write(&seeds, "14.13\n21.02\n").unwrap();
    let out = ramsum(&["zeros", "refine", seeds.to_str().unwrap()]);
    assert!(out.status.success());
    let rows = body(&stdout(&out));
    let gamma: f64 = rows[1].split(',').nth(2).unwrap().parse().unwrap();
    assert!((gamma - 14.134725141734693).abs() < 1e-9);
}

#[test]
fn bartz_fe_row() {
    let out = ramsum(&["bartz", "fe", "--n", "1", "--beta", "1", "--z", "2+1i"]);
    assert!(out.status.success());
    let rows = body(&stdout(&out));
    assert_eq!(rows.len(), 2);
    let residual: f64 = rows[1].split(',').nth(10).unwrap().parse().unwrap();
    assert!(residual < 1e-3);
}

#[test]
fn growth_row() {
    let out = ramsum(&["growth", "--n", "1", "--beta", "1", "--xmax", "10000"]);
    assert!(out.status.success());
    let rows = body(&stdout(&out));
    assert_eq!(rows[0], "n,beta,xmax,exponent,degenerate_tail");
    let exponent: f64 = rows[1].split(',').nth(3).unwrap().parse().unwrap();
    assert!(exponent > 0.2 && exponent < 0.8);
}

#[test]
fn series_every_cutoff() {
    let out = ramsum(&["series", "--n", "24", "--beta", "1", "--s", "1", "--qmax", "50"]);
    assert!(out.status.success());
    let rows = body(&stdout(&out));
    assert_eq!(rows.len(), 51);
    assert_eq!(rows[0], "Q,partial_re,partial_im,target_re,target_im,residual");
}
