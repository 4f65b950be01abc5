use std::io::Write;
use std::process::{Command, Output, Stdio};

fn lineperc(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_lineperc"))
        .args(args)
        .env_remove("LINEPERC_THREADS")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn theory_record() {
    let v = json(&lineperc(&["theory", "--r", "2"], ""));
    assert!((v["lambda"].as_f64().unwrap() - 0.832555).abs() < 1e-6);
    assert_eq!(v["s"], 1);
    assert_eq!(v["gamma"], "1/1");
    assert_eq!(v["schema_version"], 1);
    assert!(v["build"].as_str().unwrap().starts_with(env!("CARGO_PKG_VERSION")));
}

#[test]
fn corner_block_closure_from_stdin() {
    let points = "1,1\n1,2\n1,3\n2,1\n2,2\n2,3\n3,1\n3,2\n3,3\n";
    let v = json(&lineperc(&["closure", "--n", "8", "--d", "2", "--r", "3", "--points", "-"], points));
    assert_eq!(v["percolates"], true);
    assert_eq!(v["rounds"], 2);
    assert_eq!(v["initial_size"], 9);
    let lines = v["saturated_lines"].as_array().unwrap();
    assert_eq!(lines.len(), 16);
}

#[test]
fn closure_from_file_with_listing() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.txt");
    std::fs::write(&path, "# two points on a row\n1,1\n1,3\n").unwrap();
    let v = json(&lineperc(
        &["closure", "--n", "4", "--r", "2", "--points", path.to_str().unwrap(), "--list"],
        "",
    ));
    assert_eq!(v["percolates"], false);
    assert_eq!(v["infected_count"], 4);
    assert_eq!(v["infected"].as_array().unwrap().len(), 4);
}

#[test]
fn pc_output_is_reproducible() {
    let args = ["pc", "--n", "64", "--d", "2", "--r", "2", "--trials", "100", "--seed", "7"];
    let a = lineperc(&args, "");
    let b = lineperc(&args, "");
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let mut threaded = args.to_vec();
    threaded.extend(["--threads", "3"]);
    assert_eq!(lineperc(&threaded, "").stdout, a.stdout);
}

#[test]
fn csv_outputs_carry_provenance() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("pc.csv");
    let out = lineperc(&["pc", "--n", "32", "--r", "2", "--trials", "50", "--seed", "1", "--csv", csv.to_str().unwrap()], "");
    assert!(out.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().contains("seed=1 trials=50"));
    assert_eq!(lines.next().unwrap(), "rank,p_star");
    let values: Vec<f64> = lines.map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(values.len(), 50);
    assert!(values.windows(2).all(|w| w[0] <= w[1]));

    let out = lineperc(&["preface-stats", "--n", "64", "--r", "2", "--p", "n^-1.5", "--trials", "500"], "");
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# lineperc "));
    assert_eq!(text.lines().nth(1).unwrap(), "classification,preface,slow,count,frequency");
    let total: u64 = text.lines().skip(2).map(|l| l.split(',').nth(3).unwrap().parse::<u64>().unwrap()).sum();
    assert_eq!(total, 500);
}

#[test]
fn sweep_config_file_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.toml");
    let csv = dir.path().join("rows.csv");
    let json_path = dir.path().join("fit.json");
    std::fs::write(
        &cfg,
        format!(
            "d = 2\nr = 2\nn_list = [128, 256, 512]\np = \"n^-1.7\"\ntrials = 2000\nseed = 2\nfit = true\ncsv = {:?}\n",
            csv
        ),
    )
    .unwrap();
    let out = lineperc(&["sweep", "--config", cfg.to_str().unwrap(), "--json", json_path.to_str().unwrap()], "");
    let v = json(&out);
    assert_eq!(v["mode"], "theta");
    assert_eq!(v["trials"], 2000);
    assert!((v["fit"]["predicted_slope"].as_f64().unwrap() + 0.4).abs() < 1e-12);
    assert_eq!(std::fs::read(&json_path).unwrap(), out.stdout);
    assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().nth(1).unwrap(), "n,p,theta,ci_low,ci_high");

    let v = json(&lineperc(&["sweep", "--config", cfg.to_str().unwrap(), "--trials", "300"], ""));
    assert_eq!(v["trials"], 300);
}

#[test]
fn minset_search_reports_witness() {
    let v = json(&lineperc(&["minset", "search", "--n", "4", "--thresholds", "2,3"], ""));
    assert_eq!(v["min_size"], 6);
    assert_eq!(v["witness"].as_array().unwrap().len(), 6);
}

#[test]
fn exit_codes() {
    assert_eq!(lineperc(&["--bogus"], "").status.code(), Some(1));
    assert_eq!(lineperc(&["theta", "--n", "8", "--r", "2", "--p", "2n^-1"], "").status.code(), Some(1));
    assert_eq!(lineperc(&["theta", "--n", "8", "--r", "2", "--p", "1.5"], "").status.code(), Some(1));
    assert_eq!(lineperc(&["sweep", "--d", "2", "--r", "2", "--n-list", "64,32"], "").status.code(), Some(1));
    let refused = lineperc(&["minset", "search", "--n", "6", "--d", "3", "--r", "3"], "");
    assert_eq!(refused.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&refused.stderr).contains("exceeds the limit"));
    let help = lineperc(&["--help"], "");
    assert_eq!(help.status.code(), Some(0));
    for cmd in ["closure", "theta", "pc", "sweep", "theory", "preface-stats", "plane-stats", "minset"] {
        assert!(String::from_utf8_lossy(&help.stdout).contains(cmd), "{cmd}");
    }
}
