//! Drives the command-line front end in-process with a sweep config file.

use std::io::Write;

fn main() {
    let dir = std::env::temp_dir().join("lineperc-sweep-example");
    std::fs::create_dir_all(&dir).unwrap();
    let config = dir.join("sweep.toml");
    let csv = dir.join("sweep.csv");
    std::fs::write(
        &config,
        format!("d = 2\nr = 2\nn_list = [64, 128, 256, 512]\ntrials = 500\nseed = 5\nfit = true\ncsv = {:?}\n", csv),
    )
    .unwrap();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = lineperc::cli::run(
        ["lineperc", "sweep", "--config", config.to_str().unwrap()],
        &mut out,
        &mut std::io::empty(),
        &mut err,
    );
    std::io::stdout().write_all(&out).unwrap();
    std::io::stderr().write_all(&err).unwrap();
    println!("exit {code}\n{}", std::fs::read_to_string(&csv).unwrap());
}
