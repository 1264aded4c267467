use std::path::PathBuf;
use std::process::Command;

use pemb_cli::{
    cmd_bench, cmd_build, cmd_generate, cmd_query, load_compact, BenchOptions, QueryOp,
};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/fixtures")
        .join(name)
}

fn pemb() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pemb"))
}

#[test]
fn generate_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.pg"), dir.path().join("b.pg"));
    cmd_generate(2, 9, &a).unwrap();
    cmd_generate(2, 9, &b).unwrap();
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text.lines().next(), Some("pg 4 5"));
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    assert!(cmd_generate(1, 0, &a).is_err());
}

#[test]
fn fig1_build_reproduces_reference_bits() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig1.pemb");
    for seq in [false, true] {
        cmd_build(
            &fixture("fig1.pg"),
            4,
            seq,
            true,
            Some(&fixture("fig1.tree")),
            true,
            &out,
        )
        .unwrap();
        let c = load_compact(&out).unwrap();
        assert_eq!(c.a().raw().to_string(), "0110110101110010110100010100");
        assert_eq!(c.b().raw().to_string(), "00101100110011");
        assert_eq!(c.bstar().raw().to_string(), "01001001110101");
    }
    // the fixture has a loop at vertex 1, which is refused unless allowed
    assert!(cmd_build(&fixture("fig1.pg"), 1, true, true, None, false, &out).is_err());
}

#[test]
fn seq_and_par_files_are_identical() {
    let dir = tempfile::tempdir().unwrap();
    let pg = dir.path().join("g.pg");
    cmd_generate(25, 3, &pg).unwrap();
    let (s, p) = (dir.path().join("s.pemb"), dir.path().join("p.pemb"));
    let line = cmd_build(&pg, 1, true, true, None, false, &s).unwrap();
    assert!(line.starts_with("n=625 m=1776 mode=seq"), "{line}");
    cmd_build(&pg, 4, false, true, None, false, &p).unwrap();
    assert_eq!(std::fs::read(&s).unwrap(), std::fs::read(&p).unwrap());
}

#[test]
fn queries_on_small_files() {
    let dir = tempfile::tempdir().unwrap();
    let pg = dir.path().join("edge.pg");
    std::fs::write(&pg, "pg 2 1\n1 2 2\n2 1 1\n").unwrap();
    let out = dir.path().join("edge.pemb");
    cmd_build(&pg, 1, false, true, None, false, &out).unwrap();
    assert_eq!(cmd_query(&out, QueryOp::Counting, 1).unwrap(), "1");
    assert_eq!(cmd_query(&out, QueryOp::Listing, 2).unwrap(), "1");
    assert!(cmd_query(&out, QueryOp::Listing, 3).is_err());

    let fig = dir.path().join("fig1.pemb");
    cmd_build(
        &fixture("fig1.pg"),
        1,
        true,
        true,
        Some(&fixture("fig1.tree")),
        true,
        &fig,
    )
    .unwrap();
    let c = load_compact(&fig).unwrap();
    let orbit: Vec<usize> = c.face_ticks(1).collect();
    assert!(orbit.len() >= 3, "{orbit:?}");
    for (k, &t) in orbit.iter().enumerate() {
        let again: Vec<usize> = c.face_ticks(t).collect();
        let rotated: Vec<usize> = orbit[k..].iter().chain(&orbit[..k]).copied().collect();
        assert_eq!(again, rotated);
    }
    let printed = cmd_query(&fig, QueryOp::Face, 1).unwrap();
    assert_eq!(printed.split(' ').count(), orbit.len());
}

#[test]
fn bench_writes_one_row_per_phase() {
    let dir = tempfile::tempdir().unwrap();
    let pg = dir.path().join("g.pg");
    cmd_generate(20, 1, &pg).unwrap();
    let csv_path = dir.path().join("bench.csv");
    let options = BenchOptions {
        reps: 5,
        query_reps: 0,
        allow_loops: false,
    };
    let rows = cmd_bench(&pg, "grid20", &[1, 2, 4], &options, &csv_path).unwrap();
    assert_eq!(rows, 3 * 7 + 7);

    let mut reader = csv::Reader::from_path(&csv_path).unwrap();
    let headers = reader.headers().unwrap().clone();
    assert_eq!(
        headers.iter().collect::<Vec<_>>(),
        [
            "dataset",
            "n",
            "m",
            "mode",
            "threads",
            "effective_threads",
            "phase",
            "median_seconds",
            "peak_bytes",
            "os_peak_bytes",
            "payload_bits",
            "support_bits"
        ]
    );
    let records: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(records.len(), rows);
    for r in &records {
        assert_eq!(&r[10], (4 * 1121).to_string().as_str());
        let secs = &r[7];
        assert_eq!(secs.split('.').nth(1).map(str::len), Some(6), "{secs}");
        assert!(secs.parse::<f64>().unwrap() >= 0.0);
    }
    assert_eq!(records.iter().filter(|r| &r[3] == "seq").count(), 7);

    let options = BenchOptions {
        reps: 1,
        query_reps: 2,
        allow_loops: false,
    };
    assert_eq!(
        cmd_bench(&pg, "grid20", &[2], &options, &csv_path).unwrap(),
        7 + 7 + 3
    );
}

#[test]
fn binary_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let pg = dir.path().join("g.pg");
    let pe = dir.path().join("g.pemb");
    let status = pemb()
        .args(["generate", "--side", "5", "--seed", "2", "--out"])
        .arg(&pg)
        .status()
        .unwrap();
    assert!(status.success());
    let out = pemb()
        .args(["build", "--deterministic", "--in"])
        .arg(&pg)
        .arg("--out")
        .arg(&pe)
        .env("PEMB_THREADS", "3")
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stdout).contains("threads=3"));

    let out = pemb()
        .args(["query", "--op", "counting", "--arg", "1", "--in"])
        .arg(&pe)
        .output()
        .unwrap();
    assert!(out.status.success());
    let degree: usize = String::from_utf8_lossy(&out.stdout).trim().parse().unwrap();
    assert!(degree >= 2);

    let out = pemb()
        .args(["build", "--threads", "0", "--in"])
        .arg(&pg)
        .arg("--out")
        .arg(&pe)
        .output()
        .unwrap();
    assert!(!out.status.success());
    let out = pemb()
        .args(["query", "--op", "listing", "--arg", "99", "--in"])
        .arg(&pe)
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("out of range"));
}
