//! Commands behind the `pemb` binary.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use anyhow::{bail, ensure, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use pemb::construction::{construct, construct_sequential, read_pemb, write_pemb, Phase, Profile};
use pemb::embedding::{
    generate_grid_triangulation, parse_embedding_with, parse_tree, write_embedding, ParseOptions,
};
use pemb::memory::os_peak_bytes;
use pemb::tree::build_tree_adjacency;
use pemb::{build_compact, sequential_build, CompactEmbedding, PlanarEmbedding};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "pemb",
    version,
    about = "Compact planar embeddings: build, query, benchmark"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a randomly triangulated G x G grid as a .pg file.
    Generate {
        #[arg(long)]
        side: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Encode a .pg embedding into a PEMB1 file.
    Build {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, env = "PEMB_THREADS", default_value_t = default_threads(), value_parser = clap::value_parser!(u16).range(1..))]
        threads: u16,
        /// Use the sequential traversal instead of the parallel algorithm.
        #[arg(long)]
        seq: bool,
        /// Use the DFS spanning tree so the output is reproducible.
        #[arg(long)]
        deterministic: bool,
        /// Use the spanning tree in this .tree file.
        #[arg(long)]
        tree: Option<PathBuf>,
        /// Accept self-loops in the input.
        #[arg(long)]
        allow_loops: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a navigation query against a PEMB1 file.
    Query {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        op: QueryOp,
        /// Vertex for counting/listing, edge tick for face.
        #[arg(long)]
        arg: usize,
    },
    /// Time construction over several thread counts and write a CSV.
    Bench {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "1,2,4,8", value_parser = clap::value_parser!(u16).range(1..))]
        threads: Vec<u16>,
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
        reps: u32,
        #[arg(long)]
        csv: PathBuf,
        /// Dataset name for the CSV; defaults to the input file stem.
        #[arg(long)]
        dataset: Option<String>,
        /// Also time counting/listing/face queries, this many times per sample.
        #[arg(long, default_value_t = 0)]
        query_reps: u32,
        #[arg(long)]
        allow_loops: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum QueryOp {
    Counting,
    Listing,
    Face,
}

fn default_threads() -> u16 {
    std::thread::available_parallelism().map_or(1, |n| n.get().min(u16::MAX as usize) as u16)
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Generate {
            side,
            seed,
            out: path,
        } => cmd_generate(side, seed, &path),
        Command::Build {
            input,
            threads,
            seq,
            deterministic,
            tree,
            allow_loops,
            out: path,
        } => {
            let line = cmd_build(
                &input,
                threads as usize,
                seq,
                deterministic,
                tree.as_deref(),
                allow_loops,
                &path,
            )?;
            writeln!(out, "{line}")?;
            Ok(())
        }
        Command::Query { input, op, arg } => {
            writeln!(out, "{}", cmd_query(&input, op, arg)?)?;
            Ok(())
        }
        Command::Bench {
            input,
            threads,
            reps,
            csv,
            dataset,
            query_reps,
            allow_loops,
        } => {
            let threads: Vec<usize> = threads.into_iter().map(usize::from).collect();
            let dataset = dataset.unwrap_or_else(|| {
                input
                    .file_stem()
                    .map_or_else(|| "input".into(), |s| s.to_string_lossy().into_owned())
            });
            let options = BenchOptions {
                reps: reps as usize,
                query_reps: query_reps as usize,
                allow_loops,
            };
            let rows = cmd_bench(&input, &dataset, &threads, &options, &csv)?;
            writeln!(out, "wrote {rows} rows to {}", csv.display())?;
            Ok(())
        }
    }
}

pub fn cmd_generate(side: usize, seed: u64, out: &Path) -> Result<()> {
    let g = generate_grid_triangulation(side, seed)?;
    std::fs::write(out, write_embedding(&g)).with_context(|| format!("writing {}", out.display()))
}

fn load_embedding(path: &Path, allow_loops: bool) -> Result<PlanarEmbedding> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let options = ParseOptions {
        allow_self_loops: allow_loops,
    };
    parse_embedding_with(&text, options).with_context(|| format!("parsing {}", path.display()))
}

/// Builds and writes a PEMB1 file; returns a one-line summary.
pub fn cmd_build(
    input: &Path,
    threads: usize,
    seq: bool,
    deterministic: bool,
    tree: Option<&Path>,
    allow_loops: bool,
    out: &Path,
) -> Result<String> {
    ensure!(threads >= 1, "--threads must be at least 1");
    let g = load_embedding(input, allow_loops)?;
    let start = Instant::now();
    let compact = match (tree, seq) {
        (Some(path), seq) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let parents =
                parse_tree(&text).with_context(|| format!("parsing {}", path.display()))?;
            if seq {
                sequential_build(&g, &parents)?
            } else {
                build_compact(&g, &build_tree_adjacency(&g, &parents, threads)?, threads)?
            }
        }
        (None, true) => construct_sequential(&g)?.0,
        (None, false) => construct(&g, threads, deterministic)?.0,
    };
    let seconds = start.elapsed().as_secs_f64();
    let file = File::create(out).with_context(|| format!("creating {}", out.display()))?;
    write_pemb(&compact, BufWriter::new(file))
        .with_context(|| format!("writing {}", out.display()))?;
    let mode = if seq { "seq" } else { "par" };
    Ok(format!(
        "n={} m={} mode={mode} threads={} seconds={seconds:.6} payload_bits={} support_bits={}",
        compact.n(),
        compact.m(),
        if seq { 1 } else { threads },
        compact.payload_bits(),
        compact.support_bits()
    ))
}

pub fn load_compact(path: &Path) -> Result<CompactEmbedding> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    read_pemb(BufReader::new(file), 1).with_context(|| format!("reading {}", path.display()))
}

pub fn cmd_query(input: &Path, op: QueryOp, arg: usize) -> Result<String> {
    let c = load_compact(input)?;
    let join = |v: Vec<usize>| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    Ok(match op {
        QueryOp::Counting => c.try_counting(arg)?.to_string(),
        QueryOp::Listing => join(c.try_listing(arg)?),
        QueryOp::Face => join(c.try_face(arg)?),
    })
}

/// One CSV line of benchmark output.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRecord {
    pub dataset: String,
    pub n: usize,
    pub m: usize,
    pub mode: String,
    pub threads: usize,
    pub effective_threads: usize,
    pub phase: String,
    pub median_seconds: String,
    pub peak_bytes: usize,
    pub os_peak_bytes: Option<usize>,
    pub payload_bits: usize,
    pub support_bits: usize,
}

#[derive(Clone, Debug)]
pub struct BenchOptions {
    pub reps: usize,
    pub query_reps: usize,
    pub allow_loops: bool,
}

fn median(mut xs: Vec<Duration>) -> Duration {
    xs.sort();
    xs[xs.len() / 2]
}

/// Runs the benchmark and writes the CSV; returns the number of data rows.
pub fn cmd_bench(
    input: &Path,
    dataset: &str,
    threads: &[usize],
    options: &BenchOptions,
    csv_path: &Path,
) -> Result<usize> {
    ensure!(options.reps >= 1, "--reps must be at least 1");
    if threads.is_empty() {
        bail!("--threads needs at least one count");
    }
    let g = load_embedding(input, options.allow_loops)?;
    let cores = default_threads() as usize;
    let mut rows = Vec::new();

    let mut emit = |mode: &str,
                    requested: usize,
                    effective: usize,
                    runs: &[(CompactEmbedding, Profile, Duration)]| {
        let c = &runs[0].0;
        let peak = runs.iter().map(|r| r.1.memory.peak()).max().unwrap_or(0);
        let record = |phase: &str, seconds: Duration| BenchRecord {
            dataset: dataset.to_string(),
            n: c.n(),
            m: c.m(),
            mode: mode.to_string(),
            threads: requested,
            effective_threads: effective,
            phase: phase.to_string(),
            median_seconds: format!("{:.6}", seconds.as_secs_f64()),
            peak_bytes: peak,
            os_peak_bytes: os_peak_bytes(),
            payload_bits: c.payload_bits(),
            support_bits: c.support_bits(),
        };
        for phase in Phase::ALL {
            rows.push(record(
                phase.name(),
                median(runs.iter().map(|r| r.1.time(phase)).collect()),
            ));
        }
        rows.push(record("total", median(runs.iter().map(|r| r.2).collect())));
    };

    let timed = |f: &dyn Fn() -> Result<(CompactEmbedding, Profile)>| -> Result<(CompactEmbedding, Profile, Duration)> {
        let start = Instant::now();
        let (c, p) = f()?;
        Ok((c, p, start.elapsed()))
    };

    let seq_runs = (0..options.reps)
        .map(|_| timed(&|| Ok(construct_sequential(&g)?)))
        .collect::<Result<Vec<_>>>()?;
    emit("seq", 1, 1, &seq_runs);
    let reference = seq_runs.into_iter().next().map(|r| r.0);
    for &p in threads {
        let effective = p.min(cores);
        let runs = (0..options.reps)
            .map(|_| timed(&|| Ok(construct(&g, effective, false)?)))
            .collect::<Result<Vec<_>>>()?;
        ensure!(
            runs[0].0.payload_bits() == 4 * g.m(),
            "payload is not 4m bits"
        );
        emit("par", p, effective, &runs);
    }

    if options.query_reps > 0 {
        if let Some(c) = &reference {
            rows.extend(query_rows(c, dataset, options.query_reps));
        }
    }

    let mut writer = csv::Writer::from_path(csv_path)
        .with_context(|| format!("creating {}", csv_path.display()))?;
    for row in &rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(rows.len())
}

/// Average seconds per query over up to 10^5 sampled vertices or ticks.
fn query_rows(c: &CompactEmbedding, dataset: &str, reps: usize) -> Vec<BenchRecord> {
    const SAMPLES: usize = 100_000;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let sample = |rng: &mut ChaCha8Rng, len: usize| -> Vec<usize> {
        if len <= SAMPLES {
            (1..=len).collect()
        } else {
            (0..SAMPLES).map(|_| rng.gen_range(1..=len)).collect()
        }
    };
    let vertices = sample(&mut rng, c.n());
    let ticks = sample(&mut rng, c.ticks());
    let time = |items: &[usize], f: &dyn Fn(usize) -> usize| {
        let start = Instant::now();
        let mut sink = 0usize;
        for _ in 0..reps {
            for &x in items {
                sink = sink.wrapping_add(f(x));
            }
        }
        std::hint::black_box(sink);
        start.elapsed().as_secs_f64() / (reps * items.len()) as f64
    };
    let timings = [
        ("query-counting", time(&vertices, &|v| c.counting(v))),
        ("query-listing", time(&vertices, &|v| c.listing(v).len())),
        ("query-face", time(&ticks, &|e| c.face_ticks(e).count())),
    ];
    timings
        .into_iter()
        .map(|(phase, secs)| BenchRecord {
            dataset: dataset.to_string(),
            n: c.n(),
            m: c.m(),
            mode: "query".into(),
            threads: 1,
            effective_threads: 1,
            phase: phase.into(),
            median_seconds: format!("{secs:.6}"),
            peak_bytes: 0,
            os_peak_bytes: os_peak_bytes(),
            payload_bits: c.payload_bits(),
            support_bits: c.support_bits(),
        })
        .collect()
}
