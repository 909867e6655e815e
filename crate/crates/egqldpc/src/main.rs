//! Command-line surface over the construction, verification, decoding, and
//! simulation pipeline.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use egqldpc::binmat::BinMatrix;
use egqldpc::construct::{adapt_self_orthogonal, code_summary, type1_matrix, type2_matrix};
use egqldpc::geometry::Geometry;
use egqldpc::harness::alist::{read_alist_path, write_alist_path};
use egqldpc::harness::results::{write_results_csv_path, write_results_json_path};
use egqldpc::harness::sim::{load_config, run_trials};
use egqldpc::quantum::{css_from_self_orthogonal, write_stabilizer_text};

#[derive(Parser)]
#[command(name = "egqldpc", version, about = "Euclidean-geometry quasi-cyclic LDPC codes and their CSS liftings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a parity-check matrix and write it as alist.
    Construct {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        ell: usize,
        #[arg(long = "type", value_enum)]
        kind: KindArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the derived parameters of a construction.
    Params {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        ell: usize,
    },
    /// Check a named property of an alist matrix; exit 0 iff it holds.
    Verify {
        path: PathBuf,
        #[arg(long, value_enum)]
        check: CheckArg,
    },
    /// Minimum distance of the null space of an alist matrix.
    Distance {
        path: PathBuf,
        /// Weight cap for the bounded search on wide matrices.
        #[arg(long, default_value_t = 6)]
        cap: usize,
    },
    /// Monte Carlo decoding sweep driven by a JSON config.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// CSV output path.
        #[arg(long)]
        out: PathBuf,
        /// Optional JSON output with full metadata.
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Write the stabilizer generators of the adapted construction.
    Export {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        ell: usize,
        /// Emit Pauli generator strings (the only export kind).
        #[arg(long, required = true)]
        stabilizers: bool,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Type1,
    Type2,
    Orth,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckArg {
    Selforth,
    Overlap,
    Cycles,
    Girth,
    Weights,
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run() -> egqldpc::Result<ExitCode> {
    match Cli::parse().command {
        Command::Construct {
            q,
            m,
            ell,
            kind,
            out,
        } => {
            let geometry = Geometry::new(m, q)?;
            let matrix = match kind {
                KindArg::Type1 => type1_matrix(&geometry, ell)?,
                KindArg::Type2 => type2_matrix(&geometry, ell)?,
                KindArg::Orth => {
                    let adapted = adapt_self_orthogonal(&type2_matrix(&geometry, ell)?)?;
                    if let Some((i, j)) = adapted.violation {
                        eprintln!(
                            "warning: adapted matrix is NOT self-orthogonal \
                             (rows {i} and {j} have odd overlap)"
                        );
                    }
                    adapted.matrix
                }
            };
            write_alist_path(&matrix, &out)?;
            println!(
                "wrote {}x{} matrix to {}",
                matrix.rows(),
                matrix.cols(),
                out.display()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Params { q, m, ell } => {
            let spec = code_summary(q, m, ell)?;
            let geometry = Geometry::new(m, q)?;
            let adapted = adapt_self_orthogonal(&type2_matrix(&geometry, ell)?)?;
            let rank = adapted.matrix.rank_gf2();
            let k_nominal = spec.length as i64 - 2 * spec.n as i64;
            let k_exact = spec.length as i64 - 2 * rank as i64;
            println!("q: {}", spec.q);
            println!("m: {}", spec.m);
            println!("ell: {}", spec.ell);
            println!("n (points, circulant size): {}", spec.n);
            println!("class_count: {}", spec.class_count);
            println!("rho (column weight): {}", spec.col_weight);
            println!("lambda (row weight): {}", spec.row_weight);
            println!("parity case: {}", spec.parity);
            println!("N (length): {}", spec.length);
            println!("rank: {rank}");
            if k_nominal <= 0 {
                println!("k_nominal (N - 2n): {k_nominal}  [non-positive: flagged]");
            } else {
                println!("k_nominal (N - 2n): {k_nominal}");
            }
            println!("k_exact (N - 2 rank): {k_exact}");
            println!("d_type1 lower bound: {}", spec.d_type1_lower);
            println!("d_orth lower bound: {}", spec.d_orth_lower);
            println!(
                "self-orthogonal: {}",
                if adapted.self_orthogonal {
                    "yes".to_string()
                } else {
                    let (i, j) = adapted.violation.expect("violation present");
                    format!("NO (rows {i} and {j} overlap oddly)")
                }
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { path, check } => {
            let matrix = read_alist_path(&path)?;
            let ok = run_check(&matrix, check);
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Distance { path, cap } => {
            let matrix = read_alist_path(&path)?;
            let d = matrix.min_distance_exhaustive(cap);
            println!(
                "minimum distance of null({}x{}): {}",
                matrix.rows(),
                matrix.cols(),
                d
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Simulate {
            config,
            out,
            json,
            workers,
        } => {
            let cfg = load_config(&config)?;
            let result = run_trials(&cfg, workers)?;
            write_results_csv_path(&result, &out)?;
            if let Some(json_path) = json {
                write_results_json_path(&result, &json_path)?;
            }
            for point in &result.points {
                println!(
                    "p={}: rate={} [{}, {}] ({} failures / {} trials, {} nonconverged)",
                    point.p,
                    point.rate,
                    point.ci_lo,
                    point.ci_hi,
                    point.failures,
                    point.trials,
                    point.nonconverged
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Export {
            q,
            m,
            ell,
            stabilizers: _,
            out,
        } => {
            let spec = code_summary(q, m, ell)?;
            let geometry = Geometry::new(m, q)?;
            let adapted = adapt_self_orthogonal(&type2_matrix(&geometry, ell)?)?;
            let code = css_from_self_orthogonal(&adapted.matrix, &spec)?;
            let file = std::fs::File::create(&out)?;
            write_stabilizer_text(&code, std::io::BufWriter::new(file))?;
            println!(
                "wrote {} generators ([[{}, {} (nominal {}), >={}]]) to {}",
                2 * code.num_checks,
                code.num_qubits,
                code.k_exact,
                code.k_nominal,
                code.d_lower.unwrap_or(1),
                out.display()
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_check(matrix: &BinMatrix, check: CheckArg) -> bool {
    match check {
        CheckArg::Selforth => match matrix.first_self_orthogonality_violation() {
            None => {
                println!("self-orthogonal: H * H^T = 0");
                true
            }
            Some((i, j)) => {
                if i == j {
                    println!("NOT self-orthogonal: row {i} has odd weight");
                } else {
                    println!("NOT self-orthogonal: rows {i} and {j} have odd overlap");
                }
                false
            }
        },
        CheckArg::Overlap => {
            let profile = matrix.overlap_profile();
            println!("row-pair overlap histogram (overlap: pairs):");
            for (overlap, count) in profile.histogram() {
                println!("  {overlap}: {count}");
            }
            let uniform_one = profile.is_uniform(1);
            println!(
                "every row pair overlaps exactly once: {}",
                if uniform_one { "yes" } else { "no" }
            );
            uniform_one
        }
        CheckArg::Cycles => {
            let report = matrix.four_cycles_and_girth();
            println!("4-cycles total: {}", report.four_cycle_total);
            println!("per-pair 4-cycle histogram (cycles: pairs):");
            for (cycles, count) in &report.pair_histogram {
                println!("  {cycles}: {count}");
            }
            let at_most_one = report.pair_histogram.keys().all(|&c| c <= 1);
            println!(
                "at most one 4-cycle per row pair: {}",
                if at_most_one { "yes" } else { "no" }
            );
            at_most_one
        }
        CheckArg::Girth => {
            let girth = matrix.tanner_girth();
            match girth {
                Some(g) => println!("girth: {g}"),
                None => println!("girth: infinite (acyclic)"),
            }
            let ok = girth.is_none_or(|g| g >= 6);
            println!("girth at least six: {}", if ok { "yes" } else { "no" });
            ok
        }
        CheckArg::Weights => {
            let row = matrix.row_weights();
            let col = matrix.col_weights();
            let row_uniform = row.windows(2).all(|w| w[0] == w[1]);
            let col_uniform = col.windows(2).all(|w| w[0] == w[1]);
            match (row_uniform, row.first()) {
                (true, Some(w)) => println!("row weight: uniform {w}"),
                _ => println!("row weights: non-uniform {row:?}"),
            }
            match (col_uniform, col.first()) {
                (true, Some(w)) => println!("column weight: uniform {w}"),
                _ => println!("column weights: non-uniform {col:?}"),
            }
            row_uniform && col_uniform
        }
    }
}
