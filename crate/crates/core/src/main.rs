//! Command-line harness: point-family generation, counting, closed-form
//! verification, randomized experiments and witness search.
//!
//! Exit codes: 0 success, 1 invalid input or parameters, 2 a verification
//! criterion failed.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use projholes::experiments::{
    co_segment_report, construction_report, verify_horton, wedge_experiment, witness_search,
    ConstructionMode,
};
use projholes::fast::{count_projective_fast, count_projective_islands_fast};
use projholes::generators::{
    gen_cluster, gen_double_chain, gen_es_lower, gen_horton, gen_lattice_convex,
    gen_pentagon_center_witness, gen_random_uniform, gen_squared_horton, Shape,
};
use projholes::geom::PointSet;
use projholes::io::{load_point_set, write_point_set};
use projholes::oracle::count_oracle;
use projholes::projective::{CountKind, CountTable};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "projholes",
    about = "Exact counting of gons, holes and islands of planar point sets in the projective plane",
    version
)]
struct Cli {
    /// Worker threads for the parallel counters (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a point family and write it in the point-set text format.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Count gons, holes or islands of a point-set file.
    Count(CountArgs),
    /// Verify closed-form counts on constructed families.
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
    /// Randomized experiments over seeded uniform samples.
    Experiment {
        #[command(subcommand)]
        target: ExperimentTarget,
    },
    /// Randomized search for sets without large projective gons.
    Search(SearchArgs),
    /// Co-segment census and the derived projective hole lower bounds.
    Prop5(Prop5Args),
    /// Build the tangent-cluster construction and check its hole bounds.
    Construction(ConstructionArgs),
}

#[derive(Subcommand)]
enum GenKind {
    /// Horton set with seeded layer choices.
    Horton {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Force the perfect variant (leftmost point low in every layer).
        #[arg(long)]
        perfect: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Perfect Horton set.
    #[command(name = "perfect-horton")]
    PerfectHorton {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Perturbed t x t grid.
    #[command(name = "squared-horton")]
    SquaredHorton {
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convex-position subset of the t x t grid.
    #[command(name = "lattice-convex")]
    LatticeConvex {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cup-cap free set witnessing the absence of projective k-gons.
    #[command(name = "es-lower")]
    EsLower {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Perturbed grid clipped to a convex polygon plus tangent clusters.
    Cluster {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        /// Exponent parameter recorded in the annotations.
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded uniform sample on the rational grid inside the unit shape.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "square")]
        shape: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        grid_bits: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Explicit double chain of two facing arcs.
    #[command(name = "double-chain")]
    DoubleChain {
        /// First chain size.
        #[arg(long)]
        chain_a: usize,
        /// Second chain size.
        #[arg(long)]
        chain_b: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convex pentagon with one interior point and no projective 5-hole.
    #[command(name = "pentagon-witness")]
    PentagonWitness {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct CountArgs {
    /// Point-set file to read.
    #[arg(long = "in")]
    input: PathBuf,
    /// `oracle` (exhaustive) or `fast` (pair sweep).
    #[arg(long, default_value = "fast")]
    mode: String,
    /// `gons`, `holes` or `islands`.
    #[arg(long, default_value = "gons")]
    what: String,
    /// Largest size to count; defaults to the set size.
    #[arg(long)]
    max_k: Option<usize>,
    /// Override the exhaustive-counter size guard.
    #[arg(long)]
    force: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum VerifyTarget {
    /// Closed forms for perfect sets of sizes 2^1 .. 2^z_max.
    Horton {
        #[arg(long, default_value_t = 5)]
        z_max: u32,
        /// Largest z confirmed by the exhaustive counter as well.
        #[arg(long, default_value_t = 5)]
        oracle_z_max: u32,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum ExperimentTarget {
    /// Mean number of empty apex wedges over uniform samples.
    Wedges {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    /// Gon size the witness must avoid.
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Keep searching after a first witness instead of stopping.
    #[arg(long)]
    exhaust_trials: bool,
    /// Write the first witness found to this path.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct Prop5Args {
    #[arg(long = "in")]
    input: PathBuf,
    /// Largest size for the exhaustive confirmations.
    #[arg(long, default_value_t = 12)]
    confirm_limit: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ConstructionArgs {
    #[arg(long)]
    n: usize,
    /// `power` (explicit a, b and optional alpha) or `log` (x parameter).
    #[arg(long, default_value = "power")]
    mode: String,
    #[arg(long)]
    a: Option<usize>,
    #[arg(long)]
    b: Option<usize>,
    #[arg(long)]
    alpha: Option<f64>,
    /// Parameter of the `log` mode: two clusters of size floor(log2 x).
    #[arg(long)]
    x: Option<u64>,
    /// Hole size the bounds are certified for.
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write per-size count rows as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn gen_header(desc: String) -> Vec<String> {
    vec!["projholes point set".to_string(), desc]
}

fn run_gen(kind: GenKind) -> Result<()> {
    let (ps, desc, out, sidecar): (PointSet, String, Option<PathBuf>, Option<String>) = match kind {
        GenKind::Horton {
            n,
            seed,
            perfect,
            out,
        } => {
            let h = gen_horton(n, perfect, seed)?;
            (
                h.into_points(),
                format!("kind: horton n={n} perfect={perfect} seed={seed}"),
                out,
                None,
            )
        }
        GenKind::PerfectHorton { n, out } => {
            let h = gen_horton(n, true, 0)?;
            (
                h.into_points(),
                format!("kind: perfect-horton n={n}"),
                out,
                None,
            )
        }
        GenKind::SquaredHorton { t, seed, out } => {
            let sh = gen_squared_horton(t, seed)?;
            (
                sh.into_points(),
                format!("kind: squared-horton t={t} seed={seed}"),
                out,
                None,
            )
        }
        GenKind::LatticeConvex { t, out } => {
            let c = gen_lattice_convex(t)?;
            let ps = PointSet::from_int_coords(&c).map_err(|e| anyhow!(e.to_string()))?;
            (ps, format!("kind: lattice-convex t={t}"), out, None)
        }
        GenKind::EsLower { k, out } => {
            let s = gen_es_lower(k)?;
            (s.into_points(), format!("kind: es-lower k={k}"), out, None)
        }
        GenKind::Cluster {
            n,
            a,
            b,
            alpha,
            seed,
            out,
        } => {
            let alpha_rat = alpha.map(|f| {
                let scaled = (f * 1024.0).round() as i64;
                projholes::rational::ratio(scaled, 1024)
            });
            let c = gen_cluster(n, a, b, alpha_rat, seed)?;
            let annotations = serde_json::json!({
                "n": c.n,
                "a": c.a,
                "b": c.b,
                "h_size": c.h_size,
                "horton": c.horton,
                "clusters": c.clusters,
                "c3h": c.c3h,
                "c_prime": c.c_prime,
                "c1_lattice": c.c1,
                "c3_lattice": c.c3,
            });
            let desc = format!("kind: cluster n={n} a={a} b={b} seed={seed}");
            (
                c.points,
                desc,
                out,
                Some(serde_json::to_string_pretty(&annotations)?),
            )
        }
        GenKind::Random {
            n,
            shape,
            seed,
            grid_bits,
            out,
        } => {
            let shape = Shape::parse(&shape).ok_or_else(|| anyhow!("unknown shape `{shape}`"))?;
            let (ps, rejections) = gen_random_uniform(n, shape, seed, grid_bits)?;
            (
                ps,
                format!(
                    "kind: random n={n} shape={} seed={seed} grid_bits={grid_bits} redraws={rejections}",
                    shape.name()
                ),
                out,
                None,
            )
        }
        GenKind::DoubleChain {
            chain_a,
            chain_b,
            seed,
            out,
        } => {
            let ps = gen_double_chain(chain_a, chain_b, seed)?;
            (
                ps,
                format!("kind: double-chain a={chain_a} b={chain_b} seed={seed}"),
                out,
                None,
            )
        }
        GenKind::PentagonWitness { out } => (
            gen_pentagon_center_witness(),
            "kind: pentagon-witness".to_string(),
            out,
            None,
        ),
    };
    let text = write_point_set(&ps, &gen_header(desc));
    if let (Some(path), Some(json)) = (&out, &sidecar) {
        let mut side = path.clone().into_os_string();
        side.push(".annotations.json");
        std::fs::write(Path::new(&side), json)?;
    }
    emit(&out, &text)
}

fn load_input(path: &Path) -> Result<PointSet> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    load_point_set(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn count_json(n: usize, mode: &str, what: &str, table: &CountTable) -> Result<String> {
    let value = serde_json::json!({
        "n": n,
        "mode": mode,
        "what": what,
        "counts": table.counts,
    });
    Ok(format!("{}\n", serde_json::to_string_pretty(&value)?))
}

fn run_count(args: CountArgs) -> Result<()> {
    let ps = load_input(&args.input)?;
    let what = CountKind::parse(&args.what)
        .ok_or_else(|| anyhow!("what must be gons, holes or islands"))?;
    let max_k = args.max_k.unwrap_or(ps.len()).min(ps.len());
    if max_k < 3 {
        bail!("need at least three points and max_k >= 3");
    }
    let table = match args.mode.as_str() {
        "oracle" => count_oracle(&ps, max_k, what, args.force)?,
        "fast" => match what {
            CountKind::Islands => count_projective_islands_fast(&ps, max_k),
            _ => count_projective_fast(&ps, max_k, what),
        },
        other => bail!("mode must be oracle or fast, not `{other}`"),
    };
    let json = count_json(ps.len(), &args.mode, what.name(), &table)?;
    emit(&args.out, &json)
}

fn run_verify(target: VerifyTarget) -> Result<ExitCode> {
    match target {
        VerifyTarget::Horton {
            z_max,
            oracle_z_max,
            json,
        } => {
            if !(1..=6).contains(&z_max) || oracle_z_max > 5 {
                bail!("supported: z_max in 1..=6, oracle_z_max in 0..=5");
            }
            let report = verify_horton(z_max, oracle_z_max);
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                for r in &report.rows {
                    println!(
                        "z={} n={} {:<26} expected={} measured={} {}",
                        r.z,
                        r.n,
                        r.check,
                        r.expected,
                        r.measured,
                        if r.pass { "PASS" } else { "FAIL" }
                    );
                }
                println!("overall: {}", if report.all_pass { "PASS" } else { "FAIL" });
            }
            Ok(if report.all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
    }
}

fn run_experiment(target: ExperimentTarget) -> Result<ExitCode> {
    match target {
        ExperimentTarget::Wedges {
            n,
            trials,
            seed,
            json,
        } => {
            if n < 5 {
                bail!("need n >= 5");
            }
            let report = wedge_experiment(n, trials, seed);
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                println!(
                    "n={} trials={} seed={} mean={:.2} min={} max={} variance={:.2}",
                    report.n,
                    report.trials,
                    report.seed,
                    report.mean,
                    report.min,
                    report.max,
                    report.sample_variance
                );
                println!(
                    "bound={:.2} within_bound={}",
                    report.bound,
                    if report.within_bound { "PASS" } else { "FAIL" }
                );
            }
            Ok(if report.within_bound {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
    }
}

fn run_search(args: SearchArgs) -> Result<()> {
    if args.n < args.k {
        bail!("need n >= k");
    }
    let report = witness_search(args.n, args.k, args.trials, args.seed, !args.exhaust_trials);
    if let (Some(path), Some(w)) = (&args.out, &report.witness) {
        std::fs::write(path, w)?;
    }
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!(
            "n={} k={} trials={} evaluations={} best_largest_gon={} found={}",
            report.n,
            report.k,
            report.trials,
            report.evaluations,
            report.best_largest_gon,
            report.found
        );
        if let (None, Some(w)) = (&args.out, &report.witness) {
            print!("{w}");
        }
    }
    Ok(())
}

fn run_prop5(args: Prop5Args) -> Result<ExitCode> {
    let ps = load_input(&args.input)?;
    let report = co_segment_report(&ps, args.confirm_limit);
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        let b = &report.bounds;
        println!(
            "n={} co_segments={} crossed={} uncrossed={} euler_bound={} euler={}",
            b.n,
            b.s_size,
            b.s_prime_size,
            b.s_size - b.s_prime_size,
            b.euler_bound,
            if report.euler_ok { "PASS" } else { "FAIL" }
        );
        println!("bound3={} bound4={}", b.bound3, b.bound4);
        if let (Some(h3), Some(h4)) = (report.holes3_projective, report.holes4_projective) {
            println!(
                "holes3_projective={h3} ({}) holes4_projective={h4} ({})",
                if report.bound3_ok == Some(true) {
                    "PASS"
                } else {
                    "FAIL"
                },
                if report.bound4_ok == Some(true) {
                    "PASS"
                } else {
                    "FAIL"
                },
            );
        }
    }
    let ok =
        report.euler_ok && report.bound3_ok.unwrap_or(true) && report.bound4_ok.unwrap_or(true);
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn run_construction(args: ConstructionArgs) -> Result<ExitCode> {
    let mode = match args.mode.as_str() {
        "power" => ConstructionMode::Power {
            a: args.a.ok_or_else(|| anyhow!("power mode needs --a"))?,
            b: args.b.ok_or_else(|| anyhow!("power mode needs --b"))?,
            alpha: args.alpha,
        },
        "log" => ConstructionMode::Log {
            x: args.x.ok_or_else(|| anyhow!("log mode needs --x"))?,
        },
        other => bail!("mode must be power or log, not `{other}`"),
    };
    let report = construction_report(args.n, &mode, args.k, args.seed)?;
    if let Some(path) = &args.csv {
        let mut csv =
            String::from("n,k,holes_affine,holes_wedge,holes_projective,certified_bound\n");
        for r in &report.rows {
            csv.push_str(&format!(
                "{},{},{},{},{},{}\n",
                r.n, r.k, r.holes_affine, r.holes_wedge, r.holes_projective, r.certified_bound
            ));
        }
        std::fs::write(path, csv)?;
    }
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report)?);
    } else {
        println!(
            "n={} a={} b={} k={} t_size={} h_size={}",
            report.n, report.a, report.b, report.k, report.t_size, report.h_size
        );
        println!(
            "certified_bound={} holes_projective={} bound={}",
            report.certified_bound,
            report.holes_projective,
            if report.bound_met { "PASS" } else { "FAIL" }
        );
        println!(
            "in_cluster_affine={} expected={} identity={}",
            report.in_cluster_affine,
            report.expected_in_cluster,
            if report.in_cluster_ok { "PASS" } else { "FAIL" }
        );
    }
    Ok(if report.bound_met && report.in_cluster_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .ok();
    }
    match cli.command {
        Command::Gen { kind } => run_gen(kind).map(|_| ExitCode::SUCCESS),
        Command::Count(args) => run_count(args).map(|_| ExitCode::SUCCESS),
        Command::Verify { target } => run_verify(target),
        Command::Experiment { target } => run_experiment(target),
        Command::Search(args) => run_search(args).map(|_| ExitCode::SUCCESS),
        Command::Prop5(args) => run_prop5(args),
        Command::Construction(args) => run_construction(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
