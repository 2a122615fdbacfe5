//! `ghmetric` — exact finite-metric-space computations from the shell.
//!
//! Every subcommand prints one compact JSON report on standard output (see
//! `report.rs`); `gen` prints a space file instead. Errors go to standard
//! error as JSON with stable exit codes: 2 parse/validation, 3 size limit,
//! 4 Cauchy-bound violation, 5 internal.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use ghmetric::{
    build_tower, canonicalize_with_limit, cauchy_limit, gh_dist_bnb,
    gh_dist_bruteforce_with_limit, glue, hausdorff_dist, is_isometric, kuratowski_embed,
    lower_bound_diam, realize, upper_bound_full, CauchyBounds, FiniteMetricSpace, Scalar,
};
use ghmetric_cli::error::CliError;
use ghmetric_cli::format::{emit_space, parse_space_str, write_space};
use ghmetric_cli::generate::{generate, parse_kind};
use ghmetric_cli::report::{input_ref, scalars_json, InputRef, Report};

#[derive(Parser)]
#[command(name = "ghmetric", version, about = "Exact Hausdorff and Gromov-Hausdorff distances, realizations, gluings and completion towers for finite metric spaces")]
struct Cli {
    /// Worker threads for solver-internal parallelism (0 = all cores).
    /// The GH_METRIC_THREADS environment variable overrides this flag.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Solver {
    Brute,
    Bnb,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a space file and check the metric axioms.
    Validate { file: PathBuf },
    /// Largest distance of a space.
    Diam { file: PathBuf },
    /// Hausdorff distance between two index subsets of an ambient space.
    Hausdorff {
        ambient: PathBuf,
        /// Comma-separated 0-based point indices of the first subset.
        #[arg(long = "a")]
        a: String,
        /// Comma-separated 0-based point indices of the second subset.
        #[arg(long = "b")]
        b: String,
    },
    /// Decide whether two spaces are isometric; prints a witness map.
    Isometric { x: PathBuf, y: PathBuf },
    /// Relabeling-invariant canonical matrix of a space.
    Canonical {
        file: PathBuf,
        /// Point-count cap for the factorial search.
        #[arg(long, default_value_t = ghmetric::CANONICAL_DEFAULT_LIMIT)]
        limit: usize,
    },
    /// Exact Gromov-Hausdorff distance with an optimal correspondence.
    Gh {
        x: PathBuf,
        y: PathBuf,
        #[arg(long, value_enum, default_value = "bnb")]
        solver: Solver,
        /// Print only the certified diameter/full-correspondence bounds.
        #[arg(long)]
        bounds_only: bool,
        /// Cap on |X|*|Y| for the brute-force solver.
        #[arg(long, default_value_t = ghmetric::BRUTE_DEFAULT_LIMIT)]
        limit: usize,
    },
    /// Build a common space realizing the GH distance of two spaces.
    Realize {
        x: PathBuf,
        y: PathBuf,
        /// Write the realizing glued space to this file.
        #[arg(long)]
        emit_glued: Option<PathBuf>,
    },
    /// Kuratowski embedding: each point mapped to its distance row.
    Kuratowski { file: PathBuf },
    /// Glue two spaces along isometric copies of a third.
    Glue {
        y: PathBuf,
        z: PathBuf,
        /// The common subspace X.
        #[arg(long)]
        via: PathBuf,
        /// Comma-separated indices: X point k sits at Y point phi[k].
        #[arg(long)]
        phi: String,
        /// Comma-separated indices: X point k sits at Z point psi[k].
        #[arg(long)]
        psi: String,
    },
    /// Embed a whole sequence of spaces into one ambient tower.
    Tower {
        files: Vec<PathBuf>,
        /// Declared Cauchy bounds b0,b1,... (default 1,1/2,1/4,...).
        #[arg(long)]
        bounds: Option<String>,
        /// Verify the bounds and report the certified limit approximation.
        #[arg(long)]
        limit: bool,
    },
    /// Generate a deterministic space (see `gen --help` for kinds).
    #[command(after_help = "Kinds and parameters:\n  \
        graph-shortest-path nodes=N    random shortest-path metric\n  \
        sup-norm-points count=N dim=D  random max-norm point set\n  \
        path n=N                       unit path\n  \
        cycle n=N                      unit cycle\n  \
        dyadic-net n=L                 {k/2^L} in [0,1]\n  \
        perturb file=PATH delta=Q      shift all off-diagonal entries")]
    Gen {
        kind: String,
        /// Generator parameters as key=value pairs.
        params: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the space here instead of standard output.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = std::env::var("GH_METRIC_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(cli.threads);
    if threads > 0 {
        // Ignore failure: the global pool can only be set once.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{}", err.to_json());
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

struct Loaded {
    input: InputRef,
    name: String,
    space: FiniteMetricSpace,
}

fn load(path: &Path) -> Result<Loaded, CliError> {
    let shown = path.display().to_string();
    let bytes = std::fs::read(path).map_err(|source| CliError::Io {
        path: shown.clone(),
        source,
    })?;
    let text = String::from_utf8_lossy(&bytes);
    let (name, space) = parse_space_str(&text, &shown)?;
    Ok(Loaded {
        input: input_ref(path, &bytes),
        name,
        space,
    })
}

fn parse_indices(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad index {t:?} in {text:?}")))
        })
        .collect()
}

fn parse_scalars(text: &str) -> Result<Vec<Scalar>, CliError> {
    text.split(',')
        .map(|t| {
            Scalar::from_str(t.trim())
                .map_err(|_| CliError::Usage(format!("bad rational {t:?} in {text:?}")))
        })
        .collect()
}

fn pairs_json(pairs: &[(usize, usize)]) -> serde_json::Value {
    serde_json::Value::Array(
        pairs
            .iter()
            .map(|&(i, j)| serde_json::json!([i, j]))
            .collect(),
    )
}

fn run(command: Command) -> Result<(), CliError> {
    let started = Instant::now();
    let mut report = match command {
        Command::Validate { file } => {
            let loaded = load(&file)?;
            let diam = loaded.space.diam();
            let mut r = Report::new("validate").with_witness(serde_json::json!({
                "name": loaded.name,
                "points": loaded.space.len(),
                "diam": diam.to_string(),
            }));
            r.inputs.push(loaded.input);
            r
        }
        Command::Diam { file } => {
            let loaded = load(&file)?;
            let mut r = Report::new("diam").with_value(&loaded.space.diam());
            r.inputs.push(loaded.input);
            r
        }
        Command::Hausdorff { ambient, a, b } => {
            let loaded = load(&ambient)?;
            let a = parse_indices(&a)?;
            let b = parse_indices(&b)?;
            let value = hausdorff_dist(loaded.space.as_semi(), &a, &b)?;
            let mut r = Report::new("hausdorff").with_value(&value);
            r.inputs.push(loaded.input);
            r
        }
        Command::Isometric { x, y } => {
            let lx = load(&x)?;
            let ly = load(&y)?;
            let witness = is_isometric(&lx.space, &ly.space);
            let mut r = Report::new("isometric").with_witness(serde_json::json!({
                "isometric": witness.is_some(),
                "map": witness,
            }));
            r.inputs.push(lx.input);
            r.inputs.push(ly.input);
            r
        }
        Command::Canonical { file, limit } => {
            let loaded = load(&file)?;
            let canon = canonicalize_with_limit(&loaded.space, limit)?;
            let matrix: Vec<Vec<String>> = canon
                .matrix()
                .iter()
                .map(|row| row.iter().map(Scalar::to_string).collect())
                .collect();
            let mut r = Report::new("canonical").with_witness(serde_json::json!({
                "matrix": matrix,
                "perm": canon.perm(),
            }));
            r.inputs.push(loaded.input);
            r
        }
        Command::Gh {
            x,
            y,
            solver,
            bounds_only,
            limit,
        } => {
            let lx = load(&x)?;
            let ly = load(&y)?;
            let mut r = if bounds_only {
                let lower = lower_bound_diam(&lx.space, &ly.space);
                let upper = upper_bound_full(&lx.space, &ly.space);
                Report::new("gh").with_witness(serde_json::json!({
                    "lower": lower.to_string(),
                    "lower_decimal": lower.to_f64(),
                    "upper": upper.to_string(),
                    "upper_decimal": upper.to_f64(),
                }))
            } else {
                let result = match solver {
                    Solver::Brute => gh_dist_bruteforce_with_limit(&lx.space, &ly.space, limit)?,
                    Solver::Bnb => gh_dist_bnb(&lx.space, &ly.space),
                };
                let labels: Vec<[String; 2]> = result
                    .witness
                    .pairs()
                    .iter()
                    .map(|&(i, j)| [lx.space.label(i).to_string(), ly.space.label(j).to_string()])
                    .collect();
                Report::new("gh")
                    .with_value(&result.value)
                    .with_nodes(result.node_count)
                    .with_witness(serde_json::json!({
                        "pairs": pairs_json(result.witness.pairs()),
                        "pair_labels": labels,
                    }))
            };
            r.inputs.push(lx.input);
            r.inputs.push(ly.input);
            r
        }
        Command::Realize { x, y, emit_glued } => {
            let lx = load(&x)?;
            let ly = load(&y)?;
            let realization = realize(&lx.space, &ly.space)?;
            if let Some(out) = &emit_glued {
                let name = format!("glued:{}:{}", lx.name, ly.name);
                write_space(out, &name, &realization.glued)?;
            }
            let check = realization.hausdorff_between_ranges();
            let mut r = Report::new("realize")
                .with_value(&realization.value)
                .with_nodes(realization.node_count)
                .with_witness(serde_json::json!({
                    "glued_points": realization.glued.len(),
                    "embed_left": realization.embed_left.map(),
                    "embed_right": realization.embed_right.map(),
                    "hausdorff_between_ranges": check.to_string(),
                    "pairs": pairs_json(realization.witness.pairs()),
                }));
            r.inputs.push(lx.input);
            r.inputs.push(ly.input);
            r
        }
        Command::Kuratowski { file } => {
            let loaded = load(&file)?;
            let emb = kuratowski_embed(&loaded.space);
            let vectors: Vec<serde_json::Value> = emb
                .points
                .iter()
                .map(|p| scalars_json(&p.0))
                .collect();
            let mut r = Report::new("kuratowski").with_witness(serde_json::json!({
                "dimension": loaded.space.len(),
                "vectors": vectors,
            }));
            r.inputs.push(loaded.input);
            r
        }
        Command::Glue {
            y,
            z,
            via,
            phi,
            psi,
        } => {
            let lvia = load(&via)?;
            let ly = load(&y)?;
            let lz = load(&z)?;
            let phi = parse_indices(&phi)?;
            let psi = parse_indices(&psi)?;
            let glued = glue(&lvia.space, &ly.space, &lz.space, &phi, &psi)?;
            let mut r = Report::new("glue").with_witness(serde_json::json!({
                "points": glued.space.len(),
                "from_left": glued.from_left.map(),
                "from_right": glued.from_right.map(),
            }));
            r.inputs.push(ly.input);
            r.inputs.push(lz.input);
            r.inputs.push(lvia.input);
            r
        }
        Command::Tower {
            files,
            bounds,
            limit,
        } => {
            if files.is_empty() {
                return Err(CliError::Usage("tower needs at least one space file".into()));
            }
            let loaded: Vec<Loaded> = files.iter().map(|f| load(f)).collect::<Result<_, _>>()?;
            let spaces: Vec<FiniteMetricSpace> =
                loaded.iter().map(|l| l.space.clone()).collect();
            let declared = match &bounds {
                Some(text) => CauchyBounds::Explicit(parse_scalars(text)?),
                None => CauchyBounds::Dyadic,
            };
            let mut witness;
            if limit || bounds.is_some() {
                let result = cauchy_limit(&spaces, &declared)?;
                witness = serde_json::json!({
                    "level_sizes": result.tower.levels.iter().map(|l| l.space.len()).collect::<Vec<_>>(),
                    "steps": scalars_json(&result.tower.step_values),
                    "consecutive_hausdorff": scalars_json(&result.consecutive_hausdorff),
                });
                if limit {
                    witness["limit"] = serde_json::json!({
                        "approx_points": result.approx.len(),
                        "error_bound": result.error_bound.to_string(),
                        "error_bound_decimal": result.error_bound.to_f64(),
                    });
                }
            } else {
                let tower = build_tower(&spaces)?;
                let top = tower.top();
                let consecutive: Vec<Scalar> = (0..tower.step_values.len())
                    .map(|k| top.hausdorff_between(k, k + 1))
                    .collect();
                witness = serde_json::json!({
                    "level_sizes": tower.levels.iter().map(|l| l.space.len()).collect::<Vec<_>>(),
                    "steps": scalars_json(&tower.step_values),
                    "consecutive_hausdorff": scalars_json(&consecutive),
                });
            }
            let mut r = Report::new("tower").with_witness(witness);
            for l in loaded {
                r.inputs.push(l.input);
            }
            r
        }
        Command::Gen {
            kind,
            params,
            seed,
            out,
        } => {
            let parsed = parse_kind(&kind, &params)?;
            let space = generate(&parsed, seed)?;
            let name = format!("{kind}:{seed}");
            match out {
                Some(path) => write_space(&path, &name, &space)?,
                None => print!("{}", emit_space(&name, &space)),
            }
            return Ok(());
        }
    };
    report.millis = started.elapsed().as_millis() as u64;
    println!("{}", report.render());
    Ok(())
}
