//! Deterministic corpus generators. A fixed `(kind, params, seed)` triple
//! always produces the same space, byte for byte after emission.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ghmetric::{FiniteMetricSpace, Scalar};

use crate::error::CliError;

#[derive(Debug, Clone)]
pub enum GenKind {
    /// Random complete-graph weights from the grid {1/4, ..., 2},
    /// metricized by all-pairs shortest paths.
    GraphShortestPath { nodes: usize },
    /// Random points with coordinates from the grid {0, 1/8, ..., 2} under
    /// the max-coordinate distance.
    SupNormPoints { count: usize, dim: usize },
    /// Unit-spaced points on a line.
    Path { n: usize },
    /// Cycle-graph metric with unit edges.
    Cycle { n: usize },
    /// The dyadic net {k/2^level, 0 <= k <= 2^level} of the unit interval.
    DyadicNet { level: u32 },
    /// A space with a rational delta added to all off-diagonal entries.
    Perturb {
        base: FiniteMetricSpace,
        delta: Scalar,
    },
}

pub const KNOWN_KINDS: &[&str] = &[
    "graph-shortest-path",
    "sup-norm-points",
    "path",
    "cycle",
    "dyadic-net",
    "perturb",
];

fn param<'a>(params: &'a [(String, String)], key: &str) -> Option<&'a str> {
    params
        .iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.as_str())
}

fn usize_param(params: &[(String, String)], key: &str) -> Result<usize, CliError> {
    let raw = param(params, key)
        .ok_or_else(|| CliError::InvalidParams(format!("missing {key}=N")))?;
    raw.parse()
        .map_err(|_| CliError::InvalidParams(format!("{key}={raw} is not a count")))
}

/// Parses `key=value` parameter strings for the given kind. The `perturb`
/// kind reads its base space from the file named by `file=`.
pub fn parse_kind(kind: &str, raw_params: &[String]) -> Result<GenKind, CliError> {
    let params: Vec<(String, String)> = raw_params
        .iter()
        .map(|p| {
            p.split_once('=')
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .ok_or_else(|| CliError::InvalidParams(format!("expected key=value, got {p:?}")))
        })
        .collect::<Result<_, _>>()?;
    match kind {
        "graph-shortest-path" => Ok(GenKind::GraphShortestPath {
            nodes: usize_param(&params, "nodes")?,
        }),
        "sup-norm-points" => Ok(GenKind::SupNormPoints {
            count: usize_param(&params, "count")?,
            dim: usize_param(&params, "dim")?,
        }),
        "path" => Ok(GenKind::Path {
            n: usize_param(&params, "n")?,
        }),
        "cycle" => Ok(GenKind::Cycle {
            n: usize_param(&params, "n")?,
        }),
        "dyadic-net" => Ok(GenKind::DyadicNet {
            level: usize_param(&params, "n")? as u32,
        }),
        "perturb" => {
            let path = param(&params, "file")
                .ok_or_else(|| CliError::InvalidParams("missing file=PATH".into()))?;
            let (_, base) = crate::format::read_space(std::path::Path::new(path))?;
            let delta: Scalar = param(&params, "delta")
                .ok_or_else(|| CliError::InvalidParams("missing delta=Q".into()))?
                .parse()
                .map_err(|_| CliError::InvalidParams("delta is not a rational".into()))?;
            Ok(GenKind::Perturb { base, delta })
        }
        other => Err(CliError::UnknownKind(other.to_string())),
    }
}

pub fn generate(kind: &GenKind, seed: u64) -> Result<FiniteMetricSpace, CliError> {
    match kind {
        GenKind::GraphShortestPath { nodes } => graph_shortest_path(*nodes, seed),
        GenKind::SupNormPoints { count, dim } => sup_norm_points(*count, *dim, seed),
        GenKind::Path { n } => {
            check_count(*n)?;
            let coords: Vec<Scalar> = (0..*n as i64).map(Scalar::from_int).collect();
            Ok(ghmetric::line_space(&coords)?)
        }
        GenKind::Cycle { n } => cycle(*n),
        GenKind::DyadicNet { level } => dyadic_net(*level),
        GenKind::Perturb { base, delta } => perturb(base, delta),
    }
}

fn check_count(n: usize) -> Result<(), CliError> {
    if n == 0 {
        return Err(CliError::InvalidParams("need at least one point".into()));
    }
    Ok(())
}

// Symmetric fill needs both indices; clippy's iterator form does not.
#[allow(clippy::needless_range_loop)]
pub fn graph_shortest_path(nodes: usize, seed: u64) -> Result<FiniteMetricSpace, CliError> {
    check_count(nodes)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w = vec![vec![Scalar::zero(); nodes]; nodes];
    for i in 0..nodes {
        for j in (i + 1)..nodes {
            let v = Scalar::ratio(rng.gen_range(1..=8), 4);
            w[i][j] = v.clone();
            w[j][i] = v;
        }
    }
    for k in 0..nodes {
        for i in 0..nodes {
            for j in 0..nodes {
                if i != j {
                    let via = &w[i][k] + &w[k][j];
                    if via < w[i][j] {
                        w[i][j] = via;
                    }
                }
            }
        }
    }
    let labels = (0..nodes).map(|i| format!("p{i}")).collect();
    Ok(FiniteMetricSpace::new(labels, w)?)
}

pub fn sup_norm_points(count: usize, dim: usize, seed: u64) -> Result<FiniteMetricSpace, CliError> {
    check_count(count)?;
    if dim == 0 {
        return Err(CliError::InvalidParams("need dim >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<Vec<Scalar>> = Vec::with_capacity(count);
    for _ in 0..count {
        let mut attempts = 0;
        loop {
            let p: Vec<Scalar> = (0..dim)
                .map(|_| Scalar::ratio(rng.gen_range(0..=16), 8))
                .collect();
            if !points.contains(&p) {
                points.push(p);
                break;
            }
            attempts += 1;
            if attempts > 1000 {
                return Err(CliError::InvalidParams(format!(
                    "cannot place {count} distinct points in a {dim}-dimensional grid"
                )));
            }
        }
    }
    let rows = points
        .iter()
        .map(|p| {
            points
                .iter()
                .map(|q| {
                    p.iter()
                        .zip(q)
                        .map(|(a, b)| (a - b).abs())
                        .max()
                        .expect("dim >= 1")
                })
                .collect()
        })
        .collect();
    let labels = (0..count).map(|i| format!("p{i}")).collect();
    Ok(FiniteMetricSpace::new(labels, rows)?)
}

fn cycle(n: usize) -> Result<FiniteMetricSpace, CliError> {
    check_count(n)?;
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let d = i.abs_diff(j).min(n - i.abs_diff(j));
                    Scalar::from_int(d as i64)
                })
                .collect()
        })
        .collect();
    let labels = (0..n).map(|i| format!("p{i}")).collect();
    Ok(FiniteMetricSpace::new(labels, rows)?)
}

pub fn dyadic_net(level: u32) -> Result<FiniteMetricSpace, CliError> {
    if level > 16 {
        return Err(CliError::InvalidParams("dyadic level too large".into()));
    }
    let denom = 1i64 << level;
    let coords: Vec<Scalar> = (0..=denom).map(|k| Scalar::ratio(k, denom)).collect();
    Ok(ghmetric::line_space(&coords)?)
}

pub fn perturb(base: &FiniteMetricSpace, delta: &Scalar) -> Result<FiniteMetricSpace, CliError> {
    let n = base.len();
    let rows: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Scalar::zero()
                    } else {
                        base.dist(i, j) + delta
                    }
                })
                .collect()
        })
        .collect();
    FiniteMetricSpace::new(base.labels().to_vec(), rows)
        .map_err(|e| CliError::InvalidParams(format!("delta {delta} breaks the metric: {e}")))
}
