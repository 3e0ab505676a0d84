//! Command-line front end. Every command writes exactly one JSON document to
//! stdout; diagnostics go to stderr. Exit codes: 0 ok, 1 internal invariant
//! breach, 2 usage, 3 resource cap, 4 fit failure.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use syt::counting::{
    count_syt_hook, count_syt_yf, enumerate_syt_capped, Tableau, DEFAULT_ENUM_CAP,
};
use syt::distributions::{
    min_sort_prob, occupancy_pgf, occupancy_prob, sort_prob, DiscreteDistribution,
};
use syt::ratfunc::{Limit, RationalFunction};
use syt::sampler::{empirical_occupancy, gnw_sample, rng_from_seed};
use syt::symbolic::{
    find_zero_pairs, limiting_occupancy, occupancy_prob_symbolic, sort_prob_symbolic, RectFamily,
};
use syt::{Cell, Error, Partition};

const SCHEMA_VERSION: &str = "1";

#[derive(Parser)]
#[command(name = "syt", about = "Exact computations on standard Young tableaux", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count the standard Young tableaux of a shape (two independent formulas)
    Count {
        /// Shape as comma-separated row lengths, e.g. 4,3,2
        shape: Partition,
    },
    /// List all standard Young tableaux of a shape
    Enumerate {
        shape: Partition,
        /// List at most this many tableaux
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Draw uniform random tableaux by the GNW hook walk
    Sample {
        shape: Partition,
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exact occupancy probability of a cell (one value or the full PGF)
    Occ {
        shape: Partition,
        /// Cell as row,col (1-based), e.g. 2,1
        #[arg(long)]
        cell: Cell,
        /// Pr(T_cell = r) for this single occupant
        #[arg(long, conflicts_with = "pgf")]
        r: Option<usize>,
        /// Full exact distribution of the occupant
        #[arg(long)]
        pgf: bool,
        /// Include a two-column CSV rendering of the PGF
        #[arg(long, requires = "pgf")]
        csv: bool,
    },
    /// Exact sorting probability Pr(T_c1 > T_c2) - Pr(T_c2 > T_c1)
    Sortprob {
        shape: Partition,
        #[arg(long)]
        c1: Cell,
        #[arg(long)]
        c2: Cell,
    },
    /// Minimum |sorting probability| over unrelated cell pairs
    Minsp { shape: Partition },
    /// Fit the exact answer on k-row rectangles (n,...,n) as a rational
    /// function of n
    Fit {
        #[arg(long)]
        rows: usize,
        #[arg(long, value_enum)]
        target: FitTarget,
        /// occ target: the cell, e.g. 1,3
        #[arg(long)]
        cell: Option<Cell>,
        /// occ target: the occupant
        #[arg(long)]
        r: Option<usize>,
        /// sortprob target: first-row column of c1 = [1,j]
        #[arg(long)]
        j: Option<usize>,
        /// sortprob target: the lower cell
        #[arg(long)]
        c2: Option<Cell>,
    },
    /// First-row cell pairs whose sorting probability tends to zero
    Findzero {
        #[arg(long)]
        rows: usize,
        /// Largest column to scan
        #[arg(long)]
        max: usize,
    },
    /// Limiting (n -> infinity) occupancy distribution of [1,j] with moments
    Limitdist {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        j: usize,
        /// Include a two-column CSV rendering of the distribution
        #[arg(long)]
        csv: bool,
    },
    /// Total-variation distance between GNW sampling and the exact PGF
    Compare {
        shape: Partition,
        #[arg(long)]
        cell: Cell,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FitTarget {
    Occ,
    Sortprob,
}

/// A computed command body: echoed inputs, payload, warnings.
struct Body {
    inputs: Value,
    result: Value,
    warnings: Vec<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, outcome) = run(cli.command);
    match outcome {
        Ok(body) => {
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "command": name,
                "inputs": body.inputs,
                "result": body.result,
                "warnings": body.warnings,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::ShapeTooLarge { .. } => 3,
                Error::FitFailed(_) | Error::DivergesAtInfinity => 4,
                Error::InvalidPartition(_)
                | Error::CellOutsideShape { .. }
                | Error::SameCell
                | Error::InnerNotContained { .. } => 2,
                Error::DegenerateDistribution => 1,
            })
        }
    }
}

fn cell_str(c: Cell) -> String {
    format!("{},{}", c.row, c.col)
}

fn rat(x: &BigRational) -> Value {
    Value::String(x.to_string())
}

fn tableau_rows(t: &Tableau) -> Value {
    json!(t.rows())
}

fn cell_pair(p: &(Cell, Cell)) -> Value {
    json!([[p.0.row, p.0.col], [p.1.row, p.1.col]])
}

fn dist_map(d: &DiscreteDistribution) -> Value {
    let mut map = Map::new();
    for (x, p) in d.atoms() {
        map.insert(x.to_string(), rat(p));
    }
    Value::Object(map)
}

fn dist_csv(d: &DiscreteDistribution) -> String {
    let mut out = String::from("value,probability\n");
    for (x, p) in d.atoms() {
        out.push_str(&format!("{x},{p}\n"));
    }
    out
}

fn enum_cap() -> Result<usize, Error> {
    match std::env::var("SYT_MAX_CELLS") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::InvalidPartition(format!("bad SYT_MAX_CELLS value {s:?}"))),
        Err(_) => Ok(DEFAULT_ENUM_CAP),
    }
}

fn ratfunc_report(f: &RationalFunction) -> Result<Value, Error> {
    let (limit, series) = match f.limit_at_infinity() {
        Limit::Finite(l) => {
            let s = f.series_in_inverse_n(3)?;
            (
                rat(&l),
                json!({
                    "constant": rat(&s.constant),
                    "coeffs": s.coeffs.iter().map(rat).collect::<Vec<_>>(),
                }),
            )
        }
        Limit::Divergent => (Value::String("divergent".into()), Value::Null),
    };
    Ok(json!({
        "function": f.to_string(),
        "num": f.num().to_string(),
        "den": f.den().to_string(),
        "limit": limit,
        "series": series,
    }))
}

fn run(cmd: Command) -> (&'static str, Result<Body, Error>) {
    match cmd {
        Command::Count { shape } => ("count", cmd_count(shape)),
        Command::Enumerate { shape, limit } => ("enumerate", cmd_enumerate(shape, limit)),
        Command::Sample { shape, count, seed } => ("sample", cmd_sample(shape, count, seed)),
        Command::Occ { shape, cell, r, pgf, csv } => ("occ", cmd_occ(shape, cell, r, pgf, csv)),
        Command::Sortprob { shape, c1, c2 } => ("sortprob", cmd_sortprob(shape, c1, c2)),
        Command::Minsp { shape } => ("minsp", cmd_minsp(shape)),
        Command::Fit { rows, target, cell, r, j, c2 } => {
            ("fit", cmd_fit(rows, target, cell, r, j, c2))
        }
        Command::Findzero { rows, max } => ("findzero", cmd_findzero(rows, max)),
        Command::Limitdist { rows, j, csv } => ("limitdist", cmd_limitdist(rows, j, csv)),
        Command::Compare { shape, cell, samples, seed } => {
            ("compare", cmd_compare(shape, cell, samples, seed))
        }
    }
}

fn cmd_count(shape: Partition) -> Result<Body, Error> {
    let yf = count_syt_yf(&shape);
    let hook = count_syt_hook(&shape);
    if yf != hook {
        eprintln!("internal: formulas disagree on {shape}: {yf} vs {hook}");
        return Err(Error::DegenerateDistribution);
    }
    Ok(Body {
        inputs: json!({ "shape": shape.to_string() }),
        result: json!({ "yf": yf.to_string(), "hook": hook.to_string(), "agree": true }),
        warnings: vec![],
    })
}

fn cmd_enumerate(shape: Partition, limit: Option<usize>) -> Result<Body, Error> {
    let cap = enum_cap()?;
    let all: Vec<Tableau> = enumerate_syt_capped(&shape, cap)?.collect();
    let total = all.len();
    let listed: Vec<Value> = all
        .iter()
        .take(limit.unwrap_or(usize::MAX))
        .map(tableau_rows)
        .collect();
    Ok(Body {
        inputs: json!({ "shape": shape.to_string(), "limit": limit }),
        result: json!({
            "total": total,
            "listed": listed.len(),
            "tableaux": listed,
        }),
        warnings: vec![],
    })
}

fn cmd_sample(shape: Partition, count: u64, seed: u64) -> Result<Body, Error> {
    if count == 0 {
        return Err(Error::InvalidPartition("--count must be at least 1".into()));
    }
    let mut rng = rng_from_seed(seed);
    let tableaux: Vec<Value> =
        (0..count).map(|_| tableau_rows(&gnw_sample(&shape, &mut rng))).collect();
    Ok(Body {
        inputs: json!({ "shape": shape.to_string(), "count": count, "seed": seed }),
        result: json!({ "tableaux": tableaux }),
        warnings: vec![],
    })
}

fn cmd_occ(
    shape: Partition,
    cell: Cell,
    r: Option<usize>,
    pgf: bool,
    csv: bool,
) -> Result<Body, Error> {
    let inputs = json!({
        "shape": shape.to_string(),
        "cell": cell_str(cell),
        "r": r,
        "pgf": pgf,
    });
    let result = match (r, pgf) {
        (Some(r), false) => json!({ "prob": rat(&occupancy_prob(&shape, cell, r)?) }),
        (None, true) => {
            let d = occupancy_pgf(&shape, cell)?;
            let mut res = json!({ "pgf": dist_map(&d), "mean": rat(&d.mean()) });
            if csv {
                res["csv"] = Value::String(dist_csv(&d));
            }
            res
        }
        _ => {
            return Err(Error::InvalidPartition("pass exactly one of --r and --pgf".into()));
        }
    };
    Ok(Body { inputs, result, warnings: vec![] })
}

fn cmd_sortprob(shape: Partition, c1: Cell, c2: Cell) -> Result<Body, Error> {
    let sp = sort_prob(&shape, c1, c2)?;
    Ok(Body {
        inputs: json!({
            "shape": shape.to_string(),
            "c1": cell_str(c1),
            "c2": cell_str(c2),
        }),
        result: json!({ "sp": rat(&sp) }),
        warnings: vec![],
    })
}

fn cmd_minsp(shape: Partition) -> Result<Body, Error> {
    let inputs = json!({ "shape": shape.to_string() });
    let result = match min_sort_prob(&shape)? {
        Some((min, champions)) => json!({
            "min": rat(&min),
            "champions": champions.iter().map(cell_pair).collect::<Vec<_>>(),
        }),
        None => json!({ "min": Value::Null, "champions": [] }),
    };
    Ok(Body { inputs, result, warnings: vec![] })
}

fn cmd_fit(
    rows: usize,
    target: FitTarget,
    cell: Option<Cell>,
    r: Option<usize>,
    j: Option<usize>,
    c2: Option<Cell>,
) -> Result<Body, Error> {
    let fam = RectFamily::new(rows)?;
    let (inputs, f) = match target {
        FitTarget::Occ => {
            let (Some(cell), Some(r)) = (cell, r) else {
                return Err(Error::InvalidPartition(
                    "--target occ needs --cell and --r".into(),
                ));
            };
            let inputs = json!({
                "rows": rows, "target": "occ",
                "cell": cell_str(cell), "r": r,
            });
            (inputs, occupancy_prob_symbolic(fam, cell, r)?)
        }
        FitTarget::Sortprob => {
            let (Some(j), Some(c2)) = (j, c2) else {
                return Err(Error::InvalidPartition(
                    "--target sortprob needs --j and --c2".into(),
                ));
            };
            let inputs = json!({
                "rows": rows, "target": "sortprob",
                "j": j, "c2": cell_str(c2),
            });
            (inputs, sort_prob_symbolic(fam, j, c2)?)
        }
    };
    Ok(Body { inputs, result: ratfunc_report(&f)?, warnings: vec![] })
}

fn cmd_findzero(rows: usize, max: usize) -> Result<Body, Error> {
    let fam = RectFamily::new(rows)?;
    let report = find_zero_pairs(fam, max);
    Ok(Body {
        inputs: json!({ "rows": rows, "max": max }),
        result: json!({ "pairs": report.pairs.iter().map(cell_pair).collect::<Vec<_>>() }),
        warnings: report.warnings,
    })
}

fn cmd_limitdist(rows: usize, j: usize, csv: bool) -> Result<Body, Error> {
    let fam = RectFamily::new(rows)?;
    let d = limiting_occupancy(fam, j)?;
    let mut result = json!({
        "dist": dist_map(&d),
        "mean": rat(&d.mean()),
        "variance": rat(&d.variance()),
    });
    let mut warnings = vec![];
    match d.moments(6) {
        Ok(m) => {
            result["skewness_float"] = json!(m.scaled[0]);
            result["kurtosis_float"] = json!(m.scaled[1]);
            result["scaled_m5_float"] = json!(m.scaled[2]);
            result["scaled_m6_float"] = json!(m.scaled[3]);
        }
        Err(Error::DegenerateDistribution) => {
            warnings.push("distribution is degenerate; scaled moments undefined".into());
        }
        Err(e) => return Err(e),
    }
    if csv {
        result["csv"] = Value::String(dist_csv(&d));
    }
    Ok(Body {
        inputs: json!({ "rows": rows, "j": j }),
        result,
        warnings,
    })
}

fn cmd_compare(shape: Partition, cell: Cell, samples: u64, seed: u64) -> Result<Body, Error> {
    if samples == 0 {
        return Err(Error::InvalidPartition("--samples must be at least 1".into()));
    }
    let exact = occupancy_pgf(&shape, cell)?;
    let emp = empirical_occupancy(&shape, cell, samples, seed)?.as_distribution();
    Ok(Body {
        inputs: json!({
            "shape": shape.to_string(),
            "cell": cell_str(cell),
            "samples": samples,
            "seed": seed,
        }),
        result: json!({
            "exact": dist_map(&exact),
            "empirical": dist_map(&emp),
            "tv_float": exact.tv_distance(&emp),
        }),
        warnings: vec![],
    })
}
