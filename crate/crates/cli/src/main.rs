mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bifree::bichromatic::{enumerate_bnc, is_bnc, BncPartition, ChiMap};
use bifree::cumulants::{free_cumulants_from_moments, moments_from_free_cumulants, CumulantSeq, MomentSeq};
use bifree::limit_law::mu_q_moments_recurrence;
use bifree::matrix_model::{
    compare_to_prediction, delta_spectrum, empirical_moments, predicted_moments, EnsembleSpec, SimConfig,
};
use bifree::meanders::{loop_count, loop_distribution, MeandricSystem};
use bifree::partitions::{
    classify_pair_partition, count_bicon_pairs, enumerate_noncrossing, enumerate_pair_noncrossing,
    enumerate_pair_partitions, enumerate_partitions,
};
use bifree::rational::{bell, catalan, parse_rational, Rational};
use bifree::tensor_clt::{convergence_table, moment_profile, moment_profile_bifree, TensorCltInput, DEFAULT_MAX_ORDER};
use bifree::{Error, SetPartition};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use output::{Format, Numbers, Report};

/// Bi-free combinatorics, exact tensor CLT moments and the matrix model.
#[derive(Parser)]
#[command(name = "bifree", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    output: Format,
    /// Print rationals as floating point numbers.
    #[arg(long, global = true)]
    numeric: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Set partitions and their special classes.
    #[command(subcommand)]
    Partitions(PartitionsCmd),
    /// Bi-non-crossing partitions for a left/right pattern.
    #[command(subcommand)]
    Bnc(BncCmd),
    /// Meandric systems and their loop counts.
    #[command(subcommand)]
    Meander(MeanderCmd),
    /// Moment and free cumulant transforms.
    #[command(subcommand)]
    Cumulants(CumulantsCmd),
    /// Exact finite-n moments of the tensor sum.
    #[command(subcommand)]
    Clt(CltCmd),
    /// Moments of the limit law mu_q.
    #[command(subcommand)]
    Limit(LimitCmd),
    /// Monte Carlo estimate of tr(Delta^m) against the exact prediction.
    Simulate(SimulateArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    All,
    Nc,
    Nc2,
    Pairs,
    Bicon,
}

#[derive(Subcommand)]
enum PartitionsCmd {
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Kind::All)]
        kind: Kind,
    },
    List {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Kind::All)]
        kind: Kind,
    },
}

#[derive(Subcommand)]
enum BncCmd {
    List {
        /// Pattern over {L, R}, e.g. LRLR.
        #[arg(long)]
        chi: String,
        /// Keep only partitions with no block mixing sides.
        #[arg(long)]
        vertically_split: bool,
    },
    Check {
        #[arg(long)]
        chi: String,
        /// Blocks separated by `|`, elements by `,`.
        #[arg(long)]
        partition: String,
    },
}

#[derive(Subcommand)]
enum MeanderCmd {
    Dist {
        #[arg(long)]
        size: usize,
    },
    Loops {
        /// `top=1,2|3,4;bottom=1,4|2,3`
        #[arg(long)]
        system: String,
    },
}

#[derive(Subcommand)]
enum CumulantsCmd {
    /// Free cumulants (JSON file) to moments.
    ToMoments {
        #[arg(long)]
        input: PathBuf,
    },
    /// Moments (JSON file) to free cumulants.
    FromMoments {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Route {
    Tensor,
    Bifree,
}

#[derive(Subcommand)]
enum CltCmd {
    Moments {
        /// Moment orders, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        m: Vec<usize>,
        /// Number of summands, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u64>,
        /// Moments JSON: one array for both legs or {"a": [...], "b": [...]}.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Route::Tensor)]
        route: Route,
        /// Largest m allowed.
        #[arg(long)]
        max_m: Option<usize>,
    },
    Table {
        #[arg(long)]
        m: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u64>,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        max_m: Option<usize>,
    },
}

#[derive(Subcommand)]
enum LimitCmd {
    Moments {
        #[arg(long)]
        q: String,
        #[arg(long = "K")]
        k: usize,
    },
}

#[derive(clap::Args)]
struct SimulateArgs {
    #[arg(long, default_value_t = 2)]
    d: usize,
    #[arg(long, default_value_t = 100)]
    n: usize,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    lambda: f64,
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
    #[arg(long, default_value_t = 4)]
    max_moment: usize,
    /// Center with the sampled tr(W_j) instead of lambda (biased).
    #[arg(long)]
    empirical_means: bool,
    /// Write the eigenvalues of one sampled Delta to this file.
    #[arg(long)]
    dump_spectrum: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Resource(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Resource(_) => Failure::Resource(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type CmdResult = Result<Report, Failure>;

const LIST_CAP: usize = 10;
const BNC_CAP: usize = 10;
const CUMULANT_CAP: usize = 10;
const LIMIT_CAP: usize = 16;
const COUNT_LIMIT: usize = 24;

/// `BIFREE_MAX_SIZE` replaces every default size cap.
fn cap(default: usize) -> Result<usize, Failure> {
    match std::env::var("BIFREE_MAX_SIZE") {
        Ok(v) => v.trim().parse().map_err(|_| Failure::Usage(format!("BIFREE_MAX_SIZE must be a number, got {v:?}"))),
        Err(_) => Ok(default),
    }
}

fn enforce(what: &str, value: usize, limit: usize) -> Result<(), Failure> {
    if value > limit {
        return Err(Failure::Resource(format!(
            "{what} = {value} exceeds the cap {limit} (raise it with BIFREE_MAX_SIZE)"
        )));
    }
    Ok(())
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn parse_input(path: &Path) -> Result<TensorCltInput, Failure> {
    let text = read(path)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("bad JSON in {}: {e}", path.display())))?;
    let seq = |v: &Value| MomentSeq::from_json(&v.to_string());
    Ok(match &value {
        Value::Array(_) => TensorCltInput::symmetric(seq(&value)?)?,
        Value::Object(map) => match (map.get("a"), map.get("b")) {
            (Some(a), Some(b)) => TensorCltInput::new(seq(a)?, seq(b)?)?,
            _ => return Err(Failure::Usage("input object needs keys \"a\" and \"b\"".into())),
        },
        _ => return Err(Failure::Usage("input must be a JSON array or an {\"a\", \"b\"} object".into())),
    })
}

fn partitions_of(n: usize, kind: Kind) -> Vec<SetPartition> {
    match kind {
        Kind::All => enumerate_partitions(n).collect(),
        Kind::Nc => enumerate_noncrossing(n).collect(),
        Kind::Nc2 => enumerate_pair_noncrossing(n),
        Kind::Pairs => enumerate_pair_partitions(n),
        Kind::Bicon => enumerate_pair_partitions(n)
            .into_iter()
            .filter(|p| classify_pair_partition(p).is_bipartite_connected)
            .collect(),
    }
}

fn count(n: usize, kind: Kind) -> Result<u64, Failure> {
    if n > COUNT_LIMIT {
        return Err(Failure::Usage(format!("counts are limited to n <= {COUNT_LIMIT}")));
    }
    let even = n.is_multiple_of(2);
    Ok(match kind {
        Kind::All => bell(n),
        Kind::Nc => catalan(n),
        Kind::Nc2 if even => catalan(n / 2),
        Kind::Pairs if even => (1..n as u64).step_by(2).product(),
        Kind::Bicon if even && n > 0 => count_bicon_pairs(n)?,
        _ => 0,
    })
}

fn partitions_cmd(cmd: &PartitionsCmd) -> CmdResult {
    match cmd {
        PartitionsCmd::Count { n, kind } => {
            let c = count(*n, *kind)?;
            Ok(Report::new(
                json!({ "n": n, "kind": kind_name(*kind), "count": c }),
                vec![vec!["n".into(), "kind".into(), "count".into()], vec![n.to_string(), kind_name(*kind).into(), c.to_string()]],
            ))
        }
        PartitionsCmd::List { n, kind } => {
            enforce("n", *n, cap(LIST_CAP)?)?;
            Ok(Report::partition_list(&partitions_of(*n, *kind)))
        }
    }
}

fn kind_name(kind: Kind) -> &'static str {
    match kind {
        Kind::All => "all",
        Kind::Nc => "nc",
        Kind::Nc2 => "nc2",
        Kind::Pairs => "pairs",
        Kind::Bicon => "bicon",
    }
}

fn bnc_cmd(cmd: &BncCmd) -> CmdResult {
    match cmd {
        BncCmd::List { chi, vertically_split } => {
            let chi: ChiMap = chi.parse()?;
            enforce("length of chi", chi.n(), cap(BNC_CAP)?)?;
            let parts: Vec<SetPartition> = enumerate_bnc(&chi)
                .into_iter()
                .filter(|p| !vertically_split || p.is_vertically_split())
                .map(|p| p.partition().clone())
                .collect();
            Ok(Report::partition_list(&parts))
        }
        BncCmd::Check { chi, partition } => {
            let chi: ChiMap = chi.parse()?;
            let pi: SetPartition = partition.parse()?;
            let bnc = is_bnc(&pi, &chi)?;
            let vs = bnc && BncPartition::new(pi.clone(), chi.clone())?.is_vertically_split();
            Ok(Report::new(
                json!({ "chi": chi.to_string(), "partition": pi.to_string(), "bnc": bnc, "vertically_split": vs }),
                vec![
                    vec!["chi".into(), "partition".into(), "bnc".into(), "vertically_split".into()],
                    vec![chi.to_string(), pi.to_string(), bnc.to_string(), vs.to_string()],
                ],
            ))
        }
    }
}

fn meander_cmd(cmd: &MeanderCmd) -> CmdResult {
    match cmd {
        MeanderCmd::Dist { size } => {
            enforce("size", *size, cap(bifree::meanders::MAX_DISTRIBUTION_SIZE)?)?;
            let hist = loop_distribution(*size)?;
            let obj: serde_json::Map<String, Value> = hist.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
            let mut rows = vec![vec!["loops".to_string(), "count".to_string()]];
            rows.extend(hist.iter().map(|(k, v)| vec![k.to_string(), v.to_string()]));
            Ok(Report::new(Value::Object(obj), rows))
        }
        MeanderCmd::Loops { system } => {
            let s: MeandricSystem = system.parse()?;
            let c = loop_count(&s);
            Ok(Report::new(
                json!({ "size": s.size(), "loops": c }),
                vec![vec!["size".into(), "loops".into()], vec![s.size().to_string(), c.to_string()]],
            ))
        }
    }
}

fn cumulants_cmd(cmd: &CumulantsCmd, nums: Numbers) -> CmdResult {
    let limit = cap(CUMULANT_CAP)?;
    let (header, values) = match cmd {
        CumulantsCmd::ToMoments { input } => {
            let cs = CumulantSeq::from_json(&read(input)?)?;
            enforce("order", cs.order(), limit)?;
            ("moment", moments_from_free_cumulants(&cs)?.values().to_vec())
        }
        CumulantsCmd::FromMoments { input } => {
            let ms = MomentSeq::from_json(&read(input)?)?;
            enforce("order", ms.order(), limit)?;
            ("cumulant", free_cumulants_from_moments(&ms)?.values().to_vec())
        }
    };
    Ok(Report::sequence(header, &values, nums))
}

fn clt_cmd(cmd: &CltCmd, nums: Numbers) -> CmdResult {
    match cmd {
        CltCmd::Moments { m, n, input, route, max_m } => {
            let input = parse_input(input)?;
            let limit = max_m.map_or_else(|| cap(DEFAULT_MAX_ORDER), Ok)?;
            for &order in m {
                enforce("m", order, limit)?;
            }
            if n.contains(&0) {
                return Err(Failure::Usage("n must be at least 1".into()));
            }
            let mut rows = Vec::new();
            for &order in m {
                let profile = match route {
                    Route::Tensor => moment_profile(order, &input)?,
                    Route::Bifree => moment_profile_bifree(order, &input)?,
                };
                for &count in n {
                    rows.push(profile.at(count)?);
                }
            }
            Ok(Report::clt_rows(&rows, nums))
        }
        CltCmd::Table { m, n, input, max_m } => {
            let input = parse_input(input)?;
            enforce("m", *m, max_m.map_or_else(|| cap(DEFAULT_MAX_ORDER), Ok)?)?;
            if n.contains(&0) {
                return Err(Failure::Usage("n must be at least 1".into()));
            }
            Ok(Report::convergence(&convergence_table(*m, n, &input)?, nums))
        }
    }
}

fn limit_cmd(cmd: &LimitCmd, nums: Numbers) -> CmdResult {
    let LimitCmd::Moments { q, k } = cmd;
    let q: Rational = parse_rational(q)?;
    enforce("K", *k, cap(LIMIT_CAP)?)?;
    Ok(Report::sequence("moment", mu_q_moments_recurrence(&q, *k)?.values(), nums))
}

fn simulate_cmd(args: &SimulateArgs) -> CmdResult {
    let spec = EnsembleSpec::gue(args.n, args.sigma, args.lambda);
    let config = SimConfig {
        d: args.d,
        n: args.n,
        trials: args.trials,
        seed: args.seed,
        max_moment: args.max_moment,
        empirical_means: args.empirical_means,
    };
    if args.empirical_means {
        eprintln!("warning: empirical centering biases the estimates; predictions assume the analytic mean");
    }
    if let Some(path) = &args.dump_spectrum {
        let eig = delta_spectrum(&config, &spec)?;
        let mut w = csv::Writer::from_path(path).map_err(|e| Failure::Io(e.to_string()))?;
        for e in eig {
            w.write_record([e.to_string()]).map_err(|e| Failure::Io(e.to_string()))?;
        }
        w.flush().map_err(|e| Failure::Io(e.to_string()))?;
    }
    let est = empirical_moments(&config, &spec)?;
    let predictable = args.max_moment.min(DEFAULT_MAX_ORDER);
    let mut exact: Vec<f64> = predicted_moments(args.d, args.lambda, args.sigma, predictable)?;
    exact.resize(args.max_moment, f64::NAN);
    let scores = compare_to_prediction(&est, &exact)?;
    Ok(Report::simulation(&scores))
}

fn run(cli: &Cli) -> CmdResult {
    let nums = if cli.numeric { Numbers::Float } else { Numbers::Exact };
    match &cli.command {
        Command::Partitions(c) => partitions_cmd(c),
        Command::Bnc(c) => bnc_cmd(c),
        Command::Meander(c) => meander_cmd(c),
        Command::Cumulants(c) => cumulants_cmd(c, nums),
        Command::Clt(c) => clt_cmd(c, nums),
        Command::Limit(c) => limit_cmd(c, nums),
        Command::Simulate(a) => simulate_cmd(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|report| report.print(cli.output).map_err(Failure::Io));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
