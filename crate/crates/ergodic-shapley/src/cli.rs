//! Command-line front end.
//!
//! Subcommands: `estimate` (one estimator run), `learn` (fit and save a
//! pairing transformation), `replicate` (spread of R independent runs
//! against the baseline), `sweep` (mean learned correlation over an `m1`
//! grid), and `games list`. Reports are written as CSV (fixed headers,
//! floats with 17 significant digits so parsing recovers them bit-exactly)
//! or as JSON arrays of flat objects. Identical command lines with the same
//! seed produce byte-identical files at any thread count.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis;
use crate::error::{Error, Result};
use crate::estimate::{self, EstimateReport, Method, SeedPlan};
use crate::games::{self, GameId};
use crate::matching::{self, MatchingResult};
use crate::order::PositionPermutation;
use crate::rng;

/// Environment variable consulted for the default worker-thread count.
pub const THREADS_ENV: &str = "ERGODIC_SHAPLEY_THREADS";

#[derive(Parser)]
#[command(
    name = "ergodic-shapley",
    version,
    about = "Monte-Carlo Shapley value estimation with paired, negatively correlated sampling"
)]
pub struct Cli {
    /// Worker threads for replications and sweeps (default: all cores, or
    /// the ERGODIC_SHAPLEY_THREADS environment variable).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate one player's Shapley value and write one report row.
    Estimate(EstimateArgs),
    /// Learn a pairing transformation and serialize it as JSON.
    Learn(LearnArgs),
    /// Run one estimator configuration R times and compare its spread
    /// against the simple-sampling baseline.
    Replicate(ReplicateArgs),
    /// Average the learned correlation over a grid of learning sizes.
    Sweep(SweepArgs),
    /// Inspect the built-in games.
    Games(GamesArgs),
}

#[derive(Args)]
struct GameOpt {
    /// Game id; see `games list`.
    #[arg(long)]
    game: GameIdArg,
    /// Reduced player count (testing scales); defaults to the full instance.
    #[arg(long)]
    scale: Option<usize>,
}

// GameId parsed through its FromStr, so errors name the offending string.
type GameIdArg = GameId;

impl std::str::FromStr for EstimatorKind {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "simple" => Ok(EstimatorKind::Simple),
            "ergodic" => Ok(EstimatorKind::Ergodic),
            "optk2" => Ok(EstimatorKind::Optk2),
            other => Err(format!("unknown method '{other}' (simple | ergodic | optk2)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum EstimatorKind {
    Simple,
    Ergodic,
    Optk2,
}

#[derive(Args)]
struct MethodOpt {
    /// Estimator: simple | ergodic | optk2.
    #[arg(long)]
    method: EstimatorKind,
    /// Total budget in baseline-equivalent evaluations.
    #[arg(long)]
    m: u64,
    /// Learning sample size (optk2).
    #[arg(long)]
    m1: Option<u64>,
    /// Block length (ergodic); defaults to 2 when --transform is given.
    #[arg(long)]
    k: Option<u32>,
    /// Cyclic-shift amount building the ergodic transformation.
    #[arg(long)]
    shift: Option<u32>,
    /// JSON file with a learned matching to use as the transformation.
    #[arg(long)]
    transform: Option<PathBuf>,
}

impl MethodOpt {
    fn build(&self, n: usize) -> Result<Method> {
        match self.method {
            EstimatorKind::Simple => Ok(Method::Simple),
            EstimatorKind::Optk2 => {
                let m1 = self.m1.ok_or_else(|| {
                    Error::InvalidConfig("method optk2 requires --m1".into())
                })?;
                Ok(Method::OptK2 { learning_size: m1 })
            }
            EstimatorKind::Ergodic => {
                let transform = match (&self.shift, &self.transform) {
                    (Some(shift), None) => PositionPermutation::cyclic_shift(*shift, n)?,
                    (None, Some(path)) => {
                        let text = std::fs::read_to_string(path)?;
                        let matching = MatchingResult::from_json(&text)?;
                        if matching.n != n {
                            return Err(Error::SizeMismatch { expected: n, got: matching.n });
                        }
                        matching.involution
                    }
                    _ => {
                        return Err(Error::InvalidConfig(
                            "method ergodic requires exactly one of --shift or --transform".into(),
                        ))
                    }
                };
                let k = match self.k {
                    Some(k) => k,
                    None if self.transform.is_some() => 2,
                    None => {
                        return Err(Error::InvalidConfig(
                            "method ergodic requires --k (or --transform, which implies K = 2)"
                                .into(),
                        ))
                    }
                };
                Ok(Method::Ergodic { transform, block_len: k })
            }
        }
    }
}

#[derive(Args)]
struct OutputOpt {
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct EstimateArgs {
    #[command(flatten)]
    game: GameOpt,
    #[arg(long)]
    player: u32,
    #[command(flatten)]
    method: MethodOpt,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputOpt,
}

#[derive(Args)]
struct LearnArgs {
    #[command(flatten)]
    game: GameOpt,
    #[arg(long)]
    player: u32,
    /// Learning sample size.
    #[arg(long)]
    m1: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file for the matching JSON; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReplicateArgs {
    #[command(flatten)]
    game: GameOpt,
    #[arg(long)]
    player: u32,
    #[command(flatten)]
    method: MethodOpt,
    /// Replication count. The default is desk scale; the reference tables
    /// come from 1000.
    #[arg(short = 'R', long, default_value_t = 100)]
    replications: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Size of the dedicated sample behind the baseline sigma.
    #[arg(long, default_value_t = 200_000)]
    sigma_sample: u64,
    #[command(flatten)]
    output: OutputOpt,
}

#[derive(Args)]
struct SweepArgs {
    /// Games to sweep; defaults to all eight.
    #[arg(long, value_delimiter = ',')]
    games: Vec<GameIdArg>,
    /// Player; defaults per game to the benchmark choice (the last player
    /// for airport and bankruptcy, player 1 otherwise).
    #[arg(long)]
    player: Option<u32>,
    /// Learning sizes, one column per value.
    #[arg(
        long,
        value_delimiter = ',',
        default_values_t = vec![2u64, 15, 40, 100, 250, 610, 1525, 3800, 9500]
    )]
    m1_grid: Vec<u64>,
    /// Seeds averaged per cell.
    #[arg(long, default_value_t = 20)]
    seeds: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: OutputOpt,
}

#[derive(Args)]
struct GamesArgs {
    #[command(subcommand)]
    command: GamesCommand,
}

#[derive(Subcommand)]
enum GamesCommand {
    /// Print ids, player counts and exact Shapley availability.
    List,
}

/// Entry point used by the binary.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

/// Parse and run the given command line; for tests and embedding.
pub fn run_from<I, T>(args: I) -> Result<()>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)
        .map_err(|e| Error::InvalidConfig(e.to_string()))?;
    run(cli)
}

fn run(cli: Cli) -> Result<()> {
    setup_threads(cli.threads);
    match cli.command {
        Command::Estimate(args) => cmd_estimate(args),
        Command::Learn(args) => cmd_learn(args),
        Command::Replicate(args) => cmd_replicate(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Games(args) => match args.command {
            GamesCommand::List => cmd_games_list(),
        },
    }
}

fn setup_threads(flag: Option<usize>) {
    let from_env = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse().ok());
    if let Some(threads) = flag.or(from_env) {
        // Ignore failure: the global pool can only be initialized once.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
}

// ---------------------------------------------------------------------------
// Report rows
// ---------------------------------------------------------------------------

const REPORT_HEADER: &str = "game,player,method,m,m1,m2,K,seed,estimate,std_error,rho_hat,ratio";

#[derive(Debug, Serialize)]
struct ReportRow {
    game: String,
    player: u32,
    method: String,
    m: u64,
    m1: Option<u64>,
    m2: Option<u64>,
    k: Option<u32>,
    seed: u64,
    estimate: f64,
    std_error: f64,
    rho_hat: Option<f64>,
    ratio: Option<f64>,
}

impl ReportRow {
    fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.game,
            self.player,
            self.method,
            self.m,
            opt_int(self.m1),
            opt_int(self.m2),
            opt_int(self.k),
            self.seed,
            float17(self.estimate),
            float17(self.std_error),
            opt_float(self.rho_hat),
            opt_float(self.ratio),
        )
    }
}

const REPLICATE_HEADER: &str = "game,player,m,m1,m2,sigma_s,sigma_e,ratio";

#[derive(Debug, Serialize)]
struct ReplicateRow {
    game: String,
    player: u32,
    m: u64,
    m1: Option<u64>,
    m2: Option<u64>,
    sigma_s: f64,
    sigma_e: f64,
    ratio: f64,
}

impl ReplicateRow {
    fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.game,
            self.player,
            self.m,
            opt_int(self.m1),
            opt_int(self.m2),
            float17(self.sigma_s),
            float17(self.sigma_e),
            float17(self.ratio),
        )
    }
}

const SWEEP_HEADER: &str = "game,player,m1,seeds,mean_rho";

#[derive(Debug, Serialize)]
struct SweepRow {
    game: String,
    player: u32,
    m1: u64,
    seeds: u64,
    mean_rho: f64,
}

impl SweepRow {
    fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.game,
            self.player,
            self.m1,
            self.seeds,
            float17(self.mean_rho)
        )
    }
}

/// 17 significant digits; parsing the text recovers the value bit-exactly.
fn float17(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt_float(x: Option<f64>) -> String {
    x.map(float17).unwrap_or_default()
}

fn opt_int<T: std::fmt::Display>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn render<T: Serialize>(
    header: &str,
    csv_lines: Vec<String>,
    rows: &[T],
    format: OutputFormat,
) -> Result<String> {
    Ok(match format {
        OutputFormat::Csv => {
            let mut text = String::with_capacity(64 * (csv_lines.len() + 1));
            text.push_str(header);
            text.push('\n');
            for line in csv_lines {
                text.push_str(&line);
                text.push('\n');
            }
            text
        }
        OutputFormat::Json => {
            let mut text = serde_json::to_string_pretty(rows)?;
            text.push('\n');
            text
        }
    })
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

fn cmd_estimate(args: EstimateArgs) -> Result<()> {
    let game = games::make_game(args.game.game, args.game.scale)?;
    let method = args.method.build(game.player_count())?;
    let mut stream = rng::stream(args.seed);
    let report = match &method {
        Method::Simple => estimate::simple_mc(game.as_ref(), args.player, args.method.m, &mut stream)?,
        Method::Ergodic { transform, block_len } => estimate::ergodic_estimate(
            game.as_ref(),
            args.player,
            transform,
            *block_len,
            args.method.m,
            &mut stream,
        )?,
        Method::OptK2 { learning_size } => estimate::optk2_estimate(
            game.as_ref(),
            args.player,
            args.method.m,
            *learning_size,
            &mut stream,
        )?,
    };

    let row = ReportRow {
        game: args.game.game.to_string(),
        player: args.player,
        method: method.name().to_string(),
        m: report.m,
        m1: report.m1,
        m2: report.m2,
        k: report.k,
        seed: args.seed,
        estimate: report.estimate,
        std_error: report.std_error,
        rho_hat: report.rho_hat,
        ratio: predicted_ratio(&report),
    };
    eprintln!(
        "{} player {} ({}): estimate {:.6} +- {:.6}",
        row.game, row.player, row.method, row.estimate, row.std_error
    );
    let text = render(REPORT_HEADER, vec![row.csv_line()], &[row], args.output.format)?;
    emit(&text, &args.output.out)
}

/// Predicted standard-deviation ratio against the baseline, where the run
/// pairs its draws.
fn predicted_ratio(report: &EstimateReport) -> Option<f64> {
    let rho = report.rho_hat?;
    match (report.m2, report.k) {
        (Some(m2), _) => analysis::improvement_ratio(report.m as f64, m2 as f64, rho).ok(),
        (None, Some(2)) => {
            analysis::improvement_ratio(report.m as f64, report.m as f64 / 2.0, rho).ok()
        }
        _ => None,
    }
}

fn cmd_learn(args: LearnArgs) -> Result<()> {
    let game = games::make_game(args.game.game, args.game.scale)?;
    let mut stream = rng::stream(args.seed);
    let mut result = matching::learn_transformation(game.as_ref(), args.player, args.m1, &mut stream)?;
    result.seed = Some(args.seed);
    let json = result.to_json()?;
    eprintln!(
        "{} player {}: learned {} edges from m1 = {}, rho_hat_learning = {}",
        args.game.game,
        args.player,
        result.edges.len(),
        args.m1,
        opt_float_short(result.rho_hat_learning),
    );
    match &args.out {
        Some(path) => {
            std::fs::write(path, json)?;
            println!("rho_hat_learning = {}", opt_float_short(result.rho_hat_learning));
        }
        None => println!("{json}"),
    }
    Ok(())
}

fn opt_float_short(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.4}")).unwrap_or_else(|| "undefined".into())
}

fn cmd_replicate(args: ReplicateArgs) -> Result<()> {
    let game = games::make_game(args.game.game, args.game.scale)?;
    let method = args.method.build(game.player_count())?;
    let summary = estimate::replicate(
        game.as_ref(),
        args.player,
        &method,
        args.method.m,
        args.replications,
        &SeedPlan::Master(args.seed),
        args.sigma_sample,
    )?;
    eprintln!(
        "{} player {} ({}, R = {}): sigma_s {:.6e}, sigma_e {:.6e}, ratio {:.3}",
        args.game.game,
        args.player,
        method.name(),
        summary.r,
        summary.sigma_s,
        summary.sigma_e,
        summary.ratio
    );
    let row = ReplicateRow {
        game: args.game.game.to_string(),
        player: args.player,
        m: summary.m,
        m1: summary.m1,
        m2: summary.m2,
        sigma_s: summary.sigma_s,
        sigma_e: summary.sigma_e,
        ratio: summary.ratio,
    };
    let text = render(REPLICATE_HEADER, vec![row.csv_line()], &[row], args.output.format)?;
    emit(&text, &args.output.out)
}

/// Benchmark player choice per game: the estimators are measured on the
/// last player for airport and bankruptcy, player 1 elsewhere.
pub fn default_sweep_player(id: GameId) -> u32 {
    match id {
        GameId::Airport | GameId::Bankruptcy => id.default_scale() as u32,
        _ => 1,
    }
}

fn cmd_sweep(args: SweepArgs) -> Result<()> {
    use rayon::prelude::*;

    let ids = if args.games.is_empty() { GameId::ALL.to_vec() } else { args.games.clone() };
    if args.m1_grid.is_empty() || args.seeds == 0 {
        return Err(Error::InvalidConfig("sweep needs a non-empty m1 grid and seeds >= 1".into()));
    }

    // One deterministic substream per (game, m1, seed) cell.
    let mut cells = Vec::new();
    let mut counter = 0u64;
    for &id in &ids {
        for &m1 in &args.m1_grid {
            for _ in 0..args.seeds {
                cells.push((id, m1, counter));
                counter += 1;
            }
        }
    }

    let rhos: Vec<(GameId, u64, Option<f64>)> = cells
        .par_iter()
        .map(|&(id, m1, index)| -> Result<_> {
            let game = games::make_game(id, None)?;
            let player = args.player.unwrap_or_else(|| default_sweep_player(id));
            let mut stream = rng::substream(args.seed, index);
            let learned =
                matching::learn_transformation(game.as_ref(), player, m1, &mut stream)?;
            Ok((id, m1, learned.rho_hat_learning))
        })
        .collect::<Result<_>>()?;

    let mut rows = Vec::new();
    for &id in &ids {
        let player = args.player.unwrap_or_else(|| default_sweep_player(id));
        for &m1 in &args.m1_grid {
            let values: Vec<f64> = rhos
                .iter()
                .filter(|&&(rid, rm1, rho)| rid == id && rm1 == m1 && rho.is_some())
                .map(|&(_, _, rho)| rho.unwrap())
                .collect();
            let mean = values.iter().sum::<f64>() / values.len().max(1) as f64;
            rows.push(SweepRow {
                game: id.to_string(),
                player,
                m1,
                seeds: values.len() as u64,
                mean_rho: mean,
            });
            eprintln!("{id} m1 = {m1}: mean rho {mean:.3} over {} seeds", values.len());
        }
    }
    rows.sort_by(|a, b| (&a.game, a.m1).cmp(&(&b.game, b.m1)));

    // Wide summary, one line per game, for reading at the terminal.
    let mut wide = String::from("game \\ m1");
    for &m1 in &args.m1_grid {
        let _ = write!(wide, "\t{m1}");
    }
    for &id in &ids {
        let _ = write!(wide, "\n{id}");
        for &m1 in &args.m1_grid {
            let row = rows
                .iter()
                .find(|r| r.game == id.to_string() && r.m1 == m1)
                .expect("cell present");
            let _ = write!(wide, "\t{:+.2}", row.mean_rho);
        }
    }
    eprintln!("{wide}");

    let csv_lines = rows.iter().map(SweepRow::csv_line).collect();
    let text = render(SWEEP_HEADER, csv_lines, &rows, args.output.format)?;
    emit(&text, &args.output.out)
}

fn cmd_games_list() -> Result<()> {
    println!("{:<12} {:>4}  exact Shapley", "id", "n");
    for id in GameId::ALL {
        let n = id.default_scale();
        let line = match games::exact_shapley(id, 1)? {
            Some(value) if id == GameId::Airport => {
                let last = games::exact_shapley(id, n as u32)?.expect("closed form");
                format!("closed form (player 1: {value:.4}, player {n}: {last:.4})")
            }
            Some(value) => format!("{value} (all players)"),
            None => "unknown".to_string(),
        };
        println!("{:<12} {:>4}  {}", id.to_string(), n, line);
    }
    Ok(())
}
