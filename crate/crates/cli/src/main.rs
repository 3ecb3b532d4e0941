mod render;

use std::net::SocketAddr;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use chips_core::theory::{survival_plan, theory_bound};
use chips_core::verify::DEFAULT_RULE1_NODES;
use chips_core::{
    min_exchanges, rule1_only_enumerate, run_cooperative, solvable, verify_minimal_sufficient, GameConfig,
    GameError, PieceSet, SearchBudget, SearchGoal, SearchStatus,
};
use chips_service::{SessionStore, DATA_DIR_ENV};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::render::Format;

#[derive(Parser)]
#[command(name = "chips", version, about = "Planner, exact search and session server for the survival game")]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Table)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the pool can reach three dominoes.
    Check(Dist),
    /// Print a survival plan and its cost.
    Plan(Game),
    /// Exact minimum number of exchanges, with the matching closed form.
    Optimal {
        #[command(flatten)]
        game: Game,
        #[arg(long)]
        max_cost: Option<u32>,
        #[arg(long)]
        max_nodes: Option<usize>,
        #[arg(long)]
        max_steps: Option<u32>,
    },
    /// Search every distribution up to a size for the minimal sufficient sets.
    VerifyMinimal {
        #[arg(long, default_value_t = 12)]
        max_chips: u32,
    },
    /// Enumerate all Rule-1-only plays and their terminal states.
    Rule1Terminal {
        #[command(flatten)]
        dist: Dist,
        #[arg(long, default_value_t = DEFAULT_RULE1_NODES)]
        max_nodes: usize,
    },
    /// Play the cooperative policy and print the transcript.
    Simulate {
        #[command(flatten)]
        game: Game,
        #[arg(long)]
        max_steps: Option<u32>,
    },
    /// Run the session HTTP API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: std::net::IpAddr,
        #[arg(long, env = DATA_DIR_ENV, default_value = "sessions")]
        data_dir: PathBuf,
    },
}

#[derive(Args)]
struct Dist {
    /// a,b,c[,x[,d]]: colored chips, then jokers and dominoes.
    #[arg(long, value_parser = parse_dist)]
    dist: PieceSet,
}

#[derive(Args)]
struct Game {
    #[command(flatten)]
    dist: Dist,
    /// Defaults to half the colored chips.
    #[arg(long)]
    players: Option<u32>,
}

impl Game {
    fn config(&self) -> Result<GameConfig, GameError> {
        let initial = self.dist.dist;
        GameConfig::new(self.players.unwrap_or(initial.colored_total() / 2), initial)
    }
}

fn parse_dist(s: &str) -> Result<PieceSet, String> {
    let counts = s
        .split(',')
        .map(|v| v.trim().parse::<u32>().map_err(|e| format!("{v:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    let (chips, rest) = match counts.len() {
        3..=5 => counts.split_at(3),
        n => return Err(format!("expected a,b,c[,x[,d]], got {n} values")),
    };
    let initial = PieceSet::new(
        [chips[0], chips[1], chips[2]],
        rest.first().copied().unwrap_or(0),
        rest.get(1).copied().unwrap_or(0),
    );
    Ok(initial.canonicalize())
}

/// Exit status for a finished command: success, or a negative answer.
enum Outcome {
    Ok,
    Negative,
}

fn exit_for(e: &GameError) -> ExitCode {
    match e {
        GameError::NotSolvable
        | GameError::TrivialGame { .. }
        | GameError::StepBudgetExceeded { .. }
        | GameError::StateSpaceTooLarge { .. } => ExitCode::from(1),
        _ => ExitCode::from(2),
    }
}

fn run(cli: Cli) -> Result<Outcome, GameError> {
    let fmt = cli.format;
    match cli.command {
        Command::Check(Dist { dist }) => {
            let verdict = solvable(&dist);
            render::verdict(fmt, &dist, &verdict);
            Ok(if verdict.solvable { Outcome::Ok } else { Outcome::Negative })
        }
        Command::Plan(game) => {
            let config = game.config()?;
            let script = survival_plan(&config)?;
            render::plan(fmt, &config, &script);
            Ok(Outcome::Ok)
        }
        Command::Optimal { game, max_cost, max_nodes, max_steps } => {
            let config = game.config()?;
            let goal = SearchGoal::dominoes(config.players)?;
            let mut budget = SearchBudget::for_goal(&config.initial, &goal);
            if let Some(c) = max_cost.or(max_steps) {
                budget.max_cost = c;
            }
            if let Some(n) = max_nodes {
                budget.max_nodes = n;
            }
            budget.validate()?;
            let result = min_exchanges(&config.initial, &goal, &budget);
            render::optimal(fmt, &config, &budget, &result, theory_bound(&config).as_ref());
            Ok(match result.status {
                SearchStatus::Optimal => Outcome::Ok,
                _ => Outcome::Negative,
            })
        }
        Command::VerifyMinimal { max_chips } => {
            let report = verify_minimal_sufficient(max_chips);
            render::minimal(fmt, &report);
            Ok(if report.counterexamples.is_empty() { Outcome::Ok } else { Outcome::Negative })
        }
        Command::Rule1Terminal { dist, max_nodes } => {
            let report = rule1_only_enumerate(&dist.dist, max_nodes)?;
            render::rule1(fmt, &report);
            Ok(Outcome::Ok)
        }
        Command::Simulate { game, max_steps } => {
            let config = game.config()?;
            let run = run_cooperative(&config, max_steps.unwrap_or(config.default_max_steps()))?;
            render::simulation(fmt, &config, &run);
            Ok(Outcome::Ok)
        }
        Command::Serve { port, host, data_dir } => {
            if let Err(e) = serve(SocketAddr::new(host, port), data_dir) {
                eprintln!("error: {e:#}");
                return Ok(Outcome::Negative);
            }
            Ok(Outcome::Ok)
        }
    }
}

fn serve(addr: SocketAddr, data_dir: PathBuf) -> anyhow::Result<()> {
    tracing_subscriber::fmt().with_writer(std::io::stderr).init();
    let store = Arc::new(SessionStore::open(data_dir)?);
    let runtime = tokio::runtime::Runtime::new()?;
    runtime.block_on(chips_service::serve(store, addr))?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let fmt = cli.format;
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Negative) => ExitCode::from(1),
        Err(e) => {
            match fmt {
                Format::Doc => render::print_doc(&json!({"error": {"code": e.code(), "message": e.to_string()}})),
                Format::Table => eprintln!("error: {e}"),
            }
            exit_for(&e)
        }
    }
}
