//! Table and document output for each command.

use std::io::Write;

use chips_core::{
    CooperativeRun, CostReport, ExchangeScript, GameConfig, MinimalSufficientReport, PieceSet, Rule1Report,
    SearchBudget, SearchResult, SolvabilityVerdict,
};
use clap::ValueEnum;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Doc,
}

pub fn print_doc(doc: &Value) {
    let text = serde_json::to_string_pretty(doc).expect("documents serialize");
    // A closed pipe (e.g. `| head`) is not an error for a report.
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn triple(t: [u32; 3]) -> String {
    format!("({},{},{})", t[0], t[1], t[2])
}

fn print_script(script: &ExchangeScript) {
    println!("{:>4}  {:<9} {:<14} after", "step", "phase", "exchange");
    for (i, step) in script.steps().iter().enumerate() {
        println!("{:>4}  {:<9} {:<14} {}", i + 1, step.phase.to_string(), step.exchange.to_string(), step.after);
    }
}

pub fn verdict(fmt: Format, initial: &PieceSet, verdict: &SolvabilityVerdict) {
    match fmt {
        Format::Doc => print_doc(&json!({"instance": initial, "verdict": verdict})),
        Format::Table => match verdict.witness {
            Some(w) => println!("{initial}: solvable, contains {w}"),
            None if verdict.solvable => println!("{initial}: solvable"),
            None => println!("{initial}: not solvable"),
        },
    }
}

pub fn plan(fmt: Format, config: &GameConfig, script: &ExchangeScript) {
    match fmt {
        Format::Doc => print_doc(&json!({
            "instance": config.initial,
            "players": config.players,
            "cost": script.cost(),
            "script": script,
        })),
        Format::Table => {
            println!("{} for {} players", config.initial, config.players);
            print_script(script);
            println!("cost {}", script.cost());
        }
    }
}

pub fn optimal(
    fmt: Format,
    config: &GameConfig,
    budget: &SearchBudget,
    result: &SearchResult,
    bound: Option<&CostReport>,
) {
    match fmt {
        Format::Doc => print_doc(&json!({
            "instance": config.initial,
            "players": config.players,
            "budget": budget,
            "status": result.status,
            "cost": result.cost,
            "witness": result.witness,
            "nodesExpanded": result.nodes_expanded,
            "frontierPeak": result.frontier_peak,
            "capPruned": result.cap_pruned,
            "formula": bound,
        })),
        Format::Table => {
            println!("{} for {} players", config.initial, config.players);
            if let Some(w) = &result.witness {
                print_script(w);
            }
            let cost = result.cost.map_or("-".to_string(), |c| c.to_string());
            println!("status {}, minimum {cost}, nodes {}", result.status, result.nodes_expanded);
            if result.cap_pruned > 0 {
                println!("joker cap {} pruned {} successors", budget.joker_cap, result.cap_pruned);
            }
            match bound {
                Some(b) => println!("formula {} ({} case), plan {}", b.formula_cost, b.scenario, b.plan_cost),
                None => println!("no closed form applies"),
            }
        }
    }
}

pub fn minimal(fmt: Format, report: &MinimalSufficientReport) {
    match fmt {
        Format::Doc => print_doc(&json!(report)),
        Format::Table => {
            let sets: Vec<String> = report.minimal_sets.iter().map(|t| triple(*t)).collect();
            println!(
                "distributions up to {} chips: {} ordered, {} canonical, {} sufficient",
                report.max_total_chips, report.ordered_triples, report.canonical_triples, report.sufficient_canonical
            );
            if sets.is_empty() {
                println!("minimal sufficient sets: none");
            } else {
                println!("minimal sufficient sets: {}", sets.join(", "));
            }
            for t in &report.counterexamples {
                println!("counterexample: {}", triple(*t));
            }
        }
    }
}

pub fn rule1(fmt: Format, report: &Rule1Report) {
    match fmt {
        Format::Doc => print_doc(&json!(report)),
        Format::Table => {
            println!("{}: {} states, max dominoes {}", report.initial, report.nodes, report.max_dominoes);
            for t in &report.terminals {
                println!("terminal {t}");
            }
            for v in &report.violations {
                println!("violation {v}");
            }
        }
    }
}

pub fn simulation(fmt: Format, config: &GameConfig, run: &CooperativeRun) {
    match fmt {
        Format::Doc => print_doc(&json!({
            "instance": config.initial,
            "players": config.players,
            "terminal": run.terminal,
            "cost": run.script.cost(),
            "script": run.script,
        })),
        Format::Table => {
            println!("{} for {} players", config.initial, config.players);
            print_script(&run.script);
            let outcome = if run.survived() { "survived" } else { "halted" };
            println!("{outcome} after {} exchanges", run.script.cost());
        }
    }
}
