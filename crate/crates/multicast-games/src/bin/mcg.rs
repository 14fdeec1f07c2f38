//! `mcg` — command-line front end for the multicast-games solvers.
//!
//! Subcommands: `eval`, `solve-min`, `local-search`, `brd`, `oracle-min`,
//! `oracle-local`, `gen-reduction`, `gen-random`.
//!
//! Exit codes: 0 success; 1 usage; 2 invalid input (parse/validation);
//! 3 no improving exchange (`local-search`/`oracle-local` only); 4 capacity
//! (instance too large for the requested operation).

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use multicast_games::dp::min_potential;
use multicast_games::error::Error;
use multicast_games::game::{is_nash, player_cost, potential, total_cost, Arena, StrategyProfile};
use multicast_games::gen::{random_arena, random_profile, rng_from_seed, ArenaConfig};
use multicast_games::io::{
    arena_document, canonical_json, parse_arena, parse_coloured_graph, parse_profile,
    profile_document, reduction_bundle_document, reduction_meta_document, serialize_profile,
};
use multicast_games::local_search::{
    best_response_dynamics, improving_move_with, LocalSearchOptions,
};
use multicast_games::oracle::{brute_improving_move, brute_min_potential, OracleLimits};
use multicast_games::reduction::{generate_with, ReductionOptions};
use multicast_games::Result;

#[derive(Parser)]
#[command(
    name = "mcg",
    about = "Exact solvers for multicast cost-sharing games",
    version,
    disable_help_subcommand = true
)]
struct Cli {
    /// Worker threads for DP/local-search parallelism (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    parallel: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(clap::Args)]
struct OutputArgs {
    /// Write the result here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Output format: machine-readable JSON or human-readable text.
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a profile: potential, player costs, Nash check.
    Eval {
        /// Arena document (JSON).
        #[arg(long, value_name = "FILE")]
        arena: PathBuf,
        /// Strategy-profile document (JSON).
        #[arg(long, value_name = "FILE")]
        profile: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exact global minimum of the potential (subset DP).
    SolveMin {
        /// Arena document (JSON).
        #[arg(long, value_name = "FILE")]
        arena: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Find an improving exchange of at most k players (exit 3 if none).
    LocalSearch {
        /// Arena document (JSON).
        #[arg(long, value_name = "FILE")]
        arena: PathBuf,
        /// Strategy-profile document (JSON).
        #[arg(long, value_name = "FILE")]
        profile: PathBuf,
        /// Exchange size: how many players may move at once.
        #[arg(long, value_name = "K")]
        k: usize,
        /// Return the first improving exchange instead of the best one.
        #[arg(long)]
        first_found: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Best-response dynamics with the least-index pivot rule.
    Brd {
        /// Arena document (JSON).
        #[arg(long, value_name = "FILE")]
        arena: PathBuf,
        /// Strategy-profile document (JSON).
        #[arg(long, value_name = "FILE")]
        profile: PathBuf,
        /// Stop after this many best-response steps.
        #[arg(long, value_name = "N")]
        max_steps: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Brute-force minimum potential (small instances only).
    OracleMin {
        /// Arena document (JSON).
        #[arg(long, value_name = "FILE")]
        arena: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Brute-force improving exchange (small instances only; exit 3 if none).
    OracleLocal {
        /// Arena document (JSON).
        #[arg(long, value_name = "FILE")]
        arena: PathBuf,
        /// Strategy-profile document (JSON).
        #[arg(long, value_name = "FILE")]
        profile: PathBuf,
        /// Exchange size: how many players may move at once.
        #[arg(long, value_name = "K")]
        k: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Generate a local-search instance from a Multicoloured Clique input.
    GenReduction {
        /// Coloured-graph JSON: {"classes": [[...], ...], "edges": [[a, b], ...]}.
        #[arg(long, value_name = "FILE")]
        clique_file: PathBuf,
        /// Label no-clique instances "no" instead of "unknown" (trusts the
        /// W ≥ 1 threshold as sufficient).
        #[arg(long)]
        trust_w_threshold: bool,
        /// Prefix: writes PREFIX.arena.json, PREFIX.profile.json,
        /// PREFIX.meta.json. Without it, one bundle document goes to stdout.
        #[arg(long, value_name = "PREFIX")]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Generate a seeded random arena and profile.
    GenRandom {
        #[arg(long, value_name = "SEED")]
        seed: u64,
        /// Shape limits (defaults match the oracle-scale test corpus).
        #[arg(long, default_value_t = 7, value_name = "N")]
        max_vertices: usize,
        #[arg(long, default_value_t = 4, value_name = "N")]
        max_extra_arcs: usize,
        #[arg(long, default_value_t = 4, value_name = "N")]
        max_players: usize,
        /// Fair-share costs only (no table costs).
        #[arg(long)]
        no_table: bool,
        #[arg(long, default_value_t = 6, value_name = "N")]
        max_base: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let informational = matches!(
                e.kind(),
                ErrorKind::DisplayHelp
                    | ErrorKind::DisplayVersion
                    | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
            );
            let _ = e.print();
            return if informational { 0 } else { 1 };
        }
    };
    if let Some(n) = cli.parallel {
        // Build the global pool once; later calls inherit it.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Capacity(_) => 4,
                _ => 2,
            }
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

fn load_arena(path: &Path) -> Result<Arena> {
    parse_arena(&read(path)?)
}

fn load_profile(path: &Path, arena: &Arena) -> Result<StrategyProfile> {
    parse_profile(&read(path)?, arena)
}

fn emit(output: &OutputArgs, content: &str) -> Result<()> {
    match &output.out {
        Some(path) => fs::write(path, content)
            .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn path_names(arena: &Arena, path: &[multicast_games::game::VertexId]) -> Vec<String> {
    path.iter()
        .map(|&v| arena.vertex_name(v).to_string())
        .collect()
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Eval {
            arena,
            profile,
            output,
        } => {
            let arena = load_arena(&arena)?;
            let s = load_profile(&profile, &arena)?;
            let phi = potential(&arena, &s);
            let total = total_cost(&arena, &s);
            let costs: Vec<_> = (0..arena.num_players())
                .map(|i| player_cost(&arena, &s, i))
                .collect::<Result<_>>()?;
            let (nash, deviation) = is_nash(&arena, &s);
            let content = match output.format {
                Format::Json => canonical_json(&json!({
                    "potential": phi.to_string(),
                    "total_cost": total.to_string(),
                    "player_costs": costs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "nash": nash,
                    "deviation": deviation.as_ref().map(|d| json!({
                        "player": d.player,
                        "path": path_names(&arena, &d.path),
                        "cost": d.cost.to_string(),
                    })),
                })),
                Format::Text => {
                    let mut text = format!("potential   {phi}\ntotal cost  {total}\n");
                    for (i, c) in costs.iter().enumerate() {
                        text.push_str(&format!(
                            "player {i}    {c}  ({})\n",
                            arena.format_path(s.path(i))
                        ));
                    }
                    text.push_str(&format!(
                        "nash        {}\n",
                        if nash { "yes" } else { "no" }
                    ));
                    if let Some(d) = &deviation {
                        text.push_str(&format!(
                            "deviation   player {} -> {} (cost {})\n",
                            d.player,
                            arena.format_path(&d.path),
                            d.cost
                        ));
                    }
                    text
                }
            };
            emit(&output, &content)?;
            Ok(0)
        }
        Command::SolveMin { arena, output } => {
            let arena = load_arena(&arena)?;
            let (value, profile) = min_potential(&arena)?;
            emit_minimum(&arena, &value, &profile, &output)?;
            Ok(0)
        }
        Command::OracleMin { arena, output } => {
            let arena = load_arena(&arena)?;
            let (value, profile) = brute_min_potential(&arena, &OracleLimits::default())?;
            emit_minimum(&arena, &value, &profile, &output)?;
            Ok(0)
        }
        Command::LocalSearch {
            arena,
            profile,
            k,
            first_found,
            output,
        } => {
            let arena = load_arena(&arena)?;
            let s = load_profile(&profile, &arena)?;
            let opts = LocalSearchOptions {
                first_found,
                ..Default::default()
            };
            let found = improving_move_with(&arena, &s, k, &opts)?
                .map(|x| (x.players.iter().collect::<Vec<_>>(), x.profile));
            emit_exchange(&arena, &s, k, found, &output)
        }
        Command::OracleLocal {
            arena,
            profile,
            k,
            output,
        } => {
            let arena = load_arena(&arena)?;
            let s = load_profile(&profile, &arena)?;
            let found =
                brute_improving_move(&arena, &s, k, &OracleLimits::default())?.map(|better| {
                    let players = (0..arena.num_players())
                        .filter(|&i| better.path(i) != s.path(i))
                        .collect::<Vec<_>>();
                    (players, better)
                });
            emit_exchange(&arena, &s, k, found, &output)
        }
        Command::Brd {
            arena,
            profile,
            max_steps,
            output,
        } => {
            let arena = load_arena(&arena)?;
            let s = load_profile(&profile, &arena)?;
            let initial = potential(&arena, &s);
            let (final_profile, trace, converged) = best_response_dynamics(&arena, &s, max_steps)?;
            let final_phi = potential(&arena, &final_profile);
            let content = match output.format {
                Format::Json => canonical_json(&json!({
                    "converged": converged,
                    "steps": trace.len(),
                    "initial_potential": initial.to_string(),
                    "final_potential": final_phi.to_string(),
                    "profile": profile_document(&arena, &final_profile),
                    "trace": trace.iter().map(|step| json!({
                        "player": step.player,
                        "old_path": path_names(&arena, &step.old_path),
                        "new_path": path_names(&arena, &step.new_path),
                        "potential": step.potential.to_string(),
                    })).collect::<Vec<_>>(),
                })),
                Format::Text => {
                    let mut text = format!(
                        "{} after {} step(s): potential {initial} -> {final_phi}\n",
                        if converged { "converged" } else { "stopped" },
                        trace.len(),
                    );
                    for step in &trace {
                        text.push_str(&format!(
                            "  player {} -> {}  (potential {})\n",
                            step.player,
                            arena.format_path(&step.new_path),
                            step.potential
                        ));
                    }
                    text
                }
            };
            emit(&output, &content)?;
            Ok(0)
        }
        Command::GenReduction {
            clique_file,
            trust_w_threshold,
            out,
            format,
        } => {
            let graph = parse_coloured_graph(&read(&clique_file)?)?;
            let opts = ReductionOptions {
                trust_w_threshold,
                ..Default::default()
            };
            let inst = generate_with(&graph, &opts)?;
            let meta = reduction_meta_document(&inst);
            match &out {
                Some(prefix) => {
                    let write = |suffix: &str, content: String| -> Result<()> {
                        let path = PathBuf::from(format!("{}.{suffix}", prefix.display()));
                        fs::write(&path, content).map_err(|e| {
                            Error::InvalidArgument(format!("cannot write {}: {e}", path.display()))
                        })
                    };
                    write("arena.json", canonical_json(&arena_document(&inst.arena)))?;
                    write(
                        "profile.json",
                        serialize_profile(&inst.arena, &inst.initial),
                    )?;
                    write("meta.json", canonical_json(&meta))?;
                    let summary = match format {
                        Format::Json => canonical_json(&meta),
                        Format::Text => reduction_text(&meta),
                    };
                    print!("{summary}");
                }
                None => {
                    let content = match format {
                        Format::Json => canonical_json(&reduction_bundle_document(&inst)),
                        Format::Text => reduction_text(&meta),
                    };
                    print!("{content}");
                }
            }
            Ok(0)
        }
        Command::GenRandom {
            seed,
            max_vertices,
            max_extra_arcs,
            max_players,
            no_table,
            max_base,
            output,
        } => {
            let cfg = ArenaConfig {
                max_vertices,
                max_extra_arcs,
                max_players,
                allow_table: !no_table,
                max_base,
            };
            let mut rng = rng_from_seed(seed);
            let arena = random_arena(&mut rng, &cfg);
            let profile = random_profile(&mut rng, &arena)?;
            let content = match output.format {
                Format::Json => canonical_json(&json!({
                    "arena": arena_document(&arena),
                    "profile": profile_document(&arena, &profile),
                })),
                Format::Text => format!(
                    "arena: {} vertices, {} arcs, {} players (seed {seed})\n",
                    arena.num_vertices(),
                    arena.num_arcs(),
                    arena.num_players()
                ),
            };
            emit(&output, &content)?;
            Ok(0)
        }
    }
}

fn emit_minimum(
    arena: &Arena,
    value: &multicast_games::Rational,
    profile: &StrategyProfile,
    output: &OutputArgs,
) -> Result<()> {
    let content = match output.format {
        Format::Json => canonical_json(&json!({
            "potential": value.to_string(),
            "profile": profile_document(arena, profile),
        })),
        Format::Text => {
            let mut text = format!("minimum potential  {value}\n");
            for i in 0..arena.num_players() {
                text.push_str(&format!(
                    "player {i}           {}\n",
                    arena.format_path(profile.path(i))
                ));
            }
            text
        }
    };
    emit(output, &content)
}

/// Shared output (and exit-code) logic of `local-search` and `oracle-local`.
fn emit_exchange(
    arena: &Arena,
    s: &StrategyProfile,
    k: usize,
    found: Option<(Vec<usize>, StrategyProfile)>,
    output: &OutputArgs,
) -> Result<i32> {
    let old_phi = potential(arena, s);
    match found {
        Some((players, better)) => {
            let new_phi = potential(arena, &better);
            let content = match output.format {
                Format::Json => canonical_json(&json!({
                    "improved": true,
                    "k": k,
                    "old_potential": old_phi.to_string(),
                    "new_potential": new_phi.to_string(),
                    "players": players,
                    "profile": profile_document(arena, &better),
                })),
                Format::Text => {
                    let mut text = format!(
                        "improving exchange found: potential {old_phi} -> {new_phi} (players {players:?})\n"
                    );
                    for &i in &players {
                        text.push_str(&format!(
                            "  player {i}: {}\n",
                            arena.format_path(better.path(i))
                        ));
                    }
                    text
                }
            };
            emit(output, &content)?;
            Ok(0)
        }
        None => {
            let content = match output.format {
                Format::Json => canonical_json(&json!({
                    "improved": false,
                    "k": k,
                    "potential": old_phi.to_string(),
                })),
                Format::Text => {
                    format!("no improving exchange within distance {k} (potential {old_phi})\n")
                }
            };
            emit(output, &content)?;
            Ok(3)
        }
    }
}

fn reduction_text(meta: &multicast_games::io::ReductionMetaDocument) -> String {
    let witness = match &meta.witness {
        Some(w) => w.join(", "),
        None => "-".into(),
    };
    format!(
        "k        {}\nplayers  {}\nradius   {}\nR        {}\nW        {}\nepsilon  {}\nphi(s0)  {}\nlabel    {}\nwitness  {}\n",
        meta.k,
        meta.players,
        meta.radius,
        meta.r,
        meta.w,
        meta.epsilon,
        meta.potential_initial,
        meta.label,
        witness
    )
}
