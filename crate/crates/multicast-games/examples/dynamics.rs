//! Watch best-response dynamics walk downhill on the potential, one
//! least-index profitable deviation at a time, then combine rounds of
//! dynamics with k-exchange escapes via `iterated_descent`.
//!
//! Run with: `cargo run --example dynamics`

use multicast_games::dp::min_potential;
use multicast_games::game::{is_nash, potential};
use multicast_games::io::{parse_arena, parse_profile};
use multicast_games::local_search::{best_response_dynamics, iterated_descent};
use multicast_games::Result;

const ARENA: &str = r#"{
    "vertices": ["r", "a", "b", "t"],
    "root": "r",
    "arcs": [
        {"from": "r", "to": "a", "cost": {"fair_share": "4"}},
        {"from": "r", "to": "b", "cost": {"fair_share": "6"}},
        {"from": "a", "to": "t", "cost": {"fair_share": "1"}},
        {"from": "b", "to": "t", "cost": {"fair_share": "1"}}
    ],
    "players": ["t", "t"]
}"#;

fn main() -> Result<()> {
    let arena = parse_arena(ARENA)?;
    let start = parse_profile(r#"{"paths": [["r", "a", "t"], ["r", "b", "t"]]}"#, &arena)?;
    println!(
        "start: split routes, potential {}",
        potential(&arena, &start)
    );

    // Every step of the dynamics lowers the potential by exactly the
    // deviator's saving, so the walk must terminate at a Nash equilibrium.
    let (reached, trace, converged) = best_response_dynamics(&arena, &start, 100)?;
    for (n, step) in trace.iter().enumerate() {
        println!(
            "step {}: player {} abandons [{}] for [{}]  (potential {})",
            n + 1,
            step.player,
            arena.format_path(&step.old_path),
            arena.format_path(&step.new_path),
            step.potential
        );
    }
    println!(
        "converged: {} after {} step(s), potential {}",
        converged,
        trace.len(),
        potential(&arena, &reached)
    );
    assert!(converged);
    assert!(is_nash(&arena, &reached).0);

    // The equilibrium the dynamics found is not the best one: it costs
    // 21/2 while the global potential minimum is 15/2. Iterated descent
    // alternates best-response rounds with k-exchange escapes and, with
    // k = 2 on this game, lands on the global minimum.
    let best = iterated_descent(&arena, &reached, 2, 100)?;
    let (optimal, _) = min_potential(&arena)?;
    println!(
        "iterated descent with k = 2: potential {} (global minimum {})",
        potential(&arena, &best),
        optimal
    );
    assert_eq!(potential(&arena, &best), optimal);
    Ok(())
}
