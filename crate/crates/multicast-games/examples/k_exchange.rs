//! Escape a local optimum with coordinated moves: a profile that no single
//! player can improve (a Nash equilibrium) can still admit a joint reroute
//! of two players that lowers the potential.
//!
//! Run with: `cargo run --example k_exchange`

use multicast_games::game::potential;
use multicast_games::io::{parse_arena, parse_profile};
use multicast_games::local_search::{improving_move, improving_move_with, LocalSearchOptions};
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

    // Both players share the b-route. Alone, neither wants to leave: the
    // a-route would cost the mover 4 + 1 = 5, against 6/2 + 1/2 = 7/2 now.
    let stuck = parse_profile(r#"{"paths": [["r", "b", "t"], ["r", "b", "t"]]}"#, &arena)?;
    println!(
        "start: both players on r -> b -> t, potential {}",
        potential(&arena, &stuck)
    );

    // k = 1 searches all single-player reroutes. None improves: this
    // profile is a local optimum of the 1-exchange neighborhood (a Nash
    // equilibrium, by the exact-potential correspondence).
    assert!(improving_move(&arena, &stuck, 1)?.is_none());
    println!("k = 1: no improving reroute — the profile is Nash");

    // k = 2 may move both players at once. Migrating together to the
    // a-route drops the potential from 21/2 to 15/2, a move best-response
    // dynamics can never make because the first mover would pay 5 > 7/2.
    let exchange = improving_move_with(&arena, &stuck, 2, &LocalSearchOptions::default())?
        .expect("the joint migration improves");
    println!(
        "k = 2: players {:?} move together, potential {} -> {}",
        exchange.players.iter().collect::<Vec<_>>(),
        potential(&arena, &stuck),
        exchange.potential
    );
    for i in 0..arena.num_players() {
        println!(
            "  player {i}: {}",
            arena.format_path(exchange.profile.path(i))
        );
    }

    // The convenience wrapper returns just the improved profile.
    let better = improving_move(&arena, &stuck, 2)?.expect("same move");
    assert_eq!(potential(&arena, &better), exchange.potential);
    Ok(())
}
