//! Load a game and a strategy profile from JSON and evaluate them:
//! Rosenthal potential, per-player costs, total cost, and a Nash check.
//!
//! Run with: `cargo run --example evaluate`

use multicast_games::game::{is_nash, player_cost, potential, total_cost};
use multicast_games::io::{parse_arena, parse_profile};
use multicast_games::Result;

const ARENA: &str = r#"{
    "vertices": ["r", "a", "b", "t"],
    "root": "r",
    "arcs": [
        {"from": "r", "to": "a", "cost": {"fair_share": "4"}},
        {"from": "r", "to": "b", "cost": {"fair_share": "6"}},
        {"from": "a", "to": "t", "cost": {"fair_share": "1"}},
        {"from": "b", "to": "t", "cost": {"table": ["1", "3/4"]}}
    ],
    "players": ["t", "t"]
}"#;

fn main() -> Result<()> {
    let arena = parse_arena(ARENA)?;
    println!(
        "arena: {} vertices, {} arcs, {} players",
        arena.num_vertices(),
        arena.num_arcs(),
        arena.num_players()
    );

    for (title, text) in [
        (
            "split routes",
            r#"{"paths": [["r", "a", "t"], ["r", "b", "t"]]}"#,
        ),
        (
            "shared a-route",
            r#"{"paths": [["r", "a", "t"], ["r", "a", "t"]]}"#,
        ),
    ] {
        let s = parse_profile(text, &arena)?;
        println!("\n{title}:");
        for i in 0..arena.num_players() {
            println!(
                "  player {i}: {}  (cost {})",
                arena.format_path(s.path(i)),
                player_cost(&arena, &s, i)?
            );
        }
        println!("  total cost       {}", total_cost(&arena, &s));
        println!("  potential        {}", potential(&arena, &s));

        // `is_nash` either certifies the profile or names the least-index
        // player with a profitable unilateral deviation.
        match is_nash(&arena, &s) {
            (true, _) => println!("  Nash equilibrium yes"),
            (false, Some(d)) => println!(
                "  Nash equilibrium no: player {} prefers {} (cost {})",
                d.player,
                arena.format_path(&d.path),
                d.cost
            ),
            (false, None) => unreachable!("a refutation always carries a witness"),
        }
    }
    Ok(())
}
