//! Compute an exact potential-minimizing profile with the budgeted subset
//! dynamic program, and show that the optimum is an out-tree: every vertex
//! the players use is reached along a single common path from the root.
//!
//! Run with: `cargo run --example minimize_potential`

use multicast_games::dp::min_potential;
use multicast_games::game::{is_nash, potential, total_cost};
use multicast_games::io::parse_arena;
use multicast_games::Result;

/// Three terminals behind a shared backbone: buying the expensive trunk
/// once and fanning out beats three disjoint direct roads.
const ARENA: &str = r#"{
    "vertices": ["r", "hub", "t1", "t2", "t3"],
    "root": "r",
    "arcs": [
        {"from": "r", "to": "hub", "cost": {"fair_share": "6"}},
        {"from": "hub", "to": "t1", "cost": {"fair_share": "1"}},
        {"from": "hub", "to": "t2", "cost": {"fair_share": "1"}},
        {"from": "hub", "to": "t3", "cost": {"fair_share": "1"}},
        {"from": "r", "to": "t1", "cost": {"fair_share": "5"}},
        {"from": "r", "to": "t2", "cost": {"fair_share": "5"}},
        {"from": "r", "to": "t3", "cost": {"fair_share": "5"}}
    ],
    "players": ["t1", "t2", "t3"]
}"#;

fn main() -> Result<()> {
    let arena = parse_arena(ARENA)?;
    let (value, best) = min_potential(&arena)?;

    println!("minimum Rosenthal potential: {value}");
    for i in 0..arena.num_players() {
        println!("  player {i}: {}", arena.format_path(best.path(i)));
    }
    println!("total cost at the minimum:   {}", total_cost(&arena, &best));

    // The reconstruction must realize exactly the value the DP reported.
    assert_eq!(potential(&arena, &best), value);

    // Minimizers of an exact potential are Nash equilibria: no player can
    // profit by a unilateral reroute, because any profitable reroute would
    // lower the potential below its minimum.
    let (nash, _) = is_nash(&arena, &best);
    println!(
        "is the minimizer Nash?       {}",
        if nash { "yes" } else { "no" }
    );
    assert!(nash);

    // All three on the trunk: 6*(1 + 1/2 + 1/3) + 3*1 = 14, against 15
    // for the three direct roads, and every mixed split is worse still.
    assert_eq!(value, "14".parse().unwrap());
    Ok(())
}
