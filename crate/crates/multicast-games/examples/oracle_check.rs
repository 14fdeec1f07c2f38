//! Cross-check the production solvers against the brute-force oracles on a
//! seeded random corpus — the same methodology the test suite uses, in
//! miniature. Everything here is exact rational arithmetic, so agreement
//! means equality, not closeness.
//!
//! Run with: `cargo run --example oracle_check`

use multicast_games::dp::min_potential;
use multicast_games::game::potential;
use multicast_games::gen::{random_arena, random_profile, rng_from_seed, ArenaConfig};
use multicast_games::local_search::improving_move;
use multicast_games::oracle::{
    brute_improving_move, brute_min_potential, brute_min_tree_potential, OracleLimits,
};
use multicast_games::{Error, Result};

fn main() -> Result<()> {
    let mut rng = rng_from_seed(7);
    let config = ArenaConfig::small_mixed();
    let limits = OracleLimits::default();

    let mut checked = 0usize;
    let mut improvable = 0usize;
    while checked < 40 {
        let arena = random_arena(&mut rng, &config);

        // 1. The subset DP and exhaustive profile enumeration agree on the
        //    minimum potential. Oversized instances trip the oracle's
        //    capacity guard; skip those rather than wait on them.
        let brute = match brute_min_potential(&arena, &limits) {
            Ok(v) => v,
            Err(Error::Capacity(_)) => continue,
            Err(e) => return Err(e),
        };
        let (dp_value, dp_profile) = min_potential(&arena)?;
        assert_eq!(dp_value, brute.0);
        assert_eq!(potential(&arena, &dp_profile), dp_value);

        // 2. The out-tree restriction loses nothing: minimizing over
        //    shortest-path trees reaches the same optimum.
        let tree = brute_min_tree_potential(&arena, &limits)?;
        assert_eq!(tree, dp_value);

        // 3. The k-exchange search and the brute-force neighborhood scan
        //    agree on whether a random profile admits an improvement.
        if arena.num_players() > 0 {
            let s = random_profile(&mut rng, &arena)?;
            for k in 1..=arena.num_players().min(2) {
                let fast = improving_move(&arena, &s, k)?;
                let brute = brute_improving_move(&arena, &s, k, &limits)?;
                assert_eq!(fast.is_some(), brute.is_some());
                if let (Some(f), Some(b)) = (fast, brute) {
                    assert_eq!(potential(&arena, &f), potential(&arena, &b));
                    improvable += 1;
                }
            }
        }
        checked += 1;
    }

    println!("checked {checked} random arenas against the oracles:");
    println!("  minimum-potential values     all equal (DP vs. enumeration)");
    println!("  out-tree restricted minima   all equal");
    println!("  improving-move verdicts      all equal ({improvable} improvable cases)");
    Ok(())
}
