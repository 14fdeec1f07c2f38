//! Property-based tests: algebraic invariants that must hold on *every*
//! instance, checked over proptest-driven seeds feeding the same
//! deterministic generators the rest of the suite uses.

use multicast_games::dp::min_potential;
use multicast_games::game::{hamming_distance, is_nash, player_cost, potential, total_cost};
use multicast_games::gen::{
    random_arena, random_deviation, random_profile, rng_from_seed, ArenaConfig,
};
use multicast_games::local_search::improving_move;
use multicast_games::Rational;
use proptest::prelude::*;

fn tiny_config() -> ArenaConfig {
    ArenaConfig {
        max_vertices: 5,
        max_extra_arcs: 3,
        max_players: 3,
        allow_table: true,
        max_base: 6,
    }
}

proptest! {
    /// Parsing a printed rational gives back the same number.
    #[test]
    fn rational_display_round_trips(p in -1000i64..1000, q in 1i64..1000) {
        let r = Rational::new(p, q).unwrap();
        let back: Rational = r.to_string().parse().unwrap();
        prop_assert_eq!(back, r);
    }

    /// The potential is exact: a unilateral deviation changes Φ by exactly
    /// the deviator's cost change, for every arena, profile, and reroute.
    #[test]
    fn potential_is_exact_for_unilateral_moves(seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let arena = random_arena(&mut rng, &tiny_config());
        prop_assume!(arena.num_players() > 0);
        let s = random_profile(&mut rng, &arena).unwrap();
        if let Some((player, path)) = random_deviation(&mut rng, &arena, &s).unwrap() {
            let before_phi = potential(&arena, &s);
            let before_cost = player_cost(&arena, &s, player).unwrap();
            let t = s.with_path(&arena, player, path).unwrap();
            let after_phi = potential(&arena, &t);
            let after_cost = player_cost(&arena, &t, player).unwrap();
            prop_assert_eq!(&after_phi - &before_phi, &after_cost - &before_cost);
        }
    }

    /// The DP value is a true lower bound over sampled profiles, and its
    /// reconstruction achieves it (so it is a true minimum over these).
    #[test]
    fn dp_minimum_bounds_every_sampled_profile(seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let arena = random_arena(&mut rng, &tiny_config());
        let (value, best) = min_potential(&arena).unwrap();
        prop_assert_eq!(potential(&arena, &best), value.clone());
        for _ in 0..5 {
            let s = random_profile(&mut rng, &arena).unwrap();
            prop_assert!(potential(&arena, &s) >= value);
        }
    }

    /// Nash means exactly "no improving 1-exchange", and any improving
    /// exchange the search returns really does lower the potential while
    /// moving at most k players.
    #[test]
    fn nash_iff_no_improving_singleton(seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let arena = random_arena(&mut rng, &tiny_config());
        prop_assume!(arena.num_players() > 0);
        let s = random_profile(&mut rng, &arena).unwrap();
        let (nash, witness) = is_nash(&arena, &s);
        let found = improving_move(&arena, &s, 1).unwrap();
        prop_assert_eq!(nash, found.is_none());
        prop_assert_eq!(nash, witness.is_none());
        if let Some(better) = found {
            prop_assert!(potential(&arena, &better) < potential(&arena, &s));
            prop_assert_eq!(hamming_distance(&s, &better).unwrap(), 1);
        }
    }

    /// Bookkeeping identities: the total cost equals the sum of player
    /// costs, and both are nonnegative whenever all arc prices are.
    #[test]
    fn total_cost_is_the_sum_of_player_costs(seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let arena = random_arena(&mut rng, &tiny_config());
        let s = random_profile(&mut rng, &arena).unwrap();
        let sum = (0..arena.num_players())
            .map(|i| player_cost(&arena, &s, i).unwrap())
            .fold(Rational::from_integer(0), |acc, c| &acc + &c);
        prop_assert_eq!(total_cost(&arena, &s), sum);
    }
}
