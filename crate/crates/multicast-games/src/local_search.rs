//! Exact k-exchange local search and best-response dynamics.
//!
//! An improving k-exchange is a profile `s'` with `Φ(s') < Φ(s)` and Hamming
//! distance `D(s, s') ≤ k`. Deciding whether one exists is done exactly: for
//! every subset `Π0` of exactly `k` players (smaller distances are covered
//! because rerouted players may keep their old paths), remove `Π0` from the
//! profile, price every arc with the shifted costs `c'_e(h) = c_e(n_e(s^{-Π0}) + h)`,
//! and solve the shifted subgame optimally with the subset DP. The exchange
//! improves iff `Φ(s^{-Π0}) + Ψ' < Φ(s)`.
//!
//! The search is exhaustive over `C(n, k)` subsets and exponential in `k`
//! inside the DP — that is inherent (the decision problem is W[1]-hard in k);
//! everything here is about doing the enumeration exactly, deterministically,
//! and in parallel.

use rayon::prelude::*;

use crate::dp::{solve_subgame, CostShift, DpOptions, DpValue, PlayerSet};
use crate::error::{Error, Result};
use crate::game::{
    is_nash, player_cost, potential, potential_from_loads, Arena, StrategyProfile, VertexId,
};
use crate::rational::Rational;

/// Options for [`improving_move_with`].
#[derive(Clone, Debug, Default)]
pub struct LocalSearchOptions {
    /// Return the first improving exchange in subset enumeration order
    /// instead of the best one. Faster when improvements are plentiful;
    /// still deterministic.
    pub first_found: bool,
    /// Options passed through to the subset DP.
    pub dp: DpOptions,
}

/// A strictly improving k-exchange.
#[derive(Clone, Debug)]
pub struct KExchange {
    /// The players that were re-solved (the exchange differs from the old
    /// profile only within this set).
    pub players: PlayerSet,
    /// The improved profile.
    pub profile: StrategyProfile,
    /// Its potential (strictly below the old profile's).
    pub potential: Rational,
}

/// Finds a strictly improving profile within Hamming distance `k`, or `None`
/// if the profile is a k-exchange local optimum.
///
/// Returns the best improving neighbor (minimum new potential, ties broken
/// by subset enumeration order — ascending bitmask over player indices).
pub fn improving_move(
    arena: &Arena,
    s: &StrategyProfile,
    k: usize,
) -> Result<Option<StrategyProfile>> {
    Ok(improving_move_with(arena, s, k, &LocalSearchOptions::default())?.map(|x| x.profile))
}

pub fn improving_move_with(
    arena: &Arena,
    s: &StrategyProfile,
    k: usize,
    opts: &LocalSearchOptions,
) -> Result<Option<KExchange>> {
    let n = arena.num_players();
    if k > n {
        return Err(Error::InvalidArgument(format!(
            "k = {k} exceeds the player count {n}"
        )));
    }
    if k == 0 {
        // Distance 0 forces s' = s, which is never a strict improvement.
        return Ok(None);
    }
    if n > 63 {
        return Err(Error::Capacity(format!(
            "subset enumeration supports at most 63 players, got {n}"
        )));
    }
    let phi = potential(arena, s);
    let budget = arena.num_vertices() - 1;

    // One candidate evaluation: remove the subset, reprice, re-solve.
    let evaluate = |mask: u64| -> Result<Option<(Rational, u64)>> {
        let rest_loads = loads_without(arena, s, mask);
        let rest_phi = potential_from_loads(arena, &rest_loads);
        let shift = CostShift::from_loads(arena, &rest_loads)?;
        let subset = PlayerSet::from_mask(mask);
        let (value, _) = solve_subgame(arena, arena.root(), &subset, &shift, budget, &opts.dp)?;
        let psi = match value {
            DpValue::Finite(v) => v,
            DpValue::Infeasible => unreachable!("validated arenas admit every subgame"),
        };
        let total = rest_phi + psi;
        Ok(if total < phi {
            Some((total, mask))
        } else {
            None
        })
    };

    // Subsets of size exactly k in ascending mask order, in chunks: each
    // chunk is evaluated in parallel, chunks are combined in order, so the
    // outcome is schedule-independent.
    const CHUNK: usize = 512;
    let mut best: Option<(Rational, u64)> = None;
    let mut masks = KSubsets::new(n, k);
    loop {
        let chunk: Vec<u64> = masks.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        let results: Vec<Result<Option<(Rational, u64)>>> = if chunk.len() > 1 {
            chunk.par_iter().map(|&m| evaluate(m)).collect()
        } else {
            chunk.iter().map(|&m| evaluate(m)).collect()
        };
        for r in results {
            let Some((total, mask)) = r? else { continue };
            // Strict `<` keeps the earliest subset among equal totals.
            if best.as_ref().is_none_or(|(b, _)| total < *b) {
                best = Some((total, mask));
            }
            if opts.first_found {
                break;
            }
        }
        if opts.first_found && best.is_some() {
            break;
        }
    }

    let Some((total, mask)) = best else {
        return Ok(None);
    };

    // Re-solve the winning subset once more for its witness paths, then
    // splice them into the profile.
    let rest_loads = loads_without(arena, s, mask);
    let shift = CostShift::from_loads(arena, &rest_loads)?;
    let subset = PlayerSet::from_mask(mask);
    let (_, assignment) = solve_subgame(arena, arena.root(), &subset, &shift, budget, &opts.dp)?;
    let assignment = assignment.expect("the winning subgame was feasible");
    let profile = s.with_paths(arena, assignment)?;

    // The decomposition Φ(s') = Φ(s^{-Π0}) + Ψ' is exact; verify it.
    assert_eq!(
        potential(arena, &profile),
        total,
        "merged profile must realize the predicted potential exactly"
    );
    assert!(total < phi);
    Ok(Some(KExchange {
        players: subset,
        profile,
        potential: total,
    }))
}

/// Per-arc loads of `s` with the players in `mask` removed.
fn loads_without(arena: &Arena, s: &StrategyProfile, mask: u64) -> Vec<u32> {
    let mut loads = s.loads().to_vec();
    for p in PlayerSet::from_mask(mask).iter() {
        for w in s.path(p).windows(2) {
            let arc = arena
                .arc_between(w[0], w[1])
                .expect("profile paths follow arcs");
            loads[arc] -= 1;
        }
    }
    loads
}

/// Subsets of `{0..n}` of size exactly `k`, ascending by mask value
/// (Gosper's hack).
struct KSubsets {
    next: Option<u64>,
    limit: u64,
}

impl KSubsets {
    fn new(n: usize, k: usize) -> Self {
        assert!(n <= 63 && k <= n && k > 0);
        KSubsets {
            next: Some((1u64 << k) - 1),
            limit: 1u64 << n,
        }
    }
}

impl Iterator for KSubsets {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let cur = self.next?;
        if cur >= self.limit {
            self.next = None;
            return None;
        }
        // Next mask with the same popcount.
        let c = cur & cur.wrapping_neg();
        let r = cur + c;
        self.next = if r == 0 {
            None
        } else {
            Some((((r ^ cur) >> 2) / c) | r)
        };
        Some(cur)
    }
}

/// One step of best-response dynamics.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DynamicsStep {
    pub player: usize,
    pub old_path: Vec<VertexId>,
    pub new_path: Vec<VertexId>,
    /// Potential after the step (strictly below the previous value).
    pub potential: Rational,
}

pub type DynamicsTrace = Vec<DynamicsStep>;

/// Runs best-response dynamics with the least-index pivot rule: repeatedly,
/// the smallest-index player with a strictly improving best response switches
/// to it. Stops at a Nash equilibrium (`converged = true`) or after
/// `max_steps` steps (`converged = false`).
///
/// Each step decreases the potential by exactly the mover's cost decrease
/// (the exact potential property), which is asserted.
pub fn best_response_dynamics(
    arena: &Arena,
    s: &StrategyProfile,
    max_steps: usize,
) -> Result<(StrategyProfile, DynamicsTrace, bool)> {
    let mut current = s.clone();
    let mut trace = DynamicsTrace::new();
    let mut phi = potential(arena, &current);
    loop {
        let (nash, witness) = is_nash(arena, &current);
        if nash {
            return Ok((current, trace, true));
        }
        if trace.len() >= max_steps {
            return Ok((current, trace, false));
        }
        let dev = witness.expect("non-Nash profiles have a witness");
        let old_cost = player_cost(arena, &current, dev.player)?;
        let old_path = current.path(dev.player).to_vec();
        let next = current.with_path(arena, dev.player, dev.path.clone())?;
        let next_phi = potential(arena, &next);
        // Exact potential property: ΔΦ = Δcost of the mover.
        assert_eq!(
            &next_phi - &phi,
            &dev.cost - &old_cost,
            "potential change must equal the mover's cost change exactly"
        );
        assert!(next_phi < phi);
        trace.push(DynamicsStep {
            player: dev.player,
            old_path,
            new_path: dev.path,
            potential: next_phi.clone(),
        });
        current = next;
        phi = next_phi;
    }
}

/// Repeatedly applies the best improving k-exchange until none exists or the
/// round cap is hit. If it stops naturally, the result has no improving
/// k-exchange (for `k = n` that means it realizes the global minimum).
pub fn iterated_descent(
    arena: &Arena,
    s: &StrategyProfile,
    k: usize,
    max_rounds: usize,
) -> Result<StrategyProfile> {
    iterated_descent_with(arena, s, k, max_rounds, &LocalSearchOptions::default())
}

pub fn iterated_descent_with(
    arena: &Arena,
    s: &StrategyProfile,
    k: usize,
    max_rounds: usize,
    opts: &LocalSearchOptions,
) -> Result<StrategyProfile> {
    let mut current = s.clone();
    for _ in 0..max_rounds {
        match improving_move_with(arena, &current, k, opts)? {
            Some(exchange) => current = exchange.profile,
            None => break,
        }
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dp::min_potential;
    use crate::game::CostFunction;
    use crate::oracle::{brute_improving_move, OracleLimits};

    fn fair(n: i64) -> CostFunction {
        CostFunction::FairShare(Rational::from_integer(n))
    }

    fn diamond() -> Arena {
        Arena::new(
            vec!["r".into(), "a".into(), "b".into(), "t".into()],
            "r",
            vec![
                ("r".into(), "a".into(), fair(4)),
                ("r".into(), "b".into(), fair(6)),
                ("a".into(), "t".into(), fair(1)),
                ("b".into(), "t".into(), fair(1)),
            ],
            vec!["t".into(), "t".into()],
        )
        .unwrap()
    }

    fn profile(arena: &Arena, p0: &str, p1: &str) -> StrategyProfile {
        let route = |which: &str| -> Vec<String> { vec!["r".into(), which.into(), "t".into()] };
        StrategyProfile::from_names(arena, &[route(p0), route(p1)]).unwrap()
    }

    fn rat(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn k_subsets_ascending() {
        let all: Vec<u64> = KSubsets::new(4, 2).collect();
        assert_eq!(all, vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
        assert_eq!(KSubsets::new(3, 3).collect::<Vec<_>>(), vec![0b111]);
    }

    #[test]
    fn k_zero_is_never_improving() {
        let arena = diamond();
        let s = profile(&arena, "a", "b");
        assert!(improving_move(&arena, &s, 0).unwrap().is_none());
    }

    #[test]
    fn k_above_player_count_is_an_error() {
        let arena = diamond();
        let s = profile(&arena, "a", "b");
        assert!(matches!(
            improving_move(&arena, &s, 3),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn split_profile_improves_to_shared_at_k1() {
        // Best mode: rerouting player 1 onto the a-route (total 15/2) beats
        // rerouting player 0 onto the b-route (total 21/2).
        let arena = diamond();
        let s = profile(&arena, "a", "b");
        let exchange = improving_move_with(&arena, &s, 1, &LocalSearchOptions::default())
            .unwrap()
            .unwrap();
        assert_eq!(exchange.potential, rat("15/2"));
        assert_eq!(exchange.players.iter().collect::<Vec<_>>(), vec![1]);
        for i in 0..2 {
            assert_eq!(arena.format_path(exchange.profile.path(i)), "r -> a -> t");
        }
        // First-found stops at player 0's exchange instead.
        let first = improving_move_with(
            &arena,
            &s,
            1,
            &LocalSearchOptions {
                first_found: true,
                ..Default::default()
            },
        )
        .unwrap()
        .unwrap();
        assert_eq!(first.potential, rat("21/2"));
        assert_eq!(first.players.iter().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn optimum_has_no_improving_move_up_to_n() {
        let arena = diamond();
        let shared = profile(&arena, "a", "a");
        for k in 0..=2 {
            assert!(
                improving_move(&arena, &shared, k).unwrap().is_none(),
                "k = {k}"
            );
        }
    }

    #[test]
    fn one_local_optimum_escaped_by_k2() {
        // Both players on the b-route is a Nash equilibrium (no single player
        // wants to leave), but the pair jointly moving to the a-route wins.
        let arena = diamond();
        let both_b = profile(&arena, "b", "b");
        let (nash, _) = is_nash(&arena, &both_b);
        assert!(nash);
        assert!(improving_move(&arena, &both_b, 1).unwrap().is_none());
        let exchange = improving_move_with(&arena, &both_b, 2, &LocalSearchOptions::default())
            .unwrap()
            .unwrap();
        assert_eq!(exchange.potential, rat("15/2"));
        assert_eq!(exchange.players.len(), 2);
    }

    #[test]
    fn agrees_with_brute_oracle_on_diamond() {
        let arena = diamond();
        let limits = OracleLimits::default();
        for s in [
            profile(&arena, "a", "b"),
            profile(&arena, "a", "a"),
            profile(&arena, "b", "b"),
            profile(&arena, "b", "a"),
        ] {
            for k in 0..=2 {
                let fast = improving_move(&arena, &s, k).unwrap();
                let brute = brute_improving_move(&arena, &s, k, &limits).unwrap();
                assert_eq!(fast.is_some(), brute.is_some(), "k = {k}");
                if let (Some(f), Some(b)) = (&fast, &brute) {
                    assert_eq!(potential(&arena, f), potential(&arena, b));
                }
            }
        }
    }

    #[test]
    fn dynamics_from_split_converges_in_one_step() {
        // Player 0 (least index) moves first: joining the b-route costs
        // 7/2 < 5. The result — both on b — is already Nash.
        let arena = diamond();
        let s = profile(&arena, "a", "b");
        let (final_profile, trace, converged) = best_response_dynamics(&arena, &s, 100).unwrap();
        assert!(converged);
        assert_eq!(trace.len(), 1);
        assert_eq!(trace[0].player, 0);
        assert_eq!(arena.format_path(&trace[0].new_path), "r -> b -> t");
        assert_eq!(trace[0].potential, rat("21/2"));
        assert_eq!(potential(&arena, &final_profile), rat("21/2"));
        assert!(is_nash(&arena, &final_profile).0);
    }

    #[test]
    fn dynamics_at_nash_is_a_no_op() {
        let arena = diamond();
        let shared = profile(&arena, "a", "a");
        let (final_profile, trace, converged) =
            best_response_dynamics(&arena, &shared, 100).unwrap();
        assert!(converged);
        assert!(trace.is_empty());
        assert_eq!(final_profile, shared);
    }

    #[test]
    fn dynamics_step_cap() {
        let arena = diamond();
        let s = profile(&arena, "a", "b");
        let (final_profile, trace, converged) = best_response_dynamics(&arena, &s, 0).unwrap();
        assert!(!converged);
        assert!(trace.is_empty());
        assert_eq!(final_profile, s);
    }

    #[test]
    fn descent_with_k1_reaches_nash() {
        let arena = diamond();
        let s = profile(&arena, "a", "b");
        let result = iterated_descent(&arena, &s, 1, 100).unwrap();
        assert!(is_nash(&arena, &result).0);
    }

    #[test]
    fn descent_with_k_equal_n_reaches_global_minimum() {
        let arena = diamond();
        let s = profile(&arena, "b", "b");
        let result = iterated_descent(&arena, &s, 2, 100).unwrap();
        let (min_value, _) = min_potential(&arena).unwrap();
        assert_eq!(potential(&arena, &result), min_value);
    }

    #[test]
    fn descent_with_zero_rounds_is_identity() {
        let arena = diamond();
        let s = profile(&arena, "b", "b");
        assert_eq!(iterated_descent(&arena, &s, 2, 0).unwrap(), s);
    }
}
