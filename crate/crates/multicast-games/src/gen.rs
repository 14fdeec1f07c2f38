//! Seeded random instances for testing and benchmarks.
//!
//! Arenas come out valid by construction: a spine of arcs guarantees every
//! vertex is reachable from the root, extra arcs (possibly creating cycles)
//! add route diversity, and cost functions are nonnegative and non-increasing
//! with small numerators over denominators 1 or 2 — small enough that brute
//! force oracles stay in range, varied enough to exercise exact arithmetic.
//!
//! Everything is driven by a caller-provided RNG; use [`rng_from_seed`] for
//! reproducible streams (a fixed, portable ChaCha stream, independent of
//! platform and thread count).

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::game::{Arena, CostFunction, StrategyProfile, VertexId};
use crate::oracle::{enumerate_paths, OracleLimits};
use crate::rational::Rational;

/// Deterministic RNG for a seed.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape limits for [`random_arena`].
#[derive(Clone, Debug)]
pub struct ArenaConfig {
    /// Vertices, at least 2 (a root alone admits no interesting game).
    pub max_vertices: usize,
    /// Arcs added beyond the reachability spine (the spine uses `|V| - 1`).
    pub max_extra_arcs: usize,
    pub max_players: usize,
    /// Mix in table costs (otherwise fair-share only).
    pub allow_table: bool,
    /// Numerator bound for generated costs (denominators are 1 or 2).
    pub max_base: i64,
}

impl ArenaConfig {
    /// The oracle-scale corpus: ≤ 7 vertices, ≤ 10 arcs, ≤ 4 players, mixed
    /// fair-share/table costs with small bases.
    pub fn small_mixed() -> Self {
        ArenaConfig {
            max_vertices: 7,
            max_extra_arcs: 4,
            max_players: 4,
            allow_table: true,
            max_base: 6,
        }
    }

    /// Like the corpus, but up to 5 players (local-search agreement checks).
    pub fn local_search() -> Self {
        ArenaConfig {
            max_players: 5,
            ..ArenaConfig::small_mixed()
        }
    }

    /// Fixed-size arenas with exactly `n` players, for scaling measurements.
    pub fn benchmark(n: usize) -> Self {
        ArenaConfig {
            max_vertices: 7,
            max_extra_arcs: 4,
            max_players: n,
            allow_table: false,
            max_base: 9,
        }
    }
}

fn random_value(rng: &mut impl Rng, max_base: i64, denom: i64) -> Rational {
    Rational::new(rng.gen_range(0..=max_base), denom).expect("denominator is 1 or 2")
}

fn random_cost(rng: &mut impl Rng, cfg: &ArenaConfig, players: usize) -> CostFunction {
    let denom = if rng.gen_bool(0.3) { 2 } else { 1 };
    if cfg.allow_table && rng.gen_bool(0.4) {
        let mut values: Vec<Rational> = (0..players.max(1))
            .map(|_| random_value(rng, cfg.max_base, denom))
            .collect();
        // Non-increasing by construction.
        values.sort_by(|a, b| b.cmp(a));
        CostFunction::Table(values)
    } else {
        CostFunction::FairShare(random_value(rng, cfg.max_base, denom))
    }
}

/// A random valid arena within the configured shape.
///
/// Player count is uniform in `1..=max_players` for [`ArenaConfig::benchmark`]
/// shapes with `max_players` forced, and includes occasional 0-player arenas
/// otherwise (they are legal and exercise empty-sum paths).
pub fn random_arena(rng: &mut impl Rng, cfg: &ArenaConfig) -> Arena {
    let nv = rng.gen_range(2..=cfg.max_vertices.max(2));
    let names: Vec<String> = (0..nv).map(|i| format!("v{i}")).collect();

    // Player count first: table lengths depend on it.
    let np = if rng.gen_bool(0.05) {
        0
    } else {
        rng.gen_range(1..=cfg.max_players.max(1))
    };

    // Spine: each non-root vertex gets one in-arc from an earlier vertex.
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 1..nv {
        let j = rng.gen_range(0..i);
        pairs.push((j, i));
    }
    // Extra arcs; duplicates and self-loops retried away, cycles welcome.
    for _ in 0..rng.gen_range(0..=cfg.max_extra_arcs) {
        let a = rng.gen_range(0..nv);
        let b = rng.gen_range(0..nv);
        if a == b || pairs.contains(&(a, b)) {
            continue;
        }
        pairs.push((a, b));
    }

    let arcs = pairs
        .into_iter()
        .map(|(a, b)| {
            (
                names[a].clone(),
                names[b].clone(),
                random_cost(rng, cfg, np),
            )
        })
        .collect();

    let players = (0..np)
        .map(|_| names[rng.gen_range(0..nv)].clone())
        .collect();

    Arena::new(names, "v0", arcs, players).expect("generated arenas are valid by construction")
}

/// Like [`random_arena`] but with exactly `n` players.
pub fn random_arena_with_players(rng: &mut impl Rng, cfg: &ArenaConfig, n: usize) -> Arena {
    loop {
        let arena = random_arena(rng, cfg);
        if arena.num_players() == n {
            return arena;
        }
        // Cheap resample: reuse the structure odds, just redraw.
    }
}

/// A uniformly random valid profile: each player picks uniformly among all
/// of its simple root→terminal paths.
pub fn random_profile(rng: &mut impl Rng, arena: &Arena) -> Result<StrategyProfile> {
    let limits = OracleLimits::default();
    let mut paths = Vec::with_capacity(arena.num_players());
    for i in 0..arena.num_players() {
        let options = enumerate_paths(arena, arena.root(), arena.terminal(i), &limits)?;
        paths.push(options[rng.gen_range(0..options.len())].clone());
    }
    StrategyProfile::new(arena, paths)
}

/// A random unilateral deviation: a player and a different path for it.
/// `None` when there are no players or the chosen player has a unique path.
pub fn random_deviation(
    rng: &mut impl Rng,
    arena: &Arena,
    s: &StrategyProfile,
) -> Result<Option<(usize, Vec<VertexId>)>> {
    if arena.num_players() == 0 {
        return Ok(None);
    }
    let player = rng.gen_range(0..arena.num_players());
    let options = enumerate_paths(
        arena,
        arena.root(),
        arena.terminal(player),
        &OracleLimits::default(),
    )?;
    let alternatives: Vec<_> = options
        .into_iter()
        .filter(|p| p != s.path(player))
        .collect();
    if alternatives.is_empty() {
        return Ok(None);
    }
    let path = alternatives[rng.gen_range(0..alternatives.len())].clone();
    Ok(Some((player, path)))
}
