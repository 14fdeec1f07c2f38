//! The game model: arenas, strategy profiles, and the direct evaluations.
//!
//! An arena is a finite directed graph with a designated root, one terminal
//! per player, and a nonnegative, non-increasing per-arc cost function
//! `c_e(h)` giving the price each of `h` sharers pays on arc `e`. A strategy
//! for player `i` is a simple root-to-terminal path; a profile is one
//! strategy per player.
//!
//! The central quantity is the Rosenthal potential
//! `Φ(s) = Σ_e Σ_{h=1..n_e(s)} c_e(h)`, where `n_e(s)` is the number of
//! players whose path uses arc `e`. The potential is *exact* for these games:
//! when a single player deviates, the change in Φ equals the change in that
//! player's own cost, so Nash equilibria are exactly the local minima of Φ
//! under unilateral deviations.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Index of a vertex in an [`Arena`]; ordering follows the arena's vertex
/// list, which is the tie-breaking order used by every solver in this crate.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// Index of an arc in an [`Arena`]'s arc list.
pub type ArcId = usize;

/// Per-arc cost as a function of the number of sharers `h >= 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CostFunction {
    /// `c_e(h) = base / h`: the arc's base cost split evenly.
    FairShare(Rational),
    /// Explicit per-load prices: `c_e(h) = values[h - 1]`. The table must be
    /// nonnegative and non-increasing and cover every possible load, i.e.
    /// hold at least as many values as the arena has players.
    Table(Vec<Rational>),
}

impl CostFunction {
    /// `c_e(h)` for a load of `h >= 1` sharers.
    pub fn cost(&self, load: u32) -> Result<Rational> {
        if load == 0 {
            return Err(Error::CostDomain("cost queried at load 0".into()));
        }
        match self {
            CostFunction::FairShare(base) => Ok(base / &Rational::from_integer(i64::from(load))),
            CostFunction::Table(values) => {
                values.get(load as usize - 1).cloned().ok_or_else(|| {
                    Error::CostDomain(format!(
                        "table cost queried at load {load} but only {} values are defined",
                        values.len()
                    ))
                })
            }
        }
    }

    fn validate(&self, players: usize, arc_label: &str) -> Result<()> {
        match self {
            CostFunction::FairShare(base) => {
                if base.is_negative() {
                    return Err(Error::Validation(format!(
                        "arc {arc_label}: fair-share base cost {base} is negative"
                    )));
                }
            }
            CostFunction::Table(values) => {
                if values.len() < players {
                    return Err(Error::Validation(format!(
                        "arc {arc_label}: cost table has {} values but the arena has {players} players",
                        values.len()
                    )));
                }
                for (i, v) in values.iter().enumerate() {
                    if v.is_negative() {
                        return Err(Error::Validation(format!(
                            "arc {arc_label}: table value {v} at load {} is negative",
                            i + 1
                        )));
                    }
                    if i > 0 && v > &values[i - 1] {
                        return Err(Error::Validation(format!(
                            "arc {arc_label}: cost table increases from load {} to load {} ({} -> {v})",
                            i,
                            i + 1,
                            values[i - 1]
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A directed arc with its cost function.
#[derive(Clone, Debug)]
pub struct Arc {
    from: VertexId,
    to: VertexId,
    cost: CostFunction,
}

impl Arc {
    pub fn from(&self) -> VertexId {
        self.from
    }

    pub fn to(&self) -> VertexId {
        self.to
    }

    pub fn cost_function(&self) -> &CostFunction {
        &self.cost
    }
}

/// A validated game arena.
///
/// Construction checks everything the solvers rely on: unique vertex names,
/// arcs between existing vertices with no self-loops and no duplicate
/// `(from, to)` pairs, nonnegative non-increasing cost functions whose tables
/// cover the player count, and every terminal reachable from the root.
#[derive(Clone, Debug)]
pub struct Arena {
    names: Vec<String>,
    lookup: HashMap<String, VertexId>,
    arcs: Vec<Arc>,
    arc_lookup: HashMap<(usize, usize), ArcId>,
    root: VertexId,
    terminals: Vec<VertexId>,
    /// Out-arcs per vertex, sorted by head index: the canonical enumeration
    /// order for path search and the subset DP.
    out: Vec<Vec<ArcId>>,
}

impl Arena {
    pub fn new(
        vertices: Vec<String>,
        root: &str,
        arcs: Vec<(String, String, CostFunction)>,
        players: Vec<String>,
    ) -> Result<Self> {
        let mut lookup = HashMap::new();
        for (i, name) in vertices.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::Validation("empty vertex name".into()));
            }
            if lookup.insert(name.clone(), VertexId(i)).is_some() {
                return Err(Error::Validation(format!("duplicate vertex name '{name}'")));
            }
        }
        let resolve = |name: &str| -> Result<VertexId> {
            lookup
                .get(name)
                .copied()
                .ok_or_else(|| Error::Validation(format!("unknown vertex '{name}'")))
        };
        let root_id = resolve(root)?;

        let mut arc_list = Vec::with_capacity(arcs.len());
        let mut arc_lookup = HashMap::new();
        for (from, to, cost) in arcs {
            let from_id = resolve(&from)?;
            let to_id = resolve(&to)?;
            if from_id == to_id {
                return Err(Error::Validation(format!("self-loop at vertex '{from}'")));
            }
            let label = format!("({from}, {to})");
            cost.validate(players.len(), &label)?;
            if arc_lookup
                .insert((from_id.0, to_id.0), arc_list.len())
                .is_some()
            {
                return Err(Error::Validation(format!("duplicate arc {label}")));
            }
            arc_list.push(Arc {
                from: from_id,
                to: to_id,
                cost,
            });
        }

        let mut terminals = Vec::with_capacity(players.len());
        for (i, t) in players.iter().enumerate() {
            let id = lookup.get(t).copied().ok_or_else(|| {
                Error::Validation(format!("player {i}: unknown terminal vertex '{t}'"))
            })?;
            terminals.push(id);
        }

        let mut out: Vec<Vec<ArcId>> = vec![Vec::new(); vertices.len()];
        for (i, arc) in arc_list.iter().enumerate() {
            out[arc.from.0].push(i);
        }
        for list in &mut out {
            list.sort_by_key(|&a| arc_list[a].to.0);
        }

        let arena = Arena {
            names: vertices,
            lookup,
            arcs: arc_list,
            arc_lookup,
            root: root_id,
            terminals,
            out,
        };

        let reach = arena.reachable_from(root_id);
        for (i, &t) in arena.terminals.iter().enumerate() {
            if !reach[t.0] {
                return Err(Error::Validation(format!(
                    "player {i}: terminal '{}' is not reachable from the root '{}'",
                    arena.names[t.0], arena.names[root_id.0]
                )));
            }
        }
        Ok(arena)
    }

    pub fn num_vertices(&self) -> usize {
        self.names.len()
    }

    pub fn num_arcs(&self) -> usize {
        self.arcs.len()
    }

    pub fn num_players(&self) -> usize {
        self.terminals.len()
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn terminal(&self, player: usize) -> VertexId {
        self.terminals[player]
    }

    pub fn terminals(&self) -> &[VertexId] {
        &self.terminals
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.lookup.get(name).copied()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.names[v.0]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.names
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, id: ArcId) -> &Arc {
        &self.arcs[id]
    }

    pub fn arc_between(&self, from: VertexId, to: VertexId) -> Option<ArcId> {
        self.arc_lookup.get(&(from.0, to.0)).copied()
    }

    /// Out-arcs of `v`, sorted by head vertex index.
    pub fn out_arcs(&self, v: VertexId) -> &[ArcId] {
        &self.out[v.0]
    }

    /// `c_e(h)` for arc `id` at load `h`.
    pub fn arc_cost(&self, id: ArcId, load: u32) -> Result<Rational> {
        self.arcs[id].cost.cost(load)
    }

    fn reachable_from(&self, start: VertexId) -> Vec<bool> {
        let mut seen = vec![false; self.names.len()];
        let mut stack = vec![start];
        seen[start.0] = true;
        while let Some(v) = stack.pop() {
            for &a in &self.out[v.0] {
                let w = self.arcs[a].to;
                if !seen[w.0] {
                    seen[w.0] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Renders a path as `r -> a -> t` using vertex names.
    pub fn format_path(&self, path: &[VertexId]) -> String {
        path.iter()
            .map(|&v| self.vertex_name(v))
            .collect::<Vec<_>>()
            .join(" -> ")
    }

    /// Resolves a sequence of vertex names into ids.
    pub fn resolve_path(&self, names: &[impl AsRef<str>]) -> Result<Vec<VertexId>> {
        names
            .iter()
            .map(|n| {
                self.vertex_id(n.as_ref())
                    .ok_or_else(|| Error::Validation(format!("unknown vertex '{}'", n.as_ref())))
            })
            .collect()
    }
}

/// One simple root-to-terminal path per player, with derived arc loads.
///
/// Paths are stored as vertex sequences; a player whose terminal is the root
/// has the one-vertex path `[root]` (zero arcs). Profiles are immutable:
/// derive modified ones with [`StrategyProfile::with_path`] or
/// [`StrategyProfile::with_paths`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StrategyProfile {
    paths: Vec<Vec<VertexId>>,
    loads: Vec<u32>,
}

impl StrategyProfile {
    pub fn new(arena: &Arena, paths: Vec<Vec<VertexId>>) -> Result<Self> {
        if paths.len() != arena.num_players() {
            return Err(Error::Validation(format!(
                "profile has {} paths but the arena has {} players",
                paths.len(),
                arena.num_players()
            )));
        }
        let mut loads = vec![0u32; arena.num_arcs()];
        for (i, path) in paths.iter().enumerate() {
            validate_path(arena, i, path)?;
            for w in path.windows(2) {
                let arc = arena
                    .arc_between(w[0], w[1])
                    .expect("validate_path checked arc existence");
                loads[arc] += 1;
            }
        }
        Ok(StrategyProfile { paths, loads })
    }

    /// Builds a profile from vertex-name sequences.
    pub fn from_names(arena: &Arena, paths: &[Vec<String>]) -> Result<Self> {
        let resolved = paths
            .iter()
            .map(|p| arena.resolve_path(p))
            .collect::<Result<Vec<_>>>()?;
        StrategyProfile::new(arena, resolved)
    }

    pub fn path(&self, player: usize) -> &[VertexId] {
        &self.paths[player]
    }

    pub fn paths(&self) -> &[Vec<VertexId>] {
        &self.paths
    }

    /// Load `n_e(s)` per arc, indexed by [`ArcId`].
    pub fn loads(&self) -> &[u32] {
        &self.loads
    }

    /// Copy of the profile with player `i` on a different path.
    pub fn with_path(&self, arena: &Arena, player: usize, path: Vec<VertexId>) -> Result<Self> {
        self.with_paths(arena, std::iter::once((player, path)))
    }

    /// Copy of the profile with several players reassigned.
    pub fn with_paths(
        &self,
        arena: &Arena,
        changes: impl IntoIterator<Item = (usize, Vec<VertexId>)>,
    ) -> Result<Self> {
        let mut paths = self.paths.clone();
        for (player, path) in changes {
            if player >= paths.len() {
                return Err(Error::InvalidArgument(format!(
                    "player index {player} out of range"
                )));
            }
            paths[player] = path;
        }
        StrategyProfile::new(arena, paths)
    }
}

fn validate_path(arena: &Arena, player: usize, path: &[VertexId]) -> Result<()> {
    let fail = |msg: String| Err(Error::Validation(format!("player {player}: {msg}")));
    if path.is_empty() {
        return fail("path is empty (a player at the root uses the one-vertex path [root])".into());
    }
    for &v in path {
        if v.0 >= arena.num_vertices() {
            return fail(format!("path mentions nonexistent vertex index {}", v.0));
        }
    }
    if path[0] != arena.root() {
        return fail(format!(
            "path starts at '{}' instead of the root '{}'",
            arena.vertex_name(path[0]),
            arena.vertex_name(arena.root())
        ));
    }
    let terminal = arena.terminal(player);
    if *path.last().unwrap() != terminal {
        return fail(format!(
            "path ends at '{}' instead of the terminal '{}'",
            arena.vertex_name(*path.last().unwrap()),
            arena.vertex_name(terminal)
        ));
    }
    let mut seen = vec![false; arena.num_vertices()];
    for &v in path {
        if seen[v.0] {
            return fail(format!(
                "path repeats vertex '{}' (paths must be simple)",
                arena.vertex_name(v)
            ));
        }
        seen[v.0] = true;
    }
    for w in path.windows(2) {
        if arena.arc_between(w[0], w[1]).is_none() {
            return fail(format!(
                "no arc from '{}' to '{}'",
                arena.vertex_name(w[0]),
                arena.vertex_name(w[1])
            ));
        }
    }
    Ok(())
}

/// Harmonic number `H(h) = 1 + 1/2 + ... + 1/h`, with `H(0) = 0`.
pub fn harmonic(h: u32) -> Rational {
    let mut acc = Rational::zero();
    for i in 1..=i64::from(h) {
        acc += Rational::new(1, i).expect("nonzero denominator");
    }
    acc
}

/// Cumulative cost `Σ_{j=1..h} c_e(j)` of arc `id` under load `h`.
///
/// For fair-share costs this is `base * H(h)`; for tables it is a prefix sum.
pub fn cumulative_cost(arena: &Arena, id: ArcId, h: u32) -> Result<Rational> {
    if h == 0 {
        return Err(Error::CostDomain(
            "cumulative cost queried at load 0".into(),
        ));
    }
    match arena.arc(id).cost_function() {
        CostFunction::FairShare(base) => Ok(base * &harmonic(h)),
        CostFunction::Table(_) => {
            let mut acc = Rational::zero();
            for j in 1..=h {
                acc += arena.arc_cost(id, j)?;
            }
            Ok(acc)
        }
    }
}

/// Rosenthal potential of a profile: `Φ(s) = Σ_e Σ_{h=1..n_e(s)} c_e(h)`.
pub fn potential(arena: &Arena, s: &StrategyProfile) -> Rational {
    potential_from_loads(arena, s.loads())
}

/// Potential computed directly from arc loads (the loads need not come from a
/// full profile; partial-profile loads are used by the local search).
pub fn potential_from_loads(arena: &Arena, loads: &[u32]) -> Rational {
    debug_assert_eq!(loads.len(), arena.num_arcs());
    let mut acc = Rational::zero();
    for (id, &load) in loads.iter().enumerate() {
        if load > 0 {
            acc += cumulative_cost(arena, id, load)
                .expect("loads from a validated profile stay within cost domains");
        }
    }
    acc
}

/// Player `i`'s cost under `s`: the sum of `c_e(n_e(s))` over the arcs of
/// their path.
pub fn player_cost(arena: &Arena, s: &StrategyProfile, player: usize) -> Result<Rational> {
    if player >= arena.num_players() {
        return Err(Error::InvalidArgument(format!(
            "player index {player} out of range (arena has {} players)",
            arena.num_players()
        )));
    }
    let mut acc = Rational::zero();
    for w in s.path(player).windows(2) {
        let arc = arena.arc_between(w[0], w[1]).expect("validated path");
        acc += arena.arc_cost(arc, s.loads()[arc])?;
    }
    Ok(acc)
}

/// Total cost `Σ_i c^i(s)`. For pure fair-share arenas this equals the sum of
/// base costs of the arcs in use, independent of how players overlap.
pub fn total_cost(arena: &Arena, s: &StrategyProfile) -> Rational {
    (0..arena.num_players())
        .map(|i| player_cost(arena, s, i).expect("player index in range"))
        .sum()
}

/// Number of players whose strategies differ between two profiles.
pub fn hamming_distance(a: &StrategyProfile, b: &StrategyProfile) -> Result<usize> {
    if a.paths.len() != b.paths.len() {
        return Err(Error::InvalidArgument(format!(
            "profiles have different player counts ({} vs {})",
            a.paths.len(),
            b.paths.len()
        )));
    }
    Ok(a.paths.iter().zip(&b.paths).filter(|(x, y)| x != y).count())
}

/// A strictly improving unilateral deviation, as returned by [`is_nash`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Deviation {
    pub player: usize,
    pub path: Vec<VertexId>,
    pub cost: Rational,
}

/// Cheapest response of `player` against the others' fixed strategies.
///
/// The deviator pays `c_e(n_e(s^{-i}) + 1)` on every arc they use, so this is
/// a shortest-path problem with those weights. Ties are broken first by arc
/// count and then by lexicographically smallest vertex-index sequence, which
/// makes the result unique and deterministic.
pub fn best_response(
    arena: &Arena,
    s: &StrategyProfile,
    player: usize,
) -> Result<(Vec<VertexId>, Rational)> {
    if player >= arena.num_players() {
        return Err(Error::InvalidArgument(format!(
            "player index {player} out of range (arena has {} players)",
            arena.num_players()
        )));
    }
    let mut loads_minus = s.loads().to_vec();
    for w in s.path(player).windows(2) {
        let arc = arena.arc_between(w[0], w[1]).expect("validated path");
        loads_minus[arc] -= 1;
    }
    let mut weights = Vec::with_capacity(arena.num_arcs());
    for (id, load) in loads_minus.iter().enumerate() {
        weights.push(arena.arc_cost(id, load + 1)?);
    }

    // Dijkstra over the composite key (cost, arc count, vertex sequence).
    // Weights are nonnegative and every extension strictly increases the arc
    // count, so zero-cost cycles cannot creep into an optimal key and the
    // settled paths are simple.
    let target = arena.terminal(player);
    let root = arena.root();
    let mut settled = vec![false; arena.num_vertices()];
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((Rational::zero(), 0usize, vec![root])));
    while let Some(Reverse((cost, len, path))) = heap.pop() {
        let v = *path.last().unwrap();
        if settled[v.0] {
            continue;
        }
        settled[v.0] = true;
        if v == target {
            return Ok((path, cost));
        }
        for &a in arena.out_arcs(v) {
            let w = arena.arc(a).to;
            if !settled[w.0] && !path.contains(&w) {
                let mut next = path.clone();
                next.push(w);
                heap.push(Reverse((&cost + &weights[a], len + 1, next)));
            }
        }
    }
    // Unreachable for validated arenas; kept as a defensive error.
    Err(Error::Validation(format!(
        "terminal '{}' unreachable from the root",
        arena.vertex_name(target)
    )))
}

/// Nash check: `s` is a Nash equilibrium iff no player has a strictly
/// cheaper unilateral deviation. Returns the least-index improving player and
/// their best response as a witness when one exists.
pub fn is_nash(arena: &Arena, s: &StrategyProfile) -> (bool, Option<Deviation>) {
    for i in 0..arena.num_players() {
        let (path, cost) = best_response(arena, s, i).expect("validated profile");
        let current = player_cost(arena, s, i).expect("player index in range");
        if cost < current {
            return (
                false,
                Some(Deviation {
                    player: i,
                    path,
                    cost,
                }),
            );
        }
    }
    (true, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn fair(n: i64) -> CostFunction {
        CostFunction::FairShare(Rational::from_integer(n))
    }

    /// The diamond arena used throughout the unit tests: two parallel
    /// two-arc routes from `r` to `t`, with the cheap route through `a`.
    pub(crate) fn diamond() -> Arena {
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

    pub(crate) fn profile(arena: &Arena, paths: &[&[&str]]) -> StrategyProfile {
        let named: Vec<Vec<String>> = paths
            .iter()
            .map(|p| p.iter().map(|s| s.to_string()).collect())
            .collect();
        StrategyProfile::from_names(arena, &named).unwrap()
    }

    fn rat(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(0), rat("0"));
        assert_eq!(harmonic(1), rat("1"));
        assert_eq!(harmonic(2), rat("3/2"));
        assert_eq!(harmonic(3), rat("11/6"));
        assert_eq!(harmonic(6), rat("49/20"));
        assert_eq!(harmonic(12), rat("86021/27720"));
    }

    #[test]
    fn cumulative_cost_values() {
        let arena = Arena::new(
            vec!["r".into(), "t".into()],
            "r",
            vec![
                ("r".into(), "t".into(), fair(6)),
                (
                    "t".into(),
                    "r".into(),
                    CostFunction::Table(vec![rat("4"), rat("2"), rat("2")]),
                ),
            ],
            vec!["t".into(), "t".into(), "t".into()],
        )
        .unwrap();
        assert_eq!(cumulative_cost(&arena, 0, 2).unwrap(), rat("9"));
        assert_eq!(cumulative_cost(&arena, 0, 3).unwrap(), rat("11"));
        assert_eq!(cumulative_cost(&arena, 1, 2).unwrap(), rat("6"));
        assert!(cumulative_cost(&arena, 1, 4).is_err());
        assert!(cumulative_cost(&arena, 0, 0).is_err());
    }

    #[test]
    fn potential_and_costs_on_diamond() {
        let arena = diamond();
        let shared = profile(&arena, &[&["r", "a", "t"], &["r", "a", "t"]]);
        let split = profile(&arena, &[&["r", "a", "t"], &["r", "b", "t"]]);

        assert_eq!(potential(&arena, &shared), rat("15/2"));
        assert_eq!(potential(&arena, &split), rat("12"));
        assert_eq!(total_cost(&arena, &shared), rat("5"));
        assert_eq!(total_cost(&arena, &split), rat("12"));
        assert_eq!(player_cost(&arena, &shared, 0).unwrap(), rat("5/2"));
        assert_eq!(player_cost(&arena, &split, 1).unwrap(), rat("7"));
        assert!(player_cost(&arena, &shared, 2).is_err());
    }

    #[test]
    fn best_response_on_diamond() {
        let arena = diamond();
        let split = profile(&arena, &[&["r", "a", "t"], &["r", "b", "t"]]);
        let (path, cost) = best_response(&arena, &split, 1).unwrap();
        assert_eq!(arena.format_path(&path), "r -> a -> t");
        assert_eq!(cost, rat("5/2"));

        // Player 0 can also improve: joining player 1 on the b-route halves
        // both arc shares (7/2 versus the current 5).
        let (path0, cost0) = best_response(&arena, &split, 0).unwrap();
        assert_eq!(arena.format_path(&path0), "r -> b -> t");
        assert_eq!(cost0, rat("7/2"));

        // At the shared optimum, staying put is a best response.
        let shared = profile(&arena, &[&["r", "a", "t"], &["r", "a", "t"]]);
        let (path_s, cost_s) = best_response(&arena, &shared, 0).unwrap();
        assert_eq!(arena.format_path(&path_s), "r -> a -> t");
        assert_eq!(cost_s, rat("5/2"));
    }

    #[test]
    fn nash_checks_on_diamond() {
        let arena = diamond();
        let shared = profile(&arena, &[&["r", "a", "t"], &["r", "a", "t"]]);
        let (nash, witness) = is_nash(&arena, &shared);
        assert!(nash);
        assert!(witness.is_none());

        // In the split profile both players can improve; the witness is the
        // least-index one (player 0, moving to the b-route for 7/2 < 5).
        let split = profile(&arena, &[&["r", "a", "t"], &["r", "b", "t"]]);
        let (nash, witness) = is_nash(&arena, &split);
        assert!(!nash);
        let w = witness.unwrap();
        assert_eq!(w.player, 0);
        assert_eq!(arena.format_path(&w.path), "r -> b -> t");
        assert_eq!(w.cost, rat("7/2"));
    }

    #[test]
    fn exact_potential_property_on_diamond() {
        let arena = diamond();
        let split = profile(&arena, &[&["r", "a", "t"], &["r", "b", "t"]]);
        let moved = split
            .with_path(&arena, 1, arena.resolve_path(&["r", "a", "t"]).unwrap())
            .unwrap();
        let phi_delta = potential(&arena, &moved) - potential(&arena, &split);
        let cost_delta =
            player_cost(&arena, &moved, 1).unwrap() - player_cost(&arena, &split, 1).unwrap();
        assert_eq!(phi_delta, cost_delta);
    }

    #[test]
    fn hamming_distance_counts_changed_players() {
        let arena = diamond();
        let shared = profile(&arena, &[&["r", "a", "t"], &["r", "a", "t"]]);
        let split = profile(&arena, &[&["r", "a", "t"], &["r", "b", "t"]]);
        assert_eq!(hamming_distance(&shared, &shared).unwrap(), 0);
        assert_eq!(hamming_distance(&shared, &split).unwrap(), 1);
    }

    #[test]
    fn zero_players_and_root_terminal() {
        let arena = Arena::new(
            vec!["r".into(), "t".into()],
            "r",
            vec![("r".into(), "t".into(), fair(3))],
            vec![],
        )
        .unwrap();
        let empty = StrategyProfile::new(&arena, vec![]).unwrap();
        assert_eq!(potential(&arena, &empty), Rational::zero());
        assert_eq!(total_cost(&arena, &empty), Rational::zero());
        assert!(is_nash(&arena, &empty).0);

        // A player whose terminal is the root uses the one-vertex path.
        let arena2 = Arena::new(
            vec!["r".into(), "t".into()],
            "r",
            vec![("r".into(), "t".into(), fair(3))],
            vec!["r".into()],
        )
        .unwrap();
        let s = profile(&arena2, &[&["r"]]);
        assert_eq!(potential(&arena2, &s), Rational::zero());
        assert_eq!(player_cost(&arena2, &s, 0).unwrap(), Rational::zero());
        assert!(is_nash(&arena2, &s).0);
    }

    #[test]
    fn arena_validation_errors() {
        let fair4 = fair(4);
        // Self-loop.
        assert!(Arena::new(
            vec!["r".into()],
            "r",
            vec![("r".into(), "r".into(), fair4.clone())],
            vec![],
        )
        .is_err());
        // Duplicate arc.
        assert!(Arena::new(
            vec!["r".into(), "t".into()],
            "r",
            vec![
                ("r".into(), "t".into(), fair4.clone()),
                ("r".into(), "t".into(), fair4.clone()),
            ],
            vec!["t".into()],
        )
        .is_err());
        // Unreachable terminal.
        let err =
            Arena::new(vec!["r".into(), "t".into()], "r", vec![], vec!["t".into()]).unwrap_err();
        assert!(err.to_string().contains("player 0"), "{err}");
        // Table too short for the player count.
        let err = Arena::new(
            vec!["r".into(), "t".into()],
            "r",
            vec![(
                "r".into(),
                "t".into(),
                CostFunction::Table(vec![Rational::from_integer(4), Rational::from_integer(2)]),
            )],
            vec!["t".into(), "t".into(), "t".into()],
        )
        .unwrap_err();
        assert!(err.to_string().contains("3 players"), "{err}");
        // Increasing table.
        assert!(Arena::new(
            vec!["r".into(), "t".into()],
            "r",
            vec![(
                "r".into(),
                "t".into(),
                CostFunction::Table(vec![Rational::from_integer(1), Rational::from_integer(2)]),
            )],
            vec!["t".into()],
        )
        .is_err());
        // Negative fair-share base.
        assert!(Arena::new(
            vec!["r".into(), "t".into()],
            "r",
            vec![("r".into(), "t".into(), fair(-1))],
            vec!["t".into()],
        )
        .is_err());
        // Unknown root.
        assert!(Arena::new(vec!["r".into()], "x", vec![], vec![]).is_err());
    }

    #[test]
    fn profile_validation_errors() {
        let arena = diamond();
        // Wrong player count.
        assert!(StrategyProfile::from_names(&arena, &[vec!["r".into()]]).is_err());
        // Path not starting at the root.
        let err = StrategyProfile::from_names(
            &arena,
            &[
                vec!["a".into(), "t".into()],
                vec!["r".into(), "a".into(), "t".into()],
            ],
        )
        .unwrap_err();
        assert!(err.to_string().contains("player 0"), "{err}");
        // Missing arc.
        assert!(StrategyProfile::from_names(
            &arena,
            &[
                vec!["r".into(), "t".into()],
                vec!["r".into(), "a".into(), "t".into()],
            ],
        )
        .is_err());
        // Wrong terminal: path ends at a non-terminal vertex.
        assert!(StrategyProfile::from_names(
            &arena,
            &[
                vec!["r".into(), "a".into()],
                vec!["r".into(), "a".into(), "t".into()],
            ],
        )
        .is_err());
    }

    #[test]
    fn fair_share_total_cost_ignores_overlap() {
        // With fair-share costs the total cost depends only on which arcs are
        // used, not on how players share them.
        let arena = diamond();
        let shared = profile(&arena, &[&["r", "a", "t"], &["r", "a", "t"]]);
        // Both players on the a-route: arcs {ra, at} in use, total 4 + 1.
        assert_eq!(total_cost(&arena, &shared), Rational::from_integer(5));
    }
}
