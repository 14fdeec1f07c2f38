//! Exact minimum-potential solver: a budgeted subset dynamic program.
//!
//! `Ψ(u, X, m)` is the minimum Rosenthal potential of a subgame in which the
//! players of `X` each pick a simple path from `u` to their terminal, with
//! the union of the chosen paths spanning at most `m` arcs. It satisfies a
//! Dreyfus–Wagner-style recurrence:
//!
//! ```text
//! Ψ(u, X, m) = min( Ψ(u, X, m-1),
//!                   min over arcs (u,v), ∅ ≠ Y ⊆ X, m1 + m2 = m - 1 of
//!                       Ψ(u, X \ Y, m1) + Ψ(v, Y, m2) + Σ_{h=1..|Y|} c_(u,v)(h) )
//! ```
//!
//! with `Ψ(u, ∅, m) = 0`, and `Ψ(u, X, 0) = 0` exactly when every terminal in
//! `X` equals `u` (otherwise infeasible). The arc budget makes the recursion
//! well-founded: each split consumes one arc, so `Y = X` (walking the whole
//! group along an arc) is allowed. An optimal profile that uses a minimal
//! number of arcs has an out-tree as its union, so a budget of
//! `|V| - 1` is always enough for the unrestricted optimum.
//!
//! The same table solves shifted subgames for the k-exchange local search:
//! a [`CostShift`] replaces every arc cost by `c'_e(h) = c_e(shift_e + h)`,
//! which prices the subgame players on top of a fixed background load.
//!
//! Everything here is exact rational arithmetic and fully deterministic: ties
//! resolve to the first branch in a fixed enumeration order (stay, then arcs
//! sorted by head, then subsets ascending by bitmask, then ascending left
//! budget), and the optional parallelism only fans out independent cells of
//! one budget layer, so results are identical regardless of thread count.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::game::{potential, ArcId, Arena, CostFunction, StrategyProfile, VertexId};
use crate::rational::Rational;

/// A set of players, represented as a bitmask over player indices.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PlayerSet {
    mask: u64,
}

impl PlayerSet {
    pub fn empty() -> Self {
        PlayerSet { mask: 0 }
    }

    /// The set `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Result<Self> {
        if n > 64 {
            return Err(Error::Capacity(format!(
                "player sets support at most 64 players, got {n}"
            )));
        }
        Ok(PlayerSet {
            mask: if n == 64 { u64::MAX } else { (1u64 << n) - 1 },
        })
    }

    pub fn from_mask(mask: u64) -> Self {
        PlayerSet { mask }
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut mask = 0u64;
        for i in indices {
            if i >= 64 {
                return Err(Error::Capacity(format!(
                    "player index {i} out of range for a 64-bit player set"
                )));
            }
            mask |= 1 << i;
        }
        Ok(PlayerSet { mask })
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn contains(&self, player: usize) -> bool {
        player < 64 && self.mask >> player & 1 == 1
    }

    pub fn is_subset_of(&self, other: &PlayerSet) -> bool {
        self.mask & !other.mask == 0
    }

    /// Member indices in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..64).filter(move |i| self.mask >> i & 1 == 1)
    }
}

/// Per-arc background loads for shifted subgames: with shift `t_e`, the
/// subgame players see arc costs `c'_e(h) = c_e(t_e + h)`.
#[derive(Clone, Debug)]
pub struct CostShift {
    shifts: Vec<u32>,
}

impl CostShift {
    pub fn zero(arena: &Arena) -> Self {
        CostShift {
            shifts: vec![0; arena.num_arcs()],
        }
    }

    /// Uses the loads of a (partial) profile as the background.
    pub fn from_loads(arena: &Arena, loads: &[u32]) -> Result<Self> {
        if loads.len() != arena.num_arcs() {
            return Err(Error::InvalidArgument(format!(
                "shift vector has {} entries but the arena has {} arcs",
                loads.len(),
                arena.num_arcs()
            )));
        }
        Ok(CostShift {
            shifts: loads.to_vec(),
        })
    }

    pub fn shift(&self, arc: ArcId) -> u32 {
        self.shifts[arc]
    }

    /// Table costs must stay within their domain: every arc needs values for
    /// loads up to `shift + q` where `q` is the subgame player count.
    fn validate(&self, arena: &Arena, q: usize) -> Result<()> {
        for (id, arc) in arena.arcs().iter().enumerate() {
            if let CostFunction::Table(values) = arc.cost_function() {
                let needed = self.shifts[id] as usize + q;
                if needed > values.len() {
                    return Err(Error::Validation(format!(
                        "arc ({}, {}): shift {} plus {q} subgame players needs {needed} table values, but only {} are defined",
                        arena.vertex_name(arc.from()),
                        arena.vertex_name(arc.to()),
                        self.shifts[id],
                        values.len()
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Value of a DP cell: the exact minimum, or infeasible (no profile covers
/// the set within the budget).
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DpValue {
    Infeasible,
    Finite(Rational),
}

impl DpValue {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            DpValue::Finite(v) => Some(v),
            DpValue::Infeasible => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, DpValue::Finite(_))
    }
}

/// Knobs for the DP. The defaults refuse instances whose table would be
/// astronomically large; raise the limits explicitly to go bigger.
#[derive(Clone, Debug)]
pub struct DpOptions {
    /// Hard refusal above this subgame player count (the table is exponential
    /// in it). 24 players already means 16M subsets per vertex and layer.
    pub max_players: usize,
    /// Refusal threshold on the total cell count `(budget+1) * |V| * 2^q`.
    pub max_cells: usize,
    /// Skip cells that are provably infeasible because some terminal is
    /// farther from the vertex than the remaining budget. Changes nothing in
    /// any result; only saves work.
    pub distance_pruning: bool,
    /// Compute the cells of a budget layer in parallel. Cells of one layer
    /// only read earlier layers, so this is deterministic.
    pub parallel: bool,
}

impl Default for DpOptions {
    fn default() -> Self {
        DpOptions {
            max_players: 24,
            max_cells: 64_000_000,
            distance_pruning: true,
            parallel: true,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Choice {
    /// Base case: empty set, or every terminal sits at this vertex.
    Leaf,
    /// The optimum already appears at budget `m - 1`.
    Stay,
    /// Split off `subset` along `arc`, with `left_budget` arcs kept for the
    /// remaining players at the tail (the subset gets `m - 1 - left_budget`).
    Split {
        arc: u32,
        subset: u32,
        left_budget: u16,
    },
}

type Cell = Option<(Rational, Choice)>;

const INFEASIBLE_DIST: u16 = u16::MAX;

/// The full DP table `Ψ(u, X, m)` for one subgame, with choice pointers for
/// reconstruction. All budget layers are retained: the recurrence convolves
/// over every split `m1 + m2 = m - 1`, so earlier layers stay live
/// throughout, and reconstruction is free afterwards.
/// Reconstructed root-to-terminal paths for the queried players,
/// keyed by player index.
pub type PathAssignment = BTreeMap<usize, Vec<VertexId>>;

pub struct DpTable<'a> {
    arena: &'a Arena,
    origin: VertexId,
    /// Global player indices of the subgame, ascending; bit `i` of a local
    /// mask refers to `members[i]`.
    members: Vec<usize>,
    budget: usize,
    width: usize,
    /// `layers[m][u * width + x]`.
    layers: Vec<Vec<Cell>>,
    /// `Σ_{h=1..j} c_e(shift_e + h)` per arc, for `j = 0..=q`.
    shifted_cum: Vec<Vec<Rational>>,
}

impl<'a> DpTable<'a> {
    pub fn build(
        arena: &'a Arena,
        origin: VertexId,
        players: &PlayerSet,
        shift: &CostShift,
        budget: usize,
        opts: &DpOptions,
    ) -> Result<Self> {
        if origin.index() >= arena.num_vertices() {
            return Err(Error::InvalidArgument(format!(
                "origin vertex index {} out of range",
                origin.index()
            )));
        }
        let members: Vec<usize> = players.iter().collect();
        if let Some(&bad) = members.iter().find(|&&p| p >= arena.num_players()) {
            return Err(Error::InvalidArgument(format!(
                "player index {bad} out of range (arena has {} players)",
                arena.num_players()
            )));
        }
        let q = members.len();
        if q > opts.max_players || q > 30 {
            return Err(Error::Capacity(format!(
                "subset DP over {q} players exceeds the limit of {} (the table is exponential in the player count; raise DpOptions::max_players to force it)",
                opts.max_players.min(30)
            )));
        }
        if shift.shifts.len() != arena.num_arcs() {
            return Err(Error::InvalidArgument(format!(
                "shift vector has {} entries but the arena has {} arcs",
                shift.shifts.len(),
                arena.num_arcs()
            )));
        }
        shift.validate(arena, q)?;

        let width = 1usize << q;
        let cells = (budget + 1)
            .checked_mul(arena.num_vertices())
            .and_then(|c| c.checked_mul(width))
            .filter(|&c| c <= opts.max_cells)
            .ok_or_else(|| {
                Error::Capacity(format!(
                    "DP table would hold more than {} cells; raise DpOptions::max_cells to force it",
                    opts.max_cells
                ))
            })?;
        let _ = cells;

        // Arc-count distances from every vertex to every member terminal
        // (reverse BFS per member). Used for feasibility masks and pruning.
        let nv = arena.num_vertices();
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); nv]; // tails of in-arcs
        for arc in arena.arcs() {
            rev[arc.to().index()].push(arc.from().index());
        }
        let mut dist = vec![INFEASIBLE_DIST; nv * q.max(1)];
        for (p, &member) in members.iter().enumerate() {
            let t = arena.terminal(member).index();
            dist[t * q + p] = 0;
            let mut queue = std::collections::VecDeque::from([t]);
            while let Some(v) = queue.pop_front() {
                let d = dist[v * q + p];
                for &u in &rev[v] {
                    if dist[u * q + p] == INFEASIBLE_DIST {
                        dist[u * q + p] = d + 1;
                        queue.push_back(u);
                    }
                }
            }
        }
        // feas[u]: members whose terminal is reachable from u at all;
        // term_at[u]: members whose terminal is exactly u.
        let mut feas = vec![0u32; nv];
        let mut term_at = vec![0u32; nv];
        for u in 0..nv {
            for p in 0..q {
                let d = dist[u * q + p];
                if d != INFEASIBLE_DIST {
                    feas[u] |= 1 << p;
                    if d == 0 {
                        term_at[u] |= 1 << p;
                    }
                }
            }
        }

        let mut shifted_cum = Vec::with_capacity(arena.num_arcs());
        for id in 0..arena.num_arcs() {
            let base_shift = shift.shift(id);
            let mut cum = Vec::with_capacity(q + 1);
            cum.push(Rational::zero());
            for j in 1..=q as u32 {
                let prev = cum.last().unwrap().clone();
                cum.push(prev + arena.arc_cost(id, base_shift + j)?);
            }
            shifted_cum.push(cum);
        }

        let mut table = DpTable {
            arena,
            origin,
            members,
            budget,
            width,
            layers: Vec::with_capacity(budget + 1),
            shifted_cum,
        };
        table.fill(&dist, &feas, &term_at, opts);
        Ok(table)
    }

    fn fill(&mut self, dist: &[u16], feas: &[u32], term_at: &[u32], opts: &DpOptions) {
        let nv = self.arena.num_vertices();
        let q = self.members.len();
        let width = self.width;

        // Layer 0: Ψ(u, ∅, 0) = 0; Ψ(u, X, 0) = 0 iff every terminal of X is u.
        let mut layer0 = vec![None; nv * width];
        for u in 0..nv {
            for x in 0..width as u32 {
                if x & !term_at[u] == 0 {
                    layer0[u * width + x as usize] = Some((Rational::zero(), Choice::Leaf));
                }
            }
        }
        self.layers.push(layer0);

        for m in 1..=self.budget {
            let compute = |idx: usize| -> Cell {
                let u = idx / width;
                let x = (idx % width) as u32;
                self.compute_cell(u, x, m, dist, feas, q, opts)
            };
            let layer: Vec<Cell> = if opts.parallel && nv * width >= 4096 {
                (0..nv * width).into_par_iter().map(compute).collect()
            } else {
                (0..nv * width).map(compute).collect()
            };
            self.layers.push(layer);
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn compute_cell(
        &self,
        u: usize,
        x: u32,
        m: usize,
        dist: &[u16],
        feas: &[u32],
        q: usize,
        opts: &DpOptions,
    ) -> Cell {
        if x == 0 {
            return Some((Rational::zero(), Choice::Leaf));
        }
        if opts.distance_pruning {
            // If some terminal in X is farther from u than the whole budget,
            // the cell is infeasible; the recurrence would agree, this just
            // skips the work.
            let mut bits = x;
            while bits != 0 {
                let p = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let d = dist[u * q + p];
                if d == INFEASIBLE_DIST || d as usize > m {
                    return None;
                }
            }
        }
        let width = self.width;
        let mut best: Option<(Rational, Choice)> = self.layers[m - 1][u * width + x as usize]
            .as_ref()
            .map(|(v, _)| (v.clone(), Choice::Stay));

        for &a in self.arena.out_arcs(VertexId(u)) {
            let v = self.arena.arc(a).to().index();
            // Only subsets whose terminals are reachable from v can be
            // finite on the right-hand side; others are infeasible anyway.
            let allowed = x & feas[v];
            if allowed == 0 {
                continue;
            }
            let cum = &self.shifted_cum[a];
            // Nonempty submasks of `allowed` in ascending order.
            let mut y: u32 = 0;
            loop {
                y = y.wrapping_sub(allowed) & allowed;
                if y == 0 {
                    break;
                }
                let rest = x ^ y;
                let arc_cost = &cum[y.count_ones() as usize];
                for m1 in 0..m {
                    let m2 = m - 1 - m1;
                    let Some((left, _)) = &self.layers[m1][u * width + rest as usize] else {
                        continue;
                    };
                    let Some((right, _)) = &self.layers[m2][v * width + y as usize] else {
                        continue;
                    };
                    let cand = left + right + arc_cost;
                    if best.as_ref().is_none_or(|(b, _)| cand < *b) {
                        best = Some((
                            cand,
                            Choice::Split {
                                arc: a as u32,
                                subset: y,
                                left_budget: m1 as u16,
                            },
                        ));
                    }
                }
            }
        }
        best
    }

    pub fn origin(&self) -> VertexId {
        self.origin
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    /// Global player indices of the subgame, ascending.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    fn local_mask(&self, set: &PlayerSet) -> Result<u32> {
        let mut local = 0u32;
        for p in set.iter() {
            match self.members.binary_search(&p) {
                Ok(bit) => local |= 1 << bit,
                Err(_) => {
                    return Err(Error::InvalidArgument(format!(
                        "player {p} is not part of this subgame"
                    )))
                }
            }
        }
        Ok(local)
    }

    /// `Ψ(u, set, m)` for any subset of the subgame's players.
    pub fn value(&self, u: VertexId, set: &PlayerSet, m: usize) -> Result<DpValue> {
        if u.index() >= self.arena.num_vertices() {
            return Err(Error::InvalidArgument(format!(
                "vertex index {} out of range",
                u.index()
            )));
        }
        if m > self.budget {
            return Err(Error::InvalidArgument(format!(
                "budget {m} exceeds the table's budget {}",
                self.budget
            )));
        }
        let x = self.local_mask(set)?;
        Ok(match &self.layers[m][u.index() * self.width + x as usize] {
            Some((v, _)) => DpValue::Finite(v.clone()),
            None => DpValue::Infeasible,
        })
    }

    /// `Ψ(origin, all subgame players, budget)`.
    pub fn final_value(&self) -> DpValue {
        let x = self.width - 1;
        match &self.layers[self.budget][self.origin.index() * self.width + x] {
            Some((v, _)) => DpValue::Finite(v.clone()),
            None => DpValue::Infeasible,
        }
    }

    /// Reconstructs one optimal assignment of paths (keyed by global player
    /// index), or `None` if the subgame is infeasible.
    ///
    /// Reconstruction starts at the smallest budget that already achieves the
    /// optimal value and follows the stored choices. When a split's subpath
    /// revisits the split vertex, the walk is trimmed to the subpath starting
    /// there; trimming only removes arcs, and the recomputed shifted
    /// potential of the result is asserted to equal the table value exactly.
    pub fn reconstruct(&self) -> Option<PathAssignment> {
        let full = (self.width - 1) as u32;
        let target =
            match &self.layers[self.budget][self.origin.index() * self.width + full as usize] {
                Some((v, _)) => v.clone(),
                None => return None,
            };
        // Smallest budget achieving the optimum (values are non-increasing
        // in the budget).
        let m = (0..=self.budget)
            .find(|&m| {
                self.layers[m][self.origin.index() * self.width + full as usize]
                    .as_ref()
                    .is_some_and(|(v, _)| *v == target)
            })
            .expect("the final budget achieves the optimum");
        let mut paths = BTreeMap::new();
        self.rebuild(self.origin.index(), full, m, &mut paths);

        // Exactness check: the reconstructed paths must realize the value.
        let mut loads = vec![0u32; self.arena.num_arcs()];
        for path in paths.values() {
            for w in path.windows(2) {
                let a = self
                    .arena
                    .arc_between(w[0], w[1])
                    .expect("reconstructed paths follow arcs");
                loads[a] += 1;
            }
        }
        let mut recomputed = Rational::zero();
        for (a, &load) in loads.iter().enumerate() {
            recomputed += self.shifted_cum[a][load as usize].clone();
        }
        assert_eq!(
            recomputed, target,
            "reconstructed profile must realize the DP value exactly"
        );
        Some(paths)
    }

    fn rebuild(&self, u: usize, x: u32, m: usize, out: &mut PathAssignment) {
        if x == 0 {
            return;
        }
        let (_, choice) = self.layers[m][u * self.width + x as usize]
            .as_ref()
            .expect("rebuild only visits feasible cells");
        match *choice {
            Choice::Leaf => {
                let mut bits = x;
                while bits != 0 {
                    let p = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    out.insert(self.members[p], vec![VertexId(u)]);
                }
            }
            Choice::Stay => self.rebuild(u, x, m - 1, out),
            Choice::Split {
                arc,
                subset,
                left_budget,
            } => {
                let m1 = left_budget as usize;
                let m2 = m - 1 - m1;
                self.rebuild(u, x ^ subset, m1, out);
                let v = self.arena.arc(arc as usize).to().index();
                let mut sub = BTreeMap::new();
                self.rebuild(v, subset, m2, &mut sub);
                let head = VertexId(u);
                for (p, path) in sub {
                    // Prepend u, or cut to the suffix if the subpath already
                    // passes through u (a suffix of a simple path is simple).
                    let full_path = match path.iter().position(|&w| w == head) {
                        Some(pos) => path[pos..].to_vec(),
                        None => {
                            let mut with_head = Vec::with_capacity(path.len() + 1);
                            with_head.push(head);
                            with_head.extend(path);
                            with_head
                        }
                    };
                    out.insert(p, full_path);
                }
            }
        }
    }
}

/// Solves one (possibly shifted) subgame: the exact minimum shifted potential
/// for `players` starting from `origin` within the arc budget, plus a
/// realizing assignment of paths when feasible.
pub fn solve_subgame(
    arena: &Arena,
    origin: VertexId,
    players: &PlayerSet,
    shift: &CostShift,
    budget: usize,
    opts: &DpOptions,
) -> Result<(DpValue, Option<PathAssignment>)> {
    let table = DpTable::build(arena, origin, players, shift, budget, opts)?;
    let value = table.final_value();
    let assignment = table.reconstruct();
    Ok((value, assignment))
}

/// Exact global minimum of the Rosenthal potential, with a realizing profile.
///
/// Runs the subset DP from the root over all players with budget `|V| - 1`
/// (sufficient because some optimal profile's arc union is an out-tree).
pub fn min_potential(arena: &Arena) -> Result<(Rational, StrategyProfile)> {
    min_potential_with(arena, &DpOptions::default())
}

pub fn min_potential_with(arena: &Arena, opts: &DpOptions) -> Result<(Rational, StrategyProfile)> {
    let players = PlayerSet::full(arena.num_players())?;
    let shift = CostShift::zero(arena);
    let budget = arena.num_vertices() - 1;
    let (value, assignment) = solve_subgame(arena, arena.root(), &players, &shift, budget, opts)?;
    let value = match value {
        DpValue::Finite(v) => v,
        DpValue::Infeasible => unreachable!(
            "validated arenas admit a profile within budget |V| - 1 (route everyone along a BFS tree)"
        ),
    };
    let assignment = assignment.expect("feasible subgames reconstruct");
    let mut paths = Vec::with_capacity(arena.num_players());
    for i in 0..arena.num_players() {
        paths.push(assignment[&i].clone());
    }
    let profile = StrategyProfile::new(arena, paths)?;
    debug_assert_eq!(potential(arena, &profile), value);
    Ok((value, profile))
}
