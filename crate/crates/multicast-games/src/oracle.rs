//! Brute-force reference implementations.
//!
//! These oracles compute the same quantities as the solvers by exhaustive
//! enumeration. They are deliberately simple — correctness by inspection —
//! and ship in the library so that users can cross-check the solvers on
//! their own (small) instances, exactly as this crate's test suite does.
//! Every oracle enforces an explicit cap and reports a capacity error instead
//! of silently running forever.

use crate::error::{Error, Result};
use crate::game::{potential, Arena, StrategyProfile, VertexId};
use crate::rational::Rational;

/// Enumeration caps for the oracles.
#[derive(Clone, Debug)]
pub struct OracleLimits {
    /// Maximum number of simple paths a single [`enumerate_paths`] call may
    /// produce.
    pub max_paths: usize,
    /// Maximum number of full profiles [`brute_min_potential`] and
    /// [`brute_improving_move`] may visit.
    pub max_profiles: u128,
    /// Maximum number of arc subsets [`brute_min_tree_potential`] may visit
    /// (it scans all `2^|arcs|` subsets).
    pub max_tree_subsets: u128,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_paths: 20_000,
            max_profiles: 2_000_000,
            max_tree_subsets: 1 << 20,
        }
    }
}

/// All simple `from -> to` paths, in lexicographic order of their
/// vertex-index sequences. `from == to` yields the single one-vertex path.
pub fn enumerate_paths(
    arena: &Arena,
    from: VertexId,
    to: VertexId,
    limits: &OracleLimits,
) -> Result<Vec<Vec<VertexId>>> {
    let mut found = Vec::new();
    let mut current = vec![from];
    let mut on_path = vec![false; arena.num_vertices()];
    on_path[from.index()] = true;
    // Depth-first search that explores successors in ascending vertex order
    // emits paths in lexicographic order.
    fn dfs(
        arena: &Arena,
        to: VertexId,
        current: &mut Vec<VertexId>,
        on_path: &mut Vec<bool>,
        found: &mut Vec<Vec<VertexId>>,
        cap: usize,
    ) -> Result<()> {
        let v = *current.last().unwrap();
        if v == to {
            if found.len() >= cap {
                return Err(Error::Capacity(format!(
                    "more than {cap} simple paths; raise OracleLimits::max_paths to enumerate them"
                )));
            }
            found.push(current.clone());
            return Ok(()); // a simple path cannot revisit `to`
        }
        for &a in arena.out_arcs(v) {
            let w = arena.arc(a).to();
            if !on_path[w.index()] {
                on_path[w.index()] = true;
                current.push(w);
                dfs(arena, to, current, on_path, found, cap)?;
                current.pop();
                on_path[w.index()] = false;
            }
        }
        Ok(())
    }
    dfs(
        arena,
        to,
        &mut current,
        &mut on_path,
        &mut found,
        limits.max_paths,
    )?;
    Ok(found)
}

fn strategy_spaces(arena: &Arena, limits: &OracleLimits) -> Result<Vec<Vec<Vec<VertexId>>>> {
    (0..arena.num_players())
        .map(|i| enumerate_paths(arena, arena.root(), arena.terminal(i), limits))
        .collect()
}

fn profile_count(spaces: &[Vec<Vec<VertexId>>], limits: &OracleLimits) -> Result<u128> {
    let mut count: u128 = 1;
    for space in spaces {
        count = count
            .checked_mul(space.len() as u128)
            .filter(|&c| c <= limits.max_profiles)
            .ok_or_else(|| {
                Error::Capacity(format!(
                    "profile space exceeds {} profiles; raise OracleLimits::max_profiles to scan it",
                    limits.max_profiles
                ))
            })?;
    }
    Ok(count)
}

/// Visits every profile (odometer over per-player path lists, lexicographic)
/// and feeds `(choice indices, profile)` to `visit`.
fn for_each_profile(
    arena: &Arena,
    spaces: &[Vec<Vec<VertexId>>],
    mut visit: impl FnMut(&[usize], &StrategyProfile),
) {
    let n = spaces.len();
    let mut choice = vec![0usize; n];
    loop {
        let paths: Vec<Vec<VertexId>> = (0..n).map(|i| spaces[i][choice[i]].clone()).collect();
        let profile =
            StrategyProfile::new(arena, paths).expect("enumerated paths form valid profiles");
        visit(&choice, &profile);
        // Advance the odometer (last player varies fastest).
        let mut pos = n;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < spaces[pos].len() {
                break;
            }
            choice[pos] = 0;
        }
    }
}

/// Global minimum of the potential by exhaustive scan over all profiles.
/// Ties resolve to the lexicographically first profile in enumeration order.
pub fn brute_min_potential(
    arena: &Arena,
    limits: &OracleLimits,
) -> Result<(Rational, StrategyProfile)> {
    let spaces = strategy_spaces(arena, limits)?;
    profile_count(&spaces, limits)?;
    let mut best: Option<(Rational, StrategyProfile)> = None;
    for_each_profile(arena, &spaces, |_, profile| {
        let phi = potential(arena, profile);
        match &best {
            Some((b, _)) if *b <= phi => {}
            _ => best = Some((phi, profile.clone())),
        }
    });
    // Zero players: the empty profile with potential 0.
    Ok(best.unwrap_or_else(|| {
        (
            Rational::zero(),
            StrategyProfile::new(arena, vec![]).expect("empty profile"),
        )
    }))
}

/// Exhaustive reference for the k-exchange neighborhood: scans every profile
/// at Hamming distance at most `k` from `s` and returns the minimum-potential
/// strict improvement, or `None` if the neighborhood contains none.
pub fn brute_improving_move(
    arena: &Arena,
    s: &StrategyProfile,
    k: usize,
    limits: &OracleLimits,
) -> Result<Option<StrategyProfile>> {
    let spaces = strategy_spaces(arena, limits)?;
    profile_count(&spaces, limits)?;
    let phi_s = potential(arena, s);
    let mut best: Option<(Rational, StrategyProfile)> = None;
    for_each_profile(arena, &spaces, |_, profile| {
        let distance = profile
            .paths()
            .iter()
            .zip(s.paths())
            .filter(|(a, b)| a != b)
            .count();
        if distance > k {
            return;
        }
        let phi = potential(arena, profile);
        if phi >= phi_s {
            return;
        }
        match &best {
            Some((b, _)) if *b <= phi => {}
            _ => best = Some((phi, profile.clone())),
        }
    });
    Ok(best.map(|(_, p)| p))
}

/// Minimum potential over profiles whose union of paths forms an out-tree
/// rooted at the arena's root: every arc subset is tested for being an
/// out-tree that spans all terminals, and players are routed along the unique
/// tree paths.
///
/// For every validated arena this equals [`brute_min_potential`]'s value: an
/// optimal profile that uses a minimal number of arcs never splits or remerges
/// flow, so its union is an out-tree.
pub fn brute_min_tree_potential(arena: &Arena, limits: &OracleLimits) -> Result<Rational> {
    let m = arena.num_arcs();
    if m >= 128 || (1u128 << m) > limits.max_tree_subsets {
        return Err(Error::Capacity(format!(
            "2^{m} arc subsets exceed {}; raise OracleLimits::max_tree_subsets to scan them",
            limits.max_tree_subsets
        )));
    }
    let root = arena.root();
    let mut best: Option<Rational> = None;
    'subsets: for subset in 0u128..(1u128 << m) {
        // parent[v] = the unique in-arc of v inside the subset.
        let mut parent: Vec<Option<usize>> = vec![None; arena.num_vertices()];
        let mut in_tree = vec![false; arena.num_vertices()];
        in_tree[root.index()] = true;
        for a in 0..m {
            if subset >> a & 1 == 0 {
                continue;
            }
            let arc = arena.arc(a);
            let head = arc.to().index();
            if head == root.index() || parent[head].is_some() {
                continue 'subsets; // root must have in-degree 0, others exactly 1
            }
            parent[head] = Some(a);
            in_tree[head] = true;
            in_tree[arc.from().index()] = true;
        }
        // Every tree vertex must hang off the root: walk to the root from
        // each vertex, bounding the walk to catch cycles.
        for (v, &present) in in_tree.iter().enumerate() {
            if !present || v == root.index() {
                continue;
            }
            let mut cur = v;
            let mut steps = 0;
            loop {
                match parent[cur] {
                    None if cur == root.index() => break,
                    None => continue 'subsets, // dangling tail vertex
                    Some(a) => {
                        cur = arena.arc(a).from().index();
                        steps += 1;
                        if steps > m {
                            continue 'subsets; // cycle
                        }
                    }
                }
            }
        }
        // Route each player along the unique tree path.
        let mut paths = Vec::with_capacity(arena.num_players());
        for i in 0..arena.num_players() {
            let t = arena.terminal(i);
            if !in_tree[t.index()] {
                continue 'subsets;
            }
            let mut rev = vec![t];
            let mut cur = t.index();
            while cur != root.index() {
                let a = parent[cur].expect("tree vertex has a parent");
                let prev = arena.arc(a).from();
                rev.push(prev);
                cur = prev.index();
            }
            rev.reverse();
            paths.push(rev);
        }
        let profile = StrategyProfile::new(arena, paths).expect("tree paths are valid");
        let phi = potential(arena, &profile);
        if best.as_ref().is_none_or(|b| phi < *b) {
            best = Some(phi);
        }
    }
    best.ok_or_else(|| {
        Error::Validation(
            "no out-tree spans the terminals (arena failed reachability validation?)".into(),
        )
    })
}
