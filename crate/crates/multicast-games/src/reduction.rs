//! Hardness-instance generator: Multicoloured Clique → k-exchange local
//! search.
//!
//! Given an undirected graph `H` whose vertices are partitioned into `k`
//! independent classes, the generator emits a multicast game and an initial
//! profile such that a multicoloured k-clique in `H` yields an improving
//! exchange of exactly `k(k-1)` players whose potential decrease is exactly
//! `ε = (k-1)/k⁵` — and, for large enough `k`, no clique means no improving
//! exchange within that radius at all.
//!
//! Construction (all costs fair-share):
//!
//! - a root `r` and a pseudo-root `rp`, joined by an arc `(r, rp)` of cost
//!   `W = (k·R·H(k-1) - (3/2)·C(k,2) - ε) / H(k(k-1))`;
//! - per vertex `u` of `H` (in class `i`): a hub `bar:u` with an arc
//!   `(r, bar:u)` of cost `R = k²`, and player vertices `u:j` for every class
//!   `j ≠ i`, with free arcs `(bar:u, u:j)`;
//! - per edge `uv` of `H` (`u` in class `i`, `v` in class `j`, `i < j`): a
//!   vertex `x:u:v` with an arc `(rp, x:u:v)` of cost 1 and free arcs
//!   `(x:u:v, u:j)` and `(x:u:v, v:i)`.
//!
//! One player per vertex `u:j`; initially everyone routes `r → bar:u → u:j`,
//! giving potential `|V(H)|·R·H(k-1)`. The players of a clique can reroute
//! through `rp`, pairing up on the `x` vertices; the threshold price `W` of
//! `(r, rp)` is chosen so the swap wins by exactly `ε`.
//!
//! The generator refuses `W < 1`: below that threshold the construction's
//! no-clique guarantee has no backing. Even with `W ≥ 1`, the guarantee is
//! only proven for "large enough" `k` (unquantified), so a no-clique instance
//! is labelled `No` only when the caller explicitly opts into trusting the
//! `W ≥ 1` threshold; otherwise it is labelled `Unknown`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::game::{harmonic, potential, Arena, CostFunction, StrategyProfile};
use crate::rational::Rational;

/// An undirected graph with vertices partitioned into independent classes —
/// the input of Multicoloured Clique.
#[derive(Clone, Debug)]
pub struct ColouredGraph {
    classes: Vec<Vec<String>>,
    edges: Vec<(String, String)>,
    class_of: BTreeMap<String, usize>,
}

impl ColouredGraph {
    pub fn new(classes: Vec<Vec<String>>, edges: Vec<(String, String)>) -> Result<Self> {
        if classes.is_empty() {
            return Err(Error::Validation("no vertex classes given".into()));
        }
        let mut class_of = BTreeMap::new();
        for (i, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return Err(Error::Validation(format!("class {} is empty", i + 1)));
            }
            for name in class {
                if name.is_empty() || name.contains(':') {
                    return Err(Error::Validation(format!(
                        "vertex name '{name}' is invalid (must be nonempty, without ':')"
                    )));
                }
                if class_of.insert(name.clone(), i).is_some() {
                    return Err(Error::Validation(format!(
                        "vertex name '{name}' appears twice"
                    )));
                }
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        for (a, b) in &edges {
            let (ca, cb) = match (class_of.get(a), class_of.get(b)) {
                (Some(&ca), Some(&cb)) => (ca, cb),
                _ => {
                    return Err(Error::Validation(format!(
                        "edge ({a}, {b}) mentions an unknown vertex"
                    )))
                }
            };
            if ca == cb {
                return Err(Error::Validation(format!(
                    "edge ({a}, {b}) lies inside class {} (classes must be independent sets)",
                    ca + 1
                )));
            }
            let key = if a < b {
                (a.clone(), b.clone())
            } else {
                (b.clone(), a.clone())
            };
            if !seen.insert(key) {
                return Err(Error::Validation(format!("edge ({a}, {b}) appears twice")));
            }
        }
        Ok(ColouredGraph {
            classes,
            edges,
            class_of,
        })
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }

    pub fn classes(&self) -> &[Vec<String>] {
        &self.classes
    }

    pub fn edges(&self) -> &[(String, String)] {
        &self.edges
    }

    /// Zero-based class index of a vertex.
    pub fn class_of(&self, name: &str) -> Option<usize> {
        self.class_of.get(name).copied()
    }

    pub fn has_edge(&self, a: &str, b: &str) -> bool {
        self.edges
            .iter()
            .any(|(x, y)| (x == a && y == b) || (x == b && y == a))
    }
}

/// Ground-truth label of a generated instance.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Label {
    /// A multicoloured clique exists (witness attached): an improving
    /// exchange within the radius exists, decrease exactly ε.
    Yes,
    /// Exhaustive search found no clique AND the caller trusts the `W ≥ 1`
    /// threshold as sufficient for the no-improving-move direction.
    No,
    /// No clique found, but the no-direction is not vouched for (the
    /// construction's guarantee holds only for "large enough" k).
    Unknown,
}

impl Label {
    pub fn as_str(&self) -> &'static str {
        match self {
            Label::Yes => "yes",
            Label::No => "no",
            Label::Unknown => "unknown",
        }
    }
}

/// Options for [`generate_with`].
#[derive(Clone, Debug, Default)]
pub struct ReductionOptions {
    /// Label no-clique instances `No` instead of `Unknown`, treating `W ≥ 1`
    /// as sufficient for the backward guarantee.
    pub trust_w_threshold: bool,
    /// Cap on the number of class combinations the clique search may visit.
    /// Exceeding it leaves the label `Unknown` rather than failing.
    pub witness_cap: Option<u128>,
}

const DEFAULT_WITNESS_CAP: u128 = 10_000_000;

/// A generated local-search instance with ground truth.
#[derive(Clone, Debug)]
pub struct GeneratedInstance {
    pub arena: Arena,
    pub initial: StrategyProfile,
    /// Neighborhood radius of the intended query: `k(k-1)`.
    pub radius: usize,
    /// The guaranteed decrease when a clique exists: `(k-1)/k⁵`.
    pub epsilon: Rational,
    /// Price of the hub arcs `(r, bar:u)`: `R = k²`.
    pub r_param: Rational,
    /// Price of the threshold arc `(r, rp)`.
    pub w_param: Rational,
    pub label: Label,
    /// A multicoloured clique, one vertex per class, when the label is Yes.
    pub witness: Option<Vec<String>>,
    pub k: usize,
    /// The source graph, kept so cliques can be validated and rerouted.
    pub graph: ColouredGraph,
}

fn bar_name(u: &str) -> String {
    format!("bar:{u}")
}

/// Player vertex for `u` and class `j` (1-based in the name).
fn player_vertex_name(u: &str, j: usize) -> String {
    format!("{u}:{}", j + 1)
}

/// Edge vertex; `u`'s class precedes `v`'s.
fn x_name(u: &str, v: &str) -> String {
    format!("x:{u}:{v}")
}

pub fn generate(graph: &ColouredGraph) -> Result<GeneratedInstance> {
    generate_with(graph, &ReductionOptions::default())
}

pub fn generate_with(graph: &ColouredGraph, opts: &ReductionOptions) -> Result<GeneratedInstance> {
    let k = graph.num_classes();
    if k < 2 {
        return Err(Error::InvalidArgument(format!(
            "the construction needs at least 2 classes, got {k}"
        )));
    }
    let kq = Rational::from_integer(k as i64);
    let r_param = &kq * &kq;
    // ε = (k-1)/k⁵
    let epsilon = Rational::from_integer(k as i64 - 1) / (&r_param * &r_param * &kq);
    // W = (k·R·H(k-1) - (3/2)·C(k,2) - ε) / H(k(k-1))
    let pairs = Rational::from_integer((k * (k - 1) / 2) as i64);
    let three_halves = Rational::new(3, 2).expect("nonzero denominator");
    let w_param = (&kq * &r_param * harmonic(k as u32 - 1) - three_halves * pairs - &epsilon)
        / harmonic((k * (k - 1)) as u32);
    if w_param < Rational::one() {
        return Err(Error::InvalidArgument(format!(
            "computed W = {w_param} < 1; the construction's guarantees need W ≥ 1 (use more classes)"
        )));
    }

    let zero = || CostFunction::FairShare(Rational::zero());
    let mut vertices = vec!["r".to_string(), "rp".to_string()];
    let mut arcs: Vec<(String, String, CostFunction)> = vec![(
        "r".into(),
        "rp".into(),
        CostFunction::FairShare(w_param.clone()),
    )];
    let mut players: Vec<String> = Vec::new();
    let mut initial_paths: Vec<Vec<String>> = Vec::new();

    for (i, class) in graph.classes().iter().enumerate() {
        for u in class {
            let bar = bar_name(u);
            vertices.push(bar.clone());
            arcs.push((
                "r".into(),
                bar.clone(),
                CostFunction::FairShare(r_param.clone()),
            ));
            for j in 0..k {
                if j == i {
                    continue;
                }
                let pv = player_vertex_name(u, j);
                vertices.push(pv.clone());
                arcs.push((bar.clone(), pv.clone(), zero()));
                players.push(pv.clone());
                initial_paths.push(vec!["r".into(), bar.clone(), pv]);
            }
        }
    }
    for (a, b) in graph.edges() {
        // Canonical order: lower class first.
        let (u, v) = if graph.class_of(a).unwrap() < graph.class_of(b).unwrap() {
            (a, b)
        } else {
            (b, a)
        };
        let (cu, cv) = (graph.class_of(u).unwrap(), graph.class_of(v).unwrap());
        let x = x_name(u, v);
        vertices.push(x.clone());
        arcs.push((
            "rp".into(),
            x.clone(),
            CostFunction::FairShare(Rational::one()),
        ));
        arcs.push((x.clone(), player_vertex_name(u, cv), zero()));
        arcs.push((x.clone(), player_vertex_name(v, cu), zero()));
    }

    let arena = Arena::new(vertices, "r", arcs, players)?;
    let initial = StrategyProfile::from_names(&arena, &initial_paths)?;

    // Φ(initial) = |V(H)|·R·H(k-1): every hub arc carries its k-1 players.
    let expected =
        Rational::from_integer(graph.num_vertices() as i64) * &r_param * harmonic(k as u32 - 1);
    assert_eq!(
        potential(&arena, &initial),
        expected,
        "initial potential must match the closed form"
    );

    let cap = opts.witness_cap.unwrap_or(DEFAULT_WITNESS_CAP);
    let (label, witness) = match clique_witness_capped(graph, cap) {
        Ok(Some(clique)) => (Label::Yes, Some(clique)),
        Ok(None) => (
            if opts.trust_w_threshold {
                Label::No
            } else {
                Label::Unknown
            },
            None,
        ),
        Err(Error::Capacity(_)) => (Label::Unknown, None),
        Err(e) => return Err(e),
    };

    Ok(GeneratedInstance {
        arena,
        initial,
        radius: k * (k - 1),
        epsilon,
        r_param,
        w_param,
        label,
        witness,
        k,
        graph: graph.clone(),
    })
}

/// Exhaustive search for a multicoloured clique (one vertex per class,
/// pairwise adjacent), lexicographic-first in input order.
pub fn clique_witness(graph: &ColouredGraph) -> Result<Option<Vec<String>>> {
    clique_witness_capped(graph, DEFAULT_WITNESS_CAP)
}

fn clique_witness_capped(graph: &ColouredGraph, cap: u128) -> Result<Option<Vec<String>>> {
    let combos: u128 = graph.classes().iter().map(|c| c.len() as u128).product();
    if combos > cap {
        return Err(Error::Capacity(format!(
            "clique search over {combos} combinations exceeds the cap of {cap}"
        )));
    }
    let k = graph.num_classes();
    let mut chosen: Vec<&String> = Vec::with_capacity(k);
    // Depth-first over one pick per class with early adjacency pruning.
    fn descend<'g>(
        graph: &'g ColouredGraph,
        depth: usize,
        chosen: &mut Vec<&'g String>,
    ) -> Option<Vec<String>> {
        if depth == graph.num_classes() {
            return Some(chosen.iter().map(|s| (*s).clone()).collect());
        }
        for cand in &graph.classes()[depth] {
            if chosen.iter().all(|prev| graph.has_edge(prev, cand)) {
                chosen.push(cand);
                if let Some(found) = descend(graph, depth + 1, chosen) {
                    return Some(found);
                }
                chosen.pop();
            }
        }
        None
    }
    Ok(descend(graph, 0, &mut chosen))
}

/// Reroutes the clique's players through the pseudo-root: for every ordered
/// pair of distinct clique vertices `(u, v)` (`u` in class `i`, `v` in class
/// `j`), player `u:j` switches to `r → rp → x:u:v → u:j`. Exactly `k(k-1)`
/// players move, and the potential drops by exactly ε.
pub fn clique_to_profile(inst: &GeneratedInstance, clique: &[String]) -> Result<StrategyProfile> {
    let k = inst.k;
    if clique.len() != k {
        return Err(Error::InvalidArgument(format!(
            "clique must have {} vertices, got {}",
            k,
            clique.len()
        )));
    }
    for (i, u) in clique.iter().enumerate() {
        match inst.graph.class_of(u) {
            Some(c) if c == i => {}
            Some(c) => {
                return Err(Error::InvalidArgument(format!(
                    "clique vertex '{u}' is in class {}, expected class {} (one vertex per class, in class order)",
                    c + 1,
                    i + 1
                )))
            }
            None => {
                return Err(Error::InvalidArgument(format!(
                    "clique vertex '{u}' is not a vertex of the graph"
                )))
            }
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            if !inst.graph.has_edge(&clique[i], &clique[j]) {
                return Err(Error::InvalidArgument(format!(
                    "not a clique: no edge between '{}' and '{}'",
                    clique[i], clique[j]
                )));
            }
        }
    }

    // Player index by terminal vertex name (terminals are unique here).
    let terminal_index: BTreeMap<&str, usize> = inst
        .arena
        .terminals()
        .iter()
        .enumerate()
        .map(|(p, &t)| (inst.arena.vertex_name(t), p))
        .collect();

    let mut changes = Vec::with_capacity(k * (k - 1));
    for (i, u) in clique.iter().enumerate() {
        for (j, v) in clique.iter().enumerate() {
            if i == j {
                continue;
            }
            let x = if i < j { x_name(u, v) } else { x_name(v, u) };
            let target = player_vertex_name(u, j);
            let player = terminal_index[target.as_str()];
            let path = inst
                .arena
                .resolve_path(&["r".to_string(), "rp".to_string(), x, target])?;
            changes.push((player, path));
        }
    }
    let rerouted = inst.initial.with_paths(&inst.arena, changes)?;

    let before = potential(&inst.arena, &inst.initial);
    let after = potential(&inst.arena, &rerouted);
    assert_eq!(
        &before - &after,
        inst.epsilon,
        "clique reroute must decrease the potential by exactly ε"
    );
    assert_eq!(
        crate::game::hamming_distance(&inst.initial, &rerouted)?,
        k * (k - 1),
        "clique reroute must move exactly k(k-1) players"
    );
    Ok(rerouted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{hamming_distance, is_nash, total_cost};
    use crate::oracle::{enumerate_paths, OracleLimits};

    fn rat(s: &str) -> Rational {
        s.parse().unwrap()
    }

    /// Three classes of two; exactly one multicoloured clique {a1, b1, c1}.
    pub(crate) fn planted_k3() -> ColouredGraph {
        ColouredGraph::new(
            vec![
                vec!["a1".into(), "a2".into()],
                vec!["b1".into(), "b2".into()],
                vec!["c1".into(), "c2".into()],
            ],
            vec![
                ("a1".into(), "b1".into()),
                ("a1".into(), "c1".into()),
                ("b1".into(), "c1".into()),
                ("a2".into(), "b2".into()),
                ("a2".into(), "c2".into()),
            ],
        )
        .unwrap()
    }

    #[test]
    fn validation_rejects_bad_graphs() {
        // Edge inside a class.
        assert!(ColouredGraph::new(
            vec![vec!["a".into(), "b".into()], vec!["c".into()]],
            vec![("a".into(), "b".into())],
        )
        .is_err());
        // Duplicate vertex name across classes.
        assert!(ColouredGraph::new(vec![vec!["a".into()], vec!["a".into()]], vec![],).is_err());
        // Unknown endpoint.
        assert!(ColouredGraph::new(
            vec![vec!["a".into()], vec!["b".into()]],
            vec![("a".into(), "z".into())],
        )
        .is_err());
        // Duplicate edge (either orientation).
        assert!(ColouredGraph::new(
            vec![vec!["a".into()], vec!["b".into()]],
            vec![("a".into(), "b".into()), ("b".into(), "a".into())],
        )
        .is_err());
        // ':' reserved for generated vertex names.
        assert!(ColouredGraph::new(vec![vec!["a:1".into()]], vec![]).is_err());
    }

    #[test]
    fn k3_parameters_are_exact() {
        let inst = generate(&planted_k3()).unwrap();
        assert_eq!(inst.k, 3);
        assert_eq!(inst.radius, 6);
        assert_eq!(inst.r_param, rat("9"));
        assert_eq!(inst.epsilon, rat("2/243"));
        assert_eq!(inst.w_param, rat("174920/11907"));
        assert_eq!(inst.arena.num_players(), 12);
        // |V| = 2 + k·|V(H)| + |E(H)|
        assert_eq!(inst.arena.num_vertices(), 2 + 3 * 6 + 5);
        assert_eq!(potential(&inst.arena, &inst.initial), rat("81"));
        assert_eq!(inst.label, Label::Yes);
        assert_eq!(
            inst.witness.as_deref().unwrap(),
            ["a1".to_string(), "b1".into(), "c1".into()]
        );
    }

    #[test]
    fn clique_reroute_decreases_by_epsilon_exactly() {
        let inst = generate(&planted_k3()).unwrap();
        let clique = inst.witness.clone().unwrap();
        let rerouted = clique_to_profile(&inst, &clique).unwrap();
        assert_eq!(potential(&inst.arena, &rerouted), rat("19681/243"));
        assert_eq!(hamming_distance(&inst.initial, &rerouted).unwrap(), 6);
        // Every clique-edge vertex carries exactly two players.
        let loads = rerouted.loads();
        for (u, v) in [("a1", "b1"), ("a1", "c1"), ("b1", "c1")] {
            let rp = inst.arena.vertex_id("rp").unwrap();
            let x = inst.arena.vertex_id(&x_name(u, v)).unwrap();
            let arc = inst.arena.arc_between(rp, x).unwrap();
            assert_eq!(loads[arc], 2, "x:{u}:{v}");
        }
        // Non-clique edge vertices stay empty.
        for (u, v) in [("a2", "b2"), ("a2", "c2")] {
            let rp = inst.arena.vertex_id("rp").unwrap();
            let x = inst.arena.vertex_id(&x_name(u, v)).unwrap();
            let arc = inst.arena.arc_between(rp, x).unwrap();
            assert_eq!(loads[arc], 0, "x:{u}:{v}");
        }
    }

    #[test]
    fn initial_profile_is_nash() {
        // Single players never benefit from the rp detour (W ≥ 1 and x-arcs
        // cost 1 vs the free hub arcs already paid for by classmates).
        let inst = generate(&planted_k3()).unwrap();
        let (nash, witness) = is_nash(&inst.arena, &inst.initial);
        assert!(nash, "unexpected deviation: {witness:?}");
    }

    #[test]
    fn rejects_invalid_cliques() {
        let inst = generate(&planted_k3()).unwrap();
        // Not a clique: a2-b2 is an edge but a2-c2-b2 misses b2-c2.
        let bad = vec!["a2".to_string(), "b2".into(), "c2".into()];
        assert!(clique_to_profile(&inst, &bad).is_err());
        // Wrong class order.
        let swapped = vec!["b1".to_string(), "a1".into(), "c1".into()];
        assert!(clique_to_profile(&inst, &swapped).is_err());
        // Wrong length.
        assert!(clique_to_profile(&inst, &["a1".to_string()]).is_err());
    }

    #[test]
    fn witness_search_is_exhaustive() {
        let g = planted_k3();
        assert_eq!(
            clique_witness(&g).unwrap().unwrap(),
            vec!["a1".to_string(), "b1".into(), "c1".into()]
        );
        // Remove one clique edge: no multicoloured clique remains.
        let broken = ColouredGraph::new(
            vec![
                vec!["a1".into(), "a2".into()],
                vec!["b1".into(), "b2".into()],
                vec!["c1".into(), "c2".into()],
            ],
            vec![
                ("a1".into(), "b1".into()),
                ("a1".into(), "c1".into()),
                ("a2".into(), "b2".into()),
                ("a2".into(), "c2".into()),
            ],
        )
        .unwrap();
        assert_eq!(clique_witness(&broken).unwrap(), None);
        let inst = generate(&broken).unwrap();
        assert_eq!(inst.label, Label::Unknown);
        let trusted = generate_with(
            &broken,
            &ReductionOptions {
                trust_w_threshold: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(trusted.label, Label::No);
    }

    #[test]
    fn single_class_and_tiny_k_are_rejected() {
        let g1 = ColouredGraph::new(vec![vec!["a".into()]], vec![]).unwrap();
        assert!(matches!(generate(&g1), Err(Error::InvalidArgument(_))));
        // k = 1 cliques are still searchable.
        assert_eq!(clique_witness(&g1).unwrap().unwrap(), vec!["a".to_string()]);
    }

    #[test]
    fn k2_is_generable_and_w_is_exact() {
        // W at k=2: (2·4·H(1) - 3/2·1 - 1/32) / H(2) = (207/32)/(3/2) = 69/16.
        let g = ColouredGraph::new(
            vec![vec!["a".into()], vec!["b".into()]],
            vec![("a".into(), "b".into())],
        )
        .unwrap();
        let inst = generate(&g).unwrap();
        assert_eq!(inst.w_param, rat("69/16"));
        assert_eq!(inst.epsilon, rat("1/32"));
        assert_eq!(inst.radius, 2);
        let rerouted = clique_to_profile(&inst, &["a".to_string(), "b".into()]).unwrap();
        assert_eq!(
            potential(&inst.arena, &inst.initial) - potential(&inst.arena, &rerouted),
            rat("1/32")
        );
    }

    #[test]
    fn player_vertices_have_exactly_the_intended_routes() {
        // Paths to u:j: via bar:u, or via x:u:v for edges uv with v in class
        // j. For a1:2 (class-2 slot of a1) that is bar:a1 and x:a1:b1.
        let inst = generate(&planted_k3()).unwrap();
        let target = inst.arena.vertex_id("a1:2").unwrap();
        let paths = enumerate_paths(
            &inst.arena,
            inst.arena.root(),
            target,
            &OracleLimits::default(),
        )
        .unwrap();
        let rendered: Vec<String> = paths.iter().map(|p| inst.arena.format_path(p)).collect();
        // Lexicographic by vertex index: rp (index 1) precedes bar:a1.
        assert_eq!(
            rendered,
            vec![
                "r -> rp -> x:a1:b1 -> a1:2".to_string(),
                "r -> bar:a1 -> a1:2".to_string(),
            ]
        );
    }

    #[test]
    fn total_cost_decomposes_on_initial_profile() {
        // Sanity: with fair-share costs the total cost is the sum of used
        // arc bases: |V(H)|·R for the hubs plus free arcs.
        let inst = generate(&planted_k3()).unwrap();
        assert_eq!(total_cost(&inst.arena, &inst.initial), rat("54"));
    }
}
