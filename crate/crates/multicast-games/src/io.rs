//! JSON documents for arenas, profiles, coloured graphs, and reduction
//! metadata.
//!
//! All numbers that are game data travel as canonical rational strings
//! (`"p"` or `"p/q"`, lowest terms, denominator positive) — never as floats.
//! Serialization is canonical: keys sorted, two-space indentation, trailing
//! newline; byte-for-byte reproducible for equal inputs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{Arena, CostFunction, StrategyProfile};
use crate::rational::Rational;
use crate::reduction::{ColouredGraph, GeneratedInstance};

/// On-disk form of an [`Arena`].
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArenaDocument {
    pub vertices: Vec<String>,
    pub root: String,
    pub arcs: Vec<ArcDocument>,
    /// Terminal vertex per player, index-aligned with profiles.
    pub players: Vec<String>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcDocument {
    pub from: String,
    pub to: String,
    pub cost: CostDocument,
}

/// `{"fair_share": "p/q"}` or `{"table": ["p/q", ...]}`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
pub enum CostDocument {
    FairShare(String),
    Table(Vec<String>),
}

/// On-disk form of a [`StrategyProfile`]: one vertex-name sequence per
/// player, index-aligned with the arena's players.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileDocument {
    pub paths: Vec<Vec<String>>,
}

/// On-disk form of a [`ColouredGraph`].
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColouredGraphDocument {
    pub classes: Vec<Vec<String>>,
    pub edges: Vec<[String; 2]>,
}

/// Sidecar metadata of a generated reduction instance.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReductionMetaDocument {
    pub k: usize,
    pub players: usize,
    pub radius: usize,
    pub r: String,
    pub w: String,
    pub epsilon: String,
    pub potential_initial: String,
    /// "yes" | "no" | "unknown".
    pub label: String,
    pub witness: Option<Vec<String>>,
}

/// Everything `gen-reduction` produces, as one document.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReductionBundleDocument {
    pub arena: ArenaDocument,
    pub initial_profile: ProfileDocument,
    pub meta: ReductionMetaDocument,
}

fn parse_rational(text: &str, context: &str) -> Result<Rational> {
    text.parse()
        .map_err(|e: Error| Error::Parse(format!("{context}: {e}")))
}

fn syntax_error(e: serde_json::Error) -> Error {
    // serde_json's message already carries "at line L column C".
    Error::Parse(e.to_string())
}

/// Canonical JSON: route through `serde_json::Value` so map keys come out
/// sorted, pretty-print with two spaces, end with a newline.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("documents serialize infallibly");
    let mut s = serde_json::to_string_pretty(&v).expect("values print infallibly");
    s.push('\n');
    s
}

pub fn arena_document(arena: &Arena) -> ArenaDocument {
    ArenaDocument {
        vertices: arena.vertex_names().to_vec(),
        root: arena.vertex_name(arena.root()).to_string(),
        arcs: arena
            .arcs()
            .iter()
            .map(|arc| ArcDocument {
                from: arena.vertex_name(arc.from()).to_string(),
                to: arena.vertex_name(arc.to()).to_string(),
                cost: match arc.cost_function() {
                    CostFunction::FairShare(base) => CostDocument::FairShare(base.to_string()),
                    CostFunction::Table(values) => {
                        CostDocument::Table(values.iter().map(|v| v.to_string()).collect())
                    }
                },
            })
            .collect(),
        players: arena
            .terminals()
            .iter()
            .map(|&t| arena.vertex_name(t).to_string())
            .collect(),
    }
}

pub fn arena_from_document(doc: &ArenaDocument) -> Result<Arena> {
    let mut arcs = Vec::with_capacity(doc.arcs.len());
    for (i, arc) in doc.arcs.iter().enumerate() {
        let cost = match &arc.cost {
            CostDocument::FairShare(text) => CostFunction::FairShare(parse_rational(
                text,
                &format!("arc {i} ({} -> {}) fair_share", arc.from, arc.to),
            )?),
            CostDocument::Table(texts) => {
                let mut values = Vec::with_capacity(texts.len());
                for (j, text) in texts.iter().enumerate() {
                    values.push(parse_rational(
                        text,
                        &format!("arc {i} ({} -> {}) table[{j}]", arc.from, arc.to),
                    )?);
                }
                CostFunction::Table(values)
            }
        };
        arcs.push((arc.from.clone(), arc.to.clone(), cost));
    }
    Arena::new(doc.vertices.clone(), &doc.root, arcs, doc.players.clone())
}

pub fn parse_arena(text: &str) -> Result<Arena> {
    let doc: ArenaDocument = serde_json::from_str(text).map_err(syntax_error)?;
    arena_from_document(&doc)
}

pub fn serialize_arena(arena: &Arena) -> String {
    canonical_json(&arena_document(arena))
}

pub fn profile_document(arena: &Arena, s: &StrategyProfile) -> ProfileDocument {
    ProfileDocument {
        paths: s
            .paths()
            .iter()
            .map(|p| {
                p.iter()
                    .map(|&v| arena.vertex_name(v).to_string())
                    .collect()
            })
            .collect(),
    }
}

pub fn parse_profile(text: &str, arena: &Arena) -> Result<StrategyProfile> {
    let doc: ProfileDocument = serde_json::from_str(text).map_err(syntax_error)?;
    StrategyProfile::from_names(arena, &doc.paths)
}

pub fn serialize_profile(arena: &Arena, s: &StrategyProfile) -> String {
    canonical_json(&profile_document(arena, s))
}

pub fn coloured_graph_document(graph: &ColouredGraph) -> ColouredGraphDocument {
    ColouredGraphDocument {
        classes: graph.classes().to_vec(),
        edges: graph
            .edges()
            .iter()
            .map(|(a, b)| [a.clone(), b.clone()])
            .collect(),
    }
}

pub fn parse_coloured_graph(text: &str) -> Result<ColouredGraph> {
    let doc: ColouredGraphDocument = serde_json::from_str(text).map_err(syntax_error)?;
    ColouredGraph::new(
        doc.classes,
        doc.edges.into_iter().map(|[a, b]| (a, b)).collect(),
    )
}

pub fn serialize_coloured_graph(graph: &ColouredGraph) -> String {
    canonical_json(&coloured_graph_document(graph))
}

pub fn reduction_meta_document(inst: &GeneratedInstance) -> ReductionMetaDocument {
    ReductionMetaDocument {
        k: inst.k,
        players: inst.arena.num_players(),
        radius: inst.radius,
        r: inst.r_param.to_string(),
        w: inst.w_param.to_string(),
        epsilon: inst.epsilon.to_string(),
        potential_initial: crate::game::potential(&inst.arena, &inst.initial).to_string(),
        label: inst.label.as_str().to_string(),
        witness: inst.witness.clone(),
    }
}

pub fn reduction_bundle_document(inst: &GeneratedInstance) -> ReductionBundleDocument {
    ReductionBundleDocument {
        arena: arena_document(&inst.arena),
        initial_profile: profile_document(&inst.arena, &inst.initial),
        meta: reduction_meta_document(inst),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::potential;
    use crate::reduction::generate;

    const INSTANCE_A: &str = r#"{
        "vertices": ["r", "a", "b", "t"],
        "root": "r",
        "arcs": [
            {"from": "r", "to": "a", "cost": {"fair_share": "4"}},
            {"from": "r", "to": "b", "cost": {"fair_share": "6"}},
            {"from": "a", "to": "t", "cost": {"fair_share": "1"}},
            {"from": "b", "to": "t", "cost": {"fair_share": "1"}}
        ],
        "players": ["t", "t"]
    }"#;

    #[test]
    fn arena_round_trip() {
        let arena = parse_arena(INSTANCE_A).unwrap();
        assert_eq!(arena.num_vertices(), 4);
        assert_eq!(arena.num_players(), 2);
        let text = serialize_arena(&arena);
        let again = parse_arena(&text).unwrap();
        assert_eq!(serialize_arena(&again), text);
        assert!(text.ends_with('\n'));
    }

    #[test]
    fn profile_round_trip_and_eval() {
        let arena = parse_arena(INSTANCE_A).unwrap();
        let s = parse_profile(r#"{"paths": [["r", "a", "t"], ["r", "a", "t"]]}"#, &arena).unwrap();
        assert_eq!(potential(&arena, &s), "15/2".parse().unwrap());
        let text = serialize_profile(&arena, &s);
        let again = parse_profile(&text, &arena).unwrap();
        assert_eq!(again, s);
    }

    #[test]
    fn rational_strings_parse_exactly() {
        let arena = parse_arena(
            r#"{
                "vertices": ["r", "t"],
                "root": "r",
                "arcs": [{"from": "r", "to": "t", "cost": {"table": ["3/2", "1/2"]}}],
                "players": ["t", "t"]
            }"#,
        )
        .unwrap();
        assert_eq!(arena.arc_cost(0, 1).unwrap(), "3/2".parse().unwrap());
        assert_eq!(arena.arc_cost(0, 2).unwrap(), "1/2".parse().unwrap());
    }

    #[test]
    fn unknown_fields_rejected() {
        let bad = r#"{
            "vertices": ["r", "t"],
            "root": "r",
            "arcs": [],
            "players": [],
            "extra": 1
        }"#;
        let err = parse_arena(bad).unwrap_err();
        assert!(matches!(err, Error::Parse(_)), "{err}");
        assert!(err.to_string().contains("extra"), "{err}");
    }

    #[test]
    fn syntax_errors_carry_location() {
        let err = parse_arena("{\n  \"vertices\": [,]\n}").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 2"), "{msg}");
    }

    #[test]
    fn short_table_is_a_validation_error() {
        // Table [4, 2] with 3 players: not enough values.
        let bad = r#"{
            "vertices": ["r", "t"],
            "root": "r",
            "arcs": [{"from": "r", "to": "t", "cost": {"table": ["4", "2"]}}],
            "players": ["t", "t", "t"]
        }"#;
        let err = parse_arena(bad).unwrap_err();
        assert!(matches!(err, Error::Validation(_)), "{err}");
    }

    #[test]
    fn float_costs_are_rejected() {
        let bad = r#"{
            "vertices": ["r", "t"],
            "root": "r",
            "arcs": [{"from": "r", "to": "t", "cost": {"fair_share": "1.5"}}],
            "players": ["t"]
        }"#;
        let err = parse_arena(bad).unwrap_err();
        assert!(matches!(err, Error::Parse(_)), "{err}");
    }

    #[test]
    fn canonical_output_sorts_keys() {
        let arena = parse_arena(INSTANCE_A).unwrap();
        let text = serialize_arena(&arena);
        let arcs_pos = text.find("\"arcs\"").unwrap();
        let players_pos = text.find("\"players\"").unwrap();
        let root_pos = text.find("\"root\"").unwrap();
        let vertices_pos = text.find("\"vertices\"").unwrap();
        assert!(arcs_pos < players_pos && players_pos < root_pos && root_pos < vertices_pos);
    }

    #[test]
    fn coloured_graph_round_trip() {
        let text = r#"{
            "classes": [["a1", "a2"], ["b1", "b2"]],
            "edges": [["a1", "b1"], ["a2", "b2"]]
        }"#;
        let g = parse_coloured_graph(text).unwrap();
        assert_eq!(g.num_classes(), 2);
        let canon = serialize_coloured_graph(&g);
        let again = parse_coloured_graph(&canon).unwrap();
        assert_eq!(serialize_coloured_graph(&again), canon);
    }

    #[test]
    fn reduction_bundle_serializes_and_reloads() {
        let g = parse_coloured_graph(
            r#"{
                "classes": [["a"], ["b"]],
                "edges": [["a", "b"]]
            }"#,
        )
        .unwrap();
        let inst = generate(&g).unwrap();
        let bundle = reduction_bundle_document(&inst);
        let text = canonical_json(&bundle);
        let parsed: ReductionBundleDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed, bundle);
        // The embedded arena and profile reload into working objects.
        let arena = arena_from_document(&parsed.arena).unwrap();
        let profile = StrategyProfile::from_names(&arena, &parsed.initial_profile.paths).unwrap();
        assert_eq!(
            potential(&arena, &profile).to_string(),
            parsed.meta.potential_initial
        );
        assert_eq!(parsed.meta.label, "yes");
    }
}
