//! Build a hard local-search instance from a vertex-coloured graph. The
//! construction encodes "does the graph contain a multicoloured clique?"
//! into "does this Nash profile admit an improving move within radius
//! k(k-1)?" — the gadget behind the W[1]-hardness of exploring large
//! k-exchange neighborhoods.
//!
//! Run with: `cargo run --example hardness_instance`

use multicast_games::game::{hamming_distance, is_nash, potential};
use multicast_games::local_search::improving_move;
use multicast_games::reduction::{clique_to_profile, generate, ColouredGraph, Label};
use multicast_games::Result;

fn main() -> Result<()> {
    // Three colour classes of two vertices each. The only multicoloured
    // clique is {a1, b1, c1}; the a2/b2/c2 triangle is missing an edge.
    let graph = ColouredGraph::new(
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
    )?;

    let inst = generate(&graph)?;
    println!(
        "reduction from a {}-class coloured graph:",
        graph.num_classes()
    );
    println!("  players          {}", inst.arena.num_players());
    println!("  vertices         {}", inst.arena.num_vertices());
    println!("  hub price R      {}", inst.r_param);
    println!("  threshold W      {}", inst.w_param);
    println!("  epsilon          {}", inst.epsilon);
    println!("  query radius     {}", inst.radius);
    println!("  label            {}", inst.label.as_str());

    // The initial profile is Nash — no single player wants to move — and
    // its potential is a fixed, instance-independent function of k.
    let phi0 = potential(&inst.arena, &inst.initial);
    println!(
        "  initial profile  potential {phi0}, Nash: {}",
        is_nash(&inst.arena, &inst.initial).0
    );
    assert!(is_nash(&inst.arena, &inst.initial).0);
    assert_eq!(inst.label, Label::Yes);

    // The clique certificate converts into an improving joint reroute:
    // one player per ordered clique pair switches to the threshold arc,
    // and the potential drops by exactly epsilon.
    let clique = inst.witness.clone().expect("label yes carries a witness");
    let rerouted = clique_to_profile(&inst, &clique)?;
    let phi1 = potential(&inst.arena, &rerouted);
    let moved = hamming_distance(&inst.initial, &rerouted)?;
    println!("\nclique {clique:?} converts into a reroute of {moved} players:");
    println!("  potential        {phi0} -> {phi1}");
    assert_eq!(&phi0 - &phi1, inst.epsilon);
    assert_eq!(moved, inst.radius);

    // And the radius-k(k-1) exchange search finds a move of the same
    // value, so the local-search question answers the clique question.
    let found = improving_move(&inst.arena, &inst.initial, inst.radius)?
        .expect("a clique exists, so a move within the radius exists");
    println!(
        "  radius-{} search  potential {} (improving move found)",
        inst.radius,
        potential(&inst.arena, &found)
    );
    assert_eq!(potential(&inst.arena, &found), phi1);
    Ok(())
}
