//! The JSON document layer: generate a random instance, serialize it
//! canonically, and show that parsing is exact and strict — rationals
//! survive round-trips digit for digit, and malformed input is rejected
//! with a useful message instead of being silently patched up.
//!
//! Run with: `cargo run --example documents`

use multicast_games::gen::{random_arena, random_profile, rng_from_seed, ArenaConfig};
use multicast_games::io::{parse_arena, parse_profile, serialize_arena, serialize_profile};
use multicast_games::Result;

fn main() -> Result<()> {
    // Seeded generation is reproducible: the same seed always yields the
    // same arena, byte for byte.
    let mut rng = rng_from_seed(2024);
    let arena = random_arena(&mut rng, &ArenaConfig::small_mixed());
    let profile = random_profile(&mut rng, &arena)?;

    let arena_text = serialize_arena(&arena);
    let profile_text = serialize_profile(&arena, &profile);
    println!("generated arena document:\n{arena_text}");
    println!("one strategy profile for it:\n{profile_text}");

    // Round-trip: parse what we printed and serialize again. Canonical
    // form (sorted keys, fixed indentation, trailing newline) makes the
    // comparison a plain byte equality.
    let reparsed = parse_arena(&arena_text)?;
    assert_eq!(serialize_arena(&reparsed), arena_text);
    let reprofiled = parse_profile(&profile_text, &reparsed)?;
    assert_eq!(reprofiled, profile);
    println!("round-trip: byte-identical");

    // Strictness: misspelled or extra fields are errors, not warnings —
    // a config typo should never silently change the game being solved.
    let bad = r#"{"vertices": ["r", "t"], "root": "r", "arcs": [], "players": [], "playrs": []}"#;
    match parse_arena(bad) {
        Err(e) => println!("rejected misspelled field: {e}"),
        Ok(_) => unreachable!("unknown fields must be rejected"),
    }

    // Costs are exact rationals written as strings. Floats are rejected:
    // there is no rounding anywhere in the pipeline.
    let float = r#"{
        "vertices": ["r", "t"], "root": "r",
        "arcs": [{"from": "r", "to": "t", "cost": {"fair_share": 1.5}}],
        "players": ["t"]
    }"#;
    match parse_arena(float) {
        Err(e) => println!("rejected float cost:        {e}"),
        Ok(_) => unreachable!("float costs must be rejected"),
    }
    Ok(())
}
