//! Exact solvers for multicast cost-sharing games.
//!
//! Players in a directed network each buy a path from a shared root to their
//! own terminal; the users of an arc split its (load-dependent,
//! non-increasing) cost. The Rosenthal potential
//! `Φ(s) = Σ_e Σ_{h=1..n_e(s)} c_e(h)` turns these games into exact potential
//! games: a player's unilateral cost change equals the potential change, so
//! local minima of `Φ` under single-player moves are exactly the Nash
//! equilibria.
//!
//! This crate computes with these games *exactly* — every cost, potential,
//! and threshold is an arbitrary-precision rational; there is no floating
//! point anywhere in the core:
//!
//! - [`game`]: arenas, strategy profiles, potentials, player costs, best
//!   responses, Nash checks.
//! - [`dp`]: the global potential minimum by a budgeted subset dynamic
//!   program over `Ψ(u, X, m)`, with profile reconstruction.
//! - [`local_search`]: exact k-exchange improvement decisions (re-solving
//!   player subsets against shifted costs) and best-response dynamics.
//! - [`oracle`]: brute-force reference implementations, shipped so small
//!   instances can be cross-checked from the CLI and tests alike.
//! - [`reduction`]: a Multicoloured-Clique-based generator of local-search
//!   instances with known ground truth (the search problem is W[1]-hard in
//!   the exchange radius; these gadgets are witnesses).
//! - [`io`]: canonical JSON documents for all of the above.
//! - [`gen`]: seeded random instances for corpus tests and benchmarks.
//!
//! Determinism is a contract throughout: equal inputs produce byte-for-byte
//! equal outputs regardless of thread count or schedule. Parallelism (via
//! rayon) only ever fans out independent subproblems whose results are
//! combined in a fixed order.
//!
//! ```
//! use multicast_games::game::{potential, Arena, CostFunction, StrategyProfile};
//! use multicast_games::dp::min_potential;
//! use multicast_games::rational::Rational;
//!
//! // Two players to t; a cheap shared detour beats the split routes.
//! let fair = |n: i64| CostFunction::FairShare(Rational::from_integer(n));
//! let arena = Arena::new(
//!     vec!["r".into(), "a".into(), "b".into(), "t".into()],
//!     "r",
//!     vec![
//!         ("r".into(), "a".into(), fair(4)),
//!         ("r".into(), "b".into(), fair(6)),
//!         ("a".into(), "t".into(), fair(1)),
//!         ("b".into(), "t".into(), fair(1)),
//!     ],
//!     vec!["t".into(), "t".into()],
//! )?;
//! let (value, profile) = min_potential(&arena)?;
//! assert_eq!(value, "15/2".parse()?);
//! assert_eq!(potential(&arena, &profile), value);
//! # Ok::<(), multicast_games::error::Error>(())
//! ```

#![forbid(unsafe_code)]

pub mod dp;
pub mod error;
pub mod game;
pub mod gen;
pub mod io;
pub mod local_search;
pub mod oracle;
pub mod rational;
pub mod reduction;

pub use error::{Error, Result};
pub use game::{Arena, CostFunction, StrategyProfile};
pub use rational::Rational;
