//! Lower-bound graph families for the CONGEST model, with exact oracles and
//! executable reductions.
//!
//! The crate generates the bit-gadget based families (diameter, approximate
//! diameter, radius, vertex cover, coloring), the weighted 8-cycle,
//! identical-subgraphs and weighted-APSP star families, and checks their
//! predicates against exact reference algorithms. It also runs CONGEST
//! algorithms round by round, replays them as Alice/Bob protocols over the
//! partition cut with exact bit accounting, and turns semi-streaming
//! algorithms into two-party protocols.

pub mod graph;
pub mod bitgadget;
pub mod families;
pub mod oracles;
pub mod sim;
pub mod twoparty;
pub mod streaming;
pub mod verify;
