//! Small bound quivers shipped with the crate, used by tests, benches and
//! the command line examples.

use crate::format::load_agq;
use crate::quiver::AlmostGentlePair;

pub const FIG1: &str = include_str!("../fixtures/fig1.agq");
pub const A2: &str = include_str!("../fixtures/a2.agq");
pub const A3R: &str = include_str!("../fixtures/a3r.agq");
pub const CYC2: &str = include_str!("../fixtures/cyc2.agq");
pub const CYC2E: &str = include_str!("../fixtures/cyc2e.agq");
pub const GATE: &str = include_str!("../fixtures/gate.agq");
pub const LOOP: &str = include_str!("../fixtures/loop.agq");
pub const LOOP_NOREL: &str = include_str!("../fixtures/loop_norel.agq");

/// Every valid fixture by name.
pub const VALID: [(&str, &str); 7] =
    [("fig1", FIG1), ("a2", A2), ("a3r", A3R), ("cyc2", CYC2), ("cyc2e", CYC2E), ("gate", GATE), ("loop", LOOP)];

fn load(text: &str) -> AlmostGentlePair {
    load_agq(text).expect("shipped fixture is valid")
}

pub fn fig1() -> AlmostGentlePair {
    load(FIG1)
}

pub fn a2() -> AlmostGentlePair {
    load(A2)
}

pub fn a3r() -> AlmostGentlePair {
    load(A3R)
}

pub fn cyc2() -> AlmostGentlePair {
    load(CYC2)
}

pub fn cyc2e() -> AlmostGentlePair {
    load(CYC2E)
}

pub fn gate() -> AlmostGentlePair {
    load(GATE)
}

pub fn loop_() -> AlmostGentlePair {
    load(LOOP)
}
