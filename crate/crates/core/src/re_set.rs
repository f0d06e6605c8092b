//! Budgeted enumerators for recursively enumerable sets of naturals.
//!
//! An enumerator never claims membership it cannot demonstrate: every element
//! it emits comes with a halting run (or a decided predicate) behind it.
//! Enumeration is deterministic; the dovetailing schedule walks the Cantor
//! diagonal over `(input n, fuel 2^k)` cells, so a budget is just a prefix
//! length of that schedule.

use std::collections::BTreeSet;

use num_traits::ToPrimitive;

use crate::urm::{self, cantor_unpair, Natural, Program, RunOutcome};

/// A recursively enumerable set, described by how membership is discovered.
#[derive(Debug, Clone)]
pub enum ReSet {
    /// The halting domain of one fixed program: `{ n | program halts on n }`.
    Domain(Program),
    /// The self-halting set `{ n | decode(n) halts on input n }`.
    HaltingSet,
    /// A decidable set given by a total predicate on naturals; step `t` of
    /// the schedule tests `n = t`. The name is carried for display only.
    Explicit {
        name: &'static str,
        decide: fn(&Natural) -> bool,
    },
}

impl ReSet {
    /// Convenience constructors for the decidable fixtures used throughout
    /// the test suites and the CLI.
    pub fn evens() -> Self {
        ReSet::Explicit {
            name: "evens",
            decide: |n| (n % 2u32).to_u32() == Some(0),
        }
    }

    pub fn odds() -> Self {
        ReSet::Explicit {
            name: "odds",
            decide: |n| (n % 2u32).to_u32() == Some(1),
        }
    }

    pub fn all() -> Self {
        ReSet::Explicit {
            name: "all",
            decide: |_| true,
        }
    }

    pub fn empty() -> Self {
        ReSet::Explicit {
            name: "empty",
            decide: |_| false,
        }
    }

    /// Multiples of three. As a binary-weight set this sums to 8/7, the
    /// geometric-series fixture used by the stream tests.
    pub fn threes() -> Self {
        ReSet::Explicit {
            name: "threes",
            decide: |n| (n % 3u32).to_u32() == Some(0),
        }
    }

    /// Run one schedule cell; returns the element whose membership the cell
    /// establishes, if any.
    fn cell(&self, step: u64) -> Option<Natural> {
        match self {
            ReSet::Explicit { decide, .. } => {
                let n = Natural::from(step);
                decide(&n).then_some(n)
            }
            ReSet::Domain(program) => {
                let (n, k) = diagonal_cell(step);
                matches!(program.run(&n, fuel(k)), RunOutcome::Halted(_)).then_some(n)
            }
            ReSet::HaltingSet => {
                let (n, k) = diagonal_cell(step);
                let program = urm::decode(&n);
                matches!(program.run(&n, fuel(k)), RunOutcome::Halted(_)).then_some(n)
            }
        }
    }
}

/// Cell `step` of the Cantor diagonal over `(input, fuel exponent)`.
fn diagonal_cell(step: u64) -> (Natural, u64) {
    let (n, k) = cantor_unpair(&Natural::from(step));
    (n, k.to_u64().unwrap_or(63))
}

/// Fuel schedule `2^k`, saturating to keep the arithmetic in `u64`.
fn fuel(k: u64) -> u64 {
    1u64.checked_shl(k.min(62) as u32).unwrap_or(u64::MAX)
}

/// Stateful enumerator: repeated calls to [`Enumerator::step`] walk the
/// schedule and accumulate discovered elements.
#[derive(Debug, Clone)]
pub struct Enumerator {
    set: ReSet,
    next_step: u64,
    found: BTreeSet<Natural>,
}

impl Enumerator {
    pub fn new(set: ReSet) -> Self {
        Enumerator {
            set,
            next_step: 0,
            found: BTreeSet::new(),
        }
    }

    pub fn set(&self) -> &ReSet {
        &self.set
    }

    pub fn steps_taken(&self) -> u64 {
        self.next_step
    }

    /// Run one schedule cell. Returns the element if this cell discovered a
    /// member not seen before.
    pub fn step(&mut self) -> Option<Natural> {
        let candidate = self.set.cell(self.next_step);
        self.next_step += 1;
        match candidate {
            Some(n) if !self.found.contains(&n) => {
                self.found.insert(n.clone());
                Some(n)
            }
            _ => None,
        }
    }

    /// Elements discovered so far, in increasing order.
    pub fn discovered(&self) -> Vec<Natural> {
        self.found.iter().cloned().collect()
    }
}

/// Sorted list of all elements discovered within `budget` schedule cells.
pub fn enumerate(set: &ReSet, budget: u64) -> Vec<Natural> {
    let mut e = Enumerator::new(set.clone());
    for _ in 0..budget {
        e.step();
    }
    e.discovered()
}
