//! Resource caps shared by the searches.

use crate::error::{Error, Result};

pub const DEFAULT_MAX_STEPS: u64 = 10_000_000;
pub const DEFAULT_CYCLIC_ORDER_CAP: usize = 1_000_000;
pub const DEFAULT_CAYLEY_ORDER_CAP: usize = 4_096;
pub const DEFAULT_ENUMERATION_CAP: u128 = 1_000_000;

/// Configurable limits. `max_steps` bounds every exhaustive scan and
/// every automorphism search separately.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub max_steps: u64,
    pub cyclic_order: usize,
    pub cayley_order: usize,
    pub enumeration: u128,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_steps: DEFAULT_MAX_STEPS,
            cyclic_order: DEFAULT_CYCLIC_ORDER_CAP,
            cayley_order: DEFAULT_CAYLEY_ORDER_CAP,
            enumeration: DEFAULT_ENUMERATION_CAP,
        }
    }
}

impl Caps {
    pub fn with_max_steps(max_steps: u64) -> Self {
        Caps {
            max_steps,
            ..Caps::default()
        }
    }

    pub fn budget(&self) -> Budget {
        Budget::new(self.max_steps)
    }
}

/// Step counter that errors instead of truncating.
#[derive(Debug, Clone)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    #[inline]
    pub fn step(&mut self) -> Result<()> {
        self.charge(1)
    }

    #[inline]
    pub fn charge(&mut self, n: u64) -> Result<()> {
        self.used = self.used.saturating_add(n);
        if self.used > self.limit {
            Err(Error::SearchBudgetExceeded(self.limit))
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}
