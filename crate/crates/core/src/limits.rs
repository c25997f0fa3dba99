//! Size caps for enumeration and dense exact matrices.

use crate::error::{Error, Result};

/// Environment variable that raises (or lowers) every state-count cap.
pub const MAX_STATES_ENV: &str = "MOEBIUS_DUAL_MAX_STATES";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest ground set for an (implicit) subset lattice.
    pub subset_n: usize,
    /// Largest ground set for a partition lattice.
    pub partition_n: usize,
    /// Largest poset that is materialized with an explicit order relation.
    pub poset_states: usize,
    /// Largest dimension of a dense rational matrix.
    pub dense_states: usize,
    /// Largest multi-allelic state space, `(T+1)^N`.
    pub multiallelic_states: usize,
    /// Posets up to this size have their order axioms verified on build.
    pub verify_states: usize,
    pub wright_fisher_n: usize,
    pub moran_n: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            subset_n: 20,
            partition_n: 8,
            poset_states: 4140,
            dense_states: 1024,
            multiallelic_states: 4096,
            verify_states: 512,
            wright_fisher_n: 6,
            moran_n: 8,
        }
    }
}

impl Limits {
    /// Defaults, with every state cap replaced by `MOEBIUS_DUAL_MAX_STATES`
    /// when that variable is set to a positive integer.
    pub fn from_env() -> Result<Self> {
        let mut limits = Self::default();
        if let Ok(v) = std::env::var(MAX_STATES_ENV) {
            let cap: usize = v
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("{MAX_STATES_ENV}={v:?} is not a count")))?;
            limits = limits.with_state_cap(cap);
        }
        Ok(limits)
    }

    pub fn with_state_cap(mut self, cap: usize) -> Self {
        self.poset_states = cap;
        self.dense_states = cap;
        self.multiallelic_states = cap;
        self
    }

    pub fn check(&self, what: &'static str, requested: usize, cap: usize) -> Result<()> {
        if requested > cap {
            return Err(Error::SizeOverflow {
                what,
                requested,
                cap,
            });
        }
        Ok(())
    }

    pub fn check_dense(&self, what: &'static str, n: usize) -> Result<()> {
        self.check(what, n, self.dense_states)
    }
}
