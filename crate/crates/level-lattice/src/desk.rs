//! Desk-scale resource guards.
//!
//! Enumerative routines refuse inputs whose p-power scale exceeds a bound so
//! that a typo on the command line cannot turn a sub-second computation into
//! an accidental overnight run. The bound is read from the environment on
//! every call, so a caller can raise it for one invocation without rebuilds.

use crate::LatticeError;

/// Environment variable overriding the default desk-scale bound.
pub const MAX_RANK_ENV: &str = "MODULI_MAX_RANK";

/// Default bound on p-power scales (p^n and friends).
pub const DEFAULT_MAX_RANK: u64 = 32;

/// Current bound: `MODULI_MAX_RANK` if set to a positive integer, else 32.
pub fn max_rank() -> u64 {
    match std::env::var(MAX_RANK_ENV) {
        Ok(s) => match s.trim().parse::<u64>() {
            Ok(v) if v > 0 => v,
            _ => DEFAULT_MAX_RANK,
        },
        Err(_) => DEFAULT_MAX_RANK,
    }
}

/// Fails with [`LatticeError::DeskScale`] when `value > bound`.
pub fn check_scale(what: &'static str, value: u64, bound: u64) -> Result<(), LatticeError> {
    if value > bound {
        Err(LatticeError::DeskScale { what, value, bound })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_bound_without_env() {
        // Tests must not mutate process-global env (other tests run in
        // parallel); we only assert the parse fallback logic.
        assert_eq!(DEFAULT_MAX_RANK, 32);
        assert!(check_scale("p^n", 32, max_rank().max(32)).is_ok());
        assert!(check_scale("p^n", 33, 32).is_err());
    }
}
