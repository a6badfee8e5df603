//! Process-wide resource cap on fully materialized levels.

use std::sync::atomic::{AtomicU32, Ordering};

use crate::error::{CarpetError, Result};

/// Level 9 has about 21 million vertices.
pub const DEFAULT_MAX_LEVEL: u32 = 9;

/// Environment variable consulted by [`init_from_env`].
pub const MAX_LEVEL_ENV: &str = "CARPET_MAX_LEVEL";

static MAX_LEVEL: AtomicU32 = AtomicU32::new(DEFAULT_MAX_LEVEL);

pub fn max_level() -> u32 {
    MAX_LEVEL.load(Ordering::Relaxed)
}

pub fn set_max_level(level: u32) {
    MAX_LEVEL.store(level, Ordering::Relaxed);
}

/// Applies `CARPET_MAX_LEVEL` if set; returns the cap now in force.
pub fn init_from_env() -> Result<u32> {
    if let Ok(raw) = std::env::var(MAX_LEVEL_ENV) {
        let level: u32 = raw.trim().parse().map_err(|_| {
            CarpetError::InvalidArgument(format!("{MAX_LEVEL_ENV}={raw:?} is not a level"))
        })?;
        set_max_level(level);
    }
    Ok(max_level())
}

pub(crate) fn check_level(level: u32) -> Result<()> {
    if level == 0 {
        return Err(CarpetError::InvalidArgument("levels start at 1".into()));
    }
    let cap = max_level();
    if level > cap {
        return Err(CarpetError::ResourceLimit { level, cap });
    }
    Ok(())
}
