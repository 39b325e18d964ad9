//! On-disk cache of component pools, one JSON file per `max_period`.
//!
//! The cache directory is taken from `KNEADING_CACHE_DIR`, then from
//! `cache_dir` in the config file (`KNEADING_CONFIG`, or
//! `<config dir>/kneading/config.toml`), then from the platform cache dir.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::components::{pair_periodic_angles, ComponentPool};
use crate::error::{Error, Result};

pub const CACHE_DIR_ENV: &str = "KNEADING_CACHE_DIR";
pub const CONFIG_ENV: &str = "KNEADING_CONFIG";

#[derive(Debug, Default, Deserialize)]
pub struct Config {
    pub cache_dir: Option<PathBuf>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path)?;
        toml::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }
}

pub fn config_path() -> Option<PathBuf> {
    std::env::var_os(CONFIG_ENV)
        .map(PathBuf::from)
        .or_else(|| dirs::config_dir().map(|d| d.join("kneading").join("config.toml")))
}

pub fn cache_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os(CACHE_DIR_ENV) {
        return PathBuf::from(dir);
    }
    if let Some(path) = config_path().filter(|p| p.exists()) {
        match Config::load(&path) {
            Ok(Config { cache_dir: Some(dir) }) => return dir,
            Ok(_) => {}
            Err(e) => log::warn!("ignoring config file: {e}"),
        }
    }
    dirs::cache_dir().unwrap_or_else(std::env::temp_dir).join("kneading")
}

pub fn pool_path(dir: &Path, max_period: usize) -> PathBuf {
    dir.join(format!("pool-{max_period}.json"))
}

/// Loads the cached pool for `max_period` from `dir`, rebuilding and
/// rewriting it when missing or unreadable.
pub fn load_or_build(dir: &Path, max_period: usize) -> Result<ComponentPool> {
    let path = pool_path(dir, max_period);
    if path.exists() {
        match ComponentPool::load(&path) {
            Ok(pool) if pool.max_period() == max_period => return Ok(pool),
            Ok(_) => log::warn!("{} has the wrong max_period, rebuilding", path.display()),
            Err(e) => log::warn!("{} is corrupt ({e}), rebuilding", path.display()),
        }
    }
    let pool = pair_periodic_angles(max_period)?;
    if let Err(e) = pool.save(&path) {
        log::warn!("could not write pool cache {}: {e}", path.display());
    }
    Ok(pool)
}

/// A pool reaching at least `max_period`: from `explicit` if given,
/// otherwise from the cache.
pub fn obtain_pool(explicit: Option<&Path>, max_period: usize) -> Result<ComponentPool> {
    match explicit {
        Some(path) => {
            let pool = ComponentPool::load(path)?;
            pool.require_period(max_period)?;
            Ok(pool)
        }
        None => load_or_build(&cache_dir(), max_period),
    }
}
