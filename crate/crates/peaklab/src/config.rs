//! Environment overrides: `PEAKLAB_MAX_N` (exact-mode size guard) and
//! `PEAKLAB_THREADS` (worker cap for parallel sampling).

use peaklab_core::class_dist::EXACT_MAX_N;

pub const MAX_N_VAR: &str = "PEAKLAB_MAX_N";
pub const THREADS_VAR: &str = "PEAKLAB_THREADS";

fn read_positive(var: &str) -> Result<Option<usize>, String> {
    match std::env::var(var) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(x) if x > 0 => Ok(Some(x)),
            _ => Err(format!("{var} must be a positive integer, got {v:?}")),
        },
        Err(_) => Ok(None),
    }
}

/// Exact-mode guard on `n`.
pub fn max_n() -> Result<usize, String> {
    Ok(read_positive(MAX_N_VAR)?.unwrap_or(EXACT_MAX_N))
}

/// Worker threads for sampling; defaults to the available parallelism.
pub fn threads() -> Result<usize, String> {
    Ok(read_positive(THREADS_VAR)?.unwrap_or_else(|| {
        std::thread::available_parallelism().map_or(1, |n| n.get())
    }))
}
