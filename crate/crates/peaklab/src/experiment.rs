//! Parallel sampling experiments whose results do not depend on the number of
//! worker threads.

use rayon::prelude::*;

use peaklab_core::sampling::{run_experiment, SampleStats, SeedSpec};
use peaklab_core::{CycleType, Result};

/// Draws per chunk; chunk `c` uses stream `c` of the seed.
pub const CHUNK_SIZE: u64 = 10_000;

/// `num_samples` draws from `C_λ` split into fixed chunks and merged in
/// chunk order.
pub fn sample_parallel(
    lambda: &CycleType,
    num_samples: u64,
    seed: u64,
    threads: usize,
) -> Result<SampleStats> {
    let chunks = num_samples.div_ceil(CHUNK_SIZE);
    let job = || -> Result<SampleStats> {
        let parts: Vec<SampleStats> = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let len = CHUNK_SIZE.min(num_samples - c * CHUNK_SIZE);
                run_experiment(lambda, len, SeedSpec::new(seed, c))
            })
            .collect::<Result<_>>()?;
        let mut out = SampleStats::new();
        for p in &parts {
            out.merge(p);
        }
        Ok(out)
    };
    match rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build() {
        Ok(pool) => pool.install(job),
        Err(_) => job(),
    }
}
