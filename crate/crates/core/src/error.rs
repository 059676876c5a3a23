use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{what} = {value} exceeds the configured limit {limit}")]
    SizeLimit {
        what: &'static str,
        value: u64,
        limit: u64,
    },
    #[error("derivative order {0} is not supported (expected 0..=4)")]
    UnsupportedOrder(u32),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error("insufficient samples: {have} observations, at least {need} required")]
    InsufficientSamples { have: u64, need: u64 },
    #[error("precision error: {0}")]
    Precision(String),
    #[error("invalid cycle type: {0}")]
    InvalidCycleType(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

pub(crate) fn check_limit(what: &'static str, value: u64, limit: u64) -> Result<()> {
    if value > limit {
        Err(Error::SizeLimit { what, value, limit })
    } else {
        Ok(())
    }
}
