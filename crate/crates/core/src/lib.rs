//! Model singularities of pointed curves with smoothing weights.

pub mod algebra;
pub mod error;

pub use error::{Error, Result};
pub mod param;
pub mod semigroup;
pub mod curve;
pub mod model;
pub mod family;
pub mod oracle;
pub mod corpus;

/// Caps the global worker pool at `PINCHLAB_THREADS` when it is set.
pub fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var("PINCHLAB_THREADS") else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::InvalidInput(format!("PINCHLAB_THREADS must be a positive integer, got {raw:?}")))?;
    // A pool that is already built (e.g. by an earlier call) keeps its size.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

// The book's code samples run as doc-tests of this crate.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/algebra.md")]
    mod algebra {}
    #[doc = include_str!("../../../book/src/semigroups.md")]
    mod semigroups {}
    #[doc = include_str!("../../../book/src/curves.md")]
    mod curves {}
    #[doc = include_str!("../../../book/src/model.md")]
    mod model {}
    #[doc = include_str!("../../../book/src/suspension.md")]
    mod suspension {}
    #[doc = include_str!("../../../book/src/family.md")]
    mod family {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
}
