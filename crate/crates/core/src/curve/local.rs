//! Places and local expansions in the backend's canonical uniformizer.

use crate::algebra::{Laurent, Rational};

/// A rational place of the curve model. For plane quartics the affine
/// coordinates are those of the working chart.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    Affine(Rational, Rational),
    /// Point at infinity; the sign picks the branch of `y` when there are two.
    Infinity(i8),
}

/// Coordinate functions and canonical 1-forms `ω_k/dz` near a place.
#[derive(Clone, Debug)]
pub struct LocalExpansion {
    pub x: Laurent,
    pub y: Laurent,
    pub forms: Vec<Laurent>,
    pub uniformizer: String,
}

/// Retries `f` with doubling precision until it produces a value.
pub(crate) fn with_precision<T>(start: i64, mut f: impl FnMut(i64) -> crate::Result<Option<T>>) -> crate::Result<T> {
    let mut p = start.max(4);
    loop {
        if let Some(v) = f(p)? {
            return Ok(v);
        }
        p *= 2;
        if p > 1 << 14 {
            return Err(crate::Error::Consistency("series precision requirement did not converge".into()));
        }
    }
}
