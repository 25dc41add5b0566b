//! General versus special position of the marked points.
//!
//! For distinct points the expected values are `h^1(p_i + p_j) = max(g - 2, 0)`
//! and `h^1(2p_i + p_j) = max(g - 3, 0)`. Any excess is reported as a witness.

use serde_json::{json, Value};

use super::rr::h_dims;
use super::{IntegerDivisor, MarkedCurve};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Position {
    General,
    Special,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositionReport {
    pub position: Position,
    pub witnesses: Vec<String>,
}

impl PositionReport {
    pub fn to_json(&self) -> Value {
        json!({
            "position": match self.position { Position::General => "general", Position::Special => "special" },
            "witnesses": self.witnesses,
        })
    }
}

pub fn classify_position(curve: &MarkedCurve) -> Result<PositionReport> {
    let g = curve.genus();
    let n = curve.n();
    let mut witnesses = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            if i < j {
                let d = IntegerDivisor::point(n, i, 1).add(&IntegerDivisor::point(n, j, 1));
                let (_, h1) = h_dims(curve, &d)?;
                if h1 > g.saturating_sub(2) {
                    witnesses.push(format!("h1(p{} + p{}) = {h1}", i + 1, j + 1));
                }
            }
            let d = IntegerDivisor::point(n, i, 2).add(&IntegerDivisor::point(n, j, 1));
            let (_, h1) = h_dims(curve, &d)?;
            if h1 > g.saturating_sub(3) {
                witnesses.push(format!("h1(2p{} + p{}) = {h1}", i + 1, j + 1));
            }
        }
    }
    let position = if witnesses.is_empty() { Position::General } else { Position::Special };
    Ok(PositionReport { position, witnesses })
}
