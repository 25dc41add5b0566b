//! Divisors supported on the marked points.

use num_traits::Zero;
use serde_json::{json, Value};

use crate::algebra::{rational_to_value, Rational};

/// `Σ c_i p_i` with rational coefficients, dense over the marked points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalDivisor {
    coeffs: Vec<Rational>,
}

impl RationalDivisor {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        RationalDivisor { coeffs }
    }

    /// `Δ = Σ (1/d_i) p_i`.
    pub fn delta(weights: &[u64]) -> Self {
        RationalDivisor {
            coeffs: weights.iter().map(|&d| Rational::new(1.into(), (d as i64).into())).collect(),
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Nonzero terms as `(point index, coefficient)`.
    pub fn terms(&self) -> Vec<(usize, Rational)> {
        self.coeffs.iter().cloned().enumerate().filter(|(_, c)| !c.is_zero()).collect()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(rational_to_value).collect())
    }
}

/// `Σ c_i p_i` with integer coefficients, dense over the marked points.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerDivisor {
    coeffs: Vec<i64>,
}

impl IntegerDivisor {
    pub fn new(coeffs: Vec<i64>) -> Self {
        IntegerDivisor { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        IntegerDivisor { coeffs: vec![0; n] }
    }

    /// `k · p_i` on a curve with `n` marked points.
    pub fn point(n: usize, i: usize, k: i64) -> Self {
        let mut coeffs = vec![0; n];
        coeffs[i] = k;
        IntegerDivisor { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs[i]
    }

    pub fn degree(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    pub fn terms(&self) -> Vec<(usize, i64)> {
        self.coeffs.iter().copied().enumerate().filter(|&(_, c)| c != 0).collect()
    }

    pub fn add(&self, o: &IntegerDivisor) -> IntegerDivisor {
        IntegerDivisor { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &IntegerDivisor) -> IntegerDivisor {
        IntegerDivisor { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() }
    }

    /// Renders as `2p1 + p2`, or `0`.
    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .terms()
            .into_iter()
            .map(|(i, c)| match c {
                1 => format!("p{}", i + 1),
                -1 => format!("-p{}", i + 1),
                c => format!("{c}p{}", i + 1),
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ").replace("+ -", "- ")
        }
    }

    pub fn to_json(&self) -> Value {
        json!(self.coeffs)
    }
}

/// `⌊mΔ⌋`, the coefficient at `p_i` being `⌊m c_i⌋`.
pub fn floor_divisor(delta: &RationalDivisor, m: u64) -> IntegerDivisor {
    IntegerDivisor {
        coeffs: delta
            .coeffs
            .iter()
            .map(|c| {
                let v = c * Rational::from_integer((m as i64).into());
                i64::try_from(v.floor().to_integer()).expect("divisor coefficient fits in i64")
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floors_for_weights_two_three() {
        let delta = RationalDivisor::delta(&[2, 3]);
        assert_eq!(floor_divisor(&delta, 4).coeffs(), &[2, 1]);
        assert_eq!(floor_divisor(&delta, 6).coeffs(), &[3, 2]);
        assert_eq!(floor_divisor(&delta, 0), IntegerDivisor::zero(2));
        assert_eq!(floor_divisor(&delta, 4).render(), "2p1 + p2");
    }
}
