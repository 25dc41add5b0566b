//! The ring `Q = ⊕ Q_m` of `n` weighted lines glued at the origin.

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::algebra::{Matrix, Rational};
use crate::curve::check_weights;
use crate::error::Result;

/// `Q_m` has basis `x_i^{m/d_i}` for the branches with `d_i | m`;
/// `x_i x_j = 0` for `i ≠ j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QRing {
    weights: Vec<u64>,
}

impl QRing {
    pub fn new(weights: Vec<u64>) -> Result<Self> {
        check_weights(&weights)?;
        Ok(QRing { weights })
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn max_weight(&self) -> u64 {
        *self.weights.iter().max().unwrap()
    }

    /// Branches contributing to `Q_m`, in ascending order.
    pub fn branches(&self, m: u64) -> Vec<usize> {
        if m == 0 {
            return Vec::new();
        }
        (0..self.n()).filter(|&i| m.is_multiple_of(self.weights[i])).collect()
    }

    pub fn dim(&self, m: u64) -> usize {
        if m == 0 {
            1
        } else {
            self.branches(m).len()
        }
    }

    /// Exponent of `x_i` in the degree-`m` basis vector of branch `i`.
    pub fn exponent(&self, m: u64, i: usize) -> u64 {
        m / self.weights[i]
    }

    pub fn full(&self, m: u64) -> Matrix {
        Matrix::identity(self.dim(m))
    }

    /// Product of `a ∈ Q_m1` and `b ∈ Q_m2` in `Q_{m1+m2}`.
    pub fn multiply(&self, m1: u64, a: &[Rational], m2: u64, b: &[Rational]) -> Vec<Rational> {
        let target = self.branches(m1 + m2);
        let (ba, bb) = (self.branches(m1), self.branches(m2));
        target
            .iter()
            .map(|i| match (ba.iter().position(|j| j == i), bb.iter().position(|j| j == i)) {
                (Some(p), Some(q)) => &a[p] * &b[q],
                _ => Rational::zero(),
            })
            .collect()
    }

    pub fn var_name(&self, i: usize) -> String {
        if self.n() == 1 {
            "x".into()
        } else {
            format!("x{}", i + 1)
        }
    }

    /// Renders `Σ c_i x_i^{m/d_i}`.
    pub fn render(&self, m: u64, v: &[Rational]) -> String {
        let mut s = String::new();
        for (p, &i) in self.branches(m).iter().enumerate() {
            let c = &v[p];
            if c.is_zero() {
                continue;
            }
            let e = self.exponent(m, i);
            let mono = if e == 1 { self.var_name(i) } else { format!("{}^{e}", self.var_name(i)) };
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !abs.is_one() {
                s.push_str(&format!("{abs}*"));
            }
            s.push_str(&mono);
        }
        if s.is_empty() {
            "0".into()
        } else {
            s
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "weights": self.weights })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;

    #[test]
    fn dimensions_and_products() {
        let r = QRing::new(vec![2, 3]).unwrap();
        assert_eq!((1..=7).map(|m| r.dim(m)).collect::<Vec<_>>(), vec![0, 1, 1, 1, 0, 2, 0]);
        // x1^2 * x1 = x1^3 in degree 6; x2 has no partner in degree 4
        let p = r.multiply(4, &[q(1)], 2, &[q(3)]);
        assert_eq!(p, vec![q(3), q(0)]);
        assert_eq!(r.render(6, &[q(1), q(-2)]), "x1^3 - 2*x2^2");
    }

    #[test]
    fn cross_terms_vanish() {
        let r = QRing::new(vec![1, 1]).unwrap();
        assert_eq!(r.multiply(1, &[q(1), q(0)], 1, &[q(0), q(1)]), vec![q(0), q(0)]);
    }
}
