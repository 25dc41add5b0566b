//! Truncated Laurent and power series with pessimistic precision tracking.
//!
//! A [`Laurent`] value stands for `Σ c_k z^(start+k) + O(z^prec)` with
//! `prec = start + coeffs.len()`. Arithmetic never invents coefficients: the
//! precision of every result is the best bound implied by the operands, so a
//! caller that reads a coefficient at or beyond `prec` gets `None`.

use num_traits::{One, Zero};

use super::poly::{BiPoly, UPoly};
use super::rational::Rational;

/// Precision used for values that are exact (polynomials, constants).
pub const EXACT: i64 = i64::MAX / 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent {
    start: i64,
    coeffs: Vec<Rational>,
    prec: i64,
}

impl Laurent {
    /// Series with coefficients from `start`, known up to `start + coeffs.len()`.
    pub fn new(start: i64, coeffs: Vec<Rational>) -> Self {
        let prec = start + coeffs.len() as i64;
        Laurent { start, coeffs, prec }
    }

    /// Series with explicit precision; coefficients past the vector are zero.
    pub fn with_prec(start: i64, mut coeffs: Vec<Rational>, prec: i64) -> Self {
        let keep = (prec - start).max(0) as usize;
        coeffs.truncate(keep);
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Laurent { start: start.min(prec), coeffs, prec }
    }

    /// `c z^e` known to absolute precision `prec`.
    pub fn monomial(c: Rational, e: i64, prec: i64) -> Self {
        Laurent::with_prec(e, vec![c], prec)
    }

    pub fn constant(c: Rational, prec: i64) -> Self {
        Self::monomial(c, 0, prec)
    }

    pub fn exact_constant(c: Rational) -> Self {
        Self::monomial(c, 0, EXACT)
    }

    /// The uniformizer `z` itself.
    pub fn var(prec: i64) -> Self {
        Self::monomial(Rational::one(), 1, prec)
    }

    /// Exact power series of a polynomial.
    pub fn from_poly(p: &UPoly) -> Self {
        Laurent::with_prec(0, p.coeffs().to_vec(), EXACT)
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    /// Absolute precision: coefficients below this exponent are exact.
    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec >= EXACT / 2
    }

    /// Coefficient of `z^e`, or `None` if `e` is beyond the known precision.
    pub fn coeff(&self, e: i64) -> Option<Rational> {
        if e >= self.prec {
            None
        } else if e < self.start {
            Some(Rational::zero())
        } else {
            Some(self.coeffs.get((e - self.start) as usize).cloned().unwrap_or_else(Rational::zero))
        }
    }

    /// Exponent of the first nonzero coefficient, if one is known.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.iter().position(|c| !c.is_zero()).map(|i| self.start + i as i64)
    }

    /// Lower bound on the valuation (the precision when no nonzero term is known).
    fn val_bound(&self) -> i64 {
        self.valuation().unwrap_or(self.prec)
    }

    /// Last exponent that may hold a stored nonzero coefficient, plus one.
    fn support_end(&self) -> i64 {
        if self.coeffs.is_empty() {
            i64::MIN / 4
        } else {
            self.start + self.coeffs.len() as i64
        }
    }

    pub fn leading(&self) -> Option<(i64, Rational)> {
        let v = self.valuation()?;
        Some((v, self.coeff(v).unwrap()))
    }

    pub fn truncate(&self, prec: i64) -> Laurent {
        Laurent::with_prec(self.start, self.coeffs.clone(), prec.min(self.prec))
    }

    fn dense(&self, lo: i64, hi: i64) -> Vec<Rational> {
        (lo..hi).map(|e| self.coeff(e).unwrap_or_else(Rational::zero)).collect()
    }

    pub fn add(&self, o: &Laurent) -> Laurent {
        let lo = self.start.min(o.start);
        let prec = self.prec.min(o.prec);
        let hi = prec.min(self.support_end().max(o.support_end()));
        if hi <= lo {
            return Laurent::with_prec(prec, Vec::new(), prec);
        }
        let a = self.dense(lo, hi);
        let b = o.dense(lo, hi);
        Laurent::with_prec(lo, a.into_iter().zip(b).map(|(x, y)| x + y).collect(), prec)
    }

    pub fn neg(&self) -> Laurent {
        Laurent { start: self.start, coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(), prec: self.prec }
    }

    pub fn sub(&self, o: &Laurent) -> Laurent {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Rational) -> Laurent {
        Laurent::with_prec(self.start, self.coeffs.iter().map(|x| x * c).collect(), self.prec)
    }

    /// Multiplication by `z^k`.
    pub fn shift(&self, k: i64) -> Laurent {
        Laurent { start: self.start + k, coeffs: self.coeffs.clone(), prec: self.prec.saturating_add(k) }
    }

    pub fn mul(&self, o: &Laurent) -> Laurent {
        let va = self.val_bound();
        let vb = o.val_bound();
        let prec = (self.prec + vb).min(o.prec + va).min(EXACT);
        let start = va + vb;
        if prec <= start {
            return Laurent::with_prec(prec, Vec::new(), prec);
        }
        let hi = prec.min(self.support_end() + o.support_end() - 1);
        if hi <= start {
            return Laurent::with_prec(start, Vec::new(), prec);
        }
        let n = (hi - start) as usize;
        let a = self.dense(va, va + n as i64);
        let b = o.dense(vb, vb + n as i64);
        let mut out = vec![Rational::zero(); n];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().take(n - i).enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        Laurent::with_prec(start, out, prec)
    }

    /// Multiplicative inverse to relative precision `rel_cap` when the input is exact.
    pub fn inv_rel(&self, rel_cap: i64) -> Option<Laurent> {
        let v = self.valuation()?;
        let rel = (self.prec - v).min(rel_cap.max(1)) as usize;
        let a = self.dense(v, v + rel as i64);
        let a0inv = a[0].recip();
        let mut b = vec![Rational::zero(); rel];
        b[0] = a0inv.clone();
        for k in 1..rel {
            let mut s = Rational::zero();
            for i in 1..=k {
                if !a[i].is_zero() {
                    s += &a[i] * &b[k - i];
                }
            }
            b[k] = -s * &a0inv;
        }
        Some(Laurent::with_prec(-v, b, -v + rel as i64))
    }

    /// Multiplicative inverse; `None` when no nonzero coefficient is known.
    /// Inverting a non-monomial exact value needs [`Laurent::inv_rel`].
    pub fn inv(&self) -> Option<Laurent> {
        let v = self.valuation()?;
        if self.is_exact() && self.coeffs.iter().filter(|c| !c.is_zero()).count() == 1 {
            let c = self.coeff(v).unwrap();
            return Some(Laurent::monomial(c.recip(), -v, EXACT));
        }
        assert!(!self.is_exact(), "inverse of an exact non-monomial series needs a precision cap");
        self.inv_rel(EXACT)
    }

    pub fn div(&self, o: &Laurent) -> Option<Laurent> {
        Some(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i64) -> Option<Laurent> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Laurent::exact_constant(Rational::one());
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Some(acc)
    }

    /// Formal derivative `d/dz`.
    pub fn derivative(&self) -> Laurent {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * Rational::from_integer((self.start + i as i64).into()))
            .collect::<Vec<_>>();
        Laurent::with_prec(self.start - 1, coeffs, self.prec.saturating_sub(1))
    }

    /// Evaluates a univariate polynomial at this series.
    pub fn compose_poly(&self, p: &UPoly) -> Laurent {
        let mut acc = Laurent::exact_constant(Rational::zero());
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).add(&Laurent::exact_constant(c.clone()));
        }
        acc
    }

    /// Dense coefficient window `[lo, hi)`; `None` if the window exceeds precision.
    pub fn window(&self, lo: i64, hi: i64) -> Option<Vec<Rational>> {
        (hi <= self.prec).then(|| self.dense(lo, hi))
    }

    pub fn is_known_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

/// Evaluates `p(x, y)` at two series.
pub fn eval_bipoly(p: &BiPoly, x: &Laurent, y: &Laurent) -> Laurent {
    let by_y = p.by_y_power();
    let mut acc = Laurent::exact_constant(Rational::zero());
    for coeff in by_y.iter().rev() {
        acc = acc.mul(y).add(&x.compose_poly(coeff));
    }
    acc
}

/// A power series `Σ_{k=0}^{N} c_k z^k` known modulo `z^(N+1)`, tagged with
/// the name of its local coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    pub coefficients: Vec<Rational>,
    pub truncation_order: usize,
    pub variable_tag: String,
}

impl TruncatedSeries {
    pub fn from_laurent(l: &Laurent, order: usize, tag: impl Into<String>) -> Option<Self> {
        Some(TruncatedSeries {
            coefficients: l.window(0, order as i64 + 1)?,
            truncation_order: order,
            variable_tag: tag.into(),
        })
    }

    pub fn to_laurent(&self) -> Laurent {
        Laurent::new(0, self.coefficients.clone())
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coefficients.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn mul(&self, o: &TruncatedSeries) -> TruncatedSeries {
        let order = self.truncation_order.min(o.truncation_order);
        let l = self.to_laurent().mul(&o.to_laurent()).truncate(order as i64 + 1);
        TruncatedSeries {
            coefficients: l.window(0, order as i64 + 1).expect("precision"),
            truncation_order: order,
            variable_tag: self.variable_tag.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{frac, q};

    #[test]
    fn geometric_inverse() {
        // 1/(1 - z) = 1 + z + z^2 + ...
        let s = Laurent::new(0, vec![q(1), q(-1), q(0), q(0), q(0)]);
        let inv = s.inv().unwrap();
        assert_eq!(inv.window(0, 5).unwrap(), vec![q(1); 5]);
    }

    #[test]
    fn precision_of_product_is_pessimistic() {
        // (z^-2 + O(z^3)) * (1 + O(z^4)) is known to O(z^2)
        let a = Laurent::new(-2, vec![q(1), q(0), q(0), q(0), q(0)]);
        let b = Laurent::new(0, vec![q(1), q(0), q(0), q(0)]);
        let c = a.mul(&b);
        assert_eq!(c.prec(), 2);
        assert_eq!(c.coeff(-2), Some(q(1)));
        assert_eq!(c.coeff(2), None);
    }

    #[test]
    fn inverse_of_pole() {
        let a = Laurent::new(-2, vec![q(2), q(0), q(1), q(0)]);
        let inv = a.inv().unwrap();
        assert!(Laurent::from_poly(&UPoly::new(vec![q(1), q(1)])).inv_rel(3).is_some());
        assert_eq!(inv.start(), 2);
        assert_eq!(inv.coeff(2), Some(frac(1, 2)));
        assert_eq!(inv.coeff(4), Some(frac(-1, 4)));
        assert_eq!(inv.prec(), 6);
    }
}
