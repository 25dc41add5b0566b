//! Univariate, bivariate and ternary-homogeneous polynomials over Q.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::rational::Rational;

/// Dense univariate polynomial, coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UPoly {
    coeffs: Vec<Rational>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `x - a`
    pub fn linear_root(a: &Rational) -> Self {
        Self::new(vec![-a.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer((i as i64).into()))
                .collect(),
        )
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }

    pub fn scale(&self, c: &Rational) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> UPoly {
        let mut acc = UPoly::constant(Rational::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division; panics on division by zero.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() / &lead;
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (UPoly::new(quot), UPoly::new(rem))
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let l = a.leading();
        a.scale(&l.recip())
    }

    /// True when the polynomial has no repeated root over an algebraic closure.
    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(Vec<u32>, Rational)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (vec![i as u32], c.clone()))
            .collect();
        write!(f, "{}", render_terms(&terms, &["x"]))
    }
}

/// Sparse polynomial in two variables `x`, `y`; keys are `(deg_x, deg_y)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), Rational)>) -> Self {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    /// Reads `[{"monomial": [i, j], "coeff": c}, …]` for `c x^i y^j`.
    pub fn from_json(v: &serde_json::Value) -> crate::Result<BiPoly> {
        let bad = |m: &str| crate::Error::InvalidInput(m.to_string());
        let mut p = BiPoly::zero();
        for t in v.as_array().ok_or_else(|| bad("a polynomial is a list of terms"))? {
            let e = t
                .get("monomial")
                .and_then(serde_json::Value::as_array)
                .filter(|a| a.len() == 2)
                .ok_or_else(|| bad("term needs \"monomial\": [i, j]"))?
                .iter()
                .map(|x| x.as_u64().and_then(|v| u32::try_from(v).ok()).ok_or_else(|| bad("exponents are small non-negative integers")))
                .collect::<crate::Result<Vec<u32>>>()?;
            let c = super::rational::value_to_rational(t.get("coeff").ok_or_else(|| bad("term needs \"coeff\""))?)?;
            p.add_term((e[0], e[1]), c);
        }
        Ok(p)
    }

    /// Inverse of [`BiPoly::from_json`].
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(&(i, j), c)| serde_json::json!({"monomial": [i, j], "coeff": super::rational::rational_to_value(c)}))
                .collect(),
        )
    }

    pub fn add_term(&mut self, key: (u32, u32), c: Rational) {
        let e = self.terms.entry(key).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        self.terms
            .iter()
            .map(|(&(i, j), c)| c * super::rpow(x, i as i64) * super::rpow(y, j as i64))
            .sum()
    }

    pub fn dx(&self) -> BiPoly {
        BiPoly::from_terms(
            self.terms
                .iter()
                .filter(|((i, _), _)| *i > 0)
                .map(|(&(i, j), c)| ((i - 1, j), c * super::q(i as i64))),
        )
    }

    pub fn dy(&self) -> BiPoly {
        BiPoly::from_terms(
            self.terms
                .iter()
                .filter(|((_, j), _)| *j > 0)
                .map(|(&(i, j), c)| ((i, j - 1), c * super::q(j as i64))),
        )
    }

    /// Exchanges the roles of `x` and `y`.
    pub fn swap_vars(&self) -> BiPoly {
        BiPoly::from_terms(self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())))
    }

    pub fn mul(&self, o: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &o.terms {
                out.add_term((i + k, j + l), a * b);
            }
        }
        out
    }

    pub fn add(&self, o: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&k, c) in &o.terms {
            out.add_term(k, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> BiPoly {
        BiPoly::from_terms(self.terms.iter().map(|(&k, a)| (k, a * c)))
    }

    /// Coefficient polynomials in `x` for each power of `y`, lowest first.
    pub fn by_y_power(&self) -> Vec<UPoly> {
        let max_j = self.terms.keys().map(|&(_, j)| j).max().unwrap_or(0) as usize;
        let mut out = vec![Vec::<Rational>::new(); max_j + 1];
        for (&(i, j), c) in &self.terms {
            let v = &mut out[j as usize];
            if v.len() <= i as usize {
                v.resize(i as usize + 1, Rational::zero());
            }
            v[i as usize] += c;
        }
        out.into_iter().map(UPoly::new).collect()
    }

    pub fn x() -> BiPoly {
        BiPoly::from_terms([((1, 0), Rational::one())])
    }

    pub fn y() -> BiPoly {
        BiPoly::from_terms([((0, 1), Rational::one())])
    }

    pub fn constant(c: Rational) -> BiPoly {
        BiPoly::from_terms([((0, 0), c)])
    }
}

impl BiPoly {
    /// Renders with the given variable names, highest total degree first.
    pub fn render(&self, vars: [&str; 2]) -> String {
        let mut terms: Vec<(Vec<u32>, Rational)> =
            self.terms.iter().map(|(&(i, j), c)| (vec![i, j], c.clone())).collect();
        terms.sort_by(|a, b| (b.0[0] + b.0[1], &b.0).cmp(&(a.0[0] + a.0[1], &a.0)));
        render_terms(&terms, &vars)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(["x", "y"]))
    }
}

/// Homogeneous polynomial in `X0, X1, X2`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TernaryForm {
    terms: BTreeMap<[u32; 3], Rational>,
}

impl TernaryForm {
    pub fn from_terms(terms: impl IntoIterator<Item = ([u32; 3], Rational)>) -> Self {
        let mut p = TernaryForm::default();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    pub fn add_term(&mut self, key: [u32; 3], c: Rational) {
        let e = self.terms.entry(key).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 3], &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree when homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|k| k.iter().sum::<u32>());
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn eval(&self, p: &[Rational; 3]) -> Rational {
        self.terms
            .iter()
            .map(|(k, c)| {
                let mut v = c.clone();
                for (x, &e) in p.iter().zip(k) {
                    v *= super::rpow(x, e as i64);
                }
                v
            })
            .sum()
    }

    pub fn partial(&self, var: usize) -> TernaryForm {
        TernaryForm::from_terms(self.terms.iter().filter(|(k, _)| k[var] > 0).map(|(k, c)| {
            let mut k2 = *k;
            k2[var] -= 1;
            (k2, c * super::q(k[var] as i64))
        }))
    }

    pub fn mul(&self, o: &TernaryForm) -> TernaryForm {
        let mut out = TernaryForm::default();
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                out.add_term([a[0] + b[0], a[1] + b[1], a[2] + b[2]], ca * cb);
            }
        }
        out
    }

    pub fn add(&self, o: &TernaryForm) -> TernaryForm {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    /// Substitutes `X_j = Σ_k sub[j][k] Y_k`.
    pub fn linear_substitute(&self, sub: &[[Rational; 3]; 3]) -> TernaryForm {
        let lin: Vec<TernaryForm> = sub
            .iter()
            .map(|row| {
                TernaryForm::from_terms((0..3).map(|k| {
                    let mut e = [0; 3];
                    e[k] = 1;
                    (e, row[k].clone())
                }))
            })
            .collect();
        let one = TernaryForm::from_terms([([0, 0, 0], Rational::one())]);
        let mut out = TernaryForm::default();
        for (k, c) in &self.terms {
            let mut t = one.clone();
            for (j, &e) in k.iter().enumerate() {
                for _ in 0..e {
                    t = t.mul(&lin[j]);
                }
            }
            for (kk, cc) in t.terms {
                out.add_term(kk, cc * c);
            }
        }
        out
    }

    /// Dehomogenizes by setting `X_chart = 1`; the remaining two variables in
    /// increasing index order become `x` and `y`.
    pub fn dehomogenize(&self, chart: usize) -> BiPoly {
        let others: Vec<usize> = (0..3).filter(|&j| j != chart).collect();
        BiPoly::from_terms(self.terms.iter().map(|(k, c)| ((k[others[0]], k[others[1]]), c.clone())))
    }

    /// All monomials of total degree `d`, in a fixed order.
    pub fn monomials(d: u32) -> Vec<[u32; 3]> {
        let mut out = Vec::new();
        for a in (0..=d).rev() {
            for b in (0..=d - a).rev() {
                out.push([a, b, d - a - b]);
            }
        }
        out
    }
}

impl fmt::Display for TernaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(Vec<u32>, Rational)> =
            self.terms.iter().rev().map(|(k, c)| (k.to_vec(), c.clone())).collect();
        write!(f, "{}", render_terms(&terms, &["X0", "X1", "X2"]))
    }
}

/// Renders `Σ c · Π var^e` in a compact human-readable form.
pub fn render_terms(terms: &[(Vec<u32>, Rational)], vars: &[&str]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (idx, (exps, c)) in terms.iter().enumerate() {
        let mono: Vec<String> = exps
            .iter()
            .zip(vars)
            .filter(|(e, _)| **e > 0)
            .map(|(&e, v)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        let neg = c < &Rational::zero();
        let abs = if neg { -c.clone() } else { c.clone() };
        if idx == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if mono.is_empty() {
            s.push_str(&abs.to_string());
        } else {
            if !abs.is_one() {
                s.push_str(&abs.to_string());
                s.push('*');
            }
            s.push_str(&mono.join("*"));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;

    #[test]
    fn division_and_gcd() {
        // (x-1)(x-2) and (x-1)(x+3)
        let a = UPoly::new(vec![q(2), q(-3), q(1)]);
        let b = UPoly::new(vec![q(-3), q(2), q(1)]);
        assert_eq!(a.gcd(&b), UPoly::new(vec![q(-1), q(1)]));
        let (qu, r) = a.div_rem(&UPoly::linear_root(&q(1)));
        assert_eq!(qu, UPoly::new(vec![q(-2), q(1)]));
        assert!(r.is_zero());
    }

    #[test]
    fn squarefree() {
        assert!(UPoly::new(vec![q(1), q(0), q(0), q(1)]).is_squarefree());
        assert!(!UPoly::new(vec![q(1), q(-2), q(1)]).is_squarefree());
    }

    #[test]
    fn rendering() {
        let f = TernaryForm::from_terms([([3, 0, 1], q(1)), ([0, 4, 0], q(-1)), ([0, 0, 4], q(1))]);
        assert_eq!(f.to_string(), "X0^3*X2 - X1^4 + X2^4");
        assert_eq!(f.homogeneous_degree(), Some(4));
    }

    #[test]
    fn substitution_identity() {
        let f = TernaryForm::from_terms([([3, 0, 1], q(1)), ([0, 4, 0], q(-1))]);
        let id = [[q(1), q(0), q(0)], [q(0), q(1), q(0)], [q(0), q(0), q(1)]];
        assert_eq!(f.linear_substitute(&id), f);
    }
}
