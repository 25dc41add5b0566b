//! Branch parameterizations `x_i ↦ (c_1 x_i^{e_1}, …, c_k x_i^{e_k})` and
//! their planar implicit equations.

use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::algebra::{rational_to_value, rpow, BiPoly, Rational};

/// One coordinate of a branch map: `coeff · x^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: Rational,
    pub exponent: u64,
}

impl Monomial {
    pub fn new(coeff: Rational, exponent: u64) -> Self {
        Monomial { coeff, exponent }
    }

    pub fn zero() -> Self {
        Monomial { coeff: Rational::zero(), exponent: 0 }
    }

    fn render(&self, var: &str) -> String {
        if self.coeff.is_zero() {
            return "0".into();
        }
        let pow = match self.exponent {
            0 => String::new(),
            1 => var.to_string(),
            e => format!("{var}^{e}"),
        };
        let c = &self.coeff;
        match (pow.is_empty(), c.is_one(), (-c.clone()).is_one()) {
            (true, _, _) => c.to_string(),
            (false, true, _) => pow,
            (false, _, true) => format!("-{pow}"),
            _ => format!("{c}*{pow}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchParam {
    /// Branch variable names, e.g. `x` or `x1, x2, …`.
    pub variables: Vec<String>,
    /// `maps[i][j]` is coordinate `j` of branch `i`.
    pub maps: Vec<Vec<Monomial>>,
    /// Implicit equation in `u, v` when the embedding is planar.
    pub equation: Option<BiPoly>,
}

impl BranchParam {
    pub fn new(variables: Vec<String>, maps: Vec<Vec<Monomial>>) -> Self {
        let equation = planar_equation(&maps);
        BranchParam { variables, maps, equation }
    }

    pub fn embedding_dimension(&self) -> usize {
        self.maps.first().map_or(0, Vec::len)
    }

    /// Renders branch `i` as `x_i ↦ (…)`.
    pub fn render_branch(&self, i: usize) -> String {
        let var = &self.variables[i];
        let coords: Vec<String> = self.maps[i].iter().map(|m| m.render(var)).collect();
        format!("{var} ↦ ({})", coords.join(", "))
    }

    pub fn render_equation(&self) -> Option<String> {
        self.equation.as_ref().map(|e| format!("{} = 0", e.render(["u", "v"])))
    }

    /// Checks that a polynomial in `u, v` vanishes on every branch.
    pub fn satisfies(&self, eq: &BiPoly) -> bool {
        if self.embedding_dimension() != 2 {
            return false;
        }
        self.maps.iter().all(|m| vanishes_on_branch(eq, &m[0], &m[1]))
    }

    pub fn to_json(&self) -> Value {
        let branches: Vec<Value> = self
            .maps
            .iter()
            .enumerate()
            .map(|(i, m)| {
                json!({
                    "variable": self.variables[i],
                    "coordinates": m.iter().map(|c| json!({
                        "coeff": rational_to_value(&c.coeff),
                        "exponent": c.exponent,
                    })).collect::<Vec<_>>(),
                    "rendered": self.render_branch(i),
                })
            })
            .collect();
        let mut out = json!({ "branches": branches });
        if let Some(eq) = self.render_equation() {
            out["equation"] = Value::String(eq);
        }
        out
    }
}

/// Substitutes `u = a x^p`, `v = b x^q` and checks the result is zero.
fn vanishes_on_branch(eq: &BiPoly, u: &Monomial, v: &Monomial) -> bool {
    let mut by_exp = std::collections::BTreeMap::<u64, Rational>::new();
    for (&(i, j), c) in eq.terms() {
        let coeff = c * rpow(&u.coeff, i as i64) * rpow(&v.coeff, j as i64);
        if coeff.is_zero() {
            continue;
        }
        let e = u.exponent * i as u64 + v.exponent * j as u64;
        *by_exp.entry(e).or_insert_with(Rational::zero) += coeff;
    }
    by_exp.values().all(Zero::is_zero)
}

/// Reduced equation of the union of the planar branches, or `None` outside
/// the two-coordinate case.
fn planar_equation(maps: &[Vec<Monomial>]) -> Option<BiPoly> {
    if maps.is_empty() || maps.iter().any(|m| m.len() != 2) {
        return None;
    }
    let mut factors: Vec<BiPoly> = Vec::new();
    for m in maps {
        let (u, v) = (&m[0], &m[1]);
        let factor = match (u.coeff.is_zero(), v.coeff.is_zero()) {
            (true, true) => return None,
            (false, true) => BiPoly::from_terms([((0, 1), Rational::one())]),
            (true, false) => BiPoly::from_terms([((1, 0), Rational::one())]),
            (false, false) => {
                let g = u.exponent.gcd(&v.exponent);
                let (p, qq) = (u.exponent / g, v.exponent / g);
                // b^p u^q - a^q v^p
                BiPoly::from_terms([
                    ((qq as u32, 0), rpow(&v.coeff, p as i64)),
                    ((0, p as u32), -rpow(&u.coeff, qq as i64)),
                ])
            }
        };
        let monic = normalize(&factor);
        if !factors.contains(&monic) {
            factors.push(monic);
        }
    }
    Some(factors.iter().fold(BiPoly::constant(Rational::one()), |acc, f| acc.mul(f)))
}

/// Scales so the leading term (in rendering order) has coefficient 1.
fn normalize(p: &BiPoly) -> BiPoly {
    let lead = p
        .terms()
        .max_by_key(|(&(i, j), _)| (i + j, i, j))
        .map(|(_, c)| c.clone())
        .unwrap_or_else(Rational::one);
    p.scale(&lead.recip())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;

    #[test]
    fn tacnode_union() {
        // x1 ↦ (x1, x1^2), x2 ↦ (-x2, 0)
        let p = BranchParam::new(
            vec!["x1".into(), "x2".into()],
            vec![
                vec![Monomial::new(q(1), 1), Monomial::new(q(1), 2)],
                vec![Monomial::new(q(-1), 1), Monomial::zero()],
            ],
        );
        assert_eq!(p.render_branch(1), "x2 ↦ (-x2, 0)");
        let eq = p.equation.clone().unwrap();
        assert!(p.satisfies(&eq));
        assert_eq!(p.render_equation().unwrap(), "u^2*v - v^2 = 0");
    }

    #[test]
    fn non_planar_has_no_equation() {
        let p = BranchParam::new(
            vec!["x".into()],
            vec![vec![Monomial::new(q(1), 3), Monomial::new(q(1), 5), Monomial::new(q(1), 7)]],
        );
        assert!(p.equation.is_none());
        assert_eq!(p.render_branch(0), "x ↦ (x^3, x^5, x^7)");
    }
}
