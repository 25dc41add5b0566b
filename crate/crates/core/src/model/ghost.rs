//! Taylor conditions on maps near a ghost that factor through `𝔄`.

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::graded::GradedSubalgebra;
use super::qring::QRing;
use crate::algebra::{kernel_basis, rationals_to_value, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GhostCondition {
    pub degree: u64,
    /// Coefficients over the basis of `Q_degree`; annihilates `𝔄_degree`.
    pub functional: Vec<Rational>,
    /// The constraint on Taylor coefficients, e.g. `[z1^1] + [z2^1] = 0`.
    pub constraint: String,
    /// The same constraint in derivative notation, e.g. `d(f)(v1) + d(f)(v2) = 0`.
    pub digest: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GhostConditionSet {
    pub conditions: Vec<GhostCondition>,
    pub summary: String,
}

impl GhostConditionSet {
    pub fn len(&self) -> usize {
        self.conditions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.conditions.is_empty()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.conditions
                .iter()
                .map(|c| {
                    json!({
                        "degree": c.degree,
                        "functional": rationals_to_value(&c.functional),
                        "constraint": c.constraint,
                        "digest": c.digest,
                    })
                })
                .collect(),
        )
    }
}

fn point_name(q: &QRing, i: usize) -> String {
    if q.n() == 1 {
        "p".into()
    } else {
        format!("p{}", i + 1)
    }
}

fn vector_name(q: &QRing, i: usize) -> String {
    if q.n() == 1 {
        "v".into()
    } else {
        format!("v{}", i + 1)
    }
}

fn zeta_name(q: &QRing, i: usize) -> String {
    if q.n() == 1 {
        "z".into()
    } else {
        format!("z{}", i + 1)
    }
}

fn join_terms(terms: Vec<(Rational, String)>) -> String {
    let mut s = String::new();
    for (c, t) in terms {
        let neg = c.is_negative();
        let abs = c.abs();
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
        s.push_str(&t);
    }
    s
}

fn describe(q: &QRing, m: u64, functional: &[Rational]) -> (String, String) {
    let branches = q.branches(m);
    let support: Vec<(usize, &Rational)> =
        branches.iter().zip(functional).filter(|(_, c)| !c.is_zero()).map(|(&i, c)| (i, c)).collect();
    let constraint = join_terms(
        support.iter().map(|&(i, c)| (c.clone(), format!("[{}^{}]", zeta_name(q, i), q.exponent(m, i)))).collect(),
    ) + " = 0";
    let digest = if let [(i, _)] = support[..] {
        let k = q.exponent(m, i);
        match k {
            1 => format!("first derivative at {} vanishes", point_name(q, i)),
            _ => format!("derivative of order {k} at {} vanishes", point_name(q, i)),
        }
    } else {
        let terms = support
            .iter()
            .map(|&(i, c)| {
                let k = q.exponent(m, i);
                let t = match k {
                    1 => format!("d(f)({})", vector_name(q, i)),
                    _ => format!("d^{k}(f)({}^⊗{k})", vector_name(q, i)),
                };
                (c.clone(), t)
            })
            .collect();
        join_terms(terms) + " = 0"
    };
    (constraint, digest)
}

/// Annihilators of each `𝔄_m` in `Q_m^∨` below the stabilization degree.
/// There are `g` of them in total.
pub fn ghost_conditions(gs: &GradedSubalgebra) -> GhostConditionSet {
    let q = &gs.qring;
    let mut conditions = Vec::new();
    for m in 1..gs.m_actual {
        for functional in kernel_basis(&gs.piece(m)) {
            let (constraint, digest) = describe(q, m, &functional);
            conditions.push(GhostCondition { degree: m, functional, constraint, digest });
        }
    }
    let summary = summarize(q, &conditions);
    GhostConditionSet { conditions, summary }
}

fn vanishing_phrase(point: &str, orders: &[u64]) -> String {
    let g = orders.len();
    if orders.iter().copied().eq(1..=g as u64) {
        return match g {
            1 => format!("first derivative at {point} vanishes"),
            _ => format!("first {g} derivatives at {point} vanish"),
        };
    }
    let list: Vec<String> = orders.iter().map(|k| k.to_string()).collect();
    format!("derivatives of orders {} at {point} vanish", list.join(", "))
}

fn summarize(q: &QRing, conditions: &[GhostCondition]) -> String {
    let g = conditions.len();
    // Conditions on one branch each read as vanishing derivatives, point by point.
    let single: Option<Vec<(usize, u64)>> = conditions
        .iter()
        .map(|c| {
            let branches = q.branches(c.degree);
            let mut support = branches.iter().zip(&c.functional).filter(|(_, x)| !x.is_zero());
            match (support.next(), support.next()) {
                (Some((&i, _)), None) => Some((i, q.exponent(c.degree, i))),
                _ => None,
            }
        })
        .collect();
    if let Some(single) = single {
        let phrases: Vec<String> = (0..q.n())
            .filter_map(|i| {
                let mut orders: Vec<u64> = single.iter().filter(|(j, _)| *j == i).map(|&(_, k)| k).collect();
                orders.sort_unstable();
                (!orders.is_empty()).then(|| vanishing_phrase(&point_name(q, i), &orders))
            })
            .collect();
        return phrases.join("; ");
    }
    if let [c] = conditions {
        if c.degree == 1 && q.weights().iter().all(|&d| d == 1) && c.functional.iter().all(|x| !x.is_zero()) {
            return "first-derivative images at the marked points are linearly dependent".into();
        }
    }
    let degrees: Vec<String> = conditions.iter().map(|c| c.degree.to_string()).collect();
    format!("{g} linear conditions on Taylor coefficients in degrees {}", degrees.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Matrix;
    use crate::model::assemble_abstract;

    #[test]
    fn non_weierstrass_point() {
        let q = QRing::new(vec![1]).unwrap();
        let pieces = vec![Matrix::zeros(0, 1), Matrix::zeros(0, 1)];
        let gs = assemble_abstract(q, 2, pieces).unwrap();
        let set = ghost_conditions(&gs);
        assert_eq!(set.len(), 2);
        assert_eq!(set.summary, "first 2 derivatives at p vanish");
        assert_eq!(set.conditions[1].digest, "derivative of order 2 at p vanishes");
        assert_eq!(set.conditions[1].constraint, "[z^2] = 0");
    }

    #[test]
    fn conjugate_pair_pattern() {
        let q = QRing::new(vec![1, 1]).unwrap();
        let pieces = vec![Matrix::from_i64(&[&[1, 1]]), Matrix::from_i64(&[&[1, 1]])];
        let gs = assemble_abstract(q, 2, pieces).unwrap();
        let set = ghost_conditions(&gs);
        let digests: Vec<&str> = set.conditions.iter().map(|c| c.digest.as_str()).collect();
        assert_eq!(digests, vec!["d(f)(v1) - d(f)(v2) = 0", "d^2(f)(v1^⊗2) - d^2(f)(v2^⊗2) = 0"]);
        for c in &set.conditions {
            for v in gs.piece(c.degree).row_vecs() {
                let pairing: Rational = v.iter().zip(&c.functional).map(|(a, b)| a * b).sum();
                assert!(pairing.is_zero());
            }
        }
    }

    #[test]
    fn genus_one_dependence() {
        let q = QRing::new(vec![1, 1, 1]).unwrap();
        let gs = assemble_abstract(q, 1, vec![Matrix::from_i64(&[&[1, -1, 0], &[1, 0, -1]])]).unwrap();
        let set = ghost_conditions(&gs);
        assert_eq!(set.len(), 1);
        assert_eq!(set.summary, "first-derivative images at the marked points are linearly dependent");
        assert_eq!(set.conditions[0].constraint, "[z1^1] + [z2^1] + [z3^1] = 0");
    }
}
