//! Minimal algebra generators and branch maps.

use num_traits::Zero;
use serde_json::{json, Value};

use super::graded::GradedSubalgebra;
use super::qring::QRing;
use crate::algebra::{intersect_row_spaces, normalize_leading, rational_to_value, Matrix, Rational};
use crate::error::{Error, Result};
use crate::param::{BranchParam, Monomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub degree: u64,
    /// Coordinates over the basis of `Q_degree`.
    pub vector: Vec<Rational>,
    pub rendered: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    pub qring: QRing,
    pub generators: Vec<Generator>,
    /// Degrees through which spanning was verified.
    pub horizon: u64,
}

impl GeneratorSet {
    pub fn rendered(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.rendered.clone()).collect()
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.generators.iter().map(|g| g.degree).collect()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.generators
                .iter()
                .map(|g| {
                    let branches: serde_json::Map<String, Value> = self
                        .qring
                        .branches(g.degree)
                        .iter()
                        .zip(&g.vector)
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(&i, c)| (self.qring.var_name(i), rational_to_value(c)))
                        .collect();
                    json!({ "degree": g.degree, "branches": branches, "rendered": g.rendered })
                })
                .collect(),
        )
    }
}

/// Span of all products of already chosen generators landing in degree `m`.
fn product_span(gs: &GradedSubalgebra, chosen: &[Generator], m: u64) -> Matrix {
    let q = &gs.qring;
    let mut rows = Vec::new();
    for g in chosen.iter().filter(|g| g.degree < m) {
        let rest = m - g.degree;
        for v in gs.piece(rest).row_vecs() {
            rows.push(q.multiply(g.degree, &g.vector, rest, &v));
        }
    }
    Matrix::from_rows(q.dim(m), rows).row_space_basis()
}

/// Nonempty subsets of `0..k`, by size and then lexicographically.
fn supports(k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (1u32..(1 << k)).map(|mask| (0..k).filter(|&i| mask >> i & 1 == 1).collect()).collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Greedy generators in ascending degree. In each degree the products of
/// earlier generators are extended to `𝔄_m`, preferring new vectors with
/// the fewest branches and then the lexicographically first support.
pub fn minimal_algebra_generators(gs: &GradedSubalgebra) -> Result<GeneratorSet> {
    let q = &gs.qring;
    let horizon = gs.m_actual + 2 * q.max_weight();
    let mut chosen: Vec<Generator> = Vec::new();
    for m in 1..=horizon {
        let target = gs.piece(m);
        let k = q.dim(m);
        let mut span = product_span(gs, &chosen, m);
        if span.rows() > target.rows() || !span.row_vecs().iter().all(|v| target.row_space_contains(v)) {
            return Err(Error::Consistency(format!("products leave 𝔄 in degree {m}")));
        }
        'extend: while span.rows() < target.rows() {
            for s in supports(k) {
                let mut coord = Matrix::zeros(0, k);
                for &i in &s {
                    let mut e = vec![Rational::zero(); k];
                    e[i] = Rational::from_integer(1.into());
                    coord.push_row(e);
                }
                for mut v in intersect_row_spaces(&target, &coord).row_vecs() {
                    if !span.row_space_contains(&v) {
                        normalize_leading(&mut v);
                        let mut rows = span.row_vecs();
                        rows.push(v.clone());
                        span = Matrix::from_rows(k, rows).row_space_basis();
                        chosen.push(Generator { degree: m, rendered: q.render(m, &v), vector: v });
                        continue 'extend;
                    }
                }
            }
            return Err(Error::Consistency(format!("cannot extend products to 𝔄 in degree {m}")));
        }
    }
    // Every x_i^k with d_i k in [m_actual, horizon] is now generated, and
    // x_i^k = x_i^K · x_i^{k-K} covers all higher powers.
    for i in 0..q.n() {
        let d = q.weights()[i];
        if horizon / d < gs.m_actual.div_ceil(d) {
            return Err(Error::Consistency(format!("verification horizon too short for branch {}", i + 1)));
        }
    }
    Ok(GeneratorSet { qring: q.clone(), generators: chosen, horizon })
}

/// Accepts a user-chosen generating set, possibly redundant, after checking
/// that it lies in `𝔄` and generates it through the verification horizon.
pub fn presentation(gs: &GradedSubalgebra, gens: Vec<(u64, Vec<Rational>)>) -> Result<GeneratorSet> {
    let q = &gs.qring;
    let mut generators = Vec::new();
    for (degree, vector) in gens {
        if degree == 0 || vector.len() != q.dim(degree) {
            return Err(Error::InvalidInput(format!("generator of degree {degree} has the wrong length")));
        }
        if !gs.piece(degree).row_space_contains(&vector) {
            return Err(Error::InvalidInput(format!("{} is not in 𝔄", q.render(degree, &vector))));
        }
        generators.push(Generator { degree, rendered: q.render(degree, &vector), vector });
    }
    let horizon = gs.m_actual + 2 * q.max_weight();
    for m in 1..=horizon {
        let mut rows = product_span(gs, &generators, m).row_vecs();
        rows.extend(generators.iter().filter(|g| g.degree == m).map(|g| g.vector.clone()));
        if !Matrix::from_rows(q.dim(m), rows).same_row_space(&gs.piece(m)) {
            return Err(Error::InvalidInput(format!("the generators miss part of 𝔄 in degree {m}")));
        }
    }
    Ok(GeneratorSet { qring: q.clone(), generators, horizon })
}

/// Checks that the products of the generators span `𝔄_m` through the
/// horizon and that each generator is needed in its own degree.
pub fn verify_generators(gs: &GradedSubalgebra, set: &GeneratorSet) -> bool {
    generates(gs, set) && irredundant(gs, set)
}

/// The set spans every piece `𝔄_m` up to its horizon; redundancy is allowed.
pub fn generates(gs: &GradedSubalgebra, set: &GeneratorSet) -> bool {
    (1..=set.horizon).all(|m| {
        let mut rows = product_span(gs, &set.generators, m).row_vecs();
        rows.extend(set.generators.iter().filter(|g| g.degree == m).map(|g| g.vector.clone()));
        Matrix::from_rows(gs.qring.dim(m), rows).same_row_space(&gs.piece(m))
    })
}

fn irredundant(gs: &GradedSubalgebra, set: &GeneratorSet) -> bool {
    set.generators.iter().enumerate().all(|(idx, g)| {
        let others: Vec<Generator> =
            set.generators.iter().enumerate().filter(|(j, _)| *j != idx).map(|(_, h)| h.clone()).collect();
        let mut rows = product_span(gs, &others, g.degree).row_vecs();
        rows.extend(others.iter().filter(|h| h.degree == g.degree).map(|h| h.vector.clone()));
        !Matrix::from_rows(gs.qring.dim(g.degree), rows).row_space_contains(&g.vector)
    })
}

/// Restriction of every generator to every branch line.
pub fn branch_maps(gens: &GeneratorSet) -> BranchParam {
    let q = &gens.qring;
    let maps = (0..q.n())
        .map(|i| {
            gens.generators
                .iter()
                .map(|g| match q.branches(g.degree).iter().position(|&j| j == i) {
                    Some(p) => Monomial::new(g.vector[p].clone(), q.exponent(g.degree, i)),
                    None => Monomial::zero(),
                })
                .collect()
        })
        .collect();
    BranchParam::new((0..q.n()).map(|i| q.var_name(i)).collect(), maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{assemble_abstract, QRing};

    #[test]
    fn weighted_two_three() {
        let q = QRing::new(vec![2, 3]).unwrap();
        let pieces = (1..6).map(|m| Matrix::zeros(0, q.dim(m))).collect();
        let gs = assemble_abstract(q, 3, pieces).unwrap();
        let gens = minimal_algebra_generators(&gs).unwrap();
        assert_eq!(gens.rendered(), vec!["x1^3", "x2^2", "x1^4", "x2^3", "x1^5"]);
        assert_eq!(gens.degrees(), vec![6, 6, 8, 9, 10]);
        assert!(verify_generators(&gs, &gens));
    }

    #[test]
    fn full_line() {
        let q = QRing::new(vec![1]).unwrap();
        let gs = assemble_abstract(q, 1, vec![Matrix::zeros(0, 1)]).unwrap();
        let gens = minimal_algebra_generators(&gs).unwrap();
        assert_eq!(gens.rendered(), vec!["x^2", "x^3"]);
        let bp = branch_maps(&gens);
        assert_eq!(bp.render_equation().unwrap(), "u^3 - v^2 = 0");
    }

    #[test]
    fn redundant_genus_one_presentation() {
        let q = QRing::new(vec![1, 1, 1]).unwrap();
        let gs = assemble_abstract(q, 1, vec![Matrix::from_i64(&[&[1, -1, 0], &[1, 0, -1]])]).unwrap();
        let gens = minimal_algebra_generators(&gs).unwrap();
        assert_eq!(gens.rendered(), vec!["x1 - x2", "x1 - x3"]);
        let r = |v: &[i64]| v.iter().map(|&c| Rational::from_integer(c.into())).collect::<Vec<_>>();
        let set = presentation(&gs, vec![(2, r(&[1, 0, 0])), (1, r(&[1, -1, 0])), (1, r(&[1, 0, -1]))]).unwrap();
        let bp = branch_maps(&set);
        assert_eq!(bp.render_branch(0), "x1 ↦ (x1^2, x1, x1)");
        assert_eq!(bp.render_branch(2), "x3 ↦ (0, 0, -x3)");
        assert!(presentation(&gs, vec![(1, r(&[1, -1, 0]))]).is_err());
    }

    #[test]
    fn tacnode() {
        let q = QRing::new(vec![1, 1]).unwrap();
        let gs = assemble_abstract(q, 1, vec![Matrix::from_i64(&[&[1, -1]])]).unwrap();
        let gens = minimal_algebra_generators(&gs).unwrap();
        assert_eq!(gens.rendered(), vec!["x1 - x2", "x1^2"]);
        let bp = branch_maps(&gens);
        assert_eq!(bp.render_branch(0), "x1 ↦ (x1, x1^2)");
        assert_eq!(bp.render_branch(1), "x2 ↦ (-x2, 0)");
    }
}
