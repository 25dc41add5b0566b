//! Per-branch rescaling `x_i ↦ λ_i x_i` and equivalence up to it.
//!
//! Only the pieces strictly between zero and full are affected, and there
//! branch `i` appears with exponents `E_i`. A rescaling acts rationally
//! exactly when `λ_i^{k_i}` is rational for `k_i = gcd E_i`, so a scale is
//! recorded as the pair `(k_i, r_i)` meaning `λ_i^{k_i} = r_i`.

use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::graded::{GradedSubalgebra, Provenance};
use crate::algebra::{rational_root, rational_to_value, rpow, Matrix, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchScale {
    pub k: u64,
    pub r: Rational,
}

impl BranchScale {
    pub fn identity(k: u64) -> Self {
        BranchScale { k, r: Rational::one() }
    }

    pub fn render(&self, var: &str) -> String {
        match self.k {
            1 => format!("{var} ↦ {}*{var}", self.r),
            k => format!("{var} ↦ λ*{var} with λ^{k} = {}", self.r),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rescaling {
    pub scales: Vec<BranchScale>,
}

impl Rescaling {
    pub fn is_identity(&self) -> bool {
        self.scales.iter().all(|s| s.r.is_one())
    }

    pub fn to_json(&self, gs: &GradedSubalgebra) -> Value {
        Value::Array(
            self.scales
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    json!({
                        "branch": gs.qring.var_name(i),
                        "power": s.k,
                        "value": rational_to_value(&s.r),
                        "rendered": s.render(&gs.qring.var_name(i)),
                    })
                })
                .collect(),
        )
    }
}

fn proper(gs: &GradedSubalgebra, m: u64) -> bool {
    let d = gs.dim(m);
    d > 0 && d < gs.qring.dim(m)
}

/// `gcd E_i` for every branch, `1` when the branch never appears.
pub fn scale_powers(gs: &GradedSubalgebra) -> Vec<u64> {
    let q = &gs.qring;
    (0..q.n())
        .map(|i| {
            let k = (1..gs.m_actual)
                .filter(|&m| proper(gs, m) && m % q.weights()[i] == 0)
                .fold(0, |acc, m| acc.gcd(&q.exponent(m, i)));
            k.max(1)
        })
        .collect()
}

/// Applies `x_i ↦ λ_i x_i`.
pub fn rescale(gs: &GradedSubalgebra, scaling: &Rescaling) -> Result<GradedSubalgebra> {
    let q = &gs.qring;
    if scaling.scales.len() != q.n() {
        return Err(Error::InvalidInput(format!("{} scales for {} branches", scaling.scales.len(), q.n())));
    }
    if scaling.scales.iter().any(|s| s.r.is_zero()) {
        return Err(Error::InvalidInput("scales must be nonzero".into()));
    }
    let mut pieces = Vec::new();
    for m in 1..gs.m_actual {
        let piece = gs.piece(m);
        if !proper(gs, m) {
            pieces.push(piece);
            continue;
        }
        let mut factors = Vec::new();
        for i in q.branches(m) {
            let (k, e) = (scaling.scales[i].k, q.exponent(m, i));
            if e % k != 0 {
                return Err(Error::Precondition(format!(
                    "λ^{k} does not determine the degree-{m} scale of {}",
                    q.var_name(i)
                )));
            }
            factors.push(rpow(&scaling.scales[i].r, (e / k) as i64));
        }
        let rows =
            piece.row_vecs().into_iter().map(|v| v.iter().zip(&factors).map(|(a, f)| a * f).collect::<Vec<_>>());
        pieces.push(Matrix::from_rows(factors.len(), rows));
    }
    Ok(GradedSubalgebra::from_pieces(q.clone(), gs.genus, pieces, gs.m_bound, Provenance::Rescaled))
}

/// Canonical representative of the rescaling orbit.
#[derive(Clone, Debug)]
pub struct NormalForm {
    pub algebra: GradedSubalgebra,
    /// Takes the input to `algebra`.
    pub rescaling: Rescaling,
    /// `false` when some branch scale could only be fixed up to a sign or
    /// not at all over the rationals; the form is then not canonical.
    pub complete: bool,
}

/// Makes every off-pivot entry of the reduced pieces equal to 1 where
/// possible, scanning degrees, rows and columns in order.
pub fn normalize_units(gs: &GradedSubalgebra) -> NormalForm {
    let q = &gs.qring;
    let powers = scale_powers(gs);
    let mut fixed: Vec<Option<Rational>> = vec![None; q.n()];
    let mut complete = true;
    // Solve r_j^a = c, fixing branch j when a rational root exists.
    let mut solve = |fixed: &mut Vec<Option<Rational>>, j: usize, a: u64, c: Rational| {
        match rational_root(&c, a as u32) {
            Some(root) => {
                if a.is_multiple_of(2) {
                    complete = false;
                }
                fixed[j] = Some(root);
            }
            None => complete = false,
        }
    };
    for m in (1..gs.m_actual).filter(|&m| proper(gs, m)) {
        let branches = q.branches(m);
        let a = |p: usize| q.exponent(m, branches[p]) / powers[branches[p]];
        for row in gs.piece(m).row_vecs() {
            let p = row.iter().position(|c| !c.is_zero()).unwrap();
            for (j, e) in row.iter().enumerate().skip(p + 1).filter(|(_, e)| !e.is_zero()) {
                let (bp, bj) = (branches[p], branches[j]);
                if fixed[bp].is_none() && fixed[bj].is_none() {
                    fixed[bp] = Some(Rational::one());
                }
                match (fixed[bp].clone(), fixed[bj].clone()) {
                    (Some(rp), None) => solve(&mut fixed, bj, a(j), rpow(&rp, a(p) as i64) / e),
                    (None, Some(rj)) => solve(&mut fixed, bp, a(p), e * rpow(&rj, a(j) as i64)),
                    _ => {}
                }
            }
        }
    }
    let rescaling = Rescaling {
        scales: (0..q.n())
            .map(|i| BranchScale { k: powers[i], r: fixed[i].clone().unwrap_or_else(Rational::one) })
            .collect(),
    };
    let algebra = rescale(gs, &rescaling).expect("scale powers divide every exponent");
    NormalForm { algebra, rescaling, complete }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    /// Applying the rescaling to the first algebra gives the second.
    Equivalent(Rescaling),
    NotEquivalent,
    /// Normal forms differ but at least one was not canonical.
    Undetermined,
}

/// Decides whether `b` is a per-branch rescaling of `a`.
pub fn rescaling_equivalence(a: &GradedSubalgebra, b: &GradedSubalgebra) -> Equivalence {
    if a.qring != b.qring || a.m_actual != b.m_actual || (1..a.m_actual).any(|m| a.dim(m) != b.dim(m)) {
        return Equivalence::NotEquivalent;
    }
    let (na, nb) = (normalize_units(a), normalize_units(b));
    if na.algebra.same_pieces(&nb.algebra) {
        let scales = na
            .rescaling
            .scales
            .iter()
            .zip(&nb.rescaling.scales)
            .map(|(x, y)| BranchScale { k: x.k, r: &x.r / &y.r })
            .collect();
        return Equivalence::Equivalent(Rescaling { scales });
    }
    if na.complete && nb.complete {
        Equivalence::NotEquivalent
    } else {
        Equivalence::Undetermined
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::frac;
    use crate::model::{assemble_abstract, QRing};

    fn pair(piece: &[&[i64]], genus: usize) -> GradedSubalgebra {
        assemble_abstract(QRing::new(vec![1, 1]).unwrap(), genus, vec![Matrix::from_i64(piece)]).unwrap()
    }

    #[test]
    fn scaled_tacnode_is_equivalent() {
        let a = pair(&[&[1, 3]], 1);
        let b = pair(&[&[1, -1]], 1);
        let Equivalence::Equivalent(r) = rescaling_equivalence(&a, &b) else { panic!() };
        assert_eq!(r.scales[1].r, frac(-1, 3));
        assert!(rescale(&a, &r).unwrap().same_pieces(&b));
    }

    #[test]
    fn non_square_ratio_uses_power() {
        let q = QRing::new(vec![1, 1]).unwrap();
        let pieces = vec![Matrix::zeros(0, 2), Matrix::from_i64(&[&[1, 3]])];
        let a = assemble_abstract(q.clone(), 3, pieces).unwrap();
        let b = assemble_abstract(q, 3, vec![Matrix::zeros(0, 2), Matrix::from_i64(&[&[1, 1]])]).unwrap();
        assert_eq!(scale_powers(&a), vec![2, 2]);
        let Equivalence::Equivalent(r) = rescaling_equivalence(&a, &b) else { panic!() };
        assert_eq!(r.scales[1], BranchScale { k: 2, r: frac(1, 3) });
    }

    #[test]
    fn distinct_supports_are_inequivalent() {
        let q = QRing::new(vec![1, 1, 1]).unwrap();
        let a = assemble_abstract(q.clone(), 2, vec![Matrix::from_i64(&[&[1, 1, 1]])]).unwrap();
        let b = assemble_abstract(q, 2, vec![Matrix::from_i64(&[&[1, 0, -1]])]).unwrap();
        assert_eq!(rescaling_equivalence(&a, &b), Equivalence::NotEquivalent);
    }
}
