//! Graded subalgebras `𝔄 ⊂ Q` stored degree by degree.

use num_traits::One;
use serde_json::{json, Value};

use super::qring::QRing;
use crate::algebra::{rationals_to_value, value_to_rational, Matrix, Rational};
use crate::error::{Error, Result};

/// Which computation produced a [`GradedSubalgebra`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Leading Laurent coefficients of Riemann–Roch bases.
    Direct,
    /// Kernel of the residue pairing against regular 1-forms.
    Dual,
    /// Supplied pieces, validated.
    Abstract,
    /// Suspension of another subalgebra by extra branches.
    Suspension,
    /// Branch-wise rescaling of another subalgebra.
    Rescaled,
}

impl Provenance {
    pub fn name(&self) -> &'static str {
        match self {
            Provenance::Direct => "direct",
            Provenance::Dual => "dual",
            Provenance::Abstract => "abstract",
            Provenance::Suspension => "suspension",
            Provenance::Rescaled => "rescaled",
        }
    }
}

/// `𝔄 = ⊕ 𝔄_m` with `𝔄_m = Q_m` from `m_actual` on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSubalgebra {
    pub qring: QRing,
    pub genus: usize,
    /// Reduced row-echelon bases of `𝔄_m` for `1 ≤ m < m_actual`.
    pieces: Vec<Matrix>,
    pub m_actual: u64,
    pub m_bound: u64,
    pub provenance: Provenance,
}

/// Least `m` with `Σ ⌊(m-1)/d_i⌋ > 2g - 2`; from there on `𝔄_m = Q_m`.
pub fn cutoff_bound(genus: usize, weights: &[u64]) -> u64 {
    let target = 2 * genus as i64 - 2;
    (1..)
        .find(|&m: &u64| weights.iter().map(|&d| ((m - 1) / d) as i64).sum::<i64>() > target)
        .unwrap()
}

/// `Σ_m (dim Q_m - dim 𝔄_m)`, which must equal the genus.
pub fn gap_dimension(gs: &GradedSubalgebra) -> Result<usize> {
    let gap = gs.raw_gap();
    if gap != gs.genus {
        return Err(Error::Consistency(format!("gap dimension {gap} differs from genus {}", gs.genus)));
    }
    Ok(gap)
}

/// Validates user-supplied pieces (`pieces[k]` spans `𝔄_{k+1}`; degrees
/// past the list are full) and builds the subalgebra.
pub fn assemble_abstract(qring: QRing, genus: usize, pieces: Vec<Matrix>) -> Result<GradedSubalgebra> {
    if genus == 0 {
        return Err(Error::Precondition("genus must be at least 1".into()));
    }
    for (k, p) in pieces.iter().enumerate() {
        let m = k as u64 + 1;
        if p.cols() != qring.dim(m) {
            return Err(Error::Validation {
                degree: m as usize,
                reason: format!("piece has {} columns but dim Q_{m} = {}", p.cols(), qring.dim(m)),
            });
        }
    }
    let m_bound = cutoff_bound(genus, qring.weights());
    let gs = GradedSubalgebra::from_pieces(qring, genus, pieces, m_bound, Provenance::Abstract);
    if let Some((a, b)) = gs.closure_violation() {
        return Err(Error::Validation {
            degree: (a + b) as usize,
            reason: format!("product of degree-{a} and degree-{b} elements leaves the subalgebra"),
        });
    }
    let gap = gs.raw_gap();
    if gap != genus {
        return Err(Error::Validation {
            degree: gs.m_actual as usize,
            reason: format!("gap dimension {gap} differs from genus {genus}"),
        });
    }
    Ok(gs)
}

/// Reads `[{"degree": m, "basis": [[…], …]}, …]`. Degrees up to the largest
/// listed one that are absent are zero pieces; later degrees are full.
pub fn pieces_from_json(weights: &[u64], v: &Value) -> Result<Vec<Matrix>> {
    let entries = v.as_array().ok_or_else(|| Error::InvalidInput("\"pieces\" must be a list".into()))?;
    let dim = |m: u64| weights.iter().filter(|&&d| m.is_multiple_of(d)).count();
    let mut by_degree = std::collections::BTreeMap::new();
    for e in entries {
        let m = e
            .get("degree")
            .and_then(Value::as_u64)
            .filter(|&m| m >= 1)
            .ok_or_else(|| Error::InvalidInput("each piece needs a positive \"degree\"".into()))?;
        let rows = e
            .get("basis")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::InvalidInput(format!("piece {m} needs \"basis\"")))?
            .iter()
            .map(|r| {
                let row = r
                    .as_array()
                    .ok_or_else(|| Error::InvalidInput(format!("piece {m}: basis rows are lists")))?
                    .iter()
                    .map(value_to_rational)
                    .collect::<Result<Vec<_>>>()?;
                if row.len() != dim(m) {
                    return Err(Error::InvalidInput(format!(
                        "piece {m}: rows have {} entries but dim Q_{m} = {}",
                        row.len(),
                        dim(m)
                    )));
                }
                Ok(row)
            })
            .collect::<Result<Vec<_>>>()?;
        if by_degree.insert(m, Matrix::from_rows(dim(m), rows)).is_some() {
            return Err(Error::InvalidInput(format!("degree {m} is listed twice")));
        }
    }
    let top = by_degree.keys().next_back().copied().unwrap_or(0);
    Ok((1..=top).map(|m| by_degree.remove(&m).unwrap_or_else(|| Matrix::zeros(0, dim(m)))).collect())
}

impl GradedSubalgebra {
    /// Builds from pieces `𝔄_1, 𝔄_2, …`; trailing full pieces are dropped.
    /// Degrees past the end of `pieces` are taken to be full.
    pub(crate) fn from_pieces(
        qring: QRing,
        genus: usize,
        pieces: Vec<Matrix>,
        m_bound: u64,
        provenance: Provenance,
    ) -> Self {
        let mut pieces: Vec<Matrix> = pieces.iter().map(Matrix::row_space_basis).collect();
        while pieces.last().is_some_and(|p| p.rows() == p.cols()) {
            pieces.pop();
        }
        // Stabilization is witnessed in a degree where Q_m is nonzero, so
        // degrees with Q_m = 0 right after the last proper piece still count,
        // up to the cutoff bound where stabilization is guaranteed anyway.
        let mut m_actual = pieces.len() as u64 + 1;
        while qring.dim(m_actual) == 0 && m_actual < m_bound {
            pieces.push(Matrix::zeros(0, 0));
            m_actual += 1;
        }
        GradedSubalgebra { qring, genus, pieces, m_actual, m_bound, provenance }
    }

    /// Unvalidated algebra with `like`'s ring and bounds and the given pieces,
    /// used as a comparison target.
    pub(crate) fn from_target(like: &GradedSubalgebra, pieces: Vec<Matrix>) -> Self {
        Self::from_pieces(like.qring.clone(), like.genus, pieces, like.m_bound, Provenance::Abstract)
    }

    pub fn n(&self) -> usize {
        self.qring.n()
    }

    /// Basis of `𝔄_m` (the identity for `m ≥ m_actual`, `[1]` for `m = 0`).
    pub fn piece(&self, m: u64) -> Matrix {
        if m == 0 {
            return Matrix::from_rows(1, [vec![Rational::one()]]);
        }
        match self.pieces.get(m as usize - 1) {
            Some(p) => p.clone(),
            None => self.qring.full(m),
        }
    }

    pub fn dim(&self, m: u64) -> usize {
        if m == 0 {
            1
        } else {
            self.pieces.get(m as usize - 1).map_or(self.qring.dim(m), Matrix::rows)
        }
    }

    /// Stored pieces `𝔄_1 … 𝔄_{m_actual - 1}`.
    pub fn pieces(&self) -> &[Matrix] {
        &self.pieces
    }

    pub(crate) fn raw_gap(&self) -> usize {
        (1..self.m_actual).map(|m| self.qring.dim(m) - self.dim(m)).sum()
    }

    /// First pair of degrees whose product leaves `𝔄`, if any.
    pub fn closure_violation(&self) -> Option<(u64, u64)> {
        for a in 1..self.m_actual {
            for b in a..self.m_actual - a {
                let (pa, pb, pc) = (self.piece(a), self.piece(b), self.piece(a + b));
                for u in pa.row_vecs() {
                    for v in pb.row_vecs() {
                        if !pc.row_space_contains(&self.qring.multiply(a, &u, b, &v)) {
                            return Some((a, b));
                        }
                    }
                }
            }
        }
        None
    }

    /// Pieces agree in every degree.
    pub fn same_pieces(&self, other: &GradedSubalgebra) -> bool {
        self.qring == other.qring && self.m_actual == other.m_actual && self.pieces == other.pieces
    }

    pub fn pieces_json(&self) -> Value {
        Value::Array(
            self.pieces
                .iter()
                .enumerate()
                .map(|(k, p)| {
                    let m = k as u64 + 1;
                    json!({
                        "degree": m,
                        "dim_Q": self.qring.dim(m),
                        "basis": p.row_vecs().iter().map(|r| rationals_to_value(r)).collect::<Vec<_>>(),
                        "rendered": p.row_vecs().iter().map(|r| self.qring.render(m, r)).collect::<Vec<_>>(),
                    })
                })
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;

    #[test]
    fn cutoffs() {
        assert_eq!(cutoff_bound(1, &[1]), 2);
        assert_eq!(cutoff_bound(3, &[2, 3]), 7);
        assert_eq!(cutoff_bound(1, &[1, 1]), 2);
    }

    #[test]
    fn cusp_is_accepted() {
        let r = QRing::new(vec![1]).unwrap();
        let gs = assemble_abstract(r, 1, vec![Matrix::zeros(0, 1)]).unwrap();
        assert_eq!(gs.m_actual, 2);
        assert_eq!(gap_dimension(&gs).unwrap(), 1);
    }

    #[test]
    fn genus_zero_rejected() {
        let r = QRing::new(vec![1]).unwrap();
        assert!(matches!(assemble_abstract(r, 0, vec![]), Err(Error::Precondition(_))));
    }

    #[test]
    fn closure_violation_detected() {
        // 𝔄_1 = span{x1}, 𝔄_2 = span{x2^2}: x1·x1 = x1^2 is missing
        let r = QRing::new(vec![1, 1]).unwrap();
        let pieces = vec![Matrix::from_i64(&[&[1, 0]]), Matrix::from_i64(&[&[0, 1]])];
        match assemble_abstract(r, 2, pieces) {
            Err(Error::Validation { degree, .. }) => assert_eq!(degree, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn special_genus_two_pieces() {
        let r = QRing::new(vec![1, 1, 1]).unwrap();
        let gs = assemble_abstract(r, 2, vec![Matrix::from_rows(3, [vec![q(1), q(0), q(-1)]])]).unwrap();
        assert_eq!(gs.m_actual, 2);
    }
}
