//! The two computations of `𝔄` from a marked curve.
//!
//! The direct path reads off leading Laurent coefficients of a basis of
//! `H^0(⌊mΔ⌋)`. The dual path takes the kernel of the residue pairing
//! `⟨ω, x_i^k⟩ = [z_i^{k-1}] ω/dz_i` against the forms vanishing on
//! `⌊(m-1)Δ⌋`. The residue theorem makes them agree.

use rayon::prelude::*;

use super::graded::{cutoff_bound, gap_dimension, GradedSubalgebra, Provenance};
use super::qring::QRing;
use crate::algebra::{kernel_basis, Matrix, Rational};
use crate::curve::{canonical_jets, floor_divisor, h_dims, rr_basis, MarkedCurve};
use crate::error::{Error, Result};

/// Degrees examined when locating the stabilization degree.
pub fn computation_horizon(curve: &MarkedCurve) -> u64 {
    let bound = cutoff_bound(curve.genus(), curve.weights());
    bound + 2 * curve.weights().iter().max().unwrap()
}

pub fn graded_pieces_direct(curve: &MarkedCurve) -> Result<GradedSubalgebra> {
    if !curve.backend().supports_rr_basis() {
        return Err(Error::UnsupportedBackend {
            backend: curve.backend().name(),
            what: "direct computation of graded pieces".into(),
        });
    }
    build(curve, Provenance::Direct, direct_piece)
}

pub fn graded_pieces_dual(curve: &MarkedCurve) -> Result<GradedSubalgebra> {
    build(curve, Provenance::Dual, dual_piece)
}

fn build(
    curve: &MarkedCurve,
    provenance: Provenance,
    piece: fn(&MarkedCurve, &QRing, u64) -> Result<Matrix>,
) -> Result<GradedSubalgebra> {
    let qring = QRing::new(curve.weights().to_vec())?;
    let horizon = computation_horizon(curve);
    let m_bound = cutoff_bound(curve.genus(), curve.weights());
    let pieces = (1..=horizon).into_par_iter().map(|m| piece(curve, &qring, m)).collect::<Result<Vec<_>>>()?;
    let gs = GradedSubalgebra::from_pieces(qring, curve.genus(), pieces, m_bound, provenance);
    if gs.m_actual > m_bound {
        return Err(Error::Consistency(format!(
            "stabilization degree {} exceeds the cutoff bound {m_bound}",
            gs.m_actual
        )));
    }
    gap_dimension(&gs)?;
    Ok(gs)
}

fn direct_piece(curve: &MarkedCurve, qring: &QRing, m: u64) -> Result<Matrix> {
    let delta = curve.delta();
    let d = floor_divisor(&delta, m);
    let prev = floor_divisor(&delta, m - 1);
    let branches = qring.branches(m);
    let expected = h_dims(curve, &d)?.0 - h_dims(curve, &prev)?.0;
    // A piece of full dimension is all of Q_m whatever the leading
    // coefficients are; building the basis would only repeat the count.
    if expected == branches.len() {
        return Ok(qring.full(m));
    }
    let basis = rr_basis(curve, &d)?;
    let rows = basis.elements.iter().map(|s| {
        branches
            .iter()
            .map(|&i| s.tails[i].coeff(-(qring.exponent(m, i) as i64)))
            .collect::<Vec<Rational>>()
    });
    let piece = Matrix::from_rows(branches.len(), rows).row_space_basis();
    if piece.rows() != expected {
        return Err(Error::Consistency(format!(
            "degree {m}: leading coefficients span {} dimensions, expected {expected}",
            piece.rows()
        )));
    }
    Ok(piece)
}

fn dual_piece(curve: &MarkedCurve, qring: &QRing, m: u64) -> Result<Matrix> {
    let g = curve.genus();
    let prev = floor_divisor(&curve.delta(), m - 1);
    let branches = qring.branches(m);
    let conditions = crate::curve::vanishing_conditions(curve, &prev)?;
    let forms = kernel_basis(&conditions);
    let order = branches.iter().map(|&i| qring.exponent(m, i) as usize).max().unwrap_or(1);
    let jets = canonical_jets(curve, order)?;
    let pairing = Matrix::from_rows(
        branches.len(),
        forms.iter().map(|c| {
            branches
                .iter()
                .map(|&i| {
                    let k = qring.exponent(m, i) as usize;
                    (0..g).map(|f| &c[f] * &jets[f].coefficients[i][k - 1]).sum()
                })
                .collect::<Vec<Rational>>()
        }),
    );
    let piece = Matrix::from_rows(branches.len(), kernel_basis(&pairing)).row_space_basis();
    Ok(piece)
}

/// `dim A_m = h^0(⌊mΔ⌋)` for `0 ≤ m ≤ horizon`.
pub fn section_dimensions(curve: &MarkedCurve, horizon: u64) -> Result<Vec<usize>> {
    (0..=horizon)
        .into_par_iter()
        .map(|m| Ok(h_dims(curve, &floor_divisor(&curve.delta(), m))?.0))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{q, UPoly};
    use crate::curve::{Backend, PointSpec};

    fn aff(x: i64, y: i64) -> PointSpec {
        PointSpec::Affine { x: q(x), y: q(y) }
    }

    fn hyper(f: &[i64], points: Vec<PointSpec>, weights: Vec<u64>) -> MarkedCurve {
        let f = UPoly::new(f.iter().map(|&c| q(c)).collect());
        MarkedCurve::new(Backend::Hyperelliptic { f }, points, weights).unwrap()
    }

    fn agree(curve: &MarkedCurve) -> GradedSubalgebra {
        let a = graded_pieces_direct(curve).unwrap();
        let b = graded_pieces_dual(curve).unwrap();
        assert!(a.same_pieces(&b), "{curve:?}");
        assert_eq!(a.m_actual, b.m_actual);
        a
    }

    #[test]
    fn elliptic_pair() {
        let c = MarkedCurve::new(Backend::Elliptic { a: q(0), b: q(1) }, vec![aff(0, 1), aff(2, 3)], vec![1, 1])
            .unwrap();
        let gs = agree(&c);
        assert_eq!(gs.m_actual, 2);
        assert_eq!(gs.dim(1), 1);
        assert_eq!(gs.piece(1).row_vecs()[0].len(), 2);
    }

    #[test]
    fn genus_two_conjugates() {
        let c = hyper(&[1, 0, 0, 0, 0, 1], vec![aff(0, 1), aff(0, -1)], vec![1, 1]);
        let gs = agree(&c);
        assert_eq!(gs.piece(1), Matrix::from_i64(&[&[1, 1]]));
        assert_eq!(gs.dim(2), 1);
        assert_eq!(gs.m_actual, 3);
    }

    #[test]
    fn weighted_genus_two() {
        let c = hyper(&[1, 0, 0, 0, 0, 1], vec![aff(0, 1), PointSpec::Infinity { sign: 1 }], vec![2, 3]);
        let gs = agree(&c);
        assert_eq!(gap_dimension(&gs).unwrap(), 2);
        let dims = section_dimensions(&c, computation_horizon(&c)).unwrap();
        for m in 1..=computation_horizon(&c) {
            assert_eq!(gs.dim(m), dims[m as usize] - dims[m as usize - 1]);
        }
    }
}
