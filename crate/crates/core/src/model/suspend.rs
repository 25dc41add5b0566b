//! Suspension: new branches of large weight with no new conditions.

use super::generators::{branch_maps, minimal_algebra_generators, GeneratorSet};
use super::graded::{cutoff_bound, gap_dimension, GradedSubalgebra, Provenance};
use super::qring::QRing;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct SuspensionSpec {
    pub base: GradedSubalgebra,
    /// Weights `d_{n+1}, …, d_{n+r}` of the added branches.
    pub new_weights: Vec<u64>,
}

impl SuspensionSpec {
    pub fn new(base: GradedSubalgebra, new_weights: Vec<u64>) -> Result<Self> {
        if let Some(&d) = new_weights.iter().find(|&&d| d < base.m_actual) {
            return Err(Error::Precondition(format!(
                "suspension weight {d} is below the stabilization degree {}",
                base.m_actual
            )));
        }
        Ok(SuspensionSpec { base, new_weights })
    }

    pub fn r(&self) -> usize {
        self.new_weights.len()
    }
}

/// Adds the new branches. Below `m_actual` no new weight divides `m`, so
/// `Q'_m = Q_m` and the base pieces carry over unchanged.
pub fn suspend(spec: &SuspensionSpec) -> Result<GradedSubalgebra> {
    let base = &spec.base;
    if spec.new_weights.is_empty() {
        return Ok(base.clone());
    }
    let mut weights = base.qring.weights().to_vec();
    weights.extend(&spec.new_weights);
    let qring = QRing::new(weights)?;
    let m_bound = cutoff_bound(base.genus, qring.weights());
    let gs =
        GradedSubalgebra::from_pieces(qring, base.genus, base.pieces().to_vec(), m_bound, Provenance::Suspension);
    if gs.m_actual != base.m_actual || gap_dimension(&gs)? != gap_dimension(base)? {
        return Err(Error::Consistency("suspension changed the base algebra".into()));
    }
    Ok(gs)
}

/// Describes `Spec 𝔄'` as the base singularity times the origin together
/// with one coordinate axis per new branch.
pub fn suspension_digest(spec: &SuspensionSpec) -> Result<String> {
    suspension_digest_with(spec, &minimal_algebra_generators(&spec.base)?)
}

/// As [`suspension_digest`], with the base embedded by the given generators.
pub fn suspension_digest_with(spec: &SuspensionSpec, base_generators: &GeneratorSet) -> Result<String> {
    let bp = branch_maps(base_generators);
    let axes: Vec<String> = match spec.r() {
        0 => return Ok("no new branches".into()),
        1 => vec!["w".into()],
        r => (1..=r).map(|j| format!("w{j}")).collect(),
    };
    let axes = match axes.len() {
        1 => format!("the {}-axis", axes[0]),
        _ => format!("the {}-axes", axes.join(", ")),
    };
    let base = match bp.render_equation() {
        Some(eq) => format!("the curve {eq} in the uv-plane"),
        None => format!("the base singularity in its {}-dimensional coordinate space", bp.embedding_dimension()),
    };
    Ok(format!("union of {axes} and {base}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Matrix;
    use crate::model::{assemble_abstract, ghost_conditions};

    fn cusp() -> GradedSubalgebra {
        assemble_abstract(QRing::new(vec![1]).unwrap(), 1, vec![Matrix::zeros(0, 1)]).unwrap()
    }

    #[test]
    fn suspended_cusp() {
        let spec = SuspensionSpec::new(cusp(), vec![2]).unwrap();
        let gs = suspend(&spec).unwrap();
        assert_eq!(gs.n(), 2);
        assert_eq!(gs.pieces(), cusp().pieces());
        assert_eq!(gap_dimension(&gs).unwrap(), 1);
        assert_eq!(suspension_digest(&spec).unwrap(), "union of the w-axis and the curve u^3 - v^2 = 0 in the uv-plane");
        let gens = minimal_algebra_generators(&gs).unwrap();
        assert_eq!(gens.rendered(), vec!["x1^2", "x2", "x1^3"]);
        assert!(ghost_conditions(&gs).conditions.iter().all(|c| c.functional.len() == 1));
    }

    #[test]
    fn weight_below_cutoff_rejected() {
        assert!(matches!(SuspensionSpec::new(cusp(), vec![1]), Err(Error::Precondition(_))));
    }

    #[test]
    fn empty_suspension_is_identity() {
        let spec = SuspensionSpec::new(cusp(), vec![]).unwrap();
        assert_eq!(suspend(&spec).unwrap(), cusp());
    }
}
