//! Everything derived from `𝔄` in one record.

use serde_json::{json, Value};

use super::generators::{branch_maps, minimal_algebra_generators, GeneratorSet};
use super::ghost::{ghost_conditions, GhostConditionSet};
use super::graded::{gap_dimension, GradedSubalgebra};
use crate::error::Result;
use crate::param::BranchParam;

#[derive(Clone, Debug)]
pub struct ModelSummary {
    pub algebra: GradedSubalgebra,
    pub generators: GeneratorSet,
    pub branch_maps: BranchParam,
    pub ghost: GhostConditionSet,
    pub gap_dimension: usize,
}

impl ModelSummary {
    pub fn new(algebra: GradedSubalgebra) -> Result<Self> {
        let gap_dimension = gap_dimension(&algebra)?;
        let generators = minimal_algebra_generators(&algebra)?;
        let branch_maps = branch_maps(&generators);
        let ghost = ghost_conditions(&algebra);
        Ok(ModelSummary { algebra, generators, branch_maps, ghost, gap_dimension })
    }

    pub fn to_json(&self) -> Value {
        let gs = &self.algebra;
        json!({
            "weights": gs.qring.weights(),
            "genus": gs.genus,
            "provenance": gs.provenance.name(),
            "M_bound": gs.m_bound,
            "M_actual": gs.m_actual,
            "pieces": gs.pieces_json(),
            "generators": self.generators.to_json(),
            "branch_maps": self.branch_maps.to_json(),
            "ghost_conditions": self.ghost.to_json(),
            "ghost_summary": self.ghost.summary,
            "gap_dimension": self.gap_dimension,
        })
    }
}
