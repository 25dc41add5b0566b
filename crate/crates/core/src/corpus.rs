//! The worked-example corpus and its runner.
//!
//! Each record names a computation (`kind`), its `input`, the `expected`
//! values and optionally oracle tasks whose frozen results must be
//! reproduced. A record passes when every expected key equals the computed
//! value exactly, every oracle task recomputes its recorded value, and the
//! compared oracle keys agree with the computation.

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::algebra::{
    branch_series, kernel_basis, normalize_leading, rationals_to_value, rref_and_rank, value_to_rational, BiPoly, Matrix,
    Rational,
};
use crate::curve::{
    canonical_jets, classify_position, floor_divisor, h_dims, rr_basis, weierstrass_semigroup_at, IntegerDivisor,
    MarkedCurve, Model, Place, PointSpec, Position, RationalDivisor,
};
use crate::error::{Error, Result};
use crate::family::{
    accepted_dimension, axes_model, central_fibre, chart, family_member, fibre_dimension_report, section_accept,
    FamilyMap,
};
use crate::model::{
    assemble_abstract, branch_maps, ghost_conditions, graded_pieces_direct, graded_pieces_dual, minimal_algebra_generators,
    pieces_from_json, presentation, rescale, rescaling_equivalence, section_dimensions, suspend, suspension_digest_with,
    gap_dimension, generates, Equivalence, GradedSubalgebra, QRing, SuspensionSpec,
};
use crate::oracle;
use crate::semigroup::{monomial_branch, non_weierstrass_semigroup, NumericalSemigroup};

const FILES: [(&str, &str); 6] = [
    ("algebra", include_str!("../corpus/algebra.json")),
    ("semigroups", include_str!("../corpus/semigroups.json")),
    ("curves", include_str!("../corpus/curves.json")),
    ("models", include_str!("../corpus/models.json")),
    ("family", include_str!("../corpus/family.json")),
    ("fuzz", include_str!("../corpus/fuzz.json")),
];

#[derive(Clone, Debug, PartialEq)]
pub struct OracleCheck {
    pub task: Value,
    /// Frozen oracle output.
    pub value: Value,
    /// Keys of `value` that must also match the computed data.
    pub compare: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorpusRecord {
    pub id: String,
    pub citation: String,
    pub kind: String,
    pub input: Value,
    pub expected: Map<String, Value>,
    pub oracles: Vec<OracleCheck>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationRecord {
    pub id: String,
    pub citation: String,
    pub kind: String,
    pub status: Status,
    pub expected: Value,
    pub computed: Value,
    pub oracle: Vec<Value>,
    pub mismatches: Vec<String>,
}

impl VerificationRecord {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "citation": self.citation,
            "kind": self.kind,
            "status": if self.passed() { "pass" } else { "fail" },
            "expected": self.expected,
            "computed": self.computed,
            "oracle": self.oracle,
            "mismatches": self.mismatches,
        })
    }
}

fn parse_record(v: &Value) -> Result<CorpusRecord> {
    let text = |k: &str| {
        v.get(k)
            .and_then(Value::as_str)
            .map(str::to_string)
            .ok_or_else(|| Error::InvalidInput(format!("corpus record needs {k:?}")))
    };
    let id = text("id")?;
    let expected = v
        .get("expected")
        .and_then(Value::as_object)
        .cloned()
        .ok_or_else(|| Error::InvalidInput(format!("{id}: \"expected\" must be an object")))?;
    let oracles = match v.get("oracle") {
        None => Vec::new(),
        Some(Value::Array(list)) => list
            .iter()
            .map(|o| {
                let task = o.get("task").cloned().ok_or_else(|| Error::InvalidInput(format!("{id}: oracle needs \"task\"")))?;
                let value = o.get("value").cloned().ok_or_else(|| Error::InvalidInput(format!("{id}: oracle needs \"value\"")))?;
                let compare = match o.get("compare") {
                    Some(c) => serde_json::from_value(c.clone()).map_err(|e| Error::InvalidInput(format!("{id}: {e}")))?,
                    None => value.as_object().map(|m| m.keys().filter(|k| *k != "task").cloned().collect()).unwrap_or_default(),
                };
                Ok(OracleCheck { task, value, compare })
            })
            .collect::<Result<_>>()?,
        Some(_) => return Err(Error::InvalidInput(format!("{id}: \"oracle\" must be a list"))),
    };
    Ok(CorpusRecord {
        citation: text("citation")?,
        kind: text("kind")?,
        input: v.get("input").cloned().unwrap_or(Value::Null),
        expected,
        oracles,
        id,
    })
}

/// Parses a corpus file `{"records": […]}`.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusRecord>> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("corpus is not JSON: {e}")))?;
    v.get("records")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::InvalidInput("corpus needs \"records\"".into()))?
        .iter()
        .map(parse_record)
        .collect()
}

/// Every record shipped with the library, sorted by id.
pub fn builtin_corpus() -> Result<Vec<CorpusRecord>> {
    let mut out = Vec::new();
    for (name, text) in FILES {
        out.extend(parse_corpus(text).map_err(|e| Error::InvalidInput(format!("corpus file {name}: {e}")))?);
    }
    out.sort_by(|a, b| a.id.cmp(&b.id));
    if let Some(w) = out.windows(2).find(|w| w[0].id == w[1].id) {
        return Err(Error::InvalidInput(format!("duplicate corpus id {}", w[0].id)));
    }
    Ok(out)
}

pub fn run_record(rec: &CorpusRecord) -> VerificationRecord {
    let computed = evaluate(&rec.kind, &rec.input).unwrap_or_else(|e| json!({ "error": e.code(), "message": e.to_string() }));
    let mut mismatches = Vec::new();
    for (k, want) in &rec.expected {
        match computed.get(k) {
            Some(got) if got == want => {}
            Some(got) => mismatches.push(format!("{k}: expected {want}, computed {got}")),
            None => mismatches.push(format!("{k}: expected {want}, not computed")),
        }
    }
    let mut oracle = Vec::new();
    for check in &rec.oracles {
        let recomputed = oracle::run_task(&check.task).unwrap_or_else(|e| json!({ "error": e.code() }));
        if recomputed != check.value {
            mismatches.push(format!("oracle {}: recorded {}, recomputed {recomputed}", check.task["task"], check.value));
        }
        for k in &check.compare {
            if check.value.get(k) != computed.get(k) {
                mismatches.push(format!(
                    "{k}: oracle {} but computed {}",
                    check.value.get(k).unwrap_or(&Value::Null),
                    computed.get(k).unwrap_or(&Value::Null)
                ));
            }
        }
        oracle.push(json!({ "task": check.task, "recorded": check.value, "recomputed": recomputed }));
    }
    VerificationRecord {
        id: rec.id.clone(),
        citation: rec.citation.clone(),
        kind: rec.kind.clone(),
        status: if mismatches.is_empty() { Status::Pass } else { Status::Fail },
        expected: Value::Object(rec.expected.clone()),
        computed,
        oracle,
        mismatches,
    }
}

/// Runs records concurrently; the result is ordered by id.
pub fn run_records(records: &[CorpusRecord]) -> Vec<VerificationRecord> {
    let mut out: Vec<VerificationRecord> = records.par_iter().map(run_record).collect();
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}

pub fn verify_paper() -> Result<Vec<VerificationRecord>> {
    verify_paper_seeded(None)
}

/// Like [`verify_paper`], with the randomized suites reseeded when a seed is given.
pub fn verify_paper_seeded(seed: Option<u64>) -> Result<Vec<VerificationRecord>> {
    let mut records = builtin_corpus()?;
    if let Some(seed) = seed {
        for r in records.iter_mut().filter(|r| r.kind.ends_with("-fuzz")) {
            r.input["seed"] = json!(seed);
        }
    }
    Ok(run_records(&records))
}

// ---------------------------------------------------------------------------
// input helpers

fn field<'a>(v: &'a Value, k: &str) -> Result<&'a Value> {
    v.get(k).ok_or_else(|| Error::InvalidInput(format!("missing {k:?}")))
}

fn get_u64(v: &Value, k: &str) -> Result<u64> {
    field(v, k)?.as_u64().ok_or_else(|| Error::InvalidInput(format!("{k:?} must be a non-negative integer")))
}

fn get_u64s(v: &Value, k: &str) -> Result<Vec<u64>> {
    serde_json::from_value(field(v, k)?.clone()).map_err(|_| Error::InvalidInput(format!("{k:?} must list non-negative integers")))
}

fn get_i64s(v: &Value, k: &str) -> Result<Vec<i64>> {
    serde_json::from_value(field(v, k)?.clone()).map_err(|_| Error::InvalidInput(format!("{k:?} must list integers")))
}

fn get_rationals(v: &Value) -> Result<Vec<Rational>> {
    v.as_array().ok_or_else(|| Error::InvalidInput("expected a list of rationals".into()))?.iter().map(value_to_rational).collect()
}

fn get_matrix(v: &Value) -> Result<Matrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::InvalidInput("matrix must be a list of rows".into()))?
        .iter()
        .map(get_rationals)
        .collect::<Result<Vec<_>>>()?;
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::InvalidInput("matrix rows differ in length".into()));
    }
    Ok(Matrix::from_rows(cols, rows))
}

fn matrix_json(m: &Matrix) -> Value {
    Value::Array(m.row_vecs().iter().map(|r| rationals_to_value(r)).collect())
}

fn curve_input(v: &Value) -> Result<MarkedCurve> {
    MarkedCurve::from_json(field(v, "curve")?)
}

/// Nonzero pieces `[{"degree", "basis"}]` with bases in reduced echelon form.
fn nonzero_pieces(gs: &GradedSubalgebra) -> Value {
    Value::Array(
        gs.pieces()
            .iter()
            .enumerate()
            .filter(|(_, p)| p.rows() > 0)
            .map(|(k, p)| json!({ "degree": k + 1, "basis": matrix_json(p) }))
            .collect(),
    )
}

// ---------------------------------------------------------------------------
// record kinds

/// Runs one record kind on its input, as `verify-paper` does.
pub fn evaluate(kind: &str, input: &Value) -> Result<Value> {
    match kind {
        "rref" => {
            let r = rref_and_rank(&get_matrix(field(input, "matrix")?)?);
            Ok(json!({ "rref": matrix_json(&r.matrix), "pivots": r.pivots, "rank": r.rank }))
        }
        "kernel" => {
            let mut basis = kernel_basis(&get_matrix(field(input, "matrix")?)?);
            basis.iter_mut().for_each(|v| normalize_leading(v));
            Ok(json!({ "kernel": basis.iter().map(|v| rationals_to_value(v)).collect::<Vec<_>>() }))
        }
        "planted-rank" => {
            let (m, _) = oracle::planted_rank(
                get_u64(input, "seed")?,
                get_u64(input, "rows")? as usize,
                get_u64(input, "cols")? as usize,
                get_u64(input, "planted")? as usize,
            );
            Ok(json!({ "rank": rref_and_rank(&m).rank, "shape": [m.rows(), m.cols()] }))
        }
        "kernel-pairing" => kernel_pairing(input),
        "series" => {
            let f = BiPoly::from_json(field(input, "f")?)?;
            let p = get_rationals(field(input, "point")?)?;
            if p.len() != 2 {
                return Err(Error::InvalidInput("\"point\" must be [x0, y0]".into()));
            }
            let s = branch_series(&f, (&p[0], &p[1]), get_u64(input, "order")? as usize)?;
            Ok(json!({ "coefficients": rationals_to_value(&s.coefficients), "variable": s.variable_tag }))
        }
        "quartic-series" => quartic_series(input),
        "semigroup" => semigroup_record(input),
        "curve-semigroup" => {
            let curve = curve_input(input)?;
            let i = get_u64(input, "point")? as usize;
            let s = weierstrass_semigroup_at(&curve, i, 4 * curve.genus() + 2)?;
            Ok(semigroup_json(&s))
        }
        "divisor" => divisor_record(input),
        "jets" => jets_record(input),
        "floor" => {
            let delta = RationalDivisor::delta(&get_u64s(input, "weights")?);
            let table: Vec<String> =
                get_u64s(input, "degrees")?.into_iter().map(|m| floor_divisor(&delta, m).render()).collect();
            Ok(json!({ "floor_table": table }))
        }
        "cutoff" => {
            let weights = get_u64s(input, "weights")?;
            crate::curve::check_weights(&weights)?;
            Ok(json!({ "M_bound": crate::model::cutoff_bound(get_u64(input, "genus")? as usize, &weights) }))
        }
        "model" => model_record(input),
        "suspend" => suspend_record(input),
        "section-accept" => Ok(json!({
            "accepted": section_accept(&get_u64s(input, "pole_orders")?, get_u64(input, "m")?, &get_u64s(input, "weights")?)
        })),
        "section-count" => section_count(input),
        "fibre-report" => {
            let curve = curve_input(input)?;
            let report = fibre_dimension_report(&curve, get_u64(input, "horizon")?)?;
            let mut out = report.to_json();
            out["dims_A"] = json!(section_dimensions(&curve, get_u64(input, "horizon")?)?);
            Ok(out)
        }
        "chart" => {
            let curve = curve_input(input)?;
            let charts = (0..curve.n()).map(|i| chart(&curve, i)).collect::<Result<Vec<_>>>()?;
            Ok(json!({
                "labels": charts.iter().map(|c| c.label.clone()).collect::<Vec<_>>(),
                "relations": charts.iter().map(|c| c.render()).collect::<Vec<_>>(),
                "weighted_homogeneous": charts.iter().all(|c| c.is_weighted_homogeneous()),
            }))
        }
        "central-fibre" => central_fibre_record(input),
        "family-member" => {
            let curve = curve_input(input)?;
            let fm = FamilyMap::from_polynomials(&curve, oracle::polynomial_pairs(input)?)?;
            let t = value_to_rational(field(input, "t")?)?;
            let at = get_rationals(field(input, "at")?)?;
            if at.len() != 2 {
                return Err(Error::InvalidInput("\"at\" must be [x, y]".into()));
            }
            let z = PointSpec::Affine { x: at[0].clone(), y: at[1].clone() };
            Ok(json!({ "value": rationals_to_value(&family_member(&fm, &t, &z)?) }))
        }
        "axes" => {
            let a = axes_model(get_u64(input, "n")? as usize)?;
            Ok(json!({
                "hilbert_polynomial": [a.hilbert.0, a.hilbert.1],
                "rendered": a.render_hilbert(),
                "relations": a.relations.len(),
                "local_ring": a.local_ring_digest(),
            }))
        }
        "gap-fuzz" => gap_fuzz(get_u64(input, "seed")?, get_u64(input, "count")? as usize),
        "closure-fuzz" => closure_fuzz(get_u64(input, "seed")?, get_u64(input, "count")? as usize),
        other => Err(Error::InvalidInput(format!("unknown record kind {other:?}"))),
    }
}

fn semigroup_json(s: &NumericalSemigroup) -> Value {
    let branch = monomial_branch(s);
    let mut out = json!({
        "minimal_generators": s.minimal_generators(),
        "gaps": s.gaps(),
        "genus": s.genus(),
        "branch": branch.render_branch(0),
    });
    if let Some(eq) = s.render_plane_equation() {
        out["equation"] = json!(eq);
    }
    out
}

fn semigroup_record(input: &Value) -> Result<Value> {
    let s = match input.get("non_weierstrass") {
        Some(g) => non_weierstrass_semigroup(g.as_u64().ok_or_else(|| Error::InvalidInput("genus must be an integer".into()))?)?,
        None => NumericalSemigroup::from_generators(&get_u64s(input, "generators")?)?,
    };
    let mut out = semigroup_json(&s);
    if let Some(n) = input.get("members_up_to").and_then(Value::as_u64) {
        out["members"] = json!(s.members_up_to(n));
    }
    Ok(out)
}

fn divisor_record(input: &Value) -> Result<Value> {
    let curve = curve_input(input)?;
    let d = IntegerDivisor::new(get_i64s(input, "divisor")?);
    if d.coeffs().len() != curve.n() {
        return Err(Error::InvalidInput("divisor length differs from the number of points".into()));
    }
    let (h0, h1) = h_dims(&curve, &d)?;
    let mut out = json!({ "h0": h0, "h1": h1, "divisor": d.render() });
    if curve.backend().supports_rr_basis() && d.is_effective() {
        let basis = rr_basis(&curve, &d)?;
        out["basis"] = json!(basis.elements.iter().map(|s| s.description.clone()).collect::<Vec<_>>());
        out["pole_orders"] = json!(basis
            .elements
            .iter()
            .map(|s| s.tails.iter().map(|t| t.order().map_or(0, |o| -o)).collect::<Vec<_>>())
            .collect::<Vec<_>>());
    }
    Ok(out)
}

/// Vanishing orders at each marked point: of each canonical form, and the
/// set achieved by the span of all forms.
fn jets_record(input: &Value) -> Result<Value> {
    let curve = curve_input(input)?;
    let order = get_u64(input, "order")? as usize;
    let jets = canonical_jets(&curve, order)?;
    let at = |i: usize| {
        let m = Matrix::from_rows(order + 1, jets.iter().map(|j| j.coefficients[i][..=order].to_vec()));
        (jets.iter().map(|j| j.order_at(i)).collect::<Vec<_>>(), rref_and_rank(&m).pivots)
    };
    // With a "point" the report covers that point only.
    let (form_orders, profiles): (Value, Value) = match input.get("point") {
        Some(_) => {
            let i = get_u64(input, "point")? as usize;
            if i >= curve.n() {
                return Err(Error::InvalidInput(format!("point index {i} out of range")));
            }
            let (o, p) = at(i);
            (json!(o), json!(p))
        }
        None => {
            let (o, p): (Vec<_>, Vec<_>) = (0..curve.n()).map(at).unzip();
            (json!(o), json!(p))
        }
    };
    Ok(json!({
        "forms": jets.iter().map(|j| j.name.clone()).collect::<Vec<_>>(),
        "form_orders": form_orders,
        "order_profile": profiles,
    }))
}

/// The pairing of regular forms against tangent vectors in degree 1, whose
/// kernel is `𝔄_1`.
fn kernel_pairing(input: &Value) -> Result<Value> {
    let curve = curve_input(input)?;
    let jets = canonical_jets(&curve, 1)?;
    let m = Matrix::from_rows(curve.n(), jets.iter().map(|j| (0..curve.n()).map(|i| j.coefficients[i][0].clone()).collect()));
    let kernel = kernel_basis(&m);
    let dims = section_dimensions(&curve, 1)?;
    Ok(json!({
        "pairing": matrix_json(&m),
        "kernel_dim": kernel.len(),
        "dims_A": dims,
        "consistent": kernel.len() == dims[1] - dims[0],
    }))
}

fn quartic_series(input: &Value) -> Result<Value> {
    let curve = curve_input(input)?;
    let i = get_u64(input, "point")? as usize;
    let order = get_u64(input, "order")? as usize;
    let Model::Quartic(q) = curve.model() else {
        return Err(Error::InvalidInput("quartic-series needs a plane quartic".into()));
    };
    let Place::Affine(x0, y0) = curve.place(i).clone() else { unreachable!("quartic places are affine") };
    let s = branch_series(&q.affine, (&x0, &y0), order)?;
    Ok(json!({
        "chart": q.chart,
        "chart_equation": format!("{} = 0", q.affine),
        "f": q.affine.to_json(),
        "point": rationals_to_value(&[x0, y0]),
        "coefficients": rationals_to_value(&s.coefficients),
        "cubic_term_nonzero": s.coefficients.get(3).is_some_and(|c| *c != Rational::from_integer(0.into())),
    }))
}

/// The algebra of a model input: `{"curve": …}` via the dual path, or
/// `{"abstract": {"weights", "genus", "pieces"}}` validated.
fn model_algebra(input: &Value) -> Result<(GradedSubalgebra, Option<MarkedCurve>)> {
    if let Some(a) = input.get("abstract") {
        let weights = get_u64s(a, "weights")?;
        let qring = QRing::new(weights.clone())?;
        let pieces = pieces_from_json(&weights, field(a, "pieces")?)?;
        return Ok((assemble_abstract(qring, get_u64(a, "genus")? as usize, pieces)?, None));
    }
    let curve = curve_input(input)?;
    Ok((graded_pieces_dual(&curve)?, Some(curve)))
}

fn parse_vectors(v: &Value) -> Result<Vec<(u64, Vec<Rational>)>> {
    v.as_array()
        .ok_or_else(|| Error::InvalidInput("\"presentation\" must be a list".into()))?
        .iter()
        .map(|e| Ok((get_u64(e, "degree")?, get_rationals(field(e, "vector")?)?)))
        .collect()
}

fn model_record(input: &Value) -> Result<Value> {
    let (computed, curve) = model_algebra(input)?;
    let mut out = Map::new();
    if let Some(curve) = &curve {
        if curve.n() >= 2 {
            let pos = classify_position(curve)?;
            out.insert("position".into(), json!(if pos.position == Position::General { "general" } else { "special" }));
        }
        if curve.backend().supports_rr_basis() {
            let direct = graded_pieces_direct(curve)?;
            out.insert("paths_agree".into(), json!(direct.same_pieces(&computed)));
        }
        if let Some(h) = input.get("dims_horizon").and_then(Value::as_u64) {
            out.insert("dims_A".into(), json!(section_dimensions(curve, h)?));
        }
    }
    // Compare against a stated target up to rescaling the branch parameters.
    let gs = match input.get("target") {
        None => computed,
        Some(t) => {
            let target = GradedSubalgebra::from_target(&computed, pieces_from_json(computed.qring.weights(), t)?);
            match rescaling_equivalence(&computed, &target) {
                Equivalence::Equivalent(r) => {
                    out.insert("rescaling".into(), r.to_json(&computed));
                    rescale(&computed, &r)?
                }
                Equivalence::NotEquivalent => {
                    out.insert("rescaling".into(), json!("not equivalent"));
                    computed
                }
                Equivalence::Undetermined => {
                    out.insert("rescaling".into(), json!("undetermined"));
                    computed
                }
            }
        }
    };
    let delta = RationalDivisor::delta(gs.qring.weights());
    out.insert("genus".into(), json!(gs.genus));
    out.insert("weights".into(), json!(gs.qring.weights()));
    out.insert("M_bound".into(), json!(gs.m_bound));
    out.insert("M_actual".into(), json!(gs.m_actual));
    out.insert("dims".into(), json!((1..gs.m_actual).map(|m| gs.dim(m)).collect::<Vec<_>>()));
    out.insert("floor_table".into(), json!((0..=gs.m_actual).map(|m| floor_divisor(&delta, m).render()).collect::<Vec<_>>()));
    out.insert("pieces".into(), nonzero_pieces(&gs));
    out.insert("gap".into(), json!(gs.raw_gap()));
    out.insert("gap_dimension".into(), json!(gap_dimension(&gs)?));
    out.insert("closed".into(), json!(gs.closure_violation().is_none()));
    let minimal = minimal_algebra_generators(&gs)?;
    let mut sorted = minimal.rendered();
    sorted.sort();
    out.insert("generators".into(), json!(sorted));
    out.insert("generator_degrees".into(), json!(minimal.degrees()));
    out.insert("generator_vectors".into(), minimal.to_json());
    let shown = match input.get("presentation") {
        None => minimal,
        Some(p) => {
            let set = presentation(&gs, parse_vectors(p)?)?;
            out.insert("presentation".into(), json!(set.rendered()));
            out.insert("presentation_generates".into(), json!(generates(&gs, &set)));
            set
        }
    };
    let maps = branch_maps(&shown);
    out.insert("branch_maps".into(), json!((0..gs.n()).map(|i| maps.render_branch(i)).collect::<Vec<_>>()));
    if let Some(eq) = maps.render_equation() {
        out.insert("equation".into(), json!(eq));
    }
    let ghost = ghost_conditions(&gs);
    out.insert("ghost".into(), json!(ghost.conditions.iter().map(|c| c.digest.clone()).collect::<Vec<_>>()));
    out.insert("ghost_constraints".into(), json!(ghost.conditions.iter().map(|c| c.constraint.clone()).collect::<Vec<_>>()));
    out.insert("ghost_summary".into(), json!(ghost.summary));
    out.insert("ghost_conditions".into(), ghost.to_json());
    Ok(Value::Object(out))
}

fn suspend_record(input: &Value) -> Result<Value> {
    let base_input = field(input, "base")?;
    let (base, _) = model_algebra(base_input)?;
    let base = match base_input.get("target") {
        None => base,
        Some(t) => {
            let target = GradedSubalgebra::from_target(&base, pieces_from_json(base.qring.weights(), t)?);
            match rescaling_equivalence(&base, &target) {
                Equivalence::Equivalent(r) => rescale(&base, &r)?,
                _ => return Err(Error::Consistency("base algebra does not match its target".into())),
            }
        }
    };
    let base_gens = match base_input.get("presentation") {
        None => minimal_algebra_generators(&base)?,
        Some(p) => presentation(&base, parse_vectors(p)?)?,
    };
    let spec = SuspensionSpec::new(base.clone(), get_u64s(input, "new_weights")?)?;
    let s = suspend(&spec)?;
    let preserved = (1..base.m_actual).all(|m| s.piece(m) == base.piece(m));
    let gens = minimal_algebra_generators(&s)?;
    let mut rendered = gens.rendered();
    rendered.sort();
    let ghost = ghost_conditions(&s);
    Ok(json!({
        "digest": suspension_digest_with(&spec, &base_gens)?,
        "M_actual": s.m_actual,
        "base_M_actual": base.m_actual,
        "pieces_preserved": preserved,
        "gap": s.raw_gap(),
        "base_gap": base.raw_gap(),
        "generators": rendered,
        "branch_maps": (0..s.n()).map(|i| branch_maps(&gens).render_branch(i)).collect::<Vec<_>>(),
        "ghost_constraints": ghost.conditions.iter().map(|c| c.constraint.clone()).collect::<Vec<_>>(),
    }))
}

/// Counts functions accepted by the pole-order rule in each degree and
/// compares with `h^0(⌊mΔ⌋)`.
fn section_count(input: &Value) -> Result<Value> {
    let curve = curve_input(input)?;
    let top = get_u64(input, "up_to")?;
    let accepted = (0..=top).map(|m| accepted_dimension(&curve, m, top)).collect::<Result<Vec<_>>>()?;
    let dims = section_dimensions(&curve, top)?;
    Ok(json!({ "accepted": accepted, "dims_A": dims, "matches": accepted == dims }))
}

fn central_fibre_record(input: &Value) -> Result<Value> {
    let curve = curve_input(input)?;
    let fm = match input.get("pole_orders") {
        Some(_) => FamilyMap::from_pole_orders(&curve, &get_u64s(input, "pole_orders")?)?,
        None => FamilyMap::from_polynomials(&curve, oracle::polynomial_pairs(input)?)?,
    };
    let f0 = central_fibre(&fm);
    let v_line: Vec<u64> = f0.coordinates[1..].iter().map(|c| c.v).collect();
    // A common factor of the pole orders scales every exponent of the branch.
    let poles = fm.pole_orders();
    let g = poles.iter().fold(0, |a, &b| num_integer::gcd(a, b));
    let s = NumericalSemigroup::from_generators(&poles.iter().map(|p| p / g).collect::<Vec<_>>())?;
    let branch: Vec<u64> = monomial_branch(&s).maps[0].iter().map(|m| m.exponent * g).collect();
    Ok(json!({
        "rendered": f0.render(),
        "exponents": f0.coordinates.iter().map(|c| [c.u, c.v]).collect::<Vec<_>>(),
        "coefficients_nonzero": f0.coordinates.iter().all(|c| c.coeff != Rational::from_integer(0.into())),
        "pole_orders": poles,
        "leading": rationals_to_value(&fm.leading_coefficients()),
        "monomial_consistent": v_line == branch,
    }))
}

// ---------------------------------------------------------------------------
// randomized suites

struct FuzzCurve {
    descriptor: Value,
    points: Vec<Value>,
    /// The Riemann–Roch oracle applies (elliptic or odd-degree model).
    oracle: bool,
}

fn fuzz_curves() -> Vec<FuzzCurve> {
    let aff = |x: i64, y: i64| json!({"kind": "affine", "x": x, "y": y});
    let inf = json!({"kind": "infinity"});
    let proj = |c: [i64; 3]| json!({"kind": "projective", "coords": c});
    let hyper_pts = vec![aff(0, 1), aff(0, -1), aff(1, 1), aff(1, -1), aff(-1, 1), aff(-1, -1), inf.clone()];
    vec![
        FuzzCurve {
            descriptor: json!({"backend": "elliptic", "a": 0, "b": 1}),
            points: vec![aff(0, 1), aff(0, -1), aff(2, 3), aff(2, -3), aff(-1, 0), inf.clone()],
            oracle: true,
        },
        FuzzCurve {
            descriptor: json!({"backend": "hyperelliptic", "f": [1, -1, 0, 0, 0, 1]}),
            points: hyper_pts.clone(),
            oracle: true,
        },
        FuzzCurve {
            descriptor: json!({"backend": "hyperelliptic", "f": [1, -1, 0, 0, 0, 0, 0, 1]}),
            points: hyper_pts,
            oracle: true,
        },
        FuzzCurve {
            descriptor: json!({"backend": "plane_quartic", "F": [
                {"monomial": [3, 0, 1], "coeff": 1}, {"monomial": [0, 4, 0], "coeff": -1}, {"monomial": [0, 0, 4], "coeff": 1}
            ]}),
            points: vec![proj([0, 1, 1]), proj([0, 1, -1]), proj([1, 0, 0]), proj([-1, 0, 1])],
            oracle: false,
        },
    ]
}

/// Draws `count` admissible inputs (`g ≤ 3`, `n ≤ 4`, `d_i ≤ 4`, gcd 1).
pub fn fuzz_inputs(seed: u64, count: usize) -> Vec<Value> {
    let curves = fuzz_curves();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let c = &curves[rng.gen_range(0..curves.len())];
            let n = rng.gen_range(1..=c.points.len().min(4));
            let mut idx: Vec<usize> = (0..c.points.len()).collect();
            for k in 0..n {
                let j = rng.gen_range(k..idx.len());
                idx.swap(k, j);
            }
            let weights = loop {
                let w: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=4)).collect();
                if w.iter().fold(0, |a: u64, b| a.gcd(b)) == 1 {
                    break w;
                }
            };
            let mut d = c.descriptor.clone();
            d["points"] = Value::Array(idx[..n].iter().map(|&i| c.points[i].clone()).collect());
            d["weights"] = json!(weights);
            json!({ "curve": d, "oracle": c.oracle })
        })
        .collect()
}

/// All gap-count checks for one input; returns the failed checks.
fn check_fuzz_input(input: &Value) -> Result<Vec<String>> {
    let curve = curve_input(input)?;
    let mut failed = Vec::new();
    let gs = graded_pieces_dual(&curve)?;
    let g = curve.genus();
    if gs.raw_gap() != g {
        failed.push(format!("gap {} != genus {g}", gs.raw_gap()));
    }
    if gs.m_actual > gs.m_bound {
        failed.push(format!("M_actual {} > M_bound {}", gs.m_actual, gs.m_bound));
    }
    if gs.closure_violation().is_some() {
        failed.push("closure".into());
    }
    let weights = curve.weights();
    if !oracle::closure_by_multiplication(weights, gs.pieces()) || oracle::gap_by_count(weights, gs.pieces()) != g {
        failed.push("oracle closure or gap".into());
    }
    let horizon = gs.m_bound + 1;
    let report = fibre_dimension_report(&curve, horizon)?;
    if !report.pass {
        failed.push("fibre identity".into());
    }
    if input["oracle"] == json!(true) {
        let dims = oracle::section_dimensions_by_vanishing(&curve, horizon)?;
        if (1..=horizon as usize).any(|m| dims[m] - dims[m - 1] != gs.dim(m as u64)) {
            failed.push("fibre identity against the oracle".into());
        }
    }
    if curve.backend().supports_rr_basis() && !graded_pieces_direct(&curve)?.same_pieces(&gs) {
        failed.push("path agreement".into());
    }
    Ok(failed)
}

fn gap_fuzz(seed: u64, count: usize) -> Result<Value> {
    let inputs = fuzz_inputs(seed, count);
    let results: Vec<(usize, Result<Vec<String>>)> =
        inputs.par_iter().enumerate().map(|(k, input)| (k, check_fuzz_input(input))).collect();
    let mut failures = Vec::new();
    for (k, r) in results {
        match r {
            Ok(f) if f.is_empty() => {}
            Ok(f) => failures.push(json!({ "input": inputs[k]["curve"], "failed": f })),
            Err(e) => failures.push(json!({ "input": inputs[k]["curve"], "failed": [e.to_string()] })),
        }
    }
    let mut backends = Map::new();
    for i in &inputs {
        let name = i["curve"]["backend"].as_str().unwrap_or("").to_string();
        *backends.entry(name).or_insert(json!(0)) = json!(backends.get(&name).and_then(Value::as_u64).unwrap_or(0) + 1);
    }
    Ok(json!({
        "inputs": count,
        "passed": count - failures.len(),
        "failures": failures,
        "backends": backends,
        "max_genus": inputs.iter().map(|i| match i["curve"]["backend"].as_str() {
            Some("elliptic") => 1,
            Some("plane_quartic") => 3,
            _ => (i["curve"]["f"].as_array().map_or(0, Vec::len) - 2) / 2,
        }).max(),
    }))
}

/// Random pieces with a random genus claim: validation must accept exactly
/// when the brute-force oracle finds them closed with the claimed gap.
fn closure_fuzz(seed: u64, count: usize) -> Result<Value> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut agreements = 0;
    let mut accepted = 0;
    let mut disagreements = Vec::new();
    for _ in 0..count {
        let weights = loop {
            let n = rng.gen_range(1..=3);
            let w: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
            if w.iter().fold(0, |a: u64, b| a.gcd(b)) == 1 {
                break w;
            }
        };
        let top = rng.gen_range(1..=4);
        let pieces = oracle::random_pieces(&mut rng, &weights, top);
        let genus = rng.gen_range(1..=3);
        let want = oracle::closure_by_multiplication(&weights, &pieces) && oracle::gap_by_count(&weights, &pieces) == genus;
        let got = assemble_abstract(QRing::new(weights.clone())?, genus, pieces.clone()).is_ok();
        accepted += got as usize;
        if want == got {
            agreements += 1;
        } else {
            disagreements.push(json!({
                "weights": weights,
                "genus": genus,
                "pieces": pieces.iter().map(matrix_json).collect::<Vec<_>>(),
                "oracle": want,
                "engine": got,
            }));
        }
    }
    Ok(json!({
        "inputs": count,
        "agreements": agreements,
        "disagreements": disagreements,
        "both_outcomes": accepted > 0 && accepted < count,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_parses_with_unique_ids() {
        let c = builtin_corpus().unwrap();
        assert!(c.len() > 40);
        for r in &c {
            assert!(!r.citation.is_empty(), "{}", r.id);
        }
    }

    #[test]
    fn failing_record_reports_mismatch() {
        let rec = parse_record(&json!({
            "id": "t", "citation": "c", "kind": "semigroup",
            "input": {"generators": [2, 5]}, "expected": {"gaps": [1, 2]}
        }))
        .unwrap();
        let v = run_record(&rec);
        assert!(!v.passed());
        assert_eq!(v.mismatches.len(), 1);
    }

    #[test]
    fn errors_are_reported_as_codes() {
        let rec = parse_record(&json!({
            "id": "t", "citation": "c", "kind": "cutoff",
            "input": {"genus": 1, "weights": [2, 4]}, "expected": {"error": "coprimality"}
        }))
        .unwrap();
        assert!(run_record(&rec).passed());
    }

    #[test]
    fn fuzz_inputs_are_admissible() {
        for i in fuzz_inputs(3, 50) {
            let c = curve_input(&i).unwrap();
            assert!(c.n() <= 4 && c.genus() <= 3);
            assert!(c.weights().iter().all(|&d| (1..=4).contains(&d)));
        }
    }
}
