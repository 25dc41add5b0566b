//! Marked curves: elliptic, hyperelliptic and smooth plane quartic backends.

mod divisor;
mod hyper;
mod local;
mod position;
mod quartic;
mod rr;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_integer::Integer;
use num_traits::Zero;
use serde_json::{json, Value};

pub use divisor::{floor_divisor, IntegerDivisor, RationalDivisor};
pub(crate) use local::with_precision;
pub use local::{LocalExpansion, Place};
pub use position::{classify_position, Position, PositionReport};
pub use rr::{
    canonical_jets, h_dims, rr_basis, vanishing_conditions, weierstrass_semigroup_at, LaurentTail, OneFormJet, Section, SectionBasis,
};

use crate::algebra::{q, rational_to_value, rationals_to_value, value_to_rational, Rational, TernaryForm, UPoly};
use crate::error::{Error, Result};
use hyper::HyperModel;
use quartic::QuarticModel;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Backend {
    /// `y^2 = x^3 + a x + b`.
    Elliptic { a: Rational, b: Rational },
    /// `y^2 = f(x)`, coefficients of `f` in ascending degree.
    Hyperelliptic { f: UPoly },
    /// `F(X0, X1, X2) = 0`, homogeneous of degree 4.
    PlaneQuartic { form: TernaryForm },
}

impl Backend {
    pub fn name(&self) -> &'static str {
        match self {
            Backend::Elliptic { .. } => "elliptic",
            Backend::Hyperelliptic { .. } => "hyperelliptic",
            Backend::PlaneQuartic { .. } => "plane_quartic",
        }
    }

    /// True when Riemann–Roch bases can be computed directly.
    pub fn supports_rr_basis(&self) -> bool {
        !matches!(self, Backend::PlaneQuartic { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointSpec {
    Affine { x: Rational, y: Rational },
    /// For even-degree hyperelliptic models the sign selects `y ~ ±sqrt(lc) x^{g+1}`.
    Infinity { sign: i8 },
    Projective([Rational; 3]),
}

impl fmt::Display for PointSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointSpec::Affine { x, y } => write!(f, "({x}, {y})"),
            PointSpec::Infinity { sign: 1 } => write!(f, "∞"),
            PointSpec::Infinity { sign } => write!(f, "∞{}", if *sign > 0 { "+" } else { "-" }),
            PointSpec::Projective(c) => write!(f, "[{}:{}:{}]", c[0], c[1], c[2]),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) enum Model {
    Hyper(HyperModel),
    Quartic(Box<QuarticModel>),
}

type ExpansionKey = (Place, i64);

#[derive(Default)]
struct Memo {
    expansions: RwLock<HashMap<ExpansionKey, Arc<LocalExpansion>>>,
    bases: RwLock<HashMap<IntegerDivisor, Arc<SectionBasis>>>,
    jets: RwLock<Option<Arc<Vec<OneFormJet>>>>,
}

/// A smooth projective curve with distinct rational marked points and weights.
pub struct MarkedCurve {
    backend: Backend,
    genus: usize,
    points: Vec<PointSpec>,
    weights: Vec<u64>,
    model: Model,
    places: Vec<Place>,
    memo: Memo,
}

impl Clone for MarkedCurve {
    fn clone(&self) -> Self {
        MarkedCurve::new(self.backend.clone(), self.points.clone(), self.weights.clone())
            .expect("a validated curve revalidates")
    }
}

impl fmt::Debug for MarkedCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MarkedCurve")
            .field("backend", &self.backend)
            .field("points", &self.points)
            .field("weights", &self.weights)
            .finish()
    }
}

pub(crate) fn check_weights(weights: &[u64]) -> Result<()> {
    if weights.is_empty() {
        return Err(Error::InvalidInput("at least one marked point is required".into()));
    }
    if weights.contains(&0) {
        return Err(Error::InvalidInput("weights must be positive".into()));
    }
    if weights.iter().fold(0u64, |a, &b| a.gcd(&b)) != 1 {
        return Err(Error::Coprimality(weights.to_vec()));
    }
    Ok(())
}

impl MarkedCurve {
    pub fn new(backend: Backend, points: Vec<PointSpec>, weights: Vec<u64>) -> Result<Self> {
        check_weights(&weights)?;
        if points.len() != weights.len() {
            return Err(Error::InvalidInput(format!(
                "{} points but {} weights",
                points.len(),
                weights.len()
            )));
        }
        let (model, places) = match &backend {
            Backend::Elliptic { a, b } => {
                let disc = q(4) * a * a * a + q(27) * b * b;
                if disc.is_zero() {
                    return Err(Error::SingularCurve(format!("y^2 = x^3 + {a}x + {b} has 4a^3 + 27b^2 = 0")));
                }
                let m = HyperModel::new(UPoly::new(vec![b.clone(), a.clone(), q(0), q(1)]))?;
                let places = hyper_places(&m, &points)?;
                (Model::Hyper(m), places)
            }
            Backend::Hyperelliptic { f } => {
                let m = HyperModel::new(f.clone())?;
                let places = hyper_places(&m, &points)?;
                (Model::Hyper(m), places)
            }
            Backend::PlaneQuartic { form } => {
                let coords = points
                    .iter()
                    .map(|p| match p {
                        PointSpec::Projective(c) => Ok(c.clone()),
                        other => Err(Error::InvalidInput(format!("plane quartic points are projective, got {other}"))),
                    })
                    .collect::<Result<Vec<_>>>()?;
                for (i, c) in coords.iter().enumerate() {
                    if c.iter().all(Zero::is_zero) {
                        return Err(Error::InvalidInput("[0:0:0] is not a point".into()));
                    }
                    if !form.eval(c).is_zero() {
                        return Err(Error::PointNotOnCurve(points[i].to_string()));
                    }
                }
                for i in 0..coords.len() {
                    for j in i + 1..coords.len() {
                        if proportional(&coords[i], &coords[j]) {
                            return Err(Error::DuplicatePoint(i, j));
                        }
                    }
                }
                let m = QuarticModel::new(form.clone(), &coords)?;
                let places = coords
                    .iter()
                    .map(|c| {
                        let (x, y) = m.to_chart(c);
                        Place::Affine(x, y)
                    })
                    .collect();
                (Model::Quartic(Box::new(m)), places)
            }
        };
        let genus = match &model {
            Model::Hyper(h) => h.genus,
            Model::Quartic(_) => 3,
        };
        Ok(MarkedCurve { backend, genus, points, weights, model, places, memo: Memo::default() })
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn points(&self) -> &[PointSpec] {
        &self.points
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    /// The same curve and points with different weights.
    pub fn with_weights(&self, weights: Vec<u64>) -> Result<MarkedCurve> {
        MarkedCurve::new(self.backend.clone(), self.points.clone(), weights)
    }

    /// `Δ = Σ (1/d_i) p_i`.
    pub fn delta(&self) -> RationalDivisor {
        RationalDivisor::delta(&self.weights)
    }

    pub(crate) fn model(&self) -> &Model {
        &self.model
    }

    pub(crate) fn place(&self, i: usize) -> &Place {
        &self.places[i]
    }

    pub(crate) fn places(&self) -> &[Place] {
        &self.places
    }

    /// Whether an affine point of the defining model lies on the curve;
    /// always false for plane quartics, whose points are projective.
    pub fn contains_affine(&self, x: &Rational, y: &Rational) -> bool {
        match &self.model {
            Model::Hyper(h) => h.contains(x, y),
            Model::Quartic(_) => false,
        }
    }

    /// Description of the local coordinate at marked point `i`.
    pub fn uniformizer(&self, i: usize) -> String {
        match &self.model {
            Model::Hyper(h) => h.uniformizer(&self.places[i]),
            Model::Quartic(m) => m.uniformizer(&self.places[i]),
        }
    }

    pub fn form_names(&self) -> Vec<String> {
        match &self.model {
            Model::Hyper(h) => (0..h.genus)
                .map(|k| match k {
                    0 => "dx/y".to_string(),
                    1 => "x dx/y".to_string(),
                    k => format!("x^{k} dx/y"),
                })
                .collect(),
            Model::Quartic(m) => m.form_names(),
        }
    }

    /// Local expansion at a place with base precision `prec` (memoized).
    pub fn expansion(&self, place: &Place, prec: i64) -> Result<Arc<LocalExpansion>> {
        let key = (place.clone(), prec);
        if let Some(e) = self.memo.expansions.read().unwrap().get(&key) {
            return Ok(e.clone());
        }
        let e = Arc::new(match &self.model {
            Model::Hyper(h) => h.expand(place, prec)?,
            Model::Quartic(m) => m.expand(place, prec)?,
        });
        self.memo.expansions.write().unwrap().insert(key, e.clone());
        Ok(e)
    }

    pub fn from_json(v: &Value) -> Result<MarkedCurve> {
        let obj = v.as_object().ok_or_else(|| Error::InvalidInput("curve descriptor must be an object".into()))?;
        let backend_name = obj
            .get("backend")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::InvalidInput("missing \"backend\"".into()))?;
        let rat = |key: &str| -> Result<Rational> {
            value_to_rational(obj.get(key).ok_or_else(|| Error::InvalidInput(format!("missing \"{key}\"")))?)
        };
        let backend = match backend_name {
            "elliptic" => Backend::Elliptic { a: rat("a")?, b: rat("b")? },
            "hyperelliptic" => {
                let coeffs = obj
                    .get("f")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::InvalidInput("hyperelliptic needs \"f\" (ascending coefficients)".into()))?
                    .iter()
                    .map(value_to_rational)
                    .collect::<Result<Vec<_>>>()?;
                Backend::Hyperelliptic { f: UPoly::new(coeffs) }
            }
            "plane_quartic" | "plane" => {
                let terms = obj
                    .get("F")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::InvalidInput("plane quartic needs \"F\" (list of terms)".into()))?;
                let mut form = TernaryForm::default();
                for t in terms {
                    let mono = t
                        .get("monomial")
                        .and_then(Value::as_array)
                        .filter(|a| a.len() == 3)
                        .ok_or_else(|| Error::InvalidInput("term needs \"monomial\": [e0, e1, e2]".into()))?;
                    let mut e = [0u32; 3];
                    for (k, x) in mono.iter().enumerate() {
                        e[k] = x
                            .as_u64()
                            .and_then(|v| u32::try_from(v).ok())
                            .ok_or_else(|| Error::InvalidInput("exponents must be small non-negative integers".into()))?;
                    }
                    let c = value_to_rational(
                        t.get("coeff").ok_or_else(|| Error::InvalidInput("term needs \"coeff\"".into()))?,
                    )?;
                    form.add_term(e, c);
                }
                Backend::PlaneQuartic { form }
            }
            other => return Err(Error::InvalidInput(format!("unknown backend \"{other}\""))),
        };
        let points = obj
            .get("points")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::InvalidInput("missing \"points\"".into()))?
            .iter()
            .map(parse_point)
            .collect::<Result<Vec<_>>>()?;
        let weights = match obj.get("weights") {
            None => vec![1; points.len()],
            Some(w) => w
                .as_array()
                .ok_or_else(|| Error::InvalidInput("\"weights\" must be a list".into()))?
                .iter()
                .map(|x| x.as_u64().ok_or_else(|| Error::InvalidInput("weights must be positive integers".into())))
                .collect::<Result<Vec<_>>>()?,
        };
        MarkedCurve::new(backend, points, weights)
    }

    pub fn to_json(&self) -> Value {
        let mut v = match &self.backend {
            Backend::Elliptic { a, b } => json!({"backend": "elliptic", "a": rational_to_value(a), "b": rational_to_value(b)}),
            Backend::Hyperelliptic { f } => json!({"backend": "hyperelliptic", "f": rationals_to_value(f.coeffs())}),
            Backend::PlaneQuartic { form } => json!({
                "backend": "plane_quartic",
                "F": form.terms().map(|(k, c)| json!({"monomial": k, "coeff": rational_to_value(c)})).collect::<Vec<_>>(),
            }),
        };
        v["points"] = Value::Array(
            self.points
                .iter()
                .map(|p| match p {
                    PointSpec::Affine { x, y } => json!({"kind": "affine", "x": rational_to_value(x), "y": rational_to_value(y)}),
                    PointSpec::Infinity { sign } => json!({"kind": "infinity", "sign": sign}),
                    PointSpec::Projective(c) => json!({"kind": "projective", "coords": rationals_to_value(c)}),
                })
                .collect(),
        );
        v["weights"] = json!(self.weights);
        v
    }

    /// Genus, uniformizers and form basis, for reproducibility of outputs.
    pub fn provenance_json(&self) -> Value {
        json!({
            "genus": self.genus,
            "uniformizers": (0..self.n()).map(|i| self.uniformizer(i)).collect::<Vec<_>>(),
            "forms": self.form_names(),
        })
    }
}

fn proportional(a: &[Rational; 3], b: &[Rational; 3]) -> bool {
    (0..3).all(|i| (0..3).all(|j| &a[i] * &b[j] == &a[j] * &b[i]))
}

fn hyper_places(m: &HyperModel, points: &[PointSpec]) -> Result<Vec<Place>> {
    let mut places = Vec::new();
    for p in points {
        let place = match p {
            PointSpec::Affine { x, y } => {
                if !m.contains(x, y) {
                    return Err(Error::PointNotOnCurve(p.to_string()));
                }
                Place::Affine(x.clone(), y.clone())
            }
            PointSpec::Infinity { sign } => {
                if m.odd {
                    Place::Infinity(1)
                } else {
                    if *sign != 1 && *sign != -1 {
                        return Err(Error::InvalidInput("infinity sign must be 1 or -1".into()));
                    }
                    m.infinity_root()?;
                    Place::Infinity(*sign)
                }
            }
            PointSpec::Projective(_) => {
                return Err(Error::InvalidInput("projective points are only used by the plane quartic backend".into()))
            }
        };
        if let Some(j) = places.iter().position(|q| q == &place) {
            return Err(Error::DuplicatePoint(j, places.len()));
        }
        places.push(place);
    }
    Ok(places)
}

fn parse_point(v: &Value) -> Result<PointSpec> {
    let kind = v.get("kind").and_then(Value::as_str).unwrap_or("affine");
    let get = |k: &str| -> Result<Rational> {
        value_to_rational(v.get(k).ok_or_else(|| Error::InvalidInput(format!("point needs \"{k}\"")))?)
    };
    match kind {
        "affine" => Ok(PointSpec::Affine { x: get("x")?, y: get("y")? }),
        "infinity" => {
            let sign = v.get("sign").and_then(Value::as_i64).unwrap_or(1);
            Ok(PointSpec::Infinity { sign: sign.clamp(-2, 2) as i8 })
        }
        "projective" => {
            let c = v
                .get("coords")
                .and_then(Value::as_array)
                .filter(|a| a.len() == 3)
                .ok_or_else(|| Error::InvalidInput("projective point needs \"coords\": [X0, X1, X2]".into()))?;
            Ok(PointSpec::Projective([
                value_to_rational(&c[0])?,
                value_to_rational(&c[1])?,
                value_to_rational(&c[2])?,
            ]))
        }
        other => Err(Error::InvalidInput(format!("unknown point kind \"{other}\""))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_descriptor() {
        let v: Value = serde_json::from_str(
            r#"{"backend":"hyperelliptic","f":[1,0,0,0,0,1],"points":[{"kind":"infinity"}],"weights":[1]}"#,
        )
        .unwrap();
        let c = MarkedCurve::from_json(&v).unwrap();
        assert_eq!(c.genus(), 2);
        assert_eq!(c.uniformizer(0), "x^2/y");
        let again = MarkedCurve::from_json(&c.to_json()).unwrap();
        assert_eq!(again.points(), c.points());
    }

    #[test]
    fn rejects_bad_input() {
        let ell = Backend::Elliptic { a: q(0), b: q(1) };
        let p = PointSpec::Affine { x: q(0), y: q(1) };
        assert_eq!(
            MarkedCurve::new(ell.clone(), vec![p.clone(), PointSpec::Infinity { sign: 1 }], vec![2, 4]).unwrap_err(),
            Error::Coprimality(vec![2, 4])
        );
        assert!(matches!(
            MarkedCurve::new(ell.clone(), vec![PointSpec::Affine { x: q(1), y: q(1) }], vec![1]),
            Err(Error::PointNotOnCurve(_))
        ));
        assert!(matches!(MarkedCurve::new(ell, vec![p.clone(), p], vec![1, 1]), Err(Error::DuplicatePoint(0, 1))));
        let cusp = Backend::Elliptic { a: q(0), b: q(0) };
        assert!(matches!(
            MarkedCurve::new(cusp, vec![PointSpec::Infinity { sign: 1 }], vec![1]),
            Err(Error::SingularCurve(_))
        ));
    }
}
