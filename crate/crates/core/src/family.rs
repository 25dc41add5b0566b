//! The smoothing side: chart relations, the pole-order rule, the model
//! family `f(z, t)` with its central fibre, and `n` concurrent lines.

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::algebra::{kernel_basis, rational_to_value, rationals_to_value, rpow, Matrix, Rational, UPoly};
use crate::curve::{floor_divisor, rr_basis, with_precision, MarkedCurve, Place, PointSpec};
use crate::error::{Error, Result};
use crate::model::graded_pieces_dual;

/// Local chart `R_i[t, w_i]/(z_i w_i - t^{d_i})` near the node at `p_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartPresentation {
    pub branch: usize,
    pub weight: u64,
    /// Weights of `z`, `t`, `w`.
    pub grading: [u64; 3],
    /// Exponents of `(z, t, w)` in the two terms of the relation.
    pub relation: [[u64; 3]; 2],
    pub label: String,
}

impl ChartPresentation {
    pub fn render(&self) -> String {
        match self.weight {
            1 => "z*w = t".into(),
            d => format!("z*w = t^{d}"),
        }
    }

    pub fn is_weighted_homogeneous(&self) -> bool {
        let deg = |e: &[u64; 3]| e.iter().zip(&self.grading).map(|(a, b)| a * b).sum::<u64>();
        deg(&self.relation[0]) == deg(&self.relation[1])
    }

    pub fn to_json(&self) -> Value {
        json!({
            "branch": self.branch + 1,
            "relation": self.render(),
            "grading": { "z": self.grading[0], "t": self.grading[1], "w": self.grading[2] },
            "singularity": self.label,
        })
    }
}

pub fn chart(curve: &MarkedCurve, i: usize) -> Result<ChartPresentation> {
    let d = *curve.weights().get(i).ok_or(Error::IndexOutOfRange { index: i, len: curve.n() })?;
    let c = ChartPresentation {
        branch: i,
        weight: d,
        grading: [0, 1, d],
        relation: [[1, 0, 1], [0, d, 0]],
        label: format!("A_{}", d - 1),
    };
    debug_assert!(c.is_weighted_homogeneous());
    Ok(c)
}

/// `F t^m` is regular on the whole family exactly when `α_i ≤ ⌊m/d_i⌋`,
/// where `α_i` is the pole order of `F` at `p_i`.
pub fn section_accept(pole_orders: &[u64], m: u64, weights: &[u64]) -> bool {
    pole_orders.iter().zip(weights).all(|(&a, &d)| a <= m / d)
}

/// Dimension of the space of functions in `H^0(⌊ambient Δ⌋)` accepted in
/// degree `m`. Every basis vector of that space is checked against
/// [`section_accept`] using its own pole orders.
pub fn accepted_dimension(curve: &MarkedCurve, m: u64, ambient: u64) -> Result<usize> {
    let delta = curve.delta();
    let big = floor_divisor(&delta, ambient.max(m));
    let basis = rr_basis(curve, &big)?;
    let n = curve.n();
    let mut conditions = Matrix::zeros(0, basis.dim());
    for i in 0..n {
        let allowed = (m / curve.weights()[i]) as i64;
        for e in -big.coeff(i)..-allowed {
            conditions.push_row(basis.elements.iter().map(|s| s.tails[i].coeff(e)).collect());
        }
    }
    let kernel = kernel_basis(&conditions);
    for v in &kernel {
        let orders: Vec<u64> = (0..n)
            .map(|i| {
                let lo = -big.coeff(i);
                (lo..=0)
                    .find(|&e| {
                        let c: Rational = v.iter().zip(&basis.elements).map(|(a, s)| a * s.tails[i].coeff(e)).sum();
                        !c.is_zero()
                    })
                    .map_or(0, |e| (-e) as u64)
            })
            .collect();
        if !section_accept(&orders, m, curve.weights()) {
            return Err(Error::Consistency(format!("degree {m}: a kernel section has pole orders {orders:?}")));
        }
    }
    Ok(kernel.len())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibreRow {
    pub m: u64,
    pub dim_a: usize,
    pub dim_gr: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibreReport {
    pub rows: Vec<FibreRow>,
    pub pass: bool,
}

impl FibreReport {
    pub fn to_json(&self) -> Value {
        json!({
            "degrees": self.rows.iter().map(|r| json!({
                "m": r.m, "dimA": r.dim_a, "dimGr": r.dim_gr, "ok": r.ok,
            })).collect::<Vec<_>>(),
            "pass": self.pass,
        })
    }
}

/// Compares `dim 𝔄_m` with `h^0(⌊mΔ⌋) - h^0(⌊(m-1)Δ⌋)` for `m ≤ horizon`:
/// the special fibre of the model family is cut out by `t`.
pub fn fibre_dimension_report(curve: &MarkedCurve, horizon: u64) -> Result<FibreReport> {
    let gs = graded_pieces_dual(curve)?;
    let dims = crate::model::section_dimensions(curve, horizon)?;
    let rows: Vec<FibreRow> = (0..=horizon)
        .map(|m| {
            let prev = if m == 0 { 0 } else { dims[m as usize - 1] };
            let dim_a = dims[m as usize];
            let dim_gr = gs.dim(m);
            FibreRow { m, dim_a, dim_gr, ok: dim_a == prev + dim_gr }
        })
        .collect();
    let pass = rows.iter().all(|r| r.ok);
    let report = FibreReport { rows, pass };
    if !pass {
        return Err(Error::Consistency(format!("fibre dimension identity fails: {}", report.to_json())));
    }
    Ok(report)
}

/// A function regular away from the single marked point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyFunction {
    /// `(p(x) + r(x) y) / den(x)`.
    pub p: UPoly,
    pub r: UPoly,
    pub den: UPoly,
    pub pole_order: u64,
    pub leading: Rational,
    pub description: String,
}

/// `f(z, t) = [1 : t^{m_1} h_1(z) : … : t^{m_r} h_r(z)]` for one marked point.
#[derive(Clone, Debug)]
pub struct FamilyMap {
    pub curve: MarkedCurve,
    pub functions: Vec<FamilyFunction>,
}

fn render_poly_function(p: &UPoly, r: &UPoly) -> String {
    let mut parts = Vec::new();
    if !p.is_zero() {
        parts.push(p.to_string());
    }
    if !r.is_zero() {
        parts.push(if r.degree() == Some(0) && r.leading().is_one() { "y".into() } else { format!("({r})*y") });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

impl FamilyMap {
    fn check_curve(curve: &MarkedCurve) -> Result<()> {
        if curve.n() != 1 {
            return Err(Error::Precondition("the model family uses exactly one marked point".into()));
        }
        if !curve.backend().supports_rr_basis() {
            return Err(Error::UnsupportedBackend {
                backend: curve.backend().name(),
                what: "model family maps".into(),
            });
        }
        Ok(())
    }

    fn finish(curve: &MarkedCurve, mut functions: Vec<FamilyFunction>) -> Result<FamilyMap> {
        if functions.is_empty() {
            return Err(Error::InvalidInput("at least one function is required".into()));
        }
        if let Some(f) = functions.iter().find(|f| f.pole_order == 0) {
            return Err(Error::InvalidInput(format!("{} has no pole at the marked point", f.description)));
        }
        functions.sort_by_key(|f| f.pole_order);
        Ok(FamilyMap { curve: curve.clone(), functions })
    }

    /// Functions `p(x) + r(x) y`, which are regular on the affine part;
    /// the marked point must be at infinity.
    pub fn from_polynomials(curve: &MarkedCurve, polys: Vec<(UPoly, UPoly)>) -> Result<FamilyMap> {
        Self::check_curve(curve)?;
        let place = curve.place(0).clone();
        if !matches!(place, Place::Infinity(_)) {
            return Err(Error::Precondition("polynomial functions need the marked point at infinity".into()));
        }
        let functions = polys
            .into_iter()
            .map(|(p, r)| {
                let description = render_poly_function(&p, &r);
                let (v, c) = with_precision(16, |prec| {
                    let e = curve.expansion(&place, prec)?;
                    let h = e.x.compose_poly(&p).add(&e.x.compose_poly(&r).mul(&e.y));
                    Ok(h.leading())
                })?;
                if v > 0 {
                    return Err(Error::InvalidInput(format!("{description} vanishes at the marked point")));
                }
                Ok(FamilyFunction {
                    p,
                    r,
                    den: UPoly::constant(Rational::one()),
                    pole_order: (-v) as u64,
                    leading: c,
                    description,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::finish(curve, functions)
    }

    /// One function of each requested exact pole order, taken from the
    /// Riemann–Roch basis.
    pub fn from_pole_orders(curve: &MarkedCurve, orders: &[u64]) -> Result<FamilyMap> {
        Self::check_curve(curve)?;
        let functions = orders
            .iter()
            .map(|&m| {
                let basis = rr_basis(curve, &crate::curve::IntegerDivisor::new(vec![m as i64]))?;
                let s = basis
                    .elements
                    .iter()
                    .find(|s| s.tails[0].order() == Some(-(m as i64)))
                    .ok_or_else(|| Error::InvalidInput(format!("{m} is a gap: no function has exactly this pole order")))?;
                Ok(FamilyFunction {
                    p: s.p.clone(),
                    r: s.r.clone(),
                    den: s.den.clone(),
                    pole_order: m,
                    leading: s.tails[0].coeff(-(m as i64)),
                    description: s.description.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::finish(curve, functions)
    }

    pub fn pole_orders(&self) -> Vec<u64> {
        self.functions.iter().map(|f| f.pole_order).collect()
    }

    pub fn leading_coefficients(&self) -> Vec<Rational> {
        self.functions.iter().map(|f| f.leading.clone()).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "uniformizer": self.curve.uniformizer(0),
            "functions": self.functions.iter().map(|f| json!({
                "function": f.description,
                "pole_order": f.pole_order,
                "leading_coefficient": rational_to_value(&f.leading),
            })).collect::<Vec<_>>(),
        })
    }
}

/// One coordinate `coeff · u^a v^b` of the central fibre.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibreMonomial {
    pub coeff: Rational,
    pub u: u64,
    pub v: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralFibre {
    pub coordinates: Vec<FibreMonomial>,
}

impl CentralFibre {
    pub fn degree(&self) -> u64 {
        self.coordinates[0].u
    }

    pub fn render(&self) -> String {
        let coords: Vec<String> = self
            .coordinates
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let pow = |var: &str, e: u64| match e {
                    0 => None,
                    1 => Some(var.to_string()),
                    e => Some(format!("{var}^{e}")),
                };
                let mut parts: Vec<String> = Vec::new();
                if j > 0 {
                    parts.push(format!("c{j}"));
                }
                parts.extend(pow("v", c.v));
                parts.extend(pow("u", c.u));
                parts.join("*")
            })
            .collect();
        format!("[{}]", coords.join(" : "))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rendered": self.render(),
            "coordinates": self.coordinates.iter().map(|c| json!({
                "coeff": rational_to_value(&c.coeff), "u": c.u, "v": c.v,
            })).collect::<Vec<_>>(),
        })
    }
}

/// `f_0([u:v]) = [u^{m_r} : c_1 v^{m_1} u^{m_r - m_1} : … : c_r v^{m_r}]`.
pub fn central_fibre(fm: &FamilyMap) -> CentralFibre {
    let top = fm.functions.last().unwrap().pole_order;
    let mut coordinates = vec![FibreMonomial { coeff: Rational::one(), u: top, v: 0 }];
    coordinates.extend(fm.functions.iter().map(|f| FibreMonomial {
        coeff: f.leading.clone(),
        u: top - f.pole_order,
        v: f.pole_order,
    }));
    CentralFibre { coordinates }
}

/// `f(z, t_0) = [1 : t_0^{m_1} h_1(z) : …]` at a point `z` away from the
/// marked point.
pub fn family_member(fm: &FamilyMap, t0: &Rational, z: &PointSpec) -> Result<Vec<Rational>> {
    if t0.is_zero() {
        return Err(Error::Precondition("t must be nonzero; use the central fibre at t = 0".into()));
    }
    let (x, y) = match z {
        PointSpec::Affine { x, y } => (x, y),
        _ => return Err(Error::Pole("the family is evaluated at affine points".into())),
    };
    if !fm.curve.contains_affine(x, y) {
        return Err(Error::PointNotOnCurve(format!("({x}, {y})")));
    }
    let mut out = vec![Rational::one()];
    for f in &fm.functions {
        let d = f.den.eval(x);
        if d.is_zero() {
            return Err(Error::Pole(f.description.clone()));
        }
        let h = (f.p.eval(x) + f.r.eval(x) * y) / d;
        out.push(rpow(t0, f.pole_order as i64) * h);
    }
    Ok(out)
}

/// Union of `n` coordinate axes through the origin: the genus-0 pinching.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxesCurve {
    pub n: usize,
    /// Pairs `(j, j')` with `x_j x_{j'} = 0`.
    pub relations: Vec<(usize, usize)>,
    /// `(a, b)` with Hilbert polynomial `a t + b`.
    pub hilbert: (i64, i64),
}

impl AxesCurve {
    pub fn render_hilbert(&self) -> String {
        match self.hilbert {
            (1, b) => format!("t + {b}"),
            (a, b) => format!("{a}t + {b}"),
        }
    }

    pub fn local_ring_digest(&self) -> String {
        "tuples (h_1, …, h_n) of functions on the lines with equal values at the origin".into()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "relations": self.relations.iter().map(|(a, b)| format!("x{}*x{} = 0", a + 1, b + 1)).collect::<Vec<_>>(),
            "hilbert_polynomial": rationals_to_value(&[Rational::from_integer(self.hilbert.0.into()), Rational::from_integer(self.hilbert.1.into())]),
            "rendered": self.render_hilbert(),
            "local_ring": self.local_ring_digest(),
        })
    }
}

/// Degree-`t` part of the projective coordinate ring of `n` independent
/// concurrent lines: `n` copies of `t + 1` sections glued at one point.
fn lines_graded_dimension(n: usize, t: i64) -> i64 {
    n as i64 * (t + 1) - (n as i64 - 1)
}

pub fn axes_model(n: usize) -> Result<AxesCurve> {
    if n == 0 {
        return Err(Error::Precondition("at least one line is required".into()));
    }
    let relations = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let (h1, h2) = (lines_graded_dimension(n, 1), lines_graded_dimension(n, 2));
    let slope = h2 - h1;
    Ok(AxesCurve { n, relations, hilbert: (slope, h1 - slope) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{frac, q};
    use crate::curve::{h_dims, Backend};

    fn elliptic_at_infinity() -> MarkedCurve {
        MarkedCurve::new(Backend::Elliptic { a: q(0), b: q(1) }, vec![PointSpec::Infinity { sign: 1 }], vec![1])
            .unwrap()
    }

    #[test]
    fn chart_labels() {
        let c = MarkedCurve::new(
            Backend::Elliptic { a: q(0), b: q(1) },
            vec![PointSpec::Affine { x: q(0), y: q(1) }, PointSpec::Affine { x: q(2), y: q(3) }],
            vec![2, 3],
        )
        .unwrap();
        assert_eq!(chart(&c, 0).unwrap().label, "A_1");
        assert_eq!(chart(&c, 1).unwrap().render(), "z*w = t^3");
        assert!(chart(&c, 1).unwrap().is_weighted_homogeneous());
        assert!(matches!(chart(&c, 2), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn pole_order_rule() {
        assert!(section_accept(&[2, 1], 4, &[2, 3]));
        assert!(section_accept(&[0], 0, &[1]));
        assert!(!section_accept(&[3, 2], 5, &[2, 3]));
    }

    #[test]
    fn elliptic_family() {
        let c = elliptic_at_infinity();
        let x = UPoly::new(vec![q(0), q(1)]);
        let fm = FamilyMap::from_polynomials(&c, vec![(UPoly::zero(), UPoly::constant(q(1))), (x, UPoly::zero())])
            .unwrap();
        assert_eq!(fm.pole_orders(), vec![2, 3]);
        assert!(fm.leading_coefficients().iter().all(|c| !c.is_zero()));
        let f0 = central_fibre(&fm);
        assert_eq!(f0.render(), "[u^3 : c1*v^2*u : c2*v^3]");
        let p = PointSpec::Affine { x: q(2), y: q(3) };
        assert_eq!(family_member(&fm, &q(1), &p).unwrap(), vec![q(1), q(2), q(3)]);
        assert_eq!(family_member(&fm, &frac(1, 2), &p).unwrap(), vec![q(1), frac(1, 2), frac(3, 8)]);
        let by_order = FamilyMap::from_pole_orders(&c, &[2, 3]).unwrap();
        assert_eq!(by_order.pole_orders(), vec![2, 3]);
        assert!(FamilyMap::from_pole_orders(&c, &[1]).is_err());
    }

    #[test]
    fn elliptic_fibre_rows() {
        let report = fibre_dimension_report(&elliptic_at_infinity(), 5).unwrap();
        let a: Vec<usize> = report.rows.iter().map(|r| r.dim_a).collect();
        let gr: Vec<usize> = report.rows.iter().map(|r| r.dim_gr).collect();
        assert_eq!(a, vec![1, 1, 2, 3, 4, 5]);
        assert_eq!(gr, vec![1, 0, 1, 1, 1, 1]);
    }

    #[test]
    fn accepted_counts_match() {
        let c = elliptic_at_infinity().with_weights(vec![1]).unwrap();
        for m in 0..5 {
            assert_eq!(accepted_dimension(&c, m, 6).unwrap(), h_dims(&c, &floor_divisor(&c.delta(), m)).unwrap().0);
        }
    }

    #[test]
    fn axes() {
        assert_eq!(axes_model(1).unwrap().render_hilbert(), "t + 1");
        assert_eq!(axes_model(3).unwrap().hilbert, (3, 1));
        assert_eq!(axes_model(3).unwrap().relations.len(), 3);
    }
}
