//! Riemann–Roch spaces, canonical jets and Weierstrass semigroups.

use std::sync::Arc;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::local::{with_precision, Place};
use super::{IntegerDivisor, MarkedCurve, Model};
use crate::algebra::{kernel_basis, rationals_to_value, Laurent, Matrix, Rational, UPoly};
use crate::error::{Error, Result};
use crate::semigroup::NumericalSemigroup;

/// Coefficients of `z^e` for `e = start, start + 1, …` of a section at a
/// marked point, in that point's uniformizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentTail {
    pub point: usize,
    pub start: i64,
    pub coefficients: Vec<Rational>,
}

impl LaurentTail {
    pub fn coeff(&self, e: i64) -> Rational {
        if e < self.start {
            return Rational::zero();
        }
        self.coefficients
            .get((e - self.start) as usize)
            .cloned()
            .unwrap_or_else(|| panic!("exponent {e} is outside the tail window"))
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn order(&self) -> Option<i64> {
        self.coefficients.iter().position(|c| !c.is_zero()).map(|k| self.start + k as i64)
    }

    pub fn end(&self) -> i64 {
        self.start + self.coefficients.len() as i64
    }
}

/// A rational function `(p(x) + r(x) y) / den(x)` with its tails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub p: UPoly,
    pub r: UPoly,
    pub den: UPoly,
    pub tails: Vec<LaurentTail>,
    pub description: String,
}

impl Section {
    /// Value at an affine point of the curve.
    pub fn eval(&self, x: &Rational, y: &Rational) -> Result<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::Pole(self.description.clone()));
        }
        Ok((self.p.eval(x) + self.r.eval(x) * y) / d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionBasis {
    pub divisor: IntegerDivisor,
    pub elements: Vec<Section>,
}

impl SectionBasis {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "divisor": self.divisor.to_json(),
            "dimension": self.dim(),
            "elements": self.elements.iter().map(|s| json!({
                "function": s.description,
                "tails": s.tails.iter().map(|t| json!({
                    "point": t.point,
                    "start": t.start,
                    "coefficients": rationals_to_value(&t.coefficients),
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Jet of a regular 1-form: `coefficients[i][e]` is the coefficient of
/// `z_i^e dz_i` at marked point `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneFormJet {
    pub form_index: usize,
    pub name: String,
    pub coefficients: Vec<Vec<Rational>>,
}

impl OneFormJet {
    pub fn order_at(&self, i: usize) -> Option<usize> {
        self.coefficients[i].iter().position(|c| !c.is_zero())
    }
}

/// Jets of the canonical basis of regular 1-forms at every marked point,
/// exact through `z^order`.
pub fn canonical_jets(curve: &MarkedCurve, order: usize) -> Result<Arc<Vec<OneFormJet>>> {
    if let Some(j) = curve.memo.jets.read().unwrap().as_ref() {
        if j.first().is_none_or(|f| f.coefficients.first().is_none_or(|c| c.len() > order)) {
            return Ok(j.clone());
        }
    }
    let g = curve.genus();
    let names = curve.form_names();
    let mut per_point = Vec::new();
    for place in curve.places() {
        let forms = with_precision(order as i64 + 4, |p| {
            let e = curve.expansion(place, p)?;
            Ok(e.forms.iter().map(|w| w.window(0, order as i64 + 1)).collect::<Option<Vec<_>>>())
        })?;
        per_point.push(forms);
    }
    let jets: Vec<OneFormJet> = (0..g)
        .map(|k| OneFormJet {
            form_index: k,
            name: names[k].clone(),
            coefficients: per_point.iter().map(|f| f[k].clone()).collect(),
        })
        .collect();
    if jets.len() != g {
        return Err(Error::Consistency(format!("expected {g} canonical forms, found {}", jets.len())));
    }
    let jets = Arc::new(jets);
    *curve.memo.jets.write().unwrap() = Some(jets.clone());
    Ok(jets)
}

/// Matrix whose kernel is the space of forms vanishing on `d`: one row per
/// condition "coefficient of `z_i^e` is zero" for `e < d_i`, one column per form.
pub fn vanishing_conditions(curve: &MarkedCurve, d: &IntegerDivisor) -> Result<Matrix> {
    let g = curve.genus();
    let top = d.coeffs().iter().copied().max().unwrap_or(0).max(1) as usize;
    let jets = canonical_jets(curve, top)?;
    let mut rows = Vec::new();
    for (i, &di) in d.coeffs().iter().enumerate() {
        for e in 0..di.max(0) as usize {
            rows.push((0..g).map(|k| jets[k].coefficients[i][e].clone()).collect());
        }
    }
    Ok(Matrix::from_rows(g, rows))
}

/// `(h^0(d), h^1(d))` for an effective divisor on the marked points.
pub fn h_dims(curve: &MarkedCurve, d: &IntegerDivisor) -> Result<(usize, usize)> {
    if !d.is_effective() {
        return Err(Error::Precondition(format!("divisor {} is not effective", d.render())));
    }
    let g = curve.genus() as i64;
    let h1 = g - vanishing_conditions(curve, d)?.rank() as i64;
    let h0 = h1 + d.degree() + 1 - g;
    if h0 < 1 {
        return Err(Error::Consistency(format!("h0({}) = {h0} for an effective divisor", d.render())));
    }
    Ok((h0 as usize, h1 as usize))
}

/// Weierstrass semigroup at marked point `i`: `m` is a member iff
/// `h^0(m p) > h^0((m - 1) p)`.
pub fn weierstrass_semigroup_at(curve: &MarkedCurve, i: usize, bound: usize) -> Result<NumericalSemigroup> {
    let g = curve.genus();
    if i >= curve.n() {
        return Err(Error::IndexOutOfRange { index: i, len: curve.n() });
    }
    if bound < 2 * g {
        return Err(Error::Precondition(format!("bound {bound} is below 2g = {}", 2 * g)));
    }
    let len = bound.max(4 * g + 2) + 1;
    let n = curve.n();
    let mut h0 = Vec::with_capacity(len);
    for m in 0..len {
        h0.push(h_dims(curve, &IntegerDivisor::point(n, i, m as i64))?.0);
    }
    let members: Vec<bool> = (0..len).map(|m| m == 0 || h0[m] > h0[m - 1]).collect();
    let s = NumericalSemigroup::from_members(&members)
        .map_err(|e| Error::Consistency(format!("pole orders at p{} do not form a semigroup: {e}", i + 1)))?;
    if s.genus() != g {
        return Err(Error::Consistency(format!("semigroup at p{} has {} gaps, genus is {g}", i + 1, s.genus())));
    }
    Ok(s)
}

/// Basis of `H^0(C, O(d))` with tails at every marked point.
pub fn rr_basis(curve: &MarkedCurve, d: &IntegerDivisor) -> Result<Arc<SectionBasis>> {
    if let Some(b) = curve.memo.bases.read().unwrap().get(d) {
        return Ok(b.clone());
    }
    let basis = Arc::new(compute_rr_basis(curve, d)?);
    curve.memo.bases.write().unwrap().insert(d.clone(), basis.clone());
    Ok(basis)
}

fn compute_rr_basis(curve: &MarkedCurve, d: &IntegerDivisor) -> Result<SectionBasis> {
    let Model::Hyper(h) = curve.model() else {
        return Err(Error::UnsupportedBackend {
            backend: curve.backend().name(),
            what: "Riemann-Roch bases (use the dual path)".into(),
        });
    };
    if !d.is_effective() {
        return Err(Error::Precondition(format!("divisor {} is not effective", d.render())));
    }
    let g = h.genus as i64;
    let places = curve.places();

    // Denominator clearing the allowed poles at marked affine points.
    let mut den_roots: Vec<(Rational, i64)> = Vec::new();
    for (place, &di) in places.iter().zip(d.coeffs()) {
        if let Place::Affine(x0, y0) = place {
            let a = if y0.is_zero() { (di + 1) / 2 } else { di };
            match den_roots.iter_mut().find(|(x, _)| x == x0) {
                Some(entry) => entry.1 = entry.1.max(a),
                None => den_roots.push((x0.clone(), a)),
            }
        }
    }
    den_roots.retain(|(_, a)| *a > 0);
    let den = den_roots
        .iter()
        .fold(UPoly::constant(Rational::one()), |acc, (x0, a)| acc.mul(&UPoly::linear_root(x0).pow(*a as u32)));
    let deg_den = den.degree().unwrap() as i64;

    let inf_order = |sign: i8| -> i64 {
        places
            .iter()
            .zip(d.coeffs())
            .find(|(p, _)| **p == Place::Infinity(sign))
            .map_or(0, |(_, &c)| c)
    };
    let (deg_p, deg_r) = if h.odd {
        let di = inf_order(1);
        (deg_den + di.div_euclid(2), deg_den + (di - 2 * g - 1).div_euclid(2))
    } else {
        let dmax = inf_order(1).max(inf_order(-1));
        (deg_den + dmax, deg_den + dmax - g - 1)
    };

    // Places where the pole order must be bounded explicitly: (place, allowed pole, marked index).
    let mut constraints: Vec<(Place, i64, Option<usize>)> = Vec::new();
    for (i, (place, &di)) in places.iter().zip(d.coeffs()).enumerate() {
        match place {
            Place::Affine(..) => constraints.push((place.clone(), di, Some(i))),
            Place::Infinity(_) => constraints.push((place.clone(), di, Some(i))),
        }
    }
    for (x0, _) in &den_roots {
        for place in places.iter().filter(|p| matches!(p, Place::Affine(x, _) if x == x0)) {
            let conj = h.conjugate(place);
            if !places.contains(&conj) && !constraints.iter().any(|(p, _, _)| *p == conj) {
                constraints.push((conj, 0, None));
            }
        }
    }
    let marks_infinity = places.iter().any(|p| matches!(p, Place::Infinity(_)));
    if !h.odd && marks_infinity {
        for s in [1i8, -1] {
            if !places.contains(&Place::Infinity(s)) {
                constraints.push((Place::Infinity(s), 0, None));
            }
        }
    }

    let ncols = (deg_p + 1).max(0) as usize + (deg_r + 1).max(0) as usize;
    let tail_hi = d.coeffs().iter().copied().max().unwrap_or(0) + 1;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut tail_data: Vec<(usize, i64, Vec<Laurent>)> = Vec::new();
    for (place, allowed, marked) in &constraints {
        let upper = if marked.is_some() { tail_hi + 1 } else { -allowed };
        let elems = with_precision(upper + 2 * deg_den + 2 * g + 8 + deg_p.max(deg_r).max(0) * 2, |p| {
            let e = curve.expansion(place, p)?;
            let den_inv = match e.x.compose_poly(&den).truncate(p).inv() {
                Some(v) => v,
                None => return Ok(None),
            };
            let mut out = Vec::with_capacity(ncols);
            let mut xp = den_inv.clone();
            let mut pows = Vec::new();
            for _ in 0..=deg_p.max(deg_r).max(0) {
                pows.push(xp.clone());
                xp = xp.mul(&e.x);
            }
            for j in 0..=deg_p {
                out.push(pows[j as usize].clone());
            }
            for j in 0..=deg_r {
                out.push(pows[j as usize].mul(&e.y));
            }
            Ok(out.iter().all(|l| l.prec() >= upper).then_some(out))
        })?;
        let lo = elems.iter().map(Laurent::start).min().unwrap_or(0).min(-allowed);
        for e in lo..-allowed {
            rows.push(elems.iter().map(|l| l.coeff(e).unwrap()).collect());
        }
        if let Some(i) = marked {
            tail_data.push((*i, *allowed, elems));
        }
    }
    let kernel = kernel_basis(&Matrix::from_rows(ncols, rows));

    let (h0, _) = h_dims(curve, d)?;
    if kernel.len() != h0 {
        return Err(Error::Consistency(format!(
            "Riemann-Roch space of {} has dimension {} but h0 = {h0}",
            d.render(),
            kernel.len()
        )));
    }

    let np = (deg_p + 1).max(0) as usize;
    let mut elements = Vec::new();
    for v in kernel {
        let p = UPoly::new(v[..np].to_vec());
        let r = UPoly::new(v[np..].to_vec());
        let mut tails = Vec::new();
        for (i, allowed, elems) in &tail_data {
            let coefficients = (-allowed..=tail_hi)
                .map(|e| v.iter().zip(elems).map(|(c, l)| c * l.coeff(e).unwrap()).sum())
                .collect();
            tails.push(LaurentTail { point: *i, start: -allowed, coefficients });
        }
        tails.sort_by_key(|t| t.point);
        let description = render_function(&p, &r, &den);
        elements.push(Section { p, r, den: den.clone(), tails, description });
    }
    let tail_rows: Vec<Vec<Rational>> =
        elements.iter().map(|s| s.tails.iter().flat_map(|t| t.coefficients.clone()).collect()).collect();
    let width = tail_rows.first().map_or(0, Vec::len);
    if Matrix::from_rows(width, tail_rows).rank() != elements.len() {
        return Err(Error::Consistency(format!("tails of the basis of {} are dependent", d.render())));
    }
    Ok(SectionBasis { divisor: d.clone(), elements })
}

fn render_function(p: &UPoly, r: &UPoly, den: &UPoly) -> String {
    let ry = match r.degree() {
        None => None,
        Some(0) if r.coeff(0).is_one() => Some("y".to_string()),
        Some(0) if (-r.coeff(0)).is_one() => Some("-y".to_string()),
        Some(0) => Some(format!("{}*y", r.coeff(0))),
        _ => Some(format!("({r})*y")),
    };
    let num = match (p.is_zero(), ry) {
        (true, None) => "0".to_string(),
        (false, None) => p.to_string(),
        (true, Some(s)) => s,
        (false, Some(s)) if s.starts_with('-') => format!("{p} - {}", &s[1..]),
        (false, Some(s)) => format!("{p} + {s}"),
    };
    if den.degree() == Some(0) {
        num
    } else {
        let wrap = |s: String| if s.contains(' ') { format!("({s})") } else { s };
        format!("{}/{}", wrap(num), wrap(den.to_string()))
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{q, TernaryForm};
    use crate::curve::{Backend, PointSpec};

    fn elliptic(points: Vec<PointSpec>) -> MarkedCurve {
        let w = vec![1; points.len()];
        MarkedCurve::new(Backend::Elliptic { a: q(0), b: q(1) }, points, w).unwrap()
    }

    fn aff(x: i64, y: i64) -> PointSpec {
        PointSpec::Affine { x: q(x), y: q(y) }
    }

    fn inf() -> PointSpec {
        PointSpec::Infinity { sign: 1 }
    }

    fn quartic(points: Vec<[i64; 3]>) -> MarkedCurve {
        let form = TernaryForm::from_terms([([3, 0, 1], q(1)), ([0, 4, 0], q(-1)), ([0, 0, 4], q(1))]);
        let pts = points.into_iter().map(|c| PointSpec::Projective([q(c[0]), q(c[1]), q(c[2])])).collect::<Vec<_>>();
        let w = vec![1; pts.len()];
        MarkedCurve::new(Backend::PlaneQuartic { form }, pts, w).unwrap()
    }

    #[test]
    fn elliptic_three_infinity() {
        let c = elliptic(vec![inf()]);
        let b = rr_basis(&c, &IntegerDivisor::new(vec![3])).unwrap();
        let names: Vec<&str> = b.elements.iter().map(|s| s.description.as_str()).collect();
        assert_eq!(names, vec!["1", "x", "y"]);
        let orders: Vec<i64> = b.elements.iter().map(|s| s.tails[0].order().unwrap()).collect();
        assert_eq!(orders, vec![0, -2, -3]);
    }

    #[test]
    fn zero_divisor_gives_constants() {
        let c = elliptic(vec![aff(0, 1), aff(2, 3)]);
        let b = rr_basis(&c, &IntegerDivisor::zero(2)).unwrap();
        assert_eq!(b.dim(), 1);
        assert_eq!(b.elements[0].description, "1");
        assert_eq!(h_dims(&c, &IntegerDivisor::zero(2)).unwrap(), (1, 1));
    }

    #[test]
    fn genus_two_infinity() {
        let c = MarkedCurve::new(
            Backend::Hyperelliptic { f: UPoly::new(vec![q(1), q(0), q(0), q(0), q(0), q(1)]) },
            vec![inf()],
            vec![1],
        )
        .unwrap();
        let d = IntegerDivisor::new(vec![2]);
        assert_eq!(h_dims(&c, &d).unwrap(), (2, 1));
        let b = rr_basis(&c, &d).unwrap();
        let names: Vec<&str> = b.elements.iter().map(|s| s.description.as_str()).collect();
        assert_eq!(names, vec!["1", "x"]);
        let s = weierstrass_semigroup_at(&c, 0, 4).unwrap();
        assert_eq!(s.minimal_generators(), vec![2, 5]);
    }

    #[test]
    fn affine_poles_and_conjugates() {
        // p1 = (0, 1), p2 = (0, -1): 1/x has simple poles at both
        let c = elliptic(vec![aff(0, 1), aff(0, -1)]);
        let b = rr_basis(&c, &IntegerDivisor::new(vec![1, 1])).unwrap();
        assert_eq!(b.dim(), 2);
        // only p1: 1 alone (deg 1 on genus 1)
        let b = rr_basis(&c, &IntegerDivisor::new(vec![1, 0])).unwrap();
        assert_eq!(b.dim(), 1);
        let b = rr_basis(&c, &IntegerDivisor::new(vec![3, 0])).unwrap();
        assert_eq!(b.dim(), 3);
        for s in &b.elements {
            assert!(s.tails[1].order().unwrap() >= 0);
        }
    }

    #[test]
    fn branch_point_poles() {
        let c = elliptic(vec![aff(-1, 0), inf()]);
        for k in 0..6 {
            let b = rr_basis(&c, &IntegerDivisor::new(vec![k, 1])).unwrap();
            assert_eq!(b.dim() as i64, (k + 1).max(1));
        }
    }

    #[test]
    fn elliptic_semigroup_everywhere() {
        let c = elliptic(vec![aff(0, 1), aff(-1, 0), inf(), aff(2, 3)]);
        for i in 0..4 {
            assert_eq!(weierstrass_semigroup_at(&c, i, 4).unwrap().minimal_generators(), vec![2, 3]);
        }
    }

    #[test]
    fn quartic_hyperflex_profile() {
        let c = quartic(vec![[0, 1, 1]]);
        let jets = canonical_jets(&c, 4).unwrap();
        let m = Matrix::from_rows(3, (0..5).map(|e| (0..3).map(|k| jets[k].coefficients[0][e].clone()).collect()));
        // vanishing orders of the form space at p are where the rank jumps
        let mut orders = Vec::new();
        let mut prev = 0;
        for e in 0..5 {
            let r = Matrix::from_rows(3, (0..=e).map(|k| m.row(k).to_vec())).rank();
            if r > prev {
                orders.push(e);
            }
            prev = r;
        }
        assert_eq!(orders, vec![0, 1, 3]);
        let s = weierstrass_semigroup_at(&c, 0, 6).unwrap();
        assert_eq!(s.gaps(), vec![1, 2, 4]);
        assert_eq!(s.minimal_generators(), vec![3, 5, 7]);
    }

    #[test]
    fn quartic_pair_general() {
        let c = quartic(vec![[0, 1, 1], [1, 0, -1]]);
        assert_eq!(h_dims(&c, &IntegerDivisor::new(vec![1, 1])).unwrap(), (1, 1));
        assert!(matches!(
            rr_basis(&c, &IntegerDivisor::new(vec![1, 1])),
            Err(Error::UnsupportedBackend { .. })
        ));
    }

    #[test]
    fn serre_duality_genus_two() {
        // K = 2∞ on y^2 = x^5 + 1
        let c = MarkedCurve::new(
            Backend::Hyperelliptic { f: UPoly::new(vec![q(1), q(0), q(0), q(0), q(0), q(1)]) },
            vec![inf(), aff(0, 1)],
            vec![1, 1],
        )
        .unwrap();
        let k = IntegerDivisor::new(vec![2, 0]);
        for d in [vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1]] {
            let d = IntegerDivisor::new(d);
            let (_, h1) = h_dims(&c, &d).unwrap();
            let kd = k.sub(&d);
            if kd.is_effective() {
                assert_eq!(h1, rr_basis(&c, &kd).unwrap().dim(), "d = {}", d.render());
            }
        }
    }
}
