//! Brute-force recomputations that share only the exact-algebra layer with
//! the main engine. They exist to certify the values frozen in the corpus.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::{branch_series, q, BiPoly, Matrix, Rational, UPoly};
use crate::curve::{Backend, IntegerDivisor, MarkedCurve, PointSpec};
use crate::error::{Error, Result};

/// Truncated product of two coefficient vectors, keeping `len` terms.
fn series_mul(a: &[Rational], b: &[Rational], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn series_pow(a: &[Rational], e: usize, len: usize) -> Vec<Rational> {
    let mut acc = vec![Rational::zero(); len];
    acc[0] = Rational::one();
    for _ in 0..e {
        acc = series_mul(&acc, a, len);
    }
    acc
}

/// Residual `f(x0 + z, y(z))` through `z^order` for a claimed branch `y`.
pub fn resubstitution_residual(f: &BiPoly, x0: &Rational, y: &[Rational], order: usize) -> Vec<Rational> {
    let len = order + 1;
    let x = {
        let mut v = vec![Rational::zero(); len];
        v[0] = x0.clone();
        if len > 1 {
            v[1] = Rational::one();
        }
        v
    };
    let mut y = y.to_vec();
    y.resize(len, Rational::zero());
    let mut out = vec![Rational::zero(); len];
    for (&(i, j), c) in f.terms() {
        let t = series_mul(&series_pow(&x, i as usize, len), &series_pow(&y, j as usize, len), len);
        for (o, v) in out.iter_mut().zip(t) {
            *o += c * v;
        }
    }
    out
}

/// Recomputes a branch by `branch_series` and checks it by substitution.
pub fn series_resubstitution(f: &BiPoly, point: (&Rational, &Rational), order: usize) -> Result<(Vec<Rational>, bool)> {
    let s = branch_series(f, point, order)?;
    let residual = resubstitution_residual(f, point.0, &s.coefficients, order);
    Ok((s.coefficients, residual.iter().all(Zero::is_zero)))
}

/// Gaps of the semigroup generated by `gens`, by listing every sum.
pub fn semigroup_gaps_by_enumeration(gens: &[u64]) -> Result<Vec<u64>> {
    if gens.is_empty() || gens.contains(&0) {
        return Err(Error::InvalidInput("generators must be positive".into()));
    }
    let g = gens.iter().fold(0u64, |a, &b| num_integer::Integer::gcd(&a, &b));
    if g != 1 {
        return Err(Error::Coprimality(gens.to_vec()));
    }
    let min = *gens.iter().min().unwrap();
    let max = *gens.iter().max().unwrap();
    let limit = min * max + max;
    let mut reach: BTreeSet<u64> = BTreeSet::from([0]);
    let mut frontier = vec![0u64];
    while let Some(a) = frontier.pop() {
        for &gen in gens {
            let b = a + gen;
            if b <= limit && reach.insert(b) {
                frontier.push(b);
            }
        }
    }
    Ok((1..=limit).filter(|n| !reach.contains(n)).collect())
}

/// Least `m` with `Σ ⌊(m-1)/d_i⌋ > 2g - 2`, by trying each `m`.
pub fn cutoff_by_search(genus: usize, weights: &[u64]) -> u64 {
    (1u64..)
        .find(|m| weights.iter().map(|d| ((m - 1) / d) as i64).sum::<i64>() > 2 * genus as i64 - 2)
        .unwrap()
}

/// Element of `Q_m` as a map from branch to coefficient.
type QElement = Vec<(usize, u64, Rational)>;

fn as_element(weights: &[u64], m: u64, v: &[Rational]) -> QElement {
    let branches: Vec<usize> = (0..weights.len()).filter(|&i| m.is_multiple_of(weights[i])).collect();
    branches.iter().zip(v).map(|(&i, c)| (i, m / weights[i], c.clone())).collect()
}

fn times(a: &QElement, b: &QElement) -> QElement {
    let mut out = Vec::new();
    for (i, e, c) in a {
        for (j, f, d) in b {
            if i == j {
                out.push((*i, e + f, c * d));
            }
        }
    }
    out
}

fn coordinates(weights: &[u64], m: u64, x: &QElement) -> Vec<Rational> {
    (0..weights.len())
        .filter(|&i| m.is_multiple_of(weights[i]))
        .map(|i| x.iter().filter(|(j, _, _)| *j == i).map(|(_, _, c)| c.clone()).sum())
        .collect()
}

fn contains(basis: &Matrix, v: &[Rational]) -> bool {
    let mut m = basis.clone();
    m.push_row(v.to_vec());
    m.rank() == basis.rank()
}

/// Multiplies every pair of basis vectors of the given pieces
/// (`pieces[k]` is `𝔄_{k+1}`, later degrees full) and checks membership.
pub fn closure_by_multiplication(weights: &[u64], pieces: &[Matrix]) -> bool {
    let top = pieces.len() as u64;
    let piece = |m: u64| -> Option<&Matrix> { pieces.get(m as usize - 1) };
    for a in 1..=top {
        for b in a..=top {
            let Some(pc) = (a + b <= top).then(|| piece(a + b).unwrap()) else { continue };
            for u in piece(a).unwrap().row_vecs() {
                for v in piece(b).unwrap().row_vecs() {
                    let w = times(&as_element(weights, a, &u), &as_element(weights, b, &v));
                    if !contains(pc, &coordinates(weights, a + b, &w)) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// `Σ (dim Q_m - rank 𝔄_m)` over the given pieces.
pub fn gap_by_count(weights: &[u64], pieces: &[Matrix]) -> usize {
    pieces
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let m = k as u64 + 1;
            weights.iter().filter(|&&d| m.is_multiple_of(d)).count() - p.rank()
        })
        .sum()
}

/// Monomials of degree `t` in `x_0, …, x_n` divisible by no `x_j x_{j'}`
/// with `1 ≤ j < j'`.
pub fn axes_monomial_count(n: usize, t: u32) -> u64 {
    fn rec(vars: usize, t: u32, prefix: &mut Vec<u32>, count: &mut u64) {
        if vars == 1 {
            prefix.push(t);
            let used = prefix[1..].iter().filter(|&&e| e > 0).count();
            if used <= 1 {
                *count += 1;
            }
            prefix.pop();
            return;
        }
        for e in 0..=t {
            prefix.push(e);
            rec(vars - 1, t - e, prefix, count);
            prefix.pop();
        }
    }
    let mut count = 0;
    rec(n + 1, t, &mut Vec::new(), &mut count);
    count
}

/// Fits `a t + b` through the counts at `t = 1, 2` and checks it at
/// `t = 3 … tmax`.
pub fn hilbert_by_monomial_count(n: usize, tmax: u32) -> Option<(i64, i64)> {
    let c = |t| axes_monomial_count(n, t) as i64;
    let a = c(2) - c(1);
    let b = c(1) - a;
    (3..=tmax).all(|t| c(t) == a * t as i64 + b).then_some((a, b))
}

/// Rank of a random `rows × cols` product of integer matrices through
/// an inner dimension `planted`.
pub fn planted_rank(seed: u64, rows: usize, cols: usize, planted: usize) -> (Matrix, Option<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut random = |r: usize, c: usize| {
        Matrix::from_rows(c, (0..r).map(|_| (0..c).map(|_| q(rng.gen_range(-5..=5))).collect::<Vec<_>>()))
    };
    let a = random(rows, planted);
    let b = random(planted, cols);
    let m = a.mul(&b);
    // rank <= planted by construction; a nonzero planted-sized minor gives equality
    let certified = subsets(rows, planted)
        .iter()
        .any(|r| subsets(cols, planted).iter().any(|c| !leibniz_det(&m, r, c).is_zero()))
        .then_some(planted);
    (m, certified)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Determinant of the minor on `rows × cols` as a signed sum over permutations.
fn leibniz_det(m: &Matrix, rows: &[usize], cols: &[usize]) -> Rational {
    fn go(m: &Matrix, rows: &[usize], cols: &[usize], used: &mut Vec<bool>, k: usize, sign: i64) -> Rational {
        if k == rows.len() {
            return q(sign);
        }
        let mut total = Rational::zero();
        let mut s = sign;
        for j in 0..cols.len() {
            if used[j] {
                continue;
            }
            let e = &m.row(rows[k])[cols[j]];
            if !e.is_zero() {
                used[j] = true;
                total += e * go(m, rows, cols, used, k + 1, s);
                used[j] = false;
            }
            s = -s;
        }
        total
    }
    go(m, rows, cols, &mut vec![false; cols.len()], 0, 1)
}

fn hyper_polynomial(curve: &MarkedCurve) -> Result<UPoly> {
    let f = match curve.backend() {
        Backend::Elliptic { a, b } => UPoly::new(vec![b.clone(), a.clone(), q(0), q(1)]),
        Backend::Hyperelliptic { f } => f.clone(),
        Backend::PlaneQuartic { .. } => {
            return Err(Error::UnsupportedBackend {
                backend: curve.backend().name(),
                what: "the Riemann–Roch oracle".into(),
            })
        }
    };
    if f.degree().unwrap_or(0) % 2 == 0 {
        return Err(Error::UnsupportedBackend {
            backend: curve.backend().name(),
            what: "the Riemann–Roch oracle on even-degree models".into(),
        });
    }
    Ok(f)
}

/// `h^0(D)` on `y^2 = f(x)` with `deg f` odd: write `F = G/h` with
/// `h = Π (x - x_0)^{A}` over the affine support, bound `G = P + R y` by
/// its pole order at infinity, and impose vanishing of `G` along
/// independently computed branches at each zero of `h`.
pub fn rr_dimension_by_vanishing(curve: &MarkedCurve, d: &IntegerDivisor) -> Result<usize> {
    let f = hyper_polynomial(curve)?;
    if !d.is_effective() {
        return Err(Error::Precondition("the oracle handles effective divisors".into()));
    }
    let genus = (f.degree().unwrap() - 1) / 2;
    let mut a_inf = 0i64;
    let mut affine: Vec<(Rational, Rational, i64)> = Vec::new();
    for (p, &a) in curve.points().iter().zip(d.coeffs()) {
        match p {
            PointSpec::Affine { x, y } => affine.push((x.clone(), y.clone(), a)),
            PointSpec::Infinity { .. } => a_inf = a,
            PointSpec::Projective(_) => return Err(Error::InvalidInput("projective point on a hyperelliptic model".into())),
        }
    }
    let mut xs: Vec<(Rational, i64)> = Vec::new();
    for (x, _, a) in &affine {
        match xs.iter_mut().find(|(x0, _)| x0 == x) {
            Some(e) => e.1 = e.1.max(*a),
            None => xs.push((x.clone(), *a)),
        }
    }
    let deg_h: i64 = xs.iter().map(|(_, a)| a).sum();
    let budget = a_inf + 2 * deg_h;
    let p_max = budget.div_euclid(2);
    let r_max = (budget - 2 * genus as i64 - 1).div_euclid(2);
    // Ambient monomials x^j (R = false) and x^j y (R = true).
    let ambient: Vec<(bool, i64)> =
        (0..=p_max).map(|j| (false, j)).chain((0..=r_max).map(|j| (true, j))).collect();
    if ambient.is_empty() {
        return Ok(0);
    }
    let curve_eq = {
        let mut t: Vec<((u32, u32), Rational)> = vec![((0, 2), Rational::one())];
        t.extend(f.coeffs().iter().enumerate().map(|(k, c)| ((k as u32, 0), -c.clone())));
        BiPoly::from_terms(t)
    };
    let marked = |x0: &Rational, y0: &Rational| {
        affine.iter().filter(|(x, y, _)| x == x0 && y == y0).map(|(_, _, a)| *a).sum::<i64>()
    };
    let mut rows = Matrix::zeros(0, ambient.len());
    for (x0, a) in &xs {
        let fx0 = f.eval(x0);
        // Each place over x0: (x(z), y(z)) as series, order of (x - x0), marked multiplicity.
        let mut places: Vec<(Vec<Rational>, Vec<Rational>, i64, i64)> = Vec::new();
        let len = (2 * a + 2) as usize;
        if fx0.is_zero() {
            let swapped = curve_eq.swap_vars();
            let s = branch_series(&swapped, (&q(0), x0), len)?;
            let mut y = vec![Rational::zero(); len];
            y[1] = Rational::one();
            places.push((s.coefficients[..len].to_vec(), y, 2, marked(x0, &q(0))));
        } else {
            let y0 = affine.iter().find(|(x, _, _)| x == x0).map(|(_, y, _)| y.clone()).unwrap();
            let mut xz = vec![Rational::zero(); len];
            xz[0] = x0.clone();
            xz[1] = Rational::one();
            for y0 in [y0.clone(), -y0] {
                let s = branch_series(&curve_eq, (x0, &y0), len)?;
                places.push((xz.clone(), s.coefficients[..len].to_vec(), 1, marked(x0, &y0)));
            }
        }
        for (xz, yz, ord, mult) in places {
            let need = ord * a - mult;
            let cols: Vec<Vec<Rational>> = ambient
                .iter()
                .map(|&(with_y, j)| {
                    let xj = series_pow(&xz, j as usize, len);
                    if with_y {
                        series_mul(&xj, &yz, len)
                    } else {
                        xj
                    }
                })
                .collect();
            for e in 0..need.max(0) as usize {
                rows.push_row(cols.iter().map(|c| c[e].clone()).collect());
            }
        }
    }
    Ok(ambient.len() - rows.rank())
}

/// `h^0(⌊mΔ⌋)` for `0 ≤ m ≤ horizon` from [`rr_dimension_by_vanishing`].
pub fn section_dimensions_by_vanishing(curve: &MarkedCurve, horizon: u64) -> Result<Vec<usize>> {
    (0..=horizon)
        .map(|m| {
            let d: Vec<i64> = curve.weights().iter().map(|&w| (m / w) as i64).collect();
            rr_dimension_by_vanishing(curve, &IntegerDivisor::new(d))
        })
        .collect()
}

/// Pole order and leading coefficient of `p(x) + r(x) y` at infinity of
/// `y^2 = f(x)`, `deg f = 2g + 1`, in the parameter `t = x^g/y`. From
/// `t^2 = x^{2g}/f` one gets `x t^2 → 1/lc` and `y t^{2g+1} = (x t^2)^g`.
pub fn leading_at_infinity(f: &UPoly, p: &UPoly, r: &UPoly) -> Option<(u64, Rational)> {
    let deg = f.degree()? as u64;
    if deg.is_multiple_of(2) {
        return None;
    }
    let g = (deg - 1) / 2;
    let inv = f.leading().recip();
    let from_p = p.degree().filter(|_| !p.is_zero()).map(|k| (2 * k as u64, p.leading() * rpow_u(&inv, k as u64)));
    let from_r = r
        .degree()
        .filter(|_| !r.is_zero())
        .map(|k| (2 * k as u64 + 2 * g + 1, r.leading() * rpow_u(&inv, k as u64 + g)));
    match (from_p, from_r) {
        (Some(a), Some(b)) => Some(if a.0 > b.0 { a } else { b }),
        (a, b) => a.or(b),
    }
}

fn rpow_u(r: &Rational, e: u64) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * r)
}

/// Orders `k ≤ max` at which some regular 1-form vanishes to order exactly
/// `k` at point `i`: `h^1(kp) > h^1((k+1)p)`, with `h^1` from oracle `h^0`
/// and Riemann–Roch.
pub fn form_order_profile(curve: &MarkedCurve, i: usize, max: u64) -> Result<Vec<u64>> {
    let g = curve.genus() as i64;
    let h1 = |k: u64| -> Result<i64> {
        let h0 = rr_dimension_by_vanishing(curve, &IntegerDivisor::point(curve.n(), i, k as i64))? as i64;
        Ok(h0 - k as i64 - 1 + g)
    };
    let mut out = Vec::new();
    let mut prev = h1(0)?;
    for k in 0..=max {
        let next = h1(k + 1)?;
        if next < prev {
            out.push(k);
        }
        prev = next;
    }
    Ok(out)
}

/// Weierstrass gaps at marked point `i` from oracle dimensions.
pub fn weierstrass_gaps_by_dimension(curve: &MarkedCurve, i: usize) -> Result<Vec<u64>> {
    let g = curve.genus() as u64;
    let n = curve.n();
    let mut gaps = Vec::new();
    let mut prev = 1;
    for m in 1..=2 * g {
        let h = rr_dimension_by_vanishing(curve, &IntegerDivisor::point(n, i, m as i64))?;
        if h == prev {
            gaps.push(m);
        }
        prev = h;
    }
    Ok(gaps)
}

/// Random subspaces of `Q_1, …, Q_top` with entries in `-1..=1`.
pub fn random_pieces(rng: &mut ChaCha8Rng, weights: &[u64], top: u64) -> Vec<Matrix> {
    (1..=top)
        .map(|m| {
            let cols = weights.iter().filter(|&&d| m % d == 0).count();
            let rows = rng.gen_range(0..=cols);
            Matrix::from_rows(cols, (0..rows).map(|_| (0..cols).map(|_| q(rng.gen_range(-1..=1))).collect::<Vec<_>>()))
        })
        .collect()
}

fn curve_of(task: &Value) -> Result<MarkedCurve> {
    MarkedCurve::from_json(task.get("curve").ok_or_else(|| Error::InvalidInput("missing \"curve\"".into()))?)
}

/// Reads `"functions": [{"p": […], "r": […]}, …]` (ascending coefficients).
pub fn polynomial_pairs(v: &Value) -> Result<Vec<(UPoly, UPoly)>> {
    let poly = |f: &Value, key: &str| -> Result<UPoly> {
        match f.get(key) {
            None => Ok(UPoly::zero()),
            Some(c) => Ok(UPoly::new(
                c.as_array()
                    .ok_or_else(|| Error::InvalidInput(format!("{key:?} is a coefficient list")))?
                    .iter()
                    .map(crate::algebra::value_to_rational)
                    .collect::<Result<Vec<_>>>()?,
            )),
        }
    };
    v.get("functions")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::InvalidInput("missing \"functions\"".into()))?
        .iter()
        .map(|f| Ok((poly(f, "p")?, poly(f, "r")?)))
        .collect()
}

/// Milnor number of `z*w - t^d` at the origin, counted as the number of
/// monomials outside the Jacobian ideal. The partials `w`, `-d t^(d-1)`, `z`
/// are monomials, so the standard monomials are read off directly.
pub fn chart_milnor_number(d: u64) -> u64 {
    // (coefficient, exponents of z, t, w)
    let relation: [(i64, [u64; 3]); 2] = [(1, [1, 0, 1]), (-1, [0, d, 0])];
    let partials: Vec<[u64; 3]> = (0..3)
        .filter_map(|v| {
            relation.iter().filter(|(_, e)| e[v] > 0).map(|(_, e)| {
                let mut e = *e;
                e[v] -= 1;
                e
            }).next()
        })
        .collect();
    let divides = |a: &[u64; 3], b: &[u64; 3]| (0..3).all(|k| a[k] <= b[k]);
    let top = d + 1;
    let mut count = 0;
    for z in 0..=top {
        for t in 0..=top {
            for w in 0..=top {
                if !partials.iter().any(|p| divides(p, &[z, t, w])) {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Runs an oracle task described in JSON.
pub fn run_task(task: &Value) -> Result<Value> {
    let name = task.get("task").and_then(Value::as_str).ok_or_else(|| Error::InvalidInput("missing \"task\"".into()))?;
    let u64s = |key: &str| -> Result<Vec<u64>> {
        task.get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| Error::InvalidInput(format!("missing array {key:?}")))?
            .iter()
            .map(|v| v.as_u64().ok_or_else(|| Error::InvalidInput(format!("{key:?} holds non-negative integers"))))
            .collect()
    };
    match name {
        "rr-dimension" => {
            let curve = curve_of(task)?;
            let coeffs = u64s("divisor")?.into_iter().map(|c| c as i64).collect::<Vec<_>>();
            if coeffs.len() != curve.n() {
                return Err(Error::InvalidInput("divisor length differs from the number of points".into()));
            }
            let d = IntegerDivisor::new(coeffs);
            let h0 = rr_dimension_by_vanishing(&curve, &d)?;
            // h^1 by Riemann–Roch from the oracle h^0
            let h1 = h0 as i64 - d.degree() - 1 + curve.genus() as i64;
            Ok(json!({ "task": name, "h0": h0, "h1": h1 }))
        }
        "semigroup" => Ok(json!({ "task": name, "gaps": semigroup_gaps_by_enumeration(&u64s("generators")?)? })),
        "closure" => {
            let weights = u64s("weights")?;
            let pieces = crate::model::pieces_from_json(&weights, task.get("pieces").unwrap_or(&Value::Null))?;
            Ok(json!({
                "task": name,
                "closed": closure_by_multiplication(&weights, &pieces),
                "gap": gap_by_count(&weights, &pieces),
            }))
        }
        "hilbert" => {
            let n = task.get("n").and_then(Value::as_u64).ok_or_else(|| Error::InvalidInput("missing \"n\"".into()))?;
            let (a, b) = hilbert_by_monomial_count(n as usize, 6)
                .ok_or_else(|| Error::Consistency("monomial counts are not linear".into()))?;
            Ok(json!({ "task": name, "hilbert_polynomial": [a, b] }))
        }
        "series" => {
            let f = BiPoly::from_json(task.get("f").unwrap_or(&Value::Null))?;
            let point = task.get("point").and_then(Value::as_array).filter(|p| p.len() == 2)
                .ok_or_else(|| Error::InvalidInput("\"point\" must be [x0, y0]".into()))?;
            let x0 = crate::algebra::value_to_rational(&point[0])?;
            let y0 = crate::algebra::value_to_rational(&point[1])?;
            let order = task.get("order").and_then(Value::as_u64).unwrap_or(6) as usize;
            let (coeffs, ok) = series_resubstitution(&f, (&x0, &y0), order)?;
            Ok(json!({ "task": name, "coefficients": crate::algebra::rationals_to_value(&coeffs), "resubstitution_vanishes": ok }))
        }
        "section-dimensions" => {
            let curve = curve_of(task)?;
            let horizon = task.get("horizon").and_then(Value::as_u64).ok_or_else(|| Error::InvalidInput("missing \"horizon\"".into()))?;
            Ok(json!({ "task": name, "dims_A": section_dimensions_by_vanishing(&curve, horizon)? }))
        }
        "form-order-profile" => {
            let curve = curve_of(task)?;
            let i = task.get("point").and_then(Value::as_u64).unwrap_or(0) as usize;
            let max = task.get("max").and_then(Value::as_u64).unwrap_or(2 * curve.genus() as u64);
            Ok(json!({ "task": name, "order_profile": form_order_profile(&curve, i, max)? }))
        }
        "weierstrass-gaps" => {
            let curve = curve_of(task)?;
            let i = task.get("point").and_then(Value::as_u64).unwrap_or(0) as usize;
            Ok(json!({ "task": name, "gaps": weierstrass_gaps_by_dimension(&curve, i)? }))
        }
        "cutoff" => {
            let g = task.get("genus").and_then(Value::as_u64).ok_or_else(|| Error::InvalidInput("missing \"genus\"".into()))?;
            Ok(json!({ "task": name, "M_bound": cutoff_by_search(g as usize, &u64s("weights")?) }))
        }
        "planted-rank" => {
            let get = |k: &str| task.get(k).and_then(Value::as_u64).ok_or_else(|| Error::InvalidInput(format!("missing {k:?}")));
            let (_, r) = planted_rank(get("seed")?, get("rows")? as usize, get("cols")? as usize, get("planted")? as usize);
            Ok(json!({ "task": name, "rank": r }))
        }
        "leading-coefficients" => {
            let curve = curve_of(task)?;
            let f = hyper_polynomial(&curve)?;
            let mut orders = Vec::new();
            let mut leading = Vec::new();
            for (p, r) in polynomial_pairs(task)? {
                let (m, c) = leading_at_infinity(&f, &p, &r).ok_or_else(|| Error::InvalidInput("constant function".into()))?;
                orders.push(m);
                leading.push(c);
            }
            Ok(json!({ "task": name, "pole_orders": orders, "leading": crate::algebra::rationals_to_value(&leading) }))
        }
        "family-member" => {
            let curve = curve_of(task)?;
            let f = hyper_polynomial(&curve)?;
            let t = crate::algebra::value_to_rational(task.get("t").unwrap_or(&Value::Null))?;
            let pt = task.get("at").and_then(Value::as_array).filter(|p| p.len() == 2)
                .ok_or_else(|| Error::InvalidInput("\"at\" must be [x, y]".into()))?;
            let x = crate::algebra::value_to_rational(&pt[0])?;
            let y = crate::algebra::value_to_rational(&pt[1])?;
            let mut pairs = polynomial_pairs(task)?;
            pairs.sort_by_key(|(p, r)| leading_at_infinity(&f, p, r).map(|l| l.0));
            let mut out = vec![Rational::one()];
            for (p, r) in pairs {
                let (m, _) = leading_at_infinity(&f, &p, &r).ok_or_else(|| Error::InvalidInput("constant function".into()))?;
                out.push(rpow_u(&t, m) * (p.eval(&x) + r.eval(&x) * &y));
            }
            Ok(json!({ "task": name, "value": crate::algebra::rationals_to_value(&out) }))
        }
        "chart-milnor" => {
            let labels: Vec<String> = u64s("weights")?.into_iter().map(|d| format!("A_{}", chart_milnor_number(d))).collect();
            Ok(json!({ "task": name, "labels": labels }))
        }
        other => Err(Error::InvalidInput(format!("unknown oracle task {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::frac;

    fn elliptic(points: Vec<PointSpec>) -> MarkedCurve {
        let w = vec![1; points.len()];
        MarkedCurve::new(Backend::Elliptic { a: q(0), b: q(1) }, points, w).unwrap()
    }

    #[test]
    fn milnor_numbers_of_charts() {
        assert_eq!((1..=5).map(chart_milnor_number).collect::<Vec<_>>(), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn cusp_series() {
        let f = BiPoly::from_terms([((0, 2), q(1)), ((3, 0), q(-1)), ((0, 0), q(-1))]);
        let (c, ok) = series_resubstitution(&f, (&q(0), &q(1)), 6).unwrap();
        assert!(ok);
        assert_eq!(c, vec![q(1), q(0), q(0), frac(1, 2), q(0), q(0), frac(-1, 8)]);
        assert!(!resubstitution_residual(&f, &q(0), &[q(1), q(1)], 3).iter().all(Zero::is_zero));
    }

    #[test]
    fn semigroups() {
        assert_eq!(semigroup_gaps_by_enumeration(&[2, 5]).unwrap(), vec![1, 3]);
        assert_eq!(semigroup_gaps_by_enumeration(&[3, 5, 7]).unwrap(), vec![1, 2, 4]);
        assert!(semigroup_gaps_by_enumeration(&[4, 6]).is_err());
    }

    #[test]
    fn rr_oracle_elliptic() {
        let c = elliptic(vec![PointSpec::Infinity { sign: 1 }]);
        let dims: Vec<usize> =
            (0..5).map(|m| rr_dimension_by_vanishing(&c, &IntegerDivisor::new(vec![m])).unwrap()).collect();
        assert_eq!(dims, vec![1, 1, 2, 3, 4]);
        let c = elliptic(vec![
            PointSpec::Affine { x: q(0), y: q(1) },
            PointSpec::Affine { x: q(0), y: q(-1) },
            PointSpec::Affine { x: q(-1), y: q(0) },
        ]);
        for d in [[1, 0, 0], [1, 1, 0], [0, 0, 2], [2, 1, 1], [0, 0, 1]] {
            let d = IntegerDivisor::new(d.to_vec());
            let expected = crate::curve::h_dims(&c, &d).unwrap().0;
            assert_eq!(rr_dimension_by_vanishing(&c, &d).unwrap(), expected, "{}", d.render());
        }
    }

    #[test]
    fn rr_oracle_genus_two() {
        let f = UPoly::new(vec![q(1), q(0), q(0), q(0), q(0), q(1)]);
        let c = MarkedCurve::new(
            Backend::Hyperelliptic { f },
            vec![PointSpec::Infinity { sign: 1 }, PointSpec::Affine { x: q(-1), y: q(0) }],
            vec![1, 1],
        )
        .unwrap();
        assert_eq!(weierstrass_gaps_by_dimension(&c, 0).unwrap(), vec![1, 3]);
        assert_eq!(weierstrass_gaps_by_dimension(&c, 1).unwrap(), vec![1, 3]);
    }

    #[test]
    fn hilbert_counts() {
        for n in 1..=6 {
            assert_eq!(hilbert_by_monomial_count(n, 5), Some((n as i64, 1)));
        }
    }

    #[test]
    fn planted() {
        assert_eq!(planted_rank(7, 5, 7, 3).1, Some(3));
    }

    #[test]
    fn closure() {
        let ok = vec![Matrix::from_i64(&[&[1, -1]])];
        assert!(closure_by_multiplication(&[1, 1], &ok));
        let bad = vec![Matrix::from_i64(&[&[1, 1]]), Matrix::zeros(0, 2)];
        assert!(!closure_by_multiplication(&[1, 1], &bad));
        assert_eq!(gap_by_count(&[1, 1], &bad), 3);
        assert_eq!(cutoff_by_search(3, &[2, 3]), 7);
    }
}
