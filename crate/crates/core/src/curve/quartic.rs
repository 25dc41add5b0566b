//! Smooth plane quartics, handled in an affine chart avoiding the marked points.

use num_traits::{One, Zero};

use super::local::{LocalExpansion, Place};
use crate::algebra::{branch_laurent, eval_bipoly, q, BiPoly, Laurent, Matrix, Rational, TernaryForm, EXACT};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub(crate) struct QuarticModel {
    /// New coordinates `Y = T X`; the chart is `Y0 = 1`.
    pub transform: [[Rational; 3]; 3],
    /// `G(1, x, y)` with `G(Y) = F(T^{-1} Y)`.
    pub affine: BiPoly,
    gx: BiPoly,
    gy: BiPoly,
    pub chart: String,
}

/// Checks smoothness: the partials generate every form of degree 7.
pub(crate) fn is_smooth_quartic(form: &TernaryForm) -> bool {
    let partials: Vec<TernaryForm> = (0..3).map(|v| form.partial(v)).collect();
    let target = TernaryForm::monomials(7);
    let index = |k: &[u32; 3]| target.iter().position(|t| t == k).unwrap();
    let mut rows = Vec::new();
    for p in &partials {
        for mono in TernaryForm::monomials(4) {
            let prod = p.mul(&TernaryForm::from_terms([(mono, Rational::one())]));
            let mut row = vec![Rational::zero(); target.len()];
            for (k, c) in prod.terms() {
                row[index(k)] = c.clone();
            }
            rows.push(row);
        }
    }
    Matrix::from_rows(target.len(), rows).rank() == target.len()
}

fn linear_candidates() -> Vec<[i64; 3]> {
    let mut out = vec![[0, 0, 1], [1, 0, 0], [0, 1, 0]];
    for a in 0..=3i64 {
        for b in -3..=3i64 {
            for c in -3..=3i64 {
                let v = [a, b, c];
                if !out.contains(&v) && v.iter().any(|&e| e != 0) {
                    out.push(v);
                }
            }
        }
    }
    out
}

fn det3(m: &[[Rational; 3]; 3]) -> Rational {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1]) - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

fn inverse3(m: &[[Rational; 3]; 3]) -> [[Rational; 3]; 3] {
    let d = det3(m);
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let (r1, r2) = ((j + 1) % 3, (j + 2) % 3);
            let (c1, c2) = ((i + 1) % 3, (i + 2) % 3);
            (&m[r1][c1] * &m[r2][c2] - &m[r1][c2] * &m[r2][c1]) / &d
        })
    })
}

fn render_linear(l: &[Rational; 3]) -> String {
    let terms: Vec<(Vec<u32>, Rational)> = (0..3)
        .filter(|&k| !l[k].is_zero())
        .map(|k| {
            let mut e = vec![0; 3];
            e[k] = 1;
            (e, l[k].clone())
        })
        .collect();
    crate::algebra::render_terms(&terms, &["X0", "X1", "X2"])
}

impl QuarticModel {
    pub fn new(form: TernaryForm, points: &[[Rational; 3]]) -> Result<Self> {
        if form.homogeneous_degree() != Some(4) {
            return Err(Error::InvalidInput("plane curve must be a homogeneous quartic".into()));
        }
        if !is_smooth_quartic(&form) {
            return Err(Error::SingularCurve(format!("{form} = 0 is singular")));
        }
        let ell = linear_candidates()
            .into_iter()
            .map(|v| [q(v[0]), q(v[1]), q(v[2])])
            .find(|l| points.iter().all(|p| !(0..3).map(|k| &l[k] * &p[k]).sum::<Rational>().is_zero()))
            .expect("some small linear form avoids finitely many points");
        let mut transform = None;
        'outer: for a in 0..3 {
            for b in a + 1..3 {
                let mut t: [[Rational; 3]; 3] = Default::default();
                t[0] = ell.clone();
                t[1][a] = Rational::one();
                t[2][b] = Rational::one();
                if !det3(&t).is_zero() {
                    transform = Some((t, a, b));
                    break 'outer;
                }
            }
        }
        let (transform, a, b) = transform.unwrap();
        let g = form.linear_substitute(&inverse3(&transform)).dehomogenize(0);
        let chart = format!("affine chart {} = 1 with x = X{a}, y = X{b}", render_linear(&ell));
        Ok(QuarticModel { gx: g.dx(), gy: g.dy(), affine: g, transform, chart })
    }

    /// Affine chart coordinates of a projective point.
    pub fn to_chart(&self, p: &[Rational; 3]) -> (Rational, Rational) {
        let y: Vec<Rational> = self.transform.iter().map(|row| (0..3).map(|k| &row[k] * &p[k]).sum()).collect();
        (&y[1] / &y[0], &y[2] / &y[0])
    }

    fn vertical(&self, x0: &Rational, y0: &Rational) -> bool {
        self.gy.eval(x0, y0).is_zero()
    }

    pub fn uniformizer(&self, p: &Place) -> String {
        match p {
            Place::Affine(x0, y0) if self.vertical(x0, y0) => format!("y - {y0} ({})", self.chart),
            Place::Affine(x0, _) => format!("x - {x0} ({})", self.chart),
            Place::Infinity(_) => unreachable!("quartic places are affine"),
        }
    }

    /// Canonical forms `L dx/g_y` for `L = 1, x, y`.
    pub fn form_names(&self) -> Vec<String> {
        ["dx/g_y", "x dx/g_y", "y dx/g_y"].iter().map(|s| format!("{s} in the {}", self.chart)).collect()
    }

    pub fn expand(&self, p: &Place, prec: i64) -> Result<LocalExpansion> {
        let Place::Affine(x0, y0) = p else { unreachable!("quartic places are affine") };
        let (x, y, denom, sign) = if !self.vertical(x0, y0) {
            let x = Laurent::with_prec(0, vec![x0.clone(), Rational::one()], EXACT);
            let y = branch_laurent(&self.affine, x0, y0, prec)?;
            let d = eval_bipoly(&self.gy, &x, &y).truncate(prec);
            (x, y, d, Rational::one())
        } else {
            let y = Laurent::with_prec(0, vec![y0.clone(), Rational::one()], EXACT);
            let x = branch_laurent(&self.affine.swap_vars(), y0, x0, prec)?;
            let d = eval_bipoly(&self.gx, &x, &y).truncate(prec);
            (x, y, d, -Rational::one())
        };
        let dinv = denom.inv().ok_or(Error::SingularBranch)?.scale(&sign);
        let forms = vec![dinv.clone(), x.mul(&dinv), y.mul(&dinv)];
        Ok(LocalExpansion { x, y, forms, uniformizer: self.uniformizer(p) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn special_quartic() -> TernaryForm {
        TernaryForm::from_terms([([3, 0, 1], q(1)), ([0, 4, 0], q(-1)), ([0, 0, 4], q(1))])
    }

    #[test]
    fn smoothness() {
        assert!(is_smooth_quartic(&special_quartic()));
        // X0^4 - X1^2 X2^2 is singular at [0:0:1]
        let bad = TernaryForm::from_terms([([4, 0, 0], q(1)), ([0, 2, 2], q(-1))]);
        assert!(!is_smooth_quartic(&bad));
    }

    #[test]
    fn chart_prefers_x2() {
        let m = QuarticModel::new(special_quartic(), &[[q(0), q(1), q(1)]]).unwrap();
        assert_eq!(m.affine.to_string(), "-y^4 + x^3 + 1");
        assert_eq!(m.to_chart(&[q(0), q(1), q(1)]), (q(0), q(1)));
    }

    #[test]
    fn chart_avoids_all_points() {
        let pts = [[q(0), q(1), q(1)], [q(1), q(0), q(0)]];
        let m = QuarticModel::new(special_quartic(), &pts).unwrap();
        for p in &pts {
            let (x, y) = m.to_chart(p);
            assert!(m.affine.eval(&x, &y).is_zero());
        }
    }
}
