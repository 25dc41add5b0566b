//! Power-series branches of plane curves by Newton iteration.

use num_traits::{One, Zero};

use super::poly::BiPoly;
use super::rational::Rational;
use super::series::{eval_bipoly, Laurent, TruncatedSeries, EXACT};
use crate::error::{Error, Result};

/// Expansion `y(x)` of the branch of `f = 0` through `(x0, y0)`, known to
/// absolute precision `prec` in `z = x - x0`.
pub fn branch_laurent(f: &BiPoly, x0: &Rational, y0: &Rational, prec: i64) -> Result<Laurent> {
    if !f.eval(x0, y0).is_zero() {
        return Err(Error::PointNotOnCurve(format!("({x0}, {y0})")));
    }
    let fy = f.dy();
    if fy.eval(x0, y0).is_zero() {
        return Err(Error::SingularBranch);
    }
    let x = Laurent::with_prec(0, vec![x0.clone(), Rational::one()], EXACT);
    let mut coeffs = vec![y0.clone()];
    let mut p: i64 = 1;
    while p < prec {
        let next = (2 * p).min(prec);
        let y = Laurent::with_prec(0, coeffs.clone(), EXACT);
        let val = eval_bipoly(f, &x, &y).truncate(next);
        let slope = eval_bipoly(&fy, &x, &y).inv_rel(next - p).expect("nonzero slope");
        let y_new = y.sub(&val.mul(&slope)).truncate(next);
        coeffs = y_new.window(0, next).expect("newton step keeps precision");
        p = next;
    }
    coeffs.resize(prec.max(0) as usize, Rational::zero());
    Ok(Laurent::new(0, coeffs))
}

/// Power series `y(x)` of the smooth branch of `f(x, y) = 0` through the
/// point, with `f(x, y(x)) ≡ 0 mod (x - x0)^(order + 1)`.
///
/// ```
/// use pinchlab::algebra::{branch_series, frac, q, BiPoly};
/// // y^2 - x^3 - 1 at (0, 1)
/// let f = BiPoly::from_terms([((0, 2), q(1)), ((3, 0), q(-1)), ((0, 0), q(-1))]);
/// let s = branch_series(&f, (&q(0), &q(1)), 6).unwrap();
/// assert_eq!(s.coeff(3), frac(1, 2));
/// assert_eq!(s.coeff(6), frac(-1, 8));
/// ```
pub fn branch_series(f: &BiPoly, point: (&Rational, &Rational), order: usize) -> Result<TruncatedSeries> {
    let l = branch_laurent(f, point.0, point.1, order as i64 + 1)?;
    Ok(TruncatedSeries::from_laurent(&l, order, "x - x0").expect("window within precision"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{frac, q};

    #[test]
    fn line_through_origin() {
        let f = BiPoly::from_terms([((0, 1), q(1)), ((1, 0), q(-1))]);
        let s = branch_series(&f, (&q(0), &q(0)), 4).unwrap();
        assert_eq!(s.coefficients, vec![q(0), q(1), q(0), q(0), q(0)]);
    }

    #[test]
    fn square_root_branch_squares_back() {
        let f = BiPoly::from_terms([((0, 2), q(1)), ((3, 0), q(-1)), ((0, 0), q(-1))]);
        let s = branch_series(&f, (&q(0), &q(1)), 6).unwrap();
        assert_eq!(
            s.coefficients,
            vec![q(1), q(0), q(0), frac(1, 2), q(0), q(0), frac(-1, 8)]
        );
        let sq = s.mul(&s);
        assert_eq!(sq.coefficients, vec![q(1), q(0), q(0), q(1), q(0), q(0), q(0)]);
    }

    #[test]
    fn vertical_tangent_is_rejected() {
        // y^2 = x at the origin
        let f = BiPoly::from_terms([((0, 2), q(1)), ((1, 0), q(-1))]);
        assert_eq!(branch_series(&f, (&q(0), &q(0)), 3), Err(Error::SingularBranch));
    }

    #[test]
    fn quartic_chart_branch() {
        // x^3 - y^4 + 1 at (0, 1)
        let f = BiPoly::from_terms([((3, 0), q(1)), ((0, 4), q(-1)), ((0, 0), q(1))]);
        let s = branch_series(&f, (&q(0), &q(1)), 5).unwrap();
        assert_eq!(s.coeff(3), frac(1, 4));
        let x = Laurent::with_prec(0, vec![q(0), q(1)], EXACT);
        let back = eval_bipoly(&f, &x, &s.to_laurent());
        assert!(back.window(0, 6).unwrap().iter().all(Zero::is_zero));
    }
}
