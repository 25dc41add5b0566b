//! Hyperelliptic model `y^2 = f(x)` (elliptic curves included).

use num_traits::{One, Signed, Zero};

use super::local::{LocalExpansion, Place};
use crate::algebra::{branch_laurent, q, rational_sqrt, BiPoly, Laurent, Rational, UPoly, EXACT};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub(crate) struct HyperModel {
    pub f: UPoly,
    pub genus: usize,
    /// `deg f` odd: a single point at infinity.
    pub odd: bool,
    /// `y^2 - f(x)`.
    pub equation: BiPoly,
    /// `F(s) = s^{deg f} f(1/s)`.
    reversed: UPoly,
}

impl HyperModel {
    pub fn new(f: UPoly) -> Result<Self> {
        let deg = f.degree().unwrap_or(0);
        if deg < 3 {
            return Err(Error::InvalidInput(format!("hyperelliptic f must have degree >= 3, got {deg}")));
        }
        if !f.is_squarefree() {
            return Err(Error::SingularCurve(format!("f = {f} has a repeated root")));
        }
        let mut eq = BiPoly::from_terms([((0, 2), Rational::one())]);
        for (i, c) in f.coeffs().iter().enumerate() {
            eq.add_term((i as u32, 0), -c.clone());
        }
        let mut rev = f.coeffs().to_vec();
        rev.reverse();
        Ok(HyperModel { genus: (deg - 1) / 2, odd: deg % 2 == 1, equation: eq, reversed: UPoly::new(rev), f })
    }

    pub fn contains(&self, x: &Rational, y: &Rational) -> bool {
        y * y == self.f.eval(x)
    }

    /// Image under the hyperelliptic involution `y ↦ -y`.
    pub fn conjugate(&self, p: &Place) -> Place {
        match p {
            Place::Affine(x, y) => Place::Affine(x.clone(), -y.clone()),
            Place::Infinity(s) if !self.odd => Place::Infinity(-s),
            other => other.clone(),
        }
    }

    /// `sqrt(lc f)` for the points at infinity of an even-degree model.
    pub fn infinity_root(&self) -> Result<Rational> {
        rational_sqrt(&self.f.leading()).ok_or_else(|| {
            Error::NeedsExtension(format!(
                "points at infinity of y^2 = {} are not rational (leading coefficient is not a square)",
                self.f
            ))
        })
    }

    pub fn uniformizer(&self, p: &Place) -> String {
        match p {
            Place::Affine(x, y) if y.is_zero() => format!("y at ({x}, 0)"),
            Place::Affine(x, _) if x.is_zero() => "x".into(),
            Place::Affine(x, _) if x.is_negative() => format!("x + {}", -x.clone()),
            Place::Affine(x, _) => format!("x - {x}"),
            Place::Infinity(_) if self.odd => format!("x^{}/y", self.genus),
            Place::Infinity(_) => "1/x".into(),
        }
    }

    /// Local expansion whose base series carries absolute precision `prec`.
    pub fn expand(&self, p: &Place, prec: i64) -> Result<LocalExpansion> {
        let g = self.genus as i64;
        let (x, y, forms) = match p {
            Place::Affine(x0, y0) if !y0.is_zero() => {
                let x = Laurent::with_prec(0, vec![x0.clone(), Rational::one()], EXACT);
                let y = branch_laurent(&self.equation, x0, y0, prec)?;
                let yinv = y.inv().expect("y is a unit at a non-branch point");
                let forms = powers(&x, g).into_iter().map(|xk| xk.mul(&yinv)).collect();
                (x, y, forms)
            }
            Place::Affine(x0, _) => {
                let swapped = self.equation.swap_vars();
                let x = branch_laurent(&swapped, &Rational::zero(), x0, prec)?;
                let y = Laurent::var(EXACT);
                let fp = x.compose_poly(&self.f.derivative()).truncate(prec);
                let two_over = fp.inv().expect("f' is nonzero at a simple root").scale(&q(2));
                let forms = powers(&x, g).into_iter().map(|xk| xk.mul(&two_over)).collect();
                (x, y, forms)
            }
            Place::Infinity(sign) if self.odd => {
                let _ = sign;
                let s = self.solve_s(prec);
                let x = s.inv().expect("s has a double zero");
                let y = x.pow(g).unwrap().shift(-1);
                let ds = s.derivative();
                let forms = (0..g)
                    .map(|k| s.pow(g - k - 2).unwrap().mul(&ds).shift(1).neg())
                    .collect();
                (x, y, forms)
            }
            Place::Infinity(sign) => {
                let root = self.infinity_root()? * q(*sign as i64);
                let weq = BiPoly::from_terms(
                    std::iter::once(((0, 2), Rational::one()))
                        .chain(self.reversed.coeffs().iter().enumerate().map(|(i, c)| ((i as u32, 0), -c.clone()))),
                );
                let w = branch_laurent(&weq, &Rational::zero(), &root, prec)?;
                let x = Laurent::monomial(Rational::one(), -1, EXACT);
                let y = w.shift(-(g + 1));
                let winv = w.inv().expect("w(0) is nonzero");
                let forms = (0..g).map(|k| winv.shift(g - 1 - k).neg()).collect();
                (x, y, forms)
            }
        };
        Ok(LocalExpansion { x, y, forms, uniformizer: self.uniformizer(p) })
    }

    /// Solves `s = t^2 F(s)` for `s = 1/x` in the infinity uniformizer `t`.
    fn solve_s(&self, prec: i64) -> Laurent {
        let mut coeffs: Vec<Rational> = Vec::new();
        let mut p = 2;
        while p < prec {
            let next = (p + 2).min(prec);
            let s = Laurent::with_prec(0, coeffs.clone(), EXACT);
            let rhs = s.compose_poly(&self.reversed).shift(2).truncate(next);
            coeffs = rhs.window(0, next).expect("fixed-point step keeps precision");
            p = next;
        }
        coeffs.resize(prec.max(2) as usize, Rational::zero());
        Laurent::new(0, coeffs)
    }
}

fn powers(x: &Laurent, n: i64) -> Vec<Laurent> {
    let mut out = Vec::new();
    let mut acc = Laurent::exact_constant(Rational::one());
    for _ in 0..n {
        out.push(acc.clone());
        acc = acc.mul(x);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{eval_bipoly, frac};

    fn model(c: &[i64]) -> HyperModel {
        HyperModel::new(UPoly::new(c.iter().map(|&v| q(v)).collect())).unwrap()
    }

    fn satisfies(m: &HyperModel, e: &LocalExpansion, upto: i64) {
        let r = eval_bipoly(&m.equation, &e.x, &e.y);
        let lo = r.start();
        assert!(r.prec() > upto, "precision {} too low", r.prec());
        assert!(r.window(lo, upto).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn infinity_odd_degree() {
        let m = model(&[1, 0, 0, 0, 0, 1]);
        let e = m.expand(&Place::Infinity(1), 20).unwrap();
        assert_eq!(e.x.leading(), Some((-2, q(1))));
        assert_eq!(e.y.leading(), Some((-5, q(1))));
        satisfies(&m, &e, 0);
        // dx/y has a double zero, x dx/y is a unit
        assert_eq!(e.forms[0].valuation(), Some(2));
        assert_eq!(e.forms[1].valuation(), Some(0));
    }

    #[test]
    fn infinity_even_degree() {
        // y^2 = 4x^4 + 1
        let m = model(&[1, 0, 0, 0, 4]);
        let e = m.expand(&Place::Infinity(-1), 12).unwrap();
        assert_eq!(e.y.leading(), Some((-2, q(-2))));
        satisfies(&m, &e, 0);
        assert_eq!(e.forms[0].leading(), Some((0, frac(1, 2))));
    }

    #[test]
    fn branch_point() {
        let m = model(&[1, 0, 0, 1]);
        let e = m.expand(&Place::Affine(q(-1), q(0)), 10).unwrap();
        satisfies(&m, &e, 8);
        // dx/y = 2 dy / f'(x), f'(-1) = 3
        assert_eq!(e.forms[0].leading(), Some((0, frac(2, 3))));
    }

    #[test]
    fn rejects_repeated_root() {
        assert!(HyperModel::new(UPoly::new(vec![q(0), q(0), q(1), q(1)])).is_err());
    }
}
