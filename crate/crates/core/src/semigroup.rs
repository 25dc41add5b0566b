//! Numerical semigroups: membership, gaps, minimal generators and monomial curves.

use num_integer::Integer;
use num_traits::One;
use serde_json::{json, Value};

use crate::algebra::{BiPoly, Rational};
use crate::error::{Error, Result};
use crate::param::{BranchParam, Monomial};

/// A cofinite additive submonoid of the non-negative integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    membership: Vec<bool>,
}

/// Builds the semigroup generated by `gens`.
pub fn semigroup_from_generators(gens: &[u64]) -> Result<NumericalSemigroup> {
    NumericalSemigroup::from_generators(gens)
}

/// Returns the sorted gap set and its size.
pub fn gaps_and_genus(s: &NumericalSemigroup) -> (Vec<u64>, usize) {
    let gaps = s.gaps();
    let g = gaps.len();
    (gaps, g)
}

pub fn minimal_generators(s: &NumericalSemigroup) -> Vec<u64> {
    s.minimal_generators()
}

/// The semigroup `{0} ∪ {j > g}` of a generic point on a genus-`g` curve.
pub fn non_weierstrass_semigroup(g: u64) -> Result<NumericalSemigroup> {
    if g == 0 {
        return Err(Error::Precondition("non-Weierstrass semigroup needs g >= 1".into()));
    }
    NumericalSemigroup::from_generators(&((g + 1)..=(2 * g + 1)).collect::<Vec<_>>())
}

/// Monomial curve `x ↦ (x^{m_1}, …, x^{m_k})` over the minimal generators.
pub fn monomial_branch(s: &NumericalSemigroup) -> BranchParam {
    let maps = vec![s.minimal_generators().into_iter().map(|m| Monomial::new(Rational::one(), m)).collect()];
    BranchParam::new(vec!["x".into()], maps)
}

impl NumericalSemigroup {
    pub fn from_generators(gens: &[u64]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::InvalidInput("semigroup needs at least one generator".into()));
        }
        if gens.contains(&0) {
            return Err(Error::InvalidInput("generators must be positive".into()));
        }
        let mut generators = gens.to_vec();
        generators.sort_unstable();
        generators.dedup();
        if generators.iter().fold(0u64, |a, &b| a.gcd(&b)) != 1 {
            return Err(Error::Coprimality(generators));
        }
        let estimate = if generators.len() >= 2 {
            generators[0] * generators[1]
        } else {
            generators[0] + 1
        };
        let mut bound = estimate.max(2) as usize;
        loop {
            let membership = Self::sieve(&generators, bound);
            if let Some(f) = Self::frobenius_in(&membership, generators[0] as usize) {
                let needed = f.map_or(0, |f| f as usize) + *generators.last().unwrap() as usize + 1;
                if needed <= bound {
                    return Ok(NumericalSemigroup { generators, membership });
                }
                bound = needed;
            } else {
                bound *= 2;
            }
        }
    }

    /// Semigroup with the given member predicate on `0..bound`; the
    /// predicate must describe a numerical semigroup whose gaps lie below
    /// `bound / 2`.
    pub fn from_members(members: &[bool]) -> Result<Self> {
        let bound = members.len();
        if bound == 0 || !members[0] {
            return Err(Error::InvalidInput("0 must be a member".into()));
        }
        for a in 1..bound {
            for b in a..bound - a {
                if members[a] && members[b] && !members[a + b] {
                    return Err(Error::Validation {
                        degree: a + b,
                        reason: format!("{a} and {b} are members but their sum is not"),
                    });
                }
            }
        }
        let mut gens = Vec::new();
        for m in 1..bound {
            if members[m] && !(1..m).any(|a| members[a] && members[m - a]) {
                gens.push(m as u64);
            }
        }
        let s = Self::from_generators(&gens)?;
        if (0..bound).any(|k| s.contains(k as u64) != members[k]) {
            return Err(Error::Validation { degree: bound, reason: "member table is not cofinite below its bound".into() });
        }
        Ok(s)
    }

    fn sieve(gens: &[u64], bound: usize) -> Vec<bool> {
        let mut m = vec![false; bound + 1];
        m[0] = true;
        for k in 1..=bound {
            m[k] = gens.iter().any(|&g| g as usize <= k && m[k - g as usize]);
        }
        m
    }

    /// Largest gap if a run of `run` consecutive members was seen (outer
    /// `Some`); the inner value is `None` when there are no gaps.
    fn frobenius_in(m: &[bool], run: usize) -> Option<Option<u64>> {
        let mut streak = 0;
        let mut last_gap = None;
        for (k, &b) in m.iter().enumerate() {
            if b {
                streak += 1;
                if streak >= run {
                    return Some(last_gap);
                }
            } else {
                streak = 0;
                last_gap = Some(k as u64);
            }
        }
        None
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn bound(&self) -> u64 {
        (self.membership.len() - 1) as u64
    }

    pub fn contains(&self, n: u64) -> bool {
        self.membership.get(n as usize).copied().unwrap_or(true)
    }

    pub fn gaps(&self) -> Vec<u64> {
        (0..self.membership.len() as u64).filter(|&k| !self.contains(k)).collect()
    }

    pub fn genus(&self) -> usize {
        self.gaps().len()
    }

    pub fn frobenius(&self) -> Option<u64> {
        self.gaps().last().copied()
    }

    pub fn minimal_generators(&self) -> Vec<u64> {
        self.generators
            .iter()
            .copied()
            .filter(|&m| !(1..m).any(|a| self.contains(a) && self.contains(m - a)))
            .collect()
    }

    /// Members `m` with `0 ≤ m ≤ n`.
    pub fn members_up_to(&self, n: u64) -> Vec<u64> {
        (0..=n).filter(|&k| self.contains(k)).collect()
    }

    /// `v^{m_1} = u^{m_2}` for a two-generator semigroup.
    pub fn plane_equation(&self) -> Option<BiPoly> {
        let g = self.minimal_generators();
        (g.len() == 2).then(|| {
            BiPoly::from_terms([((0, g[0] as u32), Rational::one()), ((g[1] as u32, 0), -Rational::one())])
        })
    }

    pub fn render_plane_equation(&self) -> Option<String> {
        let g = self.minimal_generators();
        (g.len() == 2).then(|| format!("v^{} = u^{}", g[0], g[1]))
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "generators": self.minimal_generators(),
            "gaps": self.gaps(),
            "genus": self.genus(),
        });
        if let Some(eq) = self.render_plane_equation() {
            v["plane_equation"] = Value::String(eq);
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_five() {
        let s = semigroup_from_generators(&[2, 5]).unwrap();
        assert_eq!(s.members_up_to(8), vec![0, 2, 4, 5, 6, 7, 8]);
        assert_eq!(gaps_and_genus(&s), (vec![1, 3], 2));
        assert_eq!(s.render_plane_equation().unwrap(), "v^2 = u^5");
    }

    #[test]
    fn trivial_semigroup() {
        let s = semigroup_from_generators(&[1]).unwrap();
        assert_eq!(gaps_and_genus(&s), (vec![], 0));
        assert_eq!(s.minimal_generators(), vec![1]);
        assert_eq!(monomial_branch(&s).render_branch(0), "x ↦ (x)");
    }

    #[test]
    fn special_genus_three() {
        let s = semigroup_from_generators(&[3, 5, 7]).unwrap();
        assert_eq!(s.gaps(), vec![1, 2, 4]);
        assert_eq!(monomial_branch(&s).render_branch(0), "x ↦ (x^3, x^5, x^7)");
    }

    #[test]
    fn redundant_generator_dropped() {
        let s = semigroup_from_generators(&[2, 4, 5]).unwrap();
        assert_eq!(s.minimal_generators(), vec![2, 5]);
    }

    #[test]
    fn non_weierstrass() {
        assert_eq!(non_weierstrass_semigroup(1).unwrap().minimal_generators(), vec![2, 3]);
        assert_eq!(non_weierstrass_semigroup(2).unwrap().minimal_generators(), vec![3, 4, 5]);
        assert!(non_weierstrass_semigroup(0).is_err());
    }

    #[test]
    fn coprimality_is_enforced() {
        assert_eq!(semigroup_from_generators(&[4, 6]), Err(Error::Coprimality(vec![4, 6])));
    }

    #[test]
    fn non_coprime_leading_pair() {
        // gcd(4, 6) = 2, so 4·6 is not a safe bound on its own
        let s = semigroup_from_generators(&[4, 6, 9]).unwrap();
        assert!(s.bound() >= s.frobenius().unwrap() + 9);
        assert_eq!(s.frobenius(), Some(11));
        assert!((12..40).all(|k| s.contains(k)));
    }

    #[test]
    fn member_table_round_trip() {
        let s = semigroup_from_generators(&[3, 5, 7]).unwrap();
        let table: Vec<bool> = (0..12).map(|k| s.contains(k)).collect();
        assert_eq!(NumericalSemigroup::from_members(&table).unwrap(), s);
    }
}
