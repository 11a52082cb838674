//! Laurent polynomials in `L`, motivic classes and Betti numbers.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::cells::{cell_dim, enumerate_trees};
use crate::error::Result;
use crate::partitions::partitions_unordered;
use crate::path::PathOrder;
use crate::quiver::{DimVector, FramedQuiver};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

/// One `(degree, coeff)` row of JSON output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Term {
    pub degree: i64,
    pub coeff: String,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly::default()
    }

    pub fn monomial(exp: i64, c: BigInt) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        p.add_term(exp, c);
        p
    }

    pub fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Nonzero terms by descending exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().rev().map(|(&e, c)| (e, c))
    }

    pub fn degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn low_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Value at `L = 1`.
    pub fn at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    pub fn shift(&self, by: i64) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + by, c.clone())).collect(),
        }
    }

    pub fn json_terms(&self) -> Vec<Term> {
        self.terms()
            .map(|(degree, c)| Term {
                degree,
                coeff: c.to_string(),
            })
            .collect()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            let var = match e {
                0 => String::new(),
                1 => "L".to_string(),
                _ => format!("L^{e}"),
            };
            match (a.is_one(), var.is_empty()) {
                (_, true) => write!(f, "{a}")?,
                (true, false) => f.write_str(&var)?,
                (false, false) => write!(f, "{a}*{var}")?,
            }
        }
        Ok(())
    }
}

/// `L^{w·d − χ(d,d)} Σ_{λ ∈ S(d)} L^{−|λ|}`.
pub fn motivic_class(fq: &FramedQuiver, d: &DimVector) -> Result<LaurentPoly> {
    let top = fq.hilb_dim(d)?;
    let mut p = LaurentPoly::zero();
    for lam in partitions_unordered(fq, d)? {
        p.add_term(top - lam.size() as i64, BigInt::one());
    }
    Ok(p)
}

/// The same class summed over cells `L^{d(S)}` of the trees for `order`.
pub fn motivic_class_from_trees(fq: &FramedQuiver, d: &DimVector, order: &PathOrder) -> Result<LaurentPoly> {
    let mut p = LaurentPoly::zero();
    for s in enumerate_trees(fq, d, order)? {
        p.add_term(cell_dim(fq, &s, order) as i64, BigInt::one());
    }
    Ok(p)
}

/// `(2n, #{λ ∈ S(d) : |λ| = n})` for every `n` with a nonzero count.
pub fn betti_numbers(fq: &FramedQuiver, d: &DimVector) -> Result<Vec<(u64, u64)>> {
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for lam in partitions_unordered(fq, d)? {
        *counts.entry(2 * lam.size()).or_default() += 1;
    }
    Ok(counts.into_iter().collect())
}

/// `Σ_T L^{inv(T)}` over `d`-subsets `T` of `{1..w}`, where `inv(T)` counts
/// pairs `t ∉ T`, `s ∈ T` with `t < s`.
pub fn gaussian_binomial(w: u32, d: u32) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    if d > w {
        return p;
    }
    for t in crate::linalg::subsets(w as usize, d as usize) {
        let inv: i64 = t
            .iter()
            .map(|&s| (0..s).filter(|x| !t.contains(x)).count() as i64)
            .sum();
        p.add_term(inv, BigInt::one());
    }
    p
}
