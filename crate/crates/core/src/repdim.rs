//! Dimension of simple correspondence functors.
//!
//! For a poset `(E, R)`, a simple `k Aut(E, R)`-module `V` and a finite set `X`,
//!
//! ```text
//! dim S_{E,R,V}(X) = dim V / |Aut(E,R)| · Σ_{i=0}^{|E|} (-1)^i C(|E|, i) (|G| - i)^{|X|}
//! ```
//!
//! where `|G|` is the size of the germ closure. Only `dim V` enters, so the
//! module is represented by that integer.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::closure::GermClosure;
use crate::poset::Poset;

/// Which poset the germ closure is taken over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum Orientation {
    /// `G(E)`.
    #[default]
    E,
    /// `G(E^op)`.
    Eop,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimError {
    #[error("alternating sum {sum} is not divisible by |Aut| = {aut}")]
    DivisibilityViolation { sum: BigInt, aut: u64 },
    #[error("alternating sum {sum} is negative")]
    Negative { sum: BigInt },
    #[error("dim V must be positive")]
    ZeroDimV,
}

#[derive(Debug, Clone)]
pub struct DimQuery<'a> {
    pub poset: &'a Poset,
    pub x_size: u32,
    pub dim_v: BigUint,
    pub orientation: Orientation,
}

/// `|G(E)|`.
pub fn g_size(poset: &Poset) -> usize {
    GermClosure::new(poset).len()
}

/// `|G(E)|` or `|G(E^op)|`.
pub fn g_size_oriented(poset: &Poset, orientation: Orientation) -> usize {
    match orientation {
        Orientation::E => g_size(poset),
        Orientation::Eop => g_size(&poset.opposite()),
    }
}

/// `Σ_{i=0}^{e} (-1)^i C(e, i) (g - i)^x`, exact, with `0^0 = 1`.
pub fn alternating_sum(e: usize, g: usize, x: u32) -> BigInt {
    let mut sum = BigInt::zero();
    let mut binom = BigInt::one();
    for i in 0..=e {
        let base = BigInt::from(g as i64 - i as i64);
        let term = &binom * num_traits::pow(base, x as usize);
        if i % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        binom = binom * BigInt::from(e - i) / BigInt::from(i + 1);
    }
    sum
}

/// Evaluates the formula from precomputed `|E|`, `|G|` and `|Aut(E)|`.
pub fn dimension_from_parts(e: usize, g: usize, aut: u64, x: u32, dim_v: &BigUint) -> Result<BigUint, DimError> {
    if dim_v.is_zero() {
        return Err(DimError::ZeroDimV);
    }
    let sum = alternating_sum(e, g, x);
    let aut_big = BigInt::from(aut);
    if !(&sum % &aut_big).is_zero() {
        return Err(DimError::DivisibilityViolation { sum, aut });
    }
    if sum.sign() == Sign::Minus {
        return Err(DimError::Negative { sum });
    }
    let (_, magnitude) = (sum / aut_big).into_parts();
    Ok(magnitude * dim_v)
}

pub fn dimension(query: &DimQuery) -> Result<BigUint, DimError> {
    let g = g_size_oriented(query.poset, query.orientation);
    let aut = query.poset.automorphism_count();
    dimension_from_parts(query.poset.len(), g, aut, query.x_size, &query.dim_v)
}

/// One row of a dimension table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimRow {
    pub x_size: u32,
    pub dimension: String,
}

/// Dimensions for `|X|` in `x_min..=x_max`, printed in full.
pub fn dimension_table(
    poset: &Poset,
    x_min: u32,
    x_max: u32,
    dim_v: &BigUint,
    orientation: Orientation,
) -> Result<Vec<DimRow>, DimError> {
    let g = g_size_oriented(poset, orientation);
    let aut = poset.automorphism_count();
    (x_min..=x_max)
        .map(|x| {
            dimension_from_parts(poset.len(), g, aut, x, dim_v).map(|d| DimRow {
                x_size: x,
                dimension: d.to_string(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::default_labels;

    fn one() -> BigUint {
        BigUint::one()
    }

    #[test]
    fn g_sizes() {
        assert_eq!(g_size(&Poset::antichain(Vec::<String>::new()).unwrap()), 1);
        for n in 1..=5 {
            assert_eq!(g_size(&Poset::chain(default_labels(n)).unwrap()), n + 1);
        }
        for n in 2..=5 {
            assert_eq!(g_size(&Poset::antichain(default_labels(n)).unwrap()), n + 2);
        }
    }

    #[test]
    fn zero_to_the_zero() {
        assert_eq!(alternating_sum(1, 1, 0), BigInt::zero());
        assert_eq!(alternating_sum(0, 0, 0), BigInt::one());
        // 2 - 3 + 0 - (-1): the i = 3 term has a negative base.
        assert_eq!(alternating_sum(3, 2, 1), BigInt::zero());
        // 8 - 3 + 0 - (-1)
        assert_eq!(alternating_sum(3, 2, 3), BigInt::from(6));
    }

    #[test]
    fn small_dimensions() {
        let empty = Poset::antichain(Vec::<String>::new()).unwrap();
        let point = Poset::chain(default_labels(1)).unwrap();
        let pair = Poset::antichain(default_labels(2)).unwrap();
        let q = |p, x| DimQuery {
            poset: p,
            x_size: x,
            dim_v: one(),
            orientation: Orientation::E,
        };
        for x in 0..=10 {
            assert_eq!(dimension(&q(&empty, x)).unwrap(), one());
            assert_eq!(dimension(&q(&point, x)).unwrap(), (BigUint::one() << x) - 1u32);
        }
        assert_eq!(dimension(&q(&pair, 2)).unwrap(), one());
    }

    #[test]
    fn divisibility_violation_is_reported() {
        // 4^2 - 2·3^2 + 2^2 = 2 is not a multiple of 4.
        let err = dimension_from_parts(2, 4, 4, 2, &one()).unwrap_err();
        assert_eq!(
            err,
            DimError::DivisibilityViolation {
                sum: BigInt::from(2),
                aut: 4
            }
        );
    }
}
