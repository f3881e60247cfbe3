//! Q/Z-valued linking forms on cyclic groups and their metabolizers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinkingError {
    #[error("group order must be positive")]
    ZeroOrder,
    #[error("self-pairing {value} is singular on Z_{order}")]
    Singular { order: u64, value: String },
}

/// Linking form on `Z_p = <μ>`, determined by `λ(μ, μ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicLinkingForm {
    order: u64,
    self_pairing: Rational,
}

fn frac_part(x: &Rational) -> Rational {
    x - x.floor()
}

impl CyclicLinkingForm {
    /// The form is non-singular exactly when `λ(μ, μ)` has denominator `p`.
    pub fn new(order: u64, self_pairing: Rational) -> Result<Self, LinkingError> {
        if order == 0 {
            return Err(LinkingError::ZeroOrder);
        }
        let self_pairing = frac_part(&self_pairing);
        if *self_pairing.denom() != BigInt::from(order) {
            return Err(LinkingError::Singular {
                order,
                value: self_pairing.to_string(),
            });
        }
        Ok(CyclicLinkingForm {
            order,
            self_pairing,
        })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// `λ(μ, μ)` in `[0, 1)`.
    pub fn self_pairing(&self) -> &Rational {
        &self.self_pairing
    }

    /// `λ(aμ, bμ) = ab λ(μ, μ)` in `[0, 1)`.
    pub fn pair(&self, a: u64, b: u64) -> Rational {
        let p = self.order as u128;
        let ab = (a as u128 % p) * (b as u128 % p) % p;
        frac_part(&(&self.self_pairing * BigInt::from(ab)))
    }

    /// `M^⊥` for `M = <g>`, as a sorted element list.
    pub fn perp(&self, g: u64) -> Vec<u64> {
        (0..self.order)
            .filter(|&x| self.pair(x, g).is_zero())
            .collect()
    }

    /// All subgroups `M = M^⊥`, found by testing `<d>` for each divisor `d`.
    pub fn metabolizers(&self) -> Vec<CyclicSubgroup> {
        let p = self.order;
        (1..=p)
            .filter(|d| p.is_multiple_of(*d))
            .map(|d| CyclicSubgroup::new(p, d % p))
            .filter(|m| m.elements() == self.perp(m.generator()))
            .collect()
    }
}

/// The subgroup `<generator>` of `Z_order`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicSubgroup {
    order_of_group: u64,
    generator: u64,
}

impl CyclicSubgroup {
    pub fn new(order_of_group: u64, generator: u64) -> Self {
        assert!(order_of_group > 0);
        CyclicSubgroup {
            order_of_group,
            generator: generator % order_of_group,
        }
    }

    pub fn generator(&self) -> u64 {
        self.generator
    }

    pub fn order(&self) -> u64 {
        self.order_of_group / self.generator.gcd(&self.order_of_group)
    }

    pub fn elements(&self) -> Vec<u64> {
        let mut out: Vec<u64> = (0..self.order())
            .map(|k| ((k as u128 * self.generator as u128) % self.order_of_group as u128) as u64)
            .collect();
        out.sort_unstable();
        out
    }

    pub fn contains(&self, x: u64) -> bool {
        let step = self.generator.gcd(&self.order_of_group);
        (x % self.order_of_group).is_multiple_of(step)
    }
}

impl Default for CyclicLinkingForm {
    fn default() -> Self {
        CyclicLinkingForm {
            order: 1,
            self_pairing: Rational::zero(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational as q;
    use num_traits::One;

    #[test]
    fn pairing_on_z9() {
        let f = CyclicLinkingForm::new(9, q(-4, 9)).unwrap();
        assert_eq!(f.pair(1, 1), q(5, 9));
        assert_eq!(f.pair(3, 3), q(0, 1));
        assert_eq!(f.pair(0, 7), q(0, 1));
        assert!(f.pair(5, 8) < Rational::one());
    }

    #[test]
    fn z9_metabolizer_is_unique() {
        let f = CyclicLinkingForm::new(9, q(-4, 9)).unwrap();
        let ms = f.metabolizers();
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0].generator(), 3);
        assert_eq!(ms[0].elements(), vec![0, 3, 6]);
    }

    #[test]
    fn trivial_group() {
        let f = CyclicLinkingForm::new(1, q(0, 1)).unwrap();
        assert_eq!(f, CyclicLinkingForm::default());
        let ms = f.metabolizers();
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0].elements(), vec![0]);
    }

    #[test]
    fn z4() {
        let f = CyclicLinkingForm::new(4, q(1, 4)).unwrap();
        let ms = f.metabolizers();
        assert_eq!(
            ms.iter().map(|m| m.generator()).collect::<Vec<_>>(),
            vec![2]
        );
    }

    #[test]
    fn non_square_order_has_none() {
        for p in [2, 3, 5, 6, 7, 8, 10, 12] {
            assert!(CyclicLinkingForm::new(p, q(1, p as i64))
                .unwrap()
                .metabolizers()
                .is_empty());
        }
    }

    #[test]
    fn singular_rejected() {
        assert!(matches!(
            CyclicLinkingForm::new(9, q(1, 3)),
            Err(LinkingError::Singular { .. })
        ));
        assert_eq!(
            CyclicLinkingForm::new(0, q(0, 1)),
            Err(LinkingError::ZeroOrder)
        );
    }

    #[test]
    fn subgroup_membership() {
        let m = CyclicSubgroup::new(12, 8);
        assert_eq!(m.order(), 3);
        assert_eq!(m.elements(), vec![0, 4, 8]);
        assert!(m.contains(16));
        assert!(!m.contains(6));
    }
}
