//! Correction terms of lens spaces and of positive rational surgeries, with
//! the `Z_p` labelling of Spin^c structures on `S^3_{p/q}(K)`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DinvError {
    #[error("surgery coefficient {p}/{q} must have p, q >= 1")]
    NonPositive { p: u64, q: u64 },
    #[error("{p} and {q} are not coprime")]
    NotCoprime { p: u64, q: u64 },
    #[error("label {label} out of range for {p}/{q} surgery")]
    InvalidLabel { p: u64, q: u64, label: u64 },
    #[error("spin structure labels need odd p, got {0}")]
    EvenOrder(u64),
    #[error("V sequence has {len} entries but index {needed} is required")]
    VTooShort { len: usize, needed: u64 },
}

fn check_pq(p: u64, q: u64) -> Result<(), DinvError> {
    if p == 0 || q == 0 {
        return Err(DinvError::NonPositive { p, q });
    }
    if p.gcd(&q) != 1 {
        return Err(DinvError::NotCoprime { p, q });
    }
    Ok(())
}

/// A Spin^c structure `t_label` on `p/q` surgery on a knot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpinC {
    p: u64,
    q: u64,
    label: u64,
}

impl SpinC {
    pub fn new(p: u64, q: u64, label: u64) -> Result<Self, DinvError> {
        check_pq(p, q)?;
        if label >= p {
            return Err(DinvError::InvalidLabel { p, q, label });
        }
        Ok(SpinC { p, q, label })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn label(&self) -> u64 {
        self.label
    }

    /// The conjugate structure, `t_{q-1-i}`.
    pub fn conjugate(&self) -> SpinC {
        let label = (self.q as i64 - 1 - self.label as i64).rem_euclid(self.p as i64) as u64;
        SpinC { label, ..*self }
    }
}

type Memo = Mutex<HashMap<(u64, u64, u64), Rational>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

fn lens_d_rec(p: u64, q: u64, i: u64) -> Rational {
    if p == 1 {
        return Rational::zero();
    }
    if let Some(v) = memo().lock().unwrap().get(&(p, q, i)) {
        return v.clone();
    }
    let (r, j) = (p % q, i % q);
    let centred = BigInt::from(2 * i as i128 + 1 - p as i128 - q as i128);
    let quarter = Rational::new(BigInt::from(-1), BigInt::from(4));
    let square = Rational::new(
        &centred * &centred,
        BigInt::from(4) * BigInt::from(p) * BigInt::from(q),
    );
    let d = quarter + square - lens_d_rec(q, r, j);
    memo().lock().unwrap().insert((p, q, i), d.clone());
    d
}

/// `d(S^3_{p/q}(U), t_i) = d(L(p,q), i)` by the recursion
/// `d(L(p,q), i) = -1/4 + (2i+1-p-q)^2 / 4pq - d(L(q, p mod q), i mod q)`,
/// valid for `0 <= i < p + q`.
pub fn lens_d(p: u64, q: u64, i: u64) -> Result<Rational, DinvError> {
    check_pq(p, q)?;
    if i >= p + q {
        return Err(DinvError::InvalidLabel { p, q, label: i });
    }
    Ok(lens_d_rec(p, q, i))
}

/// `d(S^3_{p/q}(K), t_i) = d(S^3_{p/q}(U), t_i) - 2 max{V_{⌊i/q⌋}, V_{⌊(p+q-1-i)/q⌋}}`.
pub fn niwu_d(p: u64, q: u64, i: u64, v: &[u64]) -> Result<Rational, DinvError> {
    check_pq(p, q)?;
    if i >= p {
        return Err(DinvError::InvalidLabel { p, q, label: i });
    }
    let (a, b) = (i / q, (p + q - 1 - i) / q);
    let fetch = |k: u64| {
        v.get(k as usize).copied().ok_or(DinvError::VTooShort {
            len: v.len(),
            needed: k,
        })
    };
    let correction = fetch(a)?.max(fetch(b)?);
    Ok(lens_d(p, q, i)? - Rational::from_integer(BigInt::from(2 * correction)))
}

/// Number of `V_k` terms `niwu_d` may consult for `p/q` surgery.
pub fn v_terms_needed(p: u64, q: u64) -> u64 {
    p.div_ceil(q) + 1
}

/// Label of the spin structure for odd `p`: the integer among
/// `(q-1)/2` and `(p+q-1)/2`, reduced mod `p`.
pub fn spin_label(p: u64, q: u64) -> Result<u64, DinvError> {
    check_pq(p, q)?;
    if p.is_multiple_of(2) {
        return Err(DinvError::EvenOrder(p));
    }
    let half = if q % 2 == 1 {
        (q - 1) / 2
    } else {
        (p + q - 1) / 2
    };
    Ok(half % p)
}

/// Label of `s_{mμ} = s_0 + m·μ̂`. Adding `μ̂` moves the label by `q`, since
/// `t_j = t_i + (j - i) q^* μ̂` with `q q^* ≡ 1 (mod p)`.
pub fn translate_s_to_t(p: u64, q: u64, m: i64) -> Result<u64, DinvError> {
    let spin = spin_label(p, q)? as i128;
    Ok((spin + m as i128 * q as i128).rem_euclid(p as i128) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn anchors_at_nine_fourths() {
        assert_eq!(lens_d(9, 4, 0).unwrap(), rat(0, 1));
        assert_eq!(lens_d(9, 4, 6).unwrap(), rat(0, 1));
        assert_eq!(lens_d(1, 1, 0).unwrap(), rat(0, 1));
    }

    #[test]
    fn l41_table() {
        let got: Vec<Rational> = (0..4).map(|i| lens_d(4, 1, i).unwrap()).collect();
        assert_eq!(got, vec![rat(3, 4), rat(0, 1), rat(-1, 4), rat(0, 1)]);
    }

    #[test]
    fn nine_fourths_symmetric() {
        for i in 0..9 {
            let t = SpinC::new(9, 4, i).unwrap();
            assert_eq!(
                lens_d(9, 4, i).unwrap(),
                lens_d(9, 4, t.conjugate().label()).unwrap()
            );
        }
    }

    #[test]
    fn label_errors() {
        assert_eq!(
            lens_d(9, 4, 13),
            Err(DinvError::InvalidLabel {
                p: 9,
                q: 4,
                label: 13
            })
        );
        assert_eq!(lens_d(9, 3, 0), Err(DinvError::NotCoprime { p: 9, q: 3 }));
        assert_eq!(lens_d(0, 3, 0), Err(DinvError::NonPositive { p: 0, q: 3 }));
        assert!(SpinC::new(9, 4, 9).is_err());
    }

    #[test]
    fn niwu() {
        let v = [4, 3, 3, 2, 1];
        assert_eq!(niwu_d(9, 4, 0, &v).unwrap(), rat(-8, 1));
        assert_eq!(niwu_d(9, 4, 6, &v).unwrap(), rat(-6, 1));
        assert_eq!(
            niwu_d(9, 4, 0, &[4, 3]),
            Err(DinvError::VTooShort { len: 2, needed: 3 })
        );
        assert_eq!(v_terms_needed(9, 4), 4);
    }

    #[test]
    fn spin_labels() {
        assert_eq!(spin_label(9, 4), Ok(6));
        assert_eq!(spin_label(3, 1), Ok(0));
        assert_eq!(spin_label(5, 2), Ok(3));
        assert_eq!(spin_label(4, 1), Err(DinvError::EvenOrder(4)));
    }

    #[test]
    fn meridian_steps() {
        assert_eq!(translate_s_to_t(9, 4, 3), Ok(0));
        assert_eq!(translate_s_to_t(9, 4, 0), Ok(6));
        assert_eq!(translate_s_to_t(9, 4, 9), Ok(6));
        assert_eq!(translate_s_to_t(9, 4, 6), Ok(3));
        assert_eq!(translate_s_to_t(9, 4, -3), Ok(3));
    }
}
