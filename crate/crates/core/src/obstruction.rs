//! The full obstruction for the family `L_n`: V_0 and V_1 of `2J_n`, the
//! d̄-invariants of `Z_n = S^3_{9/4}(J_n # J_n^r)` over its metabolizer, and
//! `d(Z_n, s_0)` for telling members of the family apart.
//!
//! `J_n` itself is never built. Its Floer invariants are replaced by those
//! of a ν⁺-equivalent sum of L-space knots, recorded in [`PROVENANCE`].

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cfk::{self, CfkError};
use crate::dinv::{self, DinvError};
use crate::laurent::{cable_alexander, torus_alexander, LaurentError};
use crate::linking::{CyclicLinkingForm, CyclicSubgroup};
use crate::reduced::{self, Tower};
use crate::staircase::{
    representative_staircase, staircase_from_alexander, StaircaseError, StaircaseList,
};
use crate::{qserde, rational, AlexanderPoly, Rational};

pub const SURGERY_P: u64 = 9;
pub const SURGERY_Q: u64 = 4;

/// Largest `n` for which `compute_v01` also runs the brute-force tensor.
pub const BRUTE_FORCE_MAX_N: u64 = 2;

/// The ν⁺-substitutions behind the computation, in order.
pub const PROVENANCE: [&str; 5] = [
    "nD ~ T(2,2n+1), hence (nD)_{2,4n-1} ~ K_n = T(2,2n+1;2,4n-1) (cabling preserves nu+-equivalence)",
    "-T(2,4n-1) # 2(n-1)D ~ -(2n-1)T(2,3) # 2(n-1)T(2,3) ~ -T(2,3)",
    "J_n = (nD)_{2,4n-1} # -T(2,4n-1) # 2(n-1)D ~ K_n # -T(2,3)",
    "2J_n ~ 2K_n # -T(2,5), using 2T(2,3) ~ T(2,5); equal V_k on both sides",
    "CFK(J_n^r) = CFK(J_n), so Z_n = S^3_{9/4}(J_n # J_n^r) uses the V_k of 2J_n",
];

#[derive(Debug, Error)]
pub enum ObstructionError {
    #[error("family index must be at least 1")]
    ZeroIndex,
    #[error(
        "representative staircase mismatch for n = {n}: formula {formula}, pipeline {pipeline}"
    )]
    RepresentativeMismatch {
        n: u64,
        formula: String,
        pipeline: String,
    },
    #[error("V_{k} mismatch for n = {n}: reduced path {fast}, tensor complex {brute}")]
    OracleMismatch {
        n: u64,
        k: u64,
        fast: u64,
        brute: u64,
    },
    #[error("expected a unique metabolizer, found {0}")]
    Metabolizers(usize),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Staircase(#[from] StaircaseError),
    #[error(transparent)]
    Cfk(#[from] CfkError),
    #[error(transparent)]
    Dinv(#[from] DinvError),
}

/// `Δ_{K_n}` for `K_n = T(2,2n+1;2,4n-1)`.
pub fn kn_alexander(n: u64) -> Result<AlexanderPoly, LaurentError> {
    cable_alexander(&torus_alexander(2, 2 * n + 1)?, 2, 4 * n - 1)
}

/// `(1^n, 2, 3^{n-1})`, the staircase of `K_n`.
pub fn kn_list(n: u64) -> StaircaseList {
    assert!(n >= 1, "family index starts at 1");
    let n = n as usize;
    let mut steps = vec![1; n];
    steps.push(2);
    steps.extend(std::iter::repeat_n(3, n - 1));
    StaircaseList::new(steps).expect("K_n list is valid")
}

#[derive(Debug, Clone)]
pub struct FamilyInstance {
    pub n: u64,
    pub kn_staircase: StaircaseList,
    /// Representative staircase of `2K_n`.
    pub rep_staircase: StaircaseList,
    /// Mirrored in the sum: `-T(2,5)`.
    pub mirror_factor: StaircaseList,
    pub linking: CyclicLinkingForm,
}

/// Derives the representative of `2K_n` from `Δ_{K_n}` and checks it
/// against the closed form `(1^{2n}, 2, 2, 3^{2n-2})`.
pub fn build_family(n: u64) -> Result<FamilyInstance, ObstructionError> {
    if n == 0 {
        return Err(ObstructionError::ZeroIndex);
    }
    let kn = staircase_from_alexander(&kn_alexander(n)?)?;
    let pipeline = representative_staircase(&kn, &kn)?;
    let formula = reduced::family_representative_list(n);
    if pipeline != formula {
        return Err(ObstructionError::RepresentativeMismatch {
            n,
            formula: formula.to_string(),
            pipeline: pipeline.to_string(),
        });
    }
    Ok(FamilyInstance {
        n,
        kn_staircase: kn,
        rep_staircase: pipeline,
        mirror_factor: StaircaseList::new(vec![1, 1])?,
        linking: CyclicLinkingForm::new(SURGERY_P, rational(-4, 9))
            .expect("-4/9 is non-singular on Z_9"),
    })
}

/// Homology tower of `2K_n # -T(2,5)`.
pub fn family_tower(inst: &FamilyInstance) -> Tower {
    reduced::tensor_with_mirror_t25(&reduced::reduce_staircase(&inst.rep_staircase))
}

/// `K_n ⊗ K_n ⊗ CFK(-T(2,5))` as an explicit complex.
pub fn family_tensor_complex(inst: &FamilyInstance) -> cfk::FilteredComplex {
    let k = cfk::staircase_complex(&inst.kn_staircase);
    let m = cfk::mirror(&cfk::staircase_complex(&inst.mirror_factor));
    cfk::tensor(&cfk::tensor(&k, &k), &m)
}

/// `V_0` through `V_kmax` of `2J_n` by the reduced path, cross-checked
/// against the full tensor complex when `n <= BRUTE_FORCE_MAX_N`.
pub fn family_v_sequence(inst: &FamilyInstance, kmax: u64) -> Result<Vec<u64>, ObstructionError> {
    let fast = reduced::fast_vk_sequence(&family_tower(inst), kmax);
    if inst.n <= BRUTE_FORCE_MAX_N {
        let brute = cfk::brute_force_vk_sequence(&family_tensor_complex(inst), kmax)?;
        for (k, (&f, &b)) in fast.iter().zip(&brute).enumerate() {
            if f != b {
                return Err(ObstructionError::OracleMismatch {
                    n: inst.n,
                    k: k as u64,
                    fast: f,
                    brute: b,
                });
            }
        }
    }
    Ok(fast)
}

pub fn compute_v01(inst: &FamilyInstance) -> Result<(u64, u64), ObstructionError> {
    let v = family_v_sequence(inst, 1)?;
    Ok((v[0], v[1]))
}

/// The V-sequence `niwu_d` needs at `9/4` surgery.
fn surgery_v_sequence(inst: &FamilyInstance) -> Result<Vec<u64>, ObstructionError> {
    let kmax = dinv::v_terms_needed(SURGERY_P, SURGERY_Q) - 1;
    let v = reduced::fast_vk_sequence(&family_tower(inst), kmax);
    assert!(v[3] <= v[0], "V_k is non-increasing");
    Ok(v)
}

/// `d̄(Z, s_m) = d(Z, s_m) - d(Z, s_0)` for each `m` in `metabolizer`.
pub fn dbar_values(
    v: &[u64],
    metabolizer: &CyclicSubgroup,
) -> Result<(Rational, BTreeMap<u64, Rational>), DinvError> {
    let d = |m: u64| {
        dinv::niwu_d(
            SURGERY_P,
            SURGERY_Q,
            dinv::translate_s_to_t(SURGERY_P, SURGERY_Q, m as i64)?,
            v,
        )
    };
    let d_spin = d(0)?;
    let mut out = BTreeMap::new();
    for m in metabolizer.elements() {
        out.insert(m, d(m)? - &d_spin);
    }
    Ok((d_spin, out))
}

fn unique_metabolizer(form: &CyclicLinkingForm) -> Result<CyclicSubgroup, ObstructionError> {
    match form.metabolizers().as_slice() {
        [m] => Ok(*m),
        ms => Err(ObstructionError::Metabolizers(ms.len())),
    }
}

pub fn dbar_over_metabolizer(
    inst: &FamilyInstance,
) -> Result<BTreeMap<u64, Rational>, ObstructionError> {
    let m = unique_metabolizer(&inst.linking)?;
    Ok(dbar_values(&surgery_v_sequence(inst)?, &m)?.1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub n: u64,
    #[serde(rename = "V0")]
    pub v0: u64,
    #[serde(rename = "V1")]
    pub v1: u64,
    pub rep_staircase: StaircaseList,
    pub metabolizer_generator: u64,
    #[serde(with = "qserde::map")]
    pub dbar_values: BTreeMap<u64, Rational>,
    /// True when some d̄ on the metabolizer is nonzero, which rules out a
    /// concordance to a link with trivial Alexander polynomial.
    pub verdict_trivial_alex: bool,
    #[serde(with = "qserde::scalar")]
    pub d_spin: Rational,
    pub provenance: Vec<String>,
}

/// Assembles a report from an arbitrary V-sequence. Used directly by
/// [`verdicts`] and to test the report logic on stand-in inputs.
pub fn report_from_v(
    n: u64,
    rep_staircase: StaircaseList,
    v: &[u64],
    form: &CyclicLinkingForm,
) -> Result<ObstructionReport, ObstructionError> {
    let m = unique_metabolizer(form)?;
    let (d_spin, dbar) = dbar_values(v, &m)?;
    Ok(ObstructionReport {
        n,
        v0: v[0],
        v1: v[1],
        rep_staircase,
        metabolizer_generator: m.generator(),
        verdict_trivial_alex: dbar.values().any(|x| !x.is_zero()),
        dbar_values: dbar,
        d_spin,
        provenance: PROVENANCE.iter().map(|s| s.to_string()).collect(),
    })
}

pub fn verdicts(inst: &FamilyInstance) -> Result<ObstructionReport, ObstructionError> {
    let (v0, v1) = compute_v01(inst)?;
    let v = surgery_v_sequence(inst)?;
    debug_assert_eq!((v[0], v[1]), (v0, v1));
    report_from_v(inst.n, inst.rep_staircase.clone(), &v, &inst.linking)
}

/// Build and evaluate in one step.
pub fn obstruct(n: u64) -> Result<ObstructionReport, ObstructionError> {
    verdicts(&build_family(n)?)
}

impl ObstructionReport {
    pub fn dbar(&self, m: u64) -> Option<&Rational> {
        self.dbar_values.get(&m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_lists() {
        assert_eq!(
            build_family(1).unwrap().rep_staircase.steps(),
            &[1, 1, 2, 2]
        );
        assert_eq!(
            build_family(3).unwrap().kn_staircase.steps(),
            &[1, 1, 1, 2, 3, 3]
        );
        let two = build_family(2).unwrap();
        assert_eq!(two.rep_staircase.steps(), &[1, 1, 1, 1, 2, 2, 3, 3]);
        assert_eq!(two.rep_staircase.genus(), 14);
        assert!(matches!(build_family(0), Err(ObstructionError::ZeroIndex)));
    }

    #[test]
    fn v01_small() {
        assert_eq!(compute_v01(&build_family(1).unwrap()).unwrap(), (2, 1));
        assert_eq!(compute_v01(&build_family(2).unwrap()).unwrap(), (4, 3));
        assert_eq!(compute_v01(&build_family(5).unwrap()).unwrap(), (10, 9));
    }

    #[test]
    fn dbar_n1() {
        let d = dbar_over_metabolizer(&build_family(1).unwrap()).unwrap();
        let expect: BTreeMap<u64, Rational> = [
            (0, rational(0, 1)),
            (3, rational(-2, 1)),
            (6, rational(-2, 1)),
        ]
        .into();
        assert_eq!(d, expect);
    }

    #[test]
    fn report_n1() {
        let r = obstruct(1).unwrap();
        assert!(r.verdict_trivial_alex);
        assert_eq!(r.metabolizer_generator, 3);
        assert_eq!(r.dbar(3), Some(&rational(-2, 1)));
        assert_eq!(r.d_spin, rational(-2, 1));
        assert_eq!(r.provenance.len(), PROVENANCE.len());
    }

    #[test]
    fn unknot_stand_in_is_unobstructed() {
        let inst = build_family(1).unwrap();
        let r = report_from_v(1, inst.rep_staircase, &[0; 4], &inst.linking).unwrap();
        assert!(!r.verdict_trivial_alex);
        assert!(r.dbar_values.values().all(Zero::is_zero));
    }

    #[test]
    fn report_serde_round_trip() {
        let r = obstruct(2).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains(r#""3":"-2""#));
        assert_eq!(serde_json::from_str::<ObstructionReport>(&json).unwrap(), r);
    }
}
