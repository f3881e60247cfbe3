#![allow(dead_code)]

use hfk_concordance::cfk::{self, FilteredComplex};
use hfk_concordance::StaircaseList;
use rand::Rng;

/// Every staircase list (composition) of each genus `1..=max_genus`.
pub fn all_lists(max_genus: u32) -> Vec<StaircaseList> {
    let mut out = Vec::new();
    for g in 1..=max_genus {
        for mask in 0u32..(1 << (g - 1)) {
            let mut steps = Vec::new();
            let mut run = 1;
            for bit in 0..g - 1 {
                if mask >> bit & 1 == 1 {
                    steps.push(run);
                    run = 1;
                } else {
                    run += 1;
                }
            }
            steps.push(run);
            out.push(StaircaseList::new(steps).unwrap());
        }
    }
    out
}

/// Uniform random composition of a genus drawn from `1..=max_genus`.
pub fn random_list<R: Rng>(rng: &mut R, max_genus: u32) -> StaircaseList {
    let g = rng.gen_range(1..=max_genus);
    let mut steps = Vec::new();
    let mut run = 1;
    for _ in 0..g - 1 {
        if rng.gen_bool(0.5) {
            steps.push(run);
            run = 1;
        } else {
            run += 1;
        }
    }
    steps.push(run);
    StaircaseList::new(steps).unwrap()
}

pub fn brute_v(c: &FilteredComplex, kmax: u64) -> Vec<u64> {
    cfk::brute_force_vk_sequence(c, kmax).expect("brute-force V_k")
}

pub fn staircase_v(list: &StaircaseList, kmax: u64) -> Vec<u64> {
    brute_v(&cfk::staircase_complex(list), kmax)
}

/// `V_k` is non-increasing and drops by at most one at each step.
pub fn check_decreasing(v: &[u64]) -> Result<(), String> {
    for k in 0..v.len().saturating_sub(1) {
        if !(v[k + 1] <= v[k] && v[k] <= v[k + 1] + 1) {
            return Err(format!("V_{k} = {}, V_{} = {}", v[k], k + 1, v[k + 1]));
        }
    }
    Ok(())
}

/// `V_{k+j}(K # J) <= V_k(K) + V_j(J)` wherever all three are known.
pub fn check_additive(sum: &[u64], a: &[u64], b: &[u64]) -> Result<(), String> {
    for (k, va) in a.iter().enumerate() {
        for (j, vb) in b.iter().enumerate() {
            if let Some(&vs) = sum.get(k + j) {
                if vs > va + vb {
                    return Err(format!(
                        "V_{}(sum) = {vs} > V_{k} + V_{j} = {}",
                        k + j,
                        va + vb
                    ));
                }
            }
        }
    }
    Ok(())
}
