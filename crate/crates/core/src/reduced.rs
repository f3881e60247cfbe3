//! Reduced complexes of L-space knots: a single `F[U]` tower whose only
//! remaining data is the Alexander level of each `U^i a`. `V_k` reads off
//! as the first power whose level drops to `k` or below.

use serde::{Deserialize, Serialize};

use crate::staircase::StaircaseList;

/// Alexander levels `A(U^i a)` of a rank-one tower. Past the stored head
/// the level is `-i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedComplex {
    head: Vec<i64>,
}

impl ReducedComplex {
    /// Level of `U^i a`.
    pub fn filt(&self, i: u64) -> i64 {
        self.head.get(i as usize).copied().unwrap_or(-(i as i64))
    }

    /// `N` with `A(U^i a) = -i` for all `i >= N`.
    pub fn eventually_linear_from(&self) -> u64 {
        self.head.len() as u64
    }

    pub fn genus(&self) -> i64 {
        self.filt(0)
    }

    /// The tower itself, as graded by `M(U^i a) = -2i`.
    pub fn as_tower(&self) -> Tower {
        Tower {
            head: self.head.clone(),
        }
    }
}

/// For each grading `-2i`, the Alexander level of the generator of the
/// homology in that grading. Past the stored head the level is `-i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tower {
    head: Vec<i64>,
}

impl Tower {
    /// Level of the generator of `H_{-2i}`.
    pub fn level(&self, i: u64) -> i64 {
        self.head.get(i as usize).copied().unwrap_or(-(i as i64))
    }

    pub fn head(&self) -> &[i64] {
        &self.head
    }
}

/// If `a_1+..+a_i <= j < a_1+..+a_{i+1}` then `U^j x` has level
/// `a_1+..+a_{n-i} - j`; from the genus on, `U^j x` has level `-j`.
pub fn reduce_staircase(list: &StaircaseList) -> ReducedComplex {
    let a = list.steps();
    let n = a.len();
    let mut prefix = vec![0i64; n + 1];
    for k in 0..n {
        prefix[k + 1] = prefix[k] + a[k] as i64;
    }
    let g = prefix[n];
    let mut head = Vec::with_capacity(g as usize);
    let mut i = 0;
    for j in 0..g {
        while prefix[i + 1] <= j {
            i += 1;
        }
        head.push(prefix[n - i] - j);
    }
    ReducedComplex { head }
}

/// Closed-form levels `A(U^i a)` for the representative staircase of two
/// copies of `K_n`, i.e. the list `(1^{2n}, 2, 2, 3^{2n-2})`. Earlier
/// branches take priority where the ranges overlap (they do at `n = 1`).
pub fn family_filtration_2jn(n: u64, i: u64) -> i64 {
    assert!(n >= 1, "family index starts at 1");
    let (n, i) = (n as i64, i as i64);
    if i <= 2 * n - 2 {
        8 * n - 2 - 4 * i
    } else if i == 2 * n - 1 {
        3
    } else if i == 2 * n {
        0
    } else if i == 2 * n + 1 {
        -1
    } else if i == 2 * n + 2 {
        -3
    } else if i == 2 * n + 3 {
        -4
    } else if i <= 8 * n - 2 {
        2 * n - i - 2 - (i - 2 * n - 4).div_euclid(3)
    } else {
        -i
    }
}

/// Alexander offsets of `x_1, x_3, x_5` in `CFK^-(-T_{2,5})`, the three
/// generators contributing to each even grading.
const MIRROR_T25_OFFSETS: [i64; 3] = [2, 0, -2];

/// Tensors the reduced complex with `CFK^-(-T_{2,5})`. In grading `-2i` the
/// homology is generated by `U^{i+2}a x_1 + U^{i+1}a x_3 + U^i a x_5`, whose
/// level is `max{2 + A(U^{i+2}a), A(U^{i+1}a), -2 + A(U^i a)}`.
pub fn tensor_with_mirror_t25(r: &ReducedComplex) -> Tower {
    let level = |i: u64| {
        MIRROR_T25_OFFSETS
            .iter()
            .zip([i + 2, i + 1, i])
            .map(|(off, power)| off + r.filt(power))
            .max()
            .unwrap()
    };
    // With i >= N every term is linear and the max is -i.
    let len = r.eventually_linear_from();
    Tower {
        head: (0..len).map(level).collect(),
    }
}

/// `V_k = -1/2 · (largest grading -2i whose generator has level <= k)`.
pub fn fast_vk(tower: &Tower, k: u64) -> u64 {
    let k = k as i64;
    (0..)
        .find(|&i| tower.level(i) <= k)
        .expect("levels are eventually -i")
}

pub fn fast_vk_sequence(tower: &Tower, kmax: u64) -> Vec<u64> {
    (0..=kmax).map(|k| fast_vk(tower, k)).collect()
}

/// `(1^{2n}, 2, 2, 3^{2n-2})`.
pub fn family_representative_list(n: u64) -> StaircaseList {
    let n = n as usize;
    let mut steps = vec![1; 2 * n];
    steps.extend([2, 2]);
    steps.extend(std::iter::repeat_n(3, 2 * n - 2));
    StaircaseList::new(steps).expect("family list is valid")
}
