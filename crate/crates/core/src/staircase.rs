//! Staircase lists and shapes of L-space knots, riffles of shapes, and the
//! representative staircase of a connected sum.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::laurent::{Coefficient, LaurentPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StaircaseError {
    #[error("a staircase list needs at least one step")]
    Empty,
    #[error("staircase steps must be positive, found {0}")]
    NonPositiveStep(i64),
    #[error("not an L-space knot polynomial: {0}")]
    NotLSpace(&'static str),
    #[error("staircase shapes admit no compatible riffle")]
    Incompatible,
}

/// Step lengths `(a_1, ..., a_n)` of a staircase complex. The genus of the
/// knot is the sum of the steps.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct StaircaseList {
    steps: Vec<u32>,
}

impl TryFrom<Vec<u32>> for StaircaseList {
    type Error = StaircaseError;
    fn try_from(steps: Vec<u32>) -> Result<Self, Self::Error> {
        StaircaseList::new(steps)
    }
}

impl From<StaircaseList> for Vec<u32> {
    fn from(list: StaircaseList) -> Vec<u32> {
        list.steps
    }
}

impl StaircaseList {
    pub fn new(steps: Vec<u32>) -> Result<Self, StaircaseError> {
        if steps.is_empty() {
            return Err(StaircaseError::Empty);
        }
        if let Some(&bad) = steps.iter().find(|&&a| a == 0) {
            return Err(StaircaseError::NonPositiveStep(bad as i64));
        }
        Ok(StaircaseList { steps })
    }

    pub fn steps(&self) -> &[u32] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn genus(&self) -> u64 {
        self.steps.iter().map(|&a| a as u64).sum()
    }

    pub fn shape(&self) -> StaircaseShape {
        let n = self.steps.len();
        StaircaseShape {
            pairs: (0..n)
                .map(|i| (self.steps[i], self.steps[n - 1 - i]))
                .collect(),
        }
    }

    /// Filtration levels `(i, j)` of the generators `x_1, ..., x_{2n+1}`.
    ///
    /// `x_{2k+1}` sits at `(a_1+..+a_k, a_1+..+a_{n-k})` and `x_{2k}` at
    /// `(a_1+..+a_k, a_1+..+a_{n-k+1})`.
    pub fn corners(&self) -> Vec<(i64, i64)> {
        let n = self.steps.len();
        let mut prefix = vec![0i64; n + 1];
        for k in 0..n {
            prefix[k + 1] = prefix[k] + self.steps[k] as i64;
        }
        let mut out = Vec::with_capacity(2 * n + 1);
        out.push((0, prefix[n]));
        for k in 1..=n {
            out.push((prefix[k], prefix[n - k + 1]));
            out.push((prefix[k], prefix[n - k]));
        }
        out
    }

    /// The Alexander polynomial this staircase corresponds to, in the
    /// normalized storage form (lowest exponent zero).
    pub fn alexander<T: Coefficient>(&self) -> LaurentPoly<T> {
        let g = self.genus() as i64;
        let terms = self.corners().into_iter().enumerate().map(|(idx, (i, j))| {
            let sign = if idx % 2 == 0 { T::one() } else { -T::one() };
            (j - i + g, sign)
        });
        LaurentPoly::from_terms(terms)
    }
}

impl fmt::Display for StaircaseList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, a) in self.steps.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// Reads the staircase list off an L-space knot's Alexander polynomial: the
/// `i`-th step is the gap between the `(2i-1)`-th and `2i`-th exponents.
pub fn staircase_from_alexander<T: Coefficient>(
    f: &LaurentPoly<T>,
) -> Result<StaircaseList, StaircaseError> {
    let f = f.normalized_alexander();
    let terms: Vec<(i64, T)> = f.terms().map(|(e, c)| (e, c.clone())).collect();
    if terms.len() < 3 {
        return Err(StaircaseError::NotLSpace("fewer than three nonzero terms"));
    }
    if terms.len().is_multiple_of(2) {
        return Err(StaircaseError::NotLSpace("even number of nonzero terms"));
    }
    for (k, (_, c)) in terms.iter().enumerate() {
        let want = if k % 2 == 0 { T::one() } else { -T::one() };
        if c.abs() != T::one() {
            return Err(StaircaseError::NotLSpace("coefficient other than +1 or -1"));
        }
        if *c != want {
            return Err(StaircaseError::NotLSpace("signs do not alternate"));
        }
    }
    if !f.is_symmetric() {
        return Err(StaircaseError::NotLSpace("coefficients are not symmetric"));
    }
    // Gaps alternate a_1, a_n, a_2, a_{n-1}, ...; the odd-position gaps are the steps.
    let steps = terms
        .chunks_exact(2)
        .map(|pair| (pair[1].0 - pair[0].0) as u32)
        .collect();
    let list = StaircaseList::new(steps)?;
    debug_assert_eq!(list.alexander::<T>(), f);
    Ok(list)
}

/// Ordered pairs `((a_1,a_n), (a_2,a_{n-1}), ..., (a_n,a_1))`. The empty
/// shape stands for the unknot.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StaircaseShape {
    pairs: Vec<(u32, u32)>,
}

impl StaircaseShape {
    pub fn empty() -> Self {
        StaircaseShape { pairs: Vec::new() }
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Reversing the pairs and swapping each one gives back the shape.
    pub fn is_consistent(&self) -> bool {
        self.pairs
            .iter()
            .rev()
            .map(|&(a, b)| (b, a))
            .eq(self.pairs.iter().copied())
    }

    /// First coordinates in order, i.e. the list this shape came from.
    pub fn to_list(&self) -> Result<StaircaseList, StaircaseError> {
        StaircaseList::new(self.pairs.iter().map(|p| p.0).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// An interleaving of two shapes preserving the order within each.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Riffle {
    merged: Vec<(Side, (u32, u32))>,
}

impl Riffle {
    pub fn entries(&self) -> &[(Side, (u32, u32))] {
        &self.merged
    }

    pub fn tags(&self) -> Vec<Side> {
        self.merged.iter().map(|e| e.0).collect()
    }

    /// The merged shape, forgetting which side each pair came from.
    pub fn shape(&self) -> StaircaseShape {
        StaircaseShape {
            pairs: self.merged.iter().map(|e| e.1).collect(),
        }
    }

    pub fn restrict(&self, side: Side) -> StaircaseShape {
        StaircaseShape {
            pairs: self
                .merged
                .iter()
                .filter(|e| e.0 == side)
                .map(|e| e.1)
                .collect(),
        }
    }

    /// Every element `e` and its opposite successor `o` satisfy
    /// `e.0 <= o.0` and `e.1 >= o.1`.
    pub fn is_compatible(&self) -> bool {
        Self::successor_rule(&self.merged)
    }

    /// The same rule for the reversed riffle with every pair swapped. In
    /// terms of this riffle: every element `e` and its opposite predecessor
    /// `p` satisfy `p.0 <= e.0` and `p.1 >= e.1`.
    pub fn is_dual_compatible(&self) -> bool {
        let dual: Vec<_> = self
            .merged
            .iter()
            .rev()
            .map(|&(s, (a, b))| (s, (b, a)))
            .collect();
        Self::successor_rule(&dual)
    }

    /// Compatible in both directions, with a merged shape that is again a
    /// staircase shape. Only these riffles are used to build representative
    /// staircases: the one-sided rule admits riffles such as
    /// `R(1,1) L(2,1) L(1,2) R(2,1) R(1,2) R(1,1)` for `(2,1)` and
    /// `(1,2,1,1)`, whose staircase has the wrong `V_2`.
    pub fn is_admissible(&self) -> bool {
        self.is_compatible() && self.is_dual_compatible() && self.shape().is_consistent()
    }

    fn successor_rule(merged: &[(Side, (u32, u32))]) -> bool {
        merged.iter().enumerate().all(|(k, &(side, e))| {
            match merged[k + 1..].iter().find(|x| x.0 != side) {
                Some(&(_, o)) => e.0 <= o.0 && e.1 >= o.1,
                None => true,
            }
        })
    }
}

struct RiffleSearch<'a> {
    left: &'a [(u32, u32)],
    right: &'a [(u32, u32)],
    merged: Vec<(Side, (u32, u32))>,
}

impl RiffleSearch<'_> {
    fn pool(&self, side: Side) -> &[(u32, u32)] {
        match side {
            Side::Left => self.left,
            Side::Right => self.right,
        }
    }

    /// Extends `merged` to an admissible riffle. `run` is the side and
    /// starting index of the trailing block of same-side elements; they all
    /// share the next opposite element as their opposite successor. The
    /// opposite predecessor of a new element is the last one placed from
    /// the other side. Past the midpoint each new pair is pinned by its
    /// mirror position.
    fn search(&mut self, i: usize, j: usize, run: (Side, usize)) -> bool {
        let total = self.left.len() + self.right.len();
        let k = self.merged.len();
        if k == total {
            return true;
        }
        let mirror = total - 1 - k;
        for side in [Side::Left, Side::Right] {
            let pos = match side {
                Side::Left => i,
                Side::Right => j,
            };
            let Some(&e) = self.pool(side).get(pos) else {
                continue;
            };
            let pinned = match mirror.cmp(&k) {
                std::cmp::Ordering::Less => {
                    let m = self.merged[mirror].1;
                    e == (m.1, m.0)
                }
                std::cmp::Ordering::Equal => e.0 == e.1,
                std::cmp::Ordering::Greater => true,
            };
            if !pinned {
                continue;
            }
            let placed_other = match side {
                Side::Left => j,
                Side::Right => i,
            };
            if let Some(p) = placed_other
                .checked_sub(1)
                .map(|q| self.pool(side.other())[q])
            {
                if !(p.0 <= e.0 && p.1 >= e.1) {
                    continue;
                }
            }
            let next_run = if side == run.0 {
                run
            } else {
                let end = match run.0 {
                    Side::Left => i,
                    Side::Right => j,
                };
                if !self.pool(run.0)[run.1..end]
                    .iter()
                    .all(|p| p.0 <= e.0 && p.1 >= e.1)
                {
                    continue;
                }
                (side, pos)
            };
            self.merged.push((side, e));
            let (ni, nj) = match side {
                Side::Left => (i + 1, j),
                Side::Right => (i, j + 1),
            };
            if self.search(ni, nj, next_run) {
                return true;
            }
            self.merged.pop();
        }
        false
    }
}

/// Finds the lexicographically smallest admissible riffle (Left before
/// Right), or `None`.
///
/// Compatibility alone does not make the merged shape consistent: for
/// `(1)` and `(1,2,1)` the only compatible riffle merges to
/// `((1,1),(1,1),(2,2),(1,1))`, which no list produces.
pub fn find_compatible_riffle(left: &StaircaseShape, right: &StaircaseShape) -> Option<Riffle> {
    let mut search = RiffleSearch {
        left: &left.pairs,
        right: &right.pairs,
        merged: Vec::with_capacity(left.len() + right.len()),
    };
    // An empty initial run on the left side imposes no constraint.
    if !search.search(0, 0, (Side::Left, 0)) {
        return None;
    }
    let riffle = Riffle {
        merged: search.merged,
    };
    debug_assert!(riffle.is_admissible());
    Some(riffle)
}

/// The staircase summand of the connected sum of two L-space knots.
pub fn representative_staircase(
    left: &StaircaseList,
    right: &StaircaseList,
) -> Result<StaircaseList, StaircaseError> {
    let riffle = find_compatible_riffle(&left.shape(), &right.shape())
        .ok_or(StaircaseError::Incompatible)?;
    riffle.shape().to_list()
}

/// Left fold of [`representative_staircase`] over several summands.
pub fn connected_sum_staircase(lists: &[StaircaseList]) -> Result<StaircaseList, StaircaseError> {
    let (first, rest) = lists.split_first().ok_or(StaircaseError::Empty)?;
    rest.iter().try_fold(first.clone(), |acc, next| {
        representative_staircase(&acc, next)
    })
}
