//! Doubly filtered chain complexes over `F[U, U^{-1}]` and the brute-force
//! computation of `V_k` by row reduction over F₂.
//!
//! A complex is a finite list of generators, each a homogeneous element
//! at filtration level `(i, j)` with Maslov grading `M`. The `U`-translate
//! `U^s g` sits at `(i - s, j - s)` with grading `M - 2s`. Differentials are
//! arrows `g -> U^p h`.
//!
//! Every graded piece of a subcomplex such as `C{i <= 0}` is finite
//! dimensional (each generator contributes at most one translate to a given
//! grading), so homology is computed one grading at a time with no
//! truncation of `U`-powers.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::f2::{kernel, BitVec, Echelon};
use crate::staircase::StaircaseList;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CfkError {
    #[error("arrow references missing generator {0}")]
    BadIndex(usize),
    #[error("arrow {src} -> {dst} * U^{u_power} does not lower the Maslov grading by one")]
    Grading {
        src: String,
        dst: String,
        u_power: i64,
    },
    #[error("arrow {src} -> {dst} * U^{u_power} raises a filtration level")]
    Filtration {
        src: String,
        dst: String,
        u_power: i64,
    },
    #[error("differential does not square to zero")]
    NotSquareZero,
    #[error("not a knot-like complex: H_{grading}(C{{i<=0}}) has dimension {dim}")]
    NotKnotLike { grading: i64, dim: usize },
    #[error("truncation insufficient: no tower class found down to grading {floor}")]
    TruncationInsufficient { floor: i64 },
    #[error("grading window [{bottom}, {top}] is empty or too large")]
    WindowOverflow { bottom: i64, top: i64 },
    #[error("V_k is only defined here for k >= 0, got {0}")]
    NegativeK(i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub maslov: i64,
    /// Algebraic filtration level `i`.
    pub alg: i64,
    /// Alexander filtration level `j`.
    pub alex: i64,
}

/// `∂(src)` contains `U^u_power · dst`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub src: usize,
    pub dst: usize,
    pub u_power: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilteredComplex {
    generators: Vec<Generator>,
    arrows: Vec<Arrow>,
    out: Vec<Vec<(usize, i64)>>,
}

impl FilteredComplex {
    /// Validates gradings, filtrations and `∂² = 0`. Repeated arrows cancel
    /// in pairs.
    pub fn new(generators: Vec<Generator>, arrows: Vec<Arrow>) -> Result<Self, CfkError> {
        let mut parity: BTreeMap<Arrow, bool> = BTreeMap::new();
        for a in arrows {
            if a.src >= generators.len() {
                return Err(CfkError::BadIndex(a.src));
            }
            if a.dst >= generators.len() {
                return Err(CfkError::BadIndex(a.dst));
            }
            *parity.entry(a).or_default() ^= true;
        }
        let arrows: Vec<Arrow> = parity
            .into_iter()
            .filter(|(_, odd)| *odd)
            .map(|(a, _)| a)
            .collect();
        let mut out = vec![Vec::new(); generators.len()];
        for a in &arrows {
            let (s, d) = (&generators[a.src], &generators[a.dst]);
            let err = |kind: fn(String, String, i64) -> CfkError| {
                kind(s.name.clone(), d.name.clone(), a.u_power)
            };
            if d.maslov - 2 * a.u_power != s.maslov - 1 {
                return Err(err(|src, dst, u_power| CfkError::Grading {
                    src,
                    dst,
                    u_power,
                }));
            }
            if d.alg - a.u_power > s.alg || d.alex - a.u_power > s.alex {
                return Err(err(|src, dst, u_power| CfkError::Filtration {
                    src,
                    dst,
                    u_power,
                }));
            }
            out[a.src].push((a.dst, a.u_power));
        }
        let c = FilteredComplex {
            generators,
            arrows,
            out,
        };
        c.check_square_zero()?;
        Ok(c)
    }

    fn check_square_zero(&self) -> Result<(), CfkError> {
        for g in 0..self.generators.len() {
            let mut acc: BTreeMap<(usize, i64), bool> = BTreeMap::new();
            for &(h, p) in &self.out[g] {
                for &(k, q) in &self.out[h] {
                    *acc.entry((k, p + q)).or_default() ^= true;
                }
            }
            if acc.values().any(|&odd| odd) {
                return Err(CfkError::NotSquareZero);
            }
        }
        Ok(())
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// Rank over `F[U, U^{-1}]`.
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// The one-generator complex of the unknot, unit for [`tensor`].
    pub fn unknot() -> Self {
        let g = Generator {
            name: "1".into(),
            maslov: 0,
            alg: 0,
            alex: 0,
        };
        FilteredComplex::new(vec![g], Vec::new()).expect("unknot complex")
    }

    /// Replaces each generator `g` by the translate `U^{i(g)} g`, so every
    /// generator sits at algebraic level zero.
    pub fn normalized(&self) -> Self {
        let generators: Vec<Generator> = self
            .generators
            .iter()
            .map(|g| Generator {
                name: g.name.clone(),
                maslov: g.maslov - 2 * g.alg,
                alg: 0,
                alex: g.alex - g.alg,
            })
            .collect();
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow {
                src: a.src,
                dst: a.dst,
                u_power: a.u_power + self.generators[a.src].alg - self.generators[a.dst].alg,
            })
            .collect();
        FilteredComplex::new(generators, arrows).expect("normalization preserves validity")
    }

    /// One generator per line as `name M A i`, then `src -> dst * U^p`.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for g in &self.generators {
            writeln!(s, "{} {} {} {}", g.name, g.maslov, g.alex, g.alg).unwrap();
        }
        for a in &self.arrows {
            writeln!(
                s,
                "{} -> {} * U^{}",
                self.generators[a.src].name, self.generators[a.dst].name, a.u_power
            )
            .unwrap();
        }
        s
    }
}

/// `F[U,U^{-1}] ⊗ S_{(a_1..a_n)}` with `M(x_1) = 0`, normalized so that
/// every generator sits at algebraic level zero.
pub fn staircase_complex(list: &StaircaseList) -> FilteredComplex {
    let corners = list.corners();
    let generators = corners
        .iter()
        .enumerate()
        .map(|(k, &(i, j))| Generator {
            name: format!("x{}", k + 1),
            maslov: (k % 2) as i64,
            alg: i,
            alex: j,
        })
        .collect();
    let mut arrows = Vec::new();
    for k in (1..corners.len()).step_by(2) {
        arrows.push(Arrow {
            src: k,
            dst: k - 1,
            u_power: 0,
        });
        arrows.push(Arrow {
            src: k,
            dst: k + 1,
            u_power: 0,
        });
    }
    FilteredComplex::new(generators, arrows)
        .expect("staircase complex is valid")
        .normalized()
}

/// Dual complex: gradings and filtration levels negated, arrows reversed.
pub fn mirror(c: &FilteredComplex) -> FilteredComplex {
    let generators = c
        .generators
        .iter()
        .map(|g| Generator {
            name: format!("{}*", g.name),
            maslov: -g.maslov,
            alg: -g.alg,
            alex: -g.alex,
        })
        .collect();
    let arrows = c
        .arrows
        .iter()
        .map(|a| Arrow {
            src: a.dst,
            dst: a.src,
            u_power: a.u_power,
        })
        .collect();
    FilteredComplex::new(generators, arrows)
        .expect("dual of a valid complex is valid")
        .normalized()
}

/// Tensor product over `F[U, U^{-1}]` with the Leibniz differential.
pub fn tensor(a: &FilteredComplex, b: &FilteredComplex) -> FilteredComplex {
    let nb = b.generators.len();
    let mut generators = Vec::with_capacity(a.generators.len() * nb);
    for x in &a.generators {
        for y in &b.generators {
            generators.push(Generator {
                name: format!("{}.{}", x.name, y.name),
                maslov: x.maslov + y.maslov,
                alg: x.alg + y.alg,
                alex: x.alex + y.alex,
            });
        }
    }
    let mut arrows = Vec::new();
    for ar in &a.arrows {
        for y in 0..nb {
            arrows.push(Arrow {
                src: ar.src * nb + y,
                dst: ar.dst * nb + y,
                u_power: ar.u_power,
            });
        }
    }
    for x in 0..a.generators.len() {
        for br in &b.arrows {
            arrows.push(Arrow {
                src: x * nb + br.src,
                dst: x * nb + br.dst,
                u_power: br.u_power,
            });
        }
    }
    FilteredComplex::new(generators, arrows).expect("tensor of valid complexes is valid")
}

/// Down-left closed regions of the `(i, j)`-plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SubquotientSpec {
    /// `C{i <= 0}`
    LeftHalf,
    /// `C{i <= 0, j <= k}`
    Quadrant(i64),
}

impl SubquotientSpec {
    fn contains(self, i: i64, j: i64) -> bool {
        match self {
            SubquotientSpec::LeftHalf => i <= 0,
            SubquotientSpec::Quadrant(k) => i <= 0 && j <= k,
        }
    }
}

/// The basis of one graded piece of a region: at most one `U`-translate per
/// generator.
struct Slice {
    grading: i64,
    /// `(generator, u-power s)` for each basis element.
    elems: Vec<(usize, i64)>,
    /// generator -> position in `elems`
    index: Vec<Option<usize>>,
}

impl Slice {
    fn new(c: &FilteredComplex, region: SubquotientSpec, grading: i64) -> Slice {
        let mut elems = Vec::new();
        let mut index = vec![None; c.generators.len()];
        for (k, g) in c.generators.iter().enumerate() {
            let diff = g.maslov - grading;
            if diff.rem_euclid(2) != 0 {
                continue;
            }
            let s = diff / 2;
            if region.contains(g.alg - s, g.alex - s) {
                index[k] = Some(elems.len());
                elems.push((k, s));
            }
        }
        Slice {
            grading,
            elems,
            index,
        }
    }

    fn dim(&self) -> usize {
        self.elems.len()
    }

    /// Re-expresses a vector of `sub` (a sub-slice of the same grading) in
    /// this slice's coordinates.
    fn embed(&self, sub: &Slice, v: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.dim());
        for k in v.ones() {
            let g = sub.elems[k].0;
            out.flip(self.index[g].expect("sub-slice of a larger region"));
        }
        out
    }
}

/// Columns of `∂: from -> to`, where `to` is the slice one grading lower and
/// contains every target (regions are subcomplexes).
fn boundary_columns(c: &FilteredComplex, from: &Slice, to: &Slice) -> Vec<BitVec> {
    debug_assert_eq!(from.grading - 1, to.grading);
    from.elems
        .iter()
        .map(|&(g, s)| {
            let mut col = BitVec::zeros(to.dim());
            for &(h, p) in &c.out[g] {
                let pos = to.index[h].expect("region is closed under the differential");
                debug_assert_eq!(to.elems[pos].1, s + p);
                col.flip(pos);
            }
            col
        })
        .collect()
}

/// Homology of one grading of a region, and the part of it that survives
/// under inclusion into `C{i <= 0}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedPiece {
    pub dim: usize,
    /// Rank of the inclusion-induced map into `H_*(C{i <= 0})`.
    pub inclusion_rank: usize,
}

/// Per-grading homology of a region over `[bottom, top]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedHomology {
    pub pieces: BTreeMap<i64, GradedPiece>,
}

impl GradedHomology {
    pub fn dim(&self, grading: i64) -> usize {
        self.pieces.get(&grading).map_or(0, |p| p.dim)
    }

    /// Highest grading with a nonzero class.
    pub fn top(&self) -> Option<i64> {
        self.pieces
            .iter()
            .rev()
            .find(|(_, p)| p.dim > 0)
            .map(|(&m, _)| m)
    }
}

const MAX_WINDOW: i64 = 1 << 20;

fn graded_piece(c: &FilteredComplex, region: SubquotientSpec, m: i64) -> GradedPiece {
    let full = SubquotientSpec::LeftHalf;
    let here = Slice::new(c, region, m);
    let below = Slice::new(c, full, m - 1);
    let above = Slice::new(c, region, m + 1);
    let cycles = kernel(&boundary_columns(c, &here, &below), below.dim());
    let mut bounds = Echelon::new(here.dim());
    for col in boundary_columns(c, &above, &here) {
        bounds.insert(col);
    }
    let dim = cycles.len() - bounds.rank();

    let full_here = Slice::new(c, full, m);
    let full_above = Slice::new(c, full, m + 1);
    let mut full_bounds = Echelon::new(full_here.dim());
    for col in boundary_columns(c, &full_above, &full_here) {
        full_bounds.insert(col);
    }
    let inclusion_rank = cycles
        .iter()
        .filter(|z| full_bounds.insert(full_here.embed(&here, z)))
        .count();
    GradedPiece {
        dim,
        inclusion_rank,
    }
}

/// Homology of `region` in every grading of `[bottom, top]`.
pub fn homology_f2(
    c: &FilteredComplex,
    region: SubquotientSpec,
    bottom: i64,
    top: i64,
) -> Result<GradedHomology, CfkError> {
    if bottom > top || top - bottom > MAX_WINDOW {
        return Err(CfkError::WindowOverflow { bottom, top });
    }
    let pieces = (bottom..=top)
        .map(|m| (m, graded_piece(c, region, m)))
        .collect();
    Ok(GradedHomology { pieces })
}

/// Depth of the grading scan for `V_k`: `2g + k + 4` steps of `U`, with `g`
/// bounding how far any generator sits from the diagonal in filtration or
/// grading.
fn window_depth(c: &FilteredComplex, k: i64) -> i64 {
    let span = c
        .generators
        .iter()
        .map(|g| (g.alex - g.alg).abs().max((g.maslov.abs() + 1) / 2))
        .max()
        .unwrap_or(0);
    2 * span + k + 4
}

/// `V_k` straight from the definition: `-1/2` times the highest grading in
/// which a cycle of `C{i<=0, j<=k}` represents a nonzero class of
/// `H_*(C{i<=0}) ≅ F[U]`.
///
/// Gradings are scanned from the top down; every grading passed on the way
/// is checked to have the homology of a tower.
pub fn brute_force_vk(c: &FilteredComplex, k: i64) -> Result<u64, CfkError> {
    if k < 0 {
        return Err(CfkError::NegativeK(k));
    }
    let full = SubquotientSpec::LeftHalf;
    let top = c
        .generators
        .iter()
        .map(|g| g.maslov - 2 * g.alg)
        .max()
        .unwrap_or(0);
    for m in (1..=top).rev() {
        let dim = graded_piece(c, full, m).dim;
        if dim != 0 {
            return Err(CfkError::NotKnotLike { grading: m, dim });
        }
    }
    let floor = -2 * window_depth(c, k);
    let region = SubquotientSpec::Quadrant(k);
    let mut m = 0;
    while m >= floor {
        for odd in [m + 1, m - 1] {
            if odd <= 0 {
                let dim = graded_piece(c, full, odd).dim;
                if dim != 0 {
                    return Err(CfkError::NotKnotLike { grading: odd, dim });
                }
            }
        }
        let tower = graded_piece(c, full, m).dim;
        if tower != 1 {
            return Err(CfkError::NotKnotLike {
                grading: m,
                dim: tower,
            });
        }
        if graded_piece(c, region, m).inclusion_rank > 0 {
            return Ok((-m / 2) as u64);
        }
        m -= 2;
    }
    Err(CfkError::TruncationInsufficient { floor })
}

/// `V_0, ..., V_{kmax}`.
pub fn brute_force_vk_sequence(c: &FilteredComplex, kmax: u64) -> Result<Vec<u64>, CfkError> {
    (0..=kmax as i64).map(|k| brute_force_vk(c, k)).collect()
}
