//! Library side of the `hfkc` command-line tool: knot expressions, the four
//! commands, and the serialized output record.

pub mod expr;
mod render;

use hfk_concordance::cfk::{self, FilteredComplex};
use hfk_concordance::dinv::{self, DinvError};
use hfk_concordance::laurent::{cable_alexander, torus_alexander, LaurentError};
use hfk_concordance::obstruction::{self, ObstructionError, ObstructionReport};
use hfk_concordance::reduced::{self, fast_vk_sequence};
use hfk_concordance::staircase::{self, StaircaseError};
use hfk_concordance::{qserde, AlexanderPoly, Rational, StaircaseList};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use expr::{parse, Knot, ParseError};
pub use render::{render, Format};

pub const TOOL: &str = "hfkc";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<LaurentError> for CliError {
    fn from(e: LaurentError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<DinvError> for CliError {
    fn from(e: DinvError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<cfk::CfkError> for CliError {
    fn from(e: cfk::CfkError) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl From<ObstructionError> for CliError {
    fn from(e: ObstructionError) -> Self {
        match e {
            ObstructionError::ZeroIndex => CliError::Usage(e.to_string()),
            e => CliError::Internal(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub tool: String,
    pub tool_version: String,
    pub library_version: String,
    /// Arguments after the program name, as given.
    pub args: Vec<String>,
    #[serde(flatten)]
    pub payload: Payload,
    pub provenance: Vec<String>,
}

impl OutputRecord {
    pub fn new(args: Vec<String>, (payload, provenance): (Payload, Vec<String>)) -> Self {
        OutputRecord {
            tool: TOOL.into(),
            tool_version: TOOL_VERSION.into(),
            library_version: hfk_concordance::VERSION.into(),
            args,
            payload,
            provenance,
        }
    }

    /// False only when `--check-oracle` found the two V_k paths disagreeing.
    pub fn consistent(&self) -> bool {
        match &self.payload {
            Payload::Vk { results, .. } => results.oracle_agrees != Some(false),
            _ => true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Payload {
    Alexander {
        inputs: ExprInputs,
        results: AlexanderResults,
    },
    Vk {
        inputs: VkInputs,
        results: VkResults,
    },
    Dinv {
        inputs: DinvInputs,
        results: DinvResults,
    },
    Obstruct {
        inputs: ObstructInputs,
        results: Vec<ObstructionReport>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExprInputs {
    pub expression: String,
    pub canonical: String,
}

impl ExprInputs {
    fn new(src: &str, k: &Knot) -> Self {
        ExprInputs {
            expression: src.into(),
            canonical: k.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlexanderResults {
    pub polynomial: String,
    pub min_exp: i64,
    /// Coefficients of `t^min_exp, t^(min_exp+1), ...`.
    pub coefficients: Vec<i64>,
    pub staircase: Option<StaircaseList>,
    /// Why no staircase was read off, when `staircase` is null.
    pub not_lspace: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Reduced,
    Tensor,
    Both,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VkInputs {
    #[serde(flatten)]
    pub expr: ExprInputs,
    pub k_min: u64,
    pub k_max: u64,
    pub method: Method,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VkRow {
    pub k: u64,
    #[serde(rename = "V")]
    pub v: u64,
    #[serde(rename = "V_tensor")]
    pub v_tensor: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VkResults {
    /// Representative staircase of the positive summands (reduced path only).
    pub staircase: Option<StaircaseList>,
    pub mirror_t25: u64,
    pub rows: Vec<VkRow>,
    pub oracle_agrees: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DinvInputs {
    pub p: u64,
    pub q: u64,
    pub expr: Option<ExprInputs>,
    pub labels: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DinvRow {
    pub label: u64,
    #[serde(with = "qserde::scalar")]
    pub d: Rational,
    pub spin: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DinvResults {
    pub spin_label: Option<u64>,
    /// `V_0, V_1, ...` as consulted by the surgery formula.
    pub v: Vec<u64>,
    pub rows: Vec<DinvRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructInputs {
    pub n_min: u64,
    pub n_max: u64,
}

/// Parses `a..b` (inclusive) or a single `a`.
pub fn parse_range(s: &str) -> Result<(u64, u64), CliError> {
    let bad = || CliError::Usage(format!("invalid range '{s}': expected a or a..b"));
    let num = |t: &str| t.trim().parse::<u64>().map_err(|_| bad());
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => (num(s)?, num(s)?),
    };
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

pub fn alexander(k: &Knot) -> Result<AlexanderPoly, CliError> {
    Ok(match k {
        Knot::Torus(p, q) => torus_alexander(*p, *q)?,
        Knot::Cable { p, q, inner } => cable_alexander(&alexander(inner)?, *p, *q)?,
        Knot::Kn(n) => obstruction::kn_alexander(*n)?,
        Knot::MirrorT25 => torus_alexander(2, 5)?,
        Knot::Sum(parts) => {
            let mut acc = AlexanderPoly::one();
            for part in parts {
                acc = &acc * &alexander(part)?;
            }
            acc
        }
    })
}

/// Checks a summand is an L-space knot: torus knots, `Kn(n)`, and cables
/// `C(p,q; K)` of L-space knots `K` with `q >= p(2g(K) - 1)`.
fn check_lspace(k: &Knot) -> Result<(), CliError> {
    match k {
        Knot::Torus(..) | Knot::Kn(_) => Ok(()),
        Knot::Cable { p, q, inner } => {
            if matches!(**inner, Knot::Sum(_) | Knot::MirrorT25) {
                return Err(CliError::Usage(format!("{k} is not an L-space knot")));
            }
            check_lspace(inner)?;
            let genus = alexander(inner)?.degree() / 2;
            if (*q as i64) < *p as i64 * (2 * genus - 1) {
                return Err(CliError::Usage(format!(
                    "{k} is not an L-space knot: q = {q} < p(2g - 1) = {}",
                    *p as i64 * (2 * genus - 1)
                )));
            }
            Ok(())
        }
        Knot::MirrorT25 | Knot::Sum(_) => {
            Err(CliError::Usage(format!("{k} is not an L-space knot")))
        }
    }
}

/// Positive summands as staircase lists, plus the number of `-T(2,5)` factors.
fn split_summands(k: &Knot) -> Result<(Vec<StaircaseList>, u64), CliError> {
    let mut lists = Vec::new();
    let mut mirrors = 0;
    for s in k.summands() {
        if *s == Knot::MirrorT25 {
            mirrors += 1;
            continue;
        }
        check_lspace(s)?;
        let list = staircase::staircase_from_alexander(&alexander(s)?)
            .map_err(|e| CliError::Usage(format!("summand {s}: {e}")))?;
        lists.push(list);
    }
    Ok((lists, mirrors))
}

fn expr_notes(k: &Knot) -> Vec<String> {
    let mut notes = Vec::new();
    if k.uses_family() {
        notes.push("Kn(n) = T(2,2n+1;2,4n-1), the (2,4n-1) cable of T(2,2n+1)".into());
    }
    notes
}

fn reduced_v(
    lists: &[StaircaseList],
    mirrors: u64,
    kmax: u64,
) -> Result<(StaircaseList, Vec<u64>), CliError> {
    if lists.is_empty() || mirrors > 1 {
        return Err(CliError::Usage(
            "the reduced path needs at least one L-space summand and at most one -T(2,5); use --brute".into(),
        ));
    }
    let rep = staircase::connected_sum_staircase(lists).map_err(|e| match e {
        StaircaseError::Incompatible => {
            CliError::Usage("the summands admit no compatible riffle; use --brute".into())
        }
        e => CliError::Usage(e.to_string()),
    })?;
    let r = reduced::reduce_staircase(&rep);
    let tower = if mirrors == 1 {
        reduced::tensor_with_mirror_t25(&r)
    } else {
        r.as_tower()
    };
    Ok((rep, fast_vk_sequence(&tower, kmax)))
}

fn tensor_v(lists: &[StaircaseList], mirrors: u64, kmax: u64) -> Result<Vec<u64>, CliError> {
    let t25 = StaircaseList::new(vec![1, 1]).expect("(1,1) is a staircase");
    let mirror_c = cfk::mirror(&cfk::staircase_complex(&t25));
    let c = lists
        .iter()
        .map(cfk::staircase_complex)
        .chain((0..mirrors).map(|_| mirror_c.clone()))
        .fold(FilteredComplex::unknot(), |acc, c| cfk::tensor(&acc, &c));
    Ok(cfk::brute_force_vk_sequence(&c, kmax)?)
}

pub fn cmd_alexander(src: &str) -> Result<(Payload, Vec<String>), CliError> {
    let k = parse(src)?;
    let f = alexander(&k)?;
    let coefficients = f
        .coeffs()
        .iter()
        .map(|c| {
            i64::try_from(c)
                .map_err(|_| CliError::Internal(format!("coefficient {c} exceeds 64 bits")))
        })
        .collect::<Result<_, _>>()?;
    let (staircase, not_lspace) = match staircase::staircase_from_alexander(&f) {
        Ok(list) => (Some(list), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let results = AlexanderResults {
        polynomial: f.to_string(),
        min_exp: f.min_exp(),
        coefficients,
        staircase,
        not_lspace,
    };
    let inputs = ExprInputs::new(src, &k);
    Ok((Payload::Alexander { inputs, results }, expr_notes(&k)))
}

pub fn cmd_vk(
    src: &str,
    k_range: Option<&str>,
    method: Method,
) -> Result<(Payload, Vec<String>), CliError> {
    let k = parse(src)?;
    let (lists, mirrors) = split_summands(&k)?;
    let genus: u64 = lists.iter().map(StaircaseList::genus).sum::<u64>() + 2 * mirrors;
    let (k_min, k_max) = match k_range {
        Some(r) => parse_range(r)?,
        None => (0, genus),
    };
    let mut notes = expr_notes(&k);
    notes.push("each positive summand is an L-space knot whose staircase is read off its Alexander polynomial".into());

    let mut staircase = None;
    let mut fast = None;
    if method != Method::Tensor {
        let (rep, v) = reduced_v(&lists, mirrors, k_max)?;
        if lists.len() > 1 {
            notes.push(format!(
                "the L-space summands share V_k with the representative staircase {rep}"
            ));
        }
        if mirrors == 1 {
            notes.push("-T(2,5) is tensored in closed form against the reduced complex".into());
        }
        staircase = Some(rep);
        fast = Some(v);
    }
    let brute = if method != Method::Reduced {
        notes.push("V_k from F2 homology of the full tensor product of staircase complexes".into());
        Some(tensor_v(&lists, mirrors, k_max)?)
    } else {
        None
    };
    let primary = fast.as_ref().or(brute.as_ref()).expect("some path ran");
    let rows = (k_min..=k_max)
        .map(|i| VkRow {
            k: i,
            v: primary[i as usize],
            v_tensor: match method {
                Method::Both => brute.as_ref().map(|b| b[i as usize]),
                _ => None,
            },
        })
        .collect();
    let oracle_agrees = match (method, &fast, &brute) {
        (Method::Both, Some(f), Some(b)) => Some(f == b),
        _ => None,
    };
    let inputs = VkInputs {
        expr: ExprInputs::new(src, &k),
        k_min,
        k_max,
        method,
    };
    let results = VkResults {
        staircase,
        mirror_t25: mirrors,
        rows,
        oracle_agrees,
    };
    Ok((Payload::Vk { inputs, results }, notes))
}

pub fn cmd_dinv(
    p: u64,
    q: u64,
    src: Option<&str>,
    label: Option<u64>,
) -> Result<(Payload, Vec<String>), CliError> {
    dinv::SpinC::new(p, q, 0)?;
    let labels: Vec<u64> = match label {
        Some(i) => {
            dinv::SpinC::new(p, q, i)?;
            vec![i]
        }
        None => (0..p).collect(),
    };
    let kmax = dinv::v_terms_needed(p, q) - 1;
    let mut notes = Vec::new();
    let (expr, v) = match src {
        Some(src) => {
            let k = parse(src)?;
            let (lists, mirrors) = split_summands(&k)?;
            let (_, v) = reduced_v(&lists, mirrors, kmax)?;
            notes.extend(expr_notes(&k));
            notes.push("V_k from the reduced complex of the representative staircase".into());
            (Some(ExprInputs::new(src, &k)), v)
        }
        None => (None, vec![0; kmax as usize + 1]),
    };
    notes.push(
        "d(S^3_{p/q}(K), t_i) = d(L(p,q), i) - 2 max(V_{floor(i/q)}, V_{floor((p+q-1-i)/q)})"
            .into(),
    );
    let spin_label = dinv::spin_label(p, q).ok();
    let rows = labels
        .iter()
        .map(|&i| {
            Ok(DinvRow {
                label: i,
                d: dinv::niwu_d(p, q, i, &v)?,
                spin: spin_label == Some(i),
            })
        })
        .collect::<Result<_, DinvError>>()?;
    let inputs = DinvInputs { p, q, expr, labels };
    let results = DinvResults {
        spin_label,
        v,
        rows,
    };
    Ok((Payload::Dinv { inputs, results }, notes))
}

/// Runs the family obstruction for each `n` in the range, in parallel.
/// Results are ordered by `n`.
pub fn cmd_obstruct(n_range: &str) -> Result<(Payload, Vec<String>), CliError> {
    let (n_min, n_max) = parse_range(n_range)?;
    if n_min == 0 {
        return Err(ObstructionError::ZeroIndex.into());
    }
    let results = (n_min..=n_max)
        .into_par_iter()
        .map(obstruction::obstruct)
        .collect::<Result<Vec<_>, _>>()?;
    let notes = obstruction::PROVENANCE
        .iter()
        .map(|s| s.to_string())
        .collect();
    Ok((
        Payload::Obstruct {
            inputs: ObstructInputs { n_min, n_max },
            results,
        },
        notes,
    ))
}
