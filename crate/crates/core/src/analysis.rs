//! Request parsing, analysis orchestration and report assembly.
//!
//! Requests and reports are UTF-8 JSON. Weights are integer arrays in the
//! cover coordinates documented by the root_datum module; half-integer spin
//! weights are written as doubled integers with `"doubled": true`. Kernel
//! vectors are arrays of rational strings ("1/2") in natural coweight
//! coordinates. Reports mirror the analysis sections field by field, and
//! every section is either computed or explicitly skipped with a reason.

use crate::cohomology::{
    solve_coboundary_c, solve_coboundary_s2, verify_2cocycle, verify_crossed_hom,
    bockstein_relation, CocycleData, Cochain1, ModTwoVector,
};
use crate::descent::{abelianizable, evaluation_conditions, CorrectionStatus, LeviCase};
use crate::linalg::{IMat, IVec};
use crate::obstructions::{
    classify_irreducible, secondary_sigma, w4_square_root_search, even_choice_dim,
    fiber_dimension, ClassificationCase, ObstructionError, SigmaStatus,
};
use crate::representation::{polarize, RepExpr, WeightMultiset};
use crate::root_datum::{
    build_simple, build_torus, central_quotient, product, BuildError, Family, RootDatum,
};
use crate::sections::{FormalCharacterSection, FormalLinearSection, SectionWorkspace, TorsorVerdict};
use crate::toda::VerticalDiscrepancy;
use crate::weyl::{WeylGroup, DEFAULT_WEYL_CAP};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("parse error at {field}: {message}")]
    Parse { field: String, message: String },
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
}

impl AnalysisError {
    fn parse(field: &str, message: impl Into<String>) -> Self {
        AnalysisError::Parse { field: field.into(), message: message.into() }
    }
}

// ---------------------------------------------------------------------------
// Request format
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct AnalysisRequest {
    pub schema_version: u32,
    pub group: GroupSpec,
    pub representation: RepNode,
    #[serde(default, skip_serializing_if = "Options::is_default")]
    pub options: Options,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GroupSpec {
    pub factors: Vec<FactorSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub kernel: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FactorSpec {
    pub family: String,
    pub n: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum RepNode {
    Zero,
    Standard { factor: usize },
    Adjoint,
    Weights {
        entries: Vec<WeightEntry>,
        #[serde(default)]
        doubled: bool,
    },
    Tensor { args: Vec<RepNode> },
    Sum { args: Vec<RepNode> },
    Quaternionify { args: Vec<RepNode> },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct WeightEntry {
    pub weight: Vec<i64>,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Default)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi0: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub analyses: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corrections: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weyl_cap: Option<usize>,
}

impl Options {
    fn is_default(&self) -> bool {
        self == &Options::default()
    }
}

pub fn parse_request(text: &str) -> Result<AnalysisRequest, AnalysisError> {
    let req: AnalysisRequest = serde_json::from_str(text)
        .map_err(|e| AnalysisError::parse("<document>", e.to_string()))?;
    if req.schema_version != SCHEMA_VERSION {
        return Err(AnalysisError::parse(
            "schema_version",
            format!("unsupported version {} (expected {})", req.schema_version, SCHEMA_VERSION),
        ));
    }
    Ok(req)
}

fn parse_rational(s: &str, field: &str) -> Result<(i64, i64), AnalysisError> {
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let num: i64 = num
        .parse()
        .map_err(|_| AnalysisError::parse(field, format!("bad rational {s:?}")))?;
    let den: i64 = den
        .parse()
        .map_err(|_| AnalysisError::parse(field, format!("bad rational {s:?}")))?;
    if den <= 0 {
        return Err(AnalysisError::parse(field, "denominator must be positive"));
    }
    Ok((num, den))
}

pub fn build_group(spec: &GroupSpec) -> Result<RootDatum, AnalysisError> {
    if spec.factors.is_empty() {
        return Err(AnalysisError::parse("group.factors", "at least one factor required"));
    }
    let mut datum: Option<RootDatum> = None;
    for (i, f) in spec.factors.iter().enumerate() {
        let field = format!("group.factors[{i}]");
        let built = match f.family.as_str() {
            "SU" => build_simple(Family::SU, f.n),
            "Sp" => build_simple(Family::Sp, f.n),
            "Spin" => build_simple(Family::Spin, f.n),
            "SO" => build_simple(Family::SO, f.n),
            "Torus" | "U1" => {
                if f.n == 0 {
                    Err(BuildError::InvalidRank { family: Family::Torus, n: 0 })
                } else {
                    Ok(build_torus(f.n))
                }
            }
            other => {
                return Err(AnalysisError::parse(&field, format!("unknown family {other:?}")))
            }
        }
        .map_err(|e| AnalysisError::parse(&field, e.to_string()))?;
        datum = Some(match datum {
            None => built,
            Some(prev) => product(&prev, &built),
        });
    }
    let mut datum = datum.unwrap();
    if !spec.kernel.is_empty() {
        let mut kernel = vec![];
        for (i, vec_s) in spec.kernel.iter().enumerate() {
            let field = format!("group.kernel[{i}]");
            if vec_s.len() != datum.rank {
                return Err(AnalysisError::parse(
                    &field,
                    format!("expected {} coordinates, got {}", datum.rank, vec_s.len()),
                ));
            }
            let mut den = 1i64;
            let parts: Vec<(i64, i64)> = vec_s
                .iter()
                .map(|s| parse_rational(s, &field))
                .collect::<Result<_, _>>()?;
            for &(_, d) in &parts {
                den = crate::linalg::lcm(den, d);
            }
            let nums: IVec = parts.iter().map(|&(n, d)| n * (den / d)).collect();
            kernel.push((nums, den));
        }
        datum = central_quotient(&datum, &kernel)
            .map_err(|e| AnalysisError::parse("group.kernel", e.to_string()))?;
    }
    Ok(datum)
}

pub fn build_rep_expr(node: &RepNode, d: &RootDatum) -> Result<RepExpr, AnalysisError> {
    Ok(match node {
        RepNode::Zero => RepExpr::Zero,
        RepNode::Standard { factor } => {
            if *factor >= d.factors.len() {
                return Err(AnalysisError::parse(
                    "representation.factor",
                    format!("factor {factor} out of range"),
                ));
            }
            RepExpr::Standard(*factor)
        }
        RepNode::Adjoint => RepExpr::Adjoint,
        RepNode::Weights { entries, doubled } => {
            let mut ws = vec![];
            for (i, entry) in entries.iter().enumerate() {
                let field = format!("representation.entries[{i}]");
                if entry.weight.len() != d.rank {
                    return Err(AnalysisError::parse(
                        &field,
                        format!("expected {} coordinates", d.rank),
                    ));
                }
                let given_scale = if *doubled { 2 } else { 1 };
                let stored: IVec = entry
                    .weight
                    .iter()
                    .map(|&x| {
                        let num = x * d.weight_scale;
                        if num % given_scale != 0 {
                            Err(AnalysisError::parse(
                                &field,
                                "doubled coordinates must be even for this group",
                            ))
                        } else {
                            Ok(num / given_scale)
                        }
                    })
                    .collect::<Result<_, _>>()?;
                ws.push((stored, entry.multiplicity));
            }
            RepExpr::Weights(ws)
        }
        RepNode::Tensor { args } => fold_args(args, d, |a, b| {
            RepExpr::Tensor(Box::new(a), Box::new(b))
        })?,
        RepNode::Sum { args } => {
            fold_args(args, d, |a, b| RepExpr::Sum(Box::new(a), Box::new(b)))?
        }
        RepNode::Quaternionify { args } => {
            if args.len() != 1 {
                return Err(AnalysisError::parse(
                    "representation.quaternionify",
                    "exactly one argument expected",
                ));
            }
            RepExpr::Quaternionify(Box::new(build_rep_expr(&args[0], d)?))
        }
    })
}

fn fold_args(
    args: &[RepNode],
    d: &RootDatum,
    f: impl Fn(RepExpr, RepExpr) -> RepExpr,
) -> Result<RepExpr, AnalysisError> {
    if args.is_empty() {
        return Err(AnalysisError::parse("representation.args", "empty argument list"));
    }
    let mut exprs = args.iter().map(|a| build_rep_expr(a, d));
    let mut acc = exprs.next().unwrap()?;
    for e in exprs {
        acc = f(acc, e?);
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Report format
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Section<T> {
    Computed { #[serde(flatten)] value: T },
    Skipped { reason: String },
}

impl<T> Section<T> {
    pub fn value(&self) -> Option<&T> {
        match self {
            Section::Computed { value } => Some(value),
            Section::Skipped { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub group: GroupSummary,
    pub representation: RepSummary,
    pub obstruction: Section<ObstructionReport>,
    pub cocycles: Section<CocycleReport>,
    pub identities: Section<IdentityReport>,
    pub torsor: Section<TorsorReport>,
    pub abelianization: Section<AbelianizationSection>,
    pub conditions: Section<ConditionsSection>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GroupSummary {
    pub rank: usize,
    pub weight_scale: i64,
    pub coweight_scale: i64,
    pub weyl_order: usize,
    pub fundamental_group_torsion: Vec<i64>,
    pub fundamental_group_free_rank: usize,
    pub center_torsion: Vec<i64>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RepSummary {
    pub dimension: u64,
    pub self_dual: bool,
    pub descends_to_group: bool,
    pub xi0: Vec<i64>,
    pub strict_split: bool,
    pub positive_weights: Vec<WeightEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ObstructionReport {
    pub w4_mod2_roots: Vec<W4RootEntry>,
    pub has_integral_lift: bool,
    pub classification_case: String,
    pub sigma_status: String,
    pub sigma_note: String,
    pub parity_check: Option<ParityCheck>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct W4RootEntry {
    pub root_mod2: Vec<u8>,
    pub integral_lift: Option<Vec<i64>>,
    pub mod4_lift: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ParityCheck {
    pub root_used: Vec<i64>,
    pub all_fiber_dimensions_even: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CocycleReport {
    pub c_is_cocycle: bool,
    pub s2_is_crossed_hom: bool,
    pub c_exact: bool,
    pub c_trivialization: Option<Vec<Vec<u8>>>,
    pub c_kernel_dimension: Option<usize>,
    pub s2_exact: bool,
    pub s2_trivialization: Option<Vec<Vec<i64>>>,
    pub bockstein_relation: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct IdentityReport {
    pub delta_chi_matches_c: bool,
    pub delta_kappa_matches_c_d: bool,
    pub pair_failures: Vec<String>,
    pub vepchikappa_all_zero_linear: bool,
    pub vepchikappa_all_zero_character: bool,
    pub vepchikappa: Vec<VepEntry>,
    pub regweyl_all_zero: bool,
    pub regweyl_corrected: bool,
    pub regweyl: Vec<RegEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct VepEntry {
    pub element: usize,
    pub linear_sign: Vec<u8>,
    pub character_sign: Vec<u8>,
    pub character_monomial: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RegEntry {
    pub element: usize,
    pub linear_sign: Vec<u8>,
    pub character_sign: Vec<u8>,
    pub character_monomial: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TorsorReport {
    pub per_element: Vec<TorsorEntry>,
    pub overall: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TorsorEntry {
    pub element: usize,
    pub word: Vec<usize>,
    pub verdict: String,
    pub lines: Vec<TorsorLine>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TorsorLine {
    pub line: Vec<i64>,
    pub exponent: Vec<i64>,
    pub even: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct AbelianizationSection {
    pub eligible: bool,
    pub affine_eligible: bool,
    pub per_root: Vec<AbelianRootEntry>,
    pub torus_weight_dimension: Option<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct AbelianRootEntry {
    pub root: Vec<i64>,
    pub weighted_sum: String,
    pub integral_sum: String,
    pub eligible: bool,
    pub affine_eligible: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ConditionsSection {
    pub per_root: Vec<ConditionEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ConditionEntry {
    pub root: Vec<i64>,
    pub levi_case: String,
    pub odd_spin_sum: i64,
    pub parity_ok: bool,
    pub correction_status: String,
    pub correction_display: Option<String>,
    pub condition: String,
}

fn bits(v: &ModTwoVector) -> Vec<u8> {
    v.0.iter().map(|&b| b as u8).collect()
}

fn matrix_rows(m: &IMat) -> Vec<Vec<i64>> {
    (0..m.rows).map(|i| m.row(i)).collect()
}

// ---------------------------------------------------------------------------
// Orchestration
// ---------------------------------------------------------------------------

pub struct PreparedAnalysis {
    pub datum: RootDatum,
    pub weyl: WeylGroup,
    pub expr: RepExpr,
    pub rep: WeightMultiset,
    pub xi0: IVec,
}

pub fn prepare(req: &AnalysisRequest) -> Result<PreparedAnalysis, AnalysisError> {
    let datum = build_group(&req.group)?;
    let expr = build_rep_expr(&req.representation, &datum)?;
    let rep = expr
        .eval(&datum)
        .map_err(|e| AnalysisError::parse("representation", e.to_string()))?;
    rep.validate_quaternionic()
        .map_err(|e| AnalysisError::parse("representation", e.to_string()))?;
    // Weyl stability of the multiset is required for every analysis.
    for g in &datum.weyl_generators {
        for (v, m) in rep.iter() {
            if rep.multiplicity(&g.mul_vec(v)) != m {
                return Err(AnalysisError::parse(
                    "representation",
                    format!("weight multiset is not Weyl stable (witness {v:?})"),
                ));
            }
        }
    }
    let cap = req.options.weyl_cap.unwrap_or(DEFAULT_WEYL_CAP);
    let weyl = WeylGroup::enumerate(&datum, cap)
        .map_err(|e| AnalysisError::ResourceCap(e.to_string()))?;
    let xi0 = match &req.options.xi0 {
        Some(v) => {
            if v.len() != datum.rank {
                return Err(AnalysisError::parse("options.xi0", "wrong length"));
            }
            if !datum.is_group_coweight(v) {
                return Err(AnalysisError::parse(
                    "options.xi0",
                    "not in the coweight lattice",
                ));
            }
            let seps: Vec<IVec> = rep.support().cloned().collect();
            for s in seps.iter().chain(datum.roots.iter()) {
                if !crate::linalg::is_zero_vec(s) && datum.pair_num(s, v) == 0 {
                    return Err(AnalysisError::parse(
                        "options.xi0",
                        format!("not regular: pairs to zero with {s:?}"),
                    ));
                }
            }
            v.clone()
        }
        None => {
            let seps: Vec<IVec> = rep.support().cloned().collect();
            datum.lexicographic_regular_coweight(&seps)
        }
    };
    Ok(PreparedAnalysis { datum, weyl, expr, rep, xi0 })
}

fn wants(options: &Options, section: &str) -> bool {
    match &options.analyses {
        None => true,
        Some(list) => list.iter().any(|s| s == section),
    }
}

pub fn run_analysis(req: &AnalysisRequest) -> Result<AnalysisReport, AnalysisError> {
    let prep = prepare(req)?;
    let PreparedAnalysis { datum, weyl, expr, rep, xi0 } = &prep;
    let descends = rep.support().all(|v| datum.is_group_weight(v));
    let split = polarize(datum, rep, xi0, true)
        .map_err(|e| AnalysisError::parse("options.xi0", e.to_string()))?;

    let group_summary = GroupSummary {
        rank: datum.rank,
        weight_scale: datum.weight_scale,
        coweight_scale: datum.coweight_scale,
        weyl_order: weyl.len(),
        fundamental_group_torsion: datum.fundamental_group().torsion,
        fundamental_group_free_rank: datum.fundamental_group().free_rank,
        center_torsion: datum.center_invariants().torsion,
    };
    let rep_summary = RepSummary {
        dimension: rep.total_dimension(),
        self_dual: rep.is_self_dual(),
        descends_to_group: descends,
        xi0: xi0.clone(),
        strict_split: split.is_strict(),
        positive_weights: split
            .positive
            .iter()
            .map(|(v, m)| WeightEntry { weight: v.clone(), multiplicity: m })
            .collect(),
    };

    let skipped = |reason: &str| -> String { reason.to_string() };

    // Everything below needs the representation inside the group's lattice.
    if !descends {
        let why = skipped("representation does not descend to the group (weights outside Λ_G)");
        return Ok(AnalysisReport {
            schema_version: SCHEMA_VERSION,
            group: group_summary,
            representation: rep_summary,
            obstruction: Section::Skipped { reason: why.clone() },
            cocycles: Section::Skipped { reason: why.clone() },
            identities: Section::Skipped { reason: why.clone() },
            torsor: Section::Skipped { reason: why.clone() },
            abelianization: Section::Skipped { reason: why.clone() },
            conditions: Section::Skipped { reason: why },
        });
    }

    let data = CocycleData::new(datum, weyl, &split);
    let ws = SectionWorkspace::new(&data);

    // Obstruction section.
    let mut unobstructed = false;
    let obstruction = if wants(&req.options, "obstruction") {
        let sols = w4_square_root_search(datum, rep, weyl)
            .map_err(|e| AnalysisError::parse("representation", e.to_string()))?;
        let has_lift = sols.iter().any(|s| s.integral_lift.is_some());
        unobstructed = has_lift;
        let classification = match classify_irreducible(datum, expr) {
            Ok(ClassificationCase::Unobstructed) => "unobstructed",
            Ok(ClassificationCase::CaseI) => "case_i",
            Ok(ClassificationCase::CaseII) => "case_ii",
            Ok(ClassificationCase::NotApplicable) | Err(ObstructionError::NotTensorStructured) => {
                "not_applicable"
            }
            Err(e) => return Err(AnalysisError::parse("representation", e.to_string())),
        };
        let has_root = !sols.is_empty();
        let (sigma_status, sigma_note) = if has_root {
            match secondary_sigma(datum, expr, true) {
                Ok(SigmaStatus::Zero) => ("zero".to_string(), String::new()),
                Ok(SigmaStatus::Nonzero { witness }) => ("nonzero".to_string(), witness),
                Ok(SigmaStatus::Conditional { note }) => ("conditional".to_string(), note),
                Err(e) => return Err(AnalysisError::parse("representation", e.to_string())),
            }
        } else {
            ("conditional".to_string(), "no mod-2 square root of the primary class".into())
        };
        // Parity check with the first integral lift, when present.
        let parity_check = sols
            .iter()
            .find_map(|s| s.integral_lift.clone())
            .map(|lift| {
                let r = datum.weight_from_coords(&lift);
                let mut probes: Vec<IVec> = datum.coroots.clone();
                for j in 0..datum.coweight_basis.cols {
                    probes.push(datum.coweight_basis.col(j));
                }
                let all_even = probes.iter().all(|g| {
                    fiber_dimension(&split, datum, g, even_choice_dim(datum, &r, g)) % 2 == 0
                });
                ParityCheck { root_used: r, all_fiber_dimensions_even: all_even }
            });
        let mut notes = vec![];
        if classification != "not_applicable" {
            let search_obstructed = !has_lift;
            let class_obstructed = classification != "unobstructed";
            if search_obstructed != class_obstructed {
                notes.push(format!(
                    "weight search and structural classification disagree: \
                     search says {}, classification says {}",
                    if search_obstructed { "obstructed" } else { "unobstructed" },
                    classification
                ));
            }
        }
        Section::Computed {
            value: ObstructionReport {
                w4_mod2_roots: sols
                    .iter()
                    .map(|s| W4RootEntry {
                        root_mod2: s.root_mod2.iter().map(|&b| b as u8).collect(),
                        integral_lift: s.integral_lift.clone(),
                        mod4_lift: s.mod4_lift,
                    })
                    .collect(),
                has_integral_lift: has_lift,
                classification_case: classification.to_string(),
                sigma_status,
                sigma_note,
                parity_check,
                notes,
            },
        }
    } else {
        Section::Skipped { reason: "not requested".into() }
    };

    // Cocycle section.
    let mut correction: Option<Cochain1<ModTwoVector>> = None;
    let cocycles = if wants(&req.options, "cocycles") {
        let c = data.c_table();
        let s2 = data.s2_table();
        let c_ok = verify_2cocycle(&c, weyl, &data.basis_action).is_ok();
        let s2_ok = verify_crossed_hom(&s2, weyl, &data.basis_action).is_ok();
        let c_sol = solve_coboundary_c(&c, weyl, &data.basis_action);
        let s2_sol = solve_coboundary_s2(&s2, weyl, &data.basis_action);
        let bockstein =
            bockstein_relation(&data.s2_integral_table(), &data.d_table(), weyl, &data.basis_action);
        let report = CocycleReport {
            c_is_cocycle: c_ok,
            s2_is_crossed_hom: s2_ok,
            c_exact: c_sol.is_some(),
            c_trivialization: c_sol
                .as_ref()
                .map(|s| s.particular.values.iter().map(bits).collect()),
            c_kernel_dimension: c_sol.as_ref().map(|s| s.kernel.len()),
            s2_exact: s2_sol.is_some(),
            s2_trivialization: s2_sol.as_ref().map(|s| matrix_rows(&s.particular)),
            bockstein_relation: bockstein,
        };
        if req.options.corrections.as_deref() != Some("none") {
            correction = c_sol.map(|s| s.particular);
        }
        Section::Computed { value: report }
    } else {
        Section::Skipped { reason: "not requested".into() }
    };

    // Identity section.
    let identities = if wants(&req.options, "identities") {
        let mut pair_failures = vec![];
        let mut chi_all = true;
        let mut kappa_all = true;
        for u in 0..weyl.len() {
            for v in 0..weyl.len() {
                match ws.delta_chi(u, v) {
                    Ok(sign) => {
                        if sign != data.cocycle_c(u, v) {
                            chi_all = false;
                            pair_failures.push(format!("delta_chi({u},{v})"));
                        }
                    }
                    Err(e) => {
                        chi_all = false;
                        pair_failures.push(format!("delta_chi({u},{v}): {e}"));
                    }
                }
                match ws.delta_kappa(u, v) {
                    Ok((sign, mono)) => {
                        if sign != data.cocycle_c(u, v) || mono != data.cocycle_d(u, v) {
                            kappa_all = false;
                            pair_failures.push(format!("delta_kappa({u},{v})"));
                        }
                    }
                    Err(e) => {
                        kappa_all = false;
                        pair_failures.push(format!("delta_kappa({u},{v}): {e}"));
                    }
                }
            }
        }
        let mut vep_entries = vec![];
        let mut vep_lin_zero = true;
        let mut vep_char_zero = true;
        let mut reg_entries = vec![];
        let mut reg_zero = true;
        for w in 0..weyl.len() {
            let lin = ws
                .vepchikappa_linear(w)
                .map_err(|e| AnalysisError::parse("identities", e.to_string()))?;
            let (cs, cm) = ws
                .vepchikappa_character(w)
                .map_err(|e| AnalysisError::parse("identities", e.to_string()))?;
            if !lin.is_zero() {
                vep_lin_zero = false;
            }
            if !cs.is_zero() || !cm.is_zero() {
                vep_char_zero = false;
            }
            vep_entries.push(VepEntry {
                element: w,
                linear_sign: bits(&lin),
                character_sign: bits(&cs),
                character_monomial: matrix_rows(&cm),
            });
            let rl = ws
                .verify_regweyl(w, false, correction.as_ref())
                .map_err(|e| AnalysisError::parse("identities", e.to_string()))?;
            let rc = ws
                .verify_regweyl(w, true, correction.as_ref())
                .map_err(|e| AnalysisError::parse("identities", e.to_string()))?;
            if !rl.is_zero() || !rc.is_zero() {
                reg_zero = false;
            }
            let (ls, (cs2, cm2)) = match (rl, rc) {
                (VerticalDiscrepancy::Linear(a), VerticalDiscrepancy::Character(b, m)) => {
                    (a, (b, m))
                }
                _ => unreachable!(),
            };
            reg_entries.push(RegEntry {
                element: w,
                linear_sign: bits(&ls),
                character_sign: bits(&cs2),
                character_monomial: matrix_rows(&cm2),
            });
        }
        Section::Computed {
            value: IdentityReport {
                delta_chi_matches_c: chi_all,
                delta_kappa_matches_c_d: kappa_all,
                pair_failures,
                vepchikappa_all_zero_linear: vep_lin_zero,
                vepchikappa_all_zero_character: vep_char_zero,
                vepchikappa: vep_entries,
                regweyl_all_zero: reg_zero,
                regweyl_corrected: correction.is_some(),
                regweyl: reg_entries,
            },
        }
    } else {
        Section::Skipped { reason: "not requested".into() }
    };

    // Torsor section.
    let torsor = if wants(&req.options, "torsor") {
        let mut entries = vec![];
        for w in 0..weyl.len() {
            let rep = ws.chi(w).torsor_parity();
            entries.push(TorsorEntry {
                element: w,
                word: weyl.words[w].clone(),
                verdict: match rep.verdict {
                    TorsorVerdict::CoboundaryPossible => "coboundary_possible".into(),
                    TorsorVerdict::Nontrivial => "nontrivial".into(),
                },
                lines: rep
                    .hyperplanes
                    .iter()
                    .map(|h| TorsorLine {
                        line: h.line.clone(),
                        exponent: h.exponent.clone(),
                        even: h.even,
                    })
                    .collect(),
            });
        }
        // Conclusive overall verdict from the full inversion, when present.
        let overall = match weyl.minus_identity() {
            Some(w0) => match ws.chi(w0).torsor_parity().verdict {
                TorsorVerdict::Nontrivial => "nontrivial",
                TorsorVerdict::CoboundaryPossible => "coboundary_possible",
            },
            None => "inconclusive",
        };
        Section::Computed {
            value: TorsorReport { per_element: entries, overall: overall.into() },
        }
    } else {
        Section::Skipped { reason: "not requested".into() }
    };

    // Abelianization section.
    let abelianization = if wants(&req.options, "abelianization") {
        let rep_ab = abelianizable(datum, rep);
        Section::Computed {
            value: AbelianizationSection {
                eligible: rep_ab.eligible,
                affine_eligible: rep_ab.affine_eligible,
                per_root: rep_ab
                    .per_root
                    .iter()
                    .map(|r| AbelianRootEntry {
                        root: r.root.clone(),
                        weighted_sum: r.weighted_sum.to_string(),
                        integral_sum: r.integral_sum.to_string(),
                        eligible: r.eligible,
                        affine_eligible: r.affine_eligible,
                    })
                    .collect(),
                torus_weight_dimension: rep_ab.torus_weights.map(|t| t.total_dimension()),
            },
        }
    } else {
        Section::Skipped { reason: "not requested".into() }
    };

    // Evaluation conditions (requires the obstruction to be cancelled).
    let conditions = if wants(&req.options, "conditions") {
        if unobstructed {
            match evaluation_conditions(&data, true) {
                Ok(rep_cond) => Section::Computed {
                    value: ConditionsSection {
                        per_root: rep_cond
                            .per_root
                            .iter()
                            .map(|r| ConditionEntry {
                                root: r.root.clone(),
                                levi_case: match r.levi_case {
                                    LeviCase::ProductSU2 => "Z x SU(2)".into(),
                                    LeviCase::ProductSO3 => "Z x SO(3)".into(),
                                    LeviCase::GluedSU2 => "Z x_mu2 SU(2)".into(),
                                },
                                odd_spin_sum: r.odd_spin_sum,
                                parity_ok: r.parity_ok,
                                correction_status: match r.status {
                                    CorrectionStatus::PolarizedRoute => "polarized_route".into(),
                                    CorrectionStatus::Constructed => "constructed".into(),
                                    CorrectionStatus::ExistsNotConstructed => {
                                        "exists_not_constructed".into()
                                    }
                                },
                                correction_display: r
                                    .correction_linear
                                    .as_ref()
                                    .map(|s| s.display_bracketed(datum)),
                                condition: r.condition.clone(),
                            })
                            .collect(),
                    },
                },
                Err(e) => Section::Skipped { reason: e.to_string() },
            }
        } else {
            Section::Skipped {
                reason: "obstructed input: primary class has no integral square root".into(),
            }
        }
    } else {
        Section::Skipped { reason: "not requested".into() }
    };

    let _ = (&FormalLinearSection::one as &dyn Fn(_) -> _, &FormalCharacterSection::one as &dyn Fn(_) -> _);
    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        group: group_summary,
        representation: rep_summary,
        obstruction,
        cocycles,
        identities,
        torsor,
        abelianization,
        conditions,
    })
}

pub fn report_to_json(report: &AnalysisReport) -> String {
    serde_json::to_string_pretty(report).expect("report serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn su2_request(rep: RepNode) -> AnalysisRequest {
        AnalysisRequest {
            schema_version: 1,
            group: GroupSpec {
                factors: vec![FactorSpec { family: "SU".into(), n: 2 }],
                kernel: vec![],
            },
            representation: rep,
            options: Options::default(),
        }
    }

    #[test]
    fn parse_round_trip() {
        let req = su2_request(RepNode::Standard { factor: 0 });
        let text = serde_json::to_string(&req).unwrap();
        let back = parse_request(&text).unwrap();
        assert_eq!(req, back);
    }

    #[test]
    fn bad_kernel_is_parse_error() {
        let mut req = su2_request(RepNode::Standard { factor: 0 });
        req.group.kernel = vec![vec!["1/3".into()]];
        let err = run_analysis(&req).unwrap_err();
        assert!(matches!(err, AnalysisError::Parse { .. }));
    }

    #[test]
    fn odd_dimension_rejected() {
        let req = su2_request(RepNode::Weights {
            entries: vec![WeightEntry { weight: vec![2], multiplicity: 1 }],
            doubled: false,
        });
        let err = run_analysis(&req).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("odd") || msg.contains("negation"), "{msg}");
    }

    #[test]
    fn analysis_report_su2_standard() {
        let req = su2_request(RepNode::Standard { factor: 0 });
        let report = run_analysis(&req).unwrap();
        let ob = report.obstruction.value().unwrap();
        assert!(!ob.has_integral_lift);
        assert_eq!(ob.classification_case, "case_i");
        let co = report.cocycles.value().unwrap();
        assert!(co.c_is_cocycle && co.s2_is_crossed_hom);
        assert!(!co.c_exact);
        let id = report.identities.value().unwrap();
        assert!(id.delta_chi_matches_c && id.delta_kappa_matches_c_d);
        assert!(matches!(&report.conditions, Section::Skipped { .. }));
        // Byte determinism.
        let a = report_to_json(&report);
        let b = report_to_json(&run_analysis(&req).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn analysis_report_su2_doubled() {
        let req = su2_request(RepNode::Quaternionify {
            args: vec![RepNode::Standard { factor: 0 }],
        });
        let report = run_analysis(&req).unwrap();
        let ob = report.obstruction.value().unwrap();
        assert!(ob.has_integral_lift);
        assert_eq!(ob.classification_case, "unobstructed");
        assert!(ob.parity_check.as_ref().unwrap().all_fiber_dimensions_even);
        let co = report.cocycles.value().unwrap();
        assert!(co.c_exact && co.s2_exact && co.bockstein_relation);
        let id = report.identities.value().unwrap();
        assert!(id.vepchikappa_all_zero_linear && id.vepchikappa_all_zero_character);
        assert!(id.regweyl_all_zero);
        assert!(report.conditions.value().is_some());
    }
}
