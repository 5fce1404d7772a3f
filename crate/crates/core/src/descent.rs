//! Weyl-descent data: abelianization eligibility with the affine ledger,
//! the Fourier-mode spans of the abelian chiral rings, and the per-root
//! evaluation-condition report with the correction sections r_α, q_α where
//! their construction is effective.

use crate::cohomology::CocycleData;
use crate::linalg::*;
use crate::representation::{adjoint_quaternionified, PolarizationSplit, WeightMultiset};
use crate::root_datum::RootDatum;
use crate::sections::{
    hyperplane_coweights, FormalCharacterSection, FormalLinearSection, ScalarSection,
    SectionWorkspace,
};
use num_rational::Ratio;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DescentError {
    #[error("representation does not contain the doubled adjoint; missing weight {0:?}")]
    AdjointNotContained(IVec),
    #[error("evaluation conditions require the obstructions to be cancelled")]
    Obstructed,
}

/// Eligibility data for one root line.
#[derive(Debug, Clone, PartialEq)]
pub struct RootEligibility {
    pub root: IVec,
    pub coroot: IVec,
    /// Σ k·m over the weights ν = k·α with k > 0 (k may be half-integral).
    pub weighted_sum: Ratio<i64>,
    /// The same sum over integral k only: the ledger at x^α = -1.
    pub integral_sum: Ratio<i64>,
    pub eligible: bool,
    pub affine_eligible: bool,
}

#[derive(Debug, Clone)]
pub struct AbelianizationReport {
    pub per_root: Vec<RootEligibility>,
    /// All root lines eligible: the homological branch abelianizes.
    pub eligible: bool,
    /// All root lines pass the affine ledger: the K-theoretic branch
    /// abelianizes over the whole base, including the central points.
    pub affine_eligible: bool,
    /// E ⊖ 𝔤_H when the subtraction is defined.
    pub torus_weights: Option<WeightMultiset>,
}

/// Per-root comparison of hyperplane multiplicities of `e` against the
/// doubled adjoint: the root line α is eligible when Σ k·m over positive
/// multiples ν = kα of the root reaches the adjoint's own value 2. The
/// affine ledger counts integral k only.
pub fn abelianizable(d: &RootDatum, e: &WeightMultiset) -> AbelianizationReport {
    let mut per_root = vec![];
    let mut seen_lines: Vec<IVec> = vec![];
    for (root, coroot) in d.roots.iter().zip(&d.coroots) {
        let prim = crate::sections::primitive_direction(root);
        if seen_lines.contains(&prim) {
            continue;
        }
        seen_lines.push(prim);
        let mut weighted = Ratio::new(0, 1);
        let mut integral = Ratio::new(0, 1);
        for (v, m) in e.iter() {
            if is_zero_vec(v) || !is_positive_multiple(v, root) {
                continue;
            }
            // k = ⟨ν|h_α⟩ / 2.
            let k = Ratio::new(d.pair(v, coroot), 2);
            weighted += k * Ratio::new(m as i64, 1);
            if k.is_integer() {
                integral += k * Ratio::new(m as i64, 1);
            }
        }
        let required = Ratio::new(2, 1);
        per_root.push(RootEligibility {
            root: root.clone(),
            coroot: coroot.clone(),
            weighted_sum: weighted,
            integral_sum: integral,
            eligible: weighted >= required,
            affine_eligible: integral >= required,
        });
    }
    let eligible = per_root.iter().all(|r| r.eligible);
    let affine_eligible = per_root.iter().all(|r| r.affine_eligible);
    let torus_weights = subtract_adjoint(d, e).ok();
    AbelianizationReport { per_root, eligible, affine_eligible, torus_weights }
}

fn is_positive_multiple(v: &[i64], root: &[i64]) -> bool {
    // v = c·root with c > 0: cross products vanish and orientations agree.
    let mut sign = 0i64;
    for (i, &ri) in root.iter().enumerate() {
        for (j, &rj) in root.iter().enumerate() {
            if v[i] * rj != v[j] * ri {
                return false;
            }
        }
        if ri != 0 {
            sign = v[i].signum() * ri.signum();
        }
    }
    sign > 0
}

/// E ⊖ 𝔤_H; the error carries a weight with insufficient multiplicity,
/// normalized to its positive representative when both signs are missing.
pub fn subtract_adjoint(d: &RootDatum, e: &WeightMultiset) -> Result<WeightMultiset, DescentError> {
    let g_h = adjoint_quaternionified(d);
    e.checked_sub(&g_h).map_err(|w| {
        let negative_side = w.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0);
        let neg = vec_neg(&w);
        let canonical = if negative_side && e.multiplicity(&neg) < g_h.multiplicity(&neg) {
            neg
        } else {
            w
        };
        DescentError::AdjointNotContained(canonical)
    })
}

/// A Fourier mode of the abelian chiral ring: the label γ together with the
/// scalar-exponent Euler factor Π ⟨ν|ξ⟩^{|⟨ν|γ⟩|} over the negative polar
/// weights that pair nontrivially with γ (character flavor shares the index
/// set). The index set is fixed by matching the polarized degeneration:
/// for dominant γ it reproduces the ε₊ pairing.
pub fn fourier_mode(
    ws: &SectionWorkspace,
    gamma: &[i64],
) -> (IVec, ScalarSection) {
    let d = ws.data.datum;
    let mut s = ScalarSection::one(ws.ctx.clone());
    for (v, m) in ws.data.split.negative.iter() {
        let p = d.pair(v, gamma);
        if p != 0 {
            s.push_factor(v, p.abs() * m as i64);
        }
    }
    (gamma.to_vec(), s)
}

/// The three semisimple-rank-one centralizer shapes along a root hyperplane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeviCase {
    /// Z × SU(2): an honest SU(2) factor split off by a character.
    ProductSU2,
    /// Z × SO(3): only even pairings with the coroot occur.
    ProductSO3,
    /// Z ×_{μ₂} SU(2): odd pairings occur but cannot be split off.
    GluedSU2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorrectionStatus {
    /// The representation is polarizable along this Levi; the cocycles are
    /// trivial and no correction is needed.
    PolarizedRoute,
    /// r_α / q_α constructed explicitly and verified at valuation level.
    Constructed,
    /// Existence is guaranteed but the effective construction is not.
    ExistsNotConstructed,
}

#[derive(Debug, Clone)]
pub struct RootCondition {
    pub root: IVec,
    pub coroot: IVec,
    pub levi_case: LeviCase,
    /// Σ of ⟨ν|h_α⟩ over the positive α-multipliers with odd pairing (the
    /// odd-spin part of the SU(2)-restriction).
    pub odd_spin_sum: i64,
    pub parity_ok: bool,
    pub status: CorrectionStatus,
    pub correction_linear: Option<FormalLinearSection>,
    pub correction_character: Option<FormalCharacterSection>,
    /// The evaluation contract this root imposes on sections.
    pub condition: String,
}

#[derive(Debug, Clone)]
pub struct EvaluationConditionReport {
    pub per_root: Vec<RootCondition>,
}

/// Classifies the rank-one centralizer along the root: the image of the
/// pairing with the coroot detects SO(3); a character that is 1 on the
/// coroot and kills the hyperplane torus detects the split SU(2).
pub fn levi_case(d: &RootDatum, root: &[i64], coroot: &[i64]) -> LeviCase {
    let pairings: Vec<i64> = (0..d.weight_basis.cols)
        .map(|j| d.pair(&d.weight_basis.col(j), coroot))
        .collect();
    let g = pairings.iter().fold(0i64, |acc, &x| gcd(acc, x));
    if g % 2 == 0 {
        return LeviCase::ProductSO3;
    }
    // Look for ν ∈ Λ_G with ⟨ν|h_α⟩ = 1 and ⟨ν|γ⟩ = 0 for the hyperplane
    // coweights γ.
    let normals = hyperplane_coweights(d, root);
    let mut rows: Vec<IVec> = vec![pairings];
    let mut rhs = vec![1i64];
    for n in &normals {
        rows.push(
            (0..d.weight_basis.cols)
                .map(|j| d.pair(&d.weight_basis.col(j), n))
                .collect(),
        );
        rhs.push(0);
    }
    let a = IMat::from_rows(&rows);
    if solve_diophantine(&a, &rhs).is_some() {
        LeviCase::ProductSU2
    } else {
        LeviCase::GluedSU2
    }
}

/// Builds the per-root evaluation-condition report. Requires the primary
/// obstruction to be cancelled (the caller consults the obstruction report).
pub fn evaluation_conditions(
    data: &CocycleData,
    unobstructed: bool,
) -> Result<EvaluationConditionReport, DescentError> {
    if !unobstructed {
        return Err(DescentError::Obstructed);
    }
    let d = data.datum;
    let ws = SectionWorkspace::new(data);
    let e = data.split.total();
    let mut per_root = vec![];
    let mut seen_lines: Vec<IVec> = vec![];
    for (root, coroot) in d.roots.iter().zip(&d.coroots) {
        let prim = crate::sections::primitive_direction(root);
        if seen_lines.contains(&prim) {
            continue;
        }
        seen_lines.push(prim);
        let case = levi_case(d, root, coroot);
        // Odd-spin positive multiples of the root among the weights.
        let mut odd_sum = 0i64;
        for (v, m) in e.iter() {
            if !is_zero_vec(v) && is_positive_multiple(v, root) {
                let n = d.pair(v, coroot);
                if n.rem_euclid(2) == 1 {
                    odd_sum += n * m as i64;
                }
            }
        }
        let parity_ok = odd_sum % 2 == 0;
        let (status, correction_linear, correction_character) = match case {
            LeviCase::ProductSO3 | LeviCase::GluedSU2 => {
                // Polarizable on the Levi: trivial cocycles, no correction.
                (CorrectionStatus::PolarizedRoute, None, None)
            }
            LeviCase::ProductSU2 => {
                match construct_corrections(&ws, data, root, coroot) {
                    Some((r, q)) => (CorrectionStatus::Constructed, Some(r), Some(q)),
                    None => (CorrectionStatus::ExistsNotConstructed, None, None),
                }
            }
        };
        let condition = if e.is_empty() {
            "exp(h_a) ∘ s = 1 on the root hyperplane".to_string()
        } else {
            "exp(h_a) ∘ (s·r_a) = O(a), resp. exp(h_a) ∘ (s·q_a) = O(e^a - 1)".to_string()
        };
        per_root.push(RootCondition {
            root: root.clone(),
            coroot: coroot.clone(),
            levi_case: case,
            odd_spin_sum: odd_sum,
            parity_ok,
            status,
            correction_linear,
            correction_character,
            condition,
        });
    }
    Ok(EvaluationConditionReport { per_root })
}

/// Effective construction of r_α (and q_α): a single factor over the
/// primitive positive key on the root line whose reflection coboundary
/// matches the α-line valuation of χ_{s_α}. Solvable exactly when the
/// odd-spin sum is even; verified at valuation level before returning.
fn construct_corrections(
    ws: &SectionWorkspace,
    data: &CocycleData,
    root: &[i64],
    _coroot: &[i64],
) -> Option<(FormalLinearSection, FormalCharacterSection)> {
    let d = data.datum;
    let refl = reflection_index(data, root)?;
    let chi = ws.chi(refl);
    // α-line valuation of χ.
    let prim = crate::sections::primitive_direction(root);
    let mut valuation = vec![0i64; d.rank];
    for (k, exp) in &chi.factors {
        if crate::sections::primitive_direction(k) == prim {
            valuation = vec_add(&valuation, exp);
        }
    }
    if is_zero_vec(&valuation) {
        // Nothing to correct: the trivial section works.
        return Some((
            FormalLinearSection::one(ws.ctx.clone()),
            FormalCharacterSection::one(ws.ctx.clone()),
        ));
    }
    // Solve (I - s)·μ = valuation in lattice-basis coordinates.
    let s_basis = &data.basis_action[refl];
    let m = IMat::identity(d.rank).sub(s_basis);
    let mu = solve_diophantine(&m, &valuation)?;
    // Pick the primitive positive key on the root line that lies in the
    // weight lattice (the stored root halved when possible).
    let key = if d.is_group_weight(&prim) {
        prim.clone()
    } else {
        let mut k = prim.clone();
        for x in k.iter_mut() {
            *x *= 2;
        }
        k
    };
    let mut r = FormalLinearSection::one(ws.ctx.clone());
    r.push_factor(&key, &mu);
    let mut q = FormalCharacterSection::one(ws.ctx.clone());
    q.push_factor(d, &key, &mu);
    // Verify: χ · (δr)⁻¹ has zero net valuation on the α-line.
    let refl_elem = data.weyl.element(refl);
    let delta = r.mul(&r.weyl_act(refl_elem, s_basis).inverse()).ok()?;
    let corrected = chi.mul(&delta.inverse()).ok()?;
    let mut check = vec![0i64; d.rank];
    for (k, exp) in &corrected.factors {
        if crate::sections::primitive_direction(k) == prim {
            check = vec_add(&check, exp);
        }
    }
    is_zero_vec(&check).then_some((r, q))
}

/// The reflection s_α in the enumerated group: the element negating the
/// root while fixing the pairing with every coweight of the hyperplane.
fn reflection_index(data: &CocycleData, root: &[i64]) -> Option<usize> {
    let d = data.datum;
    let rank = d.rank;
    let normals = hyperplane_coweights(d, root);
    (0..data.weyl.len()).find(|&w| {
        let elem = data.weyl.element(w);
        if elem.mul_vec(root) != vec_neg(root) {
            return false;
        }
        normals.iter().all(|n| {
            (0..rank).all(|j| {
                let mut ej = vec![0i64; rank];
                ej[j] = 1;
                d.pair_num(&elem.mul_vec(&ej), n) == d.pair_num(&ej, n)
            })
        })
    })
}
