//! Normal-form algebra for rational sections of the dual-torus bundle over
//! the Toda bases: the Weyl multipliers χ_w, κ_w, the Euler sections ε₊,
//! λ₊, ε_V, λ_V, and the verifiers for their product identities.
//!
//! A linear-flavor section is a finite product
//!     (-1)^σ · Π_ν ⟨ν|ξ⟩^{λ_ν}
//! with ν running over positive-representative weights, exponents λ_ν in the
//! group's weight lattice (kept in lattice-basis coordinates) and a 2-torsion
//! sign σ ∈ Λ/2. A character-flavor section additionally carries a monomial
//! part x ↦ x^M with M ∈ Λ⊗Λ, from the normalization
//!     (1 - x^{ν})^λ = (-1)^λ · x^{ν⊗λ} · (1 - x^{-ν})^λ.
//!
//! Keys are normalized to the positive side of the analysis-wide reference
//! coweight (or lexicographically when the polarization is an invariant
//! half); sections tagged with different conventions refuse to combine.

use crate::cohomology::{CocycleData, ModTwoVector};
use crate::linalg::*;
use crate::representation::SplitKind;
use crate::root_datum::RootDatum;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SectionError {
    #[error("sections carry different conventions and cannot be combined")]
    MixedConventions,
    #[error("expected the factor part to cancel, residual keys {0:?}")]
    ResidualFactors(Vec<IVec>),
    #[error("character-flavor sections do not restrict to hyperplanes")]
    CharacterRestrictionUnsupported,
}

/// Key-normalization convention for positive representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Positivity {
    ByCoweight(IVec),
    Lexicographic,
}

impl Positivity {
    /// Sign of a nonzero key under this convention.
    fn sign(&self, key: &[i64]) -> i64 {
        match self {
            Positivity::ByCoweight(xi0) => {
                let s = dot(key, xi0).signum();
                assert!(s != 0, "key {key:?} pairs to zero with the reference coweight");
                s
            }
            Positivity::Lexicographic => {
                for &x in key {
                    if x != 0 {
                        return x.signum();
                    }
                }
                panic!("zero key in section")
            }
        }
    }
}

/// Convention tag: sections from different data or reference choices refuse
/// to combine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionContext {
    pub datum_fingerprint: u64,
    pub rank: usize,
    pub positivity: Positivity,
}

impl SectionContext {
    pub fn for_split(data: &CocycleData) -> Self {
        let positivity = match &data.split.kind {
            SplitKind::Reference { xi0, .. } => Positivity::ByCoweight(xi0.clone()),
            SplitKind::InvariantHalf => Positivity::Lexicographic,
        };
        SectionContext {
            datum_fingerprint: data.datum.fingerprint(),
            rank: data.datum.rank,
            positivity,
        }
    }
}

fn exp_coords(d: &RootDatum, weight: &[i64]) -> IVec {
    d.weight_coords(weight)
        .expect("exponent weight outside the group's weight lattice")
}

/// ξ ↦ (-1)^σ Π ⟨ν|ξ⟩^{λ_ν}, as a map 𝔥 → H∨.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalLinearSection {
    pub ctx: SectionContext,
    /// key (stored weight coords, positive representative) ↦ exponent
    /// (lattice-basis coords).
    pub factors: BTreeMap<IVec, IVec>,
    pub sign: ModTwoVector,
}

impl FormalLinearSection {
    pub fn one(ctx: SectionContext) -> Self {
        let rank = ctx.rank;
        FormalLinearSection { ctx, factors: BTreeMap::new(), sign: ModTwoVector::zero(rank) }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty() && self.sign.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.factors.is_empty()
    }

    /// Multiplies in the factor ⟨key|ξ⟩^{exp}, normalizing the key.
    pub fn push_factor(&mut self, key: &[i64], exp: &[i64]) {
        if is_zero_vec(exp) {
            return;
        }
        let (key, flip) = if self.ctx.positivity.sign(key) < 0 {
            (vec_neg(key), true)
        } else {
            (key.to_vec(), false)
        };
        if flip {
            self.sign = self.sign.xor(&ModTwoVector::from_coords(exp));
        }
        let entry = self.factors.entry(key.clone()).or_insert_with(|| vec![0; exp.len()]);
        *entry = vec_add(entry, exp);
        if is_zero_vec(entry) {
            self.factors.remove(&key);
        }
    }

    pub fn mul(&self, other: &FormalLinearSection) -> Result<FormalLinearSection, SectionError> {
        if self.ctx != other.ctx {
            return Err(SectionError::MixedConventions);
        }
        let mut out = self.clone();
        out.sign = out.sign.xor(&other.sign);
        for (k, e) in &other.factors {
            out.push_factor(k, e);
        }
        Ok(out)
    }

    /// Inverse: exponents negate, the 2-torsion sign is fixed.
    pub fn inverse(&self) -> FormalLinearSection {
        let mut out = self.clone();
        out.factors = self.factors.iter().map(|(k, e)| (k.clone(), vec_neg(e))).collect();
        out
    }

    /// w[s](ξ) = w·s(w⁻¹ξ): keys ν ↦ wν, exponents λ ↦ wλ, then normalize.
    pub fn weyl_act(&self, elem: &IMat, basis: &IMat) -> FormalLinearSection {
        let mut out = FormalLinearSection::one(self.ctx.clone());
        out.sign = self.sign.act(basis);
        for (k, e) in &self.factors {
            out.push_factor(&elem.mul_vec(k), &basis.mul_vec(e));
        }
        out
    }

    /// Applies w to the value only: s ↦ w ∘ s.
    pub fn apply_to_value(&self, basis: &IMat) -> FormalLinearSection {
        let mut out = FormalLinearSection::one(self.ctx.clone());
        out.sign = self.sign.act(basis);
        for (k, e) in &self.factors {
            out.push_factor(k, &basis.mul_vec(e));
        }
        out
    }

    /// Precomposes with w on the argument: s ↦ s ∘ w.
    pub fn compose_weyl(&self, elem_inv: &IMat) -> FormalLinearSection {
        let mut out = FormalLinearSection::one(self.ctx.clone());
        out.sign = self.sign.clone();
        for (k, e) in &self.factors {
            out.push_factor(&elem_inv.mul_vec(k), e);
        }
        out
    }

    /// ξ ↦ -ξ on the argument.
    pub fn substitute_neg(&self) -> FormalLinearSection {
        let mut out = self.clone();
        for e in self.factors.values() {
            out.sign = out.sign.xor(&ModTwoVector::from_coords(e));
        }
        out
    }

    /// Pairs the section with a cocharacter γ of H∨: the scalar-exponent
    /// product Π ⟨ν|ξ⟩^{⟨λ_ν|γ⟩} with sign bit ⟨σ|γ⟩ mod 2.
    pub fn pair_with_cocharacter(&self, d: &RootDatum, gamma: &[i64]) -> ScalarSection {
        let mut out = ScalarSection::one(self.ctx.clone());
        for (k, e) in &self.factors {
            let stored = d.weight_from_coords(e);
            out.push_factor(k, d.pair(&stored, gamma));
        }
        let sign_lift = d.weight_from_coords(&self.sign.lift());
        out.sign ^= d.pair(&sign_lift, gamma).rem_euclid(2) == 1;
        out
    }

    /// Restriction to the root hyperplane ⟨α|ξ⟩ = 0. Factors proportional to
    /// α accumulate into the vanishing exponent; the rest restrict to a
    /// section in the hyperplane coordinates (pairings with a basis of the
    /// annihilator of α in the coweight lattice), with signs tracked.
    pub fn restrict_to_hyperplane(
        &self,
        d: &RootDatum,
        alpha: &[i64],
    ) -> (IVec, FormalLinearSection) {
        let normals = hyperplane_coweights(d, alpha);
        let sub_rank = normals.len();
        let mut vanishing = vec![0i64; self.ctx.rank];
        let mut residual = FormalLinearSection::one(SectionContext {
            datum_fingerprint: self.ctx.datum_fingerprint,
            rank: self.ctx.rank,
            positivity: Positivity::Lexicographic,
        });
        residual.sign = self.sign.clone();
        for (k, e) in &self.factors {
            let restricted: IVec = normals.iter().map(|n| d.pair(k, n)).collect();
            if is_zero_vec(&restricted) {
                vanishing = vec_add(&vanishing, e);
            } else {
                // Pad restricted keys to the ambient length for uniformity.
                let mut key = restricted;
                key.resize(sub_rank.max(1), 0);
                let mut padded = vec![0i64; self.ctx.rank];
                padded[..key.len().min(self.ctx.rank)]
                    .copy_from_slice(&key[..key.len().min(self.ctx.rank)]);
                residual.push_factor(&padded, e);
            }
        }
        (vanishing, residual)
    }

    /// Per-hyperplane valuation report: factors grouped by the line through
    /// the key, with the (necessarily even for any inversion coboundary)
    /// exponent sums and their parity flags.
    pub fn torsor_parity(&self) -> TorsorParityReport {
        let mut lines: BTreeMap<IVec, IVec> = BTreeMap::new();
        for (k, e) in &self.factors {
            let prim = primitive_direction(k);
            let entry = lines.entry(prim).or_insert_with(|| vec![0; e.len()]);
            *entry = vec_add(entry, e);
        }
        let hyperplanes: Vec<HyperplaneParity> = lines
            .into_iter()
            .map(|(line, exp)| {
                let even = exp.iter().all(|&x| x % 2 == 0);
                HyperplaneParity { line, exponent: exp, even }
            })
            .collect();
        let all_even = hyperplanes.iter().all(|h| h.even);
        TorsorParityReport {
            hyperplanes,
            verdict: if all_even {
                TorsorVerdict::CoboundaryPossible
            } else {
                TorsorVerdict::Nontrivial
            },
        }
    }

    /// Paper-style bracketed display: one row per lattice-basis coordinate.
    pub fn display_bracketed(&self, d: &RootDatum) -> String {
        let rank = self.ctx.rank;
        let mut rows = vec![];
        for i in 0..rank {
            let mut row = String::new();
            if self.sign.0[i] {
                row.push('-');
            }
            let mut any = false;
            for (k, e) in &self.factors {
                if e[i] != 0 {
                    any = true;
                    row.push_str(&format!("{}^{}", linear_form_name(d, k), e[i]));
                    row.push(' ');
                }
            }
            if !any {
                row.push('1');
            }
            rows.push(row.trim_end().to_string());
        }
        format!("[ {} ]", rows.join(" ; "))
    }
}

fn linear_form_name(d: &RootDatum, key: &[i64]) -> String {
    let mut terms = vec![];
    for (i, &c) in key.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let (num, den) = (c, d.weight_scale);
        let g = gcd(num, den);
        let (num, den) = (num / g, den / g);
        let coef = if den == 1 {
            match num {
                1 => String::new(),
                -1 => "-".into(),
                _ => format!("{num}"),
            }
        } else {
            format!("{num}/{den}")
        };
        let lead = if terms.is_empty() || num < 0 { "" } else { "+" };
        terms.push(format!("{lead}{coef}x{}", i + 1));
    }
    format!("({})", terms.join(""))
}

/// Positive primitive direction of a nonzero integer vector.
pub fn primitive_direction(v: &[i64]) -> IVec {
    let g = v.iter().fold(0i64, |acc, &x| gcd(acc, x));
    let mut out: IVec = v.iter().map(|&x| x / g).collect();
    for &x in out.iter() {
        if x != 0 {
            if x < 0 {
                out = vec_neg(&out);
            }
            break;
        }
    }
    out
}

/// Basis of {γ in the coweight lattice : ⟨α|γ⟩ = 0}.
pub fn hyperplane_coweights(d: &RootDatum, alpha: &[i64]) -> Vec<IVec> {
    // Coefficients x with ⟨α | B x⟩ = 0, B the coweight-lattice basis.
    let row: IVec = (0..d.coweight_basis.cols)
        .map(|j| dot(alpha, &d.coweight_basis.col(j)))
        .collect();
    let m = IMat::from_rows(&[row]);
    integer_kernel(&m)
        .into_iter()
        .map(|x| d.coweight_basis.mul_vec(&x))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperplaneParity {
    pub line: IVec,
    pub exponent: IVec,
    pub even: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorsorVerdict {
    CoboundaryPossible,
    Nontrivial,
}

#[derive(Debug, Clone)]
pub struct TorsorParityReport {
    pub hyperplanes: Vec<HyperplaneParity>,
    pub verdict: TorsorVerdict,
}

/// x ↦ (-1)^σ · x^M · Π (1 - x^{-ν})^{λ_ν}, a map H → H∨.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalCharacterSection {
    pub ctx: SectionContext,
    pub factors: BTreeMap<IVec, IVec>,
    /// M ∈ Λ⊗Λ in lattice-basis coordinates; first index is the argument
    /// character, second the value side.
    pub monomial: IMat,
    pub sign: ModTwoVector,
}

impl FormalCharacterSection {
    pub fn one(ctx: SectionContext) -> Self {
        let rank = ctx.rank;
        FormalCharacterSection {
            ctx,
            factors: BTreeMap::new(),
            monomial: IMat::zeros(rank, rank),
            sign: ModTwoVector::zero(rank),
        }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty() && self.monomial.is_zero() && self.sign.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.factors.is_empty() && self.monomial.is_zero()
    }

    /// Multiplies in the factor (1 - x^{-key})^{exp}, normalizing so the
    /// stored key is positive: (1-x^{ν})^λ = (-1)^λ x^{ν⊗λ} (1-x^{-ν})^λ.
    pub fn push_factor(&mut self, d: &RootDatum, key: &[i64], exp: &[i64]) {
        if is_zero_vec(exp) {
            return;
        }
        let positive = self.ctx.positivity.sign(key) > 0;
        let key_pos = if positive { key.to_vec() } else { vec_neg(key) };
        if !positive {
            // (1-x^{-key})^λ with key < 0 is (1-x^{μ})^λ for μ = -key > 0.
            self.sign = self.sign.xor(&ModTwoVector::from_coords(exp));
            let mu = exp_coords(d, &key_pos);
            for i in 0..self.ctx.rank {
                for j in 0..self.ctx.rank {
                    self.monomial[(i, j)] += mu[i] * exp[j];
                }
            }
        }
        let entry =
            self.factors.entry(key_pos.clone()).or_insert_with(|| vec![0; exp.len()]);
        *entry = vec_add(entry, exp);
        if is_zero_vec(entry) {
            self.factors.remove(&key_pos);
        }
    }

    pub fn mul(
        &self,
        other: &FormalCharacterSection,
        d: &RootDatum,
    ) -> Result<FormalCharacterSection, SectionError> {
        if self.ctx != other.ctx {
            return Err(SectionError::MixedConventions);
        }
        let mut out = self.clone();
        out.sign = out.sign.xor(&other.sign);
        out.monomial = out.monomial.add(&other.monomial);
        for (k, e) in &other.factors {
            out.push_factor(d, k, e);
        }
        Ok(out)
    }

    pub fn inverse(&self) -> FormalCharacterSection {
        let mut out = self.clone();
        out.factors = self.factors.iter().map(|(k, e)| (k.clone(), vec_neg(e))).collect();
        out.monomial = self.monomial.scale(-1);
        out
    }

    pub fn weyl_act(&self, d: &RootDatum, elem: &IMat, basis: &IMat) -> FormalCharacterSection {
        let mut out = FormalCharacterSection::one(self.ctx.clone());
        out.sign = self.sign.act(basis);
        out.monomial = basis.mul(&self.monomial).mul(&basis.transpose());
        for (k, e) in &self.factors {
            out.push_factor(d, &elem.mul_vec(k), &basis.mul_vec(e));
        }
        out
    }

    pub fn apply_to_value(&self, d: &RootDatum, basis: &IMat) -> FormalCharacterSection {
        let mut out = FormalCharacterSection::one(self.ctx.clone());
        out.sign = self.sign.act(basis);
        out.monomial = self.monomial.mul(&basis.transpose());
        for (k, e) in &self.factors {
            out.push_factor(d, k, &basis.mul_vec(e));
        }
        out
    }

    pub fn compose_weyl(
        &self,
        d: &RootDatum,
        elem_inv: &IMat,
        basis_inv: &IMat,
    ) -> FormalCharacterSection {
        let mut out = FormalCharacterSection::one(self.ctx.clone());
        out.sign = self.sign.clone();
        out.monomial = basis_inv.mul(&self.monomial);
        for (k, e) in &self.factors {
            out.push_factor(d, &elem_inv.mul_vec(k), e);
        }
        out
    }

    /// x ↦ x⁻¹ on the argument.
    pub fn substitute_inv(&self, d: &RootDatum) -> FormalCharacterSection {
        let mut out = FormalCharacterSection::one(self.ctx.clone());
        out.sign = self.sign.clone();
        out.monomial = self.monomial.scale(-1);
        for (k, e) in &self.factors {
            // (1 - x^{-ν}) becomes (1 - x^{ν}); re-normalize via a negative key.
            out.push_factor(d, &vec_neg(k), e);
        }
        out
    }
}

/// Scalar-exponent formal product: Π ⟨ν|ξ⟩^{m_ν} (or character factors)
/// with a plain sign bit. Used for cocharacter pairings and Fourier modes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarSection {
    pub ctx: SectionContext,
    pub factors: BTreeMap<IVec, i64>,
    pub sign: bool,
}

impl ScalarSection {
    pub fn one(ctx: SectionContext) -> Self {
        ScalarSection { ctx, factors: BTreeMap::new(), sign: false }
    }

    pub fn push_factor(&mut self, key: &[i64], exp: i64) {
        if exp == 0 {
            return;
        }
        let (key, flip) = if self.ctx.positivity.sign(key) < 0 {
            (vec_neg(key), true)
        } else {
            (key.to_vec(), false)
        };
        if flip && exp.rem_euclid(2) == 1 {
            self.sign = !self.sign;
        }
        let entry = self.factors.entry(key.clone()).or_insert(0);
        *entry += exp;
        if *entry == 0 {
            self.factors.remove(&key);
        }
    }

    pub fn mul(&self, other: &ScalarSection) -> Result<ScalarSection, SectionError> {
        if self.ctx != other.ctx {
            return Err(SectionError::MixedConventions);
        }
        let mut out = self.clone();
        out.sign ^= other.sign;
        for (k, &e) in &other.factors {
            out.push_factor(k, e);
        }
        Ok(out)
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty() && !self.sign
    }
}

/// Workspace bundling a polarized representation with its section algebra.
pub struct SectionWorkspace<'a> {
    pub data: &'a CocycleData<'a>,
    pub ctx: SectionContext,
}

impl<'a> SectionWorkspace<'a> {
    pub fn new(data: &'a CocycleData<'a>) -> Self {
        let ctx = SectionContext::for_split(data);
        SectionWorkspace { data, ctx }
    }

    fn d(&self) -> &RootDatum {
        self.data.datum
    }

    /// χ_w = Π_{ν>0, wν<0} ⟨wν|ξ⟩^{wν}, via the polar-transport difference.
    pub fn chi(&self, w: usize) -> FormalLinearSection {
        let mut s = FormalLinearSection::one(self.ctx.clone());
        for (value, mult) in self.data.pushforward_difference(w) {
            if mult > 0 {
                let e = vec_scale(&exp_coords(self.d(), &value), mult);
                s.push_factor(&value, &e);
            }
        }
        s
    }

    /// κ_w = Π_{ν>0, wν<0} (1 - x^{-wν})^{wν}.
    pub fn kappa(&self, w: usize) -> FormalCharacterSection {
        let mut s = FormalCharacterSection::one(self.ctx.clone());
        for (value, mult) in self.data.pushforward_difference(w) {
            if mult > 0 {
                let e = vec_scale(&exp_coords(self.d(), &value), mult);
                s.push_factor(self.d(), &value, &e);
            }
        }
        s
    }

    /// ε₊ = Π_{ν>0} ⟨ν|ξ⟩^ν over the polar half.
    pub fn epsilon_plus(&self) -> FormalLinearSection {
        let mut s = FormalLinearSection::one(self.ctx.clone());
        for (v, m) in self.data.split.positive.iter() {
            let e = vec_scale(&exp_coords(self.d(), v), m as i64);
            s.push_factor(v, &e);
        }
        s
    }

    /// λ₊ = Π_{ν>0} (1 - x^{-ν})^ν.
    pub fn lambda_plus(&self) -> FormalCharacterSection {
        let mut s = FormalCharacterSection::one(self.ctx.clone());
        for (v, m) in self.data.split.positive.iter() {
            let e = vec_scale(&exp_coords(self.d(), v), m as i64);
            s.push_factor(self.d(), v, &e);
        }
        s
    }

    /// The square of charge conjugation: Π_{ν>0} (-1)^ν (linear flavor).
    pub fn c_squared_linear(&self) -> FormalLinearSection {
        let mut s = FormalLinearSection::one(self.ctx.clone());
        let mut total = vec![0i64; self.ctx.rank];
        for (v, m) in self.data.split.positive.iter() {
            total = vec_add(&total, &vec_scale(&exp_coords(self.d(), v), m as i64));
        }
        s.sign = ModTwoVector::from_coords(&total);
        s
    }

    /// The square of charge conjugation: Π_{ν>0} (-x^ν)^{-ν} (character).
    pub fn c_squared_character(&self) -> FormalCharacterSection {
        let mut s = FormalCharacterSection::one(self.ctx.clone());
        let mut total = vec![0i64; self.ctx.rank];
        for (v, m) in self.data.split.positive.iter() {
            let c = exp_coords(self.d(), v);
            total = vec_add(&total, &vec_scale(&c, m as i64));
            for i in 0..self.ctx.rank {
                for j in 0..self.ctx.rank {
                    s.monomial[(i, j)] -= (m as i64) * c[i] * c[j];
                }
            }
        }
        s.sign = ModTwoVector::from_coords(&total);
        s
    }

    fn elem(&self, w: usize) -> &IMat {
        self.data.weyl.element(w)
    }

    fn basis(&self, w: usize) -> &IMat {
        &self.data.basis_action[w]
    }

    /// Residual of the cocycle identity: the constant section R with
    /// χ_{uv} = χ_u · u[χ_v] · R. The factor part must cancel; the sign is
    /// compared by the caller against the Weyl cocycle c(u,v).
    pub fn delta_chi(&self, u: usize, v: usize) -> Result<ModTwoVector, SectionError> {
        let uv = self.data.weyl.mul(u, v);
        let lhs = self.chi(uv);
        let rhs = self
            .chi(u)
            .mul(&self.chi(v).weyl_act(self.elem(u), self.basis(u)))?;
        let res = lhs.mul(&rhs.inverse())?;
        if !res.is_constant() {
            return Err(SectionError::ResidualFactors(res.factors.keys().cloned().collect()));
        }
        Ok(res.sign)
    }

    /// Residual (sign, monomial) with κ_{uv} = κ_u · u[κ_v] · R.
    pub fn delta_kappa(&self, u: usize, v: usize) -> Result<(ModTwoVector, IMat), SectionError> {
        let uv = self.data.weyl.mul(u, v);
        let lhs = self.kappa(uv);
        let rhs = self.kappa(u).mul(
            &self.kappa(v).weyl_act(self.d(), self.elem(u), self.basis(u)),
            self.d(),
        )?;
        let res = lhs.mul(&rhs.inverse(), self.d())?;
        if !res.factors.is_empty() {
            return Err(SectionError::ResidualFactors(res.factors.keys().cloned().collect()));
        }
        Ok((res.sign, res.monomial))
    }

    /// Discrepancy of χ_w(ξ)·χ_w(-ξ) against the Weyl coboundary
    /// w[ε₊]·ε₊⁻¹ of the Euler section; the factor part must cancel and the
    /// result is a constant 2-torsion point.
    pub fn vepchikappa_linear(&self, w: usize) -> Result<ModTwoVector, SectionError> {
        let chi = self.chi(w);
        let lhs = chi.mul(&chi.substitute_neg())?;
        let eps = self.epsilon_plus();
        let rhs = eps.weyl_act(self.elem(w), self.basis(w)).mul(&eps.inverse())?;
        let res = lhs.mul(&rhs.inverse())?;
        if !res.is_constant() {
            return Err(SectionError::ResidualFactors(res.factors.keys().cloned().collect()));
        }
        Ok(res.sign)
    }

    /// Character-flavor counterpart; returns (sign, monomial) discrepancy.
    pub fn vepchikappa_character(
        &self,
        w: usize,
    ) -> Result<(ModTwoVector, IMat), SectionError> {
        let kap = self.kappa(w);
        let lhs = kap.mul(&kap.substitute_inv(self.d()), self.d())?;
        let lam = self.lambda_plus();
        let rhs = lam
            .weyl_act(self.d(), self.elem(w), self.basis(w))
            .mul(&lam.inverse(), self.d())?;
        let res = lhs.mul(&rhs.inverse(), self.d())?;
        if !res.factors.is_empty() {
            return Err(SectionError::ResidualFactors(res.factors.keys().cloned().collect()));
        }
        Ok((res.sign, res.monomial))
    }

    /// ε_V for an explicit set of weights (the polarized Euler section),
    /// with an optional mass coordinate zeroed out of the exponents.
    pub fn epsilon_v(
        &self,
        v_weights: &crate::representation::WeightMultiset,
        mass_coord: Option<usize>,
    ) -> FormalLinearSection {
        let mut s = FormalLinearSection::one(self.ctx.clone());
        for (v, m) in v_weights.iter() {
            let mut exp_w = v.clone();
            if let Some(i) = mass_coord {
                exp_w[i] = 0;
            }
            let e = vec_scale(&exp_coords(self.d(), &exp_w), m as i64);
            s.push_factor(v, &e);
        }
        s
    }

    /// λ_V, character flavor of the polarized Euler section.
    pub fn lambda_v(
        &self,
        v_weights: &crate::representation::WeightMultiset,
        mass_coord: Option<usize>,
    ) -> FormalCharacterSection {
        let mut s = FormalCharacterSection::one(self.ctx.clone());
        for (v, m) in v_weights.iter() {
            let mut exp_w = v.clone();
            if let Some(i) = mass_coord {
                exp_w[i] = 0;
            }
            let e = vec_scale(&exp_coords(self.d(), &exp_w), m as i64);
            s.push_factor(self.d(), v, &e);
        }
        s
    }

    /// The KO-flavored Euler data: the doubled-lattice section
    /// Π (x^{ν/2} - x^{-ν/2})^ν is recorded through the order-2 torsor flag
    /// of the bilinear form Σ_{ν>0} ν⊗ν mod 2. Informational only.
    pub fn lambda_ko_torsor_form(&self) -> IMat {
        let mut m = IMat::zeros(self.ctx.rank, self.ctx.rank);
        for (v, mult) in self.data.split.positive.iter() {
            let c = exp_coords(self.d(), v);
            for i in 0..self.ctx.rank {
                for j in 0..self.ctx.rank {
                    m[(i, j)] += (mult as i64) * c[i] * c[j];
                }
            }
        }
        m.mod2()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::CocycleData;
    use crate::representation::*;
    use crate::root_datum::*;
    use crate::weyl::WeylGroup;

    struct Fixture {
        d: RootDatum,
        w: WeylGroup,
        split: PolarizationSplit,
    }

    fn su2_fixture(copies: u64) -> Fixture {
        let d = build_simple(Family::SU, 2).unwrap();
        let mut e = WeightMultiset::empty(&d);
        e.insert(vec![1], copies);
        e.insert(vec![-1], copies);
        let w = WeylGroup::enumerate(&d, 100).unwrap();
        let split = polarize(&d, &e, &[1], true).unwrap();
        Fixture { d, w, split }
    }

    #[test]
    fn chi_kappa_su2_normal_forms() {
        let f = su2_fixture(1);
        let data = CocycleData::new(&f.d, &f.w, &f.split);
        let ws = SectionWorkspace::new(&data);
        let s = 1;
        // χ_s = sign ω · ⟨ω|ξ⟩^{-ω}
        let chi = ws.chi(s);
        assert_eq!(chi.sign, ModTwoVector(vec![true]));
        assert_eq!(chi.factors.get(&vec![1]), Some(&vec![-1]));
        // κ_s = sign ω · x^{-ω⊗ω} · (1-x^{-ω})^{-ω}
        let kap = ws.kappa(s);
        assert_eq!(kap.sign, ModTwoVector(vec![true]));
        assert_eq!(kap.monomial[(0, 0)], -1);
        assert_eq!(kap.factors.get(&vec![1]), Some(&vec![-1]));
        // χ_e is the empty section.
        assert!(ws.chi(0).is_one());
        // ε₊ = ⟨ω|ξ⟩^ω.
        let eps = ws.epsilon_plus();
        assert_eq!(eps.factors.get(&vec![1]), Some(&vec![1]));
        assert!(eps.sign.is_zero());
        // weyl_act(s, ε₊) = sign ω · ⟨ω|ξ⟩^{-ω}.
        let acted = eps.weyl_act(f.w.element(s), &data.basis_action[s]);
        assert_eq!(acted.sign, ModTwoVector(vec![true]));
        assert_eq!(acted.factors.get(&vec![1]), Some(&vec![-1]));
        // substitute_neg is an involution.
        assert_eq!(acted.substitute_neg().substitute_neg(), acted);
        // invert flips exponents, fixes sign.
        let inv = acted.inverse();
        assert_eq!(inv.factors.get(&vec![1]), Some(&vec![1]));
        assert_eq!(inv.sign, acted.sign);
    }

    #[test]
    fn delta_chi_and_kappa_match_cocycles() {
        for copies in [1u64, 2] {
            let f = su2_fixture(copies);
            let data = CocycleData::new(&f.d, &f.w, &f.split);
            let ws = SectionWorkspace::new(&data);
            for u in 0..2 {
                for v in 0..2 {
                    let res = ws.delta_chi(u, v).unwrap();
                    assert_eq!(res, data.cocycle_c(u, v), "(u,v)=({u},{v})");
                    let (sign, mono) = ws.delta_kappa(u, v).unwrap();
                    assert_eq!(sign, data.cocycle_c(u, v));
                    assert_eq!(mono, data.cocycle_d(u, v), "(u,v)=({u},{v})");
                }
            }
        }
    }

    #[test]
    fn vepchikappa_discrepancies() {
        // With the Weyl-coboundary reading of w[ε₊] the identity is exact
        // for one and for two copies of the standard representation.
        for copies in [1u64, 2] {
            let f = su2_fixture(copies);
            let data = CocycleData::new(&f.d, &f.w, &f.split);
            let ws = SectionWorkspace::new(&data);
            assert!(ws.vepchikappa_linear(1).unwrap().is_zero());
            let (sign, mono) = ws.vepchikappa_character(1).unwrap();
            assert!(sign.is_zero());
            assert!(mono.is_zero());
        }
    }

    #[test]
    fn weyl_act_is_a_group_action() {
        let d = build_simple(Family::Sp, 2).unwrap();
        let e = standard_rep(&d, 0).unwrap();
        let w = WeylGroup::enumerate(&d, 100).unwrap();
        let xi0 = d.lexicographic_regular_coweight(&e.support().cloned().collect::<Vec<_>>());
        let split = polarize(&d, &e, &xi0, true).unwrap();
        let data = CocycleData::new(&d, &w, &split);
        let ws = SectionWorkspace::new(&data);
        let s = ws.epsilon_plus();
        for u in 0..w.len() {
            for v in 0..w.len() {
                let uv = w.mul(u, v);
                let lhs = s
                    .weyl_act(w.element(v), &data.basis_action[v])
                    .weyl_act(w.element(u), &data.basis_action[u]);
                let rhs = s.weyl_act(w.element(uv), &data.basis_action[uv]);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn euler_doubling_under_negation() {
        let f = su2_fixture(1);
        let data = CocycleData::new(&f.d, &f.w, &f.split);
        let ws = SectionWorkspace::new(&data);
        let eps = ws.epsilon_plus();
        let doubled = eps.substitute_neg().mul(&eps).unwrap();
        assert_eq!(doubled.factors.get(&vec![1]), Some(&vec![2]));
    }

    #[test]
    fn c_squared_sections() {
        let f = su2_fixture(1);
        let data = CocycleData::new(&f.d, &f.w, &f.split);
        let ws = SectionWorkspace::new(&data);
        let lin = ws.c_squared_linear();
        assert_eq!(lin.sign, ModTwoVector(vec![true]));
        assert!(lin.factors.is_empty());
        let ch = ws.c_squared_character();
        assert_eq!(ch.sign, ModTwoVector(vec![true]));
        assert_eq!(ch.monomial[(0, 0)], -1);
        // All-even multiplicities give the identity.
        let f2 = su2_fixture(2);
        let data2 = CocycleData::new(&f2.d, &f2.w, &f2.split);
        let ws2 = SectionWorkspace::new(&data2);
        assert!(ws2.c_squared_linear().is_one());
    }

    #[test]
    fn cocharacter_pairing() {
        let f = su2_fixture(1);
        let data = CocycleData::new(&f.d, &f.w, &f.split);
        let ws = SectionWorkspace::new(&data);
        let eps = ws.epsilon_plus();
        let paired = eps.pair_with_cocharacter(&f.d, &[1]);
        assert_eq!(paired.factors.get(&vec![1]), Some(&1));
        assert!(!paired.sign);
        let trivial = eps.pair_with_cocharacter(&f.d, &[0]);
        assert!(trivial.is_one());
    }

    #[test]
    fn hyperplane_restriction_su2() {
        // ε₊ of SU(2) restricted to its own root hyperplane: the single
        // factor is proportional to the root, so everything is vanishing
        // exponent and the residual is empty.
        let f = su2_fixture(1);
        let data = CocycleData::new(&f.d, &f.w, &f.split);
        let ws = SectionWorkspace::new(&data);
        let eps = ws.epsilon_plus();
        let (vanishing, residual) = eps.restrict_to_hyperplane(&f.d, &[2]);
        assert_eq!(vanishing, vec![1]);
        assert!(residual.factors.is_empty());
    }

    #[test]
    fn torsor_parity_verdicts() {
        let f = su2_fixture(2);
        let data = CocycleData::new(&f.d, &f.w, &f.split);
        let ws = SectionWorkspace::new(&data);
        // χ for E = 2H has even exponents everywhere.
        let rep = ws.chi(1).torsor_parity();
        assert_eq!(rep.verdict, TorsorVerdict::CoboundaryPossible);
        let f1 = su2_fixture(1);
        let data1 = CocycleData::new(&f1.d, &f1.w, &f1.split);
        let ws1 = SectionWorkspace::new(&data1);
        let rep1 = ws1.chi(1).torsor_parity();
        assert_eq!(rep1.verdict, TorsorVerdict::Nontrivial);
        // Proportional keys merge onto one line: spin-3/2 is even.
        let d = build_simple(Family::SU, 2).unwrap();
        let mut e = WeightMultiset::empty(&d);
        for k in [3i64, 1, -1, -3] {
            e.insert(vec![k], 1);
        }
        let w = WeylGroup::enumerate(&d, 100).unwrap();
        let split = polarize(&d, &e, &[1], true).unwrap();
        let data32 = CocycleData::new(&d, &w, &split);
        let ws32 = SectionWorkspace::new(&data32);
        let rep32 = ws32.chi(1).torsor_parity();
        assert_eq!(rep32.hyperplanes.len(), 1);
        assert_eq!(rep32.hyperplanes[0].exponent, vec![-4]);
        assert_eq!(rep32.verdict, TorsorVerdict::CoboundaryPossible);
        // The empty section is trivially even.
        let empty = FormalLinearSection::one(ws32.ctx.clone());
        assert_eq!(empty.torsor_parity().verdict, TorsorVerdict::CoboundaryPossible);
    }

    #[test]
    fn normal_form_is_order_independent() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let d = build_simple(Family::Sp, 2).unwrap();
        let ctx = SectionContext {
            datum_fingerprint: d.fingerprint(),
            rank: 2,
            positivity: Positivity::ByCoweight(vec![3, 1]),
        };
        let factors: Vec<(IVec, IVec)> = vec![
            (vec![1, 1], vec![2, -1]),
            (vec![-1, 1], vec![0, 3]),
            (vec![2, 0], vec![1, 1]),
            (vec![-1, -1], vec![1, 0]),
            (vec![0, -2], vec![-2, 5]),
        ];
        let mut reference: Option<FormalLinearSection> = None;
        let mut reference_char: Option<FormalCharacterSection> = None;
        for _ in 0..10 {
            let mut shuffled = factors.clone();
            shuffled.shuffle(&mut rng);
            let mut s = FormalLinearSection::one(ctx.clone());
            let mut c = FormalCharacterSection::one(ctx.clone());
            for (k, e) in &shuffled {
                s.push_factor(k, e);
                c.push_factor(&d, k, e);
            }
            if let Some(r) = &reference {
                assert_eq!(r, &s);
            } else {
                reference = Some(s);
            }
            if let Some(r) = &reference_char {
                assert_eq!(r, &c);
            } else {
                reference_char = Some(c);
            }
        }
    }

    #[test]
    fn mixed_conventions_rejected() {
        let f = su2_fixture(1);
        let data = CocycleData::new(&f.d, &f.w, &f.split);
        let ws = SectionWorkspace::new(&data);
        let a = ws.epsilon_plus();
        let mut b = a.clone();
        b.ctx.positivity = Positivity::ByCoweight(vec![-1]);
        assert_eq!(a.mul(&b).unwrap_err(), SectionError::MixedConventions);
    }

    #[test]
    fn mass_variant_euler() {
        // V = standard of U(1) with a mass circle: factor (⟨ν|ξ⟩+μ)^ν.
        let u1 = build_torus(1);
        let mass = build_torus(1);
        let d = product(&u1, &mass);
        let mut v = WeightMultiset::empty(&d);
        v.insert(vec![1, 1], 1);
        let mut e = v.clone();
        e.insert(vec![-1, -1], 1);
        let w = WeylGroup::enumerate(&d, 10).unwrap();
        let split = polarize(&d, &e, &[1, 2], true).unwrap();
        let data = CocycleData::new(&d, &w, &split);
        let ws = SectionWorkspace::new(&data);
        let eps = ws.epsilon_v(&v, Some(1));
        // Key carries the mass coordinate, the exponent does not.
        assert_eq!(eps.factors.get(&vec![1, 1]), Some(&vec![1, 0]));
    }
}
