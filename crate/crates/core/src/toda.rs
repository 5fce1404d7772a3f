//! Rational automorphisms of the Toda fibrations: the modified Weyl action,
//! the shifted charge conjugations C₊, their compositions, and the
//! commutation checks. The vertical shift of an automorphism is stored as a
//! section evaluated at the *input* point; the displayed multiplier
//! χ_w(wξ) of the modified action therefore appears here as χ_w ∘ w.

use crate::cohomology::{Cochain1, ModTwoVector};
use crate::linalg::*;
use crate::sections::{
    FormalCharacterSection, FormalLinearSection, SectionError, SectionWorkspace,
};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TodaError {
    #[error(transparent)]
    Section(#[from] SectionError),
    #[error("automorphisms act on different Toda flavors")]
    FlavorMismatch,
    #[error("discrepancy has a non-constant factor part: {0:?}")]
    NonConstantDiscrepancy(Vec<IVec>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shift {
    Linear(FormalLinearSection),
    Character(FormalCharacterSection),
}

/// An automorphism (p, h) ↦ (base(p), shift(p)·(w·h)^{fiber_exponent}) of
/// 𝔥 × H∨ or H × H∨, with base(p) = ±w·p (inversion on the character torus
/// in the character flavor).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TodaAutomorphism {
    pub weyl_elem: usize,
    pub negate_base: bool,
    pub fiber_exponent: i8,
    pub shift: Shift,
}

/// Constant 2-torsion (and monomial, in the character flavor) discrepancy
/// between two automorphisms with equal base data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerticalDiscrepancy {
    Linear(ModTwoVector),
    Character(ModTwoVector, IMat),
}

impl VerticalDiscrepancy {
    pub fn is_zero(&self) -> bool {
        match self {
            VerticalDiscrepancy::Linear(s) => s.is_zero(),
            VerticalDiscrepancy::Character(s, m) => s.is_zero() && m.is_zero(),
        }
    }
}

impl<'a> SectionWorkspace<'a> {
    pub fn identity_automorphism(&self, character: bool) -> TodaAutomorphism {
        TodaAutomorphism {
            weyl_elem: self.data.weyl.identity(),
            negate_base: false,
            fiber_exponent: 1,
            shift: if character {
                Shift::Character(FormalCharacterSection::one(self.ctx.clone()))
            } else {
                Shift::Linear(FormalLinearSection::one(self.ctx.clone()))
            },
        }
    }

    /// C₊: (ξ,h) ↦ (-ξ, ε₊⁻¹(ξ)·h⁻¹), resp. (x,h) ↦ (x⁻¹, λ₊⁻¹(x)·h⁻¹).
    pub fn charge_conjugation(&self, character: bool) -> TodaAutomorphism {
        TodaAutomorphism {
            weyl_elem: self.data.weyl.identity(),
            negate_base: true,
            fiber_exponent: -1,
            shift: if character {
                Shift::Character(self.lambda_plus().inverse())
            } else {
                Shift::Linear(self.epsilon_plus().inverse())
            },
        }
    }

    /// The modified Weyl action (ξ,h) ↦ (wξ, χ_w(wξ)·(-1)^{φ(w)}·wh),
    /// optionally corrected by a 1-cochain φ trivializing the sign cocycle.
    pub fn modified_weyl(
        &self,
        w: usize,
        character: bool,
        correction: Option<&Cochain1<ModTwoVector>>,
    ) -> TodaAutomorphism {
        let winv = self.data.weyl.inv(w);
        let shift = if character {
            let mut s = self.kappa(w).compose_weyl(
                self.data.datum,
                self.data.weyl.element(winv),
                &self.data.basis_action[winv],
            );
            if let Some(phi) = correction {
                s.sign = s.sign.xor(&phi.values[w]);
            }
            Shift::Character(s)
        } else {
            let mut s = self.chi(w).compose_weyl(self.data.weyl.element(winv));
            if let Some(phi) = correction {
                s.sign = s.sign.xor(&phi.values[w]);
            }
            Shift::Linear(s)
        };
        TodaAutomorphism { weyl_elem: w, negate_base: false, fiber_exponent: 1, shift }
    }

    /// g₂ ∘ g₁. The shift of the composite is (s₂ ∘ base₁) · (w₂·s₁)^{f₂}.
    pub fn compose(
        &self,
        g2: &TodaAutomorphism,
        g1: &TodaAutomorphism,
    ) -> Result<TodaAutomorphism, TodaError> {
        let weyl = self.data.weyl;
        let d = self.data.datum;
        let w = weyl.mul(g2.weyl_elem, g1.weyl_elem);
        let w1inv = weyl.inv(g1.weyl_elem);
        let b2 = &self.data.basis_action[g2.weyl_elem];
        let shift = match (&g2.shift, &g1.shift) {
            (Shift::Linear(s2), Shift::Linear(s1)) => {
                let mut a = s2.compose_weyl(weyl.element(w1inv));
                if g1.negate_base {
                    a = a.substitute_neg();
                }
                let mut b = s1.apply_to_value(b2);
                if g2.fiber_exponent < 0 {
                    b = b.inverse();
                }
                Shift::Linear(a.mul(&b)?)
            }
            (Shift::Character(s2), Shift::Character(s1)) => {
                let mut a = s2.compose_weyl(
                    d,
                    weyl.element(w1inv),
                    &self.data.basis_action[w1inv],
                );
                if g1.negate_base {
                    a = a.substitute_inv(d);
                }
                let mut b = s1.apply_to_value(d, b2);
                if g2.fiber_exponent < 0 {
                    b = b.inverse();
                }
                Shift::Character(a.mul(&b, d)?)
            }
            _ => return Err(TodaError::FlavorMismatch),
        };
        Ok(TodaAutomorphism {
            weyl_elem: w,
            negate_base: g1.negate_base ^ g2.negate_base,
            fiber_exponent: g1.fiber_exponent * g2.fiber_exponent,
            shift,
        })
    }

    /// Composes C₊ and the (optionally corrected) modified action of w in
    /// both orders and returns the constant vertical discrepancy.
    pub fn verify_regweyl(
        &self,
        w: usize,
        character: bool,
        correction: Option<&Cochain1<ModTwoVector>>,
    ) -> Result<VerticalDiscrepancy, TodaError> {
        let c = self.charge_conjugation(character);
        let m = self.modified_weyl(w, character, correction);
        let a = self.compose(&c, &m)?;
        let b = self.compose(&m, &c)?;
        debug_assert_eq!(a.weyl_elem, b.weyl_elem);
        debug_assert_eq!(a.negate_base, b.negate_base);
        debug_assert_eq!(a.fiber_exponent, b.fiber_exponent);
        match (&a.shift, &b.shift) {
            (Shift::Linear(sa), Shift::Linear(sb)) => {
                let res = sa.mul(&sb.inverse())?;
                if !res.is_constant() {
                    return Err(TodaError::NonConstantDiscrepancy(
                        res.factors.keys().cloned().collect(),
                    ));
                }
                Ok(VerticalDiscrepancy::Linear(res.sign))
            }
            (Shift::Character(sa), Shift::Character(sb)) => {
                let res = sa.mul(&sb.inverse(), self.data.datum)?;
                if !res.factors.is_empty() {
                    return Err(TodaError::NonConstantDiscrepancy(
                        res.factors.keys().cloned().collect(),
                    ));
                }
                Ok(VerticalDiscrepancy::Character(res.sign, res.monomial))
            }
            _ => unreachable!(),
        }
    }
}

/// Decides whether a factor-bearing section on (the fixed locus of) a root
/// hyperplane is the coboundary φ·(w[φ])⁻¹ of a rational section for the
/// residual involution, which acts trivially on the base and by `w_basis`
/// on the fiber. Complex scalar constants are available to φ, so on the
/// 2-torsion side the achievable signs form the mod-2 reduction of the
/// saturation of (I - w)Λ; on the exponent side each factor must lie in
/// (I - w)Λ over the integers.
pub fn inversion_class_trivial(residual: &FormalLinearSection, w_basis: &IMat) -> bool {
    let rank = w_basis.rows;
    let m = IMat::identity(rank).sub(w_basis);
    for exp in residual.factors.values() {
        if solve_diophantine(&m, exp).is_none() {
            return false;
        }
    }
    // Saturation of the column span of m.
    let (u, s, _) = smith_normal_form(&m);
    let uinv = inverse_unimodular(&u).expect("unimodular");
    let mut sat_cols: Vec<IVec> = vec![];
    for t in 0..rank.min(m.cols) {
        if s[(t, t)] != 0 {
            sat_cols.push(uinv.col(t));
        }
    }
    // sign ∈ span(sat_cols) mod 2?
    let mut aug: Vec<IVec> = sat_cols;
    for i in 0..rank {
        let mut v = vec![0i64; rank];
        v[i] = 2;
        aug.push(v);
    }
    let a = IMat::from_cols(&aug, rank);
    solve_diophantine(&a, &residual.sign.lift()).is_some()
}
