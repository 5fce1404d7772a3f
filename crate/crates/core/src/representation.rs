//! Quaternionic representations seen through the maximal torus: weight
//! multisets, polarization splittings and the quadratic form attached to c₂.

use crate::linalg::*;
use crate::root_datum::{Factor, Family, RootDatum};
use num_rational::Ratio;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RepError {
    #[error("factor index {0} out of range or not a simple factor")]
    UnknownFactor(usize),
    #[error("weight multisets belong to different root data")]
    DatumMismatch,
    #[error("weight {0:?} does not lie in the cover's weight lattice")]
    NotACoverWeight(IVec),
    #[error("multiset is not closed under negation (witness {0:?})")]
    NotSelfDual(IVec),
    #[error("total dimension {0} is odd")]
    OddDimension(u64),
    #[error("reference coweight pairs to zero with nonzero weight {0:?}")]
    NonRegularReference(IVec),
    #[error("polar half does not complement its negation (witness {0:?})")]
    BadPolarHalf(IVec),
    #[error("polar half is not stable under the Weyl generators (witness {0:?})")]
    HalfNotInvariant(IVec),
}

/// Weights of a representation restricted to the maximal torus, with
/// multiplicities, in stored cover coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightMultiset {
    entries: BTreeMap<IVec, u64>,
    pub datum_fingerprint: u64,
    pub rank: usize,
}

impl WeightMultiset {
    pub fn empty(d: &RootDatum) -> Self {
        WeightMultiset {
            entries: BTreeMap::new(),
            datum_fingerprint: d.fingerprint(),
            rank: d.rank,
        }
    }

    pub fn from_entries(
        d: &RootDatum,
        entries: impl IntoIterator<Item = (IVec, u64)>,
    ) -> Result<Self, RepError> {
        let mut m = Self::empty(d);
        for (v, mult) in entries {
            if !d.is_cover_weight(&v) {
                return Err(RepError::NotACoverWeight(v));
            }
            m.insert(v, mult);
        }
        Ok(m)
    }

    pub fn insert(&mut self, v: IVec, mult: u64) {
        if mult == 0 {
            return;
        }
        *self.entries.entry(v).or_insert(0) += mult;
    }

    pub fn multiplicity(&self, v: &[i64]) -> u64 {
        self.entries.get(v).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&IVec, u64)> {
        self.entries.iter().map(|(v, &m)| (v, m))
    }

    pub fn support(&self) -> impl Iterator<Item = &IVec> {
        self.entries.keys()
    }

    pub fn total_dimension(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn negated(&self) -> Self {
        let mut out = self.clone();
        out.entries = self.entries.iter().map(|(v, &m)| (vec_neg(v), m)).collect();
        out
    }

    pub fn is_self_dual(&self) -> bool {
        self.entries
            .iter()
            .all(|(v, &m)| self.multiplicity(&vec_neg(v)) == m)
    }

    /// Self-duality plus even total dimension: the torus-level shadow of a
    /// quaternionic structure.
    pub fn validate_quaternionic(&self) -> Result<(), RepError> {
        for (v, m) in self.iter() {
            if self.multiplicity(&vec_neg(v)) != m {
                return Err(RepError::NotSelfDual(v.clone()));
            }
        }
        let dim = self.total_dimension();
        if dim % 2 != 0 {
            return Err(RepError::OddDimension(dim));
        }
        Ok(())
    }

    /// Multiset difference; `Err` carries a witness weight with insufficient
    /// multiplicity.
    pub fn checked_sub(&self, other: &WeightMultiset) -> Result<WeightMultiset, IVec> {
        if self.datum_fingerprint != other.datum_fingerprint {
            panic!("datum mismatch in multiset difference");
        }
        let mut out = self.clone();
        for (v, m) in other.iter() {
            let have = out.entries.get_mut(v).ok_or_else(|| v.clone())?;
            if *have < m {
                return Err(v.clone());
            }
            *have -= m;
            if *have == 0 {
                out.entries.remove(v);
            }
        }
        Ok(out)
    }
}

pub fn direct_sum(a: &WeightMultiset, b: &WeightMultiset) -> Result<WeightMultiset, RepError> {
    if a.datum_fingerprint != b.datum_fingerprint {
        return Err(RepError::DatumMismatch);
    }
    let mut out = a.clone();
    for (v, m) in b.iter() {
        out.insert(v.clone(), m);
    }
    Ok(out)
}

pub fn tensor(a: &WeightMultiset, b: &WeightMultiset) -> Result<WeightMultiset, RepError> {
    if a.datum_fingerprint != b.datum_fingerprint {
        return Err(RepError::DatumMismatch);
    }
    let mut out = a.clone();
    out.entries = BTreeMap::new();
    for (va, ma) in a.iter() {
        for (vb, mb) in b.iter() {
            let v = vec_add(va, vb);
            *out.entries.entry(v).or_insert(0) += ma * mb;
        }
    }
    Ok(out)
}

/// E ⊕ Ē at torus level: the multiset plus its negation.
pub fn quaternionify(a: &WeightMultiset) -> WeightMultiset {
    let mut out = a.clone();
    for (v, m) in a.iter() {
        out.insert(vec_neg(v), m);
    }
    out
}

/// Weights of the defining representation of a simple factor.
pub fn standard_rep(d: &RootDatum, factor: usize) -> Result<WeightMultiset, RepError> {
    let f: &Factor = d.factors.get(factor).ok_or(RepError::UnknownFactor(factor))?;
    let s = d.weight_scale;
    let local_rank = f.rank;
    let mut weights: Vec<(IVec, u64)> = vec![];
    let unit = |i: usize, v: i64| -> IVec {
        let mut w = vec![0i64; local_rank];
        w[i] = v;
        w
    };
    match f.family {
        Family::SU => {
            let n = f.n;
            for i in 0..n {
                let mut w = vec![0i64; local_rank];
                if i < local_rank {
                    w[i] = s;
                }
                if i > 0 {
                    w[i - 1] -= s;
                }
                weights.push((w, 1));
            }
        }
        Family::Sp => {
            for i in 0..local_rank {
                weights.push((unit(i, s), 1));
                weights.push((unit(i, -s), 1));
            }
        }
        Family::Spin | Family::SO => {
            for i in 0..local_rank {
                weights.push((unit(i, s), 1));
                weights.push((unit(i, -s), 1));
            }
            if f.n % 2 == 1 {
                weights.push((vec![0; local_rank], 1));
            }
        }
        Family::Torus => return Err(RepError::UnknownFactor(factor)),
    }
    let mut m = WeightMultiset::empty(d);
    for (local, mult) in weights {
        m.insert(d.embed_block(factor, &local), mult);
    }
    Ok(m)
}

/// Adjoint representation at torus level: every root once plus the zero
/// weight with multiplicity equal to the rank.
pub fn adjoint_rep(d: &RootDatum) -> WeightMultiset {
    let mut m = WeightMultiset::empty(d);
    for r in &d.roots {
        m.insert(r.clone(), 1);
    }
    m.insert(vec![0; d.rank], d.rank as u64);
    m
}

/// The doubled adjoint 𝔤_H: every root twice, zero with multiplicity 2·rank.
pub fn adjoint_quaternionified(d: &RootDatum) -> WeightMultiset {
    quaternionify(&adjoint_rep(d))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SplitKind {
    /// Cut by a regular reference coweight; strict when no nonzero weight
    /// pairs to zero.
    Reference { xi0: IVec, strict: bool },
    /// An explicitly chosen polar half, stable under the Weyl generators.
    InvariantHalf,
}

/// A splitting E = E₊ ⊕ E₀ ⊕ E₋ with E₋ = -E₊.
#[derive(Debug, Clone)]
pub struct PolarizationSplit {
    pub datum_fingerprint: u64,
    pub kind: SplitKind,
    pub positive: WeightMultiset,
    pub zero: WeightMultiset,
    pub negative: WeightMultiset,
}

impl PolarizationSplit {
    pub fn is_strict(&self) -> bool {
        match &self.kind {
            SplitKind::Reference { strict, .. } => *strict,
            SplitKind::InvariantHalf => false,
        }
    }

    pub fn xi0(&self) -> Option<&IVec> {
        match &self.kind {
            SplitKind::Reference { xi0, .. } => Some(xi0),
            SplitKind::InvariantHalf => None,
        }
    }

    /// Multiplicity of `v` in the polar half E₊.
    pub fn positive_multiplicity(&self, v: &[i64]) -> u64 {
        self.positive.multiplicity(v)
    }

    /// Full multiset E = E₊ + E₀ + E₋.
    pub fn total(&self) -> WeightMultiset {
        let mut out = self.positive.clone();
        for (v, m) in self.zero.iter() {
            out.insert(v.clone(), m);
        }
        for (v, m) in self.negative.iter() {
            out.insert(v.clone(), m);
        }
        out
    }
}

/// Splits a self-dual multiset by the sign of the pairing with `xi0`.
/// With `strict` set, a nonzero weight pairing to zero is an error;
/// otherwise it is classified into the zero part.
pub fn polarize(
    d: &RootDatum,
    e: &WeightMultiset,
    xi0: &[i64],
    strict: bool,
) -> Result<PolarizationSplit, RepError> {
    let mut positive = WeightMultiset::empty(d);
    let mut zero = WeightMultiset::empty(d);
    let mut negative = WeightMultiset::empty(d);
    let mut actually_strict = true;
    for (v, m) in e.iter() {
        let p = d.pair_num(v, xi0);
        if p > 0 {
            positive.insert(v.clone(), m);
        } else if p < 0 {
            negative.insert(v.clone(), m);
        } else if is_zero_vec(v) {
            zero.insert(v.clone(), m);
        } else if strict {
            return Err(RepError::NonRegularReference(v.clone()));
        } else {
            actually_strict = false;
            zero.insert(v.clone(), m);
        }
    }
    Ok(PolarizationSplit {
        datum_fingerprint: e.datum_fingerprint,
        kind: SplitKind::Reference { xi0: xi0.to_vec(), strict: actually_strict },
        positive,
        zero,
        negative,
    })
}

/// Splits E = V ⊕ (-V) along an explicitly chosen half `v` whose weight
/// multiset is stable under the Weyl generators.
pub fn polarize_invariant(
    d: &RootDatum,
    e: &WeightMultiset,
    v: &WeightMultiset,
) -> Result<PolarizationSplit, RepError> {
    if e.datum_fingerprint != v.datum_fingerprint {
        return Err(RepError::DatumMismatch);
    }
    // V ⊔ (-V) must equal E.
    for (w, m) in e.iter() {
        if v.multiplicity(w) + v.multiplicity(&vec_neg(w)) != m {
            return Err(RepError::BadPolarHalf(w.clone()));
        }
    }
    for (w, m) in v.iter() {
        if v.multiplicity(w) + v.multiplicity(&vec_neg(w)) != e.multiplicity(w) {
            return Err(RepError::BadPolarHalf(w.clone()));
        }
        let _ = m;
    }
    for g in &d.weyl_generators {
        for (w, m) in v.iter() {
            if v.multiplicity(&g.mul_vec(w)) != m {
                return Err(RepError::HalfNotInvariant(w.clone()));
            }
        }
    }
    Ok(PolarizationSplit {
        datum_fingerprint: e.datum_fingerprint,
        kind: SplitKind::InvariantHalf,
        positive: v.clone(),
        zero: WeightMultiset::empty_with(e.datum_fingerprint, e.rank),
        negative: v.negated(),
    })
}

impl WeightMultiset {
    fn empty_with(fingerprint: u64, rank: usize) -> Self {
        WeightMultiset { entries: BTreeMap::new(), datum_fingerprint: fingerprint, rank }
    }
}

/// The invariant quadratic form attached to c₂: q(γ) = Σ_{ν>0} ⟨ν|γ⟩²,
/// stored as a rational Gram matrix on stored coweight coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticForm {
    pub gram: IMat,
    pub denominator: i64,
}

impl QuadraticForm {
    pub fn value(&self, coweight: &[i64]) -> Ratio<i64> {
        let gv = self.gram.mul_vec(coweight);
        Ratio::new(dot(coweight, &gv), self.denominator)
    }

    pub fn value_integer(&self, coweight: &[i64]) -> Option<i64> {
        let v = self.value(coweight);
        v.is_integer().then(|| v.to_integer())
    }

    pub fn add(&self, other: &QuadraticForm) -> QuadraticForm {
        let den = lcm(self.denominator, other.denominator);
        let g = self
            .gram
            .scale(den / self.denominator)
            .add(&other.gram.scale(den / other.denominator));
        QuadraticForm { gram: g, denominator: den }.reduced()
    }

    fn reduced(mut self) -> Self {
        let mut g = self.denominator;
        for i in 0..self.gram.rows {
            for j in 0..self.gram.cols {
                g = gcd(g, self.gram[(i, j)]);
            }
        }
        if g > 1 {
            self.gram = self.gram.scale(1); // keep clone semantics simple
            for i in 0..self.gram.rows {
                for j in 0..self.gram.cols {
                    self.gram[(i, j)] /= g;
                }
            }
            self.denominator /= g;
        }
        self
    }

    /// True iff the form is integer-valued on the given lattice basis
    /// vectors and all their pairwise sums.
    pub fn is_integral_on(&self, basis: &IMat) -> bool {
        let cols: Vec<IVec> = (0..basis.cols).map(|j| basis.col(j)).collect();
        for (i, a) in cols.iter().enumerate() {
            if self.value_integer(a).is_none() {
                return false;
            }
            for b in cols.iter().skip(i + 1) {
                if self.value_integer(&vec_add(a, b)).is_none() {
                    return false;
                }
            }
        }
        true
    }
}

/// q(γ) = ½ Σ_ν m_ν ⟨ν|γ⟩², summed over all weights (self-duality makes
/// this the sum over any polar half).
pub fn c2_form(d: &RootDatum, e: &WeightMultiset) -> Result<QuadraticForm, RepError> {
    for (v, m) in e.iter() {
        if e.multiplicity(&vec_neg(v)) != m {
            return Err(RepError::NotSelfDual(v.clone()));
        }
    }
    let pd = d.pairing_denominator();
    let mut gram = IMat::zeros(d.rank, d.rank);
    for (v, m) in e.iter() {
        for i in 0..d.rank {
            for j in 0..d.rank {
                gram[(i, j)] += (m as i64) * v[i] * v[j];
            }
        }
    }
    Ok(QuadraticForm { gram, denominator: 2 * pd * pd }.reduced())
}

/// Constructor expressions for representations; the shape is consulted by
/// the obstruction classifiers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepExpr {
    Zero,
    Standard(usize),
    Adjoint,
    Weights(Vec<(IVec, u64)>),
    Tensor(Box<RepExpr>, Box<RepExpr>),
    Sum(Box<RepExpr>, Box<RepExpr>),
    Quaternionify(Box<RepExpr>),
}

impl RepExpr {
    pub fn eval(&self, d: &RootDatum) -> Result<WeightMultiset, RepError> {
        match self {
            RepExpr::Zero => Ok(WeightMultiset::empty(d)),
            RepExpr::Standard(f) => standard_rep(d, *f),
            RepExpr::Adjoint => Ok(adjoint_rep(d)),
            RepExpr::Weights(ws) => WeightMultiset::from_entries(d, ws.iter().cloned()),
            RepExpr::Tensor(a, b) => tensor(&a.eval(d)?, &b.eval(d)?),
            RepExpr::Sum(a, b) => direct_sum(&a.eval(d)?, &b.eval(d)?),
            RepExpr::Quaternionify(a) => Ok(quaternionify(&a.eval(d)?)),
        }
    }

    /// Factor indices whose block supports some weight of the expression.
    pub fn support_factors(&self, d: &RootDatum) -> Result<Vec<usize>, RepError> {
        let e = self.eval(d)?;
        let mut out = vec![];
        for (i, f) in d.factors.iter().enumerate() {
            let touches = e
                .support()
                .any(|v| v[f.block.clone()].iter().any(|&x| x != 0));
            if touches {
                out.push(i);
            }
        }
        Ok(out)
    }
}

/// Frobenius–Schur-style constructor check: does the distinguished central
/// element of order 2 act by -1 on every weight? Only meaningful for
/// irreducible constructor-built representations of simple factors.
pub fn central_element_acts_by_minus_one(
    d: &RootDatum,
    z_num: &[i64],
    z_den: i64,
    e: &WeightMultiset,
) -> bool {
    // Stored pairing ⟨ν|z⟩ = dot(ν, z_num·cs/z_den) / (ws·cs); the element
    // acts by exp(2πi⟨ν|z⟩), so acting by -1 means ⟨ν|z⟩ ∈ ½ + Z.
    let den = d.weight_scale * z_den;
    e.support().all(|v| {
        let num = dot(v, z_num);
        num.rem_euclid(den) * 2 == den
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::{build_simple, build_torus, central_quotient, product, Family};

    fn su2() -> RootDatum {
        build_simple(Family::SU, 2).unwrap()
    }

    #[test]
    fn standard_reps() {
        let d = su2();
        let h = standard_rep(&d, 0).unwrap();
        assert_eq!(h.multiplicity(&[1]), 1);
        assert_eq!(h.multiplicity(&[-1]), 1);
        assert_eq!(h.total_dimension(), 2);

        let so6 = build_simple(Family::SO, 6).unwrap();
        let v = standard_rep(&so6, 0).unwrap();
        assert_eq!(v.total_dimension(), 6);
        assert_eq!(v.multiplicity(&[2, 0, 0]), 1);
        assert_eq!(v.multiplicity(&[0, 0, -2]), 1);

        let sp2 = build_simple(Family::Sp, 2).unwrap();
        let s = standard_rep(&sp2, 0).unwrap();
        assert_eq!(s.total_dimension(), 4);
        assert_eq!(s.multiplicity(&[0, 1]), 1);

        let so5 = build_simple(Family::SO, 5).unwrap();
        assert_eq!(standard_rep(&so5, 0).unwrap().total_dimension(), 5);
    }

    #[test]
    fn adjoints() {
        let d = su2();
        let ad = adjoint_rep(&d);
        assert_eq!(ad.multiplicity(&[2]), 1);
        assert_eq!(ad.multiplicity(&[0]), 1);
        assert_eq!(ad.total_dimension(), 3);

        let sp2 = build_simple(Family::Sp, 2).unwrap();
        let ad2 = adjoint_rep(&sp2);
        assert_eq!(ad2.total_dimension(), 10);
        assert_eq!(ad2.multiplicity(&[0, 0]), 2);
        assert_eq!(ad2.multiplicity(&[2, 0]), 1);
        assert_eq!(ad2.multiplicity(&[1, -1]), 1);

        let t = build_torus(2);
        let adt = adjoint_rep(&t);
        assert_eq!(adt.multiplicity(&[0, 0]), 2);
        assert_eq!(adt.total_dimension(), 2);
    }

    #[test]
    fn tensor_products() {
        // H ⊗ R⁶ on SU(2) ×_{μ₂} Spin(6): 12 weights ±ω ± e_i.
        let cover = product(&su2(), &build_simple(Family::Spin, 6).unwrap());
        let d = central_quotient(
            &cover,
            &[(vec![1, 1, 1, 1], 2), (vec![0, 1, 0, 0], 1)],
        )
        .unwrap();
        let e = tensor(&standard_rep(&d, 0).unwrap(), &standard_rep(&d, 1).unwrap()).unwrap();
        assert_eq!(e.total_dimension(), 12);
        // ω stored as 2 (weight scale is 2 after the product with Spin).
        assert_eq!(e.multiplicity(&[2, 2, 0, 0]), 1);
        assert!(e.is_self_dual());
        for (v, _) in e.iter() {
            assert!(d.is_group_weight(v), "weight {v:?} outside Λ_G");
        }

        // H⊗H⊗H on SU(2)³: 8 weights ±ω₁ ± ω₂ ± ω₃.
        let three = product(&product(&su2(), &su2()), &su2());
        let h3 = tensor(
            &tensor(&standard_rep(&three, 0).unwrap(), &standard_rep(&three, 1).unwrap())
                .unwrap(),
            &standard_rep(&three, 2).unwrap(),
        )
        .unwrap();
        assert_eq!(h3.total_dimension(), 8);
        assert_eq!(h3.multiplicity(&[1, -1, 1]), 1);

        let twoh = direct_sum(&standard_rep(&su2(), 0).unwrap(), &standard_rep(&su2(), 0).unwrap())
            .unwrap();
        assert_eq!(twoh.multiplicity(&[1]), 2);
    }

    #[test]
    fn polarization() {
        let d = su2();
        let e = standard_rep(&d, 0).unwrap();
        let split = polarize(&d, &e, &[1], true).unwrap();
        assert_eq!(split.positive.multiplicity(&[1]), 1);
        assert!(split.negative.multiplicity(&[-1]) == 1);
        assert!(split.zero.is_empty());

        // Negating ξ₀ swaps the parts.
        let flipped = polarize(&d, &e, &[-1], true).unwrap();
        assert_eq!(flipped.positive, split.negative);
        assert_eq!(flipped.negative, split.positive);

        // Ties go to the zero part when not strict, error when strict.
        let d2 = product(&su2(), &build_torus(1));
        let mut e2 = WeightMultiset::empty(&d2);
        e2.insert(vec![0, 1], 1);
        e2.insert(vec![0, -1], 1);
        assert!(polarize(&d2, &e2, &[1, 0], true).is_err());
        let loose = polarize(&d2, &e2, &[1, 0], false).unwrap();
        assert_eq!(loose.zero.total_dimension(), 2);
        assert!(!loose.is_strict());
    }

    #[test]
    fn invariant_half() {
        let d = su2();
        let e = quaternionify(&standard_rep(&d, 0).unwrap());
        let v = standard_rep(&d, 0).unwrap();
        let split = polarize_invariant(&d, &e, &v).unwrap();
        assert_eq!(split.positive.multiplicity(&[1]), 1);
        assert_eq!(split.positive.multiplicity(&[-1]), 1);
        // A non-invariant half is rejected.
        let mut bad = WeightMultiset::empty(&d);
        bad.insert(vec![1], 2);
        assert!(matches!(
            polarize_invariant(&d, &e, &bad),
            Err(RepError::HalfNotInvariant(_))
        ));
    }

    #[test]
    fn c2_values() {
        let d = su2();
        let h = standard_rep(&d, 0).unwrap();
        let q = c2_form(&d, &h).unwrap();
        assert_eq!(q.value_integer(&[1]), Some(1));

        let q2 = c2_form(&d, &quaternionify(&h)).unwrap();
        assert_eq!(q2.value_integer(&[1]), Some(2));
        assert_eq!(c2_form(&d, &h).unwrap().add(&q), q2);

        // Weyl invariance on Sp(2).
        let sp2 = build_simple(Family::Sp, 2).unwrap();
        let e = standard_rep(&sp2, 0).unwrap();
        let q = c2_form(&sp2, &e).unwrap();
        for g in &sp2.weyl_generators {
            let dual = sp2.dual_action(g);
            for gamma in [vec![1, 0], vec![0, 1], vec![1, 1], vec![2, -1]] {
                assert_eq!(q.value(&gamma), q.value(&dual.mul_vec(&gamma)));
            }
        }
        assert!(q.is_integral_on(&sp2.coweight_basis));
    }

    #[test]
    fn central_character() {
        let d = su2();
        let h = standard_rep(&d, 0).unwrap();
        let (z, den) = d.center_cover[0].clone();
        assert!(central_element_acts_by_minus_one(&d, &z, den, &h));
        let ad = adjoint_rep(&d);
        assert!(!central_element_acts_by_minus_one(&d, &z, den, &ad));
    }

    #[test]
    fn rep_expr_round_trip() {
        let d = su2();
        let expr = RepExpr::Sum(
            Box::new(RepExpr::Standard(0)),
            Box::new(RepExpr::Standard(0)),
        );
        let e = expr.eval(&d).unwrap();
        assert_eq!(e.multiplicity(&[1]), 2);
        let spin32 = RepExpr::Weights(vec![
            (vec![3], 1),
            (vec![1], 1),
            (vec![-1], 1),
            (vec![-3], 1),
        ]);
        assert_eq!(spin32.eval(&d).unwrap().total_dimension(), 4);
    }
}
