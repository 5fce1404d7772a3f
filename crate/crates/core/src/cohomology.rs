//! Weyl group cohomology at degrees 1 and 2 with coefficients in Λ/2, Λ⊗Λ
//! and Λ⊗Λ mod 2: the sign cocycle `c`, the Spin-defect crossed
//! homomorphism `s⊗²`, its integral Bockstein partner `d`, and exactness
//! decisions by finite F₂ / Z linear algebra.
//!
//! All module values are written in coordinates of the *group's* weight
//! lattice Λ_G (not the cover's ambient coordinates); the mod-2 reductions
//! are only meaningful there.

use crate::linalg::*;
use crate::representation::{PolarizationSplit, SplitKind};
use crate::root_datum::RootDatum;
use crate::weyl::WeylGroup;
use std::collections::BTreeMap;

/// Element of Λ_G/2 in lattice-basis coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModTwoVector(pub Vec<bool>);

impl ModTwoVector {
    pub fn zero(rank: usize) -> Self {
        ModTwoVector(vec![false; rank])
    }

    pub fn from_coords(coords: &[i64]) -> Self {
        ModTwoVector(coords.iter().map(|&x| x.rem_euclid(2) == 1).collect())
    }

    pub fn xor(&self, other: &ModTwoVector) -> ModTwoVector {
        ModTwoVector(self.0.iter().zip(&other.0).map(|(a, b)| a ^ b).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&b| !b)
    }

    /// Action of an integer matrix (in lattice-basis coordinates) mod 2.
    pub fn act(&self, m: &IMat) -> ModTwoVector {
        let v: IVec = self.0.iter().map(|&b| b as i64).collect();
        ModTwoVector::from_coords(&m.mul_vec(&v))
    }

    pub fn lift(&self) -> IVec {
        self.0.iter().map(|&b| b as i64).collect()
    }
}

/// Reduces a stored weight vector to Λ_G-basis coordinates mod 2.
pub fn weight_mod2(d: &RootDatum, v: &[i64]) -> Option<ModTwoVector> {
    d.weight_coords(v).map(|c| ModTwoVector::from_coords(&c))
}

/// Writes an ambient tensor-square matrix in Λ_G ⊗ Λ_G basis coordinates:
/// X = B M Bᵀ with B the weight-lattice basis. None if X ∉ Λ_G ⊗ Λ_G.
pub fn tensor_to_basis(d: &RootDatum, x: &IMat) -> Option<IMat> {
    let b = &d.weight_basis;
    // First solve B · Y = X column by column, then B · Mᵀ = Yᵀ.
    let mut y = IMat::zeros(d.rank, d.rank);
    for j in 0..d.rank {
        let col = solve_integer(b, &x.col(j))?;
        for i in 0..d.rank {
            y[(i, j)] = col[i];
        }
    }
    let yt = y.transpose();
    let mut mt = IMat::zeros(d.rank, d.rank);
    for j in 0..d.rank {
        let col = solve_integer(b, &yt.col(j))?;
        for i in 0..d.rank {
            mt[(i, j)] = col[i];
        }
    }
    Some(mt.transpose())
}

/// Normalized 1-cochain W → M (value at the identity is zero).
#[derive(Debug, Clone)]
pub struct Cochain1<M> {
    pub values: Vec<M>,
}

/// Normalized 2-cochain W × W → M.
#[derive(Debug, Clone)]
pub struct Cochain2<M> {
    pub values: Vec<Vec<M>>,
}

impl<M> Cochain2<M> {
    pub fn get(&self, u: usize, v: usize) -> &M {
        &self.values[u][v]
    }
}

/// Cocycle evaluations for one polarized representation. Precomputes the
/// Weyl action in lattice-basis coordinates.
pub struct CocycleData<'a> {
    pub datum: &'a RootDatum,
    pub weyl: &'a WeylGroup,
    pub split: &'a PolarizationSplit,
    /// Weyl action on Λ_G-basis coordinates, per element.
    pub basis_action: Vec<IMat>,
}

impl<'a> CocycleData<'a> {
    pub fn new(
        datum: &'a RootDatum,
        weyl: &'a WeylGroup,
        split: &'a PolarizationSplit,
    ) -> Self {
        assert_eq!(
            split.datum_fingerprint,
            datum.fingerprint(),
            "split belongs to a different datum"
        );
        for (v, _) in split.total().iter() {
            assert!(
                datum.is_group_weight(v),
                "weight {v:?} lies outside the group's weight lattice"
            );
        }
        let basis_action = weyl
            .elements
            .iter()
            .map(|m| datum.weight_action_in_basis(m))
            .collect();
        CocycleData { datum, weyl, split, basis_action }
    }

    fn xi0(&self) -> Option<&IVec> {
        self.split.xi0()
    }

    fn sign(&self, v: &[i64]) -> i64 {
        let xi0 = self.xi0().expect("reference split required");
        self.datum.pair_num(v, xi0).signum()
    }

    /// The multiset difference w·E₊ ⊖ E₊ as a map value → signed multiplicity.
    /// For a Weyl-invariant polar half this is identically empty.
    pub fn pushforward_difference(&self, w: usize) -> BTreeMap<IVec, i64> {
        let mut diff: BTreeMap<IVec, i64> = BTreeMap::new();
        let m = self.weyl.element(w);
        for (v, mult) in self.split.positive.iter() {
            *diff.entry(m.mul_vec(v)).or_insert(0) += mult as i64;
            *diff.entry(v.clone()).or_insert(0) -= mult as i64;
        }
        diff.retain(|_, m| *m != 0);
        diff
    }

    /// c(u,v) = Σ_{ν>0, vν<0, uvν>0} uvν ∈ Λ/2.
    pub fn cocycle_c(&self, u: usize, v: usize) -> ModTwoVector {
        match self.split.kind {
            SplitKind::InvariantHalf => ModTwoVector::zero(self.datum.rank),
            SplitKind::Reference { strict, .. } => {
                assert!(strict, "cocycles require a strict reference split");
                let mu = self.weyl.element(u);
                let mv = self.weyl.element(v);
                let mut sum = vec![0i64; self.datum.rank];
                for (nu, mult) in self.split.positive.iter() {
                    let vnu = mv.mul_vec(nu);
                    if self.sign(&vnu) >= 0 {
                        continue;
                    }
                    let uvnu = mu.mul_vec(&vnu);
                    if self.sign(&uvnu) > 0 {
                        for i in 0..self.datum.rank {
                            sum[i] += (mult as i64) * uvnu[i];
                        }
                    }
                }
                weight_mod2(self.datum, &sum).expect("cocycle value outside Λ_G")
            }
        }
    }

    /// s⊗²(w) = Σ_{ν>0, wν<0} wν ⊗ wν, computed from the transport
    /// difference so that Weyl-invariant polar halves give zero. Integral
    /// lift; reduce mod 2 for the cohomology class.
    pub fn s2_integral(&self, w: usize) -> IMat {
        let mut total = IMat::zeros(self.datum.rank, self.datum.rank);
        for (value, mult) in self.pushforward_difference(w) {
            if mult <= 0 {
                continue;
            }
            let coords = self
                .datum
                .weight_coords(&value)
                .expect("weight outside Λ_G in s⊗²");
            for i in 0..self.datum.rank {
                for j in 0..self.datum.rank {
                    total[(i, j)] += mult * coords[i] * coords[j];
                }
            }
        }
        total
    }

    pub fn cocycle_s2(&self, w: usize) -> IMat {
        self.s2_integral(w).mod2()
    }

    /// d(u,v) = Σ_{ν<0, vν>0, uvν<0} uvν ⊗ uvν ∈ Λ⊗Λ (integral).
    pub fn cocycle_d(&self, u: usize, v: usize) -> IMat {
        match self.split.kind {
            SplitKind::InvariantHalf => IMat::zeros(self.datum.rank, self.datum.rank),
            SplitKind::Reference { strict, .. } => {
                assert!(strict, "cocycles require a strict reference split");
                let mu = self.weyl.element(u);
                let mv = self.weyl.element(v);
                let mut total = IMat::zeros(self.datum.rank, self.datum.rank);
                for (nu, mult) in self.split.negative.iter() {
                    let vnu = mv.mul_vec(nu);
                    if self.sign(&vnu) <= 0 {
                        continue;
                    }
                    let uvnu = mu.mul_vec(&vnu);
                    if self.sign(&uvnu) < 0 {
                        let coords = self
                            .datum
                            .weight_coords(&uvnu)
                            .expect("weight outside Λ_G in d");
                        for i in 0..self.datum.rank {
                            for j in 0..self.datum.rank {
                                total[(i, j)] += (mult as i64) * coords[i] * coords[j];
                            }
                        }
                    }
                }
                total
            }
        }
    }

    pub fn c_table(&self) -> Cochain2<ModTwoVector> {
        let n = self.weyl.len();
        Cochain2 {
            values: (0..n)
                .map(|u| (0..n).map(|v| self.cocycle_c(u, v)).collect())
                .collect(),
        }
    }

    pub fn s2_table(&self) -> Cochain1<IMat> {
        Cochain1 { values: (0..self.weyl.len()).map(|w| self.cocycle_s2(w)).collect() }
    }

    pub fn s2_integral_table(&self) -> Cochain1<IMat> {
        Cochain1 { values: (0..self.weyl.len()).map(|w| self.s2_integral(w)).collect() }
    }

    pub fn d_table(&self) -> Cochain2<IMat> {
        let n = self.weyl.len();
        Cochain2 {
            values: (0..n)
                .map(|u| (0..n).map(|v| self.cocycle_d(u, v)).collect())
                .collect(),
        }
    }
}

/// Checks the 2-cocycle identity u·c(v,t) - c(uv,t) + c(u,vt) - c(u,v) = 0
/// over F₂ for all triples. Returns the first failing triple on failure.
pub fn verify_2cocycle(
    c: &Cochain2<ModTwoVector>,
    weyl: &WeylGroup,
    basis_action: &[IMat],
) -> Result<(), (usize, usize, usize)> {
    let n = weyl.len();
    for u in 0..n {
        for v in 0..n {
            let uv = weyl.mul(u, v);
            for t in 0..n {
                let vt = weyl.mul(v, t);
                let lhs = c
                    .get(v, t)
                    .act(&basis_action[u])
                    .xor(c.get(uv, t))
                    .xor(c.get(u, vt))
                    .xor(c.get(u, v));
                if !lhs.is_zero() {
                    return Err((u, v, t));
                }
            }
        }
    }
    Ok(())
}

/// Checks the crossed-homomorphism identity s(uv) = s(u) + u·s(v) mod 2,
/// with the diagonal Weyl action on Λ⊗Λ.
pub fn verify_crossed_hom(
    s: &Cochain1<IMat>,
    weyl: &WeylGroup,
    basis_action: &[IMat],
) -> Result<(), (usize, usize)> {
    let n = weyl.len();
    for u in 0..n {
        for v in 0..n {
            let uv = weyl.mul(u, v);
            let au = &basis_action[u];
            let acted = au.mul(&s.values[v]).mul(&au.transpose());
            let rhs = s.values[u].add(&acted).mod2();
            if s.values[uv].mod2() != rhs {
                return Err((u, v));
            }
        }
    }
    Ok(())
}

/// A coboundary solve result: one particular solution together with a basis
/// of the homogeneous solutions. Solutions are non-canonical ("a"
/// trivialization, lexicographic pivoting).
pub struct CoboundarySolution<T> {
    pub particular: T,
    pub kernel: Vec<T>,
}

/// Solves δφ = c over F₂ for a 1-cochain φ: W∖{e} → Λ/2, where
/// (δφ)(u,v) = u·φ(v) - φ(uv) + φ(u).
pub fn solve_coboundary_c(
    c: &Cochain2<ModTwoVector>,
    weyl: &WeylGroup,
    basis_action: &[IMat],
) -> Option<CoboundarySolution<Cochain1<ModTwoVector>>> {
    let n = weyl.len();
    let rank = basis_action[0].rows;
    let vars = (n - 1) * rank; // φ(identity) = 0 is imposed
    let var_of = |w: usize, i: usize| -> Option<usize> {
        (w != 0).then(|| (w - 1) * rank + i)
    };
    let mut rows: Vec<Vec<usize>> = vec![];
    let mut rhs = vec![];
    for u in 0..n {
        for v in 0..n {
            let uv = weyl.mul(u, v);
            for k in 0..rank {
                let mut row = vec![];
                if let Some(idx) = var_of(u, k) {
                    row.push(idx);
                }
                if let Some(idx) = var_of(uv, k) {
                    row.push(idx);
                }
                // (u·φ(v))_k = Σ_j A_u[k,j] φ(v)_j
                for j in 0..rank {
                    if basis_action[u][(k, j)].rem_euclid(2) == 1 {
                        if let Some(idx) = var_of(v, j) {
                            row.push(idx);
                        }
                    }
                }
                rows.push(row);
                rhs.push(c.get(u, v).0[k]);
            }
        }
    }
    let mut a = F2Mat::zeros(rows.len(), vars);
    for (i, row) in rows.iter().enumerate() {
        for &j in row {
            // xor semantics: duplicate indices cancel
            a.set(i, j, !a.get(i, j));
        }
    }
    let sol = f2_solve(&a, &rhs)?;
    let unpack = |bits: &[bool]| -> Cochain1<ModTwoVector> {
        let mut values = vec![ModTwoVector::zero(rank)];
        for w in 1..n {
            values.push(ModTwoVector(bits[(w - 1) * rank..w * rank].to_vec()));
        }
        Cochain1 { values }
    };
    Some(CoboundarySolution {
        particular: unpack(&sol.particular),
        kernel: sol.kernel.iter().map(|k| unpack(k)).collect(),
    })
}

/// Solves s(w) = t - w·t mod 2 for t ∈ Λ⊗Λ/2 (diagonal action).
pub fn solve_coboundary_s2(
    s: &Cochain1<IMat>,
    weyl: &WeylGroup,
    basis_action: &[IMat],
) -> Option<CoboundarySolution<IMat>> {
    let n = weyl.len();
    let rank = basis_action[0].rows;
    let vars = rank * rank;
    let mut a = F2Mat::zeros(n * vars, vars);
    let mut rhs = vec![false; n * vars];
    for w in 0..n {
        let u = &basis_action[w];
        for i in 0..rank {
            for j in 0..rank {
                let row = w * vars + i * rank + j;
                // t_{ij} + (U t Uᵀ)_{ij}: coefficient of t_{kl} is U_ik·U_jl.
                for k in 0..rank {
                    for l in 0..rank {
                        let mut coeff = (u[(i, k)] * u[(j, l)]).rem_euclid(2) == 1;
                        if i == k && j == l {
                            coeff = !coeff;
                        }
                        if coeff {
                            a.set(row, k * rank + l, !a.get(row, k * rank + l));
                        }
                    }
                }
                rhs[row] = s.values[w][(i, j)].rem_euclid(2) == 1;
            }
        }
    }
    let sol = f2_solve(&a, &rhs)?;
    let unpack = |bits: &[bool]| -> IMat {
        let mut m = IMat::zeros(rank, rank);
        for i in 0..rank {
            for j in 0..rank {
                m[(i, j)] = bits[i * rank + j] as i64;
            }
        }
        m
    };
    Some(CoboundarySolution {
        particular: unpack(&sol.particular),
        kernel: sol.kernel.iter().map(|k| unpack(k)).collect(),
    })
}

/// Verifies the Bockstein relation between the integral lift S of s⊗² and
/// d: δS must vanish mod 2 and [δS/2] must equal [d] in H²_W(Λ⊗Λ), decided
/// by an integral coboundary solve.
pub fn bockstein_relation(
    s_integral: &Cochain1<IMat>,
    d_table: &Cochain2<IMat>,
    weyl: &WeylGroup,
    basis_action: &[IMat],
) -> bool {
    let n = weyl.len();
    let rank = basis_action[0].rows;
    // E(u,v) = δS(u,v)/2 - d(u,v) must be an integral coboundary.
    let mut e = vec![vec![IMat::zeros(rank, rank); n]; n];
    for u in 0..n {
        let au = &basis_action[u];
        for v in 0..n {
            let uv = weyl.mul(u, v);
            let acted = au.mul(&s_integral.values[v]).mul(&au.transpose());
            let delta = acted.sub(&s_integral.values[uv]).add(&s_integral.values[u]);
            if !delta.mod2().is_zero() {
                return false;
            }
            let mut half = delta;
            for i in 0..rank {
                for j in 0..rank {
                    half[(i, j)] /= 2;
                }
            }
            e[u][v] = half.sub(d_table.get(u, v));
        }
    }
    // Solve δψ = E over Z with ψ: W∖{e} → Λ⊗Λ.
    let vars = (n - 1) * rank * rank;
    let var_of = |w: usize, i: usize, j: usize| -> Option<usize> {
        (w != 0).then(|| ((w - 1) * rank + i) * rank + j)
    };
    let mut rows: Vec<IVec> = vec![];
    let mut rhs: Vec<i64> = vec![];
    for u in 0..n {
        let au = &basis_action[u];
        for v in 0..n {
            let uv = weyl.mul(u, v);
            for i in 0..rank {
                for j in 0..rank {
                    let mut row = vec![0i64; vars];
                    if let Some(idx) = var_of(u, i, j) {
                        row[idx] += 1;
                    }
                    if let Some(idx) = var_of(uv, i, j) {
                        row[idx] -= 1;
                    }
                    // (u·ψ(v))_{ij} = Σ_{kl} U_ik U_jl ψ(v)_{kl}
                    for k in 0..rank {
                        for l in 0..rank {
                            if let Some(idx) = var_of(v, k, l) {
                                row[idx] += au[(i, k)] * au[(j, l)];
                            }
                        }
                    }
                    rows.push(row);
                    rhs.push(e[u][v][(i, j)]);
                }
            }
        }
    }
    let a = IMat::from_rows(&rows);
    solve_diophantine(&a, &rhs).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::representation::*;
    use crate::root_datum::*;
    use crate::weyl::WeylGroup;

    fn su2_h() -> (RootDatum, WeightMultiset) {
        let d = build_simple(Family::SU, 2).unwrap();
        let e = standard_rep(&d, 0).unwrap();
        (d, e)
    }

    #[test]
    fn su2_cocycles() {
        let (d, e) = su2_h();
        let w = WeylGroup::enumerate(&d, 100).unwrap();
        let split = polarize(&d, &e, &[1], true).unwrap();
        let data = CocycleData::new(&d, &w, &split);
        let s = 1; // the reflection
        // c(s,s) = ω mod 2.
        assert_eq!(data.cocycle_c(s, s), ModTwoVector(vec![true]));
        // c(e,v) = 0.
        assert!(data.cocycle_c(0, s).is_zero());
        // s⊗²(s) = ω⊗ω; s⊗²(e) = 0.
        assert_eq!(data.s2_integral(s)[(0, 0)], 1);
        assert!(data.s2_integral(0).is_zero());
        // d(s,s) = ω⊗ω; d(e,v) = 0.
        assert_eq!(data.cocycle_d(s, s)[(0, 0)], 1);
        assert!(data.cocycle_d(0, s).is_zero());
    }

    #[test]
    fn doubled_rep_trivializes() {
        let (d, e) = su2_h();
        let e2 = quaternionify(&e);
        let w = WeylGroup::enumerate(&d, 100).unwrap();
        let split = polarize(&d, &e2, &[1], true).unwrap();
        let data = CocycleData::new(&d, &w, &split);
        // Doubled multiplicities: c ≡ 0 mod 2 and s⊗² ≡ 0 mod 2.
        assert!(data.cocycle_c(1, 1).is_zero());
        assert!(data.cocycle_s2(1).is_zero());
        let sol = solve_coboundary_c(&data.c_table(), &w, &data.basis_action).unwrap();
        assert!(sol.particular.values[1].is_zero());
    }

    #[test]
    fn invariant_half_gives_zero_cocycles() {
        let (d, e) = su2_h();
        let e2 = quaternionify(&e);
        let w = WeylGroup::enumerate(&d, 100).unwrap();
        let split = polarize_invariant(&d, &e2, &e).unwrap();
        let data = CocycleData::new(&d, &w, &split);
        assert!(data.cocycle_c(1, 1).is_zero());
        assert!(data.s2_integral(1).is_zero());
        assert!(data.cocycle_d(1, 1).is_zero());
        assert!(data.pushforward_difference(1).is_empty());
    }

    #[test]
    fn cocycle_conditions_hold() {
        let (d, e) = su2_h();
        let w = WeylGroup::enumerate(&d, 100).unwrap();
        let split = polarize(&d, &e, &[1], true).unwrap();
        let data = CocycleData::new(&d, &w, &split);
        assert!(verify_2cocycle(&data.c_table(), &w, &data.basis_action).is_ok());
        assert!(verify_crossed_hom(&data.s2_table(), &w, &data.basis_action).is_ok());

        // Sp(2) with its standard representation: 512 triples.
        let sp2 = build_simple(Family::Sp, 2).unwrap();
        let e = standard_rep(&sp2, 0).unwrap();
        let w = WeylGroup::enumerate(&sp2, 100).unwrap();
        let xi0 = sp2.lexicographic_regular_coweight(&e.support().cloned().collect::<Vec<_>>());
        let split = polarize(&sp2, &e, &xi0, true).unwrap();
        let data = CocycleData::new(&sp2, &w, &split);
        assert!(verify_2cocycle(&data.c_table(), &w, &data.basis_action).is_ok());
        assert!(verify_crossed_hom(&data.s2_table(), &w, &data.basis_action).is_ok());
        assert!(bockstein_relation(
            &data.s2_integral_table(),
            &data.d_table(),
            &w,
            &data.basis_action
        ));
    }

    #[test]
    fn constant_nonzero_cochain_fails() {
        let d = build_simple(Family::SU, 2).unwrap();
        let w = WeylGroup::enumerate(&d, 100).unwrap();
        let ones = ModTwoVector(vec![true]);
        let c = Cochain2 { values: vec![vec![ones.clone(); 2]; 2] };
        // The action is trivial mod 2, so the cocycle identity reduces to
        // c(v,t) + c(uv,t) + c(u,vt) + c(u,v) = 4·c ≡ 0: the constant cochain
        // is a cocycle but fails the normalization c(e,e) = 0 used by δφ=c
        // only in the coboundary sense; the raw identity check passes, so we
        // check the normalization directly.
        let id = IMat::identity(1);
        assert!(verify_2cocycle(&c, &w, &[id.clone(), id]).is_ok());
        assert!(!c.get(0, 0).is_zero()); // not normalized: rejected upstream
    }

    #[test]
    fn su2_standard_c_class_is_the_nonsplit_extension() {
        let (d, e) = su2_h();
        let w = WeylGroup::enumerate(&d, 100).unwrap();
        let split = polarize(&d, &e, &[1], true).unwrap();
        let data = CocycleData::new(&d, &w, &split);
        // c(s,s) = ω with the trivial mod-2 action: the class of the
        // order-4 extension (the modified reflection squares to -1), so no
        // 1-cochain trivializes it.
        assert!(solve_coboundary_c(&data.c_table(), &w, &data.basis_action).is_none());
        // Bockstein relation on the 2-element group.
        assert!(bockstein_relation(
            &data.s2_integral_table(),
            &data.d_table(),
            &w,
            &data.basis_action
        ));
    }

    #[test]
    fn b1_class_and_non_exactness() {
        // SU(2)³ / S(μ₂³) with E = H⊗H⊗H, E₊ cut by the sign of the first
        // coordinate.
        let su2 = build_simple(Family::SU, 2).unwrap();
        let three = product(&product(&su2, &su2), &su2);
        let d = central_quotient(&three, &[(vec![1, 1, 0], 2), (vec![0, 1, 1], 2)]).unwrap();
        let e = RepExpr::Tensor(
            Box::new(RepExpr::Tensor(
                Box::new(RepExpr::Standard(0)),
                Box::new(RepExpr::Standard(1)),
            )),
            Box::new(RepExpr::Standard(2)),
        )
        .eval(&d)
        .unwrap();
        let w = WeylGroup::enumerate(&d, 100).unwrap();
        let xi0 = d.coweight_basis.mul_vec(&[9, 3, 1]);
        let split = polarize(&d, &e, &[8, 4, 2], true).unwrap();
        let _ = xi0;
        let data = CocycleData::new(&d, &w, &split);

        // s⊗² on the first-factor reflection equals
        // 4ω₁⊗ω₂ + 4ω₂⊗ω₁ + 8(ω₁⊗ω₁ + ω₂⊗ω₂) in Λ_G⊗²/2.
        let refl = w
            .index_of(&{
                let mut m = IMat::identity(3);
                m[(0, 0)] = -1;
                m
            })
            .unwrap();
        let computed = data.cocycle_s2(refl);
        let mut paper = IMat::zeros(3, 3);
        paper[(0, 1)] = 4;
        paper[(1, 0)] = 4;
        paper[(0, 0)] = 8;
        paper[(1, 1)] = 8;
        let expected = tensor_to_basis(&d, &paper).unwrap().mod2();
        assert_eq!(computed, expected);
        assert!(!computed.is_zero());

        // The class does not vanish: no coboundary solution.
        assert!(verify_crossed_hom(&data.s2_table(), &w, &data.basis_action).is_ok());
        assert!(solve_coboundary_s2(&data.s2_table(), &w, &data.basis_action).is_none());
    }
}
