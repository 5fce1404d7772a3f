//! Root data for products of classical groups, circle factors and their
//! central quotients.
//!
//! Coordinate conventions
//! ----------------------
//! * `Sp(m)` uses ambient epsilon coordinates: the weight lattice is `Z^m`,
//!   the coweight lattice is `Z^m`, and the two pair via the dot product.
//! * `Spin(n)` / `SO(n)` use epsilon coordinates on the rank-`l` torus with
//!   *doubled* weight entries, so the half-integer spin weights stay
//!   integral: a stored weight vector `v` denotes `v/2` in epsilon
//!   coordinates. `SO(n)` is the quotient of `Spin(n)` by the coweight
//!   `a = [1, 0, …, 0]`.
//! * `SU(n)` uses the fundamental-weight basis on the weight side and the
//!   simple-coroot basis on the coweight side; the pairing is the identity.
//! * Central quotients keep all weights in the coordinates of the cover; the
//!   group's own (sub)lattice is carried as an explicit basis matrix with a
//!   membership test. The coweight lattice extends by the kernel vectors and
//!   is rescaled so that stored coweight coordinates stay integral.
//!
//! The stored pairing is `⟨ν|γ⟩ = (ν·γ) / (weight_scale · coweight_scale)`;
//! it is integral whenever `ν` lies in the group's weight lattice and `γ` in
//! its coweight lattice.
//!
//! For even-rank `Spin` groups the center `μ₂ × μ₂` is presented on the
//! generators `b₊ = [1/2, …, 1/2]` and `b₋ = [-1/2, 1/2, …, 1/2]`, in that
//! order, with `a = b₊ - b₋`; odd-rank `Spin` uses the single generator `b₊`
//! of `μ₄`, and `Spin(odd)` uses `a = [1, 0, …, 0]`.

use crate::linalg::*;
use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("invalid rank {n} for family {family:?}")]
    InvalidRank { family: Family, n: usize },
    #[error("kernel vector {vector:?}/{den} does not pair integrally with all roots")]
    NonCentralKernel { vector: IVec, den: i64 },
    #[error("factor index {0} out of range")]
    UnknownFactor(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    SU,
    Sp,
    Spin,
    SO,
    Torus,
}

/// A leaf factor of the product decomposition, with its coordinate block.
#[derive(Debug, Clone)]
pub struct Factor {
    pub family: Family,
    pub n: usize,
    pub rank: usize,
    /// Coordinate block in the ambient weight/coweight space.
    pub block: std::ops::Range<usize>,
}

/// Construction history: how the datum was assembled.
#[derive(Debug, Clone)]
pub enum FactorTree {
    Simple { family: Family, n: usize },
    Torus { rank: usize },
    Product(Box<FactorTree>, Box<FactorTree>),
    /// Kernel vectors in natural coweight coordinates (numerators, denominator).
    Quotient(Box<FactorTree>, Vec<(IVec, i64)>),
}

/// Documentation-only lattice descriptor.
#[derive(Debug, Clone)]
pub struct Lattice {
    pub rank: usize,
    pub basis_labels: Vec<String>,
}

/// Root datum of a compact connected group, in the coordinates of its cover.
#[derive(Debug, Clone)]
pub struct RootDatum {
    pub rank: usize,
    /// Stored weight coordinates are `weight_scale` times natural ones.
    pub weight_scale: i64,
    pub coweight_scale: i64,
    /// Columns: basis of the group's weight lattice Λ_G (stored coords).
    pub weight_basis: IMat,
    /// Columns: basis of the cover's weight lattice (stored coords).
    pub cover_weight_basis: IMat,
    /// Columns: basis of the group's coweight lattice Λ∨_G (stored coords).
    pub coweight_basis: IMat,
    pub roots: Vec<IVec>,
    /// Coroot of `roots[i]` in stored coweight coordinates.
    pub coroots: Vec<IVec>,
    /// Generators of the Weyl group acting on stored weight coordinates.
    pub weyl_generators: Vec<IMat>,
    /// Center generators of the *cover*, as rational coweight vectors
    /// (numerators in natural coordinates, denominator).
    pub center_cover: Vec<(IVec, i64)>,
    /// Accumulated quotient kernel in stored coweight coordinates.
    pub kernel: Vec<IVec>,
    pub factors: Vec<Factor>,
    pub tree: FactorTree,
    fingerprint: u64,
    // Cached inverse data for weight-basis coordinate solves.
    weight_basis_inv: Option<Box<CoordSolver>>,
}

#[derive(Debug, Clone)]
struct CoordSolver {
    basis: IMat,
}

impl CoordSolver {
    fn coords(&self, v: &[i64]) -> Option<IVec> {
        solve_integer(&self.basis, v)
    }
}

impl RootDatum {
    fn finish(mut self) -> Self {
        self.weight_basis_inv = Some(Box::new(CoordSolver { basis: self.weight_basis.clone() }));
        let mut h = DefaultHasher::new();
        self.rank.hash(&mut h);
        self.weight_scale.hash(&mut h);
        self.coweight_scale.hash(&mut h);
        self.weight_basis.fingerprint(&mut h);
        self.coweight_basis.fingerprint(&mut h);
        for r in &self.roots {
            r.hash(&mut h);
        }
        for k in &self.kernel {
            k.hash(&mut h);
        }
        self.fingerprint = h.finish();
        self
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// Denominator of the stored pairing.
    pub fn pairing_denominator(&self) -> i64 {
        self.weight_scale * self.coweight_scale
    }

    /// Raw numerator of the pairing of a stored weight with a stored coweight.
    pub fn pair_num(&self, weight: &[i64], coweight: &[i64]) -> i64 {
        dot(weight, coweight)
    }

    /// Exact pairing; panics unless it is integral (both arguments must be
    /// lattice members for this to be guaranteed).
    pub fn pair(&self, weight: &[i64], coweight: &[i64]) -> i64 {
        let num = self.pair_num(weight, coweight);
        let den = self.pairing_denominator();
        assert_eq!(num % den, 0, "non-integral pairing {num}/{den}");
        num / den
    }

    /// Pairing as (numerator, denominator) without an integrality demand.
    pub fn pair_frac(&self, weight: &[i64], coweight: &[i64]) -> (i64, i64) {
        (self.pair_num(weight, coweight), self.pairing_denominator())
    }

    pub fn is_integral_pairing(&self, weight: &[i64], coweight: &[i64]) -> bool {
        self.pair_num(weight, coweight) % self.pairing_denominator() == 0
    }

    /// Coordinates of a stored weight vector in the Λ_G basis, if it lies in
    /// the group's weight lattice.
    pub fn weight_coords(&self, v: &[i64]) -> Option<IVec> {
        self.weight_basis_inv.as_ref().unwrap().coords(v)
    }

    pub fn is_group_weight(&self, v: &[i64]) -> bool {
        self.weight_coords(v).is_some()
    }

    pub fn is_cover_weight(&self, v: &[i64]) -> bool {
        solve_integer(&self.cover_weight_basis, v).is_some()
    }

    pub fn is_group_coweight(&self, v: &[i64]) -> bool {
        solve_integer(&self.coweight_basis, v).is_some()
    }

    /// Stored weight vector from Λ_G-basis coordinates.
    pub fn weight_from_coords(&self, coords: &[i64]) -> IVec {
        self.weight_basis.mul_vec(coords)
    }

    /// Action of a Weyl matrix on Λ_G-basis coordinates.
    pub fn weight_action_in_basis(&self, w: &IMat) -> IMat {
        let n = self.rank;
        let mut m = IMat::zeros(n, n);
        for j in 0..n {
            let col = self
                .weight_coords(&w.mul_vec(&self.weight_basis.col(j)))
                .expect("Weyl action does not preserve the weight lattice");
            for i in 0..n {
                m[(i, j)] = col[i];
            }
        }
        m
    }

    /// Dual action on stored coweight coordinates: the inverse transpose.
    pub fn dual_action(&self, w: &IMat) -> IMat {
        inverse_unimodular(&w.transpose()).expect("Weyl matrix not unimodular")
    }

    /// Invariant factors of π₁: Smith form of Λ∨_G modulo the coroot lattice.
    pub fn fundamental_group(&self) -> FundamentalGroup {
        let coords: Vec<IVec> = self
            .coroots
            .iter()
            .map(|c| {
                solve_integer(&self.coweight_basis, c)
                    .expect("coroot outside the coweight lattice")
            })
            .collect();
        let m = IMat::from_cols(&coords, self.rank);
        let (torsion, free_rank) = cokernel_invariants(&m);
        FundamentalGroup { torsion, free_rank }
    }

    /// Invariant factors of the center: Λ_G modulo the root lattice
    /// (torsion part), plus the rank of the central torus.
    pub fn center_invariants(&self) -> FundamentalGroup {
        let coords: Vec<IVec> = self
            .roots
            .iter()
            .map(|r| self.weight_coords(r).expect("root outside the weight lattice"))
            .collect();
        let m = IMat::from_cols(&coords, self.rank);
        let (torsion, free_rank) = cokernel_invariants(&m);
        FundamentalGroup { torsion, free_rank }
    }

    /// The deterministic regular reference coweight: the first vector of the
    /// form Σ tⁱ·bᵢ over the Λ∨_G basis (lexicographic weights t^{r-1}, …, 1)
    /// that pairs nonzero with every root and every nonzero vector in `seps`.
    pub fn lexicographic_regular_coweight(&self, seps: &[IVec]) -> IVec {
        for t in 2i64.. {
            let mut xi = vec![0i64; self.rank];
            let mut pow = 1i64;
            for j in (0..self.coweight_basis.cols).rev() {
                let col = self.coweight_basis.col(j);
                for i in 0..self.rank {
                    xi[i] += pow * col[i];
                }
                pow = pow.checked_mul(t).expect("overflow searching for ξ₀");
            }
            let regular = self
                .roots
                .iter()
                .chain(seps.iter())
                .all(|v| is_zero_vec(v) || self.pair_num(v, &xi) != 0);
            if regular {
                return xi;
            }
        }
        unreachable!()
    }

    /// Simple factor blocks (excluding torus factors).
    pub fn simple_factors(&self) -> impl Iterator<Item = (usize, &Factor)> {
        self.factors.iter().enumerate().filter(|(_, f)| f.family != Family::Torus)
    }

    /// Embeds a block-local stored vector into the ambient coordinates.
    pub fn embed_block(&self, factor: usize, local: &[i64]) -> IVec {
        let f = &self.factors[factor];
        let mut v = vec![0i64; self.rank];
        v[f.block.clone()].copy_from_slice(local);
        v
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalGroup {
    pub torsion: Vec<i64>,
    pub free_rank: usize,
}

impl FundamentalGroup {
    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }
    pub fn torsion_order(&self) -> i64 {
        self.torsion.iter().product()
    }
}

/// Builds the simply connected datum for SU/Sp/Spin; SO(n) is Spin(n)/⟨a⟩.
pub fn build_simple(family: Family, n: usize) -> Result<RootDatum, BuildError> {
    match family {
        Family::SU => {
            if n < 2 {
                return Err(BuildError::InvalidRank { family, n });
            }
            Ok(build_su(n))
        }
        Family::Sp => {
            if n < 1 {
                return Err(BuildError::InvalidRank { family, n });
            }
            Ok(build_sp(n))
        }
        Family::Spin => {
            if n < 3 {
                return Err(BuildError::InvalidRank { family, n });
            }
            Ok(build_spin(n, Family::Spin))
        }
        Family::SO => {
            if n < 3 {
                return Err(BuildError::InvalidRank { family, n });
            }
            let spin = build_spin(n, Family::SO);
            let mut a = vec![0i64; spin.rank];
            a[0] = 1;
            let mut so = central_quotient(&spin, &[(a, 1)])?;
            so.tree = FactorTree::Simple { family: Family::SO, n };
            Ok(so.finish())
        }
        Family::Torus => Err(BuildError::InvalidRank { family, n }),
    }
}

fn build_su(n: usize) -> RootDatum {
    let r = n - 1;
    // Cartan matrix of A_{n-1}.
    let mut cartan = IMat::zeros(r, r);
    for i in 0..r {
        cartan[(i, i)] = 2;
        if i + 1 < r {
            cartan[(i, i + 1)] = -1;
            cartan[(i + 1, i)] = -1;
        }
    }
    // Standard-representation lines L_i in fundamental-weight coordinates.
    let line = |i: usize| -> IVec {
        let mut v = vec![0i64; r];
        if i < r {
            v[i] = 1;
        }
        if i > 0 {
            v[i - 1] -= 1;
        }
        v
    };
    let mut roots = vec![];
    let mut coroots = vec![];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            roots.push(vec_sub(&line(i), &line(j)));
            let (lo, hi, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
            let mut h = vec![0i64; r];
            for k in lo..hi {
                h[k] = sign;
            }
            coroots.push(h);
        }
    }
    let gens = (0..r)
        .map(|k| {
            let mut s = IMat::identity(r);
            for i in 0..r {
                s[(i, k)] -= cartan[(i, k)];
            }
            s
        })
        .collect();
    // Center μ_n: the fundamental coweight ω∨₁ = [(n-1)/n, …, 1/n].
    let center = vec![((1..n).rev().map(|k| k as i64).collect(), n as i64)];
    RootDatum {
        rank: r,
        weight_scale: 1,
        coweight_scale: 1,
        weight_basis: IMat::identity(r),
        cover_weight_basis: IMat::identity(r),
        coweight_basis: IMat::identity(r),
        roots,
        coroots,
        weyl_generators: gens,
        center_cover: center,
        kernel: vec![],
        factors: vec![Factor { family: Family::SU, n, rank: r, block: 0..r }],
        tree: FactorTree::Simple { family: Family::SU, n },
        fingerprint: 0,
        weight_basis_inv: None,
    }
    .finish()
}

fn build_sp(m: usize) -> RootDatum {
    let mut roots = vec![];
    let mut coroots = vec![];
    let e = |i: usize, s: i64| -> IVec {
        let mut v = vec![0i64; m];
        v[i] = s;
        v
    };
    for i in 0..m {
        for s in [1, -1] {
            roots.push(e(i, 2 * s));
            coroots.push(e(i, s));
        }
        for j in i + 1..m {
            for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut r = vec![0i64; m];
                r[i] = si;
                r[j] = sj;
                roots.push(r.clone());
                coroots.push(r);
            }
        }
    }
    let gens = sign_perm_generators(m, SignFlip::Last);
    RootDatum {
        rank: m,
        weight_scale: 1,
        coweight_scale: 1,
        weight_basis: IMat::identity(m),
        cover_weight_basis: IMat::identity(m),
        coweight_basis: lattice_basis(&coroots, m),
        roots,
        coroots,
        weyl_generators: gens,
        center_cover: vec![(vec![1; m], 2)],
        kernel: vec![],
        factors: vec![Factor { family: Family::Sp, n: m, rank: m, block: 0..m }],
        tree: FactorTree::Simple { family: Family::Sp, n: m },
        fingerprint: 0,
        weight_basis_inv: None,
    }
    .finish()
}

fn build_spin(n: usize, reported: Family) -> RootDatum {
    let l = n / 2;
    let odd = n % 2 == 1;
    let e = |i: usize, s: i64| -> IVec {
        let mut v = vec![0i64; l];
        v[i] = s;
        v
    };
    let mut roots = vec![];
    let mut coroots = vec![];
    for i in 0..l {
        for j in i + 1..l {
            for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut r = vec![0i64; l];
                r[i] = 2 * si; // doubled storage
                r[j] = 2 * sj;
                roots.push(r);
                let mut h = vec![0i64; l];
                h[i] = si;
                h[j] = sj;
                coroots.push(h);
            }
        }
        if odd {
            for s in [1, -1] {
                roots.push(e(i, 2 * s));
                coroots.push(e(i, 2 * s));
            }
        }
    }
    let gens = sign_perm_generators(
        l,
        if odd { SignFlip::Last } else { SignFlip::LastTwo },
    );
    // Weight lattice of Spin: integer + spin weights, i.e. all stored
    // coordinates congruent mod 2.
    let mut basis_cols: Vec<IVec> = (0..l.saturating_sub(1)).map(|i| e(i, 2)).collect();
    basis_cols.push(vec![1; l]);
    let weight_basis = lattice_basis(&basis_cols, l);
    let center = if odd {
        let mut a = vec![0i64; l];
        a[0] = 1;
        vec![(a, 1)]
    } else if l % 2 == 0 {
        let mut bminus = vec![1i64; l];
        bminus[0] = -1;
        vec![(vec![1; l], 2), (bminus, 2)]
    } else {
        vec![(vec![1; l], 2)]
    };
    RootDatum {
        rank: l,
        weight_scale: 2,
        coweight_scale: 1,
        weight_basis: weight_basis.clone(),
        cover_weight_basis: weight_basis,
        coweight_basis: lattice_basis(&coroots, l),
        roots,
        coroots,
        weyl_generators: gens,
        center_cover: center,
        kernel: vec![],
        factors: vec![Factor { family: reported, n, rank: l, block: 0..l }],
        tree: FactorTree::Simple { family: Family::Spin, n },
        fingerprint: 0,
        weight_basis_inv: None,
    }
    .finish()
}

enum SignFlip {
    Last,
    LastTwo,
}

fn sign_perm_generators(rank: usize, flip: SignFlip) -> Vec<IMat> {
    let mut gens = vec![];
    for i in 0..rank.saturating_sub(1) {
        let mut s = IMat::identity(rank);
        s[(i, i)] = 0;
        s[(i + 1, i + 1)] = 0;
        s[(i, i + 1)] = 1;
        s[(i + 1, i)] = 1;
        gens.push(s);
    }
    match flip {
        SignFlip::Last => {
            let mut s = IMat::identity(rank);
            s[(rank - 1, rank - 1)] = -1;
            gens.push(s);
        }
        SignFlip::LastTwo => {
            if rank >= 2 {
                let mut s = IMat::identity(rank);
                s[(rank - 2, rank - 2)] = 0;
                s[(rank - 1, rank - 1)] = 0;
                s[(rank - 2, rank - 1)] = -1;
                s[(rank - 1, rank - 2)] = -1;
                gens.push(s);
            }
        }
    }
    gens
}

pub fn build_torus(r: usize) -> RootDatum {
    assert!(r >= 1, "torus rank must be positive");
    RootDatum {
        rank: r,
        weight_scale: 1,
        coweight_scale: 1,
        weight_basis: IMat::identity(r),
        cover_weight_basis: IMat::identity(r),
        coweight_basis: IMat::identity(r),
        roots: vec![],
        coroots: vec![],
        weyl_generators: vec![],
        center_cover: vec![],
        kernel: vec![],
        factors: vec![Factor { family: Family::Torus, n: r, rank: r, block: 0..r }],
        tree: FactorTree::Torus { rank: r },
        fingerprint: 0,
        weight_basis_inv: None,
    }
    .finish()
}

/// Direct product: direct sums of lattices, roots and generators.
pub fn product(a: &RootDatum, b: &RootDatum) -> RootDatum {
    let ws = lcm(a.weight_scale, b.weight_scale);
    let cs = lcm(a.coweight_scale, b.coweight_scale);
    let (wa, wb) = (ws / a.weight_scale, ws / b.weight_scale);
    let (ca, cb) = (cs / a.coweight_scale, cs / b.coweight_scale);
    let rank = a.rank + b.rank;

    let embed = |v: &[i64], scale: i64, offset: usize| -> IVec {
        let mut out = vec![0i64; rank];
        for (i, &x) in v.iter().enumerate() {
            out[offset + i] = x * scale;
        }
        out
    };
    let block_diag = |ma: &IMat, sa: i64, mb: &IMat, sb: i64| -> IMat {
        let mut cols = vec![];
        for j in 0..ma.cols {
            cols.push(embed(&ma.col(j), sa, 0));
        }
        for j in 0..mb.cols {
            cols.push(embed(&mb.col(j), sb, a.rank));
        }
        IMat::from_cols(&cols, rank)
    };

    let mut roots = vec![];
    let mut coroots = vec![];
    for (r, h) in a.roots.iter().zip(&a.coroots) {
        roots.push(embed(r, wa, 0));
        coroots.push(embed(h, ca, 0));
    }
    for (r, h) in b.roots.iter().zip(&b.coroots) {
        roots.push(embed(r, wb, a.rank));
        coroots.push(embed(h, cb, a.rank));
    }
    let mut gens = vec![];
    for g in &a.weyl_generators {
        let mut m = IMat::identity(rank);
        for i in 0..a.rank {
            for j in 0..a.rank {
                m[(i, j)] = g[(i, j)];
            }
        }
        gens.push(m);
    }
    for g in &b.weyl_generators {
        let mut m = IMat::identity(rank);
        for i in 0..b.rank {
            for j in 0..b.rank {
                m[(a.rank + i, a.rank + j)] = g[(i, j)];
            }
        }
        gens.push(m);
    }
    let mut factors = a.factors.clone();
    for f in &b.factors {
        let mut f = f.clone();
        f.block = (f.block.start + a.rank)..(f.block.end + a.rank);
        factors.push(f);
    }
    let mut center = vec![];
    for (v, d) in &a.center_cover {
        center.push((embed(v, 1, 0), *d));
    }
    for (v, d) in &b.center_cover {
        center.push((embed(v, 1, a.rank), *d));
    }
    let mut kernel = vec![];
    for k in &a.kernel {
        kernel.push(embed(k, ca, 0));
    }
    for k in &b.kernel {
        kernel.push(embed(k, cb, a.rank));
    }
    RootDatum {
        rank,
        weight_scale: ws,
        coweight_scale: cs,
        weight_basis: block_diag(&a.weight_basis, wa, &b.weight_basis, wb),
        cover_weight_basis: block_diag(&a.cover_weight_basis, wa, &b.cover_weight_basis, wb),
        coweight_basis: block_diag(&a.coweight_basis, ca, &b.coweight_basis, cb),
        roots,
        coroots,
        weyl_generators: gens,
        center_cover: center,
        kernel,
        factors,
        tree: FactorTree::Product(Box::new(a.tree.clone()), Box::new(b.tree.clone())),
        fingerprint: 0,
        weight_basis_inv: None,
    }
    .finish()
}

/// Quotient by a finite central subgroup given by rational coweight vectors
/// (numerators in natural coweight coordinates with a denominator each).
pub fn central_quotient(
    d: &RootDatum,
    kernel: &[(IVec, i64)],
) -> Result<RootDatum, BuildError> {
    // New coweight scale: stored coordinates of every kernel vector must be
    // integral.
    let mut cs = d.coweight_scale;
    for (_, den) in kernel {
        cs = lcm(cs, *den);
    }
    let rescale = cs / d.coweight_scale;
    let stored_kernel: Vec<IVec> = kernel
        .iter()
        .map(|(num, den)| num.iter().map(|&x| x * (cs / den)).collect())
        .collect();

    let mut out = d.clone();
    out.coweight_scale = cs;
    for c in out.coroots.iter_mut() {
        *c = vec_scale(c, rescale);
    }
    for k in out.kernel.iter_mut() {
        *k = vec_scale(k, rescale);
    }
    out.coweight_basis = out.coweight_basis.scale(rescale);

    // Centrality: every kernel vector must pair integrally with every root.
    let den = out.weight_scale * cs;
    for (k, (num, kd)) in stored_kernel.iter().zip(kernel) {
        for r in &d.roots {
            if dot(r, k) % den != 0 {
                return Err(BuildError::NonCentralKernel {
                    vector: num.clone(),
                    den: *kd,
                });
            }
        }
    }

    // Weight lattice shrinks to the vectors pairing integrally with the kernel.
    if !stored_kernel.is_empty() {
        let rows: Vec<IVec> = stored_kernel
            .iter()
            .map(|k| {
                (0..out.weight_basis.cols)
                    .map(|j| dot(&out.weight_basis.col(j), k))
                    .collect()
            })
            .collect();
        let m = IMat::from_rows(&rows);
        let coeffs = congruence_kernel(&m, den);
        out.weight_basis = out.weight_basis.mul(&coeffs);
    }

    // Coweight lattice extends by the kernel vectors.
    let mut gens: Vec<IVec> = (0..out.coweight_basis.cols)
        .map(|j| out.coweight_basis.col(j))
        .collect();
    gens.extend(stored_kernel.iter().cloned());
    out.coweight_basis = lattice_basis(&gens, out.rank);
    out.kernel.extend(stored_kernel);
    out.tree = FactorTree::Quotient(Box::new(d.tree.clone()), kernel.to_vec());
    Ok(out.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn su2() -> RootDatum {
        build_simple(Family::SU, 2).unwrap()
    }

    #[test]
    fn sp1_matches_su2() {
        let sp1 = build_simple(Family::Sp, 1).unwrap();
        assert_eq!(sp1.rank, 1);
        assert_eq!(sp1.roots, vec![vec![2], vec![-2]]);
        assert_eq!(sp1.coroots, vec![vec![1], vec![-1]]);
        assert_eq!(sp1.pair(&[1], &[1]), 1);
        assert_eq!(su2().roots.len(), 2);
        assert_eq!(su2().roots[0], vec![2]);
    }

    #[test]
    fn pairing_of_roots_with_coroots_is_two() {
        for d in [
            su2(),
            build_simple(Family::SU, 4).unwrap(),
            build_simple(Family::Sp, 2).unwrap(),
            build_simple(Family::Spin, 7).unwrap(),
            build_simple(Family::Spin, 8).unwrap(),
            build_simple(Family::SO, 6).unwrap(),
        ] {
            for (r, h) in d.roots.iter().zip(&d.coroots) {
                assert_eq!(d.pair(r, h), 2, "family {:?}", d.factors[0].family);
            }
        }
    }

    #[test]
    fn generators_are_involutions_and_permute_roots() {
        for d in [
            build_simple(Family::SU, 3).unwrap(),
            build_simple(Family::Sp, 2).unwrap(),
            build_simple(Family::Spin, 9).unwrap(),
            build_simple(Family::SO, 8).unwrap(),
        ] {
            for g in &d.weyl_generators {
                assert!(g.mul(g).is_identity());
                for r in &d.roots {
                    let img = g.mul_vec(r);
                    assert!(d.roots.contains(&img), "root not permuted");
                }
            }
        }
    }

    #[test]
    fn spin8_center_and_coroots() {
        let d = build_simple(Family::Spin, 8).unwrap();
        assert_eq!(d.rank, 4);
        assert_eq!(d.roots.len(), 24);
        // Coroots are ±e_i ± e_j.
        assert!(d.coroots.contains(&vec![1, 1, 0, 0]));
        assert!(d.coroots.contains(&vec![0, 0, 1, -1]));
        let c = d.center_invariants();
        assert_eq!(c.torsion, vec![2, 2]);
        assert_eq!(c.free_rank, 0);
        assert!(d.fundamental_group().is_trivial());
    }

    #[test]
    fn so_quotients() {
        let so3 = build_simple(Family::SO, 3).unwrap();
        assert_eq!(so3.fundamental_group().torsion, vec![2]);
        // Weight lattice of SO(3) is the root lattice: spin weight excluded.
        assert!(!so3.is_group_weight(&[1]));
        assert!(so3.is_group_weight(&[2]));

        let so6 = build_simple(Family::SO, 6).unwrap();
        assert_eq!(so6.fundamental_group().torsion, vec![2]);
        // Vector weights are in, spin weights out.
        assert!(so6.is_group_weight(&[2, 0, 0]));
        assert!(!so6.is_group_weight(&[1, 1, 1]));
    }

    #[test]
    fn psp1_is_adjoint() {
        let sp1 = build_simple(Family::Sp, 1).unwrap();
        let kernel = sp1.center_cover.clone();
        let psp1 = central_quotient(&sp1, &kernel).unwrap();
        // Weight lattice has index 2: only even weights remain.
        assert!(psp1.is_group_weight(&[2]));
        assert!(!psp1.is_group_weight(&[1]));
        assert_eq!(psp1.fundamental_group().torsion, vec![2]);
        assert!(psp1.center_invariants().is_trivial());
    }

    #[test]
    fn su2_cubed_mod_diagonal_pairs() {
        let one = su2();
        let three = product(&product(&one, &one), &one);
        assert_eq!(three.rank, 3);
        let d = central_quotient(
            &three,
            &[(vec![1, 1, 0], 2), (vec![0, 1, 1], 2)],
        )
        .unwrap();
        // 2ω_i and ω₁+ω₂+ω₃ are weights of the quotient; ω₁ is not.
        assert!(d.is_group_weight(&[2, 0, 0]));
        assert!(d.is_group_weight(&[1, 1, 1]));
        assert!(!d.is_group_weight(&[1, 0, 0]));
        assert_eq!(d.fundamental_group().torsion, vec![2, 2]);
    }

    #[test]
    fn non_central_kernel_rejected() {
        let err = central_quotient(&su2(), &[(vec![1], 3)]).unwrap_err();
        assert!(matches!(err, BuildError::NonCentralKernel { .. }));
    }

    #[test]
    fn torus_product() {
        let d = product(&su2(), &build_torus(1));
        assert_eq!(d.rank, 2);
        assert_eq!(d.roots.len(), 2);
        assert_eq!(d.weyl_generators.len(), 1);
    }

    #[test]
    fn regular_coweight_is_regular() {
        let d = build_simple(Family::Sp, 2).unwrap();
        let xi = d.lexicographic_regular_coweight(&[]);
        for r in &d.roots {
            assert_ne!(d.pair_num(r, &xi), 0);
        }
    }
}
