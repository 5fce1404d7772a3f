//! Exact integer and F₂ linear algebra on small dense matrices.
//!
//! Everything in this crate runs at rank ≤ 7 and Weyl orders ≤ 10⁴, so the
//! algorithms here favour exactness and simplicity: Bareiss elimination for
//! determinants, Smith normal form with unimodular transforms for lattice
//! quotients and Diophantine solves, and word-packed Gaussian elimination
//! over F₂ for cocycle trivialization. No floating point anywhere.

use std::fmt;
use std::hash::{Hash, Hasher};

pub type IVec = Vec<i64>;

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<i64>,
}

impl IMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IMat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[IVec]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[IVec], dim: usize) -> Self {
        let mut m = Self::zeros(dim, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), dim, "ragged columns");
            for (i, &v) in col.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn col(&self, j: usize) -> IVec {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn row(&self, i: usize) -> IVec {
        (0..self.cols).map(|j| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> IMat {
        let mut t = IMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut m = IMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    m[(i, j)] = m[(i, j)]
                        .checked_add(a.checked_mul(other[(k, j)]).expect("overflow"))
                        .expect("overflow");
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[i64]) -> IVec {
        assert_eq!(self.cols, v.len(), "dimension mismatch in mul_vec");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    pub fn add(&self, other: &IMat) -> IMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for (a, b) in m.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        m
    }

    pub fn sub(&self, other: &IMat) -> IMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut m = self.clone();
        for (a, b) in m.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        m
    }

    pub fn scale(&self, k: i64) -> IMat {
        let mut m = self.clone();
        for a in m.data.iter_mut() {
            *a *= k;
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == IMat::identity(self.rows)
    }

    pub fn mod2(&self) -> IMat {
        let mut m = self.clone();
        for a in m.data.iter_mut() {
            *a = a.rem_euclid(2);
        }
        m
    }

    /// Stable content fingerprint, used to tag data to its parent datum.
    pub fn fingerprint<H: Hasher>(&self, h: &mut H) {
        self.rows.hash(h);
        self.cols.hash(h);
        self.data.hash(h);
    }
}

impl std::ops::Index<(usize, usize)> for IMat {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn vec_add(a: &[i64], b: &[i64]) -> IVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[i64], b: &[i64]) -> IVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_neg(a: &[i64]) -> IVec {
    a.iter().map(|x| -x).collect()
}

pub fn vec_scale(a: &[i64], k: i64) -> IVec {
    a.iter().map(|x| x * k).collect()
}

pub fn is_zero_vec(a: &[i64]) -> bool {
    a.iter().all(|&x| x == 0)
}

/// Determinant by fraction-free Bareiss elimination in i128.
pub fn det(m: &IMat) -> i128 {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| m[(i, j)] as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Inverse of a matrix with determinant ±1.
pub fn inverse_unimodular(m: &IMat) -> Option<IMat> {
    let d = det(m);
    if d != 1 && d != -1 {
        return None;
    }
    let n = m.rows;
    let mut inv = IMat::zeros(n, n);
    for j in 0..n {
        let mut e = vec![0i64; n];
        e[j] = 1;
        let x = solve_integer(m, &e)?;
        for i in 0..n {
            inv[(i, j)] = x[i];
        }
    }
    Some(inv)
}

/// Solves `a x = b` exactly over ℚ and returns the solution iff it is integral
/// and exact (for square nonsingular `a`). Uses Bareiss-style elimination.
pub fn solve_integer(a: &IMat, b: &[i64]) -> Option<IVec> {
    assert_eq!(a.rows, a.cols);
    assert_eq!(a.rows, b.len());
    let n = a.rows;
    if n == 0 {
        return Some(vec![]);
    }
    // Augmented fraction-free elimination, then back-substitution over i128
    // rationals with exact divisibility checks.
    let mut m: Vec<Vec<i128>> = (0..n)
        .map(|i| {
            let mut row: Vec<i128> = (0..n).map(|j| a[(i, j)] as i128).collect();
            row.push(b[i] as i128);
            row
        })
        .collect();
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            let p = (k + 1..n).find(|&i| m[i][k] != 0)?;
            m.swap(k, p);
        }
        for i in k + 1..n {
            for j in k + 1..=n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    // Back substitution: x_i = (rhs_i - sum) / m[i][i], exact division required.
    let mut x = vec![0i128; n];
    for i in (0..n).rev() {
        let mut rhs = m[i][n];
        for j in i + 1..n {
            rhs -= m[i][j] * x[j];
        }
        if m[i][i] == 0 || rhs % m[i][i] != 0 {
            return None;
        }
        x[i] = rhs / m[i][i];
    }
    Some(x.into_iter().map(|v| i64::try_from(v).expect("overflow")).collect())
}

/// Smith normal form: returns (u, s, v) with `u * a * v = s`, u and v
/// unimodular, and s diagonal with s₁ | s₂ | … (non-negative).
pub fn smith_normal_form(a: &IMat) -> (IMat, IMat, IMat) {
    let (rows, cols) = (a.rows, a.cols);
    let mut s: Vec<Vec<i128>> = (0..rows)
        .map(|i| (0..cols).map(|j| a[(i, j)] as i128).collect())
        .collect();
    let mut u: Vec<Vec<i128>> = (0..rows)
        .map(|i| (0..rows).map(|j| (i == j) as i128).collect())
        .collect();
    let mut v: Vec<Vec<i128>> = (0..cols)
        .map(|i| (0..cols).map(|j| (i == j) as i128).collect())
        .collect();

    let n = rows.min(cols);
    for t in 0..n {
        // Find a pivot: smallest nonzero |entry| in the remaining block.
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            let mut best: i128 = 0;
            for i in t..rows {
                for j in t..cols {
                    let val = s[i][j].abs();
                    if val != 0 && (pivot.is_none() || val < best) {
                        pivot = Some((i, j));
                        best = val;
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                // Remaining block is zero; done.
                let su = to_imat(&u);
                let sv = to_imat(&v);
                let sm = to_imat(&s);
                return (su, sm, sv);
            };
            // Move pivot to (t, t).
            s.swap(t, pi);
            u.swap(t, pi);
            if pj != t {
                for row in s.iter_mut() {
                    row.swap(t, pj);
                }
                for row in v.iter_mut() {
                    row.swap(t, pj);
                }
            }
            // Reduce column t and row t by the pivot.
            let mut clean = true;
            for i in t + 1..rows {
                if s[i][t] != 0 {
                    let q = div_round(s[i][t], s[t][t]);
                    if q != 0 {
                        for j in 0..cols {
                            s[i][j] -= q * s[t][j];
                        }
                        for j in 0..rows {
                            u[i][j] -= q * u[t][j];
                        }
                    }
                    if s[i][t] != 0 {
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if s[t][j] != 0 {
                    let q = div_round(s[t][j], s[t][t]);
                    if q != 0 {
                        for i in 0..rows {
                            s[i][j] -= q * s[i][t];
                        }
                        for i in 0..cols {
                            v[i][j] -= q * v[i][t];
                        }
                    }
                    if s[t][j] != 0 {
                        clean = false;
                    }
                }
            }
            if clean {
                // Enforce divisibility of the remaining block by the pivot.
                let p = s[t][t];
                let mut bad: Option<(usize, usize)> = None;
                'outer: for i in t + 1..rows {
                    for j in t + 1..cols {
                        if s[i][j] % p != 0 {
                            bad = Some((i, j));
                            break 'outer;
                        }
                    }
                }
                match bad {
                    None => break,
                    Some((i, _)) => {
                        // Add row i to row t and continue reducing.
                        for j in 0..cols {
                            s[t][j] += s[i][j];
                        }
                        for j in 0..rows {
                            u[t][j] += u[i][j];
                        }
                    }
                }
            }
        }
    }
    // Normalize signs.
    for t in 0..n {
        if s[t][t] < 0 {
            for j in 0..cols {
                s[t][j] = -s[t][j];
            }
            for j in 0..rows {
                u[t][j] = -u[t][j];
            }
        }
    }
    (to_imat(&u), to_imat(&s), to_imat(&v))
}

fn div_round(a: i128, b: i128) -> i128 {
    // Round-to-nearest division keeps entries small during SNF.
    let q = a / b;
    let r = a - q * b;
    if 2 * r.abs() > b.abs() {
        q + if (a < 0) == (b < 0) { 1 } else { -1 }
    } else {
        q
    }
}

fn to_imat(m: &[Vec<i128>]) -> IMat {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut out = IMat::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            out[(i, j)] = i64::try_from(m[i][j]).expect("overflow in SNF");
        }
    }
    out
}

/// Elementary divisors (> 1) and free rank of coker(a) = Z^rows / col-span(a).
pub fn cokernel_invariants(a: &IMat) -> (Vec<i64>, usize) {
    let (_, s, _) = smith_normal_form(a);
    let n = a.rows.min(a.cols);
    let mut divisors = vec![];
    let mut rank = 0;
    for t in 0..n {
        if s[(t, t)] != 0 {
            rank += 1;
            if s[(t, t)] > 1 {
                divisors.push(s[(t, t)]);
            }
        }
    }
    (divisors, a.rows - rank)
}

/// Basis (as columns) of the integer kernel {x : a x = 0}.
pub fn integer_kernel(a: &IMat) -> Vec<IVec> {
    let (_, s, v) = smith_normal_form(a);
    let n = a.rows.min(a.cols);
    let mut rank = 0;
    for t in 0..n {
        if s[(t, t)] != 0 {
            rank += 1;
        }
    }
    (rank..a.cols).map(|j| v.col(j)).collect()
}

/// Solves `a x = b` over the integers (any shape). Returns one solution.
pub fn solve_diophantine(a: &IMat, b: &[i64]) -> Option<IVec> {
    assert_eq!(a.rows, b.len());
    let (u, s, v) = smith_normal_form(a);
    let ub = u.mul_vec(b);
    let n = a.rows.min(a.cols);
    let mut y = vec![0i64; a.cols];
    for i in 0..a.rows {
        let si = if i < n { s[(i, i)] } else { 0 };
        if si == 0 {
            if ub.get(i).copied().unwrap_or(0) != 0 {
                return None;
            }
        } else {
            if ub[i] % si != 0 {
                return None;
            }
            y[i] = ub[i] / si;
        }
    }
    Some(v.mul_vec(&y))
}

/// A basis (columns) for the lattice generated by the given vectors in Z^dim.
pub fn lattice_basis(gens: &[IVec], dim: usize) -> IMat {
    if gens.is_empty() {
        return IMat::zeros(dim, 0);
    }
    let g = IMat::from_cols(gens, dim);
    // Column-style Hermite reduction via SNF: col-span(g) = col-span(u⁻¹ s).
    let (u, s, _) = smith_normal_form(&g);
    let uinv = inverse_unimodular(&u).expect("SNF transform not unimodular");
    let n = g.rows.min(g.cols);
    let mut cols = vec![];
    for t in 0..n {
        if s[(t, t)] != 0 {
            cols.push(vec_scale(&uinv.col(t), s[(t, t)]));
        }
    }
    IMat::from_cols(&cols, dim)
}

/// Basis (columns) of {x ∈ Z^cols : m x ≡ 0 (mod k)}.
pub fn congruence_kernel(m: &IMat, k: i64) -> IMat {
    assert!(k > 0);
    let (_, s, v) = smith_normal_form(m);
    let n = m.rows.min(m.cols);
    let mut cols = vec![];
    for j in 0..m.cols {
        let mult = if j < n && s[(j, j)] != 0 {
            let g = gcd(s[(j, j)], k);
            k / g
        } else {
            1
        };
        cols.push(vec_scale(&v.col(j), mult));
    }
    // The columns are independent (v unimodular), so they already form a basis.
    IMat::from_cols(&cols, m.cols)
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        0
    } else {
        (a / gcd(a, b)).abs() * b.abs()
    }
}

/// Dense F₂ matrix with u64-packed rows; used by the coboundary solvers.
#[derive(Clone)]
pub struct F2Mat {
    pub rows: usize,
    pub cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl F2Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        F2Mat { rows, cols, words, data: vec![0; rows * words] }
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = &mut self.data[i * self.words + j / 64];
        if v {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    fn xor_rows(&mut self, dst: usize, src: usize) {
        let (d, s) = (dst * self.words, src * self.words);
        for k in 0..self.words {
            let val = self.data[s + k];
            self.data[d + k] ^= val;
        }
    }
}

/// Solution of an affine F₂ system: one particular solution plus a basis of
/// the homogeneous kernel. The solution set is non-canonical; pivots are
/// chosen in lexicographic column order.
pub struct F2Solution {
    pub particular: Vec<bool>,
    pub kernel: Vec<Vec<bool>>,
}

/// Solves `a x = b` over F₂. Returns None iff inconsistent.
pub fn f2_solve(a: &F2Mat, b: &[bool]) -> Option<F2Solution> {
    assert_eq!(a.rows, b.len());
    let mut m = F2Mat::zeros(a.rows, a.cols + 1);
    for i in 0..a.rows {
        for k in 0..a.words {
            m.data[i * m.words + k] = a.data[i * a.words + k];
        }
        m.set(i, a.cols, b[i]);
    }
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; a.cols];
    let mut next_row = 0;
    for col in 0..a.cols {
        let Some(p) = (next_row..m.rows).find(|&i| m.get(i, col)) else {
            continue;
        };
        // Swap rows p and next_row.
        if p != next_row {
            for k in 0..m.words {
                m.data.swap(p * m.words + k, next_row * m.words + k);
            }
        }
        for i in 0..m.rows {
            if i != next_row && m.get(i, col) {
                m.xor_rows(i, next_row);
            }
        }
        pivot_of_col[col] = Some(next_row);
        next_row += 1;
    }
    // Inconsistency: a zero row with nonzero rhs.
    for i in next_row..m.rows {
        if m.get(i, a.cols) {
            return None;
        }
    }
    let mut particular = vec![false; a.cols];
    for col in 0..a.cols {
        if let Some(r) = pivot_of_col[col] {
            particular[col] = m.get(r, a.cols);
        }
    }
    let mut kernel = vec![];
    for free in 0..a.cols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![false; a.cols];
        v[free] = true;
        for col in 0..a.cols {
            if let Some(r) = pivot_of_col[col] {
                if m.get(r, free) {
                    v[col] = true;
                }
            }
        }
        kernel.push(v);
    }
    Some(F2Solution { particular, kernel })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_and_inverse() {
        let m = IMat::from_rows(&[vec![2, 1], vec![1, 1]]);
        assert_eq!(det(&m), 1);
        let inv = inverse_unimodular(&m).unwrap();
        assert!(m.mul(&inv).is_identity());
    }

    #[test]
    fn solve_square() {
        let m = IMat::from_rows(&[vec![2, 0], vec![1, 1]]);
        assert_eq!(solve_integer(&m, &[4, 3]), Some(vec![2, 1]));
        assert_eq!(solve_integer(&m, &[3, 0]), None); // x₁ = 3/2
    }

    #[test]
    fn snf_small() {
        let m = IMat::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let (u, s, v) = smith_normal_form(&m);
        assert_eq!(u.mul(&m).mul(&v), s);
        assert_eq!(det(&u).abs(), 1);
        assert_eq!(det(&v).abs(), 1);
        assert_eq!([s[(0, 0)], s[(1, 1)], s[(2, 2)]], [2, 2, 156]);
    }

    #[test]
    fn cokernel_so6() {
        // Z³ modulo the span of {e_i ± e_j}: quotient of order 2.
        let cols: Vec<IVec> =
            vec![vec![1, 1, 0], vec![1, -1, 0], vec![0, 1, 1], vec![0, 1, -1]];
        let m = IMat::from_cols(&cols, 3);
        let (div, free) = cokernel_invariants(&m);
        assert_eq!(div, vec![2]);
        assert_eq!(free, 0);
    }

    #[test]
    fn diophantine() {
        let m = IMat::from_rows(&[vec![2, 4], vec![0, 3]]);
        let x = solve_diophantine(&m, &[6, 3]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![6, 3]);
        assert!(solve_diophantine(&m, &[1, 0]).is_none());
    }

    #[test]
    fn congruence_lattice() {
        // {x ∈ Z² : x₁ + x₂ ≡ 0 mod 2}
        let m = IMat::from_rows(&[vec![1, 1]]);
        let basis = congruence_kernel(&m, 2);
        for j in 0..basis.cols {
            let c = basis.col(j);
            assert_eq!((c[0] + c[1]).rem_euclid(2), 0);
        }
        assert_eq!(det(&basis).abs(), 2); // index-2 sublattice
    }

    #[test]
    fn f2_system() {
        // x₁ + x₂ = 1, x₂ + x₃ = 1, x₁ + x₃ = 0: solvable, kernel = {111}.
        let mut a = F2Mat::zeros(3, 3);
        for (i, (j, k)) in [(0, (0, 1)), (1, (1, 2)), (2, (0, 2))] {
            a.set(i, j, true);
            a.set(i, k, true);
        }
        let sol = f2_solve(&a, &[true, true, false]).unwrap();
        assert_eq!(sol.kernel.len(), 1);
        assert_eq!(sol.kernel[0], vec![true, true, true]);
        // Inconsistent version.
        assert!(f2_solve(&a, &[true, true, true]).is_none());
    }

    #[test]
    fn lattice_basis_same_parity() {
        let gens: Vec<IVec> = vec![vec![2, 0], vec![0, 2], vec![1, 1]];
        let b = lattice_basis(&gens, 2);
        assert_eq!(b.cols, 2);
        assert_eq!(det(&b).abs(), 2);
        assert!(solve_integer(&b, &[1, 1]).is_some());
        assert!(solve_integer(&b, &[1, 0]).is_none());
    }
}
