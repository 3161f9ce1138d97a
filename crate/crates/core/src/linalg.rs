//! Dense complex linear algebra over multi-qudit Hilbert spaces.
//!
//! Matrices are stored row-major. Subsystem operations take a [`Dims`]
//! describing the tensor-factor structure; party 0 is the most significant
//! factor, so `|ab⟩` on dims `[d0, d1]` has index `a * d1 + b`.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Absolute tolerance used throughout unless a caller overrides it.
pub const DEFAULT_TOL: f64 = 1e-9;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                let z = self[(r, c)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                actual: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from real row-major entries.
    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Result<Self> {
        Self::from_vec(rows, cols, data.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &x) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(x, 0.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<C64> {
        self.data
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(c, r)] = self[(r, c)].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(c, r)] = self[(r, c)];
            }
        }
        out
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == ZERO {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[r * other.cols..(r + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }

    /// `U · self · U†`.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        u.matmul(self).matmul(&u.dagger())
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.cols, v.len(), "apply shape mismatch");
        (0..self.rows)
            .map(|r| {
                self.data[r * self.cols..(r + 1) * self.cols]
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// Hilbert–Schmidt inner product Tr(self† other).
    pub fn hs_inner(&self, other: &Self) -> C64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    /// max |M − M†|.
    pub fn hermiticity_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut dev = 0.0f64;
        for r in 0..self.rows {
            for c in r..self.cols {
                dev = dev.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }

    /// Whether `U†U = I` within `tol`.
    pub fn is_unitary(&self, tol: f64) -> bool {
        self.is_square()
            && self
                .dagger()
                .matmul(self)
                .approx_eq(&Self::identity(self.rows), tol)
    }

    fn to_nalgebra_hermitian(&self) -> DMatrix<C64> {
        let n = self.rows;
        DMatrix::from_fn(n, n, |r, c| (self[(r, c)] + self[(c, r)].conj()) * 0.5)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.data[r * self.cols + c]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "add shape mismatch"
        );
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "sub shape mismatch"
        );
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

/// Local dimensions of the tensor factors, in party order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Dims(Vec<usize>);

impl Dims {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if let Some(&d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidLocalDimension(d));
        }
        Ok(Self(dims))
    }

    pub fn qubits(n: usize) -> Self {
        Self(vec![2; n])
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().product()
    }

    /// Product of the dimensions at `indices`.
    pub fn total_of(&self, indices: &[usize]) -> usize {
        indices.iter().map(|&i| self.0[i]).product()
    }

    pub fn select(&self, indices: &[usize]) -> Dims {
        Dims(indices.iter().map(|&i| self.0[i]).collect())
    }

    fn check_matrix(&self, m: &ComplexMatrix) -> Result<()> {
        let n = self.total();
        if !m.is_square() || m.rows() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: m.rows(),
            });
        }
        Ok(())
    }

    fn check_indices(&self, indices: &[usize]) -> Result<()> {
        for &i in indices {
            if i >= self.len() {
                return Err(Error::PartyOutOfRange {
                    index: i,
                    parties: self.len(),
                });
            }
        }
        Ok(())
    }

    /// Mixed-radix digits of a flat index, most significant party first.
    pub fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.len()];
        for (slot, &d) in out.iter_mut().zip(&self.0).rev() {
            *slot = index % d;
            index /= d;
        }
        out
    }

    pub fn flat_index(&self, digits: &[usize]) -> usize {
        digits
            .iter()
            .zip(&self.0)
            .fold(0, |acc, (&digit, &d)| acc * d + digit)
    }
}

impl From<Dims> for Vec<usize> {
    fn from(d: Dims) -> Self {
        d.0
    }
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut out = ComplexMatrix::zeros(rows, cols);
    for ar in 0..a.rows {
        for ac in 0..a.cols {
            let x = a[(ar, ac)];
            if x == ZERO {
                continue;
            }
            for br in 0..b.rows {
                for bc in 0..b.cols {
                    out[(ar * b.rows + br, ac * b.cols + bc)] = x * b[(br, bc)];
                }
            }
        }
    }
    out
}

pub fn kron_all<'a>(factors: impl IntoIterator<Item = &'a ComplexMatrix>) -> ComplexMatrix {
    factors
        .into_iter()
        .fold(ComplexMatrix::identity(1), |acc, f| kron(&acc, f))
}

pub fn kron_vec(a: &[C64], b: &[C64]) -> Vec<C64> {
    a.iter()
        .flat_map(|&x| b.iter().map(move |&y| x * y))
        .collect()
}

fn normalized_subset(indices: &[usize]) -> Vec<usize> {
    let mut v = indices.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// Traces out every party not listed in `keep`. The result's factors
/// follow ascending party order.
pub fn partial_trace(m: &ComplexMatrix, dims: &Dims, keep: &[usize]) -> Result<ComplexMatrix> {
    dims.check_matrix(m)?;
    dims.check_indices(keep)?;
    let keep = normalized_subset(keep);
    let traced: Vec<usize> = (0..dims.len()).filter(|i| !keep.contains(i)).collect();
    let keep_dims = dims.select(&keep);
    let traced_dims = dims.select(&traced);
    let nk = keep_dims.total();
    let nt = traced_dims.total();

    // groups[t][k] = full index with traced digits t and kept digits k
    let mut groups = vec![vec![0usize; nk]; nt];
    for full in 0..dims.total() {
        let digits = dims.digits(full);
        let kd: Vec<usize> = keep.iter().map(|&i| digits[i]).collect();
        let td: Vec<usize> = traced.iter().map(|&i| digits[i]).collect();
        groups[traced_dims.flat_index(&td)][keep_dims.flat_index(&kd)] = full;
    }

    let mut out = ComplexMatrix::zeros(nk, nk);
    for group in &groups {
        for (r, &fr) in group.iter().enumerate() {
            for (c, &fc) in group.iter().enumerate() {
                out[(r, c)] += m[(fr, fc)];
            }
        }
    }
    Ok(out)
}

/// Transposes the listed tensor factors, leaving the rest untouched.
pub fn partial_transpose(
    m: &ComplexMatrix,
    dims: &Dims,
    transpose: &[usize],
) -> Result<ComplexMatrix> {
    dims.check_matrix(m)?;
    dims.check_indices(transpose)?;
    let transpose = normalized_subset(transpose);
    let n = dims.total();
    let digits: Vec<Vec<usize>> = (0..n).map(|i| dims.digits(i)).collect();
    let mut out = ComplexMatrix::zeros(n, n);
    let mut rd = vec![0; dims.len()];
    let mut cd = vec![0; dims.len()];
    for r in 0..n {
        for c in 0..n {
            rd.copy_from_slice(&digits[r]);
            cd.copy_from_slice(&digits[c]);
            for &k in &transpose {
                std::mem::swap(&mut rd[k], &mut cd[k]);
            }
            out[(dims.flat_index(&rd), dims.flat_index(&cd))] = m[(r, c)];
        }
    }
    Ok(out)
}

/// Reorders tensor factors: factor `i` of the result is factor `perm[i]`
/// of the input.
pub fn permute_subsystems(m: &ComplexMatrix, dims: &Dims, perm: &[usize]) -> Result<ComplexMatrix> {
    dims.check_matrix(m)?;
    check_permutation(perm, dims.len())?;
    let new_dims = dims.select(perm);
    let n = dims.total();
    let map: Vec<usize> = (0..n)
        .map(|old| {
            let d = dims.digits(old);
            let nd: Vec<usize> = perm.iter().map(|&p| d[p]).collect();
            new_dims.flat_index(&nd)
        })
        .collect();
    let mut out = ComplexMatrix::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            out[(map[r], map[c])] = m[(r, c)];
        }
    }
    Ok(out)
}

/// Same reordering as [`permute_subsystems`], applied to a state vector.
pub fn permute_vector(v: &[C64], dims: &Dims, perm: &[usize]) -> Result<Vec<C64>> {
    if v.len() != dims.total() {
        return Err(Error::DimensionMismatch {
            expected: dims.total(),
            actual: v.len(),
        });
    }
    check_permutation(perm, dims.len())?;
    let new_dims = dims.select(perm);
    let mut out = vec![ZERO; v.len()];
    for (old, &amp) in v.iter().enumerate() {
        let d = dims.digits(old);
        let nd: Vec<usize> = perm.iter().map(|&p| d[p]).collect();
        out[new_dims.flat_index(&nd)] = amp;
    }
    Ok(out)
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::InvalidPermutation(format!(
            "length {} for {} parties",
            perm.len(),
            n
        )));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::InvalidPermutation(format!("{perm:?}")));
        }
        seen[p] = true;
    }
    Ok(())
}

/// Embeds an operator acting on the parties `targets` (in that order) into
/// the full space, with identity elsewhere.
pub fn embed_operator(op: &ComplexMatrix, dims: &Dims, targets: &[usize]) -> Result<ComplexMatrix> {
    dims.check_indices(targets)?;
    let target_dims = dims.select(targets);
    if !op.is_square() || op.rows() != target_dims.total() {
        return Err(Error::DimensionMismatch {
            expected: target_dims.total(),
            actual: op.rows(),
        });
    }
    if normalized_subset(targets).len() != targets.len() {
        return Err(Error::InvalidPermutation(format!(
            "repeated target in {targets:?}"
        )));
    }
    let n = dims.total();
    let mut out = ComplexMatrix::zeros(n, n);
    for c in 0..n {
        let cd = dims.digits(c);
        let tc = target_dims.flat_index(&targets.iter().map(|&t| cd[t]).collect::<Vec<_>>());
        for tr in 0..target_dims.total() {
            let x = op[(tr, tc)];
            if x == ZERO {
                continue;
            }
            let trd = target_dims.digits(tr);
            let mut rd = cd.clone();
            for (k, &t) in targets.iter().enumerate() {
                rd[t] = trd[k];
            }
            out[(dims.flat_index(&rd), c)] += x;
        }
    }
    Ok(out)
}

/// Real spectrum of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    hermitian_eigenvalues_tol(m, DEFAULT_TOL)
}

pub fn hermitian_eigenvalues_tol(m: &ComplexMatrix, tol: f64) -> Result<Vec<f64>> {
    Ok(hermitian_eigh_tol(m, tol)?.0)
}

/// Eigenvalues (ascending) and matching orthonormal eigenvectors.
pub fn hermitian_eigh(m: &ComplexMatrix) -> Result<(Vec<f64>, Vec<Vec<C64>>)> {
    hermitian_eigh_tol(m, DEFAULT_TOL)
}

pub fn hermitian_eigh_tol(m: &ComplexMatrix, tol: f64) -> Result<(Vec<f64>, Vec<Vec<C64>>)> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            actual: m.cols(),
        });
    }
    let deviation = m.hermiticity_deviation();
    if deviation > tol {
        return Err(Error::NotHermitian { deviation });
    }
    let n = m.rows();
    if n == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    let eig = nalgebra::linalg::SymmetricEigen::try_new(m.to_nalgebra_hermitian(), 1e-15, 10_000)
        .ok_or(Error::EigenFailure)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = order
        .iter()
        .map(|&i| eig.eigenvectors.column(i).iter().copied().collect())
        .collect();
    Ok((values, vectors))
}

/// Whether every eigenvalue is at least `-tol`.
pub fn is_psd(m: &ComplexMatrix, tol: f64) -> Result<bool> {
    Ok(min_eigenvalue(m, tol)? >= -tol)
}

pub fn min_eigenvalue(m: &ComplexMatrix, tol: f64) -> Result<f64> {
    Ok(hermitian_eigenvalues_tol(m, tol)?
        .first()
        .copied()
        .unwrap_or(0.0))
}

pub fn dagger(m: &ComplexMatrix) -> ComplexMatrix {
    m.dagger()
}

pub fn vector_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// `|v⟩⟨v|` for a normalized vector.
pub fn outer(v: &[C64]) -> Result<ComplexMatrix> {
    let norm = vector_norm(v);
    if (norm - 1.0).abs() > DEFAULT_TOL {
        return Err(Error::NotNormalized { norm });
    }
    Ok(outer_unchecked(v))
}

pub(crate) fn outer_unchecked(v: &[C64]) -> ComplexMatrix {
    let n = v.len();
    let mut m = ComplexMatrix::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            m[(r, c)] = v[r] * v[c].conj();
        }
    }
    m
}

pub fn normalize(v: &[C64]) -> Vec<C64> {
    let norm = vector_norm(v);
    v.iter().map(|z| z / norm).collect()
}

/// Pauli matrices and the 2×2 identity.
pub mod pauli {
    use super::{ComplexMatrix, C64};

    pub fn i2() -> ComplexMatrix {
        ComplexMatrix::identity(2)
    }

    pub fn x() -> ComplexMatrix {
        ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
    }

    pub fn y() -> ComplexMatrix {
        let z = C64::new(0.0, 0.0);
        ComplexMatrix::from_vec(2, 2, vec![z, C64::new(0.0, -1.0), C64::new(0.0, 1.0), z]).unwrap()
    }

    pub fn z() -> ComplexMatrix {
        ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0]).unwrap()
    }

    /// `[I, σx, σy, σz]`.
    pub fn all() -> [ComplexMatrix; 4] {
        [i2(), x(), y(), z()]
    }
}
