//! Dense complex matrices for the small operators used throughout the crate.
//!
//! Everything here is sized for systems of a few qubits (dimension 2 to 8 in
//! practice, up to 16 allowed). Storage is row-major and all operations
//! return new values.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Hermiticity tolerance used when validating inputs.
pub const HERMITIAN_TOL: f64 = 1e-9;
/// Eigenvalues above `-PSD_FLOOR` are treated as nonnegative.
pub const PSD_FLOOR: f64 = 1e-9;
/// Default tolerance for entrywise comparisons.
pub const EQ_TOL: f64 = 1e-10;

const MAX_JACOBI_SWEEPS: usize = 100;

pub const fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension("matrix must have at least one row and column".into()));
        }
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![C64::default(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { C64::new(1.0, 0.0) } else { C64::default() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from nested rows. Panics on ragged input.
    pub fn from_rows<R: AsRef<[C64]>>(rows: &[R]) -> Self {
        let ncols = rows[0].as_ref().len();
        let mut data = Vec::with_capacity(rows.len() * ncols);
        for row in rows {
            assert_eq!(row.as_ref().len(), ncols, "ragged rows");
            data.extend_from_slice(row.as_ref());
        }
        Self { rows: rows.len(), cols: ncols, data }
    }

    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Self {
        let rows: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn diag_real(values: &[f64]) -> Self {
        let n = values.len();
        Self::from_fn(n, n, |i, j| if i == j { C64::new(values[i], 0.0) } else { C64::default() })
    }

    /// Column vector (a ket).
    pub fn column(entries: &[C64]) -> Self {
        Self { rows: entries.len(), cols: 1, data: entries.to_vec() }
    }

    /// `|v><v|` for a column vector `v`.
    pub fn projector(ket: &ComplexMatrix) -> Self {
        debug_assert_eq!(ket.cols, 1);
        ket * &ket.adjoint()
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

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.cols + j]
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn scale(&self, factor: C64) -> Self {
        self.map(|z| z * factor)
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.map(|z| z * factor)
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| f(z)).collect() }
    }

    /// `(M + M†) / 2`.
    pub fn hermitize(&self) -> Self {
        assert!(self.is_square());
        Self::from_fn(self.rows, self.cols, |i, j| (self.get(i, j) + self.get(j, i).conj()) * 0.5)
    }

    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        self.max_abs_diff(&self.adjoint())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    /// `U M U†`.
    pub fn conjugate_by(&self, unitary: &ComplexMatrix) -> Self {
        &(unitary * self) * &unitary.adjoint()
    }

    /// Largest absolute entrywise difference. Infinite when shapes differ.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &ComplexMatrix, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn kron(&self, other: &ComplexMatrix) -> Self {
        kron(self, other)
    }

    fn try_mul(&self, rhs: &ComplexMatrix) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == C64::default() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn matmul(&self, rhs: &ComplexMatrix) -> Result<Self> {
        self.try_mul(rhs)
    }

    fn zip_with(&self, rhs: &ComplexMatrix, f: impl Fn(C64, C64) -> C64) -> Self {
        assert!(
            self.rows == rhs.rows && self.cols == rhs.cols,
            "shape mismatch: {}x{} vs {}x{}",
            self.rows,
            self.cols,
            rhs.rows,
            rhs.cols
        );
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_mul(rhs).expect("matrix product shape mismatch")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self.get(i, j);
                write!(f, "{:>+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Kronecker product: entry `(i*rb + k, j*cb + l)` is `a[i,j] * b[k,l]`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (rb, cb) = (b.rows, b.cols);
    ComplexMatrix::from_fn(a.rows * rb, a.cols * cb, |r, c| a.get(r / rb, c / cb) * b.get(r % rb, c % cb))
}

/// Kronecker product of a sequence of factors, left to right.
pub fn kron_all(factors: &[&ComplexMatrix]) -> ComplexMatrix {
    let (first, rest) = factors.split_first().expect("at least one factor");
    rest.iter().fold((*first).clone(), |acc, m| kron(&acc, m))
}

/// Reduced operator on the subsystems listed in `keep`.
///
/// `dims` lists subsystem dimensions with the first entry the most
/// significant tensor factor. The kept subsystems appear in their original
/// order regardless of the order of `keep`.
pub fn partial_trace(rho: &ComplexMatrix, dims: &[usize], keep: &[usize]) -> Result<ComplexMatrix> {
    let total: usize = dims.iter().product();
    if !rho.is_square() || rho.rows != total {
        return Err(Error::Dimension(format!(
            "operator is {}x{} but subsystem dimensions {:?} multiply to {total}",
            rho.rows, rho.cols, dims
        )));
    }
    if let Some(&bad) = keep.iter().find(|&&k| k >= dims.len()) {
        return Err(Error::Dimension(format!("subsystem index {bad} out of range")));
    }
    let kept: Vec<bool> = (0..dims.len()).map(|s| keep.contains(&s)).collect();
    let out_dim: usize = dims.iter().zip(&kept).filter(|(_, &k)| k).map(|(d, _)| d).product();

    // For each full index: (index into kept space, index into traced space).
    let split: Vec<(usize, usize)> = (0..total)
        .map(|mut idx| {
            let (mut k_idx, mut k_stride, mut t_idx, mut t_stride) = (0, 1, 0, 1);
            for (s, &d) in dims.iter().enumerate().rev() {
                let digit = idx % d;
                idx /= d;
                if kept[s] {
                    k_idx += digit * k_stride;
                    k_stride *= d;
                } else {
                    t_idx += digit * t_stride;
                    t_stride *= d;
                }
            }
            (k_idx, t_idx)
        })
        .collect();

    let mut out = ComplexMatrix::zeros(out_dim, out_dim);
    for (i, &(ki, ti)) in split.iter().enumerate() {
        for (j, &(kj, tj)) in split.iter().enumerate() {
            if ti == tj {
                out[(ki, kj)] += rho.get(i, j);
            }
        }
    }
    Ok(out)
}

/// Spectral decomposition of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct HermitianEig {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors stored as columns, in eigenvalue order.
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEig {
    /// `V f(Λ) V†`.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        let fl: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n).map(|k| v.get(i, k) * v.get(j, k).conj() * fl[k]).sum()
        })
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.apply(|l| l)
    }

    pub fn eigenvector(&self, k: usize) -> ComplexMatrix {
        let v = &self.eigenvectors;
        ComplexMatrix::from_fn(v.rows(), 1, |i, _| v.get(i, k))
    }
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// The input is hermitized first. Eigenvalues come back ascending and each
/// eigenvector has its first non-negligible component real and positive.
pub fn herm_eig(m: &ComplexMatrix) -> Result<HermitianEig> {
    if !m.is_square() {
        return Err(Error::Dimension(format!("eigendecomposition of a {}x{} matrix", m.rows, m.cols)));
    }
    let n = m.rows;
    let mut a = m.hermitize();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);

    for _ in 0..MAX_JACOBI_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| a.get(i, j).norm_sqr())
            .sum();
        if off.sqrt() <= 1e-17 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                jacobi_rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(i, i).re.total_cmp(&a.get(j, j).re));
    let eigenvalues = order.iter().map(|&k| a.get(k, k).re).collect();
    let mut eigenvectors = ComplexMatrix::from_fn(n, n, |i, j| v.get(i, order[j]));
    for col in 0..n {
        let lead = (0..n).map(|i| eigenvectors.get(i, col)).find(|z| z.norm() > 1e-12);
        if let Some(z) = lead {
            let phase = z.conj() / z.norm();
            for i in 0..n {
                eigenvectors[(i, col)] *= phase;
            }
        }
    }
    Ok(HermitianEig { eigenvalues, eigenvectors })
}

// One rotation zeroing a[p][q]: J = diag-phase * real Givens, a <- J† a J, v <- v J.
fn jacobi_rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let g = a.get(p, q);
    let abs_g = g.norm();
    if abs_g < 1e-300 {
        return;
    }
    let n = a.rows;
    let phase = (g / abs_g).conj();
    let theta = (a.get(q, q).re - a.get(p, p).re) / (2.0 * abs_g);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let (jpp, jpq, jqp, jqq) = (C64::new(c, 0.0), C64::new(s, 0.0), phase * -s, phase * c);

    for k in 0..n {
        let (akp, akq) = (a.get(k, p), a.get(k, q));
        a[(k, p)] = akp * jpp + akq * jqp;
        a[(k, q)] = akp * jpq + akq * jqq;
        let (vkp, vkq) = (v.get(k, p), v.get(k, q));
        v[(k, p)] = vkp * jpp + vkq * jqp;
        v[(k, q)] = vkp * jpq + vkq * jqq;
    }
    for k in 0..n {
        let (apk, aqk) = (a.get(p, k), a.get(q, k));
        a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
        a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    a[(p, q)] = C64::default();
    a[(q, p)] = C64::default();
    a[(p, p)] = C64::new(a.get(p, p).re, 0.0);
    a[(q, q)] = C64::new(a.get(q, q).re, 0.0);
}

/// Eigenvalues this close to zero (relative to the spectral scale) are
/// rounding noise and are set to zero before taking roots.
pub fn rounding_floor(eig: &HermitianEig) -> f64 {
    let n = eig.eigenvalues.len() as f64;
    let scale = eig.eigenvalues.iter().fold(0.0_f64, |m, l| m.max(l.abs()));
    16.0 * n * f64::EPSILON * scale
}

/// Principal square root of a positive semidefinite matrix.
pub fn sqrt_psd(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = herm_eig(m)?;
    let min = eig.eigenvalues[0];
    if min < -PSD_FLOOR {
        return Err(Error::NotPsd { min_eigenvalue: min });
    }
    let floor = rounding_floor(&eig);
    Ok(eig.apply(|l| if l <= floor { 0.0 } else { l.sqrt() }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut impl Rng, r: usize, c: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(r, c, |_, _| c64(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
    }

    fn random_hermitian(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
        random_matrix(rng, n, n).hermitize()
    }

    fn random_psd(rng: &mut impl Rng, n: usize) -> ComplexMatrix {
        let g = random_matrix(rng, n, n);
        &g * &g.adjoint()
    }

    #[test]
    fn kron_identity_and_projectors() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(kron(&i2, &i2), ComplexMatrix::identity(4));
        let p0 = ComplexMatrix::diag_real(&[1.0, 0.0]);
        let p1 = ComplexMatrix::diag_real(&[0.0, 1.0]);
        assert_eq!(kron(&p0, &p1), ComplexMatrix::diag_real(&[0.0, 1.0, 0.0, 0.0]));
    }

    #[test]
    fn kron_matches_index_loop() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = random_matrix(&mut rng, 2, 2);
        let b = random_matrix(&mut rng, 2, 2);
        let k = kron(&a, &b);
        for i in 0..2 {
            for j in 0..2 {
                for r in 0..2 {
                    for s in 0..2 {
                        assert_eq!(k.get(2 * i + r, 2 * j + s), a.get(i, j) * b.get(r, s));
                    }
                }
            }
        }
    }

    #[test]
    fn kron_rectangular_shape() {
        let ket = ComplexMatrix::column(&[c64(1.0, 0.0), c64(0.0, 1.0)]);
        let k = kron(&ket, &ComplexMatrix::identity(2));
        assert_eq!((k.rows(), k.cols()), (4, 2));
        assert_eq!(k.get(3, 1), c64(0.0, 1.0));
    }

    #[test]
    fn partial_trace_of_singlet_is_maximally_mixed() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let ket = ComplexMatrix::column(&[c64(0.0, 0.0), c64(s, 0.0), c64(-s, 0.0), c64(0.0, 0.0)]);
        let rho = ComplexMatrix::projector(&ket);
        let half = ComplexMatrix::identity(2).scale_real(0.5);
        assert!(partial_trace(&rho, &[2, 2], &[1]).unwrap().approx_eq(&half, 1e-15));
        assert!(partial_trace(&rho, &[2, 2], &[0]).unwrap().approx_eq(&half, 1e-15));
    }

    #[test]
    fn partial_trace_of_product_state() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = random_psd(&mut rng, 2);
        let b = random_psd(&mut rng, 3);
        let ab = kron(&a, &b);
        let reduced = partial_trace(&ab, &[2, 3], &[0]).unwrap();
        assert!(reduced.approx_eq(&a.scale(b.trace()), 1e-12));
        let reduced_b = partial_trace(&ab, &[2, 3], &[1]).unwrap();
        assert!(reduced_b.approx_eq(&b.scale(a.trace()), 1e-12));
    }

    #[test]
    fn partial_trace_trace_duality() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let rho = random_psd(&mut rng, 8);
            let x = random_hermitian(&mut rng, 2);
            let i2 = ComplexMatrix::identity(2);
            let lhs = (&partial_trace(&rho, &[2, 2, 2], &[0]).unwrap() * &x).trace();
            let rhs = (&rho * &kron_all(&[&x, &i2, &i2])).trace();
            assert!((lhs - rhs).norm() < 1e-12);

            // Middle subsystem as well.
            let lhs = (&partial_trace(&rho, &[2, 2, 2], &[1]).unwrap() * &x).trace();
            let rhs = (&rho * &kron_all(&[&i2, &x, &i2])).trace();
            assert!((lhs - rhs).norm() < 1e-12);
        }
    }

    #[test]
    fn partial_trace_rejects_bad_dims() {
        let rho = ComplexMatrix::identity(4);
        assert!(matches!(partial_trace(&rho, &[2, 3], &[0]), Err(Error::Dimension(_))));
        assert!(matches!(partial_trace(&rho, &[2, 2], &[2]), Err(Error::Dimension(_))));
    }

    #[test]
    fn eig_of_diagonal_and_pauli_x() {
        let e = herm_eig(&ComplexMatrix::diag_real(&[2.0, 1.0])).unwrap();
        assert_eq!(e.eigenvalues, vec![1.0, 2.0]);

        let x = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]]);
        let e = herm_eig(&x).unwrap();
        assert!((e.eigenvalues[0] + 1.0).abs() < 1e-15);
        assert!((e.eigenvalues[1] - 1.0).abs() < 1e-15);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let minus = ComplexMatrix::column(&[c64(s, 0.0), c64(-s, 0.0)]);
        let plus = ComplexMatrix::column(&[c64(s, 0.0), c64(s, 0.0)]);
        assert!(e.eigenvector(0).approx_eq(&minus, 1e-15));
        assert!(e.eigenvector(1).approx_eq(&plus, 1e-15));
    }

    #[test]
    fn eig_rejects_non_square() {
        assert!(matches!(herm_eig(&ComplexMatrix::zeros(2, 3)), Err(Error::Dimension(_))));
    }

    #[test]
    fn eig_reconstructs_random_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for n in 1..=8 {
            let m = random_hermitian(&mut rng, n);
            let e = herm_eig(&m).unwrap();
            assert!(e.reconstruct().approx_eq(&m, 1e-10), "n = {n}");
            let vtv = &e.eigenvectors.adjoint() * &e.eigenvectors;
            assert!(vtv.approx_eq(&ComplexMatrix::identity(n), 1e-10));
            let sum: f64 = e.eigenvalues.iter().sum();
            assert!((sum - m.trace().re).abs() < 1e-10);
            assert!(e.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn eig_handles_degenerate_spectrum() {
        let m = ComplexMatrix::identity(4).scale_real(0.25);
        let e = herm_eig(&m).unwrap();
        assert!(e.reconstruct().approx_eq(&m, 1e-15));
    }

    #[test]
    fn sqrt_simple_cases() {
        assert!(sqrt_psd(&ComplexMatrix::identity(3)).unwrap().approx_eq(&ComplexMatrix::identity(3), 1e-15));
        let s = sqrt_psd(&ComplexMatrix::diag_real(&[4.0, 9.0])).unwrap();
        assert!(s.approx_eq(&ComplexMatrix::diag_real(&[2.0, 3.0]), 1e-14));
    }

    #[test]
    fn sqrt_squares_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 2..=8 {
            let m = random_psd(&mut rng, n);
            let s = sqrt_psd(&m).unwrap();
            assert!((&s * &s).approx_eq(&m, 1e-9));
            assert!(herm_eig(&s).unwrap().eigenvalues[0] >= -1e-12);
        }
    }

    #[test]
    fn sqrt_rejects_negative_spectrum() {
        let m = ComplexMatrix::diag_real(&[1.0, -0.1]);
        assert!(matches!(sqrt_psd(&m), Err(Error::NotPsd { .. })));
        // Within the clamp floor is accepted.
        assert!(sqrt_psd(&ComplexMatrix::diag_real(&[1.0, -1e-12])).is_ok());
    }

    #[test]
    fn construction_checks_entry_count() {
        assert!(ComplexMatrix::new(2, 2, vec![C64::default(); 3]).is_err());
        assert!(ComplexMatrix::new(2, 2, vec![C64::default(); 4]).is_ok());
    }
}
