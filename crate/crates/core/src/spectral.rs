//! Dense Hermitian matrices built from gain graphs and their real spectra.
//!
//! Eigenvalues come from a cyclic complex Jacobi iteration. Rank is computed
//! twice: from the zero cluster of the spectrum and, independently, by full
//! pivot Gaussian elimination.

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::graph::GainGraph;

/// Largest order the dense routines accept.
pub const MAX_ORDER: usize = 256;

const CONVERGENCE_REL: f64 = 1e-12;
const CLUSTER_REL: f64 = 1e-7;
const PIVOT_REL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("alpha = {0} is outside [0, 1]")]
    AlphaOutOfRange(f64),
    #[error("Jacobi iteration did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("matrix order {0} exceeds limit {MAX_ORDER}")]
    TooLarge(usize),
    #[error("matrix is not Hermitian at ({0}, {1})")]
    NotHermitian(usize, usize),
    #[error("rows have inconsistent lengths")]
    NotSquare,
    #[error("position {position} out of range for order {n}")]
    PositionOutOfRange { position: usize, n: usize },
}

/// Square complex matrix with `h[j][i] = conj(h[i][j])` and a real diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl HermitianMatrix {
    pub fn zeros(n: usize) -> Self {
        HermitianMatrix {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds the matrix from its upper triangle. `f(i, j)` is called for
    /// `i <= j` only; the imaginary part of diagonal values is discarded.
    pub fn from_upper<F>(n: usize, mut f: F) -> Self
    where
        F: FnMut(usize, usize) -> Complex64,
    {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(f(i, i).re, 0.0);
            for j in i + 1..n {
                let z = f(i, j);
                m.data[i * n + j] = z;
                m.data[j * n + i] = z.conj();
            }
        }
        m
    }

    /// Validates a full matrix given by rows.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self, SpectralError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(SpectralError::NotSquare);
        }
        for i in 0..n {
            for j in i..n {
                if (rows[i][j] - rows[j][i].conj()).norm() > 1e-12 {
                    return Err(SpectralError::NotHermitian(i, j));
                }
            }
        }
        Ok(Self::from_upper(n, |i, j| rows[i][j]))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.data[i * self.n + i].re).sum()
    }

    /// Gershgorin bound on the spectral radius.
    pub fn gershgorin_radius(&self) -> f64 {
        (0..self.n)
            .map(|i| {
                self.data[i * self.n..(i + 1) * self.n]
                    .iter()
                    .map(|z| z.norm())
                    .sum::<f64>()
            })
            .fold(0.0, f64::max)
    }

    /// `self - lambda·I`.
    pub fn shifted(&self, lambda: f64) -> Self {
        let mut m = self.clone();
        for i in 0..self.n {
            m.data[i * self.n + i].re -= lambda;
        }
        m
    }

    /// Matrix-vector product.
    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        (0..self.n)
            .map(|i| {
                self.data[i * self.n..(i + 1) * self.n]
                    .iter()
                    .zip(x)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }
}

/// `A(Φ)`: entry `(s, t)` is `φ(e_{s,t})` when adjacent.
pub fn adjacency_matrix(g: &GainGraph) -> HermitianMatrix {
    let n = g.order();
    let mut m = HermitianMatrix::zeros(n);
    for e in g.edges() {
        let z = e.gain.to_complex();
        m.data[e.u * n + e.v] = z;
        m.data[e.v * n + e.u] = z.conj();
    }
    m
}

/// `A_α(Φ) = αD(Φ) + (1-α)A(Φ)`.
pub fn a_alpha_matrix(g: &GainGraph, alpha: f64) -> Result<HermitianMatrix, SpectralError> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(SpectralError::AlphaOutOfRange(alpha));
    }
    let n = g.order();
    let mut m = adjacency_matrix(g);
    for z in &mut m.data {
        *z *= 1.0 - alpha;
    }
    for v in 0..n {
        m.data[v * n + v] = Complex64::new(alpha * g.degree(v) as f64, 0.0);
    }
    Ok(m)
}

/// Ascending eigenvalues with tolerance clusters.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    /// `(representative, multiplicity)` in ascending order.
    pub clusters: Vec<(f64, usize)>,
    #[serde(rename = "tolerance")]
    pub cluster_tolerance: f64,
}

impl Spectrum {
    fn from_sorted(eigenvalues: Vec<f64>, tolerance: f64) -> Self {
        let mut clusters: Vec<(f64, usize)> = Vec::new();
        let mut start = 0;
        for k in 1..=eigenvalues.len() {
            if k == eigenvalues.len() || eigenvalues[k] - eigenvalues[k - 1] > tolerance {
                let members = &eigenvalues[start..k];
                let mean = members.iter().sum::<f64>() / members.len() as f64;
                clusters.push((mean, members.len()));
                start = k;
            }
        }
        Spectrum {
            eigenvalues,
            clusters,
            cluster_tolerance: tolerance,
        }
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Multiplicity of the cluster within tolerance of `lambda`, or 0.
    pub fn multiplicity(&self, lambda: f64) -> usize {
        self.clusters
            .iter()
            .find(|(rep, _)| (rep - lambda).abs() <= self.cluster_tolerance)
            .map_or(0, |&(_, m)| m)
    }

    pub fn max_multiplicity(&self) -> usize {
        self.clusters.iter().map(|&(_, m)| m).max().unwrap_or(0)
    }

    /// Multiplicity of the zero cluster.
    pub fn nullity(&self) -> usize {
        self.multiplicity(0.0)
    }
}

/// `m(λ)` read off a spectrum.
pub fn cluster_multiplicity(s: &Spectrum, lambda: f64) -> usize {
    s.multiplicity(lambda)
}

fn cluster_tolerance(h: &HermitianMatrix) -> f64 {
    CLUSTER_REL * h.gershgorin_radius().max(1.0)
}

/// Eigen decomposition by cyclic Jacobi. Returns eigenvalues (unsorted) and,
/// when requested, the unitary `V` (row-major) with `H V = V diag(λ)`.
fn jacobi(
    h: &HermitianMatrix,
    want_vectors: bool,
) -> Result<(Vec<f64>, Option<Vec<Complex64>>), SpectralError> {
    let n = h.n;
    if n > MAX_ORDER {
        return Err(SpectralError::TooLarge(n));
    }
    let mut a = h.data.clone();
    let mut v = want_vectors.then(|| HermitianMatrix::identity(n).data);
    let target = CONVERGENCE_REL * h.frobenius_norm().max(1.0);
    let max_sweeps = 100 * n.max(1);

    let off_norm = |a: &[Complex64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i * n + j].norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    while off_norm(&a) >= target {
        if sweeps == max_sweeps {
            return Err(SpectralError::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                // phase that makes the pivot real, then a real rotation
                let phase_conj = (apq / r).conj();
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let theta = (aqq - app) / (2.0 * r);
                let t = if theta.is_finite() {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                } else {
                    0.0
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let x = a[k * n + p];
                    let y = a[k * n + q] * phase_conj;
                    let new_p = x * c - y * s;
                    let new_q = x * s + y * c;
                    a[k * n + p] = new_p;
                    a[k * n + q] = new_q;
                    a[p * n + k] = new_p.conj();
                    a[q * n + k] = new_q.conj();
                }
                a[p * n + p] = Complex64::new(app - t * r, 0.0);
                a[q * n + q] = Complex64::new(aqq + t * r, 0.0);
                a[p * n + q] = Complex64::new(0.0, 0.0);
                a[q * n + p] = Complex64::new(0.0, 0.0);

                if let Some(v) = v.as_mut() {
                    for k in 0..n {
                        let x = v[k * n + p];
                        let y = v[k * n + q] * phase_conj;
                        v[k * n + p] = x * c - y * s;
                        v[k * n + q] = x * s + y * c;
                    }
                }
            }
        }
    }
    Ok(((0..n).map(|i| a[i * n + i].re).collect(), v))
}

/// All eigenvalues of `h`, ascending, clustered at the Gershgorin-scaled tolerance.
pub fn hermitian_eigenvalues(h: &HermitianMatrix) -> Result<Spectrum, SpectralError> {
    let (mut values, _) = jacobi(h, false)?;
    values.sort_by(f64::total_cmp);
    Ok(Spectrum::from_sorted(values, cluster_tolerance(h)))
}

/// Eigenvalues with their orthonormal eigenvectors, sorted ascending.
/// Vector `k` is the `k`-th entry of the returned list.
pub fn hermitian_eigenpairs(
    h: &HermitianMatrix,
) -> Result<(Spectrum, Vec<Vec<Complex64>>), SpectralError> {
    let n = h.n;
    let (values, v) = jacobi(h, true)?;
    let v = v.expect("vectors requested");
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let sorted: Vec<f64> = order.iter().map(|&k| values[k]).collect();
    let vectors = order
        .iter()
        .map(|&k| (0..n).map(|i| v[i * n + k]).collect())
        .collect();
    Ok((Spectrum::from_sorted(sorted, cluster_tolerance(h)), vectors))
}

/// `n - η`, with `η` the multiplicity of the zero cluster.
pub fn rank_by_spectrum(h: &HermitianMatrix) -> Result<usize, SpectralError> {
    Ok(h.n - hermitian_eigenvalues(h)?.nullity())
}

/// Row-major rectangular reduction with full pivoting. Leaves the leading
/// `rank × rank` block upper triangular in permuted coordinates and returns
/// `(rank, column permutation)`.
fn full_pivot_reduce(
    m: &mut [Complex64],
    rows: usize,
    cols: usize,
    tau: f64,
) -> (usize, Vec<usize>) {
    let mut perm: Vec<usize> = (0..cols).collect();
    let mut rank = 0;
    while rank < rows.min(cols) {
        let (mut bi, mut bj, mut best) = (rank, rank, -1.0);
        for i in rank..rows {
            for j in rank..cols {
                let x = m[i * cols + j].norm();
                if x > best {
                    (bi, bj, best) = (i, j, x);
                }
            }
        }
        if best <= tau {
            break;
        }
        if bi != rank {
            for j in 0..cols {
                m.swap(rank * cols + j, bi * cols + j);
            }
        }
        if bj != rank {
            for i in 0..rows {
                m.swap(i * cols + rank, i * cols + bj);
            }
            perm.swap(rank, bj);
        }
        let pivot = m[rank * cols + rank];
        for i in rank + 1..rows {
            let f = m[i * cols + rank] / pivot;
            if f == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in rank..cols {
                let sub = f * m[rank * cols + j];
                m[i * cols + j] -= sub;
            }
        }
        rank += 1;
    }
    (rank, perm)
}

/// Number of full-pivot elimination pivots above `1e-8·‖H‖_F`.
pub fn rank_by_elimination(h: &HermitianMatrix) -> usize {
    let mut m = h.data.clone();
    full_pivot_reduce(&mut m, h.n, h.n, PIVOT_REL * h.frobenius_norm()).0
}

/// A unit kernel vector with exact zeros at prescribed positions.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelWitness {
    pub vector: Vec<Complex64>,
    pub vanishing_positions: Vec<usize>,
}

impl KernelWitness {
    /// `‖B·y‖`.
    pub fn residual(&self, b: &HermitianMatrix) -> f64 {
        b.apply(&self.vector)
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// Finds `y ∈ ker(B)`, `‖y‖ = 1`, with `y_p = 0` for every `p` in
/// `positions`. Returns `None` when `η(B) <= |positions|`, where such a
/// vector need not exist.
pub fn kernel_witness(
    b: &HermitianMatrix,
    positions: &[usize],
) -> Result<Option<KernelWitness>, SpectralError> {
    let n = b.n;
    let mut positions = positions.to_vec();
    positions.sort_unstable();
    positions.dedup();
    if let Some(&position) = positions.iter().find(|&&p| p >= n) {
        return Err(SpectralError::PositionOutOfRange { position, n });
    }
    let (spectrum, vectors) = hermitian_eigenpairs(b)?;
    let tol = spectrum.cluster_tolerance;
    let kernel: Vec<&Vec<Complex64>> = spectrum
        .eigenvalues
        .iter()
        .zip(&vectors)
        .filter(|(l, _)| l.abs() <= tol)
        .map(|(_, v)| v)
        .collect();
    let eta = kernel.len();
    let s = positions.len();
    if eta <= s {
        return Ok(None);
    }

    // coefficients c with (K c)_p = 0 for all p: null vector of the s×η restriction
    let mut coeff = vec![Complex64::new(0.0, 0.0); eta];
    if s == 0 {
        coeff[0] = Complex64::new(1.0, 0.0);
    } else {
        let mut m: Vec<Complex64> = positions
            .iter()
            .flat_map(|&p| kernel.iter().map(move |v| v[p]))
            .collect();
        let scale = m.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let (rank, perm) = full_pivot_reduce(&mut m, s, eta, 1e-12 * scale);
        // free variable in permuted slot `rank`, back substitute the pivots
        let mut x = vec![Complex64::new(0.0, 0.0); eta];
        x[rank] = Complex64::new(1.0, 0.0);
        for i in (0..rank).rev() {
            let mut acc = m[i * eta + rank];
            for j in i + 1..rank {
                acc += m[i * eta + j] * x[j];
            }
            x[i] = -acc / m[i * eta + i];
        }
        for (slot, &col) in perm.iter().enumerate() {
            coeff[col] = x[slot];
        }
    }

    let mut y = vec![Complex64::new(0.0, 0.0); n];
    for (c, v) in coeff.iter().zip(&kernel) {
        for (yi, vi) in y.iter_mut().zip(v.iter()) {
            *yi += c * vi;
        }
    }
    for &p in &positions {
        y[p] = Complex64::new(0.0, 0.0);
    }
    let norm = y.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in &mut y {
        *z /= norm;
    }
    Ok(Some(KernelWitness {
        vector: y,
        vanishing_positions: positions,
    }))
}
