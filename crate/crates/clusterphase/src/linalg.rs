//! Dense complex linear algebra helpers shared by the tensor, channel and
//! engine modules.
//!
//! Everything here is desk-scale: matrices of dimension at most a few
//! thousand, held in `nalgebra` dynamic matrices over `Complex<f64>`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

pub const ONE: C64 = C64::new(1.0, 0.0);
pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const I_UNIT: C64 = C64::new(0.0, 1.0);

pub fn identity(dim: usize) -> CMat {
    CMat::identity(dim, dim)
}

/// Kronecker product with the left factor on the most significant index.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// Kronecker product of a list of factors, first factor most significant.
pub fn kron_all(factors: &[&CMat]) -> CMat {
    let mut out = CMat::identity(1, 1);
    for f in factors {
        out = kron(&out, f);
    }
    out
}

pub fn pauli_x() -> CMat {
    CMat::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO])
}

pub fn pauli_y() -> CMat {
    CMat::from_row_slice(2, 2, &[ZERO, -I_UNIT, I_UNIT, ZERO])
}

pub fn pauli_z() -> CMat {
    CMat::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE])
}

pub fn hadamard() -> CMat {
    let s = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    CMat::from_row_slice(2, 2, &[s, s, s, -s])
}

/// Single-qubit operator embedded at `target` within `n` qubits
/// (qubit 0 on the most significant index).
pub fn embed(op: &CMat, target: usize, n: usize) -> CMat {
    let mut out = CMat::identity(1, 1);
    for k in 0..n {
        let factor = if k == target {
            op.clone()
        } else {
            CMat::identity(2, 2)
        };
        out = kron(&out, &factor);
    }
    out
}

/// Controlled-Z between two qubits of an `n`-qubit register.
pub fn cz(a: usize, b: usize, n: usize) -> CMat {
    let dim = 1 << n;
    let mut m = CMat::zeros(dim, dim);
    for basis in 0..dim {
        let ba = (basis >> (n - 1 - a)) & 1;
        let bb = (basis >> (n - 1 - b)) & 1;
        let sign = if ba == 1 && bb == 1 { -ONE } else { ONE };
        m[(basis, basis)] = sign;
    }
    m
}

/// Tensor power of single-qubit Hadamards.
pub fn hadamard_all(n: usize) -> CMat {
    let h = hadamard();
    let mut out = CMat::identity(1, 1);
    for _ in 0..n {
        out = kron(&out, &h);
    }
    out
}

/// Diagonal Z-type Pauli `prod_k Z_k^{bits_k}` on `n` qubits.
pub fn z_string(bits: u64, n: usize) -> CMat {
    let dim = 1 << n;
    let mut m = CMat::zeros(dim, dim);
    for basis in 0..dim {
        let parity = ((basis as u64) & bits).count_ones() & 1;
        m[(basis, basis)] = if parity == 1 { -ONE } else { ONE };
    }
    m
}

pub fn dagger(m: &CMat) -> CMat {
    m.adjoint()
}

pub fn trace(m: &CMat) -> C64 {
    m.diagonal().sum()
}

pub fn frobenius_norm(m: &CMat) -> f64 {
    m.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Eigendecomposition of a Hermitian matrix; eigenvalues ascending.
pub fn hermitian_eigen(m: &CMat) -> (Vec<f64>, CMat) {
    let sym = m.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..sym.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| sym.eigenvalues[i].partial_cmp(&sym.eigenvalues[j]).unwrap());
    let vals: Vec<f64> = order.iter().map(|&i| sym.eigenvalues[i]).collect();
    let dim = m.nrows();
    let mut vecs = CMat::zeros(dim, dim);
    for (new, &old) in order.iter().enumerate() {
        vecs.set_column(new, &sym.eigenvectors.column(old));
    }
    (vals, vecs)
}

/// All eigenvalues of a general complex matrix.
///
/// Over the complex field the Schur form is genuinely triangular, so the
/// diagonal carries every eigenvalue; the `None` branch only fires when the
/// QR iteration fails to converge, in which case the Schur diagonal is still
/// the best available estimate.
pub fn complex_eigenvalues(m: &CMat) -> Vec<C64> {
    match m.clone().eigenvalues() {
        Some(v) => v.iter().copied().collect(),
        None => {
            let (_, t) = m.clone().schur().unpack();
            t.diagonal().iter().copied().collect()
        }
    }
}

/// Hermitian square root of a positive semidefinite matrix. Small negative
/// eigenvalues from roundoff are clamped to zero.
pub fn psd_sqrt(m: &CMat) -> CMat {
    let (vals, vecs) = hermitian_eigen(m);
    let dim = m.nrows();
    let mut d = CMat::zeros(dim, dim);
    for (i, &v) in vals.iter().enumerate() {
        d[(i, i)] = C64::new(v.max(0.0).sqrt(), 0.0);
    }
    &vecs * d * vecs.adjoint()
}

/// Uhlmann fidelity between two density matrices.
pub fn fidelity(rho: &CMat, sigma: &CMat) -> f64 {
    let sqrt_rho = psd_sqrt(rho);
    let inner = &sqrt_rho * sigma * &sqrt_rho;
    let (vals, _) = hermitian_eigen(&psd_sqrt(&inner));
    let t: f64 = vals.iter().map(|v| v.max(0.0)).sum();
    t * t
}

/// Trace distance between two density matrices.
pub fn trace_distance(rho: &CMat, sigma: &CMat) -> f64 {
    let (vals, _) = hermitian_eigen(&(rho - sigma));
    0.5 * vals.iter().map(|v| v.abs()).sum::<f64>()
}

/// Partial trace over the second (junk) factor of dimension `d_b`.
pub fn partial_trace_second(m: &CMat, d_a: usize, d_b: usize) -> CMat {
    assert_eq!(m.nrows(), d_a * d_b);
    let mut out = CMat::zeros(d_a, d_a);
    for a in 0..d_a {
        for b in 0..d_a {
            let mut s = ZERO;
            for j in 0..d_b {
                s += m[(a * d_b + j, b * d_b + j)];
            }
            out[(a, b)] = s;
        }
    }
    out
}

/// Partial trace over the first (logical) factor of dimension `d_a`.
pub fn partial_trace_first(m: &CMat, d_a: usize, d_b: usize) -> CMat {
    assert_eq!(m.nrows(), d_a * d_b);
    let mut out = CMat::zeros(d_b, d_b);
    for i in 0..d_b {
        for j in 0..d_b {
            let mut s = ZERO;
            for a in 0..d_a {
                s += m[(a * d_b + i, a * d_b + j)];
            }
            out[(i, j)] = s;
        }
    }
    out
}

/// Global-phase-insensitive distance `min_phi ||A - e^{i phi} B||_F`.
pub fn distance_up_to_phase(a: &CMat, b: &CMat) -> f64 {
    let overlap = trace(&(dagger(a) * b));
    if overlap.norm() < 1e-300 {
        return (frobenius_norm(a).powi(2) + frobenius_norm(b).powi(2)).sqrt();
    }
    let phase = overlap / overlap.norm();
    frobenius_norm(&(a - b * phase))
}
