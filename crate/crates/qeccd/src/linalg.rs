//! Dense complex matrix helpers and a Jacobi eigensolver for small Hermitian
//! matrices. Everything in this crate is 32x32 or smaller, so a hand-rolled
//! cyclic Jacobi iteration is accurate and keeps the build free of BLAS.

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;

/// Complex square matrix used throughout the crate.
pub type CMat = Array2<C64>;
/// Complex vector.
pub type CVec = Array1<C64>;

pub const ONE: C64 = C64::new(1.0, 0.0);
pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

pub fn identity(n: usize) -> CMat {
    Array2::eye(n)
}

pub fn dagger(m: &CMat) -> CMat {
    m.t().mapv(|z| z.conj())
}

pub fn trace(m: &CMat) -> C64 {
    m.diag().sum()
}

/// Kronecker product, row-major convention: `(a ⊗ b)[(i*p+k, j*q+l)] = a[(i,j)] b[(k,l)]`.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    let (ar, ac) = a.dim();
    let (br, bc) = b.dim();
    let mut out = Array2::zeros((ar * br, ac * bc));
    for i in 0..ar {
        for j in 0..ac {
            let aij = a[(i, j)];
            for k in 0..br {
                for l in 0..bc {
                    out[(i * br + k, j * bc + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Row-major vectorization of a square matrix.
pub fn vectorize(m: &CMat) -> CVec {
    CVec::from_iter(m.iter().cloned())
}

/// Inverse of [`vectorize`].
pub fn devectorize(v: &CVec, n: usize) -> CMat {
    Array2::from_shape_vec((n, n), v.to_vec()).expect("length must be n*n")
}

pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    max_abs(&(a - b))
}

pub fn is_hermitian(m: &CMat, tol: f64) -> bool {
    max_abs_diff(m, &dagger(m)) <= tol
}

/// Hermiticity defect `max |m - m†|`.
pub fn hermiticity_defect(m: &CMat) -> f64 {
    max_abs_diff(m, &dagger(m))
}

/// Eigenvalues of a Hermitian matrix, ascending, via cyclic Jacobi rotations.
///
/// The input is symmetrized first; callers should check [`is_hermitian`]
/// themselves when a defect must be an error.
pub fn hermitian_eigenvalues(m: &CMat) -> Vec<f64> {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "matrix must be square");
    let mut a = (m + &dagger(m)).mapv(|z| z * 0.5);
    let scale = max_abs(&a).max(1.0);
    let tol = 1e-15 * scale;

    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a[(p, q)].norm());
            }
        }
        if off <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let g = a[(p, q)].norm();
                if g <= tol * 1e-2 {
                    continue;
                }
                let phase = a[(p, q)] / g;
                let alpha = a[(p, p)].re;
                let beta = a[(q, q)].re;
                let tau = (beta - alpha) / (2.0 * g);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                a[(p, p)] = C64::new(alpha - t * g, 0.0);
                a[(q, q)] = C64::new(beta + t * g, 0.0);
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    let new_kp = akp * c - akq * s * phase.conj();
                    let new_kq = akp * s * phase + akq * c;
                    a[(k, p)] = new_kp;
                    a[(p, k)] = new_kp.conj();
                    a[(k, q)] = new_kq;
                    a[(q, k)] = new_kq.conj();
                }
            }
        }
    }

    let mut ev: Vec<f64> = a.diag().iter().map(|z| z.re).collect();
    ev.sort_by(|x, y| x.partial_cmp(y).unwrap());
    ev
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(m: &CMat) -> f64 {
    hermitian_eigenvalues(m)[0]
}
