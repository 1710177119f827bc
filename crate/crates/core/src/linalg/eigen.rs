//! Cyclic Jacobi eigenvalues for Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary and then applies the real symmetric Jacobi rotation, so the
//! combined transform is `U = D R` with `D = diag(1, e^{-i phi})` on the
//! `(p, q)` plane. The diagonal stays real throughout.

use super::{ComplexScalar, Matrix};
use crate::error::{CoherenceError, Result};
use crate::tolerance;

/// Eigenvalues of a Hermitian matrix, sorted in descending order.
pub fn hermitian_eigenvalues(h: &Matrix) -> Result<Vec<f64>> {
    if let Some((row, col, deviation)) = h.hermiticity_violation(tolerance::HERMITIAN) {
        return Err(CoherenceError::NotHermitian { row, col, deviation });
    }
    let n = h.dim();
    let mut a = h.entries().to_vec();
    // Symmetrize so rounding in the input cannot leak into the rotations.
    for i in 0..n {
        a[i * n + i] = ComplexScalar::new(a[i * n + i].re, 0.0);
        for j in (i + 1)..n {
            let avg = (a[i * n + j] + a[j * n + i].conj()) * 0.5;
            a[i * n + j] = avg;
            a[j * n + i] = avg.conj();
        }
    }

    // Absolute threshold for density-matrix scale inputs, relative beyond that.
    let threshold = tolerance::JACOBI_OFF_DIAGONAL * h.frobenius_sqr().sqrt().max(1.0);

    let mut off = off_diagonal_norm(&a, n);
    let mut sweeps = 0;
    while off >= threshold {
        if sweeps == tolerance::JACOBI_MAX_SWEEPS {
            return Err(CoherenceError::NoConvergence { sweeps, off_diagonal: off });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, n, p, q);
            }
        }
        sweeps += 1;
        off = off_diagonal_norm(&a, n);
    }

    let mut eigenvalues: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    eigenvalues.sort_by(|x, y| y.total_cmp(x));
    Ok(eigenvalues)
}

fn off_diagonal_norm(a: &[ComplexScalar], n: usize) -> f64 {
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[i * n + j].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

fn rotate(a: &mut [ComplexScalar], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let r = apq.norm();
    if r < f64::MIN_POSITIVE {
        return;
    }
    let app = a[p * n + p].re;
    let aqq = a[q * n + q].re;
    let phase = apq / r; // e^{i phi}

    // Numerically stable tangent of the rotation angle (smaller root).
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta.is_infinite() {
        0.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // U = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on the (p, q) plane.
    let u_pp = ComplexScalar::new(c, 0.0);
    let u_pq = ComplexScalar::new(s, 0.0);
    let u_qp = -phase.conj() * s;
    let u_qq = phase.conj() * c;

    // A <- A U (columns p, q).
    for k in 0..n {
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = akp * u_pp + akq * u_qp;
        a[k * n + q] = akp * u_pq + akq * u_qq;
    }
    // A <- U^dagger A (rows p, q).
    for k in 0..n {
        let apk = a[p * n + k];
        let aqk = a[q * n + k];
        a[p * n + k] = u_pp.conj() * apk + u_qp.conj() * aqk;
        a[q * n + k] = u_pq.conj() * apk + u_qq.conj() * aqk;
    }

    a[p * n + p] = ComplexScalar::new(app - t * r, 0.0);
    a[q * n + q] = ComplexScalar::new(aqq + t * r, 0.0);
    a[p * n + q] = ComplexScalar::new(0.0, 0.0);
    a[q * n + p] = ComplexScalar::new(0.0, 0.0);
}
