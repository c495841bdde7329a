//! Small dense linear-algebra kernels used across the crate.
//!
//! Problem sizes here are a few hundred unknowns at most, so plain dense
//! factorizations are adequate and keep the numerics fully deterministic.

use ndarray::{Array1, Array2};

/// Cholesky factorization of a symmetric positive-definite matrix.
/// Returns the lower factor L with A = L L^T.
pub fn cholesky(a: &Array2<f64>) -> Result<Array2<f64>, String> {
    let n = a.nrows();
    assert_eq!(n, a.ncols());
    let mut l = Array2::<f64>::zeros((n, n));
    for j in 0..n {
        let mut d = a[[j, j]];
        for k in 0..j {
            d -= l[[j, k]] * l[[j, k]];
        }
        if d <= 0.0 || !d.is_finite() {
            return Err(format!("matrix not positive definite at pivot {j} (d={d:.3e})"));
        }
        let dj = d.sqrt();
        l[[j, j]] = dj;
        for i in (j + 1)..n {
            let mut s = a[[i, j]];
            for k in 0..j {
                s -= l[[i, k]] * l[[j, k]];
            }
            l[[i, j]] = s / dj;
        }
    }
    Ok(l)
}

/// Solves A x = b given the Cholesky factor L of A.
pub fn cholesky_solve(l: &Array2<f64>, b: &Array1<f64>) -> Array1<f64> {
    let n = l.nrows();
    let mut y = b.clone();
    for i in 0..n {
        let mut s = y[i];
        for k in 0..i {
            s -= l[[i, k]] * y[k];
        }
        y[i] = s / l[[i, i]];
    }
    for i in (0..n).rev() {
        let mut s = y[i];
        for k in (i + 1)..n {
            s -= l[[k, i]] * y[k];
        }
        y[i] = s / l[[i, i]];
    }
    y
}

/// Solves the SPD system A x = b by Cholesky factorization.
pub fn solve_spd(a: &Array2<f64>, b: &Array1<f64>) -> Result<Array1<f64>, String> {
    let l = cholesky(a)?;
    Ok(cholesky_solve(&l, b))
}

/// Eigendecomposition of a symmetric matrix by the cyclic Jacobi method.
/// Returns (eigenvalues ascending, eigenvectors as columns).
pub fn sym_eig(a: &Array2<f64>) -> (Array1<f64>, Array2<f64>) {
    let n = a.nrows();
    assert_eq!(n, a.ncols());
    let mut m = a.clone();
    let mut v = Array2::<f64>::eye(n);
    let scale: f64 = m.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-300);
    let tol = 1e-14 * scale;
    for _sweep in 0..100 {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += m[[p, q]].abs();
            }
        }
        if off <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[[p, q]];
                if apq.abs() <= tol / (n * n) as f64 {
                    continue;
                }
                let app = m[[p, p]];
                let aqq = m[[q, q]];
                let theta = 0.5 * (aqq - app) / apq;
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    1.0 / (theta - (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[[k, p]];
                    let mkq = m[[k, q]];
                    m[[k, p]] = c * mkp - s * mkq;
                    m[[k, q]] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[[p, k]];
                    let mqk = m[[q, k]];
                    m[[p, k]] = c * mpk - s * mqk;
                    m[[q, k]] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[[k, p]];
                    let vkq = v[[k, q]];
                    v[[k, p]] = c * vkp - s * vkq;
                    v[[k, q]] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| m[[i, i]].partial_cmp(&m[[j, j]]).unwrap());
    let vals = Array1::from_iter(idx.iter().map(|&i| m[[i, i]]));
    let mut vecs = Array2::<f64>::zeros((n, n));
    for (newcol, &oldcol) in idx.iter().enumerate() {
        for r in 0..n {
            vecs[[r, newcol]] = v[[r, oldcol]];
        }
    }
    (vals, vecs)
}

/// Builds a Householder-style orthogonal matrix whose first row maps the
/// unit vector e_1 onto the given unit vector `target` (|target| = 1).
/// Columns of the result form an orthonormal basis with R e_1 = target.
pub fn rotation_e1_to(target: &Array1<f64>) -> Array2<f64> {
    let n = target.len();
    let mut e1 = Array1::<f64>::zeros(n);
    e1[0] = 1.0;
    let mut w = target - &e1;
    let wn = w.dot(&w).sqrt();
    if wn < 1e-14 {
        return Array2::eye(n);
    }
    w /= wn;
    let mut h = Array2::<f64>::eye(n);
    for i in 0..n {
        for j in 0..n {
            h[[i, j]] -= 2.0 * w[i] * w[j];
        }
    }
    // Reflection maps e1 -> target up to sign: H e1 = e1 - 2 w (w.e1).
    h
}
