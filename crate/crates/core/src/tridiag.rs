//! Symmetric tridiagonal eigensolver.
//!
//! Implicit-shift QL with eigenvector accumulation, derived from the Algol
//! procedure `tql2` (Bowdler, Martin, Reinsch, Wilkinson; EISPACK lineage),
//! specialized to matrices that are already tridiagonal. Eigenvalues are
//! returned in ascending order; the accumulated transformation matrix is
//! orthogonal to machine precision, so eigenvectors come out orthonormal.

use crate::error::{Error, Result};

/// Full eigendecomposition of a symmetric tridiagonal matrix.
pub struct TridiagEigen {
    n: usize,
    /// Eigenvalues, ascending.
    pub values: Vec<f64>,
    /// Row-major n x n matrix; column `s` is the eigenvector of `values[s]`.
    vectors: Vec<f64>,
}

impl TridiagEigen {
    /// Component `row` of eigenvector `s`.
    #[inline]
    pub fn component(&self, row: usize, s: usize) -> f64 {
        self.vectors[row * self.n + s]
    }
}

const MAX_QL_ITERATIONS: usize = 50;

/// Eigendecompose the symmetric tridiagonal matrix with diagonal `diag`
/// and off-diagonal `offdiag` (`offdiag.len() == diag.len() - 1`).
pub fn eigh_tridiagonal(diag: &[f64], offdiag: &[f64]) -> Result<TridiagEigen> {
    let n = diag.len();
    if n == 0 {
        return Ok(TridiagEigen {
            n,
            values: Vec::new(),
            vectors: Vec::new(),
        });
    }
    assert_eq!(
        offdiag.len() + 1,
        n,
        "off-diagonal length must be one less than the diagonal"
    );

    let mut d = diag.to_vec();
    let mut e = Vec::with_capacity(n);
    e.extend_from_slice(offdiag);
    e.push(0.0);

    // Identity, accumulated into the eigenvector matrix.
    let mut v = vec![0.0f64; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    let eps = f64::EPSILON;
    let mut shift_total = 0.0f64;
    let mut tst1 = 0.0f64;

    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());

        // Find a small subdiagonal element delimiting the active block.
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }

        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > MAX_QL_ITERATIONS {
                    return Err(Error::EigensolverFailure { size: n });
                }

                // Implicit shift from the leading 2x2 of the block.
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for item in d.iter_mut().take(n).skip(l + 2) {
                    *item -= h;
                }
                shift_total += h;

                // Implicit QL sweep from m back down to l.
                p = d[m];
                let mut c = 1.0f64;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0f64;
                let mut s2 = 0.0f64;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);

                    // Accumulate the rotation into the eigenvector matrix.
                    for k in 0..n {
                        h = v[k * n + i + 1];
                        v[k * n + i + 1] = s * v[k * n + i] + c * h;
                        v[k * n + i] = c * v[k * n + i] - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;

                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += shift_total;
        e[l] = 0.0;
    }

    // Sort ascending, permuting eigenvector columns along.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let values: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let mut vectors = vec![0.0f64; n * n];
    for (to, &from) in order.iter().enumerate() {
        for r in 0..n {
            vectors[r * n + to] = v[r * n + from];
        }
    }

    Ok(TridiagEigen { n, values, vectors })
}
