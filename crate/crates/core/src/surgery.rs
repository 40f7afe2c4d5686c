//! Spectral surgery: removing the extreme eigenvalue pair of a chain.
//!
//! A Christoffel transform multiplies the orthogonality measure by
//! `(x - c)`; applying it at both spectral endpoints and restricting to the
//! surviving points maps an `(M+1)`-site chain to an `(M-1)`-site chain
//! whose spectrum is the original one with `x_0` and `x_M` deleted. The
//! transform is carried out in the measure domain (reweight, renormalize,
//! reconstruct) rather than by matrix refactorization; the two routes
//! agree exactly for nondegenerate spectra, and the measure route composes
//! cleanly with the eigensolver and [`reconstruct_from_measure`].
//!
//! Persymmetry survives surgery, and so does the odd-gap structure behind
//! perfect transfer: a chain with perfect state transfer keeps it after any
//! number of surgery steps.
//!
//! [`reconstruct_from_measure`]: crate::jacobi::reconstruct_from_measure

use crate::error::{Error, Result};
use crate::jacobi::{reconstruct_from_measure, JacobiMatrix};

/// Remove the lowest and highest eigenvalue from the chain's spectrum,
/// producing a chain two sites shorter.
///
/// The retained weights are `w̃_s ∝ w_s (x_s - x_0)(x_M - x_s)`, positive on
/// the interior window, renormalized before reconstruction.
pub fn christoffel_remove_pair(chain: &JacobiMatrix) -> Result<JacobiMatrix> {
    let n_sites = chain.n_sites();
    if n_sites < 3 {
        return Err(Error::ChainExhausted {
            sites: n_sites,
            steps: 1,
        });
    }
    let spectral = chain.eigendecompose()?;
    let x = spectral.eigenvalues();
    let w = spectral.weights();
    let lowest = x[0];
    let highest = x[n_sites - 1];
    let points: Vec<f64> = x[1..n_sites - 1].to_vec();
    let weights: Vec<f64> = points
        .iter()
        .zip(&w[1..n_sites - 1])
        .map(|(&xs, &ws)| ws * (xs - lowest) * (highest - xs))
        .collect();
    reconstruct_from_measure(&points, &weights)
}

/// Apply [`christoffel_remove_pair`] `steps` times; `steps = 0` returns the
/// chain unchanged.
pub fn surger(chain: &JacobiMatrix, steps: usize) -> Result<JacobiMatrix> {
    let n_sites = chain.n_sites();
    if 2 * steps + 1 > n_sites {
        return Err(Error::ChainExhausted {
            sites: n_sites,
            steps,
        });
    }
    let mut current = chain.clone();
    for _ in 0..steps {
        current = christoffel_remove_pair(&current)?;
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chains::{krawtchouk_chain, surgered_chain, uniform_chain};
    use crate::transfer::{check_pst, DEFAULT_PST_QMAX, DEFAULT_PST_REL_TOL};

    fn max_rel_coupling_diff(a: &JacobiMatrix, b: &JacobiMatrix) -> f64 {
        assert_eq!(a.n_sites(), b.n_sites());
        a.couplings()
            .iter()
            .zip(b.couplings())
            .map(|(&x, &y)| (x - y).abs() / y.abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn single_step_matches_closed_form() {
        // uniform 7-site chain surgered once = surgered family (N=4, M=6)
        let parent = uniform_chain(6, 1.0).unwrap();
        let cut = christoffel_remove_pair(&parent).unwrap();
        let closed = surgered_chain(4, 6, 1.0).unwrap();
        assert!(max_rel_coupling_diff(&cut, &closed) < 1e-8);
        for &b in cut.fields() {
            assert!(b.abs() < 1e-10);
        }
    }

    #[test]
    fn output_spectrum_is_inner_window() {
        let cases = vec![
            uniform_chain(9, 1.0).unwrap(),
            uniform_chain(58, 1.0).unwrap(),
            krawtchouk_chain(30, 1.0).unwrap(),
        ];
        for parent in cases {
            let parent_spectrum = parent.eigendecompose().unwrap();
            let scale = parent_spectrum
                .eigenvalues()
                .iter()
                .fold(0.0f64, |a, &x| a.max(x.abs()));
            let inner = &parent_spectrum.eigenvalues()[1..parent.n_sites() - 1];
            let cut = christoffel_remove_pair(&parent).unwrap();
            let cut_spectrum = cut.eigendecompose().unwrap();
            for (a, b) in cut_spectrum.eigenvalues().iter().zip(inner) {
                assert!((a - b).abs() < 1e-9 * scale);
            }
        }
    }

    #[test]
    fn persymmetry_is_preserved() {
        let parent = krawtchouk_chain(12, 1.0).unwrap();
        let cut = surger(&parent, 3).unwrap();
        assert!(cut.is_persymmetric(1e-10));

        let parent = uniform_chain(15, 2.0).unwrap();
        let cut = surger(&parent, 4).unwrap();
        assert!(cut.is_persymmetric(1e-9));
    }

    #[test]
    fn zero_steps_is_identity() {
        let chain = uniform_chain(10, 1.0).unwrap();
        assert_eq!(surger(&chain, 0).unwrap(), chain);
    }

    #[test]
    fn iterated_surgery_matches_closed_form() {
        for &(n, m, steps) in &[(10usize, 20usize, 5usize), (40, 60, 10), (49, 59, 5)] {
            let parent = uniform_chain(m, 1.0).unwrap();
            let cut = surger(&parent, steps).unwrap();
            let closed = surgered_chain(n, m, 1.0).unwrap();
            // normalize both so J_1 = 1 before comparing
            let scale_cut = cut.couplings()[0];
            let scale_closed = closed.couplings()[0];
            for (a, b) in cut.couplings().iter().zip(closed.couplings()) {
                let want = b / scale_closed;
                assert!(
                    ((a / scale_cut) - want).abs() < 1e-8 * want.max(1.0),
                    "n={n} m={m}"
                );
            }
        }
    }

    #[test]
    fn too_many_steps_errors() {
        let chain = uniform_chain(6, 1.0).unwrap();
        assert!(matches!(
            surger(&chain, 4),
            Err(Error::ChainExhausted { sites: 7, steps: 4 })
        ));
        assert!(surger(&chain, 3).is_ok());
        assert!(matches!(
            christoffel_remove_pair(&uniform_chain(1, 1.0).unwrap()),
            Err(Error::ChainExhausted { .. })
        ));
    }

    #[test]
    fn surgery_preserves_perfect_transfer() {
        for n in [6usize, 10, 20] {
            let chain = krawtchouk_chain(n, 1.0).unwrap();
            let report = check_pst(&chain, DEFAULT_PST_REL_TOL, DEFAULT_PST_QMAX).unwrap();
            assert!(report.is_pst);
            let cut = christoffel_remove_pair(&chain).unwrap();
            let report = check_pst(&cut, DEFAULT_PST_REL_TOL, DEFAULT_PST_QMAX).unwrap();
            assert!(report.is_pst, "surgered krawtchouk N={n} lost transfer");
        }
    }
}
