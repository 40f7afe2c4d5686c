//! End-to-end transfer amplitude, fidelity deficit, perfect-state-transfer
//! conditions, and transfer-time optimization.
//!
//! The quantity of interest is the amplitude `A(t) = ⟨e_N| e^{-iJt} |e_0⟩`
//! for a single excitation injected at site 0 and read out at site `N`.
//! For a persymmetric chain it collapses to the weighted trigonometric sum
//!
//! ```text
//! A(t) = Σ_s w_s (-1)^{N+s} e^{-i x_s t}
//! ```
//!
//! over the spectral measure, which costs `O(N)` per time point and needs
//! no eigenvectors. [`amplitude_full`] keeps the general eigenvector route
//! `Σ_s ⟨e_N|x_s⟩⟨x_s|e_0⟩ e^{-i x_s t}` and also yields the whole site
//! occupation profile; the two must agree for persymmetric chains, which
//! makes the pair a useful cross-check.
//!
//! Transfer is perfect at some time iff the chain is persymmetric and all
//! eigenvalue gaps are a common `κ` times positive odd integers; the
//! minimal such time is `π/(κ·gcd)`. Floating-point spectra never satisfy
//! this exactly, so [`check_pst`] fits the gap structure to an explicit
//! relative tolerance.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jacobi::{JacobiMatrix, SpectralData};

/// Default relative tolerance for the odd-gap fit in [`check_pst`].
pub const DEFAULT_PST_REL_TOL: f64 = 1e-8;
/// Default bound on the odd multipliers searched by [`check_pst`].
pub const DEFAULT_PST_QMAX: u64 = 99;
/// Default number of coarse scan points in [`optimize_time`].
pub const DEFAULT_OPTIMIZE_GRID: usize = 4001;
/// Default width the local refinement in [`optimize_time`] narrows to.
pub const DEFAULT_OPTIMIZE_TOL: f64 = 1e-10;

/// Snapshot of the transfer at one instant.
#[derive(Debug, Clone)]
pub struct TransferReport {
    /// Evaluation time (inverse energy units).
    pub time: f64,
    /// End-to-end amplitude `A(time)`.
    pub amplitude: Complex64,
    /// Fidelity deficit `1 - |A(time)|`, clamped to `[0, 1]`.
    pub deficit: f64,
    /// Occupation probability per site, when the eigenvector route was
    /// used; sums to 1.
    pub site_probabilities: Option<Vec<f64>>,
}

/// Outcome of the perfect-state-transfer check.
#[derive(Debug, Clone)]
pub struct PstReport {
    /// Reflection symmetry of the chain (a necessary condition).
    pub persymmetric: bool,
    /// Both conditions hold: persymmetric and odd-gap spectrum.
    pub is_pst: bool,
    /// The odd-gap fit, when one exists (reported even for chains that
    /// fail the symmetry leg).
    pub gap_fit: Option<GapFit>,
}

/// Fitted gap structure `x_{s+1} - x_s = κ M_s` with odd `M_s`.
#[derive(Debug, Clone)]
pub struct GapFit {
    pub kappa: f64,
    /// Odd multipliers, one per gap.
    pub multipliers: Vec<u64>,
    /// Greatest common divisor of the multipliers.
    pub gcd: u64,
    /// Minimal transfer time `π/(κ·gcd)`.
    pub minimal_time: f64,
}

/// Amplitude via the persymmetric spectral formula
/// `Σ_s w_s (-1)^{N+s} e^{-i x_s t}`. Only meaningful when the underlying
/// chain is persymmetric.
pub fn amplitude_persym(spectral: &SpectralData, t: f64) -> Complex64 {
    let big_n = spectral.last_site();
    let mut total = Complex64::new(0.0, 0.0);
    for (s, (&x, &w)) in spectral
        .eigenvalues()
        .iter()
        .zip(spectral.weights())
        .enumerate()
    {
        let (sin, cos) = (x * t).sin_cos();
        let phase = Complex64::new(cos, -sin);
        if (big_n + s).is_multiple_of(2) {
            total += w * phase;
        } else {
            total -= w * phase;
        }
    }
    total
}

/// Amplitude and site occupation profile via the eigenvector expansion.
///
/// Returns `(A(t), p)` with `p[n] = |⟨e_n| e^{-iJt} |e_0⟩|²`; unitarity
/// keeps `Σ p[n] = 1`.
pub fn amplitude_full(chain: &JacobiMatrix, t: f64) -> Result<(Complex64, Vec<f64>)> {
    let eig = chain.decompose()?;
    let n = chain.n_sites();
    let mut state = vec![Complex64::new(0.0, 0.0); n];
    for s in 0..n {
        let (sin, cos) = (eig.values[s] * t).sin_cos();
        let phase = Complex64::new(cos, -sin);
        let overlap = eig.component(0, s); // ⟨x_s|e_0⟩
        for (row, amp) in state.iter_mut().enumerate() {
            *amp += eig.component(row, s) * overlap * phase;
        }
    }
    let amplitude = state[n - 1];
    let profile = state.iter().map(|a| a.norm_sqr()).collect();
    Ok((amplitude, profile))
}

/// Full transfer snapshot at time `t`, including the site profile.
pub fn transfer_report(chain: &JacobiMatrix, t: f64) -> Result<TransferReport> {
    let (amplitude, profile) = amplitude_full(chain, t)?;
    Ok(TransferReport {
        time: t,
        amplitude,
        deficit: deficit_of(amplitude),
        site_probabilities: Some(profile),
    })
}

/// Fidelity deficit `δ(t) = 1 - |A(t)|` from spectral data (persymmetric
/// formula). Lies in `[0, 1]`; values at or below 0.05 are commonly quoted
/// as good enough for practical transfer, though nothing in this crate
/// branches on that.
pub fn fidelity_deficit(spectral: &SpectralData, t: f64) -> f64 {
    deficit_of(amplitude_persym(spectral, t))
}

/// Fidelity deficit via the eigenvector route; works for any chain.
pub fn fidelity_deficit_full(chain: &JacobiMatrix, t: f64) -> Result<f64> {
    Ok(deficit_of(amplitude_full(chain, t)?.0))
}

fn deficit_of(amplitude: Complex64) -> f64 {
    (1.0 - amplitude.norm()).clamp(0.0, 1.0)
}

/// Decide whether the chain supports perfect state transfer.
///
/// The gap fit seeks `κ > 0` and odd integers `M_s ≤ qmax` with
/// `|g_s - κ M_s| ≤ rel_tol · max g_s` for every gap `g_s`. Candidate `κ`
/// values are `g_min / m` for odd `m ≤ qmax`, scanned in ascending `m`, so
/// the largest fitting `κ` (smallest multipliers) is reported. The minimal
/// transfer time `π/(κ·gcd)` is invariant under that choice.
pub fn check_pst(chain: &JacobiMatrix, rel_tol: f64, qmax: u64) -> Result<PstReport> {
    if !rel_tol.is_finite() || rel_tol <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "rel_tol = {rel_tol} must be positive and finite"
        )));
    }
    if qmax < 1 {
        return Err(Error::InvalidArgument("qmax must be at least 1".into()));
    }
    let persymmetric = chain.is_persymmetric(rel_tol);
    let spectral = chain.eigendecompose()?;
    let gap_fit = fit_odd_gaps(spectral.eigenvalues(), rel_tol, qmax);
    Ok(PstReport {
        persymmetric,
        is_pst: persymmetric && gap_fit.is_some(),
        gap_fit,
    })
}

fn fit_odd_gaps(eigenvalues: &[f64], rel_tol: f64, qmax: u64) -> Option<GapFit> {
    if eigenvalues.len() < 2 {
        return None;
    }
    let gaps: Vec<f64> = eigenvalues.windows(2).map(|p| p[1] - p[0]).collect();
    let g_min = gaps.iter().cloned().fold(f64::INFINITY, f64::min);
    let g_max = gaps.iter().cloned().fold(0.0f64, f64::max);
    let tolerance = rel_tol * g_max;

    let mut m = 1u64;
    while m <= qmax {
        let kappa = g_min / m as f64;
        // Largest multiplier this candidate would need; grows with m, so
        // once it exceeds qmax no later candidate can fit either.
        if g_max / kappa > qmax as f64 + 0.5 {
            return None;
        }
        let mut multipliers = Vec::with_capacity(gaps.len());
        let mut ok = true;
        for &g in &gaps {
            let q = (g / kappa).round();
            if q < 1.0 || q > qmax as f64 || (q as u64).is_multiple_of(2) || (g - kappa * q).abs() > tolerance
            {
                ok = false;
                break;
            }
            multipliers.push(q as u64);
        }
        if ok {
            let gcd = multipliers.iter().fold(0u64, |a, &b| gcd_u64(a, b));
            return Some(GapFit {
                kappa,
                minimal_time: std::f64::consts::PI / (kappa * gcd as f64),
                multipliers,
                gcd,
            });
        }
        m += 2;
    }
    None
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// Locate the time of best transfer near `t0`.
///
/// Deterministic two-stage search: `grid` equally spaced evaluations of the
/// deficit on `[t0 - window, t0 + window]` (earliest minimum wins ties),
/// then golden-section refinement of the winning bracket down to width
/// `tol`. Returns `(t_star, deficit_star)`. The deficit is evaluated with
/// the persymmetric spectral formula, so the spectral data must describe a
/// persymmetric chain.
pub fn optimize_time(
    spectral: &SpectralData,
    t0: f64,
    window: f64,
    grid: usize,
    tol: f64,
) -> Result<(f64, f64)> {
    if !window.is_finite() || window <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "window = {window} must be positive and finite"
        )));
    }
    if grid < 3 {
        return Err(Error::InvalidArgument(format!(
            "grid = {grid} must be at least 3"
        )));
    }
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "tol = {tol} must be positive and finite"
        )));
    }

    let objective = |t: f64| fidelity_deficit(spectral, t);

    let step = 2.0 * window / (grid - 1) as f64;
    let mut best_t = t0 - window;
    let mut best_value = objective(best_t);
    for i in 1..grid {
        let t = t0 - window + step * i as f64;
        let value = objective(t);
        if value < best_value {
            best_value = value;
            best_t = t;
        }
    }

    let (t_star, deficit_star) = golden_section(&objective, best_t - step, best_t + step, tol);
    Ok((t_star, deficit_star))
}

/// Golden-section minimization on `[a, b]`, narrowing to width `tol`.
fn golden_section<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let mid = 0.5 * (a + b);
    (mid, f(mid))
}
