//! Closed-form chain families: uniform, Krawtchouk, and the surgered
//! interpolating family.
//!
//! All three have zero fields and persymmetric couplings.
//!
//! * **uniform**: `J_l = K` on `M + 1` sites; the cosine spectrum
//!   `-2K cos(ω(s+1))` with `ω = π/(M+2)` is strongly nonlinear near the
//!   band edges, which is what spoils perfect transfer beyond 3 sites.
//! * **krawtchouk**: `J_l = (K/2)√(l(N+1-l))` on `N + 1` sites; exactly
//!   linear spectrum `K(s - N/2)`, perfect end-to-end transfer at `T = π/K`,
//!   but a max/min squared-coupling ratio `(N+1)²/4N` that grows with `N`.
//! * **surgered**: the family interpolating between the two. A uniform
//!   chain of `M + 1` sites with the outermost `j = (M-N)/2` eigenvalue
//!   pairs removed collapses to `N + 1` sites with
//!
//!   ```text
//!   J_l² = K² sin(ωl) sin(ω(N+1-l)) / [cos(ω(l-N/2)) cos(ω(l-N/2-1))]
//!   ```
//!
//!   spectrum `-2K cos(ω(s+1+j))` and explicit product-form weights. Its
//!   middle spectrum is nearly linear, so transfer close to the Krawtchouk
//!   schedule survives while the coupling ratio stays capped.

use crate::error::{Error, Result};
use crate::jacobi::{JacobiMatrix, SpectralData};

/// Parameter record generating a [`JacobiMatrix`] in closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChainFamily {
    /// Uniform couplings `K` on `m + 1` sites.
    Uniform { m: usize, k: f64 },
    /// Krawtchouk chain on `n + 1` sites with transfer time `π/k`.
    Krawtchouk { n: usize, k: f64 },
    /// Surgered chain on `n + 1` sites, obtained from a uniform parent of
    /// `m + 1` sites (`m ≥ n`, `m - n` even).
    Surgered { n: usize, m: usize, k: f64 },
}

impl ChainFamily {
    pub fn build(&self) -> Result<JacobiMatrix> {
        match *self {
            ChainFamily::Uniform { m, k } => uniform_chain(m, k),
            ChainFamily::Krawtchouk { n, k } => krawtchouk_chain(n, k),
            ChainFamily::Surgered { n, m, k } => surgered_chain(n, m, k),
        }
    }

    pub fn n_sites(&self) -> usize {
        match *self {
            ChainFamily::Uniform { m, .. } => m + 1,
            ChainFamily::Krawtchouk { n, .. } => n + 1,
            ChainFamily::Surgered { n, .. } => n + 1,
        }
    }

    pub fn coupling_scale(&self) -> f64 {
        match *self {
            ChainFamily::Uniform { k, .. }
            | ChainFamily::Krawtchouk { k, .. }
            | ChainFamily::Surgered { k, .. } => k,
        }
    }
}

fn check_scale(k: f64) -> Result<()> {
    if !k.is_finite() || k <= 0.0 {
        return Err(Error::InvalidFamily(format!(
            "coupling scale K = {k} must be positive and finite"
        )));
    }
    Ok(())
}

fn check_surgered_params(n: usize, m: usize, k: f64) -> Result<usize> {
    check_scale(k)?;
    if n < 1 {
        return Err(Error::InvalidFamily("surgered chain requires N >= 1".into()));
    }
    if m < n {
        return Err(Error::InvalidFamily(format!(
            "surgered chain requires M >= N (got M = {m}, N = {n})"
        )));
    }
    if !(m - n).is_multiple_of(2) {
        return Err(Error::InvalidFamily(format!(
            "surgered chain requires M - N even (got M - N = {})",
            m - n
        )));
    }
    Ok((m - n) / 2)
}

/// Uniform chain: `M + 1` sites, every coupling `K`, zero fields.
pub fn uniform_chain(m: usize, k: f64) -> Result<JacobiMatrix> {
    check_scale(k)?;
    if m < 1 {
        return Err(Error::InvalidFamily("uniform chain requires M >= 1".into()));
    }
    JacobiMatrix::with_zero_fields(vec![k; m])
}

/// Krawtchouk chain: `N + 1` sites, couplings `(K/2)√(l(N+1-l))`,
/// zero fields. The spectrum is `K(s - N/2)` and end-to-end transfer is
/// perfect at `T = π/K`.
pub fn krawtchouk_chain(n: usize, k: f64) -> Result<JacobiMatrix> {
    check_scale(k)?;
    if n < 1 {
        return Err(Error::InvalidFamily("krawtchouk chain requires N >= 1".into()));
    }
    let couplings = (1..=n)
        .map(|l| 0.5 * k * ((l * (n + 1 - l)) as f64).sqrt())
        .collect();
    JacobiMatrix::with_zero_fields(couplings)
}

/// Surgered chain: `N + 1` sites with
/// `J_l² = K² sin(ωl) sin(ω(N+1-l)) / [cos(ω(l-N/2)) cos(ω(l-N/2-1))]`,
/// `ω = π/(M+2)`. For `M = N` this is exactly the uniform chain.
///
/// Angle arguments are assembled as integer multiples of `ω/2` so the
/// formula stays accurate for parent sizes up to `M ~ 10⁶`.
pub fn surgered_chain(n: usize, m: usize, k: f64) -> Result<JacobiMatrix> {
    check_surgered_params(n, m, k)?;
    if m == n {
        return uniform_chain(n, k);
    }
    let omega = std::f64::consts::PI / (m as f64 + 2.0);
    let half = 0.5 * omega;
    let nn = n as i64;
    let mut couplings = Vec::with_capacity(n);
    for l in 1..=nn {
        let numerator = (omega * l as f64).sin() * (omega * (nn + 1 - l) as f64).sin();
        let denominator =
            (half * (2 * l - nn) as f64).cos() * (half * (2 * l - nn - 2) as f64).cos();
        let j_sq = k * k * numerator / denominator;
        if !j_sq.is_finite() || j_sq <= 0.0 {
            return Err(Error::FormulaBreakdown {
                index: l as usize,
                value: j_sq,
            });
        }
        couplings.push(j_sq.sqrt());
    }
    JacobiMatrix::with_zero_fields(couplings)
}

/// Closed-form spectrum of the surgered chain:
/// `x_s = -2K cos(ω(s+1+j))`, `s = 0..N`, ascending. With `normalized`
/// the spectrum is additionally scaled by `M + 2`, which places the
/// mid-spectrum gaps near `2π` and the Krawtchouk-limit transfer time
/// near `T = 1/2`.
pub fn surgered_spectrum(n: usize, m: usize, k: f64, normalized: bool) -> Result<Vec<f64>> {
    let j = check_surgered_params(n, m, k)?;
    let omega = std::f64::consts::PI / (m as f64 + 2.0);
    let scale = if normalized { k * (m as f64 + 2.0) } else { k };
    Ok((0..=n)
        .map(|s| -2.0 * scale * (omega * (s + 1 + j) as f64).cos())
        .collect())
}

/// Closed-form orthogonality weights of the surgered chain, renormalized
/// to unit sum:
///
/// ```text
/// w_s ∝ Π_{r=0..j} sin(ω(s+j-r+1)) sin(ω(s+j+r+1))
/// ```
///
/// For `M = N` this reduces to `2/(M+2) sin²(ω(s+1))`. The product form is
/// treated as an unnormalized prefactor; the eigensolver is the ground
/// truth the result is tested against.
pub fn surgered_weights(n: usize, m: usize) -> Result<Vec<f64>> {
    let j = check_surgered_params(n, m, 1.0)?;
    let omega = std::f64::consts::PI / (m as f64 + 2.0);
    let mut raw = Vec::with_capacity(n + 1);
    for s in 0..=n {
        let mut product = 1.0f64;
        for r in 0..=j {
            product *= (omega * (s + j - r + 1) as f64).sin() * (omega * (s + j + r + 1) as f64).sin();
        }
        if !product.is_finite() || product <= 0.0 {
            return Err(Error::WeightFormulaBreakdown { index: s, value: product });
        }
        raw.push(product);
    }
    let total: f64 = raw.iter().sum();
    Ok(raw.into_iter().map(|w| w / total).collect())
}

/// Closed-form spectral data of the surgered family (uniform when `m == n`),
/// ready for amplitude evaluation without diagonalizing anything.
pub fn surgered_spectral_data(n: usize, m: usize, k: f64, normalized: bool) -> Result<SpectralData> {
    SpectralData::new(
        surgered_spectrum(n, m, k, normalized)?,
        surgered_weights(n, m)?,
    )
}

/// Ratio of the largest to smallest squared coupling, `max J_l² / min J_l²`.
///
/// Gauges how hard a chain is to engineer. Equals 1 for the uniform chain
/// and `(N+1)²/4N` for the Krawtchouk chain at odd `N` (within rounding of
/// it at even `N`, where the extremum falls between sites).
pub fn coupling_ratio(chain: &JacobiMatrix) -> f64 {
    let mut min_sq = f64::INFINITY;
    let mut max_sq = 0.0f64;
    for &j in chain.couplings() {
        let sq = j * j;
        min_sq = min_sq.min(sq);
        max_sq = max_sq.max(sq);
    }
    if chain.couplings().is_empty() {
        return 1.0;
    }
    max_sq / min_sq
}
