//! Classical lag-window spectral estimators, the flat-top taper family, the
//! Parzen window, data-driven bandwidth rules, and the AR-AIC benchmark.
//!
//! The basic estimator is the tapered Fourier series of the sample
//! autocovariances, f_hat(w) = sum_s e^{iws} lambda(s/M) gamma_hat(s). Its
//! kernel-smoothing twin, a Riemann sum of the spectral kernel against the
//! periodogram, agrees with it up to O(1/n) aliasing and is provided mostly
//! as a cross-check.

use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use rustfft::{num_complex::Complex, FftPlanner};

use crate::error::{Error, Result};
use crate::ts::{sample_autocovariance, sample_mean, AutocovarianceSeq, FourierGrid, Periodogram, TimeSeries};

/// Exact squared integral of the Parzen lag window over the real line.
pub const PARZEN_SQUARED_INTEGRAL: f64 = 151.0 / 280.0;

/// Curvature constant of the Parzen window: (1 - lambda(x))/x^2 -> 6 as x -> 0.
pub const PARZEN_CURVATURE: f64 = 6.0;

/// A lag window lambda(.): even, bounded, square integrable, lambda(0) = 1.
#[derive(Debug, Clone)]
pub enum LagWindow {
    /// Parzen (1961) window: 1 - 6x^2 + 6|x|^3 on |x| <= 1/2, 2(1-|x|)^3 on
    /// 1/2 < |x| <= 1, zero beyond.
    Parzen,
    /// Trapezoidal flat-top: identically 1 on |x| <= c, linear down to zero
    /// at |x| = 1. The default shape c = 1/2 gives min{1, 2(1-|x|)}^+.
    FlatTopTrapezoid { c: f64 },
    /// Plain truncation: 1 on |x| <= 1, zero beyond.
    Truncated,
    /// Tabulated window on an ascending grid starting at 0 with lambda(0)=1;
    /// linearly interpolated, zero beyond the last knot.
    Custom { xs: Vec<f64>, ys: Vec<f64> },
}

/// Order of a lag window: the number of vanishing derivatives at the origin
/// controls the bias rate of the estimator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowOrder {
    Finite(u32),
    Infinite,
    Unknown,
}

impl LagWindow {
    /// The trapezoidal flat-top with the standard shape parameter c = 1/2.
    pub fn flat_top() -> Self {
        LagWindow::FlatTopTrapezoid { c: 0.5 }
    }

    /// Build a tabulated window, validating the grid.
    pub fn custom(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::LengthMismatch {
                left: xs.len(),
                right: ys.len(),
            });
        }
        if xs.is_empty() || xs[0] != 0.0 || !xs.windows(2).all(|p| p[1] > p[0]) {
            return Err(Error::InvalidParam {
                name: "xs",
                reason: "tabulation grid must be ascending and start at 0".into(),
            });
        }
        if (ys[0] - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParam {
                name: "ys",
                reason: "lag window must satisfy lambda(0) = 1".into(),
            });
        }
        Ok(LagWindow::Custom { xs, ys })
    }

    /// Evaluate lambda(x).
    pub fn value(&self, x: f64) -> f64 {
        let a = x.abs();
        match self {
            LagWindow::Parzen => {
                if a <= 0.5 {
                    1.0 - 6.0 * a * a + 6.0 * a * a * a
                } else if a <= 1.0 {
                    let r = 1.0 - a;
                    2.0 * r * r * r
                } else {
                    0.0
                }
            }
            LagWindow::FlatTopTrapezoid { c } => ((1.0 - a) / (1.0 - c)).min(1.0).max(0.0),
            LagWindow::Truncated => {
                if a <= 1.0 {
                    1.0
                } else {
                    0.0
                }
            }
            LagWindow::Custom { xs, ys } => {
                if a > *xs.last().unwrap() {
                    return 0.0;
                }
                match xs.binary_search_by(|v| v.partial_cmp(&a).unwrap()) {
                    Ok(i) => ys[i],
                    Err(i) => {
                        let (x0, x1) = (xs[i - 1], xs[i]);
                        let t = (a - x0) / (x1 - x0);
                        ys[i - 1] + t * (ys[i] - ys[i - 1])
                    }
                }
            }
        }
    }

    pub fn order(&self) -> WindowOrder {
        match self {
            LagWindow::Parzen => WindowOrder::Finite(2),
            LagWindow::FlatTopTrapezoid { .. } | LagWindow::Truncated => WindowOrder::Infinite,
            LagWindow::Custom { .. } => WindowOrder::Unknown,
        }
    }

    /// Integral of lambda^2 over the real line.
    pub fn squared_integral(&self) -> f64 {
        match self {
            LagWindow::Parzen => PARZEN_SQUARED_INTEGRAL,
            LagWindow::FlatTopTrapezoid { c } => 2.0 * c + 2.0 * (1.0 - c) / 3.0,
            LagWindow::Truncated => 2.0,
            LagWindow::Custom { xs, ys } => {
                // trapezoid rule on the tabulation, doubled for evenness
                2.0 * xs
                    .windows(2)
                    .zip(ys.windows(2))
                    .map(|(x, y)| 0.5 * (y[0] * y[0] + y[1] * y[1]) * (x[1] - x[0]))
                    .sum::<f64>()
            }
        }
    }

    /// Largest |x| with lambda(x) possibly nonzero.
    fn support(&self) -> f64 {
        match self {
            LagWindow::Custom { xs, .. } => *xs.last().unwrap(),
            _ => 1.0,
        }
    }

    fn validate_shape(&self) -> Result<()> {
        if let LagWindow::FlatTopTrapezoid { c } = self {
            if !(*c > 0.0 && *c < 1.0) {
                return Err(Error::InvalidParam {
                    name: "c",
                    reason: format!("flat-top shape must lie in (0, 1), got {c}"),
                });
            }
        }
        Ok(())
    }
}

/// Evaluate a lag window at `x`.
pub fn lag_window_value(spec: &LagWindow, x: f64) -> f64 {
    spec.value(x)
}

/// Bandwidth record attached to a spectral estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bandwidth {
    /// Lag truncation point M of a lag-window estimator.
    LagTruncation(f64),
    /// Band fraction delta of a boundary-regression estimator.
    DeltaFraction(f64),
    None,
}

/// A spectral density estimate on the Fourier grid of a series of length n,
/// with method and bandwidth provenance.
#[derive(Debug, Clone)]
pub struct SpectralEstimate {
    grid: FourierGrid,
    values: Vec<f64>,
    method: String,
    bandwidth: Bandwidth,
}

impl SpectralEstimate {
    pub fn from_grid_values(
        grid: FourierGrid,
        values: Vec<f64>,
        method: impl Into<String>,
        bandwidth: Bandwidth,
    ) -> Result<Self> {
        if values.len() != grid.n() {
            return Err(Error::LengthMismatch {
                left: values.len(),
                right: grid.n(),
            });
        }
        Ok(Self {
            grid,
            values,
            method: method.into(),
            bandwidth,
        })
    }

    pub fn grid(&self) -> FourierGrid {
        self.grid
    }

    /// Values aligned with `grid().indices()`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn method(&self) -> &str {
        &self.method
    }

    pub fn bandwidth(&self) -> Bandwidth {
        self.bandwidth
    }

    /// Value at grid index `j`.
    pub fn value(&self, j: i64) -> f64 {
        self.values[(j - self.grid.j_min()) as usize]
    }

    /// Value at an arbitrary frequency: snaps to the nearest Fourier
    /// frequency, using even symmetry for w < 0.
    pub fn value_at(&self, w: f64) -> f64 {
        let j = self.grid.nearest_index(w);
        self.value(j)
    }

    pub(crate) fn map_values(&self, f: impl Fn(f64) -> f64) -> SpectralEstimate {
        SpectralEstimate {
            grid: self.grid,
            values: self.values.iter().map(|&v| f(v)).collect(),
            method: self.method.clone(),
            bandwidth: self.bandwidth,
        }
    }
}

/// Pointwise positive part max(f_hat(w), 0) of an estimate.
pub fn positive_part(est: &SpectralEstimate) -> SpectralEstimate {
    est.map_values(|v| v.max(0.0))
}

/// f_hat(w) = sum_{|s|} e^{iws} lambda(s/M) gamma_hat(s), truncated at
/// |s| = min(n - 1, support(lambda) * M). Real by even symmetry.
pub fn lw_spectral_estimate(
    acf: &AutocovarianceSeq,
    spec: &LagWindow,
    m: f64,
    w: f64,
) -> Result<f64> {
    spec.validate_shape()?;
    if m <= 0.0 {
        return Err(Error::InvalidParam {
            name: "M",
            reason: format!("bandwidth must be positive, got {m}"),
        });
    }
    let l = max_lag(acf.lags().len(), spec, m);
    let mut v = acf.gamma(0);
    for s in 1..=l {
        v += 2.0 * spec.value(s as f64 / m) * acf.gamma(s as i64) * (w * s as f64).cos();
    }
    Ok(v)
}

fn max_lag(available: usize, spec: &LagWindow, m: f64) -> usize {
    let sup = (spec.support() * m).floor() as usize;
    sup.min(available.saturating_sub(1))
}

/// Evaluate sum_s c_{|s|} e^{i w_j s} on a Fourier grid by FFT folding,
/// returning values aligned with `grid.indices()`. Exact up to roundoff for
/// any coefficient length (lags alias modulo n, as in the defining sum).
fn even_fourier_sum_on_grid(coeffs: &[f64], grid: &FourierGrid) -> Vec<f64> {
    let n = grid.n();
    let mut bins = vec![Complex::new(0.0, 0.0); n];
    bins[0].re += coeffs[0];
    for (s, &c) in coeffs.iter().enumerate().skip(1) {
        bins[s % n].re += c;
        bins[(n - s % n) % n].re += c;
    }
    FftPlanner::new().plan_fft_inverse(n).process(&mut bins);

    let j_min = grid.j_min();
    let mut out = vec![0.0; n];
    for j in grid.indices() {
        // mirror |j| so evenness is exact
        let bin = j.unsigned_abs() as usize % n;
        out[(j - j_min) as usize] = bins[bin].re;
    }
    out
}

/// Lag-window estimate on the whole Fourier grid in one FFT pass.
pub fn lw_spectral_estimate_grid(
    acf: &AutocovarianceSeq,
    spec: &LagWindow,
    m: f64,
    grid: &FourierGrid,
) -> Result<SpectralEstimate> {
    spec.validate_shape()?;
    if m <= 0.0 {
        return Err(Error::InvalidParam {
            name: "M",
            reason: format!("bandwidth must be positive, got {m}"),
        });
    }
    let l = max_lag(acf.lags().len(), spec, m);
    let coeffs: Vec<f64> = (0..=l)
        .map(|s| spec.value(s as f64 / m) * acf.gamma(s as i64))
        .collect();
    let values = even_fourier_sum_on_grid(&coeffs, grid);
    SpectralEstimate::from_grid_values(
        *grid,
        values,
        format!("lag-window({spec:?})"),
        Bandwidth::LagTruncation(m),
    )
}

/// Riemann-sum form of the kernel estimator: n^-1 sum_j Lambda_M(w_j)
/// I(w + w_j), with the spectral kernel Lambda_M(v) = sum_{|s|<n} e^{ivs}
/// lambda(s/M). `w` must be a Fourier frequency; callers snap beforehand.
pub fn riemann_kernel_estimate(
    i_hat: &Periodogram,
    spec: &LagWindow,
    m: f64,
    w: f64,
) -> Result<f64> {
    spec.validate_shape()?;
    if m <= 0.0 {
        return Err(Error::InvalidParam {
            name: "M",
            reason: format!("bandwidth must be positive, got {m}"),
        });
    }
    let grid = i_hat.grid();
    let k = grid.exact_index(w)?;
    let n = grid.n();

    let l = max_lag(n, spec, m);
    let coeffs: Vec<f64> = (0..=l).map(|s| spec.value(s as f64 / m)).collect();
    let lambda_grid = even_fourier_sum_on_grid(&coeffs, &grid);

    let j_min = grid.j_min();
    let j_max = grid.j_max();
    let mut acc = 0.0;
    for j in grid.indices() {
        // I is 2pi-periodic: wrap k + j back into the index set
        let mut t = (k + j).rem_euclid(n as i64);
        if t > j_max {
            t -= n as i64;
        }
        acc += lambda_grid[(j - j_min) as usize] * i_hat.value(t);
    }
    Ok(acc / n as f64)
}

/// Result of the autocorrelation-threshold bandwidth rule.
#[derive(Debug, Clone, Copy)]
pub struct EmpiricalRuleBandwidth {
    /// Smallest lag from which the autocorrelations stay below threshold.
    pub q_hat: usize,
    /// Flat-top bandwidth M = q_hat / c.
    pub m: f64,
    /// The threshold 1.96 sqrt(log10(n)/n).
    pub threshold: f64,
    /// Number of consecutive lags scanned past each candidate.
    pub window: usize,
    /// True when no candidate up to n/4 passed and the cap was returned.
    pub capped: bool,
}

/// Core of the empirical rule on a precomputed autocorrelation sequence
/// (index = lag, rho[0] = 1); lags beyond the slice are treated as zero.
fn empirical_rule_from_rho(rho: &[f64], n: usize) -> (usize, bool, f64, usize) {
    let log10n = (n as f64).log10();
    let threshold = 1.96 * (log10n / n).sqrt();
    let window = (1.0 + 3.0 * log10n.sqrt()).ceil() as usize;
    let cap = (n / 4).max(1);

    let rho_at = |k: usize| -> f64 {
        if k < rho.len() {
            rho[k]
        } else {
            0.0
        }
    };
    for q in 1..=cap {
        if (0..=window).all(|k| rho_at(q + k).abs() < threshold) {
            return (q, false, threshold, window);
        }
    }
    (cap, true, threshold, window)
}

/// Empirical rule for the flat-top bandwidth: q_hat is the smallest positive
/// integer such that |rho_hat(q_hat + k)| < 1.96 sqrt(log10(n)/n) for all
/// 0 <= k <= ceil(1 + 3 sqrt(log10(n))); then M = q_hat / c.
///
/// If no candidate up to n/4 qualifies, q_hat = n/4 is returned with
/// `capped = true`.
pub fn empirical_rule_bandwidth(x: &TimeSeries, c: f64) -> Result<EmpiricalRuleBandwidth> {
    x.require_len(8)?;
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::InvalidParam {
            name: "c",
            reason: format!("shape parameter must lie in (0, 1), got {c}"),
        });
    }
    let acf = sample_autocovariance(x)?;
    if acf.variance() <= 0.0 {
        return Err(Error::ZeroVariance);
    }
    let rho: Vec<f64> = acf.lags().iter().map(|g| g / acf.variance()).collect();
    let (q_hat, capped, threshold, window) = empirical_rule_from_rho(&rho, x.len());
    Ok(EmpiricalRuleBandwidth {
        q_hat,
        m: q_hat as f64 / c,
        threshold,
        window,
        capped,
    })
}

/// Plug-in bandwidth for the Parzen estimator.
#[derive(Debug, Clone, Copy)]
pub struct PluginBandwidth {
    pub m_star: f64,
    /// Flat-top pilot bandwidth used for the derivative estimates.
    pub pilot_m: f64,
    /// Pilot estimates f_hat(theta) and f_hat''(theta).
    pub f_pilot: f64,
    pub f2_pilot: f64,
    /// True when the plug-in degenerated and M = n^{1/5} was returned.
    pub fallback: bool,
}

/// MSE-optimal bandwidth for a second-order window with curvature c_lambda:
/// M* = [4 c_lambda^2 f''(theta)^2 n / (eta(theta) f(theta)^2 int
/// lambda^2)]^{1/5}.
pub fn plugin_m_star(f_hat: f64, f2_hat: f64, n: usize, eta: f64, squared_integral: f64) -> f64 {
    let num = 4.0 * PARZEN_CURVATURE * PARZEN_CURVATURE * f2_hat * f2_hat * n as f64;
    let den = eta * f_hat * f_hat * squared_integral;
    (num / den).powf(0.2)
}

/// Variance inflation factor at frequency `w`: 2 at multiples of pi, else 1.
pub fn eta_factor(w: f64) -> f64 {
    let r = (w / PI).rem_euclid(1.0);
    if r.min(1.0 - r) < 1e-12 {
        2.0
    } else {
        1.0
    }
}

/// Politis-style plug-in bandwidth for the Parzen estimator at `theta`,
/// with bias and variance constants estimated from a flat-top pilot whose
/// bandwidth comes from the empirical rule. Falls back to M = n^{1/5} when
/// the estimated curvature vanishes.
pub fn parzen_plugin_bandwidth(x: &TimeSeries, theta: f64) -> Result<PluginBandwidth> {
    let rule = empirical_rule_bandwidth(x, 0.5)?;
    let acf = sample_autocovariance(x)?;
    let flat_top = LagWindow::flat_top();
    let m_pilot = rule.m;
    let f_pilot = lw_spectral_estimate(&acf, &flat_top, m_pilot, theta)?;

    // f''(w) = -sum_s s^2 lambda(s/M) gamma_hat(s) e^{iws}
    let l = max_lag(acf.lags().len(), &flat_top, m_pilot);
    let mut f2_pilot = 0.0;
    for s in 1..=l {
        let sf = s as f64;
        f2_pilot -=
            2.0 * sf * sf * flat_top.value(sf / m_pilot) * acf.gamma(s as i64) * (theta * sf).cos();
    }

    let n = x.len();
    let m_star = plugin_m_star(
        f_pilot,
        f2_pilot,
        n,
        eta_factor(theta),
        PARZEN_SQUARED_INTEGRAL,
    );
    if f2_pilot == 0.0 || !m_star.is_finite() || m_star <= 0.0 {
        return Ok(PluginBandwidth {
            m_star: (n as f64).powf(0.2),
            pilot_m: m_pilot,
            f_pilot,
            f2_pilot,
            fallback: true,
        });
    }
    Ok(PluginBandwidth {
        m_star,
        pilot_m: m_pilot,
        f_pilot,
        f2_pilot,
        fallback: false,
    })
}

/// An autoregression fitted by OLS with the order chosen by AIC.
#[derive(Debug, Clone)]
pub struct ArFit {
    pub p_hat: usize,
    /// AR coefficients phi_1..phi_p of the selected order.
    pub coefficients: Vec<f64>,
    /// Innovation variance estimate at the selected order.
    pub sigma2: f64,
    /// (order, AIC) for every order that could be fitted.
    pub aic: Vec<(usize, f64)>,
    /// Orders skipped because the design was singular.
    pub skipped: Vec<usize>,
}

/// Fit AR(p) for p = 0..=p_max by OLS on centered data (intercept included)
/// and select p by AIC = n_eff log(sigma2_p) + 2p, with a common effective
/// sample n_eff = n - p_max across orders.
pub fn ar_fit_aic(x: &TimeSeries, p_max: usize) -> Result<ArFit> {
    let n = x.len();
    if p_max >= n / 2 {
        return Err(Error::InvalidParam {
            name: "p_max",
            reason: format!("need p_max < n/2, got p_max = {p_max}, n = {n}"),
        });
    }
    x.require_len(4)?;
    let mean = sample_mean(x);
    let z: Vec<f64> = x.values().iter().map(|v| v - mean).collect();
    let n_eff = n - p_max;

    let mut best: Option<(usize, f64, Vec<f64>, f64)> = None;
    let mut aic_curve = Vec::with_capacity(p_max + 1);
    let mut skipped = Vec::new();

    for p in 0..=p_max {
        let rows = n_eff;
        let design = DMatrix::from_fn(rows, p + 1, |r, c| {
            let t = p_max + r;
            if c == 0 {
                1.0
            } else {
                z[t - c]
            }
        });
        let y = DVector::from_fn(rows, |r, _| z[p_max + r]);

        let svd = design.clone().svd(true, true);
        let smax = svd.singular_values.max();
        let smin = svd.singular_values.min();
        if smax <= 0.0 || smin <= smax * 1e-13 {
            skipped.push(p);
            continue;
        }
        let beta = svd.solve(&y, smax * 1e-14).expect("svd solve");
        let resid = &y - &design * &beta;
        let sigma2 = (resid.norm_squared() / n_eff as f64).max(f64::MIN_POSITIVE);
        let aic = n_eff as f64 * sigma2.ln() + 2.0 * p as f64;
        aic_curve.push((p, aic));
        let coeffs: Vec<f64> = beta.iter().skip(1).copied().collect();
        match &best {
            Some((_, best_aic, _, _)) if aic >= *best_aic => {}
            _ => best = Some((p, aic, coeffs, sigma2)),
        }
    }

    let (p_hat, _, coefficients, sigma2) = best.ok_or(Error::SingularDesign {
        condition: f64::INFINITY,
    })?;
    Ok(ArFit {
        p_hat,
        coefficients,
        sigma2,
        aic: aic_curve,
        skipped,
    })
}

/// AR(p) spectral density f(w) = sigma2 / |1 - sum_k phi_k e^{-ikw}|^2,
/// in the same convention as f(w) = sum_s e^{iws} gamma(s).
pub fn ar_spectral_density(coefficients: &[f64], sigma2: f64, w: f64) -> Result<f64> {
    check_ar_roots(coefficients, 1e-8)?;
    let mut re = 1.0;
    let mut im = 0.0;
    for (k, &phi) in coefficients.iter().enumerate() {
        let kw = (k + 1) as f64 * w;
        re -= phi * kw.cos();
        im += phi * kw.sin();
    }
    Ok(sigma2 / (re * re + im * im))
}

/// Error if the AR characteristic polynomial 1 - sum phi_k z^k has a root
/// within `tol` of the unit circle.
fn check_ar_roots(coefficients: &[f64], tol: f64) -> Result<()> {
    let mut coeffs = coefficients.to_vec();
    while coeffs.last().is_some_and(|c| c.abs() < 1e-14) {
        coeffs.pop();
    }
    let p = coeffs.len();
    if p == 0 {
        return Ok(());
    }
    // companion matrix of the monic form of 1 - phi_1 z - ... - phi_p z^p
    let cp = -coeffs[p - 1];
    let mut comp = DMatrix::<f64>::zeros(p, p);
    for i in 0..p {
        let ci = if i == 0 { 1.0 } else { -coeffs[i - 1] };
        comp[(i, p - 1)] = -ci / cp;
        if i + 1 < p {
            comp[(i + 1, i)] = 1.0;
        }
    }
    for z in comp.complex_eigenvalues().iter() {
        if (z.norm() - 1.0).abs() < tol {
            return Err(Error::UnstableArSpectrum { tol });
        }
    }
    Ok(())
}

/// Convenience wrapper bundling [`ar_fit_aic`] + [`ar_spectral_density`].
pub fn ar_spectral_estimate(x: &TimeSeries, p_max: usize, w: f64) -> Result<f64> {
    let fit = ar_fit_aic(x, p_max)?;
    ar_spectral_density(&fit.coefficients, fit.sigma2, w)
}

/// Shared kernel type alias used by the boundary module's custom kernels.
pub type KernelFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
