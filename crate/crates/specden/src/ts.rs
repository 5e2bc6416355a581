//! Time-series primitives: sample mean, autocovariance, Fourier frequencies,
//! the periodogram, and parametric detrending.
//!
//! All estimators in this crate consume these types. The sample
//! autocovariance uses divisor `n` at every lag, which keeps the implied
//! autocovariance sequence positive semidefinite and makes the periodogram
//! computed from it non-negative on the Fourier grid.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use rustfft::{num_complex::Complex, FftPlanner};

use crate::error::{Error, Result};

/// A real-valued, regularly sampled series. Values are validated to be finite
/// at construction; most estimation entry points additionally require
/// `n >= 4`.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    values: Vec<f64>,
    labels: Option<Vec<String>>,
}

impl TimeSeries {
    /// Build a series from raw observations, rejecting empty and non-finite
    /// input.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySeries);
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self {
            values,
            labels: None,
        })
    }

    /// As [`TimeSeries::new`], attaching one textual time label per value.
    /// Labels are carried through to outputs but ignored by computation.
    pub fn with_labels(values: Vec<f64>, labels: Vec<String>) -> Result<Self> {
        if values.len() != labels.len() {
            return Err(Error::LengthMismatch {
                left: values.len(),
                right: labels.len(),
            });
        }
        let mut ts = Self::new(values)?;
        ts.labels = Some(labels);
        Ok(ts)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Require at least `min` observations before estimation.
    pub fn require_len(&self, min: usize) -> Result<()> {
        if self.len() < min {
            Err(Error::TooShort {
                n: self.len(),
                min,
            })
        } else {
            Ok(())
        }
    }
}

/// Arithmetic mean of the observations.
pub fn sample_mean(x: &TimeSeries) -> f64 {
    x.values.iter().sum::<f64>() / x.len() as f64
}

/// Sample autocovariances at lags `0..n-1`, centered at the sample mean and
/// divided by `n` (not `n - k`) at every lag. Lags at or beyond `n` are zero.
#[derive(Debug, Clone)]
pub struct AutocovarianceSeq {
    gamma: Vec<f64>,
    n: usize,
}

impl AutocovarianceSeq {
    /// Wrap a precomputed autocovariance sequence (lag 0 first). Intended for
    /// feeding population autocovariances into the lag-window estimators.
    pub fn from_values(gamma: Vec<f64>) -> Result<Self> {
        if gamma.is_empty() {
            return Err(Error::EmptySeries);
        }
        let n = gamma.len();
        Ok(Self { gamma, n })
    }

    /// Autocovariance at signed lag `k`; zero for `|k| >= n`.
    pub fn gamma(&self, k: i64) -> f64 {
        let k = k.unsigned_abs() as usize;
        if k >= self.gamma.len() {
            0.0
        } else {
            self.gamma[k]
        }
    }

    /// Sample variance, i.e. the lag-0 autocovariance.
    pub fn variance(&self) -> f64 {
        self.gamma[0]
    }

    /// Length of the source series.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lags(&self) -> &[f64] {
        &self.gamma
    }
}

/// gamma_hat(k) = n^-1 sum_{i=1}^{n-|k|} (X_i - mean)(X_{i+|k|} - mean).
///
/// Computed through a zero-padded FFT convolution, O(n log n).
pub fn sample_autocovariance(x: &TimeSeries) -> Result<AutocovarianceSeq> {
    x.require_len(2)?;
    let n = x.len();
    let mean = sample_mean(x);

    let padded = (2 * n).next_power_of_two();
    let mut buf: Vec<Complex<f64>> = x
        .values
        .iter()
        .map(|&v| Complex::new(v - mean, 0.0))
        .chain(std::iter::repeat(Complex::new(0.0, 0.0)))
        .take(padded)
        .collect();

    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(padded).process(&mut buf);
    for v in buf.iter_mut() {
        *v = Complex::new(v.norm_sqr(), 0.0);
    }
    planner.plan_fft_inverse(padded).process(&mut buf);

    let scale = 1.0 / (padded as f64 * n as f64);
    let gamma: Vec<f64> = buf[..n].iter().map(|v| v.re * scale).collect();
    Ok(AutocovarianceSeq { gamma, n })
}

/// The set of Fourier frequencies w_j = 2*pi*j/n with j running over `n`
/// consecutive integers centered at zero: {-(n-1)/2, ..., (n-1)/2} for odd
/// `n` and {-n/2+1, ..., n/2} for even `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FourierGrid {
    n: usize,
}

impl FourierGrid {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Smallest index in the grid.
    pub fn j_min(&self) -> i64 {
        if self.n % 2 == 0 {
            -((self.n as i64) / 2) + 1
        } else {
            -((self.n as i64 - 1) / 2)
        }
    }

    /// Largest index in the grid, equal to floor(n/2).
    pub fn j_max(&self) -> i64 {
        (self.n / 2) as i64
    }

    pub fn indices(&self) -> impl Iterator<Item = i64> {
        self.j_min()..=self.j_max()
    }

    pub fn contains(&self, j: i64) -> bool {
        j >= self.j_min() && j <= self.j_max()
    }

    /// Frequency of index `j` in radians.
    pub fn freq(&self, j: i64) -> f64 {
        2.0 * PI * j as f64 / self.n as f64
    }

    /// Index of the Fourier frequency closest to `w` (ties resolve downward).
    /// `w` outside [w_min, w_max] clamps to the nearest end of the grid.
    pub fn nearest_index(&self, w: f64) -> i64 {
        let raw = (w * self.n as f64 / (2.0 * PI)).round() as i64;
        raw.clamp(self.j_min(), self.j_max())
    }

    /// Exact grid index of `w` if `w` is a Fourier frequency (within 1e-9
    /// absolute), otherwise an error.
    pub fn exact_index(&self, w: f64) -> Result<i64> {
        let j = self.nearest_index(w);
        if (self.freq(j) - w).abs() < 1e-9 {
            Ok(j)
        } else {
            Err(Error::NotFourierFrequency { w, n: self.n })
        }
    }
}

/// Construct the Fourier grid for a series of length `n`.
pub fn fourier_grid(n: usize) -> Result<FourierGrid> {
    if n == 0 {
        return Err(Error::InvalidParam {
            name: "n",
            reason: "grid length must be positive".into(),
        });
    }
    Ok(FourierGrid { n })
}

/// Periodogram ordinates over a Fourier grid, stored in index order
/// `j_min..=j_max`.
#[derive(Debug, Clone)]
pub struct Periodogram {
    grid: FourierGrid,
    values: Vec<f64>,
}

impl Periodogram {
    pub fn grid(&self) -> FourierGrid {
        self.grid
    }

    /// Ordinate at grid index `j`.
    pub fn value(&self, j: i64) -> f64 {
        debug_assert!(self.grid.contains(j));
        self.values[(j - self.grid.j_min()) as usize]
    }

    /// Ordinates in index order, aligned with `grid().indices()`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Mean ordinate over the grid; equals gamma_hat(0) by the discrete
    /// Parseval identity.
    pub fn mean_ordinate(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }
}

/// I(w_j) = n^-1 |sum_t (X_t - mean) e^{i t w_j}|^2 over the grid.
///
/// The zero frequency is identically zero because the series is centered;
/// negative frequencies mirror positive ones exactly.
pub fn periodogram(x: &TimeSeries, grid: &FourierGrid) -> Result<Periodogram> {
    if x.len() != grid.n() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: grid.n(),
        });
    }
    let n = x.len();
    let mean = sample_mean(x);

    let mut buf: Vec<Complex<f64>> = x
        .values
        .iter()
        .map(|&v| Complex::new(v - mean, 0.0))
        .collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);

    let inv_n = 1.0 / n as f64;
    let mut values = vec![0.0; n];
    let j_min = grid.j_min();
    for j in grid.indices() {
        let v = if j == 0 {
            0.0
        } else {
            // bin for -j is n - j; symmetry is enforced by evaluating |j|
            let bin = j.unsigned_abs() as usize % n;
            buf[bin].norm_sqr() * inv_n
        };
        values[(j - j_min) as usize] = v;
    }
    Ok(Periodogram { grid: *grid, values })
}

/// Periodogram of an externally centered series (used by the change-point
/// test, where centering is piecewise rather than by the global mean).
/// Identical to [`periodogram`] except the mean is not subtracted.
pub fn periodogram_precentered(x: &TimeSeries, grid: &FourierGrid) -> Result<Periodogram> {
    if x.len() != grid.n() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: grid.n(),
        });
    }
    let n = x.len();
    let mut buf: Vec<Complex<f64>> = x.values.iter().map(|&v| Complex::new(v, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);

    let inv_n = 1.0 / n as f64;
    let mut values = vec![0.0; n];
    let j_min = grid.j_min();
    for j in grid.indices() {
        let bin = j.unsigned_abs() as usize % n;
        values[(j - j_min) as usize] = buf[bin].norm_sqr() * inv_n;
    }
    Ok(Periodogram { grid: *grid, values })
}

/// Deterministic mean structures for the additive model W_t = mu_t + X_t.
#[derive(Debug, Clone)]
pub enum TrendModelKind {
    /// mu_t periodic with known period `d` (2 <= d <= n/2).
    Seasonal { period: usize },
    /// Segment means split at the given 1-based change points t_1 < ... < t_r;
    /// segment `i` covers t in (t_{i-1}, t_i]. Empty list = single segment.
    PiecewiseConstant { change_points: Vec<usize> },
    /// mu_t = sum_k eta_k g_k(t) with the basis supplied as design columns
    /// evaluated on t = 1..n.
    Regression { columns: Vec<Vec<f64>> },
}

/// A fitted trend: the model kind plus the estimated parameter vector.
#[derive(Debug, Clone)]
pub struct TrendModel {
    pub kind: TrendModelKind,
    pub eta_hat: Vec<f64>,
}

/// Fit the requested mean structure by least squares and return the fitted
/// model together with the residual series X_t(eta_hat) = W_t - mu_t(eta_hat).
pub fn detrend(w: &TimeSeries, kind: TrendModelKind) -> Result<(TrendModel, TimeSeries)> {
    let n = w.len();
    let values = w.values();
    let (eta_hat, fitted): (Vec<f64>, Vec<f64>) = match &kind {
        TrendModelKind::Seasonal { period } => {
            let d = *period;
            if d < 2 || d > n / 2 {
                return Err(Error::InvalidParam {
                    name: "period",
                    reason: format!("need 2 <= d <= n/2, got d = {d}, n = {n}"),
                });
            }
            let mut sums = vec![0.0; d];
            let mut counts = vec![0usize; d];
            for (t, &v) in values.iter().enumerate() {
                sums[t % d] += v;
                counts[t % d] += 1;
            }
            let means: Vec<f64> = sums
                .iter()
                .zip(&counts)
                .map(|(s, &c)| s / c as f64)
                .collect();
            let fitted = (0..n).map(|t| means[t % d]).collect();
            (means, fitted)
        }
        TrendModelKind::PiecewiseConstant { change_points } => {
            let mut bounds = Vec::with_capacity(change_points.len() + 2);
            bounds.push(0usize);
            for &cp in change_points {
                if cp == 0 || cp >= n || Some(&cp) <= bounds.last() {
                    return Err(Error::InvalidParam {
                        name: "change_points",
                        reason: format!("change points must be strictly increasing in 1..n, got {cp}"),
                    });
                }
                bounds.push(cp);
            }
            bounds.push(n);
            let mut means = Vec::with_capacity(bounds.len() - 1);
            let mut fitted = vec![0.0; n];
            for seg in bounds.windows(2) {
                let (lo, hi) = (seg[0], seg[1]);
                let len = hi - lo;
                if len < 2 {
                    return Err(Error::SegmentTooShort { len });
                }
                let mean = values[lo..hi].iter().sum::<f64>() / len as f64;
                means.push(mean);
                fitted[lo..hi].iter_mut().for_each(|v| *v = mean);
            }
            (means, fitted)
        }
        TrendModelKind::Regression { columns } => {
            if columns.is_empty() {
                return Err(Error::InvalidParam {
                    name: "columns",
                    reason: "regression basis is empty".into(),
                });
            }
            for col in columns {
                if col.len() != n {
                    return Err(Error::LengthMismatch {
                        left: col.len(),
                        right: n,
                    });
                }
            }
            let d = columns.len();
            let design = DMatrix::from_fn(n, d, |i, k| columns[k][i]);
            let y = DVector::from_column_slice(values);
            let svd = design.clone().svd(true, true);
            let smax = svd.singular_values.max();
            let smin = svd.singular_values.min();
            if smin <= smax * 1e-12 {
                return Err(Error::RankDeficientBasis);
            }
            let eta = svd.solve(&y, smax * 1e-13).expect("svd solve");
            let fitted = design * &eta;
            (eta.iter().copied().collect(), fitted.iter().copied().collect())
        }
    };

    let residuals: Vec<f64> = values.iter().zip(&fitted).map(|(v, f)| v - f).collect();
    Ok((
        TrendModel { kind, eta_hat },
        TimeSeries::new(residuals)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct O(n^2) evaluation of the defining autocovariance sum.
    fn acov_direct(x: &[f64]) -> Vec<f64> {
        let n = x.len();
        let mean = x.iter().sum::<f64>() / n as f64;
        (0..n)
            .map(|k| {
                (0..n - k)
                    .map(|i| (x[i] - mean) * (x[i + k] - mean))
                    .sum::<f64>()
                    / n as f64
            })
            .collect()
    }

    /// Periodogram via the autocovariance Fourier sum, the definition used as
    /// a cross-check oracle against the FFT path.
    fn periodogram_gamma_sum(x: &[f64], w: f64) -> f64 {
        let gamma = acov_direct(x);
        let mut v = gamma[0];
        for (s, g) in gamma.iter().enumerate().skip(1) {
            v += 2.0 * g * (w * s as f64).cos();
        }
        v
    }

    fn rng_series(seed: u64, n: usize) -> TimeSeries {
        // small xorshift, good enough for test fixtures
        let mut state = seed.max(1);
        let mut vals = Vec::with_capacity(n);
        for _ in 0..n {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            vals.push((state as f64 / u64::MAX as f64) * 2.0 - 1.0);
        }
        TimeSeries::new(vals).unwrap()
    }

    #[test]
    fn mean_basic_cases() {
        let c = TimeSeries::new(vec![1.0, 1.0, 1.0, 1.0]).unwrap();
        assert_eq!(sample_mean(&c), 1.0);
        let s = TimeSeries::new(vec![1.0, 2.0, 3.0]).unwrap();
        assert_eq!(sample_mean(&s), 2.0);
        let d = TimeSeries::new(vec![0.5, -0.5, 2.0, 2.0]).unwrap();
        assert_eq!(sample_mean(&d), 1.0);
    }

    #[test]
    fn empty_and_nonfinite_rejected() {
        assert!(matches!(TimeSeries::new(vec![]), Err(Error::EmptySeries)));
        assert!(matches!(
            TimeSeries::new(vec![1.0, f64::NAN]),
            Err(Error::NonFinite { index: 1 })
        ));
        assert!(matches!(
            TimeSeries::new(vec![f64::INFINITY]),
            Err(Error::NonFinite { index: 0 })
        ));
    }

    #[test]
    fn autocovariance_small_series() {
        let x = TimeSeries::new(vec![1.0, 2.0, 3.0]).unwrap();
        let acf = sample_autocovariance(&x).unwrap();
        assert!((acf.gamma(0) - 2.0 / 3.0).abs() < 1e-12);
        assert!(acf.gamma(1).abs() < 1e-12);
        assert!((acf.gamma(2) + 1.0 / 3.0).abs() < 1e-12);
        // lags at and beyond n are zero
        assert_eq!(acf.gamma(3), 0.0);
        assert_eq!(acf.gamma(-5), 0.0);
    }

    #[test]
    fn autocovariance_constant_series_is_zero() {
        let x = TimeSeries::new(vec![7.5; 16]).unwrap();
        let acf = sample_autocovariance(&x).unwrap();
        assert!(acf.lags().iter().all(|&g| g.abs() < 1e-12));
    }

    #[test]
    fn autocovariance_too_short() {
        let x = TimeSeries::new(vec![1.0]).unwrap();
        assert!(matches!(
            sample_autocovariance(&x),
            Err(Error::TooShort { n: 1, min: 2 })
        ));
    }

    #[test]
    fn autocovariance_fft_matches_direct() {
        for seed in [3u64, 11, 99] {
            for n in [5usize, 16, 37, 100] {
                let x = rng_series(seed, n);
                let acf = sample_autocovariance(&x).unwrap();
                let direct = acov_direct(x.values());
                for (k, &d) in direct.iter().enumerate() {
                    assert!(
                        (acf.gamma(k as i64) - d).abs() < 1e-12,
                        "lag {k} mismatch at n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn fourier_grid_index_sets() {
        let g5 = fourier_grid(5).unwrap();
        assert_eq!(g5.indices().collect::<Vec<_>>(), vec![-2, -1, 0, 1, 2]);
        let g4 = fourier_grid(4).unwrap();
        assert_eq!(g4.indices().collect::<Vec<_>>(), vec![-1, 0, 1, 2]);
        let g1 = fourier_grid(1).unwrap();
        assert_eq!(g1.indices().collect::<Vec<_>>(), vec![0]);
        assert!(fourier_grid(0).is_err());
        for n in 1..40 {
            let g = fourier_grid(n).unwrap();
            assert_eq!(g.indices().count(), n);
        }
    }

    #[test]
    fn grid_nearest_index_snaps() {
        let g = fourier_grid(100).unwrap();
        let step = 2.0 * PI / 100.0;
        let w = g.freq(5) + 0.4 * step;
        assert_eq!(g.nearest_index(w), 5);
        let w = g.freq(5) + 0.6 * step;
        assert_eq!(g.nearest_index(w), 6);
        assert!(g.exact_index(g.freq(7)).is_ok());
        assert!(g.exact_index(g.freq(7) + 0.3 * step).is_err());
    }

    #[test]
    fn periodogram_zero_at_origin_and_even() {
        let x = rng_series(42, 64);
        let grid = fourier_grid(64).unwrap();
        let p = periodogram(&x, &grid).unwrap();
        assert_eq!(p.value(0), 0.0);
        for j in 1..=31i64 {
            assert_eq!(p.value(j), p.value(-j));
        }
        assert!(p.values().iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn periodogram_alternating_series_at_pi() {
        let x = TimeSeries::new(vec![1.0, -1.0, 1.0, -1.0]).unwrap();
        let grid = fourier_grid(4).unwrap();
        let p = periodogram(&x, &grid).unwrap();
        // brute-force DFT oracle
        let direct = periodogram_gamma_sum(x.values(), PI);
        assert!((p.value(2) - 4.0).abs() < 1e-12);
        assert!((p.value(2) - direct).abs() < 1e-12);
    }

    #[test]
    fn periodogram_matches_gamma_sum_oracle() {
        for seed in [7u64, 21] {
            for n in [16usize, 33, 50] {
                let x = rng_series(seed, n);
                let grid = fourier_grid(n).unwrap();
                let p = periodogram(&x, &grid).unwrap();
                let scale = sample_autocovariance(&x).unwrap().variance();
                for j in grid.indices() {
                    let oracle = periodogram_gamma_sum(x.values(), grid.freq(j));
                    assert!(
                        (p.value(j) - oracle).abs() < 1e-8 * scale,
                        "n={n} j={j}: {} vs {}",
                        p.value(j),
                        oracle
                    );
                }
            }
        }
    }

    #[test]
    fn periodogram_parseval() {
        let x = rng_series(5, 128);
        let grid = fourier_grid(128).unwrap();
        let p = periodogram(&x, &grid).unwrap();
        let acf = sample_autocovariance(&x).unwrap();
        let lhs = p.mean_ordinate();
        assert!((lhs - acf.variance()).abs() < 1e-10 * acf.variance());
    }

    #[test]
    fn periodogram_grid_mismatch() {
        let x = rng_series(1, 10);
        let grid = fourier_grid(12).unwrap();
        assert!(matches!(
            periodogram(&x, &grid),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn detrend_single_segment_is_global_centering() {
        let x = rng_series(9, 40);
        let shifted: Vec<f64> = x.values().iter().map(|v| v + 5.0).collect();
        let w = TimeSeries::new(shifted).unwrap();
        let (model, resid) = detrend(
            &w,
            TrendModelKind::PiecewiseConstant {
                change_points: vec![],
            },
        )
        .unwrap();
        let mean = sample_mean(&w);
        assert!((model.eta_hat[0] - mean).abs() < 1e-12);
        for (r, v) in resid.values().iter().zip(w.values()) {
            assert!((r - (v - mean)).abs() < 1e-12);
        }
    }

    #[test]
    fn detrend_noiseless_step_recovers_exactly() {
        let mut vals = vec![3.0; 50];
        vals.extend(vec![7.0; 50]);
        let w = TimeSeries::new(vals).unwrap();
        let (model, resid) = detrend(
            &w,
            TrendModelKind::PiecewiseConstant {
                change_points: vec![50],
            },
        )
        .unwrap();
        assert_eq!(model.eta_hat, vec![3.0, 7.0]);
        assert!(resid.values().iter().all(|&r| r.abs() < 1e-12));
    }

    #[test]
    fn detrend_seasonal_recovers_phase_means() {
        let d = 4;
        let mu = [2.0, -1.0, 0.5, 3.0];
        let noise = rng_series(13, 200);
        let vals: Vec<f64> = noise
            .values()
            .iter()
            .enumerate()
            .map(|(t, &e)| mu[t % d] + e)
            .collect();
        let w = TimeSeries::new(vals.clone()).unwrap();
        let (model, _) = detrend(&w, TrendModelKind::Seasonal { period: d }).unwrap();
        // per-phase averaging oracle
        for phase in 0..d {
            let phase_vals: Vec<f64> = vals
                .iter()
                .enumerate()
                .filter(|(t, _)| t % d == phase)
                .map(|(_, &v)| v)
                .collect();
            let oracle = phase_vals.iter().sum::<f64>() / phase_vals.len() as f64;
            assert!((model.eta_hat[phase] - oracle).abs() < 1e-12);
        }
    }

    #[test]
    fn detrend_regression_and_rank_deficiency() {
        let n = 60;
        let t: Vec<f64> = (1..=n).map(|v| v as f64).collect();
        let ones = vec![1.0; n];
        let noise = rng_series(17, n);
        let vals: Vec<f64> = noise
            .values()
            .iter()
            .zip(&t)
            .map(|(&e, &tt)| 1.5 + 0.25 * tt + e)
            .collect();
        let w = TimeSeries::new(vals).unwrap();
        let (model, resid) = detrend(
            &w,
            TrendModelKind::Regression {
                columns: vec![ones.clone(), t.clone()],
            },
        )
        .unwrap();
        assert_eq!(model.eta_hat.len(), 2);
        // residuals orthogonal to the basis
        let dot: f64 = resid.values().iter().zip(&t).map(|(r, tt)| r * tt).sum();
        assert!(dot.abs() < 1e-8);

        let dup = detrend(
            &w,
            TrendModelKind::Regression {
                columns: vec![ones.clone(), ones],
            },
        );
        assert!(matches!(dup, Err(Error::RankDeficientBasis)));
    }

    #[test]
    fn detrend_segment_too_short() {
        let w = rng_series(3, 10);
        let r = detrend(
            &w,
            TrendModelKind::PiecewiseConstant {
                change_points: vec![9],
            },
        );
        assert!(matches!(r, Err(Error::SegmentTooShort { len: 1 })));
    }

    #[test]
    fn detrend_is_idempotent() {
        let kinds = [
            TrendModelKind::Seasonal { period: 5 },
            TrendModelKind::PiecewiseConstant {
                change_points: vec![30, 60],
            },
        ];
        let w = rng_series(31, 90);
        for kind in kinds {
            let (_, resid) = detrend(&w, kind.clone()).unwrap();
            let (_, resid2) = detrend(&resid, kind).unwrap();
            for (a, b) in resid.values().iter().zip(resid2.values()) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }
}
