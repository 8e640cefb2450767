//! Power means `M_t` and weighted power expected values `E_t` over the
//! extended reals, and the orbit statistics built on them: `orb_t`,
//! `diam_t`, relative size and musicality.
//!
//! Finite `t` is evaluated in log space with a log-sum-exp shift, so
//! `|t|` in the hundreds does not overflow. `|t| < 1e-9` uses the geometric
//! mean, and `t = ±∞` return the max/min. For orbit multisets `t = 1` and
//! `t = -1` use the exact closed forms `Σ|O|²/|S|` and `|S|/#orbits`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::orbits::{orbit_partition, OrbitMultiset};
use crate::perm::GeneratorSet;
use crate::scales::{enumerate_universe, Scale, ScaleError};

/// Below this `|t|` the geometric-mean branch is used.
pub const GEOMETRIC_SWITCH: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeanError {
    #[error("empty input")]
    Empty,
    #[error("values must be positive, got {0}")]
    NonPositive(f64),
    #[error("{values} values but {weights} weights")]
    LengthMismatch { values: usize, weights: usize },
    #[error("weights must be positive and sum to 1 (sum = {0})")]
    BadWeights(f64),
    #[error("t must not be NaN")]
    NaN,
    #[error("orbit size {0} does not occur in the multiset")]
    UnknownOrbitSize(u64),
    #[error("t grid must be finite and ascending")]
    BadGrid,
    #[error(transparent)]
    Scale(#[from] ScaleError),
}

/// Exponent of a power mean: a finite real or ±∞, never NaN.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct TParam(f64);

impl TParam {
    pub const ZERO: TParam = TParam(0.0);
    pub const ONE: TParam = TParam(1.0);
    pub const MINUS_ONE: TParam = TParam(-1.0);
    pub const INFINITY: TParam = TParam(f64::INFINITY);
    pub const NEG_INFINITY: TParam = TParam(f64::NEG_INFINITY);

    pub fn new(t: f64) -> Result<Self, MeanError> {
        if t.is_nan() {
            Err(MeanError::NaN)
        } else {
            Ok(TParam(t))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }
}

impl TryFrom<f64> for TParam {
    type Error = MeanError;

    fn try_from(t: f64) -> Result<Self, Self::Error> {
        TParam::new(t)
    }
}

impl fmt::Display for TParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == f64::INFINITY {
            f.write_str("inf")
        } else if self.0 == f64::NEG_INFINITY {
            f.write_str("-inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl FromStr for TParam {
    type Err = String;

    /// Accepts decimal numbers and `inf`, `+inf`, `-inf`, `∞`, `-∞`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let v = match s {
            "inf" | "+inf" | "∞" | "+∞" => f64::INFINITY,
            "-inf" | "-∞" => f64::NEG_INFINITY,
            _ => s.parse::<f64>().map_err(|e| format!("bad t value {s:?}: {e}"))?,
        };
        TParam::new(v).map_err(|e| e.to_string())
    }
}

fn validate(values: &[f64], weights: Option<&[f64]>) -> Result<(), MeanError> {
    if values.is_empty() {
        return Err(MeanError::Empty);
    }
    if let Some(&bad) = values.iter().find(|&&x| !x.is_finite() || x <= 0.0) {
        return Err(MeanError::NonPositive(bad));
    }
    if let Some(w) = weights {
        if w.len() != values.len() {
            return Err(MeanError::LengthMismatch {
                values: values.len(),
                weights: w.len(),
            });
        }
        let sum: f64 = w.iter().sum();
        if w.iter().any(|&x| x.is_nan() || x <= 0.0) || (sum - 1.0).abs() > 1e-12 {
            return Err(MeanError::BadWeights(sum));
        }
    }
    Ok(())
}

/// `log Σ exp(a_i)` over pairs `(a_i, log w_i)`, shifted by the max term.
fn log_sum_exp(terms: impl Iterator<Item = f64> + Clone) -> f64 {
    let max = terms.clone().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + terms.map(|a| (a - max).exp()).sum::<f64>().ln()
}

/// Weighted power mean over `(x_i, w_i)` with the weights summing to 1.
fn weighted_mean(terms: &[(f64, f64)], t: f64) -> f64 {
    if t == f64::INFINITY {
        return terms.iter().map(|&(x, _)| x).fold(f64::NEG_INFINITY, f64::max);
    }
    if t == f64::NEG_INFINITY {
        return terms.iter().map(|&(x, _)| x).fold(f64::INFINITY, f64::min);
    }
    if t.abs() < GEOMETRIC_SWITCH {
        return terms.iter().map(|&(x, w)| w * x.ln()).sum::<f64>().exp();
    }
    let lse = log_sum_exp(terms.iter().map(|&(x, w)| t * x.ln() + w.ln()));
    (lse / t).exp()
}

/// `M_t` (uniform weights) or `E_t` (given probability weights) of positive
/// values.
pub fn power_mean(values: &[f64], weights: Option<&[f64]>, t: TParam) -> Result<f64, MeanError> {
    validate(values, weights)?;
    let n = values.len() as f64;
    let terms: Vec<(f64, f64)> = match weights {
        Some(w) => values.iter().copied().zip(w.iter().copied()).collect(),
        None => values.iter().map(|&x| (x, 1.0 / n)).collect(),
    };
    Ok(weighted_mean(&terms, t.0))
}

/// `orb_t`: the t-power mean of `|Gs|` over the elements `s` of the set.
pub fn orb_t(m: &OrbitMultiset, t: TParam) -> Result<f64, MeanError> {
    if m.is_empty() {
        return Err(MeanError::Empty);
    }
    let total = m.total_points() as f64;
    let t = t.0;
    if t == 1.0 {
        return Ok(m.sum_of_squares() as f64 / total);
    }
    if t == -1.0 {
        return Ok(total / m.total_orbits() as f64);
    }
    // an orbit of size x contributes x·count elements of value x
    let terms: Vec<(f64, f64)> = m
        .size_counts()
        .iter()
        .map(|(&x, &c)| (x as f64, (x * c) as f64 / total))
        .collect();
    Ok(weighted_mean(&terms, t))
}

/// `diam_t`: maximal orbit size over `orb_t`.
pub fn diam_t(m: &OrbitMultiset, t: TParam) -> Result<f64, MeanError> {
    let max = m.max_size().ok_or(MeanError::Empty)?;
    Ok(max as f64 / orb_t(m, t)?)
}

/// Size of one orbit relative to `orb_t`.
pub fn relative_size(orbit_size: u64, m: &OrbitMultiset, t: TParam) -> Result<f64, MeanError> {
    if m.count_of(orbit_size) == 0 {
        return Err(MeanError::UnknownOrbitSize(orbit_size));
    }
    Ok(orbit_size as f64 / orb_t(m, t)?)
}

/// `(G,t)`-musicality of a scale: its orbit size relative to `orb_t` over
/// all scales of the same size and mode.
pub fn musicality(gens: &GeneratorSet, t: TParam, s: Scale) -> Result<f64, MeanError> {
    let universe = enumerate_universe(s.len(), s.mode())?;
    let partition = orbit_partition(gens, &universe)?;
    let size = partition.orbit_size_of(s).expect("scale lies in its own universe") as u64;
    relative_size(size, &partition.multiset(), t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    Orb,
    Diam,
    /// Plain `M_t` of the orbit sizes, one value per orbit.
    RawMean,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeanCurve {
    pub kind: CurveKind,
    pub t_samples: Vec<f64>,
    pub values: Vec<f64>,
}

impl MeanCurve {
    /// CSV with columns `t,value`.
    pub fn to_csv(&self, precision: usize) -> String {
        let mut out = String::from("t,value\n");
        for (t, v) in self.t_samples.iter().zip(&self.values) {
            out.push_str(&format!("{t:.precision$},{v:.precision$}\n"));
        }
        out
    }
}

/// Evenly spaced grid of `samples` points on `[lo, hi]`.
pub fn linspace(lo: f64, hi: f64, samples: usize) -> Vec<f64> {
    match samples {
        0 => Vec::new(),
        1 => vec![lo],
        n => (0..n)
            .map(|i| {
                if i == n - 1 {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

/// Samples `orb_t`, `diam_t` or the raw power mean of orbit sizes on a grid.
pub fn sample_curve(m: &OrbitMultiset, t_grid: &[f64], kind: CurveKind) -> Result<MeanCurve, MeanError> {
    if t_grid.iter().any(|t| !t.is_finite()) || t_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(MeanError::BadGrid);
    }
    let raw: Vec<f64> = m
        .size_counts()
        .iter()
        .flat_map(|(&x, &c)| std::iter::repeat_n(x as f64, c as usize))
        .collect();
    let values = t_grid
        .iter()
        .map(|&t| {
            let t = TParam(t);
            match kind {
                CurveKind::Orb => orb_t(m, t),
                CurveKind::Diam => diam_t(m, t),
                CurveKind::RawMean => power_mean(&raw, None, t),
            }
        })
        .collect::<Result<_, _>>()?;
    Ok(MeanCurve {
        kind,
        t_samples: t_grid.to_vec(),
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG: [f64; 5] = [2.0, 2.0, 7.0, 8.0, 10.0];

    fn t(v: f64) -> TParam {
        TParam::new(v).unwrap()
    }

    fn gamma_multiset() -> OrbitMultiset {
        OrbitMultiset::from_counts([(32, 1), (16, 5), (8, 20), (4, 30), (2, 30), (1, 10)])
    }

    fn fig2_multiset() -> OrbitMultiset {
        OrbitMultiset::from_counts([(2, 2), (7, 1), (8, 1), (10, 1)])
    }

    #[test]
    fn power_mean_examples() {
        assert!((power_mean(&FIG, None, t(1.0)).unwrap() - 5.8).abs() < 1e-12);
        assert_eq!(power_mean(&FIG, None, TParam::INFINITY).unwrap(), 10.0);
        assert_eq!(power_mean(&FIG, None, TParam::NEG_INFINITY).unwrap(), 2.0);
        // direct product formula
        let geo = 2240f64.powf(0.2);
        assert!((power_mean(&FIG, None, TParam::ZERO).unwrap() - geo).abs() < 1e-12);
        assert!((geo - 4.677886).abs() < 1e-6);
    }

    #[test]
    fn power_mean_matches_naive_formula() {
        for tv in [-3.0, -1.0, -0.5, 0.5, 2.0, 3.0] {
            let naive = (FIG.iter().map(|x: &f64| x.powf(tv)).sum::<f64>() / 5.0).powf(1.0 / tv);
            let got = power_mean(&FIG, None, t(tv)).unwrap();
            assert!((got - naive).abs() < 1e-12 * naive, "t={tv}");
        }
    }

    #[test]
    fn power_mean_large_t_does_not_overflow() {
        let v = [924.0, 1.0, 500.0];
        let hi = power_mean(&v, None, t(300.0)).unwrap();
        assert!(hi.is_finite() && hi < 924.0 && hi > 900.0);
        let lo = power_mean(&v, None, t(-300.0)).unwrap();
        assert!(lo.is_finite() && lo > 1.0 && lo < 1.01);
    }

    #[test]
    fn weighted_expected_value() {
        let w = [0.5, 0.25, 0.25];
        let x = [1.0, 2.0, 4.0];
        assert!((power_mean(&x, Some(&w), t(1.0)).unwrap() - 2.0).abs() < 1e-12);
        let geo = 2f64.powf(0.25) * 4f64.powf(0.25);
        assert!((power_mean(&x, Some(&w), TParam::ZERO).unwrap() - geo).abs() < 1e-12);
    }

    #[test]
    fn power_mean_errors() {
        assert_eq!(power_mean(&[], None, t(1.0)), Err(MeanError::Empty));
        assert_eq!(power_mean(&[1.0, 0.0], None, t(1.0)), Err(MeanError::NonPositive(0.0)));
        assert_eq!(
            power_mean(&[1.0, 2.0], Some(&[1.0]), t(1.0)),
            Err(MeanError::LengthMismatch { values: 2, weights: 1 })
        );
        assert!(matches!(
            power_mean(&[1.0, 2.0], Some(&[0.5, 0.6]), t(1.0)),
            Err(MeanError::BadWeights(_))
        ));
        assert_eq!(TParam::new(f64::NAN), Err(MeanError::NaN));
    }

    #[test]
    fn tparam_parsing() {
        assert_eq!("inf".parse::<TParam>().unwrap(), TParam::INFINITY);
        assert_eq!("-inf".parse::<TParam>().unwrap(), TParam::NEG_INFINITY);
        assert_eq!("-0.5".parse::<TParam>().unwrap(), t(-0.5));
        assert!("NaN".parse::<TParam>().is_err());
        assert!("x".parse::<TParam>().is_err());
    }

    #[test]
    fn orb_gamma() {
        let m = gamma_multiset();
        assert_eq!(orb_t(&m, t(1.0)).unwrap(), 4194.0 / 462.0);
        assert_eq!(orb_t(&m, t(-1.0)).unwrap(), 462.0 / 96.0);
        assert_eq!(orb_t(&m, t(-1.0)).unwrap(), 4.8125);
        let single = OrbitMultiset::from_counts([(7, 3)]);
        for tv in [-5.0, -1.0, 0.0, 0.3, 1.0, 8.0] {
            assert!((orb_t(&single, t(tv)).unwrap() - 7.0).abs() < 1e-12);
        }
    }

    #[test]
    fn diam_gamma() {
        let m = gamma_multiset();
        assert!((diam_t(&m, t(1.0)).unwrap() - 3.5250).abs() < 5e-5);
        assert!((diam_t(&m, t(0.0)).unwrap() - 4.8324).abs() < 5e-5);
        assert!((diam_t(&m, t(-1.0)).unwrap() - 6.6494).abs() < 5e-5);
        let flat = OrbitMultiset::from_counts([(4, 9)]);
        for tv in [-2.0, 0.0, 2.0] {
            assert!((diam_t(&flat, t(tv)).unwrap() - 1.0).abs() < 1e-12);
        }
        assert_eq!(diam_t(&OrbitMultiset::default(), t(1.0)), Err(MeanError::Empty));
    }

    #[test]
    fn relative_sizes() {
        let m = gamma_multiset();
        assert!((relative_size(32, &m, t(1.0)).unwrap() - 3.5250).abs() < 5e-5);
        assert!((relative_size(1, &m, t(-1.0)).unwrap() - 96.0 / 462.0).abs() < 1e-15);
        assert!((relative_size(1, &m, t(-1.0)).unwrap() - 0.20779).abs() < 5e-6);
        assert_eq!(relative_size(3, &m, t(1.0)), Err(MeanError::UnknownOrbitSize(3)));
    }

    #[test]
    fn fig2_curve_points() {
        let m = fig2_multiset();
        let c = sample_curve(&m, &[-1.0, 1.0], CurveKind::Diam).unwrap();
        assert!((c.values[0] - 10.0 / 5.8).abs() < 1e-12);
        assert!((c.values[1] - 10.0 / (221.0 / 29.0)).abs() < 1e-12);
        assert!((c.values[1] - 1.3122).abs() < 5e-5);
        assert!((c.values[0] - 1.7241).abs() < 5e-5);
        assert_eq!(diam_t(&m, TParam::NEG_INFINITY).unwrap(), 5.0);
        assert_eq!(diam_t(&m, TParam::INFINITY).unwrap(), 1.0);
    }

    #[test]
    fn curve_rejects_bad_grid() {
        let m = fig2_multiset();
        assert_eq!(sample_curve(&m, &[1.0, 0.0], CurveKind::Orb), Err(MeanError::BadGrid));
        assert_eq!(
            sample_curve(&m, &[0.0, f64::INFINITY], CurveKind::Orb),
            Err(MeanError::BadGrid)
        );
    }

    #[test]
    fn raw_mean_curve_is_fig1() {
        let m = OrbitMultiset::from_sizes([2, 2, 7, 8, 10]);
        let c = sample_curve(&m, &linspace(-10.0, 10.0, 21), CurveKind::RawMean).unwrap();
        assert!((c.values[11] - 5.8).abs() < 1e-12);
        // M_{±10} by hand: 2·0.4^(-1/10) and (Σx^10/5)^(1/10)
        assert!((c.values[0] - 2.0 * 0.4f64.powf(-0.1)).abs() < 1e-3);
        let top = ([2.0f64, 2.0, 7.0, 8.0, 10.0].iter().map(|x| x.powi(10)).sum::<f64>() / 5.0).powf(0.1);
        assert!((c.values[20] - top).abs() < 1e-9);
        assert!(c.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn linspace_endpoints() {
        let g = linspace(-1.0, 1.0, 41);
        assert_eq!(g.len(), 41);
        assert_eq!(g[0], -1.0);
        assert_eq!(g[40], 1.0);
        assert!((g[20]).abs() < 1e-15);
    }
}
