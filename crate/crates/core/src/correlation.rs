//! Exact empirical pair correlation of a finite point set in `(0, 1]`.
//!
//! For `N` the normalizing cardinality and a window length `lambda`, the
//! statistic counts ordered pairs `(x, y)`, `y != x`, whose difference mod 1
//! falls in `(0, lambda/N]`. Membership is decided by cross-multiplied
//! integer comparisons, so boundary pairs (differences exactly `lambda/N`)
//! are counted deterministically, and wraparound is handled by comparing
//! tail points against head points shifted by `+1` rather than by floating
//! fractional parts.

use alloc::vec::Vec;

use num_rational::Rational64;

use crate::farey::{FareySpec, Fraction};
use crate::Error;

/// Default cap on materialized point sets (about `Q = 18000`).
pub const DEFAULT_POINT_CAP: u64 = 200_000_000;

/// An exact scaled window `(0, lambda/N]` for gap membership tests.
#[derive(Debug, Clone, Copy)]
pub struct RationalWindow {
    lam_num: i64,
    lam_den: i64,
    n_norm: u64,
}

impl RationalWindow {
    /// Builds the window; `lambda` must be positive and `n_norm >= 1`.
    pub fn new(lambda: Rational64, n_norm: u64) -> Result<Self, Error> {
        if lambda <= Rational64::new(0, 1) {
            return Err(Error::NonPositiveLambda);
        }
        assert!(n_norm >= 1, "normalizing cardinality must be >= 1");
        Ok(RationalWindow {
            lam_num: *lambda.numer(),
            lam_den: *lambda.denom(),
            n_norm,
        })
    }

    /// The window length `lambda`.
    pub fn lambda(&self) -> Rational64 {
        Rational64::new(self.lam_num, self.lam_den)
    }

    /// The normalizing cardinality `N`.
    pub fn n_norm(&self) -> u64 {
        self.n_norm
    }

    /// Whether `lambda/N >= 1`, i.e. the window covers the whole circle.
    fn covers_circle(&self) -> bool {
        self.lam_num as i128 >= self.lam_den as i128 * self.n_norm as i128
    }

    /// Precomputed comparison constants, after checking that no product in
    /// the gap test `d * lam_den * N <= lam_num * q q'` can overflow `i128`
    /// for denominators up to `max_den`.
    fn gap_test(&self, max_den: u64) -> Result<GapTest, Error> {
        let m = max_den as u128;
        let scale = (self.lam_den as u128)
            .checked_mul(self.n_norm as u128)
            .ok_or(Error::Overflow)?;
        let worst_lhs = m
            .checked_mul(m)
            .and_then(|mm| mm.checked_mul(2))
            .and_then(|d| d.checked_mul(scale));
        let worst_rhs = m
            .checked_mul(m)
            .and_then(|mm| mm.checked_mul(self.lam_num as u128));
        match (worst_lhs, worst_rhs) {
            (Some(l), Some(r)) if l <= i128::MAX as u128 && r <= i128::MAX as u128 => Ok(GapTest {
                scale: scale as i128,
                lam_num: self.lam_num as i128,
            }),
            _ => Err(Error::Overflow),
        }
    }
}

/// Comparison constants of a [`RationalWindow`], safe for unchecked `i128`
/// products once `gap_test` has validated the magnitudes.
#[derive(Debug, Clone, Copy)]
struct GapTest {
    scale: i128,
    lam_num: i128,
}

impl GapTest {
    /// Whether a positive gap `d / (q q')` is at most `lambda / N`.
    #[inline]
    fn admits(&self, d: i128, q_prod: i128) -> bool {
        d * self.scale <= self.lam_num * q_prod
    }
}

/// One row of a correlation curve.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveRow {
    /// Window length.
    pub lambda: Rational64,
    /// Ordered pairs with scaled gap in `(0, lambda]`.
    pub pair_count: u64,
    /// `pair_count / N`.
    pub g_empirical: f64,
    /// Closed-form limit value, when filled in by the caller.
    pub g_theory: Option<f64>,
}

/// Empirical pair correlation values on a lambda grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationCurve {
    /// Cardinality of the underlying point set.
    pub n_points: u64,
    /// Rows in increasing lambda order.
    pub rows: Vec<CurveRow>,
}

/// One bin of an empirical density histogram over `(lo, hi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityBin {
    /// Left bin edge (excluded).
    pub lo: Rational64,
    /// Right bin edge (included).
    pub hi: Rational64,
    /// Ordered pairs with scaled gap inside the bin.
    pub pair_count: u64,
    /// `pair_count / (N * bin width)`, the piecewise-constant density value.
    pub density: f64,
}

/// Counts ordered pairs `(x, y)`, `y != x`, of `points` whose difference
/// mod 1 lies in `(0, lambda/n_norm]`.
///
/// `points` must be strictly increasing in `(0, 1]`; such points are
/// pairwise distinct mod 1, so the half-open and closed windows `[0,
/// lambda]` and `(0, lambda]` count the same pairs. Runs in `O(P)` via a
/// two-pointer sweep over the sorted points with a `+1`-shifted copy
/// standing in for wraparound.
pub fn pair_count_upto(points: &[Fraction], n_norm: u64, lambda: Rational64) -> Result<u64, Error> {
    let window = RationalWindow::new(lambda, n_norm)?;
    ensure_sorted(points)?;
    let p = points.len();
    if p <= 1 {
        return Ok(0);
    }
    if window.covers_circle() {
        return Ok(p as u64 * (p as u64 - 1));
    }
    let max_den = points.iter().map(|f| f.den).max().unwrap_or(1);
    let test = window.gap_test(max_den)?;

    #[cfg(feature = "parallel")]
    {
        const CHUNK: usize = 1 << 14;
        if p > 2 * CHUNK {
            use rayon::prelude::*;
            let starts: Vec<usize> = (0..p).step_by(CHUNK).collect();
            let total = starts
                .par_iter()
                .map(|&s| sweep(points, s, (s + CHUNK).min(p), test))
                .sum();
            return Ok(total);
        }
    }
    Ok(sweep(points, 0, p, test))
}

/// Two-pointer sweep counting qualifying partners for each `i` in
/// `lo..hi`. Chunks tile `0..P`, and per-chunk sums equal the sequential
/// total exactly.
fn sweep(points: &[Fraction], lo: usize, hi: usize, test: GapTest) -> u64 {
    let p = points.len();
    // index into the points followed by a +1-shifted copy
    let at = |j: usize| -> (u64, u64) {
        if j < p {
            (points[j].num, points[j].den)
        } else {
            let f = points[j - p];
            (f.num + f.den, f.den)
        }
    };
    let mut total = 0u64;
    let mut reach = lo;
    for i in lo..hi {
        if reach < i {
            reach = i;
        }
        let (ai, qi) = (points[i].num as i128, points[i].den as i128);
        while reach - i < p - 1 {
            let (aj, qj) = at(reach + 1);
            let d = aj as i128 * qi - ai * qj as i128;
            if test.admits(d, qi * qj as i128) {
                reach += 1;
            } else {
                break;
            }
        }
        total += (reach - i) as u64;
    }
    total
}

fn ensure_sorted(points: &[Fraction]) -> Result<(), Error> {
    for w in points.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::UnsortedPoints);
        }
    }
    Ok(())
}

/// Materializes the spec's point set, guarding against runaway sizes.
fn materialize(spec: &FareySpec, cap: u64) -> Result<Vec<Fraction>, Error> {
    let mut points = Vec::new();
    for f in spec.stream()? {
        if points.len() as u64 >= cap {
            return Err(Error::PointCap {
                points: points.len() as u64 + 1,
                cap,
            });
        }
        points.push(f);
    }
    Ok(points)
}

/// Empirical pair correlation `G(lambda) = pair_count(lambda) / N` of the
/// spec's point set on a grid of window lengths, with `N` the set's own
/// cardinality. Uses [`DEFAULT_POINT_CAP`].
pub fn empirical_g(spec: &FareySpec, lambdas: &[Rational64]) -> Result<CorrelationCurve, Error> {
    empirical_g_capped(spec, lambdas, DEFAULT_POINT_CAP)
}

/// [`empirical_g`] with an explicit cap on the materialized point count.
pub fn empirical_g_capped(
    spec: &FareySpec,
    lambdas: &[Rational64],
    cap: u64,
) -> Result<CorrelationCurve, Error> {
    ensure_grid(lambdas)?;
    let points = materialize(spec, cap)?;
    let n = points.len() as u64;
    let mut rows = Vec::with_capacity(lambdas.len());
    for &lambda in lambdas {
        let pair_count = pair_count_upto(&points, n.max(1), lambda)?;
        rows.push(CurveRow {
            lambda,
            pair_count,
            g_empirical: pair_count as f64 / n.max(1) as f64,
            g_theory: None,
        });
    }
    Ok(CorrelationCurve { n_points: n, rows })
}

/// Piecewise-constant density estimate: splits `(0, lambda_max]` into
/// `bins` equal bins with exact rational edges and returns per-bin
/// `pair_count / (N * width)`. Uses [`DEFAULT_POINT_CAP`].
pub fn empirical_density(
    spec: &FareySpec,
    lambda_max: Rational64,
    bins: u32,
) -> Result<Vec<DensityBin>, Error> {
    empirical_density_capped(spec, lambda_max, bins, DEFAULT_POINT_CAP)
}

/// [`empirical_density`] with an explicit point cap.
pub fn empirical_density_capped(
    spec: &FareySpec,
    lambda_max: Rational64,
    bins: u32,
    cap: u64,
) -> Result<Vec<DensityBin>, Error> {
    if lambda_max <= Rational64::new(0, 1) {
        return Err(Error::NonPositiveLambda);
    }
    assert!(bins >= 1, "need at least one bin");
    let points = materialize(spec, cap)?;
    let n = points.len().max(1) as u64;
    let edge = |j: u32| -> Rational64 {
        Rational64::new(
            *lambda_max.numer() * j as i64,
            *lambda_max.denom() * bins as i64,
        )
    };
    let width = (*lambda_max.numer() as f64 / *lambda_max.denom() as f64) / bins as f64;
    let mut out = Vec::with_capacity(bins as usize);
    let mut below = 0u64;
    for j in 1..=bins {
        let hi = edge(j);
        let upto = pair_count_upto(&points, n, hi)?;
        out.push(DensityBin {
            lo: edge(j - 1),
            hi,
            pair_count: upto - below,
            density: (upto - below) as f64 / (n as f64 * width),
        });
        below = upto;
    }
    Ok(out)
}

fn ensure_grid(lambdas: &[Rational64]) -> Result<(), Error> {
    let zero = Rational64::new(0, 1);
    for (i, l) in lambdas.iter().enumerate() {
        if *l <= zero {
            return Err(Error::NonPositiveLambda);
        }
        if i > 0 && lambdas[i - 1] >= *l {
            return Err(Error::GridNotIncreasing);
        }
    }
    Ok(())
}
