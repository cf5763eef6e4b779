//! Closed-form limiting pair correlation curves and the asymptotic
//! identities used to cross-check them.
//!
//! Three families of limits are evaluated, all finite sums over the totient
//! table with a gcd correction:
//!
//! - `g_full`, the density for the unconstrained Farey sets;
//! - `g_m` / `cumulative_g_m`, the density and its antiderivative for
//!   denominators coprime to `m` (with `g_1 = g_full` pointwise);
//! - `g_tilde` / `cumulative_g_tilde`, the same pair for a residue class
//!   `b mod m`, independent of `b` and equal to `g_m` rescaled by `phi(m)`.
//!
//! Terms are accumulated in increasing `Delta` in double precision; the
//! sums have on the order of `2 lambda / C_m` terms, so no compensated
//! summation is needed at desk scale.

use crate::fmath;
use crate::ntheory::{
    constant_c, euler_phi, gcd_factor, k_fn, prime_divisors, SieveTables, ZETA_2,
};

/// The cutoff constant `kappa_m = 2 phi(m) / C_m` of the residue-class
/// curves. (Distinct from the multiplicative kernel `K_m(n)`; see
/// [`crate::ntheory::k_fn`].)
pub fn kappa_const(m: u64) -> f64 {
    assert!(m >= 1);
    2.0 * euler_phi(m) as f64 / constant_c(m)
}

/// A truncation index `floor(x)` for a correlation sum, with a relative
/// guard of `1e-12`: values that close to an integer are treated as that
/// integer, so grids landing on a cutoff within float noise truncate
/// deterministically.
#[derive(Debug, Clone, Copy)]
pub struct CutoffIndex {
    /// The window length the cutoff was computed for.
    pub lambda: f64,
    /// Number of terms in the sum; zero below the support threshold.
    pub bound: u64,
}

impl CutoffIndex {
    /// Cutoff `floor(2 lambda / C_m)` of the coprime-family sums.
    pub fn coprime(m: u64, lambda: f64) -> Self {
        CutoffIndex {
            lambda,
            bound: guarded_floor(2.0 * lambda / constant_c(m)),
        }
    }

    /// Cutoff `floor(kappa_m lambda)` of the residue-family sums.
    pub fn residue(m: u64, lambda: f64) -> Self {
        CutoffIndex {
            lambda,
            bound: guarded_floor(kappa_const(m) * lambda),
        }
    }
}

fn guarded_floor(x: f64) -> u64 {
    if x <= 0.0 {
        return 0;
    }
    let r = fmath::round(x);
    if fmath::abs(x - r) <= 1e-12 * x.max(1.0) {
        r as u64
    } else {
        fmath::floor(x) as u64
    }
}

/// Pair correlation density of the full Farey sets:
/// `g(lambda) = 1/(zeta(2) lambda^2) * sum_{Delta <= 2 zeta(2) lambda}
/// phi(Delta) log(2 zeta(2) lambda / Delta)`; zero when the sum is empty.
pub fn g_full(lambda: f64) -> f64 {
    assert!(lambda > 0.0, "g_full needs lambda > 0");
    let edge = 2.0 * ZETA_2 * lambda;
    let bound = guarded_floor(edge);
    if bound < 1 {
        return 0.0;
    }
    let tables = SieveTables::build(bound).expect("bound >= 1");
    let mut sum = 0.0;
    for delta in 1..=bound {
        sum += tables.phi(delta) as f64 * fmath::ln(edge / delta as f64);
    }
    sum / (ZETA_2 * lambda * lambda)
}

/// Pair correlation density of the coprime family:
/// `g_m(lambda) = (phi(m)/m) (C_m/lambda^2) * sum_{Delta <= 2 lambda/C_m}
/// phi(Delta) (Delta,m)/phi((Delta,m)) log(2 lambda/(C_m Delta))`.
///
/// The support is exactly `[C_m/2, oo)` and `g_1` agrees with [`g_full`]
/// pointwise.
pub fn g_m(m: u64, lambda: f64) -> f64 {
    assert!(m >= 1 && lambda > 0.0, "g_m needs m >= 1 and lambda > 0");
    let c = constant_c(m);
    let cut = CutoffIndex::coprime(m, lambda);
    if cut.bound < 1 {
        return 0.0;
    }
    let tables = SieveTables::build(cut.bound).expect("bound >= 1");
    let edge = 2.0 * lambda / c;
    let mut sum = 0.0;
    for delta in 1..=cut.bound {
        let gf = gcd_factor(delta, m);
        sum += tables.phi(delta) as f64 * ratio_to_f64(gf) * fmath::ln(edge / delta as f64);
    }
    euler_phi(m) as f64 / m as f64 * c / (lambda * lambda) * sum
}

/// Cumulative pair correlation of the coprime family,
/// `G_m(lambda) = int_0^lambda g_m`:
/// `2 (phi(m)/m) * sum_{Delta <= 2 lambda/C_m} (phi(Delta)/Delta)
/// (Delta,m)/phi((Delta,m)) (1 - r - r log(1/r))` with
/// `r = Delta C_m/(2 lambda)`. Nondecreasing, zero below `C_m/2`.
pub fn cumulative_g_m(m: u64, lambda: f64) -> f64 {
    assert!(
        m >= 1 && lambda > 0.0,
        "cumulative_g_m needs m >= 1 and lambda > 0"
    );
    let c = constant_c(m);
    let cut = CutoffIndex::coprime(m, lambda);
    if cut.bound < 1 {
        return 0.0;
    }
    let tables = SieveTables::build(cut.bound).expect("bound >= 1");
    let mut sum = 0.0;
    for delta in 1..=cut.bound {
        let r = delta as f64 * c / (2.0 * lambda);
        let term = 1.0 - r - r * fmath::ln(1.0 / r);
        sum += tables.phi(delta) as f64 / delta as f64 * ratio_to_f64(gcd_factor(delta, m)) * term;
    }
    2.0 * euler_phi(m) as f64 / m as f64 * sum
}

/// Pair correlation density of the residue-class family:
/// `g~_m(lambda) = C_m/(m phi(m) lambda^2) * sum_{Delta <= kappa_m lambda}
/// phi(Delta) (Delta,m)/phi((Delta,m)) log(kappa_m lambda / Delta)`.
///
/// Independent of the residue `b`, and equal to `g_m(phi(m) lambda)`; the
/// two routes are kept separate so that identity stays a checkable fact.
pub fn g_tilde(m: u64, lambda: f64) -> f64 {
    assert!(
        m >= 1 && lambda > 0.0,
        "g_tilde needs m >= 1 and lambda > 0"
    );
    let cut = CutoffIndex::residue(m, lambda);
    if cut.bound < 1 {
        return 0.0;
    }
    let tables = SieveTables::build(cut.bound).expect("bound >= 1");
    let edge = kappa_const(m) * lambda;
    let mut sum = 0.0;
    for delta in 1..=cut.bound {
        sum += tables.phi(delta) as f64
            * ratio_to_f64(gcd_factor(delta, m))
            * fmath::ln(edge / delta as f64);
    }
    constant_c(m) / (m as f64 * euler_phi(m) as f64) / (lambda * lambda) * sum
}

/// Cumulative pair correlation of the residue-class family,
/// `G~_m(lambda) = (2/m) * sum_{Delta <= kappa_m lambda} phi(Delta)
/// (Delta,m)/phi((Delta,m)) (1/Delta - 1/(kappa_m lambda) -
/// log(kappa_m lambda/Delta)/(kappa_m lambda))`.
///
/// Equals `cumulative_g_m(m, phi(m) lambda) / phi(m)`, again via an
/// independent summation route.
pub fn cumulative_g_tilde(m: u64, lambda: f64) -> f64 {
    assert!(
        m >= 1 && lambda > 0.0,
        "cumulative_g_tilde needs m >= 1 and lambda > 0"
    );
    let cut = CutoffIndex::residue(m, lambda);
    if cut.bound < 1 {
        return 0.0;
    }
    let tables = SieveTables::build(cut.bound).expect("bound >= 1");
    let edge = kappa_const(m) * lambda;
    let mut sum = 0.0;
    for delta in 1..=cut.bound {
        let term = 1.0 / delta as f64 - 1.0 / edge - fmath::ln(edge / delta as f64) / edge;
        sum += tables.phi(delta) as f64 * ratio_to_f64(gcd_factor(delta, m)) * term;
    }
    2.0 / m as f64 * sum
}

/// `lambda * (g_m(lambda) - 1)`, the scaled deviation from the unit limit.
/// Bounded in `lambda`, witnessing `g_m -> 1` at rate `1/lambda`.
pub fn limit_deficit(m: u64, lambda: f64) -> f64 {
    assert!(lambda >= 1.0, "limit_deficit is meant for lambda >= 1");
    lambda * (g_m(m, lambda) - 1.0)
}

/// Partial-sum asymptotic of the kernel's Dirichlet series: returns the
/// pair `(sum_{Delta <= x} Delta K_m(Delta) log(x/Delta),
/// c_m(2) x^2/(4 zeta(2)))` whose ratio tends to 1, where
/// `c_m(2) = prod_{p | m} (1 - p^{-2})^{-1}`.
pub fn dirichlet_partial_sum(m: u64, x: u64) -> (f64, f64) {
    assert!(m >= 1 && x >= 1);
    let xf = x as f64;
    let mut lhs = 0.0;
    for delta in 1..=x {
        lhs += delta as f64 * ratio_to_f64(k_fn(delta, m)) * fmath::ln(xf / delta as f64);
    }
    let mut c2 = 1.0;
    for p in prime_divisors(m) {
        c2 /= 1.0 - 1.0 / ((p * p) as f64);
    }
    (lhs, c2 * xf * xf / (4.0 * ZETA_2))
}

fn ratio_to_f64(r: num_rational::Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ntheory::gcd_factor;

    /// The explicit m = 2 closed form,
    /// `g_2(lambda) = 1/(3 zeta(2) lambda^2) * sum_{Delta <= 3 zeta(2)
    /// lambda} phi(Delta) (Delta, 2) log(3 zeta(2) lambda / Delta)`.
    fn g2_explicit(lambda: f64) -> f64 {
        let edge = 3.0 * ZETA_2 * lambda;
        let bound = guarded_floor(edge);
        if bound < 1 {
            return 0.0;
        }
        let tables = SieveTables::build(bound).unwrap();
        let mut sum = 0.0;
        for delta in 1..=bound {
            let even = if delta % 2 == 0 { 2.0 } else { 1.0 };
            sum += tables.phi(delta) as f64 * even * (edge / delta as f64).ln();
        }
        sum / (3.0 * ZETA_2 * lambda * lambda)
    }

    fn rel_close(a: f64, b: f64, tol: f64) -> bool {
        if a == 0.0 && b == 0.0 {
            return true;
        }
        (a - b).abs() <= tol * a.abs().max(b.abs())
    }

    #[test]
    fn g_full_below_support_is_zero() {
        assert_eq!(g_full(0.25), 0.0);
        assert_eq!(g_full(0.3), 0.0); // 1/(2 zeta(2)) ~ 0.304
    }

    #[test]
    fn g_full_single_term_value() {
        // only Delta = 1 contributes at lambda = 1/2
        let want = (ZETA_2).ln() / (ZETA_2 * 0.25);
        assert!(rel_close(g_full(0.5), want, 1e-12));
        assert!((g_full(0.5) - 1.2102620098916506).abs() < 1e-12);
    }

    #[test]
    fn g_full_tends_to_one() {
        assert!((g_full(200.0) - 1.0).abs() < 0.02);
    }

    #[test]
    fn g_m_reduces_to_g_full_at_m1() {
        for lambda in [0.31, 0.5, 0.9, 1.37, 2.0, 5.55, 41.0] {
            assert!(
                rel_close(g_m(1, lambda), g_full(lambda), 1e-12),
                "lambda={lambda}: {} vs {}",
                g_m(1, lambda),
                g_full(lambda)
            );
        }
    }

    #[test]
    fn g_m_matches_explicit_m2_form() {
        let mut lambda = 0.3;
        while lambda <= 10.0 {
            assert!(
                rel_close(g_m(2, lambda), g2_explicit(lambda), 1e-12),
                "lambda={lambda}"
            );
            lambda += 0.1;
        }
    }

    #[test]
    fn g_m_support_edge() {
        for m in 1..=12u64 {
            let edge = constant_c(m) / 2.0;
            assert_eq!(g_m(m, edge * (1.0 - 1e-9)), 0.0, "m={m} below edge");
            assert!(g_m(m, edge * 1.001) > 0.0, "m={m} above edge");
        }
        assert_eq!(g_m(3, 0.2), 0.0);
    }

    #[test]
    fn cumulative_below_support_is_zero() {
        assert_eq!(cumulative_g_m(1, 0.3), 0.0);
        for m in 1..=12u64 {
            assert_eq!(cumulative_g_m(m, 0.4 * constant_c(m)), 0.0);
        }
    }

    #[test]
    fn cumulative_is_nondecreasing() {
        for m in [1u64, 2, 3, 6] {
            let mut prev = 0.0;
            let mut lambda = 0.05;
            while lambda <= 6.0 {
                let v = cumulative_g_m(m, lambda);
                assert!(v >= prev - 1e-12, "m={m} lambda={lambda}");
                prev = v;
                lambda += 0.05;
            }
        }
    }

    /// Adaptive Simpson on a smooth piece.
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, eps: f64) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        if (left + right - whole).abs() <= 15.0 * eps {
            left + right + (left + right - whole) / 15.0
        } else {
            simpson(f, a, m, fa, flm, fm, eps / 2.0) + simpson(f, m, b, fm, frm, fb, eps / 2.0)
        }
    }

    /// Integrates g piecewise between its cutoff kinks.
    fn integrate_density(f: &dyn Fn(f64) -> f64, cuts: &[f64], hi: f64) -> f64 {
        let mut total = 0.0;
        let mut lo = 0.0;
        let mut edges: alloc::vec::Vec<f64> = cuts.iter().copied().filter(|&c| c < hi).collect();
        edges.push(hi);
        for b in edges {
            if b > lo {
                let fa = f(lo + 1e-12);
                let fb = f(b - 1e-12);
                let fm = f(0.5 * (lo + b));
                total += simpson(f, lo, b, fa, fm, fb, 1e-9);
            }
            lo = b;
        }
        total
    }

    #[test]
    fn cumulative_matches_quadrature_of_density() {
        for (m, lambda) in [(1u64, 1.0), (2, 2.0), (3, 1.7), (1, 4.8), (3, 5.0)] {
            let c = constant_c(m);
            let cuts: alloc::vec::Vec<f64> = (1..=guarded_floor(2.0 * lambda / c))
                .map(|k| k as f64 * c / 2.0)
                .collect();
            let quad = integrate_density(&|t| g_m(m, t), &cuts, lambda);
            let cum = cumulative_g_m(m, lambda);
            assert!(
                (quad - cum).abs() < 1e-6,
                "m={m} lambda={lambda}: quad={quad} cumulative={cum}"
            );
        }
    }

    #[test]
    fn derivative_of_cumulative_is_density() {
        let h = 1e-5;
        for m in [1u64, 2, 3, 6] {
            let c = constant_c(m);
            let mut lambda = c / 2.0 + 0.05;
            while lambda <= 5.0 {
                // skip grid points whose cutoff changes inside [lambda-h, lambda+h]
                let t = 2.0 * lambda / c;
                if (t - t.round()).abs() > 1e-2 {
                    let fd =
                        (cumulative_g_m(m, lambda + h) - cumulative_g_m(m, lambda - h)) / (2.0 * h);
                    let g = g_m(m, lambda);
                    assert!((fd - g).abs() < 1e-3, "m={m} lambda={lambda}: {fd} vs {g}");
                }
                lambda += 0.11;
            }
        }
    }

    #[test]
    fn residue_density_is_rescaled_coprime_density() {
        for lambda in [0.2, 0.45, 0.5, 1.0, 2.2, 7.0] {
            assert!(rel_close(g_tilde(1, lambda), g_full(lambda), 1e-12));
        }
        assert!(rel_close(g_tilde(2, 1.0), g_m(2, 1.0), 1e-12));
        assert!(rel_close(g_tilde(3, 1.0), g_m(3, 2.0), 1e-12));
        for m in 1..=12u64 {
            let phi_m = euler_phi(m) as f64;
            let mut lambda = 0.05;
            while lambda <= 5.0 {
                let t = kappa_const(m) * lambda;
                if (t - t.round()).abs() > 1e-6 && (t - 1.0).abs() > 1e-3 {
                    assert!(
                        rel_close(g_tilde(m, lambda), g_m(m, phi_m * lambda), 1e-12),
                        "m={m} lambda={lambda}: {} vs {}",
                        g_tilde(m, lambda),
                        g_m(m, phi_m * lambda)
                    );
                }
                lambda += 0.05;
            }
        }
    }

    #[test]
    fn cumulative_tilde_is_rescaled_cumulative() {
        for m in [1u64, 2, 3, 4, 6, 12] {
            let phi_m = euler_phi(m) as f64;
            for lambda in [0.21, 0.5, 0.77, 1.0, 2.5, 4.0] {
                let a = cumulative_g_tilde(m, lambda);
                let b = cumulative_g_m(m, phi_m * lambda) / phi_m;
                assert!(rel_close(a, b, 1e-10), "m={m} lambda={lambda}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn limit_deficit_is_bounded() {
        for m in [1u64, 2, 3, 6] {
            for lambda in [10.0, 31.0, 100.0, 316.0, 1000.0] {
                assert!(
                    limit_deficit(m, lambda).abs() <= 5.0,
                    "m={m} lambda={lambda}"
                );
            }
            assert!((g_m(m, 500.0) - 1.0).abs() <= 0.01);
            assert!((g_m(m, 1000.0) - 1.0).abs() <= 0.01);
        }
    }

    #[test]
    fn dirichlet_partial_sum_examples() {
        let (lhs, _) = dirichlet_partial_sum(1, 1);
        assert_eq!(lhs, 0.0); // single term, log 1 = 0
        for m in [1u64, 6] {
            let (lhs, main) = dirichlet_partial_sum(m, 10_000);
            assert!((lhs / main - 1.0).abs() <= 0.01, "m={m}: {lhs} vs {main}");
        }
        // c_6(2) = (1 - 1/4)^{-1} (1 - 1/9)^{-1} = 3/2
        let (_, main6) = dirichlet_partial_sum(6, 10_000);
        let x = 10_000.0f64;
        assert!((main6 - 1.5 * x * x / (4.0 * ZETA_2)).abs() < 1e-6 * main6);
    }

    #[test]
    fn kappa_is_cutoff_reciprocal_of_support() {
        for m in 1..=12u64 {
            // support of g_tilde starts at 1/kappa_m
            let edge = 1.0 / kappa_const(m);
            assert_eq!(CutoffIndex::residue(m, edge * 0.999).bound, 0);
            assert!(CutoffIndex::residue(m, edge * 1.001).bound >= 1);
            // and relates to the coprime cutoff through phi(m)
            let lam = 1.7;
            assert_eq!(
                CutoffIndex::residue(m, lam).bound,
                CutoffIndex::coprime(m, euler_phi(m) as f64 * lam).bound
            );
        }
    }

    #[test]
    fn guarded_floor_snaps_near_integers() {
        assert_eq!(guarded_floor(3.0 - 1e-14), 3);
        assert_eq!(guarded_floor(3.0 + 1e-14), 3);
        assert_eq!(guarded_floor(2.999998), 2);
        assert_eq!(guarded_floor(0.9999), 0);
        assert_eq!(guarded_floor(-1.0), 0);
        assert_eq!(guarded_floor(1e6 - 1e-8), 1_000_000);
    }

    #[test]
    fn gcd_factor_drives_m2_parity() {
        // (Delta, 2)/phi((Delta, 2)) is the (Delta, 2) of the explicit form
        for delta in 1..50u64 {
            let f = gcd_factor(delta, 2);
            let expect = if delta % 2 == 0 { 2 } else { 1 };
            assert_eq!(*f.numer(), expect);
            assert_eq!(*f.denom(), 1);
        }
    }
}
