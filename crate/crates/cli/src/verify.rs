//! Built-in verification suites: each runs a family of identity or bound
//! checks and reports the worst margin it saw.

use fareycorr::correlation::pair_count_upto;
use fareycorr::farey::{Constraint, FareySpec, Fraction};
use fareycorr::ntheory::{
    constant_c, count_congruence_solutions, euler_phi, k_fn, k_fn_by_divisors,
};
use fareycorr::theory::{
    cumulative_g_m, dirichlet_partial_sum, g_m, g_tilde, kappa_const, limit_deficit,
};
use fareycorr::Rational64;
use num_integer::gcd;

/// Outcome of one suite.
pub struct SuiteResult {
    /// Suite name as selected on the command line.
    pub name: &'static str,
    /// Number of individual checks run.
    pub checks: usize,
    /// Human-readable descriptions of failed checks.
    pub failures: Vec<String>,
    /// Worst observed margin, in the suite's own metric.
    pub worst: f64,
    /// What the margin measures.
    pub metric: &'static str,
}

impl SuiteResult {
    /// Whether every check passed.
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The rescaling identity behind the residue-class family: its density
/// equals the coprime one at `phi(m) lambda`, to 1e-12 relative, for
/// `m <= 12` on a
/// dense grid clear of cutoff collisions.
pub fn theorem2() -> SuiteResult {
    let mut res = SuiteResult {
        name: "theorem2",
        checks: 0,
        failures: Vec::new(),
        worst: 0.0,
        metric: "relative deviation",
    };
    for m in 1..=12u64 {
        let phi_m = euler_phi(m) as f64;
        let mut lambda = 0.05;
        while lambda <= 5.0 {
            let t = kappa_const(m) * lambda;
            if (t - t.round()).abs() > 1e-6 && (t - 1.0).abs() > 1e-3 {
                let a = g_tilde(m, lambda);
                let b = g_m(m, phi_m * lambda);
                let rel = if a == 0.0 && b == 0.0 {
                    0.0
                } else {
                    (a - b).abs() / a.abs().max(b.abs())
                };
                res.checks += 1;
                res.worst = res.worst.max(rel);
                if rel > 1e-12 {
                    res.failures.push(format!(
                        "m={m} lambda={lambda:.3}: g~={a} vs g({})={b}",
                        phi_m * lambda
                    ));
                }
            }
            lambda += 0.05;
        }
    }
    res
}

/// Kernel identity: the closed form of `K_m(n)` equals its divisor-sum
/// definition as exact rationals, for `n <= 10^4`.
pub fn k_identity() -> SuiteResult {
    let mut res = SuiteResult {
        name: "kfn",
        checks: 0,
        failures: Vec::new(),
        worst: 0.0,
        metric: "exact mismatches",
    };
    for m in [1u64, 2, 3, 4, 6, 12] {
        for n in 1..=10_000u64 {
            res.checks += 1;
            if k_fn(n, m) != k_fn_by_divisors(n, m) {
                res.worst = 1.0;
                res.failures
                    .push(format!("K_{m}({n}): closed form != divisor sum"));
            }
        }
    }
    res
}

/// Dirichlet partial sums: the kernel-weighted logarithmic sums at `x`
/// match their `c_m(2) x^2 / (4 zeta(2))` main terms within 1% for
/// `m in {1, 2, 3, 6}`.
pub fn dirichlet(x: u64) -> SuiteResult {
    let mut res = SuiteResult {
        name: "dirichlet",
        checks: 0,
        failures: Vec::new(),
        worst: 0.0,
        metric: "relative gap",
    };
    for m in [1u64, 2, 3, 6] {
        let (lhs, main) = dirichlet_partial_sum(m, x);
        let gap = (lhs / main - 1.0).abs();
        res.checks += 1;
        res.worst = res.worst.max(gap);
        if gap > 0.01 {
            res.failures
                .push(format!("m={m} x={x}: sum {lhs} vs main term {main}"));
        }
    }
    res
}

/// Congruence counting: over `q <= qmax` with `(q, m) = 1`, the count on
/// `[0, q]^2` stays within `20 q^{0.6} (h, q)^{1/2}` of its main term
/// `phi(q) phi(m) / m`.
pub fn proposition(qmax: u64) -> SuiteResult {
    let mut res = SuiteResult {
        name: "proposition",
        checks: 0,
        failures: Vec::new(),
        worst: 0.0,
        metric: "deviation / bound",
    };
    for q in 1..=qmax {
        for m in [2u64, 3] {
            if gcd(q, m) != 1 {
                continue;
            }
            for h in [1i64, 5, q as i64] {
                let qi = q as i64;
                let count = count_congruence_solutions(q, h, m, (0, qi), (0, qi)).unwrap() as f64;
                let main = (euler_phi(q) * euler_phi(m)) as f64 / m as f64;
                let bound = 20.0 * (q as f64).powf(0.6) * (gcd(h.unsigned_abs(), q) as f64).sqrt();
                let ratio = (count - main).abs() / bound;
                res.checks += 1;
                res.worst = res.worst.max(ratio);
                if ratio > 1.0 {
                    res.failures.push(format!(
                        "q={q} h={h} m={m}: count {count}, main {main}, bound {bound}"
                    ));
                }
            }
        }
    }
    res
}

/// Support-edge checks: empirical pair counts at `0.4 C_m` vanish for
/// `Q in {100, 500, 2000}`, and so does the cumulative closed form.
pub fn support() -> SuiteResult {
    let mut res = SuiteResult {
        name: "support",
        checks: 0,
        failures: Vec::new(),
        worst: 0.0,
        metric: "stray pairs",
    };
    for q_max in [100u64, 500, 2000] {
        for m in [1u64, 2, 3] {
            let den = 1_000_000_000_000i64;
            let lam = Rational64::new((0.4 * constant_c(m) * den as f64).ceil() as i64, den);
            let points: Vec<Fraction> = FareySpec::new(q_max, Constraint::CoprimeTo(m))
                .stream()
                .unwrap()
                .collect();
            let n = points.len() as u64;
            let pairs = pair_count_upto(&points, n, lam).unwrap();
            let closed = cumulative_g_m(m, 0.4 * constant_c(m));
            res.checks += 1;
            res.worst = res.worst.max(pairs as f64).max(closed);
            if pairs != 0 || closed != 0.0 {
                res.failures.push(format!(
                    "Q={q_max} m={m}: {pairs} pairs below the support edge, G = {closed}"
                ));
            }
        }
    }
    res
}

/// Unit-limit checks: `|g_m - 1| <= 0.01` at large lambda and the scaled
/// deficit `lambda |g_m - 1|` stays below 5 across `[10, 1000]`.
pub fn limit() -> SuiteResult {
    let mut res = SuiteResult {
        name: "limit",
        checks: 0,
        failures: Vec::new(),
        worst: 0.0,
        metric: "lambda |g - 1| (bound 5)",
    };
    for m in [1u64, 2, 3, 6] {
        for lambda in [100.0, 500.0, 1000.0] {
            let dev = (g_m(m, lambda) - 1.0).abs();
            res.checks += 1;
            if dev > 0.01 {
                res.failures
                    .push(format!("m={m} lambda={lambda}: |g - 1| = {dev}"));
            }
        }
        for lambda in [
            10.0, 14.7, 21.5, 31.6, 46.4, 68.1, 100.0, 147.0, 215.0, 316.0, 464.0, 681.0, 1000.0,
        ] {
            let deficit = limit_deficit(m, lambda).abs();
            res.checks += 1;
            res.worst = res.worst.max(deficit);
            if deficit > 5.0 {
                res.failures
                    .push(format!("m={m} lambda={lambda}: deficit {deficit}"));
            }
        }
    }
    res
}
