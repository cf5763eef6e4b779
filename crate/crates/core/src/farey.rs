//! Ordered streaming enumeration of Farey sets with congruence-constrained
//! denominators, exact cardinalities, and interval slicing.

use core::cmp::Ordering;
use core::fmt;

use num_integer::gcd;
use num_rational::Rational64;

use crate::ntheory::{ModulusParams, SieveTables};
use crate::Error;

/// A reduced fraction `num/den` in `(0, 1]`.
///
/// Invariants: `gcd(num, den) = 1` and `0 < num <= den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fraction {
    /// Numerator `a`, positive.
    pub num: u64,
    /// Denominator `q`, at least `a`.
    pub den: u64,
}

impl Fraction {
    /// Wraps a reduced fraction; panics if the invariants do not hold.
    pub fn new(num: u64, den: u64) -> Self {
        assert!(num >= 1 && num <= den, "fraction must lie in (0, 1]");
        assert_eq!(gcd(num, den), 1, "fraction must be reduced");
        Fraction { num, den }
    }

    /// The fraction as a float, for reporting only.
    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        // exact: a/q < a'/q'  iff  a q' < a' q
        let lhs = self.num as u128 * other.den as u128;
        let rhs = other.num as u128 * self.den as u128;
        lhs.cmp(&rhs)
    }
}

/// Which denominators a Farey set admits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Constraint {
    /// The full Farey set.
    All,
    /// Denominators with `gcd(q, m) = 1`.
    CoprimeTo(u64),
    /// Denominators with `q = residue (mod modulus)`, `gcd(residue, modulus) = 1`.
    ResidueClass {
        /// The modulus `m`.
        modulus: u64,
        /// The residue `b`, in `1..=m`.
        residue: u64,
    },
}

impl Constraint {
    /// Whether denominator `q` satisfies the constraint.
    pub fn admits(&self, q: u64) -> bool {
        match *self {
            Constraint::All => true,
            Constraint::CoprimeTo(m) => gcd(q, m) == 1,
            Constraint::ResidueClass { modulus, residue } => q % modulus == residue % modulus,
        }
    }

    fn validate(&self) -> Result<(), Error> {
        match *self {
            Constraint::All => Ok(()),
            Constraint::CoprimeTo(m) => ModulusParams::coprime(m).map(|_| ()),
            Constraint::ResidueClass { modulus, residue } => {
                ModulusParams::residue_class(modulus, residue).map(|_| ())
            }
        }
    }
}

/// A half-open value window `(alpha, beta]` with exact rational endpoints,
/// `0 <= alpha < beta <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    alpha: Rational64,
    beta: Rational64,
}

impl Window {
    /// Validates `0 <= alpha < beta <= 1`.
    pub fn new(alpha: Rational64, beta: Rational64) -> Result<Self, Error> {
        let zero = Rational64::new(0, 1);
        let one = Rational64::new(1, 1);
        if alpha < zero || alpha >= beta || beta > one {
            return Err(Error::InvalidWindow);
        }
        Ok(Window { alpha, beta })
    }

    /// Left endpoint (excluded).
    pub fn alpha(&self) -> Rational64 {
        self.alpha
    }

    /// Right endpoint (included).
    pub fn beta(&self) -> Rational64 {
        self.beta
    }

    /// Whether the window is the whole of `(0, 1]`.
    pub fn is_full(&self) -> bool {
        self.alpha == Rational64::new(0, 1) && self.beta == Rational64::new(1, 1)
    }

    /// Exact membership test `alpha < f <= beta` by cross multiplication.
    pub fn contains(&self, f: Fraction) -> bool {
        above(f, self.alpha) && !above(f, self.beta)
    }
}

/// `f > bound`, exactly. Both sides are nonnegative.
fn above(f: Fraction, bound: Rational64) -> bool {
    let lhs = f.num as u128 * *bound.denom() as u128;
    let rhs = *bound.numer() as u128 * f.den as u128;
    lhs > rhs
}

/// A Farey set: order `Q`, denominator constraint, optional value window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FareySpec {
    /// Maximal denominator `Q`.
    pub q_max: u64,
    /// Denominator constraint.
    pub constraint: Constraint,
    /// Optional window `(alpha, beta]`; `None` means all of `(0, 1]`.
    pub window: Option<Window>,
}

impl FareySpec {
    /// A spec over the full interval.
    pub fn new(q_max: u64, constraint: Constraint) -> Self {
        FareySpec {
            q_max,
            constraint,
            window: None,
        }
    }

    /// Restricts the spec to a window.
    pub fn with_window(mut self, window: Window) -> Self {
        self.window = Some(window);
        self
    }

    /// Checks `Q >= 1` and the constraint invariants.
    pub fn validate(&self) -> Result<(), Error> {
        if self.q_max == 0 {
            return Err(Error::ZeroOrder);
        }
        self.constraint.validate()
    }

    /// Ordered stream of the set's elements.
    pub fn stream(&self) -> Result<FareyStream, Error> {
        self.validate()?;
        Ok(FareyStream {
            q_max: self.q_max,
            constraint: self.constraint,
            window: self.window,
            prev: (0, 1),
            cur: (1, self.q_max),
            done: false,
        })
    }
}

/// Iterator over a constrained Farey set in increasing order.
///
/// Walks the full Farey sequence of order `Q` with the neighbor recurrence
/// (`k = (q + Q) / q'`, `a'' = k a' - a`, `q'' = k q' - q`, starting from the
/// neighbors `0/1, 1/Q`) and filters by constraint and window, so the cursor
/// is two fractions regardless of `Q`. The `0/1` seed is never emitted.
#[derive(Debug, Clone)]
pub struct FareyStream {
    q_max: u64,
    constraint: Constraint,
    window: Option<Window>,
    prev: (u64, u64),
    cur: (u64, u64),
    done: bool,
}

impl Iterator for FareyStream {
    type Item = Fraction;

    fn next(&mut self) -> Option<Fraction> {
        while !self.done {
            let (a, q) = self.cur;
            if a == 1 && q == 1 {
                self.done = true;
            } else {
                let k = (self.prev.1 + self.q_max) / q;
                let next = (k * a - self.prev.0, k * q - self.prev.1);
                self.prev = self.cur;
                self.cur = next;
            }
            let frac = Fraction { num: a, den: q };
            if let Some(w) = &self.window {
                if above(frac, w.beta()) {
                    // ordered stream has left the window for good
                    self.done = true;
                    return None;
                }
                if !w.contains(frac) {
                    continue;
                }
            }
            if self.constraint.admits(q) {
                return Some(frac);
            }
        }
        None
    }
}

/// Exact cardinality of the set, as `sum of phi(q)` over admitted `q <= Q`.
///
/// `1/1` is a member and `0/1` is not, so the full count is exactly
/// `sum_{q <= Q} phi(q)` with no extra term. Rejects specs with a proper
/// window; those are counted by streaming in [`count_in_window`].
pub fn count(spec: &FareySpec) -> Result<u64, Error> {
    spec.validate()?;
    if let Some(w) = &spec.window {
        if !w.is_full() {
            return Err(Error::WindowedCount);
        }
    }
    let tables = SieveTables::build(spec.q_max)?;
    let mut total = 0u64;
    for q in 1..=spec.q_max {
        if spec.constraint.admits(q) {
            total += tables.phi(q);
        }
    }
    Ok(total)
}

/// Exact cardinality of a windowed set by streaming enumeration.
pub fn count_in_window(spec: &FareySpec) -> Result<u64, Error> {
    Ok(spec.stream()?.count() as u64)
}
