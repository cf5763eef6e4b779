use core::fmt;

/// Errors shared across the crate.
///
/// Every variant corresponds to a rejected precondition; no operation
/// fails spuriously. Residue-class problems are reported separately from
/// a zero modulus so callers can distinguish "no such constraint" from
/// "constraint family is empty".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[non_exhaustive]
pub enum Error {
    /// Sieve bound was zero.
    ZeroBound,
    /// A constraint modulus `m = 0`.
    ZeroModulus,
    /// Farey order `Q = 0`.
    ZeroOrder,
    /// Residue `b` outside `1..=m`.
    ResidueOutOfRange {
        /// The constraint modulus.
        modulus: u64,
        /// The offending residue.
        residue: u64,
    },
    /// Residue class with `gcd(b, m) != 1`; such classes carry no reduced
    /// denominators coprime to `m` and are rejected outright.
    ResidueNotCoprime {
        /// The constraint modulus.
        modulus: u64,
        /// The offending residue.
        residue: u64,
    },
    /// The congruence counting oracle requires `gcd(q, m) = 1`.
    ModuliNotCoprime {
        /// Congruence modulus.
        q: u64,
        /// Coprimality modulus.
        m: u64,
    },
    /// Window bounds not satisfying `0 <= alpha < beta <= 1`.
    InvalidWindow,
    /// Sieve-based counting asked for a proper sub-window; use streaming.
    WindowedCount,
    /// Pair-counting input was not strictly increasing.
    UnsortedPoints,
    /// A window length `lambda <= 0`.
    NonPositiveLambda,
    /// A lambda grid that is not positive and strictly increasing.
    GridNotIncreasing,
    /// Wide-integer products of the exact gap test would overflow 128 bits;
    /// reduce `Q` or the window length.
    Overflow,
    /// The materialized point set would exceed the configured cap.
    PointCap {
        /// Points the spec would produce (at least; enumeration stops here).
        points: u64,
        /// The configured cap.
        cap: u64,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Error::ZeroBound => write!(f, "sieve bound must be at least 1"),
            Error::ZeroModulus => write!(f, "constraint modulus m must be at least 1"),
            Error::ZeroOrder => write!(f, "Farey order Q must be at least 1"),
            Error::ResidueOutOfRange { modulus, residue } => {
                write!(f, "residue b={residue} outside 1..={modulus}")
            }
            Error::ResidueNotCoprime { modulus, residue } => {
                write!(
                    f,
                    "residue class requires (b,m)=1, but gcd({residue},{modulus}) != 1"
                )
            }
            Error::ModuliNotCoprime { q, m } => {
                write!(f, "congruence count requires (q,m)=1, got q={q}, m={m}")
            }
            Error::InvalidWindow => write!(f, "window must satisfy 0 <= alpha < beta <= 1"),
            Error::WindowedCount => {
                write!(
                    f,
                    "exact count of a proper sub-window needs streaming; use count_in_window"
                )
            }
            Error::UnsortedPoints => write!(f, "points must be strictly increasing"),
            Error::NonPositiveLambda => write!(f, "window length lambda must be positive"),
            Error::GridNotIncreasing => {
                write!(f, "lambda grid must be positive and strictly increasing")
            }
            Error::Overflow => {
                write!(
                    f,
                    "exact gap test would overflow 128-bit products; reduce Q or lambda"
                )
            }
            Error::PointCap { points, cap } => {
                write!(
                    f,
                    "point set has at least {points} elements, above the cap {cap}"
                )
            }
        }
    }
}

impl core::error::Error for Error {}
