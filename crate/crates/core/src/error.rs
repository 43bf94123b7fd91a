//! Error type shared by every module.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong across the map, coding, construction and
/// certificate layers. Variants carry enough context to report the offending
/// value without a backtrace.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Parameter outside the supported family (`c <= -2`), or inside it but
    /// outside an operation's range. The hint says what went wrong and what
    /// to use instead; it starts with `:` when nonempty.
    #[error("unsupported parameter c = {c}{hint}")]
    UnsupportedParameter { c: f64, hint: &'static str },

    /// Input outside an operation's domain.
    #[error("domain error: {what} = {value} ({why})")]
    DomainError {
        what: &'static str,
        value: f64,
        why: &'static str,
    },

    /// An orbit left the configured escape bound.
    #[error("orbit overflow at step {step}: |{value}| exceeds the escape bound {bound}")]
    Overflow { step: usize, value: f64, bound: f64 },

    /// An orbit left the coding cells while an itinerary was being read.
    #[error("orbit escaped the coding cells at step {step} (x = {value})")]
    EscapedOrbit { step: usize, value: f64 },

    /// Cross-ratio frame with both a side and the core degenerate (0/0).
    #[error("degenerate cross-ratio frame: side and core both have zero length")]
    DegenerateFrame,

    /// A point sits on an interval boundary where a metric quantity blows up.
    #[error("point {x} lies on a boundary where the quantity diverges")]
    BoundaryPoint { x: f64 },

    /// Compact inclusion required but closures touch.
    #[error("inner interval is not compactly contained in the outer one")]
    NotCompactlyContained,

    /// The map is not monotone on the given interval (0 in its interior).
    #[error("the map is not monotone on the interval (0 lies strictly inside)")]
    NotMonotone,

    /// Schwarzian derivative requested at the critical point.
    #[error("Schwarzian derivative is undefined at the critical point x = 0")]
    CriticalPoint,

    /// Weight evaluated where it vanishes.
    #[error("weight vanishes at x = {x} (frame core has zero length)")]
    ZeroValue { x: f64 },

    /// Operation requested in a regime where it does not apply.
    #[error("wrong regime: {op} requires {requires}, but c = {c} gives {actual}")]
    WrongRegime {
        op: &'static str,
        requires: &'static str,
        actual: &'static str,
        c: f64,
    },

    /// Exponent escalation hit its cap without reaching a verified constant.
    #[error(
        "exponent escalation failed: min expansion {best_min} at x = {at_x} \
         still <= 1 at the cap M = {cap}"
    )]
    EscalationFailed { cap: u32, best_min: f64, at_x: f64 },

    /// Requested construction depth exceeds the configured cap.
    #[error("depth {depth} exceeds the cap {cap}")]
    DepthCapExceeded { depth: usize, cap: usize },

    /// Symbolic word with no symbols.
    #[error("empty word")]
    EmptyWord,

    /// Symbolic word with a character outside {{0, 1}}.
    #[error("invalid symbol {ch:?}: words are strings over 0 and 1")]
    InvalidSymbol { ch: char },
}
