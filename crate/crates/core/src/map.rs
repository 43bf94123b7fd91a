//! The quadratic family `f_c(x) = x^2 + c`: parameter analysis, derivative
//! cocycle, inverse branches, and the escape test.

use crate::error::{Error, Result};
use crate::interval::Interval;

/// Expansion regime of the parameter, decided by the gap half-width `alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `c = -2`: the gap degenerates (`alpha = 0`) and the non-wandering set
    /// is the full interval `[-2, 2]`, which is not hyperbolic.
    NonHypBoundary,
    /// `-2 > c >= -(5+2*sqrt(5))/4`: `0 < alpha <= 1/2`, so the per-step bound
    /// `|2x| >= 2 alpha` alone does not certify expansion.
    HardGap,
    /// `c < -(5+2*sqrt(5))/4`: `alpha > 1/2` and `|2x| >= 2 alpha > 1` holds
    /// pointwise on the invariant set.
    EasyGap,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::NonHypBoundary => "NonHypBoundary",
            Regime::HardGap => "HardGap",
            Regime::EasyGap => "EasyGap",
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which of the two inverse branches `x -> +-sqrt(x - c)` to take.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    fn factor(self) -> f64 {
        match self {
            Sign::Minus => -1.0,
            Sign::Plus => 1.0,
        }
    }
}

/// The analyzed map: derived constants of `f_c` for one parameter value.
///
/// `p_plus` (written `p` throughout) is the positive fixed point, and
/// `alpha = sqrt(k - p)` satisfies `f(alpha) = -p`, `f^2(alpha) = p`. The
/// open gap `(-alpha, alpha)` escapes: its image is `[c, -p)`, strictly
/// below `-p`, and from there orbits run off to infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapParams {
    pub c: f64,
    /// `k = -c >= 2`.
    pub k: f64,
    /// Positive (repelling) fixed point `p = (1 + sqrt(1+4k))/2`.
    pub p_plus: f64,
    /// Negative fixed point.
    pub p_minus: f64,
    /// Gap half-width; `alpha^2 = k - p`, and exactly 0 at `c = -2`.
    pub alpha: f64,
    /// `sqrt(k)`, the preimage of 0 inside `[alpha, p]`.
    pub sqrt_k: f64,
    pub regime: Regime,
}

/// Parameter below which the easy per-step expansion bound applies
/// (`alpha = 1/2` exactly at this c).
pub fn regime_threshold_c() -> f64 {
    -(5.0 + 2.0 * 5.0_f64.sqrt()) / 4.0
}

/// Derives all constants of `f_c`. Fails for `c > -2` (and NaN), where the
/// constructions in this crate do not apply.
pub fn analyze(c: f64) -> Result<MapParams> {
    if c > -2.0 || c.is_nan() {
        return Err(Error::UnsupportedParameter {
            c,
            hint: ": the family is defined for c <= -2",
        });
    }
    let k = -c;
    let s = (1.0 + 4.0 * k).sqrt();
    let p_plus = (1.0 + s) / 2.0;
    let p_minus = (1.0 - s) / 2.0;
    // At c = -2 the gap degenerates; k - p is 0 up to rounding, and the
    // construction wants alpha = 0 exactly.
    let alpha = if c == -2.0 { 0.0 } else { (k - p_plus).sqrt() };
    let regime = if c == -2.0 {
        Regime::NonHypBoundary
    } else if alpha > 0.5 {
        Regime::EasyGap
    } else {
        Regime::HardGap
    };
    Ok(MapParams {
        c,
        k,
        p_plus,
        p_minus,
        alpha,
        sqrt_k: k.sqrt(),
        regime,
    })
}

/// One orbit step together with the derivative cocycle accumulated so far.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitStep {
    /// `x_i = f^i(x_0)`.
    pub x: f64,
    /// Signed product `prod_{j<i} 2 x_j`; 1 at step 0.
    pub cumulative_derivative: f64,
}

impl MapParams {
    /// `(f(x), Df(x))`.
    pub fn evaluate(&self, x: f64) -> (f64, f64) {
        (x * x + self.c, 2.0 * x)
    }

    /// The two coding cells: `[-p, -alpha]` and `[alpha, p]` (meeting at 0
    /// when `c = -2`).
    pub fn cells(&self) -> (Interval, Interval) {
        (
            Interval::new(-self.p_plus, -self.alpha),
            Interval::new(self.alpha, self.p_plus),
        )
    }

    /// Default escape bound for orbit iteration: past `p + 1` an orbit is
    /// monotone to infinity and the cocycle is no longer meaningful.
    pub fn default_escape_bound(&self) -> f64 {
        self.p_plus + 1.0
    }

    /// Iterates `n >= 1` steps, recording each point and the signed cocycle
    /// `prod 2 x_j`. The returned list has `n + 1` entries, starting at
    /// `(x, 1)`. Fails with `Overflow` when an iterate passes the default
    /// escape bound.
    pub fn orbit_with_cocycle(&self, x: f64, n: usize) -> Result<Vec<OrbitStep>> {
        self.orbit_with_cocycle_bounded(x, n, self.default_escape_bound())
    }

    /// Same as [`orbit_with_cocycle`](Self::orbit_with_cocycle) with an
    /// explicit escape bound.
    pub fn orbit_with_cocycle_bounded(
        &self,
        x: f64,
        n: usize,
        escape_bound: f64,
    ) -> Result<Vec<OrbitStep>> {
        assert!(n >= 1, "orbit length must be at least 1");
        let mut out = Vec::with_capacity(n + 1);
        let mut xi = x;
        let mut cum = 1.0;
        out.push(OrbitStep {
            x: xi,
            cumulative_derivative: cum,
        });
        for i in 1..=n {
            cum *= 2.0 * xi;
            xi = xi * xi + self.c;
            if xi.abs() > escape_bound {
                return Err(Error::Overflow {
                    step: i,
                    value: xi,
                    bound: escape_bound,
                });
            }
            out.push(OrbitStep {
                x: xi,
                cumulative_derivative: cum,
            });
        }
        Ok(out)
    }

    /// The inverse branch `sign * sqrt(y - c)`; `f` maps the result back to
    /// `y`. Fails for `y < c`, which has no real preimage.
    pub fn inverse_branch(&self, y: f64, sign: Sign) -> Result<f64> {
        if y < self.c {
            return Err(Error::DomainError {
                what: "y",
                value: y,
                why: "no real preimage below c",
            });
        }
        Ok(sign.factor() * (y - self.c).sqrt())
    }

    /// Whether some iterate `x_0, ..., x_{n_max}` lands in the open escape
    /// gap `(-alpha, alpha)` or outside `[-p, p]`; returns the first such
    /// step. Purely a forward float iteration: a true fixed point drifts off
    /// after roughly 28 steps of rounding amplification, so tests against
    /// fixed points should use a moderate `n_max`.
    pub fn escapes(&self, x: f64, n_max: usize) -> (bool, Option<usize>) {
        let mut xi = x;
        for i in 0..=n_max {
            let a = xi.abs();
            if a < self.alpha || a > self.p_plus {
                return (true, Some(i));
            }
            xi = xi * xi + self.c;
        }
        (false, None)
    }
}
