//! Cross-ratio and interval hyperbolic-metric machinery: the distortion
//! quantities that turn "the map has negative Schwarzian derivative" into a
//! checkable expansion estimate.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::map::MapParams;

/// A nested pair `J ⊆ T`; `L` and `R` denote the two complement components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossRatioFrame {
    t: Interval,
    j: Interval,
}

impl CrossRatioFrame {
    pub fn new(t: Interval, j: Interval) -> Result<Self> {
        if !t.contains_interval(&j) {
            return Err(Error::DomainError {
                what: "frame",
                value: j.lo(),
                why: "the inner interval must be contained in the outer one",
            });
        }
        Ok(Self { t, j })
    }

    pub fn outer(&self) -> Interval {
        self.t
    }

    pub fn inner(&self) -> Interval {
        self.j
    }
}

/// The cross-ratio `|J||T| / (|L||R|)` of a nested frame.
///
/// Degenerate sides follow the limit convention: `+inf` when a side has zero
/// length but `|J| > 0`, `0` when `|J| = 0` with both sides positive. A
/// simultaneous zero (`0/0`) is an error.
pub fn cross_ratio(frame: &CrossRatioFrame) -> Result<f64> {
    let (t, j) = (frame.t, frame.j);
    let l = j.lo() - t.lo();
    let r = t.hi() - j.hi();
    let jl = j.length();
    if (l == 0.0 || r == 0.0) && jl == 0.0 {
        return Err(Error::DegenerateFrame);
    }
    if l == 0.0 || r == 0.0 {
        return Ok(f64::INFINITY);
    }
    if jl == 0.0 {
        return Ok(0.0);
    }
    Ok(jl * t.length() / (l * r))
}

/// Hyperbolic distance inside `t` with no domain checks; callers guarantee
/// `x, y` strictly interior.
#[inline]
fn rho_unchecked(t0: f64, t1: f64, x: f64, y: f64) -> f64 {
    let (u, v) = if x < y { (x, y) } else { (y, x) };
    (((v - t0) * (t1 - u)) / ((u - t0) * (t1 - v))).ln()
}

#[inline]
fn density_ratio_unchecked(j0: f64, j1: f64, t0: f64, t1: f64, x: f64) -> f64 {
    let rj = (j1 - j0) / ((x - j0) * (j1 - x));
    let rt = (t1 - t0) / ((x - t0) * (t1 - x));
    rj / rt
}

/// Hyperbolic metric of the interval `t`:
/// `rho_t(x, y) = log(|L ∪ J| |J ∪ R| / (|L| |R|))` where `J` is the interval
/// between `x` and `y`. Equals `log(1 + D(t, J))` up to rounding, is
/// symmetric, vanishes iff `x = y`, and blows up toward the boundary.
pub fn hyp_dist(t: Interval, x: f64, y: f64) -> Result<f64> {
    for v in [x, y] {
        if !t.contains_strictly(v) {
            return Err(Error::BoundaryPoint { x: v });
        }
    }
    Ok(rho_unchecked(t.lo(), t.hi(), x, y))
}

/// Coincident-point limit of `rho_J(x, y) / rho_T(x, y)` as `y -> x`: the
/// ratio of the two metric densities
/// `[|J| / ((x - j0)(j1 - x))] / [|T| / ((x - t0)(t1 - x))]`.
pub fn hyp_density_ratio(j: Interval, t: Interval, x: f64) -> Result<f64> {
    if !t.contains_interval(&j) {
        return Err(Error::DomainError {
            what: "frame",
            value: j.lo(),
            why: "the inner interval must be contained in the outer one",
        });
    }
    if !j.contains_strictly(x) {
        return Err(Error::BoundaryPoint { x });
    }
    Ok(density_ratio_unchecked(j.lo(), j.hi(), t.lo(), t.hi(), x))
}

/// Result of a grid minimization of `rho_J / rho_T` over a compact inclusion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContractionScan {
    /// The grid minimum; the inclusion property asserts it exceeds 1, which
    /// callers must check rather than assume.
    pub lambda: f64,
    /// Pair attaining the minimum (equal coordinates mean the diagonal, i.e.
    /// the density-ratio limit).
    pub argmin: (f64, f64),
    pub grid: usize,
}

/// Lexicographic argmin candidate; the reduction below is associative and
/// commutative, so parallel evaluation order cannot change the result.
#[derive(Clone, Copy)]
struct Candidate {
    value: f64,
    x: f64,
    y: f64,
}

impl Candidate {
    const NONE: Candidate = Candidate {
        value: f64::INFINITY,
        x: f64::INFINITY,
        y: f64::INFINITY,
    };

    fn min(self, other: Candidate) -> Candidate {
        if other.value < self.value
            || (other.value == self.value
                && (other.x < self.x || (other.x == self.x && other.y < self.y)))
        {
            other
        } else {
            self
        }
    }
}

/// Minimum of the metric ratio over all pairs `(xs[i], ys[j])` plus the
/// density-ratio diagonal at each `xs[i]`. With `triangular` set, `xs` and
/// `ys` are the same grid and only pairs `i < j` are visited.
fn scan_pairs(
    xs: &[f64],
    ys: &[f64],
    triangular: bool,
    j: Interval,
    t: Interval,
) -> Candidate {
    let (j0, j1) = (j.lo(), j.hi());
    let (t0, t1) = (t.lo(), t.hi());
    xs.par_iter()
        .enumerate()
        .map(|(i, &x)| {
            let mut best = Candidate {
                value: density_ratio_unchecked(j0, j1, t0, t1, x),
                x,
                y: x,
            };
            let start = if triangular { i + 1 } else { 0 };
            for &y in &ys[start..] {
                if y == x {
                    continue;
                }
                let value = rho_unchecked(j0, j1, x, y) / rho_unchecked(t0, t1, x, y);
                best = best.min(Candidate { value, x, y });
            }
            best
        })
        .reduce(|| Candidate::NONE, Candidate::min)
}

fn window_points(lo_clip: f64, hi_clip: f64, lo: f64, hi: f64, grid: usize) -> Vec<f64> {
    let x0 = lo.max(lo_clip);
    let x1 = hi.min(hi_clip);
    (0..grid)
        .map(|i| x0 + (i as f64 + 0.5) * (x1 - x0) / grid as f64)
        .collect()
}

/// Grid minimum `Lambda` of `rho_j(x, y) / rho_t(x, y)` over `x, y` in `j`,
/// for `j` compactly contained in `t`.
///
/// Shrinking the ambient interval enlarges the metric, so the true infimum
/// exceeds 1; this is a sampled estimate of it, not a proven bound. The scan
/// covers a half-offset grid of `grid` points (all distinct pairs plus the
/// diagonal density limit), then refines once with a 10x finer window around
/// the argmin. A value `<= 1` is still returned as found; callers report it
/// as a falsification.
pub fn inclusion_contraction(j: Interval, t: Interval, grid: usize) -> Result<ContractionScan> {
    if !t.contains_compactly(&j) {
        return Err(Error::NotCompactlyContained);
    }
    assert!(grid >= 2, "contraction scan needs at least a 2-point grid");
    let len = j.length();
    let h = len / grid as f64;
    let xs: Vec<f64> = (0..grid).map(|i| j.lo() + (i as f64 + 0.5) * h).collect();
    let coarse = scan_pairs(&xs, &xs, true, j, t);

    // One zoom pass: a 10x finer grid in a +-5h window around the argmin,
    // clipped to stay strictly inside j.
    let eps = 1e-12 * len;
    let w = 5.0 * h;
    let gx = window_points(j.lo() + eps, j.hi() - eps, coarse.x - w, coarse.x + w, grid);
    let gy = window_points(j.lo() + eps, j.hi() - eps, coarse.y - w, coarse.y + w, grid);
    let fine = scan_pairs(&gx, &gy, false, j, t);

    let best = coarse.min(fine);
    Ok(ContractionScan {
        lambda: best.value,
        argmin: (best.x, best.y),
        grid,
    })
}

/// Cross-ratio distortion of `f_c` on a monotone interval:
/// `B = D(f(T), f(J)) / D(T, J)` computed from monotone endpoint images.
///
/// When `J` touches an endpoint of `T` both cross-ratios are infinite and the
/// limit convention replaces the degenerate side ratio `|L| / |f(L)|` by
/// `1 / |Df|` at the shared endpoint (`+inf` if that derivative vanishes).
/// A degenerate core `|J| = 0` is an error, and so is an interval straddling
/// the critical point.
pub fn map_cross_ratio(m: &MapParams, t: Interval, j: Interval) -> Result<f64> {
    if !t.contains_interval(&j) {
        return Err(Error::DomainError {
            what: "frame",
            value: j.lo(),
            why: "the inner interval must be contained in the outer one",
        });
    }
    if t.contains_strictly(0.0) {
        return Err(Error::NotMonotone);
    }
    if j.length() == 0.0 {
        return Err(Error::DegenerateFrame);
    }
    let f = |x: f64| m.evaluate(x).0;
    let l = j.lo() - t.lo();
    let r = t.hi() - j.hi();
    let fj = (f(j.hi()) - f(j.lo())).abs();
    let ft = (f(t.hi()) - f(t.lo())).abs();
    let ratio_l = if l == 0.0 {
        let d = m.evaluate(t.lo()).1.abs();
        if d == 0.0 {
            return Ok(f64::INFINITY);
        }
        1.0 / d
    } else {
        l / (f(j.lo()) - f(t.lo())).abs()
    };
    let ratio_r = if r == 0.0 {
        let d = m.evaluate(t.hi()).1.abs();
        if d == 0.0 {
            return Ok(f64::INFINITY);
        }
        1.0 / d
    } else {
        r / (f(t.hi()) - f(j.hi())).abs()
    };
    Ok((fj / j.length()) * (ft / t.length()) * ratio_l * ratio_r)
}

/// Cross-ratio distortion of an arbitrary map `g`, assumed monotone on `t`.
/// Exists as an oracle hook: affine maps give exactly 1 and Möbius maps give
/// 1 up to rounding, which pins down the implementation independently of
/// `f_c`. Requires strictly positive `|L|, |J|, |R|`.
pub fn map_cross_ratio_of(g: impl Fn(f64) -> f64, t: Interval, j: Interval) -> Result<f64> {
    if !t.contains_interval(&j) {
        return Err(Error::DomainError {
            what: "frame",
            value: j.lo(),
            why: "the inner interval must be contained in the outer one",
        });
    }
    let l = j.lo() - t.lo();
    let r = t.hi() - j.hi();
    if l == 0.0 || r == 0.0 || j.length() == 0.0 {
        return Err(Error::DegenerateFrame);
    }
    let fj = (g(j.hi()) - g(j.lo())).abs();
    let ft = (g(t.hi()) - g(t.lo())).abs();
    let fl = (g(j.lo()) - g(t.lo())).abs();
    let fr = (g(t.hi()) - g(j.hi())).abs();
    Ok((fj / j.length()) * (ft / t.length()) * (l / fl) * (r / fr))
}

/// Schwarzian derivative of `f_c` at `x`: `-3 / (2 x^2)` for every parameter
/// (the quadratic has `f' = 2x`, `f'' = 2`, `f''' = 0`). Undefined at the
/// critical point. A finite-difference estimator lives in the tests as an
/// independent oracle.
pub fn schwarzian(x: f64) -> Result<f64> {
    if x == 0.0 {
        return Err(Error::CriticalPoint);
    }
    Ok(-1.5 / (x * x))
}

/// Two sides of the metric-expansion inequality for monotone restrictions of
/// `f_c`: maps with negative Schwarzian derivative do not decrease the
/// hyperbolic metric of an interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionCheck {
    /// `rho_{f(T)}(f(x), f(y))`.
    pub lhs: f64,
    /// `rho_T(x, y)`.
    pub rhs: f64,
    /// `lhs >= rhs - 1e-12`.
    pub pass: bool,
}

/// Evaluates both sides of the expansion inequality at two interior points of
/// a monotone interval.
pub fn expansion_check(m: &MapParams, t: Interval, x: f64, y: f64) -> Result<ExpansionCheck> {
    if t.contains_strictly(0.0) {
        return Err(Error::NotMonotone);
    }
    for v in [x, y] {
        if !t.contains_strictly(v) {
            return Err(Error::BoundaryPoint { x: v });
        }
    }
    if x == y {
        return Ok(ExpansionCheck {
            lhs: 0.0,
            rhs: 0.0,
            pass: true,
        });
    }
    let f = |u: f64| m.evaluate(u).0;
    let ft = Interval::spanning(f(t.lo()), f(t.hi()));
    let lhs = rho_unchecked(ft.lo(), ft.hi(), f(x), f(y));
    let rhs = rho_unchecked(t.lo(), t.hi(), x, y);
    Ok(ExpansionCheck {
        lhs,
        rhs,
        pass: lhs >= rhs - 1e-12,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::analyze;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn frame(t0: f64, t1: f64, j0: f64, j1: f64) -> CrossRatioFrame {
        CrossRatioFrame::new(Interval::new(t0, t1), Interval::new(j0, j1)).unwrap()
    }

    #[test]
    fn cross_ratio_examples() {
        assert_eq!(cross_ratio(&frame(0.0, 4.0, 1.0, 3.0)).unwrap(), 8.0);
        assert_eq!(
            cross_ratio(&frame(0.0, 4.0, 0.0, 3.0)).unwrap(),
            f64::INFINITY
        );
        assert_eq!(cross_ratio(&frame(0.0, 4.0, 2.0, 2.0)).unwrap(), 0.0);
        assert!(matches!(
            cross_ratio(&frame(0.0, 4.0, 0.0, 0.0)),
            Err(Error::DegenerateFrame)
        ));
    }

    #[test]
    fn frame_rejects_non_nested() {
        assert!(CrossRatioFrame::new(Interval::new(0.0, 1.0), Interval::new(0.5, 2.0)).is_err());
    }

    #[test]
    fn hyp_dist_examples() {
        let t = Interval::new(0.0, 4.0);
        assert_relative_eq!(
            hyp_dist(t, 1.0, 3.0).unwrap(),
            9.0_f64.ln(),
            max_relative = 1e-15
        );
        assert_eq!(hyp_dist(t, 2.0, 2.0).unwrap(), 0.0);
        // Symmetry is exact: the implementation orders the points.
        assert_eq!(
            hyp_dist(t, 1.3, 2.9).unwrap(),
            hyp_dist(t, 2.9, 1.3).unwrap()
        );
        assert!(matches!(
            hyp_dist(t, 0.0, 1.0),
            Err(Error::BoundaryPoint { .. })
        ));
    }

    #[test]
    fn hyp_dist_equals_log_one_plus_cross_ratio() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let t0: f64 = rng.random_range(-10.0..10.0);
            let tl: f64 = rng.random_range(0.2..5.0);
            let t = Interval::new(t0, t0 + tl);
            let a: f64 = rng.random_range(0.01..0.99);
            let b: f64 = rng.random_range(0.01..0.99);
            let x = t0 + tl * a.min(b);
            let y = t0 + tl * a.max(b);
            let d = cross_ratio(&frame(t.lo(), t.hi(), x, y)).unwrap();
            let rho = hyp_dist(t, x, y).unwrap();
            assert_abs_diff_eq!(rho, d.ln_1p(), epsilon = 1e-12);
        }
    }

    #[test]
    fn density_ratio_examples() {
        let j = Interval::new(1.0, 3.0);
        let t = Interval::new(0.0, 4.0);
        assert_eq!(hyp_density_ratio(j, t, 2.0).unwrap(), 2.0);
        assert_eq!(hyp_density_ratio(t, t, 1.7).unwrap(), 1.0);
        // Pole monitor near the inner boundary.
        let x = 1.0 + 1e-4 * j.length();
        assert!(hyp_density_ratio(j, t, x).unwrap() > 1e3);
        assert!(matches!(
            hyp_density_ratio(j, t, 1.0),
            Err(Error::BoundaryPoint { .. })
        ));
    }

    #[test]
    fn density_ratio_is_the_coincident_limit() {
        // Independent oracle: rho_J(x, x+h) / rho_T(x, x+h) for small h.
        let j = Interval::new(1.0, 3.0);
        let t = Interval::new(0.0, 4.0);
        for x in [1.3, 2.0, 2.8] {
            let h = 1e-7;
            let fd = hyp_dist(j, x, x + h).unwrap() / hyp_dist(t, x, x + h).unwrap();
            assert_relative_eq!(
                hyp_density_ratio(j, t, x).unwrap(),
                fd,
                max_relative = 1e-5
            );
        }
    }

    #[test]
    fn contraction_scan_examples() {
        let t = Interval::new(0.0, 4.0);
        let shallow = inclusion_contraction(Interval::new(1.0, 3.0), t, 128).unwrap();
        // The minimum hugs the diagonal at the midpoint, value 2 (the
        // density ratio there), approached from above by the grid.
        assert!(shallow.lambda > 2.0);
        assert_abs_diff_eq!(shallow.lambda, 2.0000000075, epsilon = 1e-6);
        assert_abs_diff_eq!(shallow.argmin.0, 2.0, epsilon = 0.01);
        assert_abs_diff_eq!(shallow.argmin.1, 2.0, epsilon = 0.01);
        let deep = inclusion_contraction(Interval::new(1.9, 2.1), t, 128).unwrap();
        assert!(deep.lambda > shallow.lambda);
        assert_abs_diff_eq!(deep.lambda, 20.0, epsilon = 0.01);
        assert!(matches!(
            inclusion_contraction(Interval::new(0.0, 3.0), t, 128),
            Err(Error::NotCompactlyContained)
        ));
    }

    #[test]
    fn contraction_scan_deterministic_across_pools() {
        let j = Interval::new(1.0, 3.0);
        let t = Interval::new(0.0, 4.0);
        let a = inclusion_contraction(j, t, 64).unwrap();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let b = pool.install(|| inclusion_contraction(j, t, 64).unwrap());
        assert_eq!(a.lambda.to_bits(), b.lambda.to_bits());
        assert_eq!(a.argmin, b.argmin);
    }

    #[test]
    fn map_cross_ratio_quadratic_example() {
        let m = analyze(-2.2).unwrap();
        let b = map_cross_ratio(&m, Interval::new(0.5, 2.0), Interval::new(1.0, 1.5)).unwrap();
        assert_relative_eq!(b, 25.0 / 21.0, max_relative = 1e-12);
        assert!(matches!(
            map_cross_ratio(&m, Interval::new(-1.0, 1.0), Interval::new(-0.5, 0.5)),
            Err(Error::NotMonotone)
        ));
    }

    #[test]
    fn map_cross_ratio_boundary_limit_convention() {
        let m = analyze(-2.2).unwrap();
        let t = Interval::new(0.5, 2.0);
        let b0 = map_cross_ratio(&m, t, Interval::new(0.5, 1.0)).unwrap();
        assert_relative_eq!(b0, 1.25, max_relative = 1e-12);
        // Agreement with the genuine limit from strictly nested frames.
        let b_eps = map_cross_ratio(&m, t, Interval::new(0.5 + 1e-8, 1.0)).unwrap();
        assert_relative_eq!(b0, b_eps, max_relative = 1e-6);
    }

    #[test]
    fn affine_maps_leave_cross_ratio_fixed() {
        let t = Interval::new(-1.0, 5.0);
        let j = Interval::new(0.5, 2.0);
        let b = map_cross_ratio_of(|x| 2.0 * x + 1.0, t, j).unwrap();
        assert_abs_diff_eq!(b, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn mobius_maps_leave_cross_ratio_fixed() {
        let b = map_cross_ratio_of(|x| 1.0 / x, Interval::new(1.0, 4.0), Interval::new(2.0, 3.0))
            .unwrap();
        assert_abs_diff_eq!(b, 1.0, epsilon = 1e-12);
        // 200 random Möbius maps with the pole held away from the frame.
        let mut rng = ChaCha8Rng::seed_from_u64(777);
        let mut accepted = 0;
        while accepted < 200 {
            let (a, b, c, d): (f64, f64, f64, f64) = (
                rng.random_range(-3.0..3.0),
                rng.random_range(-3.0..3.0),
                rng.random_range(-3.0..3.0),
                rng.random_range(-3.0..3.0),
            );
            if (a * d - b * c).abs() < 0.1 {
                continue;
            }
            let t0: f64 = rng.random_range(-2.0..2.0);
            let t1 = t0 + rng.random_range(0.5..2.0);
            if c.abs() > 1e-9 {
                let pole = -d / c;
                if t0 - 0.5 <= pole && pole <= t1 + 0.5 {
                    continue;
                }
            }
            let w = t1 - t0;
            let j0 = t0 + rng.random_range(0.05..0.4) * w;
            let j1 = t1 - rng.random_range(0.05..0.4) * w;
            if j1 - j0 < 0.05 * w {
                continue;
            }
            accepted += 1;
            let bb = map_cross_ratio_of(
                |x| (a * x + b) / (c * x + d),
                Interval::new(t0, t1),
                Interval::new(j0, j1),
            )
            .unwrap();
            assert_abs_diff_eq!(bb, 1.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn schwarzian_closed_form() {
        assert_eq!(schwarzian(1.0).unwrap(), -1.5);
        assert_eq!(schwarzian(2.0).unwrap(), -0.375);
        assert!(matches!(schwarzian(0.0), Err(Error::CriticalPoint)));
        assert_eq!(schwarzian(-1.0).unwrap(), schwarzian(1.0).unwrap());
    }

    #[test]
    fn schwarzian_matches_finite_differences() {
        // 5-point central differences of f itself, step 1e-3: an oracle that
        // never touches the closed form.
        let m = analyze(-2.2).unwrap();
        let g = |x: f64| m.evaluate(x).0;
        let sfd = |x: f64| {
            let h = 1e-3;
            let d1 = (g(x + h) - g(x - h)) / (2.0 * h);
            let d2 = (g(x + h) - 2.0 * g(x) + g(x - h)) / (h * h);
            let d3 =
                (g(x + 2.0 * h) - 2.0 * g(x + h) + 2.0 * g(x - h) - g(x - 2.0 * h)) / (2.0 * h * h * h);
            d3 / d1 - 1.5 * (d2 / d1) * (d2 / d1)
        };
        for i in 0..100 {
            let x = 0.3 + i as f64 * (3.5 - 0.3) / 99.0;
            let exact = schwarzian(x).unwrap();
            assert_relative_eq!(sfd(x), exact, max_relative = 1e-4);
        }
    }

    #[test]
    fn expansion_check_examples() {
        let m = analyze(-2.2).unwrap();
        let t = Interval::new(0.5, 2.0);
        let chk = expansion_check(&m, t, 1.0, 1.5).unwrap();
        assert!(chk.pass && chk.lhs >= chk.rhs);
        let same = expansion_check(&m, t, 1.2, 1.2).unwrap();
        assert_eq!((same.lhs, same.rhs), (0.0, 0.0));
        assert!(same.pass);
        assert!(matches!(
            expansion_check(&m, Interval::new(-0.5, 0.5), 0.1, 0.2),
            Err(Error::NotMonotone)
        ));
    }

    #[test]
    fn expansion_check_random_triples() {
        let m = analyze(-2.2).unwrap();
        let lo = m.alpha / 2.0;
        let hi = 2.0 * m.p_plus;
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let mut accepted = 0;
        while accepted < 1000 {
            let mut v: [f64; 4] = std::array::from_fn(|_| rng.random_range(lo..hi));
            v.sort_by(f64::total_cmp);
            let [t0, x, y, t1] = v;
            if x - t0 < 1e-6 || t1 - y < 1e-6 || y - x < 1e-9 {
                continue;
            }
            accepted += 1;
            let chk = expansion_check(&m, Interval::new(t0, t1), x, y).unwrap();
            assert!(chk.pass, "failed at T=[{t0},{t1}] x={x} y={y}");
        }
    }

    #[test]
    fn quadratic_distortion_exceeds_one_on_monotone_frames() {
        // Negative Schwarzian pushes B strictly above 1 on nondegenerate
        // frames; sampled over the certificate's working window.
        let m = analyze(-2.2).unwrap();
        let lo = m.alpha / 2.0;
        let hi = 2.0 * m.p_plus;
        let mut rng = ChaCha8Rng::seed_from_u64(314);
        let mut accepted = 0;
        let mut min_b = f64::INFINITY;
        while accepted < 1000 {
            let mut v: [f64; 4] = std::array::from_fn(|_| rng.random_range(lo..hi));
            v.sort_by(f64::total_cmp);
            let [t0, j0, j1, t1] = v;
            if j0 - t0 < 0.01 || t1 - j1 < 0.01 || j1 - j0 < 0.01 {
                continue;
            }
            accepted += 1;
            let b = map_cross_ratio(&m, Interval::new(t0, t1), Interval::new(j0, j1)).unwrap();
            min_b = min_b.min(b);
        }
        assert!(min_b > 1.0 + 1e-9, "min B = {min_b}");
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            /// Shrinking the ambient interval enlarges the metric.
            #[test]
            fn metric_grows_when_interval_shrinks(
                t0 in -5.0_f64..0.0,
                tl in 1.0_f64..4.0,
                cut_l in 0.01_f64..0.2,
                cut_r in 0.01_f64..0.2,
                a in 0.3_f64..0.45,
                b in 0.55_f64..0.7,
            ) {
                let t = Interval::new(t0, t0 + tl);
                let inner = Interval::new(t0 + cut_l * tl, t0 + tl - cut_r * tl);
                let x = t0 + a * tl;
                let y = t0 + b * tl;
                let big = hyp_dist(t, x, y).unwrap();
                let small = hyp_dist(inner, x, y).unwrap();
                prop_assert!(small > big);
            }

            /// Distance identity against the cross-ratio, property form.
            #[test]
            fn identity_with_cross_ratio(
                t0 in -5.0_f64..5.0,
                tl in 0.1_f64..6.0,
                a in 0.001_f64..0.999,
                b in 0.001_f64..0.999,
            ) {
                prop_assume!((a - b).abs() > 1e-6);
                let t = Interval::new(t0, t0 + tl);
                let x = t0 + tl * a.min(b);
                let y = t0 + tl * a.max(b);
                let d = cross_ratio(&frame(t.lo(), t.hi(), x, y)).unwrap();
                let rho = hyp_dist(t, x, y).unwrap();
                prop_assert!((rho - d.ln_1p()).abs() <= 1e-12);
            }
        }
    }
}
