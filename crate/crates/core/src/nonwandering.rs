//! Outer approximation of the non-wandering set.
//!
//! For `c < -2` the non-wandering set is the Cantor set of points whose full
//! forward orbit avoids the open gap `(-alpha, alpha)` and the escape region
//! `|x| > p`. It is approximated from outside by the sets
//! `C_n = intersection of f^{-k}([-p, -alpha] u [alpha, p])` for `k <= n`,
//! computed here as an explicit ordered list of closed components.
//!
//! At `c = -2` there is no gap and the non-wandering set is all of `[-2, 2]`;
//! [`nw_full_interval`] documents that case with a dense-orbit certificate
//! instead of a component list.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::map::{MapParams, Regime, Sign};
use crate::render::float17;
use crate::symbolic::{dense_word, density_check, DensityCheck};

/// Refining past this depth doubles memory for no f64-visible gain: component
/// widths are far below 1 ulp of their endpoints well before it.
pub const DEPTH_CAP: usize = 24;

/// Dense-word block length used as full-interval evidence at `c = -2`.
const FULL_INTERVAL_BLOCK: usize = 7;

/// Gap threshold for the full-interval density certificate.
const FULL_INTERVAL_EPSILON: f64 = 0.05;

/// Depth-`n` outer approximation: `2^(n+1)` closed components in increasing
/// order, symmetric about 0.
#[derive(Debug, Clone, PartialEq)]
pub struct CantorApprox {
    pub depth: usize,
    pub components: Vec<Interval>,
    pub params: MapParams,
}

/// Depth 0: the two coding cells themselves.
pub fn initial_cover(m: &MapParams) -> CantorApprox {
    let (cell0, cell1) = m.cells();
    CantorApprox {
        depth: 0,
        components: vec![cell0, cell1],
        params: *m,
    }
}

/// Image of one component under one inverse branch, clipped to the coding
/// cell on that side (rounding can overshoot the cell by an ulp).
fn branch_clipped(m: &MapParams, comp: &Interval, sign: Sign, cell: &Interval) -> Interval {
    let a = (comp.lo() - m.c).max(0.0).sqrt();
    let b = (comp.hi() - m.c).max(0.0).sqrt();
    let (lo, hi) = match sign {
        Sign::Plus => (a, b),
        Sign::Minus => (-b, -a),
    };
    Interval::new(lo.max(cell.lo()), hi.min(cell.hi()))
}

/// One backward step: every component splits into a negative-branch and a
/// positive-branch preimage, and the list stays sorted because the negative
/// branch reverses orientation.
pub fn refine(a: &CantorApprox) -> Result<CantorApprox> {
    let m = &a.params;
    if m.regime == Regime::NonHypBoundary {
        return Err(Error::UnsupportedParameter {
            c: m.c,
            hint: ": no gap to carve at c = -2; the non-wandering set is [-2, 2] (see nw_full_interval)",
        });
    }
    let (cell0, cell1) = m.cells();
    let halves: Vec<(Interval, Interval)> = a
        .components
        .par_iter()
        .map(|comp| {
            (
                branch_clipped(m, comp, Sign::Minus, &cell0),
                branch_clipped(m, comp, Sign::Plus, &cell1),
            )
        })
        .collect();
    let mut components = Vec::with_capacity(2 * halves.len());
    components.extend(halves.iter().rev().map(|(neg, _)| *neg));
    components.extend(halves.iter().map(|(_, pos)| *pos));
    Ok(CantorApprox {
        depth: a.depth + 1,
        components,
        params: *m,
    })
}

/// Builds the depth-`depth` approximation from scratch.
pub fn build(m: &MapParams, depth: usize) -> Result<CantorApprox> {
    if m.regime == Regime::NonHypBoundary {
        return Err(Error::UnsupportedParameter {
            c: m.c,
            hint: ": no gap to carve at c = -2; the non-wandering set is [-2, 2] (see nw_full_interval)",
        });
    }
    if depth > DEPTH_CAP {
        return Err(Error::DepthCapExceeded {
            depth,
            cap: DEPTH_CAP,
        });
    }
    let mut a = initial_cover(m);
    for _ in 0..depth {
        a = refine(&a)?;
    }
    Ok(a)
}

/// Endpoints and midpoints of every component, sorted and deduplicated.
/// These are the test points every certificate samples derivatives at; by
/// construction their first `depth` iterates stay in the cover.
pub fn sample_points(a: &CantorApprox) -> Vec<f64> {
    let mut pts = Vec::with_capacity(3 * a.components.len());
    for comp in &a.components {
        pts.push(comp.lo());
        pts.push(comp.midpoint());
        pts.push(comp.hi());
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

/// Total Lebesgue measure of the cover.
pub fn total_length(a: &CantorApprox) -> f64 {
    a.components.iter().map(Interval::length).sum()
}

/// What replaces the Cantor approximation at `c = -2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FullIntervalEvidence {
    /// The non-wandering set itself.
    pub interval: Interval,
    /// Dense-orbit scan backing the claim.
    pub density: DensityCheck,
    /// Length of the dense word whose shift orbit was decoded.
    pub word_len: usize,
    /// Gap threshold the scan was held to.
    pub epsilon: f64,
}

/// The boundary-parameter counterpart of [`build`]: certifies that orbits
/// come arbitrarily close to every point of `[-2, 2]` by decoding the shift
/// orbit of a word that visits every cylinder of depth 7.
pub fn nw_full_interval(m: &MapParams) -> Result<FullIntervalEvidence> {
    if m.regime != Regime::NonHypBoundary {
        return Err(Error::UnsupportedParameter {
            c: m.c,
            hint: ": the non-wandering set is a Cantor set for c < -2; use build",
        });
    }
    let w = dense_word(FULL_INTERVAL_BLOCK);
    let density = density_check(m, &w, FULL_INTERVAL_EPSILON)?;
    Ok(FullIntervalEvidence {
        interval: Interval::new(-2.0, 2.0),
        density,
        word_len: w.len(),
        epsilon: FULL_INTERVAL_EPSILON,
    })
}

/// CSV rendering: one `lo,hi` row per component below a `#` comment header.
pub fn to_csv_string(a: &CantorApprox) -> String {
    let mut out = String::with_capacity(48 * a.components.len());
    out.push_str(&format!(
        "# depth={} count={}\n",
        a.depth,
        a.components.len()
    ));
    for comp in &a.components {
        out.push_str(&float17(comp.lo()));
        out.push(',');
        out.push_str(&float17(comp.hi()));
        out.push('\n');
    }
    out
}

/// Compact JSON rendering with the same digit policy as every other output.
pub fn to_json_string(a: &CantorApprox) -> String {
    let mut out = String::with_capacity(48 * a.components.len());
    out.push_str(&format!("{{\"depth\":{},\"components\":[", a.depth));
    for (i, comp) in a.components.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push('[');
        out.push_str(&float17(comp.lo()));
        out.push(',');
        out.push_str(&float17(comp.hi()));
        out.push(']');
    }
    out.push_str("]}");
    out
}
