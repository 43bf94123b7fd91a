//! Itinerary coding of orbits and its inverse: backward decoding of 0/1
//! words to points, plus the dense-orbit construction at `c = -2`.
//!
//! Forward iteration has positive Lyapunov exponent and loses a digit of
//! precision every couple of steps, so every decoded point is produced by the
//! backward construction (inverse branches applied right to left), which
//! contracts instead.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::map::{MapParams, Regime, Sign};

/// Hard stop for backward refinement depth.
pub const DEFAULT_DECODE_DEPTH_CAP: usize = 512;

/// How many copies of the trailing symbol a refinement round appends.
const EXTENSION_BATCH: usize = 32;

/// Decode tolerance used internally by [`density_check`], which exposes no
/// tolerance parameter of its own.
const DENSITY_DECODE_TOL: f64 = 1e-8;

/// A finite itinerary over the symbols 0 and 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    symbols: Vec<u8>,
    /// True when some coded orbit point hit a partition point exactly, so
    /// the name was completed by a tie-break rather than forced.
    pub boundary_ambiguous: bool,
}

impl Word {
    /// Word from raw symbols; rejects empty input and symbols other than 0/1.
    pub fn from_symbols(symbols: Vec<u8>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::EmptyWord);
        }
        if let Some(&bad) = symbols.iter().find(|&&s| s > 1) {
            return Err(Error::InvalidSymbol {
                ch: (b'0' + bad) as char,
            });
        }
        Ok(Self {
            symbols,
            boundary_ambiguous: false,
        })
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false // the constructor rejects empty words
    }
}

impl std::str::FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::EmptyWord);
        }
        s.chars()
            .map(|ch| match ch {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::InvalidSymbol { ch: other }),
            })
            .collect::<Result<Vec<u8>>>()
            .map(|symbols| Word {
                symbols,
                boundary_ambiguous: false,
            })
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &s in &self.symbols {
            write!(f, "{}", s)?;
        }
        Ok(())
    }
}

/// The two-cell coding partition: cell 0 on the negative side, cell 1 on the
/// positive side. At `c = -2` the cells share the point 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartitionSpec {
    pub cell0: Interval,
    pub cell1: Interval,
}

impl PartitionSpec {
    pub fn for_map(m: &MapParams) -> Self {
        let (cell0, cell1) = m.cells();
        Self { cell0, cell1 }
    }
}

/// Reads `n >= 1` symbols from the forward orbit of `x`: symbol `i` names the
/// cell containing `f^i(x)`.
///
/// A point exactly at 0 (possible only at `c = -2`) belongs to both cells and
/// is assigned symbol 1; this and any exact hit of a gap or outer endpoint
/// (`+-alpha`, `+-p` for `c < -2`) sets `boundary_ambiguous`. Iterates
/// outside both cells abort with `EscapedOrbit`.
pub fn itinerary(m: &MapParams, x: f64, n: usize) -> Result<Word> {
    assert!(n >= 1, "itinerary needs at least one symbol");
    let part = PartitionSpec::for_map(m);
    let mut symbols = Vec::with_capacity(n);
    let mut ambiguous = false;
    let mut xi = x;
    for i in 0..n {
        let sym = if part.cell1.contains(xi) {
            1
        } else if part.cell0.contains(xi) {
            0
        } else {
            return Err(Error::EscapedOrbit { step: i, value: xi });
        };
        let on_boundary = if m.regime == Regime::NonHypBoundary {
            xi == 0.0
        } else {
            xi.abs() == m.alpha || xi.abs() == m.p_plus
        };
        ambiguous |= on_boundary;
        symbols.push(sym);
        xi = m.evaluate(xi).0;
    }
    Ok(Word {
        symbols,
        boundary_ambiguous: ambiguous,
    })
}

/// Result of backward decoding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decoded {
    /// Final refinement bracket (the cylinder of the possibly extended word).
    pub bracket: Interval,
    /// Bracket midpoint, the decoded point.
    pub point: f64,
    /// Bracket length.
    pub width: f64,
    /// Whether `width <= tol` was reached before the depth cap.
    pub converged: bool,
}

/// Image of `[lo, hi]` under one inverse branch, clipped below at the
/// critical value.
fn branch_interval(m: &MapParams, lo: f64, hi: f64, sign: Sign) -> (f64, f64) {
    let a = (lo - m.c).max(0.0).sqrt();
    let b = (hi - m.c).max(0.0).sqrt();
    match sign {
        Sign::Plus => (a, b),
        Sign::Minus => (-b, -a),
    }
}

/// One full backward pass over `symbols` extended by `ext` copies of its last
/// symbol: starts in the innermost cell and applies inverse branches outward,
/// intersecting with the coded cell at each level.
fn cylinder(m: &MapParams, symbols: &[u8], ext: usize) -> Interval {
    let part = PartitionSpec::for_map(m);
    let cell = |s: u8| if s == 0 { part.cell0 } else { part.cell1 };
    let last = *symbols.last().expect("words are nonempty");
    let total = symbols.len() + ext;
    let innermost = cell(last);
    let (mut lo, mut hi) = (innermost.lo(), innermost.hi());
    for idx in (0..total - 1).rev() {
        let s = if idx < symbols.len() { symbols[idx] } else { last };
        let sign = if s == 1 { Sign::Plus } else { Sign::Minus };
        let (blo, bhi) = branch_interval(m, lo, hi, sign);
        let cl = cell(s);
        let mut nlo = blo.max(cl.lo());
        let mut nhi = bhi.min(cl.hi());
        if nlo > nhi {
            // Rounding can push the branch image just outside the cell;
            // collapse to the nearest cell point instead of failing.
            let mid = 0.5 * (nlo + nhi);
            let clamped = mid.max(cl.lo()).min(cl.hi());
            nlo = clamped;
            nhi = clamped;
        }
        lo = nlo;
        hi = nhi;
    }
    Interval::new(lo, hi)
}

/// Decodes a word to the point whose itinerary it is, by the backward
/// contracting construction.
///
/// The bracket of the raw `|w|`-cylinder is refined by extending the word
/// periodically with its last symbol (in batches) until its width drops to
/// `tol` or the total depth reaches `depth_cap`. Inverse branches are not
/// uniformly contracting per step in the hard-gap regime, so convergence is
/// only eventual; failure to reach `tol` is reported in `converged`, not as
/// an error. `tol = f64::INFINITY` returns the raw cylinder.
pub fn decode(m: &MapParams, w: &Word, tol: f64, depth_cap: usize) -> Decoded {
    decode_symbols(m, w.symbols(), tol, depth_cap)
}

fn decode_symbols(m: &MapParams, symbols: &[u8], tol: f64, depth_cap: usize) -> Decoded {
    let mut ext = 0;
    loop {
        let bracket = cylinder(m, symbols, ext);
        let width = bracket.length();
        let depth = symbols.len() + ext;
        if width <= tol || depth >= depth_cap {
            return Decoded {
                bracket,
                point: bracket.midpoint(),
                width,
                converged: width <= tol,
            };
        }
        ext += EXTENSION_BATCH;
    }
}

/// Defect of the shift relation at position `i`: the coding map should send
/// the shifted word to the image point, so `|f(decode(shift^i w)) -
/// decode(shift^{i+1} w)|` measures how far the two routes disagree.
/// Requires `i + 1 < |w|` so both shifted words are nonempty.
pub fn semiconjugacy_defect(m: &MapParams, w: &Word, i: usize, tol: f64) -> Result<f64> {
    if i + 1 >= w.len() {
        return Err(Error::DomainError {
            what: "i",
            value: i as f64,
            why: "shift index must leave at least two symbols",
        });
    }
    let a = decode_symbols(m, &w.symbols()[i..], tol, DEFAULT_DECODE_DEPTH_CAP);
    let b = decode_symbols(m, &w.symbols()[i + 1..], tol, DEFAULT_DECODE_DEPTH_CAP);
    Ok((m.evaluate(a.point).0 - b.point).abs())
}

/// Concatenation of every 0/1 word of length 1, 2, ..., `l` in
/// length-then-lexicographic order; an orbit shadowing this word visits every
/// cylinder of depth `l`. Total length `sum k 2^k`.
pub fn dense_word(l: usize) -> Word {
    assert!(l >= 1, "dense word needs at least block length 1");
    let mut symbols = Vec::new();
    for k in 1..=l {
        for i in 0..(1_u64 << k) {
            for bit in (0..k).rev() {
                symbols.push(((i >> bit) & 1) as u8);
            }
        }
    }
    Word {
        symbols,
        boundary_ambiguous: false,
    }
}

/// Outcome of a density scan over decoded shift-orbit points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityCheck {
    /// Largest gap left uncovered in `[-2, 2]`, boundary gaps included.
    pub max_gap: f64,
    pub pass: bool,
    /// Number of decoded orbit points.
    pub points: usize,
}

/// Decodes the full shift orbit of `w` (every suffix, each independently by
/// the backward construction, never forward iteration), sorts the points and
/// measures the largest uncovered gap in `[-2, 2]`. Only meaningful at
/// `c = -2`, where the non-wandering set is the whole interval.
pub fn density_check(m: &MapParams, w: &Word, epsilon: f64) -> Result<DensityCheck> {
    if m.regime != Regime::NonHypBoundary {
        return Err(Error::WrongRegime {
            op: "density_check",
            requires: "c = -2 (the full-interval case)",
            actual: m.regime.as_str(),
            c: m.c,
        });
    }
    let symbols = w.symbols();
    let mut points: Vec<f64> = (0..symbols.len())
        .into_par_iter()
        .map(|i| {
            decode_symbols(m, &symbols[i..], DENSITY_DECODE_TOL, DEFAULT_DECODE_DEPTH_CAP).point
        })
        .collect();
    points.sort_by(f64::total_cmp);
    let mut max_gap = (points[0] + 2.0).max(2.0 - points[points.len() - 1]);
    for pair in points.windows(2) {
        max_gap = max_gap.max(pair[1] - pair[0]);
    }
    Ok(DensityCheck {
        max_gap,
        pass: max_gap < epsilon,
        points: points.len(),
    })
}

/// Independent test oracle for the boundary parameter: `x = 2 cos(2 pi t)`
/// conjugates `f_{-2}` to angle doubling, so
/// `|f_{-2}(2 cos 2 pi t) - 2 cos 4 pi t|` must vanish identically.
pub fn chebyshev_oracle(t: f64) -> f64 {
    let x = 2.0 * (2.0 * std::f64::consts::PI * t).cos();
    let doubled = 2.0 * (4.0 * std::f64::consts::PI * t).cos();
    (x * x - 2.0 - doubled).abs()
}
