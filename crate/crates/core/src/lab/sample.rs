use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arc::Arc;
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::series::{format_series, BiSeries, LaurentSeries};

/// A point of the jet space of regular curves with contact order `r` with
/// `U = 0`'s transversal direction: for `r = 1` the jet of `-U + α_1 T + ...
/// + α_n T^n`, for `r >= 2` the jet of `-T + β_r U^r + ... + β_n U^n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JetSample {
    pub r: u32,
    pub n: u32,
    /// `α_1..α_n` for `r = 1`, `β_r..β_n` otherwise.
    pub coeffs: Vec<Fe>,
    pub seed: u64,
}

pub fn random_element<R: Rng>(rng: &mut R, f: &Field) -> Fe {
    f.element(rng.gen_range(0..f.q())).expect("in range")
}

pub fn random_nonzero<R: Rng>(rng: &mut R, f: &Field) -> Fe {
    f.element(rng.gen_range(1..f.q())).expect("in range")
}

impl JetSample {
    /// Uniform coefficients subject to `β_r ≠ 0`, and `α_1 ≠ 0` when
    /// `transversal` is set (needed when both coordinate axes are branched).
    pub fn random<R: Rng>(rng: &mut R, f: &Field, r: u32, n: u32, transversal: bool, seed: u64) -> JetSample {
        assert!(r >= 1 && n >= r);
        let len = if r == 1 { n } else { n - r + 1 };
        let coeffs = (0..len)
            .map(|k| {
                if k == 0 && (r >= 2 || transversal) {
                    random_nonzero(rng, f)
                } else {
                    random_element(rng, f)
                }
            })
            .collect();
        JetSample { r, n, coeffs, seed }
    }
}

/// The regular arc realizing a jet: `(X, Σ α_i X^i)` or `(Σ β_i X^i, X)`.
pub fn sample_arc(f: &Field, js: &JetSample, prec: i64) -> Result<Arc> {
    let x = LaurentSeries::x(f, prec);
    let first = if js.r == 1 { 1 } else { js.r as i64 };
    let terms: Vec<(i64, Fe)> = js
        .coeffs
        .iter()
        .enumerate()
        .map(|(k, &c)| (first + k as i64, c))
        .collect();
    let graph = LaurentSeries::from_terms(f, &terms, prec);
    if js.r == 1 {
        Arc::new(x, graph)
    } else {
        Arc::new(graph, x)
    }
}

/// A unit of `k[[T,U]]`: nonzero constant plus random terms up to `max_degree`.
pub fn random_unit<R: Rng>(rng: &mut R, f: &Field, max_degree: u32) -> BiSeries {
    let mut terms = vec![((0, 0), random_nonzero(rng, f))];
    for d in 1..=max_degree {
        for i in 0..=d {
            terms.push(((i, d - i), random_element(rng, f)));
        }
    }
    BiSeries::new(f, terms, None)
}

/// `c X^lo + (random terms up to X^hi)` with `c ≠ 0`.
pub fn random_series<R: Rng>(rng: &mut R, f: &Field, lo: i64, hi: i64, prec: i64) -> LaurentSeries {
    let mut terms = vec![(lo, random_nonzero(rng, f))];
    terms.extend((lo + 1..=hi).map(|k| (k, random_element(rng, f))));
    LaurentSeries::from_terms(f, &terms, prec)
}

/// A random regular arc, in either orientation.
pub fn random_regular_arc<R: Rng>(rng: &mut R, f: &Field, prec: i64, len: i64) -> Arc {
    let a = LaurentSeries::x(f, prec);
    let lo = rng.gen_range(1..=3);
    let b = if rng.gen_bool(0.15) {
        LaurentSeries::zero(f, prec)
    } else {
        random_series(rng, f, lo, lo + len, prec)
    };
    let arc = if rng.gen_bool(0.5) { Arc::new(a, b) } else { Arc::new(b, a) };
    arc.expect("valid arc")
}

/// A random primitive arc of multiplicity between 2 and `max_mult`.
pub fn random_singular_primitive_arc<R: Rng>(rng: &mut R, f: &Field, prec: i64, max_mult: i64) -> Arc {
    loop {
        let e = rng.gen_range(2..=max_mult);
        let other = rng.gen_range(e..=e + 4);
        let s = random_series(rng, f, e, e + 5, prec);
        let o = random_series(rng, f, other, other + 5, prec);
        let arc = if rng.gen_bool(0.5) { Arc::new(s, o) } else { Arc::new(o, s) }.expect("valid arc");
        if arc.degree().ok() == Some(1) {
            return arc;
        }
    }
}

/// Arc literal as `{"t": ..., "u": ...}` without precision terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcLiteral {
    pub t: String,
    pub u: String,
}

impl ArcLiteral {
    pub fn from_json(text: &str) -> Result<ArcLiteral> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("arc literal: {e}")))
    }

    pub fn to_arc(&self, f: &Field, prec: i64) -> Result<Arc> {
        Arc::parse(f, &self.t, &self.u, prec)
    }
}

impl From<&Arc> for ArcLiteral {
    fn from(c: &Arc) -> ArcLiteral {
        ArcLiteral {
            t: format_series(c.t(), false),
            u: format_series(c.u(), false),
        }
    }
}
