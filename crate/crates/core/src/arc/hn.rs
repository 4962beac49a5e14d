use serde::Serialize;

use super::Arc;
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::series::{BiSeries, LaurentSeries};

/// One division row: `y = a_1 w + ... + a_h w^h + w^h z` with `v(z) < v(w)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HnRow {
    pub h: u64,
    /// `a_1, ..., a_h` (for rows after the first `a_1` is always zero).
    pub coeffs: Vec<Fe>,
}

/// Hamburger-Noether expansion of an arc.
///
/// Row `i` divides `y_i` by `w_i` (starting from `y_0` = the coordinate of
/// larger valuation, `w_0` = the other one) until the remainder `z_{i+1}`
/// drops below `v(w_i)`; then `y_{i+1} = w_i`, `w_{i+1} = z_{i+1}`. The last
/// row expresses `y_r` as a power series `Σ a_j w_r^j` in `w_r`, whose
/// valuation is the degree `d` of the parameterization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HnExpansion {
    pub rows: Vec<HnRow>,
    /// `a_{r,1}, a_{r,2}, ...` as far as the precision allows.
    pub final_row: Vec<Fe>,
    /// True when `u` had strictly larger valuation than `t`, so the rows
    /// start by dividing `u` by `t`.
    pub swapped: bool,
    /// `v(z_1), ..., v(z_r)`.
    pub z_valuations: Vec<i64>,
    /// Valuation of `w_0`, i.e. the multiplicity.
    pub multiplicity: i64,
    field: Field,
}

#[derive(Serialize)]
struct HnJson {
    swapped: bool,
    multiplicity: i64,
    r: usize,
    m: u64,
    d: i64,
    rows: Vec<(u64, Vec<String>)>,
    final_row: Vec<String>,
    z_valuations: Vec<i64>,
}

impl HnExpansion {
    /// The expansion with at most `final_terms` coefficients of the final
    /// row; `M` and `d` do not depend on them.
    pub(super) fn of(arc: &Arc, final_terms: usize) -> Result<HnExpansion> {
        let (e, by_u) = super::min_valuation(&arc.t, &arc.u)?;
        // by_u: u attains the minimum, so t is divided by u first.
        let swapped = !by_u;
        let (mut y, mut w) = if swapped {
            (arc.u.clone(), arc.t.clone())
        } else {
            (arc.t.clone(), arc.u.clone())
        };
        let f = arc.field().clone();
        let mut rows = Vec::new();
        let mut z_valuations = Vec::new();
        loop {
            let vw = w.valuation()?;
            let mut coeffs = Vec::new();
            if vw == 1 {
                // Final row: y is a power series in w; read off as many
                // coefficients as the precision determines.
                let w_inv = w.invert()?;
                while coeffs.len() < final_terms {
                    let q = &y * &w_inv;
                    if q.prec() <= 0 {
                        break;
                    }
                    let a = q.coeff(0);
                    coeffs.push(a);
                    y = q.add_const(f.neg(a));
                }
                return Ok(HnExpansion {
                    rows,
                    final_row: coeffs,
                    swapped,
                    z_valuations,
                    multiplicity: e,
                    field: f,
                });
            }
            loop {
                if y.is_zero() {
                    if y.prec() >= vw {
                        // Everything known is exhausted by powers of w: y
                        // is taken to lie in k[[w]], which closes the expansion.
                        return Ok(HnExpansion {
                            rows,
                            final_row: coeffs,
                            swapped,
                            z_valuations,
                            multiplicity: e,
                            field: f,
                        });
                    }
                    return Err(Error::precision(
                        "cannot decide whether the expansion terminates at this row",
                    ));
                }
                let vy = y.valuation()?;
                if vy < vw {
                    z_valuations.push(vy);
                    rows.push(HnRow {
                        h: coeffs.len() as u64,
                        coeffs,
                    });
                    std::mem::swap(&mut y, &mut w);
                    break;
                }
                let q = y.div(&w)?;
                if q.prec() <= 0 {
                    return Err(Error::precision("division row ran out of precision"));
                }
                let a = q.coeff(0);
                coeffs.push(a);
                y = q.add_const(f.neg(a));
            }
        }
    }

    /// Number of rows before the final one.
    pub fn r(&self) -> usize {
        self.rows.len()
    }

    /// `M = h_0 + ... + h_{r-1}`.
    pub fn m(&self) -> u64 {
        self.rows.iter().map(|r| r.h).sum()
    }

    /// Valuation of the last parameter `z_r`.
    pub fn d(&self) -> i64 {
        self.z_valuations.last().copied().unwrap_or(self.multiplicity)
    }

    /// `g = -T + Σ a_j U^j` (with `T, U` exchanged when `swapped`) for an
    /// expansion consisting of a single final row in a parameter of valuation 1.
    pub fn regular_equation(&self) -> Result<BiSeries> {
        if !self.rows.is_empty() || self.multiplicity != 1 {
            return Err(Error::precondition("arc is not regular"));
        }
        let field = self.field.clone();
        let n = self.final_row.len() as u32;
        let mut terms = vec![((1, 0), field.neg(Fe::ONE))];
        terms.extend(
            self.final_row
                .iter()
                .enumerate()
                .map(|(j, &a)| ((0, j as u32 + 1), a)),
        );
        let g = BiSeries::new(&field, terms, Some(n + 1));
        Ok(if self.swapped { g.swap() } else { g })
    }

    /// An arc with this expansion, built with `z_r = X^d`.
    pub fn rebuild(&self) -> Result<Arc> {
        let field = self.field.clone();
        let d = self.d();
        let prec = d * (self.final_row.len() as i64 + 1);
        let poly = |w: &LaurentSeries, coeffs: &[Fe], prec: i64| -> LaurentSeries {
            let mut acc = LaurentSeries::zero(&field, prec);
            for &a in coeffs.iter().rev() {
                acc = (&acc.add_const(a) * w).truncate(prec);
            }
            acc
        };
        let mut w = LaurentSeries::x(&field, prec).pow(d)?;
        let mut y = poly(&w, &self.final_row, prec);
        for row in self.rows.iter().rev() {
            // y_i = Σ a_ij w_i^j + w_i^h z_{i+1}, where w_i = y_{i+1}, z_{i+1} = w_{i+1}.
            let (wi, z) = (y, w);
            let tail = &wi.pow(row.h as i64)? * &z;
            let yi = &poly(&wi, &row.coeffs, tail.prec()) + &tail;
            y = yi;
            w = wi;
        }
        if self.swapped {
            Arc::new(w, y)
        } else {
            Arc::new(y, w)
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let show = |a: &Fe| self.field.format(*a);
        serde_json::to_value(HnJson {
            swapped: self.swapped,
            multiplicity: self.multiplicity,
            r: self.r(),
            m: self.m(),
            d: self.d(),
            rows: self
                .rows
                .iter()
                .map(|r| (r.h, r.coeffs.iter().map(show).collect()))
                .collect(),
            final_row: self.final_row.iter().map(show).collect(),
            z_valuations: self.z_valuations.clone(),
        })
        .expect("plain data serializes")
    }
}
