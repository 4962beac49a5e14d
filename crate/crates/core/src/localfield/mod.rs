//! Ramification of Artin-Schreier and elementary abelian p-extensions of
//! k((X)): jumps, lower-numbering filtrations, the modified Hasse-Herbrand
//! function and Swan conductors.

mod abelian;
mod filtration;
mod plfunction;

pub use abelian::{filtration_elem_abelian, ElemAbelian, Vector};
pub use filtration::Filtration;
pub use plfunction::PlFunction;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::LaurentSeries;

/// How an Artin-Schreier class with jump 0 degenerates. Only a diagnostic:
/// both cases contribute nothing to the wild invariants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AsKind {
    Ramified,
    /// `x^p - x = a` already has a root over the coefficient field.
    Split,
    /// The constant term has nonzero trace: the extension is unramified but
    /// does not split over the finite coefficient field.
    Unramified,
}

/// Reduced representative of `a` modulo `℘(k((X))) = {b^p - b}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsClass {
    pub reduced: LaurentSeries,
    pub jump: u64,
    pub kind: AsKind,
}

/// Strip pole orders divisible by `p`: while `v(a) = -m < 0` with `p | m`,
/// replace `a` by `a - b^p + b` where `b = c^{1/p} X^{-m/p}` and `c` is the
/// leading coefficient. The remaining pole order is the jump.
pub fn as_reduce(a: &LaurentSeries) -> Result<AsClass> {
    let f = a.field().clone();
    let p = f.p() as i64;
    let mut a = a.clone();
    loop {
        if a.is_zero() {
            if a.prec() < 0 {
                return Err(Error::precision(format!(
                    "pole part cancelled down to O(X^{}) before the jump was determined",
                    a.prec()
                )));
            }
            return Ok(AsClass {
                reduced: a,
                jump: 0,
                kind: AsKind::Split,
            });
        }
        let v = a.valuation()?;
        if v >= 0 {
            let kind = if f.trace(a.coeff(0)) == 0 {
                AsKind::Split
            } else {
                AsKind::Unramified
            };
            return Ok(AsClass {
                reduced: a,
                jump: 0,
                kind,
            });
        }
        let m = -v;
        if m % p != 0 {
            return Ok(AsClass {
                reduced: a,
                jump: m as u64,
                kind: AsKind::Ramified,
            });
        }
        let b = f.pth_root(a.leading()?);
        a = a.add_monomial(f.neg(a.leading()?), v).add_monomial(b, v / p);
    }
}
