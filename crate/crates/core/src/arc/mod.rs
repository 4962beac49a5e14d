//! Arcs on Spec k[[T,U]]: pairs `(t(X), u(X))` of power series without
//! constant term, with multiplicities, tangents, blow-ups and intersection
//! multiplicities computed through infinitely near points.

mod hn;

pub use hn::{HnExpansion, HnRow};

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::series::{parse_series, BiSeries, LaurentSeries};

#[derive(Clone, PartialEq, Eq)]
pub struct Arc {
    t: LaurentSeries,
    u: LaurentSeries,
}

/// Tangent direction `[α : β]`, normalized so the first nonzero entry is 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Tangent {
    pub alpha: Fe,
    pub beta: Fe,
}

/// Which coordinate the blow-up divided by. In the `U` chart the new
/// coordinates are `(t/u - c, u)` and the exceptional divisor is `u = 0`;
/// the `T` chart is the mirror image.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    T,
    U,
}

/// Strict transform of an arc together with the chart it lives in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowUp {
    pub arc: Arc,
    pub chart: Chart,
    /// The constant subtracted after division, i.e. the center on the
    /// exceptional line.
    pub center: Fe,
}

impl BlowUp {
    /// The coordinate cutting out the exceptional divisor in this chart.
    pub fn exceptional(&self) -> &LaurentSeries {
        match self.chart {
            Chart::U => &self.arc.u,
            Chart::T => &self.arc.t,
        }
    }
}

/// Valuations `(v(t), v(u))` as far as they can be decided, returning the
/// minimum and whether `u` attains it (ties favour `u`).
fn min_valuation(t: &LaurentSeries, u: &LaurentSeries) -> Result<(i64, bool)> {
    match (t.is_zero(), u.is_zero()) {
        (true, true) => Err(Error::precision("both arc coordinates are zero to precision")),
        (_, false) if u.lower_bound() <= t.lower_bound() => Ok((u.lower_bound(), true)),
        (false, _) if t.lower_bound() < u.lower_bound() => Ok((t.lower_bound(), false)),
        _ => Err(Error::precision("cannot decide which arc coordinate has smaller valuation")),
    }
}

impl Arc {
    pub fn new(t: LaurentSeries, u: LaurentSeries) -> Result<Arc> {
        if t.field() != u.field() {
            return Err(Error::FieldMismatch);
        }
        if t.lower_bound() < 1 || u.lower_bound() < 1 {
            return Err(Error::precondition("arc coordinates must have positive valuation"));
        }
        if t.is_zero() && u.is_zero() {
            return Err(Error::precondition("arc coordinates are both zero to precision"));
        }
        Ok(Arc { t, u })
    }

    /// Parse from two univariate series literals.
    pub fn parse(field: &Field, t: &str, u: &str, prec: i64) -> Result<Arc> {
        Arc::new(parse_series(field, t, prec)?, parse_series(field, u, prec)?)
    }

    pub fn t(&self) -> &LaurentSeries {
        &self.t
    }

    pub fn u(&self) -> &LaurentSeries {
        &self.u
    }

    pub fn field(&self) -> &Field {
        self.t.field()
    }

    /// Smallest precision of the two coordinates.
    pub fn prec(&self) -> i64 {
        self.t.prec().min(self.u.prec())
    }

    pub fn swap(&self) -> Arc {
        Arc {
            t: self.u.clone(),
            u: self.t.clone(),
        }
    }

    /// Reparameterize `X = Z^d`.
    pub fn reparameterize(&self, d: i64) -> Arc {
        Arc {
            t: self.t.reparameterize(d),
            u: self.u.reparameterize(d),
        }
    }

    /// `E_C = min(v(t), v(u))`.
    pub fn multiplicity(&self) -> Result<i64> {
        min_valuation(&self.t, &self.u).map(|(e, _)| e)
    }

    pub fn tangent(&self) -> Result<Tangent> {
        let f = self.field();
        let (e, _) = min_valuation(&self.t, &self.u)?;
        let t_lead = !self.t.is_zero() && self.t.lower_bound() == e;
        let u_lead = !self.u.is_zero() && self.u.lower_bound() == e;
        Ok(match (t_lead, u_lead) {
            (true, false) => Tangent {
                alpha: Fe::ZERO,
                beta: Fe::ONE,
            },
            (false, true) => Tangent {
                alpha: Fe::ONE,
                beta: Fe::ZERO,
            },
            _ => {
                let ratio = f.div(self.t.leading()?, self.u.leading()?)?;
                Tangent {
                    alpha: Fe::ONE,
                    beta: f.neg(ratio),
                }
            }
        })
    }

    /// The arc at the first infinitely near point. Divides by `u` unless
    /// `t` has strictly smaller valuation.
    pub fn strict_transform(&self) -> Result<BlowUp> {
        let (_, by_u) = min_valuation(&self.t, &self.u)?;
        let (num, den) = if by_u { (&self.t, &self.u) } else { (&self.u, &self.t) };
        let q = num.div(den)?;
        if q.prec() <= 0 {
            return Err(Error::precision("strict transform lost all precision"));
        }
        let center = q.coeff(0);
        let moved = q.add_const(self.field().neg(center));
        let (arc, chart) = if by_u {
            (Arc { t: moved, u: self.u.clone() }, Chart::U)
        } else {
            (Arc { t: self.t.clone(), u: moved }, Chart::T)
        };
        Ok(BlowUp { arc, chart, center })
    }

    /// Number of blow-ups until the strict transform is smooth.
    pub fn blow_up_count(&self) -> Result<u64> {
        let mut c = self.clone();
        let mut n = 0;
        while c.multiplicity()? > 1 {
            c = c.strict_transform()?.arc;
            n += 1;
        }
        Ok(n)
    }

    /// Intersection multiplicity `(C.D)`, summing `E_C E_D` over shared
    /// infinitely near points. Pairs that have not separated when the
    /// precision runs out are reported as [`Error::Infinite`].
    pub fn intersect(&self, other: &Arc) -> Result<i64> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        // Most pairs separate early; precision is tracked exactly, so a
        // result found on truncated arcs is the true one.
        let full = self.prec().max(other.prec()).max(1);
        let mut work = 64.min(full);
        loop {
            let cut = |a: &Arc| Arc {
                t: a.t.truncate(work),
                u: a.u.truncate(work),
            };
            match Self::intersect_at(&cut(self), &cut(other), work) {
                Err(Error::Infinite) if work < full => work = (2 * work).min(full),
                r => return r,
            }
        }
    }

    fn intersect_at(c: &Arc, d: &Arc, cap: i64) -> Result<i64> {
        let (mut c, mut d) = (c.clone(), d.clone());
        let mut total = 0;
        for _ in 0..cap {
            match intersection_step(&c, &d) {
                Ok((product, None)) => return Ok(total + product),
                Ok((product, Some((c1, d1)))) => {
                    total += product;
                    c = c1;
                    d = d1;
                }
                Err(Error::PrecisionExhausted(_)) => return Err(Error::Infinite),
                Err(e) => return Err(e),
            }
        }
        Err(Error::Infinite)
    }

    /// `v_X` of the pullback `g(t, u)`.
    pub fn pullback_valuation(&self, g: &BiSeries) -> Result<i64> {
        g.eval(&self.t, &self.u)?.valuation()
    }

    pub fn hn_expand(&self) -> Result<HnExpansion> {
        HnExpansion::of(self, usize::MAX)
    }

    /// `M_C = h_0 + ... + h_{r-1}`.
    pub fn singularity_degree(&self) -> Result<u64> {
        Ok(HnExpansion::of(self, 0)?.m())
    }

    /// `d_C`: the degree of the parameterization over the curve it traces.
    pub fn degree(&self) -> Result<i64> {
        Ok(HnExpansion::of(self, 0)?.d())
    }

    /// Equation `g` of a regular primitive arc, with `g(t, u) = 0` to precision.
    pub fn equation_of_regular_arc(&self) -> Result<BiSeries> {
        if self.multiplicity()? != 1 {
            return Err(Error::precondition("arc is singular"));
        }
        self.hn_expand()?.regular_equation()
    }
}

/// One term of the blow-up recursion: `E_C E_D` and, if the arcs still share
/// the next infinitely near point, their strict transforms.
fn intersection_step(c: &Arc, d: &Arc) -> Result<(i64, Option<(Arc, Arc)>)> {
    let product = c.multiplicity()? * d.multiplicity()?;
    if c.tangent()? != d.tangent()? {
        return Ok((product, None));
    }
    Ok((product, Some((c.strict_transform()?.arc, d.strict_transform()?.arc))))
}

impl fmt::Debug for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.t, self.u)
    }
}
