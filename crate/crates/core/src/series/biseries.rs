use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::series::LaurentSeries;

/// Truncated power series in `T, U`.
///
/// Only nonzero coefficients are stored. `prec = Some(n)` means every
/// monomial of total degree `>= n` is unknown; `None` marks an exact
/// polynomial.
#[derive(Clone, PartialEq, Eq)]
pub struct BiSeries {
    field: Field,
    coeffs: BTreeMap<(u32, u32), Fe>,
    prec: Option<u32>,
}

impl BiSeries {
    pub fn new(field: &Field, terms: impl IntoIterator<Item = ((u32, u32), Fe)>, prec: Option<u32>) -> Self {
        let mut coeffs = BTreeMap::new();
        for ((i, j), c) in terms {
            if prec.is_some_and(|n| i + j >= n) {
                continue;
            }
            let slot = coeffs.entry((i, j)).or_insert(Fe::ZERO);
            *slot = field.add(*slot, c);
        }
        coeffs.retain(|_, c| !c.is_zero());
        BiSeries {
            field: field.clone(),
            coeffs,
            prec,
        }
    }

    pub fn zero(field: &Field, prec: Option<u32>) -> Self {
        Self::new(field, [], prec)
    }

    pub fn constant(field: &Field, c: Fe) -> Self {
        Self::new(field, [((0, 0), c)], None)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn prec(&self) -> Option<u32> {
        self.prec
    }

    pub fn coeff(&self, i: u32, j: u32) -> Fe {
        self.coeffs.get(&(i, j)).copied().unwrap_or(Fe::ZERO)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), Fe)> + '_ {
        self.coeffs.iter().map(|(&k, &c)| (k, c))
    }

    pub fn constant_term(&self) -> Fe {
        self.coeff(0, 0)
    }

    /// Units of `k[[T,U]]` are exactly the series with nonzero constant term.
    pub fn is_unit(&self) -> bool {
        !self.constant_term().is_zero() && self.prec != Some(0)
    }

    fn combine_prec(a: Option<u32>, b: Option<u32>) -> Option<u32> {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) | (None, x) => x,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.field == other.field, "series over different fields");
        Self::new(
            &self.field,
            self.terms().chain(other.terms()),
            Self::combine_prec(self.prec, other.prec),
        )
    }

    pub fn scale(&self, c: Fe) -> Self {
        Self::new(&self.field, self.terms().map(|(k, a)| (k, self.field.mul(a, c))), self.prec)
    }

    pub fn neg(&self) -> Self {
        self.scale(self.field.neg(Fe::ONE))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert!(self.field == other.field, "series over different fields");
        let f = &self.field;
        // Error terms: (a + O(n_a))(b + O(n_b)) is known below min(n_a + v_b, n_b + v_a),
        // with v the lowest total degree present.
        let low = |s: &Self| s.coeffs.keys().map(|(i, j)| i + j).min();
        let prec = match (self.prec, other.prec) {
            (None, None) => None,
            (Some(na), None) => Some(na + low(other).unwrap_or(0)),
            (None, Some(nb)) => Some(nb + low(self).unwrap_or(0)),
            (Some(na), Some(nb)) => Some((na + low(other).unwrap_or(nb)).min(nb + low(self).unwrap_or(na))),
        };
        let terms = self.terms().flat_map(|((i, j), a)| {
            other
                .terms()
                .map(move |((k, l), b)| ((i + k, j + l), f.mul(a, b)))
        });
        Self::new(f, terms.collect::<Vec<_>>(), prec)
    }

    /// Exchange the roles of `T` and `U`.
    pub fn swap(&self) -> Self {
        Self::new(&self.field, self.terms().map(|((i, j), c)| ((j, i), c)), self.prec)
    }

    /// `Σ c_ij t^i u^j`, truncated to what is guaranteed: the unknown tail of
    /// total degree `>= prec` contributes at valuation `>= prec * min(v(t), v(u))`.
    pub fn eval(&self, t: &LaurentSeries, u: &LaurentSeries) -> Result<LaurentSeries> {
        if t.field() != &self.field || u.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        let (lt, lu) = (t.lower_bound(), u.lower_bound());
        if lt < 1 || lu < 1 {
            return Err(Error::precondition("substituted series must have positive valuation"));
        }
        let mut target = t.prec().max(u.prec());
        if let Some(n) = self.prec {
            target = target.min(n as i64 * lt.min(lu));
        }
        let max_i = self.coeffs.keys().map(|k| k.0).max().unwrap_or(0);
        let max_j = self.coeffs.keys().map(|k| k.1).max().unwrap_or(0);
        let powers = |s: &LaurentSeries, n: u32| -> Vec<LaurentSeries> {
            let mut out = vec![LaurentSeries::one(&self.field, target)];
            for _ in 0..n {
                let next = (s * out.last().expect("nonempty")).truncate(target);
                out.push(next);
            }
            out
        };
        let tp = powers(t, max_i);
        let up = powers(u, max_j);
        let mut acc = LaurentSeries::zero(&self.field, target);
        for ((i, j), c) in self.terms() {
            let term = match (i, j) {
                (_, 0) => tp[i as usize].scale(c),
                (0, _) => up[j as usize].scale(c),
                _ => (&tp[i as usize] * &up[j as usize]).scale(c),
            };
            acc = &acc + &term;
        }
        Ok(acc)
    }
}

impl fmt::Debug for BiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::literal::format_biseries(self))
    }
}

impl fmt::Display for BiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::literal::format_biseries(self))
    }
}
