use std::cmp::{max, min};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Fe, Field};

/// Truncated Laurent series `c_v X^v + ... + c_{N-1} X^{N-1} + O(X^N)`.
///
/// `coeffs[k]` is the coefficient of `X^(val + k)` and the vector always
/// spans `val..prec`. A nonzero series has a nonzero leading coefficient;
/// the series that is zero to precision is stored with `val == prec` and no
/// coefficients, so it still remembers how much is known about it.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    field: Field,
    val: i64,
    prec: i64,
    coeffs: Vec<Fe>,
}

impl LaurentSeries {
    fn normalized(field: &Field, mut val: i64, mut coeffs: Vec<Fe>, prec: i64) -> Self {
        if val >= prec {
            return Self::zero(field, prec);
        }
        coeffs.truncate((prec - val) as usize);
        match coeffs.iter().position(|c| !c.is_zero()) {
            None => Self::zero(field, prec),
            Some(lead) => {
                coeffs.drain(..lead);
                val += lead as i64;
                coeffs.resize((prec - val) as usize, Fe::ZERO);
                LaurentSeries {
                    field: field.clone(),
                    val,
                    prec,
                    coeffs,
                }
            }
        }
    }

    /// `O(X^prec)`.
    pub fn zero(field: &Field, prec: i64) -> Self {
        LaurentSeries {
            field: field.clone(),
            val: prec,
            prec,
            coeffs: Vec::new(),
        }
    }

    /// Series with `coeffs[k]` at exponent `val + k`, known up to `X^prec`.
    pub fn from_coeffs(field: &Field, val: i64, coeffs: Vec<Fe>, prec: i64) -> Self {
        Self::normalized(field, val, coeffs, prec)
    }

    /// Build from sparse `(exponent, coefficient)` terms; repeated exponents add up.
    pub fn from_terms(field: &Field, terms: &[(i64, Fe)], prec: i64) -> Self {
        let lo = terms.iter().map(|t| t.0).min().unwrap_or(prec).min(prec);
        let mut coeffs = vec![Fe::ZERO; (prec - lo).max(0) as usize];
        for &(k, c) in terms {
            if k < prec {
                let slot = &mut coeffs[(k - lo) as usize];
                *slot = field.add(*slot, c);
            }
        }
        Self::normalized(field, lo, coeffs, prec)
    }

    pub fn monomial(field: &Field, c: Fe, k: i64, prec: i64) -> Self {
        Self::from_terms(field, &[(k, c)], prec)
    }

    pub fn constant(field: &Field, c: Fe, prec: i64) -> Self {
        Self::monomial(field, c, 0, prec)
    }

    pub fn one(field: &Field, prec: i64) -> Self {
        Self::constant(field, Fe::ONE, prec)
    }

    /// The uniformizer `X`.
    pub fn x(field: &Field, prec: i64) -> Self {
        Self::monomial(field, Fe::ONE, 1, prec)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Exclusive precision bound: every exponent below it is known exactly.
    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn valuation(&self) -> Result<i64> {
        if self.is_zero() {
            Err(Error::precision(format!("series is zero to precision O(X^{})", self.prec)))
        } else {
            Ok(self.val)
        }
    }

    /// A lower bound for the valuation: the valuation itself, or the
    /// precision for a series that is zero to precision.
    pub fn lower_bound(&self) -> i64 {
        self.val
    }

    /// Number of known coefficients from the leading one on.
    pub fn relative_prec(&self) -> i64 {
        self.prec - self.val
    }

    pub fn leading(&self) -> Result<Fe> {
        self.valuation().map(|_| self.coeffs[0])
    }

    /// Coefficient of `X^k`. Exponents at or beyond the precision read as zero.
    pub fn coeff(&self, k: i64) -> Fe {
        if k < self.val || k >= self.prec {
            Fe::ZERO
        } else {
            self.coeffs[(k - self.val) as usize]
        }
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, Fe)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, &c)| (self.val + k as i64, c))
    }

    /// Forget everything from `X^prec` on (no-op if already coarser).
    pub fn truncate(&self, prec: i64) -> Self {
        if prec >= self.prec {
            return self.clone();
        }
        Self::normalized(&self.field, self.val, self.coeffs.clone(), prec)
    }

    /// True when `self - other` is zero to the common precision.
    pub fn agrees_with(&self, other: &Self) -> bool {
        (self - other).is_zero()
    }

    fn check_field(&self, other: &Self) {
        assert!(self.field == other.field, "series over different fields");
    }

    /// Add an exact term `c X^k`.
    pub fn add_monomial(&self, c: Fe, k: i64) -> Self {
        self + &Self::monomial(&self.field, c, k, self.prec.max(k + 1))
    }

    /// Add an exact constant.
    pub fn add_const(&self, c: Fe) -> Self {
        self.add_monomial(c, 0)
    }

    pub fn scale(&self, c: Fe) -> Self {
        if c.is_zero() {
            return Self::zero(&self.field, self.prec);
        }
        let f = &self.field;
        LaurentSeries {
            field: f.clone(),
            val: self.val,
            prec: self.prec,
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// Multiply by `X^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentSeries {
            field: self.field.clone(),
            val: self.val + k,
            prec: self.prec + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn invert(&self) -> Result<Self> {
        let v = self.valuation()?;
        let f = &self.field;
        let a = &self.coeffs;
        let n = a.len();
        let b0 = f.inv(a[0])?;
        let nb0 = f.neg(b0);
        let mut b = Vec::with_capacity(n);
        b.push(b0);
        for k in 1..n {
            let mut acc = Fe::ZERO;
            for i in 1..=k {
                if !a[i].is_zero() {
                    acc = f.add(acc, f.mul(a[i], b[k - i]));
                }
            }
            b.push(f.mul(nb0, acc));
        }
        Ok(LaurentSeries {
            field: f.clone(),
            val: -v,
            prec: -v + n as i64,
            coeffs: b,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_field(other);
        // Division by a monomial is a shift and a scale.
        if !other.is_zero() && other.terms().nth(1).is_none() {
            let c = self.field.inv(other.coeffs[0])?;
            let q = self.shift(-other.val).scale(c);
            let prec = min(q.prec, self.val + other.relative_prec() - other.val);
            return Ok(q.truncate(prec));
        }
        Ok(self * &other.invert()?)
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return self.invert()?.pow(-n);
        }
        if n == 0 {
            return Ok(Self::one(&self.field, max(self.relative_prec(), 1)));
        }
        let mut base = self.clone();
        let mut acc: Option<Self> = None;
        let mut k = n;
        loop {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => &a * &base,
                });
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            base = &base * &base;
        }
        Ok(acc.expect("n > 0"))
    }

    /// `self(inner(X))`. Needs `inner` of positive valuation (or zero to a
    /// positive precision); negative powers of `inner` go through its inverse.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        self.check_field(inner);
        let f = &self.field;
        let w_lb = inner.lower_bound();
        if w_lb < 1 {
            return Err(Error::precondition("inner series must have positive valuation"));
        }
        if self.is_zero() {
            if self.prec < 0 {
                return Err(Error::precision("composing O(X^k) with k < 0"));
            }
            return Ok(Self::zero(f, self.prec.saturating_mul(w_lb)));
        }
        // self = X^v * P(X) with P a power series known to n terms.
        let n = self.coeffs.len() as i64;
        let target = if n >= 2 { min(n * w_lb, inner.prec) } else { n * w_lb };
        let mut acc = Self::constant(f, self.coeffs[n as usize - 1], target);
        for &c in self.coeffs[..n as usize - 1].iter().rev() {
            acc = (&acc * inner).truncate(target);
            acc = acc.add_const(c).truncate(target);
        }
        if self.val == 0 {
            return Ok(acc);
        }
        Ok(&acc * &inner.pow(self.val)?)
    }

    /// `self(Z^d)`: exponents and precision scale by `d`.
    pub fn reparameterize(&self, d: i64) -> Self {
        assert!(d >= 1, "reparameterization degree must be positive");
        if self.is_zero() {
            return Self::zero(&self.field, self.prec * d);
        }
        let mut coeffs = vec![Fe::ZERO; (self.relative_prec() * d) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * d as usize] = *c;
        }
        LaurentSeries {
            field: self.field.clone(),
            val: self.val * d,
            prec: self.prec * d,
            coeffs,
        }
    }

    /// An `l`-th root `r` with `r^l = self` to precision. The leading
    /// coefficient is the smallest `l`-th root of the leading coefficient;
    /// the rest is Hensel-lifted by Newton iteration.
    pub fn lth_root(&self, l: u64) -> Result<Self> {
        let f = &self.field;
        if l < 1 || l % f.p() as u64 == 0 {
            return Err(Error::precondition(format!("root index {l} must be prime to p = {}", f.p())));
        }
        let v = self.valuation()?;
        if v % l as i64 != 0 {
            return Err(Error::precondition(format!("root index {l} does not divide valuation {v}")));
        }
        let c = self.coeffs[0];
        let c_root = f.lth_root(c, l)?;
        let n = self.relative_prec();
        // unit = self / (c X^v) = 1 + ..., known to n terms.
        let unit = self.shift(-v).scale(f.inv(c)?);
        let l_inv = f.inv(f.from_i64(l as i64))?;
        let mut r = Self::one(f, n);
        let mut correct = 1;
        while correct < n {
            let rl1 = r.pow(l as i64 - 1)?;
            let resid = &(&rl1 * &r) - &unit;
            let step = resid.div(&rl1)?.scale(l_inv);
            r = (&r - &step).truncate(n);
            correct *= 2;
        }
        Ok(r.scale(c_root).shift(v / l as i64))
    }
}

impl Add for &LaurentSeries {
    type Output = LaurentSeries;

    fn add(self, other: &LaurentSeries) -> LaurentSeries {
        self.check_field(other);
        let f = &self.field;
        let prec = min(self.prec, other.prec);
        let val = min(self.val, other.val);
        if val >= prec {
            return LaurentSeries::zero(f, prec);
        }
        let mut coeffs = vec![Fe::ZERO; (prec - val) as usize];
        for s in [self, other] {
            for (k, &c) in s.coeffs.iter().enumerate() {
                let e = s.val + k as i64;
                if e >= prec {
                    break;
                }
                let slot = &mut coeffs[(e - val) as usize];
                *slot = f.add(*slot, c);
            }
        }
        LaurentSeries::normalized(f, val, coeffs, prec)
    }
}

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;

    fn neg(self) -> LaurentSeries {
        let f = &self.field;
        LaurentSeries {
            field: f.clone(),
            val: self.val,
            prec: self.prec,
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
        }
    }
}

impl Sub for &LaurentSeries {
    type Output = LaurentSeries;

    fn sub(self, other: &LaurentSeries) -> LaurentSeries {
        self + &(-other)
    }
}

impl Mul for &LaurentSeries {
    type Output = LaurentSeries;

    fn mul(self, other: &LaurentSeries) -> LaurentSeries {
        self.check_field(other);
        let f = &self.field;
        let prec = min(self.prec + other.val, other.prec + self.val);
        if self.is_zero() || other.is_zero() {
            return LaurentSeries::zero(f, prec);
        }
        let val = self.val + other.val;
        let n = (prec - val) as usize;
        // The outer loop skips zeros, so put the sparser factor there.
        let nnz = |v: &[Fe]| v.iter().filter(|c| !c.is_zero()).count();
        let (a, b) = if nnz(&other.coeffs) < nnz(&self.coeffs) {
            (&other.coeffs, &self.coeffs)
        } else {
            (&self.coeffs, &other.coeffs)
        };
        let coeffs = if f.e() == 1 {
            // Prime field: accumulate integers, reduce once.
            let p = f.p() as u64;
            let mut acc = vec![0u64; n];
            for (i, x) in a.iter().enumerate().take(n) {
                let x = x.index() as u64;
                if x == 0 {
                    continue;
                }
                for (j, y) in b.iter().enumerate().take(n - i) {
                    acc[i + j] += x * y.index() as u64;
                }
                if i % 4096 == 4095 {
                    acc.iter_mut().for_each(|v| *v %= p);
                }
            }
            acc.into_iter().map(|v| f.from_i64((v % p) as i64)).collect()
        } else {
            let mut acc = vec![Fe::ZERO; n];
            for (i, &x) in a.iter().enumerate().take(n) {
                if x.is_zero() {
                    continue;
                }
                for (j, &y) in b.iter().enumerate().take(n - i) {
                    if !y.is_zero() {
                        acc[i + j] = f.add(acc[i + j], f.mul(x, y));
                    }
                }
            }
            acc
        };
        LaurentSeries::normalized(f, val, coeffs, prec)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentSeries {
            type Output = LaurentSeries;
            fn $m(self, other: LaurentSeries) -> LaurentSeries {
                (&self).$m(&other)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::literal::format_series(self, true))
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::literal::format_series(self, true))
    }
}
