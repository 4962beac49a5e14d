//! Exact arithmetic in small finite fields F_{p^e}.
//!
//! Elements are encoded as integers `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`
//! where `c_i` is the coefficient of `w^i` in `F_p[w]/(modulus)`. That
//! encoding also fixes the total order used whenever a "smallest" root has
//! to be chosen. Multiplication goes through discrete log tables and
//! addition through Zech logarithms, so every operation is a table lookup.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported characteristic.
pub const MAX_CHARACTERISTIC: u32 = 17;
/// Largest supported field size.
pub const MAX_FIELD_SIZE: u32 = 1 << 16;

const NONE: u32 = u32::MAX;

/// Parameters of F_{p^e}: characteristic, extension degree and the defining
/// polynomial (coefficients low to high, monic, degree `e`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldParams {
    pub p: u32,
    pub e: u32,
    pub modulus: Vec<u32>,
}

/// A field element, stored by its integer encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Fe(u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Integer encoding of the element.
    pub fn index(self) -> u32 {
        self.0
    }
}

struct Tables {
    params: FieldParams,
    q: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
    generator: Fe,
}

/// Shared handle to a finite field. Cloning is cheap.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Tables>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.params == other.inner.params
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.q())
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Polynomials over F_p, coefficients low to high, no trailing zeros.
fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = poly_trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = mod_inv(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = (r[r.len() - 1] as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &mi) in m.iter().enumerate() {
            let sub = (c as u64 * mi as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        r = poly_trim(r);
    }
    r
}

fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    poly_rem(&prod, m, p)
}

fn mod_inv(a: u32, p: u32) -> u32 {
    let e = (a as i64).extended_gcd(&(p as i64));
    e.x.rem_euclid(p as i64) as u32
}

fn digits(mut n: u32, p: u32, e: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(e as usize);
    for _ in 0..e {
        out.push(n % p);
        n /= p;
    }
    out
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Monic polynomial of degree `e` whose lower coefficients encode `n`.
fn monic_from_index(n: u32, p: u32, e: u32) -> Vec<u32> {
    let mut m = digits(n, p, e);
    m.push(1);
    m
}

fn is_irreducible(m: &[u32], p: u32) -> bool {
    let e = (m.len() - 1) as u32;
    for deg in 1..=e / 2 {
        for n in 0..p.pow(deg) {
            let f = monic_from_index(n, p, deg);
            if poly_rem(m, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// First monic irreducible polynomial of degree `e` over F_p, ordering
/// candidates by the integer encoding of their lower coefficients.
pub fn default_modulus(p: u32, e: u32) -> Vec<u32> {
    (0..p.pow(e))
        .map(|n| monic_from_index(n, p, e))
        .find(|m| is_irreducible(m, p))
        .expect("an irreducible polynomial of every degree exists")
}

impl Field {
    /// F_{p^e} with the deterministic default modulus.
    pub fn new(p: u32, e: u32) -> Result<Field> {
        if !is_prime(p) || p > MAX_CHARACTERISTIC {
            return Err(Error::InvalidField(format!(
                "characteristic must be a prime <= {MAX_CHARACTERISTIC}, got {p}"
            )));
        }
        if e == 0 {
            return Err(Error::InvalidField("extension degree must be >= 1".into()));
        }
        match p.checked_pow(e) {
            Some(q) if q <= MAX_FIELD_SIZE => {}
            _ => {
                return Err(Error::InvalidField(format!(
                    "p^e must not exceed {MAX_FIELD_SIZE} (p={p}, e={e})"
                )))
            }
        }
        let modulus = default_modulus(p, e);
        Ok(Self::build(FieldParams { p, e, modulus }))
    }

    /// Prime field F_p.
    pub fn prime(p: u32) -> Result<Field> {
        Self::new(p, 1)
    }

    fn build(params: FieldParams) -> Field {
        let (p, e) = (params.p, params.e);
        let q = p.pow(e);
        let order = q - 1;
        let m = &params.modulus;
        let factors = prime_factors(order);
        let pow = |base: &[u32], mut k: u32| -> Vec<u32> {
            let mut acc = vec![1u32];
            let mut b = base.to_vec();
            while k > 0 {
                if k & 1 == 1 {
                    acc = poly_mulmod(&acc, &b, m, p);
                }
                b = poly_mulmod(&b, &b, m, p);
                k >>= 1;
            }
            acc
        };
        let generator = (1..q)
            .find(|&g| {
                let gp = poly_trim(digits(g, p, e));
                factors.iter().all(|&r| pow(&gp, order / r) != [1])
            })
            .expect("multiplicative group of a finite field is cyclic");
        let gpoly = poly_trim(digits(generator, p, e));

        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![NONE; q as usize];
        let mut cur = vec![1u32];
        for k in 0..order {
            let mut d = cur.clone();
            d.resize(e as usize, 0);
            let idx = undigits(&d, p);
            exp.push(idx);
            log[idx as usize] = k;
            cur = poly_mulmod(&cur, &gpoly, m, p);
        }

        let add_digits = |a: u32, b: u32| -> u32 {
            let (da, db) = (digits(a, p, e), digits(b, p, e));
            let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            undigits(&s, p)
        };
        let zech = (0..order)
            .map(|k| {
                let s = add_digits(1, exp[k as usize]);
                if s == 0 {
                    NONE
                } else {
                    log[s as usize]
                }
            })
            .collect();

        Field {
            inner: Arc::new(Tables {
                params,
                q,
                exp,
                log,
                zech,
                generator: Fe(generator),
            }),
        }
    }

    pub fn params(&self) -> &FieldParams {
        &self.inner.params
    }

    pub fn p(&self) -> u32 {
        self.inner.params.p
    }

    pub fn e(&self) -> u32 {
        self.inner.params.e
    }

    pub fn q(&self) -> u32 {
        self.inner.q
    }

    /// The generator of the multiplicative group backing the log tables.
    pub fn generator(&self) -> Fe {
        self.inner.generator
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.q()).map(Fe)
    }

    pub fn element(&self, index: u32) -> Result<Fe> {
        if index < self.q() {
            Ok(Fe(index))
        } else {
            Err(Error::InvalidField(format!("element index {index} out of range for F_{}", self.q())))
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_i64(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.p() as i64) as u32)
    }

    /// Element with the given polynomial-basis coefficients (low to high).
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<Fe> {
        if coeffs.len() > self.e() as usize {
            return Err(Error::InvalidField(format!(
                "{} coefficients given for an extension of degree {}",
                coeffs.len(),
                self.e()
            )));
        }
        let p = self.p() as i64;
        let d: Vec<u32> = coeffs.iter().map(|c| c.rem_euclid(p) as u32).collect();
        Ok(Fe(undigits(&d, self.p())))
    }

    /// Polynomial-basis coefficients (low to high, length `e`).
    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        digits(a.0, self.p(), self.e())
    }

    pub fn is_prime_subfield(&self, a: Fe) -> bool {
        a.0 < self.p()
    }

    #[inline]
    fn log_of(&self, a: Fe) -> u32 {
        self.inner.log[a.0 as usize]
    }

    #[inline]
    fn exp_of(&self, k: u64) -> Fe {
        let order = (self.inner.q - 1) as u64;
        Fe(self.inner.exp[(k % order) as usize])
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        if self.e() == 1 {
            let p = self.p();
            return Fe((a.0 + b.0) % p);
        }
        let order = self.inner.q - 1;
        let (i, j) = (self.log_of(a), self.log_of(b));
        let k = (j + order - i) % order;
        match self.inner.zech[k as usize] {
            NONE => Fe::ZERO,
            z => self.exp_of(i as u64 + z as u64),
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if a.0 == 0 {
            return a;
        }
        if self.e() == 1 {
            return Fe(self.p() - a.0);
        }
        if self.p() == 2 {
            return a;
        }
        let half = (self.inner.q - 1) / 2;
        self.exp_of(self.log_of(a) as u64 + half as u64)
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        self.exp_of(self.log_of(a) as u64 + self.log_of(b) as u64)
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let order = self.inner.q - 1;
        Ok(self.exp_of(((order - self.log_of(a)) % order) as u64))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^n` for a signed exponent; negative powers of zero fail.
    pub fn pow(&self, a: Fe, n: i64) -> Result<Fe> {
        if n == 0 {
            return Ok(Fe::ONE);
        }
        if a.0 == 0 {
            return if n > 0 { Ok(Fe::ZERO) } else { Err(Error::DivisionByZero) };
        }
        let order = (self.inner.q - 1) as i64;
        let k = (self.log_of(a) as i64 * n.rem_euclid(order)).rem_euclid(order);
        Ok(self.exp_of(k as u64))
    }

    /// Multiply by an integer (image in the prime field).
    pub fn scale(&self, a: Fe, n: i64) -> Fe {
        self.mul(a, self.from_i64(n))
    }

    /// Unique `r` with `r^p = a` (inverse Frobenius).
    pub fn pth_root(&self, a: Fe) -> Fe {
        if a.0 == 0 || self.e() == 1 {
            return a;
        }
        let k = self.log_of(a) as u64 * (self.inner.q / self.p()) as u64;
        self.exp_of(k)
    }

    /// Smallest `r` (in encoding order) with `r^l = a`, or `NoRoot`.
    pub fn lth_root(&self, a: Fe, l: u64) -> Result<Fe> {
        if l == 0 {
            return Err(Error::precondition("root index must be positive"));
        }
        if a.0 == 0 {
            return Ok(a);
        }
        let order = (self.inner.q - 1) as u64;
        let k = self.log_of(a) as u64;
        let g = l.gcd(&order);
        if k % g != 0 {
            return Err(self.no_root(a, l));
        }
        let m = order / g;
        let lg = (l / g) % m;
        let base = if m == 1 {
            0
        } else {
            let inv = (lg as i64).extended_gcd(&(m as i64)).x.rem_euclid(m as i64) as u64;
            ((k / g) % m) * inv % m
        };
        Ok((0..g)
            .map(|j| self.exp_of(base + j * m))
            .min()
            .expect("at least one root"))
    }

    /// Smallest primitive `l`-th root of unity, or `NoRoot` if `l` does not
    /// divide `q - 1`.
    pub fn root_of_unity(&self, l: u64) -> Result<Fe> {
        let order = (self.inner.q - 1) as u64;
        if l == 0 || order % l != 0 {
            return Err(self.no_root(Fe::ONE, l));
        }
        let step = order / l;
        Ok((1..=l)
            .filter(|j| j.gcd(&l) == 1)
            .map(|j| self.exp_of(step * j))
            .min()
            .expect("primitive root exists"))
    }

    /// Absolute trace F_{p^e} -> F_p, returned as a residue.
    pub fn trace(&self, a: Fe) -> u32 {
        let mut acc = Fe::ZERO;
        let mut cur = a;
        for _ in 0..self.e() {
            acc = self.add(acc, cur);
            cur = self.pow(cur, self.p() as i64).expect("nonnegative power");
        }
        acc.0
    }

    fn no_root(&self, a: Fe, l: u64) -> Error {
        Error::NoRoot {
            l,
            value: self.format(a),
            q: self.q(),
        }
    }

    /// Human-readable element: an integer for prime-subfield elements,
    /// otherwise the bracketed coefficient vector `[c0,c1,...]`.
    pub fn format(&self, a: Fe) -> String {
        if self.is_prime_subfield(a) {
            a.0.to_string()
        } else {
            let c: Vec<String> = self.coeffs(a).iter().map(|c| c.to_string()).collect();
            format!("[{}]", c.join(","))
        }
    }
}
