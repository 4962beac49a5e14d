//! Text form of series.
//!
//! ```text
//! series   := ["-"] term (("+" | "-") term)*
//! term     := coeff ["*" mono] | mono | bigo
//! coeff    := integer | "[" integer ("," integer)* "]"
//! mono     := var ["^" ["-"] integer] ("*" var ["^" integer])*
//! bigo     := "O(X^k)"              univariate, precision k
//!           | "O(T,U)^k"            bivariate, total degree k
//! ```
//!
//! Integer coefficients are reduced into the prime field; bracketed
//! coefficients give the polynomial-basis coordinates of an element of
//! F_{p^e}. Univariate series use `X`; bivariate series use `T` and `U` and
//! only nonnegative exponents.

use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::series::{BiSeries, LaurentSeries};

enum Coef {
    Int(i64),
    Vec(Vec<i64>),
}

struct Term {
    negate: bool,
    coef: Coef,
    exps: Vec<i64>,
}

struct Parsed {
    terms: Vec<Term>,
    big_o: Option<i64>,
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!(
            "{msg} at offset {} in {:?}",
            self.pos,
            String::from_utf8_lossy(self.s)
        ))
    }

    fn int(&mut self) -> Result<i64> {
        self.ws();
        let neg = self.eat(b'-');
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let v: i64 = std::str::from_utf8(&self.s[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| self.err("integer out of range"))?;
        Ok(if neg { -v } else { v })
    }
}

fn parse(s: &str, vars: &[u8]) -> Result<Parsed> {
    let mut c = Cursor { s: s.as_bytes(), pos: 0 };
    let mut out = Parsed {
        terms: Vec::new(),
        big_o: None,
    };
    let mut negate = c.eat(b'-');
    loop {
        if c.peek() == Some(b'O') {
            if out.big_o.is_some() {
                return Err(c.err("duplicate O-term"));
            }
            if negate {
                return Err(c.err("O-term cannot be negated"));
            }
            c.pos += 1;
            out.big_o = Some(parse_big_o(&mut c, vars)?);
        } else {
            out.terms.push(parse_term(&mut c, vars, negate)?);
        }
        match c.peek() {
            None => break,
            Some(b'+') => negate = false,
            Some(b'-') => negate = true,
            Some(_) => return Err(c.err("expected '+' or '-'")),
        }
        c.pos += 1;
    }
    Ok(out)
}

fn parse_big_o(c: &mut Cursor, vars: &[u8]) -> Result<i64> {
    c.expect(b'(')?;
    if vars.len() == 1 {
        if c.eat(b'1') {
            c.expect(b')')?;
            return Ok(0);
        }
        c.expect(vars[0])?;
        let k = if c.eat(b'^') { c.int()? } else { 1 };
        c.expect(b')')?;
        Ok(k)
    } else {
        for (n, &v) in vars.iter().enumerate() {
            if n > 0 {
                c.expect(b',')?;
            }
            c.expect(v)?;
        }
        c.expect(b')')?;
        let k = if c.eat(b'^') { c.int()? } else { 1 };
        if k < 0 {
            return Err(c.err("negative truncation degree"));
        }
        Ok(k)
    }
}

fn parse_term(c: &mut Cursor, vars: &[u8], negate: bool) -> Result<Term> {
    let mut exps = vec![0i64; vars.len()];
    let coef = match c.peek() {
        Some(b'[') => {
            c.pos += 1;
            let mut v = vec![c.int()?];
            while c.eat(b',') {
                v.push(c.int()?);
            }
            c.expect(b']')?;
            Some(Coef::Vec(v))
        }
        Some(d) if d.is_ascii_digit() => Some(Coef::Int(c.int()?)),
        _ => None,
    };
    let need_mono = match coef {
        Some(_) => c.eat(b'*'),
        None => true,
    };
    if need_mono {
        loop {
            let v = c.peek().ok_or_else(|| c.err("expected variable"))?;
            let idx = vars
                .iter()
                .position(|&x| x == v)
                .ok_or_else(|| c.err("unknown variable"))?;
            c.pos += 1;
            let e = if c.eat(b'^') { c.int()? } else { 1 };
            if vars.len() > 1 && e < 0 {
                return Err(c.err("negative exponent in a power series"));
            }
            exps[idx] += e;
            if !c.eat(b'*') {
                break;
            }
        }
    }
    Ok(Term {
        negate,
        coef: coef.unwrap_or(Coef::Int(1)),
        exps,
    })
}

fn coef_value(field: &Field, t: &Term) -> Result<Fe> {
    let c = match &t.coef {
        Coef::Int(n) => field.from_i64(*n),
        Coef::Vec(v) => field.from_coeffs(v).map_err(|e| Error::Parse(e.to_string()))?,
    };
    Ok(if t.negate { field.neg(c) } else { c })
}

/// Parse a univariate series. `default_prec` applies when no O-term is
/// given; an explicit `O(X^k)` caps the precision at `k`.
pub fn parse_series(field: &Field, s: &str, default_prec: i64) -> Result<LaurentSeries> {
    let parsed = parse(s, b"X")?;
    let prec = parsed.big_o.unwrap_or(default_prec);
    let terms = parsed
        .terms
        .iter()
        .map(|t| Ok((t.exps[0], coef_value(field, t)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(LaurentSeries::from_terms(field, &terms, prec))
}

/// Parse a bivariate series in `T, U`; exact unless an `O(T,U)^k` term is given.
pub fn parse_biseries(field: &Field, s: &str) -> Result<BiSeries> {
    let parsed = parse(s, b"TU")?;
    let terms = parsed
        .terms
        .iter()
        .map(|t| Ok(((t.exps[0] as u32, t.exps[1] as u32), coef_value(field, t)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(BiSeries::new(field, terms, parsed.big_o.map(|k| k as u32)))
}

fn mono(var: &str, k: i64) -> String {
    match k {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{k}"),
    }
}

fn join_term(field: &Field, c: Fe, m: &str) -> String {
    match (m.is_empty(), c == Fe::ONE) {
        (true, _) => field.format(c),
        (false, true) => m.to_string(),
        (false, false) => format!("{}*{m}", field.format(c)),
    }
}

pub fn format_series(s: &LaurentSeries, with_precision: bool) -> String {
    let mut parts: Vec<String> = s
        .terms()
        .map(|(k, c)| join_term(s.field(), c, &mono("X", k)))
        .collect();
    if with_precision {
        parts.push(if s.prec() == 0 {
            "O(1)".to_string()
        } else {
            format!("O({})", mono("X", s.prec()))
        });
    }
    if parts.is_empty() {
        return "0".into();
    }
    parts.join(" + ")
}

pub fn format_biseries(b: &BiSeries) -> String {
    let mut keys: Vec<((u32, u32), Fe)> = b.terms().collect();
    keys.sort_by_key(|&((i, j), _)| (i + j, std::cmp::Reverse(i)));
    let mut parts: Vec<String> = keys
        .into_iter()
        .map(|((i, j), c)| {
            let m = [mono("T", i as i64), mono("U", j as i64)]
                .into_iter()
                .filter(|s| !s.is_empty())
                .collect::<Vec<_>>()
                .join("*");
            join_term(b.field(), c, &m)
        })
        .collect();
    if let Some(n) = b.prec() {
        parts.push(format!("O(T,U)^{n}"));
    }
    if parts.is_empty() {
        return "0".into();
    }
    parts.join(" + ")
}
