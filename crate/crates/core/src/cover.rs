//! Covers of Spec k[[T,U]] branched along `T = 0` and `U = 0`: branch
//! data, restriction to arcs, sufficient jet orders and Kummer lifting.

use serde::{Deserialize, Serialize};

use crate::arc::Arc;
use crate::error::{Error, Result};
use crate::field::{Fe, Field};
use crate::localfield::{ElemAbelian, Vector};
use crate::series::{format_biseries, parse_biseries, BiSeries, LaurentSeries};

/// One Artin-Schreier equation `x^p - x = T^{-m1} U^{-m2} ε(T,U)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsData {
    pub m1: u32,
    pub m2: u32,
    pub eps: BiSeries,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverSpec {
    ArtinSchreier(AsData),
    /// `x^l = T^q U^s ε(T,U)`.
    Kummer { l: u64, q: i64, s: i64, eps: BiSeries },
    /// Compositum of several Artin-Schreier equations.
    ElemAbelian(Vec<AsData>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Divisor {
    #[serde(rename = "F_T")]
    T,
    #[serde(rename = "F_U")]
    U,
}

/// Branch components with their pole orders (or Kummer exponents), and the
/// divisor `R_0 = Σ (m_i + 1) F_i` bounding the sufficient jet order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchData {
    pub components: Vec<(Divisor, i64)>,
    pub r0: Vec<(Divisor, i64)>,
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

impl AsData {
    pub fn new(m1: u32, m2: u32, eps: BiSeries) -> AsData {
        AsData { m1, m2, eps }
    }

    fn validate(&self, p: u32) -> Result<()> {
        for (name, m) in [("m1", self.m1), ("m2", self.m2)] {
            if m > 0 && m % p == 0 {
                return Err(Error::InvalidCover(format!(
                    "{name} = {m} is divisible by p = {p}; reduce the equation first by \
                     subtracting b^p - b to lower the pole order along that divisor"
                )));
            }
        }
        if !self.eps.is_unit() {
            return Err(Error::InvalidCover("ε must have a nonzero constant term".into()));
        }
        Ok(())
    }

    fn restrict(&self, c: &Arc) -> Result<LaurentSeries> {
        let mut a = self.eps.eval(c.t(), c.u())?;
        for (m, x, name) in [(self.m1, c.t(), "T"), (self.m2, c.u(), "U")] {
            if m == 0 {
                continue;
            }
            if x.is_zero() {
                return Err(Error::ArcInBranchLocus(format!("arc lies in {name} = 0")));
            }
            a = &a * &x.pow(-(m as i64))?;
        }
        Ok(a)
    }
}

impl CoverSpec {
    pub fn field(&self) -> &Field {
        match self {
            CoverSpec::ArtinSchreier(d) => d.eps.field(),
            CoverSpec::Kummer { eps, .. } => eps.field(),
            CoverSpec::ElemAbelian(ds) => ds[0].eps.field(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let p = match self {
            CoverSpec::ElemAbelian(ds) if ds.is_empty() => {
                return Err(Error::InvalidCover("no Artin-Schreier components".into()))
            }
            _ => self.field().p(),
        };
        match self {
            CoverSpec::ArtinSchreier(d) => d.validate(p),
            CoverSpec::ElemAbelian(ds) => {
                if ds.iter().any(|d| d.eps.field() != self.field()) {
                    return Err(Error::FieldMismatch);
                }
                ds.iter().try_for_each(|d| d.validate(p))
            }
            CoverSpec::Kummer { l, eps, .. } => {
                if !is_prime(*l) || *l == p as u64 {
                    return Err(Error::InvalidCover(format!("l = {l} must be a prime different from p = {p}")));
                }
                if !eps.is_unit() {
                    return Err(Error::InvalidCover("ε must have a nonzero constant term".into()));
                }
                Ok(())
            }
        }
    }

    fn as_components(&self) -> Option<&[AsData]> {
        match self {
            CoverSpec::ArtinSchreier(d) => Some(std::slice::from_ref(d)),
            CoverSpec::ElemAbelian(ds) => Some(ds),
            CoverSpec::Kummer { .. } => None,
        }
    }

    /// Number of independent Artin-Schreier equations (0 for Kummer covers).
    pub fn rank(&self) -> usize {
        self.as_components().map_or(0, |d| d.len())
    }

    pub fn branch_data(&self) -> BranchData {
        match self {
            CoverSpec::Kummer { l, q, s, .. } => {
                let components = [(Divisor::T, *q), (Divisor::U, *s)]
                    .into_iter()
                    .filter(|&(_, e)| e % *l as i64 != 0)
                    .collect();
                BranchData {
                    components,
                    r0: Vec::new(),
                }
            }
            _ => {
                let ds = self.as_components().expect("Artin-Schreier type");
                let m1 = ds.iter().map(|d| d.m1).max().unwrap_or(0) as i64;
                let m2 = ds.iter().map(|d| d.m2).max().unwrap_or(0) as i64;
                let components: Vec<(Divisor, i64)> = [(Divisor::T, m1), (Divisor::U, m2)]
                    .into_iter()
                    .filter(|&(_, m)| m > 0)
                    .collect();
                let r0 = components.iter().map(|&(d, m)| (d, m + 1)).collect();
                BranchData { components, r0 }
            }
        }
    }

    /// Pullback `f^C(a)` of each defining function along the arc.
    pub fn restrict_to_arc(&self, c: &Arc) -> Result<Vec<LaurentSeries>> {
        if c.field() != self.field() {
            return Err(Error::FieldMismatch);
        }
        match self {
            CoverSpec::Kummer { q, s, eps, .. } => {
                let mut a = eps.eval(c.t(), c.u())?;
                for (e, x, name) in [(*q, c.t(), "T"), (*s, c.u(), "U")] {
                    if e == 0 {
                        continue;
                    }
                    if x.is_zero() {
                        return Err(Error::ArcInBranchLocus(format!("arc lies in {name} = 0")));
                    }
                    a = &a * &x.pow(e)?;
                }
                Ok(vec![a])
            }
            _ => self
                .as_components()
                .expect("Artin-Schreier type")
                .iter()
                .map(|d| d.restrict(c))
                .collect(),
        }
    }

    /// Ramification of the restricted extension `L_C / k((X))`.
    pub fn ramification_on_arc(&self, c: &Arc) -> Result<ElemAbelian> {
        if matches!(self, CoverSpec::Kummer { .. }) {
            return Err(Error::precondition("Kummer covers are tame"));
        }
        ElemAbelian::new(&self.restrict_to_arc(c)?)
    }

    /// `w^(i)` of the restriction, `i = 1..rank`; trailing zeros stand for
    /// the part of the group that is unramified along the arc. Kummer covers
    /// are tame, so their list is empty.
    pub fn wild_jumps_on_arc(&self, c: &Arc) -> Result<Vec<i64>> {
        if matches!(self, CoverSpec::Kummer { .. }) {
            return Ok(Vec::new());
        }
        let mut w = self.ramification_on_arc(c)?.filtration().wild_jumps();
        w.resize(self.rank().max(w.len()), 0);
        Ok(w)
    }

    /// `(C.R_0) = Σ (m_i + 1) (C.F_i)` with `(C.F_T) = v(t)`, `(C.F_U) = v(u)`.
    pub fn r0_intersection(&self, c: &Arc) -> Result<i64> {
        let mut total = 0;
        for (d, coeff) in self.branch_data().r0 {
            let x = match d {
                Divisor::T => c.t(),
                Divisor::U => c.u(),
            };
            if x.is_zero() {
                return Err(Error::ArcInBranchLocus(format!("arc lies in {d:?}")));
            }
            total += coeff * x.valuation()?;
        }
        Ok(total)
    }

    /// Tangency order `(C.R_0) E_D + E_C E_D max(M_C, M_D)` beyond which the
    /// two arcs are guaranteed equal wild jumps.
    pub fn jet_threshold(&self, c: &Arc, d: &Arc) -> Result<i64> {
        let (ec, ed) = (c.multiplicity()?, d.multiplicity()?);
        let m = c.singularity_degree()?.max(d.singularity_degree()?) as i64;
        Ok(self.r0_intersection(c)? * ed + ec * ed * m)
    }

    /// `Δ(i) = i · max(m_1 + 1, ..., m_s + 1, i)`.
    pub fn delta(&self, i: i64) -> Result<i64> {
        if matches!(self, CoverSpec::Kummer { .. }) {
            return Err(Error::precondition("Δ is defined for Artin-Schreier type covers"));
        }
        let top = self.branch_data().r0.iter().map(|r| r.1).max().unwrap_or(0);
        Ok(i * top.max(i))
    }

    fn kummer_parts(&self) -> Result<(u64, i64, i64, &BiSeries)> {
        match self {
            CoverSpec::Kummer { l, q, s, eps } => Ok((*l, *q, *s, eps)),
            _ => Err(Error::precondition("not a Kummer cover")),
        }
    }

    /// Number of inequivalent lifts: 1 if `l ∤ v(f^C(a))`, else `l`.
    pub fn kummer_lift_count(&self, c: &Arc) -> Result<u64> {
        let (l, ..) = self.kummer_parts()?;
        let v = self.restrict_to_arc(c)?[0].valuation()?;
        Ok(if v % l as i64 == 0 { l } else { 1 })
    }

    /// Lifts of a primitive arc to `x^l = T`, as arcs in the coordinates
    /// `(T_1, U)` with `T_1 = x`.
    pub fn lift_arc_kummer(&self, c: &Arc) -> Result<Vec<Arc>> {
        let (l, q, s, eps) = self.kummer_parts()?;
        if q != 1 || s != 0 || eps != &BiSeries::constant(eps.field(), Fe::ONE) {
            return Err(Error::precondition("lifting is implemented for x^l = T only"));
        }
        if c.t().is_zero() {
            return Err(Error::ArcInBranchLocus("arc lies in T = 0".into()));
        }
        let f = c.field();
        if self.kummer_lift_count(c)? == l {
            let root = c.t().lth_root(l)?;
            let zeta = f.root_of_unity(l)?;
            (0..l)
                .map(|k| Arc::new(root.scale(f.pow(zeta, k as i64)?), c.u().clone()))
                .collect()
        } else {
            let t = c.t().reparameterize(l as i64).lth_root(l)?;
            Ok(vec![Arc::new(t, c.u().reparameterize(l as i64))?])
        }
    }
}

#[derive(Serialize, Deserialize)]
struct AsFile {
    p_exponents: [u32; 2],
    eps: String,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
enum CoverFile {
    As {
        p_exponents: [u32; 2],
        eps: String,
    },
    Kummer {
        l: u64,
        exponents: [i64; 2],
        eps: String,
    },
    ElemAbelian {
        components: Vec<AsFile>,
    },
}

impl CoverSpec {
    /// Parse the JSON cover format and validate it.
    pub fn from_json(field: &Field, text: &str) -> Result<CoverSpec> {
        let file: CoverFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let eps = |s: &str| parse_biseries(field, s);
        let cv = match file {
            CoverFile::As { p_exponents, eps: e } => {
                CoverSpec::ArtinSchreier(AsData::new(p_exponents[0], p_exponents[1], eps(&e)?))
            }
            CoverFile::Kummer { l, exponents, eps: e } => CoverSpec::Kummer {
                l,
                q: exponents[0],
                s: exponents[1],
                eps: eps(&e)?,
            },
            CoverFile::ElemAbelian { components } => CoverSpec::ElemAbelian(
                components
                    .iter()
                    .map(|c| Ok(AsData::new(c.p_exponents[0], c.p_exponents[1], eps(&c.eps)?)))
                    .collect::<Result<_>>()?,
            ),
        };
        cv.validate()?;
        Ok(cv)
    }

    /// Canonical JSON; parsing it back gives the same cover and the same text.
    pub fn to_json(&self) -> String {
        let as_file = |d: &AsData| AsFile {
            p_exponents: [d.m1, d.m2],
            eps: format_biseries(&d.eps),
        };
        let file = match self {
            CoverSpec::ArtinSchreier(d) => {
                let a = as_file(d);
                CoverFile::As {
                    p_exponents: a.p_exponents,
                    eps: a.eps,
                }
            }
            CoverSpec::Kummer { l, q, s, eps } => CoverFile::Kummer {
                l: *l,
                exponents: [*q, *s],
                eps: format_biseries(eps),
            },
            CoverSpec::ElemAbelian(ds) => CoverFile::ElemAbelian {
                components: ds.iter().map(as_file).collect(),
            },
        };
        serde_json::to_string(&file).expect("plain data serializes")
    }
}

/// A representation of an elementary abelian group given as a multiset of
/// characters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepSpec {
    Characters(Vec<Vector>),
    /// Every nontrivial character once.
    AllNontrivial,
}

#[derive(Deserialize)]
struct RepFile {
    characters: serde_json::Value,
}

impl RepSpec {
    pub fn from_json(text: &str) -> Result<RepSpec> {
        let file: RepFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        match file.characters {
            serde_json::Value::String(s) if s == "all" => Ok(RepSpec::AllNontrivial),
            v => serde_json::from_value(v)
                .map(RepSpec::Characters)
                .map_err(|e| Error::Parse(format!("characters: {e}"))),
        }
    }

    pub fn characters(&self, p: u32, n: usize) -> Vec<Vector> {
        match self {
            RepSpec::Characters(cs) => cs.clone(),
            RepSpec::AllNontrivial => (1..(p as u64).pow(n as u32))
                .map(|mut code| {
                    (0..n)
                        .map(|_| {
                            let d = (code % p as u64) as u32;
                            code /= p as u64;
                            d
                        })
                        .collect()
                })
                .collect(),
        }
    }
}
