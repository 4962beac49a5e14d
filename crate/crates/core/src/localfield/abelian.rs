use std::collections::BTreeSet;

use num_rational::Rational64;
use num_traits::Zero;

use super::{as_reduce, Filtration};
use crate::error::{Error, Result};
use crate::series::LaurentSeries;

/// A vector in F_p^n, used both for characters `c` (the Artin-Schreier
/// element `Σ c_i a_i`) and for Galois elements `σ` (acting by
/// `x_i ↦ x_i + σ_i`). A character takes the value `c·σ` on `σ`.
pub type Vector = Vec<u32>;

/// Ramification data of `L = K(x_1, ..., x_n)`, `x_i^p - x_i = a_i`.
///
/// Every character is reduced to get its upper jump; characters with jump 0
/// form the subspace `Z` of unramified (or split) characters, so inertia is
/// `G = Z^⊥`. An element `σ ∈ G` has upper index `min{jump(c) : c·σ ≠ 0}`;
/// Herbrand's `ψ` turns that into its lower index.
#[derive(Debug, Clone)]
pub struct ElemAbelian {
    p: u32,
    n: usize,
    char_jumps: Vec<u64>,
    /// `(σ, i(σ))` for the nonzero elements of inertia.
    lower: Vec<(u64, i64)>,
    filtration: Filtration,
}

fn encode(v: &[u32], p: u32) -> u64 {
    v.iter().rev().fold(0, |acc, &c| acc * p as u64 + c as u64)
}

fn decode(mut code: u64, p: u32, n: usize) -> Vector {
    (0..n)
        .map(|_| {
            let d = (code % p as u64) as u32;
            code /= p as u64;
            d
        })
        .collect()
}

fn dot(a: u64, b: u64, p: u32, n: usize) -> u32 {
    let (mut a, mut b) = (a, b);
    let mut s = 0u64;
    for _ in 0..n {
        s += (a % p as u64) * (b % p as u64);
        a /= p as u64;
        b /= p as u64;
    }
    (s % p as u64) as u32
}

/// Segments of the filtration cut out by a set of elements with known
/// lower indices: `|G_i|` counts the elements of index `>= i`, plus identity.
fn segments_from_lower(lower: &[(u64, i64)]) -> Vec<(i64, u64)> {
    let levels: BTreeSet<i64> = lower.iter().map(|&(_, i)| i).collect();
    levels
        .into_iter()
        .map(|j| (j, 1 + lower.iter().filter(|&&(_, i)| i >= j).count() as u64))
        .collect()
}

impl ElemAbelian {
    pub fn new(chars: &[LaurentSeries]) -> Result<ElemAbelian> {
        let first = chars
            .first()
            .ok_or_else(|| Error::precondition("need at least one Artin-Schreier equation"))?;
        let f = first.field().clone();
        if chars.iter().any(|a| a.field() != &f) {
            return Err(Error::FieldMismatch);
        }
        let p = f.p();
        let n = chars.len();
        let size = (p as u64).pow(n as u32);
        let mut jumps = vec![0u64; size as usize];
        // jump(λc) = jump(c): reduce only characters whose first nonzero
        // entry is 1, then fill in their multiples.
        let lead = |c: &[u32]| *c.iter().find(|&&x| x != 0).expect("nonzero");
        for code in 1..size {
            let c = decode(code, p, n);
            if lead(&c) != 1 {
                continue;
            }
            let mut acc = LaurentSeries::zero(&f, i64::MAX / 4);
            for (a, &ci) in chars.iter().zip(&c) {
                if ci != 0 {
                    acc = &acc + &a.scale(f.from_i64(ci as i64));
                }
            }
            jumps[code as usize] = as_reduce(&acc)?.jump;
        }
        for code in 1..size {
            let c = decode(code, p, n);
            let l = lead(&c);
            if l != 1 {
                let inv = (1..p).find(|x| x * l % p == 1).expect("p prime");
                let normal: Vec<u32> = c.iter().map(|&x| x * inv % p).collect();
                jumps[code as usize] = jumps[encode(&normal, p) as usize];
            }
        }
        Ok(Self::from_character_jumps(p, n, jumps))
    }

    /// Build from the jump of every character, indexed by the base-`p`
    /// encoding `c_0 + c_1 p + ...`.
    pub fn from_character_jumps(p: u32, n: usize, char_jumps: Vec<u64>) -> ElemAbelian {
        let size = (p as u64).pow(n as u32);
        assert_eq!(char_jumps.len() as u64, size);
        let unram: Vec<u64> = (0..size).filter(|&c| char_jumps[c as usize] == 0).collect();
        let group: Vec<u64> = (1..size)
            .filter(|&s| unram.iter().all(|&c| dot(c, s, p, n) == 0))
            .collect();
        let upper: Vec<(u64, u64)> = group
            .iter()
            .map(|&s| {
                let u = (1..size)
                    .filter(|&c| dot(c, s, p, n) != 0)
                    .map(|c| char_jumps[c as usize])
                    .min()
                    .expect("a nonzero element is detected by some character");
                (s, u)
            })
            .collect();
        let order = group.len() as i64 + 1;
        let ups: BTreeSet<u64> = upper.iter().map(|&(_, u)| u).collect();
        // ψ(u_k) = Σ_{m<=k} (u_m - u_{m-1}) (G : G^{u_m}).
        let mut psi = Vec::new();
        let mut prev = 0u64;
        let mut acc = Rational64::zero();
        for &u in &ups {
            let gk = 1 + upper.iter().filter(|&&(_, v)| v >= u).count() as i64;
            acc += Rational64::new((u - prev) as i64 * order, gk);
            assert!(
                acc.is_integer(),
                "lower ramification index {acc} is not an integer (upper jump {u})"
            );
            psi.push((u, acc.to_integer()));
            prev = u;
        }
        let lower: Vec<(u64, i64)> = upper
            .iter()
            .map(|&(s, u)| (s, psi.iter().find(|&&(v, _)| v == u).expect("tabulated").1))
            .collect();
        let filtration = Filtration::new(p, 1, segments_from_lower(&lower));
        ElemAbelian {
            p,
            n,
            char_jumps,
            lower,
            filtration,
        }
    }

    pub fn filtration(&self) -> &Filtration {
        &self.filtration
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Number of Artin-Schreier equations (dimension of the character space).
    pub fn dimension(&self) -> usize {
        self.n
    }

    /// `log_p` of the order of inertia.
    pub fn rank(&self) -> u32 {
        self.filtration.wild_rank()
    }

    pub fn character_jump(&self, c: &[u32]) -> u64 {
        self.char_jumps[encode(c, self.p) as usize]
    }

    /// Every character with its upper jump, in encoding order.
    pub fn character_jumps(&self) -> Vec<(Vector, u64)> {
        self.char_jumps
            .iter()
            .enumerate()
            .map(|(code, &j)| (decode(code as u64, self.p, self.n), j))
            .collect()
    }

    /// Lower index of each nonzero element of inertia.
    pub fn lower_indices(&self) -> Vec<(Vector, i64)> {
        self.lower
            .iter()
            .map(|&(s, i)| (decode(s, self.p, self.n), i))
            .collect()
    }

    /// Filtration of the subgroup `H = {σ ∈ G : c·σ = 0 for all c in annihilators}`,
    /// i.e. of `L` over the fixed field of `H`.
    pub fn subgroup_filtration(&self, annihilators: &[Vector]) -> Filtration {
        let codes: Vec<u64> = annihilators.iter().map(|c| encode(c, self.p)).collect();
        let lower: Vec<(u64, i64)> = self
            .lower
            .iter()
            .copied()
            .filter(|&(s, _)| codes.iter().all(|&c| dot(c, s, self.p, self.n) == 0))
            .collect();
        Filtration::new(self.p, 1, segments_from_lower(&lower))
    }

    fn check_rep(&self, rep: &[Vector]) -> Result<()> {
        for c in rep {
            if c.len() != self.n || c.iter().any(|&x| x >= self.p) {
                return Err(Error::InconsistentRepresentation(format!(
                    "character {c:?} is not a vector in F_{}^{}",
                    self.p, self.n
                )));
            }
        }
        Ok(())
    }

    /// `dim(M/M^{G_i})` on each filtration segment for the representation
    /// that is the direct sum of the given characters.
    pub fn codimensions(&self, rep: &[Vector]) -> Result<Vec<u64>> {
        self.check_rep(rep)?;
        let codes: Vec<u64> = rep.iter().map(|c| encode(c, self.p)).collect();
        Ok(self
            .filtration
            .segments
            .iter()
            .map(|&(j, _)| {
                codes
                    .iter()
                    .filter(|&&c| {
                        self.lower
                            .iter()
                            .any(|&(s, i)| i >= j && dot(c, s, self.p, self.n) != 0)
                    })
                    .count() as u64
            })
            .collect())
    }

    pub fn swan_conductor(&self, rep: &[Vector]) -> Result<Rational64> {
        self.filtration.swan_conductor(&self.codimensions(rep)?)
    }

    /// All `p^n` characters, including the trivial one.
    pub fn all_characters(&self) -> Vec<Vector> {
        (0..(self.p as u64).pow(self.n as u32))
            .map(|c| decode(c, self.p, self.n))
            .collect()
    }
}

/// Lower-numbering filtration of the compositum of the Artin-Schreier
/// extensions defined by `chars`.
pub fn filtration_elem_abelian(chars: &[LaurentSeries]) -> Result<Filtration> {
    Ok(ElemAbelian::new(chars)?.filtration().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::series::parse_series;

    fn chars(p: u32, lits: &[&str]) -> Vec<LaurentSeries> {
        let f = Field::prime(p).unwrap();
        lits.iter().map(|s| parse_series(&f, s, 30).unwrap()).collect()
    }

    #[test]
    fn two_jumps_over_f3() {
        let ea = ElemAbelian::new(&chars(3, &["X^-1", "X^-2"])).unwrap();
        let mut counts = std::collections::BTreeMap::new();
        for (c, j) in ea.character_jumps() {
            if c.iter().any(|&x| x != 0) {
                *counts.entry(j).or_insert(0) += 1;
            }
        }
        assert_eq!(counts, [(1, 2), (2, 6)].into_iter().collect());
        assert_eq!(ea.filtration().segments, vec![(1, 9), (4, 3)]);
        assert_eq!(ea.filtration().lower_jumps(), vec![4, 1]);
        assert_eq!(ea.filtration().wild_jumps(), vec![4, 1]);
    }

    #[test]
    fn single_character_is_cyclic() {
        let ea = ElemAbelian::new(&chars(3, &["X^-2"])).unwrap();
        assert_eq!(ea.filtration(), &Filtration::new(3, 1, vec![(2, 3)]));
        assert_eq!(ea.filtration().wild_jumps(), vec![2]);
        let ea = ElemAbelian::new(&chars(3, &["X^-3"])).unwrap();
        assert_eq!(ea.filtration().lower_jumps(), vec![1]);
        let ea = ElemAbelian::new(&chars(3, &["X"])).unwrap();
        assert_eq!(ea.filtration(), &Filtration::trivial(3));
    }

    #[test]
    fn dependent_characters_collapse() {
        let ea = ElemAbelian::new(&chars(3, &["X^-2", "2*X^-2"])).unwrap();
        assert_eq!(ea.filtration(), &Filtration::new(3, 1, vec![(2, 3)]));
        assert_eq!(ea.rank(), 1);
    }

    #[test]
    fn unramified_part_is_dropped() {
        let ea = ElemAbelian::new(&chars(3, &["X^-1", "1"])).unwrap();
        assert_eq!(ea.rank(), 1);
        assert_eq!(ea.filtration().wild_jumps(), vec![1]);
    }

    #[test]
    fn swan_examples() {
        let ea = ElemAbelian::new(&chars(3, &["X^-1", "X^-2"])).unwrap();
        // A character of upper jump 2.
        let c = vec![0, 1];
        assert_eq!(ea.character_jump(&c), 2);
        assert_eq!(ea.swan_conductor(&[c]).unwrap(), Rational64::from(2));
        assert_eq!(ea.swan_conductor(&[vec![0, 0]]).unwrap(), Rational64::from(0));
        let all: Vec<Vector> = ea.all_characters().into_iter().skip(1).collect();
        assert_eq!(ea.swan_conductor(&all).unwrap(), Rational64::from(14));
        assert!(ea.swan_conductor(&[vec![3, 0]]).is_err());
    }

    #[test]
    fn subgroup_and_quotient() {
        let ea = ElemAbelian::new(&chars(3, &["X^-1", "X^-2"])).unwrap();
        // H = ker of the jump-1 character (1, 0): elements with σ_0 = 0.
        let h = ea.subgroup_filtration(&[vec![1, 0]]);
        assert_eq!(h, Filtration::new(3, 1, vec![(4, 3)]));
    }
}
