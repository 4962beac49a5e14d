use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use super::PlFunction;
use crate::error::{Error, Result};

/// Lower-numbering ramification filtration `G_1 ⊇ G_2 ⊇ ...` of a Galois
/// extension, together with the tame index `e_t = (G_0 : G_1)`.
///
/// `segments` is a step function: `(j, n)` means `|G_i| = n` for every `i`
/// in `(j_prev, j]`. Past the last segment the groups are trivial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Filtration {
    pub p: u32,
    pub e_t: u64,
    pub segments: Vec<(i64, u64)>,
}

impl Filtration {
    pub fn new(p: u32, e_t: u64, segments: Vec<(i64, u64)>) -> Filtration {
        assert!(e_t >= 1, "tame index must be positive");
        assert!(segments.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 > w[1].1));
        assert!(segments.iter().all(|&(j, n)| j >= 1 && n > 1));
        if let Some(&(_, g1)) = segments.first() {
            let mut n = g1;
            while n % p as u64 == 0 {
                n /= p as u64;
            }
            assert_eq!(n, 1, "|G_1| must be a power of p");
        }
        Filtration { p, e_t, segments }
    }

    pub fn trivial(p: u32) -> Filtration {
        Filtration::new(p, 1, Vec::new())
    }

    /// `|G_i|` for `i >= 1`.
    pub fn order(&self, i: i64) -> u64 {
        self.segments
            .iter()
            .find(|&&(j, _)| i <= j)
            .map_or(1, |&(_, n)| n)
    }

    /// Order of the wild inertia group `G_1`.
    pub fn wild_order(&self) -> u64 {
        self.order(1)
    }

    /// `log_p |G_1|`.
    pub fn wild_rank(&self) -> u32 {
        let mut n = self.wild_order();
        let mut r = 0;
        while n > 1 {
            n /= self.p as u64;
            r += 1;
        }
        r
    }

    /// `h^(i) = min{ j >= 1 : p^i ∤ |G_j| } - 1` for `i = 1..=log_p |G_1|`.
    pub fn lower_jumps(&self) -> Vec<i64> {
        (1..=self.wild_rank())
            .map(|i| {
                let pi = (self.p as u64).pow(i);
                let mut prev = 0;
                for &(j, n) in &self.segments {
                    if n % pi != 0 {
                        return prev;
                    }
                    prev = j;
                }
                prev
            })
            .collect()
    }

    /// Modified jumps `w^(i) = h^(i) / e_t`, which are integers.
    pub fn wild_jumps(&self) -> Vec<i64> {
        self.lower_jumps()
            .into_iter()
            .map(|h| {
                assert!(
                    h % self.e_t as i64 == 0,
                    "lower jump {h} not divisible by tame index {}: filtration is not Hasse-Arf",
                    self.e_t
                );
                h / self.e_t as i64
            })
            .collect()
    }

    /// `W(u) = 1 + (1/e_t) ∫_1^u dt / (G_1 : G_t)`.
    pub fn w_function(&self) -> PlFunction {
        let g1 = self.wild_order() as i64;
        let et = self.e_t as i64;
        let mut pts = vec![(Rational64::from(1), Rational64::from(1))];
        let mut x = Rational64::from(1);
        let mut y = Rational64::from(1);
        for &(j, n) in &self.segments {
            let jx = Rational64::from(j);
            if jx > x {
                y += (jx - x) * Rational64::new(n as i64, g1 * et);
                x = jx;
                pts.push((x, y));
            }
        }
        PlFunction::new(pts, Rational64::new(1, g1 * et))
    }

    /// Filtration after a tame base change of degree `e`: lower indices and
    /// the tame index both scale by `e`.
    pub fn tame_base_change(&self, e: u64) -> Filtration {
        Filtration::new(
            self.p,
            self.e_t * e,
            self.segments.iter().map(|&(j, n)| (j * e as i64, n)).collect(),
        )
    }

    /// `Σ_{i>=1} dim(M/M^{G_i}) / (G_0 : G_i)`, given `codim[k] = dim(M/M^{G_i})`
    /// for `i` in segment `k`.
    pub fn swan_conductor(&self, codim: &[u64]) -> Result<Rational64> {
        if codim.len() != self.segments.len() {
            return Err(Error::InconsistentRepresentation(format!(
                "{} codimensions for {} filtration segments",
                codim.len(),
                self.segments.len()
            )));
        }
        if codim.windows(2).any(|w| w[1] > w[0]) {
            return Err(Error::InconsistentRepresentation(
                "codimensions must not increase along the filtration".into(),
            ));
        }
        let g0 = (self.e_t * self.wild_order()) as i64;
        let mut prev = 0;
        let mut total = Rational64::from(0);
        for (&(j, n), &c) in self.segments.iter().zip(codim) {
            total += Rational64::new((j - prev) * c as i64 * n as i64, g0);
            prev = j;
        }
        Ok(total)
    }
}
