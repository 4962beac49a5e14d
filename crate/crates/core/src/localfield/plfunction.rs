use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

type Q = Rational64;

/// Continuous, increasing, piecewise-linear function on `[1, ∞)`.
///
/// Stored as breakpoints starting at `x = 1` plus the slope after the last
/// one. Collinear breakpoints are merged, so structural equality is
/// equality of functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlFunction {
    breakpoints: Vec<(Q, Q)>,
    final_slope: Q,
}

fn slope(a: (Q, Q), b: (Q, Q)) -> Q {
    (b.1 - a.1) / (b.0 - a.0)
}

impl PlFunction {
    /// Build from breakpoints (first one at `x = 1`, strictly increasing `x`)
    /// and the last slope.
    pub fn new(breakpoints: Vec<(Q, Q)>, final_slope: Q) -> PlFunction {
        assert!(!breakpoints.is_empty(), "need at least the starting point");
        assert!(breakpoints.windows(2).all(|w| w[0].0 < w[1].0), "breakpoints must increase");
        assert!(final_slope > Q::zero(), "slopes must be positive");
        let mut f = PlFunction {
            breakpoints,
            final_slope,
        };
        f.normalize();
        f
    }

    pub fn identity() -> PlFunction {
        PlFunction::new(vec![(Q::one(), Q::one())], Q::one())
    }

    fn normalize(&mut self) {
        let mut out: Vec<(Q, Q)> = Vec::with_capacity(self.breakpoints.len());
        for &pt in &self.breakpoints {
            if out.len() >= 2 {
                let n = out.len();
                if slope(out[n - 2], out[n - 1]) == slope(out[n - 1], pt) {
                    out.pop();
                }
            }
            out.push(pt);
        }
        // Drop a final breakpoint whose incoming slope equals the final slope.
        while out.len() >= 2 {
            let n = out.len();
            if slope(out[n - 2], out[n - 1]) == self.final_slope {
                out.pop();
            } else {
                break;
            }
        }
        self.breakpoints = out;
    }

    pub fn breakpoints(&self) -> &[(Q, Q)] {
        &self.breakpoints
    }

    pub fn final_slope(&self) -> Q {
        self.final_slope
    }

    /// Slope on the piece starting at breakpoint `k`.
    fn slope_after(&self, k: usize) -> Q {
        if k + 1 < self.breakpoints.len() {
            slope(self.breakpoints[k], self.breakpoints[k + 1])
        } else {
            self.final_slope
        }
    }

    pub fn eval(&self, x: Q) -> Q {
        let k = self
            .breakpoints
            .iter()
            .rposition(|&(bx, _)| bx <= x)
            .unwrap_or(0);
        let (bx, by) = self.breakpoints[k];
        by + (x - bx) * self.slope_after(k)
    }

    pub fn inverse(&self) -> PlFunction {
        let pts = self.breakpoints.iter().map(|&(x, y)| (y, x)).collect();
        PlFunction::new(pts, Q::one() / self.final_slope)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &PlFunction) -> PlFunction {
        let inv = inner.inverse();
        let mut xs: Vec<Q> = inner.breakpoints.iter().map(|p| p.0).collect();
        let x0 = inner.breakpoints[0].0;
        xs.extend(
            self.breakpoints
                .iter()
                .map(|&(y, _)| inv.eval(y))
                .filter(|&x| x >= x0),
        );
        xs.sort();
        xs.dedup();
        let pts = xs.into_iter().map(|x| (x, self.eval(inner.eval(x)))).collect();
        PlFunction::new(pts, self.final_slope * inner.final_slope)
    }
}

fn show(q: Q) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

impl Serialize for PlFunction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PlFunction", 2)?;
        let pts: Vec<[String; 2]> = self.breakpoints.iter().map(|&(x, y)| [show(x), show(y)]).collect();
        st.serialize_field("breakpoints", &pts)?;
        st.serialize_field("final_slope", &show(self.final_slope))?;
        st.end()
    }
}
