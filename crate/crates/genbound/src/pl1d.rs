//! Increasing piecewise-linear homeomorphisms between closed rational intervals.
//!
//! A [`PLMap`] is stored as its ordered breakpoints. Collinear interior
//! breakpoints are removed on construction, so two maps are equal exactly when
//! their breakpoint lists are equal.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::geometry::{center_value, int, parse_rational, rat, BaryPoint, Rational};

/// An increasing piecewise-linear map `[lo, hi] → [f(lo), f(hi)]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PLMap {
    points: Vec<(Rational, Rational)>,
}

fn collinear(a: &(Rational, Rational), b: &(Rational, Rational), c: &(Rational, Rational)) -> bool {
    (&b.1 - &a.1) * (&c.0 - &b.0) == (&c.1 - &b.1) * (&b.0 - &a.0)
}

impl PLMap {
    /// The polygon through `points`, which must start at `lo` and end at `hi`.
    ///
    /// Exact duplicate pairs are collapsed. After that both inputs and outputs
    /// must be strictly increasing.
    pub fn polygon(points: Vec<(Rational, Rational)>, lo: &Rational, hi: &Rational) -> Result<PLMap> {
        let mut pts: Vec<(Rational, Rational)> = Vec::with_capacity(points.len());
        for pt in points {
            if pts.last() != Some(&pt) {
                pts.push(pt);
            }
        }
        let starts = pts.first().map(|p| &p.0 == lo).unwrap_or(false);
        let ends = pts.last().map(|p| &p.0 == hi).unwrap_or(false);
        if !starts || !ends || lo >= hi {
            return Err(Error::BadEndpoints {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        for w in pts.windows(2) {
            if w[0].0 >= w[1].0 || w[0].1 >= w[1].1 {
                return Err(Error::NonMonotone(format!(
                    "({}, {}) -> ({}, {})",
                    w[0].0, w[0].1, w[1].0, w[1].1
                )));
            }
        }
        Ok(PLMap::normalized(pts))
    }

    fn normalized(pts: Vec<(Rational, Rational)>) -> PLMap {
        let mut out: Vec<(Rational, Rational)> = Vec::with_capacity(pts.len());
        for pt in pts {
            while out.len() >= 2 && collinear(&out[out.len() - 2], &out[out.len() - 1], &pt) {
                out.pop();
            }
            out.push(pt);
        }
        PLMap { points: out }
    }

    /// The identity of `[lo, hi]`.
    pub fn identity(lo: &Rational, hi: &Rational) -> PLMap {
        PLMap {
            points: vec![(lo.clone(), lo.clone()), (hi.clone(), hi.clone())],
        }
    }

    pub fn breakpoints(&self) -> &[(Rational, Rational)] {
        &self.points
    }

    /// Left end of the domain.
    pub fn lo(&self) -> &Rational {
        &self.points[0].0
    }

    /// Right end of the domain.
    pub fn hi(&self) -> &Rational {
        &self.points[self.points.len() - 1].0
    }

    /// Image of the left end.
    pub fn image_lo(&self) -> &Rational {
        &self.points[0].1
    }

    /// Image of the right end.
    pub fn image_hi(&self) -> &Rational {
        &self.points[self.points.len() - 1].1
    }

    /// Whether the map fixes both ends of its domain.
    pub fn fixes_endpoints(&self) -> bool {
        self.lo() == self.image_lo() && self.hi() == self.image_hi()
    }

    pub fn is_identity(&self) -> bool {
        self.points.len() == 2 && self.fixes_endpoints()
    }

    /// Exact linear interpolation.
    pub fn eval(&self, t: &Rational) -> Result<Rational> {
        if t < self.lo() || t > self.hi() {
            return Err(Error::OutOfDomain {
                t: t.to_string(),
                lo: self.lo().to_string(),
                hi: self.hi().to_string(),
            });
        }
        let k = self.points.partition_point(|(x, _)| x < t);
        let (x1, y1) = &self.points[k];
        if x1 == t {
            return Ok(y1.clone());
        }
        let (x0, y0) = &self.points[k - 1];
        Ok(y0 + (y1 - y0) * (t - x0) / (x1 - x0))
    }

    /// The inverse map, obtained by swapping every breakpoint pair.
    pub fn inverse(&self) -> PLMap {
        PLMap {
            points: self.points.iter().map(|(x, y)| (y.clone(), x.clone())).collect(),
        }
    }

    /// The composite `self ∘ f`.
    ///
    /// The breakpoints are the union of `f`'s inputs and the `f`-preimages of
    /// `self`'s inputs.
    pub fn compose(&self, f: &PLMap) -> Result<PLMap> {
        if f.image_lo() != self.lo() || f.image_hi() != self.hi() {
            return Err(Error::DomainMismatch(
                format!("{}, {}", self.lo(), self.hi()),
                format!("{}, {}", f.image_lo(), f.image_hi()),
            ));
        }
        let finv = f.inverse();
        let mut inputs: Vec<Rational> = f.points.iter().map(|(x, _)| x.clone()).collect();
        for (x, _) in &self.points {
            inputs.push(finv.eval(x)?);
        }
        inputs.sort();
        inputs.dedup();
        let pts = inputs
            .into_iter()
            .map(|t| {
                let y = self.eval(&f.eval(&t)?)?;
                Ok((t, y))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PLMap::normalized(pts))
    }

    /// The fixture text: one `"p/q r/s"` line per breakpoint.
    pub fn to_fixture(&self) -> String {
        self.points.iter().map(|(x, y)| format!("{x} {y}\n")).collect()
    }

    /// Parses the fixture text produced by [`PLMap::to_fixture`].
    pub fn from_fixture(text: &str) -> Result<PLMap> {
        let mut pts = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let mut parts = line.split_whitespace();
            let (Some(x), Some(y), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(Error::Parse(line.to_string()));
            };
            pts.push((parse_rational(x)?, parse_rational(y)?));
        }
        let (Some(first), Some(last)) = (pts.first(), pts.last()) else {
            return Err(Error::Parse(text.to_string()));
        };
        let (lo, hi) = (first.0.clone(), last.0.clone());
        PLMap::polygon(pts, &lo, &hi)
    }
}

impl fmt::Display for PLMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.points.iter().map(|(x, y)| format!("({x}, {y})")).collect();
        write!(f, "polygon[{}]", parts.join(", "))
    }
}

impl FromStr for PLMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PLMap::from_fixture(s)
    }
}

fn unit_polygon(points: [(i64, i64, i64, i64); 4]) -> PLMap {
    let pts = points.iter().map(|&(a, b, c, d)| (rat(a, b), rat(c, d))).collect();
    PLMap::polygon(pts, &int(0), &int(1)).expect("constant polygon is valid")
}

/// η, the polygon through (0,0), (1/4,1/6), (3/4,5/6), (1,1).
pub fn eta() -> PLMap {
    unit_polygon([(0, 1, 0, 1), (1, 4, 1, 6), (3, 4, 5, 6), (1, 1, 1, 1)])
}

/// κ, the polygon through (0,0), (1/4,1/5), (3/4,4/5), (1,1).
pub fn kappa() -> PLMap {
    unit_polygon([(0, 1, 0, 1), (1, 4, 1, 5), (3, 4, 4, 5), (1, 1, 1, 1)])
}

/// Restriction of `f` to `[f.lo(), hi]`.
pub fn restrict(f: &PLMap, hi: &Rational) -> Result<PLMap> {
    let top = f.eval(hi)?;
    let mut pts: Vec<(Rational, Rational)> = f.points.iter().filter(|(x, _)| x < hi).cloned().collect();
    pts.push((hi.clone(), top));
    let lo = f.lo().clone();
    PLMap::polygon(pts, &lo, hi)
}

/// φ_{n,0}, the polygon through (0,0), (1/(2(n+1)), 1/(2(n+2))), (1/(n+1), 1/(n+1)).
pub fn phi_n0(n: usize) -> PLMap {
    let n = n as i64;
    let c = center_value(n as usize);
    let pts = vec![
        (int(0), int(0)),
        (rat(1, 2 * (n + 1)), rat(1, 2 * (n + 2))),
        (c.clone(), c.clone()),
    ];
    PLMap::polygon(pts, &int(0), &c).expect("constant polygon is valid")
}

/// The polygon `τ[b]` on `[0,1]` used by the boundary extension.
///
/// It passes through `(0,0)`, `(1,1)` and, for every index `j` with
/// `b_j ≤ α`, the point `((α−b_j)/(1/(n+1)−b_j), (β−c_j)/(1/(n+1)−c_j))`.
pub fn tau_polygon(b: &BaryPoint, c: &BaryPoint, alpha: &Rational, beta: &Rational) -> Result<PLMap> {
    let n = b.dim();
    if c.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: c.dim(),
        });
    }
    let cv = center_value(n);
    let mut pts = vec![(Rational::zero(), Rational::zero())];
    for (j, (bj, cj)) in b.coords().iter().zip(c.coords()).enumerate() {
        if (bj == alpha) != (cj == beta) {
            return Err(Error::CrossMismatch {
                index: j,
                image: cj.to_string(),
            });
        }
        if bj <= alpha {
            let s = &cv - bj;
            let u = &cv - cj;
            if u <= Rational::zero() {
                return Err(Error::NonMonotone(format!("image coordinate {cj}")));
            }
            pts.push(((alpha - bj) / s, (beta - cj) / u));
        }
    }
    pts.push((Rational::one(), Rational::one()));
    pts.sort();
    PLMap::polygon(pts, &Rational::zero(), &Rational::one())
}
