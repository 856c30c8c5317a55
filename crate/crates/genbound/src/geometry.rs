//! Exact barycentric geometry of the standard simplex Δ_n.
//!
//! A point of Δ_n is an (n+1)-tuple of non-negative rationals summing to one.
//! This module provides the barycenter, the minimum coordinate `A(x)`, the
//! radial projections `π_α`, region membership tests and convex combinations.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact arbitrary-precision fraction, always kept in lowest terms.
pub type Rational = BigRational;

/// Builds the rational `p/q`.
///
/// # Panics
/// Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Builds the integer `p` as a rational.
pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// `1/(n+1)`, the barycentric coordinate of the center of Δ_n.
pub fn center_value(n: usize) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(n + 1))
}

/// Divides `a` by `b`, reporting a zero divisor as an error.
pub fn checked_div(a: &Rational, b: &Rational) -> Result<Rational> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(a / b)
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let err = || Error::Parse(s.to_string());
    match t.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| err())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| err())?;
            if q.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(t).map_err(|_| err())?)),
    }
}

/// A point of the standard simplex Δ_n.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BaryPoint {
    coords: Vec<Rational>,
}

impl BaryPoint {
    /// Validates that the coordinates are non-negative and sum to one.
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        let sum: Rational = coords.iter().sum();
        if coords.is_empty() || !sum.is_one() || coords.iter().any(|c| c.is_negative()) {
            return Err(Error::NotInSimplex(fmt_tuple(&coords)));
        }
        Ok(BaryPoint { coords })
    }

    /// Builds a point from integer numerators over a common denominator.
    pub fn from_ratios(numerators: &[i64], denominator: i64) -> Result<Self> {
        Self::new(numerators.iter().map(|&p| rat(p, denominator)).collect())
    }

    /// The dimension `n` of the simplex containing this point.
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.coords
    }

    pub fn coord(&self, k: usize) -> &Rational {
        &self.coords[k]
    }

    /// The point `x∘ϑ`, that is `(x_{ϑ(0)}, …, x_{ϑ(n)})`.
    pub fn permute(&self, perm: &[usize]) -> BaryPoint {
        BaryPoint {
            coords: perm.iter().map(|&k| self.coords[k].clone()).collect(),
        }
    }

    /// Exchanges coordinates `a` and `b`.
    pub fn swapped(&self, a: usize, b: usize) -> BaryPoint {
        let mut coords = self.coords.clone();
        coords.swap(a, b);
        BaryPoint { coords }
    }

    /// Whether some coordinate equals `value`.
    pub fn has_coord(&self, value: &Rational) -> bool {
        self.coords.iter().any(|c| c == value)
    }

    fn expect_dim(&self, n: usize) -> Result<()> {
        if self.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.dim(),
            });
        }
        Ok(())
    }
}

/// Formats coordinates as `[p/q,…]`.
pub fn fmt_tuple(coords: &[Rational]) -> String {
    let parts: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
    format!("[{}]", parts.join(","))
}

impl fmt::Display for BaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_tuple(&self.coords))
    }
}

impl FromStr for BaryPoint {
    type Err = Error;

    /// Parses `"[1/6,1/6,2/3]"`; the brackets are optional.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')).unwrap_or(t);
        if inner.trim().is_empty() {
            return Err(Error::Parse(s.to_string()));
        }
        let coords = inner.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
        BaryPoint::new(coords)
    }
}

/// Stable ascending sort of the coordinate indices, ties broken by index.
///
/// The returned `ϑ` satisfies `x_{ϑ(0)} ≤ x_{ϑ(1)} ≤ … ≤ x_{ϑ(n)}`.
pub fn sorting_permutation(coords: &[Rational]) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..coords.len()).collect();
    perm.sort_by(|&a, &b| coords[a].cmp(&coords[b]));
    perm
}

/// The barycenter `Center_n`.
pub fn center(n: usize) -> BaryPoint {
    BaryPoint {
        coords: vec![center_value(n); n + 1],
    }
}

/// The vertex `e_k` of Δ_n.
pub fn vertex(n: usize, k: usize) -> BaryPoint {
    let mut coords = vec![Rational::zero(); n + 1];
    coords[k] = Rational::one();
    BaryPoint { coords }
}

/// `A(x)`, the smallest coordinate.
pub fn min_value(x: &BaryPoint) -> Rational {
    x.coords.iter().min().cloned().expect("points are non-empty")
}

/// The radial projection `π_α` from the center onto `Layer_{n,α}`.
///
/// `b_i = (x_i − A(x)) / (1 − (n+1)·A(x))` is the projection `π = π_0` to the
/// boundary, and `π_α(x)_i = α + (1 − (n+1)·α)·b_i`.
pub fn project_layer(x: &BaryPoint, alpha: &Rational) -> Result<BaryPoint> {
    let n = x.dim();
    let c = center_value(n);
    if alpha.is_negative() || alpha > &c {
        return Err(Error::LevelOutOfRange {
            level: alpha.to_string(),
            n,
        });
    }
    if alpha == &c {
        return Ok(center(n));
    }
    let a = min_value(x);
    let np1 = int(n as i64 + 1);
    let denom = Rational::one() - &np1 * &a;
    if denom.is_zero() {
        return Err(Error::CenterProjection);
    }
    let scale = Rational::one() - &np1 * alpha;
    let coords = x
        .coords
        .iter()
        .map(|xi| alpha + &scale * ((xi - &a) / &denom))
        .collect();
    Ok(BaryPoint { coords })
}

/// The boundary projection `π = π_0`.
pub fn project_boundary(x: &BaryPoint) -> Result<BaryPoint> {
    project_layer(x, &Rational::zero())
}

/// The subsets of Δ_n the constructions refer to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Region {
    /// `♣_{n,α}`: some coordinate equals α.
    Cross(Rational),
    /// `Layer_{n,α}`: the smallest coordinate equals α.
    Layer(Rational),
    /// `BOU_n`: some coordinate is zero.
    Boundary,
    /// `Section_{n,j}`: coordinate `j` is a smallest coordinate.
    Section(usize),
    /// `Sponge`: all coordinates are pairwise distinct.
    Sponge,
}

/// Exact membership test.
pub fn classify(x: &BaryPoint, region: &Region) -> bool {
    match region {
        Region::Cross(alpha) => x.has_coord(alpha),
        Region::Layer(alpha) => &min_value(x) == alpha,
        Region::Boundary => x.has_coord(&Rational::zero()),
        Region::Section(j) => *j <= x.dim() && x.coords[*j] == min_value(x),
        Region::Sponge => {
            let mut sorted = x.coords.clone();
            sorted.sort();
            sorted.windows(2).all(|w| w[0] != w[1])
        }
    }
}

/// The convex combination `t·a + (1−t)·b`.
pub fn segment_eval(a: &BaryPoint, b: &BaryPoint, t: &Rational) -> Result<BaryPoint> {
    b.expect_dim(a.dim())?;
    if t.is_negative() || t > &Rational::one() {
        return Err(Error::LevelOutOfRange {
            level: t.to_string(),
            n: a.dim(),
        });
    }
    let s = Rational::one() - t;
    let coords = a
        .coords
        .iter()
        .zip(&b.coords)
        .map(|(ai, bi)| t * ai + &s * bi)
        .collect();
    Ok(BaryPoint { coords })
}

/// Checks that `x` lies in Δ_n.
pub fn expect_dim(x: &BaryPoint, n: usize) -> Result<()> {
    x.expect_dim(n)
}
