//! Face maps `⟨id⟩_{L,n,i,j}` and the homeomorphism family `Θ_{L,n,i}`.
//!
//! For `L = 0` every `Θ` is the identity. For `L = 1`, `Θ_{n,0}` is the lift of
//! `φ_{n,0}` and `Θ_{n,1}` is built by induction on `n`: on the face
//! `y_0 = 0` it is a composite of seven lower maps, it is carried to the other
//! faces by permutation conjugation, and it is extended inside with the
//! boundary extension at levels `1/(2(n+1))` and `1/(2(n+1)+1)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::comfort::{boundary_extension_evaluator, lambda_lift, Evaluator, Provenance, SimplexHomeo};
use crate::error::{Error, Result};
use crate::geometry::{rat, BaryPoint, Rational};
use crate::pl1d::{kappa, phi_n0, restrict};

/// Largest dimension built by [`ThetaFamily::new`] unless asked otherwise.
pub const DEFAULT_DIMENSION_CAP: usize = 6;

/// The face map `⟨id⟩_{L,n,i,j}: Δ_{n−1} → Δ_n`.
///
/// It inserts `v = i/((L+1)(n+1))` at slot `j` and scales the remaining
/// coordinates by `1 − v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FaceMap {
    #[serde(rename = "L")]
    pub l: usize,
    pub n: usize,
    pub i: usize,
    pub j: usize,
}

impl FaceMap {
    /// Validates `n ≥ 1`, `i ≤ L` and `j ≤ n`.
    pub fn new(l: usize, n: usize, i: usize, j: usize) -> Result<FaceMap> {
        if n == 0 {
            return Err(Error::IndexOutOfRange {
                name: "n",
                value: 0,
                max: 0,
            });
        }
        if i > l {
            return Err(Error::IndexOutOfRange {
                name: "i",
                value: i,
                max: l,
            });
        }
        if j > n {
            return Err(Error::IndexOutOfRange {
                name: "j",
                value: j,
                max: n,
            });
        }
        Ok(FaceMap { l, n, i, j })
    }

    /// The inserted value `v`.
    pub fn value(&self) -> Rational {
        Rational::new(BigInt::from(self.i), BigInt::from((self.l + 1) * (self.n + 1)))
    }
}

impl fmt::Display for FaceMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "face:L={},n={},i={},j={}", self.l, self.n, self.i, self.j)
    }
}

/// `⟨id⟩_{L,n,i,j}(x)`.
pub fn face_insert(key: &FaceMap, x: &BaryPoint) -> Result<BaryPoint> {
    if x.dim() + 1 != key.n {
        return Err(Error::DimensionMismatch {
            expected: key.n - 1,
            found: x.dim(),
        });
    }
    let v = key.value();
    let scale = Rational::one() - &v;
    let mut coords: Vec<Rational> = x.coords().iter().map(|c| c * &scale).collect();
    coords.insert(key.j, v);
    BaryPoint::new(coords)
}

/// Left inverse of [`face_insert`]: removes slot `j`, which must hold `v`, and
/// divides the rest by `1 − v`.
pub fn face_delete(key: &FaceMap, y: &BaryPoint) -> Result<BaryPoint> {
    if y.dim() != key.n {
        return Err(Error::DimensionMismatch {
            expected: key.n,
            found: y.dim(),
        });
    }
    let v = key.value();
    if y.coord(key.j) != &v {
        return Err(Error::WrongSlotValue {
            j: key.j,
            point: y.to_string(),
            expected: v.to_string(),
        });
    }
    let scale = Rational::one() - &v;
    let coords = y
        .coords()
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != key.j)
        .map(|(_, c)| c / &scale)
        .collect();
    BaryPoint::new(coords)
}

/// Identifies `Θ_{L,n,i}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ThetaKey {
    #[serde(rename = "L")]
    pub l: usize,
    pub n: usize,
    pub i: usize,
}

impl ThetaKey {
    /// Validates `L ≤ 1` and `i ≤ L`.
    pub fn new(l: usize, n: usize, i: usize) -> Result<ThetaKey> {
        if l > 1 {
            return Err(Error::UnsupportedL(l));
        }
        if i > l {
            return Err(Error::IndexOutOfRange {
                name: "i",
                value: i,
                max: l,
            });
        }
        Ok(ThetaKey { l, n, i })
    }
}

impl fmt::Display for ThetaKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "theta:L={},n={},i={}", self.l, self.n, self.i)
    }
}

fn parse_fields(body: &str) -> Result<BTreeMap<String, String>> {
    body.split(',')
        .map(|kv| {
            let (k, v) = kv.split_once('=').ok_or_else(|| Error::Parse(kv.to_string()))?;
            Ok((k.trim().to_string(), v.trim().to_string()))
        })
        .collect()
}

fn field(fields: &BTreeMap<String, String>, name: &str, whole: &str) -> Result<usize> {
    fields
        .get(name)
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| Error::Parse(whole.to_string()))
}

impl FromStr for ThetaKey {
    type Err = Error;

    /// Parses `"theta:L=1,n=2,i=1"`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .strip_prefix("theta:")
            .ok_or_else(|| Error::Parse(s.to_string()))?;
        let f = parse_fields(body)?;
        ThetaKey::new(field(&f, "L", s)?, field(&f, "n", s)?, field(&f, "i", s)?)
    }
}

impl FromStr for FaceMap {
    type Err = Error;

    /// Parses `"face:L=1,n=2,i=1,j=0"`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .strip_prefix("face:")
            .ok_or_else(|| Error::Parse(s.to_string()))?;
        let f = parse_fields(body)?;
        FaceMap::new(
            field(&f, "L", s)?,
            field(&f, "n", s)?,
            field(&f, "i", s)?,
            field(&f, "j", s)?,
        )
    }
}

/// `α_n = 1/(2(n+1))`, the level whose cross `Θ_{n,1}` transports.
pub fn theta1_alpha(n: usize) -> Rational {
    rat(1, 2 * (n as i64 + 1))
}

/// `β_n = 1/(2(n+1)+1)`, the level `♣_{n,α_n}` is sent to by `Θ_{n,1}`.
pub fn theta1_beta(n: usize) -> Rational {
    rat(1, 2 * (n as i64 + 1) + 1)
}

/// The maps `Θ_{L,n,i}` for `L ∈ {0,1}` and `n ≤ cap`.
///
/// Construction only wires evaluators together, so it is cheap. Each
/// `Θ_{n,1}` shares the already built `Θ_{n−1,1}`, `Θ_{n−1,0}` and `Θ_{n,0}`,
/// which keeps evaluation linear in `n`. The family is immutable once built.
#[derive(Clone, Debug)]
pub struct ThetaFamily {
    cap: usize,
    maps: BTreeMap<ThetaKey, Arc<SimplexHomeo>>,
}

impl Default for ThetaFamily {
    fn default() -> Self {
        ThetaFamily::new(DEFAULT_DIMENSION_CAP)
    }
}

impl ThetaFamily {
    /// Builds every `Θ_{L,n,i}` with `n ≤ cap`.
    pub fn new(cap: usize) -> ThetaFamily {
        let mut maps = BTreeMap::new();
        for n in 0..=cap {
            maps.insert(ThetaKey { l: 0, n, i: 0 }, Arc::new(SimplexHomeo::identity(n)));
            let t0 = Arc::new(lambda_lift(&phi_n0(n), n).expect("φ_{n,0} fixes its endpoints"));
            maps.insert(ThetaKey { l: 1, n, i: 0 }, t0);
            let t1 = match n {
                0 => SimplexHomeo::identity(0),
                1 => {
                    let half = restrict(&kappa(), &rat(1, 2)).expect("1/2 lies in [0,1]");
                    lambda_lift(&half, 1).expect("κ fixes 0 and 1/2")
                }
                _ => {
                    let lower1 = maps[&ThetaKey { l: 1, n: n - 1, i: 1 }].clone();
                    let lower0 = maps[&ThetaKey { l: 1, n: n - 1, i: 0 }].clone();
                    let same0 = maps[&ThetaKey { l: 1, n, i: 0 }].clone();
                    induction_step(n, lower1, lower0, same0)
                }
            };
            maps.insert(ThetaKey { l: 1, n, i: 1 }, Arc::new(t1));
        }
        ThetaFamily { cap, maps }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// The map `Θ_{L,n,i}`.
    pub fn get(&self, key: &ThetaKey) -> Result<Arc<SimplexHomeo>> {
        if key.l > 1 {
            return Err(Error::UnsupportedL(key.l));
        }
        if key.i > key.l {
            return Err(Error::IndexOutOfRange {
                name: "i",
                value: key.i,
                max: key.l,
            });
        }
        self.maps.get(key).cloned().ok_or(Error::DimensionCap {
            n: key.n,
            cap: self.cap,
        })
    }

    /// `Θ_{L,n,i}(x)` where `n = x.dim()`.
    pub fn eval(&self, l: usize, i: usize, x: &BaryPoint) -> Result<BaryPoint> {
        self.get(&ThetaKey::new(l, x.dim(), i)?)?.eval(x)
    }

    /// The face formula for `Θ_{n,1}` at `y` with `y_j = 0`, for `1 ≤ n ≤ cap`.
    pub fn theta1_on_face(&self, n: usize, j: usize, y: &BaryPoint) -> Result<BaryPoint> {
        if n == 0 || n > self.cap {
            return Err(Error::DimensionCap { n, cap: self.cap });
        }
        let lower1 = self.get(&ThetaKey { l: 1, n: n - 1, i: 1 })?;
        let lower0 = self.get(&ThetaKey { l: 1, n: n - 1, i: 0 })?;
        let same0 = self.get(&ThetaKey { l: 1, n, i: 0 })?;
        on_face(n, j, y, &lower1, &lower0, &same0)
    }
}

/// The seven-map composite on the face `y_0 = 0` of Δ_n:
/// `⟨id⟩⁻¹_{n+1,1,1} ∘ ⟨id⟩_{n+1,0,0} ∘ Θ_{n,0} ∘ ⟨id⟩_{n,1,0} ∘ Θ_{n−1,1} ∘ Θ_{n−1,0}⁻¹ ∘ ⟨id⟩⁻¹_{n,0,0}`.
fn on_face_zero(
    n: usize,
    y: &BaryPoint,
    lower1: &SimplexHomeo,
    lower0: &SimplexHomeo,
    same0: &SimplexHomeo,
) -> Result<BaryPoint> {
    let ybar = face_delete(&FaceMap { l: 1, n, i: 0, j: 0 }, y)?;
    let x = lower0.eval_inverse(&ybar)?;
    let z = lower1.eval(&x)?;
    let w = face_insert(&FaceMap { l: 1, n, i: 1, j: 0 }, &z)?;
    let u = same0.eval(&w)?;
    let lifted = face_insert(
        &FaceMap {
            l: 1,
            n: n + 1,
            i: 0,
            j: 0,
        },
        &u,
    )?;
    face_delete(
        &FaceMap {
            l: 1,
            n: n + 1,
            i: 1,
            j: 1,
        },
        &lifted,
    )
}

fn on_face(
    n: usize,
    j: usize,
    y: &BaryPoint,
    lower1: &SimplexHomeo,
    lower0: &SimplexHomeo,
    same0: &SimplexHomeo,
) -> Result<BaryPoint> {
    if y.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: y.dim(),
        });
    }
    if j > n {
        return Err(Error::IndexOutOfRange {
            name: "j",
            value: j,
            max: n,
        });
    }
    if !y.coord(j).is_zero() {
        return Err(Error::NotOnFace {
            j,
            point: y.to_string(),
        });
    }
    if j == 0 {
        return on_face_zero(n, y, lower1, lower0, same0);
    }
    Ok(on_face_zero(n, &y.swapped(0, j), lower1, lower0, same0)?.swapped(0, j))
}

fn induction_step(
    n: usize,
    lower1: Arc<SimplexHomeo>,
    lower0: Arc<SimplexHomeo>,
    same0: Arc<SimplexHomeo>,
) -> SimplexHomeo {
    let on_boundary: Evaluator = Arc::new(move |y: &BaryPoint| {
        let j = y
            .coords()
            .iter()
            .position(Zero::is_zero)
            .ok_or_else(|| Error::NotOnFace {
                j: 0,
                point: y.to_string(),
            })?;
        on_face(n, j, y, &lower1, &lower0, &same0)
    });
    let forward = boundary_extension_evaluator(on_boundary, theta1_alpha(n), theta1_beta(n), n);
    SimplexHomeo::new(n, forward, None, Provenance::ThetaInduction)
}

/// Convenience wrapper building a family just large enough for `key`.
pub fn theta(key: &ThetaKey) -> Result<Arc<SimplexHomeo>> {
    ThetaFamily::new(key.n.max(1)).get(key)
}

/// Whether `y` lies on the cross of level `v` at the same index as `x` does at
/// level `u`, for every such index.
pub fn transports_cross(x: &BaryPoint, y: &BaryPoint, u: &Rational, v: &Rational) -> bool {
    x.coords().iter().zip(y.coords()).all(|(a, b)| (a == u) == (b == v))
}
