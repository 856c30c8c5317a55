//! Self-maps of Δ_n with the COMFORT properties.
//!
//! A map `F: Δ_n → Δ_n` is COMFORT when it is a homeomorphism that respects
//! permutations (`F(x∘ϑ) = F(x)∘ϑ`) and keeps the order of coordinates. This
//! module builds such maps from 1-D polygons ([`lambda_lift`]), extends maps
//! given on a layer or on the boundary to the whole simplex, checks the
//! properties on samples ([`check_comfort`]), and provides a COMFORT map that
//! is not a lift ([`counterexample_map`]).

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{
    center, center_value, int, min_value, project_boundary, project_layer, rat, segment_eval, sorting_permutation,
    BaryPoint, Rational,
};
use crate::pl1d::{tau_polygon, PLMap};

/// A point evaluator on Δ_n.
pub type Evaluator = Arc<dyn Fn(&BaryPoint) -> Result<BaryPoint> + Send + Sync>;

/// How a [`SimplexHomeo`] was built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Identity,
    LambdaLift(PLMap),
    LayerExtension { alpha: Rational, beta: Rational },
    BoundaryExtension { alpha: Rational, beta: Rational },
    Counterexample,
    ThetaInduction,
}

/// An evaluable self-map of Δ_n, with an exact inverse when one is known.
#[derive(Clone)]
pub struct SimplexHomeo {
    dim: usize,
    forward: Evaluator,
    inverse: Option<Evaluator>,
    provenance: Provenance,
}

impl fmt::Debug for SimplexHomeo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplexHomeo")
            .field("dim", &self.dim)
            .field("has_inverse", &self.inverse.is_some())
            .field("provenance", &self.provenance)
            .finish()
    }
}

impl SimplexHomeo {
    pub fn new(dim: usize, forward: Evaluator, inverse: Option<Evaluator>, provenance: Provenance) -> Self {
        SimplexHomeo {
            dim,
            forward,
            inverse,
            provenance,
        }
    }

    /// The identity of Δ_n.
    pub fn identity(n: usize) -> SimplexHomeo {
        let id: Evaluator = Arc::new(|x: &BaryPoint| Ok(x.clone()));
        SimplexHomeo::new(n, id.clone(), Some(id), Provenance::Identity)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn has_inverse(&self) -> bool {
        self.inverse.is_some()
    }

    /// Evaluates the map at `x`.
    pub fn eval(&self, x: &BaryPoint) -> Result<BaryPoint> {
        self.check_dim(x)?;
        (self.forward)(x)
    }

    /// Evaluates the stored inverse at `y`.
    pub fn eval_inverse(&self, y: &BaryPoint) -> Result<BaryPoint> {
        self.check_dim(y)?;
        match &self.inverse {
            Some(inv) => inv(y),
            None => Err(Error::NoInverse(format!("{:?}", self.provenance))),
        }
    }

    /// The forward evaluator as a shareable closure.
    pub fn evaluator(&self) -> Evaluator {
        let me = self.clone();
        Arc::new(move |x: &BaryPoint| me.eval(x))
    }

    fn check_dim(&self, x: &BaryPoint) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        Ok(())
    }
}

fn lift_forward(f: &PLMap, x: &BaryPoint) -> Result<BaryPoint> {
    let n = x.dim();
    let c = center_value(n);
    let xs = x.coords();
    let perm = sorting_permutation(xs);
    let r = perm
        .iter()
        .rposition(|&k| xs[k] <= c)
        .expect("the minimum is at most 1/(n+1)");
    if r == n {
        return Ok(x.clone());
    }
    let mut ys = xs.to_vec();
    let mut d = Rational::zero();
    for &k in &perm[..=r] {
        ys[k] = f.eval(&xs[k])?;
        d += &xs[k] - &ys[k];
    }
    let spread: Rational = perm[r + 1..].iter().map(|&k| &xs[k] - &c).sum();
    let delta = d / spread;
    for &k in &perm[r + 1..] {
        ys[k] = &xs[k] + &delta * (&xs[k] - &c);
    }
    BaryPoint::new(ys)
}

fn lift_inverse(f: &PLMap, finv: &PLMap, y: &BaryPoint) -> Result<BaryPoint> {
    let n = y.dim();
    let c = center_value(n);
    let ys = y.coords();
    let perm = sorting_permutation(ys);
    let r = perm
        .iter()
        .rposition(|&k| ys[k] <= c)
        .expect("the minimum is at most 1/(n+1)");
    if r == n {
        return Ok(y.clone());
    }
    debug_assert!(f.fixes_endpoints());
    let mut xs = ys.to_vec();
    let mut d = Rational::zero();
    for &k in &perm[..=r] {
        xs[k] = finv.eval(&ys[k])?;
        d += &xs[k] - &ys[k];
    }
    let spread: Rational = perm[r + 1..].iter().map(|&k| &ys[k] - &c).sum();
    let delta = &d / (spread - &d);
    let scale = Rational::one() + &delta;
    let shift = &delta * &c;
    for &k in &perm[r + 1..] {
        xs[k] = (&ys[k] + &shift) / &scale;
    }
    BaryPoint::new(xs)
}

/// `Λ_n(f)`: lifts an increasing homeomorphism `f` of `[0, 1/(n+1)]` to Δ_n.
///
/// Coordinates at most `1/(n+1)` are mapped by `f`; the larger ones are moved
/// away from `1/(n+1)` by a common factor so that the sum stays one. The result
/// carries the exact inverse `Λ_n(f⁻¹)`.
pub fn lambda_lift(f: &PLMap, n: usize) -> Result<SimplexHomeo> {
    let c = center_value(n);
    if !f.lo().is_zero() || f.hi() != &c {
        return Err(Error::BadDomain {
            expected: c.to_string(),
            lo: f.lo().to_string(),
            hi: f.hi().to_string(),
        });
    }
    if !f.image_lo().is_zero() {
        return Err(Error::EndpointNotFixed(f.lo().to_string()));
    }
    if f.image_hi() != &c {
        return Err(Error::EndpointNotFixed(f.hi().to_string()));
    }
    let fwd = f.clone();
    let forward: Evaluator = Arc::new(move |x: &BaryPoint| lift_forward(&fwd, x));
    let (g, ginv) = (f.clone(), f.inverse());
    let inverse: Evaluator = Arc::new(move |y: &BaryPoint| lift_inverse(&g, &ginv, y));
    Ok(SimplexHomeo::new(
        n,
        forward,
        Some(inverse),
        Provenance::LambdaLift(f.clone()),
    ))
}

fn check_levels(alpha: &Rational, beta: &Rational, n: usize, upper_inclusive: bool) -> Result<()> {
    let c = center_value(n);
    let in_range = |v: &Rational| {
        if upper_inclusive {
            v > &Rational::zero() && v <= &c
        } else {
            v >= &Rational::zero() && v < &c
        }
    };
    let both_zero = alpha.is_zero() && beta.is_zero();
    let ok = if upper_inclusive {
        both_zero || (in_range(alpha) && in_range(beta))
    } else {
        in_range(alpha) && in_range(beta)
    };
    if !ok {
        return Err(Error::BadLevels {
            alpha: alpha.to_string(),
            beta: beta.to_string(),
            n,
        });
    }
    Ok(())
}

/// Extends a homeomorphism `φ: Layer_{n,α} → Layer_{n,β}` to all of Δ_n.
///
/// The extension sends `x` to `π(φ(π_α(x))) + σ(A(x))·(n+1)·(Center − π(φ(π_α(x))))`
/// where `σ` is the polygon through `(0,0)`, `(α,β)`, `(1/(n+1),1/(n+1))`.
/// Admissible levels are `0 < α,β ≤ 1/(n+1)` or `α = β = 0`.
pub fn extend_from_layer(phi: Evaluator, alpha: &Rational, beta: &Rational, n: usize) -> Result<SimplexHomeo> {
    check_levels(alpha, beta, n, true)?;
    let c = center_value(n);
    let provenance = Provenance::LayerExtension {
        alpha: alpha.clone(),
        beta: beta.clone(),
    };
    if alpha == &c {
        let id = SimplexHomeo::identity(n);
        return Ok(SimplexHomeo::new(n, id.forward, id.inverse, provenance));
    }
    let sigma = PLMap::polygon(
        vec![(int(0), int(0)), (alpha.clone(), beta.clone()), (c.clone(), c.clone())],
        &int(0),
        &c,
    )?;
    let alpha = alpha.clone();
    let np1 = int(n as i64 + 1);
    let forward: Evaluator = Arc::new(move |x: &BaryPoint| {
        let a = min_value(x);
        if a == c {
            return Ok(x.clone());
        }
        let on_layer = project_layer(x, &alpha)?;
        let b = project_boundary(&phi(&on_layer)?)?;
        let t = &np1 * sigma.eval(&a)?;
        segment_eval(&center(n), &b, &t)
    });
    Ok(SimplexHomeo::new(n, forward, None, provenance))
}

/// Extends a COMFORT map `φ: BOU_n → BOU_n` that sends `♣_{n,α}` to `♣_{n,β}`.
///
/// For `x` off the boundary, with `b = π(x)`, `t = (n+1)·A(x)` and `c = φ(b)`,
/// the value is `τ[b](t)·Center + (1 − τ[b](t))·c`. Boundary points are sent
/// to `φ(x)` directly.
pub fn extend_from_boundary(phi: Evaluator, alpha: &Rational, beta: &Rational, n: usize) -> Result<SimplexHomeo> {
    check_levels(alpha, beta, n, false)?;
    let provenance = Provenance::BoundaryExtension {
        alpha: alpha.clone(),
        beta: beta.clone(),
    };
    let forward = boundary_extension_evaluator(phi, alpha.clone(), beta.clone(), n);
    Ok(SimplexHomeo::new(n, forward, None, provenance))
}

pub(crate) fn boundary_extension_evaluator(phi: Evaluator, alpha: Rational, beta: Rational, n: usize) -> Evaluator {
    let cv = center_value(n);
    let np1 = int(n as i64 + 1);
    Arc::new(move |x: &BaryPoint| {
        let a = min_value(x);
        if a == cv {
            return Ok(x.clone());
        }
        if a.is_zero() {
            return phi(x);
        }
        let b = project_boundary(x)?;
        let c = phi(&b)?;
        for (bj, cj) in b.coords().iter().zip(c.coords()) {
            if bj == &alpha && cj != &beta {
                return Err(Error::CrossPropertyViolation {
                    point: b.to_string(),
                    image: c.to_string(),
                });
            }
        }
        let tau = tau_polygon(&b, &c, &alpha, &beta)?;
        let s = tau.eval(&(&np1 * &a))?;
        segment_eval(&center(n), &c, &s)
    })
}

/// The kind of a COMFORT violation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// `F(x∘ϑ) ≠ F(x)∘ϑ`.
    Permutation,
    /// `x_a ≤ x_b` but `F(x)_a > F(x)_b`.
    Order,
    /// `F(x)_a = F(x)_b` although `x_a ≠ x_b`.
    EqualityPattern,
    /// Inverse round trip failed or two samples share an image.
    Bijectivity,
    /// Evaluation failed or left the simplex.
    Evaluation,
}

/// One recorded violation, with values in the rational tuple format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub witness: String,
    pub expected: String,
    pub actual: String,
}

/// Result of [`check_comfort`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComfortReport {
    pub map_id: String,
    pub n: usize,
    pub samples: usize,
    pub violations: Vec<Violation>,
}

impl ComfortReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn of_kind(&self, kind: ViolationKind) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(move |v| v.kind == kind)
    }

    pub fn permutation_violations(&self) -> Vec<&Violation> {
        self.of_kind(ViolationKind::Permutation).collect()
    }

    pub fn order_violations(&self) -> Vec<&Violation> {
        self.of_kind(ViolationKind::Order).collect()
    }

    pub fn bijectivity_spot_failures(&self) -> Vec<&Violation> {
        self.of_kind(ViolationKind::Bijectivity).collect()
    }
}

/// The test permutations of `{0,…,n}`: every adjacent transposition, the
/// reversal, and eight seeded random permutations.
pub fn test_permutations(n: usize, seed: u64) -> Vec<Vec<usize>> {
    let id: Vec<usize> = (0..=n).collect();
    let mut perms = Vec::new();
    for k in 0..n {
        let mut p = id.clone();
        p.swap(k, k + 1);
        perms.push(p);
    }
    if n > 0 {
        perms.push(id.iter().rev().copied().collect());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..8 {
            let mut p = id.clone();
            p.shuffle(&mut rng);
            perms.push(p);
        }
    }
    perms
}

/// Checks the COMFORT conditions of `f` at every point of `grid`.
///
/// Verifies permutation respect against [`test_permutations`], the weak order
/// condition and the equality pattern at every sample. When `f` has an
/// inverse the round trip is checked; otherwise distinct samples must have
/// distinct images. Violations are reported as data.
pub fn check_comfort(map_id: &str, f: &SimplexHomeo, grid: &[BaryPoint], seed: u64) -> ComfortReport {
    let n = f.dim();
    let perms = test_permutations(n, seed);
    let mut violations = Vec::new();
    let mut images: Vec<(BaryPoint, BaryPoint)> = Vec::new();
    let mut record = |kind, witness: &BaryPoint, expected: String, actual: String| {
        violations.push(Violation {
            kind,
            witness: witness.to_string(),
            expected,
            actual,
        })
    };
    for x in grid {
        let y = match f.eval(x) {
            Ok(y) => y,
            Err(e) => {
                record(
                    ViolationKind::Evaluation,
                    x,
                    "a point of the simplex".into(),
                    e.to_string(),
                );
                continue;
            }
        };
        for p in &perms {
            let expected = y.permute(p);
            match f.eval(&x.permute(p)) {
                Ok(actual) if actual == expected => {}
                Ok(actual) => record(
                    ViolationKind::Permutation,
                    &x.permute(p),
                    expected.to_string(),
                    actual.to_string(),
                ),
                Err(e) => record(
                    ViolationKind::Evaluation,
                    &x.permute(p),
                    expected.to_string(),
                    e.to_string(),
                ),
            }
        }
        let (xs, ys) = (x.coords(), y.coords());
        'pairs: for a in 0..=n {
            for b in 0..=n {
                if a == b {
                    continue;
                }
                if xs[a] <= xs[b] && ys[a] > ys[b] {
                    record(
                        ViolationKind::Order,
                        x,
                        format!("coordinate {a} <= coordinate {b}"),
                        y.to_string(),
                    );
                    break 'pairs;
                }
                if xs[a] != xs[b] && ys[a] == ys[b] {
                    record(
                        ViolationKind::EqualityPattern,
                        x,
                        format!("coordinates {a} and {b} distinct"),
                        y.to_string(),
                    );
                    break 'pairs;
                }
            }
        }
        if f.has_inverse() {
            match f.eval_inverse(&y) {
                Ok(back) if &back == x => {}
                Ok(back) => record(ViolationKind::Bijectivity, x, x.to_string(), back.to_string()),
                Err(e) => record(ViolationKind::Evaluation, &y, x.to_string(), e.to_string()),
            }
        }
        images.push((y, x.clone()));
    }
    images.sort();
    for w in images.windows(2) {
        if w[0].0 == w[1].0 && w[0].1 != w[1].1 {
            record(
                ViolationKind::Bijectivity,
                &w[1].1,
                w[0].1.to_string(),
                w[1].0.to_string(),
            );
        }
    }
    ComfortReport {
        map_id: map_id.to_string(),
        n,
        samples: grid.len(),
        violations,
    }
}

/// The breakpoints of the boundary profile of [`counterexample_map`].
///
/// On the face `(0, x, 1−x)` with `x ≤ 1/2` the smaller nonzero coordinate is
/// sent to `x/2` on `[0,1/4]`, `5x/2 − 1/2` on `[1/4,1/3]` and `x` on `[1/3,1/2]`.
pub fn counterexample_profile() -> PLMap {
    PLMap::polygon(
        vec![
            (int(0), int(0)),
            (rat(1, 4), rat(1, 8)),
            (rat(1, 3), rat(1, 3)),
            (rat(1, 2), rat(1, 2)),
        ],
        &int(0),
        &rat(1, 2),
    )
    .expect("constant polygon is valid")
}

/// A COMFORT map of Δ_2 that fixes every layer setwise but is no `Λ_2(f)`.
///
/// The profile of [`counterexample_profile`] is spread over `BOU_2` by
/// permutation symmetry and extended inside with [`extend_from_layer`] at
/// levels `α = β = 0`.
pub fn counterexample_map() -> SimplexHomeo {
    let g = counterexample_profile();
    let on_boundary: Evaluator = Arc::new(move |b: &BaryPoint| {
        let perm = sorting_permutation(b.coords());
        let small = b.coord(perm[1]);
        let image = g.eval(small)?;
        let mut ys = vec![Rational::zero(); 3];
        ys[perm[1]] = image.clone();
        ys[perm[2]] = Rational::one() - image;
        BaryPoint::new(ys)
    });
    let ext = extend_from_layer(on_boundary, &int(0), &int(0), 2).expect("levels are admissible");
    SimplexHomeo::new(2, ext.forward, None, Provenance::Counterexample)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pl1d::phi_n0;

    fn p(s: &str) -> BaryPoint {
        s.parse().unwrap()
    }

    #[test]
    fn lift_examples() {
        let t = lambda_lift(&phi_n0(1), 1).unwrap();
        assert_eq!(t.eval(&p("[1/4,3/4]")).unwrap(), p("[1/6,5/6]"));
        let t = lambda_lift(&phi_n0(2), 2).unwrap();
        assert_eq!(t.eval(&p("[1/6,1/6,2/3]")).unwrap(), p("[1/8,1/8,3/4]"));
        assert_eq!(t.eval_inverse(&p("[1/8,1/8,3/4]")).unwrap(), p("[1/6,1/6,2/3]"));
        let id = lambda_lift(&PLMap::identity(&int(0), &rat(1, 4)), 3).unwrap();
        assert_eq!(
            id.eval(&p("[1/10,2/10,3/10,4/10]")).unwrap(),
            p("[1/10,2/10,3/10,4/10]")
        );
    }

    #[test]
    fn lift_rejects_bad_polygons() {
        assert!(matches!(lambda_lift(&phi_n0(1), 2), Err(Error::BadDomain { .. })));
        let moved = PLMap::polygon(vec![(int(0), rat(1, 10)), (rat(1, 3), rat(1, 3))], &int(0), &rat(1, 3)).unwrap();
        assert!(matches!(lambda_lift(&moved, 2), Err(Error::EndpointNotFixed(_))));
    }

    #[test]
    fn layer_extension_levels() {
        let id = SimplexHomeo::identity(2).evaluator();
        assert!(matches!(
            extend_from_layer(id.clone(), &rat(1, 2), &rat(1, 2), 2),
            Err(Error::BadLevels { .. })
        ));
        assert!(matches!(
            extend_from_layer(id.clone(), &int(0), &rat(1, 5), 2),
            Err(Error::BadLevels { .. })
        ));
        let full = extend_from_layer(id.clone(), &rat(1, 3), &rat(1, 3), 2).unwrap();
        assert_eq!(full.eval(&p("[1/6,1/3,1/2]")).unwrap(), p("[1/6,1/3,1/2]"));
        let same = extend_from_layer(id, &rat(1, 7), &rat(1, 7), 2).unwrap();
        assert_eq!(same.eval(&p("[1/6,1/3,1/2]")).unwrap(), p("[1/6,1/3,1/2]"));
        assert_eq!(same.eval(&center(2)).unwrap(), center(2));
    }

    #[test]
    fn boundary_extension_identity() {
        let id = SimplexHomeo::identity(3).evaluator();
        let ext = extend_from_boundary(id, &rat(1, 8), &rat(1, 8), 3).unwrap();
        for x in ["[1/10,2/10,3/10,4/10]", "[1/4,1/4,1/4,1/4]", "[0,1/8,1/2,3/8]"] {
            assert_eq!(ext.eval(&p(x)).unwrap(), p(x));
        }
    }

    #[test]
    fn counterexample_values() {
        let f = counterexample_map();
        assert_eq!(f.eval(&p("[0,1/8,7/8]")).unwrap(), p("[0,1/16,15/16]"));
        assert_eq!(f.eval(&p("[0,3/10,7/10]")).unwrap(), p("[0,1/4,3/4]"));
        assert_eq!(f.eval(&p("[0,1/2,1/2]")).unwrap(), p("[0,1/2,1/2]"));
        assert_eq!(f.eval(&p("[7/8,0,1/8]")).unwrap(), p("[15/16,0,1/16]"));
    }

    #[test]
    fn negative_control_is_caught() {
        let swap: Evaluator = Arc::new(|x: &BaryPoint| Ok(x.swapped(0, 1)));
        let f = SimplexHomeo::new(2, swap, None, Provenance::Identity);
        let report = check_comfort("swap", &f, &[p("[1/6,1/3,1/2]")], 7);
        assert!(!report.permutation_violations().is_empty());
        assert!(!report.order_violations().is_empty());
    }

    #[test]
    fn permutation_set_size() {
        assert_eq!(test_permutations(3, 1).len(), 3 + 1 + 8);
        assert_eq!(test_permutations(0, 1).len(), 0);
    }
}
