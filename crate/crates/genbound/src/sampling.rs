//! Deterministic sample sets of Δ_n used by the verification routines.
//!
//! The canonical grid consists of Sponge points with a common denominator `D`
//! (points whose coordinates are pairwise distinct) plus seeded pseudorandom
//! rational points. When the full lattice is large a seeded subset of at most
//! [`LATTICE_CAP`] lattice points is used.

use std::collections::BTreeSet;

use num_integer::binomial;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geometry::{center, center_value, classify, int, rat, vertex, BaryPoint, Rational, Region};
use crate::pl1d::PLMap;

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 20_240_917;
/// Default common denominator of the lattice part of the canonical grid.
pub const DEFAULT_DENOMINATOR: u64 = 60;
/// Common denominator of the optional deep mode.
pub const DEEP_DENOMINATOR: u64 = 840;
/// Number of pseudorandom points added to every canonical grid.
pub const RANDOM_POINTS: usize = 64;
/// Largest denominator of a pseudorandom point.
pub const RANDOM_MAX_DENOMINATOR: u64 = 10_000;
/// Largest number of lattice points kept in a canonical grid.
pub const LATTICE_CAP: usize = 256;

fn composition_to_point(parts: &[u64], denominator: u64) -> BaryPoint {
    let coords = parts.iter().map(|&p| rat(p as i64, denominator as i64)).collect();
    BaryPoint::new(coords).expect("parts sum to the denominator")
}

fn all_compositions(total: u64, slots: usize, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if slots == 1 {
        prefix.push(total);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for first in 0..=total {
        prefix.push(first);
        all_compositions(total - first, slots - 1, prefix, out);
        prefix.pop();
    }
}

fn random_composition(rng: &mut ChaCha8Rng, total: u64, slots: usize) -> Vec<u64> {
    let mut cuts: Vec<u64> = (0..slots - 1).map(|_| rng.gen_range(0..=total)).collect();
    cuts.sort_unstable();
    let mut parts = Vec::with_capacity(slots);
    let mut prev = 0;
    for c in cuts {
        parts.push(c - prev);
        prev = c;
    }
    parts.push(total - prev);
    parts
}

/// Sponge points of Δ_n with common denominator `d`, at most `cap` of them.
///
/// Small lattices are enumerated in full; larger ones are sampled with a
/// seeded generator. The result is sorted and free of duplicates.
pub fn sponge_lattice(n: usize, d: u64, cap: usize, seed: u64) -> Vec<BaryPoint> {
    let is_sponge = |parts: &[u64]| {
        let mut s = parts.to_vec();
        s.sort_unstable();
        s.windows(2).all(|w| w[0] != w[1])
    };
    let total: u64 = binomial(d + n as u64, n as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen: BTreeSet<Vec<u64>> = BTreeSet::new();
    if total <= 4 * cap as u64 {
        let mut all = Vec::new();
        all_compositions(d, n + 1, &mut Vec::new(), &mut all);
        let mut sponge: Vec<Vec<u64>> = all.into_iter().filter(|p| is_sponge(p)).collect();
        if sponge.len() > cap {
            use rand::seq::SliceRandom;
            sponge.shuffle(&mut rng);
            sponge.truncate(cap);
        }
        chosen.extend(sponge);
    } else {
        let mut attempts = 0;
        while chosen.len() < cap && attempts < 100 * cap {
            attempts += 1;
            let parts = random_composition(&mut rng, d, n + 1);
            if is_sponge(&parts) {
                chosen.insert(parts);
            }
        }
    }
    chosen.iter().map(|p| composition_to_point(p, d)).collect()
}

/// `count` pseudorandom points of Δ_n with denominators at most 10^4.
pub fn random_points(n: usize, count: usize, seed: u64) -> Vec<BaryPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    (0..count)
        .map(|_| {
            let q = rng.gen_range((n as u64 + 1)..=RANDOM_MAX_DENOMINATOR);
            composition_to_point(&random_composition(&mut rng, q, n + 1), q)
        })
        .collect()
}

/// The canonical sample grid `S(n, D)`: Sponge lattice points plus
/// [`RANDOM_POINTS`] pseudorandom points, without duplicates.
pub fn canonical_grid(n: usize, d: u64, seed: u64) -> Vec<BaryPoint> {
    let mut set: BTreeSet<BaryPoint> = sponge_lattice(n, d, LATTICE_CAP, seed).into_iter().collect();
    let mut out: Vec<BaryPoint> = set.iter().cloned().collect();
    for x in random_points(n, RANDOM_POINTS, seed) {
        if set.insert(x.clone()) {
            out.push(x);
        }
    }
    out
}

/// A sample set of Δ_n together with the parameters that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    pub n: usize,
    pub denominator: u64,
    pub seed: u64,
    pub points: Vec<BaryPoint>,
}

impl Grid {
    /// The canonical grid `S(n, D)` for the given seed.
    pub fn canonical(n: usize, denominator: u64, seed: u64) -> Grid {
        Grid {
            n,
            denominator,
            seed,
            points: canonical_grid(n, denominator, seed),
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Points that stress tie handling and the boundary: the center, vertices,
/// edge midpoints, points with repeated coordinates, and near ties.
pub fn adversarial_points(n: usize) -> Vec<BaryPoint> {
    let mut pts = vec![center(n)];
    for k in 0..=n {
        pts.push(vertex(n, k));
    }
    if n == 0 {
        return pts;
    }
    let np1 = n as i64 + 1;
    for k in 1..=n {
        let mut coords = vec![int(0); n + 1];
        coords[0] = rat(1, 2);
        coords[k] = rat(1, 2);
        pts.push(BaryPoint::new(coords).unwrap());
    }
    let eps = rat(1, 1000);
    let c = center_value(n);
    for k in 0..=n {
        let mut near = vec![c.clone(); n + 1];
        near[k] = &c - &eps;
        near[(k + 1) % (n + 1)] = &c + &eps;
        pts.push(BaryPoint::new(near).unwrap());
    }
    let mut tied = vec![rat(1, 2 * np1); n + 1];
    tied[n] = int(1) - rat(n as i64, 2 * np1);
    pts.push(BaryPoint::new(tied).unwrap());
    let mut lows = vec![rat(1, 10 * np1); n + 1];
    lows[0] = int(0);
    let rest: Rational = lows.iter().take(n).sum();
    lows[n] = int(1) - rest;
    pts.push(BaryPoint::new(lows).unwrap());
    pts.dedup();
    pts
}

/// Canonical grid plus [`adversarial_points`].
pub fn comfort_grid(n: usize, d: u64, seed: u64) -> Vec<BaryPoint> {
    let mut g = canonical_grid(n, d, seed);
    for x in adversarial_points(n) {
        if !g.contains(&x) {
            g.push(x);
        }
    }
    g
}

/// Lattice points of `BOU_n` with denominator `d`, ties allowed, at most `cap`.
pub fn boundary_lattice(n: usize, d: u64, cap: usize, seed: u64) -> Vec<BaryPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xb0b0);
    let mut set = BTreeSet::new();
    for k in 0..=n {
        set.insert(vertex(n, k));
    }
    let mut attempts = 0;
    while set.len() < cap && attempts < 50 * cap {
        attempts += 1;
        let mut parts = random_composition(&mut rng, d, n + 1);
        let zero_at = rng.gen_range(0..=n);
        let moved = parts[zero_at];
        parts[zero_at] = 0;
        parts[(zero_at + 1) % (n + 1)] += moved;
        set.insert(composition_to_point(&parts, d));
    }
    set.into_iter().collect()
}

/// Points of Δ_n with at least two zero coordinates, at most `cap`.
pub fn multi_zero_samples(n: usize, d: u64, cap: usize, seed: u64) -> Vec<BaryPoint> {
    boundary_lattice(n, d, 4 * cap, seed)
        .into_iter()
        .filter(|x| x.coords().iter().filter(|c| c == &&int(0)).count() >= 2)
        .take(cap)
        .collect()
}

/// `count` points of `♣_{n,α}`: a random coordinate is set to `α` and the rest
/// is a random composition of `1 − α` with denominator `d`.
pub fn cross_samples(n: usize, alpha: &Rational, d: u64, count: usize, seed: u64) -> Vec<BaryPoint> {
    assert!(n > 0, "Δ_0 has a single point");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xc0ffee);
    let rest = int(1) - alpha;
    let mut set = BTreeSet::new();
    let mut attempts = 0;
    while set.len() < count && attempts < 50 * count {
        attempts += 1;
        let parts = random_composition(&mut rng, d, n);
        let j = rng.gen_range(0..=n);
        let mut coords: Vec<Rational> = parts.iter().map(|&p| &rest * rat(p as i64, d as i64)).collect();
        coords.insert(j, alpha.clone());
        let x = BaryPoint::new(coords).expect("coordinates sum to one");
        debug_assert!(classify(&x, &Region::Cross(alpha.clone())));
        set.insert(x);
    }
    set.into_iter().collect()
}

/// A seeded random increasing homeomorphism of `[0, hi]` fixing both ends,
/// with up to four interior breakpoints.
pub fn random_plmap(hi: &Rational, seed: u64) -> PLMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5151);
    let k = rng.gen_range(1..=4usize);
    let grid = 97i64;
    let mut xs: BTreeSet<i64> = BTreeSet::new();
    let mut ys: BTreeSet<i64> = BTreeSet::new();
    while xs.len() < k {
        xs.insert(rng.gen_range(1..grid));
    }
    while ys.len() < k {
        ys.insert(rng.gen_range(1..grid));
    }
    let mut pts = vec![(int(0), int(0))];
    for (x, y) in xs.iter().zip(&ys) {
        pts.push((hi * rat(*x, grid), hi * rat(*y, grid)));
    }
    pts.push((hi.clone(), hi.clone()));
    PLMap::polygon(pts, &int(0), hi).expect("sorted breakpoints form a polygon")
}
