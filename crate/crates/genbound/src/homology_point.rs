//! Homology of the one-point space for the generalized boundary operator.
//!
//! Every degree of the chain complex of a point is free of rank one, spanned
//! by the constant simplex. With `σ = Σ m_i` the boundary `∂_n` is zero for odd
//! `n` and for `n = 0`, and multiplication by `σ` for even `n ≠ 0`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::chain::{CoefficientTuple, RingSpec};

/// `σ = Σ_i m_i`, reduced in the coefficient ring.
pub fn sigma(m: &CoefficientTuple) -> BigInt {
    m.ring().reduce(m.values().iter().sum())
}

/// A linear map `Z → Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScalarMap {
    Zero,
    MultiplyBy(BigInt),
}

impl ScalarMap {
    /// The multiplier, zero for [`ScalarMap::Zero`].
    pub fn factor(&self) -> BigInt {
        match self {
            ScalarMap::Zero => BigInt::zero(),
            ScalarMap::MultiplyBy(s) => s.clone(),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ScalarMap) -> ScalarMap {
        let f = self.factor() * other.factor();
        if f.is_zero() {
            ScalarMap::Zero
        } else {
            ScalarMap::MultiplyBy(f)
        }
    }
}

impl fmt::Display for ScalarMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarMap::Zero => f.write_str("0"),
            ScalarMap::MultiplyBy(s) => write!(f, "x{s}"),
        }
    }
}

/// `∂_n` on the point complex: zero for odd `n` and `n = 0`, `×σ` otherwise.
///
/// The tuple is expected to have integer coefficients.
pub fn point_boundary_map(n: usize, m: &CoefficientTuple) -> ScalarMap {
    let s = sigma(m);
    if n == 0 || n % 2 == 1 || s.is_zero() {
        ScalarMap::Zero
    } else {
        ScalarMap::MultiplyBy(s)
    }
}

/// A finitely generated abelian group of the kinds that occur here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleDescription {
    FreeRank1,
    /// `Z/σZ` with `|σ| ≥ 2`.
    Cyclic(BigInt),
    Zero,
}

impl ModuleDescription {
    /// `Z/sZ`, normalized: `s = 0` gives `Z` and `s = ±1` gives `0`.
    pub fn cyclic(s: &BigInt) -> ModuleDescription {
        let s = s.abs();
        if s.is_zero() {
            ModuleDescription::FreeRank1
        } else if s.is_one() {
            ModuleDescription::Zero
        } else {
            ModuleDescription::Cyclic(s)
        }
    }
}

impl fmt::Display for ModuleDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleDescription::FreeRank1 => f.write_str("Z"),
            ModuleDescription::Cyclic(s) => write!(f, "Z/{s}"),
            ModuleDescription::Zero => f.write_str("0"),
        }
    }
}

/// `H_n` from the closed formula: `Z` in degree 0, `Z/σ` in odd degrees, `0`
/// in even positive degrees; `Z` everywhere when `σ = 0`.
pub fn homology_formula(n: usize, m: &CoefficientTuple) -> ModuleDescription {
    let s = sigma(m);
    if n == 0 || s.is_zero() {
        ModuleDescription::FreeRank1
    } else if n % 2 == 1 {
        ModuleDescription::cyclic(&s)
    } else {
        ModuleDescription::Zero
    }
}

/// `ker ∂_n / im ∂_{n+1}` for the rank-one complex.
pub fn homology_from_maps(n: usize, m: &CoefficientTuple) -> ModuleDescription {
    let out = point_boundary_map(n, m).factor();
    if !out.is_zero() {
        return ModuleDescription::Zero;
    }
    ModuleDescription::cyclic(&point_boundary_map(n + 1, m).factor())
}

/// `H_n` of the point, checked against the kernel/image computation.
///
/// # Panics
/// Panics if the two computations disagree, or if the ring is not `Z`.
pub fn point_homology(n: usize, m: &CoefficientTuple) -> ModuleDescription {
    assert_eq!(m.ring(), &RingSpec::Integers, "point homology is computed over Z");
    let h = homology_formula(n, m);
    assert_eq!(h, homology_from_maps(n, m), "closed formula and kernel/image disagree");
    h
}

/// One line of the homology table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyRow {
    pub n: usize,
    pub boundary: ScalarMap,
    pub homology: ModuleDescription,
}

impl fmt::Display for HomologyRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, {}, {}", self.n, self.boundary, self.homology)
    }
}

/// Rows `n, ∂_n, H_n` for `n` in `range`.
pub fn homology_table(m: &CoefficientTuple, range: std::ops::RangeInclusive<usize>) -> Vec<HomologyRow> {
    range
        .map(|n| HomologyRow {
            n,
            boundary: point_boundary_map(n, m),
            homology: point_homology(n, m),
        })
        .collect()
}
