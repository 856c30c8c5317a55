//! Exact-arithmetic generalized simplicial boundary operators.
//!
//! The classical boundary of a singular simplex sums its faces with
//! alternating signs. Here each face is taken at `L+1` parallel positions
//! `v = i/((L+1)(n+1))`, weighted by a coefficient tuple `(m_0,…,m_L)` and
//! precomposed with a homeomorphism `Θ_{L,n−1,i}` chosen so that `∂∘∂ = 0`
//! still holds. Everything is computed with exact rationals, so the
//! commutation identities behind `∂∘∂ = 0` are checked with zero tolerance.
//!
//! The crate is organized bottom-up:
//!
//! * [`geometry`]: points of Δ_n, the center, crosses, layers and projections.
//! * [`pl1d`]: increasing piecewise-linear maps of intervals.
//! * [`comfort`]: permutation-respecting, order-keeping maps of Δ_n.
//! * [`theta`]: face maps and the `Θ` family for `L ∈ {0,1}`.
//! * [`chain`]: chains, the boundary operator and its identity checks.
//! * [`homology_point`]: the homology of a point.
//! * [`sampling`]: the deterministic sample grids used by every check.
//!
//! ```
//! use genbound::geometry::BaryPoint;
//! use genbound::theta::ThetaFamily;
//!
//! let family = ThetaFamily::new(2);
//! let x: BaryPoint = "[0,1/6,5/6]".parse()?;
//! assert_eq!(family.eval(1, 1, &x)?.to_string(), "[0,1/7,6/7]");
//! # Ok::<(), genbound::Error>(())
//! ```

pub mod chain;
pub mod comfort;
pub mod error;
pub mod geometry;
pub mod homology_point;
pub mod pl1d;
pub mod sampling;
pub mod theta;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/simplex.md")]
    mod simplex {}
    #[doc = include_str!("../../../book/src/polygons.md")]
    mod polygons {}
    #[doc = include_str!("../../../book/src/comfort.md")]
    mod comfort {}
    #[doc = include_str!("../../../book/src/theta.md")]
    mod theta {}
    #[doc = include_str!("../../../book/src/chains.md")]
    mod chains {}
    #[doc = include_str!("../../../book/src/point-homology.md")]
    mod point_homology {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
