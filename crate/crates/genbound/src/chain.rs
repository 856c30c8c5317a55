//! Formal chains of singular simplices, the generalized boundary operator and
//! the exact checks of its two defining identities.
//!
//! With a coefficient tuple `m = (m_0,…,m_L)` the boundary of an n-simplex `T` is
//! `∂_n(T) = Σ_j (−1)^j Σ_i m_i [⟨T⟩_{L,n,i,j} ∘ Θ_{L,n−1,i}]`. The identity
//! `∂∘∂ = 0` rests on the commutation relations checked by [`check_equation`];
//! [`check_boundary_squared`] verifies the cancellation term by term through the
//! explicit pairing `(j,p,i,k) ↦ (p+1,j,k,i)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{center, BaryPoint};
use crate::sampling::Grid;
use crate::theta::{face_delete, face_insert, FaceMap, ThetaFamily, ThetaKey};

/// The coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingSpec {
    Integers,
    /// `Z/mZ` with `m ≥ 1`.
    IntegersMod(BigInt),
}

impl RingSpec {
    /// Canonical representative of `x`.
    pub fn reduce(&self, x: BigInt) -> BigInt {
        match self {
            RingSpec::Integers => x,
            RingSpec::IntegersMod(m) => x.mod_floor(m),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => f.write_str("Z"),
            RingSpec::IntegersMod(m) => write!(f, "Z/{m}"),
        }
    }
}

/// The tuple `(m_0,…,m_L)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientTuple {
    ring: RingSpec,
    m: Vec<BigInt>,
}

impl CoefficientTuple {
    pub fn new(ring: RingSpec, m: Vec<BigInt>) -> Result<CoefficientTuple> {
        if m.is_empty() {
            return Err(Error::CoefficientLength { expected: 1, found: 0 });
        }
        let m = m.into_iter().map(|x| ring.reduce(x)).collect();
        Ok(CoefficientTuple { ring, m })
    }

    /// Integer coefficients, e.g. `from_ints(&[9, 4])`.
    pub fn from_ints(m: &[i64]) -> CoefficientTuple {
        CoefficientTuple::new(RingSpec::Integers, m.iter().map(|&x| BigInt::from(x)).collect())
            .expect("non-empty tuple")
    }

    /// `L`, one less than the length.
    pub fn l(&self) -> usize {
        self.m.len() - 1
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn values(&self) -> &[BigInt] {
        &self.m
    }

    /// The values as strings, for reports.
    pub fn labels(&self) -> Vec<String> {
        self.m.iter().map(|x| x.to_string()).collect()
    }
}

/// A building block of a singular simplex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Primitive {
    FaceInsert(FaceMap),
    Theta(ThetaKey),
    /// Only `i = 0` carries an exact inverse.
    ThetaInverse(ThetaKey),
    FaceDelete(FaceMap),
}

impl Primitive {
    fn dims(&self) -> (usize, usize) {
        match self {
            Primitive::FaceInsert(f) => (f.n - 1, f.n),
            Primitive::FaceDelete(f) => (f.n, f.n - 1),
            Primitive::Theta(k) | Primitive::ThetaInverse(k) => (k.n, k.n),
        }
    }

    fn apply(&self, family: &ThetaFamily, x: &BaryPoint) -> Result<BaryPoint> {
        match self {
            Primitive::FaceInsert(f) => face_insert(f, x),
            Primitive::FaceDelete(f) => face_delete(f, x),
            Primitive::Theta(k) => family.get(k)?.eval(x),
            Primitive::ThetaInverse(k) => family.get(k)?.eval_inverse(x),
        }
    }
}

impl fmt::Display for Primitive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Primitive::FaceInsert(k) => write!(f, "{k}"),
            Primitive::FaceDelete(k) => write!(f, "{k}^-1"),
            Primitive::Theta(k) => write!(f, "{k}"),
            Primitive::ThetaInverse(k) => write!(f, "{k}^-1"),
        }
    }
}

/// The space a singular simplex maps into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Target {
    /// The one-point space; every simplex into it is the constant map.
    Point,
    /// Δ_N, with the identity as base map.
    Simplex(usize),
}

/// A singular simplex `base ∘ p_1 ∘ … ∘ p_k: Δ_{domain_dim} → target`.
///
/// The primitives are stored outermost first, so `p_k` acts first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SingularTerm {
    target: Target,
    domain_dim: usize,
    prims: Vec<Primitive>,
}

impl SingularTerm {
    /// `id(Δ_n)`.
    pub fn identity(n: usize) -> SingularTerm {
        SingularTerm {
            target: Target::Simplex(n),
            domain_dim: n,
            prims: Vec::new(),
        }
    }

    /// The unique simplex `Δ_n → {p}`.
    pub fn point(n: usize) -> SingularTerm {
        SingularTerm {
            target: Target::Point,
            domain_dim: n,
            prims: Vec::new(),
        }
    }

    /// `id(Δ_N) ∘ prims`, checking that consecutive dimensions match.
    pub fn composite(target_dim: usize, prims: Vec<Primitive>) -> Result<SingularTerm> {
        let mut dim = target_dim;
        for p in &prims {
            let (from, to) = p.dims();
            if to != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: to,
                });
            }
            if let Primitive::ThetaInverse(k) = p {
                if k.i != 0 {
                    return Err(Error::NoInverse(k.to_string()));
                }
            }
            dim = from;
        }
        Ok(SingularTerm {
            target: Target::Simplex(target_dim),
            domain_dim: dim,
            prims,
        })
    }

    pub fn target(&self) -> Target {
        self.target
    }

    pub fn domain_dim(&self) -> usize {
        self.domain_dim
    }

    pub fn primitives(&self) -> &[Primitive] {
        &self.prims
    }

    /// `T ∘ ⟨id⟩_{L,n,i,j} ∘ Θ_{L,n−1,i}`, the `(j,i)` face of this simplex.
    pub fn face(&self, l: usize, i: usize, j: usize) -> Result<SingularTerm> {
        let n = self.domain_dim;
        let face = FaceMap::new(l, n, i, j)?;
        let key = ThetaKey::new(l, n - 1, i)?;
        Ok(match self.target {
            Target::Point => SingularTerm::point(n - 1),
            Target::Simplex(_) => {
                let mut prims = self.prims.clone();
                prims.push(Primitive::FaceInsert(face));
                prims.push(Primitive::Theta(key));
                SingularTerm {
                    target: self.target,
                    domain_dim: n - 1,
                    prims,
                }
            }
        })
    }

    /// Evaluates the simplex at `x ∈ Δ_{domain_dim}`.
    ///
    /// Simplices into the point return the only point of Δ_0.
    pub fn eval(&self, family: &ThetaFamily, x: &BaryPoint) -> Result<BaryPoint> {
        if x.dim() != self.domain_dim {
            return Err(Error::DimensionMismatch {
                expected: self.domain_dim,
                found: x.dim(),
            });
        }
        if self.target == Target::Point {
            return Ok(center(0));
        }
        let mut y = x.clone();
        for p in self.prims.iter().rev() {
            y = p.apply(family, &y)?;
        }
        Ok(y)
    }
}

impl fmt::Display for SingularTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.target {
            Target::Point => write!(f, "const(Δ_{} -> p)", self.domain_dim),
            Target::Simplex(n) => {
                write!(f, "id(Δ_{n})")?;
                for p in &self.prims {
                    write!(f, " ∘ {p}")?;
                }
                Ok(())
            }
        }
    }
}

/// A finite formal combination of simplices of one dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    ring: RingSpec,
    dim: usize,
    terms: BTreeMap<SingularTerm, BigInt>,
}

impl Chain {
    pub fn zero(ring: RingSpec, dim: usize) -> Chain {
        Chain {
            ring,
            dim,
            terms: BTreeMap::new(),
        }
    }

    /// `coeff · term`.
    pub fn from_term(ring: RingSpec, term: SingularTerm, coeff: BigInt) -> Chain {
        let mut c = Chain::zero(ring, term.domain_dim);
        c.push(term, coeff);
        c
    }

    fn push(&mut self, term: SingularTerm, coeff: BigInt) {
        let entry = self.terms.entry(term).or_insert_with(BigInt::zero);
        *entry += coeff;
        let reduced = self.ring.reduce(std::mem::take(entry));
        *entry = reduced;
        self.terms.retain(|_, v| !v.is_zero());
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of `term`, zero when absent.
    pub fn coefficient(&self, term: &SingularTerm) -> BigInt {
        self.terms.get(term).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SingularTerm, &BigInt)> {
        self.terms.iter()
    }
}

/// `a + b`.
pub fn chain_add(a: &Chain, b: &Chain) -> Result<Chain> {
    if a.ring != b.ring || a.dim != b.dim {
        return Err(Error::ChainMismatch);
    }
    let mut out = a.clone();
    for (t, c) in &b.terms {
        out.push(t.clone(), c.clone());
    }
    Ok(out)
}

/// `r · c`.
pub fn chain_scale(c: &Chain, r: &BigInt) -> Chain {
    let mut out = Chain::zero(c.ring.clone(), c.dim);
    for (t, v) in &c.terms {
        out.push(t.clone(), v * r);
    }
    out
}

/// One summand of a boundary before like terms are collected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    /// Position of the originating term in the input chain's term order.
    pub source: usize,
    pub j: usize,
    pub i: usize,
    pub coeff: BigInt,
    pub term: SingularTerm,
}

fn sign(j: usize) -> BigInt {
    if j.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn check_tuple(c: &Chain, m: &CoefficientTuple) -> Result<()> {
    if m.l() > 1 {
        return Err(Error::UnsupportedL(m.l()));
    }
    if &c.ring != m.ring() {
        return Err(Error::ChainMismatch);
    }
    Ok(())
}

/// All `(n+1)(L+1)` summands per term of `∂_n(c)`, with coefficient
/// `(−1)^j · m_i · coeff(T)`. Empty for `n = 0`.
pub fn boundary_summands(c: &Chain, m: &CoefficientTuple) -> Result<Vec<Summand>> {
    check_tuple(c, m)?;
    let n = c.dim;
    let mut out = Vec::new();
    if n == 0 {
        return Ok(out);
    }
    let l = m.l();
    for (source, (term, coeff)) in c.terms.iter().enumerate() {
        for j in 0..=n {
            for (i, mi) in m.values().iter().enumerate() {
                out.push(Summand {
                    source,
                    j,
                    i,
                    coeff: c.ring.reduce(sign(j) * mi * coeff),
                    term: term.face(l, i, j)?,
                });
            }
        }
    }
    Ok(out)
}

/// `∂_n(c)` with like terms collected. For `n = 0` this is the empty chain,
/// recorded with dimension 0.
pub fn boundary(c: &Chain, m: &CoefficientTuple) -> Result<Chain> {
    let mut out = Chain::zero(c.ring.clone(), c.dim.saturating_sub(1));
    for s in boundary_summands(c, m)? {
        out.push(s.term, s.coeff);
    }
    Ok(out)
}

/// Pass or fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

/// Parameters echoed in a report.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Parameters {
    pub n: usize,
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
}

/// Description of the sample grid in a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridInfo {
    pub denominator: u64,
    pub size: usize,
    pub seed: u64,
}

impl From<&Grid> for GridInfo {
    fn from(g: &Grid) -> Self {
        GridInfo {
            denominator: g.denominator,
            size: g.points.len(),
            seed: g.seed,
        }
    }
}

/// A sample at which two maps differ, or at which evaluation failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub label: String,
    pub point: String,
    pub lhs: String,
    pub rhs: String,
}

/// Disclosure attached to every report.
pub const CERTIFICATE_NOTE: &str =
    "exact agreement at every sampled grid point; this certifies the identity on the samples only";

/// Outcome of [`check_equation`] or [`check_boundary_squared`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub check: String,
    pub parameters: Parameters,
    pub grid: GridInfo,
    pub verdict: Verdict,
    pub pairs_checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summands: Option<usize>,
    pub witnesses: Vec<Witness>,
    pub certificate: String,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }
}

fn show(r: &Result<BaryPoint>) -> String {
    match r {
        Ok(y) => y.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

/// Compares two terms at every grid point and records differences.
fn compare_on_grid(
    a: &SingularTerm,
    b: &SingularTerm,
    family: &ThetaFamily,
    grid: &Grid,
    label: &str,
    witnesses: &mut Vec<Witness>,
) -> usize {
    let mut checked = 0;
    for x in &grid.points {
        let (ya, yb) = (a.eval(family, x), b.eval(family, x));
        checked += 1;
        match (&ya, &yb) {
            (Ok(u), Ok(v)) if u == v => {}
            _ => witnesses.push(Witness {
                label: label.to_string(),
                point: x.to_string(),
                lhs: show(&ya),
                rhs: show(&yb),
            }),
        }
    }
    checked
}

/// Whether two simplices are the same map: identical structure, or exact
/// agreement at every point of `grid`.
pub fn terms_agree(a: &SingularTerm, b: &SingularTerm, family: &ThetaFamily, grid: &Grid) -> bool {
    if a == b {
        return true;
    }
    if a.domain_dim != b.domain_dim || a.target != b.target {
        return false;
    }
    let mut w = Vec::new();
    compare_on_grid(a, b, family, grid, "", &mut w);
    w.is_empty()
}

fn check_grid_dim(grid: &Grid, n: usize) -> Result<()> {
    if grid.n != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: grid.n,
        });
    }
    Ok(())
}

/// The two sides of `EQUATION_{n,j≤p,i,k}` as simplices `Δ_{n−1} → Δ_{n+1}`.
pub fn equation_sides(
    l: usize,
    n: usize,
    j: usize,
    p: usize,
    i: usize,
    k: usize,
) -> Result<(SingularTerm, SingularTerm)> {
    if n == 0 {
        return Err(Error::IndexOutOfRange {
            name: "n",
            value: 0,
            max: 0,
        });
    }
    if p > n {
        return Err(Error::IndexOutOfRange {
            name: "p",
            value: p,
            max: n,
        });
    }
    if j > p {
        return Err(Error::IndexOutOfRange {
            name: "j",
            value: j,
            max: p,
        });
    }
    let lhs = SingularTerm::identity(n + 1).face(l, i, j)?.face(l, k, p)?;
    let rhs = SingularTerm::identity(n + 1).face(l, k, p + 1)?.face(l, i, j)?;
    Ok((lhs, rhs))
}

/// Checks `⟨id⟩_{n+1,i,j}∘Θ_{n,i}∘⟨id⟩_{n,k,p}∘Θ_{n−1,k} = ⟨id⟩_{n+1,k,p+1}∘Θ_{n,k}∘⟨id⟩_{n,i,j}∘Θ_{n−1,i}`
/// exactly at every point of `grid ⊂ Δ_{n−1}`.
pub fn check_equation(
    family: &ThetaFamily,
    l: usize,
    n: usize,
    (j, p): (usize, usize),
    (i, k): (usize, usize),
    grid: &Grid,
) -> Result<Report> {
    let (lhs, rhs) = equation_sides(l, n, j, p, i, k)?;
    check_grid_dim(grid, n - 1)?;
    let mut witnesses = Vec::new();
    let label = format!("EQUATION n={n} j={j} p={p} i={i} k={k}");
    let checked = compare_on_grid(&lhs, &rhs, family, grid, &label, &mut witnesses);
    Ok(Report {
        check: "equation".into(),
        parameters: Parameters {
            n,
            l,
            m: None,
            j: Some(j),
            p: Some(p),
            i: Some(i),
            k: Some(k),
        },
        grid: grid.into(),
        verdict: Verdict::from_bool(witnesses.is_empty()),
        pairs_checked: checked,
        summands: None,
        witnesses,
        certificate: CERTIFICATE_NOTE.into(),
    })
}

/// Index of a summand of `∂_n(∂_{n+1}(c))`: source term, outer `(j,i)`,
/// inner `(p,k)`.
type SummandKey = (usize, usize, usize, usize, usize);

fn show_term(t: &Option<SingularTerm>) -> String {
    t.as_ref()
        .map_or_else(|| "map from the empty simplex".into(), |t| t.to_string())
}

/// Verifies `∂_n(∂_{n+1}(c)) = 0` term by term.
///
/// The `(n+1)(n+2)(L+1)²` summands per source term are indexed by
/// `(j,p,i,k)`. Each summand with `j ≤ p` is paired with `(p+1,j,k,i)`; the
/// pair must carry opposite coefficients and agree as maps on `grid ⊂ Δ_{n−1}`.
/// The verdict is pass when every summand is consumed by exactly one
/// certified pair. For `n = 0` the inner faces have empty domain, so only the
/// coefficient cancellation is checked.
pub fn check_boundary_squared(family: &ThetaFamily, c: &Chain, m: &CoefficientTuple, grid: &Grid) -> Result<Report> {
    if c.dim == 0 {
        return Err(Error::IndexOutOfRange {
            name: "dim",
            value: 0,
            max: 0,
        });
    }
    let n = c.dim - 1;
    let mut summands: BTreeMap<SummandKey, (BigInt, Option<SingularTerm>)> = BTreeMap::new();
    let outer = boundary_summands(c, m)?;
    if n > 0 {
        check_grid_dim(grid, n - 1)?;
    }
    for s in &outer {
        if n == 0 {
            // Inner faces of a 0-simplex have the empty simplex as domain, so
            // only their coefficients carry information.
            for (k, mk) in m.values().iter().enumerate() {
                let coeff = c.ring.reduce(&s.coeff * mk);
                summands.insert((s.source, s.j, 0, s.i, k), (coeff, None));
            }
            continue;
        }
        let single = Chain::from_term(c.ring.clone(), s.term.clone(), BigInt::one());
        for t in boundary_summands(&single, m)? {
            let coeff = c.ring.reduce(&s.coeff * &t.coeff);
            summands.insert((s.source, s.j, t.j, s.i, t.i), (coeff, Some(t.term)));
        }
    }
    let total = summands.len();
    let mut consumed: BTreeSet<SummandKey> = BTreeSet::new();
    let mut witnesses = Vec::new();
    let mut pairs = 0;
    for (key, (coeff, term)) in &summands {
        let (src, j, p, i, k) = *key;
        if j > p {
            continue;
        }
        let partner_key = (src, p + 1, j, k, i);
        let label = format!("pair (j={j},p={p},i={i},k={k}) with (j={},p={j},i={k},k={i})", p + 1);
        let Some((pcoeff, pterm)) = summands.get(&partner_key) else {
            witnesses.push(Witness {
                label,
                point: String::new(),
                lhs: show_term(term),
                rhs: "missing partner".into(),
            });
            continue;
        };
        if !consumed.insert(*key) || !consumed.insert(partner_key) {
            witnesses.push(Witness {
                label,
                point: String::new(),
                lhs: show_term(term),
                rhs: "summand consumed twice".into(),
            });
            continue;
        }
        pairs += 1;
        if !c.ring.reduce(coeff + pcoeff).is_zero() {
            witnesses.push(Witness {
                label: label.clone(),
                point: String::new(),
                lhs: coeff.to_string(),
                rhs: pcoeff.to_string(),
            });
        }
        if let (Some(term), Some(pterm)) = (term, pterm) {
            if term != pterm {
                compare_on_grid(term, pterm, family, grid, &label, &mut witnesses);
            }
        }
    }
    if consumed.len() != total {
        witnesses.push(Witness {
            label: "unconsumed summands".into(),
            point: String::new(),
            lhs: (total - consumed.len()).to_string(),
            rhs: "0".into(),
        });
    }
    Ok(Report {
        check: "boundary_squared".into(),
        parameters: Parameters {
            n,
            l: m.l(),
            m: Some(m.labels()),
            ..Default::default()
        },
        grid: grid.into(),
        verdict: Verdict::from_bool(witnesses.is_empty()),
        pairs_checked: pairs,
        summands: Some(total),
        witnesses,
        certificate: CERTIFICATE_NOTE.into(),
    })
}
