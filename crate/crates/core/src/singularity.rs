//! Local classification of A_n singularities from a parametrization and the
//! per-curve certificate.
//!
//! Parameters that are roots of a polynomial `q` over the curve field are
//! handled in the algebra `E[theta]/(q)`. If a computation meets a zero divisor
//! there, `q` is split along the returned factor and each part is redone.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::curve::{implicitize_with_map_degree, Mobius, Parameter, ParameterLocation, ProjectivePoint, RationalPlaneCurve};
use crate::error::{Error, Result};
use crate::numberfield::{FieldElement, LayerKind, NumberField, Rational};
use crate::polynomial::{TriPoly, UniPoly};
use crate::series::TruncatedSeries;

pub const DEFAULT_TRUNCATION: usize = 42;
const MAX_DOUBLINGS: u32 = 3;

/// The singularity type `A_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct SingularityType(u32);

impl SingularityType {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parse("A_0 is not a singularity".into()));
        }
        Ok(SingularityType(n))
    }

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn milnor(self) -> u32 {
        self.0
    }

    pub fn delta(self) -> u32 {
        self.0.div_ceil(2)
    }

    pub fn branches(self) -> u32 {
        if self.0.is_multiple_of(2) {
            1
        } else {
            2
        }
    }
}

impl fmt::Display for SingularityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A_{}", self.0)
    }
}

impl std::str::FromStr for SingularityType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let n = s
            .trim()
            .strip_prefix("A_")
            .or_else(|| s.trim().strip_prefix('A'))
            .and_then(|r| r.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad singularity type {s:?}")))?;
        SingularityType::new(n)
    }
}

impl TryFrom<String> for SingularityType {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<SingularityType> for String {
    fn from(t: SingularityType) -> String {
        t.to_string()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularityClaim {
    pub kind: SingularityType,
    pub location: ParameterLocation,
}

impl SingularityClaim {
    /// Number of singular points this claim stands for.
    pub fn points(&self) -> usize {
        if self.kind.branches() == 2 {
            1
        } else {
            self.location.count()
        }
    }
}

/// Run `f` on a ladder of truncations: cheap ones below `n0` first, then
/// `n0` and up to [`MAX_DOUBLINGS`] doublings of it. An answer is only
/// returned when no order query ran into the truncation.
fn retry<T>(n0: usize, f: impl Fn(usize) -> Result<T>) -> Result<T> {
    let n0 = n0.max(4);
    let mut n = n0.min(6);
    while n < n0 {
        match f(n) {
            Err(Error::TruncationExhausted(_)) => n = (2 * n).min(n0),
            r => return r,
        }
    }
    for _ in 0..MAX_DOUBLINGS {
        match f(n) {
            Err(Error::TruncationExhausted(_)) => n *= 2,
            r => return r,
        }
    }
    f(n)
}

fn param_field(c: &RationalPlaneCurve, params: &[&Parameter]) -> NumberField {
    for p in params {
        if let Parameter::Finite(v) = p {
            return v.field().clone();
        }
    }
    c.field().clone()
}

/// Expansions of the components around a parameter: `comp(t0 + s)`, or
/// `s^n comp(1/s)` at infinity. The curve must already be lifted.
fn local_components(c: &RationalPlaneCurve, t0: &Parameter, n: usize) -> [TruncatedSeries; 3] {
    c.components().clone().map(|p| {
        let q = match t0 {
            Parameter::Finite(v) => p.taylor_shift(v),
            Parameter::Infinity => p.reverse(c.declared_degree()),
        };
        TruncatedSeries::from_poly(&q, n)
    })
}

/// First of the coordinates `z, y, x` that is a unit at the point.
fn chart(p: &ProjectivePoint) -> Result<usize> {
    for w in [2, 1, 0] {
        if !p.coords[w].zero_test()? {
            return Ok(w);
        }
    }
    Err(Error::AllComponentsVanish)
}

/// Affine coordinates centred at the image point, in chart `w`.
fn affine_series(comps: &[TruncatedSeries; 3], w: usize) -> Result<[TruncatedSeries; 2]> {
    let inv = comps[w].invert_unit()?;
    let others: Vec<usize> = (0..3).filter(|&j| j != w).collect();
    let f = |j: usize| {
        let s = &comps[j] * &inv;
        let mut coeffs = s.coeffs().to_vec();
        coeffs[0] = FieldElement::zero(s.field());
        TruncatedSeries::new(s.field(), coeffs, s.truncation())
    };
    Ok([f(others[0]), f(others[1])])
}

fn lifted(c: &RationalPlaneCurve, field: &NumberField) -> Result<RationalPlaneCurve> {
    if c.field() == field {
        Ok(c.clone())
    } else {
        c.lift_to(field)
    }
}

/// Type `A_2k` of the one-branch double point at `t0`.
pub fn branch_type_at(c: &RationalPlaneCurve, t0: &Parameter) -> Result<SingularityType> {
    branch_type_at_with(c, t0, DEFAULT_TRUNCATION)
}

pub fn branch_type_at_with(c: &RationalPlaneCurve, t0: &Parameter, truncation: usize) -> Result<SingularityType> {
    let cl = lifted(c, &param_field(c, &[t0]))?;
    let p = cl.evaluate(t0)?;
    let w = chart(&p)?;
    retry(truncation, |n| {
        let [u, v] = affine_series(&local_components(&cl, t0, n), w)?;
        even_index(u, v, n)
    })
}

fn even_index(u: TruncatedSeries, v: TruncatedSeries, n: usize) -> Result<SingularityType> {
    let (ou, ov) = (u.order()?, v.order()?);
    let m = match (ou, ov) {
        (None, None) => return Err(Error::TruncationExhausted(n)),
        (Some(a), None) | (None, Some(a)) => a,
        (Some(a), Some(b)) => a.min(b),
    };
    if m == 1 {
        return Err(Error::SmoothBranch);
    }
    if m > 2 {
        return Err(Error::HighMultiplicity(m));
    }
    let (x, mut y) = if ou == Some(2) { (u, v) } else { (v, u) };
    let lead_x = x.coeff(2).clone();
    loop {
        let Some(o) = y.order()? else {
            return Err(Error::TruncationExhausted(n));
        };
        if o % 2 == 1 {
            return SingularityType::new(o as u32 - 1);
        }
        let k = (o / 2) as u32;
        let c = y.coeff(o).div(&lead_x.pow(k))?;
        y = &y - &x.pow(k).scale(&c);
    }
}

/// Type `A_{2i-1}` of the point where the branches at `t1` and `t2` meet,
/// `i` being their intersection multiplicity.
pub fn two_branch_type(c: &RationalPlaneCurve, t1: &Parameter, t2: &Parameter) -> Result<SingularityType> {
    two_branch_type_with(c, t1, t2, DEFAULT_TRUNCATION)
}

pub fn two_branch_type_with(
    c: &RationalPlaneCurve,
    t1: &Parameter,
    t2: &Parameter,
    truncation: usize,
) -> Result<SingularityType> {
    let cl = lifted(c, &param_field(c, &[t1, t2]))?;
    let p1 = cl.evaluate(t1)?;
    let p2 = cl.evaluate(t2)?;
    for v in p1.cross(&p2) {
        if !v.zero_test()? {
            return Err(Error::ImagesDiffer);
        }
    }
    let w = chart(&p1)?;
    retry(truncation, |n| {
        let b1 = affine_series(&local_components(&cl, t1, n), w)?;
        let b2 = affine_series(&local_components(&cl, t2, n), w)?;
        let o1 = [b1[0].order()?, b1[1].order()?];
        let o2 = [b2[0].order()?, b2[1].order()?];
        if !o1.contains(&Some(1)) || !o2.contains(&Some(1)) {
            if o1.iter().chain(o2.iter()).all(Option::is_none) {
                return Err(Error::TruncationExhausted(n));
            }
            return Err(Error::NonSmoothBranch);
        }
        // branch 2 as a graph over a coordinate with a simple zero on it
        let (xi, yi) = if o2[0] == Some(1) { (0, 1) } else { (1, 0) };
        let h = b2[yi].compose(&b2[xi].reversion()?)?;
        let diff = &b1[yi] - &h.compose(&b1[xi])?;
        match diff.order()? {
            Some(i) => SingularityType::new(2 * i as u32 - 1),
            None => Err(Error::TruncationExhausted(n)),
        }
    })
}

fn layer_names(f: &NumberField) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = Some(f);
    while let Some(k) = cur {
        if let Some(g) = k.generator_name() {
            out.push(g.to_string());
        }
        cur = k.base();
    }
    out
}

/// A generator name not yet used in the tower.
pub fn fresh_name(base: &NumberField, stem: &str) -> String {
    let used = layer_names(base);
    if !used.iter().any(|u| u == stem) {
        return stem.to_string();
    }
    (1..).map(|i| format!("{stem}{i}")).find(|n| !used.contains(n)).unwrap()
}

/// Evaluate `f` at a generic root of each factor of the squarefree `q`,
/// splitting `q` whenever the algebra `base[theta]/(q)` exposes a zero divisor.
/// Linear factors are handled over `base` with the explicit root.
pub fn split_roots<T>(
    base: &NumberField,
    q: &UniPoly,
    mut f: impl FnMut(&FieldElement, &UniPoly) -> Result<T>,
) -> Result<Vec<(UniPoly, T)>> {
    let name = fresh_name(base, "theta");
    let mut out = Vec::new();
    let mut stack = vec![q.monic()?];
    while let Some(q) = stack.pop() {
        let d = q.degree().ok_or(Error::ZeroPolynomial)?;
        if d == 0 {
            continue;
        }
        let theta = if d == 1 {
            -&q.coeffs()[0]
        } else {
            let l = NumberField::extension(base, &name, &q, LayerKind::Algebra)?;
            FieldElement::generator(&l)
        };
        match f(&theta, &q) {
            Ok(v) => out.push((q, v)),
            Err(Error::ZeroDivisor { generator, factor }) if generator == name => {
                let g = UniPoly::new(base, factor);
                if g.degree().unwrap_or(0) == 0 || g.degree() == Some(d) {
                    return Err(Error::Degenerate("trivial zero-divisor factor".into()));
                }
                let h = q.exact_div(&g)?;
                stack.push(g);
                stack.push(h);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// Branch types at all roots of `q`; each entry covers `deg(factor)` roots.
pub fn classify_roots(c: &RationalPlaneCurve, q: &UniPoly, truncation: usize) -> Result<Vec<(UniPoly, SingularityType)>> {
    split_roots(c.field(), q, |theta, _| branch_type_at_with(c, &Parameter::Finite(theta.clone()), truncation))
}

/// Type of the point joining the two roots of the quadratic `p`.
pub fn classify_pair_roots(c: &RationalPlaneCurve, p: &UniPoly, truncation: usize) -> Result<SingularityType> {
    if p.degree() != Some(2) {
        return Err(Error::WrongDegree { expected: 2, found: p.degree().unwrap_or(0) });
    }
    let base = c.field().clone();
    let parts = split_roots(&base, p, |theta, factor| {
        let other = if factor.degree() == Some(2) {
            // theta' = -theta - p1/p2
            let s = p.coeffs()[1].div(&p.coeffs()[2])?.lift_to(theta.field())?;
            &(-theta) - &s
        } else {
            -&p.exact_div(factor)?.monic()?.coeffs()[0]
        };
        two_branch_type_with(c, &Parameter::Finite(theta.clone()), &Parameter::Finite(other), truncation)
    })?;
    let first = parts[0].1;
    if parts.iter().any(|(_, t)| *t != first) {
        return Err(Error::Degenerate("the two roots disagree".into()));
    }
    Ok(first)
}

/// Computed types for one claim; each entry is a type with its point count.
pub fn classify_claim(c: &RationalPlaneCurve, claim: &SingularityClaim, truncation: usize) -> Result<Vec<(SingularityType, usize)>> {
    let two = claim.kind.branches() == 2;
    match (&claim.location, two) {
        (ParameterLocation::Pair(a, b), true) => Ok(vec![(two_branch_type_with(c, a, b, truncation)?, 1)]),
        (ParameterLocation::Roots(p), true) => Ok(vec![(classify_pair_roots(c, p, truncation)?, 1)]),
        (ParameterLocation::Finite(v), false) => Ok(vec![(branch_type_at_with(c, &Parameter::Finite(v.clone()), truncation)?, 1)]),
        (ParameterLocation::Infinity, false) => Ok(vec![(branch_type_at_with(c, &Parameter::Infinity, truncation)?, 1)]),
        (ParameterLocation::Roots(q) | ParameterLocation::DoubleRoots(q), false) => Ok(classify_roots(c, q, truncation)?
            .into_iter()
            .map(|(f, t)| (t, f.degree().unwrap_or(0)))
            .collect()),
        _ => Err(Error::Degenerate(format!("location {} does not fit {}", claim.location, claim.kind))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimVerdict {
    pub expected: SingularityType,
    pub location: String,
    pub computed: Vec<String>,
    pub points: Vec<String>,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub curve_id: u32,
    pub claims: Vec<ClaimVerdict>,
    pub implicit_degree: Option<u32>,
    pub map_degree: Option<u32>,
    pub distinct_points: bool,
    pub milnor_sum: u32,
    pub delta_sum: u32,
    pub pass: bool,
    pub failures: Vec<String>,
    pub elapsed_ms: u64,
}

#[derive(Clone, Copy, Debug)]
pub struct CertifyOptions {
    pub truncation: usize,
    pub check_implicit: bool,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { truncation: DEFAULT_TRUNCATION, check_implicit: true }
    }
}

/// Check every claim, the implicit degree, distinctness of the claimed
/// points and the sums `mu = 19`, `delta = 10`.
pub fn certify(id: u32, c: &RationalPlaneCurve, claims: &[SingularityClaim], opts: CertifyOptions) -> Certificate {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut verdicts = Vec::new();
    let (mut mu, mut delta) = (0, 0);
    for claim in claims {
        let points = c
            .evaluate_location(&claim.location)
            .map(|ps| ps.iter().map(ToString::to_string).collect())
            .unwrap_or_default();
        let (computed, ok, error) = match classify_claim(c, claim, opts.truncation) {
            Ok(parts) => {
                let count: usize = parts.iter().map(|(_, k)| k).sum();
                let ok = parts.iter().all(|(t, _)| *t == claim.kind) && count == claim.points();
                for (t, k) in &parts {
                    mu += t.milnor() * *k as u32;
                    delta += t.delta() * *k as u32;
                }
                let computed = parts.iter().map(|(t, k)| if *k == 1 { t.to_string() } else { format!("{k}{t}") }).collect();
                (computed, ok, None)
            }
            Err(e) => (Vec::new(), false, Some(e.to_string())),
        };
        if !ok {
            failures.push(format!("claim {} at {}: computed {:?}{}", claim.kind, claim.location, computed, error.as_ref().map(|e| format!(" ({e})")).unwrap_or_default()));
        }
        verdicts.push(ClaimVerdict {
            expected: claim.kind,
            location: claim.location.to_string(),
            computed,
            points,
            ok,
            error,
        });
    }
    let (implicit_degree, map_degree) = if opts.check_implicit {
        match implicitize_with_map_degree(c) {
            Ok((f, k)) => (f.total_degree(), Some(k)),
            Err(e) => {
                failures.push(format!("implicitization: {e}"));
                (None, None)
            }
        }
    } else {
        (None, None)
    };
    if opts.check_implicit && (implicit_degree != Some(6) || map_degree != Some(1)) {
        failures.push(format!("implicit degree {implicit_degree:?}, map degree {map_degree:?}"));
    }
    let distinct = match points_distinct(c, claims) {
        Ok(true) => true,
        Ok(false) => {
            failures.push("claimed singular points are not pairwise distinct".into());
            false
        }
        Err(e) => {
            failures.push(format!("distinctness: {e}"));
            false
        }
    };
    if mu != 19 {
        failures.push(format!("total Milnor number {mu}"));
    }
    if delta != 10 {
        failures.push(format!("total delta {delta}"));
    }
    Certificate {
        curve_id: id,
        claims: verdicts,
        implicit_degree,
        map_degree,
        distinct_points: distinct,
        milnor_sum: mu,
        delta_sum: delta,
        pass: failures.is_empty(),
        failures,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

enum Group {
    Single(Parameter),
    /// All roots of `q`; `distinct` says whether different roots give different points.
    Roots { q: UniPoly, distinct: bool },
}

fn groups(claims: &[SingularityClaim]) -> Vec<Group> {
    claims
        .iter()
        .map(|cl| match (&cl.location, cl.kind.branches() == 2) {
            (ParameterLocation::Finite(v), _) => Group::Single(Parameter::Finite(v.clone())),
            (ParameterLocation::Infinity, _) => Group::Single(Parameter::Infinity),
            (ParameterLocation::Pair(a, _), _) => Group::Single(a.clone()),
            (ParameterLocation::Roots(q) | ParameterLocation::DoubleRoots(q), two) => {
                Group::Roots { q: q.clone(), distinct: !two }
            }
        })
        .collect()
}

/// True iff the vector is nonzero at every component of the algebra, decided
/// by the norm of `v0 + l v1 + l^2 v2` for `2d + 1` values of `l`.
fn nowhere_zero(v: &[FieldElement; 3]) -> bool {
    let d = v[0].field().degree();
    (0..=2 * d as i64).any(|l| {
        let l = Rational::from_integer(l.into());
        let c = &(&v[0] + &v[1].scale(&l)) + &v[2].scale(&(&l * &l));
        !c.norm().is_zero()
    })
}

// Adjoin a root of `q` on top of `field`; returns the root.
fn adjoin_generic(field: &NumberField, q: &UniPoly) -> Result<FieldElement> {
    let q = q.lift_to(field)?;
    if q.degree() == Some(1) {
        return Ok(-&q.monic()?.coeffs()[0]);
    }
    let name = fresh_name(field, "r");
    let l = NumberField::extension(field, &name, &q, LayerKind::Algebra)?;
    Ok(FieldElement::generator(&l))
}

fn lift_param(p: &Parameter, field: &NumberField) -> Result<Parameter> {
    Ok(match p {
        Parameter::Infinity => Parameter::Infinity,
        Parameter::Finite(v) => Parameter::Finite(v.lift_to(field)?),
    })
}

/// Pairwise distinctness of all points named by the claims.
pub fn points_distinct(c: &RationalPlaneCurve, claims: &[SingularityClaim]) -> Result<bool> {
    let gs = groups(claims);
    let base = c.field().clone();
    for (i, g) in gs.iter().enumerate() {
        if let Group::Roots { q, distinct: true } = g {
            if q.degree().unwrap_or(0) >= 2 {
                let r1 = adjoin_generic(&base, q)?;
                let rest = q.lift_to(r1.field())?.exact_div(&UniPoly::new(r1.field(), vec![-&r1, FieldElement::one(r1.field())]))?;
                let r2 = adjoin_generic(r1.field(), &rest)?;
                let cl = c.lift_to(r2.field())?;
                let p1 = cl.evaluate(&Parameter::Finite(r1.lift_to(r2.field())?))?;
                let p2 = cl.evaluate(&Parameter::Finite(r2))?;
                if !nowhere_zero(&p1.cross(&p2)) {
                    return Ok(false);
                }
            }
        }
        for h in &gs[i + 1..] {
            let mut field = base.clone();
            let mut params = Vec::new();
            for g in [g, h] {
                match g {
                    Group::Single(p) => params.push(p.clone()),
                    Group::Roots { q, .. } => {
                        let r = adjoin_generic(&field, q)?;
                        field = r.field().clone();
                        params.push(Parameter::Finite(r));
                    }
                }
            }
            let field = params
                .iter()
                .filter_map(|p| match p {
                    Parameter::Finite(v) => Some(v.field().clone()),
                    Parameter::Infinity => None,
                })
                .max_by_key(NumberField::degree)
                .unwrap_or(base.clone());
            let cl = c.lift_to(&field)?;
            let p1 = cl.evaluate(&lift_param(&params[0], &field)?)?;
            let p2 = cl.evaluate(&lift_param(&params[1], &field)?)?;
            if !nowhere_zero(&p1.cross(&p2)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Singularities found without claims: the multiset of types, with the
/// parameter shift used to move infinity to a generic point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discovery {
    pub types: BTreeMap<SingularityType, usize>,
    pub shift: i64,
}

impl Discovery {
    pub fn milnor_sum(&self) -> u32 {
        self.types.iter().map(|(t, k)| t.milnor() * *k as u32).sum()
    }

    pub fn delta_sum(&self) -> u32 {
        self.types.iter().map(|(t, k)| t.delta() * *k as u32).sum()
    }
}

fn bivariate_cross(c: &RationalPlaneCurve) -> Result<[TriPoly; 3]> {
    // K(s, u) = (phi(s) x phi(u)) / (s - u) in the variables s = 0, u = 1
    let f = c.field();
    let s = c.components().clone().map(|p| TriPoly::from_uni(&p, 0));
    let u = c.components().clone().map(|p| TriPoly::from_uni(&p, 1));
    let diag = &TriPoly::var(f, 0) - &TriPoly::var(f, 1);
    let k = |i: usize, j: usize| (&(&s[i] * &u[j]) - &(&s[j] * &u[i])).exact_div(&diag);
    Ok([k(1, 2)?, k(2, 0)?, k(0, 1)?])
}

fn has_single_preimage(k: &[TriPoly; 3], c: &RationalPlaneCurve, t0: &FieldElement) -> Result<bool> {
    let ks: Vec<UniPoly> = k.iter().map(|p| p.substitute(1, t0).to_uni(0).unwrap()).collect();
    let mut g = UniPoly::zero(c.field());
    for p in &ks {
        if !p.is_zero() {
            g = if g.is_zero() { p.monic()? } else { g.gcd(p)? };
        }
    }
    if g.is_zero() || g.degree() != Some(0) {
        return Ok(false);
    }
    let p0 = c.evaluate(&Parameter::Finite(t0.clone()))?;
    let pinf = c.evaluate(&Parameter::Infinity)?;
    Ok(!p0.cross(&pinf).iter().all(FieldElement::is_zero))
}

/// Find every singular point of a curve with A_n singularities only.
///
/// Parameters are first moved by `t = shift + 1/u` so that infinity maps to
/// a smooth point with one preimage. Singular branches sit at the roots of
/// the gcd of `phi' x phi`; two-branch points at common zeros off the
/// diagonal of `phi(s) x phi(u) / (s - u)`.
pub fn discover_singularities(c: &RationalPlaneCurve, truncation: usize) -> Result<Discovery> {
    let f = c.field().clone();
    let k0 = bivariate_cross(c)?;
    let mut shift = None;
    for s in [0i64, 1, -1, 2, -2, 3, -3, 5, 7, -5] {
        let t0 = FieldElement::from_int(&f, s);
        let p = c.evaluate(&Parameter::Finite(t0.clone()))?;
        let dp = ProjectivePoint { coords: c.components().clone().map(|q| q.derivative().eval(&t0)) };
        if p.cross(&dp).iter().all(FieldElement::is_zero) {
            continue;
        }
        if has_single_preimage(&k0, c, &t0)? {
            shift = Some(s);
            break;
        }
    }
    let shift = shift.ok_or_else(|| Error::Degenerate("no generic shift found".into()))?;
    let m = Mobius::from_ints(&f, [shift, 1, 1, 0])?;
    let d = c.reparametrize(&m)?;
    if d.declared_degree() != c.declared_degree() {
        return Err(Error::Degenerate("reparametrization lowered the degree".into()));
    }
    let mut types: BTreeMap<SingularityType, usize> = BTreeMap::new();

    // singular branches: the content of d' x d
    let der = d.components().clone().map(|p| p.derivative());
    let comps = d.components();
    let cr = [
        &(&der[1] * &comps[2]) - &(&der[2] * &comps[1]),
        &(&der[2] * &comps[0]) - &(&der[0] * &comps[2]),
        &(&der[0] * &comps[1]) - &(&der[1] * &comps[0]),
    ];
    let g = cr[0].gcd(&cr[1])?.gcd(&cr[2])?;
    if g.degree().unwrap_or(0) > 0 {
        let rad = g.squarefree_decomposition()?.radical();
        for (fac, t) in classify_roots(&d, &rad, truncation)? {
            *types.entry(t).or_default() += fac.degree().unwrap();
        }
    }

    // two-branch points
    let k = bivariate_cross(&d)?;
    let mut gg: Option<UniPoly> = None;
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let r = k[i].resultant_in(&k[j], 0)?;
        if r.is_zero() {
            continue;
        }
        let r = r.to_uni(1).ok_or_else(|| Error::Degenerate("resultant not in u".into()))?;
        gg = Some(match gg {
            None => r.monic()?,
            Some(g) => g.gcd(&r)?,
        });
    }
    let gg = gg.ok_or_else(|| Error::Degenerate("all pair resultants vanish".into()))?;
    let mut pair_params: BTreeMap<SingularityType, usize> = BTreeMap::new();
    if gg.degree().unwrap_or(0) > 0 {
        let rad = gg.squarefree_decomposition()?.radical();
        let parts = split_roots(&f, &rad, |theta, _| {
            let l = theta.field();
            let mut h = UniPoly::zero(l);
            for p in &k {
                let q = p.lift_to(l)?.substitute(1, theta).to_uni(0).unwrap();
                if !q.is_zero() {
                    h = if h.is_zero() { q.monic()? } else { h.gcd(&q)? };
                }
            }
            if h.is_zero() {
                return Err(Error::Degenerate("pair polynomials vanish identically".into()));
            }
            let lin = UniPoly::new(l, vec![-theta, FieldElement::one(l)]);
            while h.degree().unwrap_or(0) > 0 && h.eval(theta).zero_test()? {
                h = h.exact_div(&lin)?;
            }
            match h.degree() {
                Some(0) => Ok(None),
                Some(1) => {
                    let partner = -&h.monic()?.coeffs()[0];
                    let dl = d.lift_to(l)?;
                    Ok(Some(two_branch_type_with(&dl, &Parameter::Finite(theta.clone()), &Parameter::Finite(partner), truncation)?))
                }
                _ => Err(Error::Degenerate("point with more than two branches".into())),
            }
        })?;
        for (fac, t) in parts {
            if let Some(t) = t {
                *pair_params.entry(t).or_default() += fac.degree().unwrap();
            }
        }
    }
    for (t, n) in pair_params {
        if n % 2 == 1 {
            return Err(Error::Degenerate(format!("odd number of branch parameters for {t}")));
        }
        *types.entry(t).or_default() += n / 2;
    }
    Ok(Discovery { types, shift })
}

/// Multiset of claimed types.
pub fn claimed_multiset(claims: &[SingularityClaim]) -> BTreeMap<SingularityType, usize> {
    let mut m = BTreeMap::new();
    for c in claims {
        *m.entry(c.kind).or_default() += c.points();
    }
    m
}
