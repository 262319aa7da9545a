//! Rational plane curves `t -> (x(t) : y(t) : z(t))` and their global
//! operations: implicitization, duals, reparametrization and symmetries.

use std::fmt;

use crate::error::{Error, Result};
use crate::numberfield::{FieldElement, NumberField};
use crate::polynomial::{tri_resultant_pair, TriPoly, UniPoly};

#[derive(Clone, PartialEq, Eq)]
pub struct RationalPlaneCurve {
    field: NumberField,
    comps: [UniPoly; 3],
    declared_degree: usize,
}

impl fmt::Debug for RationalPlaneCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {} : {})", self.comps[0], self.comps[1], self.comps[2])
    }
}

/// A single parameter value, possibly in an extension of the curve's field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parameter {
    Finite(FieldElement),
    Infinity,
}

impl fmt::Display for Parameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parameter::Finite(v) => write!(f, "{v}"),
            Parameter::Infinity => write!(f, "oo"),
        }
    }
}

/// Where on the parameter line a claimed singularity sits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParameterLocation {
    Finite(FieldElement),
    Infinity,
    /// All roots of a squarefree polynomial over the curve field.
    Roots(UniPoly),
    /// The roots of a squared factor of a component, e.g. the double roots of `z`.
    DoubleRoots(UniPoly),
    /// Two explicit parameters carrying the two branches of an odd singularity.
    Pair(Parameter, Parameter),
}

impl ParameterLocation {
    /// Number of parameter values described.
    pub fn count(&self) -> usize {
        match self {
            ParameterLocation::Finite(_) | ParameterLocation::Infinity => 1,
            ParameterLocation::Roots(q) | ParameterLocation::DoubleRoots(q) => q.degree().unwrap_or(0),
            ParameterLocation::Pair(..) => 2,
        }
    }
}

impl fmt::Display for ParameterLocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParameterLocation::Finite(v) => write!(f, "{v}"),
            ParameterLocation::Infinity => write!(f, "oo"),
            ParameterLocation::Roots(q) => write!(f, "roots of {}", q.to_string_in("t")),
            ParameterLocation::DoubleRoots(q) => write!(f, "double roots at {}", q.to_string_in("t")),
            ParameterLocation::Pair(a, b) => write!(f, "{{{a}, {b}}}"),
        }
    }
}

/// A point of the projective plane; equality is vanishing of the cross product.
#[derive(Clone, Debug)]
pub struct ProjectivePoint {
    pub coords: [FieldElement; 3],
}

impl ProjectivePoint {
    pub fn field(&self) -> &NumberField {
        self.coords[0].field()
    }

    /// Scale so that the first nonzero coordinate is 1.
    pub fn normalized(&self) -> Result<ProjectivePoint> {
        for c in &self.coords {
            if !c.zero_test()? {
                let inv = c.inv()?;
                return Ok(ProjectivePoint { coords: self.coords.clone().map(|v| &v * &inv) });
            }
        }
        Err(Error::AllComponentsVanish)
    }

    pub fn cross(&self, other: &ProjectivePoint) -> [FieldElement; 3] {
        cross3(&self.coords, &other.coords)
    }

    pub fn lift_to(&self, field: &NumberField) -> Result<ProjectivePoint> {
        Ok(ProjectivePoint {
            coords: [self.coords[0].lift_to(field)?, self.coords[1].lift_to(field)?, self.coords[2].lift_to(field)?],
        })
    }
}

impl PartialEq for ProjectivePoint {
    fn eq(&self, other: &Self) -> bool {
        self.field() == other.field() && self.cross(other).iter().all(FieldElement::is_zero)
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.normalized().unwrap_or_else(|_| self.clone());
        write!(f, "({} : {} : {})", p.coords[0], p.coords[1], p.coords[2])
    }
}

fn cross3<T>(a: &[T; 3], b: &[T; 3]) -> [T; 3]
where
    for<'x> &'x T: std::ops::Mul<&'x T, Output = T> + std::ops::Sub<&'x T, Output = T>,
    T: Clone,
{
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

/// `t -> (alpha t + beta) / (gamma t + delta)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mobius {
    pub alpha: FieldElement,
    pub beta: FieldElement,
    pub gamma: FieldElement,
    pub delta: FieldElement,
}

impl Mobius {
    pub fn new(alpha: FieldElement, beta: FieldElement, gamma: FieldElement, delta: FieldElement) -> Result<Self> {
        let det = &(&alpha * &delta) - &(&beta * &gamma);
        if det.zero_test()? {
            return Err(Error::SingularMobius);
        }
        Ok(Mobius { alpha, beta, gamma, delta })
    }

    pub fn from_ints(field: &NumberField, m: [i64; 4]) -> Result<Self> {
        let e = |v| FieldElement::from_int(field, v);
        Mobius::new(e(m[0]), e(m[1]), e(m[2]), e(m[3]))
    }

    pub fn identity(field: &NumberField) -> Self {
        Mobius::from_ints(field, [1, 0, 0, 1]).unwrap()
    }

    pub fn lift_to(&self, field: &NumberField) -> Result<Mobius> {
        Ok(Mobius {
            alpha: self.alpha.lift_to(field)?,
            beta: self.beta.lift_to(field)?,
            gamma: self.gamma.lift_to(field)?,
            delta: self.delta.lift_to(field)?,
        })
    }

    /// Image of a parameter value.
    pub fn apply(&self, t: &Parameter) -> Result<Parameter> {
        let (num, den) = match t {
            Parameter::Infinity => (self.alpha.clone(), self.gamma.clone()),
            Parameter::Finite(v) => {
                let a = self.alpha.lift_to(v.field())?;
                let b = self.beta.lift_to(v.field())?;
                let c = self.gamma.lift_to(v.field())?;
                let d = self.delta.lift_to(v.field())?;
                (&(&a * v) + &b, &(&c * v) + &d)
            }
        };
        if den.zero_test()? {
            Ok(Parameter::Infinity)
        } else {
            Ok(Parameter::Finite(num.div(&den)?))
        }
    }
}

/// Invertible 3x3 matrix acting on column vectors `(x, y, z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveMap {
    pub m: [[FieldElement; 3]; 3],
}

impl ProjectiveMap {
    pub fn new(m: [[FieldElement; 3]; 3]) -> Result<Self> {
        let map = ProjectiveMap { m };
        if map.determinant().zero_test()? {
            return Err(Error::Degenerate("projective map is singular".into()));
        }
        Ok(map)
    }

    pub fn from_ints(field: &NumberField, m: [[i64; 3]; 3]) -> Result<Self> {
        ProjectiveMap::new(m.map(|row| row.map(|v| FieldElement::from_int(field, v))))
    }

    pub fn identity(field: &NumberField) -> Self {
        ProjectiveMap::from_ints(field, [[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap()
    }

    pub fn determinant(&self) -> FieldElement {
        let m = &self.m;
        let c = cross3(&m[1], &m[2]);
        &(&(&m[0][0] * &c[0]) + &(&m[0][1] * &c[1])) + &(&m[0][2] * &c[2])
    }

    pub fn inverse(&self) -> Result<ProjectiveMap> {
        let m = &self.m;
        let det_inv = self.determinant().inv()?;
        // rows of the adjugate are cross products of columns
        let col = |j: usize| [m[0][j].clone(), m[1][j].clone(), m[2][j].clone()];
        let r0 = cross3(&col(1), &col(2));
        let r1 = cross3(&col(2), &col(0));
        let r2 = cross3(&col(0), &col(1));
        Ok(ProjectiveMap { m: [r0, r1, r2].map(|r| r.map(|v| &v * &det_inv)) })
    }

    pub fn lift_to(&self, field: &NumberField) -> Result<ProjectiveMap> {
        let mut out = self.m.clone();
        for row in out.iter_mut() {
            for v in row.iter_mut() {
                *v = v.lift_to(field)?;
            }
        }
        Ok(ProjectiveMap { m: out })
    }

    pub fn apply_point(&self, p: &ProjectivePoint) -> ProjectivePoint {
        let c = &p.coords;
        let row = |r: &[FieldElement; 3]| &(&(&r[0] * &c[0]) + &(&r[1] * &c[1])) + &(&r[2] * &c[2]);
        ProjectivePoint { coords: [row(&self.m[0]), row(&self.m[1]), row(&self.m[2])] }
    }

    /// `F(M (X, Y, Z)^T)`.
    pub fn pull_back(&self, f: &TriPoly) -> TriPoly {
        let field = f.field();
        let lin = |r: &[FieldElement; 3]| {
            TriPoly::from_terms(field, (0..3).map(|k| {
                let mut e = [0; 3];
                e[k] = 1;
                (e, r[k].clone())
            }))
        };
        let l = [lin(&self.m[0]), lin(&self.m[1]), lin(&self.m[2])];
        f.compose([&l[0], &l[1], &l[2]])
    }
}

impl RationalPlaneCurve {
    /// Curve from three components; a common factor is rejected.
    pub fn new(x: UniPoly, y: UniPoly, z: UniPoly) -> Result<Self> {
        let field = x.field().clone();
        if y.field() != &field || z.field() != &field {
            return Err(Error::FieldMismatch);
        }
        let g = x.gcd(&y).and_then(|g| g.gcd(&z)).map_err(|_| Error::Degenerate("all components vanish".into()))?;
        if g.degree() != Some(0) {
            return Err(Error::Degenerate(format!("components share the factor {g}")));
        }
        let declared_degree = [&x, &y, &z].iter().filter_map(|p| p.degree()).max().unwrap_or(0);
        Ok(RationalPlaneCurve { field, comps: [x, y, z], declared_degree })
    }

    /// Curve from components after dividing out their gcd.
    pub fn new_reduced(x: UniPoly, y: UniPoly, z: UniPoly) -> Result<Self> {
        let g = x.gcd(&y).and_then(|g| g.gcd(&z)).map_err(|_| Error::Degenerate("all components vanish".into()))?;
        RationalPlaneCurve::new(x.exact_div(&g)?, y.exact_div(&g)?, z.exact_div(&g)?)
    }

    pub fn from_ints(field: &NumberField, x: &[i64], y: &[i64], z: &[i64]) -> Result<Self> {
        RationalPlaneCurve::new(UniPoly::from_ints(field, x), UniPoly::from_ints(field, y), UniPoly::from_ints(field, z))
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn x(&self) -> &UniPoly {
        &self.comps[0]
    }

    pub fn y(&self) -> &UniPoly {
        &self.comps[1]
    }

    pub fn z(&self) -> &UniPoly {
        &self.comps[2]
    }

    pub fn components(&self) -> &[UniPoly; 3] {
        &self.comps
    }

    pub fn declared_degree(&self) -> usize {
        self.declared_degree
    }

    pub fn lift_to(&self, field: &NumberField) -> Result<RationalPlaneCurve> {
        Ok(RationalPlaneCurve {
            field: field.clone(),
            comps: [self.comps[0].lift_to(field)?, self.comps[1].lift_to(field)?, self.comps[2].lift_to(field)?],
            declared_degree: self.declared_degree,
        })
    }

    /// Image of a parameter; the point lives in the parameter's field.
    pub fn evaluate(&self, t: &Parameter) -> Result<ProjectivePoint> {
        let coords = match t {
            Parameter::Infinity => self.comps.clone().map(|p| p.coeff(self.declared_degree)),
            Parameter::Finite(v) => {
                [self.comps[0].eval_lifted(v)?, self.comps[1].eval_lifted(v)?, self.comps[2].eval_lifted(v)?]
            }
        };
        let p = ProjectivePoint { coords };
        if p.coords.iter().all(FieldElement::is_zero) {
            return Err(Error::AllComponentsVanish);
        }
        Ok(p)
    }

    /// Image of a location given by a single value or infinity.
    pub fn evaluate_location(&self, loc: &ParameterLocation) -> Result<Vec<ProjectivePoint>> {
        match loc {
            ParameterLocation::Finite(v) => Ok(vec![self.evaluate(&Parameter::Finite(v.clone()))?]),
            ParameterLocation::Infinity => Ok(vec![self.evaluate(&Parameter::Infinity)?]),
            ParameterLocation::Pair(a, b) => Ok(vec![self.evaluate(a)?, self.evaluate(b)?]),
            ParameterLocation::Roots(q) | ParameterLocation::DoubleRoots(q) => {
                let ext = NumberField::extension(&self.field, "theta", q, crate::numberfield::LayerKind::Algebra)?;
                Ok(vec![self.evaluate(&Parameter::Finite(FieldElement::generator(&ext)))?])
            }
        }
    }

    pub fn apply_map(&self, t: &ProjectiveMap) -> Result<RationalPlaneCurve> {
        let t = t.lift_to(&self.field)?;
        let row = |r: &[FieldElement; 3]| {
            let mut acc = UniPoly::zero(&self.field);
            for (k, c) in r.iter().enumerate() {
                acc = &acc + &self.comps[k].scale(c);
            }
            acc
        };
        RationalPlaneCurve::new(row(&t.m[0]), row(&t.m[1]), row(&t.m[2]))
    }

    /// Substitute `t -> m(t)` and clear denominators.
    pub fn reparametrize(&self, m: &Mobius) -> Result<RationalPlaneCurve> {
        let m = m.lift_to(&self.field)?;
        let n = self.declared_degree;
        let num = UniPoly::new(&self.field, vec![m.beta.clone(), m.alpha.clone()]);
        let den = UniPoly::new(&self.field, vec![m.delta.clone(), m.gamma.clone()]);
        let num_pows: Vec<UniPoly> = (0..=n).map(|i| num.pow(i as u32)).collect();
        let den_pows: Vec<UniPoly> = (0..=n).map(|i| den.pow(i as u32)).collect();
        let sub = |p: &UniPoly| {
            let mut acc = UniPoly::zero(&self.field);
            for (i, c) in p.coeffs().iter().enumerate() {
                acc = &acc + &(&num_pows[i] * &den_pows[n - i]).scale(c);
            }
            acc
        };
        RationalPlaneCurve::new_reduced(sub(&self.comps[0]), sub(&self.comps[1]), sub(&self.comps[2]))
    }

    /// Whether the component triples of two curves are proportional.
    pub fn same_parametrization(&self, other: &RationalPlaneCurve) -> bool {
        let c = cross3(&self.comps, &other.comps);
        c.iter().all(UniPoly::is_zero) && !other.comps.iter().all(UniPoly::is_zero)
    }

    /// Whether `C(m(t))` and `T(C(t))` agree as parametrizations.
    pub fn verify_symmetry(&self, t: &ProjectiveMap, m: &Mobius) -> Result<bool> {
        Ok(self.reparametrize(m)?.same_parametrization(&self.apply_map(t)?))
    }

    /// The implicit equation; see [`implicitize_with_map_degree`].
    pub fn implicitize(&self) -> Result<TriPoly> {
        Ok(implicitize_with_map_degree(self)?.0)
    }

    /// Degree of the image curve. A point `P = C(t0)` with `C(oo) != P`
    /// has at least as many preimages, counted by the degree of
    /// `gcd(C(s) x P)`, as the degree of the parametrization onto its
    /// image; a gcd of degree one makes the parametrization birational and
    /// the image degree equal to the declared degree. Falls back to
    /// implicitization when no small integer `t0` works.
    pub fn image_degree(&self) -> Result<usize> {
        let inf = self.evaluate(&Parameter::Infinity)?;
        for t0 in [0i64, 1, -1, 2, -2, 3, -3, 5] {
            let Ok(p) = self.evaluate(&Parameter::Finite(FieldElement::from_int(&self.field, t0))) else { continue };
            if p.cross(&inf).iter().all(FieldElement::is_zero) {
                continue;
            }
            let consts = p.coords.clone().map(|c| UniPoly::new(&self.field, vec![c]));
            let mut g = UniPoly::zero(&self.field);
            for q in cross3(&self.comps, &consts) {
                if !q.is_zero() {
                    g = if g.is_zero() { q.monic()? } else { g.gcd(&q)? };
                }
            }
            if g.degree() == Some(1) {
                return Ok(self.declared_degree);
            }
        }
        let (f, _) = implicitize_with_map_degree(self)?;
        Ok(f.total_degree().unwrap_or(0) as usize)
    }

    /// Tangent-line parametrization `phi' x phi` with the common factor removed.
    pub fn dual(&self) -> Result<RationalPlaneCurve> {
        let d = self.comps.clone().map(|p| p.derivative());
        let w = cross3(&d, &self.comps);
        if w.iter().all(UniPoly::is_zero) {
            return Err(Error::Degenerate("curve is a line".into()));
        }
        let [a, b, c] = w;
        let d = RationalPlaneCurve::new_reduced(a, b, c)?;
        if d.declared_degree == 0 {
            return Err(Error::Degenerate("curve is a line".into()));
        }
        Ok(d)
    }
}

/// Implicit equation `F` and the degree `k` of the parametrization onto its
/// image, from `Res_t(x Z - z X, y Z - z Y) = c Z^e F^k`.
pub fn implicitize_with_map_degree(c: &RationalPlaneCurve) -> Result<(TriPoly, u32)> {
    let field = c.field();
    let n = c.declared_degree;
    let var = |i| TriPoly::var(field, i);
    let (vx, vy, vz) = (var(0), var(1), var(2));
    let a: Vec<TriPoly> = (0..=n)
        .map(|i| &vz.scale(&c.x().coeff(i)) - &vx.scale(&c.z().coeff(i)))
        .collect();
    let b: Vec<TriPoly> = (0..=n)
        .map(|i| &vz.scale(&c.y().coeff(i)) - &vy.scale(&c.z().coeff(i)))
        .collect();
    let r = tri_resultant_pair(&a, &b)?;
    if r.is_zero() {
        return Err(Error::Degenerate("image is a point".into()));
    }
    let (r, _) = r.remove_var_power(2);
    let r = r.monic()?;
    let deg = r.total_degree().unwrap_or(0);
    if deg == 0 {
        return Err(Error::Degenerate("resultant is a power of Z".into()));
    }
    let k = map_degree(&r, deg)?;
    let g = if k == 1 { r } else { r.kth_root(k)?.monic()? };
    if g.total_degree() == Some(1) {
        return Err(Error::Degenerate("image is a line".into()));
    }
    Ok((g, k))
}

// Restrict to lines until one meets the curve transversally in `deg` points
// or exposes a common multiplicity.
fn map_degree(r: &TriPoly, deg: u32) -> Result<u32> {
    let field = r.field();
    let e = |v: i64| FieldElement::from_int(field, v);
    let mut common = None;
    for (i, j) in [(1, 2), (2, -3), (-1, 5), (3, 7), (5, -2), (7, 11), (-4, 9), (11, 3)] {
        // X = t, Y = i + j t, Z = 1
        let t = TriPoly::var(field, 0);
        let y = &TriPoly::constant(&e(i)) + &TriPoly::var(field, 0).scale(&e(j));
        let one = TriPoly::constant(&e(1));
        let u = r.compose([&t, &y, &one]).to_uni(0).ok_or(Error::Degenerate("bad line".into()))?;
        if u.degree() != Some(deg as usize) {
            continue;
        }
        let sq = u.squarefree_decomposition()?;
        let g = sq.factors.iter().map(|(_, m)| *m).fold(0, num_integer::gcd);
        if g == 1 {
            return Ok(1);
        }
        if sq.factors.iter().all(|(_, m)| *m == g) {
            common = Some(g);
            break;
        }
    }
    common.ok_or_else(|| Error::Degenerate("could not determine the degree of the parametrization".into()))
}
