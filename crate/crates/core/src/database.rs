//! The corpus of the 39 sextics: JSON data types, a small expression parser
//! for the printed formulas, and the conversion to curves and claims.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::conic::CubicPencil;
use crate::curve::{Mobius, Parameter, ParameterLocation, ProjectiveMap, RationalPlaneCurve};
use crate::error::{Error, Result};
use crate::numberfield::{FieldElement, LayerKind, NumberField, Rational};
use crate::polynomial::{Exponent, TriPoly, UniPoly};
use crate::singularity::{SingularityClaim, SingularityType};

pub const SCHEMA_VERSION: u32 = 1;
pub const CORPUS_SIZE: usize = 39;

/// The shipped corpus file.
pub const BUNDLED_CORPUS: &str = include_str!("../../../corpus/sextics.json");

pub type ElementData = Vec<String>;
pub type UniPolyData = Vec<ElementData>;
pub type TriPolyTerms = Vec<(Exponent, ElementData)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusFile {
    pub schema_version: u32,
    pub description: String,
    pub records: Vec<RecordData>,
}

/// One layer `generator^d + ... = 0` of a field tower over Q.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayerDesc {
    pub generator: String,
    pub minpoly: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Definition {
    pub name: String,
    pub expr: String,
}

/// A printed univariate formula and its expanded coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyData {
    pub printed: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<UniPolyData>,
}

/// A printed constant (or `oo`) and its coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValueData {
    pub printed: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coordinates: Option<ElementData>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriPolyData {
    pub printed: String,
    pub variables: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub definitions: Vec<Definition>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<TriPolyTerms>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum LocationData {
    Infinity,
    Value { value: ValueData },
    Roots { poly: PolyData },
    DoubleRoots { poly: PolyData },
    Pair { params: [ValueData; 2] },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClaimData {
    #[serde(rename = "type")]
    pub kind: SingularityType,
    pub location: LocationData,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParametrizationData {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub definitions: Vec<Definition>,
    pub x: PolyData,
    pub y: PolyData,
    pub z: PolyData,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Flags {
    pub e_differs_from_f: bool,
    pub has_symmetry: bool,
    pub has_alt_parametrization: bool,
    pub has_printed_implicit: bool,
    pub autodual_claimed: bool,
}

/// `T(C(t)) = C(m(t))` with `m(t) = (alpha t + beta) / (gamma t + delta)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymmetryData {
    pub printed: String,
    pub map: [[ValueData; 3]; 3],
    pub mobius: [ValueData; 4],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlternativeData {
    pub field_e: Vec<LayerDesc>,
    pub parametrization: ParametrizationData,
    pub claims: Vec<ClaimData>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PencilData {
    pub pencil: TriPolyData,
    pub basepoint_factor: PolyData,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecordData {
    pub id: u32,
    pub name: String,
    pub singularities: Vec<SingularityType>,
    pub field_f: Vec<LayerDesc>,
    pub field_e: Vec<LayerDesc>,
    pub parametrization: ParametrizationData,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<PolyData>,
    pub bracket: String,
    pub claims: Vec<ClaimData>,
    pub flags: Flags,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetry: Option<SymmetryData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alternative: Option<AlternativeData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub printed_implicit: Option<TriPolyData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pencil: Option<PencilData>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub references: String,
}

// ---------------------------------------------------------------------------
// expressions

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut it = s.chars().peekable();
    while let Some(&c) = it.peek() {
        if c.is_whitespace() {
            it.next();
        } else if c.is_ascii_digit() {
            let mut n = String::new();
            while let Some(&d) = it.peek().filter(|d| d.is_ascii_digit()) {
                n.push(d);
                it.next();
            }
            out.push(Tok::Num(n.parse().expect("digits")));
        } else if c.is_alphabetic() || c == '_' {
            let mut n = String::new();
            while let Some(&d) = it.peek().filter(|d| d.is_alphanumeric() || **d == '_') {
                n.push(d);
                it.next();
            }
            out.push(Tok::Ident(n));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            it.next();
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

/// Names visible to the expression parser.
#[derive(Clone, Debug)]
pub struct Scope {
    field: NumberField,
    vars: Vec<(String, usize)>,
    symbols: HashMap<String, TriPoly>,
}

impl Scope {
    /// Generators of every layer of `field` plus the given variables.
    pub fn new(field: &NumberField, vars: &[(&str, usize)]) -> Self {
        let mut symbols = HashMap::new();
        let mut layer = Some(field.clone());
        while let Some(l) = layer {
            if let Some(g) = l.generator_name() {
                let e = FieldElement::generator(&l).lift_to(field).expect("layer of the tower");
                symbols.insert(g.to_string(), TriPoly::constant(&e));
            }
            layer = l.base().cloned();
        }
        Scope { field: field.clone(), vars: vars.iter().map(|(n, i)| (n.to_string(), *i)).collect(), symbols }
    }

    pub fn define(&mut self, name: &str, expr: &str) -> Result<()> {
        let v = self.parse(expr)?;
        self.symbols.insert(name.to_string(), v);
        Ok(())
    }

    pub fn define_all(&mut self, defs: &[Definition]) -> Result<()> {
        defs.iter().try_for_each(|d| self.define(&d.name, &d.expr))
    }

    pub fn parse(&self, s: &str) -> Result<TriPoly> {
        let toks = tokenize(s)?;
        let mut p = Parser { toks: &toks, pos: 0, scope: self, src: s };
        let v = p.expr()?;
        if p.pos != toks.len() {
            return Err(Error::Parse(format!("trailing input in {s:?}")));
        }
        Ok(v)
    }

    pub fn parse_uni(&self, s: &str, var: usize) -> Result<UniPoly> {
        self.parse(s)?
            .to_uni(var)
            .ok_or_else(|| Error::Parse(format!("{s:?} is not univariate")))
    }

    pub fn parse_constant(&self, s: &str) -> Result<FieldElement> {
        let p = self.parse(s)?;
        if p.total_degree().unwrap_or(0) > 0 {
            return Err(Error::Parse(format!("{s:?} is not a constant")));
        }
        Ok(p.coeff([0, 0, 0]))
    }
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
    scope: &'a Scope,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn err(&self, m: &str) -> Error {
        Error::Parse(format!("{m} at token {} of {:?}", self.pos, self.src))
    }

    fn expr(&mut self) -> Result<TriPoly> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek() {
            let c = *c;
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<TriPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    let d = self.unary()?;
                    if d.total_degree().unwrap_or(0) > 0 {
                        return Err(self.err("division by a non-constant"));
                    }
                    let inv = d.coeff([0, 0, 0]).inv().map_err(|_| self.err("division by zero"))?;
                    acc = acc.scale(&inv);
                }
                // juxtaposition
                Some(Tok::Num(_) | Tok::Ident(_) | Tok::Op('(')) => acc = &acc * &self.power()?,
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<TriPoly> {
        if let Some(Tok::Op('-')) = self.peek() {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        if let Some(Tok::Op('+')) = self.peek() {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<TriPoly> {
        let base = self.primary()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            match self.peek() {
                Some(Tok::Num(n)) => {
                    let e: u32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return Err(self.err("expected an integer exponent")),
            }
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<TriPoly> {
        let field = &self.scope.field;
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(TriPoly::constant(&FieldElement::from_rational(field, Rational::from_integer(n))))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if let Some((_, i)) = self.scope.vars.iter().find(|(v, _)| *v == name) {
                    return Ok(TriPoly::var(field, *i));
                }
                self.scope
                    .symbols
                    .get(&name)
                    .cloned()
                    .ok_or_else(|| Error::Parse(format!("unknown symbol {name:?} in {:?}", self.src)))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(&Tok::Op(')')) {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

// ---------------------------------------------------------------------------
// encodings

pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim().parse::<Rational>().map_err(|_| Error::Parse(format!("bad rational {s:?}")))
}

pub fn encode_element(x: &FieldElement) -> ElementData {
    x.coords().iter().map(|c| c.to_string()).collect()
}

pub fn decode_element(field: &NumberField, d: &ElementData) -> Result<FieldElement> {
    let coords = d.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
    FieldElement::from_coords(field, coords)
}

pub fn encode_uni(p: &UniPoly) -> UniPolyData {
    p.coeffs().iter().map(encode_element).collect()
}

pub fn decode_uni(field: &NumberField, d: &UniPolyData) -> Result<UniPoly> {
    Ok(UniPoly::new(field, d.iter().map(|c| decode_element(field, c)).collect::<Result<_>>()?))
}

pub fn encode_tri(p: &TriPoly) -> TriPolyTerms {
    p.terms().iter().map(|(e, c)| (*e, encode_element(c))).collect()
}

pub fn decode_tri(field: &NumberField, d: &TriPolyTerms) -> Result<TriPoly> {
    let terms = d.iter().map(|(e, c)| Ok((*e, decode_element(field, c)?))).collect::<Result<Vec<_>>>()?;
    Ok(TriPoly::from_terms(field, terms))
}

/// The tower described by `layers`, each over the previous one.
pub fn build_field(layers: &[LayerDesc]) -> Result<NumberField> {
    let mut f = NumberField::rationals();
    for l in layers {
        let coeffs = l
            .minpoly
            .iter()
            .map(|s| Ok(FieldElement::from_rational(&f, parse_rational(s)?)))
            .collect::<Result<Vec<_>>>()?;
        f = NumberField::extension(&f, &l.generator, &UniPoly::new(&f, coeffs), LayerKind::Field)?;
    }
    Ok(f)
}

/// Homogenize a polynomial in the first two variables with the third.
pub fn homogenize(p: &TriPoly) -> TriPoly {
    let d = p.total_degree().unwrap_or(0);
    TriPoly::from_terms(p.field(), p.terms().iter().map(|(e, c)| ([e[0], e[1], d - e[0] - e[1]], c.clone())))
}

/// Parse `A_11+2A_4` into indices.
pub fn parse_name(name: &str) -> Result<Vec<SingularityType>> {
    let mut out = Vec::new();
    for part in name.split('+') {
        let part = part.trim();
        let k = part.find('A').ok_or_else(|| Error::Parse(format!("bad singularity {part:?}")))?;
        let mult: usize = if k == 0 { 1 } else { part[..k].parse().map_err(|_| Error::Parse(format!("bad count in {part:?}")))? };
        let t: SingularityType = part[k..].parse()?;
        out.extend(std::iter::repeat_n(t, mult));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// filling and loading

const T_VAR: [(&str, usize); 1] = [("t", 0)];

fn record_scope(field: &NumberField, defs: &[Definition]) -> Result<Scope> {
    let mut s = Scope::new(field, &T_VAR);
    s.define_all(defs)?;
    Ok(s)
}

fn fill_poly(scope: &Scope, p: &mut PolyData, var: usize) -> Result<()> {
    p.coefficients = Some(encode_uni(&scope.parse_uni(&p.printed, var)?));
    Ok(())
}

fn fill_value(scope: &Scope, v: &mut ValueData) -> Result<()> {
    if v.printed != "oo" {
        v.coordinates = Some(encode_element(&scope.parse_constant(&v.printed)?));
    }
    Ok(())
}

fn fill_claims(scope: &Scope, claims: &mut [ClaimData]) -> Result<()> {
    for c in claims {
        match &mut c.location {
            LocationData::Infinity => {}
            LocationData::Value { value } => fill_value(scope, value)?,
            LocationData::Roots { poly } | LocationData::DoubleRoots { poly } => fill_poly(scope, poly, 0)?,
            LocationData::Pair { params } => params.iter_mut().try_for_each(|v| fill_value(scope, v))?,
        }
    }
    Ok(())
}

fn fill_parametrization(scope: &Scope, p: &mut ParametrizationData) -> Result<()> {
    fill_poly(scope, &mut p.x, 0)?;
    fill_poly(scope, &mut p.y, 0)?;
    fill_poly(scope, &mut p.z, 0)
}

fn tri_scope(field: &NumberField, d: &TriPolyData) -> Result<Scope> {
    let vars: Vec<(&str, usize)> = d.variables.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    let mut s = Scope::new(field, &vars);
    s.define_all(&d.definitions)?;
    Ok(s)
}

/// Expand every printed formula of a record into coefficients.
pub fn fill_coefficients(r: &mut RecordData) -> Result<()> {
    let ctx = |e: Error| Error::Invariant { id: r.id, message: e.to_string() };
    let fe = build_field(&r.field_e).map_err(ctx)?;
    let ff = build_field(&r.field_f).map_err(ctx)?;
    let mut scope = Scope::new(&fe, &T_VAR);
    scope.define_all(&r.parametrization.definitions).map_err(ctx)?;
    fill_parametrization(&scope, &mut r.parametrization).map_err(ctx)?;
    if let Some(p) = &mut r.p {
        fill_poly(&scope, p, 0).map_err(ctx)?;
    }
    fill_claims(&scope, &mut r.claims).map_err(ctx)?;
    if let Some(s) = &mut r.symmetry {
        let sc = Scope::new(&fe, &[]);
        for v in s.map.iter_mut().flatten().chain(s.mobius.iter_mut()) {
            fill_value(&sc, v).map_err(ctx)?;
        }
    }
    if let Some(a) = &mut r.alternative {
        let fa = build_field(&a.field_e).map_err(ctx)?;
        let sc = record_scope(&fa, &a.parametrization.definitions).map_err(ctx)?;
        fill_parametrization(&sc, &mut a.parametrization).map_err(ctx)?;
        fill_claims(&sc, &mut a.claims).map_err(ctx)?;
    }
    if let Some(imp) = &mut r.printed_implicit {
        let sc = tri_scope(&ff, imp).map_err(ctx)?;
        let f = sc.parse(&imp.printed).map_err(ctx)?;
        imp.terms = Some(encode_tri(&homogenize(&f)));
    }
    if let Some(pen) = &mut r.pencil {
        let sc = tri_scope(&ff, &pen.pencil).map_err(ctx)?;
        pen.pencil.terms = Some(encode_tri(&sc.parse(&pen.pencil.printed).map_err(ctx)?));
        fill_poly(&sc, &mut pen.basepoint_factor, 0).map_err(ctx)?;
    }
    Ok(())
}

/// The alternative parametrization of a record.
#[derive(Clone, Debug)]
pub struct Alternative {
    pub field: NumberField,
    pub curve: RationalPlaneCurve,
    pub claims: Vec<SingularityClaim>,
}

/// A corpus record with its polynomials decoded.
#[derive(Clone, Debug)]
pub struct CurveRecord {
    pub data: RecordData,
    pub field_f: NumberField,
    pub field_e: NumberField,
    pub curve: RationalPlaneCurve,
    pub p: Option<UniPoly>,
    pub claims: Vec<SingularityClaim>,
    pub symmetry: Option<(ProjectiveMap, Mobius)>,
    pub alternative: Option<Alternative>,
    /// Homogeneous in `(X, Y, Z)` over `F`.
    pub printed_implicit: Option<TriPoly>,
    pub pencil: Option<CubicPencil>,
}

impl CurveRecord {
    pub fn id(&self) -> u32 {
        self.data.id
    }
}

fn missing(what: &str) -> Error {
    Error::Parse(format!("{what} has no expanded coefficients"))
}

fn decode_poly(field: &NumberField, p: &PolyData, what: &str) -> Result<UniPoly> {
    decode_uni(field, p.coefficients.as_ref().ok_or_else(|| missing(what))?)
}

fn decode_param(field: &NumberField, v: &ValueData) -> Result<Parameter> {
    if v.printed == "oo" {
        return Ok(Parameter::Infinity);
    }
    Ok(Parameter::Finite(decode_element(field, v.coordinates.as_ref().ok_or_else(|| missing(&v.printed))?)?))
}

fn decode_claims(field: &NumberField, claims: &[ClaimData]) -> Result<Vec<SingularityClaim>> {
    claims
        .iter()
        .map(|c| {
            let location = match &c.location {
                LocationData::Infinity => ParameterLocation::Infinity,
                LocationData::Value { value } => match decode_param(field, value)? {
                    Parameter::Finite(v) => ParameterLocation::Finite(v),
                    Parameter::Infinity => ParameterLocation::Infinity,
                },
                LocationData::Roots { poly } => ParameterLocation::Roots(decode_poly(field, poly, &poly.printed)?),
                LocationData::DoubleRoots { poly } => ParameterLocation::DoubleRoots(decode_poly(field, poly, &poly.printed)?),
                LocationData::Pair { params } => ParameterLocation::Pair(decode_param(field, &params[0])?, decode_param(field, &params[1])?),
            };
            Ok(SingularityClaim { kind: c.kind, location })
        })
        .collect()
}

fn decode_curve(field: &NumberField, p: &ParametrizationData) -> Result<RationalPlaneCurve> {
    RationalPlaneCurve::new(decode_poly(field, &p.x, "x")?, decode_poly(field, &p.y, "y")?, decode_poly(field, &p.z, "z")?)
}

fn claim_multiset(claims: &[SingularityClaim]) -> BTreeMap<SingularityType, usize> {
    let mut m = BTreeMap::new();
    for c in claims {
        *m.entry(c.kind).or_insert(0) += c.points();
    }
    m
}

fn multiset(v: &[SingularityType]) -> BTreeMap<SingularityType, usize> {
    let mut m = BTreeMap::new();
    for t in v {
        *m.entry(*t).or_insert(0) += 1;
    }
    m
}

/// The combinatorial invariants every record must satisfy.
pub fn check_multiset(id: u32, name: &str, s: &[SingularityType], claims: &[SingularityClaim]) -> Result<()> {
    let inv = |message: String| Err(Error::Invariant { id, message });
    let total: u32 = s.iter().map(|t| t.index()).sum();
    if total != 19 {
        return inv(format!("indices sum to {total}, not 19"));
    }
    let odd = s.iter().filter(|t| t.index() % 2 == 1).count();
    if odd != 1 {
        return inv(format!("{odd} odd indices, expected exactly one"));
    }
    if parse_name(name).map(|v| multiset(&v)).ok() != Some(multiset(s)) {
        return inv(format!("name {name:?} does not match the singularity list"));
    }
    let even_points: usize = claims.iter().filter(|c| c.kind.branches() == 1).map(|c| c.location.count()).sum();
    let even_entries = s.iter().filter(|t| t.branches() == 1).count();
    if even_points != even_entries {
        return inv(format!("{even_points} locations for {even_entries} even-index singularities"));
    }
    if claim_multiset(claims) != multiset(s) {
        return inv("claims do not match the singularity list".into());
    }
    Ok(())
}

impl CurveRecord {
    pub fn from_data(data: RecordData) -> Result<Self> {
        let id = data.id;
        let ctx = |e: Error| match e {
            Error::Invariant { .. } => e,
            e => Error::Invariant { id, message: e.to_string() },
        };
        let inv = |message: &str| Error::Invariant { id, message: message.to_string() };
        if !(1..=CORPUS_SIZE as u32).contains(&id) {
            return Err(inv("id out of range"));
        }
        if data.field_e.len() < data.field_f.len() || data.field_e[..data.field_f.len()] != data.field_f[..] {
            return Err(inv("E must be a tower over F"));
        }
        let field_f = build_field(&data.field_f).map_err(ctx)?;
        let field_e = build_field(&data.field_e).map_err(ctx)?;
        let f = &data.flags;
        if f.e_differs_from_f != (data.field_e.len() > data.field_f.len()) {
            return Err(inv("flag e_differs_from_f disagrees with the fields"));
        }
        if f.has_symmetry != data.symmetry.is_some()
            || f.has_alt_parametrization != data.alternative.is_some()
            || f.has_printed_implicit != data.printed_implicit.is_some()
        {
            return Err(inv("flags disagree with the stored data"));
        }
        let curve = decode_curve(&field_e, &data.parametrization).map_err(ctx)?;
        if curve.declared_degree() != 6 {
            return Err(inv("parametrization is not of degree 6"));
        }
        let p = data.p.as_ref().map(|p| decode_poly(&field_e, p, "p")).transpose().map_err(ctx)?;
        let claims = decode_claims(&field_e, &data.claims).map_err(ctx)?;
        check_multiset(id, &data.name, &data.singularities, &claims)?;
        let symmetry = match &data.symmetry {
            None => None,
            Some(s) => {
                let el = |v: &ValueData| decode_element(&field_e, v.coordinates.as_ref().ok_or_else(|| missing(&v.printed))?);
                let mut m: Vec<[FieldElement; 3]> = Vec::new();
                for row in &s.map {
                    m.push([el(&row[0])?, el(&row[1])?, el(&row[2])?]);
                }
                let map = ProjectiveMap::new([m[0].clone(), m[1].clone(), m[2].clone()]).map_err(ctx)?;
                let [a, b, c, d] = &s.mobius;
                let mob = Mobius::new(el(a)?, el(b)?, el(c)?, el(d)?).map_err(ctx)?;
                Some((map, mob))
            }
        };
        let alternative = match &data.alternative {
            None => None,
            Some(a) => {
                let field = build_field(&a.field_e).map_err(ctx)?;
                let curve = decode_curve(&field, &a.parametrization).map_err(ctx)?;
                let claims = decode_claims(&field, &a.claims).map_err(ctx)?;
                check_multiset(id, &data.name, &data.singularities, &claims)?;
                Some(Alternative { field, curve, claims })
            }
        };
        let printed_implicit = match &data.printed_implicit {
            None => None,
            Some(d) => Some(decode_tri(&field_f, d.terms.as_ref().ok_or_else(|| missing("printed implicit"))?).map_err(ctx)?),
        };
        let pencil = match &data.pencil {
            None => None,
            Some(d) => {
                let g = decode_tri(&field_f, d.pencil.terms.as_ref().ok_or_else(|| missing("pencil"))?).map_err(ctx)?;
                let b = decode_poly(&field_f, &d.basepoint_factor, "base-point factor").map_err(ctx)?;
                Some(CubicPencil::new(g, b).map_err(ctx)?)
            }
        };
        Ok(CurveRecord { data, field_f, field_e, curve, p, claims, symmetry, alternative, printed_implicit, pencil })
    }
}

/// Parse corpus JSON, reporting schema violations with their JSON path.
pub fn parse_corpus_file(text: &str) -> Result<CorpusFile> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let file: CorpusFile = serde_path_to_error::deserialize(de).map_err(|e| Error::Schema {
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })?;
    if file.schema_version != SCHEMA_VERSION {
        return Err(Error::Schema {
            path: "schema_version".into(),
            message: format!("unsupported version {}", file.schema_version),
        });
    }
    Ok(file)
}

pub fn parse_corpus(text: &str) -> Result<Vec<CurveRecord>> {
    let file = parse_corpus_file(text)?;
    if file.records.len() != CORPUS_SIZE {
        return Err(Error::Schema { path: "records".into(), message: format!("{} records, expected {CORPUS_SIZE}", file.records.len()) });
    }
    let mut out = Vec::with_capacity(CORPUS_SIZE);
    for (i, r) in file.records.into_iter().enumerate() {
        if r.id as usize != i + 1 {
            return Err(Error::Schema { path: format!("records[{i}].id"), message: format!("expected id {}", i + 1) });
        }
        out.push(CurveRecord::from_data(r)?);
    }
    Ok(out)
}

pub fn load_corpus(path: &Path) -> Result<Vec<CurveRecord>> {
    parse_corpus(&std::fs::read_to_string(path)?)
}

pub fn bundled_corpus() -> Result<Vec<CurveRecord>> {
    parse_corpus(BUNDLED_CORPUS)
}

// ---------------------------------------------------------------------------
// cross checks

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub id: u32,
    pub checks: Vec<(String, bool)>,
}

impl CrossCheck {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

/// Whether the printed formulas expand to the stored coefficients.
pub fn printed_matches_coefficients(r: &RecordData) -> Result<bool> {
    let mut again = r.clone();
    fill_coefficients(&mut again)?;
    Ok(&again == r)
}

/// Rewrite `p` over `E` with coefficients in `F` as a polynomial over `F`.
pub fn descend(p: &TriPoly, f: &NumberField) -> Option<TriPoly> {
    let mut terms = Vec::new();
    for (e, c) in p.terms() {
        terms.push((*e, descend_element(c, f)?));
    }
    Some(TriPoly::from_terms(f, terms))
}

fn descend_element(c: &FieldElement, f: &NumberField) -> Option<FieldElement> {
    let mut c = c.clone();
    while c.field() != f {
        let parts = c.base_coeffs();
        if parts[1..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        c = parts[0].clone();
    }
    Some(c)
}

/// Re-verify a record: printed formulas, the printed implicit equation and
/// the alternative parametrization.
pub fn cross_check_record(r: &CurveRecord) -> Result<CrossCheck> {
    let mut out = CrossCheck { id: r.id(), checks: Vec::new() };
    let d = &r.data;
    out.checks.push(("printed formulas expand to the stored coefficients".into(), printed_matches_coefficients(d)?));
    let total: u32 = d.singularities.iter().map(|t| t.index()).sum();
    out.checks.push((format!("indices sum to {total}"), total == 19));
    let odd = d.singularities.iter().filter(|t| t.index() % 2 == 1).count();
    out.checks.push(("exactly one odd index".into(), odd == 1));
    if let Some(printed) = &r.printed_implicit {
        let f = r.curve.implicitize()?;
        let ok = descend(&f, &r.field_f).is_some_and(|g| g.proportional(printed));
        out.checks.push(("implicit equation equals the printed one up to a unit".into(), ok));
    }
    if let Some(alt) = &r.alternative {
        let cmp = compare_sextics_over_f(&r.curve.implicitize()?, &r.field_f, &alt.curve.implicitize()?)?;
        out.checks.push(("both parametrizations give unit-proportional implicit sextics".into(), cmp == SexticComparison::Identical));
        if let SexticComparison::Rescaled { tau, kappa, zeta } = &cmp {
            out.checks.push((
                format!("the implicit sextics agree after X -> X + ({tau}) Z, Y -> ({kappa}) Y, Z -> ({zeta}) Z over F"),
                true,
            ));
        }
    }
    Ok(out)
}

/// Compare an implicit equation over a tower `E / F` with one over another
/// field `K`, trying every embedding of `F` into `K` sending the generator
/// of `F` to a root of its minimal polynomial in `K`. Only `F` of degree
/// one or two over Q is supported.
pub fn same_sextic_over_f(f: &TriPoly, field_f: &NumberField, g: &TriPoly) -> Result<bool> {
    Ok(compare_sextics_over_f(f, field_f, g)? == SexticComparison::Identical)
}

/// Outcome of comparing two implicit equations of the same curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "relation", rename_all = "snake_case")]
pub enum SexticComparison {
    /// The equations agree up to a unit.
    Identical,
    /// The equations agree after `X -> X + tau Z, Y -> kappa Y, Z -> zeta Z`
    /// with `tau, kappa, zeta` in the image of `F`, written over `F`.
    Rescaled { tau: String, kappa: String, zeta: String },
    Different,
}

/// Like [`same_sextic_over_f`], also accepting a triangular change of
/// coordinates defined over `F`.
pub fn compare_sextics_over_f(f: &TriPoly, field_f: &NumberField, g: &TriPoly) -> Result<SexticComparison> {
    let Some(f) = descend(f, field_f) else { return Ok(SexticComparison::Different) };
    let images = images_in(&f, field_f, g.field())?;
    if images.iter().any(|(_, image)| image.proportional(g)) {
        return Ok(SexticComparison::Identical);
    }
    for (root, image) in &images {
        if let Some(t) = triangular_equivalence(image, g)? {
            let pulled: Option<Vec<FieldElement>> = t.iter().map(|c| preimage_in_f(c, root, field_f)).collect();
            if let Some(p) = pulled {
                let [tau, kappa, zeta] = [0, 1, 2].map(|i| p[i].to_string());
                return Ok(SexticComparison::Rescaled { tau, kappa, zeta });
            }
        }
    }
    Ok(SexticComparison::Different)
}

/// The element `u + v g` of `field_f`, `g` its generator, whose image is
/// `x = u + v root`, if `x` has that shape.
fn preimage_in_f(x: &FieldElement, root: &FieldElement, field_f: &NumberField) -> Option<FieldElement> {
    let (xc, rc) = (x.coords(), root.coords());
    let Some(j) = (1..rc.len()).find(|&j| !rc[j].is_zero()) else {
        return xc.iter().skip(1).all(|c| c.is_zero()).then(|| FieldElement::from_rational(field_f, xc[0].clone()));
    };
    let v = &xc[j] / &rc[j];
    let u = &xc[0] - &(&v * &rc[0]);
    if &(&FieldElement::from_rational(x.field(), u.clone()) + &root.scale(&v)) != x {
        return None;
    }
    Some(&FieldElement::from_rational(field_f, u) + &FieldElement::generator(field_f).scale(&v))
}

/// The images of `f`, with coefficients in `field_f`, under every embedding
/// of `field_f` into `k`, each with the image of the generator. Handles Q
/// and quadratic fields over Q.
pub fn images_in(f: &TriPoly, field_f: &NumberField, k: &NumberField) -> Result<Vec<(FieldElement, TriPoly)>> {
    if field_f.is_rationals() {
        return Ok(vec![(FieldElement::zero(k), f.lift_to(k)?)]);
    }
    if field_f.degree() != 2 || field_f.base().is_some_and(|b| !b.is_rationals()) {
        return Err(Error::Parse("unsupported field for comparison".into()));
    }
    let m = field_f.modulus().expect("simple extension");
    let q = UniPoly::new(k, m.coeffs().iter().map(|c| FieldElement::from_rational(k, c.as_rational().expect("rational modulus"))).collect());
    Ok(quadratic_roots_in(&q)?
        .into_iter()
        .map(|root| {
            let image = TriPoly::from_terms(
                k,
                f.terms().iter().map(|(e, c)| {
                    let cs = c.coords();
                    let v = &FieldElement::from_rational(k, cs[0].clone()) + &root.scale(&cs[1]);
                    (*e, v)
                }),
            );
            (root, image)
        })
        .collect())
}

/// Looks for a map `X -> X + tau Z, Y -> kappa Y, Z -> zeta Z` with
/// `f` composed with it proportional to `g`. Such maps fix the point
/// `(0:1:0)`, the line `Z = 0` and the line `Y = 0`. Returns
/// `[tau, kappa, zeta]`.
pub fn triangular_equivalence(f: &TriPoly, g: &TriPoly) -> Result<Option<[FieldElement; 3]>> {
    let k = g.field();
    let f = f.lift_to(k)?;
    let (f600, g600) = (f.coeff([6, 0, 0]), g.coeff([6, 0, 0]));
    if f600.is_zero() || g600.is_zero() {
        return Ok(None);
    }
    let f = f.scale(&f600.inv()?);
    let g = g.scale(&g600.inv()?);
    let f510 = f.coeff([5, 1, 0]);
    if f510.is_zero() {
        return Ok(None);
    }
    let kappa = g.coeff([5, 1, 0]).div(&f510)?;
    // 6 tau + f501 zeta = g501
    // 5 f510 tau + f411 zeta = g411 / kappa
    let (a11, a12, b1) = (FieldElement::from_int(k, 6), f.coeff([5, 0, 1]), g.coeff([5, 0, 1]));
    let (a21, a22, b2) = (&FieldElement::from_int(k, 5) * &f510, f.coeff([4, 1, 1]), g.coeff([4, 1, 1]).div(&kappa)?);
    let det = &(&a11 * &a22) - &(&a12 * &a21);
    if det.is_zero() {
        return Ok(None);
    }
    let tau = (&(&b1 * &a22) - &(&a12 * &b2)).div(&det)?;
    let zeta = (&(&a11 * &b2) - &(&b1 * &a21)).div(&det)?;
    if zeta.is_zero() {
        return Ok(None);
    }
    let x = TriPoly::from_terms(k, [([1, 0, 0], FieldElement::one(k)), ([0, 0, 1], tau.clone())]);
    let y = TriPoly::from_terms(k, [([0, 1, 0], kappa.clone())]);
    let z = TriPoly::from_terms(k, [([0, 0, 1], zeta.clone())]);
    Ok(f.compose([&x, &y, &z]).proportional(&g).then_some([tau, kappa, zeta]))
}

/// Roots in `K` of a quadratic over `K`, where `K` has a power basis over Q.
fn quadratic_roots_in(q: &UniPoly) -> Result<Vec<FieldElement>> {
    let k = q.field();
    let (c, b, a) = (q.coeff(0), q.coeff(1), q.coeff(2));
    let disc = &(&b * &b) - &(&FieldElement::from_int(k, 4) * &(&a * &c));
    let two_a = &a + &a;
    field_sqrt(&disc)?
        .into_iter()
        .flat_map(|s| [(&(-&b) + &s).div(&two_a), (&(-&b) - &s).div(&two_a)])
        .collect()
}

/// A square root of `d` in its field, found as a root of `T^2 - d` among
/// the elements of the shape `u + v g^2` for the generator `g`, which
/// covers the biquadratic-type fields of the corpus.
fn field_sqrt(d: &FieldElement) -> Result<Vec<FieldElement>> {
    let k = d.field();
    if k.base().is_none_or(|b| !b.is_rationals()) {
        return Ok(Vec::new());
    }
    let g = FieldElement::generator(k);
    let g2 = &g * &g;
    let r = |x: i64| Rational::from_integer(x.into());
    let mut out = Vec::new();
    for odd in [false, true] {
        // s = (u + v g2) * (g if odd); s^2 = (u + v g2)^2 * (g2 if odd)
        // coordinates of s^2 are quadratic forms in (u, v); solve by elimination on the two coordinates
        let e = |u: &Rational, v: &Rational| {
            let base = &FieldElement::from_rational(k, u.clone()) + &g2.scale(v);
            if odd {
                &base * &g
            } else {
                base
            }
        };
        // s^2 - d as a quadratic form: sample to get coefficients of u^2, uv, v^2
        let sq = |u: &Rational, v: &Rational| {
            let s = e(u, v);
            &(&s * &s) - d
        };
        let c00 = sq(&r(0), &r(0));
        let c10 = &(&sq(&r(1), &r(0)) - &c00);
        let c01 = &(&sq(&r(0), &r(1)) - &c00);
        let c11 = &(&(&sq(&r(1), &r(1)) - &c00) - c10) - c01;
        // F(u, v) = c10 u^2 + c11 u v + c01 v^2 + c00 with every coordinate zero
        if let Some((u, v)) = solve_quadratic_system(c10, &c11, c01, &c00) {
            let s = e(&u, &v);
            if &(&s * &s) == d {
                out.push(s);
            }
        }
    }
    Ok(out)
}

/// A rational zero of `A u^2 + B u v + C v^2 + D = 0` read coordinatewise.
fn solve_quadratic_system(a: &FieldElement, b: &FieldElement, c: &FieldElement, d: &FieldElement) -> Option<(Rational, Rational)> {
    let n = a.coords().len();
    let rows: Vec<[Rational; 4]> = (0..n)
        .map(|i| [a.coords()[i].clone(), b.coords()[i].clone(), c.coords()[i].clone(), d.coords()[i].clone()])
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    // try u = 0 or v = 0 first, then v = mu u with u^2 = -D / (A + B mu + C mu^2)
    let check = |u: &Rational, v: &Rational| rows.iter().all(|r| num_traits::Zero::is_zero(&(&r[0] * u * u + &r[1] * u * v + &r[2] * v * v + &r[3])));
    let sqrt = crate::numberfield::rational_sqrt;
    let zero = Rational::from_integer(0.into());
    for r in &rows {
        if !r[0].is_zero() {
            if let Some(u) = sqrt(&(-&r[3] / &r[0])) {
                if check(&u, &zero) {
                    return Some((u, zero));
                }
            }
        }
        if !num_traits::Zero::is_zero(&r[2]) {
            if let Some(v) = sqrt(&(-&r[3] / &r[2])) {
                if check(&zero, &v) {
                    return Some((zero, v));
                }
            }
        }
    }
    // two independent rows: eliminate D to get a binary form in (u, v), whose roots give mu
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            let (r1, r2) = (&rows[i], &rows[j]);
            let f: Vec<Rational> = (0..3).map(|k| &r1[k] * &r2[3] - &r2[k] * &r1[3]).collect();
            // f0 + f1 mu + f2 mu^2 = 0
            let mus: Vec<Rational> = if num_traits::Zero::is_zero(&f[2]) {
                if num_traits::Zero::is_zero(&f[1]) {
                    continue;
                }
                vec![-&f[0] / &f[1]]
            } else {
                let disc = &f[1] * &f[1] - Rational::from_integer(4.into()) * &f[2] * &f[0];
                match sqrt(&disc) {
                    Some(s) => vec![(-&f[1] + &s) / (Rational::from_integer(2.into()) * &f[2]), (-&f[1] - &s) / (Rational::from_integer(2.into()) * &f[2])],
                    None => continue,
                }
            };
            for mu in mus {
                for r in &rows {
                    let den = &r[0] + &r[1] * &mu + &r[2] * &mu * &mu;
                    if num_traits::Zero::is_zero(&den) {
                        continue;
                    }
                    if let Some(u) = sqrt(&(-&r[3] / den)) {
                        let v = &u * &mu;
                        if check(&u, &v) {
                            return Some((u, v));
                        }
                    }
                }
            }
        }
    }
    None
}
