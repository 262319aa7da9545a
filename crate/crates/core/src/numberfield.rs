//! Exact arithmetic in Q and in towers of simple extensions `K[T]/(m(T))`.
//!
//! Elements are stored as flattened rational coordinate vectors in the power
//! basis of the tower: for `E = K[T]/(m)` with `[E:K] = d`, an element is `d`
//! consecutive chunks, chunk `j` being the `K`-coordinates of the coefficient of
//! `T^j`.
//!
//! A layer is either a field (its modulus is known to be irreducible) or an
//! *algebra*: a modulus that is only known to be squarefree. Algebras are used to
//! work with all roots of a polynomial at once; whenever an inversion or a zero
//! test meets a zero divisor, [`Error::ZeroDivisor`] hands the caller a proper
//! factor of the modulus so that it can split the computation.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::polynomial::UniPoly;

pub type Rational = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LayerKind {
    Field,
    Algebra,
}

#[derive(Clone)]
pub struct NumberField(Arc<FieldData>);

#[derive(PartialEq)]
struct FieldData {
    generator: Option<String>,
    base: Option<NumberField>,
    // monic, rel_degree + 1 chunks of base coordinates, low to high
    modulus: Vec<Vec<Rational>>,
    rel_degree: usize,
    degree: usize,
    kind: LayerKind,
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for NumberField {}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn chunk_is_zero(c: &[Rational]) -> bool {
    c.iter().all(Zero::is_zero)
}

impl NumberField {
    pub fn rationals() -> Self {
        NumberField(Arc::new(FieldData {
            generator: None,
            base: None,
            modulus: Vec::new(),
            rel_degree: 1,
            degree: 1,
            kind: LayerKind::Field,
        }))
    }

    /// `Q[name]/(minpoly)`. The polynomial is made monic; it must be squarefree
    /// of degree at least 1. Irreducibility is taken on trust.
    pub fn simple(name: &str, minpoly: &[Rational]) -> Result<Self> {
        let q = NumberField::rationals();
        let coeffs: Vec<FieldElement> = minpoly
            .iter()
            .map(|c| FieldElement::from_rational(&q, c.clone()))
            .collect();
        NumberField::extension(&q, name, &UniPoly::new(&q, coeffs), LayerKind::Field)
    }

    /// `base[name]/(minpoly)` with `minpoly` over `base`.
    pub fn extension(base: &NumberField, name: &str, minpoly: &UniPoly, kind: LayerKind) -> Result<Self> {
        if minpoly.field() != base {
            return Err(Error::FieldMismatch);
        }
        let d = minpoly.degree().ok_or(Error::ZeroPolynomial)?;
        if d == 0 {
            return Err(Error::WrongDegree { expected: 1, found: 0 });
        }
        let monic = minpoly.monic()?;
        if d > 1 {
            let g = monic.gcd(&monic.derivative())?;
            if g.degree() != Some(0) {
                return Err(Error::NotSquarefree);
            }
        }
        let modulus = monic.coeffs().iter().map(|c| c.coords().to_vec()).collect();
        Ok(NumberField(Arc::new(FieldData {
            generator: Some(name.to_string()),
            base: Some(base.clone()),
            modulus,
            rel_degree: d,
            degree: d * base.degree(),
            kind,
        })))
    }

    pub fn is_rationals(&self) -> bool {
        self.0.base.is_none()
    }

    /// Absolute degree over Q.
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn relative_degree(&self) -> usize {
        self.0.rel_degree
    }

    pub fn base(&self) -> Option<&NumberField> {
        self.0.base.as_ref()
    }

    pub fn generator_name(&self) -> Option<&str> {
        self.0.generator.as_deref()
    }

    pub fn kind(&self) -> LayerKind {
        self.0.kind
    }

    /// True when every layer of the tower is known to be a field.
    pub fn is_field(&self) -> bool {
        self.0.kind == LayerKind::Field && self.0.base.as_ref().is_none_or(|b| b.is_field())
    }

    /// The relative modulus as a polynomial over the base.
    pub fn modulus(&self) -> Option<UniPoly> {
        let base = self.base()?;
        let coeffs = self
            .0
            .modulus
            .iter()
            .map(|c| FieldElement { field: base.clone(), coords: c.clone() })
            .collect();
        Some(UniPoly::new(base, coeffs))
    }

    /// Whether `sub` is this field or one of the layers below it.
    pub fn contains_layer(&self, sub: &NumberField) -> bool {
        let mut cur = Some(self);
        while let Some(f) = cur {
            if f == sub {
                return true;
            }
            cur = f.base();
        }
        false
    }

    pub fn describe(&self) -> String {
        match (&self.0.base, &self.0.generator) {
            (Some(base), Some(g)) => {
                let m = self.modulus().expect("extension has a modulus");
                let inner = if base.is_rationals() { "Q".to_string() } else { base.describe() };
                format!("{inner}[{g}]/({})", m.to_string_in(g))
            }
            _ => "Q".to_string(),
        }
    }

    fn mul_raw(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let base = match &self.0.base {
            None => return vec![&a[0] * &b[0]],
            Some(b) => b,
        };
        let d = self.0.rel_degree;
        let bd = base.degree();
        if bd == 1 {
            let mut prod = vec![Rational::zero(); 2 * d - 1];
            for (i, ai) in a.iter().enumerate() {
                if ai.is_zero() {
                    continue;
                }
                for (j, bj) in b.iter().enumerate() {
                    if !bj.is_zero() {
                        prod[i + j] += ai * bj;
                    }
                }
            }
            for k in (d..2 * d - 1).rev() {
                let c = std::mem::take(&mut prod[k]);
                if c.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let m = &self.0.modulus[j][0];
                    if !m.is_zero() {
                        prod[k - d + j] -= &c * m;
                    }
                }
            }
            prod.truncate(d);
            return prod;
        }
        let mut prod = vec![vec![Rational::zero(); bd]; 2 * d - 1];
        for i in 0..d {
            let ai = &a[i * bd..(i + 1) * bd];
            if chunk_is_zero(ai) {
                continue;
            }
            for j in 0..d {
                let bj = &b[j * bd..(j + 1) * bd];
                if chunk_is_zero(bj) {
                    continue;
                }
                let p = base.mul_raw(ai, bj);
                for (t, v) in prod[i + j].iter_mut().zip(p) {
                    *t += v;
                }
            }
        }
        for k in (d..2 * d - 1).rev() {
            let c = std::mem::replace(&mut prod[k], vec![Rational::zero(); bd]);
            if chunk_is_zero(&c) {
                continue;
            }
            for j in 0..d {
                let m = &self.0.modulus[j];
                if chunk_is_zero(m) {
                    continue;
                }
                let p = base.mul_raw(&c, m);
                for (t, v) in prod[k - d + j].iter_mut().zip(p) {
                    *t -= v;
                }
            }
        }
        prod.truncate(d);
        prod.into_iter().flatten().collect()
    }

    fn inv_raw(&self, a: &[Rational]) -> Result<Vec<Rational>> {
        if chunk_is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        let base = match &self.0.base {
            None => return Ok(vec![a[0].recip()]),
            Some(b) => b,
        };
        let bd = base.degree();
        let d = self.0.rel_degree;
        let to_chunks = |v: &[Rational]| -> Vec<Vec<Rational>> { v.chunks(bd).map(|c| c.to_vec()).collect() };
        // extended Euclid on (modulus, a) over the base
        let mut r0: Vec<Vec<Rational>> = self.0.modulus.clone();
        let mut r1 = to_chunks(a);
        trim(&mut r1);
        let mut s0: Vec<Vec<Rational>> = Vec::new();
        let mut s1: Vec<Vec<Rational>> = vec![base.one_raw()];
        while !r1.is_empty() {
            let (q, r) = divrem_chunks(base, &r0, &r1)?;
            let qs1 = mul_chunks(base, &q, &s1);
            let s2 = sub_chunks(&s0, &qs1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        if r0.len() > 1 {
            let lc_inv = base.inv_raw(r0.last().unwrap())?;
            let factor = r0
                .iter()
                .map(|c| FieldElement { field: base.clone(), coords: base.mul_raw(c, &lc_inv) })
                .collect();
            return Err(Error::ZeroDivisor {
                generator: self.0.generator.clone().unwrap_or_default(),
                factor,
            });
        }
        let c_inv = base.inv_raw(&r0[0])?;
        let mut out = vec![Rational::zero(); d * bd];
        for (j, chunk) in s0.iter().enumerate().take(d) {
            let v = base.mul_raw(chunk, &c_inv);
            out[j * bd..(j + 1) * bd].clone_from_slice(&v);
        }
        Ok(out)
    }

    fn one_raw(&self) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.degree()];
        v[0] = Rational::one();
        v
    }
}

fn trim(p: &mut Vec<Vec<Rational>>) {
    while p.last().is_some_and(|c| chunk_is_zero(c)) {
        p.pop();
    }
}

fn sub_chunks(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len().max(b.len());
    let width = a.first().or(b.first()).map_or(0, |c| c.len());
    let mut out = vec![vec![Rational::zero(); width]; n];
    for (i, c) in a.iter().enumerate() {
        for (o, v) in out[i].iter_mut().zip(c) {
            *o += v;
        }
    }
    for (i, c) in b.iter().enumerate() {
        for (o, v) in out[i].iter_mut().zip(c) {
            *o -= v;
        }
    }
    trim(&mut out);
    out
}

fn mul_chunks(base: &NumberField, a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let bd = base.degree();
    let mut out = vec![vec![Rational::zero(); bd]; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            for (o, v) in out[i + j].iter_mut().zip(base.mul_raw(x, y)) {
                *o += v;
            }
        }
    }
    trim(&mut out);
    out
}

fn divrem_chunks(
    base: &NumberField,
    a: &[Vec<Rational>],
    b: &[Vec<Rational>],
) -> Result<(Vec<Vec<Rational>>, Vec<Vec<Rational>>)> {
    let bd = base.degree();
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return Ok((Vec::new(), r));
    }
    let lc_inv = base.inv_raw(b.last().unwrap())?;
    let mut q = vec![vec![Rational::zero(); bd]; r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = base.mul_raw(r.last().unwrap(), &lc_inv);
        for (j, bj) in b.iter().enumerate() {
            for (o, v) in r[shift + j].iter_mut().zip(base.mul_raw(&c, bj)) {
                *o -= v;
            }
        }
        q[shift] = c;
        let top = r.len() - 1;
        r[top] = vec![Rational::zero(); bd];
        trim(&mut r);
    }
    trim(&mut q);
    Ok((q, r))
}

/// An element of a [`NumberField`], stored in the flattened power basis.
#[derive(Clone)]
pub struct FieldElement {
    field: NumberField,
    coords: Vec<Rational>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.field == other.field
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_coords(&self.field, &self.coords))
    }
}

fn format_coords(field: &NumberField, coords: &[Rational]) -> String {
    let base = match field.base() {
        None => return coords[0].to_string(),
        Some(b) => b,
    };
    let g = field.generator_name().unwrap_or("?");
    let bd = base.degree();
    let mut terms: Vec<String> = Vec::new();
    for (j, chunk) in coords.chunks(bd).enumerate() {
        if chunk_is_zero(chunk) {
            continue;
        }
        let c = format_coords(base, chunk);
        let mono = match j {
            0 => String::new(),
            1 => g.to_string(),
            _ => format!("{g}^{j}"),
        };
        let compound = chunk.iter().filter(|v| !v.is_zero()).count() > 1;
        let term = if mono.is_empty() {
            c
        } else if c == "1" {
            mono
        } else if c == "-1" {
            format!("-{mono}")
        } else if compound {
            format!("({c})*{mono}")
        } else {
            format!("{c}*{mono}")
        };
        terms.push(term);
    }
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        if i == 0 {
            out.push_str(t);
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(t);
        }
    }
    out
}

/// The four field operations exposed as a single entry point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn element_arithmetic(op: ArithOp, x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
    if x.field != y.field {
        return Err(Error::FieldMismatch);
    }
    match op {
        ArithOp::Add => Ok(x + y),
        ArithOp::Sub => Ok(x - y),
        ArithOp::Mul => Ok(x * y),
        ArithOp::Div => x.div(y),
    }
}

impl FieldElement {
    pub fn zero(field: &NumberField) -> Self {
        FieldElement { field: field.clone(), coords: vec![Rational::zero(); field.degree()] }
    }

    pub fn one(field: &NumberField) -> Self {
        FieldElement { field: field.clone(), coords: field.one_raw() }
    }

    pub fn from_rational(field: &NumberField, r: Rational) -> Self {
        let mut e = FieldElement::zero(field);
        e.coords[0] = r;
        e
    }

    pub fn from_int(field: &NumberField, n: i64) -> Self {
        FieldElement::from_rational(field, rat(n))
    }

    pub fn from_coords(field: &NumberField, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != field.degree() {
            return Err(Error::WrongDegree { expected: field.degree(), found: coords.len() });
        }
        Ok(FieldElement { field: field.clone(), coords })
    }

    /// The generator of the top layer of `field` (the class of `T`).
    pub fn generator(field: &NumberField) -> Self {
        let mut e = FieldElement::zero(field);
        match field.base() {
            None => e.coords[0] = Rational::one(),
            Some(base) if field.relative_degree() > 1 => e.coords[base.degree()] = Rational::one(),
            // degree-one layer: T equals minus the constant term of the modulus
            Some(base) => {
                let c = FieldElement { field: base.clone(), coords: field.0.modulus[0].clone() };
                return (-c).lift_to(field).expect("base lifts into extension");
            }
        }
        e
    }

    /// Element built from its coefficients over the base of `field`.
    pub fn from_base_coeffs(field: &NumberField, coeffs: &[FieldElement]) -> Result<Self> {
        let base = field.base().ok_or(Error::FieldMismatch)?;
        let bd = base.degree();
        let mut out = FieldElement::zero(field);
        let d = field.relative_degree();
        let t = FieldElement::generator(field);
        if coeffs.len() <= d {
            for (j, c) in coeffs.iter().enumerate() {
                if c.field() != base {
                    return Err(Error::FieldMismatch);
                }
                out.coords[j * bd..(j + 1) * bd].clone_from_slice(&c.coords);
            }
            return Ok(out);
        }
        // Horner for long representatives
        for c in coeffs.iter().rev() {
            out = &(&out * &t) + &c.lift_to(field)?;
        }
        Ok(out)
    }

    /// Coefficients over the base field (top layer only).
    pub fn base_coeffs(&self) -> Vec<FieldElement> {
        match self.field.base() {
            None => vec![self.clone()],
            Some(base) => self
                .coords
                .chunks(base.degree())
                .map(|c| FieldElement { field: base.clone(), coords: c.to_vec() })
                .collect(),
        }
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        chunk_is_zero(&self.coords)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coords[1..].iter().all(Zero::is_zero) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    /// Zero test that is sound in algebras: `Ok(false)` means the element is a
    /// unit, `Err(ZeroDivisor)` means it vanishes on some components only.
    pub fn zero_test(&self) -> Result<bool> {
        if self.is_zero() {
            return Ok(true);
        }
        if self.field.is_field() {
            return Ok(false);
        }
        self.inv().map(|_| false)
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(FieldElement { field: self.field.clone(), coords: self.field.inv_raw(&self.coords)? })
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> FieldElement {
        let mut base = self.clone();
        let mut acc = FieldElement::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, r: &Rational) -> FieldElement {
        FieldElement { field: self.field.clone(), coords: self.coords.iter().map(|c| c * r).collect() }
    }

    /// Embed into a tower that has this element's field as one of its layers.
    pub fn lift_to(&self, target: &NumberField) -> Result<FieldElement> {
        if &self.field == target {
            return Ok(self.clone());
        }
        let base = target.base().ok_or(Error::FieldMismatch)?;
        let inner = self.lift_to(base)?;
        let mut out = FieldElement::zero(target);
        out.coords[..base.degree()].clone_from_slice(&inner.coords);
        Ok(out)
    }

    /// Absolute norm to Q: the determinant of multiplication by `self` on the
    /// flattened Q-basis. In an algebra it vanishes exactly on zero divisors.
    pub fn norm(&self) -> Rational {
        let n = self.field.degree();
        let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut e = vec![Rational::zero(); n];
            e[i] = Rational::one();
            cols.push(self.field.mul_raw(&self.coords, &e));
        }
        determinant(cols)
    }
}

/// Determinant of a square rational matrix (given as columns or rows).
pub(crate) fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &p;
            for c in col..n {
                let v = &f * &m[col][c];
                m[r][c] -= v;
            }
        }
    }
    det
}

fn check_same(a: &FieldElement, b: &FieldElement) {
    assert!(a.field == b.field, "arithmetic on elements of different fields");
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        check_same(self, rhs);
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        check_same(self, rhs);
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        check_same(self, rhs);
        FieldElement { field: self.field.clone(), coords: self.field.mul_raw(&self.coords, &rhs.coords) }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { field: self.field.clone(), coords: self.coords.iter().map(|a| -a).collect() }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// Square root of a rational, if it is a rational square.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(Rational::new(sn, sd))
    } else {
        None
    }
}

/// Adjoin a root of the quadratic `q` over `base`.
///
/// Over Q a split quadratic yields Q itself and the root `(-b - sqrt(disc))/2a`.
/// Over an extension, a discriminant whose norm is not a rational square
/// cannot be a square, so the result is a field; otherwise the result is an
/// algebra layer whose zero divisors, if any, surface during later computation.
pub fn adjoin_root(base: &NumberField, q: &UniPoly, name: &str) -> Result<(NumberField, FieldElement)> {
    let deg = q.degree().ok_or(Error::ZeroPolynomial)?;
    if deg != 2 {
        return Err(Error::WrongDegree { expected: 2, found: deg });
    }
    if q.field() != base {
        return Err(Error::FieldMismatch);
    }
    let (c, b, a) = (&q.coeffs()[0], &q.coeffs()[1], &q.coeffs()[2]);
    let disc = &(b * b) - &(&FieldElement::from_int(base, 4) * &(a * c));
    if disc.is_zero() {
        return Err(Error::NotSquarefree);
    }
    if let Some(d) = disc.as_rational().filter(|_| base.is_rationals()) {
        if let Some(s) = rational_sqrt(&d) {
            let root = (&(-b) - &FieldElement::from_rational(base, s)).div(&a.scale(&rat(2)))?;
            return Ok((base.clone(), root));
        }
        let ext = NumberField::extension(base, name, q, LayerKind::Field)?;
        let t = FieldElement::generator(&ext);
        return Ok((ext, t));
    }
    let kind = if rational_sqrt(&disc.norm()).is_none() { LayerKind::Field } else { LayerKind::Algebra };
    let ext = NumberField::extension(base, name, q, kind)?;
    let t = FieldElement::generator(&ext);
    Ok((ext, t))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn field(name: &str, m: &[i64]) -> NumberField {
        NumberField::simple(name, &m.iter().map(|&c| rat(c)).collect::<Vec<_>>()).unwrap()
    }

    fn elem(f: &NumberField, c: &[i64]) -> FieldElement {
        let mut v: Vec<Rational> = c.iter().map(|&x| rat(x)).collect();
        v.resize(f.degree(), Rational::zero());
        FieldElement::from_coords(f, v).unwrap()
    }

    #[test]
    fn cubic_reduction() {
        // a^3 - 2a - 2 = 0
        let f = field("a", &[-2, -2, 0, 1]);
        let a = FieldElement::generator(&f);
        let a2 = &a * &a;
        assert_eq!(&a2 * &a, elem(&f, &[2, 2]));
        let m = &(&(&a2 * &a) - &a.scale(&rat(2))) - &FieldElement::from_int(&f, 2);
        assert!(m.is_zero());
        assert!(!(&a - &FieldElement::one(&f)).is_zero());
    }

    #[test]
    fn gaussian_division() {
        let f = field("i", &[1, 0, 1]);
        let one = FieldElement::one(&f);
        let x = element_arithmetic(ArithOp::Div, &one, &elem(&f, &[1, 1])).unwrap();
        let expect = FieldElement::from_coords(&f, vec![q(1, 2), q(-1, 2)]).unwrap();
        assert_eq!(x, expect);
    }

    #[test]
    fn cube_root_of_unity() {
        let f = field("w", &[1, 1, 1]);
        let w = FieldElement::generator(&f);
        assert!((&w * &(&w * &w)).is_one());
    }

    #[test]
    fn errors() {
        let f = field("i", &[1, 0, 1]);
        let g = field("w", &[1, 1, 1]);
        let z = FieldElement::zero(&f);
        assert!(matches!(FieldElement::one(&f).div(&z), Err(Error::DivisionByZero)));
        assert!(matches!(
            element_arithmetic(ArithOp::Add, &FieldElement::one(&f), &FieldElement::one(&g)),
            Err(Error::FieldMismatch)
        ));
        assert!(matches!(NumberField::simple("a", &[rat(1), rat(-2), rat(1)]), Err(Error::NotSquarefree)));
    }

    #[test]
    fn tower_arithmetic() {
        // Q(a)(b) with a^2 = -7, b^2 = -3
        let fa = field("a", &[7, 0, 1]);
        let m = UniPoly::new(
            &fa,
            vec![FieldElement::from_int(&fa, 3), FieldElement::zero(&fa), FieldElement::one(&fa)],
        );
        let e = NumberField::extension(&fa, "b", &m, LayerKind::Field).unwrap();
        assert_eq!(e.degree(), 4);
        let a = FieldElement::generator(&fa).lift_to(&e).unwrap();
        let b = FieldElement::generator(&e);
        let ab = &a * &b;
        assert_eq!(&ab * &ab, FieldElement::from_int(&e, 21));
        let x = &(&ab + &FieldElement::from_int(&e, 5)) + &a;
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
        assert_eq!(ab.to_string(), "a*b");
    }

    #[test]
    fn adjoin_splits_over_q() {
        let qf = NumberField::rationals();
        let p = UniPoly::from_ints(&qf, &[2, -3, 1]);
        let (k, r) = adjoin_root(&qf, &p, "s").unwrap();
        assert!(k.is_rationals());
        assert!(r.is_one());
        let p = UniPoly::from_ints(&qf, &[-3, 0, 1]);
        let (k, r) = adjoin_root(&qf, &p, "s").unwrap();
        assert_eq!(k.degree(), 2);
        assert_eq!(&r * &r, FieldElement::from_int(&k, 3));
    }

    #[test]
    fn adjoin_over_cubic() {
        // a^3 - a^2 - a - 1 = 0, t^2 - (5a^2 - 20)
        let f = field("a", &[-1, -1, -1, 1]);
        let a = FieldElement::generator(&f);
        let c = &(&(&a * &a).scale(&rat(5)) - &FieldElement::from_int(&f, 20)).neg();
        let p = UniPoly::new(&f, vec![c.clone(), FieldElement::zero(&f), FieldElement::one(&f)]);
        let (k, r) = adjoin_root(&f, &p, "s").unwrap();
        assert_eq!(k.degree(), 6);
        assert_eq!(&r * &r, (-c).lift_to(&k).unwrap());
    }

    #[test]
    fn algebra_zero_divisor() {
        let qf = NumberField::rationals();
        // (t-1)(t-2) taken as an algebra
        let p = UniPoly::from_ints(&qf, &[2, -3, 1]);
        let alg = NumberField::extension(&qf, "s", &p, LayerKind::Algebra).unwrap();
        let s = FieldElement::generator(&alg);
        let x = &s - &FieldElement::one(&alg);
        match x.zero_test() {
            Err(Error::ZeroDivisor { factor, .. }) => {
                assert_eq!(factor.len(), 2);
                assert_eq!(factor[0], FieldElement::from_int(&qf, -1));
            }
            other => panic!("expected zero divisor, got {other:?}"),
        }
        assert_eq!(x.norm(), rat(0));
        assert_eq!((&s + &FieldElement::one(&alg)).norm(), rat(6));
    }

    #[test]
    fn display() {
        let f = field("a", &[-2, -2, 0, 1]);
        let e = FieldElement::from_coords(&f, vec![q(3, 2), rat(-1), rat(5)]).unwrap();
        assert_eq!(e.to_string(), "3/2 - a + 5*a^2");
    }
}
