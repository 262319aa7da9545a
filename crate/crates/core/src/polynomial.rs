//! Dense univariate and sparse trivariate polynomials over a [`NumberField`],
//! with resultants, discriminants, gcd and squarefree decomposition.
//!
//! Univariate resultants run the Euclidean remainder sequence over the
//! coefficient field. Multivariate resultants are computed by evaluation at a
//! grid of small integers followed by Newton interpolation, which keeps every
//! intermediate quantity a plain field element.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numberfield::{FieldElement, NumberField, Rational};

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    field: NumberField,
    coeffs: Vec<FieldElement>,
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_in("t"))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_in("t"))
    }
}

fn format_term(c: &FieldElement, mono: &str) -> String {
    let s = c.to_string();
    if mono.is_empty() {
        return s;
    }
    let compound = c.coords().iter().filter(|v| !v.is_zero()).count() > 1;
    if s == "1" {
        mono.to_string()
    } else if s == "-1" {
        format!("-{mono}")
    } else if compound {
        format!("({s})*{mono}")
    } else {
        format!("{s}*{mono}")
    }
}

fn join_terms(terms: Vec<String>) -> String {
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

impl UniPoly {
    pub fn new(field: &NumberField, mut coeffs: Vec<FieldElement>) -> Self {
        debug_assert!(coeffs.iter().all(|c| c.field() == field));
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        UniPoly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &NumberField) -> Self {
        UniPoly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &NumberField) -> Self {
        UniPoly::constant(&FieldElement::one(field))
    }

    pub fn constant(c: &FieldElement) -> Self {
        UniPoly::new(c.field(), vec![c.clone()])
    }

    /// The monomial `t`.
    pub fn t(field: &NumberField) -> Self {
        UniPoly::new(field, vec![FieldElement::zero(field), FieldElement::one(field)])
    }

    pub fn from_ints(field: &NumberField, c: &[i64]) -> Self {
        UniPoly::new(field, c.iter().map(|&v| FieldElement::from_int(field, v)).collect())
    }

    pub fn from_rationals(field: &NumberField, c: &[Rational]) -> Self {
        UniPoly::new(field, c.iter().map(|v| FieldElement::from_rational(field, v.clone())).collect())
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of `t^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| FieldElement::zero(&self.field))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lc(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn to_string_in(&self, var: &str) -> String {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            terms.push(format_term(c, &mono));
        }
        join_terms(terms)
    }

    pub fn scale(&self, c: &FieldElement) -> UniPoly {
        UniPoly::new(&self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            &self.field,
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c.scale(&rat(i as i64))).collect(),
        )
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero(x.field());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Evaluate at a point of an extension of the coefficient field.
    pub fn eval_lifted(&self, x: &FieldElement) -> Result<FieldElement> {
        let mut acc = FieldElement::zero(x.field());
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &c.lift_to(x.field())?;
        }
        Ok(acc)
    }

    pub fn lift_to(&self, field: &NumberField) -> Result<UniPoly> {
        Ok(UniPoly::new(field, self.coeffs.iter().map(|c| c.lift_to(field)).collect::<Result<_>>()?))
    }

    /// `self(inner(t))`.
    pub fn compose(&self, inner: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &UniPoly::constant(c);
        }
        acc
    }

    /// `self(t + c)`.
    pub fn taylor_shift(&self, c: &FieldElement) -> UniPoly {
        let n = self.coeffs.len();
        let mut a: Vec<FieldElement> = self.coeffs.clone();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let v = &a[j + 1] * c;
                a[j] = &a[j] + &v;
            }
        }
        UniPoly::new(&self.field, a)
    }

    /// `t^n self(1/t)` for a formal degree `n >= deg`.
    pub fn reverse(&self, n: usize) -> UniPoly {
        let mut c = vec![FieldElement::zero(&self.field); n + 1];
        for (i, v) in self.coeffs.iter().enumerate() {
            c[n - i] = v.clone();
        }
        UniPoly::new(&self.field, c)
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        let mut acc = UniPoly::one(&self.field);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn monic(&self) -> Result<UniPoly> {
        let lc = self.lc().ok_or(Error::ZeroPolynomial)?;
        let inv = lc.inv()?;
        Ok(self.scale(&inv))
    }

    pub fn divrem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let inv = d.lc().unwrap().inv()?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((UniPoly::zero(&self.field), self.clone()));
        }
        let mut q = vec![FieldElement::zero(&self.field); r.len() - dd];
        for k in (dd..r.len()).rev() {
            let c = &r[k] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                let v = &c * dj;
                r[k - dd + j] = &r[k - dd + j] - &v;
            }
            q[k - dd] = c;
        }
        r.truncate(dd);
        Ok((UniPoly::new(&self.field, q), UniPoly::new(&self.field, r)))
    }

    pub fn rem(&self, d: &UniPoly) -> Result<UniPoly> {
        Ok(self.divrem(d)?.1)
    }

    /// Division that must leave no remainder.
    pub fn exact_div(&self, d: &UniPoly) -> Result<UniPoly> {
        let (q, r) = self.divrem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision)
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UniPoly) -> Result<UniPoly> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = if r.is_zero() { r } else { r.monic()? };
        }
        a.monic()
    }

    pub fn resultant(&self, other: &UniPoly) -> Result<FieldElement> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        resultant_formal(&self.coeffs, &other.coeffs, &self.field)
    }

    /// `(-1)^{n(n-1)/2} Res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> Result<FieldElement> {
        let n = self.degree().ok_or(Error::ZeroPolynomial)?;
        if n == 0 {
            return Err(Error::WrongDegree { expected: 1, found: 0 });
        }
        let r = self.resultant(&self.derivative())?;
        let d = r.div(self.lc().unwrap())?;
        Ok(if (n * (n - 1) / 2) % 2 == 1 { -d } else { d })
    }

    /// Yun's algorithm. Factors are monic, squarefree and pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Result<SquarefreeDecomposition> {
        let unit = self.lc().ok_or(Error::ZeroPolynomial)?.clone();
        let f = self.monic()?;
        let mut factors = Vec::new();
        if f.degree() == Some(0) {
            return Ok(SquarefreeDecomposition { unit, factors });
        }
        let df = f.derivative();
        let g = f.gcd(&df)?;
        let mut b = f.exact_div(&g)?;
        let mut c = df.exact_div(&g)?;
        let mut d = &c - &b.derivative();
        let mut i = 1u32;
        while b.degree() != Some(0) {
            let a = b.gcd(&d)?;
            if a.degree() != Some(0) {
                factors.push((a.clone(), i));
            }
            b = b.exact_div(&a)?;
            c = d.exact_div(&a)?;
            d = &c - &b.derivative();
            i += 1;
        }
        Ok(SquarefreeDecomposition { unit, factors })
    }

    /// Whether `other = c * self` for a nonzero constant `c`.
    pub fn proportional(&self, other: &UniPoly) -> bool {
        if self.degree() != other.degree() || self.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        let (Ok(a), Ok(b)) = (self.monic(), other.monic()) else {
            return false;
        };
        a == b
    }
}

/// `f = unit * prod factor_i^{m_i}`.
#[derive(Clone, Debug)]
pub struct SquarefreeDecomposition {
    pub unit: FieldElement,
    pub factors: Vec<(UniPoly, u32)>,
}

impl SquarefreeDecomposition {
    pub fn expand(&self) -> UniPoly {
        let mut acc = UniPoly::constant(&self.unit);
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m);
        }
        acc
    }

    /// Product of the factors of odd multiplicity.
    pub fn odd_part(&self) -> UniPoly {
        let mut acc = UniPoly::one(self.unit.field());
        for (f, m) in &self.factors {
            if m % 2 == 1 {
                acc = &acc * f;
            }
        }
        acc
    }

    /// `prod factor_i^{floor(m_i/2)}`, so that `f = unit * odd * square^2`.
    pub fn square_root_part(&self) -> UniPoly {
        let mut acc = UniPoly::one(self.unit.field());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(m / 2);
        }
        acc
    }

    /// Product of all distinct factors.
    pub fn radical(&self) -> UniPoly {
        let mut acc = UniPoly::one(self.unit.field());
        for (f, _) in &self.factors {
            acc = &acc * f;
        }
        acc
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new(&self.field, (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new(&self.field, (0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(&self.field);
        }
        let mut out = vec![FieldElement::zero(&self.field); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        UniPoly::new(&self.field, out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(&self.field, self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Resultant of two coefficient vectors taken with their *formal* degrees
/// `len - 1`, i.e. the Sylvester determinant even when leading entries vanish.
pub fn resultant_formal(f: &[FieldElement], g: &[FieldElement], field: &NumberField) -> Result<FieldElement> {
    let n = f.len().saturating_sub(1);
    let m = g.len().saturating_sub(1);
    let fp = UniPoly::new(field, f.to_vec());
    let gp = UniPoly::new(field, g.to_vec());
    let (Some(n1), Some(m1)) = (fp.degree(), gp.degree()) else {
        // a zero polynomial of positive formal degree gives a zero column
        if n == 0 && m == 0 {
            return Ok(FieldElement::one(field));
        }
        if fp.is_zero() && n == 0 {
            return Ok(if m == 0 { FieldElement::one(field) } else { FieldElement::zero(field) });
        }
        if gp.is_zero() && m == 0 {
            return Ok(if n == 0 { FieldElement::one(field) } else { FieldElement::zero(field) });
        }
        return Ok(FieldElement::zero(field));
    };
    if n1 < n && m1 < m {
        return Ok(FieldElement::zero(field));
    }
    let mut acc = FieldElement::one(field);
    if n1 < n {
        acc = gp.lc().unwrap().pow((n - n1) as u32);
        if ((n - n1) * m) % 2 == 1 {
            acc = -acc;
        }
    } else if m1 < m {
        acc = fp.lc().unwrap().pow((m - m1) as u32);
    }
    Ok(&acc * &resultant_exact(fp, gp)?)
}

// Euclidean remainder sequence for polynomials of exact degree.
fn resultant_exact(mut f: UniPoly, mut g: UniPoly) -> Result<FieldElement> {
    let field = f.field.clone();
    let mut acc = FieldElement::one(&field);
    loop {
        let n = f.degree().unwrap();
        let m = g.degree().unwrap();
        if m == 0 {
            return Ok(&acc * &g.coeffs[0].pow(n as u32));
        }
        if n == 0 {
            return Ok(&acc * &f.coeffs[0].pow(m as u32));
        }
        if n < m {
            if (n * m) % 2 == 1 {
                acc = -acc;
            }
            std::mem::swap(&mut f, &mut g);
            continue;
        }
        // Res(f, g) = (-1)^{nm} lc(g)^{n - deg r} Res(g, r)
        let r = f.rem(&g)?;
        let Some(k) = r.degree() else {
            return Ok(FieldElement::zero(&field));
        };
        acc = &acc * &g.lc().unwrap().pow((n - k) as u32);
        if (n * m) % 2 == 1 {
            acc = -acc;
        }
        f = g;
        g = r;
    }
}

/// Newton interpolation at distinct rational nodes; returns monomial coefficients.
pub fn interpolate(field: &NumberField, nodes: &[Rational], values: &[FieldElement]) -> Vec<FieldElement> {
    let n = nodes.len();
    let mut dd: Vec<FieldElement> = values.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let denom = (&nodes[i] - &nodes[i - j]).recip();
            dd[i] = (&dd[i] - &dd[i - 1]).scale(&denom);
        }
    }
    let mut coeffs = vec![FieldElement::zero(field); n];
    for k in (0..n).rev() {
        // coeffs <- coeffs * (t - nodes[k]) + dd[k]
        let mut next = vec![FieldElement::zero(field); n];
        for i in 0..n {
            if coeffs[i].is_zero() {
                continue;
            }
            if i + 1 < n {
                next[i + 1] = &next[i + 1] + &coeffs[i];
            }
            next[i] = &next[i] - &coeffs[i].scale(&nodes[k]);
        }
        next[0] = &next[0] + &dd[k];
        coeffs = next;
    }
    coeffs
}

pub type Exponent = [u32; 3];

/// Sparse polynomial in three variables. The variable names are up to the
/// caller: `(X, Y, Z)` for plane curves, `(x, y, lambda)` for pencils.
#[derive(Clone, PartialEq, Eq)]
pub struct TriPoly {
    field: NumberField,
    terms: BTreeMap<Exponent, FieldElement>,
}

impl fmt::Debug for TriPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_in(["X", "Y", "Z"]))
    }
}

impl TriPoly {
    pub fn zero(field: &NumberField) -> Self {
        TriPoly { field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(c: &FieldElement) -> Self {
        TriPoly::monomial(c.clone(), [0, 0, 0])
    }

    pub fn monomial(c: FieldElement, e: Exponent) -> Self {
        let field = c.field().clone();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        TriPoly { field, terms }
    }

    pub fn var(field: &NumberField, i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        TriPoly::monomial(FieldElement::one(field), e)
    }

    pub fn from_terms(field: &NumberField, terms: impl IntoIterator<Item = (Exponent, FieldElement)>) -> Self {
        let mut p = TriPoly::zero(field);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Embed a univariate polynomial in variable slot `var`.
    pub fn from_uni(p: &UniPoly, var: usize) -> Self {
        TriPoly::from_terms(
            p.field(),
            p.coeffs().iter().enumerate().map(|(i, c)| {
                let mut e = [0; 3];
                e[var] = i as u32;
                (e, c.clone())
            }),
        )
    }

    /// The univariate polynomial in `var`, if no other variable occurs.
    pub fn to_uni(&self, var: usize) -> Option<UniPoly> {
        let n = self.degree_in(var).map_or(0, |d| d + 1);
        let mut c = vec![FieldElement::zero(&self.field); n];
        for (e, v) in &self.terms {
            if (0..3).any(|k| k != var && e[k] != 0) {
                return None;
            }
            c[e[var] as usize] = v.clone();
        }
        Some(UniPoly::new(&self.field, c))
    }

    fn add_term(&mut self, e: Exponent, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, FieldElement> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: Exponent) -> FieldElement {
        self.terms.get(&e).cloned().unwrap_or_else(|| FieldElement::zero(&self.field))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<usize> {
        self.terms.keys().map(|e| e[var] as usize).max()
    }

    /// The common total degree if all terms share it.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    /// Leading term in lexicographic order `v0 > v1 > v2`.
    pub fn leading(&self) -> Option<(&Exponent, &FieldElement)> {
        self.terms.last_key_value()
    }

    pub fn scale(&self, c: &FieldElement) -> TriPoly {
        TriPoly::from_terms(&self.field, self.terms.iter().map(|(e, v)| (*e, v * c)))
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Result<TriPoly> {
        let (_, lc) = self.leading().ok_or(Error::ZeroPolynomial)?;
        Ok(self.scale(&lc.inv()?))
    }

    /// Whether the two polynomials agree up to a nonzero constant factor.
    pub fn proportional(&self, other: &TriPoly) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        match (self.monic(), other.monic()) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }

    pub fn pow(&self, e: u32) -> TriPoly {
        let mut acc = TriPoly::constant(&FieldElement::one(&self.field));
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> TriPoly {
        TriPoly::from_terms(
            &self.field,
            self.terms.iter().filter(|(e, _)| e[var] > 0).map(|(e, v)| {
                let mut f = *e;
                f[var] -= 1;
                (f, v.scale(&rat(e[var] as i64)))
            }),
        )
    }

    pub fn lift_to(&self, field: &NumberField) -> Result<TriPoly> {
        let mut out = TriPoly::zero(field);
        for (e, v) in &self.terms {
            out.add_term(*e, v.lift_to(field)?);
        }
        Ok(out)
    }

    /// Evaluate every variable.
    pub fn eval(&self, point: [&FieldElement; 3]) -> FieldElement {
        let field = point[0].field();
        let mut acc = FieldElement::zero(field);
        let mut cache: [Vec<FieldElement>; 3] = Default::default();
        for (e, v) in &self.terms {
            let mut term = v.lift_to(field).expect("point lies in an extension of the coefficient field");
            for k in 0..3 {
                let need = e[k] as usize;
                while cache[k].len() <= need {
                    let next = match cache[k].last() {
                        None => FieldElement::one(field),
                        Some(prev) => prev * point[k],
                    };
                    cache[k].push(next);
                }
                if need > 0 {
                    term = &term * &cache[k][need];
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Substitute `var = value` (value in the coefficient field).
    pub fn substitute(&self, var: usize, value: &FieldElement) -> TriPoly {
        let mut out = TriPoly::zero(&self.field);
        for (e, v) in &self.terms {
            let mut f = *e;
            f[var] = 0;
            out.add_term(f, v * &value.pow(e[var]));
        }
        out
    }

    /// Replace each variable by a polynomial.
    pub fn compose(&self, subs: [&TriPoly; 3]) -> TriPoly {
        let mut out = TriPoly::zero(&self.field);
        let mut cache: [Vec<TriPoly>; 3] = Default::default();
        for (e, v) in &self.terms {
            let mut term = TriPoly::constant(v);
            for k in 0..3 {
                let need = e[k] as usize;
                while cache[k].len() <= need {
                    let next = match cache[k].last() {
                        None => TriPoly::constant(&FieldElement::one(&self.field)),
                        Some(prev) => prev * subs[k],
                    };
                    cache[k].push(next);
                }
                if need > 0 {
                    term = &term * &cache[k][need];
                }
            }
            out = &out + &term;
        }
        out
    }

    /// Coefficients with respect to `var`, as polynomials in the other two.
    pub fn coeffs_in(&self, var: usize) -> Vec<TriPoly> {
        let n = self.degree_in(var).map_or(0, |d| d + 1);
        let mut out = vec![TriPoly::zero(&self.field); n];
        for (e, v) in &self.terms {
            let mut f = *e;
            f[var] = 0;
            out[e[var] as usize].add_term(f, v.clone());
        }
        out
    }

    /// Strip the largest power of `var` dividing the polynomial.
    pub fn remove_var_power(&self, var: usize) -> (TriPoly, u32) {
        let k = self.terms.keys().map(|e| e[var]).min().unwrap_or(0);
        let p = TriPoly::from_terms(
            &self.field,
            self.terms.iter().map(|(e, v)| {
                let mut f = *e;
                f[var] -= k;
                (f, v.clone())
            }),
        );
        (p, k)
    }

    /// Exact division; fails if the quotient is not a polynomial.
    pub fn exact_div(&self, d: &TriPoly) -> Result<TriPoly> {
        let (de, dc) = d.leading().ok_or(Error::DivisionByZero)?;
        let dc_inv = dc.inv()?;
        let mut r = self.clone();
        let mut q = TriPoly::zero(&self.field);
        while let Some((re, rc)) = r.leading() {
            if (0..3).any(|k| re[k] < de[k]) {
                return Err(Error::InexactDivision);
            }
            let e = [re[0] - de[0], re[1] - de[1], re[2] - de[2]];
            let m = TriPoly::monomial(rc * &dc_inv, e);
            r = &r - &(&m * d);
            q = &q + &m;
        }
        Ok(q)
    }

    /// `G` with `self = c * G^k`, for a homogeneous or general perfect power.
    pub fn kth_root(&self, k: u32) -> Result<TriPoly> {
        if k == 1 {
            return Ok(self.clone());
        }
        let r = self.monic()?;
        let (le, _) = r.leading().unwrap();
        if le.iter().any(|x| x % k != 0) {
            return Err(Error::InexactDivision);
        }
        let lead = [le[0] / k, le[1] / k, le[2] / k];
        let mut g = TriPoly::monomial(FieldElement::one(&self.field), lead);
        let denom = g.pow(k - 1).scale(&FieldElement::from_int(&self.field, k as i64));
        let (de, dc) = denom.leading().map(|(e, c)| (*e, c.clone())).unwrap();
        let max_terms = r.terms.len().max(1) * 64 + 256;
        for _ in 0..max_terms {
            let e = &r - &g.pow(k);
            let Some((ee, ec)) = e.leading() else {
                return Ok(g);
            };
            if (0..3).any(|i| ee[i] < de[i]) {
                return Err(Error::InexactDivision);
            }
            let m = [ee[0] - de[0], ee[1] - de[1], ee[2] - de[2]];
            if m >= lead {
                return Err(Error::InexactDivision);
            }
            g = &g + &TriPoly::monomial(&ec.clone() * &dc.inv()?, m);
        }
        Err(Error::InexactDivision)
    }

    /// Resultant with respect to one of the three variables.
    pub fn resultant_in(&self, other: &TriPoly, var: usize) -> Result<TriPoly> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        tri_resultant_pair(&self.coeffs_in(var), &other.coeffs_in(var))
    }

    /// `(-1)^{n(n-1)/2} Res(P, dP/dvar) / lc(P)`.
    pub fn discriminant_in(&self, var: usize) -> Result<TriPoly> {
        let n = self.degree_in(var).ok_or(Error::ZeroPolynomial)?;
        if n == 0 {
            return Err(Error::WrongDegree { expected: 1, found: 0 });
        }
        let r = self.resultant_in(&self.derivative(var), var)?;
        let lc = self.coeffs_in(var).pop().unwrap();
        let d = r.exact_div(&lc)?;
        Ok(if (n * (n - 1) / 2) % 2 == 1 { -&d } else { d })
    }

    pub fn to_string_in(&self, names: [&str; 3]) -> String {
        let mut terms = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mut mono = Vec::new();
            for k in 0..3 {
                match e[k] {
                    0 => {}
                    1 => mono.push(names[k].to_string()),
                    p => mono.push(format!("{}^{p}", names[k])),
                }
            }
            terms.push(format_term(c, &mono.join("*")));
        }
        join_terms(terms)
    }
}

impl Add for &TriPoly {
    type Output = TriPoly;
    fn add(self, rhs: &TriPoly) -> TriPoly {
        let mut out = self.clone();
        for (e, v) in &rhs.terms {
            out.add_term(*e, v.clone());
        }
        out
    }
}

impl Sub for &TriPoly {
    type Output = TriPoly;
    fn sub(self, rhs: &TriPoly) -> TriPoly {
        let mut out = self.clone();
        for (e, v) in &rhs.terms {
            out.add_term(*e, -v);
        }
        out
    }
}

impl Neg for &TriPoly {
    type Output = TriPoly;
    fn neg(self) -> TriPoly {
        TriPoly::from_terms(&self.field, self.terms.iter().map(|(e, v)| (*e, -v)))
    }
}

impl Mul for &TriPoly {
    type Output = TriPoly;
    fn mul(self, rhs: &TriPoly) -> TriPoly {
        let mut out = TriPoly::zero(&self.field);
        for (ea, a) in &self.terms {
            for (eb, b) in &rhs.terms {
                out.add_term([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]], a * b);
            }
        }
        out
    }
}

fn trim_tri(mut v: Vec<TriPoly>) -> Vec<TriPoly> {
    while v.last().is_some_and(TriPoly::is_zero) {
        v.pop();
    }
    v
}

/// Resultant with respect to an outside variable `t` of `sum a_i t^i` and
/// `sum b_j t^j`, whose coefficients are trivariate polynomials.
///
/// When all coefficients of each input are homogeneous of a common degree
/// the result is homogeneous; it is then interpolated on the chart `v2 = 1`.
pub fn tri_resultant_pair(a: &[TriPoly], b: &[TriPoly]) -> Result<TriPoly> {
    let a = trim_tri(a.to_vec());
    let b = trim_tri(b.to_vec());
    if a.is_empty() && b.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let field = a.first().or(b.first()).unwrap().field().clone();
    if a.is_empty() || b.is_empty() {
        return Ok(TriPoly::zero(&field));
    }
    let n = a.len() - 1;
    let m = b.len() - 1;
    let max_deg = |list: &[TriPoly], v: usize| list.iter().filter_map(|p| p.degree_in(v)).max().unwrap_or(0);
    let mut bounds = [0usize; 3];
    for (v, bound) in bounds.iter_mut().enumerate() {
        *bound = m * max_deg(&a, v) + n * max_deg(&b, v);
    }
    let common = |list: &[TriPoly]| -> Option<u32> {
        let mut it = list.iter().filter(|p| !p.is_zero()).map(TriPoly::homogeneous_degree);
        let d = it.next()??;
        it.all(|x| x == Some(d)).then_some(d)
    };
    if let (Some(da), Some(db)) = (common(&a), common(&b)) {
        let total = m as u32 * da + n as u32 * db;
        if total > 0 {
            let sizes = [bounds[0].min(total as usize) + 1, bounds[1].min(total as usize) + 1, 1];
            let one = FieldElement::one(&field);
            let dehom = grid_resultant(&field, &a, &b, sizes, Some(&one))?;
            return Ok(TriPoly::from_terms(
                &field,
                dehom.terms.into_iter().filter_map(|(e, v)| {
                    let d = e[0] + e[1];
                    (d <= total).then_some(([e[0], e[1], total - d], v))
                }),
            ));
        }
    }
    grid_resultant(&field, &a, &b, [bounds[0] + 1, bounds[1] + 1, bounds[2] + 1], None)
}

fn grid_resultant(
    field: &NumberField,
    a: &[TriPoly],
    b: &[TriPoly],
    sizes: [usize; 3],
    fixed_last: Option<&FieldElement>,
) -> Result<TriPoly> {
    let nodes: Vec<Vec<Rational>> = sizes.iter().map(|&s| (0..s as i64).map(rat).collect()).collect();
    let mut values = Vec::with_capacity(sizes[0] * sizes[1] * sizes[2]);
    for x in &nodes[0] {
        let xe = FieldElement::from_rational(field, x.clone());
        for y in &nodes[1] {
            let ye = FieldElement::from_rational(field, y.clone());
            for z in &nodes[2] {
                let ze = match fixed_last {
                    Some(v) => v.clone(),
                    None => FieldElement::from_rational(field, z.clone()),
                };
                let fa: Vec<FieldElement> = a.iter().map(|p| p.eval([&xe, &ye, &ze])).collect();
                let fb: Vec<FieldElement> = b.iter().map(|p| p.eval([&xe, &ye, &ze])).collect();
                values.push(resultant_formal(&fa, &fb, field)?);
            }
        }
    }
    Ok(interpolate_grid(field, &nodes, sizes, values))
}

fn interpolate_grid(field: &NumberField, nodes: &[Vec<Rational>], sizes: [usize; 3], mut vals: Vec<FieldElement>) -> TriPoly {
    let [n0, n1, n2] = sizes;
    let idx = |i: usize, j: usize, k: usize| (i * n1 + j) * n2 + k;
    // axis 2
    for i in 0..n0 {
        for j in 0..n1 {
            let line: Vec<FieldElement> = (0..n2).map(|k| vals[idx(i, j, k)].clone()).collect();
            for (k, c) in interpolate(field, &nodes[2], &line).into_iter().enumerate() {
                vals[idx(i, j, k)] = c;
            }
        }
    }
    // axis 1
    for i in 0..n0 {
        for k in 0..n2 {
            let line: Vec<FieldElement> = (0..n1).map(|j| vals[idx(i, j, k)].clone()).collect();
            for (j, c) in interpolate(field, &nodes[1], &line).into_iter().enumerate() {
                vals[idx(i, j, k)] = c;
            }
        }
    }
    // axis 0
    for j in 0..n1 {
        for k in 0..n2 {
            let line: Vec<FieldElement> = (0..n0).map(|i| vals[idx(i, j, k)].clone()).collect();
            for (i, c) in interpolate(field, &nodes[0], &line).into_iter().enumerate() {
                vals[idx(i, j, k)] = c;
            }
        }
    }
    let mut out = TriPoly::zero(field);
    for i in 0..n0 {
        for j in 0..n1 {
            for k in 0..n2 {
                let v = &vals[idx(i, j, k)];
                if !v.is_zero() {
                    out.add_term([i as u32, j as u32, k as u32], v.clone());
                }
            }
        }
    }
    out
}

/// Determinant of a square matrix over a field by Gaussian elimination.
pub fn determinant(mut m: Vec<Vec<FieldElement>>, field: &NumberField) -> Result<FieldElement> {
    let n = m.len();
    let mut det = FieldElement::one(field);
    for col in 0..n {
        let mut piv = None;
        for r in col..n {
            if !m[r][col].zero_test()? {
                piv = Some(r);
                break;
            }
        }
        let Some(piv) = piv else {
            return Ok(FieldElement::zero(field));
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p_inv = m[col][col].inv()?;
        det = &det * &m[col][col];
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] * &p_inv;
            for c in col..n {
                let v = &f * &m[col][c];
                m[r][c] = &m[r][c] - &v;
            }
        }
    }
    Ok(det)
}

/// The Sylvester matrix of `f` and `g` (formal degrees `len - 1`).
pub fn sylvester_matrix(f: &[FieldElement], g: &[FieldElement], field: &NumberField) -> Vec<Vec<FieldElement>> {
    let n = f.len() - 1;
    let m = g.len() - 1;
    let size = n + m;
    let mut rows = Vec::with_capacity(size);
    for i in 0..m {
        let mut row = vec![FieldElement::zero(field); size];
        for (j, c) in f.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..n {
        let mut row = vec![FieldElement::zero(field); size];
        for (j, c) in g.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

impl From<&TriPoly> for Vec<(Exponent, FieldElement)> {
    fn from(p: &TriPoly) -> Self {
        p.terms.iter().map(|(e, v)| (*e, v.clone())).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qf() -> NumberField {
        NumberField::rationals()
    }

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(&qf(), c)
    }

    #[test]
    fn derivative_and_eval() {
        // t^4 - 12 t^2 + 3
        let z = p(&[3, 0, -12, 0, 1]);
        assert_eq!(z.derivative(), p(&[0, -24, 0, 4]));
        let pp = p(&[-121, -55, 20]);
        assert_eq!(pp.eval(&FieldElement::zero(&qf())), FieldElement::from_int(&qf(), -121));
    }

    #[test]
    fn exact_division() {
        assert_eq!(p(&[-1, 0, 1]).exact_div(&p(&[-1, 1])).unwrap(), p(&[1, 1]));
        assert!(matches!(p(&[1, 0, 1]).exact_div(&p(&[-1, 1])), Err(Error::InexactDivision)));
    }

    #[test]
    fn gcd_cases() {
        let a = &(&p(&[-1, 1]) * &p(&[-1, 1])) * &p(&[2, 1]);
        let b = &p(&[-1, 1]) * &p(&[3, 1]);
        assert_eq!(a.gcd(&b).unwrap(), p(&[-1, 1]));
        let f = p(&[4, 0, 2]);
        assert_eq!(f.gcd(&UniPoly::zero(&qf())).unwrap(), p(&[2, 0, 1]));
        assert!(UniPoly::zero(&qf()).gcd(&UniPoly::zero(&qf())).is_err());
    }

    #[test]
    fn resultant_small() {
        assert_eq!(p(&[-1, 0, 1]).resultant(&p(&[-2, 1])).unwrap(), FieldElement::from_int(&qf(), 3));
        let f = &p(&[-5, 1]) * &p(&[1, 1]);
        let g = &p(&[-5, 1]) * &p(&[7, 0, 1]);
        assert!(f.resultant(&g).unwrap().is_zero());
    }

    #[test]
    fn discriminants() {
        // t^2 + 3t + 5 -> 9 - 20
        assert_eq!(p(&[5, 3, 1]).discriminant().unwrap(), FieldElement::from_int(&qf(), -11));
        assert!(p(&[1, -2, 1]).discriminant().unwrap().is_zero());
        assert!(p(&[3]).discriminant().is_err());
    }

    #[test]
    fn yun() {
        let f = &(&p(&[-1, 1]) * &p(&[-1, 1])) * &p(&[2, 1]);
        let sq = f.squarefree_decomposition().unwrap();
        assert_eq!(sq.factors, vec![(p(&[2, 1]), 1), (p(&[-1, 1]), 2)]);
        assert_eq!(sq.expand(), f);
        let g = p(&[1, 2, 0, 3]);
        let sq = g.squarefree_decomposition().unwrap();
        assert_eq!(sq.factors.len(), 1);
        assert_eq!(sq.factors[0].1, 1);
    }

    #[test]
    fn formal_resultant_matches_sylvester() {
        let f = qf();
        let e = |v: i64| FieldElement::from_int(&f, v);
        // leading zero in the first operand
        let a = vec![e(1), e(2), e(0)];
        let b = vec![e(3), e(-1), e(4), e(5)];
        let r = resultant_formal(&a, &b, &f).unwrap();
        let d = determinant(sylvester_matrix(&a, &b, &f), &f).unwrap();
        assert_eq!(r, d);
        let r = resultant_formal(&b, &a, &f).unwrap();
        let d = determinant(sylvester_matrix(&b, &a, &f), &f).unwrap();
        assert_eq!(r, d);
    }

    #[test]
    fn conic_implicitization_kernel() {
        // Res_t(t Z - X, t^2 Z - Y)
        let f = qf();
        let v = |i| TriPoly::var(&f, i);
        let a = vec![-&v(0), v(2)];
        let b = vec![-&v(1), TriPoly::zero(&f), v(2)];
        let r = tri_resultant_pair(&a, &b).unwrap();
        let expect = &(&v(0) * &v(0)) - &(&v(1) * &v(2));
        let (r, k) = r.remove_var_power(2);
        assert_eq!(k, 1);
        assert!(r.proportional(&expect));
        assert!(tri_resultant_pair(&a, &a).unwrap().is_zero());
    }

    #[test]
    fn tri_exact_division_and_root() {
        let f = qf();
        let v = |i| TriPoly::var(&f, i);
        let g = &(&v(0) * &v(0)) - &(&v(1) * &v(2));
        let h = &v(0) + &v(1);
        let gh = &g * &h;
        assert_eq!(gh.exact_div(&h).unwrap(), g);
        assert!(gh.exact_div(&(&v(0) + &v(2))).is_err());
        let g3 = g.pow(3).scale(&FieldElement::from_int(&f, 5));
        assert!(g3.kth_root(3).unwrap().proportional(&g));
    }

    #[test]
    fn interpolation_roundtrip() {
        let f = qf();
        let poly = p(&[3, -1, 0, 2]);
        let nodes: Vec<Rational> = (0..4).map(rat).collect();
        let vals: Vec<FieldElement> = nodes.iter().map(|x| poly.eval(&FieldElement::from_rational(&f, x.clone()))).collect();
        assert_eq!(UniPoly::new(&f, interpolate(&f, &nodes, &vals)), poly);
    }
}
