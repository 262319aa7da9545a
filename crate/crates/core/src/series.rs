//! Truncated power series in one variable `s` over a [`NumberField`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::numberfield::{FieldElement, NumberField, Rational};
use crate::polynomial::UniPoly;

/// `sum_{i < N} c_i s^i + O(s^N)`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    field: NumberField,
    coeffs: Vec<FieldElement>,
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = UniPoly::new(&self.field, self.coeffs.clone());
        write!(f, "{} + O(s^{})", p.to_string_in("s"), self.truncation())
    }
}

impl TruncatedSeries {
    /// Series from the first `n` coefficients, padding with zeros.
    pub fn new(field: &NumberField, mut coeffs: Vec<FieldElement>, n: usize) -> Self {
        assert!(n >= 1, "truncation order must be positive");
        coeffs.resize(n, FieldElement::zero(field));
        TruncatedSeries { field: field.clone(), coeffs }
    }

    pub fn from_poly(p: &UniPoly, n: usize) -> Self {
        let mut c: Vec<FieldElement> = p.coeffs().iter().take(n).cloned().collect();
        c.resize(n, FieldElement::zero(p.field()));
        TruncatedSeries { field: p.field().clone(), coeffs: c }
    }

    pub fn zero(field: &NumberField, n: usize) -> Self {
        TruncatedSeries::new(field, Vec::new(), n)
    }

    pub fn one(field: &NumberField, n: usize) -> Self {
        TruncatedSeries::new(field, vec![FieldElement::one(field)], n)
    }

    /// The series `s`.
    pub fn s(field: &NumberField, n: usize) -> Self {
        TruncatedSeries::new(field, vec![FieldElement::zero(field), FieldElement::one(field)], n)
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &FieldElement {
        &self.coeffs[i]
    }

    pub fn truncate(&self, n: usize) -> TruncatedSeries {
        TruncatedSeries::new(&self.field, self.coeffs[..n.min(self.truncation())].to_vec(), n.min(self.truncation()))
    }

    /// Index of the first nonzero coefficient, `None` if every stored
    /// coefficient vanishes. In an algebra a coefficient that is a zero
    /// divisor is reported through [`Error::ZeroDivisor`].
    pub fn order(&self) -> Result<Option<usize>> {
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.zero_test()? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    pub fn scale(&self, c: &FieldElement) -> TruncatedSeries {
        TruncatedSeries { field: self.field.clone(), coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn scale_rational(&self, c: &Rational) -> TruncatedSeries {
        TruncatedSeries { field: self.field.clone(), coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn pow(&self, e: u32) -> TruncatedSeries {
        let mut acc = TruncatedSeries::one(&self.field, self.truncation());
        let mut base = self.clone();
        let mut e = e;
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

    pub fn invert_unit(&self) -> Result<TruncatedSeries> {
        let c0 = &self.coeffs[0];
        if c0.zero_test()? {
            return Err(Error::NonUnitInversion);
        }
        let inv0 = c0.inv()?;
        let n = self.truncation();
        let mut out: Vec<FieldElement> = Vec::with_capacity(n);
        out.push(inv0.clone());
        for k in 1..n {
            let mut acc = FieldElement::zero(&self.field);
            for j in 1..=k {
                if !self.coeffs[j].is_zero() && !out[k - j].is_zero() {
                    acc = &acc + &(&self.coeffs[j] * &out[k - j]);
                }
            }
            out.push(-&(&acc * &inv0));
        }
        Ok(TruncatedSeries { field: self.field.clone(), coeffs: out })
    }

    /// `self(inner(s))`; requires `inner(0) = 0`.
    pub fn compose(&self, inner: &TruncatedSeries) -> Result<TruncatedSeries> {
        if !inner.coeffs[0].zero_test()? {
            return Err(Error::BadComposition);
        }
        let n = self.truncation().min(inner.truncation());
        let inner = inner.truncate(n);
        let mut acc = TruncatedSeries::zero(&self.field, n);
        for c in self.coeffs[..n].iter().rev() {
            acc = &acc * &inner;
            acc.coeffs[0] = &acc.coeffs[0] + c;
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> TruncatedSeries {
        let n = self.truncation();
        let c: Vec<FieldElement> = (1..n).map(|i| self.coeffs[i].scale(&Rational::from_integer(i.into()))).collect();
        TruncatedSeries::new(&self.field, c, n - 1)
    }

    /// Compositional inverse `g` with `self(g(s)) = s`; requires order exactly 1.
    pub fn reversion(&self) -> Result<TruncatedSeries> {
        let ord = self.order()?;
        if ord != Some(1) {
            return Err(Error::ReversionOrder(ord));
        }
        let n = self.truncation();
        let s = TruncatedSeries::s(&self.field, n);
        let d = self.derivative();
        let mut g = s.scale(&self.coeffs[1].inv()?);
        let mut prec = 2;
        // Newton: g <- g - (f(g) - s) / f'(g)
        while prec < n {
            prec = (2 * prec).min(n);
            let fg = self.compose(&g)?;
            let err = &fg - &s;
            let dg = d.compose(&g.truncate(d.truncation()))?;
            let mut dg_full = dg.coeffs.clone();
            dg_full.resize(n, FieldElement::zero(&self.field));
            let dg = TruncatedSeries { field: self.field.clone(), coeffs: dg_full };
            g = &g - &(&err * &dg.invert_unit()?);
        }
        Ok(g)
    }
}

fn binop(a: &TruncatedSeries, b: &TruncatedSeries, f: impl Fn(&FieldElement, &FieldElement) -> FieldElement) -> TruncatedSeries {
    let n = a.truncation().min(b.truncation());
    TruncatedSeries { field: a.field.clone(), coeffs: (0..n).map(|i| f(&a.coeffs[i], &b.coeffs[i])).collect() }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        binop(self, rhs, |x, y| x + y)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        binop(self, rhs, |x, y| x - y)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.truncation().min(rhs.truncation());
        let mut out = vec![FieldElement::zero(&self.field); n];
        for (i, a) in self.coeffs[..n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        TruncatedSeries { field: self.field.clone(), coeffs: out }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ser(c: &[i64], n: usize) -> TruncatedSeries {
        let f = NumberField::rationals();
        TruncatedSeries::new(&f, c.iter().map(|&v| FieldElement::from_int(&f, v)).collect(), n)
    }

    #[test]
    fn inversion() {
        assert_eq!(ser(&[1, 1], 6).invert_unit().unwrap(), ser(&[1, -1, 1, -1, 1, -1], 6));
        assert!(matches!(ser(&[0, 1], 6).invert_unit(), Err(Error::NonUnitInversion)));
    }

    #[test]
    fn products_and_composition() {
        assert_eq!(&ser(&[1, 1], 5) * &ser(&[1, -1], 5), ser(&[1, 0, -1], 5));
        assert_eq!(ser(&[0, 0, 1], 6).compose(&ser(&[0, 1, 1], 6)).unwrap(), ser(&[0, 0, 1, 2, 1], 6));
        assert!(matches!(ser(&[0, 1], 4).compose(&ser(&[1, 1], 4)), Err(Error::BadComposition)));
    }

    #[test]
    fn reversions() {
        let s = ser(&[0, 1], 8);
        assert_eq!(s.reversion().unwrap(), s);
        let f = NumberField::rationals();
        let half = ser(&[0, 2], 8).reversion().unwrap();
        assert_eq!(half.coeff(1), &FieldElement::from_rational(&f, Rational::new(1.into(), 2.into())));
        let g = ser(&[0, 1, 1], 7);
        let r = g.reversion().unwrap();
        // Catalan numbers with alternating signs
        assert_eq!(r, ser(&[0, 1, -1, 2, -5, 14, -42], 7));
        assert_eq!(g.compose(&r).unwrap(), ser(&[0, 1], 7));
        assert!(matches!(ser(&[0, 0, 1], 5).reversion(), Err(Error::ReversionOrder(Some(2)))));
    }

    #[test]
    fn orders() {
        assert_eq!(ser(&[0, 0, 3], 5).order().unwrap(), Some(2));
        assert_eq!(ser(&[], 5).order().unwrap(), None);
    }
}
