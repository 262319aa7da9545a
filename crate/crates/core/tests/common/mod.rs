//! Property suites shared by the `properties` and `acceptance` targets.
//! Every check compares the library against an oracle written here.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sextics::conic::{conic_solvable_over_q, hilbert_symbol, ConicVerdict, Place};
use sextics::curve::{Mobius, Parameter, ProjectiveMap, RationalPlaneCurve};
use sextics::numberfield::LayerKind;
use sextics::singularity::{branch_type_at, SingularityType};
use sextics::{FieldElement, NumberField, Rational, TriPoly, TruncatedSeries, UniPoly};

pub mod regress;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    rat(n, 1)
}

fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn run<S: Strategy>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    runner(cases).run(&strategy, test).map_err(|e| e.to_string())
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=7).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    small_rational().prop_filter("nonzero", |r| !r.is_zero())
}

pub fn q() -> NumberField {
    NumberField::rationals()
}

/// `Q(a)`, `a^2 = 2`.
pub fn q_sqrt2() -> NumberField {
    NumberField::simple("a", &[int(-2), int(0), int(1)]).unwrap()
}

/// `Q(c)`, `c^3 = 2`.
pub fn q_cbrt2() -> NumberField {
    NumberField::simple("c", &[int(-2), int(0), int(0), int(1)]).unwrap()
}

/// `Q(i)(r)`, `i^2 = -1`, `r^2 = 2 + i`.
pub fn tower() -> NumberField {
    let qi = NumberField::simple("i", &[int(1), int(0), int(1)]).unwrap();
    let i = FieldElement::generator(&qi);
    let m = UniPoly::new(&qi, vec![-&(&FieldElement::from_int(&qi, 2) + &i), FieldElement::zero(&qi), FieldElement::one(&qi)]);
    NumberField::extension(&qi, "r", &m, LayerKind::Field).unwrap()
}

fn element(field: NumberField) -> BoxedStrategy<FieldElement> {
    let n = field.degree();
    proptest::collection::vec(small_rational(), n).prop_map(move |c| FieldElement::from_coords(&field, c).unwrap()).boxed()
}

/// Norm of `x0 + x1 a` in `Q(sqrt 2)`.
fn norm_sqrt2(x: &FieldElement) -> Rational {
    let c = x.coords();
    &c[0] * &c[0] - int(2) * &c[1] * &c[1]
}

/// Norm of `x0 + x1 c + x2 c^2` in `Q(cbrt 2)`.
fn norm_cbrt2(x: &FieldElement) -> Rational {
    let c = x.coords();
    let (a, b, d) = (&c[0], &c[1], &c[2]);
    a * a * a + int(2) * b * b * b + int(4) * d * d * d - int(6) * a * b * d
}

/// Field axioms in three fields, with the products and norms of the two
/// simple fields compared to closed formulas.
pub fn field_axioms(cases: u32) -> Result<(), String> {
    for field in [q_sqrt2(), q_cbrt2(), tower()] {
        let f = field.clone();
        run(cases, (element(f.clone()), element(f.clone()), element(f.clone())), move |(x, y, z)| {
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert!((&x + &(-&x)).is_zero());
            prop_assert_eq!(&(&x - &y) + &y, x.clone());
            if !x.is_zero() {
                prop_assert!((&x * &x.inv().unwrap()).is_one());
            }
            if !y.is_zero() {
                prop_assert_eq!((&x * &y).div(&y).unwrap(), x.clone());
            }
            prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
            Ok(())
        })?;
    }
    let f = q_sqrt2();
    run(cases, (element(f.clone()), element(f.clone())), |(x, y)| {
        let (a, b) = (x.coords(), y.coords());
        let want = [&a[0] * &b[0] + int(2) * &a[1] * &b[1], &a[0] * &b[1] + &a[1] * &b[0]];
        let xy = &x * &y;
        prop_assert_eq!(xy.coords(), &want[..]);
        prop_assert_eq!(x.norm(), norm_sqrt2(&x));
        Ok(())
    })?;
    run(cases, element(q_cbrt2()), |x| {
        prop_assert_eq!(x.norm(), norm_cbrt2(&x));
        Ok(())
    })
}

/// Determinant by fraction-based elimination on rows.
pub fn det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else { return Rational::zero() };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= m[c][c].clone();
        for r in c + 1..n {
            let k = &m[r][c] / &m[c][c];
            for j in c..n {
                let v = &k * &m[c][j];
                m[r][j] -= v;
            }
        }
    }
    d
}

/// Sylvester matrix of coefficient lists, highest degree first in each row.
pub fn sylvester(f: &[Rational], g: &[Rational]) -> Vec<Vec<Rational>> {
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    let mut rows = Vec::new();
    for i in 0..n {
        let mut row = vec![Rational::zero(); size];
        for (j, c) in f.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![Rational::zero(); size];
        for (j, c) in g.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    rows
}

fn from_roots(field: &NumberField, lc: &FieldElement, roots: &[FieldElement]) -> UniPoly {
    let mut p = UniPoly::constant(lc);
    for r in roots {
        p = &p * &UniPoly::new(field, vec![-r, FieldElement::one(field)]);
    }
    p
}

fn rationals_of(p: &UniPoly) -> Vec<Rational> {
    p.coeffs().iter().map(|c| c.as_rational().unwrap()).collect()
}

/// Resultants and discriminants against root products and the Sylvester
/// determinant; bivariate resultants against pointwise ones.
pub fn resultant_identities(cases: u32) -> Result<(), String> {
    for field in [q(), q_sqrt2()] {
        let f = field.clone();
        let roots = |k| proptest::collection::vec(element(f.clone()), 1..=k);
        let lead = element(f.clone()).prop_filter("nonzero", |x| !x.is_zero());
        run(cases, (roots(4), roots(4), lead.clone(), lead), |(ra, rb, la, lb)| {
            let fa = from_roots(&field, &la, &ra);
            let fb = from_roots(&field, &lb, &rb);
            let (m, n) = (ra.len() as u32, rb.len() as u32);
            let mut want = &la.pow(n) * &lb.pow(m);
            for a in &ra {
                for b in &rb {
                    want = &want * &(a - b);
                }
            }
            prop_assert_eq!(fa.resultant(&fb).unwrap(), want);
            if m >= 2 {
                let mut d = la.pow(2 * m - 2);
                for i in 0..ra.len() {
                    for j in i + 1..ra.len() {
                        let diff = &ra[i] - &ra[j];
                        d = &d * &(&diff * &diff);
                    }
                }
                prop_assert_eq!(fa.discriminant().unwrap(), d);
            }
            if field.is_rationals() {
                let s = det(sylvester(&rationals_of(&fa), &rationals_of(&fb)));
                prop_assert_eq!(fa.resultant(&fb).unwrap().as_rational().unwrap(), s);
            }
            Ok(())
        })?;
    }
    let coeff = -4i64..=4;
    let poly = proptest::collection::vec(coeff, 10);
    run(cases, (poly.clone(), poly), |(a, b)| {
        let q = q();
        // degree <= 2 in x and <= 3 in y, leading y^3 coefficient a nonzero constant
        let build = |c: &[i64]| {
            let mut terms = vec![([0u32, 3u32, 0u32], FieldElement::from_int(&q, 1 + c[0].abs()))];
            for (k, &v) in c[1..].iter().enumerate() {
                let (i, j) = ((k % 3) as u32, (k / 3) as u32);
                terms.push(([i, j, 0], FieldElement::from_int(&q, v)));
            }
            TriPoly::from_terms(&q, terms)
        };
        let (f, g) = (build(&a), build(&b));
        let r = f.resultant_in(&g, 1).unwrap();
        for x0 in -3i64..=3 {
            let x = FieldElement::from_int(&q, x0);
            let fu = f.substitute(0, &x).to_uni(1).unwrap();
            let gu = g.substitute(0, &x).to_uni(1).unwrap();
            let pointwise = fu.resultant(&gu).unwrap();
            let at = r.substitute(0, &x);
            let at = at.terms().get(&[0, 0, 0]).cloned().unwrap_or(FieldElement::zero(&q));
            prop_assert_eq!(at, pointwise);
        }
        Ok(())
    })
}

/// Yun's algorithm on `c * prod (t - r_i)^{m_i} * (t^2 + s)^e`.
pub fn yun_reconstruction(cases: u32) -> Result<(), String> {
    let roots = proptest::collection::btree_set(-12i64..=12, 1..=4);
    let mults = proptest::collection::vec(1u32..=4, 4);
    run(cases, (roots, mults, 1i64..=5, 0u32..=3, nonzero_rational()), |(roots, mults, s, e, c)| {
        let q = q();
        let quad = UniPoly::from_ints(&q, &[s, 0, 1]);
        let mut f = UniPoly::constant(&FieldElement::from_rational(&q, c.clone()));
        let mut by_mult: std::collections::BTreeMap<u32, UniPoly> = Default::default();
        for (r, m) in roots.iter().zip(&mults) {
            let lin = UniPoly::from_ints(&q, &[-r, 1]);
            f = &f * &lin.pow(*m);
            let slot = by_mult.entry(*m).or_insert_with(|| UniPoly::one(&q));
            *slot = &*slot * &lin;
        }
        if e > 0 {
            f = &f * &quad.pow(e);
            let slot = by_mult.entry(e).or_insert_with(|| UniPoly::one(&q));
            *slot = &*slot * &quad;
        }
        let sq = f.squarefree_decomposition().unwrap();
        prop_assert_eq!(sq.expand(), f.clone());
        prop_assert_eq!(sq.unit.as_rational().unwrap(), c);
        let got: std::collections::BTreeMap<u32, UniPoly> = sq.factors.iter().map(|(p, m)| (*m, p.clone())).collect();
        prop_assert_eq!(got, by_mult);
        for (i, (p, _)) in sq.factors.iter().enumerate() {
            prop_assert_eq!(p.gcd(&p.derivative()).unwrap().degree(), Some(0));
            for (r, _) in &sq.factors[i + 1..] {
                prop_assert_eq!(p.gcd(r).unwrap().degree(), Some(0));
            }
        }
        Ok(())
    })
}

fn series(field: &NumberField, c: &[FieldElement], n: usize) -> TruncatedSeries {
    TruncatedSeries::new(field, c.to_vec(), n)
}

/// Composition and reversion laws on truncated series.
pub fn series_laws(cases: u32) -> Result<(), String> {
    for field in [q(), q_sqrt2()] {
        let f = field.clone();
        let coeffs = proptest::collection::vec(element(f.clone()), 12);
        let unit = element(f.clone()).prop_filter("nonzero", |x| !x.is_zero());
        run(cases, (coeffs.clone(), coeffs.clone(), coeffs, unit, 4usize..=12), |(a, b, c, u, n)| {
            let z = FieldElement::zero(&field);
            let mut fa = a.clone();
            fa[0] = z.clone();
            fa[1] = u.clone();
            let f = series(&field, &fa, n);
            let s = TruncatedSeries::s(&field, n);
            let g = f.reversion().unwrap();
            prop_assert_eq!(f.compose(&g).unwrap(), s.clone());
            prop_assert_eq!(g.compose(&f).unwrap(), s);
            let mut gb = b.clone();
            gb[0] = z.clone();
            let mut hc = c.clone();
            hc[0] = z.clone();
            let (g, h) = (series(&field, &gb, n), series(&field, &hc, n));
            let x = series(&field, &a, n);
            prop_assert_eq!(x.compose(&g).unwrap().compose(&h).unwrap(), x.compose(&g.compose(&h).unwrap()).unwrap());
            let y = series(&field, &b, n);
            prop_assert_eq!((&x * &y).compose(&g).unwrap(), &x.compose(&g).unwrap() * &y.compose(&g).unwrap());
            let mut uc = c.clone();
            uc[0] = u.clone();
            let w = series(&field, &uc, n);
            prop_assert_eq!(&w * &w.invert_unit().unwrap(), TruncatedSeries::one(&field, n));
            Ok(())
        })?;
    }
    Ok(())
}

/// `(t^2 : t^{2k+1} : 1)` has an `A_2k` branch at `t = 0`, also after a
/// projective change of coordinates and a Moebius change of parameter.
pub fn cusp_models(cases: u32) -> Result<(), String> {
    let q = q();
    for k in 1..=9usize {
        let mut y = vec![0i64; 2 * k + 2];
        y[2 * k + 1] = 1;
        let c = RationalPlaneCurve::from_ints(&q, &[0, 0, 1], &y, &[1]).unwrap();
        let got = branch_type_at(&c, &Parameter::Finite(FieldElement::zero(&q))).map_err(|e| e.to_string())?;
        if got != SingularityType::new(2 * k as u32).unwrap() {
            return Err(format!("model k = {k}: got {got}"));
        }
    }
    let matrix = proptest::collection::vec(-3i64..=3, 9);
    let mobius = proptest::collection::vec(-3i64..=3, 4);
    run(cases, (1usize..=9, matrix, mobius), |(k, m, mb)| {
        let rows = [[m[0], m[1], m[2]], [m[3], m[4], m[5]], [m[6], m[7], m[8]]];
        let (Ok(t), Ok(mo)) = (ProjectiveMap::from_ints(&q, rows), Mobius::from_ints(&q, [mb[0], mb[1], mb[2], mb[3]])) else {
            return Ok(());
        };
        let mut y = vec![0i64; 2 * k + 2];
        y[2 * k + 1] = 1;
        let c = RationalPlaneCurve::from_ints(&q, &[0, 0, 1], &y, &[1]).unwrap();
        let d = c.apply_map(&t).unwrap().reparametrize(&mo).unwrap();
        // the parameter sent to 0 by (alpha u + beta) / (gamma u + delta)
        let u = if mb[0] == 0 { Parameter::Infinity } else { Parameter::Finite(FieldElement::from_rational(&q, rat(-mb[1], mb[0]))) };
        prop_assert_eq!(branch_type_at(&d, &u).unwrap(), SingularityType::new(2 * k as u32).unwrap());
        Ok(())
    })
}

fn primes_of(r: &Rational) -> Vec<u64> {
    let mut out = Vec::new();
    for n in [r.numer().abs(), r.denom().abs()] {
        let mut n: u64 = n.try_into().unwrap();
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                out.push(p);
                while n % p == 0 {
                    n /= p;
                }
            }
            p += 1;
        }
        if n > 1 {
            out.push(n);
        }
    }
    out
}

fn random_rational(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    loop {
        let n = rng.gen_range(-bound..=bound);
        let d = rng.gen_range(1..=bound);
        if n != 0 {
            return rat(n, d);
        }
    }
}

/// Product formula `prod_v (a, b)_v = 1` on `pairs` random pairs, plus
/// symmetry and the Steinberg relation `(a, 1 - a) = 1`.
pub fn hilbert_product_formula(pairs: usize) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for _ in 0..pairs {
        let (a, b) = (random_rational(&mut rng, 500), random_rational(&mut rng, 500));
        let mut places: Vec<Place> = vec![Place::Infinity, Place::Prime(2)];
        for p in primes_of(&a).into_iter().chain(primes_of(&b)) {
            places.push(Place::Prime(p));
        }
        places.sort();
        places.dedup();
        let mut product = 1;
        for &v in &places {
            let s = hilbert_symbol(&a, &b, v).map_err(|e| e.to_string())?;
            if s != hilbert_symbol(&b, &a, v).map_err(|e| e.to_string())? {
                return Err(format!("({a}, {b})_{v} is not symmetric"));
            }
            product *= s;
        }
        if product != 1 {
            return Err(format!("product formula fails for ({a}, {b})"));
        }
        if a != Rational::one() {
            let one_minus = Rational::one() - &a;
            for &v in &places {
                if hilbert_symbol(&a, &one_minus, v).map_err(|e| e.to_string())? != 1 {
                    return Err(format!("({a}, 1 - a)_{v} != 1"));
                }
            }
        }
    }
    Ok(())
}

fn is_square(n: i64) -> bool {
    n >= 0 && {
        let r = (n as f64).sqrt() as i64;
        (r.saturating_sub(1)..=r + 1).any(|s| s * s == n)
    }
}

fn squarefree(n: i64) -> bool {
    let n = n.unsigned_abs();
    (2..).take_while(|d| d * d <= n).all(|d| n % (d * d) != 0)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Integer point of `a X^2 + b Y^2 = Z^2` with `0 <= X, Y <= height`.
pub fn brute_force_point(a: i64, b: i64, height: i64) -> Option<(i64, i64)> {
    (0..=height).flat_map(|y| (0..=height).map(move |x| (x, y))).find(|&(x, y)| (x, y) != (0, 0) && is_square(a * x * x + b * y * y))
}

/// For coprime squarefree `a, b` with `|a|, |b| <= 50` a point exists iff
/// one exists with `|X| <= sqrt|b|`, `|Y| <= sqrt|a|` (Holzer), so the
/// height-50 search decides solvability.
pub fn conic_vs_brute_force(pairs: usize) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    let mut done = 0;
    while done < pairs {
        let (a, b) = (rng.gen_range(-50i64..=50), rng.gen_range(-50i64..=50));
        if a == 0 || b == 0 || !squarefree(a) || !squarefree(b) || gcd(a, b) != 1 {
            continue;
        }
        done += 1;
        let oracle = brute_force_point(a, b, 50);
        let got = conic_solvable_over_q(&int(a), &int(b)).map_err(|e| e.to_string())?;
        match (&got.verdict, oracle) {
            (ConicVerdict::Solvable { x, y, .. }, Some(_)) => {
                let (x, y): (Rational, Rational) = (x.parse().unwrap(), y.parse().unwrap());
                if int(a) * &x * &x + int(b) * &y * &y != Rational::one() {
                    return Err(format!("({a}, {b}): witness ({x}, {y}) is not on the conic"));
                }
            }
            (ConicVerdict::Unsolvable { places }, None) => {
                for v in places {
                    if hilbert_symbol(&int(a), &int(b), *v).map_err(|e| e.to_string())? != -1 {
                        return Err(format!("({a}, {b}): listed place {v} has symbol 1"));
                    }
                }
            }
            (v, o) => return Err(format!("({a}, {b}): verdict {v:?}, brute force {o:?}")),
        }
    }
    Ok(())
}
