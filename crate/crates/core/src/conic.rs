//! Reduction of a sextic to a conic through a pencil of cubics, Hilbert
//! symbols over Q, and the two number-field arguments for the conics that
//! arise (an integral congruence and an explicit point).

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numberfield::{rational_sqrt, FieldElement, NumberField, Rational};
use crate::polynomial::{TriPoly, UniPoly};

/// The pencil `g0 + lambda g1` in the variables `(x, y, lambda)`, with the
/// factor of the resultant coming from its base points.
#[derive(Clone, Debug)]
pub struct CubicPencil {
    pub g: TriPoly,
    pub basepoint_factor: UniPoly,
}

impl CubicPencil {
    pub fn new(g: TriPoly, basepoint_factor: UniPoly) -> Result<Self> {
        if g.degree_in(2).unwrap_or(0) != 1 {
            return Err(Error::Pencil("pencil must be linear in lambda".into()));
        }
        Ok(CubicPencil { g, basepoint_factor })
    }
}

/// Diagonal conic `alpha u^2 + gamma - v^2 = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalConic {
    pub alpha: FieldElement,
    pub gamma: FieldElement,
}

#[derive(Clone, Debug)]
pub struct PencilReduction {
    /// `Res_y(f, g_lambda)` divided by the base-point factor, in `(x, lambda)`.
    pub p1: TriPoly,
    pub discriminant: UniPoly,
    pub d1: UniPoly,
    pub d2: UniPoly,
    pub conic: DiagonalConic,
}

/// Largest square dividing a nonzero integer, and the squarefree cofactor.
fn split_square(n: &BigInt) -> (BigInt, BigInt) {
    let mut rest = n.abs();
    let mut square_root = BigInt::one();
    let mut free = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    for (p, e) in factor(&rest.clone()) {
        square_root *= p.pow(e / 2);
        if e % 2 == 1 {
            free *= &p;
        }
        rest /= p.pow(e);
    }
    (free, square_root)
}

/// Trial-division factorization of `|n|`, `n != 0`.
pub fn factor(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

/// `r = s * k^2` with `s` a squarefree integer and `k` rational.
pub fn squarefree_part(r: &Rational) -> Result<(BigInt, Rational)> {
    if r.is_zero() {
        return Err(Error::ZeroInput);
    }
    // n/d = n d / d^2
    let m = r.numer() * r.denom();
    let (s, k) = split_square(&m);
    Ok((s, Rational::new(k, r.denom().clone())))
}

/// Reduce `f(x, y) = 0` to a conic through the pencil; `f` is in the
/// variables `(x, y)` with the third slot unused.
pub fn pencil_reduce(f: &TriPoly, pencil: &CubicPencil) -> Result<PencilReduction> {
    let field = f.field().clone();
    let f = if field.is_rationals() { primitive_integral(f)? } else { f.clone() };
    let p = f.resultant_in(&pencil.g, 1)?;
    let p2 = TriPoly::from_uni(&pencil.basepoint_factor, 0);
    let p1 = p.exact_div(&p2).map_err(|_| Error::Pencil("base-point factor does not divide the resultant".into()))?;
    let disc = p1.discriminant_in(0)?;
    let d = disc.to_uni(2).ok_or_else(|| Error::Pencil("discriminant depends on x".into()))?;
    let sq = d.squarefree_decomposition()?;
    let odd = sq.odd_part();
    if odd.degree() != Some(2) {
        return Err(Error::Pencil(format!("odd part of the discriminant has degree {:?}, not 2", odd.degree())));
    }
    let square = sq.square_root_part();
    let unit = sq.unit.clone();
    // over Q put the squarefree part of the constant into D1
    let (c1, c2) = match unit.as_rational() {
        Some(u) if field.is_rationals() => {
            let (s, k) = squarefree_part(&u)?;
            (FieldElement::from_rational(&field, Rational::from_integer(s)), FieldElement::from_rational(&field, k))
        }
        _ => (unit.clone(), FieldElement::one(&field)),
    };
    let d1 = odd.scale(&c1);
    let d2 = square.scale(&c2);
    // Discr_lambda(A l^2 + B l + C - u^2) = 4 A u^2 + B^2 - 4 A C
    let (c, b, a) = (d1.coeff(0), d1.coeff(1), d1.coeff(2));
    let four = FieldElement::from_int(&field, 4);
    let alpha = &four * &a;
    let gamma = &(&b * &b) - &(&alpha * &c);
    Ok(PencilReduction { p1, discriminant: d, d1, d2, conic: DiagonalConic { alpha, gamma } })
}

/// Rational multiple with coprime integer coefficients and positive leading term.
fn primitive_integral(f: &TriPoly) -> Result<TriPoly> {
    let coeffs: Vec<Rational> = f.terms().values().filter_map(FieldElement::as_rational).collect();
    let den = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let num = coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c.numer()));
    if num.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut scale = Rational::new(den, num);
    if f.leading().is_some_and(|(_, c)| c.as_rational().is_some_and(|c| c.is_negative())) {
        scale = -scale;
    }
    Ok(f.scale(&FieldElement::from_rational(f.field(), scale)))
}

/// A place of Q, written `p` or `oo`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Place {
    Prime(u64),
    Infinity,
}

impl From<Place> for String {
    fn from(p: Place) -> String {
        p.to_string()
    }
}

impl TryFrom<String> for Place {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Prime(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "oo"),
        }
    }
}

impl std::str::FromStr for Place {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "oo" | "inf" | "infinity" => Ok(Place::Infinity),
            _ => {
                let p: u64 = s.parse().map_err(|_| Error::Parse(format!("bad place {s:?}")))?;
                if p < 2 || !is_prime(p) {
                    return Err(Error::Parse(format!("{p} is not prime")));
                }
                Ok(Place::Prime(p))
            }
        }
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn valuation(n: &BigInt, p: &BigInt) -> (u32, BigInt) {
    let mut n = n.clone();
    let mut v = 0;
    while (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    (v, n)
}

fn legendre(u: &BigInt, p: &BigInt) -> i32 {
    let e = (p - 1u32) / 2u32;
    let r = u.mod_floor(p).modpow(&e, p);
    if r.is_one() {
        1
    } else {
        -1
    }
}

/// The Hilbert symbol `(a, b)_v` over Q.
pub fn hilbert_symbol(a: &Rational, b: &Rational, place: Place) -> Result<i32> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput);
    }
    // a = n/d has the same class as n d
    let a = a.numer() * a.denom();
    let b = b.numer() * b.denom();
    let p = match place {
        Place::Infinity => {
            return Ok(if a.sign() == Sign::Minus && b.sign() == Sign::Minus { -1 } else { 1 });
        }
        Place::Prime(p) => BigInt::from(p),
    };
    let (alpha, u) = valuation(&a, &p);
    let (beta, v) = valuation(&b, &p);
    let bit = |x: &BigInt| x.mod_floor(&BigInt::from(2)).to_u32().unwrap();
    if p == BigInt::from(2) {
        let eps = |x: &BigInt| bit(&((x - BigInt::one()) / BigInt::from(2)).mod_floor(&BigInt::from(2)));
        let omega = |x: &BigInt| bit(&((x * x - BigInt::one()) / BigInt::from(8)).mod_floor(&BigInt::from(2)));
        let e = eps(&u) * eps(&v) + alpha * omega(&v) + beta * omega(&u);
        return Ok(if e % 2 == 0 { 1 } else { -1 });
    }
    let eps_p = bit(&((&p - 1) / 2));
    let mut s = if (alpha * beta * eps_p) % 2 == 0 { 1 } else { -1 };
    if beta % 2 == 1 {
        s *= legendre(&u, &p);
    }
    if alpha % 2 == 1 {
        s *= legendre(&v, &p);
    }
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ConicVerdict {
    Solvable { x: String, y: String, height: u64 },
    Unsolvable { places: Vec<Place> },
    Undecided { height: u64 },
}

/// `a X^2 + b Y^2 = 1` over Q with its local symbols and verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConicProblem {
    pub a: String,
    pub b: String,
    pub reduced: (String, String),
    pub symbols: Vec<(Place, i32)>,
    pub verdict: ConicVerdict,
}

impl ConicProblem {
    pub fn is_solvable(&self) -> bool {
        matches!(self.verdict, ConicVerdict::Solvable { .. })
    }
}

fn isqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Decide `a X^2 + b Y^2 = 1` by Hasse-Minkowski; when solvable, search for
/// a point by increasing height up to `max_height`.
pub fn conic_solvable_over_q_bounded(a: &Rational, b: &Rational, max_height: u64) -> Result<ConicProblem> {
    let (sa, ka) = squarefree_part(a)?;
    let (sb, kb) = squarefree_part(b)?;
    let mut places = vec![Place::Infinity, Place::Prime(2)];
    for n in [&sa, &sb] {
        for (p, _) in factor(n) {
            let p = p.to_u64().ok_or_else(|| Error::Parse("prime too large".into()))?;
            if !places.contains(&Place::Prime(p)) {
                places.push(Place::Prime(p));
            }
        }
    }
    places.sort();
    let ra = Rational::from_integer(sa.clone());
    let rb = Rational::from_integer(sb.clone());
    let mut symbols = Vec::new();
    // a X^2 + b Y^2 = 1 is solvable iff (a, b)_v = 1 for every v
    for &v in &places {
        symbols.push((v, hilbert_symbol(&ra, &rb, v)?));
    }
    let mut out = ConicProblem {
        a: a.to_string(),
        b: b.to_string(),
        reduced: (sa.to_string(), sb.to_string()),
        symbols: symbols.clone(),
        verdict: ConicVerdict::Undecided { height: 0 },
    };
    let bad: Vec<Place> = symbols.iter().filter(|(_, s)| *s == -1).map(|(p, _)| *p).collect();
    if !bad.is_empty() {
        out.verdict = ConicVerdict::Unsolvable { places: bad };
        return Ok(out);
    }
    let mut h = 1u64;
    loop {
        if let Some((x, y, z)) = search_points(&sa, &sb, h) {
            // X = x / (ka z), Y = y / (kb z)
            let z = Rational::from_integer(z);
            let xx = Rational::from_integer(x) / (&ka * &z);
            let yy = Rational::from_integer(y) / (&kb * &z);
            debug_assert_eq!(a * &xx * &xx + b * &yy * &yy, Rational::one());
            out.verdict = ConicVerdict::Solvable { x: xx.to_string(), y: yy.to_string(), height: h };
            return Ok(out);
        }
        if h >= max_height {
            out.verdict = ConicVerdict::Undecided { height: h };
            return Ok(out);
        }
        h = (2 * h).min(max_height);
    }
}

pub fn conic_solvable_over_q(a: &Rational, b: &Rational) -> Result<ConicProblem> {
    conic_solvable_over_q_bounded(a, b, 1 << 20)
}

fn search_points(a: &BigInt, b: &BigInt, h: u64) -> Option<(BigInt, BigInt, BigInt)> {
    let h = h as i64;
    for y in 0..=h {
        for x in 0..=h {
            if x == 0 && y == 0 {
                continue;
            }
            let (bx, by) = (BigInt::from(x), BigInt::from(y));
            let s = a * &bx * &bx + b * &by * &by;
            if s.is_positive() {
                if let Some(z) = isqrt_exact(&s) {
                    return Some((bx, by, z));
                }
            }
        }
    }
    None
}

/// One checked statement of a proof trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub statement: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionTrace {
    pub steps: Vec<TraceStep>,
    pub squares_mod_8: Vec<u32>,
    pub pass: bool,
}

/// Whether `c0 + c1 a` lies in `Z[(1 - a)/2]`, `a^2 = -7`.
fn integral_in_q_sqrt_m7(x: &FieldElement) -> bool {
    let c = x.coords();
    let s = &c[0] + &c[1];
    let t = &c[1] * Rational::from_integer(2.into());
    s.is_integer() && t.is_integer()
}

/// The argument that `pi X^2 + a Y^2 = 1` has no point over `Q(a)`,
/// `a^2 = -7`, `pi = (1 - a)/2`, via `O/(pi^3) = Z/8`.
pub fn verify_case34_obstruction() -> ObstructionTrace {
    let r = |n: i64| Rational::from_integer(n.into());
    let f = NumberField::simple("a", &[r(7), r(0), r(1)]).expect("a^2 + 7 is squarefree");
    let e = |n: i64| FieldElement::from_int(&f, n);
    let a = FieldElement::generator(&f);
    let pi = (&e(1) - &a).scale(&Rational::new(1.into(), 2.into()));
    let pi2 = &pi * &pi;
    let pi3 = &pi2 * &pi;
    let pi4 = &pi3 * &pi;
    let mut steps = Vec::new();
    let mut check = |s: &str, holds: bool| steps.push(TraceStep { statement: s.to_string(), holds });
    check("pi^2 - pi + 2 = 0", (&(&pi2 - &pi) + &e(2)).is_zero());
    check("pi^4 - 3 pi^3 = 8", &pi4 - &pi3.scale(&r(3)) == e(8));
    check("pi^3 = -pi - 2", pi3 == &(-&pi) - &e(2));
    let in_ideal = |x: &FieldElement| integral_in_q_sqrt_m7(&x.div(&pi3).expect("pi is a unit in F"));
    check("8 lies in (pi^3)", in_ideal(&e(8)));
    check("1 does not lie in (pi^3)", !in_ideal(&e(1)));
    // (pi^3) = Z pi^3 + Z pi^4 has index |det| = 8 in Z + Z pi
    let coords_in_pi = |x: &FieldElement| {
        let c = x.coords();
        let v = -(&c[1] * r(2));
        (&c[0] + &c[1], v)
    };
    let (u3, v3) = coords_in_pi(&pi3);
    let (u4, v4) = coords_in_pi(&pi4);
    check("(pi^3) has index 8 in O_F", (&u3 * &v4 - &v3 * &u4).abs() == r(8));
    check("pi = 6 mod pi^3", in_ideal(&(&pi - &e(6))));
    check("a = 5 mod pi^3", in_ideal(&(&a - &e(5))));
    let squares: Vec<u32> = {
        let mut s: Vec<u32> = (0..8u32).map(|x| x * x % 8).collect();
        s.sort_unstable();
        s.dedup();
        s
    };
    check("squares mod 8 are 0, 1, 4", squares == vec![0, 1, 4]);
    let mut all_even = true;
    for x in 0..8u32 {
        for y in 0..8u32 {
            for z in 0..8u32 {
                if (6 * x * x + 5 * y * y) % 8 == z * z % 8 && (x % 2 == 1 || y % 2 == 1 || z % 2 == 1) {
                    all_even = false;
                }
            }
        }
    }
    check("6X^2 + 5Y^2 = Z^2 mod 8 forces X, Y, Z even", all_even);
    check("2 = pi - pi^2", e(2) == &pi - &pi2);
    let pass = steps.iter().all(|s| s.holds);
    steps.push(TraceStep {
        statement: "a primitive solution of pi X^2 + a Y^2 = Z^2 would be divisible by pi, so there is none".into(),
        holds: pass,
    });
    ObstructionTrace { steps, squares_mod_8: squares, pass }
}

/// The field `Q(a)`, `a^3 - a^2 - a - 1 = 0`.
pub fn case24_field() -> NumberField {
    let r = |n: i64| Rational::from_integer(n.into());
    NumberField::simple("a", &[r(-1), r(-1), r(-1), r(1)]).expect("squarefree")
}

/// Whether `(X, Y, Z)` is a nontrivial zero of `(2-a)X^2 - 5a(a+2)Y^2 - Z^2`.
pub fn verify_case24_point(x: &FieldElement, y: &FieldElement, z: &FieldElement) -> bool {
    if x.is_zero() && y.is_zero() && z.is_zero() {
        return false;
    }
    let f = x.field();
    let e = |n: i64| FieldElement::from_int(f, n);
    let a = FieldElement::generator(f);
    let c1 = &e(2) - &a;
    let c2 = (&a * &(&a + &e(2))).scale(&Rational::from_integer(5.into()));
    let (xx, yy, zz) = (x * x, y * y, z * z);
    (&(&(&c1 * &xx) - &(&c2 * &yy)) - &zz).is_zero()
}

/// The point `X = 2 + 2a^2, Y = 1 + a - a^2, Z = 2 - a^2`.
pub fn case24_printed_point() -> [FieldElement; 3] {
    let f = case24_field();
    let r = |n: i64| Rational::from_integer(n.into());
    let el = |c: [i64; 3]| FieldElement::from_coords(&f, c.iter().map(|&v| r(v)).collect()).unwrap();
    [el([2, 0, 2]), el([1, 1, -1]), el([2, 0, -1])]
}

pub fn verify_case24_solution() -> bool {
    let [x, y, z] = case24_printed_point();
    verify_case24_point(&x, &y, &z)
}

/// Whether a field element is a square of a rational.
pub fn is_rational_square(x: &FieldElement) -> bool {
    x.as_rational().is_some_and(|r| rational_sqrt(&r).is_some())
}
