//! Truncated bivariate Laurent series in `q` and `t` with exact rational
//! coefficients.
//!
//! A series is known exactly modulo `q^(nq+1)` and `t^(nt+1)`; terms beyond
//! the bounds are unknown and never stored. `floor` is a declared lower bound
//! on the `q`-exponents, which fixes how precision propagates through
//! products of Laurent series.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::Rational;

/// Truncation bounds: exponents above `nq` in `q` or above `nt` in `t` are
/// dropped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Trunc {
    pub nq: i64,
    pub nt: i64,
}

impl Trunc {
    pub fn new(nq: i64, nt: i64) -> Trunc {
        Trunc { nq, nt }
    }

    pub fn min(self, other: Trunc) -> Trunc {
        Trunc {
            nq: self.nq.min(other.nq),
            nt: self.nt.min(other.nt),
        }
    }

    pub fn contains(&self, q: i64, t: i64) -> bool {
        q <= self.nq && t <= self.nt
    }
}

impl fmt::Display for Trunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Nq={},Nt={}", self.nq, self.nt)
    }
}

/// Equality compares the retained terms and the bounds; `floor` is
/// precision bookkeeping and does not take part.
#[derive(Clone, Debug)]
pub struct SeriesQT {
    terms: BTreeMap<(i64, i64), Rational>,
    trunc: Trunc,
    floor: i64,
}

impl PartialEq for SeriesQT {
    fn eq(&self, other: &SeriesQT) -> bool {
        self.trunc == other.trunc && self.terms == other.terms
    }
}

impl Eq for SeriesQT {}

impl SeriesQT {
    pub fn zero(trunc: Trunc) -> SeriesQT {
        SeriesQT {
            terms: BTreeMap::new(),
            trunc,
            floor: 0,
        }
    }

    pub fn one(trunc: Trunc) -> SeriesQT {
        SeriesQT::constant(Rational::one(), trunc)
    }

    pub fn constant(c: Rational, trunc: Trunc) -> SeriesQT {
        SeriesQT::monomial(0, 0, c, trunc)
    }

    /// `c q^a t^b`, dropped if outside the bounds. A negative `a` lowers the
    /// floor accordingly.
    pub fn monomial(a: i64, b: i64, c: Rational, trunc: Trunc) -> SeriesQT {
        let mut s = SeriesQT::zero(trunc);
        s.floor = a.min(0);
        s.add_term(a, b, c);
        s
    }

    /// Builds a series from `(q, t, coefficient)` triples.
    pub fn from_terms<I>(terms: I, trunc: Trunc) -> SeriesQT
    where
        I: IntoIterator<Item = (i64, i64, Rational)>,
    {
        let mut s = SeriesQT::zero(trunc);
        for (a, b, c) in terms {
            s.floor = s.floor.min(a);
            s.add_term(a, b, c);
        }
        s
    }

    /// Polynomial in `q` alone from its coefficient list.
    pub fn from_q_coeffs(coeffs: &[i64], trunc: Trunc) -> SeriesQT {
        SeriesQT::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| (k as i64, 0, Rational::from_integer(c.into()))),
            trunc,
        )
    }

    pub fn trunc(&self) -> Trunc {
        self.trunc
    }

    pub fn floor(&self) -> i64 {
        self.floor
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

    pub fn coeff(&self, a: i64, b: i64) -> Rational {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_coeff(&self) -> Rational {
        self.coeff(0, 0)
    }

    /// Nonzero terms in ascending `(q, t)` order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64, &Rational)> {
        self.terms.iter().map(|(&(a, b), c)| (a, b, c))
    }

    pub fn add_term(&mut self, a: i64, b: i64, c: Rational) {
        if c.is_zero() || !self.trunc.contains(a, b) {
            return;
        }
        debug_assert!(a >= self.floor, "q-exponent {a} below floor {}", self.floor);
        match self.terms.entry((a, b)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Lowers the truncation bounds, dropping terms that fall outside.
    pub fn retruncate(&self, trunc: Trunc) -> SeriesQT {
        let trunc = trunc.min(self.trunc);
        SeriesQT {
            terms: self
                .terms
                .iter()
                .filter(|(&(a, b), _)| trunc.contains(a, b))
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
            trunc,
            floor: self.floor,
        }
    }

    /// Equality of the retained coefficients up to the common bounds.
    pub fn eq_mod_trunc(&self, other: &SeriesQT) -> bool {
        let t = self.trunc.min(other.trunc);
        self.retruncate(t).terms == other.retruncate(t).terms
    }

    pub fn scale(&self, c: &Rational) -> SeriesQT {
        if c.is_zero() {
            return SeriesQT { terms: BTreeMap::new(), ..self.clone() };
        }
        SeriesQT {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
            trunc: self.trunc,
            floor: self.floor,
        }
    }

    /// Multiplies by `q^a t^b`.
    pub fn shift(&self, a: i64, b: i64) -> SeriesQT {
        let trunc = Trunc::new(self.trunc.nq + a, self.trunc.nt + b);
        SeriesQT {
            terms: self.terms.iter().map(|(&(x, y), v)| ((x + a, y + b), v.clone())).collect(),
            trunc,
            floor: self.floor + a,
        }
    }

    /// Specialization `t = 0`.
    pub fn at_t_zero(&self) -> SeriesQT {
        SeriesQT {
            terms: self
                .terms
                .iter()
                .filter(|(&(_, b), _)| b == 0)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
            trunc: self.trunc,
            floor: self.floor,
        }
    }

    /// Evaluates the retained polynomial at rational `q`, `t`.
    pub fn evaluate(&self, q: &Rational, t: &Rational) -> Rational {
        self.terms
            .iter()
            .map(|(&(a, b), c)| c * pow_i(q, a) * pow_i(t, b))
            .sum()
    }

    /// Multiplicative inverse of a power series whose `q^0 t^0` coefficient
    /// is nonzero.
    pub fn invert(&self) -> Result<SeriesQT> {
        let c0 = self.constant_coeff();
        if c0.is_zero() {
            return Err(Error::NotInvertible(format!("zero constant coefficient in {self}")));
        }
        if self.terms.keys().any(|&(a, b)| a < 0 || b < 0) {
            return Err(Error::NotInvertible(format!("negative exponents in {self}")));
        }
        let inv0 = c0.recip();
        let trunc = self.trunc;
        let mut out: BTreeMap<(i64, i64), Rational> = BTreeMap::new();
        let rest: Vec<((i64, i64), &Rational)> =
            self.terms.iter().filter(|(k, _)| **k != (0, 0)).map(|(k, v)| (*k, v)).collect();
        for a in 0..=trunc.nq {
            for b in 0..=trunc.nt {
                let mut acc = if (a, b) == (0, 0) { Rational::one() } else { Rational::zero() };
                for &((i, j), c) in &rest {
                    if i <= a && j <= b {
                        if let Some(r) = out.get(&(a - i, b - j)) {
                            acc -= c * r;
                        }
                    }
                }
                if !acc.is_zero() {
                    out.insert((a, b), acc * &inv0);
                }
            }
        }
        Ok(SeriesQT { terms: out, trunc, floor: 0 })
    }

    pub fn pow(&self, k: u32) -> SeriesQT {
        let mut r = SeriesQT::one(self.trunc);
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// First coefficient (in ascending order) that is not a nonnegative
    /// integer.
    pub fn first_non_natural(&self) -> Option<(i64, i64, Rational)> {
        self.terms
            .iter()
            .find(|(_, c)| !c.is_integer() || c.is_negative())
            .map(|(&(a, b), c)| (a, b, c.clone()))
    }

    /// Canonical JSON: `{"nq","nt","floor","terms":[[q,t,"num/den"],...]}`.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(&(a, b), c)| json!([a, b, rational_to_string(c)]))
            .collect();
        json!({
            "floor": self.floor,
            "nq": self.trunc.nq,
            "nt": self.trunc.nt,
            "terms": terms,
        })
    }

    pub fn from_json(v: &Value) -> Result<SeriesQT> {
        let bad = |m: &str| Error::Config(format!("bad series JSON: {m}"));
        let get = |k: &str| v.get(k).and_then(Value::as_i64).ok_or_else(|| bad(k));
        let trunc = Trunc::new(get("nq")?, get("nt")?);
        let mut s = SeriesQT::zero(trunc);
        s.floor = get("floor")?;
        for term in v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("terms"))? {
            let arr = term.as_array().ok_or_else(|| bad("term"))?;
            if arr.len() != 3 {
                return Err(bad("term arity"));
            }
            let a = arr[0].as_i64().ok_or_else(|| bad("q"))?;
            let b = arr[1].as_i64().ok_or_else(|| bad("t"))?;
            let c = parse_rational(arr[2].as_str().ok_or_else(|| bad("coefficient"))?)?;
            s.add_term(a, b, c);
        }
        Ok(s)
    }
}

fn pow_i(x: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

/// `num/den` with the denominator always present.
pub fn rational_to_string(c: &Rational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Config(format!("bad rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

impl<'a> Add<&'a SeriesQT> for &'a SeriesQT {
    type Output = SeriesQT;

    fn add(self, rhs: &SeriesQT) -> SeriesQT {
        let trunc = self.trunc.min(rhs.trunc);
        let mut out = self.retruncate(trunc);
        out.floor = self.floor.min(rhs.floor);
        for (&(a, b), c) in &rhs.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a SeriesQT> for &'a SeriesQT {
    type Output = SeriesQT;

    fn sub(self, rhs: &SeriesQT) -> SeriesQT {
        self + &(-rhs)
    }
}

impl Neg for &SeriesQT {
    type Output = SeriesQT;

    fn neg(self) -> SeriesQT {
        SeriesQT {
            terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect(),
            trunc: self.trunc,
            floor: self.floor,
        }
    }
}

impl<'a> Mul<&'a SeriesQT> for &'a SeriesQT {
    type Output = SeriesQT;

    fn mul(self, rhs: &SeriesQT) -> SeriesQT {
        let trunc = Trunc::new(
            (self.trunc.nq + rhs.floor).min(rhs.trunc.nq + self.floor),
            self.trunc.nt.min(rhs.trunc.nt),
        );
        let mut out = SeriesQT {
            terms: BTreeMap::new(),
            trunc,
            floor: self.floor + rhs.floor,
        };
        for (&(a, b), c) in &self.terms {
            for (&(x, y), d) in &rhs.terms {
                if a + x > trunc.nq {
                    break;
                }
                if b + y <= trunc.nt {
                    out.add_term(a + x, b + y, c * d);
                }
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<SeriesQT> for SeriesQT {
            type Output = SeriesQT;
            fn $m(self, rhs: SeriesQT) -> SeriesQT {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for SeriesQT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&(a, b), c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let unit = abs.is_one();
            if !unit || (a == 0 && b == 0) {
                if abs.is_integer() {
                    write!(f, "{}", abs.numer())?;
                } else {
                    write!(f, "{}/{}", abs.numer(), abs.denom())?;
                }
            }
            for (var, e) in [("q", a), ("t", b)] {
                match e {
                    0 => {}
                    1 => write!(f, "{var}")?,
                    e => write!(f, "{var}^{e}")?,
                }
            }
        }
        Ok(())
    }
}
