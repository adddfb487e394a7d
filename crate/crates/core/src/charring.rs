//! Characters with truncated `(q, t)` series coefficients.
//!
//! A [`CharElement`] is a finitely supported map `weight -> SeriesQT`,
//! standing for `sum_mu c_mu(q, t) e^mu`. Weyl-invariant elements are
//! expanded in the monomial basis `m_lambda` (orbit sums) or the Schur basis
//! `s_lambda` (irreducible characters).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rootsys::{RootSystem, Weight};
use crate::series::{SeriesQT, Trunc};
use crate::{rat, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharElement {
    terms: BTreeMap<Weight, SeriesQT>,
    rank: usize,
    trunc: Trunc,
}

impl CharElement {
    pub fn zero(rank: usize, trunc: Trunc) -> CharElement {
        CharElement {
            terms: BTreeMap::new(),
            rank,
            trunc,
        }
    }

    pub fn one(rank: usize, trunc: Trunc) -> CharElement {
        CharElement::exp(Weight::zero(rank), SeriesQT::one(trunc))
    }

    /// `c e^mu`.
    pub fn exp(mu: Weight, c: SeriesQT) -> CharElement {
        let mut f = CharElement::zero(mu.rank(), c.trunc());
        f.add_term(mu, &c);
        f
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn trunc(&self) -> Trunc {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &Weight> {
        self.terms.keys()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &SeriesQT)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mu: &Weight) -> SeriesQT {
        self.terms
            .get(mu)
            .cloned()
            .unwrap_or_else(|| SeriesQT::zero(self.trunc))
    }

    pub fn add_term(&mut self, mu: Weight, c: &SeriesQT) {
        debug_assert_eq!(mu.rank(), self.rank);
        if c.is_zero() {
            return;
        }
        let c = c.retruncate(self.trunc);
        match self.terms.get_mut(&mu) {
            Some(s) => {
                *s = &*s + &c;
                if s.is_zero() {
                    self.terms.remove(&mu);
                }
            }
            None => {
                if !c.is_zero() {
                    self.terms.insert(mu, c);
                }
            }
        }
    }

    /// Lowers the truncation of every coefficient.
    pub fn retruncate(&self, trunc: Trunc) -> CharElement {
        let trunc = trunc.min(self.trunc);
        let mut out = CharElement::zero(self.rank, trunc);
        for (mu, c) in &self.terms {
            out.add_term(mu.clone(), c);
        }
        out
    }

    pub fn eq_mod_trunc(&self, other: &CharElement) -> bool {
        let t = self.trunc.min(other.trunc);
        self.retruncate(t) == other.retruncate(t)
    }

    pub fn scale(&self, c: &SeriesQT) -> CharElement {
        let trunc = (&SeriesQT::one(self.trunc) * c).trunc();
        let mut out = CharElement::zero(self.rank, trunc);
        for (mu, s) in &self.terms {
            out.add_term(mu.clone(), &(s * c));
        }
        out
    }

    pub fn scale_rational(&self, c: &Rational) -> CharElement {
        let mut out = CharElement::zero(self.rank, self.trunc);
        for (mu, s) in &self.terms {
            out.add_term(mu.clone(), &s.scale(c));
        }
        out
    }

    /// Multiplies by `(1 + c q^a t^b e^mu)`.
    pub fn mul_binomial(&self, mu: &Weight, a: i64, b: i64, c: &Rational) -> CharElement {
        let mut out = self.clone();
        for (nu, s) in &self.terms {
            out.add_term(nu.add(mu), &s.shift(a, b).scale(c));
        }
        out
    }

    /// `e^mu -> e^-mu`; `q` and `t` are left untouched.
    pub fn bar(&self) -> CharElement {
        CharElement {
            terms: self.terms.iter().map(|(mu, s)| (mu.neg(), s.clone())).collect(),
            rank: self.rank,
            trunc: self.trunc,
        }
    }

    /// Coefficient of `e^0`.
    pub fn constant_term(&self) -> SeriesQT {
        self.coeff(&Weight::zero(self.rank))
    }

    /// Constant term of `self * other` without forming the full product.
    pub fn constant_term_of_product(&self, other: &CharElement) -> SeriesQT {
        let trunc = (&SeriesQT::one(self.trunc) * &SeriesQT::one(other.trunc)).trunc();
        let mut acc = SeriesQT::zero(trunc);
        for (mu, s) in &self.terms {
            if let Some(c) = other.terms.get(&mu.neg()) {
                acc = &acc + &(s * c);
            }
        }
        acc
    }

    pub fn at_t_zero(&self) -> CharElement {
        let mut out = CharElement::zero(self.rank, self.trunc);
        for (mu, s) in &self.terms {
            out.add_term(mu.clone(), &s.at_t_zero());
        }
        out
    }

    /// Checks `c(s_i mu) = c(mu)` for every weight and simple reflection.
    pub fn is_w_invariant(&self, rs: &RootSystem) -> bool {
        self.terms.iter().all(|(mu, c)| {
            (0..rs.rank()).all(|i| {
                self.terms
                    .get(&rs.reflect(i, mu))
                    .is_some_and(|d| d == c)
            })
        })
    }

    /// Coefficients on the dominant weights, ascending by total order.
    pub fn dominant_part(&self, rs: &RootSystem) -> Vec<(Weight, SeriesQT)> {
        let mut v: Vec<(Weight, SeriesQT)> = self
            .terms
            .iter()
            .filter(|(mu, _)| mu.is_dominant())
            .map(|(mu, c)| (mu.clone(), c.clone()))
            .collect();
        v.sort_by_key(|(mu, _)| rs.total_order_key(mu));
        v
    }

    /// Renders a Weyl-invariant element in the monomial basis, highest
    /// weight first.
    pub fn display_monomial(&self, rs: &RootSystem) -> String {
        display_in_basis(self.dominant_part(rs).into_iter().rev(), "m")
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(mu, s)| json!({"weight": mu.0, "series": s.to_json()}))
            .collect();
        json!({
            "nq": self.trunc.nq,
            "nt": self.trunc.nt,
            "rank": self.rank,
            "terms": terms,
        })
    }

    pub fn from_json(v: &Value) -> Result<CharElement> {
        let bad = |m: &str| Error::Config(format!("bad character JSON: {m}"));
        let get = |k: &str| v.get(k).and_then(Value::as_i64).ok_or_else(|| bad(k));
        let trunc = Trunc::new(get("nq")?, get("nt")?);
        let rank = get("rank")? as usize;
        let mut f = CharElement::zero(rank, trunc);
        for term in v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("terms"))? {
            let w: Vec<i64> = serde_json::from_value(term["weight"].clone())
                .map_err(|e| bad(&e.to_string()))?;
            if w.len() != rank {
                return Err(bad("weight rank"));
            }
            f.add_term(Weight(w), &SeriesQT::from_json(&term["series"])?);
        }
        Ok(f)
    }
}

pub(crate) fn display_in_basis<I>(items: I, sym: &str) -> String
where
    I: IntoIterator<Item = (Weight, SeriesQT)>,
{
    let parts: Vec<String> = items
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(mu, c)| {
            let coeff = c.to_string();
            let label = format!("{sym}_{mu}");
            if coeff == "1" {
                label
            } else if c.len() == 1 && !coeff.contains(' ') {
                format!("{coeff}*{label}")
            } else {
                format!("({coeff})*{label}")
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

impl fmt::Display for CharElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items = self.terms.iter().rev().map(|(mu, c)| (mu.clone(), c.clone()));
        write!(f, "{}", display_in_basis(items, "e"))
    }
}

impl<'a> Add<&'a CharElement> for &'a CharElement {
    type Output = CharElement;

    fn add(self, rhs: &CharElement) -> CharElement {
        let mut out = self.retruncate(rhs.trunc);
        for (mu, c) in &rhs.terms {
            out.add_term(mu.clone(), c);
        }
        out
    }
}

impl Neg for &CharElement {
    type Output = CharElement;

    fn neg(self) -> CharElement {
        CharElement {
            terms: self.terms.iter().map(|(mu, c)| (mu.clone(), -c)).collect(),
            rank: self.rank,
            trunc: self.trunc,
        }
    }
}

impl<'a> Sub<&'a CharElement> for &'a CharElement {
    type Output = CharElement;

    fn sub(self, rhs: &CharElement) -> CharElement {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a CharElement> for &'a CharElement {
    type Output = CharElement;

    fn mul(self, rhs: &CharElement) -> CharElement {
        let trunc = (&SeriesQT::one(self.trunc) * &SeriesQT::one(rhs.trunc)).trunc();
        let mut out = CharElement::zero(self.rank, trunc);
        for (mu, a) in &self.terms {
            for (nu, b) in &rhs.terms {
                out.add_term(mu.add(nu), &(a * b));
            }
        }
        out
    }
}

/// `m_lambda`: the orbit sum of `e^lambda`.
pub fn monomial_sym(rs: &RootSystem, lambda: &Weight, trunc: Trunc) -> Result<CharElement> {
    rs.check_dominant(lambda)?;
    let mut f = CharElement::zero(rs.rank(), trunc);
    let one = SeriesQT::one(trunc);
    for mu in rs.weyl_orbit(lambda) {
        f.add_term(mu, &one);
    }
    Ok(f)
}

/// Dominant weight multiplicities of `L(lambda)` by Freudenthal's recursion.
pub fn dominant_multiplicities(rs: &RootSystem, lambda: &Weight) -> Result<Vec<(Weight, Rational)>> {
    rs.check_dominant(lambda)?;
    let below = rs.dominant_weights_below(lambda);
    let rho = rs.rho();
    let lr = lambda.add(&rho);
    let norm_lr = rs.inner(&lr, &lr);
    let mut mult: HashMap<Weight, Rational> = HashMap::new();
    mult.insert(lambda.clone(), Rational::one());
    let pos = rs.positive_roots();
    for mu in below.iter().rev().skip(1) {
        let mut sum = Rational::zero();
        for alpha in pos {
            let mut k = 1;
            loop {
                let nu = mu.add(&alpha.scale(k));
                let dom = rs.dominant_representative(&nu);
                let Some(m) = mult.get(&dom) else { break };
                sum += m * rs.inner(&nu, alpha);
                k += 1;
            }
        }
        let mr = mu.add(&rho);
        let denom = &norm_lr - rs.inner(&mr, &mr);
        mult.insert(mu.clone(), rat(2) * sum / denom);
    }
    Ok(below
        .into_iter()
        .map(|mu| {
            let m = mult.remove(&mu).unwrap();
            (mu, m)
        })
        .collect())
}

/// `s_lambda`: the character of the irreducible module `L(lambda)`.
pub fn schur_char(rs: &RootSystem, lambda: &Weight, trunc: Trunc) -> Result<CharElement> {
    let mut f = CharElement::zero(rs.rank(), trunc);
    for (mu, m) in dominant_multiplicities(rs, lambda)? {
        if m.is_zero() {
            continue;
        }
        let c = SeriesQT::constant(m, trunc);
        for nu in rs.weyl_orbit(&mu) {
            f.add_term(nu, &c);
        }
    }
    Ok(f)
}

/// Expands `f` in a triangular basis. `basis` lists `(lead weight, element)`
/// pairs in descending total order; each element's coefficient at its lead
/// weight must be an invertible series and its dominant support must lie at
/// or below the lead in the total order.
pub fn expand_in_triangular_basis(
    f: &CharElement,
    basis: &[(Weight, CharElement)],
) -> Result<Vec<SeriesQT>> {
    let mut residual = f.clone();
    let mut coeffs = Vec::with_capacity(basis.len());
    for (lead, b) in basis {
        let r = residual.coeff(lead);
        if r.is_zero() {
            coeffs.push(SeriesQT::zero(residual.trunc().min(b.trunc())));
            continue;
        }
        let c = &r * &b.coeff(lead).invert()?;
        residual = &residual - &b.scale(&c);
        coeffs.push(c);
    }
    if let Some(mu) = residual.support().find(|m| m.is_dominant()).or(residual.support().next()) {
        return Err(Error::ExpansionFailure(mu.clone()));
    }
    Ok(coeffs)
}

/// Schur expansion of a Weyl-invariant element: `(lambda, coefficient)` in
/// ascending total order, zero coefficients omitted.
pub fn schur_expansion(rs: &RootSystem, f: &CharElement) -> Result<Vec<(Weight, SeriesQT)>> {
    let mut leads: Vec<Weight> = f.support().filter(|m| m.is_dominant()).cloned().collect();
    if leads.is_empty() {
        return Ok(vec![]);
    }
    // every dominant weight below a support weight may be needed
    let mut all: Vec<Weight> = Vec::new();
    for l in &leads {
        for mu in rs.dominant_weights_below(l) {
            if !all.contains(&mu) {
                all.push(mu);
            }
        }
    }
    leads = all;
    leads.sort_by_key(|m| std::cmp::Reverse(rs.total_order_key(m)));
    let basis: Vec<(Weight, CharElement)> = leads
        .iter()
        .map(|m| Ok((m.clone(), schur_char(rs, m, f.trunc())?)))
        .collect::<Result<_>>()?;
    let coeffs = expand_in_triangular_basis(f, &basis)?;
    let mut out: Vec<(Weight, SeriesQT)> = leads
        .into_iter()
        .zip(coeffs)
        .filter(|(_, c)| !c.is_zero())
        .collect();
    out.reverse();
    Ok(out)
}

pub fn display_schur(rs: &RootSystem, f: &CharElement) -> Result<String> {
    let mut e = schur_expansion(rs, f)?;
    e.reverse();
    Ok(display_in_basis(e, "s"))
}
