//! Generalized Macdonald polynomials by triangular orthogonalization of the
//! monomial basis, their norms and duals, projective characters, and
//! BGG-reciprocity diagnostics.
//!
//! `P_lambda = m_lambda - sum_mu <m_lambda, P_mu> / <P_mu, P_mu> * P_mu`, the
//! sum running over dominant `mu` in the coset `lambda + Q` with smaller
//! total order key. Incomparable `mu` are included so the result is
//! orthogonal to every lower polynomial; their coefficients are kept in
//! [`MacdonaldResult::incomparable_residue`].

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::charring::{expand_in_triangular_basis, monomial_sym, schur_char, schur_expansion, CharElement};
use crate::error::{Error, Result};
use crate::liedata::{current_algebra_data, CoefficientSpec, GradedLieData};
use crate::pairing::pair;
use crate::rootsys::{RootSystem, Weight};
use crate::series::{SeriesQT, Trunc};
use crate::Rational;

/// Version tag of the persisted memo format.
pub const CACHE_VERSION: u64 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MacdonaldResult {
    pub lambda: Weight,
    /// `P_lambda`.
    pub p: CharElement,
    /// `<P_lambda, P_lambda>`.
    pub norm: SeriesQT,
    /// `Q_lambda = P_lambda / norm`.
    pub q: CharElement,
    /// Nonzero coefficients against dominance-incomparable lower weights.
    pub incomparable_residue: BTreeMap<Weight, SeriesQT>,
}

impl MacdonaldResult {
    fn new(lambda: Weight, p: CharElement, norm: SeriesQT, residue: BTreeMap<Weight, SeriesQT>) -> Result<Self> {
        if norm.constant_coeff().is_zero() {
            return Err(Error::VanishingNorm(lambda));
        }
        let q = p.scale(&norm.invert()?).retruncate(p.trunc());
        Ok(MacdonaldResult {
            lambda,
            p,
            norm,
            q,
            incomparable_residue: residue,
        })
    }

    /// Monomial coefficients of `P`, highest weight first.
    pub fn monomial_coefficients(&self, rs: &RootSystem) -> Vec<(Weight, SeriesQT)> {
        let mut v = self.p.dominant_part(rs);
        v.reverse();
        v
    }

    /// Schur coefficients of `P`, highest weight first.
    pub fn schur_coefficients(&self, rs: &RootSystem) -> Result<Vec<(Weight, SeriesQT)>> {
        let mut v = schur_expansion(rs, &self.p)?;
        v.reverse();
        Ok(v)
    }

    fn to_json(&self, algebra: &str) -> Value {
        let residue: Vec<Value> = self
            .incomparable_residue
            .iter()
            .map(|(w, s)| json!([w.0, s.to_json()]))
            .collect();
        json!({
            "algebra": algebra,
            "nq": self.p.trunc().nq,
            "nt": self.p.trunc().nt,
            "lambda": self.lambda.0,
            "p": self.p.to_json(),
            "norm": self.norm.to_json(),
            "incomparable_residue": residue,
        })
    }
}

type MemoKey = (String, Trunc, Weight);

/// Memoized Macdonald computations, shareable across threads.
#[derive(Debug, Default)]
pub struct MacdonaldEngine {
    memo: Mutex<HashMap<MemoKey, Arc<MacdonaldResult>>>,
}

fn key(data: &GradedLieData, lambda: &Weight) -> MemoKey {
    (data.name().to_string(), data.trunc(), lambda.clone())
}

impl MacdonaldEngine {
    pub fn new() -> Self {
        Self::default()
    }

    /// Process-wide engine used by the free functions of this module.
    pub fn global() -> &'static MacdonaldEngine {
        static ENGINE: OnceLock<MacdonaldEngine> = OnceLock::new();
        ENGINE.get_or_init(MacdonaldEngine::new)
    }

    pub fn len(&self) -> usize {
        self.memo.lock().expect("memo lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn lookup(&self, k: &MemoKey) -> Option<Arc<MacdonaldResult>> {
        self.memo.lock().expect("memo lock").get(k).cloned()
    }

    fn store(&self, k: MemoKey, r: Arc<MacdonaldResult>) -> Arc<MacdonaldResult> {
        self.memo.lock().expect("memo lock").entry(k).or_insert(r).clone()
    }

    pub fn macdonald_polynomial(&self, data: &GradedLieData, lambda: &Weight) -> Result<Arc<MacdonaldResult>> {
        let rs = data.rs();
        rs.check_dominant(lambda)?;
        if let Some(r) = self.lookup(&key(data, lambda)) {
            return Ok(r);
        }
        let top = rs.total_order_key(lambda);
        let chain: Vec<Weight> = rs
            .dominant_weights_in_coset(lambda, &rs.height(lambda))
            .into_iter()
            .filter(|mu| rs.total_order_key(mu) <= top)
            .collect();
        let mut lower: Vec<Arc<MacdonaldResult>> = Vec::with_capacity(chain.len());
        for mu in chain {
            let k = key(data, &mu);
            let r = match self.lookup(&k) {
                Some(r) => r,
                None => self.store(k, Arc::new(orthogonalize(data, &mu, &lower)?)),
            };
            lower.push(r);
        }
        Ok(lower.pop().expect("chain contains lambda"))
    }

    pub fn macdonald_norm(&self, data: &GradedLieData, lambda: &Weight) -> Result<SeriesQT> {
        Ok(self.macdonald_polynomial(data, lambda)?.norm.clone())
    }

    pub fn dual_macdonald(&self, data: &GradedLieData, lambda: &Weight) -> Result<CharElement> {
        Ok(self.macdonald_polynomial(data, lambda)?.q.clone())
    }

    /// `m_{lambda,mu}` for dominant `lambda, mu` in the box below
    /// `lambda_max`, computed as `<chi(Proj lambda), P_mu>` and as the
    /// coefficient of `Q_mu` in the triangular expansion of
    /// `chi(Proj lambda)`. Disagreement is [`Error::PathDisagreement`].
    pub fn bgg_transition(&self, data: &GradedLieData, lambda_max: &Weight) -> Result<BggMatrix> {
        let rs = data.rs();
        rs.check_dominant(lambda_max)?;
        let weights = rs.dominant_weights_in_box(lambda_max);
        let mut entries = BTreeMap::new();
        for lambda in &weights {
            let chi = projective_character(data, lambda)?;
            let expansion = self.dual_expansion(data, &chi, lambda)?;
            for mu in &weights {
                let pm = self.macdonald_polynomial(data, mu)?;
                let via_pairing = pair(data, &chi, &pm.p)?;
                let via_expansion = expansion
                    .get(mu)
                    .cloned()
                    .unwrap_or_else(|| SeriesQT::zero(data.trunc()));
                if via_pairing != via_expansion {
                    return Err(Error::PathDisagreement(format!(
                        "m_({lambda},{mu}) over {}: pairing gives {via_pairing}, Q-expansion gives {via_expansion}",
                        data.name()
                    )));
                }
                entries.insert((lambda.clone(), mu.clone()), via_pairing);
            }
        }
        Ok(BggMatrix { weights, entries })
    }

    /// Coefficients of `f` (Weyl-invariant, supported in the coset of
    /// `coset`) in the basis `Q_nu`.
    fn dual_expansion(
        &self,
        data: &GradedLieData,
        f: &CharElement,
        coset: &Weight,
    ) -> Result<BTreeMap<Weight, SeriesQT>> {
        let rs = data.rs();
        let Some(top) = f
            .support()
            .filter(|m| m.is_dominant())
            .max_by_key(|m| rs.total_order_key(m))
            .cloned()
        else {
            return Ok(BTreeMap::new());
        };
        let top_key = rs.total_order_key(&top);
        let mut leads: Vec<Weight> = rs
            .dominant_weights_in_coset(coset, &rs.height(&top))
            .into_iter()
            .filter(|nu| rs.total_order_key(nu) <= top_key)
            .collect();
        leads.reverse();
        let basis: Vec<(Weight, CharElement)> = leads
            .iter()
            .map(|nu| Ok((nu.clone(), self.macdonald_polynomial(data, nu)?.q.clone())))
            .collect::<Result<_>>()?;
        let coeffs = expand_in_triangular_basis(f, &basis)?;
        Ok(leads.into_iter().zip(coeffs).filter(|(_, c)| !c.is_zero()).collect())
    }

    /// Checks that every `m_{lambda,mu}` has nonnegative integer
    /// coefficients and matches the `s_lambda` coefficient of `P_mu`.
    pub fn verify_bgg(&self, data: &GradedLieData, lambda_max: &Weight) -> Result<BggReport> {
        let rs = data.rs();
        let matrix = self.bgg_transition(data, lambda_max)?;
        let mut rows = Vec::new();
        for ((lambda, mu), m) in &matrix.entries {
            let pm = self.macdonald_polynomial(data, mu)?;
            let schur = schur_expansion(rs, &pm.p)?
                .into_iter()
                .find(|(nu, _)| nu == lambda)
                .map(|(_, c)| c)
                .unwrap_or_else(|| SeriesQT::zero(data.trunc()));
            let mut failure = None;
            if let Some((a, b, c)) = m.first_non_natural() {
                failure = Some(format!("coefficient of q^{a} t^{b} is {c}, not a nonnegative integer"));
            } else if &schur != m {
                failure = Some(format!("s_{lambda} coefficient of P_{mu} is {schur}, m is {m}"));
            }
            rows.push(BggRow {
                lambda: lambda.clone(),
                mu: mu.clone(),
                m: m.clone(),
                schur_coefficient: schur,
                failure,
            });
        }
        Ok(BggReport {
            algebra: data.name().to_string(),
            trunc: data.trunc(),
            lambda_max: lambda_max.clone(),
            rows,
        })
    }

    /// Compares the norms over `g (x) C[x]` with
    /// `prod_i prod_{j=1}^{lambda_i} (1 - q^j)^(-1)` for every dominant
    /// weight in the box below `lambda_max`.
    pub fn verify_norm_product(&self, rs: &RootSystem, lambda_max: &Weight, nq: i64) -> Result<NormReport> {
        rs.check_dominant(lambda_max)?;
        let trunc = Trunc::new(nq, 0);
        let data = current_algebra_data(rs, &CoefficientSpec::PolyX, trunc)?;
        let mut rows = Vec::new();
        for lambda in rs.dominant_weights_in_box(lambda_max) {
            let norm = self.macdonald_norm(&data, &lambda)?;
            let expected = norm_product(&lambda, trunc)?;
            rows.push(NormRow {
                pass: norm == expected,
                reciprocal_match: (&norm * &expected).retruncate(trunc) == SeriesQT::one(trunc),
                lambda,
                norm,
                expected,
            });
        }
        Ok(NormReport {
            algebra: data.name().to_string(),
            trunc,
            rows,
        })
    }

    /// Persistable snapshot of the memo, canonically ordered.
    pub fn export_json(&self) -> Value {
        let memo = self.memo.lock().expect("memo lock");
        let mut keys: Vec<&MemoKey> = memo.keys().collect();
        keys.sort();
        let entries: Vec<Value> = keys.into_iter().map(|k| memo[k].to_json(&k.0)).collect();
        json!({ "version": CACHE_VERSION, "entries": entries })
    }

    /// Loads a snapshot; returns the number of entries imported. A snapshot
    /// with a different version is ignored.
    pub fn import_json(&self, v: &Value) -> Result<usize> {
        if v.get("version").and_then(Value::as_u64) != Some(CACHE_VERSION) {
            return Ok(0);
        }
        let bad = |m: &str| Error::Config(format!("bad cache entry: {m}"));
        let entries = v.get("entries").and_then(Value::as_array).ok_or_else(|| bad("entries"))?;
        let mut n = 0;
        for e in entries {
            let algebra = e.get("algebra").and_then(Value::as_str).ok_or_else(|| bad("algebra"))?;
            let nq = e.get("nq").and_then(Value::as_i64).ok_or_else(|| bad("nq"))?;
            let nt = e.get("nt").and_then(Value::as_i64).ok_or_else(|| bad("nt"))?;
            let lambda = Weight(serde_json::from_value(e["lambda"].clone()).map_err(|_| bad("lambda"))?);
            let p = CharElement::from_json(&e["p"])?;
            let norm = SeriesQT::from_json(&e["norm"])?;
            let mut residue = BTreeMap::new();
            for r in e
                .get("incomparable_residue")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("incomparable_residue"))?
            {
                let w = Weight(serde_json::from_value(r[0].clone()).map_err(|_| bad("residue weight"))?);
                residue.insert(w, SeriesQT::from_json(&r[1])?);
            }
            let result = MacdonaldResult::new(lambda.clone(), p, norm, residue)?;
            self.store((algebra.to_string(), Trunc::new(nq, nt), lambda), Arc::new(result));
            n += 1;
        }
        Ok(n)
    }
}

fn orthogonalize(data: &GradedLieData, lambda: &Weight, lower: &[Arc<MacdonaldResult>]) -> Result<MacdonaldResult> {
    let rs = data.rs();
    let trunc = data.trunc();
    let m = monomial_sym(rs, lambda, trunc)?;
    let mut p = m.clone();
    let mut residue = BTreeMap::new();
    for r in lower {
        let num = pair(data, &m, &r.p)?;
        if num.is_zero() {
            continue;
        }
        let c = (&num * &r.norm.invert()?).retruncate(trunc);
        if c.is_zero() {
            continue;
        }
        if !rs.dominance_leq(&r.lambda, lambda) {
            residue.insert(r.lambda.clone(), c.clone());
        }
        p = (&p - &r.p.scale(&c)).retruncate(trunc);
    }
    let norm = pair(data, &p, &p)?;
    MacdonaldResult::new(lambda.clone(), p, norm, residue)
}

/// `prod_i prod_{j=1}^{lambda_i} (1 - q^j)^(-1)`.
pub fn norm_product(lambda: &Weight, trunc: Trunc) -> Result<SeriesQT> {
    let mut den = SeriesQT::one(trunc);
    for &li in &lambda.0 {
        for j in 1..=li {
            den = &den * &(&SeriesQT::one(trunc) - &SeriesQT::monomial(j, 0, Rational::one(), trunc));
        }
    }
    den.invert()
}

/// `s_lambda` times the super PBW character of `U(L_{>0})`.
pub fn projective_character(data: &GradedLieData, lambda: &Weight) -> Result<CharElement> {
    let rs = data.rs();
    rs.check_dominant(lambda)?;
    let s = schur_char(rs, lambda, data.trunc())?;
    Ok((&s * &data.pbw_character()?).retruncate(data.trunc()))
}

pub fn macdonald_polynomial(data: &GradedLieData, lambda: &Weight) -> Result<Arc<MacdonaldResult>> {
    MacdonaldEngine::global().macdonald_polynomial(data, lambda)
}

pub fn macdonald_norm(data: &GradedLieData, lambda: &Weight) -> Result<SeriesQT> {
    MacdonaldEngine::global().macdonald_norm(data, lambda)
}

pub fn dual_macdonald(data: &GradedLieData, lambda: &Weight) -> Result<CharElement> {
    MacdonaldEngine::global().dual_macdonald(data, lambda)
}

/// Transition matrix `m_{lambda,mu}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BggMatrix {
    pub weights: Vec<Weight>,
    pub entries: BTreeMap<(Weight, Weight), SeriesQT>,
}

impl BggMatrix {
    pub fn get(&self, lambda: &Weight, mu: &Weight) -> Option<&SeriesQT> {
        self.entries.get(&(lambda.clone(), mu.clone()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BggRow {
    pub lambda: Weight,
    pub mu: Weight,
    pub m: SeriesQT,
    pub schur_coefficient: SeriesQT,
    /// First offending coefficient, if any.
    pub failure: Option<String>,
}

impl BggRow {
    pub fn pass(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BggReport {
    pub algebra: String,
    pub trunc: Trunc,
    pub lambda_max: Weight,
    pub rows: Vec<BggRow>,
}

impl BggReport {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(BggRow::pass)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormRow {
    pub lambda: Weight,
    pub norm: SeriesQT,
    pub expected: SeriesQT,
    /// `norm == expected`.
    pub pass: bool,
    /// `norm * expected == 1`.
    pub reciprocal_match: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormReport {
    pub algebra: String,
    pub trunc: Trunc,
    pub rows: Vec<NormRow>,
}

impl NormReport {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liedata::classical_data;
    use crate::rat;

    fn rs(s: &str) -> RootSystem {
        s.parse().unwrap()
    }

    fn w(c: &[i64]) -> Weight {
        Weight(c.to_vec())
    }

    fn poly_x(label: &str, nq: i64) -> GradedLieData {
        current_algebra_data(&rs(label), &CoefficientSpec::PolyX, Trunc::new(nq, 0)).unwrap()
    }

    #[test]
    fn zero_weight_is_one() {
        let e = MacdonaldEngine::new();
        let d = poly_x("A1", 5);
        let r = e.macdonald_polynomial(&d, &w(&[0])).unwrap();
        assert_eq!(r.p, CharElement::one(1, d.trunc()));
        assert_eq!(r.norm, SeriesQT::one(d.trunc()));
    }

    #[test]
    fn a1_fundamental() {
        let e = MacdonaldEngine::new();
        let d = poly_x("A1", 5);
        let t = d.trunc();
        let r = e.macdonald_polynomial(&d, &w(&[1])).unwrap();
        assert_eq!(r.p, monomial_sym(d.rs(), &w(&[1]), t).unwrap());
        assert_eq!(r.norm, SeriesQT::from_q_coeffs(&[1, -1], t));
        let z = SeriesQT::from_q_coeffs(&[1, 1, 1, 1, 1, 1], t);
        assert_eq!(r.q, r.p.scale(&z));
    }

    #[test]
    fn a1_two_omega() {
        let e = MacdonaldEngine::new();
        let d = poly_x("A1", 6);
        let t = d.trunc();
        let r = e.macdonald_polynomial(&d, &w(&[2])).unwrap();
        let expect = vec![(w(&[2]), SeriesQT::one(t)), (w(&[0]), SeriesQT::from_q_coeffs(&[1, 1], t))];
        assert_eq!(r.monomial_coefficients(d.rs()), expect);
        let schur = vec![(w(&[2]), SeriesQT::one(t)), (w(&[0]), SeriesQT::from_q_coeffs(&[0, 1], t))];
        assert_eq!(r.schur_coefficients(d.rs()).unwrap(), schur);
        assert_eq!(r.norm, SeriesQT::from_q_coeffs(&[1, -1, -1, 1], t));
        assert_eq!(r.norm.invert().unwrap(), norm_product(&w(&[2]), t).unwrap());
        assert!(r.incomparable_residue.is_empty());
    }

    #[test]
    fn a2_fundamental_norm() {
        let e = MacdonaldEngine::new();
        let d = poly_x("A2", 4);
        let norm = e.macdonald_norm(&d, &w(&[1, 0])).unwrap();
        assert_eq!(norm, SeriesQT::from_q_coeffs(&[1, -1], d.trunc()));
    }

    #[test]
    fn classical_polynomials_are_schur() {
        let e = MacdonaldEngine::new();
        let r = rs("A2");
        let t = Trunc::new(0, 0);
        let d = classical_data(&r, t).unwrap();
        for lambda in r.dominant_weights_in_box(&w(&[2, 2])) {
            let res = e.macdonald_polynomial(&d, &lambda).unwrap();
            assert_eq!(res.p, schur_char(&r, &lambda, t).unwrap(), "{lambda}");
            assert_eq!(res.norm, SeriesQT::one(t));
        }
    }

    #[test]
    fn memo_is_reused() {
        let e = MacdonaldEngine::new();
        let d = poly_x("A1", 3);
        e.macdonald_polynomial(&d, &w(&[4])).unwrap();
        assert_eq!(e.len(), 3);
        e.macdonald_polynomial(&d, &w(&[2])).unwrap();
        assert_eq!(e.len(), 3);
    }

    #[test]
    fn cache_roundtrip() {
        let e = MacdonaldEngine::new();
        let d = current_algebra_data(&rs("A1"), &CoefficientSpec::PolyXXi, Trunc::new(3, 1)).unwrap();
        let r = e.macdonald_polynomial(&d, &w(&[3])).unwrap();
        let snap = e.export_json();
        let f = MacdonaldEngine::new();
        assert_eq!(f.import_json(&snap).unwrap(), 2);
        assert_eq!(*f.macdonald_polynomial(&d, &w(&[3])).unwrap(), *r);
        assert_eq!(f.export_json(), snap);
        let mut stale = snap.clone();
        stale["version"] = json!(CACHE_VERSION + 1);
        assert_eq!(MacdonaldEngine::new().import_json(&stale).unwrap(), 0);
    }

    #[test]
    fn projective_character_examples() {
        let r = rs("A1");
        let t = Trunc::new(3, 0);
        let cl = classical_data(&r, t).unwrap();
        assert_eq!(projective_character(&cl, &w(&[3])).unwrap(), schur_char(&r, &w(&[3]), t).unwrap());
        let d = poly_x("A1", 3);
        let chi = projective_character(&d, &w(&[0])).unwrap();
        let deg1: CharElement = {
            let mut f = CharElement::zero(1, t);
            for (mu, s) in chi.terms() {
                let c = s.coeff(1, 0);
                if !c.is_zero() {
                    f.add_term(mu.clone(), &SeriesQT::constant(c, t));
                }
            }
            f
        };
        assert_eq!(deg1, schur_char(&r, &w(&[2]), t).unwrap());
        for (mu, s) in chi.terms() {
            let lead = if mu.is_zero() { rat(1) } else { rat(0) };
            assert_eq!(s.coeff(0, 0), lead);
        }
    }

    #[test]
    fn bgg_small() {
        let e = MacdonaldEngine::new();
        let d = poly_x("A1", 4);
        let m = e.bgg_transition(&d, &w(&[2])).unwrap();
        let m02 = m.get(&w(&[0]), &w(&[2])).unwrap();
        assert_eq!(m02.coeff(1, 0), rat(1));
        for lambda in &m.weights {
            assert_eq!(m.get(lambda, lambda).unwrap().coeff(0, 0), rat(1));
        }
        let rep = e.verify_bgg(&d, &w(&[0])).unwrap();
        assert_eq!(rep.rows.len(), 1);
        assert!(rep.pass());
        assert_eq!(rep.rows[0].m, SeriesQT::one(d.trunc()));
    }

    #[test]
    fn norm_product_small() {
        let e = MacdonaldEngine::new();
        let rep = e.verify_norm_product(&rs("A2"), &w(&[1, 1]), 4).unwrap();
        assert_eq!(rep.rows.len(), 4);
        assert!(rep.rows.iter().all(|r| r.reciprocal_match));
        assert!(rep.rows.iter().all(|r| r.pass == r.lambda.is_zero()));
        let rep = e.verify_norm_product(&rs("A1"), &w(&[0]), 4).unwrap();
        assert_eq!(rep.rows.len(), 1);
        assert_eq!(rep.rows[0].norm, SeriesQT::one(Trunc::new(4, 0)));
    }

    #[test]
    fn non_dominant_rejected() {
        let e = MacdonaldEngine::new();
        let d = poly_x("A1", 2);
        assert!(matches!(e.macdonald_polynomial(&d, &w(&[-1])), Err(Error::NotDominant(_))));
    }
}
