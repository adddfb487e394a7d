//! Finite-dimensional graded modules over a [`FiniteGradedLie`], with the
//! constructions needed for relative Ext: `tau`-twisted duals and Hom spaces.

use std::collections::BTreeMap;

use num_traits::One;
use serde_json::{json, Value};

use super::algebra::{epsilon, FiniteGradedLie, IntMat};
use super::linalg::SparseMat;
use crate::charring::CharElement;
use crate::error::{Error, Result};
use crate::rootsys::{LieType, Weight};
use crate::series::{parse_rational, rational_to_string, SeriesQT, Trunc};
use crate::{rat, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleBasisElem {
    pub label: String,
    pub weight: Weight,
    pub q: i64,
    pub t: i64,
}

/// A purely even module: odd elements of the algebra act by zero.
#[derive(Clone, Debug)]
pub struct FiniteModule {
    basis: Vec<ModuleBasisElem>,
    /// `action[a]` is the matrix of basis element `a`; column = source.
    action: Vec<SparseMat>,
}

impl FiniteModule {
    /// Checks gradings and the representation property on all pairs.
    pub fn new(lie: &FiniteGradedLie, basis: Vec<ModuleBasisElem>, action: Vec<SparseMat>) -> Result<FiniteModule> {
        let n = basis.len();
        let bad = |m: String| Err(Error::InvalidModule(m));
        if action.len() != lie.dim() {
            return bad(format!("{} action matrices for an algebra of dimension {}", action.len(), lie.dim()));
        }
        for b in &basis {
            lie.rs().check_weight(&b.weight)?;
        }
        for (a, m) in action.iter().enumerate() {
            let x = &lie.basis()[a];
            if m.rows() != n || m.cols() != n {
                return bad(format!("action of {} is not {n}x{n}", x.label));
            }
            if x.odd && !m.is_zero() {
                return bad(format!("odd element {} acts nontrivially", x.label));
            }
            for (r, c, _) in m.entries() {
                let (src, dst) = (&basis[c], &basis[r]);
                if dst.weight != src.weight.add(&x.weight) || dst.q != src.q + x.q || dst.t != src.t + x.t {
                    return bad(format!("{} maps {} to {} against the grading", x.label, src.label, dst.label));
                }
            }
        }
        for a in 0..lie.dim() {
            for b in 0..lie.dim() {
                let mut lhs = SparseMat::zeros(n, n);
                for (c, v) in lie.bracket(a, b) {
                    lhs = lhs.plus(&action[*c].scale(v));
                }
                let rhs = action[a].mul(&action[b]).minus(&action[b].mul(&action[a]));
                if lhs != rhs {
                    return bad(format!(
                        "not a representation on ({}, {})",
                        lie.basis()[a].label,
                        lie.basis()[b].label
                    ));
                }
            }
        }
        Ok(FiniteModule { basis, action })
    }

    pub fn zero(lie: &FiniteGradedLie) -> FiniteModule {
        FiniteModule { basis: vec![], action: vec![SparseMat::zeros(0, 0); lie.dim()] }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[ModuleBasisElem] {
        &self.basis
    }

    pub fn action(&self, a: usize) -> &SparseMat {
        &self.action[a]
    }

    pub fn max_degree(&self) -> (i64, i64) {
        (
            self.basis.iter().map(|b| b.q).max().unwrap_or(0),
            self.basis.iter().map(|b| b.t).max().unwrap_or(0),
        )
    }

    /// `sum q^q t^t e^wt` over the basis.
    pub fn character(&self, rank: usize, trunc: Trunc) -> CharElement {
        let mut out = CharElement::zero(rank, trunc);
        for b in &self.basis {
            out.add_term(b.weight.clone(), &SeriesQT::monomial(b.q, b.t, Rational::one(), trunc));
        }
        out
    }

    /// The same module with all degrees raised by `(dq, dt)`.
    pub fn shifted(&self, dq: i64, dt: i64) -> FiniteModule {
        let mut m = self.clone();
        for b in &mut m.basis {
            b.q += dq;
            b.t += dt;
        }
        m
    }

    /// One-dimensional trivial module in degree `(q, t)`.
    pub fn trivial(lie: &FiniteGradedLie, q: i64, t: i64) -> FiniteModule {
        FiniteModule {
            basis: vec![ModuleBasisElem { label: "1".into(), weight: lie.rs().zero(), q, t }],
            action: vec![SparseMat::zeros(1, 1); lie.dim()],
        }
    }

    /// `L(lambda)` for `sl2`, extended by zero on the positive part.
    pub fn sl2_irrep(lie: &FiniteGradedLie, lambda: i64) -> Result<FiniteModule> {
        if lie.rs().lie_type() != LieType::A || lie.rs().rank() != 1 {
            return Err(Error::Unsupported(format!(
                "explicit irreducible modules are built for A1 only, got {}",
                lie.rs()
            )));
        }
        if lambda < 0 {
            return Err(Error::NotDominant(Weight(vec![lambda])));
        }
        let d = (lambda + 1) as usize;
        let basis = (0..d)
            .map(|k| ModuleBasisElem {
                label: format!("v{k}"),
                weight: Weight(vec![lambda - 2 * k as i64]),
                q: 0,
                t: 0,
            })
            .collect();
        let mut e = SparseMat::zeros(d, d);
        let mut f = SparseMat::zeros(d, d);
        let mut h = SparseMat::zeros(d, d);
        for k in 0..d {
            let ki = k as i64;
            if k > 0 {
                e.add(k - 1, k, rat(lambda - ki + 1));
            }
            if k + 1 < d {
                f.add(k + 1, k, rat(ki + 1));
            }
            h.add(k, k, rat(lambda - 2 * ki));
        }
        let action = from_matrices(lie, d, |m| {
            // [[a, b], [c, -a]] = a h + b e + c f
            h.scale(&rat(m[0][0])).plus(&e.scale(&rat(m[0][1]))).plus(&f.scale(&rat(m[1][0])))
        })?;
        FiniteModule::new(lie, basis, action)
    }

    /// The defining representation `C^n` of `sl_n`, extended by zero.
    pub fn vector(lie: &FiniteGradedLie) -> Result<FiniteModule> {
        let n = lie.rs().rank() + 1;
        let basis = (0..n)
            .map(|i| ModuleBasisElem { label: format!("u{}", i + 1), weight: epsilon(n, i), q: 0, t: 0 })
            .collect();
        let action = from_matrices(lie, n, |m| {
            let mut out = SparseMat::zeros(n, n);
            for (i, row) in m.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    out.add(i, j, rat(*x));
                }
            }
            out
        })?;
        FiniteModule::new(lie, basis, action)
    }

    /// Graded dual twisted by the anti-involution: `x` acts as
    /// `rho(tau x)^T`, degrees are negated, weights kept.
    pub fn dual(&self, lie: &FiniteGradedLie) -> Result<FiniteModule> {
        let tau = lie
            .tau()
            .ok_or_else(|| Error::InvalidModule(format!("{} has no anti-involution", lie.name())))?;
        let n = self.dim();
        let basis = self
            .basis
            .iter()
            .map(|b| ModuleBasisElem { label: format!("{}*", b.label), weight: b.weight.clone(), q: -b.q, t: -b.t })
            .collect();
        let action = tau
            .iter()
            .map(|img| {
                let mut m = SparseMat::zeros(n, n);
                for (c, v) in img {
                    m = m.plus(&self.action[*c].scale(v));
                }
                m.transpose()
            })
            .collect();
        FiniteModule::new(lie, basis, action)
    }

    /// `Hom_C(M, N)` with basis `E_{p,m}: m -> p`, degree `deg p - deg m`.
    pub fn hom(lie: &FiniteGradedLie, m: &FiniteModule, n: &FiniteModule) -> Result<FiniteModule> {
        let (dm, dn) = (m.dim(), n.dim());
        let idx = |p: usize, s: usize| p * dm + s;
        let mut basis = Vec::with_capacity(dm * dn);
        for p in &n.basis {
            for s in &m.basis {
                basis.push(ModuleBasisElem {
                    label: format!("{}<-{}", p.label, s.label),
                    weight: p.weight.sub(&s.weight),
                    q: p.q - s.q,
                    t: p.t - s.t,
                });
            }
        }
        let mut action = Vec::with_capacity(lie.dim());
        for a in 0..lie.dim() {
            let mut x = SparseMat::zeros(dm * dn, dm * dn);
            for (p2, p, v) in n.action[a].entries() {
                for s in 0..dm {
                    x.add(idx(p2, s), idx(p, s), v.clone());
                }
            }
            // (x.E_{p,s}) picks up -E_{p,s'} rho_M(x)_{s,s'}
            for (s, s2, v) in m.action[a].entries() {
                for p in 0..dn {
                    x.add(idx(p, s2), idx(p, s), -v.clone());
                }
            }
            action.push(x);
        }
        FiniteModule::new(lie, basis, action)
    }

    /// `S^{<=d}(L_{>0}) (x) L` for a module `L` of the degree-zero part,
    /// where the positive part must be even and abelian. This is the
    /// quotient of the induced module by symmetric degree `> d`.
    pub fn truncated_induced(lie: &FiniteGradedLie, top: &FiniteModule, d: u32) -> Result<FiniteModule> {
        let pos = lie.positive_part();
        for &a in &pos {
            if lie.basis()[a].odd {
                return Err(Error::Unsupported("induced modules need an even positive part".into()));
            }
            for &b in &pos {
                if !lie.bracket(a, b).is_empty() {
                    return Err(Error::Unsupported("induced modules need an abelian positive part".into()));
                }
            }
        }
        for &a in &pos {
            if !top.action[a].is_zero() {
                return Err(Error::InvalidModule("top module must be killed by the positive part".into()));
            }
        }
        let k = pos.len();
        // exponent vectors over the positive part with total degree <= d
        let mut monos: Vec<Vec<u32>> = vec![vec![]];
        for _ in 0..k {
            monos = monos
                .into_iter()
                .flat_map(|m| {
                    let used: u32 = m.iter().sum();
                    (0..=d - used).map(move |e| {
                        let mut m = m.clone();
                        m.push(e);
                        m
                    })
                })
                .collect();
        }
        monos.sort_by_key(|m| (m.iter().sum::<u32>(), std::cmp::Reverse(m.clone())));
        let mono_index: BTreeMap<Vec<u32>, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let dt = top.dim();
        let idx = |mi: usize, v: usize| mi * dt + v;
        let mut basis = Vec::new();
        for m in &monos {
            let mut w = lie.rs().zero();
            let (mut q, mut t) = (0, 0);
            let mut label = String::new();
            for (j, &e) in m.iter().enumerate() {
                let x = &lie.basis()[pos[j]];
                for _ in 0..e {
                    w = w.add(&x.weight);
                    q += x.q;
                    t += x.t;
                }
                if e > 0 {
                    label.push_str(&format!("({})^{e}", x.label));
                }
            }
            for v in &top.basis {
                basis.push(ModuleBasisElem {
                    label: format!("{label}{}", v.label),
                    weight: w.add(&v.weight),
                    q: q + v.q,
                    t: t + v.t,
                });
            }
        }
        let dim = basis.len();
        let pos_slot: BTreeMap<usize, usize> = pos.iter().enumerate().map(|(j, &a)| (a, j)).collect();
        let mut action = Vec::with_capacity(lie.dim());
        for a in 0..lie.dim() {
            let mut x = SparseMat::zeros(dim, dim);
            if let Some(&j) = pos_slot.get(&a) {
                for (mi, m) in monos.iter().enumerate() {
                    let mut m2 = m.clone();
                    m2[j] += 1;
                    if let Some(&mi2) = mono_index.get(&m2) {
                        for v in 0..dt {
                            x.add(idx(mi2, v), idx(mi, v), Rational::one());
                        }
                    }
                }
            } else {
                // degree-zero element: derivation on the symmetric factor
                for (mi, m) in monos.iter().enumerate() {
                    for (j, &e) in m.iter().enumerate() {
                        if e == 0 {
                            continue;
                        }
                        for (c, coef) in lie.bracket(a, pos[j]) {
                            let jc = pos_slot[c];
                            let mut m2 = m.clone();
                            m2[j] -= 1;
                            m2[jc] += 1;
                            let mi2 = mono_index[&m2];
                            let val = coef * rat(i64::from(e));
                            for v in 0..dt {
                                x.add(idx(mi2, v), idx(mi, v), val.clone());
                            }
                        }
                    }
                    for (v2, v, c) in top.action[a].entries() {
                        x.add(idx(mi, v2), idx(mi, v), c.clone());
                    }
                }
            }
            action.push(x);
        }
        FiniteModule::new(lie, basis, action)
    }

    pub fn to_json(&self) -> Value {
        let basis: Vec<Value> = self
            .basis
            .iter()
            .map(|b| json!({"label": b.label, "weight": b.weight.0, "q": b.q, "t": b.t}))
            .collect();
        let action: Vec<Value> = self
            .action
            .iter()
            .enumerate()
            .flat_map(|(a, m)| m.entries().map(move |(r, c, v)| json!([a, r, c, rational_to_string(v)])))
            .collect();
        json!({"basis": basis, "action": action})
    }

    /// Reads `{"basis": [...], "action": [[a, row, col, "coef"], ...]}`.
    pub fn from_json(lie: &FiniteGradedLie, v: &Value) -> Result<FiniteModule> {
        let bad = |m: &str| Error::Config(format!("bad module JSON: {m}"));
        let mut basis = Vec::new();
        for b in v.get("basis").and_then(Value::as_array).ok_or_else(|| bad("basis"))? {
            basis.push(ModuleBasisElem {
                label: b.get("label").and_then(Value::as_str).ok_or_else(|| bad("label"))?.into(),
                weight: serde_json::from_value(b.get("weight").cloned().ok_or_else(|| bad("weight"))?)
                    .map_err(|_| bad("weight"))?,
                q: b.get("q").and_then(Value::as_i64).unwrap_or(0),
                t: b.get("t").and_then(Value::as_i64).unwrap_or(0),
            });
        }
        let n = basis.len();
        let mut action = vec![SparseMat::zeros(n, n); lie.dim()];
        for e in v.get("action").and_then(Value::as_array).ok_or_else(|| bad("action"))? {
            let e = e.as_array().filter(|e| e.len() == 4).ok_or_else(|| bad("action entry"))?;
            let i = |k: usize| e[k].as_u64().map(|u| u as usize).ok_or_else(|| bad("index"));
            let (a, r, c) = (i(0)?, i(1)?, i(2)?);
            if a >= lie.dim() || r >= n || c >= n {
                return Err(bad("index out of range"));
            }
            action[a].add(r, c, parse_rational(e[3].as_str().ok_or_else(|| bad("coefficient"))?)?);
        }
        FiniteModule::new(lie, basis, action)
    }
}

/// Action matrices from the `sl_n` matrix of each degree-zero element;
/// positive-degree elements act by zero.
fn from_matrices(lie: &FiniteGradedLie, dim: usize, rho: impl Fn(&IntMat) -> SparseMat) -> Result<Vec<SparseMat>> {
    (0..lie.dim())
        .map(|a| {
            if !lie.basis()[a].in_degree_zero() {
                return Ok(SparseMat::zeros(dim, dim));
            }
            lie.g_matrix(a)
                .map(&rho)
                .ok_or_else(|| Error::Unsupported(format!("no matrix for {}", lie.basis()[a].label)))
        })
        .collect()
}

/// Equal graded characters, compared as multisets of (weight, q, t).
pub fn same_character(a: &FiniteModule, b: &FiniteModule) -> bool {
    let key = |m: &FiniteModule| {
        let mut v: Vec<(Weight, i64, i64)> = m.basis.iter().map(|e| (e.weight.clone(), e.q, e.t)).collect();
        v.sort();
        v
    };
    key(a) == key(b)
}

#[cfg(test)]
mod tests {
    use super::super::algebra::{sl2_dual_numbers, sl2_dual_numbers_odd, t3_algebra};
    use super::*;

    #[test]
    fn sl2_irreps_are_modules() {
        let lie = sl2_dual_numbers().unwrap();
        for l in 0..5 {
            let m = FiniteModule::sl2_irrep(&lie, l).unwrap();
            assert_eq!(m.dim(), (l + 1) as usize);
        }
        let lie = sl2_dual_numbers_odd().unwrap();
        FiniteModule::sl2_irrep(&lie, 2).unwrap();
    }

    #[test]
    fn vector_rep_of_sl3() {
        let lie = t3_algebra().unwrap();
        let v = FiniteModule::vector(&lie).unwrap();
        assert_eq!(v.dim(), 3);
    }

    #[test]
    fn dual_keeps_character_and_negates_degree() {
        let lie = sl2_dual_numbers().unwrap();
        let l2 = FiniteModule::sl2_irrep(&lie, 2).unwrap();
        let d = l2.dual(&lie).unwrap();
        assert!(same_character(&l2, &d));
        let triv = FiniteModule::trivial(&lie, 3, 0);
        assert_eq!(triv.dual(&lie).unwrap().basis()[0].q, -3);
        let dd = l2.dual(&lie).unwrap().dual(&lie).unwrap();
        for a in 0..lie.dim() {
            assert_eq!(dd.action(a), l2.action(a));
        }
    }

    #[test]
    fn dual_needs_involution() {
        let lie = t3_algebra().unwrap();
        let v = FiniteModule::vector(&lie).unwrap();
        assert!(matches!(v.dual(&lie), Err(Error::InvalidModule(_))));
    }

    #[test]
    fn hom_is_a_module() {
        let lie = sl2_dual_numbers().unwrap();
        let a = FiniteModule::sl2_irrep(&lie, 1).unwrap();
        let b = FiniteModule::sl2_irrep(&lie, 2).unwrap().shifted(1, 0);
        let h = FiniteModule::hom(&lie, &a, &b).unwrap();
        assert_eq!(h.dim(), 6);
        assert!(h.basis().iter().all(|e| e.q == 1));
    }

    #[test]
    fn induced_module_dimensions() {
        let lie = sl2_dual_numbers().unwrap();
        let top = FiniteModule::sl2_irrep(&lie, 0).unwrap();
        let ind = FiniteModule::truncated_induced(&lie, &top, 2).unwrap();
        // S^0 + S^1 + S^2 of a 3-dimensional space
        assert_eq!(ind.dim(), 1 + 3 + 6);
        let top = FiniteModule::sl2_irrep(&lie, 2).unwrap();
        let ind = FiniteModule::truncated_induced(&lie, &top, 1).unwrap();
        assert_eq!(ind.dim(), 12);
    }

    #[test]
    fn induced_rejects_nonabelian() {
        let lie = t3_algebra().unwrap();
        let top = FiniteModule::trivial(&lie, 0, 0);
        assert!(FiniteModule::truncated_induced(&lie, &top, 1).is_err());
    }

    #[test]
    fn broken_action_rejected() {
        let lie = sl2_dual_numbers().unwrap();
        let m = FiniteModule::sl2_irrep(&lie, 1).unwrap();
        let mut v = m.to_json();
        v["action"].as_array_mut().unwrap().push(json!([2, 0, 1, "1"]));
        assert!(FiniteModule::from_json(&lie, &v).is_err());
        FiniteModule::from_json(&lie, &m.to_json()).unwrap();
    }
}
