//! Finite-dimensional graded Lie (super)algebras given by structure
//! constants: current algebras `sl_n (x) A` for finite-dimensional graded
//! supercommutative `A`, and `T(3)`.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::liedata::{GradedLieData, Mult};
use crate::rootsys::{LieType, RootSystem, Weight};
use crate::series::{parse_rational, rational_to_string, Trunc};
use crate::{rat, Rational};

/// Sparse vector in the Lie algebra basis.
pub type LieVec = Vec<(usize, Rational)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieBasisElem {
    pub label: String,
    pub weight: Weight,
    pub q: i64,
    pub t: i64,
    pub odd: bool,
}

impl LieBasisElem {
    pub fn in_degree_zero(&self) -> bool {
        self.q == 0 && self.t == 0
    }
}

/// Indices of the Chevalley generators `e_i`, `f_i`, `h_i` of `L_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chevalley {
    pub e: Vec<usize>,
    pub f: Vec<usize>,
    pub h: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct FiniteGradedLie {
    name: String,
    rs: RootSystem,
    basis: Vec<LieBasisElem>,
    brackets: HashMap<(usize, usize), LieVec>,
    chevalley: Chevalley,
    /// `sl_n` matrix of each degree-zero basis element, when known.
    g_matrix: Vec<Option<IntMat>>,
    /// Anti-involution as a linear map on the basis.
    tau: Option<Vec<LieVec>>,
}

pub type IntMat = Vec<Vec<i64>>;

fn sign(odd: bool) -> Rational {
    if odd {
        -Rational::one()
    } else {
        Rational::one()
    }
}

impl FiniteGradedLie {
    /// Builds and validates everything except the Jacobi identity (see
    /// [`Self::check_jacobi`]).
    pub fn new(
        name: impl Into<String>,
        rs: RootSystem,
        basis: Vec<LieBasisElem>,
        brackets: HashMap<(usize, usize), LieVec>,
        chevalley: Chevalley,
        tau: Option<Vec<LieVec>>,
    ) -> Result<FiniteGradedLie> {
        let n = basis.len();
        let lie = FiniteGradedLie {
            name: name.into(),
            rs,
            g_matrix: vec![None; n],
            basis,
            brackets: brackets.into_iter().filter(|(_, v)| !v.is_empty()).collect(),
            chevalley,
            tau,
        };
        lie.validate()?;
        Ok(lie)
    }

    fn validate(&self) -> Result<()> {
        let n = self.basis.len();
        let bad = |m: String| Err(Error::InvalidLie(m));
        for b in &self.basis {
            self.rs.check_weight(&b.weight)?;
            if b.q < 0 || b.t < 0 {
                return bad(format!("{} has negative degree", b.label));
            }
            if b.in_degree_zero() && b.odd {
                return bad(format!("odd element {} in degree (0, 0)", b.label));
            }
        }
        for (&(a, b), v) in &self.brackets {
            if a >= n || b >= n {
                return bad(format!("bracket index ({a}, {b}) out of range"));
            }
            let (x, y) = (&self.basis[a], &self.basis[b]);
            for (c, _) in v {
                let z = self.basis.get(*c).ok_or_else(|| Error::InvalidLie(format!("index {c} out of range")))?;
                if z.weight != x.weight.add(&y.weight) || z.q != x.q + y.q || z.t != x.t + y.t || z.odd != (x.odd ^ y.odd) {
                    return bad(format!("[{}, {}] has a term {} outside its grading", x.label, y.label, z.label));
                }
            }
            // [y, x] = -(-1)^{|x||y|} [x, y]
            let swapped = self.bracket(b, a);
            let expect = scale_vec(v, &-sign(x.odd && y.odd));
            if normalize(swapped.to_vec()) != normalize(expect) {
                return bad(format!("bracket [{}, {}] is not graded antisymmetric", x.label, y.label));
            }
        }
        let ch = &self.chevalley;
        let r = self.rs.rank();
        if ch.e.len() != r || ch.f.len() != r || ch.h.len() != r {
            return bad(format!("need {r} Chevalley triples"));
        }
        for i in 0..r {
            let alpha = &self.rs.simple_roots()[i];
            for (idx, w) in [(ch.e[i], alpha.clone()), (ch.f[i], alpha.neg()), (ch.h[i], self.rs.zero())] {
                let el = self.basis.get(idx).ok_or_else(|| Error::InvalidLie(format!("Chevalley index {idx} out of range")))?;
                if !el.in_degree_zero() || el.weight != w {
                    return bad(format!("Chevalley generator {} has wrong weight or degree", el.label));
                }
            }
        }
        if let Some(tau) = &self.tau {
            if tau.len() != n {
                return bad("anti-involution has wrong size".into());
            }
            for (a, img) in tau.iter().enumerate() {
                for (c, _) in img {
                    let (x, z) = (&self.basis[a], self.basis.get(*c).ok_or_else(|| Error::InvalidLie("tau index".into()))?);
                    if z.weight != x.weight.neg() || z.q != x.q || z.t != x.t || z.odd != x.odd {
                        return bad(format!("anti-involution does not map {} to the opposite weight", x.label));
                    }
                }
            }
            // tau [x, y] = (-1)^{|x||y|} [tau y, tau x]
            for a in 0..n {
                for b in 0..n {
                    let lhs = self.apply_tau(self.bracket(a, b));
                    let rhs = scale_vec(
                        &self.bracket_vec(&tau[b], &tau[a]),
                        &sign(self.basis[a].odd && self.basis[b].odd),
                    );
                    if normalize(lhs) != normalize(rhs) {
                        return bad(format!(
                            "tau is not an anti-involution on ({}, {})",
                            self.basis[a].label, self.basis[b].label
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Exhaustive graded Jacobi check
    /// `[x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]`.
    pub fn check_jacobi(&self) -> Result<()> {
        let n = self.basis.len();
        for a in 0..n {
            for b in 0..n {
                let ab = self.bracket(a, b).to_vec();
                for c in 0..n {
                    let lhs = self.bracket_vec(&[(a, Rational::one())], self.bracket(b, c));
                    let mut rhs = self.bracket_vec(&ab, &[(c, Rational::one())]);
                    let s = sign(self.basis[a].odd && self.basis[b].odd);
                    rhs.extend(scale_vec(&self.bracket_vec(&[(b, Rational::one())], self.bracket(a, c)), &s));
                    if normalize(lhs) != normalize(rhs) {
                        return Err(Error::InvalidLie(format!(
                            "Jacobi identity fails on ({}, {}, {})",
                            self.basis[a].label, self.basis[b].label, self.basis[c].label
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rs(&self) -> &RootSystem {
        &self.rs
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[LieBasisElem] {
        &self.basis
    }

    pub fn chevalley(&self) -> &Chevalley {
        &self.chevalley
    }

    pub fn tau(&self) -> Option<&[LieVec]> {
        self.tau.as_deref()
    }

    pub fn has_anti_involution(&self) -> bool {
        self.tau.is_some()
    }

    pub fn g_matrix(&self, a: usize) -> Option<&IntMat> {
        self.g_matrix.get(a).and_then(Option::as_ref)
    }

    /// Indices of the positive-degree part `L_{>0}`.
    pub fn positive_part(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&a| !self.basis[a].in_degree_zero()).collect()
    }

    pub fn degree_zero_part(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&a| self.basis[a].in_degree_zero()).collect()
    }

    pub fn bracket(&self, a: usize, b: usize) -> &[(usize, Rational)] {
        self.brackets.get(&(a, b)).map_or(&[], Vec::as_slice)
    }

    pub fn bracket_vec(&self, x: &[(usize, Rational)], y: &[(usize, Rational)]) -> LieVec {
        let mut out = Vec::new();
        for (a, u) in x {
            for (b, v) in y {
                for (c, w) in self.bracket(*a, *b) {
                    out.push((*c, u * v * w));
                }
            }
        }
        normalize(out)
    }

    fn apply_tau(&self, x: &[(usize, Rational)]) -> LieVec {
        let tau = self.tau.as_ref().expect("anti-involution");
        let mut out = Vec::new();
        for (a, u) in x {
            for (b, v) in &tau[*a] {
                out.push((*b, u * v));
            }
        }
        normalize(out)
    }

    /// Weight multiplicities of `L_{>0}` as pairing data.
    pub fn weight_data(&self, trunc: Trunc) -> Result<GradedLieData> {
        let mut table: BTreeMap<(i64, i64, Weight), Mult> = BTreeMap::new();
        for b in self.basis.iter().filter(|b| !b.in_degree_zero()) {
            let m = table.entry((b.q, b.t, b.weight.clone())).or_default();
            if b.odd {
                m.odd += 1;
            } else {
                m.even += 1;
            }
        }
        GradedLieData::new(self.rs.clone(), table, self.has_anti_involution(), format!("lie:{}", self.name), trunc)
    }

    /// The same algebra with basis element `perm[a]` placed at position `a`.
    pub fn permuted(&self, perm: &[usize]) -> Result<FiniteGradedLie> {
        let n = self.dim();
        if perm.len() != n || {
            let mut p = perm.to_vec();
            p.sort_unstable();
            p != (0..n).collect::<Vec<_>>()
        } {
            return Err(Error::InvalidLie("not a permutation".into()));
        }
        let mut inv = vec![0; n];
        for (new, &old) in perm.iter().enumerate() {
            inv[old] = new;
        }
        let map_vec = |v: &[(usize, Rational)]| normalize(v.iter().map(|(c, x)| (inv[*c], x.clone())).collect());
        let brackets = self
            .brackets
            .iter()
            .map(|(&(a, b), v)| ((inv[a], inv[b]), map_vec(v)))
            .collect();
        let ch = Chevalley {
            e: self.chevalley.e.iter().map(|&i| inv[i]).collect(),
            f: self.chevalley.f.iter().map(|&i| inv[i]).collect(),
            h: self.chevalley.h.iter().map(|&i| inv[i]).collect(),
        };
        let tau = self.tau.as_ref().map(|t| perm.iter().map(|&old| map_vec(&t[old])).collect());
        let mut lie = FiniteGradedLie::new(
            format!("{}:perm", self.name),
            self.rs.clone(),
            perm.iter().map(|&old| self.basis[old].clone()).collect(),
            brackets,
            ch,
            tau,
        )?;
        lie.g_matrix = perm.iter().map(|&old| self.g_matrix[old].clone()).collect();
        Ok(lie)
    }

    pub fn to_json(&self) -> Value {
        let basis: Vec<Value> = self
            .basis
            .iter()
            .map(|b| json!({"label": b.label, "weight": b.weight.0, "q": b.q, "t": b.t, "odd": b.odd}))
            .collect();
        let mut keys: Vec<&(usize, usize)> = self.brackets.keys().collect();
        keys.sort();
        let mut brackets = Vec::new();
        for k in keys {
            for (c, v) in &self.brackets[k] {
                brackets.push(json!([k.0, k.1, c, rational_to_string(v)]));
            }
        }
        let mut out = json!({
            "name": self.name,
            "root_system": self.rs.to_string(),
            "basis": basis,
            "brackets": brackets,
            "chevalley": {"e": self.chevalley.e, "f": self.chevalley.f, "h": self.chevalley.h},
        });
        if let Some(tau) = &self.tau {
            let t: Vec<Value> = tau
                .iter()
                .enumerate()
                .flat_map(|(a, img)| img.iter().map(move |(b, v)| json!([a, b, rational_to_string(v)])))
                .collect();
            out["involution"] = json!(t);
        }
        out
    }

    /// Reads the format written by [`Self::to_json`]. Brackets are sparse
    /// triplets `[a, b, c, "coefficient"]` meaning `[x_a, x_b]` has
    /// coefficient on `x_c`; all ordered pairs must be listed.
    pub fn from_json(v: &Value) -> Result<FiniteGradedLie> {
        let bad = |m: &str| Error::Config(format!("bad Lie algebra JSON: {m}"));
        let rs: RootSystem = v
            .get("root_system")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("root_system"))?
            .parse()?;
        let name = v.get("name").and_then(Value::as_str).unwrap_or("custom").to_string();
        let mut basis = Vec::new();
        for b in v.get("basis").and_then(Value::as_array).ok_or_else(|| bad("basis"))? {
            basis.push(LieBasisElem {
                label: b.get("label").and_then(Value::as_str).ok_or_else(|| bad("label"))?.into(),
                weight: serde_json::from_value(b.get("weight").cloned().ok_or_else(|| bad("weight"))?)
                    .map_err(|_| bad("weight"))?,
                q: b.get("q").and_then(Value::as_i64).unwrap_or(0),
                t: b.get("t").and_then(Value::as_i64).unwrap_or(0),
                odd: b.get("odd").and_then(Value::as_bool).unwrap_or(false),
            });
        }
        let idx = |x: &Value| -> Result<usize> {
            x.as_u64().map(|u| u as usize).ok_or_else(|| bad("index"))
        };
        let mut brackets: HashMap<(usize, usize), LieVec> = HashMap::new();
        for t in v.get("brackets").and_then(Value::as_array).ok_or_else(|| bad("brackets"))? {
            let t = t.as_array().filter(|t| t.len() == 4).ok_or_else(|| bad("bracket triplet"))?;
            let c = parse_rational(t[3].as_str().ok_or_else(|| bad("coefficient"))?)?;
            brackets.entry((idx(&t[0])?, idx(&t[1])?)).or_default().push((idx(&t[2])?, c));
        }
        let brackets = brackets.into_iter().map(|(k, v)| (k, normalize(v))).collect();
        let ch = v.get("chevalley").ok_or_else(|| bad("chevalley"))?;
        let list = |k: &str| -> Result<Vec<usize>> {
            serde_json::from_value(ch.get(k).cloned().ok_or_else(|| bad(k))?).map_err(|_| bad(k))
        };
        let chevalley = Chevalley { e: list("e")?, f: list("f")?, h: list("h")? };
        let tau = match v.get("involution").and_then(Value::as_array) {
            None => None,
            Some(ts) => {
                let mut tau = vec![Vec::new(); basis.len()];
                for t in ts {
                    let t = t.as_array().filter(|t| t.len() == 3).ok_or_else(|| bad("involution triplet"))?;
                    let a = idx(&t[0])?;
                    if a >= tau.len() {
                        return Err(bad("involution index"));
                    }
                    tau[a].push((idx(&t[1])?, parse_rational(t[2].as_str().ok_or_else(|| bad("coefficient"))?)?));
                }
                Some(tau)
            }
        };
        let lie = FiniteGradedLie::new(name, rs, basis, brackets, chevalley, tau)?;
        lie.check_jacobi()?;
        Ok(lie)
    }
}

/// Combines repeated indices, drops zeros, sorts by index.
pub fn normalize(v: LieVec) -> LieVec {
    let mut m: BTreeMap<usize, Rational> = BTreeMap::new();
    for (i, x) in v {
        *m.entry(i).or_insert_with(Rational::zero) += x;
    }
    m.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

fn scale_vec(v: &[(usize, Rational)], k: &Rational) -> LieVec {
    v.iter().map(|(i, x)| (*i, x * k)).collect()
}

/// Basis of `sl_n`: `E_ij` (i != j) then `H_k = E_kk - E_{k+1,k+1}`.
struct SlBasis {
    n: usize,
    labels: Vec<String>,
    mats: Vec<IntMat>,
    weights: Vec<Weight>,
}

impl SlBasis {
    fn new(n: usize) -> SlBasis {
        let mut labels = Vec::new();
        let mut mats = Vec::new();
        let mut weights = Vec::new();
        let unit = |i: usize, j: usize| {
            let mut m = vec![vec![0i64; n]; n];
            m[i][j] = 1;
            m
        };
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    labels.push(format!("E{}{}", i + 1, j + 1));
                    mats.push(unit(i, j));
                    weights.push(epsilon(n, i).sub(&epsilon(n, j)));
                }
            }
        }
        for k in 0..n - 1 {
            let mut m = vec![vec![0i64; n]; n];
            m[k][k] = 1;
            m[k + 1][k + 1] = -1;
            labels.push(format!("H{}", k + 1));
            mats.push(m);
            weights.push(Weight::zero(n - 1));
        }
        SlBasis { n, labels, mats, weights }
    }

    fn index_of_unit(&self, i: usize, j: usize) -> usize {
        // E_ij with i != j, enumerated row by row skipping the diagonal
        i * (self.n - 1) + if j > i { j - 1 } else { j }
    }

    fn h_index(&self, k: usize) -> usize {
        self.n * (self.n - 1) + k
    }

    /// Coordinates of a traceless matrix.
    fn decompose(&self, m: &IntMat) -> LieVec {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j && m[i][j] != 0 {
                    out.push((self.index_of_unit(i, j), rat(m[i][j])));
                }
            }
        }
        let mut c = 0;
        for k in 0..self.n - 1 {
            c += m[k][k];
            if c != 0 {
                out.push((self.h_index(k), rat(c)));
            }
        }
        normalize(out)
    }

    fn commutator(&self, a: usize, b: usize) -> IntMat {
        let (x, y) = (&self.mats[a], &self.mats[b]);
        let n = self.n;
        let mut out = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    out[i][j] += x[i][k] * y[k][j] - y[i][k] * x[k][j];
                }
            }
        }
        out
    }

    fn transpose_index(&self, a: usize) -> usize {
        if a >= self.n * (self.n - 1) {
            return a;
        }
        let m = &self.mats[a];
        for i in 0..self.n {
            for j in 0..self.n {
                if m[i][j] != 0 {
                    return self.index_of_unit(j, i);
                }
            }
        }
        unreachable!("unit matrix")
    }

    fn chevalley(&self) -> Chevalley {
        let r = self.n - 1;
        Chevalley {
            e: (0..r).map(|k| self.index_of_unit(k, k + 1)).collect(),
            f: (0..r).map(|k| self.index_of_unit(k + 1, k)).collect(),
            h: (0..r).map(|k| self.h_index(k)).collect(),
        }
    }
}

/// Weight of the `i`-th standard basis vector of `C^n` in fundamental
/// coordinates of `sl_n`.
pub fn epsilon(n: usize, i: usize) -> Weight {
    Weight((0..n - 1).map(|k| i64::from(i == k) - i64::from(i == k + 1)).collect())
}

fn sl_rank(rs: &RootSystem) -> Result<usize> {
    if rs.lie_type() != LieType::A {
        return Err(Error::Unsupported(format!(
            "structure constants are implemented for type A only, got {rs}"
        )));
    }
    Ok(rs.rank() + 1)
}

/// A generator of the coefficient algebra `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub q: i64,
    pub t: i64,
    pub odd: bool,
    /// Largest allowed exponent (odd generators are capped at 1).
    pub max_power: Option<u32>,
}

impl Generator {
    pub fn even(name: &str, q: i64, max_power: Option<u32>) -> Generator {
        Generator { name: name.into(), q, t: 0, odd: false, max_power }
    }

    pub fn odd(name: &str, q: i64, t: i64) -> Generator {
        Generator { name: name.into(), q, t, odd: true, max_power: Some(1) }
    }
}

/// Monomial basis of `A_+`: exponent vectors with `1 <= sum <= max_degree`
/// and each exponent within its cap.
fn coefficient_monomials(gens: &[Generator], max_degree: Option<u32>) -> Result<Vec<Vec<u32>>> {
    for g in gens {
        if g.q < 0 || g.t < 0 || (g.q == 0 && g.t == 0) {
            return Err(Error::InvalidData(format!("generator {} must have positive degree", g.name)));
        }
        if g.max_power.is_none() && max_degree.is_none() {
            return Err(Error::InvalidData(format!(
                "generator {} is unbounded: give max_power or max_degree",
                g.name
            )));
        }
    }
    let caps: Vec<u32> = gens
        .iter()
        .map(|g| {
            let c = g.max_power.unwrap_or(u32::MAX).min(max_degree.unwrap_or(u32::MAX));
            if g.odd { c.min(1) } else { c }
        })
        .collect();
    let mut out = vec![vec![]];
    for &cap in &caps {
        out = out
            .into_iter()
            .flat_map(|m: Vec<u32>| {
                (0..=cap).map(move |k| {
                    let mut m = m.clone();
                    m.push(k);
                    m
                })
            })
            .filter(|m| max_degree.is_none_or(|d| m.iter().sum::<u32>() <= d))
            .collect();
    }
    out.retain(|m| m.iter().sum::<u32>() >= 1);
    out.sort_by_key(|m| (m.iter().sum::<u32>(), std::cmp::Reverse(m.clone())));
    Ok(out)
}

fn monomial_label(gens: &[Generator], m: &[u32]) -> String {
    let mut s = String::new();
    for (g, &e) in gens.iter().zip(m) {
        match e {
            0 => {}
            1 => s.push_str(&g.name),
            _ => s.push_str(&format!("{}^{e}", g.name)),
        }
    }
    s
}

/// Product of two monomials with the Koszul sign, or `None` when it
/// vanishes or leaves the truncation.
fn monomial_product(
    gens: &[Generator],
    caps: &dyn Fn(&[u32]) -> bool,
    a: &[u32],
    b: &[u32],
) -> Option<(Vec<u32>, bool)> {
    let mut negative = false;
    for (i, gi) in gens.iter().enumerate() {
        if gi.odd && a[i] == 1 {
            for (j, gj) in gens.iter().enumerate().take(i) {
                if gj.odd && b[j] == 1 {
                    negative = !negative;
                }
            }
        }
    }
    let prod: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
    if gens.iter().zip(&prod).any(|(g, &e)| g.odd && e > 1) || !caps(&prod) {
        return None;
    }
    Some((prod, negative))
}

/// `sl_n (x) A` with `A = C (+) A_+` spanned by monomials in `gens`.
pub fn current_algebra(
    rs: &RootSystem,
    gens: &[Generator],
    max_degree: Option<u32>,
    name: &str,
) -> Result<FiniteGradedLie> {
    let n = sl_rank(rs)?;
    let sl = SlBasis::new(n);
    let monos = {
        let mut m = vec![vec![0u32; gens.len()]];
        m.extend(coefficient_monomials(gens, max_degree)?);
        m
    };
    let index_of_mono: HashMap<Vec<u32>, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let gdim = sl.mats.len();
    let idx = |mono: usize, a: usize| mono * gdim + a;
    let mut basis = Vec::new();
    for m in &monos {
        let q: i64 = gens.iter().zip(m).map(|(g, &e)| g.q * i64::from(e)).sum();
        let t: i64 = gens.iter().zip(m).map(|(g, &e)| g.t * i64::from(e)).sum();
        let odd = gens.iter().zip(m).filter(|(g, _)| g.odd).map(|(_, &e)| e).sum::<u32>() % 2 == 1;
        let ml = monomial_label(gens, m);
        for a in 0..gdim {
            basis.push(LieBasisElem {
                label: if ml.is_empty() { sl.labels[a].clone() } else { format!("{}*{ml}", sl.labels[a]) },
                weight: sl.weights[a].clone(),
                q,
                t,
                odd,
            });
        }
    }
    let in_range = |p: &[u32]| {
        index_of_mono.contains_key(p)
    };
    let mut brackets = HashMap::new();
    for (i, mi) in monos.iter().enumerate() {
        for (j, mj) in monos.iter().enumerate() {
            let Some((prod, negative)) = monomial_product(gens, &in_range, mi, mj) else { continue };
            let k = index_of_mono[&prod];
            for a in 0..gdim {
                for b in 0..gdim {
                    let v = sl.decompose(&sl.commutator(a, b));
                    if v.is_empty() {
                        continue;
                    }
                    let s = sign(negative);
                    brackets.insert((idx(i, a), idx(j, b)), v.iter().map(|(c, x)| (idx(k, *c), x * &s)).collect());
                }
            }
        }
    }
    let tau: Vec<LieVec> = (0..monos.len())
        .flat_map(|m| (0..gdim).map(move |a| (m, a)))
        .map(|(m, a)| vec![(idx(m, sl.transpose_index(a)), Rational::one())])
        .collect();
    let mut lie = FiniteGradedLie::new(name, rs.clone(), basis, brackets, sl.chevalley(), Some(tau))?;
    for a in 0..gdim {
        lie.g_matrix[a] = Some(sl.mats[a].clone());
    }
    Ok(lie)
}

/// `sl2 (x) C[x]/(x^2)`.
pub fn sl2_dual_numbers() -> Result<FiniteGradedLie> {
    current_algebra(&"A1".parse()?, &[Generator::even("x", 1, Some(1))], None, "A1:trunc_x2")
}

/// `sl2 (x) C[x, xi]/(x^2)` with `xi` odd in `t`-degree 1.
pub fn sl2_dual_numbers_odd() -> Result<FiniteGradedLie> {
    current_algebra(
        &"A1".parse()?,
        &[Generator::even("x", 1, Some(1)), Generator::odd("xi", 0, 1)],
        None,
        "A1:trunc_x2_xi",
    )
}

/// `T(3) = sl3 (+) C^3 (q^1) (+) Lambda^2 C^3 (q^2)` with
/// `[x_i, x_j] = x_i ^ x_j`.
pub fn t3_algebra() -> Result<FiniteGradedLie> {
    let rs: RootSystem = "A2".parse()?;
    let sl = SlBasis::new(3);
    let gdim = sl.mats.len();
    let mut basis: Vec<LieBasisElem> = (0..gdim)
        .map(|a| LieBasisElem {
            label: sl.labels[a].clone(),
            weight: sl.weights[a].clone(),
            q: 0,
            t: 0,
            odd: false,
        })
        .collect();
    let v0 = basis.len();
    for i in 0..3 {
        basis.push(LieBasisElem { label: format!("x{}", i + 1), weight: epsilon(3, i), q: 1, t: 0, odd: false });
    }
    let pairs = [(0usize, 1usize), (0, 2), (1, 2)];
    let w0 = basis.len();
    for &(i, j) in &pairs {
        basis.push(LieBasisElem {
            label: format!("x{}{}", i + 1, j + 1),
            weight: epsilon(3, i).add(&epsilon(3, j)),
            q: 2,
            t: 0,
            odd: false,
        });
    }
    // e_i ^ e_j as a vector in the x_ij basis
    let wedge = |i: usize, j: usize| -> LieVec {
        if i == j {
            return vec![];
        }
        let (a, b, s) = if i < j { (i, j, 1) } else { (j, i, -1) };
        let k = pairs.iter().position(|&p| p == (a, b)).expect("pair");
        vec![(w0 + k, rat(s))]
    };
    let mut brackets: HashMap<(usize, usize), LieVec> = HashMap::new();
    let mut put = |a: usize, b: usize, v: LieVec| {
        let v = normalize(v);
        if !v.is_empty() {
            brackets.insert((a, b), v);
        }
    };
    for a in 0..gdim {
        for b in 0..gdim {
            put(a, b, sl.decompose(&sl.commutator(a, b)));
        }
        let m = &sl.mats[a];
        for i in 0..3 {
            let img: LieVec = (0..3).filter(|&j| m[j][i] != 0).map(|j| (v0 + j, rat(m[j][i]))).collect();
            put(a, v0 + i, img.clone());
            put(v0 + i, a, img.into_iter().map(|(c, x)| (c, -x)).collect());
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            let mut img = Vec::new();
            for l in 0..3 {
                if m[l][i] != 0 {
                    img.extend(wedge(l, j).into_iter().map(|(c, x)| (c, x * rat(m[l][i]))));
                }
                if m[l][j] != 0 {
                    img.extend(wedge(i, l).into_iter().map(|(c, x)| (c, x * rat(m[l][j]))));
                }
            }
            let img = normalize(img);
            put(a, w0 + k, img.clone());
            put(w0 + k, a, img.into_iter().map(|(c, x)| (c, -x)).collect());
        }
    }
    for i in 0..3 {
        for j in 0..3 {
            put(v0 + i, v0 + j, wedge(i, j));
        }
    }
    let mut lie = FiniteGradedLie::new("t3", rs, basis, brackets, sl.chevalley(), None)?;
    for a in 0..gdim {
        lie.g_matrix[a] = Some(sl.mats[a].clone());
    }
    Ok(lie)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl_basis_weights_match_roots() {
        for n in 2..5 {
            let sl = SlBasis::new(n);
            let rs: RootSystem = format!("A{}", n - 1).parse().unwrap();
            let mut roots: Vec<Weight> = sl.weights.iter().filter(|w| !w.is_zero()).cloned().collect();
            roots.sort();
            let mut expect = rs.roots();
            expect.sort();
            assert_eq!(roots, expect);
            let ch = sl.chevalley();
            for k in 0..n - 1 {
                assert_eq!(sl.weights[ch.e[k]], rs.simple_roots()[k]);
            }
        }
    }

    #[test]
    fn current_algebras_satisfy_jacobi() {
        sl2_dual_numbers().unwrap().check_jacobi().unwrap();
        sl2_dual_numbers_odd().unwrap().check_jacobi().unwrap();
        let two_odd = current_algebra(
            &"A1".parse().unwrap(),
            &[Generator::odd("a", 1, 0), Generator::odd("b", 0, 1)],
            None,
            "two_odd",
        )
        .unwrap();
        two_odd.check_jacobi().unwrap();
        let a2 = current_algebra(&"A2".parse().unwrap(), &[Generator::even("x", 1, Some(1))], None, "a2").unwrap();
        assert_eq!(a2.dim(), 16);
        a2.check_jacobi().unwrap();
    }

    #[test]
    fn dimensions() {
        assert_eq!(sl2_dual_numbers().unwrap().dim(), 6);
        assert_eq!(sl2_dual_numbers_odd().unwrap().dim(), 12);
        let xy = current_algebra(
            &"A1".parse().unwrap(),
            &[Generator::even("x", 1, None), Generator::even("y", 1, None)],
            Some(2),
            "xy",
        )
        .unwrap();
        // sl2 (x) span{1, x, y, x^2, xy, y^2}
        assert_eq!(xy.dim(), 18);
        assert_eq!(xy.positive_part().len(), 15);
    }

    #[test]
    fn t3_structure() {
        let t3 = t3_algebra().unwrap();
        assert_eq!(t3.dim(), 14);
        t3.check_jacobi().unwrap();
        assert!(!t3.has_anti_involution());
        let data = t3.weight_data(Trunc::new(4, 0)).unwrap();
        assert_eq!(data.slice_dim(1, 0), (3, 0));
        assert_eq!(data.slice_dim(2, 0), (3, 0));
    }

    #[test]
    fn weight_data_matches_liedata() {
        use crate::liedata::{current_algebra_data, CoefficientSpec};
        let lie = sl2_dual_numbers().unwrap();
        let t = Trunc::new(5, 0);
        let from_lie = lie.weight_data(t).unwrap();
        let direct = current_algebra_data(&"A1".parse().unwrap(), &CoefficientSpec::TruncX { n: 2 }, t).unwrap();
        assert_eq!(from_lie.pairing_kernel().unwrap(), direct.pairing_kernel().unwrap());
    }

    #[test]
    fn json_roundtrip() {
        let lie = sl2_dual_numbers_odd().unwrap();
        let back = FiniteGradedLie::from_json(&lie.to_json()).unwrap();
        assert_eq!(back.to_json(), lie.to_json());
    }

    #[test]
    fn broken_brackets_rejected() {
        let lie = sl2_dual_numbers().unwrap();
        let mut v = lie.to_json();
        // flip one coefficient so antisymmetry fails
        let b = v["brackets"].as_array_mut().unwrap();
        b[0][3] = json!("7/1");
        assert!(FiniteGradedLie::from_json(&v).is_err());
    }

    #[test]
    fn other_types_rejected() {
        let r = current_algebra(&"B2".parse().unwrap(), &[Generator::even("x", 1, Some(1))], None, "b2");
        assert!(matches!(r, Err(Error::Unsupported(_))));
    }
}
