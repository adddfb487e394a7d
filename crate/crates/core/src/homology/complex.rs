//! The relative Chevalley–Eilenberg complex `C(L, L_0; K)`.
//!
//! Cochains are polynomials in generators `theta^a` dual to the basis of
//! `L_{>0}`, tensored with `K`. `theta^a` anticommutes when `x_a` is even and
//! commutes when `x_a` is odd, so odd directions contribute symmetric powers.
//! Relative cochains are the `L_0`-invariants; since `L_0` is semisimple and
//! all spaces are finite-dimensional, these are the weight-zero cochains
//! killed by every raising generator `e_j`.
//!
//! The differential is `d = Q + sum_a theta^a rho(x_a)` with
//! `Q theta^c = -1/2 sum_{a,b} (-1)^{p_a (p_b + 1)} c^c_{ab} theta^a theta^b`
//! extended as an odd derivation. It preserves the grading
//! `G = deg(theta) - deg(k)` and the number of odd directions mod 2, so the
//! complex splits into finite blocks keyed by (cohomological degree, G,
//! parity).

use std::collections::{BTreeMap, HashMap};

use super::algebra::FiniteGradedLie;
use super::linalg::SparseMat;
use super::module::FiniteModule;
use crate::error::{Error, Result};
use crate::rootsys::Weight;
use crate::series::{SeriesQT, Trunc};
use crate::{ratio, Rational};

/// Default cap on the number of cochains enumerated.
pub const DEFAULT_MAX_COCHAINS: usize = 20000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockKey {
    pub degree: usize,
    pub q: i64,
    pub t: i64,
    /// Number of odd directions mod 2.
    pub parity: u8,
}

impl BlockKey {
    fn next(self) -> BlockKey {
        BlockKey { degree: self.degree + 1, ..self }
    }

    /// Sign of this block in the Euler characteristic.
    pub fn euler_sign(&self) -> i64 {
        if (self.degree + self.parity as usize) % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// `theta^{a_1} ... theta^{a_i} (x) k`, indices into the algebra basis, sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cochain {
    pub theta: Vec<usize>,
    pub k: usize,
}

#[derive(Clone, Debug)]
pub struct Block {
    /// Weight-zero cochains of this block.
    pub cochains: Vec<Cochain>,
    /// Differential into the weight-zero part of the next block.
    pub d: SparseMat,
    /// Stacked action of the raising generators.
    pub e: SparseMat,
    pub invariant_dim: usize,
    /// Rank of the differential restricted to invariants.
    pub d_rank: usize,
}

#[derive(Clone, Debug)]
pub struct CEComplex {
    name: String,
    trunc: Trunc,
    rank: usize,
    blocks: BTreeMap<BlockKey, Block>,
}

impl CEComplex {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn trunc(&self) -> Trunc {
        self.trunc
    }

    pub fn blocks(&self) -> &BTreeMap<BlockKey, Block> {
        &self.blocks
    }

    pub fn block(&self, key: &BlockKey) -> Option<&Block> {
        self.blocks.get(key)
    }

    /// Dimension of relative cochains in each cohomological degree.
    pub fn invariant_dims(&self) -> Vec<usize> {
        let top = self.blocks.keys().map(|k| k.degree + 1).max().unwrap_or(0);
        let mut out = vec![0; top];
        for (k, b) in &self.blocks {
            out[k.degree] += b.invariant_dim;
        }
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    }

    /// Euler characteristic read off the relative cochains alone.
    pub fn cochain_euler(&self) -> SeriesQT {
        let mut s = SeriesQT::zero(self.trunc);
        for (k, b) in &self.blocks {
            s.add_term(k.q, k.t, Rational::from_integer((k.euler_sign() * b.invariant_dim as i64).into()));
        }
        s
    }

    /// Column vector of a linear combination of words, normal-ordered into
    /// the given block's cochain basis.
    pub fn vector(&self, lie: &FiniteGradedLie, key: &BlockKey, terms: &[(Vec<usize>, usize, Rational)]) -> Result<SparseMat> {
        let block = self.blocks.get(key).ok_or_else(|| Error::InvalidData(format!("no block {key:?}")))?;
        let index: HashMap<&Cochain, usize> = block.cochains.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let odd = odd_flags(lie);
        let mut v = SparseMat::zeros(block.cochains.len(), 1);
        for (word, k, c) in terms {
            let Some((theta, neg)) = normal_order(word.clone(), &odd) else { continue };
            let ch = Cochain { theta, k: *k };
            let i = *index
                .get(&ch)
                .ok_or_else(|| Error::InvalidData(format!("{ch:?} does not lie in block {key:?}")))?;
            v.add(i, 0, if neg { -c.clone() } else { c.clone() });
        }
        Ok(v)
    }
}

fn odd_flags(lie: &FiniteGradedLie) -> Vec<bool> {
    lie.basis().iter().map(|b| b.odd).collect()
}

/// Sorts a word of generators with the Koszul sign; `None` when a
/// generator dual to an even direction repeats. Returns (word, negative).
fn normal_order(mut w: Vec<usize>, odd: &[bool]) -> Option<(Vec<usize>, bool)> {
    let mut neg = false;
    for i in 1..w.len() {
        let mut j = i;
        while j > 0 && w[j - 1] > w[j] {
            // both generators anticommute exactly when both directions are even
            if !odd[w[j - 1]] && !odd[w[j]] {
                neg = !neg;
            }
            w.swap(j - 1, j);
            j -= 1;
        }
    }
    if w.windows(2).any(|p| p[0] == p[1] && !odd[p[0]]) {
        return None;
    }
    Some((w, neg))
}

type Terms = Vec<(Cochain, Rational)>;

struct Ops<'a> {
    lie: &'a FiniteGradedLie,
    module: &'a FiniteModule,
    odd: Vec<bool>,
    /// `Q theta^c` as `(a, b, coefficient)`.
    q_theta: HashMap<usize, Vec<(usize, usize, Rational)>>,
    /// `e_j . theta^c` as `(a, coefficient)`, per simple root.
    coad: Vec<HashMap<usize, Vec<(usize, Rational)>>>,
    pos: Vec<usize>,
}

impl<'a> Ops<'a> {
    fn new(lie: &'a FiniteGradedLie, module: &'a FiniteModule) -> Ops<'a> {
        let pos = lie.positive_part();
        let odd = odd_flags(lie);
        let half = ratio(-1, 2);
        let mut q_theta: HashMap<usize, Vec<(usize, usize, Rational)>> = HashMap::new();
        for &a in &pos {
            for &b in &pos {
                let s = if odd[a] && !odd[b] { -half.clone() } else { half.clone() };
                for (c, v) in lie.bracket(a, b) {
                    q_theta.entry(*c).or_default().push((a, b, v * &s));
                }
            }
        }
        let coad = lie
            .chevalley()
            .e
            .iter()
            .map(|&y| {
                let mut m: HashMap<usize, Vec<(usize, Rational)>> = HashMap::new();
                for &a in &pos {
                    for (c, v) in lie.bracket(y, a) {
                        m.entry(*c).or_default().push((a, -v.clone()));
                    }
                }
                m
            })
            .collect();
        Ops { lie, module, odd, q_theta, coad, pos }
    }

    fn push(&self, out: &mut Terms, word: Vec<usize>, k: usize, c: Rational) {
        if let Some((theta, neg)) = normal_order(word, &self.odd) {
            out.push((Cochain { theta, k }, if neg { -c } else { c }));
        }
    }

    fn differential(&self, ch: &Cochain) -> Terms {
        let mut out = Vec::new();
        let w = &ch.theta;
        let mut neg = false;
        for j in 0..w.len() {
            if let Some(terms) = self.q_theta.get(&w[j]) {
                for (a, b, c) in terms {
                    let mut word = Vec::with_capacity(w.len() + 1);
                    word.extend_from_slice(&w[..j]);
                    word.push(*a);
                    word.push(*b);
                    word.extend_from_slice(&w[j + 1..]);
                    self.push(&mut out, word, ch.k, if neg { -c.clone() } else { c.clone() });
                }
            }
            if !self.odd[w[j]] {
                neg = !neg;
            }
        }
        for &a in &self.pos {
            if self.odd[a] {
                continue;
            }
            for (k2, v) in self.module.action(a).column(ch.k) {
                let mut word = Vec::with_capacity(w.len() + 1);
                word.push(a);
                word.extend_from_slice(w);
                self.push(&mut out, word, k2, v);
            }
        }
        out
    }

    fn raise(&self, j: usize, ch: &Cochain) -> Terms {
        let mut out = Vec::new();
        let w = &ch.theta;
        for i in 0..w.len() {
            if let Some(terms) = self.coad[j].get(&w[i]) {
                for (a, c) in terms {
                    let mut word = w.clone();
                    word[i] = *a;
                    self.push(&mut out, word, ch.k, c.clone());
                }
            }
        }
        let y = self.lie.chevalley().e[j];
        for (k2, v) in self.module.action(y).column(ch.k) {
            out.push((Cochain { theta: w.clone(), k: k2 }, v));
        }
        out
    }
}

/// Exponent vectors over the positive part with `deg <= bound`, as sorted
/// words, together with their degree and weight.
fn enumerate_words(lie: &FiniteGradedLie, bound: (i64, i64), cap: usize) -> Result<Vec<(Vec<usize>, i64, i64, Weight)>> {
    let pos = lie.positive_part();
    let mut out = Vec::new();
    let mut stack: Vec<(usize, Vec<usize>, i64, i64, Weight)> = vec![(0, vec![], 0, 0, lie.rs().zero())];
    while let Some((start, word, q, t, w)) = stack.pop() {
        out.push((word.clone(), q, t, w.clone()));
        if out.len() > cap {
            return Err(Error::TooLarge(format!("more than {cap} cochain monomials")));
        }
        for (i, &a) in pos.iter().enumerate().skip(start) {
            let x = &lie.basis()[a];
            if q + x.q > bound.0 || t + x.t > bound.1 {
                continue;
            }
            // even directions appear at most once; odd ones may repeat
            let next = if x.odd { i } else { i + 1 };
            let mut w2 = word.clone();
            w2.push(a);
            stack.push((next, w2, q + x.q, t + x.t, w.sub(&x.weight)));
        }
    }
    Ok(out)
}

/// Builds the relative complex in grading `G <= trunc`, checking `d^2 = 0`.
pub fn ce_complex(lie: &FiniteGradedLie, module: &FiniteModule, trunc: Trunc, max_cochains: usize) -> Result<CEComplex> {
    let rs = lie.rs();
    let (mq, mt) = module.max_degree();
    let words = enumerate_words(lie, (trunc.nq + mq, trunc.nt + mt), max_cochains)?;

    // slot 0: weight zero; slot j + 1: weight alpha_j
    let targets: Vec<Weight> = std::iter::once(rs.zero()).chain(rs.simple_roots().iter().cloned()).collect();
    let mut sets: BTreeMap<(BlockKey, usize), Vec<Cochain>> = BTreeMap::new();
    let mut total = 0usize;
    for (word, q, t, w) in &words {
        let parity = (word.iter().filter(|&&a| lie.basis()[a].odd).count() % 2) as u8;
        for (k, kb) in module.basis().iter().enumerate() {
            let (gq, gt) = (q - kb.q, t - kb.t);
            if gq > trunc.nq || gt > trunc.nt {
                continue;
            }
            let wt = w.add(&kb.weight);
            let Some(slot) = targets.iter().position(|x| *x == wt) else { continue };
            total += 1;
            if total > max_cochains {
                return Err(Error::TooLarge(format!("more than {max_cochains} cochains")));
            }
            let key = BlockKey { degree: word.len(), q: gq, t: gt, parity };
            sets.entry((key, slot)).or_default().push(Cochain { theta: word.clone(), k });
        }
    }
    for v in sets.values_mut() {
        v.sort();
    }
    let index: HashMap<(BlockKey, usize), HashMap<&Cochain, usize>> = sets
        .iter()
        .map(|(k, v)| (*k, v.iter().enumerate().map(|(i, c)| (c, i)).collect()))
        .collect();
    let lookup = |key: BlockKey, slot: usize, ch: &Cochain| -> usize {
        index
            .get(&(key, slot))
            .and_then(|m| m.get(ch))
            .copied()
            .unwrap_or_else(|| panic!("{ch:?} escaped the enumerated block {key:?}"))
    };

    let ops = Ops::new(lie, module);
    let rank = rs.rank();
    let mut blocks = BTreeMap::new();
    for ((key, slot), cochains) in &sets {
        if *slot != 0 {
            continue;
        }
        let n = cochains.len();
        let next_len = sets.get(&(key.next(), 0)).map_or(0, Vec::len);
        let mut d = SparseMat::zeros(next_len, n);
        let offsets: Vec<usize> = (0..rank)
            .scan(0, |acc, j| {
                let o = *acc;
                *acc += sets.get(&(*key, j + 1)).map_or(0, Vec::len);
                Some(o)
            })
            .collect();
        let e_rows = (0..rank).map(|j| sets.get(&(*key, j + 1)).map_or(0, Vec::len)).sum();
        let mut e = SparseMat::zeros(e_rows, n);
        for (col, ch) in cochains.iter().enumerate() {
            for (img, c) in ops.differential(ch) {
                d.add(lookup(key.next(), 0, &img), col, c);
            }
            for j in 0..rank {
                for (img, c) in ops.raise(j, ch) {
                    e.add(offsets[j] + lookup(*key, j + 1, &img), col, c);
                }
            }
        }
        let rank_e = e.rank();
        let rank_ed = SparseMat::vstack(&[&e, &d]).rank();
        blocks.insert(
            *key,
            Block { cochains: cochains.clone(), invariant_dim: n - rank_e, d_rank: rank_ed - rank_e, d, e },
        );
    }
    for (key, b) in &blocks {
        if let Some(next) = blocks.get(&key.next()) {
            if !next.d.mul(&b.d).is_zero() {
                return Err(Error::DifferentialNotNilpotent(format!(
                    "{}: d^2 != 0 on block {key:?}",
                    lie.name()
                )));
            }
        }
    }
    Ok(CEComplex { name: lie.name().to_string(), trunc, rank, blocks })
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CohomKey {
    pub degree: usize,
    pub q: i64,
    pub t: i64,
    pub parity: u8,
    pub weight: Weight,
}

/// Nonzero cohomology dimensions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CohomologyTable {
    pub dims: BTreeMap<CohomKey, usize>,
    pub trunc: Option<Trunc>,
}

impl CohomologyTable {
    pub fn total(&self, degree: usize) -> usize {
        self.dims.iter().filter(|(k, _)| k.degree == degree).map(|(_, v)| v).sum()
    }

    pub fn at(&self, degree: usize, q: i64, t: i64) -> usize {
        self.dims
            .iter()
            .filter(|(k, _)| k.degree == degree && k.q == q && k.t == t)
            .map(|(_, v)| v)
            .sum()
    }

    /// `sum (-1)^(i + parity) dim H q^q t^t`.
    pub fn euler(&self, trunc: Trunc) -> SeriesQT {
        let mut s = SeriesQT::zero(trunc);
        for (k, v) in &self.dims {
            let sign = if (k.degree + k.parity as usize) % 2 == 0 { 1 } else { -1 };
            s.add_term(k.q, k.t, Rational::from_integer((sign * *v as i64).into()));
        }
        s
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }
}

/// `dim H^i = dim Inv^i - rank d_i - rank d_{i-1}` per block.
pub fn cohomology(complex: &CEComplex) -> CohomologyTable {
    let mut dims = BTreeMap::new();
    for (key, b) in complex.blocks() {
        let prev = if key.degree == 0 {
            0
        } else {
            complex
                .block(&BlockKey { degree: key.degree - 1, ..*key })
                .map_or(0, |p| p.d_rank)
        };
        let h = b.invariant_dim - b.d_rank - prev;
        if h > 0 {
            dims.insert(
                CohomKey { degree: key.degree, q: key.q, t: key.t, parity: key.parity, weight: Weight::zero(complex.rank) },
                h,
            );
        }
    }
    CohomologyTable { dims, trunc: Some(complex.trunc()) }
}

/// Convenience: one-shot cohomology with the default size cap.
pub fn cohomology_of(lie: &FiniteGradedLie, module: &FiniteModule, trunc: Trunc) -> Result<CohomologyTable> {
    Ok(cohomology(&ce_complex(lie, module, trunc, DEFAULT_MAX_COCHAINS)?))
}
