//! Root systems, Weyl-group orbits and the orderings on dominant weights.
//!
//! Weights are stored in the basis of fundamental weights. The Cartan matrix
//! follows the convention `cartan[i][j] = <alpha_i^vee, alpha_j>`, so the
//! simple root `alpha_j` has fundamental-weight coordinates given by column
//! `j`, and the simple reflection is `s_i(mu) = mu - mu_i alpha_i`.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::{rat, Rational};

/// Largest rank accepted by [`RootSystem::new`].
pub const MAX_RANK: usize = 8;

/// Integral weight in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// The fundamental weight `omega_i` (zero-based index).
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = vec![0; rank];
        w[i] = 1;
        Weight(w)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> Weight {
        self.scale(-1)
    }

    /// Parses comma-separated coordinates such as `"2,0"`.
    pub fn parse(s: &str) -> Result<Weight> {
        s.parse()
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Weight> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        if s.is_empty() {
            return Err(Error::Config("empty weight".into()));
        }
        s.split(',')
            .map(|p| {
                p.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::Config(format!("bad weight coordinate {p:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LieType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            LieType::A => 'A',
            LieType::B => 'B',
            LieType::C => 'C',
            LieType::D => 'D',
            LieType::E => 'E',
            LieType::F => 'F',
            LieType::G => 'G',
        };
        write!(f, "{c}")
    }
}

impl FromStr for LieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<LieType> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "A" => LieType::A,
            "B" => LieType::B,
            "C" => LieType::C,
            "D" => LieType::D,
            "E" => LieType::E,
            "F" => LieType::F,
            "G" => LieType::G,
            other => {
                return Err(Error::InvalidRootSystem(
                    other.into(),
                    "unknown Lie type".into(),
                ))
            }
        })
    }
}

/// Sort key refining the dominance order to a total order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct OrderKey {
    pub height: Rational,
    pub lex: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    lie_type: LieType,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    simple_roots: Vec<Weight>,
    positive_roots: Vec<Weight>,
    weyl_order: u64,
    inv_cartan: Vec<Vec<Rational>>,
    /// `(alpha_i, alpha_i) / 2`, normalized so the shortest root has 1.
    symmetrizer: Vec<i64>,
}

impl PartialEq for RootSystem {
    fn eq(&self, other: &Self) -> bool {
        self.lie_type == other.lie_type && self.rank == other.rank
    }
}

impl Eq for RootSystem {}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.lie_type, self.rank)
    }
}

impl FromStr for RootSystem {
    type Err = Error;

    /// Accepts labels like `"A2"`, `"g2"`, `"E8"`.
    fn from_str(s: &str) -> Result<RootSystem> {
        let s = s.trim();
        if s.len() < 2 {
            return Err(Error::InvalidRootSystem(s.into(), "expected e.g. \"A2\"".into()));
        }
        let (t, r) = s.split_at(1);
        let lie_type: LieType = t.parse()?;
        let rank: usize = r
            .parse()
            .map_err(|_| Error::InvalidRootSystem(s.into(), "bad rank".into()))?;
        RootSystem::new(lie_type, rank)
    }
}

fn cartan_matrix(lie_type: LieType, n: usize) -> Result<Vec<Vec<i64>>> {
    let invalid = |why: &str| Error::InvalidRootSystem(format!("{lie_type}{n}"), why.into());
    let ok = match lie_type {
        LieType::A => n >= 1,
        LieType::B => n >= 2,
        LieType::C => n >= 3,
        LieType::D => n >= 4,
        LieType::E => (6..=8).contains(&n),
        LieType::F => n == 4,
        LieType::G => n == 2,
    };
    if !ok {
        return Err(invalid("not a valid simple type"));
    }
    if n > MAX_RANK {
        return Err(invalid("rank exceeds the configured maximum of 8"));
    }
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
        c[i][j] = aij;
        c[j][i] = aji;
    };
    match lie_type {
        LieType::A => {
            for i in 0..n - 1 {
                link(i, i + 1, -1, -1);
            }
        }
        LieType::B => {
            for i in 0..n - 2 {
                link(i, i + 1, -1, -1);
            }
            // alpha_n short
            link(n - 2, n - 1, -1, -2);
        }
        LieType::C => {
            for i in 0..n - 2 {
                link(i, i + 1, -1, -1);
            }
            // alpha_n long
            link(n - 2, n - 1, -2, -1);
        }
        LieType::D => {
            for i in 0..n - 2 {
                link(i, i + 1, -1, -1);
            }
            link(n - 3, n - 1, -1, -1);
        }
        LieType::E => {
            link(0, 2, -1, -1);
            link(2, 3, -1, -1);
            link(1, 3, -1, -1);
            for i in 3..n - 1 {
                link(i, i + 1, -1, -1);
            }
        }
        LieType::F => {
            link(0, 1, -1, -1);
            link(1, 2, -1, -2);
            link(2, 3, -1, -1);
        }
        LieType::G => {
            // alpha_1 short, alpha_2 long
            link(0, 1, -3, -1);
        }
    }
    Ok(c)
}

fn weyl_group_order(lie_type: LieType, n: usize) -> u64 {
    let fact = |k: usize| (1..=k as u64).product::<u64>();
    match lie_type {
        LieType::A => fact(n + 1),
        LieType::B | LieType::C => (1u64 << n) * fact(n),
        LieType::D => (1u64 << (n - 1)) * fact(n),
        LieType::E => match n {
            6 => 51_840,
            7 => 2_903_040,
            _ => 696_729_600,
        },
        LieType::F => 1152,
        LieType::G => 12,
    }
}

fn invert_rational(m: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational> = row.iter().map(|&x| rat(x)).collect();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("Cartan matrix is invertible");
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(pivot_row) {
                    *x -= &f * p;
                }
            }
        }
    }
    a.into_iter().map(|row| row[n..].to_vec()).collect()
}

impl RootSystem {
    /// Builds the root system of a simple Lie algebra of the given type.
    pub fn new(lie_type: LieType, rank: usize) -> Result<RootSystem> {
        let cartan = cartan_matrix(lie_type, rank)?;
        let simple_roots: Vec<Weight> = (0..rank)
            .map(|j| Weight((0..rank).map(|i| cartan[i][j]).collect()))
            .collect();
        let inv_cartan = invert_rational(&cartan);

        let mut symmetrizer = vec![0i64; rank];
        symmetrizer[0] = 1;
        let mut num = vec![Rational::zero(); rank];
        num[0] = Rational::one();
        let mut queue = VecDeque::from([0usize]);
        let mut seen = vec![false; rank];
        seen[0] = true;
        while let Some(i) = queue.pop_front() {
            for j in 0..rank {
                if !seen[j] && cartan[i][j] != 0 {
                    num[j] = &num[i] * rat(cartan[i][j]) / rat(cartan[j][i]);
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        let min = num.iter().min().cloned().unwrap();
        for (s, v) in symmetrizer.iter_mut().zip(&num) {
            let r = v / &min;
            debug_assert!(r.is_integer());
            *s = r.to_integer().try_into().unwrap();
        }

        let mut rs = RootSystem {
            lie_type,
            rank,
            cartan,
            simple_roots,
            positive_roots: vec![],
            weyl_order: weyl_group_order(lie_type, rank),
            inv_cartan,
            symmetrizer,
        };
        rs.positive_roots = rs.generate_positive_roots();
        Ok(rs)
    }

    /// Closure of the simple roots under simple reflections, keeping the
    /// positive ones. Sorted by height, then coordinates.
    fn generate_positive_roots(&self) -> Vec<Weight> {
        let mut seen: HashSet<Weight> = self.simple_roots.iter().cloned().collect();
        let mut queue: VecDeque<Weight> = self.simple_roots.iter().cloned().collect();
        while let Some(beta) = queue.pop_front() {
            for i in 0..self.rank {
                let r = self.reflect(i, &beta);
                if self.is_positive_root_vector(&r) && seen.insert(r.clone()) {
                    queue.push_back(r);
                }
            }
        }
        let mut roots: Vec<Weight> = seen.into_iter().collect();
        roots.sort_by_key(|r| self.total_order_key(r));
        roots
    }

    fn is_positive_root_vector(&self, w: &Weight) -> bool {
        let d = self.root_coords(w);
        d.iter().all(|x| !x.is_negative()) && d.iter().any(|x| !x.is_zero())
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self) -> String {
        self.to_string()
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    /// All roots, positive first then their negatives.
    pub fn roots(&self) -> Vec<Weight> {
        let mut all = self.positive_roots.clone();
        all.extend(self.positive_roots.iter().map(Weight::neg));
        all
    }

    pub fn weyl_order(&self) -> u64 {
        self.weyl_order
    }

    /// Dimension of the simple Lie algebra: `rank + |Phi|`.
    pub fn dim(&self) -> usize {
        self.rank + 2 * self.positive_roots.len()
    }

    pub fn zero(&self) -> Weight {
        Weight::zero(self.rank)
    }

    pub fn rho(&self) -> Weight {
        Weight(vec![1; self.rank])
    }

    pub fn check_weight(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank {
            return Err(Error::RankMismatch(w.clone(), w.rank(), self.rank));
        }
        Ok(())
    }

    pub fn check_dominant(&self, w: &Weight) -> Result<()> {
        self.check_weight(w)?;
        if !w.is_dominant() {
            return Err(Error::NotDominant(w.clone()));
        }
        Ok(())
    }

    /// `s_i(mu) = mu - mu_i alpha_i`.
    pub fn reflect(&self, i: usize, mu: &Weight) -> Weight {
        let k = mu.0[i];
        if k == 0 {
            return mu.clone();
        }
        mu.sub(&self.simple_roots[i].scale(k))
    }

    /// Coordinates in the simple-root basis (rational in general).
    pub fn root_coords(&self, mu: &Weight) -> Vec<Rational> {
        self.inv_cartan
            .iter()
            .map(|row| row.iter().zip(&mu.0).map(|(a, &c)| a * rat(c)).sum())
            .collect()
    }

    /// Whether `mu` lies in the root lattice.
    pub fn in_root_lattice(&self, mu: &Weight) -> bool {
        self.root_coords(mu).iter().all(|x| x.is_integer())
    }

    /// Invariant form `(lambda, mu)` with short roots of squared length 2.
    pub fn inner(&self, lambda: &Weight, mu: &Weight) -> Rational {
        self.root_coords(mu)
            .into_iter()
            .enumerate()
            .map(|(j, m)| m * rat(lambda.0[j] * self.symmetrizer[j]))
            .sum()
    }

    /// Full Weyl orbit of `lambda` by breadth-first closure under simple
    /// reflections, sorted by coordinates.
    pub fn weyl_orbit(&self, lambda: &Weight) -> Vec<Weight> {
        let mut seen: HashSet<Weight> = HashSet::from([lambda.clone()]);
        let mut queue = VecDeque::from([lambda.clone()]);
        while let Some(mu) = queue.pop_front() {
            for i in 0..self.rank {
                if mu.0[i] == 0 {
                    continue;
                }
                let r = self.reflect(i, &mu);
                if seen.insert(r.clone()) {
                    queue.push_back(r);
                }
            }
        }
        let mut orbit: Vec<Weight> = seen.into_iter().collect();
        orbit.sort();
        orbit
    }

    /// The unique dominant element of the orbit of `mu`.
    pub fn dominant_representative(&self, mu: &Weight) -> Weight {
        let mut w = mu.clone();
        while let Some(i) = (0..self.rank).find(|&i| w.0[i] < 0) {
            w = self.reflect(i, &w);
        }
        w
    }

    /// `mu <= lambda` iff `lambda - mu` is a nonnegative integer combination
    /// of simple roots.
    pub fn dominance_leq(&self, mu: &Weight, lambda: &Weight) -> bool {
        self.root_coords(&lambda.sub(mu))
            .iter()
            .all(|d| d.is_integer() && !d.is_negative())
    }

    pub fn height(&self, lambda: &Weight) -> Rational {
        self.root_coords(lambda).into_iter().sum()
    }

    pub fn total_order_key(&self, lambda: &Weight) -> OrderKey {
        OrderKey {
            height: self.height(lambda),
            lex: lambda.0.clone(),
        }
    }

    /// All dominant `mu <= lambda`, ascending by [`Self::total_order_key`].
    pub fn dominant_weights_below(&self, lambda: &Weight) -> Vec<Weight> {
        let bounds: Vec<i64> = self
            .root_coords(lambda)
            .iter()
            .map(|d| d.floor().to_integer().try_into().unwrap_or(i64::MAX))
            .collect();
        let mut out = Vec::new();
        let mut d = vec![0i64; self.rank];
        loop {
            let mut mu = lambda.clone();
            for (j, &dj) in d.iter().enumerate() {
                if dj != 0 {
                    mu = mu.sub(&self.simple_roots[j].scale(dj));
                }
            }
            if mu.is_dominant() {
                out.push(mu);
            }
            // odometer over the box 0..=bounds
            let mut j = 0;
            loop {
                if j == self.rank {
                    out.sort_by_key(|w| self.total_order_key(w));
                    return out;
                }
                if d[j] < bounds[j] {
                    d[j] += 1;
                    break;
                }
                d[j] = 0;
                j += 1;
            }
        }
    }

    /// Dominant weights in the coset `lambda + Q` whose height does not
    /// exceed `max_height`, ascending by total order key. Includes weights
    /// incomparable to `lambda`.
    pub fn dominant_weights_in_coset(&self, lambda: &Weight, max_height: &Rational) -> Vec<Weight> {
        let fund_heights: Vec<Rational> = (0..self.rank)
            .map(|i| self.height(&Weight::fundamental(self.rank, i)))
            .collect();
        let mut out = Vec::new();
        let mut cur = vec![0i64; self.rank];
        self.coset_rec(0, &Rational::zero(), max_height, &fund_heights, &mut cur, lambda, &mut out);
        out.sort_by_key(|w| self.total_order_key(w));
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn coset_rec(
        &self,
        i: usize,
        h: &Rational,
        max: &Rational,
        fh: &[Rational],
        cur: &mut Vec<i64>,
        lambda: &Weight,
        out: &mut Vec<Weight>,
    ) {
        if i == self.rank {
            let w = Weight(cur.clone());
            if self.in_root_lattice(&lambda.sub(&w)) {
                out.push(w);
            }
            return;
        }
        let mut k = 0i64;
        loop {
            let hk = h + &fh[i] * rat(k);
            if &hk > max {
                break;
            }
            cur[i] = k;
            self.coset_rec(i + 1, &hk, max, fh, cur, lambda, out);
            k += 1;
        }
        cur[i] = 0;
    }

    /// Dominant weights with every coordinate at most the matching
    /// coordinate of `bound`, ascending by total order key.
    pub fn dominant_weights_in_box(&self, bound: &Weight) -> Vec<Weight> {
        let mut out = vec![Weight(vec![])];
        for &b in &bound.0 {
            out = out
                .into_iter()
                .flat_map(|w| {
                    (0..=b.max(-1)).map(move |k| {
                        let mut c = w.0.clone();
                        c.push(k);
                        Weight(c)
                    })
                })
                .collect();
        }
        out.sort_by_key(|w| self.total_order_key(w));
        out
    }

    /// `-w_0(lambda)`: the dominant element in the orbit of `-lambda`.
    pub fn negate_longest(&self, lambda: &Weight) -> Weight {
        self.dominant_representative(&lambda.neg())
    }

    /// Weyl dimension formula `prod_{alpha>0} (lambda+rho, alpha)/(rho, alpha)`.
    pub fn weyl_dimension(&self, lambda: &Weight) -> Rational {
        let lr = lambda.add(&self.rho());
        let rho = self.rho();
        self.positive_roots
            .iter()
            .map(|a| self.inner(&lr, a) / self.inner(&rho, a))
            .product()
    }
}
