//! Sparse rational matrices and fraction-free rank computation.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Rational;

/// Sparse matrix with exact rational entries, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMat {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl SparseMat {
    pub fn zeros(rows: usize, cols: usize) -> SparseMat {
        SparseMat {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> SparseMat {
        let mut m = SparseMat::zeros(n, n);
        for i in 0..n {
            m.add(i, i, Rational::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn add(&mut self, r: usize, c: usize, v: Rational) {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of {}x{}", self.rows, self.cols);
        if v.is_zero() {
            return;
        }
        let e = self.entries.entry((r, c)).or_insert_with(Rational::zero);
        *e += v;
        if e.is_zero() {
            self.entries.remove(&(r, c));
        }
    }

    pub fn transpose(&self) -> SparseMat {
        SparseMat {
            rows: self.cols,
            cols: self.rows,
            entries: self.entries.iter().map(|(&(r, c), v)| ((c, r), v.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> SparseMat {
        let mut out = SparseMat::zeros(self.rows, self.cols);
        for (&(r, c), v) in &self.entries {
            out.add(r, c, v * k);
        }
        out
    }

    pub fn plus(&self, other: &SparseMat) -> SparseMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (&(r, c), v) in &other.entries {
            out.add(r, c, v.clone());
        }
        out
    }

    pub fn minus(&self, other: &SparseMat) -> SparseMat {
        self.plus(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &SparseMat) -> SparseMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut by_row: BTreeMap<usize, Vec<(usize, &Rational)>> = BTreeMap::new();
        for (&(r, c), v) in &other.entries {
            by_row.entry(r).or_default().push((c, v));
        }
        let mut out = SparseMat::zeros(self.rows, other.cols);
        for (&(r, k), v) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for (c, w) in row {
                    out.add(r, *c, v * *w);
                }
            }
        }
        out
    }

    /// Column `c` as a sparse vector.
    pub fn column(&self, c: usize) -> BTreeMap<usize, Rational> {
        self.entries
            .iter()
            .filter(|((_, cc), _)| *cc == c)
            .map(|(&(r, _), v)| (r, v.clone()))
            .collect()
    }

    /// Rows stacked on top of each other; column counts must agree.
    pub fn vstack(parts: &[&SparseMat]) -> SparseMat {
        let cols = parts.first().map_or(0, |p| p.cols);
        let mut out = SparseMat::zeros(parts.iter().map(|p| p.rows).sum(), cols);
        let mut off = 0;
        for p in parts {
            assert_eq!(p.cols, cols, "vstack column mismatch");
            for (&(r, c), v) in &p.entries {
                out.entries.insert((r + off, c), v.clone());
            }
            off += p.rows;
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); self.cols]; self.rows];
        let mut dens: Vec<BigInt> = vec![BigInt::one(); self.rows];
        for (&(r, _), v) in &self.entries {
            dens[r] = dens[r].lcm(v.denom());
        }
        for (&(r, c), v) in &self.entries {
            rows[r][c] = v.numer() * (&dens[r] / v.denom());
        }
        rows.retain(|row| row.iter().any(|x| !x.is_zero()));
        bareiss_rank(rows)
    }
}

/// Rank of an integer matrix by fraction-free Gaussian elimination.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows)
            .filter(|&r| !m[r][col].is_zero())
            .min_by_key(|&r| m[r][col].abs())
        else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for r in rank + 1..nrows {
            let factor = m[r][col].clone();
            for c in col..ncols {
                let v = &pivot * &m[r][c] - &factor * &m[rank][c];
                m[r][c] = v / &prev;
            }
        }
        prev = pivot;
        rank += 1;
    }
    rank
}
