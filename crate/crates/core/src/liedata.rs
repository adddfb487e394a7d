//! Weight-multiplicity data of graded Lie (super)algebras and the
//! product kernels built from it.
//!
//! A graded Lie algebra `L = L_0 + L_{>0}` with semisimple `L_0` enters the
//! pairing only through the `L_0`-characters of its graded pieces, so it is
//! described here by a table `(q_deg, t_deg, weight) -> (even, odd)`
//! multiplicities. No structure constants are involved; those live in
//! [`crate::homology`].

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::charring::CharElement;
use crate::error::{Error, Result};
use crate::rootsys::{RootSystem, Weight};
use crate::series::Trunc;
use crate::Rational;

/// Graded dimension of one piece `A_(q,t)` of the coefficient algebra,
/// split by parity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedDim {
    pub q: i64,
    #[serde(default)]
    pub t: i64,
    #[serde(default)]
    pub even: i64,
    #[serde(default)]
    pub odd: i64,
}

/// The graded supercommutative algebra `A` in `g (x) A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoefficientSpec {
    /// `A = C`: the semisimple algebra alone.
    Classical,
    /// `A = C[x]`, `x` even in `q`-degree 1.
    PolyX,
    /// `A = C[x, xi]`, `x` even in `q`-degree 1, `xi` odd in `t`-degree 1.
    PolyXXi,
    /// `A = C[x]/(x^n)`.
    TruncX { n: i64 },
    /// `A = C[x, y]`, both even in `q`-degree 1.
    PolyXy,
    /// Explicit graded dimensions of `A_+`.
    Explicit { dims: Vec<GradedDim> },
}

impl CoefficientSpec {
    pub fn label(&self) -> String {
        match self {
            CoefficientSpec::Classical => "classical".into(),
            CoefficientSpec::PolyX => "poly_x".into(),
            CoefficientSpec::PolyXXi => "poly_x_xi".into(),
            CoefficientSpec::TruncX { n } => format!("trunc_x{n}"),
            CoefficientSpec::PolyXy => "poly_xy".into(),
            CoefficientSpec::Explicit { dims } => {
                let parts: Vec<String> = dims
                    .iter()
                    .map(|d| format!("{}.{}.{}.{}", d.q, d.t, d.even, d.odd))
                    .collect();
                format!("explicit[{}]", parts.join(";"))
            }
        }
    }

    /// Graded dimensions of `A_+` within the truncation bounds.
    pub fn graded_dims(&self, trunc: Trunc) -> Result<Vec<GradedDim>> {
        let even = |q, n| GradedDim { q, t: 0, even: n, odd: 0 };
        let dims: Vec<GradedDim> = match self {
            CoefficientSpec::Classical => vec![],
            CoefficientSpec::PolyX => (1..=trunc.nq).map(|d| even(d, 1)).collect(),
            CoefficientSpec::PolyXXi => {
                let mut v: Vec<GradedDim> = (1..=trunc.nq).map(|d| even(d, 1)).collect();
                if trunc.nt >= 1 {
                    v.extend((0..=trunc.nq).map(|d| GradedDim { q: d, t: 1, even: 0, odd: 1 }));
                }
                v
            }
            CoefficientSpec::TruncX { n } => {
                if *n < 1 {
                    return Err(Error::InvalidData(format!("C[x]/(x^{n}) needs n >= 1")));
                }
                (1..*n).filter(|&d| d <= trunc.nq).map(|d| even(d, 1)).collect()
            }
            CoefficientSpec::PolyXy => (1..=trunc.nq).map(|d| even(d, d + 1)).collect(),
            CoefficientSpec::Explicit { dims } => {
                for d in dims {
                    if d.even < 0 || d.odd < 0 {
                        return Err(Error::InvalidData(format!(
                            "negative dimension at degree ({}, {})",
                            d.q, d.t
                        )));
                    }
                    if d.q < 0 || d.t < 0 || (d.q == 0 && d.t == 0) {
                        return Err(Error::InvalidData(format!(
                            "A_+ must live in positive degree, got ({}, {})",
                            d.q, d.t
                        )));
                    }
                }
                dims.iter()
                    .filter(|d| trunc.contains(d.q, d.t))
                    .cloned()
                    .collect()
            }
        };
        Ok(dims)
    }
}

impl fmt::Display for CoefficientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Even and odd multiplicity of one weight in one graded slice.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Mult {
    pub even: u64,
    pub odd: u64,
}

type Table = BTreeMap<(i64, i64, Weight), Mult>;

#[derive(Clone, Debug)]
pub struct GradedLieData {
    rs: RootSystem,
    table: Table,
    has_anti_involution: bool,
    name: String,
    trunc: Trunc,
    kernel: Arc<OnceLock<CharElement>>,
}

impl GradedLieData {
    /// Validates and builds the data. Each `(q, t)` slice must be a
    /// `W`-stable multiset of weights living in positive degree; with an
    /// anti-involution, slices must also be symmetric under `mu -> -mu`.
    pub fn new(
        rs: RootSystem,
        entries: impl IntoIterator<Item = ((i64, i64, Weight), Mult)>,
        has_anti_involution: bool,
        name: impl Into<String>,
        trunc: Trunc,
    ) -> Result<GradedLieData> {
        if trunc.nq < 0 || trunc.nt < 0 {
            return Err(Error::InvalidData(format!("negative truncation {trunc}")));
        }
        let mut table = Table::new();
        for ((a, b, mu), m) in entries {
            rs.check_weight(&mu)?;
            if a < 0 || b < 0 || (a == 0 && b == 0) {
                return Err(Error::InvalidData(format!(
                    "slice ({a}, {b}) is not in positive degree"
                )));
            }
            if !trunc.contains(a, b) || (m.even == 0 && m.odd == 0) {
                continue;
            }
            let e = table.entry((a, b, mu)).or_default();
            e.even += m.even;
            e.odd += m.odd;
        }
        let data = GradedLieData {
            rs,
            table,
            has_anti_involution,
            name: name.into(),
            trunc,
            kernel: Arc::new(OnceLock::new()),
        };
        data.validate()?;
        Ok(data)
    }

    fn validate(&self) -> Result<()> {
        for ((a, b, mu), m) in &self.table {
            for i in 0..self.rs.rank() {
                let r = self.rs.reflect(i, mu);
                if self.table.get(&(*a, *b, r.clone())) != Some(m) {
                    return Err(Error::InvalidData(format!(
                        "slice ({a}, {b}) is not W-stable at weight {mu}"
                    )));
                }
            }
            if self.has_anti_involution && self.table.get(&(*a, *b, mu.neg())) != Some(m) {
                return Err(Error::InvalidData(format!(
                    "anti-involution requires weight {} in slice ({a}, {b})",
                    mu.neg()
                )));
            }
        }
        Ok(())
    }

    pub fn rs(&self) -> &RootSystem {
        &self.rs
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn trunc(&self) -> Trunc {
        self.trunc
    }

    pub fn has_anti_involution(&self) -> bool {
        self.has_anti_involution
    }

    /// Entries `((q, t, weight), multiplicity)` in ascending order.
    pub fn entries(&self) -> impl Iterator<Item = (&(i64, i64, Weight), &Mult)> {
        self.table.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// `(q, t)` degrees that carry a nonzero slice.
    pub fn degrees(&self) -> Vec<(i64, i64)> {
        let mut d: Vec<(i64, i64)> = self.table.keys().map(|(a, b, _)| (*a, *b)).collect();
        d.dedup();
        d
    }

    /// Total `(even, odd)` dimension of the slice at `(q, t)`.
    pub fn slice_dim(&self, q: i64, t: i64) -> (u64, u64) {
        self.table
            .iter()
            .filter(|((a, b, _), _)| *a == q && *b == t)
            .fold((0, 0), |(e, o), (_, m)| (e + m.even, o + m.odd))
    }

    /// Same algebra data with new truncation bounds. Only meaningful for
    /// lowering, since entries beyond the old bounds are gone.
    pub fn with_trunc(&self, trunc: Trunc) -> Result<GradedLieData> {
        GradedLieData::new(
            self.rs.clone(),
            self.table.iter().map(|(k, v)| (k.clone(), *v)),
            self.has_anti_involution,
            self.name.clone(),
            trunc,
        )
    }

    /// Drops every slice for which `keep(q, t)` is false.
    pub fn filter_slices(&self, keep: impl Fn(i64, i64) -> bool, name: &str) -> Result<GradedLieData> {
        GradedLieData::new(
            self.rs.clone(),
            self.table
                .iter()
                .filter(|((a, b, _), _)| keep(*a, *b))
                .map(|(k, v)| (k.clone(), *v)),
            self.has_anti_involution,
            name,
            self.trunc,
        )
    }

    /// `prod_{alpha in Phi} (1 - e^alpha)` times, for every entry,
    /// `(1 - q^a t^b e^mu)^even / (1 - q^a t^b e^mu)^odd`, truncated.
    /// Computed once per data value and shared between clones.
    pub fn pairing_kernel(&self) -> Result<CharElement> {
        if let Some(k) = self.kernel.get() {
            return Ok(k.clone());
        }
        let mut k = weyl_denominator(&self.rs, self.trunc);
        let minus_one = -Rational::one();
        for ((a, b, mu), m) in &self.table {
            if m.odd > 0 && *a == 0 && *b == 0 {
                return Err(Error::InvalidData(
                    "odd generator in degree (0, 0): geometric series does not truncate".into(),
                ));
            }
            if !self.trunc.contains(*a, *b) {
                continue;
            }
            for _ in 0..m.even {
                k = k.mul_binomial(mu, *a, *b, &minus_one);
            }
            for _ in 0..m.odd {
                k = mul_geometric(&k, mu, *a, *b);
            }
        }
        Ok(self.kernel.get_or_init(|| k).clone())
    }

    /// PBW character of `U(L_{>0})` with super signs:
    /// `prod (1 - q^a t^b e^mu)^(-even) (1 - q^a t^b e^mu)^odd`.
    pub fn pbw_character(&self) -> Result<CharElement> {
        let mut k = CharElement::one(self.rs.rank(), self.trunc);
        let minus_one = -Rational::one();
        for ((a, b, mu), m) in &self.table {
            if m.even > 0 && *a == 0 && *b == 0 {
                return Err(Error::InvalidData(
                    "even generator in degree (0, 0): PBW series does not truncate".into(),
                ));
            }
            for _ in 0..m.even {
                k = mul_geometric(&k, mu, *a, *b);
            }
            for _ in 0..m.odd {
                k = k.mul_binomial(mu, *a, *b, &minus_one);
            }
        }
        Ok(k)
    }
}

/// `prod_{alpha in Phi} (1 - e^alpha)`.
pub fn weyl_denominator(rs: &RootSystem, trunc: Trunc) -> CharElement {
    let minus_one = -Rational::one();
    rs.roots()
        .iter()
        .fold(CharElement::one(rs.rank(), trunc), |k, alpha| {
            k.mul_binomial(alpha, 0, 0, &minus_one)
        })
}

/// Multiplies by `1 / (1 - q^a t^b e^mu)` expanded as a truncated geometric
/// series. Requires `(a, b) != (0, 0)`.
pub fn mul_geometric(f: &CharElement, mu: &Weight, a: i64, b: i64) -> CharElement {
    debug_assert!(a > 0 || b > 0);
    let mut out = f.clone();
    let mut cur = f.clone();
    loop {
        let mut next = CharElement::zero(f.rank(), f.trunc());
        for (nu, s) in cur.terms() {
            next.add_term(nu.add(mu), &s.shift(a, b));
        }
        if next.is_zero() {
            return out;
        }
        out = &out + &next;
        cur = next;
    }
}

/// `g (x) A` for the given coefficient algebra: each graded piece of `A_+`
/// contributes the adjoint weights of `g` with multiplicity `dim A_(q,t)`.
pub fn current_algebra_data(
    rs: &RootSystem,
    spec: &CoefficientSpec,
    trunc: Trunc,
) -> Result<GradedLieData> {
    let dims = spec.graded_dims(trunc)?;
    let mut entries = Vec::new();
    let adjoint: Vec<(Weight, u64)> = rs
        .roots()
        .into_iter()
        .map(|r| (r, 1))
        .chain(std::iter::once((rs.zero(), rs.rank() as u64)))
        .collect();
    for d in &dims {
        if d.even < 0 || d.odd < 0 {
            return Err(Error::InvalidData("negative dimension".into()));
        }
        for (mu, m) in &adjoint {
            entries.push((
                (d.q, d.t, mu.clone()),
                Mult {
                    even: m * d.even as u64,
                    odd: m * d.odd as u64,
                },
            ));
        }
    }
    GradedLieData::new(rs.clone(), entries, true, format!("{rs}:{}", spec.label()), trunc)
}

/// The 14-dimensional algebra `T(3) = sl3 + C^3 (q^1) + Lambda^2 C^3 (q^2)`.
pub fn t3_data(trunc: Trunc) -> Result<GradedLieData> {
    let rs: RootSystem = "A2".parse()?;
    let mut entries = Vec::new();
    for (deg, hw) in [(1, Weight(vec![1, 0])), (2, Weight(vec![0, 1]))] {
        for mu in rs.weyl_orbit(&hw) {
            entries.push(((deg, 0, mu), Mult { even: 1, odd: 0 }));
        }
    }
    GradedLieData::new(rs, entries, false, "A2:t3", trunc)
}

/// The data of the semisimple algebra alone.
pub fn classical_data(rs: &RootSystem, trunc: Trunc) -> Result<GradedLieData> {
    current_algebra_data(rs, &CoefficientSpec::Classical, trunc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;
    use crate::series::SeriesQT;

    fn rs(s: &str) -> RootSystem {
        s.parse().unwrap()
    }

    fn w(c: &[i64]) -> Weight {
        Weight(c.to_vec())
    }

    fn slice(d: &GradedLieData, q: i64, t: i64) -> Vec<(Weight, Mult)> {
        d.entries()
            .filter(|((a, b, _), _)| *a == q && *b == t)
            .map(|((_, _, mu), m)| (mu.clone(), *m))
            .collect()
    }

    #[test]
    fn poly_x_slices() {
        let d = current_algebra_data(&rs("A1"), &CoefficientSpec::PolyX, Trunc::new(2, 0)).unwrap();
        assert_eq!(d.degrees(), vec![(1, 0), (2, 0)]);
        let even1 = Mult { even: 1, odd: 0 };
        for q in 1..=2 {
            assert_eq!(slice(&d, q, 0), vec![(w(&[-2]), even1), (w(&[0]), even1), (w(&[2]), even1)]);
        }
    }

    #[test]
    fn poly_x_xi_slices() {
        let d = current_algebra_data(&rs("A1"), &CoefficientSpec::PolyXXi, Trunc::new(1, 1)).unwrap();
        assert_eq!(d.degrees(), vec![(0, 1), (1, 0), (1, 1)]);
        assert_eq!(d.slice_dim(1, 0), (3, 0));
        assert_eq!(d.slice_dim(0, 1), (0, 3));
        assert_eq!(d.slice_dim(1, 1), (0, 3));
    }

    #[test]
    fn trunc_x_single_slice() {
        for nq in [1, 3, 7] {
            let d = current_algebra_data(&rs("A1"), &CoefficientSpec::TruncX { n: 2 }, Trunc::new(nq, 0))
                .unwrap();
            assert_eq!(d.degrees(), vec![(1, 0)]);
        }
    }

    #[test]
    fn negative_dims_rejected() {
        let spec = CoefficientSpec::Explicit {
            dims: vec![GradedDim { q: 1, t: 0, even: -1, odd: 0 }],
        };
        assert!(current_algebra_data(&rs("A1"), &spec, Trunc::new(3, 0)).is_err());
        let spec = CoefficientSpec::Explicit {
            dims: vec![GradedDim { q: 0, t: 0, even: 0, odd: 1 }],
        };
        assert!(current_algebra_data(&rs("A1"), &spec, Trunc::new(3, 0)).is_err());
    }

    #[test]
    fn non_invariant_slice_rejected() {
        let r = rs("A1");
        let bad = GradedLieData::new(
            r,
            [((1, 0, w(&[2])), Mult { even: 1, odd: 0 })],
            false,
            "bad",
            Trunc::new(2, 0),
        );
        assert!(bad.is_err());
    }

    #[test]
    fn t3_slices() {
        let d = t3_data(Trunc::new(6, 0)).unwrap();
        let s1: Vec<Weight> = slice(&d, 1, 0).into_iter().map(|(m, _)| m).collect();
        let s2: Vec<Weight> = slice(&d, 2, 0).into_iter().map(|(m, _)| m).collect();
        assert_eq!(s1, vec![w(&[-1, 1]), w(&[0, -1]), w(&[1, 0])]);
        assert_eq!(s2, vec![w(&[-1, 0]), w(&[0, 1]), w(&[1, -1])]);
        // sl3 (8) + C^3 (3) + Lambda^2 C^3 (3)
        let total = d.rs().dim() as u64 + d.slice_dim(1, 0).0 + d.slice_dim(2, 0).0;
        assert_eq!(total, 14);
        assert!(!d.has_anti_involution());
    }

    #[test]
    fn classical_kernel() {
        let r = rs("A1");
        let t = Trunc::new(3, 0);
        let k = classical_data(&r, t).unwrap().pairing_kernel().unwrap();
        let mut expect = CharElement::exp(w(&[0]), SeriesQT::constant(rat(2), t));
        expect.add_term(w(&[2]), &SeriesQT::constant(rat(-1), t));
        expect.add_term(w(&[-2]), &SeriesQT::constant(rat(-1), t));
        assert_eq!(k, expect);
    }

    #[test]
    fn poly_x_kernel_at_first_order() {
        let r = rs("A1");
        let t = Trunc::new(1, 0);
        let k = current_algebra_data(&r, &CoefficientSpec::PolyX, t)
            .unwrap()
            .pairing_kernel()
            .unwrap();
        // (2 - u - 1/u)(1 - q)(1 - q u)(1 - q/u) mod q^2, u = e^alpha
        let mut expect = weyl_denominator(&r, t);
        let m1 = -Rational::one();
        for mu in [w(&[0]), w(&[2]), w(&[-2])] {
            expect = expect.mul_binomial(&mu, 1, 0, &m1);
        }
        assert_eq!(k, expect);
        assert_eq!(k.constant_term(), SeriesQT::from_q_coeffs(&[2], t));
    }

    #[test]
    fn kernels_are_invariant() {
        let t = Trunc::new(3, 2);
        for label in ["A1", "A2", "B2"] {
            for spec in [
                CoefficientSpec::PolyX,
                CoefficientSpec::PolyXXi,
                CoefficientSpec::PolyXy,
                CoefficientSpec::TruncX { n: 2 },
            ] {
                let r = rs(label);
                let d = current_algebra_data(&r, &spec, t).unwrap();
                let k = d.pairing_kernel().unwrap();
                assert!(k.is_w_invariant(&r), "{label} {spec}");
                assert_eq!(k.bar(), k, "{label} {spec}");
            }
        }
        let k = t3_data(Trunc::new(4, 0)).unwrap().pairing_kernel().unwrap();
        assert!(k.is_w_invariant(&rs("A2")));
    }

    #[test]
    fn trunc_x_equals_filtered_poly_x() {
        let r = rs("A2");
        let t = Trunc::new(5, 0);
        for n in 1..5 {
            let tr = current_algebra_data(&r, &CoefficientSpec::TruncX { n }, t).unwrap();
            let px = current_algebra_data(&r, &CoefficientSpec::PolyX, t)
                .unwrap()
                .filter_slices(|q, _| q < n, "filtered")
                .unwrap();
            assert_eq!(tr.pairing_kernel().unwrap(), px.pairing_kernel().unwrap());
        }
    }

    #[test]
    fn pbw_times_kernel_is_weyl_denominator() {
        let r = rs("A1");
        let t = Trunc::new(4, 2);
        let d = current_algebra_data(&r, &CoefficientSpec::PolyXXi, t).unwrap();
        let prod = &d.pbw_character().unwrap() * &d.pairing_kernel().unwrap();
        assert_eq!(prod, weyl_denominator(&r, t));
    }
}
