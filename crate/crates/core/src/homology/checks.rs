//! Homological cross-checks of the constant-term pairing.

use std::collections::HashMap;

use super::algebra::{current_algebra, t3_algebra, FiniteGradedLie, Generator};
use super::complex::{ce_complex, cohomology, BlockKey, DEFAULT_MAX_COCHAINS};
use super::module::FiniteModule;
use crate::error::{Error, Result};
use crate::pairing::pair;
use crate::rootsys::RootSystem;
use crate::series::{SeriesQT, Trunc};
use crate::{rat, Rational};

/// `sum_i (-1)^i dim H^i(L, L_0; Hom(M, N^dual))`, graded by
/// `q^G t^G`, odd directions counted with an extra sign.
pub fn ext_euler(lie: &FiniteGradedLie, m: &FiniteModule, n: &FiniteModule, trunc: Trunc) -> Result<SeriesQT> {
    let k = FiniteModule::hom(lie, m, &n.dual(lie)?)?;
    let complex = ce_complex(lie, &k, trunc, DEFAULT_MAX_COCHAINS)?;
    let table = cohomology(&complex);
    let euler = table.euler(trunc);
    debug_assert_eq!(euler, complex.cochain_euler());
    Ok(euler)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerReport {
    pub algebra: String,
    pub trunc: Trunc,
    pub euler: SeriesQT,
    pub pairing: SeriesQT,
    pub pass: bool,
}

/// Compares [`ext_euler`] with `pair` over the weight data of `lie`.
pub fn verify_euler_vs_pairing(
    lie: &FiniteGradedLie,
    m: &FiniteModule,
    n: &FiniteModule,
    trunc: Trunc,
) -> Result<EulerReport> {
    let euler = ext_euler(lie, m, n, trunc)?;
    let data = lie.weight_data(trunc)?;
    let rank = lie.rs().rank();
    let pairing = pair(&data, &m.character(rank, trunc), &n.character(rank, trunc))?;
    Ok(EulerReport { algebra: lie.name().to_string(), trunc, pass: euler == pairing, euler, pairing })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiReport {
    pub algebra: String,
    pub c1_dim: usize,
    pub phi_nonzero: bool,
    pub phi_invariant: bool,
    pub d_phi_zero: bool,
    /// `dim H^2` in q-degree 2.
    pub h2_q2: usize,
}

impl PhiReport {
    /// With no relative 1-cochains, a nonzero invariant cocycle is a
    /// nonzero class.
    pub fn class_nonzero(&self) -> bool {
        self.c1_dim == 0 && self.phi_nonzero && self.phi_invariant && self.d_phi_zero
    }

    pub fn pass(&self) -> bool {
        self.class_nonzero() && self.h2_q2 >= 1
    }
}

/// Builds `g (x) C[x_1..x_k]/(deg > 2)` and tests
/// `phi = sum_{a,b} tr(ab) theta^{a x_1} theta^{b x_2}`.
pub fn phi_cocycle_check(rs: &RootSystem, num_even_generators: usize) -> Result<PhiReport> {
    if num_even_generators < 2 {
        return Err(Error::InvalidData(
            "phi_{x,y} requires two independent linear maps (at least two even generators)".into(),
        ));
    }
    let gens: Vec<Generator> =
        (1..=num_even_generators).map(|i| Generator::even(&format!("x{i}"), 1, None)).collect();
    let lie = current_algebra(rs, &gens, Some(2), &format!("{rs}:poly_{num_even_generators}_deg2"))?;
    let trunc = Trunc::new(2, 0);
    let complex = ce_complex(&lie, &FiniteModule::trivial(&lie, 0, 0), trunc, DEFAULT_MAX_COCHAINS)?;
    let table = cohomology(&complex);

    let by_label: HashMap<&str, usize> = lie.basis().iter().enumerate().map(|(i, b)| (b.label.as_str(), i)).collect();
    let zero = lie.degree_zero_part();
    let mut terms = Vec::new();
    for &a in &zero {
        for &b in &zero {
            let (ma, mb) = (lie.g_matrix(a).expect("matrix"), lie.g_matrix(b).expect("matrix"));
            let tr: i64 = (0..ma.len()).map(|i| (0..ma.len()).map(|j| ma[i][j] * mb[j][i]).sum::<i64>()).sum();
            if tr == 0 {
                continue;
            }
            let ax = by_label[format!("{}*x1", lie.basis()[a].label).as_str()];
            let by = by_label[format!("{}*x2", lie.basis()[b].label).as_str()];
            terms.push((vec![ax, by], 0, rat(tr)));
        }
    }
    let key = BlockKey { degree: 2, q: 2, t: 0, parity: 0 };
    let phi = complex.vector(&lie, &key, &terms)?;
    let block = complex.block(&key).expect("block of phi");
    Ok(PhiReport {
        algebra: lie.name().to_string(),
        c1_dim: complex.invariant_dims().get(1).copied().unwrap_or(0),
        phi_nonzero: !phi.is_zero(),
        phi_invariant: block.e.mul(&phi).is_zero(),
        d_phi_zero: block.d.mul(&phi).is_zero(),
        h2_q2: table.at(2, 2, 0),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct T3Report {
    /// Relative cochain dimensions in degrees `0..=6`.
    pub cochain_dims: Vec<usize>,
    pub cohomology_dims: Vec<usize>,
}

impl T3Report {
    /// Degrees 2, 3, 4 carry cochains `(1, 2, 1)` and no cohomology.
    pub fn pass(&self) -> bool {
        self.cochain_dims.get(2..5) == Some(&[1, 2, 1][..]) && (2..5).all(|i| self.cohomology_dims[i] == 0)
    }
}

pub fn t3_verify() -> Result<T3Report> {
    let lie = t3_algebra()?;
    lie.check_jacobi()?;
    let complex = ce_complex(&lie, &FiniteModule::trivial(&lie, 0, 0), Trunc::new(9, 0), DEFAULT_MAX_COCHAINS)?;
    let table = cohomology(&complex);
    let mut cochain_dims = complex.invariant_dims();
    cochain_dims.resize(7, 0);
    Ok(T3Report { cochain_dims, cohomology_dims: (0..7).map(|i| table.total(i)).collect() })
}

/// `1` as a series, for the degenerate checks.
pub fn unit_series(trunc: Trunc) -> SeriesQT {
    SeriesQT::constant(Rational::from_integer(1.into()), trunc)
}

#[cfg(test)]
mod tests {
    use super::super::algebra::{current_algebra, sl2_dual_numbers, sl2_dual_numbers_odd};
    use super::*;

    #[test]
    fn calibration_one_minus_q_cubed() {
        let lie = sl2_dual_numbers().unwrap();
        let l0 = FiniteModule::sl2_irrep(&lie, 0).unwrap();
        let t = Trunc::new(4, 0);
        let r = verify_euler_vs_pairing(&lie, &l0, &l0, t).unwrap();
        assert_eq!(r.euler, SeriesQT::from_q_coeffs(&[1, 0, 0, -1], t));
        assert!(r.pass);
    }

    #[test]
    fn euler_matches_pairing_small_weights() {
        let lie = sl2_dual_numbers().unwrap();
        let t = Trunc::new(3, 0);
        for a in [0, 1, 2] {
            for b in [0, 1, 2] {
                let m = FiniteModule::sl2_irrep(&lie, a).unwrap();
                let n = FiniteModule::sl2_irrep(&lie, b).unwrap();
                let r = verify_euler_vs_pairing(&lie, &m, &n, t).unwrap();
                assert!(r.pass, "{a} {b}: {} vs {}", r.euler, r.pairing);
            }
        }
    }

    #[test]
    fn super_case_matches_pairing() {
        let lie = sl2_dual_numbers_odd().unwrap();
        let l0 = FiniteModule::sl2_irrep(&lie, 0).unwrap();
        let t = Trunc::new(3, 2);
        let r = verify_euler_vs_pairing(&lie, &l0, &l0, t).unwrap();
        assert!(r.pass, "{} vs {}", r.euler, r.pairing);
        assert!(r.euler.terms().any(|(_, b, _)| b > 0));
    }

    #[test]
    fn trivial_positive_part() {
        let lie = current_algebra(&"A1".parse().unwrap(), &[], None, "sl2").unwrap();
        let t = Trunc::new(2, 0);
        for l in 0..3 {
            let m = FiniteModule::sl2_irrep(&lie, l).unwrap();
            let r = verify_euler_vs_pairing(&lie, &m, &m, t).unwrap();
            assert_eq!(r.euler, unit_series(t));
            assert!(r.pass);
        }
    }

    #[test]
    fn zero_modules() {
        let lie = sl2_dual_numbers().unwrap();
        let z = FiniteModule::zero(&lie);
        let t = Trunc::new(3, 0);
        assert!(ext_euler(&lie, &z, &z, t).unwrap().is_zero());
    }

    #[test]
    fn induced_and_simple_are_dual() {
        let lie = sl2_dual_numbers().unwrap();
        let d = 3;
        let t = Trunc::new(d, 0);
        for lambda in [0, 2] {
            let top = FiniteModule::sl2_irrep(&lie, lambda).unwrap();
            let ind = FiniteModule::truncated_induced(&lie, &top, d as u32).unwrap();
            for mu in [0, 2] {
                let n = FiniteModule::sl2_irrep(&lie, mu).unwrap();
                let e = ext_euler(&lie, &ind, &n, t).unwrap();
                let expect = if lambda == mu { unit_series(t) } else { SeriesQT::zero(t) };
                assert_eq!(e, expect, "{lambda} {mu}");
            }
        }
    }

    #[test]
    fn phi_examples() {
        for label in ["A1", "A2"] {
            let r = phi_cocycle_check(&label.parse().unwrap(), 2).unwrap();
            assert!(r.pass(), "{label}: {r:?}");
            assert_eq!(r.c1_dim, 0);
        }
        assert!(matches!(phi_cocycle_check(&"A1".parse().unwrap(), 1), Err(Error::InvalidData(m)) if m.contains("requires two independent linear maps")));
    }

    #[test]
    fn t3_report() {
        let r = t3_verify().unwrap();
        assert_eq!(r.cochain_dims, vec![1, 0, 1, 2, 1, 0, 1]);
        assert_eq!(r.cohomology_dims, vec![1, 0, 0, 0, 0, 0, 1]);
        assert!(r.pass());
    }
}
