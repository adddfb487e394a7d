//! The constant-term pairing on Weyl-invariant characters.
//!
//! `<f, g> = CT(f * bar(g) * K) / |W|`, where `K` is the kernel of the
//! algebra data. The `(q, t)` Macdonald pairing is the special case
//! `g (x) C[x, xi]`; it is evaluated both through the kernel and through the
//! closed-form product, and the two results are compared.

use num_bigint::BigInt;
use num_traits::One;

use crate::charring::CharElement;
use crate::error::{Error, Result};
use crate::liedata::{current_algebra_data, mul_geometric, weyl_denominator, CoefficientSpec, GradedLieData};
use crate::rootsys::RootSystem;
use crate::series::{SeriesQT, Trunc};
use crate::Rational;

fn check_trunc(data: &GradedLieData, f: &CharElement, which: &str) -> Result<()> {
    if f.trunc() != data.trunc() {
        return Err(Error::TruncationMismatch(format!(
            "{which} has {}, algebra data has {}",
            f.trunc(),
            data.trunc()
        )));
    }
    if f.rank() != data.rs().rank() {
        return Err(Error::InvalidData(format!(
            "{which} has rank {}, root system {} has rank {}",
            f.rank(),
            data.rs(),
            data.rs().rank()
        )));
    }
    Ok(())
}

fn inv_weyl_order(rs: &RootSystem) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(rs.weyl_order()))
}

/// `CT(f * bar(g) * K) / |W|`.
pub fn pair(data: &GradedLieData, f: &CharElement, g: &CharElement) -> Result<SeriesQT> {
    check_trunc(data, f, "left argument")?;
    check_trunc(data, g, "right argument")?;
    let k = data.pairing_kernel()?;
    let fg = f * &g.bar();
    let ct = fg.constant_term_of_product(&k);
    Ok(ct.scale(&inv_weyl_order(data.rs())).retruncate(data.trunc()))
}

/// Gram matrix `[<b_i, b_j>]` of a list of characters.
pub fn gram_matrix(data: &GradedLieData, basis: &[CharElement]) -> Result<Vec<Vec<SeriesQT>>> {
    basis
        .iter()
        .map(|f| basis.iter().map(|g| pair(data, f, g)).collect())
        .collect()
}

/// `(prod_{r>0} (1 - q^r) / prod_{r>=0} (1 - t q^r))^rank`, truncated.
pub fn qt_prefactor(rank: usize, trunc: Trunc) -> Result<SeriesQT> {
    let mut num = SeriesQT::one(trunc);
    let mut den = SeriesQT::one(trunc);
    for r in 0..=trunc.nq {
        if r > 0 {
            num = &num * &(&SeriesQT::one(trunc) - &SeriesQT::monomial(r, 0, Rational::one(), trunc));
        }
        den = &den * &(&SeriesQT::one(trunc) - &SeriesQT::monomial(r, 1, Rational::one(), trunc));
    }
    Ok((&num * &den.invert()?).pow(rank as u32))
}

/// `prod_{r>=0, alpha in Phi} (1 - q^r e^alpha) / (1 - t q^r e^alpha)`,
/// truncated.
pub fn qt_root_product(rs: &RootSystem, trunc: Trunc) -> CharElement {
    let minus_one = -Rational::one();
    let mut k = weyl_denominator(rs, trunc);
    for alpha in rs.roots() {
        for r in 0..=trunc.nq {
            if r > 0 {
                k = k.mul_binomial(&alpha, r, 0, &minus_one);
            }
            if trunc.nt >= 1 {
                k = mul_geometric(&k, &alpha, r, 1);
            }
        }
    }
    k
}

/// The `(q, t)` Macdonald pairing at the truncation of `f`.
///
/// Computed as `pair` over `g (x) C[x, xi]` and as
/// `prefactor * CT(f * bar(g) * qt_root_product) / |W|`; a mismatch is
/// returned as [`Error::PathDisagreement`].
pub fn macdonald_qt_pair(rs: &RootSystem, f: &CharElement, g: &CharElement) -> Result<SeriesQT> {
    let trunc = f.trunc();
    let data = current_algebra_data(rs, &CoefficientSpec::PolyXXi, trunc)?;
    let via_kernel = pair(&data, f, g)?;

    let k = qt_root_product(rs, trunc);
    let ct = (f * &g.bar()).constant_term_of_product(&k);
    let via_product = (&qt_prefactor(rs.rank(), trunc)? * &ct.scale(&inv_weyl_order(rs))).retruncate(trunc);

    if via_kernel != via_product {
        return Err(Error::PathDisagreement(format!(
            "(q,t) pairing over {rs}: kernel path gives {via_kernel}, product path gives {via_product}"
        )));
    }
    Ok(via_kernel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charring::{monomial_sym, schur_char};
    use crate::liedata::classical_data;
    use crate::rat;
    use crate::rootsys::Weight;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn rs(s: &str) -> RootSystem {
        s.parse().unwrap()
    }

    fn w(c: &[i64]) -> Weight {
        Weight(c.to_vec())
    }

    #[test]
    fn classical_a1_examples() {
        let r = rs("A1");
        let t = Trunc::new(0, 0);
        let d = classical_data(&r, t).unwrap();
        let m1 = monomial_sym(&r, &w(&[1]), t).unwrap();
        assert_eq!(pair(&d, &m1, &m1).unwrap(), SeriesQT::one(t));
        let one = CharElement::one(1, t);
        let s2 = schur_char(&r, &w(&[2]), t).unwrap();
        assert!(pair(&d, &one, &s2).unwrap().is_zero());
    }

    #[test]
    fn poly_x_unit_is_one() {
        let r = rs("A1");
        let t = Trunc::new(6, 0);
        let d = current_algebra_data(&r, &CoefficientSpec::PolyX, t).unwrap();
        let one = CharElement::one(1, t);
        assert_eq!(pair(&d, &one, &one).unwrap(), SeriesQT::one(t));
    }

    #[test]
    fn trunc_x2_unit_calibration() {
        // (1/2) CT[(2 - u - 1/u)(1 - q)(1 - q u)(1 - q/u)] = 1 - q^3
        let r = rs("A1");
        let t = Trunc::new(4, 0);
        let d = current_algebra_data(&r, &CoefficientSpec::TruncX { n: 2 }, t).unwrap();
        let one = CharElement::one(1, t);
        assert_eq!(pair(&d, &one, &one).unwrap(), SeriesQT::from_q_coeffs(&[1, 0, 0, -1], t));
    }

    #[test]
    fn truncation_mismatch_rejected() {
        let r = rs("A1");
        let d = current_algebra_data(&r, &CoefficientSpec::PolyX, Trunc::new(3, 0)).unwrap();
        let one = CharElement::one(1, Trunc::new(2, 0));
        assert!(matches!(pair(&d, &one, &one), Err(Error::TruncationMismatch(_))));
    }

    #[test]
    fn qt_pair_examples() {
        let r = rs("A1");
        let t = Trunc::new(4, 2);
        let one = CharElement::one(1, t);
        let v = macdonald_qt_pair(&r, &one, &one).unwrap();
        assert_eq!(v.at_t_zero(), SeriesQT::one(t));
        let m1 = monomial_sym(&r, &w(&[1]), t).unwrap();
        let v = macdonald_qt_pair(&r, &m1, &m1).unwrap();
        assert_eq!(v.coeff(0, 0), rat(1));
    }

    #[test]
    fn qt_pair_degenerates_to_poly_x() {
        let r = rs("A1");
        let t = Trunc::new(4, 2);
        let t0 = Trunc::new(4, 0);
        let d0 = current_algebra_data(&r, &CoefficientSpec::PolyX, t0).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                let f = monomial_sym(&r, &w(&[a]), t).unwrap();
                let g = monomial_sym(&r, &w(&[b]), t).unwrap();
                let v = macdonald_qt_pair(&r, &f, &g).unwrap().at_t_zero().retruncate(t0);
                let u = pair(&d0, &f.retruncate(t0), &g.retruncate(t0)).unwrap();
                assert_eq!(v, u, "{a} {b}");
            }
        }
    }

    #[test]
    fn gram_unit_determinant_at_origin() {
        for (label, hmax) in [("A1", 4), ("A2", 4)] {
            let r = rs(label);
            let t = Trunc::new(2, 0);
            let d = current_algebra_data(&r, &CoefficientSpec::PolyX, t).unwrap();
            let top: Vec<Weight> = r
                .dominant_weights_in_coset(&r.zero(), &rat(hmax))
                .into_iter()
                .collect();
            let basis: Vec<CharElement> =
                top.iter().map(|mu| monomial_sym(&r, mu, t).unwrap()).collect();
            let g = gram_matrix(&d, &basis).unwrap();
            let m: Vec<Vec<Rational>> =
                g.iter().map(|row| row.iter().map(|s| s.coeff(0, 0)).collect()).collect();
            assert!(!det(m).is_zero() || basis.is_empty(), "{label}");
        }
    }

    fn det(mut m: Vec<Vec<Rational>>) -> Rational {

        let n = m.len();
        let mut d = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                m.swap(p, c);
                d = -d;
            }
            d *= &m[c][c];
            for r in c + 1..n {
                let f = &m[r][c] / &m[c][c];
                for k in c..n {
                    let v = &m[c][k] * &f;
                    m[r][k] -= v;
                }
            }
        }
        d
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn symmetric_and_bilinear(a in 0i64..4, b in 0i64..4, c in 0i64..3, k in -3i64..4) {
            let r = rs("A1");
            let t = Trunc::new(3, 1);
            let d = current_algebra_data(&r, &CoefficientSpec::PolyXXi, t).unwrap();
            let f = monomial_sym(&r, &w(&[a]), t).unwrap();
            let g = monomial_sym(&r, &w(&[b]), t).unwrap();
            let h = monomial_sym(&r, &w(&[c]), t).unwrap();
            prop_assert_eq!(pair(&d, &f, &g).unwrap(), pair(&d, &g, &f).unwrap());
            let s = SeriesQT::from_q_coeffs(&[k, 1], t);
            let lhs = pair(&d, &(&f.scale(&s) + &h), &g).unwrap();
            let rhs = &(&pair(&d, &f, &g).unwrap() * &s) + &pair(&d, &h, &g).unwrap();
            prop_assert_eq!(lhs.retruncate(t), rhs.retruncate(t));
        }
    }
}
