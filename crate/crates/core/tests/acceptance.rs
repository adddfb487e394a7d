//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//! All comparisons are exact.

use graded_macdonald::charring::{monomial_sym, schur_char, schur_expansion};
use graded_macdonald::homology::algebra::sl2_dual_numbers;
use graded_macdonald::homology::{phi_cocycle_check, t3_verify, verify_euler_vs_pairing, FiniteModule};
use graded_macdonald::liedata::{classical_data, current_algebra_data};
use graded_macdonald::macdonald::norm_product;
use graded_macdonald::pairing::{macdonald_qt_pair, pair, qt_prefactor, qt_root_product};
use graded_macdonald::{CharElement, CoefficientSpec, MacdonaldEngine, Rational, RootSystem, SeriesQT, Trunc, Weight};
use num_traits::{One, Zero};

fn rs(s: &str) -> RootSystem {
    s.parse().unwrap()
}

fn w(c: &[i64]) -> Weight {
    Weight(c.to_vec())
}

fn verdict(n: u32, title: &str, pass: bool, detail: &str) {
    println!("criterion {n} ({title}): {}  {detail}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {n} ({title}) failed: {detail}");
}

#[test]
fn criterion_01_norm_product() {
    let engine = MacdonaldEngine::new();
    let mut failures = Vec::new();
    let mut reciprocal = true;
    let mut check = |label: &str, nq: i64, lambdas: Vec<Weight>| {
        let t = Trunc::new(nq, 0);
        let data = current_algebra_data(&rs(label), &CoefficientSpec::PolyX, t).unwrap();
        for l in lambdas {
            let norm = engine.macdonald_norm(&data, &l).unwrap();
            let expected = norm_product(&l, t).unwrap();
            if norm != expected {
                reciprocal &= (&norm * &expected).retruncate(t) == SeriesQT::one(t);
                failures.push(format!("{label} {l}: norm {norm}, expected {expected}"));
            }
        }
    };
    check("A1", 12, (0..=5).map(|m| w(&[m])).collect());
    let a2: Vec<Weight> = (0..=3).flat_map(|a| (0..=3 - a).map(move |b| w(&[a, b]))).collect();
    check("A2", 8, a2);
    let detail = if failures.is_empty() {
        "all norms equal prod (1-q^j)^-1".to_string()
    } else {
        format!(
            "{} weights differ; computed norm times the quoted product is 1 for all of them: {reciprocal}; first: {}",
            failures.len(),
            failures[0]
        )
    };
    verdict(1, "norm product", failures.is_empty(), &detail);
}

#[test]
fn criterion_02_orthogonality() {
    let r = rs("A1");
    let t = Trunc::new(6, 3);
    let data = current_algebra_data(&r, &CoefficientSpec::PolyXXi, t).unwrap();
    let engine = MacdonaldEngine::new();
    // height of m*omega is m/2
    let ps: Vec<_> = (0..=6).map(|m| engine.macdonald_polynomial(&data, &w(&[m])).unwrap()).collect();
    let mut bad = Vec::new();
    for a in &ps {
        for b in &ps {
            if a.lambda != b.lambda && !pair(&data, &a.p, &b.p).unwrap().is_zero() {
                bad.push(format!("{} {}", a.lambda, b.lambda));
            }
        }
    }
    verdict(2, "orthogonality", bad.is_empty(), &format!("nonzero pairs: {bad:?}"));
}

#[test]
fn criterion_03_q_hermite() {
    let r = rs("A1");
    let engine = MacdonaldEngine::new();
    let at = |nq: i64, m: i64| {
        let t = Trunc::new(nq, 0);
        let data = current_algebra_data(&r, &CoefficientSpec::PolyX, t).unwrap();
        engine.macdonald_polynomial(&data, &w(&[m])).unwrap().p.at_t_zero()
    };
    let t8 = Trunc::new(8, 0);
    let p2 = at(8, 2);
    let expected = &schur_char(&r, &w(&[2]), t8).unwrap() + &schur_char(&r, &w(&[0]), t8).unwrap().scale(&SeriesQT::monomial(1, 0, Rational::one(), t8));
    let mut ok = p2 == expected;
    let mut detail = format!("P_2 = {}", p2.display_monomial(&r));
    // stabilization between Nq and Nq + 5
    for m in 0..=5 {
        if at(13, m).retruncate(t8) != at(8, m) {
            ok = false;
            detail.push_str(&format!("; P_{m} not stable"));
        }
        for (nu, c) in schur_expansion(&r, &at(8, m)).unwrap() {
            if let Some((a, b, v)) = c.first_non_natural() {
                ok = false;
                detail.push_str(&format!("; s_{nu} coefficient of P_{m} has {v} at q^{a} t^{b}"));
            }
        }
    }
    verdict(3, "q-Hermite value", ok, &detail);
}

#[test]
fn criterion_04_euler_equals_constant_term() {
    let lie = sl2_dual_numbers().unwrap();
    let t = Trunc::new(6, 0);
    let mut bad = Vec::new();
    let mut unit = SeriesQT::zero(t);
    for a in [0, 2, 4] {
        for b in [0, 2, 4] {
            let m = FiniteModule::sl2_irrep(&lie, a).unwrap();
            let n = FiniteModule::sl2_irrep(&lie, b).unwrap();
            let r = verify_euler_vs_pairing(&lie, &m, &n, t).unwrap();
            if !r.pass {
                bad.push(format!("L({a}),L({b}): {} vs {}", r.euler, r.pairing));
            }
            if a == 0 && b == 0 {
                unit = r.euler;
            }
        }
    }
    let calibrated = unit == SeriesQT::from_q_coeffs(&[1, 0, 0, -1], t);
    verdict(
        4,
        "Euler = constant term",
        bad.is_empty() && calibrated,
        &format!("<L(0),L(0)> = {unit}; mismatches {bad:?}"),
    );
}

#[test]
fn criterion_05_t3_acyclicity() {
    let r = t3_verify().unwrap();
    verdict(
        5,
        "T(3) acyclicity",
        r.pass(),
        &format!("cochains {:?}, cohomology {:?}", r.cochain_dims, r.cohomology_dims),
    );
}

#[test]
fn criterion_06_phi_cocycle() {
    let r = phi_cocycle_check(&rs("A1"), 2).unwrap();
    verdict(
        6,
        "phi cocycle",
        r.pass(),
        &format!("dim C^1 = {}, d phi = 0: {}, dim H^2(q^2) = {}", r.c1_dim, r.d_phi_zero, r.h2_q2),
    );
}

#[test]
fn criterion_07_bgg_positive() {
    let data = current_algebra_data(&rs("A1"), &CoefficientSpec::PolyX, Trunc::new(8, 0)).unwrap();
    let r = MacdonaldEngine::new().verify_bgg(&data, &w(&[4])).unwrap();
    let bad: Vec<String> = r.rows.iter().filter_map(|row| row.failure.clone()).collect();
    verdict(7, "BGG positive control", r.pass() && r.rows.len() == 25, &format!("{} rows, failures {bad:?}", r.rows.len()));
}

#[test]
fn criterion_08_bgg_negative() {
    let data = current_algebra_data(&rs("A1"), &CoefficientSpec::PolyXy, Trunc::new(6, 0)).unwrap();
    let r = MacdonaldEngine::new().verify_bgg(&data, &w(&[2])).unwrap();
    let fails: Vec<String> = r.rows.iter().filter_map(|row| row.failure.clone()).collect();
    verdict(8, "BGG negative control", !fails.is_empty(), &format!("FAIL rows: {fails:?}"));
}

#[test]
fn criterion_09_classical_normalization() {
    let t = Trunc::new(0, 0);
    let mut bad = Vec::new();
    for label in ["A1", "A2"] {
        let r = rs(label);
        let data = classical_data(&r, t).unwrap();
        let three = Rational::from_integer(3.into());
        let weights: Vec<Weight> = r
            .dominant_weights_in_box(&Weight(vec![6; r.rank()]))
            .into_iter()
            .filter(|l| r.height(l) <= three)
            .collect();
        for a in &weights {
            for b in &weights {
                let v = pair(&data, &schur_char(&r, a, t).unwrap(), &schur_char(&r, b, t).unwrap()).unwrap();
                let want = if a == b { Rational::one() } else { Rational::zero() };
                if v.coeff(0, 0) != want {
                    bad.push(format!("{label} {a} {b}: {v}"));
                }
            }
        }
    }
    verdict(9, "pairing normalization", bad.is_empty(), &format!("mismatches {bad:?}"));
}

#[test]
fn criterion_10_two_paths() {
    let r = rs("A1");
    let t = Trunc::new(6, 3);
    let data = current_algebra_data(&r, &CoefficientSpec::PolyXXi, t).unwrap();
    let k = qt_root_product(&r, t);
    let pre = qt_prefactor(1, t).unwrap();
    let half = Rational::new(1.into(), 2.into());
    let basis: Vec<CharElement> = (0..=2).map(|m| monomial_sym(&r, &w(&[m]), t).unwrap()).collect();
    let mut bad = Vec::new();
    for f in &basis {
        for g in &basis {
            let kernel_path = pair(&data, f, g).unwrap();
            let ct = (f * &g.bar()).constant_term_of_product(&k).scale(&half);
            let product_path = (&pre * &ct).retruncate(t);
            if kernel_path != product_path || macdonald_qt_pair(&r, f, g).is_err() {
                bad.push(format!("{kernel_path} vs {product_path}"));
            }
        }
    }
    verdict(10, "two-path consistency", bad.is_empty(), &format!("disagreements {bad:?}"));
}
