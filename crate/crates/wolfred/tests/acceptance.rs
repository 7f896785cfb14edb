//! Acceptance suite: one test per criterion, each printing a pass line with
//! its measured figures (run with `--nocapture` to see them). Tolerances
//! are pinned in the assertions.

use num_rational::BigRational;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::time::Instant;
use wolfred::algebra::g2::{g2_algebra_basis, is_g2_algebra_element};
use wolfred::algebra::{moufang_residuals, multiply, Algebra, AlgebraElement, SevenVector};
use wolfred::lie::{exp, frob, matrix_of_two_form, two_form_of, GroupElement, Sig, SkewAdjoint};
use wolfred::linalg::Mat7;
use wolfred::moment::flow::{flow, FlowOptions, FlowOutcome};
use wolfred::moment::sample::{
    engineered_zero_locus_point, moment_differential_rank, sample_zero_locus_canonical,
};
use wolfred::moment::{energy, energy_gradient, moment, moment_differential, moment_explicit};
use wolfred::orbit::exact::{canonical_vector_field_exact, classify_exact};
use wolfred::orbit::types::{FamilyLabel, FamilyName, IndecomposableType, SignTag, TypeSum};
use wolfred::orbit::{
    classify, family_label, family_representative, family_representative_sum, is_proper_free,
    ParamVal, Properness, DEFAULT_TOL,
};
use wolfred::orbit::QuadExt;
use wolfred::scalar::{rat, Rational128};

fn random_skew(sig: Sig, rng: &mut impl Rng, scale: f64) -> SkewAdjoint {
    let mut m = Mat7::zeros();
    for i in 0..7 {
        for j in (i + 1)..7 {
            let v = rng.gen_range(-1.0..1.0) * scale;
            let s = sig.eta_i(i) * sig.eta_i(j);
            m[(i, j)] = v;
            m[(j, i)] = -s * v;
        }
    }
    SkewAdjoint::new(sig, m).unwrap()
}

fn random_group(sig: Sig, rng: &mut impl Rng, scale: f64) -> GroupElement {
    exp(&random_skew(sig, rng, scale), 1.0)
}

/// Criterion 1: Moufang residuals, alternativity, and norm multiplicativity
/// hold exactly over the rationals and to <= 1e-12 relative over doubles,
/// for >= 10^4 random samples per algebra, in under 10 s.
#[test]
fn criterion_1_algebra_identities() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    const N: usize = 10_000;
    for alg in [Algebra::Octonion, Algebra::SplitOctonion] {
        // float mode
        let mut worst_rel: f64 = 0.0;
        for _ in 0..N {
            let e = |rng: &mut ChaCha8Rng| {
                AlgebraElement::<f64>::new(alg, std::array::from_fn(|_| rng.gen_range(-2.0..2.0)))
            };
            let (x, y, z) = (e(&mut rng), e(&mut rng), e(&mut rng));
            let scale4 = (1.0 + x.norm().abs()) * (1.0 + y.norm().abs()) * (1.0 + z.norm().abs());
            // norm multiplicativity
            let lhs = multiply(&x, &y).unwrap().norm();
            let rel = (lhs - x.norm() * y.norm()).abs() / scale4;
            worst_rel = worst_rel.max(rel);
            // alternativity
            let a = wolfred::algebra::associator(&x, &x, &y).unwrap();
            worst_rel = worst_rel.max(a.coords.iter().fold(0.0f64, |m, c| m.max(c.abs())) / scale4);
            // Moufang
            for r in moufang_residuals(&x, &y, &z).unwrap() {
                worst_rel =
                    worst_rel.max(r.coords.iter().fold(0.0f64, |m, c| m.max(c.abs())) / scale4);
            }
        }
        assert!(worst_rel <= 1e-12, "{alg:?} float residual {worst_rel:.3e}");
        // exact rational mode: the identities are multilinear (Moufang and
        // the associator term-by-term 4- and 3-linear, norm multiplicativity
        // quartic), so a rational sample with denominators dividing 420
        // holds exactly iff the 420-scaled integer sample does; integer
        // coordinates keep the exact check fast
        for _ in 0..N {
            let e = |rng: &mut ChaCha8Rng| {
                AlgebraElement::<i128>::new(
                    alg,
                    std::array::from_fn(|_| {
                        let num = rng.gen_range(-9i128..=9);
                        let den = rng.gen_range(1i128..=7);
                        num * (420 / den)
                    }),
                )
            };
            let (x, y, z) = (e(&mut rng), e(&mut rng), e(&mut rng));
            assert_eq!(
                multiply(&x, &y).unwrap().norm(),
                x.norm() * y.norm(),
                "exact norm multiplicativity"
            );
            assert!(wolfred::algebra::associator(&x, &x, &y).unwrap().is_zero());
            for r in moufang_residuals(&x, &y, &z).unwrap() {
                assert!(r.is_zero(), "exact Moufang residual");
            }
        }
        // plus a direct rational-arithmetic sample, unscaled
        for _ in 0..500 {
            let e = |rng: &mut ChaCha8Rng| {
                AlgebraElement::<Rational128>::new(
                    alg,
                    std::array::from_fn(|_| {
                        Rational128::new(rng.gen_range(-9..=9), rng.gen_range(1..=7))
                    }),
                )
            };
            let (x, y, z) = (e(&mut rng), e(&mut rng), e(&mut rng));
            assert_eq!(multiply(&x, &y).unwrap().norm(), x.norm() * y.norm());
            for r in moufang_residuals(&x, &y, &z).unwrap() {
                assert!(r.is_zero());
            }
        }
    }
    let dt = start.elapsed();
    assert!(dt.as_secs_f64() < 10.0, "runtime {dt:?} exceeds 10 s");
    println!("[PASS] criterion 1: algebra identities, 2x{N} samples/algebra in {dt:.2?}");
}

/// Criterion 2: the g2(V) linear system has a 14-dimensional solution space
/// for both algebras, closed under bracket to <= 1e-12.
#[test]
fn criterion_2_g2_dimension_and_closure() {
    for alg in [Algebra::Octonion, Algebra::SplitOctonion] {
        let basis = g2_algebra_basis(alg);
        assert_eq!(basis.len(), 14);
        let flat = nalgebra::DMatrix::from_fn(49, 14, |r, c| basis[c][(r / 7, r % 7)]);
        assert_eq!(wolfred::linalg::rank_tol(&flat, 1e-9), 14, "{alg:?} dimension");
        let mut worst: f64 = 0.0;
        for x in &basis {
            for y in &basis {
                let br = x * y - y * x;
                assert!(is_g2_algebra_element(&br, alg, 1e-12));
                let res = wolfred::algebra::g2::g2_algebra_residuals(&br, alg);
                worst = worst.max(res.iter().fold(0.0f64, |m, r| m.max(r.abs())));
            }
        }
        assert!(worst <= 1e-12, "{alg:?} closure residual {worst:.3e}");
    }
    println!("[PASS] criterion 2: dim g2 = 14 and bracket closure <= 1e-12, both signatures");
}

/// Criterion 3: the two moment-map routes agree to <= 1e-10 over 10^3
/// random (two-form, group element) pairs in both signatures.
#[test]
fn criterion_3_moment_dual_path() {
    let mut worst: f64 = 0.0;
    for sig in [Sig::Compact, Sig::Split] {
        let mut rng = ChaCha8Rng::seed_from_u64(1003);
        for _ in 0..1000 {
            let v = random_skew(sig, &mut rng, 1.0);
            let w = two_form_of(&v);
            let g = random_group(sig, &mut rng, 0.8);
            let lhs = moment(&matrix_of_two_form(&w), &g).unwrap();
            let rhs = moment_explicit(&w, &g);
            worst = worst.max((lhs - rhs).norm());
        }
    }
    assert!(worst <= 1e-10, "dual-path residual {worst:.3e}");
    println!("[PASS] criterion 3: moment dual path, max residual {worst:.3e} over 2x1000 pairs");
}

/// Criterion 4: 10^3 sampled points of T_x G2(V) SO(3) have moment residual
/// <= 1e-9, in the compact case and the split timelike case.
#[test]
fn criterion_4_zero_locus_sampling() {
    let mut worst: f64 = 0.0;
    for (alg, x) in [
        (Algebra::Octonion, [1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
        (Algebra::SplitOctonion, [0.6, 0.8, 0.0, 0.0, 0.0, 0.0, 0.0]),
    ] {
        let x = SevenVector::new(alg, x);
        let pts = sample_zero_locus_canonical(&x, 1000, 1004, 1e-9).unwrap();
        assert_eq!(pts.len(), 1000);
        let m = pts.iter().map(|p| p.residual).fold(0.0f64, f64::max);
        assert!(m <= 1e-9, "{alg:?} residual {m:.3e}");
        worst = worst.max(m);
    }
    println!("[PASS] criterion 4: zero-locus sampling, max residual {worst:.3e} over 2x1000 points");
}

/// Criterion 5: the classification of the canonical generator reproduces
/// the three case results exactly (exact rational path).
#[test]
fn criterion_5_canonical_action_types() {
    let sv = |c: [i64; 7]| {
        SevenVector::<BigRational>::new(
            Algebra::SplitOctonion,
            std::array::from_fn(|i| rat(c[i], 1)),
        )
    };
    let one = ParamVal::from_exact(QuadExt::from_integer(1));
    let zero = ParamVal::from_exact(QuadExt::from_integer(0));
    let cases = [
        (
            [1, 0, 0, 0, 0, 0, 0],
            TypeSum::new(vec![
                IndecomposableType::imag_pair(0, SignTag::Plus, one.clone()),
                IndecomposableType::imag_pair(0, SignTag::Minus, one.clone()),
                IndecomposableType::imag_pair(0, SignTag::Minus, one.clone()),
                IndecomposableType::zero(0, SignTag::Plus),
            ]),
            "timelike",
        ),
        (
            [0, 0, 0, 1, 0, 0, 0],
            TypeSum::new(vec![
                IndecomposableType::real_pair(0, one.clone()),
                IndecomposableType::real_pair(0, one.clone()),
                IndecomposableType::real_pair(0, one.clone()),
                IndecomposableType::zero(0, SignTag::Minus),
            ]),
            "spacelike",
        ),
        (
            [1, 0, 0, 0, 1, 0, 0],
            TypeSum::new(vec![
                IndecomposableType::real_pair(1, zero),
                IndecomposableType::zero(2, SignTag::Plus),
            ]),
            "lightlike",
        ),
    ];
    for (coords, expected, name) in cases {
        let ax = canonical_vector_field_exact(&sv(coords));
        let ts = classify_exact(&ax, Sig::Split).unwrap().expect("exact path");
        assert!(
            ts.approx_eq(&expected, 0.0),
            "{name}: got {ts}, want {expected}"
        );
        println!("  {name}: {ts}");
    }
    println!("[PASS] criterion 5: canonical-action types match in all three causal cases");
}

fn admissible_draw(name: FamilyName, rng: &mut impl Rng) -> Vec<ParamVal> {
    // parameters in [0.3, 3.0], pairwise separated by at least 0.15
    let n = name.param_count();
    let mut vals: Vec<f64> = Vec::new();
    while vals.len() < n {
        let v = rng.gen_range(0.3..3.0);
        if vals.iter().all(|w| (w - v).abs() > 0.15) {
            vals.push(v);
        }
    }
    vals.into_iter().map(ParamVal::from_f64).collect()
}

/// Criterion 6: classification round-trip for all 24 families, 5 random
/// admissible draws each, stable under conjugation by 100 random group
/// elements, parameters to <= 1e-6, in under 60 s.
#[test]
fn criterion_6_classification_round_trip() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1006);
    for name in FamilyName::ALL {
        for _ in 0..5 {
            let params = admissible_draw(name, &mut rng);
            let fl = FamilyLabel { name, params };
            let want = family_representative_sum(fl.name, &fl.params).unwrap();
            let a = family_representative(&fl).unwrap();
            let ts = classify(&a, DEFAULT_TOL)
                .unwrap_or_else(|e| panic!("{name:?}: classify: {e}"));
            assert!(ts.approx_eq(&want, 1e-6), "{name:?}: {ts} vs {want}");
            let fl2 = family_label(&ts).unwrap();
            assert_eq!(fl2.name, name);
            for _ in 0..100 {
                let z = random_skew(Sig::Split, &mut rng, 1.0);
                let z = z.scale(rng.gen_range(0.0..2.0) / z.norm().max(1e-9));
                let g = exp(&z, 1.0);
                let conj = g.adjoint(&a).unwrap();
                let tsc = classify(&conj, DEFAULT_TOL)
                    .unwrap_or_else(|e| panic!("{name:?} conjugated: {e}"));
                assert!(
                    tsc.approx_eq(&want, 1e-6),
                    "{name:?} conjugated: {tsc} vs {want}"
                );
            }
        }
    }
    let dt = start.elapsed();
    assert!(dt.as_secs_f64() < 60.0, "runtime {dt:?} exceeds 60 s");
    println!("[PASS] criterion 6: 24 families x 5 draws x 100 conjugations in {dt:.2?}");
}

/// Criterion 7: properness predicates on the named fixtures.
#[test]
fn criterion_7_properness_predicates() {
    // non-IV4 fixtures are proper and free
    for (name, params) in [
        (FamilyName::I1, vec![]),
        (FamilyName::II3, vec![1.5]),
        (FamilyName::III6, vec![0.7, 2.1]),
        (FamilyName::IV5, vec![1.0, 2.0, 3.0]),
    ] {
        let fl = FamilyLabel {
            name,
            params: params.into_iter().map(ParamVal::from_f64).collect(),
        };
        assert_eq!(is_proper_free(&fl), Properness::ProperFree, "{name:?}");
    }
    // IV4(1,2,3): proper, irregular-free
    let fl = FamilyLabel {
        name: FamilyName::IV4,
        params: [1, 2, 3]
            .iter()
            .map(|v| ParamVal::from_exact(QuadExt::from_integer(*v)))
            .collect(),
    };
    match is_proper_free(&fl) {
        Properness::Iv4Proper { normalized, distinct, irregular_points, .. } => {
            assert_eq!(normalized, Some([1, 2, 3]));
            assert!(distinct && !irregular_points);
        }
        other => panic!("IV4(1,2,3): {other:?}"),
    }
    // IV4(1,1,1): proper, with irregular points
    let fl = FamilyLabel {
        name: FamilyName::IV4,
        params: vec![ParamVal::from_f64(1.0); 3],
    };
    match is_proper_free(&fl) {
        Properness::Iv4Proper { irregular_points, distinct, .. } => {
            assert!(irregular_points && !distinct);
        }
        other => panic!("IV4(1,1,1): {other:?}"),
    }
    // IV4(1, sqrt 2, 1) under exact symbolic input: not proper
    let fl = FamilyLabel {
        name: FamilyName::IV4,
        params: vec![
            ParamVal::from_exact(QuadExt::from_integer(1)),
            ParamVal::from_exact(QuadExt::sqrt_rational(&rat(2, 1)).unwrap()),
            ParamVal::from_exact(QuadExt::from_integer(1)),
        ],
    };
    match is_proper_free(&fl) {
        Properness::Iv4NotProper { exact, .. } => assert!(exact),
        other => panic!("IV4(1, sqrt2, 1): {other:?}"),
    }
    println!("[PASS] criterion 7: properness predicates on all named fixtures");
}

/// Criterion 8: moment differential and energy gradient match central
/// finite differences (h = 1e-5) to <= 1e-6 relative over 10^3 random
/// configurations; gradient flow on SO(7) reaches E <= 1e-8 from at least
/// 95 of 100 random starts with monotone energy.
#[test]
fn criterion_8_calculus_and_flow() {
    let mut rng = ChaCha8Rng::seed_from_u64(1008);
    let h = 1e-5;
    let mut worst_d: f64 = 0.0;
    let mut worst_g: f64 = 0.0;
    for i in 0..1000 {
        let sig = if i % 2 == 0 { Sig::Compact } else { Sig::Split };
        let v = random_skew(sig, &mut rng, 1.0);
        let g = random_group(sig, &mut rng, 0.7);
        let w = random_skew(sig, &mut rng, 1.0);
        // moment differential
        let d = moment_differential(&v, &g, &w).unwrap();
        let fd = (moment(&v, &g.compose(&exp(&w, h)).unwrap()).unwrap()
            - moment(&v, &g.compose(&exp(&w, -h)).unwrap()).unwrap())
            / (2.0 * h);
        worst_d = worst_d.max((d - fd).norm() / (1.0 + d.norm()));
        // energy gradient
        let grad = energy_gradient(&v, &g).unwrap();
        let an = frob(&grad, &w);
        let ep = energy(&v, &g.compose(&exp(&w, h)).unwrap()).unwrap();
        let em = energy(&v, &g.compose(&exp(&w, -h)).unwrap()).unwrap();
        let fd = (ep - em) / (2.0 * h);
        worst_g = worst_g.max((an - fd).abs() / (1.0 + an.abs()));
    }
    assert!(worst_d <= 1e-6, "moment differential residual {worst_d:.3e}");
    assert!(worst_g <= 1e-6, "energy gradient residual {worst_g:.3e}");
    // flow on the compact group
    let mut converged = 0;
    for _ in 0..100 {
        let v = random_skew(Sig::Compact, &mut rng, 1.0);
        let g0 = random_group(Sig::Compact, &mut rng, 1.0);
        let opts = FlowOptions { tol: 1e-8, record: true, ..FlowOptions::default() };
        let res = flow(&v, &g0, &opts).unwrap();
        for w in res.trajectory.windows(2) {
            assert!(w[1].energy <= w[0].energy + 1e-15, "energy must not increase");
        }
        if res.outcome == FlowOutcome::Converged {
            converged += 1;
        }
    }
    assert!(converged >= 95, "only {converged}/100 flows converged");
    println!(
        "[PASS] criterion 8: differentials {worst_d:.2e}/{worst_g:.2e}, flow converged {converged}/100"
    );
}

/// Criterion 9: on 10^3 engineered zero-locus points, the moment
/// differential drops rank exactly at the irregular points.
#[test]
fn criterion_9_critical_set_lemma() {
    let mut rng = ChaCha8Rng::seed_from_u64(1009);
    let tol = 1e-8;
    for i in 0..1000 {
        let sig = if i % 2 == 0 { Sig::Compact } else { Sig::Split };
        let irregular = i % 3 == 0;
        let (v, g) = engineered_zero_locus_point(sig, &mut rng, irregular);
        // confirm the point is on the zero locus
        assert!(moment(&v, &g).unwrap().norm() <= 1e-9);
        let u = g.inverse().adjoint(&v).unwrap();
        let p = wolfred::lie::split(&u);
        let m_norm = (0.5 * (p.m * p.m.transpose()).trace()).sqrt();
        let rank = moment_differential_rank(&v, &g, tol);
        if m_norm <= tol {
            assert!(rank < 3, "irregular point with full rank (|u_m| = {m_norm:.3e})");
        } else {
            assert_eq!(rank, 3, "regular point with rank deficiency (|u_m| = {m_norm:.3e})");
        }
    }
    println!("[PASS] criterion 9: rank(d mu) < 3 exactly on the irregular stratum, 1000 points");
}
