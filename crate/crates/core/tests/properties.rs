mod common;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use toral::conjugacy::{decide_conjugacy, similarity_invariants, verify_conjugacy, ConjugacyStatus};
use toral::dynamics::{
    count_fixed_points, kronecker_witness, leaf_density_scan, period_of, replay_witness, unstable_frame,
    FixedPointCount, KroneckerOutcome, RationalPoint,
};
use toral::factor::{cyclotomic, cyclotomic_divisors, euler_phi, factor_over_q};
use toral::fixtures::{automorphism_names, fixture};
use toral::foliation::{classify_foliation, decomposition_report, rational_hull, FactorRole, SpectrumPart};
use toral::forms::solve_invariant_form;
use toral::lattice::{dot, smith_normal_form};
use toral::matrix::{companion, is_symplectic};
use toral::reciprocal::{lift_cubic, reciprocal_reduce};
use toral::roots::{isolate_real_roots, sturm_count, unit_circle_root_count};
use toral::spectral::{bowen_entropy, is_ergodic, spectrum_trichotomy};
use toral::{IntMatrix, IntPoly};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

fn small_poly(max_deg: usize) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-6i64..=6, 2..=max_deg + 1)
        .prop_map(|c| IntPoly::from_i64(&c))
        .prop_filter("nonconstant", |p| p.degree() >= 1)
}

fn monic_poly(max_deg: usize) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-9i64..=9, 1..=max_deg).prop_map(|mut c| {
        c.push(1);
        IntPoly::from_i64(&c)
    })
}

/// Unimodular matrix with simple spectrum, from a seeded random word.
fn simple_unimodular(seed: u64, n: usize) -> IntMatrix {
    let mut r = common::rng(seed);
    loop {
        let a = common::random_unimodular(&mut r, n, 8);
        if a.char_poly().is_squarefree() {
            return a;
        }
    }
}

fn symplectic_sample(seed: u64) -> IntMatrix {
    let mut r = common::rng(seed);
    loop {
        let w = common::random_symplectic_word(&mut r, 3, 10);
        let h = common::random_unimodular(&mut r, 6, 3);
        let a = common::conjugate(&h, &w);
        if a.char_poly().is_squarefree() {
            return a;
        }
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn trichotomy_counts_sum_to_degree(p in small_poly(6)) {
        prop_assume!(p.is_squarefree() && !p.coeff(0).is_zero());
        if let Ok(c) = unit_circle_root_count(&p) {
            prop_assert_eq!(c.total(), p.degree());
        }
    }

    #[test]
    fn lift_reduce_round_trip(a in -20i64..=20, b in -20i64..=20, c in -20i64..=20) {
        let z = IntPoly::from_i64(&[c, b, a, 1]);
        prop_assert_eq!(reciprocal_reduce(&lift_cubic(a, b, c)).unwrap(), z);
    }

    #[test]
    fn factors_multiply_back(p in small_poly(7)) {
        let factors = factor_over_q(&p);
        let mut prod = IntPoly::constant(p.content() * p.lead().signum());
        for (f, k) in &factors {
            prop_assert!(f.lead().is_positive());
            prop_assert!(f.content().is_one());
            prod = &prod * &f.pow(*k);
        }
        prop_assert_eq!(prod, p);
    }

    #[test]
    fn sturm_counts_known_real_roots(roots in prop::collection::btree_set(-9i64..=9, 0..=4),
                                     squares in prop::collection::btree_set(1i64..=5, 0..=2)) {
        // distinct integer roots times irreducible x^2 + c factors
        let mut p = IntPoly::one();
        for r in &roots {
            p = &p * &IntPoly::linear_root(*r);
        }
        for c in &squares {
            p = &p * &IntPoly::from_i64(&[*c, 0, 1]);
        }
        prop_assume!(p.degree() >= 1);
        let b = p.root_bound();
        prop_assert_eq!(sturm_count(&p, &(-b.clone()), &b).unwrap(), roots.len());
        prop_assert_eq!(isolate_real_roots(&p).unwrap().len(), roots.len());
    }

    #[test]
    fn companion_char_poly_round_trip(p in monic_poly(8)) {
        prop_assert_eq!(companion(&p).unwrap().char_poly(), p);
    }

    #[test]
    fn char_poly_at_zero_is_signed_det(seed in any::<u64>(), n in 1usize..=5) {
        let mut r = common::rng(seed);
        let mut a = common::random_unimodular(&mut r, n.max(2), 5);
        a[(0, 0)] += BigInt::from(seed % 7);
        let sign = if a.rows() % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        prop_assert_eq!(a.char_poly().coeff(0), sign * a.det());
    }

    #[test]
    fn smith_form_properties(entries in prop::collection::vec(-9i64..=9, 9), rows in 1usize..=3) {
        let cols = 9 / 3;
        let m = IntMatrix::from_rows(
            entries.chunks(cols).take(rows).map(|c| c.iter().map(|&x| BigInt::from(x)).collect()).collect(),
        ).unwrap();
        let s = smith_normal_form(&m);
        prop_assert_eq!(&(&s.u * &m) * &s.v, s.d.clone());
        prop_assert!(s.u.det().abs().is_one() && s.v.det().abs().is_one());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero()));
        }
        prop_assert!(diag.iter().all(|d| !d.is_negative()));
        if rows == cols {
            prop_assert_eq!(diag.iter().product::<BigInt>(), m.det().abs());
        }
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn symplectic_matrices_have_palindromic_char_poly(seed in any::<u64>()) {
        let a = symplectic_sample(seed);
        let forms = solve_invariant_form(&a);
        for j in &forms.basis {
            prop_assert!(j.is_skew());
            prop_assert_eq!(&(&a.transpose() * j) * &a, j.clone());
        }
        let j = forms.nondegenerate.expect("nondegenerate form");
        prop_assert_eq!(is_symplectic(&a, &j), Ok(true));
        prop_assert!(a.char_poly().is_self_reciprocal());
        let d = spectrum_trichotomy(&a).unwrap().dims;
        prop_assert_eq!(d.stable, d.unstable);
        prop_assert_eq!(d.total(), 6);
    }

    #[test]
    fn entropy_inverse_and_powers(seed in any::<u64>(), n in 2usize..=4) {
        let a = simple_unimodular(seed, n);
        let h = bowen_entropy(&a, 1e-9).unwrap();
        let inv = bowen_entropy(&a.inverse_unimodular().unwrap(), 1e-9).unwrap();
        prop_assert!((h.value - inv.value).abs() <= 2.0 * h.error_bound.max(inv.error_bound) + 1e-12);
        for k in [2u32, 3] {
            let ak = a.pow(k);
            if !ak.char_poly().is_squarefree() {
                continue;
            }
            let hk = bowen_entropy(&ak, 1e-9).unwrap();
            prop_assert!((hk.value - k as f64 * h.value).abs() <= 1e-8, "{} vs {}", hk.value, h.value);
        }
    }

    #[test]
    fn ergodic_maps_have_finitely_many_periodic_points(seed in any::<u64>(), n in 2usize..=4) {
        let a = simple_unimodular(seed, n);
        prop_assume!(is_ergodic(&a));
        for k in 1..=12 {
            prop_assert!(matches!(count_fixed_points(&a, k).unwrap(), FixedPointCount::Finite(c) if !c.is_zero()));
        }
    }

    #[test]
    fn fixed_point_count_matches_smith(seed in any::<u64>(), n in 2usize..=5, k in 1u32..=4) {
        let mut r = common::rng(seed);
        let a = common::random_unimodular(&mut r, n, 6);
        let m = &a.pow(k) - &IntMatrix::identity(n);
        let smith: BigInt = smith_normal_form(&m).diagonal().iter().product::<BigInt>().abs();
        let det = common::laplace_det(&m.to_rows()).abs();
        prop_assert_eq!(&det, &smith);
        let expected = if det.is_zero() { FixedPointCount::Infinite } else { FixedPointCount::Finite(det) };
        prop_assert_eq!(count_fixed_points(&a, k).unwrap(), expected);
    }

    #[test]
    fn foliation_is_a_conjugacy_invariant(seed in any::<u64>(), which in 0usize..7) {
        let name = automorphism_names().nth(which).unwrap();
        let a = fixture(name).unwrap();
        let mut r = common::rng(seed);
        let h = common::random_unimodular(&mut r, 6, 4);
        let b = common::conjugate(&h, &a);
        let va = classify_foliation(&a).unwrap();
        let vb = classify_foliation(&b).unwrap();
        prop_assert_eq!(va.kind, vb.kind);
        prop_assert_eq!(va.closure_dim, vb.closure_dim);
        prop_assert_eq!(vb.closure_dim + vb.resonance_basis.len(), 6);
        for rel in &vb.resonance_basis {
            for v in &vb.hull_basis {
                prop_assert!(dot(rel, v).is_zero());
            }
        }
        prop_assert_eq!(similarity_invariants(&a), similarity_invariants(&b));
    }

    #[test]
    fn hull_and_decomposition_consistency(seed in any::<u64>()) {
        let a = symplectic_sample(seed);
        let split = spectrum_trichotomy(&a).unwrap();
        let report = decomposition_report(&a).unwrap();
        prop_assert_eq!(report.factors.iter().map(|f| f.sublattice.len()).sum::<usize>(), 6);
        for (block, fs) in report.factors.iter().zip(&split.factors) {
            if block.role == FactorRole::Anosov {
                prop_assert_eq!(fs.counts.on, 0);
            }
            let fa = a.eval_poly(&block.factor);
            for v in &block.sublattice {
                prop_assert!(fa.mul_vec(v).iter().all(Zero::is_zero));
            }
        }
        if let Some(k) = report.center_order {
            // crystallographic restriction: orders 1, 2, 3, 4, 6 in dimension 2
            let center_dim: usize = report.factors.iter()
                .filter(|f| f.role == FactorRole::Center)
                .map(|f| f.sublattice.len())
                .sum();
            prop_assert!(euler_phi(u64::from(k)) as usize <= center_dim);
            if center_dim == 2 {
                prop_assert!([1, 2, 3, 4, 6].contains(&k));
            }
        }
        if split.dims.unstable == 2 && split.dims.stable == 2 {
            let v = classify_foliation(&a).unwrap();
            prop_assert!(v.closure_dim == 4 || v.closure_dim == 6, "closure {}", v.closure_dim);
        }
        if split.dims.unstable > 0 {
            prop_assert!(rational_hull(&a, SpectrumPart::Unstable).unwrap().dim >= split.dims.unstable);
        }
    }

    #[test]
    fn conjugacy_verdicts_are_sound(seed in any::<u64>(), which in 0usize..7) {
        let name = automorphism_names().nth(which).unwrap();
        let a = fixture(name).unwrap();
        let mut r = common::rng(seed);
        let b = common::conjugate(&common::random_unimodular(&mut r, 6, 3), &a);
        let v = decide_conjugacy(&a, &b, 2).unwrap();
        prop_assert_ne!(v.status, ConjugacyStatus::Distinct);
        if let Some(h) = &v.witness {
            prop_assert!(verify_conjugacy(&a, &b, h));
        }
        if v.status == ConjugacyStatus::Conjugate {
            let ea = bowen_entropy(&a, 1e-9).unwrap().value;
            let eb = bowen_entropy(&b, 1e-9).unwrap().value;
            prop_assert!((ea - eb).abs() <= 2e-9);
            prop_assert_eq!(is_ergodic(&a), is_ergodic(&b));
            prop_assert_eq!(spectrum_trichotomy(&a).unwrap().dims, spectrum_trichotomy(&b).unwrap().dims);
        }
    }

    #[test]
    fn distinct_verdicts_name_a_real_difference(i in 0usize..7, j in 0usize..7) {
        prop_assume!(i != j);
        let a = fixture(automorphism_names().nth(i).unwrap()).unwrap();
        let b = fixture(automorphism_names().nth(j).unwrap()).unwrap();
        let v = decide_conjugacy(&a, &b, 2).unwrap();
        if v.status == ConjugacyStatus::Distinct {
            let named = v.separating_invariant.unwrap();
            let recomputed = similarity_invariants(&a).first_difference(&similarity_invariants(&b));
            prop_assert_eq!(Some(named), recomputed);
        }
    }

    #[test]
    fn periods_replay(seed in any::<u64>(), q in 2i64..=40) {
        let a = fixture("companion-2re").unwrap();
        let mut r = common::rng(seed);
        use rand::Rng;
        let nums: Vec<i64> = (0..6).map(|_| r.gen_range(0..q)).collect();
        let x = RationalPoint::from_i64(&nums, q).unwrap();
        let k = period_of(&a, &x).unwrap();
        let qb = &x.denominator;
        let back = |m: &IntMatrix| -> bool {
            let img = m.mul_vec(&x.numerators);
            img.iter().zip(&x.numerators).all(|(y, v)| ((y - v) % qb).is_zero())
        };
        prop_assert!(back(&a.pow(k as u32)));
        for j in 1..k.min(200) {
            prop_assert!(!back(&a.pow(j as u32)));
        }
    }

    #[test]
    fn kronecker_witnesses_replay(t in prop::collection::vec(0.0f64..1.0, 6)) {
        let a = fixture("companion-2com-b").unwrap();
        let eps = 0.1;
        match kronecker_witness(&a, &t, eps, 50_000_000).unwrap() {
            KroneckerOutcome::Witness { t: s, p, residual } => {
                let frame = unstable_frame(&a).unwrap();
                prop_assert!(replay_witness(&frame, &t, s, &p) <= eps);
                prop_assert!(residual <= eps);
            }
            KroneckerOutcome::Obstruction(_) => prop_assert!(false, "transitive map has no relations"),
        }
    }

    #[test]
    fn density_scan_is_deterministic(seed in any::<u64>()) {
        let a = fixture("companion-2com-a").unwrap();
        let s1 = leaf_density_scan(&a, 2, 2_000, seed).unwrap();
        let s2 = leaf_density_scan(&a, 2, 2_000, seed).unwrap();
        prop_assert_eq!(s1, s2);
    }
}

#[test]
fn cyclotomic_polynomials_detect_themselves() {
    for k in 1..=60u64 {
        if euler_phi(k) <= 8 {
            assert_eq!(cyclotomic_divisors(&cyclotomic(k)), vec![k], "k = {k}");
        }
    }
}

#[test]
fn fixtures_are_fully_covered_at_coarse_resolution() {
    for name in automorphism_names() {
        let a = fixture(name).unwrap();
        if classify_foliation(&a).unwrap().kind == toral::foliation::FoliationKind::Transitive {
            let scan = leaf_density_scan(&a, 2, 100_000, 3).unwrap();
            assert_eq!(scan.coverage, 1.0, "{name}");
        }
    }
}

#[test]
fn unit_circle_count_with_rational_endpoints() {
    // roots 1/2, 2 and 1 on the non-palindromic path
    let q = &(&IntPoly::from_i64(&[-1, 2]) * &IntPoly::from_i64(&[-2, 1])) * &IntPoly::from_i64(&[-1, 1]);
    let c = unit_circle_root_count(&q).unwrap();
    assert_eq!((c.inside, c.on, c.outside), (1, 1, 1));
}
