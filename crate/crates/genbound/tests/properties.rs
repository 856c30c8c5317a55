//! Property tests for the invariants of each module.

use genbound::chain::{
    boundary, boundary_summands, chain_add, chain_scale, terms_agree, Chain, CoefficientTuple, RingSpec, SingularTerm,
};
use genbound::comfort::lambda_lift;
use genbound::geometry::{
    center, center_value, classify, int, min_value, project_boundary, project_layer, rat, segment_eval, BaryPoint,
    Rational, Region,
};
use genbound::homology_point::{homology_formula, homology_from_maps, point_boundary_map, point_homology, ScalarMap};
use genbound::pl1d::{eta, kappa, phi_n0, PLMap};
use genbound::sampling::{cross_samples, multi_zero_samples, random_plmap, sponge_lattice, Grid};
use genbound::theta::{face_delete, face_insert, transports_cross, FaceMap, ThetaFamily};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use std::sync::OnceLock;

fn family() -> &'static ThetaFamily {
    static FAMILY: OnceLock<ThetaFamily> = OnceLock::new();
    FAMILY.get_or_init(|| ThetaFamily::new(4))
}

/// A point of Δ_n from nonnegative integer weights.
fn point_from_weights(w: &[u32]) -> BaryPoint {
    let total: u64 = w.iter().map(|&v| v as u64).sum();
    let total = total.max(1);
    let mut coords: Vec<Rational> = w.iter().map(|&v| rat(v as i64, total as i64)).collect();
    if coords.iter().all(Zero::is_zero) {
        coords[0] = int(1);
    }
    BaryPoint::new(coords).expect("weights normalize into the simplex")
}

fn any_point(max_n: usize) -> impl Strategy<Value = BaryPoint> {
    (1..=max_n)
        .prop_flat_map(|n| prop::collection::vec(prop_oneof![Just(0u32), 0u32..40, 0u32..5000], n + 1))
        .prop_map(|w| point_from_weights(&w))
}

fn point_of_dim(n: usize) -> impl Strategy<Value = BaryPoint> {
    prop::collection::vec(prop_oneof![Just(0u32), 0u32..12, 0u32..5000], n + 1).prop_map(|w| point_from_weights(&w))
}

fn unit_rational() -> impl Strategy<Value = Rational> {
    (1i64..200).prop_flat_map(|q| (0..=q).prop_map(move |p| rat(p, q)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn points_lie_in_the_simplex(x in any_point(5)) {
        prop_assert!(x.coords().iter().all(|c| c >= &int(0)));
        prop_assert_eq!(x.coords().iter().sum::<Rational>(), int(1));
    }

    #[test]
    fn reconstruction_from_center_and_boundary(x in any_point(5)) {
        let n = x.dim();
        prop_assume!(x != center(n));
        let b = project_boundary(&x).unwrap();
        let t = min_value(&x) * int(n as i64 + 1);
        prop_assert_eq!(segment_eval(&center(n), &b, &t).unwrap(), x);
    }

    #[test]
    fn projection_onto_own_layer_is_identity(x in any_point(5)) {
        prop_assert_eq!(project_layer(&x, &min_value(&x)).unwrap(), x);
    }

    #[test]
    fn layers_lie_in_crosses(x in any_point(5), alpha in unit_rational()) {
        let n = x.dim();
        prop_assume!(alpha <= center_value(n));
        if classify(&x, &Region::Layer(alpha.clone())) {
            prop_assert!(classify(&x, &Region::Cross(alpha)));
        }
    }

    #[test]
    fn each_point_has_exactly_one_layer(x in any_point(5), other in unit_rational()) {
        let a = min_value(&x);
        prop_assert!(classify(&x, &Region::Layer(a.clone())));
        prop_assert_eq!(classify(&x, &Region::Layer(other.clone())), other == a);
    }

    #[test]
    fn polygons_are_strictly_increasing(seed in any::<u64>(), n in 1usize..6) {
        let f = random_plmap(&center_value(n), seed);
        let bps = f.breakpoints();
        for w in bps.windows(2) {
            prop_assert!(w[0].0 < w[1].0 && w[0].1 < w[1].1);
            let mid = (&w[0].0 + &w[1].0) / int(2);
            let fm = f.eval(&mid).unwrap();
            prop_assert!(w[0].1 < fm && fm < w[1].1);
        }
    }

    #[test]
    fn eta_and_kappa_are_symmetric(t in unit_rational()) {
        let s = int(1) - &t;
        prop_assert_eq!(eta().eval(&t).unwrap() + eta().eval(&s).unwrap(), int(1));
        prop_assert_eq!(kappa().eval(&t).unwrap() + kappa().eval(&s).unwrap(), int(1));
    }

    #[test]
    fn inverse_then_map_is_identity(seed in any::<u64>(), n in 1usize..6) {
        let f = random_plmap(&center_value(n), seed);
        let id = f.inverse().compose(&f).unwrap();
        prop_assert_eq!(id, PLMap::identity(&int(0), &center_value(n)));
    }

    #[test]
    fn phi_fixes_its_endpoints(n in 0usize..12) {
        let f = phi_n0(n);
        prop_assert_eq!(f.eval(&int(0)).unwrap(), int(0));
        prop_assert_eq!(f.eval(&center_value(n)).unwrap(), center_value(n));
    }

    #[test]
    fn lift_is_a_group_morphism(x in any_point(4), s1 in any::<u64>(), s2 in any::<u64>()) {
        let n = x.dim();
        let f = random_plmap(&center_value(n), s1);
        let g = random_plmap(&center_value(n), s2);
        let gf = lambda_lift(&g.compose(&f).unwrap(), n).unwrap();
        let (lf, lg) = (lambda_lift(&f, n).unwrap(), lambda_lift(&g, n).unwrap());
        prop_assert_eq!(gf.eval(&x).unwrap(), lg.eval(&lf.eval(&x).unwrap()).unwrap());
    }

    #[test]
    fn lift_inverse_law(x in any_point(4), seed in any::<u64>()) {
        let n = x.dim();
        let lift = lambda_lift(&random_plmap(&center_value(n), seed), n).unwrap();
        let y = lift.eval(&x).unwrap();
        prop_assert_eq!(y.coords().iter().sum::<Rational>(), int(1));
        prop_assert_eq!(lift.eval_inverse(&y).unwrap(), x.clone());
        prop_assert_eq!(lift.eval(&lift.eval_inverse(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn lift_fixes_the_center(n in 1usize..6, seed in any::<u64>()) {
        let lift = lambda_lift(&random_plmap(&center_value(n), seed), n).unwrap();
        prop_assert_eq!(lift.eval(&center(n)).unwrap(), center(n));
    }

    #[test]
    fn lift_preserves_fixed_values(x in any_point(4), seed in any::<u64>()) {
        let n = x.dim();
        let c = center_value(n);
        let f = random_plmap(&c, seed);
        let y = lambda_lift(&f, n).unwrap().eval(&x).unwrap();
        for (a, b) in x.coords().iter().zip(y.coords()) {
            let special = a.is_zero() || a == &c || a.is_one();
            let fixed = a <= &c && &f.eval(a).unwrap() == a;
            if special || fixed {
                prop_assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn lift_transports_crosses(n in 1usize..5, seed in any::<u64>(), k in 1i64..40) {
        let c = center_value(n);
        let f = random_plmap(&c, seed);
        let alpha = &c * rat(k, 41);
        let beta = f.eval(&alpha).unwrap();
        let lift = lambda_lift(&f, n).unwrap();
        for x in cross_samples(n, &alpha, 24, 6, seed) {
            let y = lift.eval(&x).unwrap();
            prop_assert!(transports_cross(&x, &y, &alpha, &beta), "{} -> {}", x, y);
        }
    }

    #[test]
    fn lift_preserves_equality_patterns(x in any_point(4), seed in any::<u64>()) {
        let n = x.dim();
        let y = lambda_lift(&random_plmap(&center_value(n), seed), n).unwrap().eval(&x).unwrap();
        for a in 0..=n {
            for b in 0..=n {
                prop_assert_eq!(x.coord(a) == x.coord(b), y.coord(a) == y.coord(b));
                prop_assert_eq!(x.coord(a) < x.coord(b), y.coord(a) < y.coord(b));
            }
        }
    }

    #[test]
    fn face_insert_respects_permutations(x in any_point(4), l in 0usize..2, pick in any::<u64>(), perm_seed in any::<u64>()) {
        let n = x.dim() + 1;
        let i = (pick as usize) % (l + 1);
        let j = (pick as usize / 2) % (n + 1);
        let key = FaceMap::new(l, n, i, j).unwrap();
        let mut perm: Vec<usize> = (0..x.dim() + 1).collect();
        let mut s = perm_seed;
        for k in (1..perm.len()).rev() {
            perm.swap(k, (s % (k as u64 + 1)) as usize);
            s /= k as u64 + 1;
        }
        let direct = face_delete(&key, &face_insert(&key, &x.permute(&perm)).unwrap()).unwrap();
        let permuted = face_delete(&key, &face_insert(&key, &x).unwrap()).unwrap().permute(&perm);
        prop_assert_eq!(direct, permuted);
        let y = face_insert(&key, &x.permute(&perm)).unwrap();
        prop_assert_eq!(y.coord(j), &key.value());
    }

    #[test]
    fn face_delete_is_a_left_inverse(x in any_point(5), l in 0usize..2, pick in any::<u64>()) {
        let n = x.dim() + 1;
        let key = FaceMap::new(l, n, (pick as usize) % (l + 1), (pick as usize / 2) % (n + 1)).unwrap();
        prop_assert_eq!(face_delete(&key, &face_insert(&key, &x).unwrap()).unwrap(), x);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn theta0_transports_its_cross(n in 2usize..5, seed in any::<u64>()) {
        let alpha = rat(1, 2 * (n as i64 + 1));
        let beta = rat(1, 2 * (n as i64 + 2));
        for x in cross_samples(n, &alpha, 24, 4, seed) {
            let y = family().eval(1, 0, &x).unwrap();
            prop_assert!(transports_cross(&x, &y, &alpha, &beta), "{} -> {}", x, y);
        }
    }

    #[test]
    fn theta1_transports_its_cross(n in 2usize..5, seed in any::<u64>()) {
        let alpha = rat(1, 2 * (n as i64 + 1));
        let beta = rat(1, 2 * n as i64 + 3);
        for x in cross_samples(n, &alpha, 24, 3, seed) {
            let y = family().eval(1, 1, &x).unwrap();
            prop_assert!(transports_cross(&x, &y, &alpha, &beta), "{} -> {}", x, y);
        }
    }

    #[test]
    fn theta1_is_consistent_across_faces(n in 2usize..5, seed in any::<u64>()) {
        for y in multi_zero_samples(n, 24, 4, seed) {
            let zeros: Vec<usize> = (0..=n).filter(|&k| y.coord(k).is_zero()).collect();
            let first = family().theta1_on_face(n, zeros[0], &y).unwrap();
            for &j in &zeros[1..] {
                prop_assert_eq!(&family().theta1_on_face(n, j, &y).unwrap(), &first);
            }
        }
    }

    #[test]
    fn theta_preserves_equality_patterns(x in point_of_dim(3), i in 0usize..2) {
        let y = family().eval(1, i, &x).unwrap();
        for a in 0..=3 {
            for b in 0..=3 {
                prop_assert_eq!(x.coord(a) == x.coord(b), y.coord(a) == y.coord(b));
                prop_assert_eq!(x.coord(a) < x.coord(b), y.coord(a) < y.coord(b));
            }
        }
    }
}

fn dim2_terms() -> Vec<SingularTerm> {
    let mut terms = vec![SingularTerm::identity(2), SingularTerm::point(2)];
    for i in 0..2 {
        for j in 0..4 {
            terms.push(SingularTerm::identity(3).face(1, i, j).unwrap());
        }
    }
    terms
}

fn small_chain(coeffs: &[i64]) -> Chain {
    let mut c = Chain::zero(RingSpec::Integers, 2);
    for (t, &k) in dim2_terms().into_iter().zip(coeffs) {
        c = chain_add(&c, &Chain::from_term(RingSpec::Integers, t, BigInt::from(k))).unwrap();
    }
    c
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn boundary_is_linear(
        c1 in prop::collection::vec(-5i64..6, 10),
        c2 in prop::collection::vec(-5i64..6, 10),
        a in -4i64..5,
        b in -4i64..5,
        m in prop::collection::vec(-9i64..10, 1..3),
    ) {
        let m = CoefficientTuple::from_ints(&m);
        let (x, y) = (small_chain(&c1), small_chain(&c2));
        let (a, b) = (BigInt::from(a), BigInt::from(b));
        let lhs = boundary(&chain_add(&chain_scale(&x, &a), &chain_scale(&y, &b)).unwrap(), &m).unwrap();
        let rhs = chain_add(
            &chain_scale(&boundary(&x, &m).unwrap(), &a),
            &chain_scale(&boundary(&y, &m).unwrap(), &b),
        )
        .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn boundary_term_counts_and_signs(n in 2usize..6, m in prop::collection::vec(-9i64..10, 1..3)) {
        let tuple = CoefficientTuple::from_ints(&m);
        let l = tuple.l();
        let c = Chain::from_term(RingSpec::Integers, SingularTerm::identity(n), BigInt::one());
        let summands = boundary_summands(&c, &tuple).unwrap();
        prop_assert_eq!(summands.len(), (n + 1) * (l + 1));
        for s in &summands {
            let sign = if s.j % 2 == 0 { 1 } else { -1 };
            prop_assert_eq!(&s.coeff, &BigInt::from(sign * m[s.i]));
        }
        let inner: usize = summands
            .iter()
            .map(|s| {
                let single = Chain::from_term(RingSpec::Integers, s.term.clone(), BigInt::one());
                boundary_summands(&single, &tuple).unwrap().len()
            })
            .sum();
        prop_assert_eq!(inner, (n + 1) * n * (l + 1) * (l + 1));
    }

    #[test]
    fn point_boundaries_compose_to_zero(m in prop::collection::vec(-20i64..21, 1..3)) {
        let m = CoefficientTuple::from_ints(&m);
        for n in 0..=20 {
            let composed = point_boundary_map(n, &m).compose(&point_boundary_map(n + 1, &m));
            prop_assert_eq!(composed, ScalarMap::Zero);
        }
    }
}

#[test]
fn point_homology_matches_kernel_over_image() {
    for m in [
        &[-2][..],
        &[0],
        &[1],
        &[2],
        &[13],
        &[9, 4],
        &[1, -1],
        &[-1, -1],
        &[5, -3],
    ] {
        let m = CoefficientTuple::from_ints(m);
        for n in 0..=20 {
            assert_eq!(homology_formula(n, &m), homology_from_maps(n, &m));
            point_homology(n, &m);
        }
    }
}

#[test]
fn boundary_on_point_terms_matches_scalar_maps() {
    for m in [&[9, 4][..], &[1], &[1, -1], &[2, 2]] {
        let m = CoefficientTuple::from_ints(m);
        for n in 1..=6 {
            let c = Chain::from_term(RingSpec::Integers, SingularTerm::point(n), BigInt::one());
            let b = boundary(&c, &m).unwrap();
            assert_eq!(
                b.coefficient(&SingularTerm::point(n - 1)),
                point_boundary_map(n, &m).factor()
            );
        }
        let c = Chain::from_term(RingSpec::Integers, SingularTerm::point(0), BigInt::one());
        assert_eq!(point_boundary_map(0, &m), ScalarMap::Zero);
        assert!(boundary(&c, &m).unwrap().is_zero());
    }
}

#[test]
fn term_agreement_is_an_equivalence_on_generated_terms() {
    let m = CoefficientTuple::from_ints(&[1, 1]);
    let c = Chain::from_term(RingSpec::Integers, SingularTerm::identity(3), BigInt::one());
    let mut terms = Vec::new();
    for s in boundary_summands(&c, &m).unwrap() {
        let single = Chain::from_term(RingSpec::Integers, s.term, BigInt::one());
        terms.extend(boundary_summands(&single, &m).unwrap().into_iter().map(|t| t.term));
    }
    assert_eq!(terms.len(), 48);
    let grid = Grid {
        n: 1,
        denominator: 12,
        seed: 0,
        points: sponge_lattice(1, 12, 256, 0),
    };
    let agree: Vec<Vec<bool>> = terms
        .iter()
        .map(|a| terms.iter().map(|b| terms_agree(a, b, family(), &grid)).collect())
        .collect();
    for a in 0..terms.len() {
        assert!(agree[a][a]);
        for b in 0..terms.len() {
            assert_eq!(agree[a][b], agree[b][a]);
            for c in 0..terms.len() {
                if agree[a][b] && agree[b][c] {
                    assert!(agree[a][c]);
                }
            }
        }
    }
}
