mod common;

use proptest::prelude::*;
use rectify_core::bundles::FIT_TOLERANCE;
use rectify_core::cone::Monomial;
use rectify_core::sampling::Sampler;
use rectify_core::transforms::quaternionic_projective;
use rectify_core::{
    acceleration, canonicalize, center_from_a, circle_from_acceleration, cone_divide,
    detect_quaternionic_multiplication, determine_family, fit_bundle, generating_plane,
    lines_subspace, mul_operator, parallel_decompose, qconj, qft_from_a, qinv, qmul,
    synthesize_rectifier, t_a, t_a_quadratic, verify_rounds_lines, AffineMap, BundleDescriptor,
    Field, FitOutcome, FractionalTransform, GaussianScalar, LinearQuaternionMap, Matrix4, Orientation,
    Poly, PolyMap, Quaternion, Side, VectorQuadraticMap,
};

use common::*;

fn rational() -> impl Strategy<Value = R> {
    (-100i64..=100, 1i64..=100).prop_map(|(p, q)| r(p, q))
}

fn quaternion() -> impl Strategy<Value = Quaternion<R>> {
    proptest::array::uniform4(rational()).prop_map(Quaternion::from_array)
}

fn nonzero_quaternion() -> impl Strategy<Value = Quaternion<R>> {
    quaternion().prop_filter("nonzero", |q| !q.is_zero())
}

fn side() -> impl Strategy<Value = Side> {
    prop_oneof![Just(Side::Left), Just(Side::Right)]
}

fn vector(n: usize) -> impl Strategy<Value = Vec<R>> {
    proptest::collection::vec(rational(), n)
}

fn poly(n: usize) -> impl Strategy<Value = Poly<R>> {
    proptest::collection::vec((proptest::collection::vec(0u16..3, n), rational()), 0..6).prop_map(
        move |terms| {
            terms.into_iter().fold(Poly::zero(n), |p, (e, c)| {
                p + Poly::monomial(Monomial::from_exponents(e), c)
            })
        },
    )
}

fn quadratic_map(n: usize) -> impl Strategy<Value = VectorQuadraticMap<R>> {
    proptest::collection::vec(rational(), n * n * n).prop_map(move |v| {
        let mut m = vec![vec![vec![R::zero(); n]; n]; n];
        for k in 0..n {
            for i in 0..n {
                for j in i..n {
                    let c = v[(k * n + i) * n + j].clone();
                    m[k][i][j] = c.clone();
                    m[k][j][i] = c;
                }
            }
        }
        VectorQuadraticMap::new(m).unwrap()
    })
}

fn seed() -> impl Strategy<Value = u64> {
    any::<u64>()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn quaternion_norm_is_multiplicative(a in quaternion(), b in quaternion()) {
        let ab = qmul(&a, &b);
        prop_assert_eq!(ab.norm_sq(), a.norm_sq() * b.norm_sq());
        prop_assert_eq!(qconj(&ab), qmul(&qconj(&b), &qconj(&a)));
        prop_assert_eq!(ab.to_vec(), hamilton(&a.to_vec(), &b.to_vec()).to_vec());
    }

    #[test]
    fn quaternion_inverse(a in nonzero_quaternion()) {
        let inv = qinv(&a).unwrap();
        prop_assert_eq!(qmul(&a, &inv), Quaternion::one());
        prop_assert_eq!(qmul(&inv, &a), Quaternion::one());
    }

    #[test]
    fn detection_inverts_mul_operator(a in nonzero_quaternion(), s in side()) {
        let d = detect_quaternionic_multiplication(&mul_operator(&a, s)).unwrap();
        let expected = if a.is_real() {
            Orientation::Both
        } else if s == Side::Left {
            Orientation::Left
        } else {
            Orientation::Right
        };
        prop_assert_eq!(d.orientation, expected);
        prop_assert_eq!(d.quaternion, a);
    }

    #[test]
    fn left_and_right_multiplications_commute(a in quaternion(), b in quaternion()) {
        let l = mul_operator(&a, Side::Left);
        let r = mul_operator(&b, Side::Right);
        prop_assert_eq!(&l * &r, &r * &l);
    }

    #[test]
    fn unit_multiplication_is_a_rotation(seed in seed(), s in side()) {
        let u: Quaternion<R> = Sampler::new(seed).unit_quaternion();
        let m = mul_operator(&u, s);
        prop_assert_eq!(&m.transpose() * &m, Matrix4::identity());
        prop_assert_eq!(m.det(), R::one());
    }

    #[test]
    fn generating_planes_are_null_and_partition_the_cone(seed in seed(), s in side()) {
        let mut sampler = Sampler::new(seed);
        let x = sampler.cone_point::<R>();
        let plane = generating_plane(&x, s).unwrap();
        let (p, q) = (sampler.gaussian::<R>(), sampler.gaussian::<R>());
        let v = plane.combination(&p, &q);
        let vv = v.iter().fold(GaussianScalar::zero(), |acc, c| acc + c.clone() * c.clone());
        prop_assert!(vv.is_zero());
        if v.iter().any(|c| !c.is_zero()) {
            prop_assert!(generating_plane(&v, s).unwrap().same_plane(&plane));
        }
        let other = generating_plane(&x, s.other()).unwrap();
        prop_assert!(!other.same_plane(&plane));
    }

    #[test]
    fn cone_division_normal_form(p in poly(4)) {
        let d = cone_divide(&PolyMap::scalar(p.clone())).unwrap();
        let rem = d.remainder.component(0);
        prop_assert!(rem.terms().all(|(m, _)| m.exponent(0) < 2));
        let rebuilt = &Poly::norm_form(4) * d.quotient.component(0) + rem.clone();
        prop_assert_eq!(rebuilt, p);
    }

    #[test]
    fn cone_division_inverts_multiplication(q in poly(3)) {
        let d = cone_divide(&PolyMap::scalar(&Poly::norm_form(3) * &q)).unwrap();
        prop_assert!(d.is_exact());
        prop_assert_eq!(d.quotient.component(0), &q);
    }

    #[test]
    fn canonicalize_is_a_gauge_quotient(seed in seed(), s in side(), lambda in vector(4)) {
        let a: LinearQuaternionMap<R> = Sampler::new(seed).linear_quaternion_map();
        let g = quaternionic_gamma(&a, s);
        let c = canonicalize(&g).unwrap();
        prop_assert_eq!(canonicalize(&c).unwrap(), c.clone());
        let shifted = g.add(&VectorQuadraticMap::gauge(&lambda));
        prop_assert_eq!(canonicalize(&shifted).unwrap(), c);
    }

    #[test]
    fn parallel_decomposition_round_trip(n in 2usize..=5, seed in seed()) {
        let mut s = Sampler::new(seed);
        let b: Vec<R> = s.vector(n);
        let lambda: Vec<R> = s.vector(n);
        let d = parallel_decompose(&parallel_gamma(&b, &lambda)).unwrap();
        prop_assert_eq!(d.b, b);
        prop_assert_eq!(d.lambda, lambda);
    }

    #[test]
    fn acceleration_ignores_the_gauge(g in quadratic_map(4), lambda in vector(4), x in vector(4)) {
        prop_assume!(x.iter().any(|v| !v.is_zero()));
        let shifted = g.add(&VectorQuadraticMap::gauge(&lambda));
        let w = acceleration(&g, &x).unwrap();
        prop_assert_eq!(&w, &acceleration(&shifted, &x).unwrap());
        prop_assert!(inner(&w, &x).is_zero());
    }

    #[test]
    fn centers_agree_with_accelerations(seed in seed(), s in side()) {
        let mut sampler = Sampler::new(seed);
        let a: LinearQuaternionMap<R> = sampler.linear_quaternion_map();
        let x: Vec<R> = sampler.nonzero_vector(4);
        let g = quaternionic_gamma(&a, s);
        let observed = circle_from_acceleration(&x, &acceleration(&g, &x).unwrap()).unwrap();
        let predicted = center_from_a(&a, &x, s).unwrap();
        prop_assert_eq!(observed.center(), predicted.center());
    }

    #[test]
    fn quaternionic_maps_always_have_a_family(seed in seed(), s in side()) {
        let a: LinearQuaternionMap<R> = Sampler::new(seed).linear_quaternion_map();
        let family = determine_family(&quaternionic_gamma(&a, s)).unwrap();
        prop_assert!(family.is_some_and(|f| f.admits(s)));
    }

    #[test]
    fn fit_bundle_recovers_descriptors(seed in seed(), s in side()) {
        let mut sampler = Sampler::new(seed);
        let orientation = if s == Side::Left { Orientation::Left } else { Orientation::Right };
        let d = BundleDescriptor::new(orientation, sampler.imaginary_map::<R>()).unwrap();
        let circles: Vec<_> = (0..6)
            .map(|_| d.circle(&sampler.nonzero_vector::<R>(4)).unwrap())
            .collect();
        match fit_bundle(&circles).unwrap() {
            FitOutcome::Consistent(found) => prop_assert_eq!(found, d),
            other => prop_assert!(false, "{:?}", other),
        }
    }

    #[test]
    fn t_a_agrees_to_second_order(seed in seed()) {
        let mut s = Sampler::new(seed);
        let a = s.direction(4);
        let x0: Vec<f64> = s.direction(4).iter().map(|v| v * 0.05).collect();
        let quad = t_a_quadratic(&a).unwrap();
        let error = |h: f64| {
            let x: Vec<f64> = x0.iter().map(|v| v * h).collect();
            let full = t_a(&a, &x).unwrap();
            let q = quad.eval(&x);
            full.iter().zip(&x).zip(&q).map(|((f, xi), qi)| (f - xi - qi).powi(2)).sum::<f64>().sqrt()
        };
        let errors: Vec<f64> = (0..4).map(|k| error(0.5f64.powi(k))).collect();
        for w in errors.windows(2) {
            prop_assert!((w[0] / w[1]).log2() >= 2.9, "{:?}", errors);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn synthesized_rectifiers_round_lines(seed in seed(), s in side()) {
        let mut sampler = Sampler::new(seed);
        let a: LinearQuaternionMap<R> = sampler.linear_quaternion_map();
        let mut g = quaternionic_gamma(&a, s);
        let mut map = synthesize_rectifier(&g).unwrap();
        while map.radius() < 0.2 {
            g = g.scale(&r(1, 2));
            map = synthesize_rectifier(&g).unwrap();
        }
        let report = verify_rounds_lines(&map, &sampler.directions(4, 30), 0.2, 1e-6, 24).unwrap();
        prop_assert!(report.passed, "max residual {:e}", report.max_residual);
    }

    #[test]
    fn fractional_transforms_round_lines(seed in seed(), s in side()) {
        let mut sampler = Sampler::new(seed);
        let [a, b, c, d]: [Quaternion<R>; 4] = std::array::from_fn(|_| sampler.nonzero_quaternion());
        let t = match s {
            Side::Left => quaternionic_projective(&a, &b, &c, &d).unwrap(),
            Side::Right => FractionalTransform::new(
                Side::Right,
                AffineMap::from_matrix(&mul_operator(&c, Side::Left), d.clone()),
                AffineMap::from_matrix(&mul_operator(&a, Side::Left), b.clone()),
            )
            .unwrap(),
        }
        .to_f64();
        // the pole −b/a (or −a⁻¹b) lies at distance |b|/|a|
        let pole = (b.to_f64().norm_sq() / a.to_f64().norm_sq()).sqrt();
        let radius = (0.5 * pole).min(0.2);
        let report = verify_rounds_lines(&t, &sampler.directions(4, 20), radius, 1e-8, 24).unwrap();
        prop_assert!(report.passed, "max residual {:e}", report.max_residual);
    }

    #[test]
    fn qft_quadratic_term_is_a_x_times_x(seed in seed(), s in side()) {
        let mut sampler = Sampler::new(seed);
        let a: LinearQuaternionMap<R> = sampler.linear_quaternion_map();
        let t = qft_from_a(&a.to_f64(), s);
        let g = quaternionic_gamma(&a, s).to_f64();
        let h = 1e-3;
        for x in sampler.directions(4, 5) {
            let plus: Vec<f64> = x.iter().map(|v| v * h).collect();
            let minus: Vec<f64> = x.iter().map(|v| -v * h).collect();
            let (p, m) = (t.apply(&plus).unwrap(), t.apply(&minus).unwrap());
            let fd: Vec<f64> = p.iter().zip(&m).map(|(a, b)| (a + b) / (2.0 * h * h)).collect();
            let exact = g.eval(&x);
            let err = dist(&fd, &exact) / norm(&exact).max(1.0);
            prop_assert!(err <= 1e-5, "relative error {:e}", err);
        }
    }

    #[test]
    fn fitted_centers_match_predictions(seed in seed(), s in side()) {
        let mut sampler = Sampler::new(seed);
        let a: LinearQuaternionMap<R> = sampler.linear_quaternion_map();
        let af = a.to_f64();
        let report = verify_rounds_lines(&qft_from_a(&af, s), &sampler.directions(4, 10), 0.2, 1e-8, 24).unwrap();
        prop_assert!(report.passed);
        for line in &report.lines {
            let predicted = center_from_a(&af, &line.direction, s).unwrap();
            let c = predicted.center_vec().unwrap();
            let fit = line.curve.as_ref().unwrap().center().unwrap();
            prop_assert!(dist(c, fit) <= 1e-6 * norm(c));
        }
        prop_assert_eq!(lines_subspace(&a, s).len(), 1);
    }
}

#[test]
fn float_fit_tolerance_is_relative() {
    // a consistent float fit must survive rescaling of the bundle
    let mut s = Sampler::new(17);
    let im: LinearQuaternionMap<f64> = s.imaginary_map::<R>().to_f64();
    for scale in [1e-3, 1.0, 1e3] {
        let d = BundleDescriptor::new(Orientation::Left, im.scale(&scale)).unwrap();
        let circles: Vec<_> = s.directions(4, 6).iter().map(|x| d.circle(x).unwrap()).collect();
        match fit_bundle(&circles).unwrap() {
            FitOutcome::Consistent(found) => {
                let diff = (found.im_a().matrix() - d.im_a().matrix()).max_abs();
                assert!(diff <= FIT_TOLERANCE * 1e3 * d.im_a().max_abs());
            }
            other => panic!("{other:?}"),
        }
    }
}
