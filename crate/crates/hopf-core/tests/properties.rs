use hopf_core::hopfmaps::{sample_base_point, sample_fiber};
use hopf_core::scalar::Involutive;
use hopf_core::splitnum::SplitAlgebra;
use hopf_core::superhopf::InvolutionConfig;
use hopf_core::{
    ComplexF, Grassmann, HopfMap, MapCase, Patch, RMatrix, Rational, Realization, Ring, SplitComplex, SplitF, SplitOctonion,
    SplitQuaternion,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rat(n: i64) -> Rational {
    Rational::from_i64(n)
}

fn small() -> impl Strategy<Value = i64> {
    -6i64..=6
}

fn algebra<A: SplitAlgebra<Coeff = Rational>>() -> impl Strategy<Value = A> {
    prop::collection::vec(small(), A::DIM).prop_map(|v| A::from_coeffs(&v.into_iter().map(rat).collect::<Vec<_>>()))
}

fn scalar() -> impl Strategy<Value = Rational> {
    small().prop_map(rat)
}

fn grassmann() -> impl Strategy<Value = Grassmann<Rational>> {
    prop::array::uniform16(small()).prop_map(|c| Grassmann::from_coeffs(c.map(rat)))
}

fn split_grassmann() -> impl Strategy<Value = Grassmann<SplitComplex<Rational>>> {
    prop::collection::vec(splitc(), 16).prop_map(|v| Grassmann::from_coeffs(std::array::from_fn(|i| v[i].clone())))
}

fn splitc() -> impl Strategy<Value = SplitComplex<Rational>> {
    (small(), small()).prop_map(|(a, b)| SplitComplex::new(rat(a), rat(b)))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = RMatrix<SplitComplex<Rational>>> {
    prop::collection::vec(splitc(), rows * cols).prop_map(move |v| RMatrix::from_vec(rows, cols, v))
}

fn homogeneous(g: Grassmann<Rational>, odd: bool) -> (Grassmann<Rational>, i64) {
    if odd {
        (g.odd_part(), -1)
    } else {
        (g.even_part(), 1)
    }
}

proptest! {
    #[test]
    fn octonion_product_is_bilinear(a in algebra::<SplitOctonion<Rational>>(), b in algebra::<SplitOctonion<Rational>>(),
                                    c in algebra::<SplitOctonion<Rational>>(), s in scalar()) {
        let sa = SplitOctonion::from_coeffs(&a.coeffs().iter().map(|x| x * &s).collect::<Vec<_>>());
        let lhs = (sa.clone() + b.clone()) * c.clone();
        prop_assert_eq!(lhs, sa * c.clone() + b.clone() * c.clone());
        prop_assert_eq!(c.clone() * (a.clone() + b.clone()), c.clone() * a + c * b);
    }

    #[test]
    fn quaternion_product_is_associative(a in algebra::<SplitQuaternion<Rational>>(), b in algebra::<SplitQuaternion<Rational>>(),
                                         c in algebra::<SplitQuaternion<Rational>>()) {
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a * (b * c));
    }

    #[test]
    fn octonion_product_is_alternative(a in algebra::<SplitOctonion<Rational>>(), b in algebra::<SplitOctonion<Rational>>()) {
        prop_assert_eq!((a.clone() * a.clone()) * b.clone(), a.clone() * (a.clone() * b.clone()));
        prop_assert_eq!((b.clone() * a.clone()) * a.clone(), b * (a.clone() * a));
    }

    #[test]
    fn octonion_norm_composes(a in algebra::<SplitOctonion<Rational>>(), b in algebra::<SplitOctonion<Rational>>()) {
        prop_assert_eq!((a.clone() * b.clone()).qform(), a.qform() * b.qform());
    }

    #[test]
    fn conjugation_reverses_products(a in algebra::<SplitOctonion<Rational>>(), b in algebra::<SplitOctonion<Rational>>()) {
        prop_assert_eq!((a.clone() * b.clone()).conj(), b.conj() * a.conj());
        prop_assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn dagger_is_an_anti_homomorphism(a in matrix(3, 2), b in matrix(2, 4)) {
        prop_assert_eq!((&a * &b).dagger(), &b.dagger() * &a.dagger());
    }

    #[test]
    fn kron_mixed_product(a in matrix(2, 2), b in matrix(2, 2), c in matrix(2, 2), d in matrix(2, 2)) {
        let lhs = &RMatrix::kron(&a, &b) * &RMatrix::kron(&c, &d);
        prop_assert_eq!(lhs, RMatrix::kron(&(&a * &c), &(&b * &d)));
    }

    #[test]
    fn grassmann_product_is_associative(a in grassmann(), b in grassmann(), c in grassmann()) {
        prop_assert!((&(&a * &b) * &c) == (&a * &(&b * &c)));
    }

    #[test]
    fn grassmann_graded_commutativity(a in grassmann(), b in grassmann(), pa: bool, pb: bool) {
        let (a, _) = homogeneous(a, pa);
        let (b, _) = homogeneous(b, pb);
        let ba = &b * &a;
        let expect = if pa && pb { -ba } else { ba };
        prop_assert!(&a * &b == expect);
    }

    #[test]
    fn grassmann_leibniz(a in grassmann(), b in grassmann(), pa: bool, pb: bool, k in 0usize..4) {
        let (a, sa) = homogeneous(a, pa);
        let (b, sb) = homogeneous(b, pb);
        let ab = &a * &b;
        let left = &(&a.d_left(k) * &b) + &(&a * &b.d_left(k)).scale(&rat(sa));
        prop_assert!(ab.d_left(k) == left);
        let right = &(&a.d_right(k) * &b).scale(&rat(sb)) + &(&a * &b.d_right(k));
        prop_assert!(ab.d_right(k) == right);
    }

    #[test]
    fn grassmann_odd_elements_square_to_zero(a in grassmann()) {
        let o = a.odd_part();
        prop_assert!((&o * &o).is_zero());
    }

    #[test]
    fn grassmann_conjugation_product_rule(a in split_grassmann(), b in split_grassmann()) {
        let ab = &a * &b;
        let cfg = InvolutionConfig::pseudo_i();
        prop_assert!(ab.conj(&cfg) == &a.conj(&cfg) * &b.conj(&cfg));
        let cfg = InvolutionConfig::standard_ii();
        prop_assert!(ab.conj(&cfg) == &b.conj(&cfg) * &a.conj(&cfg));
    }

    #[test]
    fn invert_then_project_round_trips(seed: u64, level in 1u8..=3, two: bool, upper: bool) {
        let case = MapCase::new(level, if two { Realization::II } else { Realization::I });
        let patch = if upper { Patch::Upper } else { Patch::Lower };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let residual = if two { round_trip::<ComplexF>(case, patch, &mut rng) } else { round_trip::<SplitF>(case, patch, &mut rng) };
        prop_assert!(residual < 1e-9, "residual {residual}");
    }
}

fn round_trip<T: hopf_core::scalar::UnitRing<Re = f64>>(case: MapCase, patch: Patch, rng: &mut ChaCha8Rng) -> f64 {
    let map = HopfMap::<T>::new(case).unwrap();
    let x = sample_base_point(case, patch, 0.2, rng).unwrap();
    let f = sample_fiber::<T>(case, rng).unwrap();
    let s = map.invert(&x, patch, &f).unwrap();
    let y = map.project(&s).unwrap();
    let scale = 1.0 + x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    x.iter().zip(&y).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max) / (scale * scale)
}
