use num_complex::Complex64;
use sl2_harmonic::algebra::LieAlgebraSpec;
use sl2_harmonic::kac_moody::{CentralCharges, Cocycle, KMElement, KMGenerator, KacMoody, Truncation};
use sl2_harmonic::losert::{discrete_partner, phi, LosertIndex};
use sl2_harmonic::matrix::{psi, rule_for_pair, scalar_product};
use sl2_harmonic::plancherel::{analyze, synthesize, SigmaGrid};
use sl2_harmonic::reps::RepLabel;
use sl2_harmonic::suite::random_points;
use sl2_harmonic::HalfInt;

fn h(t: i64) -> HalfInt {
    HalfInt::from_twice(t)
}

#[test]
fn discrete_losert_functions_are_matrix_elements() {
    // Φ_{2,1,0} is a multiple of the λ = 1 element of D⁺ in the (2, 1) sector
    let idx = LosertIndex::new(h(4), h(2), 0).unwrap();
    let (label, s) = discrete_partner(idx).expect("k below k_min");
    assert_eq!(label, "discrete:1:+".parse::<RepLabel>().unwrap());
    let f = phi(idx.n, idx.m, idx.k).unwrap();
    let g = psi(&label, idx.n, idx.m).unwrap();
    for p in random_points(3, 5) {
        assert!((f.eval(&p).unwrap() - g.eval(&p).unwrap() * s).norm() < 1e-12);
    }
}

#[test]
fn plancherel_expansion_of_a_losert_function() {
    let f = phi(h(2), h(2), 2).unwrap();
    let c = analyze(&f, HalfInt::int(4), &SigmaGrid::standard(), None).unwrap();
    for p in random_points(11, 5) {
        assert!((synthesize(&c, &p).unwrap() - f.eval(&p).unwrap()).norm() < 1e-8);
    }
    // Φ_{1,1,2} lies in the complement: no discrete content
    assert!(c.discrete.iter().all(|d| d.value().norm() < 1e-10));
}

#[test]
fn matrix_elements_of_distinct_series_are_orthogonal() {
    let a = psi(&"discrete:1:+".parse().unwrap(), h(4), h(4)).unwrap();
    let b = psi(&"discrete:2:+".parse().unwrap(), h(4), h(4)).unwrap();
    assert!(scalar_product(&a, &b, &rule_for_pair(&a, &b).unwrap()).unwrap().norm() < 1e-10);
}

#[test]
fn kac_moody_central_term_through_the_public_api() {
    let km = KacMoody::new(LieAlgebraSpec::sl2(), CentralCharges { k_l: 3.0, k_r: 0.0 }, Truncation::default());
    let x = KMElement::generator(KMGenerator::losert(0, h(2), h(0), 1).unwrap());
    let y = KMElement::generator(KMGenerator::losert(0, h(-2), h(0), 1).unwrap());
    let b = km.bracket(&x, &y).unwrap();
    // g(K0, K0) = 2, n = 1: k_L · 1 · 2
    assert!((b.c_l - Complex64::new(6.0, 0.0)).norm() < 1e-12);
    assert_eq!(b.c_l, km.omega(Cocycle::L, &x, &y).unwrap());
    assert_eq!(b.c_r, Complex64::new(0.0, 0.0));
}
