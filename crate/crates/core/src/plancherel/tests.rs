use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::matrix::FnProfile;

fn h(t: i64) -> HalfInt {
    HalfInt::from_twice(t)
}

fn grid() -> SigmaGrid {
    SigmaGrid::standard()
}

fn random_points(seed: u64, count: usize) -> Vec<GroupPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| GroupPoint::new(rng.random_range(0.0..2.5), rng.random_range(0.0..6.0), rng.random_range(0.0..6.0)).unwrap())
        .collect()
}

/// e^{−(x−1)} in the (1, 1) sector: smooth at the identity, with discrete and
/// continuous content.
fn gaussian_profile() -> GroupFunction {
    let f = FnProfile::values(|x: XPoint| Complex64::new((-x.xm1).exp(), 0.0), 60.0);
    GroupFunction::new(h(2), h(2), Arc::new(f)).unwrap()
}

#[test]
fn weights_and_grid() {
    assert!((plancherel_weight(1.0, HalfInt::ZERO) - PI.tanh()).abs() < 1e-15);
    assert!((plancherel_weight(1.0, HalfInt::HALF) - 1.0 / PI.tanh()).abs() < 1e-15);
    let g = grid();
    assert!(g.nodes.iter().all(|&s| s > 0.0 && s < g.sigma_max));
    assert!(g.weights.iter().all(|&w| w > 0.0));
    assert!((g.weights.iter().sum::<f64>() - g.sigma_max).abs() < 1e-12);
    for &s in &g.nodes {
        assert!(plancherel_weight(s, HalfInt::ZERO) > 0.0 && plancherel_weight(s, HalfInt::HALF) > 0.0);
    }
    assert!(SigmaGrid::new(0.0, 1, 1).is_err());
}

#[test]
fn discrete_matrix_element_has_discrete_support() {
    let f = psi(&RepLabel::discrete(h(2), Eta::Plus).unwrap(), h(2), h(2)).unwrap();
    let c = analyze(&f, HalfInt::int(5), &grid(), None).unwrap();
    assert_eq!(c.discrete.len(), 1);
    assert!((c.discrete[0].value() - 1.0).norm() < 1e-10);
    assert!(c.continuous.iter().all(|s| s.value().norm() < 1e-8));
    assert!(c.continuous.iter().all(|s| s.n == f.n && s.m == f.m));
}

#[test]
fn losert_elements_split_as_expected() {
    // Φ_{1,1,0} is in the discrete part, Φ_{1,0,0} in the complement
    let c = analyze(&phi(h(2), h(2), 0).unwrap(), HalfInt::int(5), &grid(), None).unwrap();
    assert!((c.discrete[0].value().norm() - 1.0).abs() < 1e-10);
    assert!(c.continuous.iter().all(|s| s.value().norm() < 1e-8));
    let c = analyze(&phi(h(2), h(0), 0).unwrap(), HalfInt::int(5), &grid(), None).unwrap();
    assert!(c.discrete.is_empty());
    assert!((c.parseval() - 1.0).abs() < 1e-8);
}

#[test]
fn parseval_and_round_trip() {
    let fs = [phi(h(4), h(2), 1).unwrap(), phi(h(3), h(1), 2).unwrap(), gaussian_profile()];
    for f in &fs {
        let c = analyze(f, HalfInt::int(10), &grid(), None).unwrap();
        let norm = crate::matrix::norm(f).unwrap().powi(2);
        assert!((c.parseval() - norm).abs() < 1e-8 * norm, "({}, {}): {} vs {norm}", f.n, f.m, c.parseval());
        assert!(round_trip_error(f, &c, 1e3).unwrap() < 1e-6);
    }
}

#[test]
fn synthesis_edge_cases() {
    let zero = PlancherelCoefficients::zero(grid());
    assert_eq!(synthesize(&zero, &GroupPoint::identity()).unwrap(), Complex64::new(0.0, 0.0));
    let mut one = PlancherelCoefficients::zero(grid());
    one.discrete.push(DiscreteCoefficient { n: h(3), lambda: h(3), eta: Eta::Plus, m: h(5), re: 1.0, im: 0.0 });
    let p = GroupPoint::new(0.7, 1.0, 2.0).unwrap();
    let want = psi(&RepLabel::discrete(h(3), Eta::Plus).unwrap(), h(3), h(5)).unwrap().eval(&p).unwrap();
    assert!((synthesize(&one, &p).unwrap() - want).norm() < 1e-15);
}

#[test]
fn slow_decay_is_rejected() {
    let s = psi(&RepLabel::continuous(1.0, HalfInt::ZERO).unwrap(), h(0), h(0)).unwrap();
    assert!(matches!(analyze(&s, HalfInt::ONE, &grid(), None), Err(Error::NonNormalisable(_))));
}

#[test]
fn conversion_to_plancherel_basis() {
    let idx = LosertIndex::new(h(2), h(0), 0).unwrap();
    let g = grid();
    let samples = basis_conversion(idx, &g).unwrap();
    assert!((line_parseval(&samples, &g) - 1.0).abs() < 1e-8);
    let f = phi(h(2), h(0), 0).unwrap();
    for p in random_points(3, 10) {
        let v = reconstruct_from_transform(&samples, &g, &p).unwrap();
        assert!((v - f.eval(&p).unwrap()).norm() < 1e-8);
    }
    let half = LosertIndex::new(h(1), h(3), 1).unwrap();
    assert!((line_parseval(&basis_conversion(half, &g).unwrap(), &g) - 1.0).abs() < 1e-8);
    let disc = LosertIndex::new(h(4), h(2), 0).unwrap();
    assert!(matches!(basis_conversion(disc, &g), Err(Error::Domain(_))));
}

#[test]
fn inverse_expansion_matches_projection() {
    // The coefficients are ½ conj f^{nmk}(σ); the partial sums hover around Ψ_σ.
    let pts = [GroupPoint::new(0.8, 0.3, 0.1).unwrap()];
    let target = psi(&RepLabel::continuous(2.0, HalfInt::ZERO).unwrap(), h(2), h(0)).unwrap().eval(&pts[0]).unwrap();
    let v = inverse_expansion(h(2), h(0), 2.0, 40, &pts, Summation::Cesaro).unwrap()[0];
    assert!((v - target).norm() < 0.05, "{v} vs {target}");
    let p0 = inverse_expansion(h(2), h(0), 2.0, 0, &pts, Summation::Partial).unwrap()[0];
    let f0 = basis_conversion(
        LosertIndex::new(h(2), h(0), 0).unwrap(),
        &SigmaGrid { sigma_max: 2.0, nodes: vec![2.0], weights: vec![1.0] },
    )
    .unwrap()[0]
        .value();
    let want = f0.conj() * 0.5 * phi(h(2), h(0), 0).unwrap().eval(&pts[0]).unwrap();
    assert!((p0 - want).norm() < 1e-12);
}

#[test]
fn smeared_normalisation() {
    let (n, m) = (h(0), h(0));
    let a = Packet::gaussian(2.0, 0.1, 64).unwrap();
    let norm = smeared_continuous_norm(&a, n, m).unwrap();
    let want = a.predicted_norm(HalfInt::ZERO);
    assert!((norm / want - 1.0).abs() < 0.02, "{norm} vs {want}");
    let scaled = smeared_continuous_norm(&a.scaled(Complex64::new(0.0, 3.0)), n, m).unwrap();
    assert!((scaled / norm - 9.0).abs() < 1e-9);
    let b = Packet::gaussian(3.5, 0.1, 64).unwrap();
    assert!(packet_inner(&a, &b, n, m).unwrap().norm() < 1e-6);
}

#[test]
fn truncated_norm_keeps_growing() {
    let s = psi(&RepLabel::continuous(1.0, HalfInt::ZERO).unwrap(), h(2), h(0)).unwrap();
    let (a, b) = (truncated_norm(&s, 1e2).unwrap(), truncated_norm(&s, 1e4).unwrap());
    assert!(b > a && b < 10.0 * a);
    let f = phi(h(2), h(0), 1).unwrap();
    assert!((truncated_norm(&f, 1e8).unwrap() - 1.0).abs() < 1e-6);
}

#[test]
fn coefficients_json_schema() {
    let c = analyze(&phi(h(4), h(2), 0).unwrap(), HalfInt::int(3), &SigmaGrid::new(2.0, 1, 2).unwrap(), None).unwrap();
    let v: serde_json::Value = serde_json::from_str(&c.to_json().unwrap()).unwrap();
    let d = &v["discrete"][0];
    for key in ["n", "lambda", "eta", "m", "re", "im"] {
        assert!(d.get(key).is_some(), "{key}");
    }
    let s = &v["continuous"][0];
    for key in ["eps", "n", "m", "sigma", "re", "im"] {
        assert!(s.get(key).is_some(), "{key}");
    }
    let back: PlancherelCoefficients = serde_json::from_value(v).unwrap();
    assert_eq!(back, c);
}
