use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::matrix::{psi, GroupPoint};
use crate::specfun::make_mapped_rule;

fn h(t: i64) -> HalfInt {
    HalfInt::from_twice(t)
}

fn idx(n2: i64, m2: i64, k: u32) -> LosertIndex {
    LosertIndex::new(h(n2), h(m2), k).unwrap()
}

fn sl2(k_l: f64, k_r: f64) -> KacMoody {
    KacMoody::new(LieAlgebraSpec::sl2(), CentralCharges { k_l, k_r }, Truncation::default())
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Random element with one or two Losert generators, |n|, |m| ≤ 2 and k ≤ 3.
fn random_element(rng: &mut ChaCha8Rng) -> KMElement {
    let mut e = KMElement::zero();
    for _ in 0..rng.random_range(1..=2) {
        let half = rng.random_bool(0.3) as i64;
        let n2 = 2 * rng.random_range(-2..=1) + half;
        let m2 = 2 * rng.random_range(-2..=1) + half;
        let g = KMGenerator::losert(rng.random_range(0..3), h(n2), h(m2), rng.random_range(0..=3)).unwrap();
        e.generators.add(g, Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    }
    e
}

const PRODUCT_ORACLE: [(i64, i64, u32, i64, i64, u32, &[f64]); 3] = [
    (2, 2, 0, 2, 2, 0, &[0.81649658092772603273]),
    (2, 2, 0, 2, 0, 0, &[0.47140452079103168293, 0.33333333333333333333]),
    (
        4,
        2,
        1,
        -2,
        0,
        2,
        &[
            0.34641016151377545871,
            0.54285714285714285714,
            0.33197000110349287587,
            -0.043643578047198476253,
            -0.36290588349062190912,
            -0.24868236565099691168,
        ],
    ),
];

#[test]
fn losert_products_match_projection_oracle() {
    for (n1, m1, k1, n2, m2, k2, want) in PRODUCT_ORACLE {
        let e = mode_product_losert(idx(n1, m1, k1), idx(n2, m2, k2), 12).unwrap();
        assert!(e.residual < 1e-6, "residual {}", e.residual);
        for (key, v) in e.coefficients.iter() {
            assert_eq!((key.n, key.m), (h(n1 + n2), h(m1 + m2)));
            let w = want.get(key.k as usize).copied().unwrap_or(0.0);
            assert!((v - w).norm() < 1e-12, "{key}: {v} vs {w}");
        }
    }
    let short = mode_product_losert(idx(4, 2, 1), idx(-2, 0, 2), 3);
    assert!(matches!(short, Err(Error::Truncation { residual }) if residual > 0.1));
}

#[test]
fn clebsch_gordan_discrete_products() {
    let d1 = RepLabel::discrete(h(2), Eta::Plus).unwrap();
    let a = (d1, h(2), h(2));
    let top = cg_coefficient(a, a, RepLabel::discrete(h(4), Eta::Plus).unwrap()).unwrap();
    assert!((top.re - 2.0 / 6f64.sqrt()).abs() < 1e-8 && top.im.abs() < 1e-12);
    let low = cg_coefficient(a, a, d1).unwrap();
    assert!(low.norm() < 1e-8);

    let d32 = RepLabel::discrete(h(3), Eta::Plus).unwrap();
    let cg = cg_project((d32, h(3), h(5)), (d1, h(2), h(4)), HalfInt::int(6), &SigmaGrid::standard()).unwrap();
    assert_eq!((cg.n, cg.m), (h(5), h(9)));
    assert!(cg.continuous.is_empty());
    for (label, v) in cg.discrete.iter() {
        let PbLabel::Discrete { lambda, eta } = label else { unreachable!() };
        assert_eq!(*eta, Eta::Plus);
        if lambda.twice() < 5 {
            assert!(v.norm() < 1e-8, "{lambda}: {v}");
        }
    }
    // products of unit-norm elements have unit norm only up to the product's own norm
    let norm: f64 = cg.discrete.iter().map(|(_, v)| v.norm_sqr()).sum();
    let prod = psi(&d32, h(3), h(5)).unwrap().product(&psi(&d1, h(2), h(4)).unwrap());
    assert!((norm - crate::matrix::norm(&prod).unwrap().powi(2)).abs() < 1e-8);

    let s = RepLabel::continuous(1.0, HalfInt::ZERO).unwrap();
    assert!(matches!(
        cg_project((s, h(0), h(0)), (s, h(0), h(0)), HalfInt::ONE, &SigmaGrid::standard()),
        Err(Error::Unsupported(_))
    ));
}

#[test]
fn clebsch_gordan_mixed_signs_reconstruct_product() {
    let plus = RepLabel::discrete(h(4), Eta::Plus).unwrap();
    let minus = RepLabel::discrete(h(2), Eta::Minus).unwrap();
    let (a, b) = ((plus, h(4), h(6)), (minus, h(-2), h(-2)));
    let cg = cg_project(a, b, HalfInt::int(6), &SigmaGrid::standard()).unwrap();
    assert!(!cg.continuous.is_empty());
    let prod = psi(&plus, h(4), h(6)).unwrap().product(&psi(&minus, h(-2), h(-2)).unwrap());
    for p in [GroupPoint::new(0.2, 0.3, 1.0).unwrap(), GroupPoint::new(0.9, 2.0, 5.0).unwrap()] {
        let want = prod.eval(&p).unwrap();
        assert!((cg.eval(&p).unwrap() - want).norm() < 1e-3, "{} vs {want}", cg.eval(&p).unwrap());
    }
}

#[test]
fn bracket_structure_and_grades() {
    let km = sl2(1.5, -0.5);
    let x = KMGenerator::losert(0, h(2), h(0), 1).unwrap();
    let y = KMGenerator::losert(1, h(-1), h(1), 0).unwrap();
    let b = km.bracket_generators(&x, &y).unwrap();
    assert!(!b.generators.is_empty());
    for (g, _) in b.generators.iter() {
        assert_eq!(g.a, 1);
        assert_eq!(grading(Grading::L0, g), grading(Grading::L0, &x) + grading(Grading::L0, &y));
        assert_eq!(grading(Grading::R0, g), h(1));
    }
    assert_eq!(b.central_part(), (c(0.0), c(0.0)));

    // [K₀_X, K₊_Y] = K₊_{XY}: coefficients equal the product expansion
    let prod = product_expansion(idx(2, 0, 1), idx(-1, 1, 0), 12).unwrap();
    for (i, v) in prod.coefficients.iter() {
        let g = KMGenerator { a: 1, mode: ModeIndex::Losert(*i) };
        assert!((b.generators.get(&g) - v).norm() < 1e-14);
    }

    let xx = km.bracket(&KMElement::generator(x), &KMElement::generator(x)).unwrap();
    assert!(xx.norm() < 1e-14);
    let pb = KMElement::generator(KMGenerator::plancherel(0, h(2), RepLabel::discrete(h(2), Eta::Plus).unwrap(), h(2)).unwrap());
    assert!(matches!(km.bracket(&KMElement::generator(x), &pb), Err(Error::InvalidInput(_))));
}

#[test]
fn central_term_includes_killing_form() {
    let (k_l, k_r) = (2.0, 3.0);
    let km = sl2(k_l, k_r);
    let g = &km.killing;
    assert_eq!(g[(0, 0)], c(2.0));
    assert_eq!(g[(1, 2)], c(-4.0));
    for (a, b) in [(0, 0), (1, 2), (2, 1), (0, 1)] {
        let x = KMGenerator::losert(a, h(4), h(-2), 2).unwrap();
        let y = KMGenerator::losert(b, h(-4), h(2), 2).unwrap();
        let br = km.bracket_generators(&x, &y).unwrap();
        let want = (c(2.0 * k_l) * g[(a, b)], c(-1.0 * k_r) * g[(a, b)]);
        assert_eq!(br.central_part(), want);
        let (xe, ye) = (KMElement::generator(x), KMElement::generator(y));
        assert_eq!(br.c_l, km.omega(Cocycle::L, &xe, &ye).unwrap());
        assert_eq!(br.c_r, km.omega(Cocycle::R, &xe, &ye).unwrap());
        let other_k = KMElement::generator(KMGenerator::losert(b, h(-4), h(2), 1).unwrap());
        assert_eq!(km.omega(Cocycle::L, &xe, &other_k).unwrap(), c(0.0));
    }
}

/// ω_L(X, Y) = −k_L ⟨X, L₀Y⟩ with ⟨·,·⟩ the bilinear group average of g^{ab} X_a Y_b.
#[test]
fn cocycle_table_matches_integral_definition() {
    let km = sl2(1.0, 0.0);
    let rule = make_mapped_rule(60).unwrap();
    for (n2, m2, k) in [(2, 2, 0), (4, 2, 1), (-3, 1, 2), (1, 1, 3), (0, -2, 0)] {
        let x = idx(n2, m2, k);
        let y = idx(-n2, -m2, k);
        let fx = crate::losert::phi_at(x).unwrap();
        let fy = crate::losert::phi_at(y).unwrap();
        let pairing: Complex64 = rule
            .points
            .iter()
            .zip(&rule.weights)
            .map(|(&p, &w)| fx.radial.value(p).unwrap() * fy.radial.value(p).unwrap() * w)
            .sum::<Complex64>()
            / 4.0;
        let integral = -pairing * km.g(0, 0) * h(-n2).value();
        let table = km
            .omega(
                Cocycle::L,
                &KMElement::generator(KMGenerator { a: 0, mode: ModeIndex::Losert(x) }),
                &KMElement::generator(KMGenerator { a: 0, mode: ModeIndex::Losert(y) }),
            )
            .unwrap();
        assert!((integral - table).norm() < 1e-12, "{x}: {integral} vs {table}");
    }
}

#[test]
fn plancherel_cocycle_table() {
    let km = sl2(1.7, 0.0);
    let x = KMGenerator::plancherel(1, h(2), RepLabel::discrete(h(2), Eta::Plus).unwrap(), h(2)).unwrap();
    let y = KMGenerator::plancherel(2, h(-2), RepLabel::discrete(h(2), Eta::Minus).unwrap(), h(-2)).unwrap();
    let w = km.omega(Cocycle::L, &KMElement::generator(x), &KMElement::generator(y)).unwrap();
    assert_eq!(w, c(1.7) * km.g(1, 2));
    let same_eta = KMGenerator::plancherel(2, h(-2), RepLabel::discrete(h(2), Eta::Plus).unwrap(), h(-2));
    assert!(same_eta.is_err());
}

#[test]
fn cocycles_antisymmetric_and_closed() {
    let km = sl2(1.3, -0.7);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let (x, y) = (random_element(&mut rng), random_element(&mut rng));
        for which in [Cocycle::L, Cocycle::R] {
            assert_eq!(km.omega(which, &x, &y).unwrap(), -km.omega(which, &y, &x).unwrap());
        }
    }
    for _ in 0..6 {
        let (x, y, z) = (random_element(&mut rng), random_element(&mut rng), random_element(&mut rng));
        // force a non-trivial triple: z pairs with [x, y]
        let mut z2 = z.clone();
        for (g, _) in x.generators.iter() {
            for (g2, _) in y.generators.iter() {
                let (n, m) = (g.mode.grades().0 + g2.mode.grades().0, g.mode.grades().1 + g2.mode.grades().1);
                z2.generators.add(KMGenerator::losert(0, -n, -m, 1).unwrap(), c(0.5));
            }
        }
        for which in [Cocycle::L, Cocycle::R] {
            assert!(km.verify_cocycle(which, &x, &y, &z2).unwrap() < 1e-6);
        }
    }
    let mut central = KMElement::zero();
    central.c_l = c(1.0);
    let (x, y) = (random_element(&mut rng), random_element(&mut rng));
    assert_eq!(km.verify_cocycle(Cocycle::L, &x, &y, &central).unwrap(), 0.0);
    let abelian = KacMoody::new(LieAlgebraSpec::abelian(3), CentralCharges { k_l: 1.0, k_r: 1.0 }, Truncation::default());
    let z = random_element(&mut rng);
    assert_eq!(abelian.verify_cocycle(Cocycle::L, &x, &y, &z).unwrap(), 0.0);
}

#[test]
fn jacobi_identity_on_truncated_modes() {
    let km = sl2(1.0, 2.0);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..6 {
        let (x, y, mut z) = (random_element(&mut rng), random_element(&mut rng), random_element(&mut rng));
        z.l0 = c(0.5);
        let r = km.jacobi_residual(&x, &y, &z).unwrap();
        assert!(r < 1e-5, "Jacobi residual {r}");
    }
}

#[test]
fn bracket_is_antisymmetric_and_products_symmetric() {
    let km = sl2(0.3, 0.9);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..10 {
        let (x, y) = (random_element(&mut rng), random_element(&mut rng));
        let mut s = km.bracket(&x, &y).unwrap();
        s.axpy(c(1.0), &km.bracket(&y, &x).unwrap());
        assert!(s.norm() < 1e-13);
    }
    let (a, b) = (idx(3, 1, 2), idx(-1, 1, 0));
    assert_eq!(product_expansion(a, b, 8).unwrap().coefficients, product_expansion(b, a, 8).unwrap().coefficients);
}

#[test]
fn grading_operators_act_by_grades() {
    let km = sl2(1.0, 1.0);
    let g = KMGenerator::losert(2, h(3), h(-1), 0).unwrap();
    assert_eq!(grading(Grading::L0, &g), h(3));
    assert_eq!(grading(Grading::R0, &g), h(-1));
    let x = KMElement::generator(g);
    let l = km.bracket(&KMElement::grading_op(Grading::L0), &x).unwrap();
    assert_eq!(l.generators.get(&g), c(1.5));
    let r = km.bracket(&x, &KMElement::grading_op(Grading::R0)).unwrap();
    assert_eq!(r.generators.get(&g), c(0.5));
}

#[test]
fn sl2_root_spaces() {
    let km = sl2(1.0, 1.0);
    let data = RootData::sl2();
    assert!(data.check(&km.algebra).unwrap() < 1e-15);
    let (p, m) = ([1.0], [-1.0]);
    let fam = root_space(&data, Some(&p), h(2), h(0), 3).unwrap();
    assert_eq!(fam.len(), 4);
    assert!(fam.iter().all(|g| g.a == 1 && g.mode.grades() == (h(2), h(0))));
    assert!(root_space(&data, Some(&[2.0]), h(0), h(0), 1).is_err());
    // α + (−α) lands in the Cartan family (plus the centre)
    let r = root_containment(&km, &data, (Some(&p), h(2), h(0)), (Some(&m), h(-2), h(0)), 2).unwrap();
    assert!(r < 1e-14);
    let r = root_containment(&km, &data, (Some(&p), h(1), h(1)), (Some(&p), h(0), h(2)), 2).unwrap();
    assert!(r < 1e-8);
    let r = root_containment(&km, &data, (Some(&p), h(1), h(-1)), (None, h(1), h(1)), 2).unwrap();
    assert!(r < 1e-14);
}

#[test]
fn presentations_agree_on_discrete_sector() {
    let trunc = Truncation { k_max: 8, lambda_max: HalfInt::int(6), grid: SigmaGrid::new(12.0, 12, 8).unwrap() };
    let km = KacMoody::new(LieAlgebraSpec::sl2(), CentralCharges { k_l: 1.0, k_r: 2.0 }, trunc);
    let cases = [
        (KMGenerator::losert(0, h(2), h(2), 0).unwrap(), KMGenerator::losert(1, h(2), h(2), 0).unwrap()),
        (KMGenerator::losert(1, h(4), h(4), 0).unwrap(), KMGenerator::losert(2, h(-2), h(-2), 0).unwrap()),
        (KMGenerator::losert(1, h(3), h(5), 0).unwrap(), KMGenerator::losert(2, h(-3), h(-5), 0).unwrap()),
    ];
    for (x, y) in cases {
        let gap = km.presentation_gap(&KMElement::generator(x), &KMElement::generator(y)).unwrap();
        assert!(gap < 1e-3, "{x}, {y}: {gap}");
    }
    let complement = KMElement::generator(KMGenerator::losert(0, h(2), h(0), 0).unwrap());
    assert!(matches!(km.losert_to_plancherel(&complement), Err(Error::Unsupported(_))));
}

#[test]
fn element_json_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut e = random_element(&mut rng);
    e.c_l = Complex64::new(0.25, -1.0);
    e.generators.add(
        KMGenerator::plancherel(1, h(1), RepLabel::continuous(2.5, HalfInt::HALF).unwrap(), h(-1)).unwrap(),
        c(3.0),
    );
    let s = serde_json::to_string(&e).unwrap();
    let back: KMElement = serde_json::from_str(&s).unwrap();
    assert_eq!(back, e);
}
