//! Verification suites shared by the command line tool and the acceptance target.
//! Each suite returns flat named checks; a check passes when |value| ≤ tolerance.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::LieAlgebraSpec;
use crate::error::Result;
use crate::half::HalfInt;
use crate::kac_moody::{cg_coefficient, cg_project, Cocycle, KMElement, KMGenerator, KacMoody};
use crate::losert::{classify, discrete_labels, gram_matrix, losert_rule, phi, LosertIndex};
use crate::matrix::{apply_operator, psi, rule_for_pair, scalar_product, DiffMode, FnProfile, GroupFunction, GroupPoint, Operator};
use crate::plancherel::{
    analyze, basis_conversion, inverse_expansion, line_parseval, packet_inner, reconstruct_from_transform,
    round_trip_error, smeared_continuous_norm, truncated_norm, Packet, SigmaGrid, Summation,
};
use crate::reps::{Eta, RepLabel};
use crate::specfun::{make_mapped_rule, XPoint};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Check { name: name.into(), value, tolerance, pass: value.abs() <= tolerance }
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}

/// Seeded sample points with 0.05 ≤ ρ < 3.
pub fn random_points(seed: u64, count: usize) -> Vec<GroupPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            GroupPoint::new(rng.random_range(0.05..3.0), rng.random_range(0.0..2.0 * PI), rng.random_range(0.0..2.0 * PI))
                .expect("finite sample")
        })
        .collect()
}

fn h(t: i64) -> HalfInt {
    HalfInt::from_twice(t)
}

fn d(lambda2: i64, eta: Eta) -> RepLabel {
    RepLabel::Discrete { lambda: h(lambda2), eta }
}

fn edge_weights(label: &RepLabel, count: i64) -> Vec<HalfInt> {
    match *label {
        RepLabel::Discrete { lambda, eta: Eta::Plus } => (0..count).map(|j| lambda + HalfInt::int(j)).collect(),
        RepLabel::Discrete { lambda, eta: Eta::Minus } => (0..count).map(|j| -lambda - HalfInt::int(j)).collect(),
        RepLabel::Continuous { eps, .. } => (0..count).map(|j| eps + HalfInt::int(j - count / 2)).collect(),
    }
}

/// Discrete labels with 1 ≤ λ ≤ λ_max, both signs.
pub fn discrete_label_range(lambda_max: HalfInt) -> Vec<RepLabel> {
    let mut out = Vec::new();
    let mut l = HalfInt::ONE;
    while l <= lambda_max {
        out.push(RepLabel::Discrete { lambda: l, eta: Eta::Plus });
        out.push(RepLabel::Discrete { lambda: l, eta: Eta::Minus });
        l = l + HalfInt::HALF;
    }
    out
}

/// max |(Ψ_{nΛm}, Ψ_{nΛ′m}) − δ_{ΛΛ′}| per discrete label, weights within `depth` of the
/// edge. Distinct grades are orthogonal through the phases and are not integrated.
pub fn discrete_orthonormality(lambda_max: HalfInt, depth: i64, tol: f64) -> Result<Vec<Check>> {
    let labels = discrete_label_range(lambda_max);
    labels
        .par_iter()
        .map(|label| {
            let ws = edge_weights(label, depth + 1);
            let mut worst = 0.0f64;
            for &n in &ws {
                for &m in &ws {
                    let f = psi(label, n, m)?;
                    for other in labels.iter().filter(|l| l.weight_support(n) && l.weight_support(m)) {
                        let g = psi(other, n, m)?;
                        let v = scalar_product(&f, &g, &rule_for_pair(&f, &g)?)?;
                        let want = if other == label { 1.0 } else { 0.0 };
                        worst = worst.max((v - want).norm());
                    }
                }
            }
            Ok(Check::new(format!("orthonormality {label}"), worst, tol))
        })
        .collect()
}

/// The matrix elements used by the eigen-equation suite: six discrete, four continuous.
pub fn eigen_elements() -> Vec<(RepLabel, HalfInt, HalfInt)> {
    let c = |s: f64, e: i64| RepLabel::Continuous { sigma: s, eps: h(e) };
    vec![
        (d(2, Eta::Plus), h(2), h(4)),
        (d(3, Eta::Plus), h(3), h(5)),
        (d(4, Eta::Plus), h(8), h(4)),
        (d(2, Eta::Minus), h(-2), h(-6)),
        (d(3, Eta::Minus), h(-5), h(-3)),
        (d(6, Eta::Minus), h(-6), h(-8)),
        (c(1.3, 0), h(0), h(4)),
        (c(0.7, 1), h(1), h(-3)),
        (c(2.0, 0), h(2), h(-2)),
        (c(0.4, 1), h(3), h(5)),
    ]
}

/// Elements of one representation with weights near its edge (continuous: near 0).
pub fn elements_of(label: &RepLabel) -> Vec<(RepLabel, HalfInt, HalfInt)> {
    let ws = edge_weights(label, 3);
    ws.iter().flat_map(|&n| ws.iter().map(move |&m| (*label, n, m))).collect()
}

/// Relative tolerance standing in for "exact" in floating point (a few ulp).
pub const EXACT_TOL: f64 = 1e-14;

/// L₀, R₀ exactly (to [`EXACT_TOL`]) and Q by finite differences (relative residual) at `points` samples.
pub fn eigen_equations(elements: &[(RepLabel, HalfInt, HalfInt)], points: usize, seed: u64, tol: f64) -> Result<Vec<Check>> {
    let pts = random_points(seed, points);
    let mut out = Vec::new();
    for (label, n, m) in elements {
        let f = psi(label, *n, *m)?;
        let q = label.casimir_eigenvalue();
        let l0 = apply_operator(Operator::L0, &f, DiffMode::Analytic)?;
        let r0 = apply_operator(Operator::R0, &f, DiffMode::Analytic)?;
        let qf = apply_operator(Operator::Q, &f, DiffMode::fd())?;
        let (mut grade_err, mut q_err) = (0.0f64, 0.0f64);
        for p in &pts {
            let v = f.eval(p)?;
            // round-off only: relative to |w Ψ|
            let rel = |x: Complex64, w: f64| (x - v * w).norm() / (v.norm() * w.abs()).max(f64::MIN_POSITIVE);
            grade_err = grade_err.max(rel(l0.eval(p)?, n.value())).max(rel(r0.eval(p)?, m.value()));
            // relative to the size of the terms in Q f
            let scale = (v.norm() * (q.abs() + 1.0)).max(1e-3);
            q_err = q_err.max((qf.eval(p)? - v * q).norm() / scale);
        }
        let tag = format!("{label} ({n}, {m})");
        out.push(Check::new(format!("eigen L0/R0 {tag}"), grade_err, EXACT_TOL));
        out.push(Check::new(format!("eigen Q {tag}"), q_err, tol));
    }
    Ok(out)
}

/// Analytic L±, R± on Ψ against ladder_coeff × shifted Ψ, pointwise.
pub fn ladder_consistency(labels: &[RepLabel], depth: i64, points: usize, seed: u64, tol: f64) -> Result<Vec<Check>> {
    let pts = random_points(seed, points);
    labels
        .par_iter()
        .map(|label| {
            let ws = edge_weights(label, depth + 1);
            let mut worst = 0.0f64;
            for &n in &ws {
                for &m in &ws {
                    let f = psi(label, n, m)?;
                    for (op, dir) in [(Operator::LPlus, 1), (Operator::LMinus, -1), (Operator::RPlus, 1), (Operator::RMinus, -1)] {
                        let g = apply_operator(op, &f, DiffMode::Analytic)?;
                        let (w, sn, sm) = match op {
                            Operator::LPlus | Operator::LMinus => (n, n + HalfInt::int(dir), m),
                            _ => (m, n, m + HalfInt::int(dir)),
                        };
                        let c = label.ladder_coeff(w, dir as i32)?;
                        let target =
                            if label.weight_support(sn) && label.weight_support(sm) { Some(psi(label, sn, sm)?) } else { None };
                        for p in &pts {
                            let lhs = g.eval(p)?;
                            let rhs = match &target {
                                Some(t) => t.eval(p)? * c,
                                None => Complex64::new(0.0, 0.0),
                            };
                            worst = worst.max((lhs - rhs).norm() / rhs.norm().max(1.0));
                        }
                    }
                }
            }
            Ok(Check::new(format!("ladder {label}"), worst, tol))
        })
        .collect()
}

/// All grade pairs with |n|, |m| ≤ g_max and n − m integer.
pub fn sectors(g_max: HalfInt) -> Vec<(HalfInt, HalfInt)> {
    let t = g_max.twice();
    let mut out = Vec::new();
    for n in -t..=t {
        for m in -t..=t {
            if (n - m) % 2 == 0 {
                out.push((h(n), h(m)));
            }
        }
    }
    out
}

/// max |G − I| of the Losert Gram matrices over all sectors, plus the two unit integrals
/// ∫ e_{1,1,0}² dx and ∫ e_{1,1,1}² dx in the printed normalisation.
pub fn losert_gram(g_max: HalfInt, k_max: u32, tol: f64, unit_tol: f64) -> Result<Vec<Check>> {
    let secs = sectors(g_max);
    let worst = secs
        .par_iter()
        .map(|&(n, m)| {
            let rule = losert_rule(2 * k_max, n.abs().max(m.abs()))?;
            let g = gram_matrix(n, m, k_max, &rule)?;
            Ok((g - nalgebra::DMatrix::<f64>::identity(k_max as usize + 1, k_max as usize + 1)).abs().max())
        })
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    let mut out = vec![Check::new(format!("losert gram |n|,|m| <= {g_max}, k <= {k_max}"), worst, tol)];
    let rule = make_mapped_rule(40)?;
    for k in [0, 1] {
        let mut s = 0.0;
        for (&x, &w) in rule.points.iter().zip(&rule.weights) {
            s += crate::losert::e_radial(HalfInt::ONE, HalfInt::ONE, k, x.x)?.powi(2) * w;
        }
        out.push(Check::new(format!("integral e(1,1,{k})^2 dx - 1"), s - 1.0, unit_tol));
    }
    Ok(out)
}

/// Complement elements against discrete matrix elements of their sector, and the
/// discrete content of L±, R± applied to complement elements.
pub fn discrete_split(g_max: HalfInt, extra_k: u32, tol: f64) -> Result<Vec<Check>> {
    let secs = sectors(g_max);
    let results = secs
        .par_iter()
        .map(|&(n, m)| {
            let k_min = classify(n, m).k_min;
            let (mut orth, mut leak) = (0.0f64, 0.0f64);
            for k in k_min..=k_min + extra_k {
                let f = phi(n, m, k)?;
                for label in discrete_labels(n, m) {
                    let p = psi(&label, n, m)?;
                    orth = orth.max(scalar_product(&p, &f, &rule_for_pair(&p, &f)?)?.norm());
                }
                for op in [Operator::LPlus, Operator::LMinus, Operator::RPlus, Operator::RMinus] {
                    let g = apply_operator(op, &f, DiffMode::Analytic)?;
                    for label in discrete_labels(g.n, g.m) {
                        let p = psi(&label, g.n, g.m)?;
                        leak = leak.max(scalar_product(&p, &g, &rule_for_pair(&p, &g)?)?.norm());
                    }
                }
            }
            Ok((orth, leak))
        })
        .collect::<Result<Vec<_>>>()?;
    let orth = results.iter().map(|r| r.0).fold(0.0, f64::max);
    let leak = results.iter().map(|r| r.1).fold(0.0, f64::max);
    Ok(vec![
        Check::new(format!("complement orthogonal to discrete |n|,|m| <= {g_max}"), orth, tol),
        Check::new(format!("ladder keeps complement out of discrete |n|,|m| <= {g_max}"), leak, tol),
    ])
}

/// e^{−(x−1)} in the (1, 1) sector: smooth, with discrete and continuous content.
pub fn exponential_test_function() -> GroupFunction {
    let f = FnProfile::values(|x: XPoint| Complex64::new((-x.xm1).exp(), 0.0), 60.0);
    GroupFunction::new(HalfInt::ONE, HalfInt::ONE, Arc::new(f)).expect("integer grades")
}

pub fn plancherel_test_functions() -> Result<Vec<(String, GroupFunction)>> {
    Ok(vec![
        ("phi(2,1,1)".into(), phi(h(4), h(2), 1)?),
        ("phi(3/2,1/2,2)".into(), phi(h(3), h(1), 2)?),
        ("exp(1-x) (1,1)".into(), exponential_test_function()),
    ])
}

/// analyze → synthesize relative L² error on [1, x_max] and Parseval, per test function.
pub fn plancherel_round_trip(grid: &SigmaGrid, lambda_max: HalfInt, x_max: f64, tol: f64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (name, f) in plancherel_test_functions()? {
        let c = analyze(&f, lambda_max, grid, None)?;
        let norm = crate::matrix::norm(&f)?.powi(2);
        out.push(Check::new(format!("round trip {name}"), round_trip_error(&f, &c, x_max)?, tol));
        out.push(Check::new(format!("parseval {name}"), (c.parseval() - norm) / norm, tol));
    }
    Ok(out)
}

/// Φ_{1,0,0} from its σ-transform, the inverse expansion of Ψ_{1,(2i,0),0} over k ≤ k_max
/// (plain partial sums), and line Parseval.
pub fn basis_conversion_checks(grid: &SigmaGrid, k_max: u32, points: usize, seed: u64, tol: f64) -> Result<Vec<Check>> {
    let pts = random_points(seed, points);
    let idx = LosertIndex::new(HalfInt::ONE, HalfInt::ZERO, 0)?;
    let samples = basis_conversion(idx, grid)?;
    let f = phi(idx.n, idx.m, idx.k)?;
    let mut rec = 0.0f64;
    for p in &pts {
        rec = rec.max((reconstruct_from_transform(&samples, grid, p)? - f.eval(p)?).norm());
    }
    let sigma = 2.0;
    let target = psi(&RepLabel::Continuous { sigma, eps: HalfInt::ZERO }, idx.n, idx.m)?;
    let sums = inverse_expansion(idx.n, idx.m, sigma, k_max, &pts, Summation::Partial)?;
    let mut inv = 0.0f64;
    for (p, s) in pts.iter().zip(&sums) {
        inv = inv.max((s - target.eval(p)?).norm());
    }
    Ok(vec![
        Check::new("reconstruct phi(1,0,0) from sigma-transform", rec, tol),
        Check::new(format!("inverse expansion psi(1,(2i,0),0) k <= {k_max}"), inv, tol),
        Check::new("line parseval phi(1,0,0)", line_parseval(&samples, grid) - 1.0, tol),
    ])
}

/// Packets in the (0, 0) sector: orthogonality of disjoint packets, the smeared norm
/// against ∫ W |g|², and the growth of a truncated single-element norm.
pub fn smeared_checks(orth_tol: f64, norm_tol: f64, growth: f64) -> Result<Vec<Check>> {
    let (n, m) = (HalfInt::ZERO, HalfInt::ZERO);
    let a = Packet::gaussian(2.0, 0.1, 64)?;
    let b = Packet::gaussian(3.5, 0.1, 64)?;
    let cross = packet_inner(&a, &b, n, m)?.norm();
    let norm = smeared_continuous_norm(&a, n, m)?;
    let want = a.predicted_norm(HalfInt::ZERO);
    let s = psi(&RepLabel::Continuous { sigma: 1.0, eps: HalfInt::ZERO }, n, m)?;
    let ratio = truncated_norm(&s, 1e4)? / truncated_norm(&s, 1e2)?;
    Ok(vec![
        Check::new("disjoint packets inner product", cross, orth_tol),
        Check::new("packet norm / weighted |g|^2 - 1", norm / want - 1.0, norm_tol),
        // passes iff the ratio reaches `growth`
        Check::new(format!("truncated norm growth 1e2 -> 1e4 shortfall below {growth}x"), (growth - ratio).max(0.0), 0.0),
    ])
}

/// Clebsch–Gordan: Ψ_{1,(1,+),1}² onto λ = 2 and λ = 1, and the discrete + continuous
/// reconstruction of a D⁺ × D⁻ product at sample points.
pub fn clebsch_gordan_checks(grid: &SigmaGrid, lambda_max: HalfInt, points: usize, seed: u64, tol: f64, rec_tol: f64) -> Result<Vec<Check>> {
    let d1 = d(2, Eta::Plus);
    let a = (d1, HalfInt::ONE, HalfInt::ONE);
    let top = cg_coefficient(a, a, d(4, Eta::Plus))?;
    let low = cg_coefficient(a, a, d1)?;
    let plus = (d(4, Eta::Plus), h(4), h(6));
    let minus = (d(2, Eta::Minus), h(-2), h(-2));
    let cg = cg_project(plus, minus, lambda_max, grid)?;
    let prod = psi(&plus.0, plus.1, plus.2)?.product(&psi(&minus.0, minus.1, minus.2)?);
    let mut rec = 0.0f64;
    for p in random_points(seed, points) {
        rec = rec.max((cg.eval(&p)? - prod.eval(&p)?).norm());
    }
    Ok(vec![
        Check::new("cg psi(1,(1,+),1)^2 onto lambda=2 - 2/sqrt6", (top - 2.0 / 6f64.sqrt()).norm(), tol),
        Check::new("cg psi(1,(1,+),1)^2 onto lambda=1", low.norm(), tol),
        Check::new("cg D+(2) x D-(1) reconstruction", rec, rec_tol),
    ])
}

/// Random Losert element with one or two generators, |n|, |m| ≤ g_max, k ≤ k_max.
pub fn random_km_element(rng: &mut ChaCha8Rng, dim: usize, g_max: HalfInt, k_max: u32) -> Result<KMElement> {
    let mut e = KMElement::zero();
    let t = g_max.twice();
    for _ in 0..rng.random_range(1..=2) {
        let n2 = rng.random_range(-t..=t);
        let m2 = loop {
            let v = rng.random_range(-t..=t);
            if (v - n2) % 2 == 0 {
                break v;
            }
        };
        let g = KMGenerator::losert(rng.random_range(0..dim), h(n2), h(m2), rng.random_range(0..=k_max))?;
        e.generators.add(g, Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    }
    Ok(e)
}

/// Random triple whose brackets have central content: z gets terms conjugate to [x, y].
fn paired_triple(rng: &mut ChaCha8Rng, dim: usize, g_max: HalfInt, k_max: u32) -> Result<[KMElement; 3]> {
    let x = random_km_element(rng, dim, g_max, k_max)?;
    let y = random_km_element(rng, dim, g_max, k_max)?;
    let mut z = random_km_element(rng, dim, g_max, k_max)?;
    let (gx, gy) = (x.generators.keys().next().expect("non-empty"), y.generators.keys().next().expect("non-empty"));
    let (n, m) = (gx.mode.grades().0 + gy.mode.grades().0, gx.mode.grades().1 + gy.mode.grades().1);
    z.generators.add(KMGenerator::losert(rng.random_range(0..dim), -n, -m, rng.random_range(0..=k_max))?, Complex64::new(0.5, 0.0));
    Ok([x, y, z])
}

/// Jacobi identity, central part = cocycles, cocycle closure and antisymmetry on random
/// Losert elements.
pub fn kac_moody_checks(km: &KacMoody, g_max: HalfInt, k_max: u32, samples: usize, seed: u64, tol: f64) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim = km.algebra.dim();
    let triples: Vec<[KMElement; 3]> =
        (0..samples).map(|_| paired_triple(&mut rng, dim, g_max, k_max)).collect::<Result<_>>()?;
    let (mut jac, mut central, mut cyc, mut anti) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for [x, y, z] in &triples {
        jac = jac.max(km.jacobi_residual(x, y, z)?);
        let b = km.bracket(x, y)?;
        central = central
            .max((b.c_l - km.omega(Cocycle::L, x, y)?).norm())
            .max((b.c_r - km.omega(Cocycle::R, x, y)?).norm());
        for which in [Cocycle::L, Cocycle::R] {
            cyc = cyc.max(km.verify_cocycle(which, x, y, z)?);
            for (a, c) in [(x, z), (y, z)] {
                anti = anti.max((km.omega(which, a, c)? + km.omega(which, c, a)?).norm());
            }
        }
    }
    Ok(vec![
        Check::new(format!("jacobi residual |n|,|m| <= {g_max}, k <= {k_max}, k'' <= {}", km.truncation.k_max), jac, tol),
        Check::new("central part - (omega_L, omega_R)", central, 0.0),
        Check::new("cocycle cyclic sum", cyc, 1e-6),
        Check::new("omega antisymmetry", anti, 0.0),
    ])
}

/// LB bracket against PB bracket of the same discrete-sector generators.
pub fn presentation_checks(km: &KacMoody, tol: f64) -> Result<Vec<Check>> {
    let cases = [
        (KMGenerator::losert(0, h(2), h(2), 0)?, KMGenerator::losert(1, h(2), h(2), 0)?),
        (KMGenerator::losert(1, h(4), h(4), 0)?, KMGenerator::losert(2, h(-2), h(-2), 0)?),
        (KMGenerator::losert(1, h(3), h(5), 0)?, KMGenerator::losert(2, h(-3), h(-5), 0)?),
        (KMGenerator::losert(0, h(6), h(4), 1)?, KMGenerator::losert(1, h(-2), h(-4), 0)?),
    ];
    let mut worst = 0.0f64;
    for (x, y) in cases {
        worst = worst.max(km.presentation_gap(&KMElement::generator(x), &KMElement::generator(y))?);
    }
    Ok(vec![Check::new("LB/PB presentation gap", worst, tol)])
}

/// Killing form by explicit trace of ad·ad from the structure constants against
/// `killing_form`, plus the sl(2) values.
pub fn killing_checks(alg: &LieAlgebraSpec, tol: f64) -> Vec<Check> {
    let dim = alg.dim();
    let i = Complex64::new(0.0, 1.0);
    let g = alg.killing_form();
    let mut worst = 0.0f64;
    for a in 0..dim {
        for b in 0..dim {
            // Tr(ad a ad b) = Σ_{c,e} (i f^{a e}_c)(i f^{b c}_e)
            let mut s = Complex64::new(0.0, 0.0);
            for c in 0..dim {
                for e in 0..dim {
                    s += i * alg.f(a, e, c) * i * alg.f(b, c, e);
                }
            }
            worst = worst.max((s - g[(a, b)]).norm());
        }
    }
    let mut out = vec![Check::new("killing form brute force", worst, tol)];
    if let (Some(k0), Some(kp), Some(km)) = (alg.index_of("K0"), alg.index_of("K+"), alg.index_of("K-")) {
        out.push(Check::new("g(K0,K0) - 2", (g[(k0, k0)] - 2.0).norm(), tol));
        out.push(Check::new("g(K+,K-) + 4", (g[(kp, km)] + 4.0).norm(), tol));
        let off = [(k0, kp), (k0, km), (kp, kp), (km, km)].iter().map(|&(a, b)| g[(a, b)].norm()).fold(0.0, f64::max);
        out.push(Check::new("killing off-grading zeros", off, tol));
    }
    out
}
