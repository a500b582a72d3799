//! Jacobi polynomials P_k^{(a,b)}(x) for arbitrary real parameters.

use super::jet::Jet;
use crate::error::{invalid, Result};

/// Generalised binomial coefficient C(r, j) for real r and integer j ≥ 0.
fn binom(r: f64, j: usize) -> f64 {
    let mut v = 1.0;
    for i in 0..j {
        v *= (r - i as f64) / (i as f64 + 1.0);
    }
    v
}

/// P_k^{(a,b)}(x) = Σ_s C(k+a, s) C(k+b, k−s) ((x−1)/2)^{k−s} ((x+1)/2)^s.
pub fn jacobi_poly_finite_sum(k: i64, a: f64, b: f64, x: f64) -> Result<f64> {
    if k < 0 {
        return invalid(format!("Jacobi degree must be nonnegative, got {k}"));
    }
    let k = k as usize;
    let (lo, hi) = ((x - 1.0) / 2.0, (x + 1.0) / 2.0);
    let kf = k as f64;
    Ok((0..=k)
        .map(|s| binom(kf + a, s) * binom(kf + b, k - s) * lo.powi((k - s) as i32) * hi.powi(s as i32))
        .sum())
}

/// P_k^{(a,b)}(x). Classical parameters (a, b ≥ −1) use the three-term recurrence in
/// the degree; below that, where the recurrence loses digits and its leading
/// coefficient can vanish, the finite sum is used.
pub fn jacobi_poly(k: i64, a: f64, b: f64, x: f64) -> Result<f64> {
    if k < 0 {
        return invalid(format!("Jacobi degree must be nonnegative, got {k}"));
    }
    if a < -1.0 || b < -1.0 {
        return jacobi_poly_finite_sum(k, a, b, x);
    }
    jacobi_recurrence(k, a, b, x)
}

fn jacobi_recurrence(k: i64, a: f64, b: f64, x: f64) -> Result<f64> {
    if k == 0 {
        return Ok(1.0);
    }
    let p1 = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0;
    if k == 1 {
        return Ok(p1);
    }
    let ab = a + b;
    let (mut pm, mut p) = (1.0, p1);
    for n in 2..=k {
        let n = n as f64;
        let lead = 2.0 * n * (n + ab) * (2.0 * n + ab - 2.0);
        if lead.abs() < 1e-12 * (1.0 + n * n * n) {
            return jacobi_poly_finite_sum(k, a, b, x);
        }
        let c1 = (2.0 * n + ab - 1.0) * ((2.0 * n + ab) * (2.0 * n + ab - 2.0) * x + a * a - b * b);
        let c2 = 2.0 * (n + a - 1.0) * (n + b - 1.0) * (2.0 * n + ab);
        let next = (c1 * p - c2 * pm) / lead;
        pm = p;
        p = next;
    }
    Ok(p)
}

/// Value and first two x-derivatives, via d/dx P_k^{(a,b)} = (k+a+b+1)/2 · P_{k−1}^{(a+1,b+1)}.
pub fn jacobi_poly_jet(k: i64, a: f64, b: f64, x: f64) -> Result<Jet> {
    let v = jacobi_poly(k, a, b, x)?;
    let d1 = if k >= 1 { (k as f64 + a + b + 1.0) / 2.0 * jacobi_poly(k - 1, a + 1.0, b + 1.0, x)? } else { 0.0 };
    let d2 = if k >= 2 {
        (k as f64 + a + b + 1.0) * (k as f64 + a + b + 2.0) / 4.0 * jacobi_poly(k - 2, a + 2.0, b + 2.0, x)?
    } else {
        0.0
    };
    Ok(Jet::real(v, d1, d2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gauss_legendre;
    use proptest::prelude::*;

    #[test]
    fn spec_values() {
        assert_eq!(jacobi_poly(0, 0.0, -2.0, 7.3).unwrap(), 1.0);
        assert!((jacobi_poly(1, 2.0, 3.0, 0.5).unwrap() - 1.25).abs() < 1e-15);
        assert!((jacobi_poly(2, 0.0, 0.0, 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(jacobi_poly(-1, 0.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn legendre_oracle() {
        // Bonnet recurrence as an independent oracle for a = b = 0.
        for &x in &[-0.9, -0.2, 0.35, 0.8] {
            let (mut p0, mut p1) = (1.0, x);
            for n in 1..15 {
                let nf = n as f64;
                let p2 = ((2.0 * nf + 1.0) * x * p1 - nf * p0) / (nf + 1.0);
                p0 = p1;
                p1 = p2;
                assert!((jacobi_poly(n + 1, 0.0, 0.0, x).unwrap() - p1).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn negative_parameter_sample() {
        // P₁^{(0,−3)}(x) = (3−x)/2
        for x in [1.0, 2.0, 3.0, 10.0] {
            assert!((jacobi_poly(1, 0.0, -3.0, x).unwrap() - (3.0 - x) / 2.0).abs() < 1e-14);
        }
    }

    // Oracle: the finite sum in exact rational arithmetic.
    #[test]
    fn negative_parameters_exact() {
        let cases = [
            (5, -6.0, 5.0, 1.7, 2.44631249999999988e-02),
            (20, -8.0, 8.0, 1.7, 2.32563549147236114e+06),
            (20, -8.0, -8.0, 50.0, 9.63240301656538178e+31),
            (12, 3.0, -7.0, 4.0, 1.83831844329833984e+09),
            (9, -3.0, -3.0, 1.2, 5.12701200000000024e-02),
            (20, 8.0, -8.0, 13.0, 4.47492148840364802e+27),
            (7, -2.0, -9.0, 3.0, -2.0),
        ];
        for (k, a, b, x, want) in cases {
            let v = jacobi_poly(k, a, b, x).unwrap();
            assert!((v - want).abs() < 1e-11 * want.abs(), "k={k} a={a} b={b} x={x}: {v}");
        }
    }

    #[test]
    fn agrees_with_finite_sum_on_grid() {
        for k in 0..=20 {
            for a in -8..=8 {
                for b in -8..=8 {
                    for &x in &[1.0, 1.7, 4.0, 13.0, 50.0] {
                        let r = jacobi_poly(k, a as f64, b as f64, x).unwrap();
                        let s = jacobi_poly_finite_sum(k, a as f64, b as f64, x).unwrap();
                        let scale = r.abs().max(s.abs()).max(1e-300);
                        assert!((r - s).abs() <= 1e-11 * scale, "k={k} a={a} b={b} x={x}: {r} vs {s}");
                    }
                }
            }
        }
    }

    #[test]
    fn orthogonality_on_interval() {
        let (nodes, weights) = gauss_legendre(40);
        for &(a, b) in &[(0.0, 0.0), (1.0, 2.0), (0.5, -0.5), (3.0, 0.0)] {
            // integrate with the weight as part of the integrand; (1±x)^{-1/2} handled by x = cos θ
            let ip = |i: i64, j: i64| -> f64 {
                nodes
                    .iter()
                    .zip(&weights)
                    .map(|(&s, &w)| {
                        let th = (s + 1.0) * std::f64::consts::PI / 2.0;
                        let x = th.cos();
                        let jac = th.sin() * std::f64::consts::PI / 2.0;
                        w * jac
                            * (1.0 - x).powf(a)
                            * (1.0 + x).powf(b)
                            * jacobi_poly(i, a, b, x).unwrap()
                            * jacobi_poly(j, a, b, x).unwrap()
                    })
                    .sum()
            };
            for i in 0..6 {
                for j in 0..i {
                    let g = ip(i, j) / (ip(i, i) * ip(j, j)).sqrt();
                    assert!(g.abs() < 1e-10, "a={a} b={b} i={i} j={j}: {g}");
                }
            }
        }
    }

    #[test]
    fn jet_against_differences() {
        let (k, a, b, x) = (5, 1.0, -4.0, 2.3);
        let j = jacobi_poly_jet(k, a, b, x).unwrap();
        let h = 1e-4;
        let fp = jacobi_poly(k, a, b, x + h).unwrap();
        let fm = jacobi_poly(k, a, b, x - h).unwrap();
        assert!((j.d1.re - (fp - fm) / (2.0 * h)).abs() < 1e-6 * j.d1.re.abs().max(1.0));
        assert!((j.d2.re - (fp - 2.0 * j.v.re + fm) / (h * h)).abs() < 1e-4 * j.d2.re.abs().max(1.0));
    }

    proptest! {
        #[test]
        fn recurrence_matches_sum_random(k in 0i64..12, a in -1.0..6.0f64, b in -1.0..6.0f64, x in 1.0..20.0f64) {
            let r = jacobi_recurrence(k, a, b, x).unwrap();
            let s = jacobi_poly_finite_sum(k, a, b, x).unwrap();
            let scale: f64 = (0..=k as usize).map(|s| {
                binom(k as f64 + a, s).abs() * binom(k as f64 + b, k as usize - s).abs()
                    * ((x - 1.0) / 2.0).powi((k as usize - s) as i32) * ((x + 1.0) / 2.0).powi(s as i32)
            }).sum();
            prop_assert!((r - s).abs() <= 1e-11 * scale.max(1.0));
        }
    }
}
