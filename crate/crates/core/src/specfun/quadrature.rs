//! Gauss–Legendre rules, including composite rules for radial integrals over [1, ∞).

use std::f64::consts::PI;

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;

use crate::error::{invalid, Result};

/// A point of the radial half-line with x − 1 carried separately, so that values
/// close to the identity (x → 1) keep full relative precision.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct XPoint {
    pub x: f64,
    pub xm1: f64,
}

impl XPoint {
    pub fn from_x(x: f64) -> Self {
        XPoint { x, xm1: x - 1.0 }
    }

    /// x = cosh 2ρ, x − 1 = 2 sinh²ρ.
    pub fn from_rho(rho: f64) -> Self {
        let s = rho.sinh();
        XPoint { x: (2.0 * rho).cosh(), xm1: 2.0 * s * s }
    }

    pub fn xp1(self) -> f64 {
        self.xm1 + 2.0
    }

    pub fn rho(self) -> f64 {
        (self.xm1 / 2.0).sqrt().asinh()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Interval {
    Finite { a: f64, b: f64 },
    /// [1, ∞) truncated at `x_max`, panels uniform in ρ with x = cosh 2ρ.
    Radial { x_max: f64 },
    /// All of [1, ∞), through t = (3−x)/(1+x) ∈ (−1, 1]; nothing is left for a tail.
    HalfLine,
}

#[derive(Clone, Debug)]
pub struct QuadratureRule {
    pub points: Vec<XPoint>,
    pub weights: Vec<f64>,
    pub interval: Interval,
    /// Relative accuracy the rule is designed for on smooth integrands.
    pub target_accuracy: f64,
}

/// Nodes and weights of the n-point Gauss–Legendre rule on [−1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..(n + 1) / 2 {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 0 { 1.0 } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * p - pm) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

impl QuadratureRule {
    /// Composite Gauss–Legendre rule on [a, b] with `panels` equal panels.
    pub fn finite(a: f64, b: f64, order: usize, panels: usize) -> Result<Self> {
        if !(b > a) || order == 0 || panels == 0 {
            return invalid("finite rule needs a < b and positive order/panels");
        }
        let (gn, gw) = gauss_legendre(order);
        let h = (b - a) / panels as f64;
        let mut points = Vec::with_capacity(order * panels);
        let mut weights = Vec::with_capacity(order * panels);
        for p in 0..panels {
            let lo = a + p as f64 * h;
            for (t, w) in gn.iter().zip(&gw) {
                points.push(XPoint::from_x(lo + (t + 1.0) * h / 2.0));
                weights.push(w * h / 2.0);
            }
        }
        Ok(QuadratureRule { points, weights, interval: Interval::Finite { a, b }, target_accuracy: 1e-13 })
    }

    pub fn integrate(&self, f: impl Fn(XPoint) -> Complex64) -> Complex64 {
        self.points.iter().zip(&self.weights).map(|(&p, &w)| f(p) * w).sum()
    }

    pub fn integrate_real(&self, f: impl Fn(XPoint) -> f64) -> f64 {
        self.points.iter().zip(&self.weights).map(|(&p, &w)| f(p) * w).sum()
    }

    pub fn x_max(&self) -> f64 {
        match self.interval {
            Interval::Finite { b, .. } => b,
            Interval::Radial { x_max } => x_max,
            Interval::HalfLine => f64::INFINITY,
        }
    }

    /// Integral over [1, ∞) for an integrand decaying like x^{−p}, p > 1: the rule
    /// plus the fitted tail returned by [`tail_estimate`].
    pub fn integrate_with_tail(&self, f: impl Fn(XPoint) -> Complex64, p: f64) -> (Complex64, Complex64) {
        let body = self.integrate(&f);
        let tail = if self.x_max().is_finite() { tail_estimate(&f, self.x_max(), p) } else { Complex64::new(0.0, 0.0) };
        (body + tail, tail)
    }
}

/// ∫_X^∞ f dx, assuming f(x) ≈ x^{−p}(C₀ + C₁/x + C₂/x²) beyond X; the three
/// constants are fitted at X, 2X and 4X. Returns zero when p ≤ 1 (no finite tail).
pub fn tail_estimate(f: impl Fn(XPoint) -> Complex64, x_max: f64, p: f64) -> Complex64 {
    if p <= 1.0 {
        return Complex64::new(0.0, 0.0);
    }
    let xs = [x_max, 2.0 * x_max, 4.0 * x_max];
    let m = Matrix3::from_fn(|i, j| xs[i].powf(-p - j as f64));
    let Some(inv) = m.try_inverse() else {
        return Complex64::new(0.0, 0.0);
    };
    let vals: Vec<Complex64> = xs.iter().map(|&x| f(XPoint::from_x(x))).collect();
    let solve = |part: fn(&Complex64) -> f64| {
        let v = Vector3::new(part(&vals[0]), part(&vals[1]), part(&vals[2]));
        inv * v
    };
    let tail = |c: Vector3<f64>| -> f64 {
        (0..3).map(|j| c[j] * x_max.powf(1.0 - p - j as f64) / (p - 1.0 + j as f64)).sum()
    };
    Complex64::new(tail(solve(|z| z.re)), tail(solve(|z| z.im)))
}

/// Composite Gauss–Legendre rule for ∫₁^{x_max} dx, uniform in ρ = ½ acosh x with
/// panels of width at most ½ and `order` nodes per panel. Weights include dx/dρ = 2 sinh 2ρ.
pub fn make_radial_rule(x_max: f64, order: usize) -> Result<QuadratureRule> {
    if !(x_max > 1.0) || order == 0 {
        return invalid("radial rule needs x_max > 1 and positive order");
    }
    let rho_max = x_max.acosh() / 2.0;
    let panels = (rho_max / 0.5).ceil().max(1.0) as usize;
    let (gn, gw) = gauss_legendre(order);
    let h = rho_max / panels as f64;
    let mut points = Vec::with_capacity(order * panels);
    let mut weights = Vec::with_capacity(order * panels);
    for p in 0..panels {
        let lo = p as f64 * h;
        for (t, w) in gn.iter().zip(&gw) {
            let rho = lo + (t + 1.0) * h / 2.0;
            points.push(XPoint::from_rho(rho));
            weights.push(w * h / 2.0 * 2.0 * (2.0 * rho).sinh());
        }
    }
    Ok(QuadratureRule { points, weights, interval: Interval::Radial { x_max }, target_accuracy: 1e-12 })
}

/// Gauss–Legendre rule in t = (3−x)/(1+x) covering all of [1, ∞), with
/// dx = 4 dt/(1+t)². Exact when the integrand times 4(1+t)^{−2} is a polynomial of
/// degree < 2·order in t, which is the case for products of Jacobi-type profiles
/// (x−1)^{a/2}(x+1)^{−b} P(t) with integer total exponents.
pub fn make_mapped_rule(order: usize) -> Result<QuadratureRule> {
    if order == 0 {
        return invalid("mapped rule needs a positive order");
    }
    let (gn, gw) = gauss_legendre(order);
    let mut points = Vec::with_capacity(order);
    let mut weights = Vec::with_capacity(order);
    for (&t, &w) in gn.iter().zip(&gw) {
        let xm1 = 2.0 * (1.0 - t) / (1.0 + t);
        points.push(XPoint { x: 1.0 + xm1, xm1 });
        weights.push(4.0 * w / ((1.0 + t) * (1.0 + t)));
    }
    Ok(QuadratureRule { points, weights, interval: Interval::HalfLine, target_accuracy: 1e-13 })
}
