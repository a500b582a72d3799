//! Functions on SL(2,ℝ) ≅ SU(1,1): group points, closed-form matrix elements, the
//! invariant scalar product and the left/right differential operators.
//!
//! A function of definite grades (n, m) under (L₀, R₀) is stored as the phase
//! e^{i(m+n)φ₁ + i(m−n)φ₂} times a radial profile g(x), x = cosh 2ρ.

mod closed;
mod ops;
mod profiles;

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::half::HalfInt;
use crate::specfun::{make_radial_rule, tail_estimate, Jet, QuadratureRule, XPoint};

pub(crate) use closed::{abt_jets, truncate};
pub use closed::{psi, ContinuousProfile, DiscreteProfile};
pub use ops::{apply_operator, DiffMode, Operator};
pub use profiles::{FnProfile, LinearProfile, ProductProfile};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupPoint {
    pub rho: f64,
    pub phi1: f64,
    pub phi2: f64,
}

impl GroupPoint {
    /// Angles are reduced to [0, 2π).
    pub fn new(rho: f64, phi1: f64, phi2: f64) -> Result<Self> {
        if !(rho >= 0.0) || !rho.is_finite() || !phi1.is_finite() || !phi2.is_finite() {
            return invalid(format!("invalid group point ({rho}, {phi1}, {phi2})"));
        }
        Ok(GroupPoint { rho, phi1: phi1.rem_euclid(2.0 * PI), phi2: phi2.rem_euclid(2.0 * PI) })
    }

    pub fn identity() -> Self {
        GroupPoint { rho: 0.0, phi1: 0.0, phi2: 0.0 }
    }

    pub fn x(&self) -> f64 {
        (2.0 * self.rho).cosh()
    }

    pub fn radial(&self) -> XPoint {
        XPoint::from_rho(self.rho)
    }
}

/// [[z₁, z₂], [z̄₂, z̄₁]] with z₁ = cosh ρ e^{iφ₁}, z₂ = sinh ρ e^{iφ₂}.
pub fn su11_matrix(p: &GroupPoint) -> Matrix2<Complex64> {
    let z1 = Complex64::from_polar(p.rho.cosh(), p.phi1);
    let z2 = Complex64::from_polar(p.rho.sinh(), p.phi2);
    Matrix2::new(z1, z2, z2.conj(), z1.conj())
}

/// A radial profile g(x) on [1, ∞).
pub trait RadialProfile: Send + Sync + fmt::Debug {
    /// Value and the first `order` x-derivatives (entries beyond `order` are zero).
    fn eval(&self, p: XPoint, order: usize) -> Result<Jet>;

    /// Highest derivative order `eval` can deliver.
    fn max_order(&self) -> usize;

    /// Declared decay: |g(x)| ≤ C x^{−decay/2}.
    fn decay(&self) -> f64;

    /// Whether g oscillates in ln x at infinity (tail fits do not apply).
    fn oscillatory(&self) -> bool {
        false
    }

    fn value(&self, p: XPoint) -> Result<Complex64> {
        Ok(self.eval(p, 0)?.v)
    }
}

#[derive(Clone, Debug)]
pub struct GroupFunction {
    pub n: HalfInt,
    pub m: HalfInt,
    pub radial: Arc<dyn RadialProfile>,
}

impl GroupFunction {
    pub fn new(n: HalfInt, m: HalfInt, radial: Arc<dyn RadialProfile>) -> Result<Self> {
        if !(n - m).is_integer() {
            return invalid(format!("grades ({n}, {m}) must differ by an integer"));
        }
        Ok(GroupFunction { n, m, radial })
    }

    pub fn phase(&self, p: &GroupPoint) -> Complex64 {
        let a = (self.m + self.n).value() * p.phi1 + (self.m - self.n).value() * p.phi2;
        Complex64::from_polar(1.0, a)
    }

    pub fn eval(&self, p: &GroupPoint) -> Result<Complex64> {
        Ok(self.phase(p) * self.radial.value(p.radial())?)
    }

    pub fn radial_value(&self, p: XPoint) -> Result<Complex64> {
        self.radial.value(p)
    }

    pub fn decay(&self) -> f64 {
        self.radial.decay()
    }

    pub fn scaled(&self, c: Complex64) -> GroupFunction {
        let radial: Arc<dyn RadialProfile> = Arc::new(LinearProfile::new(vec![(c, self.radial.clone())]));
        GroupFunction { n: self.n, m: self.m, radial }
    }

    /// Pointwise product; grades add.
    pub fn product(&self, other: &GroupFunction) -> GroupFunction {
        GroupFunction {
            n: self.n + other.n,
            m: self.m + other.m,
            radial: Arc::new(ProductProfile::new(self.radial.clone(), other.radial.clone())),
        }
    }

    /// Complex conjugate: grades flip sign.
    pub fn conj(&self) -> GroupFunction {
        GroupFunction { n: -self.n, m: -self.m, radial: Arc::new(profiles::ConjProfile(self.radial.clone())) }
    }

    /// Samples x = 10², 10³, 10⁴ and checks |g| x^{decay/2} stays bounded (no growth
    /// beyond a factor 10 across the samples).
    pub fn check_decay(&self) -> Result<bool> {
        let d = self.decay();
        let s: Vec<f64> = [1e2, 1e3, 1e4]
            .iter()
            .map(|&x| Ok(self.radial.value(XPoint::from_x(x))?.norm() * x.powf(d / 2.0)))
            .collect::<Result<_>>()?;
        Ok(s[2] <= 10.0 * s[0].max(s[1]).max(1e-300))
    }
}

/// A radial rule adequate for an integrand decaying like x^{−p}, aiming at absolute
/// error `tol`. Oscillatory integrands get no tail correction, so the cut-off moves out.
pub fn radial_rule_for(p: f64, oscillatory: bool, tol: f64) -> Result<QuadratureRule> {
    if p <= 1.0 {
        return Err(Error::NonNormalisable(format!("integrand decays like x^-{p}")));
    }
    let x_max = if oscillatory {
        (tol * (p - 1.0)).powf(1.0 / (1.0 - p))
    } else {
        // the fitted tail leaves roughly X^{−(p+1)}
        tol.powf(-1.0 / (p + 1.0)).max(1e4)
    };
    make_radial_rule(x_max.clamp(1e3, 1e26), 24)
}

/// (f, g) = ¼ ∫₁^∞ conj(g_f) g_g dx when the grades agree, 0 otherwise.
pub fn scalar_product(f: &GroupFunction, g: &GroupFunction, rule: &QuadratureRule) -> Result<Complex64> {
    if f.n != g.n || f.m != g.m {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let p = (f.decay() + g.decay()) / 2.0;
    if p <= 1.0 {
        return Err(Error::NonNormalisable(format!(
            "pairing of profiles with decay {} and {} diverges",
            f.decay(),
            g.decay()
        )));
    }
    let integrand = |x: XPoint| -> Result<Complex64> { Ok(f.radial.value(x)?.conj() * g.radial.value(x)?) };
    let mut body = Complex64::new(0.0, 0.0);
    for (&x, &w) in rule.points.iter().zip(&rule.weights) {
        body += integrand(x)? * w;
    }
    if !f.radial.oscillatory() && !g.radial.oscillatory() && rule.x_max().is_finite() {
        body += tail_estimate(|x| integrand(x).unwrap_or_default(), rule.x_max(), p);
    }
    Ok(body / 4.0)
}

/// Default rule for scalar products of the two functions (absolute accuracy ~1e-13).
pub fn rule_for_pair(f: &GroupFunction, g: &GroupFunction) -> Result<QuadratureRule> {
    let osc = f.radial.oscillatory() || g.radial.oscillatory();
    radial_rule_for((f.decay() + g.decay()) / 2.0, osc, 1e-13)
}

pub fn norm(f: &GroupFunction) -> Result<f64> {
    let rule = rule_for_pair(f, f)?;
    Ok(scalar_product(f, f, &rule)?.re.max(0.0).sqrt())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TabRow {
    pub label: String,
    pub n: HalfInt,
    pub m: HalfInt,
    pub rho: f64,
    pub phi1: f64,
    pub phi2: f64,
    pub re: f64,
    pub im: f64,
}

/// Values of `f` on the given points, one row per point.
pub fn tabulate(label: &str, f: &GroupFunction, points: &[GroupPoint]) -> Result<Vec<TabRow>> {
    points
        .iter()
        .map(|p| {
            let v = f.eval(p)?;
            Ok(TabRow {
                label: label.to_string(),
                n: f.n,
                m: f.m,
                rho: p.rho,
                phi1: p.phi1,
                phi2: p.phi2,
                re: v.re,
                im: v.im,
            })
        })
        .collect()
}
