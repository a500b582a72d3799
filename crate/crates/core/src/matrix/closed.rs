//! Closed-form matrix elements Ψ_{nΛm} of the discrete and principal series.

use std::sync::Arc;

use num_complex::Complex64;

use super::{GroupFunction, RadialProfile};
use crate::error::{Error, Result};
use crate::half::HalfInt;
use crate::reps::{Eta, RepLabel};
use crate::specfun::{hyp2f1, hyp2f1_jet, jacobi_poly_jet, ln_factorial, log_gamma, Jet, XPoint};

/// Jets of x − 1 and x + 1.
pub(crate) fn x_jets(p: XPoint) -> (Jet, Jet) {
    (Jet::real(p.xm1, 1.0, 0.0), Jet::real(p.xp1(), 1.0, 0.0))
}

/// Jets of A = (x−1)/(x+1), B = 2/(x+1) and t = (3−x)/(1+x) = 2B − 1.
pub(crate) fn abt_jets(p: XPoint) -> (Jet, Jet, Jet) {
    let (xm1, xp1) = x_jets(p);
    let inv = xp1.powf(-1.0);
    let a = xm1 * inv;
    let b = inv.scale(2.0.into());
    let t = b.scale(2.0.into()) - Jet::constant(1.0.into());
    (a, b, t)
}

pub(crate) fn truncate(j: Jet, order: usize) -> Jet {
    let z = Complex64::new(0.0, 0.0);
    match order {
        0 => Jet::new(j.v, z, z),
        1 => Jet::new(j.v, j.d1, z),
        _ => j,
    }
}

/// Discrete series radial profile, for weights lo ≤ hi of D⁺_λ:
///
/// g(x) = c · ((x−1)/(x+1))^{(hi−lo)/2} (2/(x+1))^λ P_{lo−λ}^{(hi−lo, 2λ−1)}((3−x)/(1+x)),
///
/// which is the hypergeometric closed form
/// c′ cosh^{−lo−hi}ρ sinh^{hi−lo}ρ ₂F₁(λ−lo, 1−λ−lo; 1+hi−lo; −sinh²ρ) rewritten with a
/// Jacobi argument in [−1, 1] so that evaluation stays stable for large x.
#[derive(Clone, Debug)]
pub struct DiscreteProfile {
    lambda: HalfInt,
    lo: HalfInt,
    hi: HalfInt,
    coef: f64,
}

impl DiscreteProfile {
    /// D⁺ radial profile for weights (n, m), including the (−1)^{n−m} sign when n > m.
    pub fn new(lambda: HalfInt, n: HalfInt, m: HalfInt) -> Result<Self> {
        let (lo, hi) = if n <= m { (n, m) } else { (m, n) };
        if lo < lambda || !(lo - lambda).is_integer() {
            return Err(Error::Domain(format!("weights ({n}, {m}) outside D+ with λ = {lambda}")));
        }
        if lambda.twice() <= 1 {
            return Err(Error::NonNormalisable(format!("discrete matrix elements need λ > 1/2, got {lambda}")));
        }
        let l = lambda.value();
        let int = |h: HalfInt| h.to_int().expect("integer by construction");
        let deg = int(lo - lambda);
        let a = int(hi - lo);
        let ln_norm = 0.5 * (2.0 * (2.0 * l - 1.0)).ln() - ln_factorial(a)?
            + 0.5
                * (ln_factorial(int(hi - lambda))? + ln_factorial(int(hi + lambda - HalfInt::ONE))?
                    - ln_factorial(deg)?
                    - ln_factorial(int(lo + lambda - HalfInt::ONE))?);
        // ₂F₁(−N, N+a+β+1; a+1; ·) = N!/(a+1)_N · P_N^{(a,β)}
        let ln_jac = ln_factorial(deg)? + ln_factorial(a)? - ln_factorial(a + deg)?;
        let sign = if n > m { (n - m).parity() } else { 1.0 };
        Ok(DiscreteProfile { lambda, lo, hi, coef: sign * (ln_norm + ln_jac).exp() })
    }

    pub fn lambda(&self) -> HalfInt {
        self.lambda
    }
}

impl RadialProfile for DiscreteProfile {
    fn eval(&self, p: XPoint, order: usize) -> Result<Jet> {
        let (a, b, t) = abt_jets(p);
        let l = self.lambda.value();
        let alpha = (self.hi - self.lo).value();
        let deg = (self.lo - self.lambda).to_int().expect("integer");
        let jac = jacobi_poly_jet(deg, alpha, 2.0 * l - 1.0, t.v.re)?;
        let g = a.powf(alpha / 2.0) * b.powf(l) * Jet::compose(jac, t);
        Ok(truncate(g.scale(self.coef.into()), order))
    }

    fn max_order(&self) -> usize {
        2
    }

    fn decay(&self) -> f64 {
        2.0 * self.lambda.value()
    }
}

/// Principal series radial profile for weights lo ≤ hi:
///
/// g(x) = c · cosh^{lo+hi}ρ sinh^{hi−lo}ρ ₂F₁(hi+½+iσ, hi+½−iσ; hi−lo+1; −sinh²ρ),
/// c = |Γ(hi+½+iσ)/Γ(lo+½+iσ)| / (hi−lo)!, so that g(1) = δ_{lo,hi}.
#[derive(Clone, Debug)]
pub struct ContinuousProfile {
    sigma: f64,
    lo: HalfInt,
    hi: HalfInt,
    coef: f64,
}

impl ContinuousProfile {
    pub fn new(sigma: f64, n: HalfInt, m: HalfInt) -> Result<Self> {
        if !(sigma > 0.0) {
            return Err(Error::Domain(format!("σ must be positive, got {sigma}")));
        }
        let (lo, hi) = if n <= m { (n, m) } else { (m, n) };
        let a = (hi - lo).to_int().ok_or_else(|| Error::Domain(format!("weights ({n}, {m}) differ by a half")))?;
        let gh = log_gamma(Complex64::new(hi.value() + 0.5, sigma))?.re;
        let gl = log_gamma(Complex64::new(lo.value() + 0.5, sigma))?.re;
        let sign = if n > m { (n - m).parity() } else { 1.0 };
        Ok(ContinuousProfile { sigma, lo, hi, coef: sign * (gh - gl - ln_factorial(a)?).exp() })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }
}

impl RadialProfile for ContinuousProfile {
    fn eval(&self, p: XPoint, order: usize) -> Result<Jet> {
        let (xm1, xp1) = x_jets(p);
        let hi = self.hi.value();
        let a = (self.hi - self.lo).value();
        let pa = Complex64::new(hi + 0.5, self.sigma);
        let pb = pa.conj();
        let pc = Complex64::new(a + 1.0, 0.0);
        let z = -p.xm1 / 2.0;
        let f = if order == 0 {
            Jet::constant(hyp2f1(pa, pb, pc, z)?)
        } else {
            let zj = Jet::real(z, -0.5, 0.0);
            Jet::compose(hyp2f1_jet(pa, pb, pc, z)?, zj)
        };
        let half = Complex64::new(0.5, 0.0);
        let g = xp1.scale(half).powf((self.lo + self.hi).value() / 2.0) * xm1.scale(half).powf(a / 2.0) * f;
        Ok(truncate(g.scale(self.coef.into()), order))
    }

    fn max_order(&self) -> usize {
        2
    }

    fn decay(&self) -> f64 {
        1.0
    }

    fn oscillatory(&self) -> bool {
        true
    }
}

/// Matrix element Ψ_{nΛm}: unit norm for the discrete series, Ψ(identity) = δ_{nm}
/// for the principal series. D⁻ elements are Ψ_{n,(λ,−),m} = conj Ψ_{−n,(λ,+),−m}.
pub fn psi(label: &RepLabel, n: HalfInt, m: HalfInt) -> Result<GroupFunction> {
    label.validate()?;
    if !label.weight_support(n) || !label.weight_support(m) {
        return Err(Error::Domain(format!("weights ({n}, {m}) not supported by {label}")));
    }
    let radial: Arc<dyn RadialProfile> = match *label {
        RepLabel::Discrete { lambda, eta: Eta::Plus } => Arc::new(DiscreteProfile::new(lambda, n, m)?),
        RepLabel::Discrete { lambda, eta: Eta::Minus } => Arc::new(DiscreteProfile::new(lambda, -n, -m)?),
        RepLabel::Continuous { sigma, .. } => Arc::new(ContinuousProfile::new(sigma, n, m)?),
    };
    GroupFunction::new(n, m, radial)
}
