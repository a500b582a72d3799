//! Plancherel analysis and synthesis on SL(2,ℝ) and the conversion between the
//! Plancherel and Losert bases.
//!
//! Conventions. With the group scalar product (f, g) = ¼∫₁^∞ conj(g_f) g_g dx, write
//! Ψ̂_σ = 2Ψ_{n(iσ,ε)m} and W(σ) = σ tanh π(σ+iε) (σ tanh πσ for ε = 0, σ coth πσ for
//! ε = ½). Then for f of grades (n, m)
//!
//! f = Σ_λ (Ψ_{nλm}, f) Ψ_{nλm} + ∫₀^∞ dσ W(σ) c(σ) Ψ̂_σ,   c(σ) = (Ψ̂_σ, f) = ½∫₁^∞ conj(Ψ_σ) g_f dx,
//!
//! and ‖f‖² = Σ|f_λ|² + ∫ W |c|² dσ. For f = Φ_{nmk} in the complement of the discrete
//! series, c(σ) = ∫₁^∞ conj(Ψ_σ) e_{nmk} dx =: f^{nmk}(σ), and conversely
//! Ψ_σ = ½ Σ_{k ≥ k_min} conj(f^{nmk}(σ)) Φ_{nmk}.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::half::HalfInt;
use crate::losert::{classify, discrete_labels, phi, LosertIndex};
use crate::matrix::{psi, rule_for_pair, scalar_product, GroupFunction, GroupPoint};
use crate::reps::{Eta, RepLabel};
use crate::specfun::{gauss_legendre, make_radial_rule, QuadratureRule, XPoint};

/// W(σ) = σ tanh π(σ+iε): σ tanh πσ for ε = 0 and σ coth πσ for ε = ½.
pub fn plancherel_weight(sigma: f64, eps: HalfInt) -> f64 {
    if eps.is_integer() {
        sigma * (PI * sigma).tanh()
    } else {
        sigma / (PI * sigma).tanh()
    }
}

/// Composite Gauss–Legendre rule on [0, Σ_max].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SigmaGrid {
    pub sigma_max: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl SigmaGrid {
    pub fn new(sigma_max: f64, panels: usize, order: usize) -> Result<Self> {
        Self::on(0.0, sigma_max, panels, order)
    }

    /// Rule on [a, b] ⊂ (0, ∞); `sigma_max` records b.
    pub fn on(a: f64, b: f64, panels: usize, order: usize) -> Result<Self> {
        if !(a >= 0.0 && b > a) || panels == 0 || order == 0 {
            return Err(Error::InvalidInput(format!("bad σ grid [{a}, {b}] with {panels}×{order}")));
        }
        let (gn, gw) = gauss_legendre(order);
        let h = (b - a) / panels as f64;
        let mut nodes = Vec::with_capacity(panels * order);
        let mut weights = Vec::with_capacity(panels * order);
        for p in 0..panels {
            let lo = a + p as f64 * h;
            for (t, w) in gn.iter().zip(&gw) {
                nodes.push(lo + (t + 1.0) * h / 2.0);
                weights.push(w * h / 2.0);
            }
        }
        Ok(SigmaGrid { sigma_max: b, nodes, weights })
    }

    /// Σ_max = 14, unit panels of 12 nodes. The σ-transforms of Losert functions with
    /// small indices fall off exponentially and are below 1e-9 beyond σ = 14.
    pub fn standard() -> Self {
        Self::new(14.0, 14, 12).expect("valid grid")
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscreteCoefficient {
    pub n: HalfInt,
    pub lambda: HalfInt,
    pub eta: Eta,
    pub m: HalfInt,
    pub re: f64,
    pub im: f64,
}

impl DiscreteCoefficient {
    pub fn label(&self) -> RepLabel {
        RepLabel::Discrete { lambda: self.lambda, eta: self.eta }
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// c(σ) = (Ψ̂_σ, f) at one grid node.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContinuousSample {
    pub eps: HalfInt,
    pub n: HalfInt,
    pub m: HalfInt,
    pub sigma: f64,
    pub re: f64,
    pub im: f64,
}

impl ContinuousSample {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlancherelCoefficients {
    pub discrete: Vec<DiscreteCoefficient>,
    pub continuous: Vec<ContinuousSample>,
    /// Quadrature grid of the continuous samples (same order).
    pub sigma_grid: SigmaGrid,
}

impl PlancherelCoefficients {
    pub fn zero(grid: SigmaGrid) -> Self {
        PlancherelCoefficients { discrete: Vec::new(), continuous: Vec::new(), sigma_grid: grid }
    }

    /// Σ|f_λ|² + ∫ W |c|² dσ on the grid.
    pub fn parseval(&self) -> f64 {
        let d: f64 = self.discrete.iter().map(|c| c.value().norm_sqr()).sum();
        d + self.continuous_norm_sqr()
    }

    pub fn continuous_norm_sqr(&self) -> f64 {
        self.continuous
            .iter()
            .zip(&self.sigma_grid.weights)
            .map(|(c, w)| w * plancherel_weight(c.sigma, c.eps) * c.value().norm_sqr())
            .sum()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

fn eps_of(n: HalfInt) -> HalfInt {
    if n.is_integer() {
        HalfInt::ZERO
    } else {
        HalfInt::HALF
    }
}

fn pair(f: &GroupFunction, g: &GroupFunction, rule: Option<&QuadratureRule>) -> Result<Complex64> {
    match rule {
        Some(r) => scalar_product(f, g, r),
        None => scalar_product(f, g, &rule_for_pair(f, g)?),
    }
}

/// Discrete coefficients (Ψ_{nλm}, f) for λ ≤ λ_max and continuous samples c(σ_j).
/// `rule` overrides the per-pair radial rule (it must suit oscillatory pairings).
pub fn analyze(
    f: &GroupFunction,
    lambda_max: HalfInt,
    grid: &SigmaGrid,
    rule: Option<&QuadratureRule>,
) -> Result<PlancherelCoefficients> {
    let (n, m) = (f.n, f.m);
    if (1.0 + f.decay()) / 2.0 <= 1.0 {
        return Err(Error::NonNormalisable(format!(
            "decay {} too slow for pairing with principal series elements",
            f.decay()
        )));
    }
    let mut discrete = Vec::new();
    for label in discrete_labels(n, m) {
        let RepLabel::Discrete { lambda, eta } = label else { unreachable!() };
        if lambda > lambda_max {
            continue;
        }
        let v = pair(&psi(&label, n, m)?, f, rule)?;
        discrete.push(DiscreteCoefficient { n, lambda, eta, m, re: v.re, im: v.im });
    }
    let eps = eps_of(n);
    let continuous = grid
        .nodes
        .par_iter()
        .map(|&sigma| {
            let s = psi(&RepLabel::Continuous { sigma, eps }, n, m)?;
            let v = pair(&s, f, rule)? * 2.0;
            Ok(ContinuousSample { eps, n, m, sigma, re: v.re, im: v.im })
        })
        .collect::<Result<_>>()?;
    Ok(PlancherelCoefficients { discrete, continuous, sigma_grid: grid.clone() })
}

/// Radial part of the expansion at x (the phase is common to all terms).
fn synthesize_radial(c: &PlancherelCoefficients, x: XPoint) -> Result<Complex64> {
    let mut v = Complex64::new(0.0, 0.0);
    for d in &c.discrete {
        v += d.value() * psi(&d.label(), d.n, d.m)?.radial_value(x)?;
    }
    for (s, w) in c.continuous.iter().zip(&c.sigma_grid.weights) {
        let label = RepLabel::Continuous { sigma: s.sigma, eps: s.eps };
        let psi_hat = psi(&label, s.n, s.m)?.radial_value(x)? * 2.0;
        v += s.value() * psi_hat * (w * plancherel_weight(s.sigma, s.eps));
    }
    Ok(v)
}

fn grades(c: &PlancherelCoefficients) -> Option<(HalfInt, HalfInt)> {
    c.discrete.first().map(|d| (d.n, d.m)).or_else(|| c.continuous.first().map(|s| (s.n, s.m)))
}

/// The expansion evaluated at p: discrete sum plus the weighted σ-integral on the grid.
pub fn synthesize(c: &PlancherelCoefficients, p: &GroupPoint) -> Result<Complex64> {
    let Some((n, m)) = grades(c) else {
        return Ok(Complex64::new(0.0, 0.0));
    };
    let phase = Complex64::from_polar(1.0, (m + n).value() * p.phi1 + (m - n).value() * p.phi2);
    Ok(phase * synthesize_radial(c, p.radial())?)
}

/// ‖f − synthesize(analyze f)‖ / ‖f‖, both norms taken over 1 ≤ x ≤ x_max.
pub fn round_trip_error(f: &GroupFunction, c: &PlancherelCoefficients, x_max: f64) -> Result<f64> {
    let rule = make_radial_rule(x_max, 24)?;
    let vals: Vec<(f64, f64)> = rule
        .points
        .par_iter()
        .map(|&x| {
            let a = f.radial_value(x)?;
            let b = synthesize_radial(c, x)?;
            Ok(((a - b).norm_sqr(), a.norm_sqr()))
        })
        .collect::<Result<_>>()?;
    let (mut err, mut norm) = (0.0, 0.0);
    for ((e, a), w) in vals.iter().zip(&rule.weights) {
        err += e * w;
        norm += a * w;
    }
    Ok((err / norm).sqrt())
}

/// f^{nmk}(σ_j) = ∫₁^∞ conj(Ψ_{σ_j}) e_{nmk} dx on the grid, for Φ_{nmk} orthogonal to the
/// discrete series.
pub fn basis_conversion(idx: LosertIndex, grid: &SigmaGrid) -> Result<Vec<ContinuousSample>> {
    let class = classify(idx.n, idx.m);
    if idx.k < class.k_min {
        return Err(Error::Domain(format!(
            "Φ{idx} lies in the discrete part (k_min = {}); it has no σ-transform",
            class.k_min
        )));
    }
    let f = phi(idx.n, idx.m, idx.k)?;
    Ok(analyze(&f, HalfInt::ZERO, grid, None)?.continuous)
}

/// ∫ W |f^{nmk}|² dσ on the grid; 1 for a unit vector in the complement.
pub fn line_parseval(samples: &[ContinuousSample], grid: &SigmaGrid) -> f64 {
    samples.iter().zip(&grid.weights).map(|(s, w)| w * plancherel_weight(s.sigma, s.eps) * s.value().norm_sqr()).sum()
}

/// Φ_{nmk}(p) rebuilt as 2∫ W f^{nmk} Ψ_σ dσ.
pub fn reconstruct_from_transform(samples: &[ContinuousSample], grid: &SigmaGrid, p: &GroupPoint) -> Result<Complex64> {
    let c = PlancherelCoefficients { discrete: Vec::new(), continuous: samples.to_vec(), sigma_grid: grid.clone() };
    synthesize(&c, p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Summation {
    /// Plain partial sums.
    Partial,
    /// Arithmetic means of the partial sums.
    Cesaro,
}

/// Ψ_{n(iσ,ε)m}(p) from ½ Σ_{k_min ≤ k ≤ k_max} conj(f^{nmk}(σ)) Φ_{nmk}(p), at each point.
///
/// Ψ_σ is not square integrable, so the coefficients do not decay in k and the series
/// converges only in the distributional sense; the partial sums oscillate around the
/// target.
pub fn inverse_expansion(
    n: HalfInt,
    m: HalfInt,
    sigma: f64,
    k_max: u32,
    points: &[GroupPoint],
    summation: Summation,
) -> Result<Vec<Complex64>> {
    let eps = eps_of(n);
    let target = psi(&RepLabel::Continuous { sigma, eps }, n, m)?;
    let k_min = classify(n, m).k_min;
    let terms: Vec<(Complex64, GroupFunction)> = (k_min..=k_max)
        .into_par_iter()
        .map(|k| {
            let f = phi(n, m, k)?;
            // (Φ_k, Ψ_σ) = ½ conj f^{nmk}(σ)
            let a = scalar_product(&f, &target, &rule_for_pair(&f, &target)?)?;
            Ok((a, f))
        })
        .collect::<Result<_>>()?;
    points
        .iter()
        .map(|p| {
            let mut partial = Complex64::new(0.0, 0.0);
            let mut mean = Complex64::new(0.0, 0.0);
            for (a, f) in &terms {
                partial += a * f.eval(p)?;
                mean += partial;
            }
            Ok(match summation {
                Summation::Partial => partial,
                Summation::Cesaro => mean / terms.len().max(1) as f64,
            })
        })
        .collect()
}

/// ¼∫₁^{x_max} |g|² dx, the norm of f restricted to x ≤ x_max.
pub fn truncated_norm(f: &GroupFunction, x_max: f64) -> Result<f64> {
    let rule = make_radial_rule(x_max, 32)?;
    let mut s = 0.0;
    for (&x, &w) in rule.points.iter().zip(&rule.weights) {
        s += f.radial_value(x)?.norm_sqr() * w;
    }
    Ok(s / 4.0)
}

/// A σ-packet: F = ∫ dσ W(σ) g(σ) Ψ̂_σ with g given on its own grid.
#[derive(Clone, Debug)]
pub struct Packet {
    pub grid: SigmaGrid,
    pub values: Vec<Complex64>,
}

impl Packet {
    pub fn from_fn(grid: SigmaGrid, g: impl Fn(f64) -> Complex64) -> Self {
        if grid.nodes.first().is_some_and(|&s| s < 1e-2 * grid.sigma_max) {
            log::warn!("packet support reaches σ = 0 where the Plancherel weight vanishes");
        }
        let values = grid.nodes.iter().map(|&s| g(s)).collect();
        Packet { grid, values }
    }

    /// Gaussian of width `width` at σ₀, sampled on [σ₀ − 6w, σ₀ + 6w].
    pub fn gaussian(sigma0: f64, width: f64, nodes: usize) -> Result<Self> {
        let lo = sigma0 - 6.0 * width;
        let grid = SigmaGrid::on(lo.max(0.0), sigma0 + 6.0 * width, 4, nodes.div_ceil(4))?;
        Ok(Self::from_fn(grid, |s| Complex64::new((-0.5 * ((s - sigma0) / width).powi(2)).exp(), 0.0)))
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Packet { grid: self.grid.clone(), values: self.values.iter().map(|v| v * c).collect() }
    }

    /// ∫ W |g|² dσ, the norm (F, F) predicted by the Plancherel measure.
    pub fn predicted_norm(&self, eps: HalfInt) -> f64 {
        self.grid
            .nodes
            .iter()
            .zip(&self.grid.weights)
            .zip(&self.values)
            .map(|((&s, &w), v)| w * plancherel_weight(s, eps) * v.norm_sqr())
            .sum()
    }
}

fn packet_radial(p: &Packet, n: HalfInt, m: HalfInt, eps: HalfInt, x: XPoint) -> Result<Complex64> {
    let mut v = Complex64::new(0.0, 0.0);
    for ((&s, &w), g) in p.grid.nodes.iter().zip(&p.grid.weights).zip(&p.values) {
        let psi_hat = psi(&RepLabel::Continuous { sigma: s, eps }, n, m)?.radial_value(x)? * 2.0;
        v += g * psi_hat * (w * plancherel_weight(s, eps));
    }
    Ok(v)
}

/// (F₁, F₂) for two packets in the same sector, integrating over 1 ≤ x ≤ 10²⁶.
pub fn packet_inner(a: &Packet, b: &Packet, n: HalfInt, m: HalfInt) -> Result<Complex64> {
    let eps = eps_of(n);
    let rule = make_radial_rule(1e26, 24)?;
    let vals: Vec<Complex64> = rule
        .points
        .par_iter()
        .map(|&x| Ok(packet_radial(a, n, m, eps, x)?.conj() * packet_radial(b, n, m, eps, x)?))
        .collect::<Result<_>>()?;
    Ok(vals.iter().zip(&rule.weights).map(|(v, w)| v * w).sum::<Complex64>() / 4.0)
}

/// (F, F) for F = ∫ dσ W g Ψ̂_σ; equals ∫ W |g|² dσ (see [`Packet::predicted_norm`]).
pub fn smeared_continuous_norm(g: &Packet, n: HalfInt, m: HalfInt) -> Result<f64> {
    Ok(packet_inner(g, g, n, m)?.re)
}

#[cfg(test)]
mod tests;
