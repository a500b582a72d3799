//! Multiplication tables of the function factor: Losert products Φ·Φ′ expanded over
//! Φ_{n+n′,m+m′,k″}, and Clebsch–Gordan projections of products of matrix elements.

use num_complex::Complex64;
use ordered_float::OrderedFloat;
use serde::{Deserialize, Serialize};

use super::PbLabel;
use crate::error::{Error, Result};
use crate::half::HalfInt;
use crate::losert::{losert_rule, phi_at, LosertIndex, COMPLETENESS_TOL};
use crate::matrix::{psi, rule_for_pair, scalar_product, GroupFunction, GroupPoint};
use crate::plancherel::{analyze, plancherel_weight, SigmaGrid};
use crate::reps::RepLabel;
use crate::table::CoefficientTable;

/// Coefficients C^{k″} of Φ_x Φ_y over the Losert basis of the sum sector, with the L²
/// norm of the part the truncation missed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductExpansion {
    pub left: LosertIndex,
    pub right: LosertIndex,
    pub k_max: u32,
    pub coefficients: CoefficientTable<LosertIndex>,
    pub residual: f64,
}

/// Projection of Φ_x Φ_y onto Φ_{n+n′,m+m′,k″}, 0 ≤ k″ ≤ k_max, without a completeness check.
pub fn product_expansion(x: LosertIndex, y: LosertIndex, k_max: u32) -> Result<ProductExpansion> {
    let n = x.n + y.n;
    let m = x.m + y.m;
    let target = LosertIndex::new(n, m, 0)?;
    let grade = [x.n, x.m, y.n, y.m, n, m].into_iter().map(HalfInt::abs).max().expect("non-empty");
    let rule = losert_rule(k_max + x.k + y.k, grade + HalfInt::int(2))?;
    let fx = phi_at(x)?;
    let fy = phi_at(y)?;
    let product: Vec<Complex64> = rule
        .points
        .iter()
        .map(|&p| Ok(fx.radial.value(p)? * fy.radial.value(p)?))
        .collect::<Result<_>>()?;
    let mut rest = product.clone();
    let mut coefficients = CoefficientTable::new();
    for k in 0..=k_max {
        let basis: Vec<Complex64> = {
            let f = phi_at(target.with_k(k))?;
            rule.points.iter().map(|&p| f.radial.value(p)).collect::<Result<_>>()?
        };
        let c: Complex64 =
            rule.weights.iter().zip(&basis).zip(&product).map(|((w, b), v)| b.conj() * v * *w).sum::<Complex64>() / 4.0;
        for (r, b) in rest.iter_mut().zip(&basis) {
            *r -= c * b;
        }
        coefficients.insert(target.with_k(k), c);
    }
    let residual = (rule.weights.iter().zip(&rest).map(|(w, r)| w * r.norm_sqr()).sum::<f64>() / 4.0).sqrt();
    Ok(ProductExpansion { left: x, right: y, k_max, coefficients, residual })
}

/// Φ_x Φ_y = Σ_{k″ ≤ k_max} C^{k″} Φ_{n+n′,m+m′,k″}; a residual above
/// [`COMPLETENESS_TOL`] is a truncation error.
pub fn mode_product_losert(x: LosertIndex, y: LosertIndex, k_max: u32) -> Result<ProductExpansion> {
    let e = product_expansion(x, y, k_max)?;
    if e.residual > COMPLETENESS_TOL {
        return Err(Error::Truncation { residual: e.residual });
    }
    Ok(e)
}

/// A matrix element Ψ_{nΛm} as a Plancherel-basis mode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PbMode {
    pub n: HalfInt,
    pub m: HalfInt,
    pub label: PbLabel,
}

/// Density C(σ) at one σ node, with the node's quadrature weight.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CgDensity {
    pub sigma: f64,
    pub eps: HalfInt,
    pub weight: f64,
    pub re: f64,
    pub im: f64,
}

impl CgDensity {
    pub fn label(&self) -> PbLabel {
        PbLabel::Continuous { sigma: OrderedFloat(self.sigma), eps: self.eps }
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// Ψ₁Ψ₂ = Σ_Λ C^Λ Ψ_{n₁+n₂,Λ,m₁+m₂} + ∫ C(σ) Ψ_{n₁+n₂,(iσ,ε),m₁+m₂} dσ.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CgExpansion {
    pub n: HalfInt,
    pub m: HalfInt,
    pub discrete: CoefficientTable<PbLabel>,
    pub continuous: Vec<CgDensity>,
}

impl CgExpansion {
    /// Σ_Λ C^Λ Ψ_Λ(p) + Σ_j w_j C(σ_j) Ψ_{σ_j}(p).
    pub fn eval(&self, p: &GroupPoint) -> Result<Complex64> {
        let mut v = Complex64::new(0.0, 0.0);
        for (label, c) in self.discrete.iter() {
            v += c * psi(&label.rep(), self.n, self.m)?.eval(p)?;
        }
        for d in &self.continuous {
            v += d.value() * d.weight * psi(&d.label().rep(), self.n, self.m)?.eval(p)?;
        }
        Ok(v)
    }
}

/// Whether the product of the two labels has a continuous part: only a discrete
/// series of each sign (or a continuous factor) produces one.
fn has_continuous_part(a: &RepLabel, b: &RepLabel) -> bool {
    match (a, b) {
        (RepLabel::Discrete { eta: e1, .. }, RepLabel::Discrete { eta: e2, .. }) => e1 != e2,
        _ => true,
    }
}

/// Single Clebsch–Gordan coefficient (Ψ_{n₁+n₂,Λ,m₁+m₂}, Ψ₁Ψ₂) for a discrete target.
pub fn cg_coefficient(a: (RepLabel, HalfInt, HalfInt), b: (RepLabel, HalfInt, HalfInt), target: RepLabel) -> Result<Complex64> {
    if !target.is_discrete() {
        return Err(Error::InvalidInput("use cg_project for continuous targets".into()));
    }
    let prod = product_of(a, b)?;
    let t = psi(&target, prod.n, prod.m)?;
    scalar_product(&t, &prod, &rule_for_pair(&t, &prod)?)
}

fn product_of(a: (RepLabel, HalfInt, HalfInt), b: (RepLabel, HalfInt, HalfInt)) -> Result<GroupFunction> {
    if !a.0.is_discrete() && !b.0.is_discrete() {
        return Err(Error::Unsupported("product of two principal series elements is not square integrable".into()));
    }
    Ok(psi(&a.0, a.1, a.2)?.product(&psi(&b.0, b.1, b.2)?))
}

/// Clebsch–Gordan expansion of Ψ_{n₁Λ₁m₁}Ψ_{n₂Λ₂m₂}: discrete targets with λ ≤ λ_max by
/// projection, the continuous density by the weighted σ pairing on `grid`
/// (C(σ) = 4W(σ)(Ψ_σ, Ψ₁Ψ₂)). Two continuous inputs are unsupported.
pub fn cg_project(
    a: (RepLabel, HalfInt, HalfInt),
    b: (RepLabel, HalfInt, HalfInt),
    lambda_max: HalfInt,
    grid: &SigmaGrid,
) -> Result<CgExpansion> {
    let prod = product_of(a, b)?;
    let grid = if has_continuous_part(&a.0, &b.0) {
        grid.clone()
    } else {
        SigmaGrid { sigma_max: grid.sigma_max, nodes: Vec::new(), weights: Vec::new() }
    };
    let c = analyze(&prod, lambda_max, &grid, None)?;
    let discrete = c
        .discrete
        .iter()
        .map(|d| (PbLabel::Discrete { lambda: d.lambda, eta: d.eta }, d.value()))
        .collect();
    let continuous = c
        .continuous
        .iter()
        .zip(&grid.weights)
        .map(|(s, &weight)| {
            let v = s.value() * 2.0 * plancherel_weight(s.sigma, s.eps);
            CgDensity { sigma: s.sigma, eps: s.eps, weight, re: v.re, im: v.im }
        })
        .collect();
    Ok(CgExpansion { n: prod.n, m: prod.m, discrete, continuous })
}
