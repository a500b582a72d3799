//! The Losert Hilbert basis of L²(SL(2,ℝ)).
//!
//! In each weight sector W_{nm} the basis is Φ_{nmk} = e^{i(m+n)φ₁+i(m−n)φ₂} ê_{nmk}(x),
//! k = 0, 1, …, with ê = 2e and e the radial functions below. With a = |n−m| and
//! ε ∈ {0, ½} the fractional part of n, the functions orthogonal to the discrete series
//! (k ≥ k_min) are
//!
//! e_{nmk} = C (x−1)^{a/2} (x+1)^{−a/2−k−ε−1} P_k^{(a, −a−2k−2ε−1)}(x),
//!
//! and for k < k_min, with M = min(|n|,|m|), N = max(|n|,|m|),
//!
//! e_{nmk} = C′ (x−1)^{(N−M)/2} (x+1)^{−(N+M)/2} P_k^{(N−M, −N−M)}(x),
//!
//! which is ±½ Ψ_{n,(M−k,η),m}. Both are evaluated through
//! P_k^{(a,b)}(x) = ((x+1)/2)^k P_k^{(a,−2k−a−b−1)}((3−x)/(1+x)), whose argument stays in
//! (−1, 1].

use std::collections::HashMap;
use std::sync::{Arc, LazyLock};

use nalgebra::DMatrix;
use num_complex::Complex64;
use parking_lot::RwLock;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::half::HalfInt;
use crate::matrix::{
    abt_jets, apply_operator, scalar_product, truncate, DiffMode, GroupFunction, LinearProfile, Operator,
    RadialProfile,
};
use crate::reps::{Eta, RepLabel};
use crate::specfun::{jacobi_poly_jet, ln_factorial, make_mapped_rule, Jet, QuadratureRule, XPoint};
use crate::table::CoefficientTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LosertIndex {
    pub n: HalfInt,
    pub m: HalfInt,
    pub k: u32,
}

impl LosertIndex {
    pub fn new(n: HalfInt, m: HalfInt, k: u32) -> Result<Self> {
        if !(n - m).is_integer() {
            return invalid(format!("Losert grades ({n}, {m}) must both be integer or both half-integer"));
        }
        Ok(LosertIndex { n, m, k })
    }

    /// 0 for integer grades, ½ otherwise.
    pub fn eps(&self) -> HalfInt {
        if self.n.is_integer() {
            HalfInt::ZERO
        } else {
            HalfInt::HALF
        }
    }

    pub fn with_k(self, k: u32) -> Self {
        LosertIndex { k, ..self }
    }
}

impl std::fmt::Display for LosertIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.n, self.m, self.k)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SectorCase {
    /// n, m > ½: discrete series bounded from below present.
    Case1,
    /// n, m < −½: discrete series bounded from above present.
    Case2,
    /// No discrete-series content.
    Case3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectorClass {
    pub case: SectorCase,
    pub k_min: u32,
}

/// The discrete labels whose matrix elements live in W_{nm}, by increasing λ.
pub fn discrete_labels(n: HalfInt, m: HalfInt) -> Vec<RepLabel> {
    let eta = if n.twice() > 0 { Eta::Plus } else { Eta::Minus };
    let top = n.abs().min(m.abs());
    let mut out = Vec::new();
    let mut lambda = if n.is_integer() { HalfInt::ONE } else { HalfInt::from_twice(3) };
    while lambda <= top {
        let label = RepLabel::Discrete { lambda, eta };
        if label.weight_support(n) && label.weight_support(m) {
            out.push(label);
        }
        lambda = lambda + HalfInt::ONE;
    }
    out
}

/// Case tag and k_min = dim(W_{nm} ∩ L²_d), the number of discrete labels supporting both
/// weights. This reproduces M − ε in cases 1 and 2 and 0 in case 3.
pub fn classify(n: HalfInt, m: HalfInt) -> SectorClass {
    let half = HalfInt::HALF;
    let case = if n > half && m > half {
        SectorCase::Case1
    } else if n < -half && m < -half {
        SectorCase::Case2
    } else {
        SectorCase::Case3
    };
    SectorClass { case, k_min: discrete_labels(n, m).len() as u32 }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    /// k < k_min: a multiple of a discrete matrix element.
    Discrete,
    /// k ≥ k_min.
    Complement,
}

/// Radial profile of e_{nmk} (or ê = 2e).
#[derive(Clone, Debug)]
pub struct LosertProfile {
    kind: Kind,
    k: i64,
    /// (x−1)/(x+1) exponent times two.
    a: f64,
    /// Exponent of 1/(x+1) beyond the A^{a/2} factor.
    p: f64,
    /// Second Jacobi parameter in the t-variable form.
    beta: f64,
    coef: f64,
    decay: f64,
}

impl LosertProfile {
    /// Printed normalisation: ∫₁^∞ e² dx = 1.
    pub fn new(idx: LosertIndex) -> Result<Self> {
        let LosertIndex { n, m, k } = LosertIndex::new(idx.n, idx.m, idx.k)?;
        let class = classify(n, m);
        let eps = idx.eps();
        let kk = k as i64;
        let int = |h: HalfInt| h.to_int().expect("integer by construction");
        if k < class.k_min {
            let (big, small) = (n.abs().max(m.abs()), n.abs().min(m.abs()));
            let a = int(big - small);
            let two_m = small.twice();
            let ln_c2 = (two_m - 1) as f64 * 2f64.ln() + ((two_m - 2 * kk - 1) as f64).ln() + ln_factorial(kk)?
                + ln_factorial(int(big + small) - kk - 1)?
                - ln_factorial(two_m - kk - 1)?
                - ln_factorial(a + kk)?;
            let coef = (0.5 * ln_c2 - kk as f64 * 2f64.ln()).exp();
            Ok(LosertProfile {
                kind: Kind::Discrete,
                k: kk,
                a: a as f64,
                p: small.value() - kk as f64,
                beta: (two_m - 2 * kk - 1) as f64,
                coef,
                decay: 2.0 * (small.value() - kk as f64),
            })
        } else {
            let a = int((n - m).abs());
            let e2 = eps.twice();
            let ln_c2 = (2 * kk + e2 + 1) as f64 * 2f64.ln() + ((2 * kk + a + e2 + 1) as f64).ln()
                + ln_factorial(kk + a + e2)?
                + ln_factorial(kk)?
                - ln_factorial(kk + e2)?
                - ln_factorial(a + kk)?;
            let coef = (0.5 * ln_c2 - kk as f64 * 2f64.ln()).exp();
            Ok(LosertProfile {
                kind: Kind::Complement,
                k: kk,
                a: a as f64,
                p: eps.value() + 1.0,
                beta: e2 as f64,
                coef,
                decay: 2.0 + 2.0 * eps.value(),
            })
        }
    }

    /// The working normalisation ê = 2e, unit norm under the group scalar product.
    pub fn working(mut self) -> Self {
        self.coef *= 2.0;
        self
    }

    pub fn in_discrete_part(&self) -> bool {
        self.kind == Kind::Discrete
    }
}

impl RadialProfile for LosertProfile {
    fn eval(&self, x: XPoint, order: usize) -> Result<Jet> {
        let (a, b, t) = abt_jets(x);
        let jac = jacobi_poly_jet(self.k, self.a, self.beta, t.v.re)?;
        // (x+1)^{−p} = (B/2)^p
        let g = a.powf(self.a / 2.0) * b.scale(0.5.into()).powf(self.p) * Jet::compose(jac, t);
        Ok(truncate(g.scale(self.coef.into()), order))
    }

    fn max_order(&self) -> usize {
        2
    }

    fn decay(&self) -> f64 {
        self.decay
    }
}

/// e_{nmk}(x) in the printed normalisation.
pub fn e_radial(n: HalfInt, m: HalfInt, k: u32, x: f64) -> Result<f64> {
    if !(x >= 1.0) {
        return Err(Error::Domain(format!("x = {x} below 1")));
    }
    Ok(LosertProfile::new(LosertIndex::new(n, m, k)?)?.value(XPoint::from_x(x))?.re)
}

/// Φ_{nmk} with radial part ê = 2e.
pub fn phi(n: HalfInt, m: HalfInt, k: u32) -> Result<GroupFunction> {
    let idx = LosertIndex::new(n, m, k)?;
    GroupFunction::new(n, m, Arc::new(LosertProfile::new(idx)?.working()))
}

pub fn phi_at(idx: LosertIndex) -> Result<GroupFunction> {
    phi(idx.n, idx.m, idx.k)
}

/// For k < k_min, the label Λ and sign s with Φ_{nmk} = s Ψ_{nΛm}.
pub fn discrete_partner(idx: LosertIndex) -> Option<(RepLabel, f64)> {
    let labels = discrete_labels(idx.n, idx.m);
    let top = labels.len().checked_sub(1 + idx.k as usize)?;
    let label = labels[top];
    let (n, m) = (idx.n, idx.m);
    let swapped = match label {
        RepLabel::Discrete { eta: Eta::Plus, .. } => n > m,
        _ => n < m,
    };
    Some((label, if swapped { (n - m).parity() } else { 1.0 }))
}

/// Gauss–Legendre rule in t = (3−x)/(1+x), exact for Losert scalar products with
/// indices up to `k_max` and grades up to `grade` in modulus.
pub fn losert_rule(k_max: u32, grade: HalfInt) -> Result<QuadratureRule> {
    make_mapped_rule(k_max as usize + 2 * grade.abs().value().ceil() as usize + 24)
}

/// Matrix of scalar products (Φ_{nmi}, Φ_{nmj}), 0 ≤ i, j ≤ k_max.
pub fn gram_matrix(n: HalfInt, m: HalfInt, k_max: u32, rule: &QuadratureRule) -> Result<DMatrix<f64>> {
    let fs: Vec<GroupFunction> = (0..=k_max).map(|k| phi(n, m, k)).collect::<Result<_>>()?;
    let size = fs.len();
    let entries: Vec<f64> = (0..size * size)
        .into_par_iter()
        .map(|ij| Ok(scalar_product(&fs[ij / size], &fs[ij % size], rule)?.re))
        .collect::<Result<_>>()?;
    Ok(DMatrix::from_row_slice(size, size, &entries))
}

/// Operator action on a basis element, with the L² norm of what the projection missed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LadderAction {
    pub op: Operator,
    pub source: LosertIndex,
    pub coefficients: CoefficientTable<LosertIndex>,
    pub residual: f64,
}

/// Projection residual above which an expansion counts as incomplete.
pub const COMPLETENESS_TOL: f64 = 1e-6;
/// Coefficients at or below this modulus are dropped from ladder tables.
pub const COEFF_FLOOR: f64 = 1e-10;
/// Band of target k around the source k searched by the projection.
const BAND: u32 = 3;

static LADDER_CACHE: LazyLock<RwLock<HashMap<(Operator, LosertIndex), LadderAction>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// Expansion of op Φ_{nmk} over the Losert basis of the target sector. The candidate
/// targets are k′ ∈ [k−3, k+3]; an expansion that leaves an L² residual above
/// [`COMPLETENESS_TOL`] is an error. Results are cached.
pub fn ladder_on_phi(op: Operator, idx: LosertIndex) -> Result<LadderAction> {
    if let Some(hit) = LADDER_CACHE.read().get(&(op, idx)) {
        return Ok(hit.clone());
    }
    let action = compute_ladder(op, idx)?;
    LADDER_CACHE.write().entry((op, idx)).or_insert_with(|| action.clone());
    Ok(action)
}

fn compute_ladder(op: Operator, idx: LosertIndex) -> Result<LadderAction> {
    let source = phi_at(idx)?;
    let image = apply_operator(op, &source, DiffMode::Analytic)?;
    let target = LosertIndex::new(image.n, image.m, 0)?;
    let lo = idx.k.saturating_sub(BAND);
    let hi = idx.k + BAND;
    let rule = losert_rule(hi + 2, idx.n.abs().max(idx.m.abs()) + HalfInt::ONE)?;
    let mut coefficients = CoefficientTable::new();
    let mut terms: Vec<(Complex64, Arc<dyn RadialProfile>)> = vec![(Complex64::new(1.0, 0.0), image.radial.clone())];
    for k in lo..=hi {
        let t = phi_at(target.with_k(k))?;
        let c = scalar_product(&t, &image, &rule)?;
        terms.push((-c, t.radial.clone()));
        coefficients.insert(target.with_k(k), c);
    }
    let rest = GroupFunction::new(image.n, image.m, Arc::new(LinearProfile::new(terms)))?;
    let residual = scalar_product(&rest, &rest, &rule)?.re.max(0.0).sqrt();
    if residual > COMPLETENESS_TOL {
        return Err(Error::Incomplete { residual });
    }
    Ok(LadderAction { op, source: idx, coefficients: coefficients.pruned(COEFF_FLOOR), residual })
}

/// Ladder and Casimir tables for every (op, index) pair, in the given order.
pub fn ladder_tables(ops: &[Operator], indices: &[LosertIndex]) -> Result<Vec<LadderAction>> {
    let pairs: Vec<(Operator, LosertIndex)> =
        indices.iter().flat_map(|&i| ops.iter().map(move |&op| (op, i))).collect();
    pairs.into_par_iter().map(|(op, i)| ladder_on_phi(op, i)).collect()
}
