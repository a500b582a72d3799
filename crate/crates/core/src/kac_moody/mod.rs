//! The centrally extended algebra ĝ(SL(2,ℝ)).
//!
//! Generators are T^a ⊗ F with T^a a basis element of a finite Lie algebra and F either
//! a Losert function Φ_{nmk} or a matrix element Ψ_{nΛm}. The first mode index is always
//! the L₀-grade and the second the R₀-grade. Brackets are
//!
//! [T^a_X, T^b_Y] = i f^{ab}_c Σ C T^c_{X·Y} + (n k_L + m k_R) g^{ab} δ(X, Ȳ),
//!
//! where C are the coefficients of the product of the two functions, (n, m) the grades
//! of the first generator and δ(X, Ȳ) = 1 when the second function is the conjugate of
//! the first (δ_{kk′} with opposite grades in the Losert basis, δ_{λλ′}δ_{η+η′} for the
//! discrete series). The central values are tracked as scalars c_L, c_R, which equal the
//! cocycles ω_L, ω_R. L₀ and R₀ act by the grades.
//!
//! A principal series mode in an element stands for one node σ_j of a σ quadrature: its
//! coefficient already includes the node weight, so the element is Σ_j c_j T_{σ_j}.

mod structure;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use ordered_float::OrderedFloat;
use parking_lot::RwLock;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::LieAlgebraSpec;
use crate::error::{invalid, Error, Result};
use crate::half::HalfInt;
use crate::losert::{classify, discrete_partner, LosertIndex};
use crate::plancherel::{basis_conversion, SigmaGrid};
use crate::reps::{Eta, RepLabel};
use crate::table::CoefficientTable;

pub use structure::{
    cg_coefficient, cg_project, mode_product_losert, product_expansion, CgDensity, CgExpansion, PbMode,
    ProductExpansion,
};

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Losert,
    Plancherel,
}

/// Representation label usable as a map key.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum PbLabel {
    Discrete { lambda: HalfInt, eta: Eta },
    Continuous { sigma: OrderedFloat<f64>, eps: HalfInt },
}

impl PbLabel {
    pub fn rep(&self) -> RepLabel {
        match *self {
            PbLabel::Discrete { lambda, eta } => RepLabel::Discrete { lambda, eta },
            PbLabel::Continuous { sigma, eps } => RepLabel::Continuous { sigma: sigma.0, eps },
        }
    }
}

impl From<RepLabel> for PbLabel {
    fn from(l: RepLabel) -> Self {
        match l {
            RepLabel::Discrete { lambda, eta } => PbLabel::Discrete { lambda, eta },
            RepLabel::Continuous { sigma, eps } => PbLabel::Continuous { sigma: OrderedFloat(sigma), eps },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "basis", rename_all = "lowercase")]
pub enum ModeIndex {
    Losert(LosertIndex),
    Plancherel(PbMode),
}

impl ModeIndex {
    pub fn grades(&self) -> (HalfInt, HalfInt) {
        match self {
            ModeIndex::Losert(i) => (i.n, i.m),
            ModeIndex::Plancherel(p) => (p.n, p.m),
        }
    }

    pub fn basis(&self) -> Basis {
        match self {
            ModeIndex::Losert(_) => Basis::Losert,
            ModeIndex::Plancherel(_) => Basis::Plancherel,
        }
    }

    /// Checks the sector and weight-support rules of the mode's basis.
    pub fn validate(&self) -> Result<()> {
        match self {
            ModeIndex::Losert(i) => LosertIndex::new(i.n, i.m, i.k).map(|_| ()),
            ModeIndex::Plancherel(p) => {
                let l = p.label.rep();
                l.validate()?;
                if !l.weight_support(p.n) || !l.weight_support(p.m) {
                    return invalid(format!("weights ({}, {}) not supported by {l}", p.n, p.m));
                }
                Ok(())
            }
        }
    }
}

/// T^a ⊗ (mode).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KMGenerator {
    pub a: usize,
    #[serde(flatten)]
    pub mode: ModeIndex,
}

impl KMGenerator {
    pub fn losert(a: usize, n: HalfInt, m: HalfInt, k: u32) -> Result<Self> {
        Ok(KMGenerator { a, mode: ModeIndex::Losert(LosertIndex::new(n, m, k)?) })
    }

    pub fn plancherel(a: usize, n: HalfInt, label: RepLabel, m: HalfInt) -> Result<Self> {
        let g = KMGenerator { a, mode: ModeIndex::Plancherel(PbMode { n, m, label: label.into() }) };
        g.mode.validate()?;
        Ok(g)
    }
}

impl fmt::Display for KMGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.mode {
            ModeIndex::Losert(i) => write!(f, "T^{}_{}", self.a, i),
            ModeIndex::Plancherel(p) => write!(f, "T^{}_({}, {}, {})", self.a, p.n, p.label.rep(), p.m),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Grading {
    L0,
    R0,
}

/// L₀- or R₀-grade of a generator.
pub fn grading(op: Grading, g: &KMGenerator) -> HalfInt {
    let (n, m) = g.mode.grades();
    match op {
        Grading::L0 => n,
        Grading::R0 => m,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CentralCharges {
    pub k_l: f64,
    pub k_r: f64,
}

/// Finite combination of generators, central values (c_L, c_R) and grading operators.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct KMElement {
    pub generators: CoefficientTable<KMGenerator>,
    pub c_l: Complex64,
    pub c_r: Complex64,
    pub l0: Complex64,
    pub r0: Complex64,
}

impl KMElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn generator(g: KMGenerator) -> Self {
        Self::term(g, Complex64::new(1.0, 0.0))
    }

    pub fn term(g: KMGenerator, c: Complex64) -> Self {
        let mut e = Self::zero();
        e.generators.insert(g, c);
        e
    }

    pub fn grading_op(op: Grading) -> Self {
        let mut e = Self::zero();
        match op {
            Grading::L0 => e.l0 = Complex64::new(1.0, 0.0),
            Grading::R0 => e.r0 = Complex64::new(1.0, 0.0),
        }
        e
    }

    /// self += c · other
    pub fn axpy(&mut self, c: Complex64, other: &KMElement) {
        self.generators.axpy(c, &other.generators);
        self.c_l += c * other.c_l;
        self.c_r += c * other.c_r;
        self.l0 += c * other.l0;
        self.r0 += c * other.r0;
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        let mut e = Self::zero();
        e.axpy(c, self);
        e
    }

    pub fn sum(items: &[KMElement]) -> Self {
        let mut e = Self::zero();
        for x in items {
            e.axpy(Complex64::new(1.0, 0.0), x);
        }
        e
    }

    /// L² norm of all components.
    pub fn norm(&self) -> f64 {
        let g = self.generators.l2_norm();
        (g * g + self.c_l.norm_sqr() + self.c_r.norm_sqr() + self.l0.norm_sqr() + self.r0.norm_sqr()).sqrt()
    }

    pub fn central_part(&self) -> (Complex64, Complex64) {
        (self.c_l, self.c_r)
    }

    /// The common basis of the generators, `None` when there are none.
    pub fn basis(&self) -> Result<Option<Basis>> {
        let mut out = None;
        for g in self.generators.keys() {
            let b = g.mode.basis();
            if out.is_some_and(|o| o != b) {
                return invalid("element mixes Losert and Plancherel generators");
            }
            out = Some(b);
        }
        Ok(out)
    }

    pub fn pruned(&self, tol: f64) -> Self {
        KMElement { generators: self.generators.pruned(tol), ..self.clone() }
    }
}

/// Losert function Φ_{−n,−m,k} = conj Φ_{nmk} and the discrete-series analogue: the
/// partner paired by the central term.
fn conjugate_mode(m: &ModeIndex) -> Option<ModeIndex> {
    match *m {
        ModeIndex::Losert(i) => Some(ModeIndex::Losert(LosertIndex { n: -i.n, m: -i.m, k: i.k })),
        ModeIndex::Plancherel(p) => match p.label {
            PbLabel::Discrete { lambda, eta } => Some(ModeIndex::Plancherel(PbMode {
                n: -p.n,
                m: -p.m,
                label: PbLabel::Discrete { lambda, eta: eta.flip() },
            })),
            PbLabel::Continuous { .. } => None,
        },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Cocycle {
    L,
    R,
}

/// Truncations and grids shared by all brackets.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Truncation {
    /// Largest Losert k″ kept in a product expansion.
    pub k_max: u32,
    /// Largest discrete λ kept in a Clebsch–Gordan expansion.
    pub lambda_max: HalfInt,
    /// σ nodes of Clebsch–Gordan densities.
    pub grid: SigmaGrid,
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation { k_max: 12, lambda_max: HalfInt::int(8), grid: SigmaGrid::standard() }
    }
}

type PairKey = (ModeIndex, ModeIndex);

/// The algebra ĝ for a finite Lie algebra, with cached structure constants.
pub struct KacMoody {
    pub algebra: LieAlgebraSpec,
    pub killing: DMatrix<Complex64>,
    pub charges: CentralCharges,
    pub truncation: Truncation,
    products: RwLock<HashMap<PairKey, Arc<CoefficientTable<ModeIndex>>>>,
    transforms: RwLock<HashMap<LosertIndex, Arc<Vec<Complex64>>>>,
}

impl KacMoody {
    pub fn new(algebra: LieAlgebraSpec, charges: CentralCharges, truncation: Truncation) -> Self {
        let killing = algebra.killing_form();
        KacMoody {
            algebra,
            killing,
            charges,
            truncation,
            products: RwLock::new(HashMap::new()),
            transforms: RwLock::new(HashMap::new()),
        }
    }

    pub fn g(&self, a: usize, b: usize) -> Complex64 {
        self.killing[(a, b)]
    }

    /// Coefficients of the product of two mode functions, cached on the unordered pair.
    pub fn mode_product(&self, x: &ModeIndex, y: &ModeIndex) -> Result<Arc<CoefficientTable<ModeIndex>>> {
        let key = if x <= y { (*x, *y) } else { (*y, *x) };
        if let Some(hit) = self.products.read().get(&key) {
            return Ok(hit.clone());
        }
        let table = Arc::new(self.compute_product(&key.0, &key.1)?);
        Ok(self.products.write().entry(key).or_insert(table).clone())
    }

    fn compute_product(&self, x: &ModeIndex, y: &ModeIndex) -> Result<CoefficientTable<ModeIndex>> {
        match (x, y) {
            (ModeIndex::Losert(a), ModeIndex::Losert(b)) => {
                let e = product_expansion(*a, *b, self.truncation.k_max)?;
                if e.residual > crate::losert::COMPLETENESS_TOL {
                    log::debug!("product Φ{a}·Φ{b} truncated at k = {}, residual {:e}", self.truncation.k_max, e.residual);
                }
                Ok(e.coefficients.map_keys(|i| ModeIndex::Losert(*i)))
            }
            (ModeIndex::Plancherel(a), ModeIndex::Plancherel(b)) => {
                let t = &self.truncation;
                let cg = cg_project((a.label.rep(), a.n, a.m), (b.label.rep(), b.n, b.m), t.lambda_max, &t.grid)?;
                let (n, m) = (cg.n, cg.m);
                let mut out: CoefficientTable<ModeIndex> = cg
                    .discrete
                    .iter()
                    .map(|(l, c)| (ModeIndex::Plancherel(PbMode { n, m, label: *l }), *c))
                    .collect();
                for d in &cg.continuous {
                    out.add(ModeIndex::Plancherel(PbMode { n, m, label: d.label() }), d.value() * d.weight);
                }
                Ok(out)
            }
            _ => invalid("mode product across bases"),
        }
    }

    /// (n k_L + m k_R) g^{ab} δ(X, Ȳ) as (ω_L, ω_R) for two generators.
    fn central_pair(&self, x: &KMGenerator, y: &KMGenerator) -> Result<(Complex64, Complex64)> {
        let Some(conj) = conjugate_mode(&x.mode) else {
            if matches!(y.mode, ModeIndex::Plancherel(PbMode { label: PbLabel::Continuous { .. }, .. }))
                && x.mode.grades() == (-y.mode.grades().0, -y.mode.grades().1)
            {
                return Err(Error::Unsupported(
                    "central term between principal series generators is a δ(σ−σ′) distribution".into(),
                ));
            }
            return Ok((ZERO, ZERO));
        };
        if conj != y.mode {
            return Ok((ZERO, ZERO));
        }
        let (n, m) = x.mode.grades();
        let g = self.g(x.a, y.a);
        Ok((g * n.value() * self.charges.k_l, g * m.value() * self.charges.k_r))
    }

    fn check_pair(x: &KMElement, y: &KMElement) -> Result<Option<Basis>> {
        match (x.basis()?, y.basis()?) {
            (Some(a), Some(b)) if a != b => invalid("bracket of Losert and Plancherel elements"),
            (a, b) => Ok(a.or(b)),
        }
    }

    /// [T^a_X, T^b_Y] for two generators.
    pub fn bracket_generators(&self, x: &KMGenerator, y: &KMGenerator) -> Result<KMElement> {
        let mut out = KMElement::zero();
        let dim = self.algebra.dim();
        let nonzero: Vec<(usize, Complex64)> =
            (0..dim).map(|c| (c, I * self.algebra.f(x.a, y.a, c))).filter(|(_, v)| v.norm() > 0.0).collect();
        if !nonzero.is_empty() {
            let prod = self.mode_product(&x.mode, &y.mode)?;
            for (c, v) in nonzero {
                for (mode, coef) in prod.iter() {
                    out.generators.add(KMGenerator { a: c, mode: *mode }, v * coef);
                }
            }
        }
        let (cl, cr) = self.central_pair(x, y)?;
        out.c_l = cl;
        out.c_r = cr;
        Ok(out)
    }

    /// The bracket of two elements of one basis, evaluated in parallel over generator pairs.
    pub fn bracket(&self, x: &KMElement, y: &KMElement) -> Result<KMElement> {
        Self::check_pair(x, y)?;
        let pairs: Vec<((&KMGenerator, Complex64), (&KMGenerator, Complex64))> = x
            .generators
            .iter()
            .flat_map(|(gx, cx)| y.generators.iter().map(move |(gy, cy)| ((gx, *cx), (gy, *cy))))
            .collect();
        let parts: Vec<KMElement> = pairs
            .par_iter()
            .map(|((gx, cx), (gy, cy))| Ok(self.bracket_generators(gx, gy)?.scaled(cx * cy)))
            .collect::<Result<_>>()?;
        let mut out = KMElement::sum(&parts);
        // [L₀, T_{nm}] = n T_{nm}, [R₀, T_{nm}] = m T_{nm}
        for (sign, a, b) in [(1.0, x, y), (-1.0, y, x)] {
            if a.l0 == ZERO && a.r0 == ZERO {
                continue;
            }
            for (g, c) in b.generators.iter() {
                let (n, m) = g.mode.grades();
                out.generators.add(*g, sign * c * (a.l0 * n.value() + a.r0 * m.value()));
            }
        }
        Ok(out)
    }

    /// ω_L or ω_R of two elements, from the generator table.
    pub fn omega(&self, which: Cocycle, x: &KMElement, y: &KMElement) -> Result<Complex64> {
        Self::check_pair(x, y)?;
        let mut s = ZERO;
        for (gx, cx) in x.generators.iter() {
            for (gy, cy) in y.generators.iter() {
                let (l, r) = self.central_pair(gx, gy)?;
                s += cx * cy * if which == Cocycle::L { l } else { r };
            }
        }
        Ok(s)
    }

    /// |ω([X,Y],Z) + ω([Y,Z],X) + ω([Z,X],Y)|.
    pub fn verify_cocycle(&self, which: Cocycle, x: &KMElement, y: &KMElement, z: &KMElement) -> Result<f64> {
        let mut s = ZERO;
        for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
            s += self.omega(which, &self.bracket(a, b)?, c)?;
        }
        Ok(s.norm())
    }

    /// Norm of the cyclic sum [[X,Y],Z] + [[Y,Z],X] + [[Z,X],Y].
    pub fn jacobi_residual(&self, x: &KMElement, y: &KMElement, z: &KMElement) -> Result<f64> {
        let mut s = KMElement::zero();
        for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
            s.axpy(Complex64::new(1.0, 0.0), &self.bracket(&self.bracket(a, b)?, c)?);
        }
        Ok(s.norm())
    }

    /// f^{nmk}(σ_j) on the truncation grid, cached.
    fn transform(&self, idx: LosertIndex) -> Result<Arc<Vec<Complex64>>> {
        if let Some(hit) = self.transforms.read().get(&idx) {
            return Ok(hit.clone());
        }
        let v: Arc<Vec<Complex64>> =
            Arc::new(basis_conversion(idx, &self.truncation.grid)?.iter().map(|s| s.value()).collect());
        Ok(self.transforms.write().entry(idx).or_insert(v).clone())
    }

    /// Rewrites Losert generators in the discrete part (Φ_{nmk} = s Ψ_{nΛm}) as
    /// Plancherel generators. Complement generators are rejected.
    pub fn losert_to_plancherel(&self, x: &KMElement) -> Result<KMElement> {
        let mut out = KMElement { generators: CoefficientTable::new(), ..x.clone() };
        for (g, c) in x.generators.iter() {
            let ModeIndex::Losert(idx) = g.mode else {
                return invalid("expected Losert generators");
            };
            let Some((label, s)) = discrete_partner(idx) else {
                return Err(Error::Unsupported(format!(
                    "Φ{idx} lies in the continuous part; only discrete-sector generators convert to single modes"
                )));
            };
            out.generators.add(KMGenerator::plancherel(g.a, idx.n, label, idx.m)?, c * s);
        }
        Ok(out)
    }

    /// Rewrites Plancherel generators over the Losert basis with k ≤ k_max: discrete
    /// modes map to s Φ_{nmk}, a principal series node to ½ Σ_k conj f^{nmk}(σ_j) Φ_{nmk}.
    pub fn plancherel_to_losert(&self, x: &KMElement) -> Result<KMElement> {
        let mut out = KMElement { generators: CoefficientTable::new(), ..x.clone() };
        let grid = &self.truncation.grid;
        for (g, c) in x.generators.iter() {
            let ModeIndex::Plancherel(p) = g.mode else {
                return invalid("expected Plancherel generators");
            };
            match p.label {
                PbLabel::Discrete { lambda, .. } => {
                    let low = p.n.abs().min(p.m.abs());
                    let partner = (low - lambda)
                        .to_int()
                        .filter(|k| *k >= 0)
                        .and_then(|k| LosertIndex::new(p.n, p.m, k as u32).ok())
                        .and_then(|idx| discrete_partner(idx).map(|(l, s)| (idx, l, s)))
                        .filter(|(_, l, _)| PbLabel::from(*l) == p.label);
                    let Some((idx, _, s)) = partner else {
                        return Err(Error::Domain(format!("Ψ_({}, {}, {}) has no Losert partner", p.n, p.label.rep(), p.m)));
                    };
                    out.generators.add(KMGenerator { a: g.a, mode: ModeIndex::Losert(idx) }, c * s);
                }
                PbLabel::Continuous { sigma, .. } => {
                    let j = grid.nodes.iter().position(|&s| s == sigma.0).ok_or_else(|| {
                        Error::InvalidInput(format!("σ = {} is not a node of the truncation grid", sigma.0))
                    })?;
                    let k_min = classify(p.n, p.m).k_min;
                    for k in k_min..=self.truncation.k_max {
                        let idx = LosertIndex::new(p.n, p.m, k)?;
                        let f = self.transform(idx)?[j];
                        out.generators.add(KMGenerator { a: g.a, mode: ModeIndex::Losert(idx) }, c * 0.5 * f.conj());
                    }
                }
            }
        }
        Ok(out)
    }

    /// ‖bracket_LB(X, Y) − to_LB(bracket_PB(to_PB X, to_PB Y))‖ for discrete-sector
    /// Losert elements.
    pub fn presentation_gap(&self, x: &KMElement, y: &KMElement) -> Result<f64> {
        let direct = self.bracket(x, y)?;
        let via = self.plancherel_to_losert(&self.bracket(&self.losert_to_plancherel(x)?, &self.losert_to_plancherel(y)?)?)?;
        let mut d = direct;
        d.axpy(Complex64::new(-1.0, 0.0), &via);
        Ok(d.norm())
    }
}

/// Cartan generators and root vectors of the finite algebra, supplied by the caller.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootData {
    pub cartan: Vec<usize>,
    /// (generator index, root α with [H^i, E_α] = α_i E_α)
    pub roots: Vec<(usize, Vec<f64>)>,
}

impl RootData {
    /// sl(2) in the basis (K₀, K₊, K₋): H = K₀, roots ±1.
    pub fn sl2() -> Self {
        RootData { cartan: vec![0], roots: vec![(1, vec![1.0]), (2, vec![-1.0])] }
    }

    /// Largest deviation from [H^i, E_α] = α_i E_α in the algebra.
    pub fn check(&self, alg: &LieAlgebraSpec) -> Result<f64> {
        let dim = alg.dim();
        let unit = |a: usize| (0..dim).map(|i| Complex64::new(if i == a { 1.0 } else { 0.0 }, 0.0)).collect::<Vec<_>>();
        let mut worst = 0.0f64;
        for (e, alpha) in &self.roots {
            if alpha.len() != self.cartan.len() {
                return invalid("root length differs from the rank");
            }
            for (h, ai) in self.cartan.iter().zip(alpha) {
                let b = alg.bracket(&unit(*h), &unit(*e))?;
                for (c, v) in b.iter().enumerate() {
                    let want = if c == *e { *ai } else { 0.0 };
                    worst = worst.max((v - want).norm());
                }
            }
        }
        Ok(worst)
    }

    fn generator_of(&self, alpha: Option<&[f64]>) -> Result<Vec<usize>> {
        match alpha {
            None => Ok(self.cartan.clone()),
            Some(a) => {
                let hit: Vec<usize> = self.roots.iter().filter(|(_, r)| same_root(r, a)).map(|(e, _)| *e).collect();
                if hit.is_empty() {
                    return invalid(format!("{a:?} is not a root"));
                }
                Ok(hit)
            }
        }
    }

    /// Whether α is a root (Some) or zero (None) of the algebra.
    pub fn classify(&self, alpha: &[f64]) -> Option<Option<Vec<f64>>> {
        if alpha.iter().all(|v| v.abs() < 1e-12) {
            return Some(None);
        }
        self.roots.iter().find(|(_, r)| same_root(r, alpha)).map(|(_, r)| Some(r.clone()))
    }
}

fn same_root(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12)
}

/// The generators E_{α,nmk} (or H^i_{nmk} for α = None) with k ≤ k_max.
pub fn root_space(data: &RootData, alpha: Option<&[f64]>, n: HalfInt, m: HalfInt, k_max: u32) -> Result<Vec<KMGenerator>> {
    let gens = data.generator_of(alpha)?;
    let mut out = Vec::new();
    for a in gens {
        for k in 0..=k_max {
            out.push(KMGenerator::losert(a, n, m, k)?);
        }
    }
    Ok(out)
}

/// Largest norm of the part of [g_(α,n,m), g_(β,p,q)] lying outside g_(α+β,n+p,m+q)
/// (the whole bracket when α+β is neither a root nor zero), over sample modes k ≤ k_max.
/// Central values are allowed when α+β = 0.
pub fn root_containment(
    km: &KacMoody,
    data: &RootData,
    alpha: (Option<&[f64]>, HalfInt, HalfInt),
    beta: (Option<&[f64]>, HalfInt, HalfInt),
    k_max: u32,
) -> Result<f64> {
    let rank = data.cartan.len();
    let zero = vec![0.0; rank];
    let sum: Vec<f64> =
        alpha.0.unwrap_or(&zero).iter().zip(beta.0.unwrap_or(&zero)).map(|(a, b)| a + b).collect();
    let target = data.classify(&sum);
    let allowed: Vec<usize> = match &target {
        Some(t) => data.generator_of(t.as_deref())?,
        None => Vec::new(),
    };
    let (n, m) = (alpha.1 + beta.1, alpha.2 + beta.2);
    let xs = root_space(data, alpha.0, alpha.1, alpha.2, k_max)?;
    let ys = root_space(data, beta.0, beta.1, beta.2, k_max)?;
    let mut worst = 0.0f64;
    for x in &xs {
        for y in &ys {
            let b = km.bracket_generators(x, y)?;
            let mut outside = 0.0;
            for (g, c) in b.generators.iter() {
                if !allowed.contains(&g.a) || g.mode.grades() != (n, m) {
                    outside += c.norm_sqr();
                }
            }
            if target != Some(None) {
                outside += b.c_l.norm_sqr() + b.c_r.norm_sqr();
            }
            worst = worst.max(outside.sqrt());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests;
