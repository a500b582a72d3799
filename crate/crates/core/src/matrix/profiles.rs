//! Generic radial profiles: linear combinations, products, conjugates and closures.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::RadialProfile;
use crate::error::{Error, Result};
use crate::specfun::{Jet, XPoint};

/// Σ c_i g_i(x).
#[derive(Clone, Debug)]
pub struct LinearProfile {
    terms: Vec<(Complex64, Arc<dyn RadialProfile>)>,
    decay: f64,
    oscillatory: bool,
}

impl LinearProfile {
    pub fn new(terms: Vec<(Complex64, Arc<dyn RadialProfile>)>) -> Self {
        let decay = terms.iter().map(|(_, g)| g.decay()).fold(f64::INFINITY, f64::min);
        let oscillatory = terms.iter().any(|(_, g)| g.oscillatory());
        LinearProfile { terms, decay: if decay.is_finite() { decay } else { 100.0 }, oscillatory }
    }

    /// Overrides the declared asymptotics, e.g. for wave packets of oscillatory terms
    /// that decay faster than any single term.
    pub fn with_asymptotics(mut self, decay: f64, oscillatory: bool) -> Self {
        self.decay = decay;
        self.oscillatory = oscillatory;
        self
    }
}

impl RadialProfile for LinearProfile {
    fn eval(&self, p: XPoint, order: usize) -> Result<Jet> {
        let mut acc = Jet::constant(Complex64::new(0.0, 0.0));
        for (c, g) in &self.terms {
            acc = acc + g.eval(p, order)?.scale(*c);
        }
        Ok(acc)
    }

    fn max_order(&self) -> usize {
        self.terms.iter().map(|(_, g)| g.max_order()).min().unwrap_or(2)
    }

    fn decay(&self) -> f64 {
        self.decay
    }

    fn oscillatory(&self) -> bool {
        self.oscillatory
    }
}

#[derive(Clone, Debug)]
pub struct ProductProfile {
    a: Arc<dyn RadialProfile>,
    b: Arc<dyn RadialProfile>,
}

impl ProductProfile {
    pub fn new(a: Arc<dyn RadialProfile>, b: Arc<dyn RadialProfile>) -> Self {
        ProductProfile { a, b }
    }
}

impl RadialProfile for ProductProfile {
    fn eval(&self, p: XPoint, order: usize) -> Result<Jet> {
        Ok(self.a.eval(p, order)? * self.b.eval(p, order)?)
    }

    fn max_order(&self) -> usize {
        self.a.max_order().min(self.b.max_order())
    }

    fn decay(&self) -> f64 {
        self.a.decay() + self.b.decay()
    }

    fn oscillatory(&self) -> bool {
        self.a.oscillatory() || self.b.oscillatory()
    }
}

#[derive(Clone, Debug)]
pub(crate) struct ConjProfile(pub Arc<dyn RadialProfile>);

impl RadialProfile for ConjProfile {
    fn eval(&self, p: XPoint, order: usize) -> Result<Jet> {
        let j = self.0.eval(p, order)?;
        Ok(Jet::new(j.v.conj(), j.d1.conj(), j.d2.conj()))
    }

    fn max_order(&self) -> usize {
        self.0.max_order()
    }

    fn decay(&self) -> f64 {
        self.0.decay()
    }

    fn oscillatory(&self) -> bool {
        self.0.oscillatory()
    }
}

type JetFn = dyn Fn(XPoint) -> Jet + Send + Sync;

/// A profile given by a closure returning a jet (derivatives up to `order`).
#[derive(Clone)]
pub struct FnProfile {
    f: Arc<JetFn>,
    order: usize,
    decay: f64,
    oscillatory: bool,
}

impl FnProfile {
    pub fn new(f: impl Fn(XPoint) -> Jet + Send + Sync + 'static, order: usize, decay: f64) -> Self {
        FnProfile { f: Arc::new(f), order, decay, oscillatory: false }
    }

    /// Value-only profile.
    pub fn values(f: impl Fn(XPoint) -> Complex64 + Send + Sync + 'static, decay: f64) -> Self {
        Self::new(move |p| Jet::constant(f(p)), 0, decay)
    }

    pub fn oscillating(mut self) -> Self {
        self.oscillatory = true;
        self
    }
}

impl fmt::Debug for FnProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FnProfile").field("order", &self.order).field("decay", &self.decay).finish()
    }
}

impl RadialProfile for FnProfile {
    fn eval(&self, p: XPoint, order: usize) -> Result<Jet> {
        if order > self.order {
            return Err(Error::Unsupported(format!("profile provides {} derivatives", self.order)));
        }
        Ok((self.f)(p))
    }

    fn max_order(&self) -> usize {
        self.order
    }

    fn decay(&self) -> f64 {
        self.decay
    }

    fn oscillatory(&self) -> bool {
        self.oscillatory
    }
}
