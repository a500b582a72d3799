//! Second-order jets: a value with its first two derivatives in one variable.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    pub v: Complex64,
    pub d1: Complex64,
    pub d2: Complex64,
}

impl Jet {
    pub fn new(v: Complex64, d1: Complex64, d2: Complex64) -> Self {
        Jet { v, d1, d2 }
    }

    pub fn real(v: f64, d1: f64, d2: f64) -> Self {
        Jet::new(v.into(), d1.into(), d2.into())
    }

    pub fn constant(v: Complex64) -> Self {
        Jet::new(v, 0.0.into(), 0.0.into())
    }

    /// The identity function at `x`.
    pub fn var(x: f64) -> Self {
        Jet::real(x, 1.0, 0.0)
    }

    pub fn scale(self, s: Complex64) -> Self {
        Jet::new(self.v * s, self.d1 * s, self.d2 * s)
    }

    /// `outer(inner(x))`, where `outer` holds (f, f′, f″) at `inner.v`.
    pub fn compose(outer: Jet, inner: Jet) -> Self {
        Jet::new(outer.v, outer.d1 * inner.d1, outer.d2 * inner.d1 * inner.d1 + outer.d1 * inner.d2)
    }

    /// `self^p` for a nonnegative real base value. At a zero base the derivatives
    /// are exact for p ∈ {0, 1} or p ≥ 2 and NaN otherwise.
    pub fn powf(self, p: f64) -> Self {
        let b = self.v.re;
        debug_assert!(b >= 0.0 && self.v.im == 0.0);
        if b == 0.0 {
            let (f, f1, f2) = if p == 0.0 {
                (1.0, 0.0, 0.0)
            } else if p == 1.0 {
                (0.0, 1.0, 0.0)
            } else if p == 2.0 {
                (0.0, 0.0, 2.0)
            } else if p > 2.0 {
                (0.0, 0.0, 0.0)
            } else if p > 0.0 {
                (0.0, f64::NAN, f64::NAN)
            } else {
                (f64::INFINITY, f64::NAN, f64::NAN)
            };
            return Jet::compose(Jet::real(f, f1, f2), self);
        }
        let f = b.powf(p);
        let f1 = if p == 0.0 { 0.0 } else { p * f / b };
        let f2 = if p == 0.0 || p == 1.0 { 0.0 } else { p * (p - 1.0) * f / (b * b) };
        Jet::compose(Jet::real(f, f1, f2), self)
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet::new(self.v + o.v, self.d1 + o.d1, self.d2 + o.d2)
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        Jet::new(self.v - o.v, self.d1 - o.d1, self.d2 - o.d2)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet::new(-self.v, -self.d1, -self.d2)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        Jet::new(
            self.v * o.v,
            self.d1 * o.v + self.v * o.d1,
            self.d2 * o.v + 2.0 * self.d1 * o.d1 + self.v * o.d2,
        )
    }
}
