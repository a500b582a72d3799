//! Left and right sl(2) generators and the Casimir as differential operators.
//!
//! On f = e^{i(n+m)φ₁ + i(m−n)φ₂} F(ρ):
//!   L± f ∝ ½[±F′ − (n+m) tanh ρ F + (m−n) coth ρ F]   (n → n ± 1)
//!   R± f ∝ ½[∓F′ + (n+m) tanh ρ F + (m−n) coth ρ F]   (m → m ± 1)
//!   Q f  ∝ ¼[F″ + 2 coth 2ρ F′ + (m+n)²/cosh²ρ F − (m−n)²/sinh²ρ F]
//! with L± = ½e^{±i(φ₁−φ₂)}[i tanh ρ ∂₁ ± ∂_ρ − i coth ρ ∂₂] and
//! R± = ½e^{±i(φ₁+φ₂)}[−i tanh ρ ∂₁ ∓ ∂_ρ − i coth ρ ∂₂].

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{GroupFunction, RadialProfile};
use crate::error::{Error, Result};
use crate::half::HalfInt;
use crate::specfun::{Jet, XPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Operator {
    LPlus,
    LMinus,
    L0,
    RPlus,
    RMinus,
    R0,
    Q,
}

impl Operator {
    /// Grade shift (Δn, Δm).
    pub fn shift(self) -> (i64, i64) {
        match self {
            Operator::LPlus => (1, 0),
            Operator::LMinus => (-1, 0),
            Operator::RPlus => (0, 1),
            Operator::RMinus => (0, -1),
            _ => (0, 0),
        }
    }

    fn derivatives_needed(self) -> usize {
        match self {
            Operator::L0 | Operator::R0 => 0,
            Operator::Q => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Operator::LPlus => "L+",
            Operator::LMinus => "L-",
            Operator::L0 => "L0",
            Operator::RPlus => "R+",
            Operator::RMinus => "R-",
            Operator::R0 => "R0",
            Operator::Q => "Q",
        })
    }
}

impl FromStr for Operator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "L+" => Operator::LPlus,
            "L-" => Operator::LMinus,
            "L0" => Operator::L0,
            "R+" => Operator::RPlus,
            "R-" => Operator::RMinus,
            "R0" => Operator::R0,
            "Q" => Operator::Q,
            _ => return Err(Error::InvalidInput(format!("unknown operator {s:?}"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DiffMode {
    /// Exact x-derivatives from the profile.
    Analytic,
    /// Central differences in ρ with step `h` and one Richardson step (error O(h⁴));
    /// one-sided five-point stencils within 2h of ρ = 0.
    FiniteDifference { h: f64 },
}

impl DiffMode {
    pub fn fd() -> Self {
        DiffMode::FiniteDifference { h: 1e-3 }
    }
}

#[derive(Debug)]
struct OperatorProfile {
    base: Arc<dyn RadialProfile>,
    op: Operator,
    n: f64,
    m: f64,
    mode: DiffMode,
}

pub fn apply_operator(op: Operator, f: &GroupFunction, mode: DiffMode) -> Result<GroupFunction> {
    let (dn, dm) = op.shift();
    let (n, m) = (f.n + HalfInt::int(dn), f.m + HalfInt::int(dm));
    match op {
        Operator::L0 | Operator::R0 => {
            let c = if op == Operator::L0 { f.n } else { f.m };
            let mut g = f.scaled(Complex64::new(c.value(), 0.0));
            g.n = n;
            g.m = m;
            return Ok(g);
        }
        _ => {}
    }
    if mode == DiffMode::Analytic && f.radial.max_order() < op.derivatives_needed() {
        return Err(Error::Unsupported(format!("{op} needs x-derivatives the profile does not provide")));
    }
    let radial = Arc::new(OperatorProfile { base: f.radial.clone(), op, n: f.n.value(), m: f.m.value(), mode });
    GroupFunction::new(n, m, radial)
}

impl OperatorProfile {
    fn analytic(&self, p: XPoint, order: usize) -> Result<Jet> {
        let k = self.op.derivatives_needed();
        if order + k > self.base.max_order() {
            return Err(Error::Unsupported(format!("derivative order {} of {}", order, self.op)));
        }
        let g = self.base.eval(p, order + k)?;
        let z = Complex64::new(0.0, 0.0);
        let g1 = Jet::new(g.d1, g.d2, z);
        let (xm1, xp1) = (Jet::real(p.xm1, 1.0, 0.0), Jet::real(p.xp1(), 1.0, 0.0));
        let (n, m) = (self.n, self.m);
        let c = |v: f64| Complex64::new(v, 0.0);
        let out = match self.op {
            Operator::Q => {
                let x = Jet::real(p.x, 1.0, 0.0);
                let mut q = (xm1 * xp1) * Jet::new(g.d2, z, z) + x.scale(c(2.0)) * g1;
                if m + n != 0.0 {
                    q = q + xp1.powf(-1.0).scale(c((m + n).powi(2) / 2.0)) * g;
                }
                if m != n {
                    q = q - xm1.powf(-1.0).scale(c((m - n).powi(2) / 2.0)) * g;
                }
                q
            }
            op => {
                // F′ = dF/dρ = 2√(x²−1) g′
                let dr = (xm1 * xp1).powf(0.5).scale(c(2.0)) * g1;
                let (sd, st) = match op {
                    Operator::LPlus => (1.0, -1.0),
                    Operator::LMinus => (-1.0, -1.0),
                    Operator::RPlus => (-1.0, 1.0),
                    Operator::RMinus => (1.0, 1.0),
                    _ => unreachable!(),
                };
                let mut r = dr.scale(c(sd));
                if n + m != 0.0 {
                    let tanh = (xm1 * xp1.powf(-1.0)).powf(0.5);
                    r = r + tanh.scale(c(st * (n + m))) * g;
                }
                if m != n {
                    let coth = (xp1 * xm1.powf(-1.0)).powf(0.5);
                    r = r + coth.scale(c(m - n)) * g;
                }
                r.scale(c(0.5))
            }
        };
        Ok(match order {
            0 => Jet::new(out.v, z, z),
            1 => Jet::new(out.v, out.d1, z),
            _ => out,
        })
    }

    fn finite_difference(&self, p: XPoint, h: f64) -> Result<Complex64> {
        let rho = p.rho();
        let f = |r: f64| self.base.value(XPoint::from_rho(r));
        let (f0, d1, d2) = if rho >= 2.0 * h {
            let at = |s: f64| -> Result<(Complex64, Complex64)> {
                let (fp, fm) = (f(rho + s)?, f(rho - s)?);
                Ok((fp, fm))
            };
            let f0 = f(rho)?;
            let (p1, m1) = at(h)?;
            let (p2, m2) = at(h / 2.0)?;
            let d1 = |fp: Complex64, fm: Complex64, s: f64| (fp - fm) / (2.0 * s);
            let d2 = |fp: Complex64, fm: Complex64, s: f64| (fp - 2.0 * f0 + fm) / (s * s);
            let r1 = (4.0 * d1(p2, m2, h / 2.0) - d1(p1, m1, h)) / 3.0;
            let r2 = (4.0 * d2(p2, m2, h / 2.0) - d2(p1, m1, h)) / 3.0;
            (f0, r1, r2)
        } else {
            let s = h / 2.0;
            let v: Vec<Complex64> = (0..6).map(|i| f(rho + i as f64 * s)).collect::<Result<_>>()?;
            let d1 = (-25.0 * v[0] + 48.0 * v[1] - 36.0 * v[2] + 16.0 * v[3] - 3.0 * v[4]) / (12.0 * s);
            let d2 = (45.0 * v[0] - 154.0 * v[1] + 214.0 * v[2] - 156.0 * v[3] + 61.0 * v[4] - 10.0 * v[5])
                / (12.0 * s * s);
            (v[0], d1, d2)
        };
        let (n, m) = (self.n, self.m);
        if rho < 1e-8 {
            // Only the m = n terms are regular at the identity; 2 coth 2ρ F′ → F″ there.
            if m != n {
                return Err(Error::Domain("coordinate singularity at ρ = 0".into()));
            }
            return Ok(match self.op {
                Operator::Q => (2.0 * d2 + (2.0 * n).powi(2) * f0) / 4.0,
                Operator::LPlus | Operator::RMinus => d1 / 2.0,
                _ => -d1 / 2.0,
            });
        }
        let (th, ct) = (rho.tanh(), 1.0 / rho.tanh());
        Ok(match self.op {
            Operator::Q => {
                let (ch, sh) = (rho.cosh(), rho.sinh());
                (d2 + 2.0 / (2.0 * rho).tanh() * d1 + ((m + n).powi(2) / (ch * ch) - (m - n).powi(2) / (sh * sh)) * f0)
                    / 4.0
            }
            Operator::LPlus => (d1 - (n + m) * th * f0 + (m - n) * ct * f0) / 2.0,
            Operator::LMinus => (-d1 - (n + m) * th * f0 + (m - n) * ct * f0) / 2.0,
            Operator::RPlus => (-d1 + (n + m) * th * f0 + (m - n) * ct * f0) / 2.0,
            Operator::RMinus => (d1 + (n + m) * th * f0 + (m - n) * ct * f0) / 2.0,
            Operator::L0 | Operator::R0 => unreachable!(),
        })
    }
}

impl RadialProfile for OperatorProfile {
    fn eval(&self, p: XPoint, order: usize) -> Result<Jet> {
        match self.mode {
            DiffMode::Analytic => self.analytic(p, order),
            DiffMode::FiniteDifference { h } => {
                if order > 0 {
                    return Err(Error::Unsupported("finite-difference profiles carry values only".into()));
                }
                Ok(Jet::constant(self.finite_difference(p, h)?))
            }
        }
    }

    fn max_order(&self) -> usize {
        match self.mode {
            DiffMode::Analytic => self.base.max_order().saturating_sub(self.op.derivatives_needed()),
            DiffMode::FiniteDifference { .. } => 0,
        }
    }

    fn decay(&self) -> f64 {
        self.base.decay()
    }

    fn oscillatory(&self) -> bool {
        self.base.oscillatory()
    }
}
