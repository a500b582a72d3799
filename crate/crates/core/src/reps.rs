//! Unitary irreducible representations of SL(2,ℝ): labels, weight supports, ladder
//! coefficients and Casimir eigenvalues.
//!
//! The principal series is labelled by λ = ½ + iσ, so the Casimir is −(¼+σ²) and the
//! ladder coefficients are √((n±½)² + σ²).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::half::HalfInt;

pub type WeightIndex = HalfInt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Eta {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Eta {
    pub fn sign(self) -> i64 {
        match self {
            Eta::Plus => 1,
            Eta::Minus => -1,
        }
    }

    pub fn flip(self) -> Eta {
        match self {
            Eta::Plus => Eta::Minus,
            Eta::Minus => Eta::Plus,
        }
    }
}

impl fmt::Display for Eta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Eta::Plus => "+",
            Eta::Minus => "-",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum RepLabel {
    Discrete { lambda: HalfInt, eta: Eta },
    Continuous { sigma: f64, eps: HalfInt },
}

impl RepLabel {
    /// Discrete series label; λ must be a positive half-integer. λ = ½ is accepted
    /// (it is a valid label) but is neither unitary-normalisable nor supported by `psi`.
    pub fn discrete(lambda: HalfInt, eta: Eta) -> Result<Self> {
        let l = RepLabel::Discrete { lambda, eta };
        l.validate()?;
        Ok(l)
    }

    pub fn continuous(sigma: f64, eps: HalfInt) -> Result<Self> {
        let l = RepLabel::Continuous { sigma, eps };
        l.validate()?;
        Ok(l)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            RepLabel::Discrete { lambda, .. } if lambda.twice() < 1 => {
                invalid(format!("discrete label needs λ ≥ 1/2, got {lambda}"))
            }
            RepLabel::Continuous { sigma, .. } if !(sigma > 0.0) || !sigma.is_finite() => {
                invalid(format!("continuous label needs σ > 0, got {sigma}"))
            }
            RepLabel::Continuous { eps, .. } if eps != HalfInt::ZERO && eps != HalfInt::HALF => {
                invalid(format!("ε must be 0 or 1/2, got {eps}"))
            }
            _ => Ok(()),
        }
    }

    /// Parity class ε of the weights: 0 for integer weights, ½ for half-odd ones.
    pub fn eps(&self) -> HalfInt {
        match *self {
            RepLabel::Discrete { lambda, .. } => HalfInt::from_twice(lambda.twice().rem_euclid(2)),
            RepLabel::Continuous { eps, .. } => eps,
        }
    }

    pub fn is_discrete(&self) -> bool {
        matches!(self, RepLabel::Discrete { .. })
    }

    pub fn casimir_eigenvalue(&self) -> f64 {
        match *self {
            RepLabel::Discrete { lambda, .. } => {
                let l = lambda.value();
                l * (l - 1.0)
            }
            RepLabel::Continuous { sigma, .. } => -(0.25 + sigma * sigma),
        }
    }

    pub fn weight_support(&self, n: HalfInt) -> bool {
        match *self {
            RepLabel::Discrete { lambda, eta: Eta::Plus } => n >= lambda && (n - lambda).is_integer(),
            RepLabel::Discrete { lambda, eta: Eta::Minus } => n <= -lambda && (n + lambda).is_integer(),
            RepLabel::Continuous { eps, .. } => (n - eps).is_integer(),
        }
    }

    /// c with K_{dir}|Λ,n⟩ = c |Λ,n+dir⟩, dir = ±1. The D⁻ coefficients carry the
    /// overall minus sign of their standard form.
    pub fn ladder_coeff(&self, n: HalfInt, dir: i32) -> Result<f64> {
        if dir != 1 && dir != -1 {
            return invalid(format!("ladder direction must be ±1, got {dir}"));
        }
        if !self.weight_support(n) {
            return Err(Error::Domain(format!("weight {n} not in the support of {self}")));
        }
        let d = dir as f64;
        let n = n.value();
        Ok(match *self {
            RepLabel::Discrete { lambda, eta: Eta::Plus } => {
                let l = lambda.value();
                ((n + d * l) * (n + d * (1.0 - l))).max(0.0).sqrt()
            }
            RepLabel::Discrete { lambda, eta: Eta::Minus } => {
                let l = lambda.value();
                -((-n - d * l) * (-n - d * (1.0 - l))).max(0.0).sqrt()
            }
            RepLabel::Continuous { sigma, .. } => ((n + d * 0.5).powi(2) + sigma * sigma).sqrt(),
        })
    }

    /// Unitary and with square-integrable (discrete) or δ-normalisable (continuous)
    /// matrix elements: λ > ½, σ > 0.
    pub fn is_unitary(&self) -> bool {
        match *self {
            RepLabel::Discrete { lambda, .. } => lambda.twice() > 1,
            RepLabel::Continuous { sigma, .. } => sigma > 0.0,
        }
    }
}

impl fmt::Display for RepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepLabel::Discrete { lambda, eta } => write!(f, "discrete:{lambda}:{eta}"),
            RepLabel::Continuous { sigma, eps } => write!(f, "continuous:{sigma}:{eps}"),
        }
    }
}

impl FromStr for RepLabel {
    type Err = Error;

    /// `discrete:<λ>:<+|->` or `continuous:<σ>[:<ε>]`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        match parts.as_slice() {
            ["discrete", l, e] => {
                let eta = match *e {
                    "+" => Eta::Plus,
                    "-" => Eta::Minus,
                    _ => return invalid(format!("η must be + or -, got {e:?}")),
                };
                RepLabel::discrete(l.parse()?, eta)
            }
            ["continuous", s] => RepLabel::continuous(parse_f64(s)?, HalfInt::ZERO),
            ["continuous", s, e] => RepLabel::continuous(parse_f64(s)?, e.parse()?),
            _ => invalid(format!("cannot parse representation label {s:?}")),
        }
    }
}

fn parse_f64(s: &str) -> Result<f64> {
    s.parse().map_err(|_| Error::InvalidInput(format!("not a number: {s:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn h(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    fn d(l2: i64, eta: Eta) -> RepLabel {
        RepLabel::discrete(h(l2), eta).unwrap()
    }

    #[test]
    fn casimir_values() {
        assert_eq!(d(2, Eta::Plus).casimir_eigenvalue(), 0.0);
        assert_eq!(d(3, Eta::Minus).casimir_eigenvalue(), 0.75);
        assert_eq!(RepLabel::continuous(1.0, HalfInt::ZERO).unwrap().casimir_eigenvalue(), -1.25);
    }

    #[test]
    fn supports() {
        assert!(d(2, Eta::Plus).weight_support(HalfInt::ONE));
        assert!(!d(2, Eta::Plus).weight_support(HalfInt::ZERO));
        assert!(d(3, Eta::Minus).weight_support(h(-3)));
        assert!(!d(3, Eta::Minus).weight_support(h(-2)));
        assert!(!RepLabel::continuous(2.0, HalfInt::HALF).unwrap().weight_support(HalfInt::ZERO));
        assert!(RepLabel::continuous(2.0, HalfInt::HALF).unwrap().weight_support(h(-1)));
    }

    #[test]
    fn ladder_values() {
        let l = d(2, Eta::Plus);
        assert!((l.ladder_coeff(HalfInt::ONE, 1).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(l.ladder_coeff(HalfInt::ONE, -1).unwrap(), 0.0);
        // λ = ½ + iσ: √(¼ + σ²) at n = 0
        let c = RepLabel::continuous(2.0, HalfInt::ZERO).unwrap();
        assert!((c.ladder_coeff(HalfInt::ZERO, 1).unwrap() - 17f64.sqrt() / 2.0).abs() < 1e-15);
        assert!(matches!(l.ladder_coeff(HalfInt::ZERO, 1), Err(Error::Domain(_))));
        assert!(l.ladder_coeff(HalfInt::ONE, 2).is_err());
        assert_eq!(d(3, Eta::Minus).ladder_coeff(h(-3), 1).unwrap(), 0.0);
        assert!(d(3, Eta::Minus).ladder_coeff(h(-3), -1).unwrap() < 0.0);
    }

    #[test]
    fn unitarity() {
        assert!(d(2, Eta::Plus).is_unitary());
        assert!(!d(1, Eta::Plus).is_unitary());
        assert!(RepLabel::continuous(0.3, HalfInt::ZERO).unwrap().is_unitary());
        assert!(RepLabel::discrete(HalfInt::ZERO, Eta::Plus).is_err());
        assert!(RepLabel::continuous(-1.0, HalfInt::ZERO).is_err());
        assert!(RepLabel::continuous(1.0, HalfInt::ONE).is_err());
    }

    #[test]
    fn json_encoding() {
        let l = d(3, Eta::Plus);
        let s = serde_json::to_string(&l).unwrap();
        assert_eq!(s, r#"{"type":"discrete","lambda":1.5,"eta":"+"}"#);
        assert_eq!(serde_json::from_str::<RepLabel>(&s).unwrap(), l);
        let c: RepLabel = serde_json::from_str(r#"{"type":"continuous","sigma":2.0,"eps":0.5}"#).unwrap();
        assert_eq!(c, RepLabel::continuous(2.0, HalfInt::HALF).unwrap());
    }

    #[test]
    fn text_encoding() {
        assert_eq!("discrete:1:+".parse::<RepLabel>().unwrap(), d(2, Eta::Plus));
        assert_eq!("discrete:3/2:-".parse::<RepLabel>().unwrap(), d(3, Eta::Minus));
        assert_eq!("continuous:2:1/2".parse::<RepLabel>().unwrap(), RepLabel::continuous(2.0, HalfInt::HALF).unwrap());
        assert!("discrete:1".parse::<RepLabel>().is_err());
        let l = d(5, Eta::Minus);
        assert_eq!(l.to_string().parse::<RepLabel>().unwrap(), l);
    }

    fn labels() -> impl Strategy<Value = RepLabel> {
        prop_oneof![
            (2i64..10, any::<bool>()).prop_map(|(l2, p)| d(l2, if p { Eta::Plus } else { Eta::Minus })),
            (0.01..20.0f64, any::<bool>())
                .prop_map(|(s, e)| RepLabel::continuous(s, if e { HalfInt::HALF } else { HalfInt::ZERO }).unwrap()),
        ]
    }

    proptest! {
        // q = n² − ½(c₊(n)c₋(n+1) + c₋(n)c₊(n−1)) on every supported weight.
        #[test]
        fn ladder_casimir_consistency(l in labels(), shift in 0i64..12) {
            let n = match l {
                RepLabel::Discrete { lambda, eta: Eta::Plus } => lambda + HalfInt::int(shift),
                RepLabel::Discrete { lambda, eta: Eta::Minus } => -lambda - HalfInt::int(shift),
                RepLabel::Continuous { eps, .. } => eps + HalfInt::int(shift - 6),
            };
            let c = |k: HalfInt, dir| if l.weight_support(k) { l.ladder_coeff(k, dir).unwrap() } else { 0.0 };
            let up = c(n, 1) * c(n + HalfInt::ONE, -1);
            let down = c(n, -1) * c(n - HalfInt::ONE, 1);
            let q = n.value().powi(2) - 0.5 * (up + down);
            let want = l.casimir_eigenvalue();
            prop_assert!((q - want).abs() < 1e-12 * want.abs().max(1.0));
        }
    }

    #[test]
    fn boundary_coefficients_vanish() {
        for l2 in 2..9 {
            assert_eq!(d(l2, Eta::Plus).ladder_coeff(h(l2), -1).unwrap(), 0.0);
            assert_eq!(d(l2, Eta::Minus).ladder_coeff(h(-l2), 1).unwrap(), 0.0);
        }
    }
}
