//! Finite-dimensional Lie algebras given by structure constants,
//! with the convention `[T^a, T^b] = i f^{ab}_c T^c`.

use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebraSpec {
    dim: usize,
    names: Vec<String>,
    /// f[(a*dim + b)*dim + c] = f^{ab}_c
    f: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct LieAlgebraJson {
    dim: usize,
    names: Vec<String>,
    f: Vec<Vec<Vec<[f64; 2]>>>,
}

impl LieAlgebraSpec {
    /// Builds an algebra from `f[a][b][c]`; rejects constants that are not antisymmetric in (a,b).
    pub fn new(names: Vec<String>, f: Vec<Vec<Vec<Complex64>>>) -> Result<Self> {
        let dim = names.len();
        if dim == 0 {
            return invalid("algebra must have positive dimension");
        }
        if f.len() != dim || f.iter().any(|r| r.len() != dim || r.iter().any(|c| c.len() != dim)) {
            return invalid(format!("structure constants must be {dim}x{dim}x{dim}"));
        }
        let flat: Vec<Complex64> = f.into_iter().flatten().flatten().collect();
        let alg = LieAlgebraSpec { dim, names, f: flat };
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    if (alg.f(a, b, c) + alg.f(b, a, c)).norm() > 1e-12 {
                        return invalid(format!("f^{{{a}{b}}}_{c} is not antisymmetric"));
                    }
                }
            }
        }
        Ok(alg)
    }

    /// sl(2) in the ladder basis (K₀, K₊, K₋): [K₀,K±] = ±K±, [K₊,K₋] = −2K₀.
    pub fn sl2() -> Self {
        let mut f = vec![vec![vec![Complex64::new(0.0, 0.0); 3]; 3]; 3];
        f[0][1][1] = -I;
        f[1][0][1] = I;
        f[0][2][2] = I;
        f[2][0][2] = -I;
        f[1][2][0] = 2.0 * I;
        f[2][1][0] = -2.0 * I;
        Self::new(vec!["K0".into(), "K+".into(), "K-".into()], f).expect("sl2 constants are antisymmetric")
    }

    /// sl(2) in the Hermitian basis J₀ = K₀, J₁ = (K₊+K₋)/2, J₂ = (K₊−K₋)/2i, where f is real.
    pub fn sl2_hermitian() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let mut f = vec![vec![vec![Complex64::new(0.0, 0.0); 3]; 3]; 3];
        f[0][1][2] = one;
        f[1][0][2] = -one;
        f[0][2][1] = -one;
        f[2][0][1] = one;
        f[1][2][0] = -one;
        f[2][1][0] = one;
        Self::new(vec!["J0".into(), "J1".into(), "J2".into()], f).expect("sl2 constants are antisymmetric")
    }

    pub fn abelian(dim: usize) -> Self {
        let f = vec![vec![vec![Complex64::new(0.0, 0.0); dim]; dim]; dim];
        Self::new((0..dim).map(|i| format!("H{i}")).collect(), f).expect("zero constants")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    #[inline]
    pub fn f(&self, a: usize, b: usize, c: usize) -> Complex64 {
        self.f[(a * self.dim + b) * self.dim + c]
    }

    /// Overwrites one constant without re-checking invariants (useful to build broken algebras in tests).
    pub fn set_f_unchecked(&mut self, a: usize, b: usize, c: usize, v: Complex64) {
        self.f[(a * self.dim + b) * self.dim + c] = v;
    }

    /// `[X, Y]` for coefficient vectors over the basis.
    pub fn bracket(&self, x: &[Complex64], y: &[Complex64]) -> Result<Vec<Complex64>> {
        if x.len() != self.dim || y.len() != self.dim {
            return invalid(format!("vectors must have length {}", self.dim));
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim];
        for a in 0..self.dim {
            if x[a] == Complex64::new(0.0, 0.0) {
                continue;
            }
            for b in 0..self.dim {
                let xy = x[a] * y[b];
                if xy == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for (c, o) in out.iter_mut().enumerate() {
                    *o += I * self.f(a, b, c) * xy;
                }
            }
        }
        Ok(out)
    }

    /// Adjoint matrix of basis element `a`: ad(T^a)_{cb} = i f^{ab}_c.
    pub fn adjoint(&self, a: usize) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.dim, self.dim, |c, b| I * self.f(a, b, c))
    }

    /// g^{ab} = Tr(ad T^a ad T^b).
    pub fn killing_form(&self) -> DMatrix<Complex64> {
        let ads: Vec<_> = (0..self.dim).map(|a| self.adjoint(a)).collect();
        DMatrix::from_fn(self.dim, self.dim, |a, b| (&ads[a] * &ads[b]).trace())
    }

    /// g(X, Y) = X^a g^{ab} Y^b (bilinear, no conjugation).
    pub fn killing(&self, x: &[Complex64], y: &[Complex64]) -> Complex64 {
        let g = self.killing_form();
        let mut s = Complex64::new(0.0, 0.0);
        for a in 0..self.dim {
            for b in 0..self.dim {
                s += x[a] * g[(a, b)] * y[b];
            }
        }
        s
    }

    /// Signs of the eigenvalues of the Killing form, sorted descending.
    /// Only meaningful when the form is real in this basis.
    pub fn killing_signature(&self) -> Result<Vec<i8>> {
        let g = self.killing_form();
        if g.iter().any(|v| v.im.abs() > 1e-12) {
            return Err(Error::Domain("Killing form is not real in this basis".into()));
        }
        let re = g.map(|v| v.re);
        let mut ev: Vec<f64> = re.symmetric_eigen().eigenvalues.iter().copied().collect();
        ev.sort_by(|a, b| b.total_cmp(a));
        Ok(ev
            .into_iter()
            .map(|v| if v > 1e-12 { 1 } else if v < -1e-12 { -1 } else { 0 })
            .collect())
    }

    /// Largest magnitude of Σ_d (f^{ab}_d f^{dc}_e + f^{bc}_d f^{da}_e + f^{ca}_d f^{db}_e).
    pub fn check_jacobi(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for e in 0..n {
                        let mut s = Complex64::new(0.0, 0.0);
                        for d in 0..n {
                            s += self.f(a, b, d) * self.f(d, c, e)
                                + self.f(b, c, d) * self.f(d, a, e)
                                + self.f(c, a, d) * self.f(d, b, e);
                        }
                        worst = worst.max(s.norm());
                    }
                }
            }
        }
        worst
    }

    pub fn to_json(&self) -> Result<String> {
        let n = self.dim;
        let f = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| (0..n).map(|c| [self.f(a, b, c).re, self.f(a, b, c).im]).collect())
                    .collect()
            })
            .collect();
        Ok(serde_json::to_string_pretty(&LieAlgebraJson { dim: n, names: self.names.clone(), f })?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: LieAlgebraJson = serde_json::from_str(s)?;
        if j.names.len() != j.dim {
            return invalid("names length differs from dim");
        }
        let f = j
            .f
            .into_iter()
            .map(|r| r.into_iter().map(|c| c.into_iter().map(|[re, im]| Complex64::new(re, im)).collect()).collect())
            .collect();
        Self::new(j.names, f)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}
