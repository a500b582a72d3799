use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

// Lanczos coefficients for g = 671/128, 14 terms (relative error below 1e-15 for Re z ≥ ½).
const LANCZOS_G_HALF: f64 = 5.242_187_5;
const LANCZOS: [f64; 14] = [
    57.156_235_665_862_923_5,
    -59.597_960_355_475_491_2,
    14.136_097_974_741_747_1,
    -0.491_913_816_097_620_199,
    0.339_946_499_848_118_887e-4,
    0.465_236_289_270_485_756e-4,
    -0.983_744_753_048_795_646e-4,
    0.158_088_703_224_912_494e-3,
    -0.210_264_441_724_104_883e-3,
    0.217_439_618_115_212_643e-3,
    -0.164_318_106_536_763_890e-3,
    0.844_182_239_838_527_433e-4,
    -0.261_908_384_015_814_087e-4,
    0.368_991_826_595_316_234e-5,
];
const LANCZOS_C0: f64 = 0.999_999_999_999_997_092;
const SQRT_2PI: f64 = 2.506_628_274_631_000_5;

fn is_pole(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// log Γ(z). The imaginary part is exact up to a multiple of 2π when Re z < ½.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if is_pole(z) {
        return Err(Error::Pole(format!("Gamma at {z}")));
    }
    if z.re < 0.5 {
        // Γ(z)Γ(1−z) = π / sin πz
        let s = (z * PI).sin();
        return Ok(Complex64::new(PI.ln(), 0.0) - s.ln() - log_gamma(1.0 - z)?);
    }
    let tmp = z + LANCZOS_G_HALF;
    let tmp = (z + 0.5) * tmp.ln() - tmp;
    let mut ser = Complex64::new(LANCZOS_C0, 0.0);
    let mut y = z;
    for c in LANCZOS {
        y += 1.0;
        ser += c / y;
    }
    Ok(tmp + (SQRT_2PI * ser).ln() - z.ln())
}

pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(log_gamma(z)?.exp())
}

/// 1/Γ(z), entire: zero at the poles of Γ.
pub fn rgamma(z: Complex64) -> Complex64 {
    match log_gamma(z) {
        Ok(l) => (-l).exp(),
        Err(_) => Complex64::new(0.0, 0.0),
    }
}

/// ln|Γ(x)| for real x.
pub fn ln_gamma_real(x: f64) -> Result<f64> {
    Ok(log_gamma(Complex64::new(x, 0.0))?.re)
}

/// ln(k!) for integer k ≥ 0.
pub fn ln_factorial(k: i64) -> Result<f64> {
    if k < 0 {
        return Err(Error::Pole(format!("factorial of {k}")));
    }
    if k < 2 {
        return Ok(0.0);
    }
    if k <= 30 {
        return Ok((2..=k).map(|i| (i as f64).ln()).sum());
    }
    ln_gamma_real(k as f64 + 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn known_values() {
        assert!(log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-15);
        assert!(log_gamma(c(2.0, 0.0)).unwrap().norm() < 1e-15);
        assert!((log_gamma(c(0.5, 0.0)).unwrap().re - 0.5 * PI.ln()).abs() < 1e-14);
        // Γ(−½) = −2√π
        let g = gamma(c(-0.5, 0.0)).unwrap();
        assert!((g - c(-2.0 * PI.sqrt(), 0.0)).norm() < 1e-13);
        // ln 20! computed by direct product
        let direct: f64 = (2..=20).map(|i| (i as f64).ln()).sum();
        assert!((ln_gamma_real(21.0).unwrap() - direct).abs() < 1e-13 * direct);
    }

    #[test]
    fn half_line_modulus() {
        // |Γ(½+iy)|² = π / cosh πy
        for y in [0.3, 1.0, 4.0, 12.0, 40.0] {
            let lg = log_gamma(c(0.5, y)).unwrap();
            let oracle = PI.ln() - (PI * y).cosh().ln();
            assert!((2.0 * lg.re - oracle).abs() < 1e-12 * oracle.abs().max(1.0), "y={y}");
        }
        let g = gamma(c(0.5, 1.0)).unwrap().norm_sqr();
        assert!((g - 0.271_014_951_399_418_3).abs() < 1e-14);
    }

    #[test]
    fn stirling_far_out() {
        // Stirling series with 4 correction terms is accurate to ~1e-16 at |z| ~ 40.
        let z = c(35.0, 20.0);
        let z2 = z * z;
        let st = (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + 1.0 / (12.0 * z) - 1.0 / (360.0 * z * z2)
            + 1.0 / (1260.0 * z2 * z2 * z)
            - 1.0 / (1680.0 * z2 * z2 * z2 * z);
        let lg = log_gamma(z).unwrap();
        assert!((lg.re - st.re).abs() < 1e-12 * st.re.abs());
        let d = (lg.im - st.im) / (2.0 * PI);
        assert!((d - d.round()).abs() < 1e-12);
    }

    #[test]
    fn poles() {
        assert!(matches!(log_gamma(c(0.0, 0.0)), Err(Error::Pole(_))));
        assert!(matches!(log_gamma(c(-3.0, 0.0)), Err(Error::Pole(_))));
        assert_eq!(rgamma(c(-2.0, 0.0)), c(0.0, 0.0));
    }

    #[test]
    fn factorials() {
        assert_eq!(ln_factorial(0).unwrap(), 0.0);
        assert!((ln_factorial(5).unwrap() - 120f64.ln()).abs() < 1e-15);
        let direct: f64 = (2..=40).map(|i| (i as f64).ln()).sum();
        assert!((ln_factorial(40).unwrap() - direct).abs() < 1e-12 * direct);
    }

    proptest! {
        #[test]
        fn recurrence(re in -20.0..40.0f64, im in -50.0..50.0f64) {
            let z = c(re, im);
            prop_assume!(z.norm() > 1e-3 && (z + 1.0).norm() > 1e-3);
            let d = log_gamma(z + 1.0).unwrap() - log_gamma(z).unwrap() - z.ln();
            prop_assert!(d.re.abs() < 1e-12 * (1.0 + log_gamma(z).unwrap().re.abs()));
            let k = d.im / (2.0 * PI);
            prop_assert!((k - k.round()).abs() < 1e-10);
        }
    }
}
