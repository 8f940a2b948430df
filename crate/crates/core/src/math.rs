//! Thin wrappers over `libm` so that every transcendental function used in
//! ground-truth generation and scoring is bit-identical across platforms.

use num_complex::Complex64;

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn sin(x: f64) -> f64 {
    libm::sin(x)
}

#[inline]
pub fn cos(x: f64) -> f64 {
    libm::cos(x)
}

#[inline]
pub fn asin(x: f64) -> f64 {
    libm::asin(x)
}

#[inline]
pub fn atan2(y: f64, x: f64) -> f64 {
    libm::atan2(y, x)
}

#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub fn log10(x: f64) -> f64 {
    libm::log10(x)
}

#[inline]
pub fn hypot(x: f64, y: f64) -> f64 {
    libm::hypot(x, y)
}

#[inline]
pub fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

#[inline]
pub fn ceil(x: f64) -> f64 {
    libm::ceil(x)
}

/// Modulus of a complex number.
#[inline]
pub fn cabs(z: Complex64) -> f64 {
    hypot(z.re, z.im)
}

/// `e^{iθ}`.
#[inline]
pub fn cis(theta: f64) -> Complex64 {
    Complex64::new(cos(theta), sin(theta))
}

/// Principal square root of a complex number.
pub fn csqrt(z: Complex64) -> Complex64 {
    if z.re == 0.0 && z.im == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    let r = cabs(z);
    let re = sqrt(0.5 * (r + abs(z.re)));
    if z.re >= 0.0 {
        Complex64::new(re, z.im / (2.0 * re))
    } else {
        let im = if z.im >= 0.0 { re } else { -re };
        Complex64::new(abs(z.im) / (2.0 * re), im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csqrt_squares_back() {
        for &(re, im) in &[(4.0, 0.0), (-4.0, 0.0), (3.0, 4.0), (-3.0, -4.0), (0.0, 2.0), (-1e-3, 5.0)] {
            let z = Complex64::new(re, im);
            let w = csqrt(z);
            let back = w * w;
            assert!(cabs(back - z) < 1e-12 * (1.0 + cabs(z)), "{z} -> {w}");
            assert!(w.re >= 0.0);
        }
    }
}
