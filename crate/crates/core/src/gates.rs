//! 2×2 base matrices, row-major `[u00, u01, u10, u11]`.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

pub type Base = [Complex64; 4];

const fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub const I: Base = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
pub const X: Base = [c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)];
pub const Y: Base = [c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)];
pub const Z: Base = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)];
pub const H: Base = [
    c(FRAC_1_SQRT_2, 0.0),
    c(FRAC_1_SQRT_2, 0.0),
    c(FRAC_1_SQRT_2, 0.0),
    c(-FRAC_1_SQRT_2, 0.0),
];
pub const S: Base = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0)];
pub const SDG: Base = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, -1.0)];
pub const T: Base = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(FRAC_1_SQRT_2, FRAC_1_SQRT_2)];
pub const TDG: Base = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(FRAC_1_SQRT_2, -FRAC_1_SQRT_2)];

pub fn rx(theta: f64) -> Base {
    let (s, co) = (theta / 2.0).sin_cos();
    [c(co, 0.0), c(0.0, -s), c(0.0, -s), c(co, 0.0)]
}

pub fn ry(theta: f64) -> Base {
    let (s, co) = (theta / 2.0).sin_cos();
    [c(co, 0.0), c(-s, 0.0), c(s, 0.0), c(co, 0.0)]
}

pub fn rz(theta: f64) -> Base {
    [
        Complex64::from_polar(1.0, -theta / 2.0),
        c(0.0, 0.0),
        c(0.0, 0.0),
        Complex64::from_polar(1.0, theta / 2.0),
    ]
}

/// `diag(1, e^{iλ})`, also known as `u1`.
pub fn phase(lambda: f64) -> Base {
    [
        c(1.0, 0.0),
        c(0.0, 0.0),
        c(0.0, 0.0),
        Complex64::from_polar(1.0, lambda),
    ]
}

/// Largest entry deviation of `U†U` from the identity.
pub fn unitarity_error(u: &Base) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..2 {
                acc += u[2 * k + i].conj() * u[2 * k + j];
            }
            let expected = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((acc - expected).norm());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_gates_are_unitary() {
        for g in [I, X, Y, Z, H, S, SDG, T, TDG, rx(0.3), ry(1.1), rz(-2.0), phase(0.7)] {
            assert!(unitarity_error(&g) < 1e-12);
        }
        let bad = [c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
        assert!(unitarity_error(&bad) > 0.5);
    }
}
