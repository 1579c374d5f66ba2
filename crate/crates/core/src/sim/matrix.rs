use std::ops::Mul;

use num_complex::Complex64;

/// A 2×2 complex matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Matrix2(pub [[Complex64; 2]; 2]);

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

impl Matrix2 {
    pub fn real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self([
            [Complex64::new(a, 0.0), Complex64::new(b, 0.0)],
            [Complex64::new(c, 0.0), Complex64::new(d, 0.0)],
        ])
    }

    pub fn identity() -> Self {
        Self([[ONE, ZERO], [ZERO, ONE]])
    }

    pub fn pauli_x() -> Self {
        Self([[ZERO, ONE], [ONE, ZERO]])
    }

    pub fn hadamard() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self::real(s, s, s, -s)
    }

    /// `Ry(θ)|0⟩ = cos(θ/2)|0⟩ + sin(θ/2)|1⟩`.
    pub fn ry(theta: f64) -> Self {
        let (s, c) = (theta / 2.0).sin_cos();
        Self::real(c, -s, s, c)
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Self([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn apply(&self, a0: Complex64, a1: Complex64) -> (Complex64, Complex64) {
        let m = &self.0;
        (m[0][0] * a0 + m[0][1] * a1, m[1][0] * a0 + m[1][1] * a1)
    }

    pub fn is_pauli_x(&self) -> bool {
        *self == Self::pauli_x()
    }

    pub fn max_abs_diff(&self, other: &Matrix2) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.0[r][c] - other.0[r][c]).norm());
            }
        }
        worst
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        (*self * self.adjoint()).max_abs_diff(&Self::identity()) < tol
    }
}

impl Mul for Matrix2 {
    type Output = Matrix2;

    fn mul(self, rhs: Matrix2) -> Matrix2 {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = [[ZERO; 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Matrix2(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn ry_half_angle_convention() {
        let (a0, a1) = Matrix2::ry(PI / 2.0).apply(ONE, ZERO);
        assert!((a0.re - (PI / 4.0).cos()).abs() < 1e-15);
        assert!((a1.re - (PI / 4.0).sin()).abs() < 1e-15);
        let (b0, b1) = Matrix2::ry(PI).apply(ONE, ZERO);
        assert!(b0.norm() < 1e-15 && (b1.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn hadamard_is_x_after_ry_half_pi() {
        let h = Matrix2::pauli_x() * Matrix2::ry(PI / 2.0);
        assert!(h.max_abs_diff(&Matrix2::hadamard()) < 1e-15);
    }
}
