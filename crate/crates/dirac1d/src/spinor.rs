use num_complex::Complex64;
use std::ops::{Add, Mul, Sub};

/// Two-component complex spinor (upper and lower Dirac component).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spinor2 {
    pub c1: Complex64,
    pub c2: Complex64,
}

impl Spinor2 {
    pub const ZERO: Spinor2 = Spinor2 {
        c1: Complex64::new(0.0, 0.0),
        c2: Complex64::new(0.0, 0.0),
    };

    pub fn new(c1: Complex64, c2: Complex64) -> Self {
        Self { c1, c2 }
    }

    pub fn from_real(c1: f64, c2: f64) -> Self {
        Self {
            c1: Complex64::new(c1, 0.0),
            c2: Complex64::new(c2, 0.0),
        }
    }

    /// |c1|^2 + |c2|^2
    pub fn norm_sq(&self) -> f64 {
        self.c1.norm_sqr() + self.c2.norm_sqr()
    }

    /// Pointwise inner product conj(self) . other.
    pub fn dot(&self, other: &Spinor2) -> Complex64 {
        self.c1.conj() * other.c1 + self.c2.conj() * other.c2
    }

    pub fn scale(&self, s: Complex64) -> Spinor2 {
        Spinor2 {
            c1: self.c1 * s,
            c2: self.c2 * s,
        }
    }
}

impl Add for Spinor2 {
    type Output = Spinor2;
    fn add(self, rhs: Spinor2) -> Spinor2 {
        Spinor2 {
            c1: self.c1 + rhs.c1,
            c2: self.c2 + rhs.c2,
        }
    }
}

impl Sub for Spinor2 {
    type Output = Spinor2;
    fn sub(self, rhs: Spinor2) -> Spinor2 {
        Spinor2 {
            c1: self.c1 - rhs.c1,
            c2: self.c2 - rhs.c2,
        }
    }
}

impl Mul<Complex64> for Spinor2 {
    type Output = Spinor2;
    fn mul(self, rhs: Complex64) -> Spinor2 {
        self.scale(rhs)
    }
}

/// 2x2 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub a11: Complex64,
    pub a12: Complex64,
    pub a21: Complex64,
    pub a22: Complex64,
}

impl Mat2 {
    pub fn new(a11: Complex64, a12: Complex64, a21: Complex64, a22: Complex64) -> Self {
        Self { a11, a12, a21, a22 }
    }

    pub fn from_real(a11: f64, a12: f64, a21: f64, a22: f64) -> Self {
        Self {
            a11: Complex64::new(a11, 0.0),
            a12: Complex64::new(a12, 0.0),
            a21: Complex64::new(a21, 0.0),
            a22: Complex64::new(a22, 0.0),
        }
    }

    pub fn identity() -> Self {
        Self::from_real(1.0, 0.0, 0.0, 1.0)
    }

    pub fn zero() -> Self {
        Self::from_real(0.0, 0.0, 0.0, 0.0)
    }

    /// Pauli matrix sigma_1.
    pub fn sigma1() -> Self {
        Self::from_real(0.0, 1.0, 1.0, 0.0)
    }

    /// Pauli matrix sigma_3.
    pub fn sigma3() -> Self {
        Self::from_real(1.0, 0.0, 0.0, -1.0)
    }

    pub fn scale(&self, s: Complex64) -> Mat2 {
        Mat2 {
            a11: self.a11 * s,
            a12: self.a12 * s,
            a21: self.a21 * s,
            a22: self.a22 * s,
        }
    }

    pub fn apply(&self, v: &Spinor2) -> Spinor2 {
        Spinor2 {
            c1: self.a11 * v.c1 + self.a12 * v.c2,
            c2: self.a21 * v.c1 + self.a22 * v.c2,
        }
    }

    pub fn matmul(&self, rhs: &Mat2) -> Mat2 {
        Mat2 {
            a11: self.a11 * rhs.a11 + self.a12 * rhs.a21,
            a12: self.a11 * rhs.a12 + self.a12 * rhs.a22,
            a21: self.a21 * rhs.a11 + self.a22 * rhs.a21,
            a22: self.a21 * rhs.a12 + self.a22 * rhs.a22,
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.a11 + self.a22
    }

    pub fn det(&self) -> Complex64 {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    /// Largest entrywise modulus; handy for near-zero assertions.
    pub fn max_entry_norm(&self) -> f64 {
        self.a11
            .norm()
            .max(self.a12.norm())
            .max(self.a21.norm())
            .max(self.a22.norm())
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        Mat2 {
            a11: self.a11 + rhs.a11,
            a12: self.a12 + rhs.a12,
            a21: self.a21 + rhs.a21,
            a22: self.a22 + rhs.a22,
        }
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        Mat2 {
            a11: self.a11 - rhs.a11,
            a12: self.a12 - rhs.a12,
            a21: self.a21 - rhs.a21,
            a22: self.a22 - rhs.a22,
        }
    }
}
