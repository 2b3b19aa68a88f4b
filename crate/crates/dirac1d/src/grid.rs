use crate::error::{DiracError, Result};

/// Uniform periodic position lattice together with its dual momentum lattice.
///
/// Positions are `x_j = -l + j*dx` for `j = 0..n-1` with `dx = 2l/n`.
/// Momenta are `p_k = pi*k/l` for signed `k = -n/2..n/2-1`, stored in
/// transform-natural (wrap-around) order: storage slot `j` holds signed
/// index `j` for `j < n/2` and `j - n` otherwise.
///
/// Everything is dimensionless (natural units, hbar = m = c = 1).
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    n: usize,
    l: f64,
}

impl Grid {
    /// `n` must be a power of two with `n >= 16`; `l > 0`.
    pub fn new(n: usize, l: f64) -> Result<Self> {
        if n < 16 || !n.is_power_of_two() {
            return Err(DiracError::Argument(format!(
                "grid size must be a power of two >= 16, got {n}"
            )));
        }
        if !(l.is_finite() && l > 0.0) {
            return Err(DiracError::Argument(format!(
                "grid half-length must be positive and finite, got {l}"
            )));
        }
        Ok(Self { n, l })
    }

    /// Default resolution used by the CLI: n = 2048, l = 128.
    pub fn default_grid() -> Self {
        Self { n: 2048, l: 128.0 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn half_length(&self) -> f64 {
        self.l
    }

    /// Position spacing dx = 2l/n.
    pub fn dx(&self) -> f64 {
        2.0 * self.l / self.n as f64
    }

    /// Momentum spacing dp = pi/l.
    pub fn dp(&self) -> f64 {
        std::f64::consts::PI / self.l
    }

    /// Position of sample `j`.
    pub fn position(&self, j: usize) -> f64 {
        debug_assert!(j < self.n);
        -self.l + j as f64 * self.dx()
    }

    /// Signed momentum index stored in slot `j` (wrap-around order).
    pub fn signed_index(&self, j: usize) -> i64 {
        debug_assert!(j < self.n);
        if j < self.n / 2 {
            j as i64
        } else {
            j as i64 - self.n as i64
        }
    }

    /// Storage slot for signed momentum index `k` in `-n/2..n/2-1`.
    pub fn storage_index(&self, k: i64) -> usize {
        let half = (self.n / 2) as i64;
        debug_assert!((-half..half).contains(&k));
        k.rem_euclid(self.n as i64) as usize
    }

    /// Momentum of storage slot `j`: p = pi*k/l with k the signed index.
    pub fn momentum(&self, j: usize) -> f64 {
        self.signed_index(j) as f64 * self.dp()
    }

    /// Iterator over positions in storage order.
    pub fn positions(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(|j| self.position(j))
    }

    /// Iterator over momenta in storage (wrap-around) order.
    pub fn momenta(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(|j| self.momentum(j))
    }

    /// Largest momentum magnitude representable on the lattice.
    pub fn momentum_max(&self) -> f64 {
        (self.n / 2) as f64 * self.dp()
    }
}
