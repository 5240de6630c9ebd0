//! Low-energy resolvent computations on asymptotically conic spaces.
//!
//! The library works mode-by-mode on the spherical decomposition of a
//! Schrodinger-type operator `Delta + V` with a short-range radial
//! potential, and provides four groups of functionality:
//!
//! * **Radial solutions and resolvents** ([`radial`]): high-order
//!   adaptive integration of the reduced radial equations, regular /
//!   outgoing solution pairs, Green-kernel application per mode, and
//!   critical-coupling location for zero-energy bound states.
//! * **Weighted b-Sobolev norms** ([`mellin`]): discrete Mellin
//!   transforms on log-radial grids and variable-order weighted norms,
//!   including the dual norm with respect to the metric inner product.
//! * **Positivity certificates** ([`positivity`]): rigorous-numerical
//!   verification that the commutator multiplier argument stays inside
//!   `(0, pi)` across the whole frequency quarter-plane, with an
//!   explicit tail-decay certificate and automatic parameter search.
//! * **Numerical experiments** ([`experiments`]): uniform-boundedness
//!   sweeps, the flat-space contour integral, and the resonant block
//!   structure of the low-energy expansion at critical coupling.
//!
//! Special functions (Bessel/Hankel of real order) are implemented in
//! [`specfun`]; shared quadrature and fitting helpers live in
//! [`numerics`]; mode bookkeeping and potentials in [`geometry`].

pub mod error;
pub mod geometry;
pub mod mellin;
pub mod numerics;
pub mod positivity;
pub mod radial;
pub mod specfun;
pub mod experiments;

pub use error::{Error, Result};

/// Resolvent branch: which side of the continuous spectrum the spectral
/// parameter approaches the real axis from.
///
/// `Plus` is the outgoing (limiting absorption from above) branch and
/// `Minus` the incoming one. The branch selects the Hankel function used
/// for the asymptotic model solution and the sign of the variable-order
/// weight swing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `+1.0` for `Plus`, `-1.0` for `Minus`.
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    /// The opposite branch.
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Sign::Plus => write!(f, "+"),
            Sign::Minus => write!(f, "-"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::Sign;

    #[test]
    fn sign_factor_and_flip() {
        assert_eq!(Sign::Plus.factor(), 1.0);
        assert_eq!(Sign::Minus.factor(), -1.0);
        assert_eq!(Sign::Plus.flip(), Sign::Minus);
        assert_eq!(Sign::Minus.flip(), Sign::Plus);
        assert_eq!(format!("{}", Sign::Plus), "+");
    }
}
