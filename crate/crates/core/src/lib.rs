//! Exact computation of the peak-statistic polynomial families of the
//! symmetric group, the derivative polynomials of tangent and secant, and
//! machinery to certify the identities, generating functions and root
//! structure that connect them.

pub mod exact;
pub mod families;
pub mod identities;
pub mod oracle;
pub mod roots;
pub mod series;

pub use exact::{Poly, PolyError, Rational};
