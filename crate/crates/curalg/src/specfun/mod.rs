//! Special functions: complex gamma, Carlson integrals, Jacobi elliptic
//! functions (real and complex argument), and theta-series evaluation on a
//! lattice with a complex period ratio.

pub mod carlson;
pub mod gamma;
pub mod jacobi;
pub mod omega;
pub mod theta;

pub use carlson::{elliptic_k, rf};
pub use gamma::{gamma, ln_gamma};
pub use jacobi::{sncndn, sncndn_c};
pub use omega::{d_omega_dtau, omega};
pub use theta::{modulus_from_tau, tau_from_modulus, ThetaLattice};
