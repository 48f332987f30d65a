//! Geometric quantum discord of bipartite qudit states, negativity, and a
//! discord-based lower bound on the distillable key rate of private states.
//!
//! ```
//! use geodiscord::states::{build_family, Params};
//! use geodiscord::discord::gqd_3x3;
//!
//! let params: Params = [("beta".to_string(), 0.5)].into_iter().collect();
//! let rho = build_family("isotropic", &params).unwrap();
//! let d = gqd_3x3(&rho).unwrap();
//! assert!((d.value - 32.0 / 243.0 * 0.25).abs() < 1e-12);
//! ```

pub mod bloch;
pub mod discord;
pub mod entanglement;
mod error;
pub mod matcore;
pub mod qkd;
pub mod states;

pub use error::{Error, Result};
pub use matcore::{ComplexMatrix, DensityMatrix};
