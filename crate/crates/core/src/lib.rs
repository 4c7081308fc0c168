//! Exact symbolic checks of period and volume identities attached to
//! Gan-Gross-Prasad pairs: Hodge structures, archimedean Gamma factors,
//! periods modulo rational and square-root-rational scalars, root-system
//! volumes, exterior-algebra models of tempered cohomology, and the
//! torsion and rotation bookkeeping for arithmetic manifolds.

pub mod case;
pub mod error;
pub mod exteralg;
pub mod ggpcheck;
pub mod hodge;
pub mod lgamma;
pub mod linalg;
pub mod periodring;
pub mod rootsys;

pub use case::Case;
pub use error::Error;
