//! Exact divided symmetrization: rational arithmetic, a template language for
//! identity families, the symmetrization operator, symmetric functions, and a
//! registry of closed-form identities with verification.

pub mod divsym;
pub mod exact;
pub mod perm;
pub mod registry;
pub mod symfun;
pub mod template;
