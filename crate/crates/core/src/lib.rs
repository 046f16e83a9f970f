//! Exact torus-localization for genus-zero Gromov–Witten invariants of
//! Gr(2,n) and the twisted invariants of (P^{n-1})^2 that correspond to them.

pub mod algebra;
pub mod gkm;
pub mod graph;
pub mod localization;
pub mod schubert;
pub mod weyl;
