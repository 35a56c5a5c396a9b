//! Linear programming: a dense simplex and the hull, interiority,
//! tangent-cone and exposed-edge queries built on it.

mod exposed;
mod hull;
mod program;
mod simplex;

pub use exposed::{exposed_edge_certificate, EdgeCertificate};
pub use hull::{
    affine_rank, in_hull, interiority_probe, tangent_cone_interior, HullMembership, HullVerdict,
    Separator, TangentConeOutcome,
};
pub use program::{lp_solve, Constraint, LinearProgram, LpCertificate, LpStatus, Relation, Sense};
pub use simplex::{solve_standard, StandardSolution, StandardStatus};
