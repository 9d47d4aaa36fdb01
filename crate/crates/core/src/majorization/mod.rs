//! Partitions, the dominance (majorization) order and Schur statistics.

mod lattice;
mod partition;
mod schur;

pub use lattice::{build_lattice, covers, majorization_difference, DominanceLattice, LATTICE_MAX_N};
pub use partition::{
    canonicalize, compare, compare_distributions, partitions, MajorizationRelation, Partition,
};
pub use schur::{
    boltzmann_entropy, elementary_symmetric, entropy_gap, log2_factorial, log2_v, multinomial,
    schur_report, shannon_entropy, SchurReport,
};
