//! Set-valued haploid and multi-allelic Cannings models.
//!
//! The forward chain follows the set of descendants of a group of
//! individuals, the backward chain its set of ancestors. They are
//! transpose-zeta duals, and coarse-graining by cardinality recovers the
//! classical Cannings chain with the hypergeometric duality function.

pub mod haploid;
pub mod law;
pub mod montecarlo;
pub mod multiallelic;

pub use haploid::{
    backward_kernel, backward_kernel_with, coarse_backward_moments, coarse_forward_direct,
    coarsen_to_cannings, coarsen_to_cannings_with, forward_kernel, forward_kernel_with,
    hypergeometric_inverse, hypergeometric_matrix, minimal_cover, offspring_of, sylvester_dual,
    verify_transpose_zeta_duality, verify_transpose_zeta_duality_with, BackwardSetKernel,
    CanningsCoarse, DualityRoutes, ForwardSetKernel,
};
pub use law::{
    identity_law, moran_law, moran_law_with, wright_fisher_law, wright_fisher_law_with,
    IndexedPartition, OffspringLaw,
};
pub use montecarlo::{exact_duality_value, monte_carlo_duality, Estimate, MonteCarloReport};
pub use multiallelic::{
    coarsen_multiallelic, multiallelic_kernels, multiallelic_kernels_with, tuple_class_size,
    MultiAllelicCoarse, MultiAllelicKernels,
};
