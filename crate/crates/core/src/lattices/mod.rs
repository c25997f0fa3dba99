//! Subset, product-of-sets and partition lattices with closed-form Möbius
//! functions, plus partition skeletons and their merge order.

pub mod partition;
pub mod product_set;
pub mod skeleton;
pub mod subset;

pub use partition::{
    enumerate_partitions, partition_lattice, partition_lattice_with, partition_moebius_closed_form,
    skeleton, Partition, PartitionLattice,
};
pub use product_set::{flatten_tuple, product_set_lattice, ProductSetLattice};
pub use skeleton::{skeleton_count, skeleton_order, skeletons_of, Skeleton};
pub use subset::{format_subset, subset_lattice, subset_lattice_with, Mask, SubsetLattice};
