//! Set partitions, partitioned and surfaced permutations, their products and
//! convolutions, and the zeta/Möbius functions.

pub mod element;
pub mod function;
pub mod set_partition;

pub use element::{
    enumerate_ps, enumerate_surfaced, ElementError, PartitionedPermutation, PsElement, SurfacedPermutation, PS_BOUND,
};
pub use function::{
    delta, delta_hbar, delta_surfaced, is_multiplicative, moebius, moebius_hbar, moebius_surfaced, zeta, zeta_hbar,
    zeta_surfaced, ConvolutionKind, FunctionError, MultiplicativeFunction, PsFn, PsFunction, SurfacedFn,
};
pub use set_partition::{SetPartition, SetPartitionError};
