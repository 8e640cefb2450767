//! Orbit structure of permutation groups acting on musical scales, and the
//! power-mean statistics (`orb_t`, `diam_t`) used to rank those groups.
//!
//! Pitch classes are `0..12`. A tonic scale contains `0` and is acted on by
//! permutations fixing `0`; an atonic scale is any subset, acted on by all of
//! S_12.

pub mod claims;
pub mod means;
pub mod named;
pub mod orbits;
pub mod perm;
pub mod registry;
pub mod scales;
pub mod search;
pub mod young;

pub use means::{diam_t, musicality, orb_t, power_mean, MeanError, TParam};
pub use orbits::{orbit_of, orbit_partition, OrbitMultiset, OrbitPartition};
pub use perm::{group_order, GeneratorSet, PermError, Permutation, DEGREE};
pub use registry::{lookup_names, NameRegistry};
pub use scales::{ActionMode, Scale, ScaleError, ScaleUniverse, Spelling};
pub use young::{orbit_multiset_closed_form, young_generators, SetPartition, Signature, YoungError};
