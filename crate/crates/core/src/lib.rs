//! Planar combinatorial maps with exact curvature bookkeeping.
//!
//! A map is a rotation system with a designated outer face ([`map`]). On top
//! of it sit (p,q)-curvature and the (p,q)-map conditions ([`curvature`]),
//! face-induced submaps and grown flat balls ([`submap`]), the adjustment and
//! forest-cutting surgeries ([`surgery`]), corridors in square maps
//! ([`corridor`]), angle functions ([`angles`]), the area-bound checks
//! ([`analysis`]), generators ([`generators`]) and the command line ([`cli`]).
//! All arithmetic is exact ([`exact`]).

pub mod analysis;
pub mod angles;
pub mod cli;
pub mod corridor;
pub mod curvature;
pub mod dual;
pub mod edit;
pub mod exact;
pub mod format;
pub mod generators;
pub mod map;
pub mod render;
pub mod submap;
pub mod surgery;
