//! Model factories and closed-form calculators: presets, products,
//! Künneth with a Kähler ring, and b-geometry dimension counts.

pub mod bgeometry;
pub mod kunneth;
pub mod presets;
pub mod ring;

pub use kunneth::{convolve, kunneth_dims, KunnethReport, ProductModel, TensorLefschetzStep};
pub use bgeometry::{b_hard_lefschetz_obstruction, mazzeo_melrose, BManifoldSpec, ObstructionReport, ObstructionVerdict};
pub use presets::{preset, PRESET_NAMES};
pub use ring::FiniteKahlerRing;
