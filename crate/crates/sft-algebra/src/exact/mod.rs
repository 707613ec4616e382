//! Arbitrary-precision integer matrix and polynomial algebra.
//!
//! The pieces everything else is built from: [`IntMatrix`] and
//! [`IntPoly`] with exact `BigInt` arithmetic, the division-free
//! characteristic polynomial, Smith normal form with accumulated
//! unimodular transforms, cokernels as [`FGAbelianGroup`] values,
//! Newton's identities between `det(I-tA)` and the trace sequence,
//! Mobius inversion for net traces, and truncated exact-rational power
//! series for the zeta identity.

mod charpoly;
mod int_matrix;
mod int_poly;
mod newton;
mod qmatrix;
mod series;
mod snf;

pub use charpoly::{char_poly, det_one_minus_tA};
pub use int_matrix::{Int, IntMatrix};
pub use int_poly::IntPoly;
pub use newton::{mobius, net_trace, poly_from_traces, traces_from_poly};
pub use qmatrix::{QMatrix, Rat};
pub use series::{zeta_series, RationalSeries, ZetaSeries};
pub use snf::{cokernel, smith_normal_form, FGAbelianGroup, SmithNormalForm};
