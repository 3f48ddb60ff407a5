//! Split algebras, non-compact Hopf maps, monopole connections on
//! ultra-hyperboloids, and an OSp(1|2) super Hopf map.

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord, clippy::type_complexity)]

pub mod gammarep;
pub mod gaugegeom;
pub mod hopfmaps;
pub mod report;
pub mod ringmat;
pub mod scalar;
pub mod splitnum;
pub mod superhopf;
pub mod verify;

pub use gammarep::{FamilyName, GammaFamily, Realization};
pub use gaugegeom::{GaugeError, GaugeModel, GaugeSample, LightCone};
pub use hopfmaps::{BasePoint, ComplexF, HopfError, HopfMap, MapCase, Patch, Spinor, SplitF};
pub use num_complex::Complex;
pub use report::{Check, Status, SuiteReport};
pub use ringmat::{MetricForm, RMatrix};
pub use scalar::{Rational, Real, Ring, UnitRing};
pub use splitnum::{SplitComplex, SplitOctonion, SplitQuaternion};
pub use superhopf::{Grassmann, InvolutionConfig, SuperMap, SuperPoint, SuperSpinor};
pub use verify::{Suite, VerifyOptions};
