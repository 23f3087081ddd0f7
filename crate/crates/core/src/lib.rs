//! Equivariant Hodge classes of composite singularities `f(g_1(y_1), ..., g_n(y_n))`.
//!
//! The crate has three layers:
//!
//! * combinatorics: [`newton`] polyhedra and [`fans`] (dual fans, simplicial
//!   refinement, exponents, the suspension fan and its reducedness check);
//! * the class ring [`ghodge`] of virtual equivariant Hodge structures, the
//!   base classes in [`bases`] and the convolution engines in [`convolve`];
//! * [`fforacle`], an independent finite-field point counter that checks the
//!   convolution identity exactly at the level of Frobenius traces.

pub mod arith;
pub mod bases;
pub mod cone;
pub mod convolve;
pub mod cyclo;
pub mod error;
pub mod fans;
pub mod ffield;
pub mod fforacle;
pub mod germ;
pub mod ghodge;
pub mod newton;

pub use bases::{GermClassBundle, InnerRegistry};
pub use convolve::ConvolutionJob;
pub use error::{Error, ErrorKind, Result};
pub use fans::{Fan, RayData, ScaledLattice};
pub use germ::GermPoly;
pub use ghodge::{EqHodgeClass, GroupSpec, HodgeAtom};
pub use newton::{Face, NewtonPolyhedron};
