//! Composite Gauss–Legendre quadrature for slowly convergent oscillatory
//! integrals on the half-line.
//!
//! The crate is split by concern:
//!
//! * [`rules`]: Gauss–Legendre nodes and weights, single-panel integration.
//! * [`engine`]: unit-slot composite integration, prefix tables of the inner
//!   integral, and triangular (nested) integrals `∫₀ᵁ f(u)·[∫₀ᵘ g(v) dv] du`.
//! * [`funcs`]: integrand kernels, sine and cosine integrals, closed forms.
//! * [`pipelines`]: the concrete integrals (Dirichlet, Fresnel-type quarter,
//!   the `π²/12` identity, bracket product, and the tiers `I₁`, `I₂`, `I₃`).
//!
//! The crate is `no_std` with `alloc`. The `std` feature (default) uses the
//! platform math library and records wall-clock timings; `parallel` evaluates
//! panels on a rayon pool while keeping every reduction in a fixed order.
//!
//! ```
//! use oscquad_core::engine::{integrate_composite, PanelScheme};
//! use oscquad_core::funcs::Kernel;
//!
//! let scheme = PanelScheme::new(200_000.0);
//! let res = integrate_composite(|x| Kernel::Sinc.eval(x), &scheme).unwrap();
//! assert!((res.value - core::f64::consts::FRAC_PI_2).abs() < 1e-5);
//! ```
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod engine;
pub mod error;
pub mod funcs;
mod math;
pub mod pipelines;
pub mod rules;
pub mod sum;

pub use error::{Error, Result};
