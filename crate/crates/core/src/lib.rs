//! Exact spectra of formal differential modules.
//!
//! A differential module over the Laurent series field `k((S))` (or a
//! Puiseux extension `k((S^(1/m)))`) with derivation `delta = S d/dS` has a
//! spectrum made of finitely many Gauss points `x_{0, r^-gamma}`, one per
//! slope `gamma` of its Newton polygon, together with the exponent cosets
//! `a + (1/m)Z` of its regular part. This crate computes that spectrum
//! exactly over the rationals:
//!
//! ```text
//! matrix ──cyclic vector──▶ operator ──▶ Newton polygon ──▶ slopes
//!                                   └──▶ slope-0 edge ──▶ exponent cosets
//! ```
//!
//! ```
//! use diffmod::cli::parse::parse_operator;
//! use diffmod::spectrum::spectrum_of_operator;
//!
//! let p = parse_operator("(D - 1/S)*(D - 2)", 50).unwrap();
//! assert_eq!(p.to_string(), "2*S^(-1) + (-2 - S^(-1))*D + D^2");
//! let sp = spectrum_of_operator(&p).unwrap();
//! // exponent 2 lies in the coset Z, printed by its representative in [0, 1)
//! assert_eq!(sp.to_string(), "(Z) ∪ {x_{0,1}, x_{0,r^-1}}");
//! ```
//!
//! ## Examples
//!
//! Each capability has a runnable example under `crates/core/examples/`:
//!
//! - **`series_arithmetic`** - Puiseux series, precision, inversion, gauge units
//! - **`operators`** - the ring of differential operators and its action
//! - **`newton_polygon`** - polygons, slopes and edge polynomials
//! - **`euler_spectrum`** - the spectrum of `D` and of constant matrices
//! - **`rank_one`** - regular and irregular rank-one modules
//! - **`slope_factorization`** - splitting an operator along its polygon
//! - **`cyclic_vector`** - from a connection matrix to an operator
//! - **`ramification`** - pullback, pushforward and translated spectra
//! - **`exponent_cosets`** - algebraic exponents modulo a lattice
//! - **`parse_and_print`** - the expression syntax and canonical printer
//! - **`json_report`** - the machine-readable pipeline report
//! - **`selftest`** - randomized property checks
//!
//! ```bash
//! cargo run -p diffmod --example euler_spectrum
//! ```

pub mod cli;
pub mod diffop;
pub mod error;
pub mod exponents;
pub mod factor;
pub mod gen;
pub mod newton;
pub mod poly;
pub mod ramify;
pub mod rat;
pub mod series;
pub mod spectrum;

pub use diffop::{cyclic_vector, CyclicVector, DiffOperator, MatrixModule};
pub use error::{Error, Result};
pub use exponents::ExponentCoset;
pub use newton::{newton_polygon, NewtonPolygon};
pub use poly::UniPoly;
pub use rat::Rat;
pub use series::{Puiseux, Valuation};
pub use spectrum::{GaussPoint, Spectrum};
