//! Trickle groups.
//!
//! A [`graph::TrickleGraph`] presents a group with generators its vertices and
//! relations `x^μ(x) = 1` and `φ_x(y)·x = φ_y(x)·y` along edges. Elements are
//! held as irreducible pilings, which are unique, so equality of elements is
//! equality of pilings.

pub mod confluence;
pub mod dyadic;
pub mod element;
pub mod error;
pub mod examples;
pub mod garside;
pub mod graph;
pub mod graph_file;
pub mod parabolic;
pub mod piling;
pub mod stratum;
pub mod thompson;
pub mod tits;
pub mod validate;
pub mod virtual_cactus;

pub use element::{format_word, is_finite, parse_word, Finiteness, GroupElement, Letter, Word};
pub use error::{Error, Result};
pub use graph::{dual_graph, phi_pow, Dual, FiniteGraph, Mu, TrickleGraph, VertexId};
pub use piling::{normalize, Piling};
pub use stratum::{Stratum, Syllable};
pub use validate::{spot_check, validate, Axiom, ValidationReport};
