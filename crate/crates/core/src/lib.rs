//! Exact engine for smooth plane quartics, their bitangent arrangements and
//! quartic-line curves.
//!
//! The crate is organised bottom-up:
//!
//! * [`numberfield`] - exact arithmetic in simple extensions `Q(a)` and a
//!   numeric embedding into `C`;
//! * [`polyring`] - sparse ternary forms, binary forms, multiplicity patterns;
//! * [`linalg`] - exact/modular linear algebra and rank certificates;
//! * [`arrangement`] - projective lines and points, incidence structures;
//! * [`tangency`] - line/quartic contact, singularity profiles, numeric
//!   bitangent search;
//! * [`milnor`] - Milnor algebra dimensions, syzygies, minimal resolutions;
//! * [`combinatorics`] - Hirzebruch-type checks and a Diophantine enumerator;
//! * [`catalog`] - built-in curves and bitangent tables.

#![allow(clippy::needless_range_loop)]

pub mod arrangement;
pub mod catalog;
pub mod combinatorics;
pub mod error;
pub mod linalg;
pub mod milnor;
pub mod numberfield;
pub mod polyring;
pub mod serial;
pub mod tangency;

pub use arrangement::{IncidenceStructure, ProjLine, ProjPoint};
pub use error::{Error, Result};
pub use milnor::{CurveClass, Resolution};
pub use numberfield::{FieldElement, FieldRef, NumberField, Rational};
pub use polyring::{BinaryForm, HomPoly, MultiplicityPattern, Var};
pub use tangency::{SingularityProfile, TangencyClass};
