//! Cell decompositions of framed non-commutative Hilbert schemes and the
//! shuffle algebra acting on their cohomology.
//!
//! Start from [`FramedQuiver`]; trees and cells live in [`cells`], the
//! tree/multipartition bijection in [`partitions`], motivic classes in
//! [`series`], the shuffle product and basis check in [`coha`], and local
//! charts in [`charts`].

pub mod cells;
pub mod charts;
pub mod check;
pub mod cli;
pub mod coha;
pub mod error;
pub mod expr;
pub mod linalg;
pub mod partitions;
pub mod path;
pub mod poly;
pub mod quiver;
pub mod rep;
pub mod series;

pub use error::{Error, Result};
pub use path::{Path, PathOrder};
pub use quiver::{DimVector, FramedQuiver, Quiver, SignedVector};
