//! Exact 4-precoloring extension for excellent starred precolorings of
//! P6-free graphs.
//!
//! The pipeline reduces an instance to an equivalent family of orthogonal
//! instances (`reduction`), turns each into a list-coloring problem on a
//! contracted graph (`companion`), splits the lists until every far side is
//! cut off by an insulating cutset (`insulation`), and solves the far sides
//! through 2-SAT (`farside`). `solver` drives the whole thing.

pub mod gen;
pub mod graph;
pub mod insulation;
pub mod lists;
pub mod oracle;
pub mod companion;
pub mod farside;
pub mod precoloring;
pub mod reduction;
pub mod solver;
pub mod twosat;
