//! Finite root systems, diagram automorphisms and matrix realizations.

pub mod diagram;
pub mod graded;
pub mod matrix;
pub mod rootsys;
pub mod types;

pub use diagram::{combinatorial_joint_table, combinatorial_table, fixed_point_data, standard_automorphism, DiagramAut, FoldedDatum};
pub use graded::GradedTable;
pub use matrix::{Block, Classical, MatrixAlgebra, MatrixAut};
pub use rootsys::FiniteRootSystem;
pub use types::{Series, SimpleLieType};
