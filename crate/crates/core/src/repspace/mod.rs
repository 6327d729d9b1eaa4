//! Finite-dimensional invariant subspaces `P_k` and their spectra.

pub mod basis;
pub mod catalog;
pub mod joint;
pub mod matrep;
pub mod spectrum;

pub use basis::{basis, dimension, dimension_printed, Basis};
pub use catalog::{catalog_entry, CatalogEntry, CatalogSector};
pub use joint::{eigen_of, joint_eigenbasis, unit_span, EigenVectors, JointEigen, JointSector};
pub use matrep::{invariant_matrix, matrix_rep, OperatorMatrix};
pub use spectrum::{lines_from_charpoly, sort_lines, spectrum, Provenance, SpectralLine};
