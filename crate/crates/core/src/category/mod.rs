//! Homological structure of finite-dimensional modules: Hom spaces, blocks,
//! radical series, decomposition, projective resolutions and Ext.

mod decompose;
mod ext;
mod functor;
mod hom;
mod resolution;
mod structure;

pub use decompose::{decompose, DecompReport, Decomposition, ReportEntry};
pub use ext::{ext_dim, ext_dim_from, ExtAlgebra, ExtClass};
pub use functor::{counit, functor_f, functor_g, glued_map, FunctorData};
pub use hom::{combine, find_isomorphism, hom_dim, hom_space};
pub use resolution::{minimal_resolution, projective_cover, Resolution};
pub use structure::{
    blocks, generate, intersect, irreducibles, kernel, radical, radical_series, semisimple_length, socle,
    weight_classes, weight_components, Block,
};
