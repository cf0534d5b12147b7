pub mod algebra;
pub mod braiding;
pub mod category;
pub mod cli;
pub mod cyclotomic;
pub mod error;
pub mod kronecker;
pub mod label;
pub mod linalg;
pub mod modules;
pub mod poly;
pub mod rational;
