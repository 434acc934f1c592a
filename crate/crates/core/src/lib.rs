pub mod cli;
pub mod cyclotomic;
pub mod dimension_formulas;
pub mod error;
pub mod hodge_locus;
pub mod indices;
pub mod linalg;
pub mod linear_cycles;
pub mod modular;
pub mod period_matrix;
pub mod periods;
pub mod poly;
pub mod report;
pub mod taylor_series;

pub use cyclotomic::{cyclo_arith, cyclo_root, cyclo_to_modp, ArithOp, CycloCtx, CycloInt, CycloNum};
pub use error::{Error, Result};
