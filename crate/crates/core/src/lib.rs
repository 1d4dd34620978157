//! Exact computation of the L-polynomials of symmetric powers of the
//! Kloosterman sheaf, with evaluators for the closed formulas describing
//! their functional equations.

pub mod arith;
pub mod char_sums;
pub mod cyclotomic;
pub mod epsilon;
pub mod error;
pub mod finite_field;
pub mod local_data;
pub mod lseries;

pub use char_sums::{gauss_sum, kloosterman_histogram_all, kloosterman_sum, sym_power_trace, FrobTrace, Kernel, KloostermanHistogram};
pub use cyclotomic::{cyc_mul, CycInt};
pub use epsilon::{constant_c_closed, evans_sign, jacobi_symbol, laumon_constant, GaussNum};
pub use error::{Error, Result};
pub use finite_field::{build_field, FqTable};
pub use local_data::{delta_degree, infinity_decomposition, InfinityDecomposition};
pub use lseries::{Engine, EngineOptions, LPolynomial};
