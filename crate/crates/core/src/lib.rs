//! Max-plus linear algebra for Sylvester matrix equations.
//!
//! Solves `⊕ₖ Aₖ ⊗ X ⊗ Bₖ = C` over the max-plus semiring by computing the
//! principal solution `X* = ⊕'ₖ Aₖ♯ ⊗' C ⊗' Bₖ♯` in `O(p(m²n + mn²))` and
//! checking it by substitution. A Kronecker-product reformulation
//! ([`oracle`]) solves the same equations the slow way for cross-checking.
//!
//! ```
//! use maxplus::{solve_sylvester, SylvesterInstance, TropicalMatrix};
//!
//! let inst = SylvesterInstance::new(
//!     vec![TropicalMatrix::from_rows(&[[1.0]])?, TropicalMatrix::from_rows(&[[0.0]])?],
//!     vec![TropicalMatrix::from_rows(&[[0.0]])?, TropicalMatrix::from_rows(&[[2.0]])?],
//!     TropicalMatrix::from_rows(&[[5.0]])?,
//! )?;
//! let report = solve_sylvester(&inst)?;
//! assert!(report.solvable);
//! assert_eq!(report.principal, TropicalMatrix::from_rows(&[[3.0]])?);
//! # Ok::<(), maxplus::Error>(())
//! ```

pub mod bench;
pub mod error;
pub mod instance_io;
pub mod matrix;
pub mod opcount;
pub mod oracle;
pub mod semiring;
pub mod solver;

pub use error::{Error, Result};
pub use instance_io::{
    format_matrix, generate_instance, parse_matrix, GeneratorConfig, GeneratorMode, InstanceFileSet,
};
pub use matrix::TropicalMatrix;
pub use oracle::{kron_reformulate, oracle_principal_solution, oracle_solve, OracleOptions};
pub use semiring::{ExtendedReal, Kind};
pub use solver::{
    axb_principal_solution, is_doubly_r_astic, linear_principal_solution, solve_linear,
    solve_sylvester, solve_two_sided_special, sylvester_principal_solution, Residual, SolveOptions,
    SolveReport, SylvesterInstance,
};
