//! Exact arithmetic for k-order linear recursions.
//!
//! A core `[t_1, ..., t_k]` determines the polynomial
//! `C(X) = X^k - t_1 X^{k-1} - ... - t_k`, the recursion
//! `f_n = t_1 f_{n-1} + ... + t_k f_{n-k}`, its companion matrix, and for
//! every prime `p` the finite ring `F_p[x]/(C)`. The modules here cover:
//!
//! - [`isobaric`]: Fibonacci/Lucas/weighted isobaric polynomials and Schur
//!   polynomials via Jacobi-Trudi.
//! - [`companion`]: companion matrices, signed powers, the doubly infinite
//!   orbit matrix, trace sequences.
//! - [`recurrence`]: sequence generation and periods over Z and mod p.
//! - [`fp_algebra`]: polynomials over Z and F_p, factorization, resultants,
//!   discriminants and the ramification test.
//! - [`semilocal`]: structure of `F_p[x]/(C)`: idempotents, radical, unit
//!   group, orbits, and the structural checks.
//! - [`suite`]: verification sweeps over grids of cores and primes.

pub mod arith;
pub mod companion;
pub mod error;
pub mod fp_algebra;
pub mod isobaric;
pub mod matrix;
pub mod recurrence;
pub mod semilocal;
pub mod suite;

pub use companion::{CorePolynomial, Domain, MatrixOverDomain, Scalar};
pub use error::{Error, Result};
