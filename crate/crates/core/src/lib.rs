//! Interpreters for three quantum-control lambda calculi and a dense
//! state-vector oracle to check them against.
//!
//! * [`term`]: one term language for all dialects, with parser, printer,
//!   AC-canonical forms and substitution.
//! * [`rewrite`]: the algebraic rewrite engine (beta, elementary,
//!   factorization, application rules, plus the Lambda-S and sup rules).
//! * [`lambda_s`]: types with the `S` modality, typed reduction,
//!   measurement and the norm-1 realizer check.
//! * [`odot`]: the sup-calculus eliminators.
//! * [`oracle`]: state vectors, unitaries, measurement families, circuits.
//! * [`encodings`]: Church kets, thunks, gates, pairs, bundled programs.
//!
//! ```
//! use lineal_lab::{rewrite::{normalize, EngineConfig}, term::{parse, pretty, Dialect}};
//!
//! let h = r"\x.{x [(1/sqrt2).|0> + (1/sqrt2).|1>] [(1/sqrt2).|0> + (-1/sqrt2).|1>]}";
//! let t = parse(&format!("({h}) |0>"), Dialect::Lineal).unwrap();
//! let nf = normalize(&t, &EngineConfig::default());
//! assert_eq!(pretty(nf.result(), Dialect::Lineal), "(1/sqrt2).|0> + (1/sqrt2).|1>");
//! ```

pub mod cli;
pub mod encodings;
pub mod lambda_s;
pub mod odot;
pub mod oracle;
pub mod rewrite;
pub mod rng;
pub mod scalar;
pub mod term;

pub use scalar::{Scalar, EPSILON};
pub use term::{Dialect, Term};
