//! Decision procedure for existential sentences of Presburger arithmetic
//! extended with the sine function.
//!
//! Sentences are parsed by [`syntax`], normalized into sums of nested sines
//! by [`term`], and reduced stage by stage: linear-sine equalities are
//! removed by [`sine_eq`], linear equalities, linear occurrences and
//! divisibility predicates by [`linear`]. What is left is a purely
//! oscillatory formula whose real solution set over one period is searched
//! with certified interval arithmetic ([`interval`], [`pipeline`]).
//!
//! ```
//! use sinpa::{syntax, pipeline::{decide_existential, Options, VerdictKind}};
//!
//! let s = syntax::parse("exists x. 9/10 < sin(x)").unwrap();
//! let d = decide_existential(&s, &Options::default()).unwrap();
//! assert_eq!(d.verdict.kind(), VerdictKind::Sat);
//! ```

pub mod arith;
pub mod error;
pub mod formula;
pub mod interval;
pub mod linear;
pub mod lineq;
pub mod pipeline;
pub mod sine_eq;
pub mod syntax;
pub mod term;

pub use arith::{Integer, Rational};
pub use error::Error;
pub use formula::{AffineForm, Dnf, Formula, Literal};
pub use term::{NormalTerm, RawTerm};
