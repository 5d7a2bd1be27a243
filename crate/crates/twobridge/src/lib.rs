//! Exact combinatorics of 2-bridge (rational) links.
//!
//! A 2-bridge link is encoded by a Conway normal form `[a1, ..., an]` of
//! positive twist counts, which evaluates through the continued fraction
//! `a1 + 1/(a2 + 1/(... + 1/an))` to a fraction `p/q` in lowest terms. The
//! fraction classifies the link: `p` even means two components, and Schubert's
//! theorems reduce equivalence of `L(p, q)` and `L(p, q')` to congruences
//! mod `p`. This crate walks the whole pipeline:
//!
//! * [`rational`] — fractions, continued fractions, composition enumeration;
//! * [`equivalence`] — modular inverses and canonical link classes;
//! * [`enumerate`] — the crossing-number tabulation itself;
//! * [`diagram`] — standard 4-plat diagrams, PD codes and Gauss codes;
//! * [`laurent`] / [`invariants`] — Kauffman bracket and identification keys;
//! * [`identify`] — matching classes against a link table by invariants;
//! * [`splitting`] — splitting numbers for forms `C(2a1, b1, ..., 2an)`.
//!
//! ```
//! use twobridge::rational::{ConwayForm, eval_cf};
//!
//! let form = ConwayForm::new(vec![2, 1, 2]).unwrap();
//! let f = eval_cf(&form);
//! assert_eq!((f.p(), f.q()), (8, 3));
//! ```

pub mod diagram;
pub mod enumerate;
pub mod equivalence;
pub mod identify;
pub mod invariants;
pub mod laurent;
pub mod rational;
pub mod splitting;

#[cfg(doctest)]
mod book;

use thiserror::Error;


/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("Conway form must be a nonempty sequence of positive integers")]
    EmptyForm,

    #[error("Conway form entries must be positive (found 0)")]
    ZeroEntry,

    #[error("fraction must have positive numerator and denominator")]
    ZeroFraction,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{q} is not invertible mod {p} (gcd != 1)")]
    NonCoprime { q: u64, p: u64 },

    #[error("not a link class: p = {0} is odd (knots are out of scope)")]
    OddNumerator(u64),

    #[error("malformed diagram: {0}")]
    MalformedDiagram(String),

    #[error("diagram has {crossings} crossings, state sum supports at most {max}")]
    BracketCapacity { crossings: usize, max: usize },

    #[error("linking number requires a 2-component code (found {0} components)")]
    NotTwoComponents(usize),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("duplicate table id {0}")]
    DuplicateId(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
