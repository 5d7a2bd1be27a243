//! Runs every code snippet of the mdbook guide as a doc-test, so the book
//! cannot drift from the library (`cargo test --doc` covers them).

#[doc = include_str!("../../../book/src/continued-fractions.md")]
mod continued_fractions {}

#[doc = include_str!("../../../book/src/schubert-classes.md")]
mod schubert_classes {}

#[doc = include_str!("../../../book/src/tabulation.md")]
mod tabulation {}

#[doc = include_str!("../../../book/src/diagrams.md")]
mod diagrams {}

#[doc = include_str!("../../../book/src/bracket.md")]
mod bracket {}

#[doc = include_str!("../../../book/src/identification.md")]
mod identification {}

#[doc = include_str!("../../../book/src/splitting-numbers.md")]
mod splitting_numbers {}
