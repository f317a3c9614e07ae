//! Anonymity and opacity analysis of partially observed plants against an
//! intruder that can spend a bounded number of state attacks.
//!
//! The pipeline runs from a plant ([`plant::Nfa`]) through its observer to
//! the attack-observer game graph, then decides whether a violation is
//! possible ([`violation`]) or can be forced ([`enforcement`]), and finally
//! synthesizes and validates an attack strategy ([`strategy`]). The
//! [`oracle`] module answers the same questions by brute-force search and
//! exists to cross-check the pipeline.

pub mod attack_models;
pub mod automaton;
pub mod error;
pub mod observer;
pub mod plant;
pub mod samples;
pub mod attack_observer;
pub mod violation;
pub mod enforcement;
pub mod strategy;
pub mod oracle;
pub mod corpus;
pub mod dot;
pub mod io;
pub mod cli;
