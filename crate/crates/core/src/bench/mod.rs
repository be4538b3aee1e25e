//! Reference oracle, test corpus, convergence experiments and the CLI.

pub mod cli;
pub mod corpus;
pub mod experiment;
pub mod oracle;
