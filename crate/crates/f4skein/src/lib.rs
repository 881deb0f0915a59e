//! Exact symbolic engine for the quantum F4 diagrammatic category.

pub mod diagram;
pub mod evaluate;
pub mod papercheck;
pub mod qring;
pub mod rewrite;
pub mod rootdata;
pub mod twopoint;

pub use diagram::{Diagram, DiagramKey, Generator, LinComb, MorphismExpr};
pub use qring::{delta, phi, qint, zparam, LaurentPoly, ScalarQ};
pub use rootdata::{RootDatum, Weight};
pub use twopoint::{MulTable, TwoStrand};
