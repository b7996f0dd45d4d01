//! Formula AST shared by both logics, with parser, printer and generators.

mod formula;
pub mod json;
mod parse;
mod print;
mod random;

pub use formula::{Formula, Logic, Sequent};
pub use parse::{parse, parse_sequent};
pub use print::{print, Printer};
pub use random::{enumerate_formulas, random_formula, FormulaGen};
