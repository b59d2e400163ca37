//! Text in and out: expression parsing, canonical printing, output records.

mod parse;
mod print;
mod record;

pub use parse::{parse_expr, parse_poly, parse_weyl, ExprAst, ParseError, VarName};
pub use print::{print_poly, print_weyl};
pub use record::OutputRecord;
