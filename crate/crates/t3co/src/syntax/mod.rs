//! Grammar for variant definitions: lexer, parse trees, parser, canonical
//! printer, and lints.

pub mod ast;
pub mod lint;
pub mod parse;
pub mod render;
pub mod token;

pub use ast::{
    Annotation, Attribute, BinOp, CostAttr, CostFn, Expr, ExtMark, FamilyIndex, FieldKind, Name,
    Notation, Objective, RangeTag, RelOp, SourceSpan, Value, ValueAlt, VariantAst, WalkRef,
};
pub use lint::{lint, Lint, LintKind};
pub use parse::parse;
pub use render::{abbreviate, render, render_as, render_expr, render_range, RenderError};
pub use token::SyntaxError;
