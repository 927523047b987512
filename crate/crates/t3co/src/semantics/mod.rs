//! What a parsed definition means: the attribute registry, resolution into
//! typed slots, objective classification, canonical re-emission, consistency
//! diagnostics, and prose explanation.

mod emit;
mod explain;
mod objective;
pub mod registry;
mod resolve;
mod types;
mod wellformed;

pub use emit::{canonical_longhand, canonical_shorthand, longhand_ast, shorthand_ast};
pub use explain::explain;
pub use resolve::{resolve, Resolution, ResolveError, ResolveNote};
pub use types::*;
pub use wellformed::{check_wellformed, Diagnostic};
