//! JSON interchange: chain-complex documents, manifold records, and the
//! compact group and character specs used on the command line.

mod document;
mod record;
mod spec;

pub use document::{emit_complex, parse_complex, parse_matrix, ComplexDocument, GroupDescriptor};
pub use record::{emit_record, parse_record};
pub use spec::{parse_group_spec, parse_invariants_spec, parse_w_spec};

pub const SCHEMA_VERSION: &str = "1.0";
