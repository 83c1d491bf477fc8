//! Documents, pictures and the session protocol.

pub mod ascii;
pub mod document;
pub mod session;

pub use ascii::{parse_ascii_occupancy, render_ascii};
pub use document::{parse_config, serialize_config, ConfigDocument, ParseError, SCHEMA_VERSION};
pub use session::{serve_session, Request, Response, Session};
