//! Library surface of the `ospq` command-line tool: the JSON/text schema
//! codecs and the task runners, shared with the integration tests.

pub mod jobs;
pub mod schema;
