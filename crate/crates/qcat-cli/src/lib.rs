//! Library surface of the `qcat` binary: the input schema, the report
//! types, and the named demos. Kept as a lib target so integration tests can
//! round-trip the machine-readable report format.

pub mod demos;
pub mod report;
pub mod schema;
