//! Command-line companion to `tsirelson-core`: vector file I/O, stream and
//! flag parsing, verification suites, and report rendering. The binary in
//! `main.rs` is a thin dispatcher over these modules; the acceptance test
//! target drives [`suites`] directly.

pub mod io;
pub mod report;
pub mod suites;
