//! Library side of the `dskern` command-line tool: graph file I/O,
//! statistics records, the benchmark harness and the verification
//! protocol. The binary in `main.rs` is a thin clap wrapper over these.

pub mod bench;
pub mod io;
pub mod stats;
pub mod verify;

/// Exit code for malformed input files.
pub const EXIT_PARSE_FAILURE: u8 = 2;
/// Exit code for a failed oracle-equivalence or kernel-bound check.
pub const EXIT_VERIFY_FAILURE: u8 = 3;
