//! `iqpe` command-line runner.
//!
//! Every subcommand writes its artifacts plus a `manifest.json` with
//! SHA-256 checksums into the `--out` directory. Angles are taken in
//! degrees on the command line and stored in radians in every file.

pub mod args;
pub mod commands;
pub mod error;
pub mod manifest;
pub mod output;

use std::ffi::OsString;

use clap::Parser;

pub use args::Cli;
pub use error::CliError;
pub use manifest::RunManifest;

/// Parses `argv`, runs the subcommand and returns the process exit code:
/// 0 on success, 1 for usage, configuration and I/O errors, 2 when a
/// numerical contract is violated.
pub fn run_from<I, T>(argv: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match commands::run(&cli) {
        Ok(manifest) => {
            println!("{}", manifest.output_dir);
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
