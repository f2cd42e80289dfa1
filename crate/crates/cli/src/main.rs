//! `incidence`: exact solving and tooling for scoring positional games.

mod args;
mod commands;
mod error;
mod play;
mod record;
mod selftest;

use std::process::ExitCode;

fn main() -> ExitCode {
    commands::run(std::env::args_os())
}
