use std::process::ExitCode;

use clap::Parser;
use rdl_cli::commands::{main_with, Cli};

fn main() -> ExitCode {
    main_with(Cli::parse())
}
