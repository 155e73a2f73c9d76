use std::process::ExitCode;

fn main() -> ExitCode {
    inertol::cli::run()
}
