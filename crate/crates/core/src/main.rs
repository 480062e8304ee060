use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(superweier::cli::run(std::env::args()) as u8)
}
