use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(gapped_repeats::cli::main() as u8)
}
