use std::process::ExitCode;

fn main() -> ExitCode {
    teleframe_cli::run_cli()
}
