use std::process::ExitCode;

fn main() -> ExitCode {
    let code = relaxflow_core::harness::run_cli(std::env::args_os());
    ExitCode::from(code as u8)
}
