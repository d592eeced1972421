use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(orbmeas::app::main_entry())
}
