use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(subspace_ent_cli::dispatch(std::env::args_os()))
}
