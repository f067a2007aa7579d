use std::process::ExitCode;

fn main() -> ExitCode {
    scmub::cli::main()
}
