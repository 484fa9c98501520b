use std::process::ExitCode;

fn main() -> ExitCode {
    hecke_blocks::cli::main()
}
