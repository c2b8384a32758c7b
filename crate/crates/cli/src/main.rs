use std::process::ExitCode;

fn main() -> ExitCode {
    lattice_speedup::main_with_args(std::env::args_os())
}
