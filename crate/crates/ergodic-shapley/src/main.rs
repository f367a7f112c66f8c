use std::process::ExitCode;

fn main() -> ExitCode {
    ergodic_shapley::cli::main()
}
