use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let code = monoidal_automata::cli::run(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    ExitCode::from(code as u8)
}
