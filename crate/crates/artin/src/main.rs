use std::process::ExitCode;

fn main() -> ExitCode {
    let code =
        artin::run(std::env::args_os().skip(1), &mut std::io::stdin(), &mut std::io::stdout(), &mut std::io::stderr());
    ExitCode::from(code as u8)
}
