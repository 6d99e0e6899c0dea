use std::process::ExitCode;

fn main() -> ExitCode {
    if let Err(e) = epikit_cli::configure_threads() {
        eprintln!("epikit: {e}");
        return ExitCode::from(1);
    }
    let out = epikit_cli::run_args(std::env::args_os());
    print!("{}", out.stdout);
    ExitCode::from(out.code as u8)
}
