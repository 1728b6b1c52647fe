use std::io::Write;
use std::process::ExitCode;

use deltacalc_cli::{configure_threads, run, Status};

fn main() -> ExitCode {
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let result = run(std::env::args_os());
    print!("{}", result.stdout);
    let _ = std::io::stdout().flush();
    if let Status::Error { message, .. } = &result.status {
        let message = message.trim_end();
        if message.starts_with("error:") {
            eprintln!("{message}");
        } else {
            eprintln!("error: {message}");
        }
    }
    ExitCode::from(result.exit_code() as u8)
}
