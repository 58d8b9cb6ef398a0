use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = mci::cli::run(&args, &mut out);
    let _ = out.flush();
    ExitCode::from(code as u8)
}
