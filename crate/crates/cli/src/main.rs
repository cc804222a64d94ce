use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let result = rcx_cli::run(std::env::args_os());
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let printed_document = match &result.stdout {
        Some(text) => {
            let _ = out.write_all(text.as_bytes());
            true
        }
        None => false,
    };
    if !result.summary.is_empty() {
        if result.exit_code == 2 || printed_document {
            eprintln!("{}", result.summary);
        } else {
            let _ = writeln!(out, "{}", result.summary);
        }
    }
    ExitCode::from(result.exit_code as u8)
}
