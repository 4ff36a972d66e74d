use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, doc) = stabform_cli::run_command(std::env::args_os());
    if let Some(msg) = &doc.diagnostic {
        eprintln!("stabform: {msg}");
    }
    if code != stabform_cli::EXIT_INPUT {
        let mut stdout = std::io::stdout().lock();
        // A closed pipe is not worth a panic.
        let _ = stdout.write_all(doc.output().as_bytes());
    }
    ExitCode::from(code as u8)
}
