use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = macdonald_cli::run_args(std::env::args_os().skip(1));
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(outcome.report.as_bytes());
    let _ = out.flush();
    eprint!("{}", outcome.diagnostics);
    ExitCode::from(outcome.status)
}
