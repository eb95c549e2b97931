use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let env = spectra_cli::env_pair_budget();
    match spectra_cli::run_args(std::env::args_os(), env.as_deref()) {
        Ok(report) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(report.stdout.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(spectra_cli::EXIT_USAGE);
            }
            ExitCode::from(report.code)
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message.trim_end());
            ExitCode::from(failure.code)
        }
    }
}
