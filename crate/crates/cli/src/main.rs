use std::io::Write;
use std::process::ExitCode;

use fermat_cli::{run, RunConfig};

fn main() -> ExitCode {
    let config = match RunConfig::from_args(std::env::args_os()) {
        Ok(c) => c,
        Err(e) => {
            // --help and --version are not errors.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&config) {
        Ok(text) => {
            if config.out.is_none() {
                let mut stdout = std::io::stdout().lock();
                if let Err(e) = stdout.write_all(text.as_bytes()) {
                    eprintln!("fermat: {e}");
                    return ExitCode::from(2);
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("fermat: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
