use std::process::ExitCode;

use extremal_cli::{run, CliError};

fn main() -> ExitCode {
    match run(std::env::args_os()) {
        Ok(manifest) => {
            for f in &manifest.outputs {
                println!("{f}");
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(e)) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("extremal: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
