use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use prep::cli::{run, Cli};

fn main() -> ExitCode {
    let (config, workers) = Cli::parse().into_config();
    if let Some(n) = workers.filter(|&n| n > 0) {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("warning: could not set worker count: {e}");
        }
    }
    match run(&config) {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(report.render(config.output_format).as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
