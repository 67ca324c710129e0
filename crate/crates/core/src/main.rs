use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;
use computads::cli::{run, run_args, Cli};

fn main() {
    let out = match Cli::try_parse() {
        Ok(cli) => run(&cli),
        Err(e)
            if matches!(
                e.kind(),
                ErrorKind::DisplayHelp
                    | ErrorKind::DisplayVersion
                    | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
            ) =>
        {
            e.exit()
        }
        Err(_) => run_args(std::env::args_os()),
    };
    if let Some(e) = out.report.get("error") {
        eprintln!("error: {}", e.as_str().unwrap_or_default());
    }
    let text = serde_json::to_string_pretty(&out.report).expect("JSON report");
    // A closed pipe downstream is not an error of ours.
    let _ = writeln!(std::io::stdout(), "{text}");
    std::process::exit(out.code);
}
