mod args;
mod commands;

use std::io::{IsTerminal, Write};
use std::net::SocketAddr;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use commands::CliError;

fn serve(command: &Command) -> Result<u8, CliError> {
    let Command::Serve {
        model,
        port,
        bind,
        allow_origin,
    } = command
    else {
        unreachable!()
    };
    let model = commands::load_valid(model)?;
    tracing_subscriber::fmt()
        .with_writer(std::io::stderr)
        .with_ansi(std::io::stderr().is_terminal())
        .with_target(false)
        .init();
    let runtime =
        tokio::runtime::Runtime::new().map_err(|e| CliError::Input(format!("E_IO: {e}")))?;
    runtime
        .block_on(msa_decide_api::serve(
            model,
            SocketAddr::new(*bind, *port),
            allow_origin,
        ))
        .map_err(|e| CliError::Input(e.to_string()))?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Serve { .. } => serve(&cli.command),
        other => {
            let stdout = std::io::stdout();
            let mut out = stdout.lock();
            let r = commands::run(other, &mut out);
            let _ = out.flush();
            r
        }
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
