use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::Parser;
use partcalc_cli::app::{execute, Cli};

fn read_stdin() -> io::Result<String> {
    let mut s = String::new();
    io::stdin().read_to_string(&mut s)?;
    Ok(s)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = execute(&cli, &mut read_stdin).and_then(|out| {
        let mut text = out.text;
        if !text.ends_with('\n') {
            text.push('\n');
        }
        match &cli.out {
            Some(path) => fs::write(path, text)?,
            None => io::stdout().write_all(text.as_bytes())?,
        }
        if let Some(w) = out.warning {
            eprintln!("{w}");
        }
        Ok(out.code)
    });
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
