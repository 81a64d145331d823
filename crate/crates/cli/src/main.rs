use clap::Parser;
use mustafin_cli::{run, RunConfig};

fn main() {
    let rc = match RunConfig::try_parse() {
        Ok(rc) => rc,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    std::process::exit(run(&rc));
}
