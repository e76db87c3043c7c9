use clap::Parser;
use zue::cli::{configure_threads, emit, execute, RunConfig};

fn main() {
    let cfg = RunConfig::parse();
    let result = configure_threads()
        .and_then(|()| execute(&cfg))
        .and_then(|text| emit(&cfg, &text));
    if let Err(e) = result {
        eprintln!("zue: {e}");
        std::process::exit(1);
    }
}
