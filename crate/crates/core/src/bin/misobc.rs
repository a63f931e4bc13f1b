fn main() { std::process::exit(misobc::cli::run(std::env::args_os())); }
