fn main() { std::process::exit(amn::cli::run()); }
