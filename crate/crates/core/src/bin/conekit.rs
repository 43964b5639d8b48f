fn main() {
    std::process::exit(conekit::cli::main_entry(std::env::args_os()));
}
