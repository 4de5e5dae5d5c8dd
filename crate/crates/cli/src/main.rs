fn main() {
    std::process::exit(bmwcert::cli::run(std::env::args_os()));
}
