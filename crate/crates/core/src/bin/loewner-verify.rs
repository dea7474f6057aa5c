fn main() {
    std::process::exit(loewner_dbr::cli::main(std::env::args_os()));
}
