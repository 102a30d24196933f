fn main() {
    std::process::exit(gslab::cli::main())
}
