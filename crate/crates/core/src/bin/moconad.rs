fn main() {
    std::process::exit(moconad_core::cli::main());
}
