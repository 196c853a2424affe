fn main() {
    std::process::exit(wid_core::cli::main());
}
