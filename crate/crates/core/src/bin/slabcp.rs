fn main() {
    std::process::exit(slabcp::cli::main());
}
