fn main() {
    std::process::exit(cantor_moran::cli::main());
}
