fn main() {
    std::process::exit(fermat_periods::cli::main());
}
