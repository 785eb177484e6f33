fn main() {
    std::process::exit(etacone::cli::run());
}
