fn main() {
    std::process::exit(hyperrc::cli::run());
}
