fn main() {
    std::process::exit(teleclone::cli::run());
}
