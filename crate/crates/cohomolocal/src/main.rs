fn main() {
    std::process::exit(cohomolocal::cli::run());
}
