fn main() {
    std::process::exit(loosepath::cli::run());
}
