fn main() {
    std::process::exit(reczoo::cli::run(std::env::args()));
}
