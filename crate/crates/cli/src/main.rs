fn main() {
    std::process::exit(tph_cli::app::run());
}
