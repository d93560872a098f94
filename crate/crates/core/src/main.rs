fn main() {
    std::process::exit(fusion_ideal::cli::run(std::env::args_os()));
}
