fn main() {
    std::process::exit(i32::from(polarlam_cli::run()));
}
