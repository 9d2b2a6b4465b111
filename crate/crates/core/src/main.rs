fn main() {
    std::process::exit(qlnc::cli::run());
}
