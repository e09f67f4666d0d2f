fn main() {
    std::process::exit(sizetrend::cli::dispatch(std::env::args_os()));
}
