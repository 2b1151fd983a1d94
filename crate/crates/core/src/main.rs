fn main() {
    std::process::exit(spinlab::cli::dispatch(std::env::args_os()));
}
