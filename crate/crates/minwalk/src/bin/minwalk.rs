//! Thin binary wrapper: all logic lives in `minwalk::cli`.

fn main() {
    std::process::exit(minwalk::cli::run(std::env::args_os()));
}
