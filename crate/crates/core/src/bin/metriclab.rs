fn main() {
    std::process::exit(metriclab::cli::run(std::env::args_os()));
}
