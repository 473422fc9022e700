fn main() -> std::process::ExitCode {
    frontier::cli::run(std::env::args_os())
}
