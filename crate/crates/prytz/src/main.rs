fn main() -> std::process::ExitCode {
    prytz::cli::main()
}
