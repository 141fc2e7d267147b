fn main() -> std::process::ExitCode {
    vlcbc::cli::main()
}
