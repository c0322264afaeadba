fn main() -> std::process::ExitCode {
    pdt::cli::main()
}
