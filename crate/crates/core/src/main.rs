fn main() -> std::process::ExitCode {
    kerr_squeeze::scenario::main_with_args(std::env::args_os())
}
