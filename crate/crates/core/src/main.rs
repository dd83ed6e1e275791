fn main() {
    std::process::exit(solenoid_ab::cli::main_with_args(std::env::args_os()));
}
