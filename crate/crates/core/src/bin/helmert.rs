fn main() {
    std::process::exit(helmert_student::cli::main());
}
