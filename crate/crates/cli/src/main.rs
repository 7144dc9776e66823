fn main() {
    std::process::exit(mcheck::run(std::env::args_os()));
}
