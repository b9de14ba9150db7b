use setfam::cli;

fn main() {
    std::process::exit(cli::run());
}
