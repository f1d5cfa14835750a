fn main() {
    std::process::exit(fertgame::cli::run(std::env::args_os()));
}
