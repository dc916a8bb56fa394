fn main() {
    std::process::exit(nambu_cli::app::main_entry());
}
