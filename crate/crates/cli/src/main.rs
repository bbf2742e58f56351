fn main() {
    std::process::exit(bolab_cli::cli_main(std::env::args_os()));
}
