fn main() {
    std::process::exit(energy_forecast::cli::run(std::env::args_os()));
}
