fn main() {
    std::process::exit(order_voronoi::harness::cli::run(std::env::args_os()));
}
