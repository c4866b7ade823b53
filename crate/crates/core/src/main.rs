use std::process;

fn main() {
    process::exit(opspam::cli::run(std::env::args_os()));
}
