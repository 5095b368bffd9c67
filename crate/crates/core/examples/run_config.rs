//! Drives a JSON run configuration through the same path as the `ecfim` binary.
//!
//! `cargo run --example run_config -- crb configs/ula_student.json`

use std::io;

fn main() {
    let mut args: Vec<String> = std::env::args().skip(1).collect();
    if args.len() < 2 {
        args = vec![
            "fim".into(),
            concat!(env!("CARGO_MANIFEST_DIR"), "/configs/ula_student.json").into(),
        ];
    }
    let config = args.remove(1);
    let mut argv = vec![
        "ecfim".to_string(),
        args.remove(0),
        "--config".into(),
        config,
    ];
    argv.extend(args);
    let code = ecfim::cli::run(argv, &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
