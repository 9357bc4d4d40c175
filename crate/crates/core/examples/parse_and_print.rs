//! Parse a `.ztc` file and print it back in canonical form.
//!
//!     cargo run --example parse_and_print -- corpus/toolkit.ztc

use ztc::zparse::{parse_file, print_file};

fn main() {
    let path = std::env::args().nth(1).unwrap_or_else(|| "corpus/launch_vehicle.ztc".into());
    let text = std::fs::read_to_string(&path).expect("readable input");
    let file = match parse_file(&text) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("{path}:{e}");
            std::process::exit(1);
        }
    };
    let printed = print_file(&file);
    print!("{printed}");
    // printing is a fixpoint of parsing
    assert_eq!(parse_file(&printed).unwrap().specs, file.specs);
}
