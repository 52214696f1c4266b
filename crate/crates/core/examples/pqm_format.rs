//! Round trip through the `pqm 1` text format, and a located parse error.

use pqmap::format::{parse, serialize};
use pqmap::generators::gen_standard;

fn main() {
    let m = gen_standard(6, 1).unwrap();
    let text = serialize(&m);
    print!("{text}");
    assert_eq!(parse(&text).unwrap().map, m);

    let broken = text.replacen("pqm 1", "pqm 2", 1);
    match parse(&broken) {
        Ok(_) => println!("unexpectedly parsed"),
        Err(e) => println!("error: {e}"),
    }
}
