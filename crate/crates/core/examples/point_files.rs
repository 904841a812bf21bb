//! Writing and reading point files and claimed-pair sidecars.

use slabcp::io::{format_points, parse_points};
use slabcp::lowerbound::gen_hypercube;

fn main() {
    let (c, _) = gen_hypercube(2).unwrap();
    let text = format_points(&c.points);
    print!("{text}");
    assert_eq!(parse_points(&text).unwrap(), c.points);
    println!("{}", serde_json::to_string_pretty(&c.sidecar()).unwrap());
}
