//! Rewrite a few words to normal form and show every step taken.
//!
//! Run with `cargo run --example normalize_words -- "e2 h0 e1 h3"`.

use freeadj::rewrite::{normalize_trace, redexes};
use freeadj::Word;

fn main() {
    let inputs: Vec<String> = std::env::args().skip(1).collect();
    let inputs = if inputs.is_empty() {
        vec![
            "e1 h1".to_string(),
            "e2 h0 e1 h3".to_string(),
            "h2 h0 e0 e3".to_string(),
        ]
    } else {
        inputs
    };

    for input in inputs {
        let word: Word = match input.parse() {
            Ok(word) => word,
            Err(err) => {
                eprintln!("{input}: {err}");
                continue;
            }
        };
        println!(
            "{word}  (degree {}, {} redexes)",
            word.degree(),
            redexes(&word).len()
        );
        let trace = normalize_trace(&word);
        print!("{}", trace.render());
        println!();
    }
}
