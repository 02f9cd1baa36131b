//! Decide equivalence without the rewriting system's normal forms, by
//! searching the bidirectional rewrite graph below a degree bound, then
//! compare every answer with normal-form equality.

use freeadj::confluence::{cross_check_oracle, Oracle};
use freeadj::Word;

fn main() {
    let oracle = Oracle::new(9);
    for (u, v) in [
        ("e0 h1", "1"),
        ("e1 h1", "1"),
        ("h0 e0", "1"),
        ("e2 e0", "e0 e1"),
    ] {
        let (u, v): (Word, Word) = (u.parse().unwrap(), v.parse().unwrap());
        match oracle.equivalent(&u, &v) {
            Ok(answer) => println!("{u} ~ {v}: {answer:?}"),
            Err(err) => println!("{u} ~ {v}: {err}"),
        }
    }

    let report = cross_check_oracle(3, 2, 9);
    println!(
        "\ncross-check over {} words: {} classes, {} equivalent pairs, {} distinct, {} discrepancies",
        report.words,
        report.components,
        report.agree_equivalent,
        report.agree_distinct,
        report.discrepancies.len()
    );
}
