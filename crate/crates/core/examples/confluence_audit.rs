//! Enumerate every critical pair up to an index bound and confirm each one
//! joins. Also audits termination and uniqueness of normal forms.
//!
//! Run with `cargo run --release --example confluence_audit -- 8`.

use freeadj::confluence::{
    audit_local_confluence, audit_termination, audit_unique_normal_forms, AuditOptions,
};

fn main() {
    let max_index = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(6);

    let report = audit_local_confluence(max_index, AuditOptions::default());
    print!("{}", report.render());
    println!();
    print!("{}", audit_termination(4, 3).render());

    let unique = audit_unique_normal_forms(4, 3);
    println!(
        "uniqueness: {} words, {} graph nodes, {} disagreements",
        unique.words,
        unique.graph_nodes,
        unique.disagreements.len()
    );

    if !report.passed() {
        std::process::exit(1);
    }
}
