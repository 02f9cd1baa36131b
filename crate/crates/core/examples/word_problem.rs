//! Decide equality of words by comparing normal forms, and multiply elements.

use freeadj::monoid::Element;
use freeadj::{normalize, Word};

fn word(s: &str) -> Word {
    s.parse().unwrap()
}

fn main() {
    let pairs = [
        ("e0 h0", "1"),
        ("h0 e0", "1"),
        ("e3 h4", "1"),
        ("e0 e1", "e0 e0"),
        ("h1 h0", "h0 h0"),
        ("e2 e0", "e0 e1"),
    ];
    for (u, v) in pairs {
        let (nu, nv) = (normalize(&word(u)), normalize(&word(v)));
        let verdict = if nu == nv { "=" } else { "≠" };
        println!("{u:>8} {verdict} {v:<8}  normal forms {nu} / {nv}");
    }

    // ηε is an idempotent that is not the identity.
    let eta_eps = Element::eta().mul(&Element::eps());
    println!("\n(ηε)² = {}, ηε = {}", eta_eps.pow(2), eta_eps);

    let m: Element = "h0 e2".parse().unwrap();
    for n in 0..4 {
        println!("f^{n}(h0 e2) = {}", m.apply_f_pow(n));
    }
}
