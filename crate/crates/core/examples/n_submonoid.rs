//! Explore the image N = { ε f(m) } and find witnesses for membership.

use freeadj::monoid::{in_n, n_of, n_product_witness, Element, NIndex};
use freeadj::Word;

fn main() {
    for s in ["1", "e0", "e0 e0", "h0", "h1 e0 e0"] {
        let a: Element = s.parse().unwrap();
        match in_n(&a, 6).witness() {
            Some(m) => println!("{a} ∈ N, witness m = {m}"),
            None => println!("{a}: no witness up to degree 6"),
        }
    }

    let (m1, m2): (Word, Word) = ("h1".parse().unwrap(), "e0".parse().unwrap());
    let product = Element::new(&n_of(&m1)).mul(&Element::new(&n_of(&m2)));
    let formula = n_product_witness(&m1, &m2);
    println!(
        "\nεf({m1}) · εf({m2}) = {product} = εf({})",
        Element::new(&formula)
    );

    let index = NIndex::new(6);
    println!("{} elements of N reached from m of degree ≤ 6", index.len());
    println!(
        "shortest witness for the product: {:?}",
        index.lookup(&product).witness().map(Word::to_string)
    );
}
