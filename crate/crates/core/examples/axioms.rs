//! Check the defining identities of the monoid by exhaustive enumeration.

use std::time::Instant;

use freeadj::monoid::{check_axioms, check_n_closure, iso_conditions};

fn main() {
    let start = Instant::now();
    let axioms = check_axioms(5, 3);
    print!("{}", axioms.render());
    let closure = check_n_closure(3, 2);
    print!("{}", closure.render());
    println!("checked in {:?}\n", start.elapsed());

    println!("conditions equivalent to the shift being an isomorphism:");
    print!("{}", iso_conditions().render());
}
