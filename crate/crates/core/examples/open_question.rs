//! Is the shift endomorphism an isomorphism? Prints the certificate.

use freeadj::monoid::answer_open_question;

fn main() {
    let verdict = answer_open_question();
    print!("{}", verdict.render());
}
