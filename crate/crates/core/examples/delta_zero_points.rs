//! Searches for (1, t) with δ_n(1, t) = 0 over Q and real quadratic fields.

use beilinson_hh::hochschild::{find_delta_zero, sequence_ab};

fn main() {
    for n in 2..=10 {
        match find_delta_zero(n) {
            Some(p) => println!(
                "n={n:<2} beta = {:<28} field {}  delta = {}",
                p.beta().to_string(),
                p.field(),
                sequence_ab(&p).delta
            ),
            None => println!("n={n:<2} no rational or quadratic root"),
        }
    }
}
