//! Exact arithmetic in Q(sqrt(5)) and a root of δ₄(1, t) = t² + 3t + 1.

use beilinson_hh::hochschild::sequence_ab;
use beilinson_hh::{DownUpParams, Field, QuadScalar};

fn main() {
    let f = Field::new(5).expect("5 is squarefree");
    let root5 = QuadScalar::sqrt_d(f).expect("quadratic field");
    let phi = &(&QuadScalar::one(f) + &root5) / &QuadScalar::from_int(2, f);
    println!("phi        = {phi}");
    println!("phi^2      = {}", phi.pow(2));
    println!("phi^2-phi  = {}", &phi.pow(2) - &phi);
    println!("1/phi      = {}", phi.inv().expect("nonzero"));
    println!("N(phi)     = {}", phi.norm());

    let beta = QuadScalar::parse("(-3+1*sqrt(5))/2", f).expect("well-formed");
    let params = DownUpParams::new(4, QuadScalar::one(f), beta.clone()).expect("beta is nonzero");
    let seq = sequence_ab(&params);
    println!("beta       = {beta}");
    for i in 1..=seq.len() {
        println!("a_{i} = {:<22} b_{i} = {}", seq.a(i).to_string(), seq.b(i));
    }
    println!("delta_4    = {}", seq.delta);
}
