//! HH dimensions at one parameter point.
//!
//! Usage: `cargo run --example hochschild_dims -- n alpha beta [d]`.

use beilinson_hh::hochschild::compute;
use beilinson_hh::{DownUpParams, Field, QuadScalar};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let get = |i: usize, default: &str| args.get(i).cloned().unwrap_or_else(|| default.to_string());
    let n: usize = get(0, "3").parse().expect("n must be a positive integer");
    let field = Field::new(get(3, "1").parse().expect("d must be an integer")).expect("d must be squarefree");
    let alpha = QuadScalar::parse(&get(1, "1"), field).expect("alpha");
    let beta = QuadScalar::parse(&get(2, "-1/2"), field).expect("beta");
    let params = match DownUpParams::new(n, alpha, beta) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    };
    let r = compute(&params).expect("computation");
    println!("n = {}, alpha = {}, beta = {}", r.n, r.alpha, r.beta);
    println!("delta_n = {}, alpha^2 + 4 beta = {}", r.delta, r.disc);
    println!("case {}: HH^0, HH^1, HH^2 = {} (table says {})", r.case, r.brute, r.closed);
    if let (Some(l1), Some(l2)) = (r.rank_l1, r.rank_l2) {
        println!("rank L1 = {l1}, rank L2 = {l2}");
    }
    println!("Euler characteristic {}", r.brute.euler());
}
