//! Builds the length-two bimodule resolution and audits it with exact ranks.

use beilinson_hh::resolution::{generators, verify_resolution};
use beilinson_hh::{Algebra, DownUpParams};

fn main() {
    for (n, alpha, beta) in [(1, (1, 1), (1, 1)), (2, (1, 1), (1, 1)), (3, (0, 1), (1, 1)), (4, (2, 3), (-5, 7))] {
        let params = DownUpParams::rational(n, alpha, beta).expect("valid parameters");
        let alg = Algebra::new(params.clone());
        let counts: Vec<usize> = (0..3).map(|l| generators(&alg, l).len()).collect();
        let r = verify_resolution(&params);
        println!(
            "n={n} alpha={} beta={}: generators {counts:?}, dims P0={} P1={} P2={} L={}, ranks {}/{}/{}, exact={} minimal={} euler={}",
            r.alpha, r.beta, r.dims.p0, r.dims.p1, r.dims.p2, r.dims.lambda, r.ranks.d0, r.ranks.d1, r.ranks.d2, r.exact, r.minimal, r.euler
        );
        for f in &r.failures {
            println!("  failure: {f}");
        }
    }
}
