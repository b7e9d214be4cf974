//! Cartan, Serre and Coxeter matrices, unipotency and the Happel trace identity.

use beilinson_hh::grothendieck::{
    cartan_matrix, coxeter_matrix, happel_check, neg_trace_coxeter, serre_is_unipotent, serre_matrix,
};
use beilinson_hh::DownUpParams;

fn main() {
    println!("n = 2\ncartan\n{}serre\n{}coxeter\n{}", cartan_matrix(2), serre_matrix(2), coxeter_matrix(2));
    for n in 1..=5 {
        let report =
            happel_check(&DownUpParams::rational(n, (1, 1), (1, 1)).expect("valid parameters")).expect("computation");
        println!(
            "n={n}: rank K0 = {:>2}, -tr Phi = {:>2}, chi(HH) = {:>2}, serre unipotent = {}",
            report.k0_rank,
            neg_trace_coxeter(n).to_string(),
            report.euler_hh,
            serre_is_unipotent(n)
        );
    }
}
