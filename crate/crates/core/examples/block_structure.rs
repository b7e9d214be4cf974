//! The second dual differential in the ordered bases where it is block diagonal.

use beilinson_hh::hochschild::{block_bases, build_l2_closed_form, extract_blocks};
use beilinson_hh::{Algebra, DownUpParams};

fn main() {
    let params = DownUpParams::rational(3, (2, 1), (-1, 1)).expect("valid parameters");
    let alg = Algebra::new(params.clone());
    let bases = block_bases(&alg).expect("n >= 2");
    let gens = beilinson_hh::resolution::generators(&alg, 2);
    println!("row basis:");
    for (k, (g, m)) in bases.rho2.iter().enumerate() {
        println!("  {k:>2}  theta[{}] -> {m}", gens[*g].name);
    }

    let blocks = extract_blocks(&params).expect("block shape holds");
    println!("\nL1 ({}x{}), rank {}:\n{}", blocks.l1.rows(), blocks.l1.cols(), blocks.l1.rank(), blocks.l1);
    println!("L2 ({}x{}), rank {}:\n{}", blocks.l2.rows(), blocks.l2.cols(), blocks.l2.rank(), blocks.l2);
    println!("zero rows: {}", blocks.zero_rows);
    let closed = build_l2_closed_form(&params).expect("n >= 2");
    println!("L2 equals the recurrence formula: {}", closed == blocks.l2);
}
