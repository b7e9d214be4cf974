//! Rewriting paths of the bound quiver into normal form and listing block bases.
//!
//! Usage: `cargo run --example normal_forms -- [n] [path]`, e.g. `3 x1.x2.x3.y4`.

use beilinson_hh::{Algebra, DownUpParams};

fn main() {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(3, |s| s.parse().expect("n must be a positive integer"));
    let params = DownUpParams::rational(n, (1, 1), (1, 1)).expect("valid parameters");
    let alg = Algebra::new(params);
    let q = alg.quiver();

    println!(
        "quiver for n = {n}: {} vertices, arrows {}",
        q.num_vertices(),
        q.arrows().iter().map(|a| format!("{a}:{}->{}", a.source, a.target)).collect::<Vec<_>>().join(" ")
    );
    for r in alg.relations() {
        println!("  {} = {}", r.name, r.as_element(alg.field()));
    }

    let default = if n >= 2 { "x1.x2.x3.y4" } else { "x1.x2.y3" };
    let text = args.next().unwrap_or_else(|| default.to_string());
    match q.parse_path(&text) {
        Ok(path) => println!("\n{path}  ->  {}", alg.path_normal_form(&path)),
        Err(e) => println!("\ncannot parse {text:?}: {e}"),
    }

    println!("\nnormal paths from vertex 1:");
    for j in 1..=q.num_vertices() {
        let basis = alg.block_basis(1, j);
        let names: Vec<String> = basis.iter().map(ToString::to_string).collect();
        println!("  e1 L e{j:<2} dim {:<2} {}", basis.len(), names.join(", "));
    }
    println!("dim L = {}", alg.total_dim());
}
