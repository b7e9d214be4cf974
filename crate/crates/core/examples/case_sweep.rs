//! Every case branch for n = 1..=N at its representative parameters (N from argv, default 5).

use beilinson_hh::hochschild::sweep;

fn main() {
    let n_max: usize = std::env::args().nth(1).map_or(5, |s| s.parse().expect("N must be a positive integer"));
    let rows = sweep(1, n_max);
    let mut all = true;
    for row in &rows {
        match &row.report {
            Some(r) => {
                all &= row.agrees();
                println!(
                    "n={:<2} {:<15} {} computed {} table {}  chi={}",
                    row.n,
                    row.case.as_str(),
                    if row.agrees() { "ok " } else { "BAD" },
                    r.brute,
                    r.closed,
                    r.brute.euler()
                );
            }
            None => println!("n={:<2} {:<15} not exercised", row.n, row.case.as_str()),
        }
    }
    println!("{} rows, all exercised rows agree: {all}", rows.len());
}
