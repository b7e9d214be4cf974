//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any FAIL.
//! All arithmetic is exact; every comparison is equality.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use beilinson_hh::grothendieck::{cartan_matrix, happel_check, neg_trace_coxeter, serre_is_unipotent, serre_matrix};
use beilinson_hh::hochschild::{
    build_l2_closed_form, classify_case, delta_by_matrix_power, extract_blocks, hh_dims_bruteforce,
    hh_dims_closed_form, representative, sequence_ab, CaseLabel, HHDims, HHReport,
};
use beilinson_hh::quiver::hilbert_coeff;
use beilinson_hh::resolution::verify_resolution;
use beilinson_hh::{Algebra, DownUpParams, Field, Matrix, QuadScalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn q(v: i64) -> QuadScalar {
    QuadScalar::from_int(v, Field::Rational)
}

fn rational(n: usize, a: (i64, i64), b: (i64, i64)) -> DownUpParams {
    DownUpParams::rational(n, a, b).expect("valid parameters")
}

/// Every reachable branch's representative for `n`.
fn swept(n: usize) -> Vec<(CaseLabel, DownUpParams)> {
    CaseLabel::branches(n).iter().filter_map(|&c| representative(n, c).map(|p| (c, p))).collect()
}

fn random_rational(rng: &mut ChaCha8Rng, nonzero: bool) -> (i64, i64) {
    loop {
        let num = rng.gen_range(-9..=9);
        let den = rng.gen_range(1..=7);
        if !nonzero || num != 0 {
            return (num, den);
        }
    }
}

fn case_table() -> Outcome {
    let expected = [
        (2, CaseLabel::DeltaZero, HHDims(1, 3, 8)),
        (2, CaseLabel::DiscZero, HHDims(1, 2, 7)),
        (2, CaseLabel::Generic, HHDims(1, 1, 6)),
        (3, CaseLabel::OddAlphaZero, HHDims(1, 4, 8)),
        (3, CaseLabel::DeltaZero, HHDims(1, 3, 7)),
        (3, CaseLabel::DiscZero, HHDims(1, 2, 6)),
        (3, CaseLabel::Generic, HHDims(1, 1, 5)),
    ];
    for (n, case, dims) in expected {
        let p = representative(n, case).ok_or(format!("no representative for n={n} {case}"))?;
        ensure!(hh_dims_closed_form(&p).map_err(|e| e.to_string())? == dims, "closed form n={n} {case}");
    }
    let total = Instant::now();
    for n in 2..=5 {
        for (case, p) in swept(n) {
            let start = Instant::now();
            let brute = hh_dims_bruteforce(&p).map_err(|e| e.to_string())?;
            let closed = hh_dims_closed_form(&p).map_err(|e| e.to_string())?;
            ensure!(brute == closed, "n={n} {case}: brute {brute} vs closed {closed}");
            ensure!(start.elapsed() < Duration::from_secs(60), "n={n} {case} took {:?}", start.elapsed());
        }
        ensure!(CaseLabel::branches(n).len() == swept(n).len(), "a branch for n={n} was not exercised");
    }
    ensure!(total.elapsed() < Duration::from_secs(300), "total {:?}", total.elapsed());
    Ok(())
}

fn case_table_n1() -> Outcome {
    for (a, b, dims) in [(0, 1, HHDims(1, 6, 9)), (2, -1, HHDims(1, 3, 6)), (1, 1, HHDims(1, 1, 4))] {
        let got = hh_dims_bruteforce(&rational(1, (a, 1), (b, 1))).map_err(|e| e.to_string())?;
        ensure!(got == dims, "n=1 ({a},{b}): got {got}, want {dims}");
    }
    Ok(())
}

fn block_ranks() -> Outcome {
    for n in 2..=5 {
        for (case, p) in swept(n) {
            let blocks = extract_blocks(&p).map_err(|e| e.to_string())?;
            let seq = sequence_ab(&p);
            let want_l1 = if n % 2 == 1 && p.alpha().is_zero() { n } else { n + 1 };
            let want_l2 = if seq.delta.is_zero() {
                n
            } else if seq.disc.is_zero() {
                n + 1
            } else {
                n + 2
            };
            ensure!(blocks.l1.rank() == want_l1, "n={n} {case}: rank L1 {} want {want_l1}", blocks.l1.rank());
            ensure!(blocks.l2.rank() == want_l2, "n={n} {case}: rank L2 {} want {want_l2}", blocks.l2.rank());
        }
    }
    Ok(())
}

fn block_structure() -> Outcome {
    for n in 2..=5 {
        for (case, p) in swept(n) {
            let b = extract_blocks(&p).map_err(|e| format!("n={n} {case}: {e}"))?;
            let zero_rows = if n == 2 { 3 } else { 1 };
            ensure!(b.l1.rows() == 2 * n + 2 && b.l1.cols() == 3 * n + 3, "n={n}: L1 shape");
            ensure!(b.l2.rows() == n + 2 && b.l2.cols() == n + 2, "n={n}: L2 shape");
            ensure!(b.zero_rows == zero_rows, "n={n}: {} zero rows", b.zero_rows);
            let closed = build_l2_closed_form(&p).map_err(|e| e.to_string())?;
            ensure!(b.l2 == closed, "n={n} {case}: extracted L2 differs from closed form");
        }
    }
    Ok(())
}

fn resolution_audit() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    for n in 1..=4 {
        for _ in 0..2 {
            let p = rational(n, random_rational(&mut rng, false), random_rational(&mut rng, true));
            let r = verify_resolution(&p);
            ensure!(r.complex && r.exact && r.euler && r.minimal, "n={n} α={} β={}: {:?}", r.alpha, r.beta, r.failures);
        }
    }
    Ok(())
}

fn confluence() -> Outcome {
    for n in 1..=5 {
        let alg = Algebra::new(rational(n, (1, 1), (1, 1)));
        for i in 1..=2 * n + 2 {
            for j in i..=2 * n + 2 {
                let (basis, oracle, hilbert) =
                    (alg.block_dim(i, j), alg.quotient_oracle(i, j), hilbert_coeff(n, j - i));
                ensure!(basis == oracle && oracle == hilbert, "n={n} ({i},{j}): {basis}/{oracle}/{hilbert}");
            }
        }
    }
    Ok(())
}

fn grothendieck_suite() -> Outcome {
    let cartan = Matrix::from_ints(
        &[
            &[1, 1, 2, 3, 4, 5],
            &[0, 1, 1, 2, 3, 4],
            &[0, 0, 1, 1, 2, 3],
            &[0, 0, 0, 1, 1, 2],
            &[0, 0, 0, 0, 1, 1],
            &[0, 0, 0, 0, 0, 1],
        ],
        Field::Rational,
    );
    let serre = Matrix::from_ints(
        &[
            &[7, 5, 4, 3, 2, 1],
            &[1, 2, 1, 1, 1, 1],
            &[-5, -4, -2, -2, -1, 0],
            &[-6, -5, -4, -2, -2, -1],
            &[-1, -1, -1, -1, 0, -1],
            &[5, 4, 3, 2, 1, 1],
        ],
        Field::Rational,
    );
    ensure!(cartan_matrix(2) == cartan, "n=2 Cartan matrix");
    ensure!(serre_matrix(2) == serre, "n=2 Serre matrix");
    for n in 1..=5 {
        ensure!(serre_is_unipotent(n) == (n <= 2), "unipotency at n={n}");
        let want = match n {
            1 => 4,
            2 => 6,
            _ => n as i64 + 2,
        };
        ensure!(neg_trace_coxeter(n) == q(want), "-tr Φ at n={n}");
        for (case, p) in swept(n) {
            let report = happel_check(&p).map_err(|e| e.to_string())?;
            ensure!(report.happel_ok, "n={n} {case}: euler {} vs -tr Φ {}", report.euler_hh, report.neg_trace_coxeter);
        }
    }
    Ok(())
}

fn delta_facts() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    for n in 1..=10 {
        for _ in 0..8 {
            let p = rational(n, random_rational(&mut rng, false), random_rational(&mut rng, true));
            ensure!(sequence_ab(&p).delta == delta_by_matrix_power(&p), "recurrence vs power at n={n}");
        }
        if n % 2 == 1 {
            let p = rational(n, (0, 1), random_rational(&mut rng, true));
            ensure!(sequence_ab(&p).delta.is_zero(), "δ_{n} at α=0");
        }
        let (num, den) = random_rational(&mut rng, true);
        // α²+4β = 0 with β = −α²/4
        let p = rational(n, (num, den), (-num * num, 4 * den * den));
        let half = QuadScalar::from_ratio(num, 2 * den, Field::Rational);
        let want = &q(n as i64 + 1) * &half.pow(n as u32);
        ensure!(sequence_ab(&p).disc.is_zero(), "disc at n={n}");
        ensure!(sequence_ab(&p).delta == want, "δ_{n} on the disc = 0 locus");
    }
    Ok(())
}

fn euler_constancy() -> Outcome {
    for n in 1..=5 {
        let want = match n {
            1 => 4,
            2 => 6,
            _ => n as i64 + 2,
        };
        for (case, p) in swept(n) {
            let e = hh_dims_bruteforce(&p).map_err(|e| e.to_string())?.euler();
            ensure!(e == want, "n={n} {case}: euler {e}, want {want}");
            ensure!(classify_case(&p).map_err(|e| e.to_string())? == case, "n={n}: representative left its branch");
        }
    }
    Ok(())
}

fn cli_contract() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_beilinson-hh");
    let golden = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden");
    let run = |args: &[&str]| Command::new(bin).args(args).env_remove("BEILINSON_HH_MAX_N").output().expect("spawn");
    let cases: [(&str, &[&str]); 3] = [
        ("compute_n2_generic.json", &["compute", "--n", "2", "--alpha", "0", "--beta", "1"]),
        ("compute_n3_odd_alpha_zero.json", &["compute", "--n", "3", "--alpha", "0", "--beta", "1"]),
        (
            "compute_n4_delta_zero_sqrt5.json",
            &["compute", "--n", "4", "--alpha", "1", "--beta", "(-3+1*sqrt(5))/2", "--d", "5"],
        ),
    ];
    for (file, args) in cases {
        let mut full = args.to_vec();
        full.extend(["--format", "json"]);
        let first = run(&full);
        let second = run(&full);
        let expect = std::fs::read(format!("{golden}/{file}")).map_err(|e| format!("{file}: {e}"))?;
        ensure!(first.status.code() == Some(0), "{file}: exit {:?}", first.status.code());
        ensure!(first.stdout == expect, "{file}: output differs from golden");
        ensure!(first.stdout == second.stdout, "{file}: rerun not byte-identical");
        let parsed: HHReport = serde_json::from_slice(&first.stdout).map_err(|e| e.to_string())?;
        ensure!(
            serde_json::to_string_pretty(&parsed).unwrap() + "\n" == String::from_utf8_lossy(&expect),
            "{file}: round trip"
        );
    }
    let beta_zero = run(&["compute", "--n", "2", "--alpha", "1", "--beta", "0"]);
    ensure!(beta_zero.status.code() == Some(2), "beta = 0 exit {:?}", beta_zero.status.code());
    ensure!(String::from_utf8_lossy(&beta_zero.stderr).contains("if and only if β ≠ 0"), "beta = 0 message");
    ensure!(run(&["compute", "--n", "2", "--alpha", "zz", "--beta", "1"]).status.code() == Some(2), "parse error exit");
    ensure!(run(&["sweep", "--n-min", "2", "--n-max", "3"]).status.code() == Some(0), "sweep exit");
    ensure!(run(&["hilbert", "--n", "3"]).status.code() == Some(0), "hilbert exit");
    ensure!(
        run(&["resolution", "--n", "2", "--alpha", "1", "--beta", "1"]).status.code() == Some(0),
        "resolution exit"
    );
    ensure!(
        run(&["grothendieck", "--n", "3", "--alpha", "1", "--beta", "1"]).status.code() == Some(0),
        "grothendieck exit"
    );
    Ok(())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("HH dimension table for n = 2..5", case_table),
        ("HH dimension table for n = 1", case_table_n1),
        ("ranks of L1 and L2", block_ranks),
        ("block shape of the second dual differential", block_structure),
        ("resolution audit", resolution_audit),
        ("normal-path bases against oracle and Hilbert series", confluence),
        ("Cartan, Serre, Coxeter and Happel", grothendieck_suite),
        ("delta_n identities", delta_facts),
        ("Euler characteristic constancy", euler_constancy),
        ("CLI contract", cli_contract),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({secs:.2}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({secs:.2}s): {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
