//! Hochschild cohomology of Λ = ∇A from the dual of the bimodule resolution.
//!
//! Applying `Hom_{Λ^e}(−, Λ)` gives `0 → P̂⁰ → P̂¹ → P̂² → 0`, where
//! `P̂^i ≅ ⊕_{h ∈ G^i} s(h) Λ t(h)` has basis `θ_h^m` (the map sending `h` to
//! the normal path `m` and every other generator to zero). `∂̂(θ) = θ ∘ ∂` is
//! evaluated by substituting `m` into each term `u ⊗ h ⊗ v` of the
//! differential and normalising `u·m·v`.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{LinalgError, Matrix};
use crate::quiver::{Algebra, Arrow, DownUpParams, Path};
use crate::resolution::Resolution;
use crate::scalar::{Field, QuadScalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HochschildError {
    #[error("this computation needs n >= 2 (got n = {0})")]
    NeedsNAtLeast2(usize),
    #[error("unexpected block shape: {0}")]
    BlockShape(String),
    #[error("delta_n and alpha^2 + 4 beta vanish simultaneously")]
    InconsistentCase,
    #[error("dual differentials do not compose to zero")]
    NotAComplex,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// `θ_h^m` for generator number `generator` of its level.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DualBasisElement {
    pub generator: usize,
    pub monomial: Path,
}

/// `(a_i, b_i)ᵀ = (α 1; β 0)^{i−1} (1, 0)ᵀ` for `i = 1, …, n+1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ABSequence {
    a: Vec<QuadScalar>,
    b: Vec<QuadScalar>,
    pub delta: QuadScalar,
    pub disc: QuadScalar,
}

impl ABSequence {
    /// `a_i`, 1-based.
    pub fn a(&self, i: usize) -> &QuadScalar {
        &self.a[i - 1]
    }

    /// `b_i`, 1-based.
    pub fn b(&self, i: usize) -> &QuadScalar {
        &self.b[i - 1]
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }
}

pub fn sequence_ab(params: &DownUpParams) -> ABSequence {
    let field = params.field();
    let (alpha, beta) = (params.alpha(), params.beta());
    let mut a = vec![QuadScalar::one(field)];
    let mut b = vec![QuadScalar::zero(field)];
    for i in 1..=params.n() {
        let next_a = &(alpha * &a[i - 1]) + &b[i - 1];
        let next_b = beta * &a[i - 1];
        a.push(next_a);
        b.push(next_b);
    }
    let delta = a[params.n()].clone();
    let disc = &(alpha * alpha) + &(QuadScalar::from_int(4, field) * beta);
    ABSequence { a, b, delta, disc }
}

/// `δ_n = (1 0)(α 1; β 0)^n (1 0)ᵀ` straight from the matrix power.
pub fn delta_by_matrix_power(params: &DownUpParams) -> QuadScalar {
    let field = params.field();
    let m = Matrix::from_rows(
        vec![
            vec![params.alpha().clone(), QuadScalar::one(field)],
            vec![params.beta().clone(), QuadScalar::zero(field)],
        ],
        field,
    )
    .expect("2x2");
    m.pow(params.n() as u32).expect("square").get(0, 0).clone()
}

/// The branches of the closed-form dimension table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CaseLabel {
    /// `n ≥ 3` odd and `α = 0` (then `δ_n = 0`).
    OddAlphaZero,
    /// `δ_n = 0` otherwise.
    DeltaZero,
    /// `α² + 4β = 0` (then `δ_n ≠ 0`).
    DiscZero,
    Generic,
    /// `n = 1` and `α = 0`.
    AlphaZero,
}

impl CaseLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseLabel::OddAlphaZero => "ODD_ALPHA_ZERO",
            CaseLabel::DeltaZero => "DELTA_ZERO",
            CaseLabel::DiscZero => "DISC_ZERO",
            CaseLabel::Generic => "GENERIC",
            CaseLabel::AlphaZero => "ALPHA_ZERO",
        }
    }

    /// The branches that occur for a given `n`, in table order.
    pub fn branches(n: usize) -> &'static [CaseLabel] {
        use CaseLabel::*;
        match n {
            1 => &[AlphaZero, DiscZero, Generic],
            n if n % 2 == 1 => &[OddAlphaZero, DeltaZero, DiscZero, Generic],
            _ => &[DeltaZero, DiscZero, Generic],
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

pub fn classify_case(params: &DownUpParams) -> Result<CaseLabel, HochschildError> {
    let seq = sequence_ab(params);
    if params.n() == 1 {
        return Ok(if params.alpha().is_zero() {
            CaseLabel::AlphaZero
        } else if seq.disc.is_zero() {
            CaseLabel::DiscZero
        } else {
            CaseLabel::Generic
        });
    }
    if seq.delta.is_zero() {
        if seq.disc.is_zero() {
            return Err(HochschildError::InconsistentCase);
        }
        if params.n() % 2 == 1 && params.alpha().is_zero() {
            return Ok(CaseLabel::OddAlphaZero);
        }
        return Ok(CaseLabel::DeltaZero);
    }
    Ok(if seq.disc.is_zero() { CaseLabel::DiscZero } else { CaseLabel::Generic })
}

/// `(dim HH⁰, dim HH¹, dim HH²)`; higher groups vanish.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HHDims(pub usize, pub usize, pub usize);

impl HHDims {
    pub fn euler(&self) -> i64 {
        self.0 as i64 - self.1 as i64 + self.2 as i64
    }
}

impl fmt::Display for HHDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0, self.1, self.2)
    }
}

/// The dimension table as a function of the case and `n`.
pub fn closed_form_for(n: usize, case: CaseLabel) -> HHDims {
    use CaseLabel::*;
    if n == 1 {
        return match case {
            AlphaZero => HHDims(1, 6, 9),
            DiscZero => HHDims(1, 3, 6),
            _ => HHDims(1, 1, 4),
        };
    }
    let h1 = match case {
        OddAlphaZero => 4,
        DeltaZero | AlphaZero => 3,
        DiscZero => 2,
        Generic => 1,
    };
    let h2 = if n == 2 { h1 + 5 } else { h1 + n + 1 };
    HHDims(1, h1, h2)
}

pub fn hh_dims_closed_form(params: &DownUpParams) -> Result<HHDims, HochschildError> {
    Ok(closed_form_for(params.n(), classify_case(params)?))
}

/// `P̂^level` basis: generators in order, each followed by its block basis.
pub fn dual_space(alg: &Algebra, level: usize) -> Vec<DualBasisElement> {
    crate::resolution::generators(alg, level)
        .iter()
        .enumerate()
        .flat_map(|(k, h)| {
            alg.block_basis(h.source, h.target)
                .iter()
                .map(move |m| DualBasisElement { generator: k, monomial: m.clone() })
        })
        .collect()
}

/// Position of `θ_h^m` inside [`dual_space`].
fn dual_index(duals: &[DualBasisElement], generator: usize, monomial: &Path) -> Option<usize> {
    duals.iter().position(|d| d.generator == generator && &d.monomial == monomial)
}

/// The dual complex with its matrices `∂̂¹ : P̂⁰ → P̂¹` and `∂̂² : P̂¹ → P̂²`
/// (rows index the codomain).
pub struct DualComplex {
    pub duals: [Vec<DualBasisElement>; 3],
    pub hat_d1: Matrix,
    pub hat_d2: Matrix,
}

impl DualComplex {
    pub fn build(res: &Resolution<'_>) -> Self {
        let alg = res.algebra();
        let duals = [dual_space(alg, 0), dual_space(alg, 1), dual_space(alg, 2)];
        let hat_d1 = hat_matrix(res, &duals[0], &duals[1], 1);
        let hat_d2 = hat_matrix(res, &duals[1], &duals[2], 2);
        DualComplex { duals, hat_d1, hat_d2 }
    }

    pub fn hat_d(&self, level: usize) -> &Matrix {
        match level {
            1 => &self.hat_d1,
            2 => &self.hat_d2,
            _ => panic!("no dual differential of level {level}"),
        }
    }

    pub fn dim(&self, level: usize) -> usize {
        self.duals[level].len()
    }

    /// Rank–nullity bookkeeping on the dual complex.
    pub fn hh_dims(&self) -> HHDims {
        let r1 = self.hat_d1.rank();
        let r2 = self.hat_d2.rank();
        HHDims(self.dim(0) - r1, self.dim(1) - r2 - r1, self.dim(2) - r2)
    }
}

fn hat_matrix(
    res: &Resolution<'_>,
    domain: &[DualBasisElement],
    codomain: &[DualBasisElement],
    level: usize,
) -> Matrix {
    let alg = res.algebra();
    let gens = res.generators(level);
    let mut out = Matrix::zeros(codomain.len(), domain.len(), alg.field());
    let offsets: Vec<usize> =
        (0..gens.len()).map(|k| codomain.iter().position(|d| d.generator == k).unwrap_or(codomain.len())).collect();
    for (col, theta) in domain.iter().enumerate() {
        let value_at = alg.element(&theta.monomial);
        for (k, r) in gens.iter().enumerate() {
            let mut value = crate::quiver::AlgebraElement::zero(alg.field());
            for (t, c) in res.generator_image(level, k).iter() {
                if t.generator != theta.generator {
                    continue;
                }
                let um = alg.multiply(&alg.element(&t.left), &value_at);
                let umv = alg.multiply(&um, &alg.element(&t.right));
                value.add_scaled(&umv, c);
            }
            let coords = alg.coordinates(&value, r.source, r.target).expect("θ∘∂ lands in s(r)Λt(r)");
            for (i, c) in coords.into_iter().enumerate() {
                if !c.is_zero() {
                    out.set(offsets[k] + i, col, c);
                }
            }
        }
    }
    out
}

/// `∂̂^level` for the algebra of `params`.
pub fn hat_d(params: &DownUpParams, level: usize) -> Matrix {
    let alg = Algebra::new(params.clone());
    let res = Resolution::new(&alg);
    let complex = DualComplex::build(&res);
    complex.hat_d(level).clone()
}

/// The ordered bases ρ₁ of `P̂¹` and ρ₂ of `P̂²` in which `∂̂²` is block
/// diagonal, as `(generator, monomial)` pairs.
pub struct BlockBases {
    pub rho1: Vec<(usize, Path)>,
    pub rho2: Vec<(usize, Path)>,
    pub l1_rows: usize,
    pub l1_cols: usize,
    pub l2_size: usize,
}

pub fn block_bases(alg: &Algebra) -> Result<BlockBases, HochschildError> {
    let n = alg.n();
    if n < 2 {
        return Err(HochschildError::NeedsNAtLeast2(n));
    }
    let q = alg.quiver();
    let x = |i: usize| q.x(i);
    let y = |j: usize| q.y(j);
    let p = |arrows: Vec<Arrow>| Path::from_arrows(arrows).expect("composable");
    let xs = |from: usize, count: usize| -> Vec<Arrow> { (from..from + count).map(x).collect() };
    let arrow_gen = |a: Arrow| q.arrows().iter().position(|b| *b == a).expect("arrow of the quiver");
    let f = |i: usize| i - 1;
    let g = n;

    let mut rho1: Vec<(usize, Path)> = Vec::new();
    for a in q.arrows() {
        rho1.push((arrow_gen(*a), p(vec![*a])));
    }
    for j in (1..=n + 2).rev() {
        rho1.push((arrow_gen(y(j)), p(xs(j, n))));
    }

    let f_yxx = |i: usize| (f(i), p(vec![y(i), x(i + n), x(i + n + 1)]));
    let f_xyx = |i: usize| (f(i), p(vec![x(i), y(i + 1), x(i + n + 1)]));
    let mut rho2 = vec![(g, p(vec![y(1), y(n + 1), x(2 * n + 1)])), f_yxx(1), (g, p(vec![y(1), x(n + 1), y(n + 2)]))];
    for k in 2..=n {
        rho2.push(f_yxx(k));
        rho2.push(f_xyx(k - 1));
    }
    rho2.push(f_xyx(n));
    for i in (1..=n).rev() {
        rho2.push((f(i), p(xs(i, n + 2))));
    }
    let mut g_yx = vec![y(1)];
    g_yx.extend(xs(n + 1, n + 1));
    rho2.push((g, p(g_yx)));
    let mut g_xyx = vec![x(1), y(2)];
    g_xyx.extend(xs(n + 2, n));
    rho2.push((g, p(g_xyx)));
    rho2.push((g, p(xs(1, 2 * n + 1))));
    if n == 2 {
        for i in 1..=2 {
            rho2.push((f(i), p(vec![y(i), y(i + 2)])));
        }
    }

    Ok(BlockBases { rho1, rho2, l1_rows: 2 * n + 2, l1_cols: 3 * n + 3, l2_size: n + 2 })
}

/// `L₁`, `L₂` and the number of trailing zero rows of `∂̂²` in the bases ρ₁, ρ₂.
#[derive(Debug, Clone)]
pub struct Blocks {
    pub l1: Matrix,
    pub l2: Matrix,
    pub zero_rows: usize,
    /// `∂̂²` reordered into ρ₁ (columns) and ρ₂ (rows).
    pub m2: Matrix,
}

pub fn extract_blocks_from(alg: &Algebra, complex: &DualComplex) -> Result<Blocks, HochschildError> {
    let bases = block_bases(alg)?;
    let locate = |duals: &[DualBasisElement], list: &[(usize, Path)], what: &str| {
        list.iter()
            .map(|(g, m)| {
                dual_index(duals, *g, m)
                    .ok_or_else(|| HochschildError::BlockShape(format!("{what} element {m} missing from dual basis")))
            })
            .collect::<Result<Vec<_>, _>>()
    };
    let cols = locate(&complex.duals[1], &bases.rho1, "rho1")?;
    let rows = locate(&complex.duals[2], &bases.rho2, "rho2")?;
    if cols.len() != complex.dim(1) || rows.len() != complex.dim(2) {
        return Err(HochschildError::BlockShape(format!(
            "rho1/rho2 have {}/{} elements, dual spaces have {}/{}",
            cols.len(),
            rows.len(),
            complex.dim(1),
            complex.dim(2)
        )));
    }
    let m2 = complex.hat_d2.select(&rows, &cols);
    let (r1, c1, s2) = (bases.l1_rows, bases.l1_cols, bases.l2_size);
    for r in 0..m2.rows() {
        for c in 0..m2.cols() {
            let in_l1 = r < r1 && c < c1;
            let in_l2 = (r1..r1 + s2).contains(&r) && c >= c1;
            if !in_l1 && !in_l2 && !m2.get(r, c).is_zero() {
                return Err(HochschildError::BlockShape(format!("nonzero entry at ({r}, {c}) outside L1/L2")));
            }
        }
    }
    let l1 = m2.select(&(0..r1).collect::<Vec<_>>(), &(0..c1).collect::<Vec<_>>());
    let l2 = m2.select(&(r1..r1 + s2).collect::<Vec<_>>(), &(c1..c1 + s2).collect::<Vec<_>>());
    Ok(Blocks { l1, l2, zero_rows: m2.rows() - r1 - s2, m2 })
}

pub fn extract_blocks(params: &DownUpParams) -> Result<Blocks, HochschildError> {
    let alg = Algebra::new(params.clone());
    let res = Resolution::new(&alg);
    let complex = DualComplex::build(&res);
    extract_blocks_from(&alg, &complex)
}

/// `L₂` written down from the recurrence: a band `(1, −α, −β)` in rows
/// `1..n`, then the two rows coming from `g`.
pub fn build_l2_closed_form(params: &DownUpParams) -> Result<Matrix, HochschildError> {
    let n = params.n();
    if n < 2 {
        return Err(HochschildError::NeedsNAtLeast2(n));
    }
    let field = params.field();
    let (alpha, beta) = (params.alpha(), params.beta());
    let seq = sequence_ab(params);
    let size = n + 2;
    let mut m = Matrix::zeros(size, size, field);
    for r in 0..n {
        m.set(r, r, QuadScalar::one(field));
        m.set(r, r + 1, -alpha);
        m.set(r, r + 2, -beta);
    }
    m.set(n, 0, -alpha);
    m.set(n, 1, -beta);
    m.set(n, n, seq.b(n + 1).clone());
    m.set(n, n + 1, -(&(beta * seq.b(n)) + &(alpha * seq.b(n + 1))));
    m.set(n + 1, 0, QuadScalar::one(field));
    m.set(n + 1, n, seq.a(n + 1).clone());
    m.set(n + 1, n + 1, -(&(beta * seq.a(n)) + &(alpha * seq.a(n + 1))));
    Ok(m)
}

pub fn rank_l1(params: &DownUpParams) -> Result<usize, HochschildError> {
    Ok(extract_blocks(params)?.l1.rank())
}

pub fn rank_l2(params: &DownUpParams) -> Result<usize, HochschildError> {
    Ok(extract_blocks(params)?.l2.rank())
}

/// Brute-force dimensions from the full `∂̂` matrices.
pub fn hh_dims_bruteforce(params: &DownUpParams) -> Result<HHDims, HochschildError> {
    let alg = Algebra::new(params.clone());
    let res = Resolution::new(&alg);
    let complex = DualComplex::build(&res);
    if !complex.hat_d2.multiply(&complex.hat_d1)?.is_zero() {
        return Err(HochschildError::NotAComplex);
    }
    Ok(complex.hh_dims())
}

/// Everything known about one parameter point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HHReport {
    pub n: usize,
    pub alpha: QuadScalar,
    pub beta: QuadScalar,
    pub d: u64,
    pub delta: QuadScalar,
    pub disc: QuadScalar,
    pub case: CaseLabel,
    pub brute: HHDims,
    pub closed: HHDims,
    pub agree: bool,
    #[serde(rename = "rankL1")]
    pub rank_l1: Option<usize>,
    #[serde(rename = "rankL2")]
    pub rank_l2: Option<usize>,
}

pub fn compute(params: &DownUpParams) -> Result<HHReport, HochschildError> {
    let alg = Algebra::new(params.clone());
    let res = Resolution::new(&alg);
    let complex = DualComplex::build(&res);
    if !complex.hat_d2.multiply(&complex.hat_d1)?.is_zero() {
        return Err(HochschildError::NotAComplex);
    }
    let brute = complex.hh_dims();
    let case = classify_case(params)?;
    let closed = closed_form_for(params.n(), case);
    let (rank_l1, rank_l2) = if params.n() >= 2 {
        let blocks = extract_blocks_from(&alg, &complex)?;
        (Some(blocks.l1.rank()), Some(blocks.l2.rank()))
    } else {
        (None, None)
    };
    let seq = sequence_ab(params);
    Ok(HHReport {
        n: params.n(),
        alpha: params.alpha().clone(),
        beta: params.beta().clone(),
        d: params.field().d(),
        delta: seq.delta,
        disc: seq.disc,
        case,
        brute,
        closed,
        agree: brute == closed,
        rank_l1,
        rank_l2,
    })
}

/// Best rational approximation with denominator at most `max_den`.
fn approximate(x: f64, max_den: i64) -> (i64, i64) {
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    let mut v = x;
    for _ in 0..64 {
        let a = v.floor();
        let (p2, q2) = (a as i64 * p1 + p0, a as i64 * q1 + q0);
        if q2 > max_den {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = v - a;
        if frac.abs() < 1e-12 {
            break;
        }
        v = 1.0 / frac;
    }
    (p1, q1)
}

fn squarefree_split(mut m: u64) -> (u64, u64) {
    // m = square² · free
    let (mut square, mut free) = (1u64, 1u64);
    let mut p = 2u64;
    while p * p <= m {
        while m.is_multiple_of(p * p) {
            m /= p * p;
            square *= p;
        }
        if m.is_multiple_of(p) {
            m /= p;
            free *= p;
        }
        p += 1;
    }
    (square, free * m)
}

/// A parameter point `(α, β) = (1, t)` with `δ_n = 0`, where `t` lies in ℚ or
/// some ℚ(√d). Candidates come from the real roots of `δ_n(1, t)`; each one is
/// certified by exact evaluation.
pub fn find_delta_zero(n: usize) -> Option<DownUpParams> {
    if n < 2 {
        return None;
    }
    let roots: Vec<f64> = (1..=n / 2)
        .map(|k| {
            let c = (k as f64 * std::f64::consts::PI / (n as f64 + 1.0)).cos();
            -1.0 / (4.0 * c * c)
        })
        .collect();
    let check = |alpha: QuadScalar, beta: QuadScalar| {
        let params = DownUpParams::new(n, alpha, beta).ok()?;
        sequence_ab(&params).delta.is_zero().then_some(params)
    };

    for &t in &roots {
        let (p, q) = approximate(t, 100_000);
        let field = Field::Rational;
        if let Some(params) = check(QuadScalar::one(field), QuadScalar::from_ratio(p, q, field)) {
            return Some(params);
        }
    }

    let mut best: Option<(u64, DownUpParams)> = None;
    for (i, &t1) in roots.iter().enumerate() {
        for &t2 in &roots[i + 1..] {
            let mid = (t1 + t2) / 2.0;
            let half_gap_sq = ((t1 - t2) / 2.0).powi(2);
            let (mp, mq) = approximate(mid, 100_000);
            let (gp, gq) = approximate(half_gap_sq, 100_000);
            if gp <= 0 {
                continue;
            }
            // half_gap² = gp/gq = (gp·gq)/gq² = square²·d/gq²
            let (square, d) = squarefree_split((gp * gq) as u64);
            if d < 2 {
                continue;
            }
            let Ok(field) = Field::new(d) else { continue };
            let a = crate::scalar::Rational::new(mp.into(), mq.into());
            let b = crate::scalar::Rational::new((square as i64).into(), gq.into());
            for sign in [1i64, -1] {
                let b_signed = &b * crate::scalar::Rational::from_integer(sign.into());
                let Ok(beta) = QuadScalar::new(a.clone(), b_signed, field) else { continue };
                if let Some(params) = check(QuadScalar::one(field), beta) {
                    if best.as_ref().is_none_or(|(bd, _)| d < *bd) {
                        best = Some((d, params));
                    }
                }
            }
        }
    }
    best.map(|(_, p)| p)
}

/// Representative parameters for `case` at weight `n`, or `None` when the
/// branch cannot be reached with the available fields.
pub fn representative(n: usize, case: CaseLabel) -> Option<DownUpParams> {
    use CaseLabel::*;
    if !CaseLabel::branches(n).contains(&case) {
        return None;
    }
    let rational = |a: (i64, i64), b: (i64, i64)| DownUpParams::rational(n, a, b).ok();
    match case {
        Generic => rational((1, 1), (1, 1)),
        DiscZero => rational((2, 1), (-1, 1)),
        OddAlphaZero | AlphaZero => rational((0, 1), (1, 1)),
        DeltaZero => match n {
            2 | 5 => rational((1, 1), (-1, 1)),
            3 => rational((1, 1), (-1, 2)),
            _ => find_delta_zero(n),
        },
    }
}

/// One row of the case table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: usize,
    pub case: CaseLabel,
    pub exercised: bool,
    pub report: Option<HHReport>,
    pub error: Option<String>,
}

impl SweepRow {
    pub fn agrees(&self) -> bool {
        self.report.as_ref().is_some_and(|r| r.agree && r.case == self.case)
    }
}

/// Every reachable branch for `n` in `range`, computed in parallel and
/// returned ordered by `(n, branch)`.
pub fn sweep(n_min: usize, n_max: usize) -> Vec<SweepRow> {
    let jobs: Vec<(usize, CaseLabel)> =
        (n_min.max(1)..=n_max).flat_map(|n| CaseLabel::branches(n).iter().map(move |&c| (n, c))).collect();
    jobs.par_iter()
        .map(|&(n, case)| match representative(n, case) {
            None => SweepRow { n, case, exercised: false, report: None, error: None },
            Some(params) => match compute(&params) {
                Ok(report) => SweepRow { n, case, exercised: true, report: Some(report), error: None },
                Err(e) => SweepRow { n, case, exercised: true, report: None, error: Some(e.to_string()) },
            },
        })
        .collect()
}
