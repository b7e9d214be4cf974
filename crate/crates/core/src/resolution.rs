//! The minimal projective bimodule resolution
//! `0 → P² → P¹ → P⁰ → Λ → 0` with `P^i = ⊕_{h ∈ G^i} Λ s(h) ⊗ t(h) Λ`.
//!
//! `G⁰` are the vertices, `G¹` the arrows and `G²` the relations. A basis of
//! `P^i` consists of triples `u ⊗ h ⊗ v` with `u` a normal path ending at
//! `s(h)` and `v` a normal path starting at `t(h)`.
//!
//! Bimodule maps preserve the pair (source of `u`, target of `v`), so every
//! differential splits into blocks indexed by vertex pairs `(a, b)`. The
//! flattened complex is stored block by block; [`FlatComplex::assemble`]
//! rebuilds the full matrices when they are wanted.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::linalg::Matrix;
use crate::quiver::{Algebra, AlgebraElement, Arrow, Combination, DownUpParams, Path};
use crate::scalar::{Field, QuadScalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorLabel {
    Vertex(usize),
    Arrow(Arrow),
    Relation(usize),
}

/// An element `h` of `G^level`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BimoduleGenerator {
    pub level: usize,
    pub label: GeneratorLabel,
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// `G^level` in its listed order.
pub fn generators(alg: &Algebra, level: usize) -> Vec<BimoduleGenerator> {
    match level {
        0 => alg
            .quiver()
            .vertices()
            .map(|v| BimoduleGenerator {
                level,
                label: GeneratorLabel::Vertex(v),
                name: format!("e{v}"),
                source: v,
                target: v,
            })
            .collect(),
        1 => alg
            .quiver()
            .arrows()
            .iter()
            .map(|a| BimoduleGenerator {
                level,
                label: GeneratorLabel::Arrow(*a),
                name: a.to_string(),
                source: a.source,
                target: a.target,
            })
            .collect(),
        2 => alg
            .relations()
            .iter()
            .enumerate()
            .map(|(k, r)| BimoduleGenerator {
                level,
                label: GeneratorLabel::Relation(k),
                name: r.name.clone(),
                source: r.source,
                target: r.target,
            })
            .collect(),
        _ => Vec::new(),
    }
}

/// The basis element `left ⊗ h ⊗ right` where `h` is generator number
/// `generator` of the relevant level.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub generator: usize,
    pub left: Path,
    pub right: Path,
}

impl Triple {
    /// `deg u + deg v`.
    pub fn weight(&self) -> usize {
        self.left.degree() + self.right.degree()
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (x) [{}] (x) {}", self.left, self.generator, self.right)
    }
}

/// An element of `P^level`.
#[derive(Clone, PartialEq, Eq)]
pub struct BimoduleElement {
    pub level: usize,
    terms: Combination<Triple>,
}

impl BimoduleElement {
    pub fn zero(level: usize, field: Field) -> Self {
        BimoduleElement { level, terms: Combination::zero(field) }
    }

    pub fn basis(level: usize, triple: Triple, field: Field) -> Self {
        BimoduleElement { level, terms: Combination::single(triple, QuadScalar::one(field)) }
    }

    pub fn add_term(&mut self, triple: Triple, coeff: QuadScalar) {
        self.terms.add_term(triple, coeff);
    }

    pub fn add_scaled(&mut self, other: &BimoduleElement, factor: &QuadScalar) {
        self.terms.add_scaled(&other.terms, factor);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Triple, &QuadScalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn coefficient(&self, triple: &Triple) -> QuadScalar {
        self.terms.coefficient(triple)
    }

    /// Adds `coeff · (l ⊗ h ⊗ r)` for Λ-elements `l`, `r`, expanded in basis
    /// triples.
    pub fn add_tensor(&mut self, l: &AlgebraElement, generator: usize, r: &AlgebraElement, coeff: &QuadScalar) {
        for (lp, lc) in l.iter() {
            for (rp, rc) in r.iter() {
                let c = &(coeff * lc) * rc;
                self.add_term(Triple { generator, left: lp.clone(), right: rp.clone() }, c);
            }
        }
    }

    /// `a · self · b`, computed in Λ and re-expanded.
    pub fn act(&self, alg: &Algebra, a: &AlgebraElement, b: &AlgebraElement) -> BimoduleElement {
        let mut out = BimoduleElement::zero(self.level, alg.field());
        for (t, c) in self.iter() {
            let l = alg.multiply(a, &alg.element(&t.left));
            let r = alg.multiply(&alg.element(&t.right), b);
            out.add_tensor(&l, t.generator, &r, c);
        }
        out
    }
}

impl fmt::Debug for BimoduleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}: {}", self.level, self.terms)
    }
}

/// Generators of every level together with the images of `∂¹` and `∂²` on
/// them.
pub struct Resolution<'a> {
    alg: &'a Algebra,
    gens: [Vec<BimoduleGenerator>; 3],
    d1_images: Vec<BimoduleElement>,
    d2_images: Vec<BimoduleElement>,
    arrow_index: HashMap<Arrow, usize>,
}

impl<'a> Resolution<'a> {
    pub fn new(alg: &'a Algebra) -> Self {
        let gens = [generators(alg, 0), generators(alg, 1), generators(alg, 2)];
        let arrow_index: HashMap<Arrow, usize> =
            alg.quiver().arrows().iter().enumerate().map(|(k, a)| (*a, k)).collect();
        let field = alg.field();
        let one = QuadScalar::one(field);

        // ∂¹(h) = e_s ⊗ e_s ⊗ a − a ⊗ e_t ⊗ e_t
        let d1_images = alg
            .quiver()
            .arrows()
            .iter()
            .map(|a| {
                let mut img = BimoduleElement::zero(0, field);
                img.add_tensor(&alg.vertex(a.source), a.source - 1, &alg.arrow(*a), &one);
                img.add_tensor(&alg.arrow(*a), a.target - 1, &alg.vertex(a.target), &-&one);
                img
            })
            .collect();

        // ∂²(r) = Σ c · Σ_k (a_1⋯a_{k−1}) ⊗ a_k ⊗ (a_{k+1}⋯a_m) over the terms c·a_1⋯a_m of r
        let d2_images = alg
            .relations()
            .iter()
            .map(|r| {
                let mut img = BimoduleElement::zero(1, field);
                for (c, p) in &r.terms {
                    for k in 0..p.len() {
                        let left = alg.element(&p.slice(0, k));
                        let right = alg.element(&p.slice(k + 1, p.len()));
                        img.add_tensor(&left, arrow_index[&p.arrows()[k]], &right, c);
                    }
                }
                img
            })
            .collect();

        Resolution { alg, gens, d1_images, d2_images, arrow_index }
    }

    pub fn algebra(&self) -> &Algebra {
        self.alg
    }

    pub fn generators(&self, level: usize) -> &[BimoduleGenerator] {
        &self.gens[level]
    }

    pub fn arrow_generator(&self, a: &Arrow) -> Option<usize> {
        self.arrow_index.get(a).copied()
    }

    /// `∂^level(s(h) ⊗ t(h))` for generator `h` of `G^level`, `level ∈ {1, 2}`.
    pub fn generator_image(&self, level: usize, h: usize) -> &BimoduleElement {
        match level {
            1 => &self.d1_images[h],
            2 => &self.d2_images[h],
            _ => panic!("no differential on generators of level {level}"),
        }
    }

    /// `∂^level` applied to an element of `P^level`.
    pub fn apply(&self, elem: &BimoduleElement) -> BimoduleElement {
        let mut out = BimoduleElement::zero(elem.level - 1, self.alg.field());
        for (t, c) in elem.iter() {
            let img = self.generator_image(elem.level, t.generator);
            let shifted = img.act(self.alg, &self.alg.element(&t.left), &self.alg.element(&t.right));
            out.add_scaled(&shifted, c);
        }
        out
    }

    /// The multiplication map `∂⁰ : P⁰ → Λ`.
    pub fn augment(&self, elem: &BimoduleElement) -> AlgebraElement {
        assert_eq!(elem.level, 0, "the multiplication map is defined on P0");
        let mut out = AlgebraElement::zero(self.alg.field());
        for (t, c) in elem.iter() {
            let prod = self.alg.multiply(&self.alg.element(&t.left), &self.alg.element(&t.right));
            out.add_scaled(&prod, c);
        }
        out
    }

    /// Basis triples of `P^level` whose outer vertices are `(a, b)`, in
    /// generator order, then left path, then right path.
    pub fn block_triples(&self, level: usize, a: usize, b: usize) -> Vec<Triple> {
        let mut out = Vec::new();
        for (k, h) in self.gens[level].iter().enumerate() {
            if h.source < a || h.target > b {
                continue;
            }
            for u in self.alg.block_basis(a, h.source) {
                for v in self.alg.block_basis(h.target, b) {
                    out.push(Triple { generator: k, left: u.clone(), right: v.clone() });
                }
            }
        }
        out
    }

    /// `dim_k P^level`.
    pub fn dim(&self, level: usize) -> usize {
        let nv = self.alg.quiver().num_vertices();
        self.gens[level]
            .iter()
            .map(|h| {
                let left: usize = (1..=h.source).map(|v| self.alg.block_dim(v, h.source)).sum();
                let right: usize = (h.target..=nv).map(|w| self.alg.block_dim(h.target, w)).sum();
                left * right
            })
            .sum()
    }
}

/// One vertex-pair block of the flattened complex. Matrices use rows for
/// the codomain basis and columns for the domain basis.
#[derive(Debug, Clone)]
pub struct ComplexBlock {
    pub left: usize,
    pub right: usize,
    pub bases: [Vec<Triple>; 3],
    pub lambda_basis: Vec<Path>,
    pub d0: Matrix,
    pub d1: Matrix,
    pub d2: Matrix,
}

fn image_matrix(
    field: Field,
    rows: usize,
    domain: &[Triple],
    image: impl Fn(&Triple) -> Vec<(usize, QuadScalar)>,
) -> Matrix {
    let mut m = Matrix::zeros(rows, domain.len(), field);
    for (col, t) in domain.iter().enumerate() {
        for (row, c) in image(t) {
            m.add_to(row, col, &c);
        }
    }
    m
}

impl ComplexBlock {
    fn build(res: &Resolution<'_>, a: usize, b: usize) -> Self {
        let alg = res.algebra();
        let field = alg.field();
        let bases = [res.block_triples(0, a, b), res.block_triples(1, a, b), res.block_triples(2, a, b)];
        let lambda_basis = alg.block_basis(a, b).to_vec();
        let index = |level: usize| -> HashMap<&Triple, usize> {
            bases[level].iter().enumerate().map(|(k, t)| (t, k)).collect()
        };
        let (idx0, idx1) = (index(0), index(1));

        let d0 = image_matrix(field, lambda_basis.len(), &bases[0], |t| {
            let img = res.augment(&BimoduleElement::basis(0, t.clone(), field));
            img.iter().map(|(p, c)| (alg.basis_position(p).expect("normal path"), c.clone())).collect()
        });
        let d1 = image_matrix(field, bases[0].len(), &bases[1], |t| {
            let img = res.apply(&BimoduleElement::basis(1, t.clone(), field));
            img.iter().map(|(s, c)| (idx0[s], c.clone())).collect()
        });
        let d2 = image_matrix(field, bases[1].len(), &bases[2], |t| {
            let img = res.apply(&BimoduleElement::basis(2, t.clone(), field));
            img.iter().map(|(s, c)| (idx1[s], c.clone())).collect()
        });
        ComplexBlock { left: a, right: b, bases, lambda_basis, d0, d1, d2 }
    }
}

/// The three differentials flattened to exact scalar matrices, block by block.
#[derive(Debug, Clone)]
pub struct FlatComplex {
    pub field: Field,
    pub blocks: Vec<ComplexBlock>,
}

impl FlatComplex {
    pub fn build(res: &Resolution<'_>) -> Self {
        let nv = res.algebra().quiver().num_vertices();
        let pairs: Vec<(usize, usize)> = (1..=nv).flat_map(|a| (a..=nv).map(move |b| (a, b))).collect();
        let blocks = pairs.par_iter().map(|&(a, b)| ComplexBlock::build(res, a, b)).collect();
        FlatComplex { field: res.algebra().field(), blocks }
    }

    pub fn dim(&self, level: usize) -> usize {
        self.blocks.iter().map(|b| b.bases[level].len()).sum()
    }

    pub fn lambda_dim(&self) -> usize {
        self.blocks.iter().map(|b| b.lambda_basis.len()).sum()
    }

    /// The full matrix of `∂^level` (level 0 maps to Λ) over the
    /// concatenated block bases.
    pub fn assemble(&self, level: usize) -> Matrix {
        let pick = |b: &ComplexBlock| match level {
            0 => b.d0.clone(),
            1 => b.d1.clone(),
            2 => b.d2.clone(),
            _ => panic!("no differential of level {level}"),
        };
        let (rows, cols) = self.blocks.iter().map(pick).fold((0, 0), |(r, c), m| (r + m.rows(), c + m.cols()));
        let mut out = Matrix::zeros(rows, cols, self.field);
        let (mut r0, mut c0) = (0, 0);
        for b in &self.blocks {
            let m = pick(b);
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    if !m.get(r, c).is_zero() {
                        out.set(r0 + r, c0 + c, m.get(r, c).clone());
                    }
                }
            }
            r0 += m.rows();
            c0 += m.cols();
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionDims {
    #[serde(rename = "P0")]
    pub p0: usize,
    #[serde(rename = "P1")]
    pub p1: usize,
    #[serde(rename = "P2")]
    pub p2: usize,
    #[serde(rename = "Lambda")]
    pub lambda: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionRanks {
    #[serde(rename = "D0")]
    pub d0: usize,
    #[serde(rename = "D1")]
    pub d1: usize,
    #[serde(rename = "D2")]
    pub d2: usize,
}

/// Outcome of [`verify_resolution`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionReport {
    pub n: usize,
    pub alpha: QuadScalar,
    pub beta: QuadScalar,
    pub d: u64,
    pub dims: ResolutionDims,
    pub ranks: ResolutionRanks,
    /// `∂⁰∂¹ = 0` and `∂¹∂² = 0`.
    pub complex: bool,
    /// `complex`, plus exactness in every degree and injectivity of `∂²`.
    pub exact: bool,
    /// `dim P⁰ − dim P¹ + dim P² = dim Λ`.
    pub euler: bool,
    pub minimal: bool,
    pub failures: Vec<String>,
}

impl ResolutionReport {
    pub fn ok(&self) -> bool {
        self.exact && self.euler && self.minimal
    }
}

/// Builds the resolution for `params` and audits it with exact ranks.
pub fn verify_resolution(params: &DownUpParams) -> ResolutionReport {
    let alg = Algebra::new(params.clone());
    let res = Resolution::new(&alg);
    let flat = FlatComplex::build(&res);
    let mut failures = Vec::new();
    let mut complex = true;
    let mut exact_ranks = true;
    let mut ranks = ResolutionRanks { d0: 0, d1: 0, d2: 0 };

    let block_ranks: Vec<_> = flat
        .blocks
        .par_iter()
        .map(|b| {
            let c01 = b.d0.multiply(&b.d1).map(|m| m.is_zero()).unwrap_or(false);
            let c12 = b.d1.multiply(&b.d2).map(|m| m.is_zero()).unwrap_or(false);
            (b.left, b.right, c01, c12, b.d0.rank(), b.d1.rank(), b.d2.rank(), b)
        })
        .collect();

    for (a, bv, c01, c12, r0, r1, r2, b) in block_ranks {
        ranks.d0 += r0;
        ranks.d1 += r1;
        ranks.d2 += r2;
        if !c01 {
            complex = false;
            failures.push(format!("block ({a},{bv}): D0*D1 != 0"));
        }
        if !c12 {
            complex = false;
            failures.push(format!("block ({a},{bv}): D1*D2 != 0"));
        }
        let checks = [
            (r0 == b.lambda_basis.len(), format!("rank D0 = {r0} but dim Lambda = {}", b.lambda_basis.len())),
            (b.d0.cols() - r0 == r1, format!("ker D0 = {} but rank D1 = {r1}", b.d0.cols() - r0)),
            (b.d1.cols() - r1 == r2, format!("ker D1 = {} but rank D2 = {r2}", b.d1.cols() - r1)),
            (b.d2.cols() == r2, format!("ker D2 = {}", b.d2.cols() - r2)),
        ];
        for (ok, msg) in checks {
            if !ok {
                exact_ranks = false;
                failures.push(format!("block ({a},{bv}): {msg}"));
            }
        }
    }

    let dims = ResolutionDims { p0: flat.dim(0), p1: flat.dim(1), p2: flat.dim(2), lambda: flat.lambda_dim() };
    let euler = dims.p0 + dims.p2 == dims.lambda + dims.p1;
    if !euler {
        failures.push(format!("Euler identity: {} - {} + {} != {}", dims.p0, dims.p1, dims.p2, dims.lambda));
    }

    let mut minimal = true;
    for level in 1..=2 {
        for (h, g) in res.generators(level).iter().enumerate() {
            if let Some((t, _)) = res.generator_image(level, h).iter().find(|(t, _)| t.weight() == 0) {
                minimal = false;
                failures.push(format!("generator {} has a degree-0 coefficient at {t}", g.name));
            }
        }
    }

    ResolutionReport {
        n: params.n(),
        alpha: params.alpha().clone(),
        beta: params.beta().clone(),
        d: params.field().d(),
        dims,
        ranks,
        complex,
        exact: complex && exact_ranks,
        euler,
        minimal,
        failures,
    }
}
