//! The Beilinson quiver of `A(α, β)` with `deg x = 1`, `deg y = n`, and the
//! bound quiver algebra Λ it presents.
//!
//! Vertices are `1..=2n+2`. The arrow `x_i` runs `i → i+1` and `y_j` runs
//! `j → j+n`, so the weighted degree of a path is just `target − source`.
//! Paths compose left to right along arrows.
//!
//! Λ is realised through a rewriting system whose leading words are
//! `x_i x_{i+1} y_{i+2}` (from `f_i`) and `x_1 y_2 y_{n+2}` (from `g`). Normal
//! paths are those containing neither word.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::linalg::Matrix;
use crate::scalar::{Field, QuadScalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("n must be at least 1")]
    ZeroWeight,
    #[error("β = 0 is not allowed: A(α, β) is AS-regular if and only if β ≠ 0")]
    BetaZero,
    #[error("alpha and beta live in different fields")]
    FieldMismatch,
    #[error("malformed path: {0}")]
    MalformedPath(String),
    #[error("vertex {0} outside 1..={1}")]
    BadVertex(usize, usize),
    #[error("element has support outside block ({0}, {1})")]
    OutsideBlock(usize, usize),
}

/// Parameters of a graded down-up algebra with `(deg x, deg y) = (1, n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DownUpParams {
    n: usize,
    alpha: QuadScalar,
    beta: QuadScalar,
}

impl DownUpParams {
    pub fn new(n: usize, alpha: QuadScalar, beta: QuadScalar) -> Result<Self, QuiverError> {
        if n == 0 {
            return Err(QuiverError::ZeroWeight);
        }
        if alpha.field() != beta.field() {
            return Err(QuiverError::FieldMismatch);
        }
        if beta.is_zero() {
            return Err(QuiverError::BetaZero);
        }
        Ok(DownUpParams { n, alpha, beta })
    }

    /// Rational parameters `α = alpha.0/alpha.1`, `β = beta.0/beta.1`.
    pub fn rational(n: usize, alpha: (i64, i64), beta: (i64, i64)) -> Result<Self, QuiverError> {
        let q = Field::Rational;
        Self::new(n, QuadScalar::from_ratio(alpha.0, alpha.1, q), QuadScalar::from_ratio(beta.0, beta.1, q))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> &QuadScalar {
        &self.alpha
    }

    pub fn beta(&self) -> &QuadScalar {
        &self.beta
    }

    pub fn field(&self) -> Field {
        self.alpha.field()
    }

    /// The Gorenstein parameter `2(deg x + deg y)`, also the vertex count.
    pub fn ell(&self) -> usize {
        2 * self.n + 2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArrowKind {
    X,
    Y,
}

/// An arrow `x_index` or `y_index`.
///
/// The derived order compares kinds first (X before Y), which makes the
/// derived order on [`Path`] the degree-then-lexicographic basis order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    pub kind: ArrowKind,
    pub index: usize,
    pub source: usize,
    pub target: usize,
}

impl Arrow {
    pub fn x(i: usize) -> Self {
        Arrow { kind: ArrowKind::X, index: i, source: i, target: i + 1 }
    }

    pub fn y(j: usize, n: usize) -> Self {
        Arrow { kind: ArrowKind::Y, index: j, source: j, target: j + n }
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ArrowKind::X => write!(f, "x{}", self.index),
            ArrowKind::Y => write!(f, "y{}", self.index),
        }
    }
}

/// A path in the quiver; an empty arrow list is the stationary path `e_source`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    source: usize,
    arrows: Vec<Arrow>,
}

impl Path {
    pub fn stationary(v: usize) -> Self {
        Path { source: v, arrows: Vec::new() }
    }

    /// Builds a path from composable arrows.
    pub fn from_arrows(arrows: Vec<Arrow>) -> Result<Self, QuiverError> {
        let first = arrows.first().ok_or_else(|| QuiverError::MalformedPath("empty arrow list".into()))?;
        for w in arrows.windows(2) {
            if w[0].target != w[1].source {
                return Err(QuiverError::MalformedPath(format!("{} does not compose with {}", w[0], w[1])));
            }
        }
        Ok(Path { source: first.source, arrows })
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.arrows.last().map_or(self.source, |a| a.target)
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    /// Same as [`Path::is_stationary`].
    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_stationary(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Weighted degree `#x + n·#y`.
    pub fn degree(&self) -> usize {
        self.target() - self.source
    }

    pub fn count(&self, kind: ArrowKind) -> usize {
        self.arrows.iter().filter(|a| a.kind == kind).count()
    }

    /// Concatenation, or `None` when the paths do not compose.
    pub fn compose(&self, other: &Path) -> Option<Path> {
        if self.target() != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path { source: self.source, arrows })
    }

    /// The subpath on arrows `range`; empty ranges give the stationary path at
    /// the appropriate vertex.
    pub fn slice(&self, start: usize, end: usize) -> Path {
        if start == end {
            let v = if start == 0 { self.source } else { self.arrows[start - 1].target };
            return Path::stationary(v);
        }
        Path { source: self.arrows[start].source, arrows: self.arrows[start..end].to_vec() }
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arrows.is_empty() {
            return write!(f, "e{}", self.source);
        }
        for (i, a) in self.arrows.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// A finite linear combination with exact coefficients and no zero terms.
#[derive(Clone, PartialEq, Eq)]
pub struct Combination<K: Ord> {
    field: Field,
    terms: BTreeMap<K, QuadScalar>,
}

impl<K: Ord + Clone> Combination<K> {
    pub fn zero(field: Field) -> Self {
        Combination { field, terms: BTreeMap::new() }
    }

    pub fn single(key: K, coeff: QuadScalar) -> Self {
        let mut c = Self::zero(coeff.field());
        c.add_term(key, coeff);
        c
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn add_term(&mut self, key: K, coeff: QuadScalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(existing) => {
                let sum = &*existing + &coeff;
                if sum.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(key, coeff);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, factor: &QuadScalar) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c * factor);
        }
    }

    pub fn scaled(&self, factor: &QuadScalar) -> Self {
        let mut out = Self::zero(self.field);
        out.add_scaled(self, factor);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &QuadScalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, key: &K) -> QuadScalar {
        self.terms.get(key).cloned().unwrap_or_else(|| QuadScalar::zero(self.field))
    }
}

impl<K: Ord + fmt::Display> fmt::Display for Combination<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{k}")?;
            } else {
                write!(f, "({c})*{k}")?;
            }
        }
        Ok(())
    }
}

impl<K: Ord + fmt::Display> fmt::Debug for Combination<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A combination of arbitrary paths in the free path algebra.
pub type FreeElement = Combination<Path>;

/// An element of Λ: a combination of normal paths only.
pub type AlgebraElement = Combination<Path>;

/// One of the defining relations `f_i` or `g`.
#[derive(Debug, Clone)]
pub struct Relation {
    pub name: String,
    pub source: usize,
    pub target: usize,
    /// `leading − β·(…) − α·(…)` with the leading path first.
    pub terms: Vec<(QuadScalar, Path)>,
}

impl Relation {
    pub fn leading(&self) -> &Path {
        &self.terms[0].1
    }

    pub fn as_element(&self, field: Field) -> FreeElement {
        let mut e = FreeElement::zero(field);
        for (c, p) in &self.terms {
            e.add_term(p.clone(), c.clone());
        }
        e
    }
}

/// The arrows of the Beilinson quiver, in the order `x_1…x_{2n+1}, y_1…y_{n+2}`.
#[derive(Debug, Clone)]
pub struct Quiver {
    n: usize,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(n: usize) -> Self {
        let mut arrows: Vec<Arrow> = (1..=2 * n + 1).map(Arrow::x).collect();
        arrows.extend((1..=n + 2).map(|j| Arrow::y(j, n)));
        Quiver { n, arrows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_vertices(&self) -> usize {
        2 * self.n + 2
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.num_vertices()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn x(&self, i: usize) -> Arrow {
        assert!((1..=2 * self.n + 1).contains(&i), "no arrow x{i}");
        Arrow::x(i)
    }

    pub fn y(&self, j: usize) -> Arrow {
        assert!((1..=self.n + 2).contains(&j), "no arrow y{j}");
        Arrow::y(j, self.n)
    }

    pub fn x_count(&self) -> usize {
        self.arrows.iter().filter(|a| a.kind == ArrowKind::X).count()
    }

    pub fn y_count(&self) -> usize {
        self.arrows.iter().filter(|a| a.kind == ArrowKind::Y).count()
    }

    pub fn is_acyclic(&self) -> bool {
        self.arrows.iter().all(|a| a.source < a.target)
    }

    /// Every path `i → j` of the free path algebra, sorted.
    pub fn all_paths(&self, i: usize, j: usize) -> Vec<Path> {
        let mut out = Vec::new();
        let mut stack = vec![Path::stationary(i)];
        while let Some(p) = stack.pop() {
            let t = p.target();
            if t == j {
                out.push(p.clone());
            }
            if t >= j {
                continue;
            }
            for a in self.arrows.iter().filter(|a| a.source == t && a.target <= j) {
                let mut arrows = p.arrows.clone();
                arrows.push(*a);
                stack.push(Path { source: i, arrows });
            }
        }
        out.sort();
        out
    }

    /// Parses `x1.x2.y3` or `e4`.
    pub fn parse_path(&self, text: &str) -> Result<Path, QuiverError> {
        let bad = || QuiverError::MalformedPath(text.to_string());
        if let Some(v) = text.strip_prefix('e') {
            let v: usize = v.parse().map_err(|_| bad())?;
            if !self.vertices().contains(&v) {
                return Err(QuiverError::BadVertex(v, self.num_vertices()));
            }
            return Ok(Path::stationary(v));
        }
        let arrows = text
            .split('.')
            .map(|tok| {
                let (kind, idx) = tok.split_at(tok.len().min(1));
                let idx: usize = idx.parse().map_err(|_| bad())?;
                match kind {
                    "x" if (1..=2 * self.n + 1).contains(&idx) => Ok(Arrow::x(idx)),
                    "y" if (1..=self.n + 2).contains(&idx) => Ok(Arrow::y(idx, self.n)),
                    _ => Err(bad()),
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Path::from_arrows(arrows)
    }
}

/// `f_1, …, f_n, g` as elements of the free path algebra.
pub fn relations(params: &DownUpParams) -> Vec<Relation> {
    let n = params.n();
    let field = params.field();
    let q = Quiver::new(n);
    let one = QuadScalar::one(field);
    let neg_beta = -params.beta();
    let neg_alpha = -params.alpha();
    let path = |arrows: Vec<Arrow>| Path::from_arrows(arrows).expect("relation paths compose");

    let mut out = Vec::with_capacity(n + 1);
    for i in 1..=n {
        out.push(Relation {
            name: format!("f{i}"),
            source: i,
            target: i + n + 2,
            terms: vec![
                (one.clone(), path(vec![q.x(i), q.x(i + 1), q.y(i + 2)])),
                (neg_beta.clone(), path(vec![q.y(i), q.x(i + n), q.x(i + n + 1)])),
                (neg_alpha.clone(), path(vec![q.x(i), q.y(i + 1), q.x(i + n + 1)])),
            ],
        });
    }
    out.push(Relation {
        name: "g".into(),
        source: 1,
        target: 2 * n + 2,
        terms: vec![
            (one, path(vec![q.x(1), q.y(2), q.y(n + 2)])),
            (neg_beta, path(vec![q.y(1), q.y(n + 1), q.x(2 * n + 1)])),
            (neg_alpha, path(vec![q.y(1), q.x(n + 1), q.y(n + 2)])),
        ],
    });
    out
}

/// Number of PBW monomials `y^i (xy)^j x^k` of degree `deg`, i.e. solutions
/// of `n·i + (n+1)·j + k = deg`.
pub fn hilbert_coeff(n: usize, deg: usize) -> usize {
    let mut count = 0;
    for i in 0..=deg / n {
        let rest = deg - n * i;
        count += rest / (n + 1) + 1;
    }
    count
}

type Rule = Vec<(QuadScalar, Vec<Arrow>)>;

/// Λ = kQ / (f_1, …, f_n, g) with normal forms and block bases.
#[derive(Debug, Clone)]
pub struct Algebra {
    params: DownUpParams,
    quiver: Quiver,
    relations: Vec<Relation>,
    rules: HashMap<Vec<Arrow>, Rule>,
    bases: BTreeMap<(usize, usize), Vec<Path>>,
    positions: HashMap<Path, usize>,
}

impl Algebra {
    pub fn new(params: DownUpParams) -> Self {
        let quiver = Quiver::new(params.n());
        let relations = relations(&params);
        let mut rules = HashMap::new();
        for r in &relations {
            let tail: Rule = r.terms[1..].iter().map(|(c, p)| (-c, p.arrows.clone())).collect();
            rules.insert(r.leading().arrows.clone(), tail);
        }
        let mut alg = Algebra { params, quiver, relations, rules, bases: BTreeMap::new(), positions: HashMap::new() };
        for i in alg.quiver.vertices() {
            for j in i..=alg.quiver.num_vertices() {
                let basis: Vec<Path> = alg.quiver.all_paths(i, j).into_iter().filter(|p| alg.is_normal(p)).collect();
                for (k, p) in basis.iter().enumerate() {
                    alg.positions.insert(p.clone(), k);
                }
                alg.bases.insert((i, j), basis);
            }
        }
        alg
    }

    pub fn params(&self) -> &DownUpParams {
        &self.params
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn field(&self) -> Field {
        self.params.field()
    }

    pub fn n(&self) -> usize {
        self.params.n()
    }

    fn redex(&self, arrows: &[Arrow]) -> Option<usize> {
        arrows.windows(3).position(|w| self.rules.contains_key(w))
    }

    pub fn is_normal(&self, path: &Path) -> bool {
        self.redex(&path.arrows).is_none()
    }

    /// Rewrites every leading word until none remains.
    pub fn normal_form(&self, elem: &FreeElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.field());
        let mut work: Vec<(QuadScalar, Path)> = elem.iter().map(|(p, c)| (c.clone(), p.clone())).collect();
        while let Some((c, p)) = work.pop() {
            match self.redex(&p.arrows) {
                None => out.add_term(p, c),
                Some(pos) => {
                    for (rc, repl) in &self.rules[&p.arrows[pos..pos + 3]] {
                        let mut arrows = p.arrows[..pos].to_vec();
                        arrows.extend_from_slice(repl);
                        arrows.extend_from_slice(&p.arrows[pos + 3..]);
                        work.push((&c * rc, Path { source: p.source, arrows }));
                    }
                }
            }
        }
        out
    }

    pub fn path_normal_form(&self, path: &Path) -> AlgebraElement {
        self.normal_form(&FreeElement::single(path.clone(), QuadScalar::one(self.field())))
    }

    /// The element given by a single path (normalised).
    pub fn element(&self, path: &Path) -> AlgebraElement {
        self.path_normal_form(path)
    }

    pub fn vertex(&self, v: usize) -> AlgebraElement {
        AlgebraElement::single(Path::stationary(v), QuadScalar::one(self.field()))
    }

    pub fn arrow(&self, a: Arrow) -> AlgebraElement {
        AlgebraElement::single(Path { source: a.source, arrows: vec![a] }, QuadScalar::one(self.field()))
    }

    pub fn multiply(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let mut free = FreeElement::zero(self.field());
        for (p, c) in a.iter() {
            for (q, d) in b.iter() {
                if let Some(pq) = p.compose(q) {
                    free.add_term(pq, c * d);
                }
            }
        }
        self.normal_form(&free)
    }

    /// Normal paths `i → j`, sorted degree-then-lexicographically with X < Y.
    pub fn block_basis(&self, i: usize, j: usize) -> &[Path] {
        self.bases.get(&(i, j)).map_or(&[], Vec::as_slice)
    }

    pub fn block_dim(&self, i: usize, j: usize) -> usize {
        self.block_basis(i, j).len()
    }

    /// Position of a normal path inside its block basis.
    pub fn basis_position(&self, path: &Path) -> Option<usize> {
        self.positions.get(path).copied()
    }

    /// Coordinates of `elem` in `block_basis(i, j)`.
    pub fn coordinates(&self, elem: &AlgebraElement, i: usize, j: usize) -> Result<Vec<QuadScalar>, QuiverError> {
        let mut out = vec![QuadScalar::zero(self.field()); self.block_dim(i, j)];
        for (p, c) in elem.iter() {
            if p.source() != i || p.target() != j {
                return Err(QuiverError::OutsideBlock(i, j));
            }
            let k = self.basis_position(p).ok_or(QuiverError::OutsideBlock(i, j))?;
            out[k] = c.clone();
        }
        Ok(out)
    }

    pub fn total_dim(&self) -> usize {
        self.bases.values().map(Vec::len).sum()
    }

    /// Dimension of `e_i Λ e_j` computed without the rewriting system: the
    /// free paths `i → j` modulo the span of all `u·r·v`.
    pub fn quotient_oracle(&self, i: usize, j: usize) -> usize {
        if i > j {
            return 0;
        }
        let paths = self.quiver.all_paths(i, j);
        let index: HashMap<&Path, usize> = paths.iter().enumerate().map(|(k, p)| (p, k)).collect();
        let mut ideal_rows = Vec::new();
        for r in &self.relations {
            if r.source < i || r.target > j {
                continue;
            }
            for u in self.quiver.all_paths(i, r.source) {
                for v in self.quiver.all_paths(r.target, j) {
                    let mut row = vec![QuadScalar::zero(self.field()); paths.len()];
                    for (c, p) in &r.terms {
                        let full = u.compose(p).and_then(|up| up.compose(&v)).expect("composable by construction");
                        row[index[&full]] = &row[index[&full]] + c;
                    }
                    ideal_rows.push(row);
                }
            }
        }
        if ideal_rows.is_empty() {
            return paths.len();
        }
        let m = Matrix::from_rows(ideal_rows, self.field()).expect("rows share a length");
        paths.len() - m.rank()
    }
}
