//! K₀ data of ∇A: Cartan, Serre and Coxeter matrices and the Happel trace check.
//!
//! The matrices depend only on `n`, so they are cached per `n` after the first
//! request.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::hochschild::{hh_dims_bruteforce, HHDims, HochschildError};
use crate::linalg::Matrix;
use crate::quiver::{hilbert_coeff, DownUpParams};
use crate::scalar::{Field, QuadScalar};

#[derive(Debug)]
struct K0Matrices {
    cartan: Matrix,
    serre: Matrix,
    coxeter: Matrix,
    unipotent: bool,
}

fn matrices(n: usize) -> Arc<K0Matrices> {
    static MEMO: OnceLock<Mutex<BTreeMap<usize, Arc<K0Matrices>>>> = OnceLock::new();
    let memo = MEMO.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(m) = memo.lock().expect("memo lock").get(&n) {
        return Arc::clone(m);
    }
    let cartan = build_cartan(n);
    // M is unitriangular, so both inverses exist.
    let inv = cartan.inverse().expect("unitriangular");
    let inv_t = cartan.transpose().inverse().expect("unitriangular");
    let serre = inv.multiply(&cartan.transpose()).expect("square");
    let coxeter = inv_t.multiply(&cartan).expect("square").scale(&QuadScalar::from_int(-1, Field::Rational));
    let unipotent = serre.is_unipotent().expect("square");
    let entry = Arc::new(K0Matrices { cartan, serre, coxeter, unipotent });
    memo.lock().expect("memo lock").entry(n).or_insert(entry).clone()
}

fn build_cartan(n: usize) -> Matrix {
    let size = 2 * n + 2;
    let mut m = Matrix::zeros(size, size, Field::Rational);
    for i in 0..size {
        for j in i..size {
            m.set(i, j, QuadScalar::from_int(hilbert_coeff(n, j - i) as i64, Field::Rational));
        }
    }
    m
}

/// `M(i, j) = dim e_i Λ e_j`.
pub fn cartan_matrix(n: usize) -> Matrix {
    matrices(n).cartan.clone()
}

/// `𝔰 = M⁻¹ Mᵀ`.
pub fn serre_matrix(n: usize) -> Matrix {
    matrices(n).serre.clone()
}

/// `Φ = −(Mᵀ)⁻¹ M`.
pub fn coxeter_matrix(n: usize) -> Matrix {
    matrices(n).coxeter.clone()
}

pub fn serre_is_unipotent(n: usize) -> bool {
    matrices(n).unipotent
}

pub fn neg_trace_coxeter(n: usize) -> QuadScalar {
    -matrices(n).coxeter.trace().expect("square")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct K0Report {
    pub n: usize,
    pub cartan: Matrix,
    pub serre: Matrix,
    pub coxeter: Matrix,
    pub unipotent: bool,
    pub k0_rank: usize,
    pub neg_trace_coxeter: QuadScalar,
    pub euler_hh: i64,
    pub happel_ok: bool,
    pub hh: HHDims,
}

/// Compares `χ(HH•) = h0 − h1 + h2` against `−tr Φ`.
pub fn happel_check(params: &DownUpParams) -> Result<K0Report, HochschildError> {
    let n = params.n();
    let m = matrices(n);
    let hh = hh_dims_bruteforce(params)?;
    let neg_trace = neg_trace_coxeter(n);
    let euler_hh = hh.euler();
    Ok(K0Report {
        n,
        cartan: m.cartan.clone(),
        serre: m.serre.clone(),
        coxeter: m.coxeter.clone(),
        unipotent: m.unipotent,
        k0_rank: m.cartan.rows(),
        happel_ok: neg_trace == QuadScalar::from_int(euler_hh, Field::Rational),
        neg_trace_coxeter: neg_trace,
        euler_hh,
        hh,
    })
}
