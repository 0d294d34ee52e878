//! Module isomorphism via the intertwiner space.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::LeftModule;
use crate::field::{Field, Scalar};
use crate::linalg::{kernel_of, SparseMatrix, SparseVec};

#[derive(Clone, Copy, Debug)]
pub struct IsoOptions {
    pub seed: u64,
    /// Random elements of the intertwiner space tried over large fields.
    pub samples: usize,
    /// Enumerate the whole intertwiner space when it has at most this many elements.
    pub enumeration_limit: u64,
}

impl Default for IsoOptions {
    fn default() -> Self {
        IsoOptions {
            seed: 0x5eed,
            samples: 16,
            enumeration_limit: 4096,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoVerdict {
    pub isomorphic: bool,
    /// False when `isomorphic = false` rests on random sampling.
    pub exact: bool,
}

impl IsoVerdict {
    const NO: IsoVerdict = IsoVerdict {
        isomorphic: false,
        exact: true,
    };
    const YES: IsoVerdict = IsoVerdict {
        isomorphic: true,
        exact: true,
    };
}

/// Basis of `Hom(M, N)` as weight-preserving matrices `dim N x dim M`.
fn intertwiners(m: &LeftModule, n: &LeftModule) -> Vec<SparseMatrix> {
    let alg = m.algebra();
    let f = m.field();
    let (dm, dn) = (m.dim(), n.dim());
    // unknown (r, c) = X[r][c], only for equal weights
    let mut unknowns = Vec::new();
    for (c, &wc) in m.weights().iter().enumerate() {
        for (r, &wr) in n.weights().iter().enumerate() {
            if wr == wc {
                unknowns.push((r, c));
            }
        }
    }
    // Idempotents hold by weight-preservation; only radical generators remain.
    let gens: Vec<usize> = alg.generators().iter().copied().filter(|&g| alg.is_radical(g)).collect();
    let m_rows: Vec<SparseMatrix> = gens.iter().map(|&g| m.action(g).transpose()).collect();
    let block = dn * dm;
    let columns: Vec<SparseVec> = unknowns
        .iter()
        .map(|&(r, k)| {
            let mut pairs: Vec<(usize, Scalar)> = Vec::new();
            for (gi, &g) in gens.iter().enumerate() {
                // (X ρ_M(g))[r, c] gains ρ_M(g)[k, c]
                for (c, x) in m_rows[gi].cols[k].iter() {
                    pairs.push((gi * block + r * dm + c, x.clone()));
                }
                // (ρ_N(g) X)[r', k] gains ρ_N(g)[r', r]
                for (r2, x) in n.action(g).cols[r].iter() {
                    pairs.push((gi * block + r2 * dm + k, -x.clone()));
                }
            }
            SparseVec::from_pairs(pairs)
        })
        .collect();
    kernel_of(f, &columns, gens.len() * block)
        .into_iter()
        .map(|v| {
            let mut cols = vec![Vec::new(); dm];
            for (u, x) in v.iter() {
                let (r, c) = unknowns[u];
                cols[c].push((r, x.clone()));
            }
            SparseMatrix::from_cols(dn, cols.into_iter().map(SparseVec::from_pairs).collect())
        })
        .collect()
}

fn combine(basis: &[SparseMatrix], coeffs: &[Scalar], rows: usize, cols: usize) -> SparseMatrix {
    basis
        .iter()
        .zip(coeffs)
        .fold(SparseMatrix::zero(rows, cols), |acc, (b, c)| acc.add_scaled(c, b))
}

/// Decides `M ≅ N`. A `true` answer always comes with a witness; `false` is
/// exact when the intertwiner space is empty or small enough to enumerate.
pub fn modules_isomorphic(m: &LeftModule, n: &LeftModule, opts: &IsoOptions) -> IsoVerdict {
    if !std::sync::Arc::ptr_eq(m.algebra(), n.algebra()) && !m.algebra().same_structure(n.algebra()) {
        return IsoVerdict::NO;
    }
    if m.dimension_vector() != n.dimension_vector() {
        return IsoVerdict::NO;
    }
    let d = m.dim();
    if d == 0 {
        return IsoVerdict::YES;
    }
    let f = m.field();
    let basis = intertwiners(m, n);
    if basis.is_empty() {
        return IsoVerdict::NO;
    }
    let invertible = |x: &SparseMatrix| x.rank(f) == d;
    let h = basis.len() as u32;
    if let Field::Prime(p) = f {
        if let Some(size) = p.checked_pow(h).filter(|&s| s <= opts.enumeration_limit) {
            for code in 1..size {
                let mut rest = code;
                let coeffs: Vec<Scalar> = (0..h)
                    .map(|_| {
                        let c = f.from_i64((rest % p) as i64);
                        rest /= p;
                        c
                    })
                    .collect();
                if invertible(&combine(&basis, &coeffs, d, d)) {
                    return IsoVerdict::YES;
                }
            }
            return IsoVerdict::NO;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.samples.max(1) {
        let coeffs: Vec<Scalar> = (0..h)
            .map(|_| match f {
                Field::Prime(p) => f.from_i64(rng.gen_range(0..p) as i64),
                Field::Rational => f.from_i64(rng.gen_range(-(1i64 << 20)..=(1i64 << 20))),
            })
            .collect();
        if invertible(&combine(&basis, &coeffs, d, d)) {
            return IsoVerdict::YES;
        }
    }
    IsoVerdict {
        isomorphic: false,
        exact: false,
    }
}
