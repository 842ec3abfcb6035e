//! Eigenvalue consequences of Poincaré constants on finite graphs: Dirichlet
//! eigenvalues, eigenvalue counts below a threshold and lower bounds for
//! each `λ_k`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{boundary, Graph, VertexSet};
use crate::linalg::symmetric_eigen;
use crate::poincare::{lambda_exact, random_supported, LambdaCertificate, THRESHOLD_GUARD};
use crate::scalar::{norm, Scalar};
use crate::spectral::{laplacian_apply_raw, laplacian_matrix, SpectralDecomposition};

const DIRICHLET_PROBES: usize = 32;
const DIRICHLET_SEED: u64 = 0xd1_71c4;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DirichletReport<T> {
    /// Smallest eigenvalue of the principal block `L[S, S]`.
    pub lambda_d: T,
    /// `1/λ_D`, a Poincaré constant for `S`.
    pub inverse: T,
    /// `‖φ‖ ≤ (1/λ_D)‖Lφ‖` held on every random probe supported on `S`.
    pub inequality_holds: bool,
}

/// First Dirichlet eigenvalue of `S`: the minimal Rayleigh quotient over
/// signals supported on `S` (so vanishing on `bS` and beyond).
pub fn dirichlet_lambda<T: Scalar>(g: &Graph, s: &VertexSet) -> Result<DirichletReport<T>> {
    s.check_in(g)?;
    if s.is_empty() {
        return Err(Error::InvalidParameter(
            "vertex set must be non-empty".into(),
        ));
    }
    if boundary(g, s)?.is_empty() {
        return Err(Error::EmptyBoundary);
    }
    let block = laplacian_matrix::<T>(g).select(s.members(), s.members());
    let (eigs, _) = symmetric_eigen(&block)?;
    let lambda_d = eigs[0];
    let inverse = lambda_d.recip();

    let mut rng = ChaCha8Rng::seed_from_u64(DIRICHLET_SEED);
    let tol = T::of(1e3) * T::epsilon();
    let inequality_holds = (0..DIRICHLET_PROBES).all(|_| {
        let phi: Vec<T> = random_supported(&mut rng, g.n(), s);
        let lphi = norm(&laplacian_apply_raw(g, &phi));
        norm(&phi) <= inverse * lphi * (T::one() + tol)
    });
    Ok(DirichletReport {
        lambda_d,
        inverse,
        inequality_holds,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenCountReport<T> {
    pub omega: T,
    /// `N[0, ω)`
    pub count_below: usize,
    /// `N[ω, ω_max]`
    pub count_at_or_above: usize,
    pub certificate: Option<LambdaCertificate<T>>,
    /// At most `|V \ S|` eigenvalues lie in `[0, 1/Λ)`; present when a
    /// certificate was supplied.
    pub certificate_holds: Option<bool>,
}

/// Number of eigenvalues strictly below `threshold`; eigenvalues within
/// `ε_eig` of the threshold count as lying at or above it.
fn count_below<T: Scalar>(eigenvalues: &[T], threshold: T, slack: T) -> usize {
    eigenvalues
        .iter()
        .filter(|&&l| l < threshold - slack)
        .count()
}

/// Counts eigenvalues below and above `ω`; with a certificate for `S`, also
/// checks that at most `|V| − |S|` eigenvalues lie below `1/Λ(S)`.
pub fn count_eigs<T: Scalar>(
    dec: &SpectralDecomposition<T>,
    omega: T,
    certificate: Option<LambdaCertificate<T>>,
) -> EigenCountReport<T> {
    let n = dec.n();
    let below = count_below(dec.eigenvalues(), omega, T::eps_eig());
    let certificate_holds = certificate.as_ref().map(|c| {
        let removed = c.set.len();
        let under = count_below(dec.eigenvalues(), c.omega_star, T::of(THRESHOLD_GUARD));
        under <= n - removed && n - under >= removed
    });
    EigenCountReport {
        omega,
        count_below: below,
        count_at_or_above: n - below,
        certificate,
        certificate_holds,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LambdaKBound<T> {
    pub k: usize,
    /// `max_S 1/Λ(S)` over the admissible `(n − k)`-subsets.
    pub bound: T,
    pub best_set: VertexSet,
    pub lambda_k: T,
    /// `λ_k ≥ bound − 1e−9`
    pub holds: bool,
}

/// Lower bound `λ_k ≥ 1/Λ_{n−k}` where `Λ_{n−k}` is minimised over
/// `(n − k)`-subsets with non-empty boundary: all of them when `subsets` is
/// `None` (requires `n ≤ exhaustive_max_n`), the supplied candidates
/// otherwise.
pub fn lambda_k_lower_bound<T: Scalar>(
    g: &Graph,
    dec: &SpectralDecomposition<T>,
    k: usize,
    subsets: Option<&[VertexSet]>,
    exhaustive_max_n: usize,
) -> Result<LambdaKBound<T>> {
    let n = g.n();
    if dec.host() != g.id() {
        return Err(Error::HostMismatch);
    }
    if k == 0 || k >= n {
        return Err(Error::InvalidParameter(format!("k must lie in 1..{n}")));
    }
    let size = n - k;
    let candidates: Vec<VertexSet> = match subsets {
        Some(list) => list.iter().filter(|s| s.len() == size).cloned().collect(),
        None => {
            if n > exhaustive_max_n {
                return Err(Error::TooLarge {
                    n,
                    limit: exhaustive_max_n,
                });
            }
            combinations(n, size)
        }
    };
    let mut best: Option<(T, VertexSet)> = None;
    for s in candidates {
        if boundary(g, &s)?.is_empty() {
            continue;
        }
        let inverse = lambda_exact::<T>(g, &s)?.recip();
        if best.as_ref().is_none_or(|(b, _)| inverse > *b) {
            best = Some((inverse, s));
        }
    }
    let (bound, best_set) = best.ok_or(Error::NoFeasibleSubset)?;
    let lambda_k = dec.eigenvalues()[k];
    Ok(LambdaKBound {
        k,
        bound,
        best_set,
        lambda_k,
        holds: lambda_k >= bound - T::of(THRESHOLD_GUARD),
    })
}

/// All `size`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, size: usize) -> Vec<VertexSet> {
    let mut out = Vec::new();
    if size > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        out.push(VertexSet::new(idx.clone()));
        let Some(i) = (0..size).rev().find(|&i| idx[i] != i + n - size) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// `12·d_max/(√(n/2) − 6)`, an upper estimate of `λ₁` for planar graphs.
/// Planarity itself is not checked.
pub fn planar_bound<T: Scalar>(n: usize, d_max: usize) -> Result<T> {
    if n <= 72 {
        return Err(Error::ValueOutOfRange {
            value: n as f64,
            range: "n > 72",
        });
    }
    Ok(T::of_usize(12 * d_max) / ((T::of_usize(n) / T::of(2.0)).sqrt() - T::of(6.0)))
}
