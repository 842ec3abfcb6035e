//! Closed-form spectra and thresholds of the model graphs (line, lattices,
//! cycles, homogeneous trees), used as analytic oracles for the numerics.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphKind, VertexSet};
use crate::poincare::{lambda_exact, lambda_via_gamma};
use crate::scalar::Scalar;
use crate::spectral::laplacian_eigenvalues;

/// `η(q) = 2√q/(q+1)`.
pub fn eta<T: Scalar>(q: usize) -> T {
    let q = T::of_usize(q);
    T::of(2.0) * q.sqrt() / (q + T::one())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Line,
    Lattice(usize),
    Tree(usize),
}

/// Spectral symbol of a model family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SymbolSpec {
    pub family: Family,
}

impl SymbolSpec {
    pub fn new(family: Family) -> Result<Self> {
        match family {
            Family::Lattice(0) => Err(Error::InvalidParameter(
                "lattice dimension must be positive".into(),
            )),
            Family::Tree(q) if q < 2 => Err(Error::InvalidParameter(
                "tree branching q must be at least 2".into(),
            )),
            _ => Ok(Self { family }),
        }
    }

    /// Number of frequency variables.
    pub fn arity(&self) -> usize {
        match self.family {
            Family::Lattice(n) => n,
            Family::Line | Family::Tree(_) => 1,
        }
    }

    /// Line: `2sin²(ξ/2)`; lattice ℤⁿ: `(2/n)Σ sin²(ξ_i/2)`;
    /// tree: `1 − η(q)cos(ξ ln q)`.
    pub fn eval<T: Scalar>(&self, xi: &[T]) -> Result<T> {
        if xi.len() != self.arity() {
            return Err(Error::LengthMismatch {
                expected: self.arity(),
                got: xi.len(),
            });
        }
        let half_sin2 = |x: T| {
            let s = (x / T::of(2.0)).sin();
            s * s
        };
        Ok(match self.family {
            Family::Line => T::of(2.0) * half_sin2(xi[0]),
            Family::Lattice(n) => {
                T::of(2.0) / T::of_usize(n) * xi.iter().map(|&x| half_sin2(x)).sum::<T>()
            }
            Family::Tree(q) => T::one() - eta::<T>(q) * (xi[0] * T::of_usize(q).ln()).cos(),
        })
    }

    pub fn spectrum_interval<T: Scalar>(&self) -> (T, T) {
        match self.family {
            Family::Line | Family::Lattice(_) => (T::zero(), T::of(2.0)),
            Family::Tree(q) => tree_spectrum_endpoints(q),
        }
    }
}

/// Eigenpairs of `C_M`: `λ_n = 1 − cos(2πn/M)` with real Fourier
/// eigenvectors (cosines for `n < M/2`, sines for `n > M/2`).
pub fn cycle_eigenpairs<T: Scalar>(m: usize) -> Result<Vec<(T, Vec<T>)>> {
    if m < 3 {
        return Err(Error::InvalidParameter(
            "cycle needs at least 3 vertices".into(),
        ));
    }
    let mt = T::of_usize(m);
    let two_pi = T::of(2.0) * T::PI();
    let amp = (T::of(2.0) / mt).sqrt();
    Ok((0..m)
        .map(|n| {
            let theta = two_pi * T::of_usize(n) / mt;
            let vector = (0..m)
                .map(|v| {
                    let arg = theta * T::of_usize(v);
                    if n == 0 {
                        mt.sqrt().recip()
                    } else if 2 * n == m {
                        arg.cos() / mt.sqrt()
                    } else if 2 * n < m {
                        amp * arg.cos()
                    } else {
                        amp * arg.sin()
                    }
                })
                .collect();
            (T::one() - theta.cos(), vector)
        })
        .collect())
}

/// Spectrum of `torus(N₁, …, N_k)` from the lattice symbol sampled on the
/// discrete frequencies: `(2/k) Σ_i sin²(π m_i / N_i)`, ascending.
pub fn torus_spectrum<T: Scalar>(dims: &[usize]) -> Result<Vec<T>> {
    if dims.is_empty() || dims.iter().any(|&d| d < 3) {
        return Err(Error::InvalidParameter(
            "torus axes need length at least 3".into(),
        ));
    }
    let k = T::of_usize(dims.len());
    let mut values = vec![T::zero()];
    for &len in dims {
        let axis: Vec<T> = (0..len)
            .map(|m| {
                let s = (T::PI() * T::of_usize(m) / T::of_usize(len)).sin();
                T::of(2.0) / k * s * s
            })
            .collect();
        values = values
            .iter()
            .flat_map(|&acc| axis.iter().map(move |&a| acc + a))
            .collect();
    }
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite symbol values"));
    Ok(values)
}

/// Removal threshold of a rectangular block: the product-formula value next
/// to the exact oracle.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RectThreshold<T> {
    pub dims: Vec<usize>,
    /// Host torus the block is embedded in.
    pub host: Vec<usize>,
    /// `4·min_i sin(π/(2N_i+2))`.
    pub paper_value: T,
    /// `1/Λ_exact` of the block.
    pub oracle_value: T,
    /// `λ₁(Γ(S))` of the block.
    pub gamma_value: T,
    /// `2sin²(π/(2N+2))` for one-dimensional blocks.
    pub line_value: Option<T>,
    /// Whether the product formula agrees with the oracle within `1e−9`.
    pub paper_agrees: bool,
}

/// Threshold report for a block of the given side lengths placed away from
/// the seams of a torus whose axes exceed the block by four.
pub fn rect_threshold<T: Scalar>(dims: &[usize]) -> Result<RectThreshold<T>> {
    let host: Vec<usize> = dims.iter().map(|&d| d + 4).collect();
    rect_threshold_in(dims, &host)
}

/// As [`rect_threshold`] with an explicit host torus; every axis must be at
/// least three longer than the block so that the closure does not wrap.
pub fn rect_threshold_in<T: Scalar>(dims: &[usize], host: &[usize]) -> Result<RectThreshold<T>> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::InvalidParameter(
            "block sides must be at least 1".into(),
        ));
    }
    if host.len() != dims.len() || host.iter().zip(dims).any(|(&h, &d)| h < d + 3) {
        return Err(Error::InvalidParameter(
            "host torus must exceed the block by 3 on every axis".into(),
        ));
    }
    let g = Graph::generate(&GraphKind::Torus(host.to_vec()))?;
    let s = torus_block(host, dims);
    let oracle_value = lambda_exact::<T>(&g, &s)?.recip();
    let gamma_value = lambda_via_gamma::<T>(&g, &s)?.lambda1;
    let paper_value = dims
        .iter()
        .map(|&n| T::of(4.0) * (T::PI() / T::of_usize(2 * n + 2)).sin())
        .fold(T::infinity(), T::min);
    let line_value = (dims.len() == 1).then(|| {
        let s = (T::PI() / T::of_usize(2 * dims[0] + 2)).sin();
        T::of(2.0) * s * s
    });
    Ok(RectThreshold {
        dims: dims.to_vec(),
        host: host.to_vec(),
        paper_value,
        oracle_value,
        gamma_value,
        line_value,
        paper_agrees: (paper_value - oracle_value).abs() <= T::of(1e-9),
    })
}

/// Vertices with coordinates `1..=N_i` on every axis (last axis fastest, as in
/// the generators).
pub fn torus_block(host: &[usize], dims: &[usize]) -> VertexSet {
    let mut ids = vec![0usize];
    for (&len, &side) in host.iter().zip(dims) {
        ids = ids
            .iter()
            .flat_map(|&base| (1..=side).map(move |c| base * len + c))
            .collect();
    }
    VertexSet::new(ids)
}

/// `(1 − η(q), 1 + η(q))`, the spectrum of the homogeneous tree of order
/// `q + 1`.
pub fn tree_spectrum_endpoints<T: Scalar>(q: usize) -> (T, T) {
    let e = eta::<T>(q);
    (T::one() - e, T::one() + e)
}

/// Where the eigenvalues of a truncated tree fall relative to the
/// infinite-tree spectrum. Informational: truncation breaks homogeneity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TreeSpectrumReport<T> {
    pub q: usize,
    pub depth: usize,
    pub endpoints: (T, T),
    /// Fraction of eigenvalues inside the interval enlarged by `slack`.
    pub inside_fraction: T,
    pub outliers: Vec<T>,
}

pub fn tree_spectrum_report<T: Scalar>(
    q: usize,
    depth: usize,
    slack: T,
) -> Result<TreeSpectrumReport<T>> {
    if q < 2 {
        return Err(Error::InvalidParameter(
            "tree branching q must be at least 2".into(),
        ));
    }
    let g = Graph::generate(&GraphKind::Tree { q, depth })?;
    let eigs = laplacian_eigenvalues::<T>(&g)?;
    let (lo, hi) = tree_spectrum_endpoints::<T>(q);
    let outliers: Vec<T> = eigs
        .iter()
        .copied()
        .filter(|&l| l < lo - slack || l > hi + slack)
        .collect();
    let inside = T::of_usize(eigs.len() - outliers.len()) / T::of_usize(eigs.len());
    Ok(TreeSpectrumReport {
        q,
        depth,
        endpoints: (lo, hi),
        inside_fraction: inside,
        outliers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::SpectralDecomposition;

    #[test]
    fn cycle_formula_examples() {
        let c4 = cycle_eigenpairs::<f64>(4).unwrap();
        let values: Vec<f64> = c4.iter().map(|p| p.0).collect();
        for (a, b) in values.iter().zip([0.0, 1.0, 2.0, 1.0]) {
            assert!((a - b).abs() < 1e-15);
        }
        let c100 = cycle_eigenpairs::<f64>(100).unwrap();
        assert!((c100[1].0 - 0.001973).abs() < 1e-6);
        let c8 = cycle_eigenpairs::<f64>(8).unwrap();
        assert!((c8[1].0 - 2.0 * (std::f64::consts::PI / 8.0).sin().powi(2)).abs() < 1e-15);
    }

    #[test]
    fn cycle_eigenvectors_are_eigenvectors() {
        let g = Graph::generate(&GraphKind::Cycle(7)).unwrap();
        let l = crate::spectral::laplacian_matrix::<f64>(&g);
        let pairs = cycle_eigenpairs::<f64>(7).unwrap();
        for (lambda, v) in &pairs {
            let lv = l.mul_vec(v);
            assert!(lv
                .iter()
                .zip(v)
                .all(|(a, b)| (a - lambda * b).abs() < 1e-12));
            assert!((crate::scalar::norm(v) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn torus_symbol_matches_numerics() {
        let dims = [4, 5];
        let g = Graph::generate(&GraphKind::Torus(dims.to_vec())).unwrap();
        let numeric = SpectralDecomposition::<f64>::new(&g).unwrap();
        let analytic = torus_spectrum::<f64>(&dims).unwrap();
        for (a, b) in numeric.eigenvalues().iter().zip(&analytic) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn symbols() {
        let line = SymbolSpec::new(Family::Line).unwrap();
        assert!((line.eval(&[std::f64::consts::PI]).unwrap() - 2.0).abs() < 1e-15);
        let plane = SymbolSpec::new(Family::Lattice(2)).unwrap();
        assert!((plane.eval(&[std::f64::consts::PI, 0.0]).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(plane.spectrum_interval::<f64>(), (0.0, 2.0));
        let tree = SymbolSpec::new(Family::Tree(2)).unwrap();
        let (lo, _) = tree.spectrum_interval::<f64>();
        assert!((tree.eval(&[0.0]).unwrap() - lo).abs() < 1e-15);
        assert!(SymbolSpec::new(Family::Tree(1)).is_err());
        assert!(line.eval::<f64>(&[0.0, 1.0]).is_err());
    }

    #[test]
    fn tree_endpoints() {
        let (lo, hi) = tree_spectrum_endpoints::<f64>(2);
        assert!((lo - (1.0 - 2.0 * 2f64.sqrt() / 3.0)).abs() < 1e-15);
        assert!((hi - 1.9428).abs() < 1e-4);
        let (lo, hi) = tree_spectrum_endpoints::<f64>(3);
        assert!((lo - (1.0 - 3f64.sqrt() / 2.0)).abs() < 1e-15);
        assert!((hi - 1.8660).abs() < 1e-4);
        let report = tree_spectrum_report::<f64>(2, 5, 0.05).unwrap();
        assert!(report.inside_fraction > 0.0 && report.inside_fraction <= 1.0);
    }

    #[test]
    fn torus_block_layout() {
        // 5 x 6 torus, 2 x 3 block at coordinates (1..=2, 1..=3)
        let s = torus_block(&[5, 6], &[2, 3]);
        assert_eq!(s.members(), &[7, 8, 9, 13, 14, 15]);
    }

    #[test]
    fn rect_threshold_line_blocks() {
        let r = rect_threshold::<f64>(&[1]).unwrap();
        assert!((r.paper_value - 4.0 * (std::f64::consts::PI / 4.0).sin()).abs() < 1e-12);
        assert!((r.gamma_value - 1.0).abs() < 1e-12);
        assert!((r.oracle_value - 1.5f64.sqrt()).abs() < 1e-12);
        assert!(!r.paper_agrees);
        let r = rect_threshold_in::<f64>(&[2, 2], &[10, 10]).unwrap();
        assert!(r.oracle_value > 0.0 && r.line_value.is_none());
        assert!(rect_threshold_in::<f64>(&[4], &[6]).is_err());
    }
}
