//! Normalized Laplacian, its eigendecomposition, Paley-Wiener projections
//! and the spectral functional calculus built on top of them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::linalg::{symmetric_eigen, Matrix};
use crate::scalar::{dot, norm, Scalar};

/// Real-valued function on the vertices of a host graph.
#[derive(Clone, Debug, PartialEq)]
pub struct Signal<T> {
    values: Vec<T>,
    host: u64,
}

impl<T: Scalar> Signal<T> {
    pub fn new(g: &Graph, values: Vec<T>) -> Result<Self> {
        if values.len() != g.n() {
            return Err(Error::LengthMismatch {
                expected: g.n(),
                got: values.len(),
            });
        }
        Ok(Self {
            values,
            host: g.id(),
        })
    }

    pub fn zeros(g: &Graph) -> Self {
        Self {
            values: vec![T::zero(); g.n()],
            host: g.id(),
        }
    }

    /// Dirac mass `δ_v`.
    pub fn delta(g: &Graph, v: VertexId) -> Result<Self> {
        g.check_vertex(v)?;
        let mut s = Self::zeros(g);
        s.values[v] = T::one();
        Ok(s)
    }

    /// `(√d(v))_v`, the kernel direction of the Laplacian.
    pub fn sqrt_degree(g: &Graph) -> Self {
        let values = g
            .degrees()
            .into_iter()
            .map(|d| T::of_usize(d).sqrt())
            .collect();
        Self {
            values,
            host: g.id(),
        }
    }

    pub(crate) fn from_parts(host: u64, values: Vec<T>) -> Self {
        Self { values, host }
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn host(&self) -> u64 {
        self.host
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `‖f‖ = (Σ_v |f(v)|²)^{1/2}`
    pub fn norm(&self) -> T {
        norm(&self.values)
    }

    pub fn distance(&self, other: &Self) -> T {
        crate::scalar::distance(&self.values, &other.values)
    }

    pub(crate) fn check_host(&self, host: u64) -> Result<()> {
        if self.host == host {
            Ok(())
        } else {
            Err(Error::HostMismatch)
        }
    }
}

/// Dense normalized Laplacian: `1` on the diagonal of non-isolated vertices,
/// `−1/√(d(u)d(v))` on edges.
pub fn laplacian_matrix<T: Scalar>(g: &Graph) -> Matrix<T> {
    let n = g.n();
    let inv_sqrt: Vec<T> = inverse_sqrt_degrees(g);
    let mut l = Matrix::zeros(n, n);
    for u in 0..n {
        if g.degree(u) > 0 {
            l[(u, u)] = T::one();
        }
        for &v in g.neighbors(u) {
            l[(u, v)] = -(inv_sqrt[u] * inv_sqrt[v]);
        }
    }
    l
}

fn inverse_sqrt_degrees<T: Scalar>(g: &Graph) -> Vec<T> {
    g.degrees()
        .into_iter()
        .map(|d| {
            if d == 0 {
                T::zero()
            } else {
                T::one() / T::of_usize(d).sqrt()
            }
        })
        .collect()
}

/// `(Lf)(v) = (1/√d(v)) Σ_{u∼v} (f(v)/√d(v) − f(u)/√d(u))` on raw coordinates.
pub(crate) fn laplacian_apply_raw<T: Scalar>(g: &Graph, f: &[T]) -> Vec<T> {
    let inv_sqrt: Vec<T> = inverse_sqrt_degrees(g);
    (0..g.n())
        .map(|v| {
            let own = f[v] * inv_sqrt[v];
            let sum: T = g
                .neighbors(v)
                .iter()
                .map(|&u| own - f[u] * inv_sqrt[u])
                .sum();
            sum * inv_sqrt[v]
        })
        .collect()
}

pub fn laplacian_apply<T: Scalar>(g: &Graph, f: &Signal<T>) -> Result<Signal<T>> {
    f.check_host(g.id())?;
    Ok(Signal::from_parts(
        g.id(),
        laplacian_apply_raw(g, &f.values),
    ))
}

/// Eigenvalues of the normalized Laplacian of any graph (connected or not),
/// ascending.
pub fn laplacian_eigenvalues<T: Scalar>(g: &Graph) -> Result<Vec<T>> {
    Ok(symmetric_eigen(&laplacian_matrix::<T>(g))?.0)
}

/// Smallest eigenvalue above `ε_eig`; on a disconnected graph this skips the
/// whole kernel.
pub fn first_positive_eigenvalue<T: Scalar>(g: &Graph) -> Result<T> {
    laplacian_eigenvalues::<T>(g)?
        .into_iter()
        .find(|&l| l > T::eps_eig())
        .ok_or_else(|| Error::InvalidParameter("graph has no positive eigenvalue".into()))
}

/// Ascending eigenvalues and matching orthonormal eigenvectors of the
/// normalized Laplacian of a connected graph.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition<T> {
    eigenvalues: Vec<T>,
    eigenvectors: Matrix<T>,
    residual: T,
    host: u64,
    degrees: Vec<usize>,
    band_slack: T,
}

/// Paley-Wiener space `PW_ω`: eigen-indices with `λ_j ≤ ω + ε_eig`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PwSpace<T> {
    pub omega: T,
    pub indices: Vec<usize>,
    pub dim: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BernsteinReport<T> {
    pub lhs: T,
    pub rhs: T,
    pub holds: bool,
}

impl<T: Scalar> SpectralDecomposition<T> {
    /// Dense symmetric eigendecomposition (cyclic Jacobi). Eigenvectors are
    /// signed so their first non-negligible coordinate is positive.
    pub fn new(g: &Graph) -> Result<Self> {
        g.require_connected()?;
        if g.n() < 2 {
            return Err(Error::InvalidParameter(
                "eigendecomposition needs at least 2 vertices".into(),
            ));
        }
        let (eigenvalues, eigenvectors) = symmetric_eigen(&laplacian_matrix::<T>(g))?;
        let residual = (0..g.n())
            .map(|j| {
                let q = eigenvectors.column(j);
                let lq = laplacian_apply_raw(g, &q);
                let defect: Vec<T> = lq
                    .iter()
                    .zip(&q)
                    .map(|(&a, &b)| a - eigenvalues[j] * b)
                    .collect();
                norm(&defect)
            })
            .fold(T::zero(), T::max);
        Ok(Self {
            eigenvalues,
            eigenvectors,
            residual,
            host: g.id(),
            degrees: g.degrees(),
            band_slack: T::eps_eig(),
        })
    }

    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Replaces the slack `ε` of every `λ ≤ ω + ε` band decision.
    pub fn with_band_slack(mut self, slack: T) -> Self {
        self.band_slack = slack;
        self
    }

    pub fn band_slack(&self) -> T {
        self.band_slack
    }

    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &Matrix<T> {
        &self.eigenvectors
    }

    pub fn eigenvector(&self, j: usize) -> Signal<T> {
        Signal::from_parts(self.host, self.eigenvectors.column(j))
    }

    /// Largest `‖Lq_j − λ_j q_j‖` over all eigenpairs.
    pub fn residual(&self) -> T {
        self.residual
    }

    pub fn host(&self) -> u64 {
        self.host
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn lambda_max(&self) -> T {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }

    /// Spectral coefficients `⟨f, q_j⟩`.
    pub fn coefficients(&self, f: &Signal<T>) -> Result<Vec<T>> {
        f.check_host(self.host)?;
        Ok(self.eigenvectors.tr_mul_vec(&f.values))
    }

    /// `Σ_j c_j q_j`
    pub fn synthesize(&self, coefficients: &[T]) -> Signal<T> {
        Signal::from_parts(self.host, self.eigenvectors.mul_vec(coefficients))
    }

    /// Signal with the given coefficients on the listed eigen-indices.
    pub fn synthesize_on(&self, indices: &[usize], coefficients: &[T]) -> Signal<T> {
        let mut full = vec![T::zero(); self.n()];
        for (&j, &c) in indices.iter().zip(coefficients) {
            full[j] = c;
        }
        self.synthesize(&full)
    }

    pub fn pw_space(&self, omega: T) -> PwSpace<T> {
        let indices: Vec<usize> = self
            .eigenvalues
            .iter()
            .enumerate()
            .filter(|(_, &l)| l <= omega + self.band_slack)
            .map(|(j, _)| j)
            .collect();
        PwSpace {
            omega,
            dim: indices.len(),
            indices,
        }
    }

    /// Orthogonal projection onto `PW_ω`.
    pub fn pw_project(&self, omega: T, f: &Signal<T>) -> Result<Signal<T>> {
        let space = self.pw_space(omega);
        let coeffs = self.coefficients(f)?;
        let kept: Vec<T> = space.indices.iter().map(|&j| coeffs[j]).collect();
        Ok(self.synthesize_on(&space.indices, &kept))
    }

    /// `Σ_j (shift + λ_j)^s ⟨f, q_j⟩ q_j`
    pub fn apply_power(&self, s: T, f: &Signal<T>, shift: T) -> Result<Signal<T>> {
        if shift < T::zero() {
            return Err(Error::InvalidParameter(
                "power shift must be non-negative".into(),
            ));
        }
        let coeffs = self.coefficients(f)?;
        let negligible = T::singular_floor() * f.norm();
        let mut scaled = Vec::with_capacity(coeffs.len());
        for (&c, &lambda) in coeffs.iter().zip(&self.eigenvalues) {
            let base = shift + lambda.max(T::zero());
            if s < T::zero() && base <= T::eps_eig() {
                if c.abs() > negligible {
                    return Err(Error::SingularPower);
                }
                scaled.push(T::zero());
            } else if s == T::zero() {
                scaled.push(c);
            } else {
                scaled.push(base.powf(s) * c);
            }
        }
        Ok(self.synthesize(&scaled))
    }

    /// Compares `‖L^s f‖` against `ω^s ‖f‖`.
    pub fn bernstein_check(&self, omega: T, f: &Signal<T>, s: T) -> Result<BernsteinReport<T>> {
        let fnorm = f.norm();
        if fnorm == T::zero() {
            return Err(Error::ZeroSignal);
        }
        let lhs = self.apply_power(s, f, T::zero())?.norm();
        let rhs = omega.powf(s) * fnorm;
        Ok(BernsteinReport {
            lhs,
            rhs,
            holds: lhs <= rhs + T::eps_eig(),
        })
    }

    /// Norm of `L` restricted to `PW_ω`: the largest eigenvalue in the band.
    pub fn operator_norm_on_pw(&self, omega: T) -> Option<T> {
        self.pw_space(omega)
            .indices
            .last()
            .map(|&j| self.eigenvalues[j].max(T::zero()))
    }

    /// `max_j ‖L q_j‖ / ‖q_j‖` style check done the long way: the ratio
    /// `‖Lf‖/‖f‖` for an arbitrary `f`.
    pub fn rayleigh_ratio(&self, f: &Signal<T>) -> Result<T> {
        let coeffs = self.coefficients(f)?;
        let num: T = coeffs
            .iter()
            .zip(&self.eigenvalues)
            .map(|(&c, &l)| l * l * c * c)
            .sum();
        Ok(num.sqrt() / norm(&coeffs))
    }

    /// Inner product helper on raw coordinates.
    pub fn inner(&self, f: &Signal<T>, g: &Signal<T>) -> Result<T> {
        f.check_host(self.host)?;
        g.check_host(self.host)?;
        Ok(dot(&f.values, &g.values))
    }
}

/// Alias kept for the operation name used across the crate.
pub fn eigendecompose<T: Scalar>(g: &Graph) -> Result<SpectralDecomposition<T>> {
    SpectralDecomposition::new(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphKind;

    fn graph(kind: GraphKind) -> Graph {
        Graph::generate(&kind).unwrap()
    }

    fn assert_close(a: &[f64], b: &[f64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= tol, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn laplacian_on_path_delta() {
        let g = graph(GraphKind::Path(3));
        let lf = laplacian_apply(&g, &Signal::<f64>::delta(&g, 1).unwrap()).unwrap();
        let h = -(0.5f64).sqrt();
        assert_close(lf.values(), &[h, 1.0, h], 1e-15);
    }

    #[test]
    fn laplacian_on_cycle_delta() {
        let g = graph(GraphKind::Cycle(4));
        let lf = laplacian_apply(&g, &Signal::<f64>::delta(&g, 0).unwrap()).unwrap();
        assert_close(lf.values(), &[1.0, -0.5, 0.0, -0.5], 1e-15);
    }

    #[test]
    fn sqrt_degree_is_harmonic() {
        for kind in [
            GraphKind::Path(6),
            GraphKind::Tree { q: 2, depth: 3 },
            GraphKind::Grid(vec![3, 4]),
        ] {
            let g = graph(kind);
            let lf = laplacian_apply(&g, &Signal::<f64>::sqrt_degree(&g)).unwrap();
            assert!(lf.norm() < 1e-14);
        }
    }

    #[test]
    fn matrix_and_operator_agree() {
        let g = graph(GraphKind::Tree { q: 3, depth: 2 });
        let l = laplacian_matrix::<f64>(&g);
        let f: Vec<f64> = (0..g.n()).map(|i| (i as f64 * 0.37).sin()).collect();
        assert_close(&l.mul_vec(&f), &laplacian_apply_raw(&g, &f), 1e-14);
    }

    #[test]
    fn host_mismatch() {
        let a = graph(GraphKind::Path(4));
        let b = graph(GraphKind::Cycle(4));
        let f = Signal::<f64>::delta(&a, 0).unwrap();
        assert!(matches!(laplacian_apply(&b, &f), Err(Error::HostMismatch)));
    }

    #[test]
    fn cycle4_spectrum() {
        let dec = eigendecompose::<f64>(&graph(GraphKind::Cycle(4))).unwrap();
        assert_close(dec.eigenvalues(), &[0.0, 1.0, 1.0, 2.0], 1e-12);
        assert!(dec.residual() < 1e-12);
    }

    #[test]
    fn cycle100_low_eigenvalues() {
        let dec = eigendecompose::<f64>(&graph(GraphKind::Cycle(100))).unwrap();
        let pi = std::f64::consts::PI;
        let l1 = 1.0 - (2.0 * pi / 100.0).cos();
        let l2 = 1.0 - (4.0 * pi / 100.0).cos();
        assert_close(&dec.eigenvalues()[1..5], &[l1, l1, l2, l2], 1e-12);
        assert!((l1 - 0.001973).abs() < 5e-7);
        assert!((l2 - 0.007885).abs() < 5e-7);
    }

    #[test]
    fn kernel_vector_is_sqrt_degree() {
        let g = graph(GraphKind::Tree { q: 2, depth: 3 });
        let dec = eigendecompose::<f64>(&g).unwrap();
        assert!(dec.eigenvalues()[0].abs() < 1e-12);
        assert!(dec.eigenvalues()[1] > 1e-6);
        let psi = Signal::<f64>::sqrt_degree(&g);
        let q0 = dec.eigenvector(0);
        let cos = dec.inner(&psi, &q0).unwrap() / psi.norm();
        assert!(
            (cos - 1.0).abs() < 1e-12,
            "sign convention makes the overlap positive"
        );
    }

    #[test]
    fn disconnected_rejected() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            eigendecompose::<f64>(&g),
            Err(Error::Disconnected)
        ));
    }

    #[test]
    fn projection_examples() {
        let g = graph(GraphKind::Cycle(4));
        let dec = eigendecompose::<f64>(&g).unwrap();
        let f = Signal::delta(&g, 0).unwrap();
        let p = dec.pw_project(1.0, &f).unwrap();
        assert!((p.norm().powi(2) - 0.75).abs() < 1e-12);

        let full = dec.pw_project(2.0, &f).unwrap();
        assert!(full.distance(&f) < 1e-12);

        let kernel = dec.pw_project(0.0, &f).unwrap();
        let psi = Signal::<f64>::sqrt_degree(&g);
        let c = dec.inner(&f, &psi).unwrap() / psi.norm().powi(2);
        let expected: Vec<f64> = psi.values().iter().map(|x| c * x).collect();
        assert_close(kernel.values(), &expected, 1e-12);
    }

    #[test]
    fn powers() {
        let g = graph(GraphKind::Path(6));
        let dec = eigendecompose::<f64>(&g).unwrap();
        let f = Signal::new(&g, vec![0.3, -1.0, 2.0, 0.5, 0.0, 1.5]).unwrap();
        let id = dec.apply_power(0.0, &f, 0.0).unwrap();
        assert!(id.distance(&f) < 1e-12);
        let l1 = dec.apply_power(1.0, &f, 0.0).unwrap();
        assert!(l1.distance(&laplacian_apply(&g, &f).unwrap()) < 1e-10);
        let half = dec.apply_power(0.5, &f, 0.0).unwrap();
        let twice = dec.apply_power(0.5, &half, 0.0).unwrap();
        assert!(twice.distance(&l1) < 1e-10);
        assert!(matches!(
            dec.apply_power(-1.0, &f, 0.0),
            Err(Error::SingularPower)
        ));
        // shifted negative power is always defined and inverts the positive one
        let up = dec.apply_power(2.0, &f, 1.0).unwrap();
        let back = dec.apply_power(-2.0, &up, 1.0).unwrap();
        assert!(back.distance(&f) < 1e-10);
    }

    #[test]
    fn negative_power_off_kernel() {
        let g = graph(GraphKind::Cycle(6));
        let dec = eigendecompose::<f64>(&g).unwrap();
        let f = dec.eigenvector(3);
        let lam = dec.eigenvalues()[3];
        let inv = dec.apply_power(-1.0, &f, 0.0).unwrap();
        assert!((inv.norm() - 1.0 / lam).abs() < 1e-10);
    }

    #[test]
    fn bernstein_examples() {
        let g = graph(GraphKind::Cycle(4));
        let dec = eigendecompose::<f64>(&g).unwrap();
        let f = dec.eigenvector(1);
        let r = dec.bernstein_check(1.0, &f, 3.0).unwrap();
        assert!((r.lhs - r.rhs).abs() < 1e-12 && r.holds);

        let top = dec.eigenvector(3);
        let r = dec.bernstein_check(1.0, &top, 1.0).unwrap();
        assert!(!r.holds);

        assert!(matches!(
            dec.bernstein_check(1.0, &Signal::zeros(&g), 1.0),
            Err(Error::ZeroSignal)
        ));
    }

    #[test]
    fn operator_norm_on_band() {
        let dec = eigendecompose::<f64>(&graph(GraphKind::Cycle(8))).unwrap();
        let norm = dec.operator_norm_on_pw(0.5).unwrap();
        let pi = std::f64::consts::PI;
        assert!((norm - (1.0 - (2.0 * pi / 8.0).cos())).abs() < 1e-12);
    }

    #[test]
    fn single_precision_decomposition() {
        let g = graph(GraphKind::Cycle(12));
        let dec = eigendecompose::<f32>(&g).unwrap();
        let pi = std::f32::consts::PI;
        assert!((dec.eigenvalues()[1] - (1.0 - (2.0 * pi / 12.0).cos())).abs() < 1e-5);
        assert!(dec.residual() < 1e-5);
    }
}
