//! Uniqueness sets and stable reconstruction: certification from Poincaré
//! constants, frame bounds of sampled evaluations on `PW_ω`, the dual frame
//! and the Neumann-series and derivative-sampling reconstructions.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{closure, Graph, VertexId, VertexSet};
use crate::linalg::{gram_rank, spd_inverse, symmetric_eigen, Matrix};
use crate::poincare::{lambda_via_gamma, LambdaCertificate, THRESHOLD_GUARD};
use crate::scalar::{distance, norm, Scalar};
use crate::spectral::{Signal, SpectralDecomposition};

/// Tolerance of the reconstruction-identity check performed by
/// [`dual_frame`].
pub const DUAL_CHECK_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UniquenessVerdict<T> {
    pub unique: bool,
    pub omega: T,
    /// `1/Λ`: the certificate covers every `ω` strictly below it.
    pub omega_star: T,
    /// Certified uniqueness set `V \ S`.
    pub uniqueness_set: VertexSet,
}

/// `V \ S` is a uniqueness set for `PW_ω` whenever `ω < 1/Λ(S)`; no spectral
/// computation on the complement is needed.
pub fn certify_uniqueness_by_lambda<T: Scalar>(
    g: &Graph,
    omega: T,
    cert: &LambdaCertificate<T>,
) -> Result<UniquenessVerdict<T>> {
    cert.set.check_in(g)?;
    Ok(UniquenessVerdict {
        unique: omega < cert.omega_star - T::of(THRESHOLD_GUARD),
        omega,
        omega_star: cert.omega_star,
        uniqueness_set: cert.set.complement(g),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartitionVerdict<T> {
    pub unique: bool,
    pub omega: T,
    /// `λ₁(Γ(S_j))` for every part.
    pub lambda1: Vec<T>,
    pub uniqueness_set: VertexSet,
}

/// Certifies `V \ ∪S_j` for sets with pairwise disjoint closures and
/// `λ₁(Γ(S_j)) > ω` for every `j`.
pub fn certify_partition<T: Scalar>(
    g: &Graph,
    omega: T,
    parts: &[VertexSet],
) -> Result<PartitionVerdict<T>> {
    if parts.is_empty() {
        return Err(Error::InvalidParameter(
            "partition needs at least one part".into(),
        ));
    }
    let closures = parts
        .iter()
        .map(|s| closure(g, s))
        .collect::<Result<Vec<_>>>()?;
    for i in 0..closures.len() {
        for j in i + 1..closures.len() {
            if !closures[i].is_disjoint(&closures[j]) {
                return Err(Error::OverlappingClosures {
                    first: i,
                    second: j,
                });
            }
        }
    }
    let lambda1 = parts
        .iter()
        .map(|s| lambda_via_gamma::<T>(g, s).map(|b| b.lambda1))
        .collect::<Result<Vec<_>>>()?;
    let guard = T::of(THRESHOLD_GUARD);
    let removed = parts
        .iter()
        .skip(1)
        .fold(parts[0].clone(), |acc, s| acc.union(s));
    Ok(PartitionVerdict {
        unique: lambda1.iter().all(|&l| omega < l - guard),
        omega,
        lambda1,
        uniqueness_set: removed.complement(g),
    })
}

/// Analysis vectors of a sampling frame: `P_ω δ_u` (default) or
/// `P_ω δ_u / √d(u)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrameNormalization {
    #[default]
    PlainDelta,
    DegreeNormalized,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameOptions<T> {
    pub normalization: FrameNormalization,
    /// `A ≤ rank_tol · B` means the family is not a frame.
    pub rank_tol: T,
}

impl<T: Scalar> Default for FrameOptions<T> {
    fn default() -> Self {
        Self {
            normalization: FrameNormalization::PlainDelta,
            rank_tol: T::rank_tol(),
        }
    }
}

impl<T: Scalar> From<FrameNormalization> for FrameOptions<T> {
    fn from(normalization: FrameNormalization) -> Self {
        Self {
            normalization,
            ..Self::default()
        }
    }
}

/// Point evaluations on `U` viewed as a frame for `PW_ω`.
///
/// All vectors are stored in the orthonormal eigen-coordinates of `PW_ω`;
/// `basis` lifts them back to vertex space.
#[derive(Clone, Debug)]
pub struct SamplingFrame<T> {
    pub omega: T,
    pub u: VertexSet,
    pub normalization: FrameNormalization,
    /// Eigen-indices spanning `PW_ω`.
    pub indices: Vec<usize>,
    /// Eigenvalues of those indices.
    pub band: Vec<T>,
    /// `n × k` matrix of the `PW_ω` eigenvectors.
    pub basis: Matrix<T>,
    /// `m × k`; row `i` is `ϑ_{u_i}`.
    pub analysis: Matrix<T>,
    /// Per-sample weight turning a raw value `f(u)` into `⟨f, ϑ_u⟩`.
    pub weights: Vec<T>,
    /// Lower frame bound `A` (smallest eigenvalue of the frame operator).
    pub lower: T,
    /// Upper frame bound `B`.
    pub upper: T,
    /// Plancherel-Polya constant `1/√A` when `U` is a uniqueness set.
    pub c_omega: Option<T>,
    /// `m × k`; row `i` is `Θ_{u_i} = F⁻¹ϑ_{u_i}`, filled by [`dual_frame`].
    pub dual: Option<Matrix<T>>,
    /// Worst relative defect of `f = Σ_u ⟨f, ϑ_u⟩Θ_u` over the basis of
    /// `PW_ω`, filled by [`dual_frame`].
    pub dual_defect: Option<T>,
    pub rank_tol: T,
    host: u64,
}

/// JSON summary of a frame.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FrameSummary<T> {
    pub omega: T,
    #[serde(rename = "U")]
    pub u: VertexSet,
    pub dim: usize,
    #[serde(rename = "A")]
    pub lower: T,
    #[serde(rename = "B")]
    pub upper: T,
    #[serde(rename = "C_omega")]
    pub c_omega: Option<T>,
    pub unique: bool,
}

impl<T: Scalar> SamplingFrame<T> {
    pub fn dim(&self) -> usize {
        self.indices.len()
    }

    /// `A > rank_tol · B`: the samples determine every element of `PW_ω`.
    pub fn is_frame(&self) -> bool {
        self.upper > T::zero() && self.lower > self.rank_tol * self.upper
    }

    pub fn host(&self) -> u64 {
        self.host
    }

    pub fn summary(&self) -> FrameSummary<T> {
        FrameSummary {
            omega: self.omega,
            u: self.u.clone(),
            dim: self.dim(),
            lower: self.lower,
            upper: self.upper,
            c_omega: self.c_omega,
            unique: self.is_frame(),
        }
    }

    fn require_frame(&self) -> Result<()> {
        if self.is_frame() {
            Ok(())
        } else {
            Err(Error::NotAFrame {
                lower: self.lower.as_f64(),
                upper: self.upper.as_f64(),
            })
        }
    }

    /// Raw samples `f(u)` in the order of `U`.
    pub fn sample(&self, f: &Signal<T>) -> Result<Vec<T>> {
        f.check_host(self.host)?;
        Ok(self.u.iter().map(|u| f.values()[u]).collect())
    }

    /// Orders a vertex → value map along `U`.
    pub fn samples_from_map(&self, map: &BTreeMap<VertexId, T>) -> Result<Vec<T>> {
        self.u
            .iter()
            .map(|u| map.get(&u).copied().ok_or(Error::MissingSample(u)))
            .collect()
    }

    fn check_samples(&self, samples: &[T]) -> Result<()> {
        if samples.len() == self.u.len() {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                expected: self.u.len(),
                got: samples.len(),
            })
        }
    }

    /// `Σ_u ⟨f, ϑ_u⟩ ϑ_u` in coordinates, from raw samples.
    fn analysis_adjoint(&self, samples: &[T]) -> Vec<T> {
        let inner: Vec<T> = samples
            .iter()
            .zip(&self.weights)
            .map(|(&s, &w)| s * w)
            .collect();
        self.analysis.tr_mul_vec(&inner)
    }

    fn frame_operator(&self) -> Matrix<T> {
        self.analysis.gram()
    }

    fn lift(&self, coords: &[T]) -> Signal<T> {
        Signal::from_parts(self.host, self.basis.mul_vec(coords))
    }

    /// Vertex-space dual vector `Θ_{u_i}`.
    pub fn dual_vector(&self, i: usize) -> Option<Signal<T>> {
        self.dual.as_ref().map(|d| self.lift(d.row(i)))
    }

    /// Largest entry of `Σ_u ϑ_u(v)Θ_u(w) − P_ω(v, w)`; the frame and its dual
    /// reproduce the kernel of the projection onto `PW_ω`.
    pub fn kernel_defect(&self) -> Option<T> {
        let dual = self.dual.as_ref()?;
        let theta = self.basis.matmul(&self.analysis.transpose());
        let big_theta = self.basis.matmul(&dual.transpose());
        let kernel = theta.matmul(&big_theta.transpose());
        let projector = self.basis.matmul(&self.basis.transpose());
        Some(kernel.max_abs_diff(&projector))
    }
}

/// Frame bounds of the point evaluations on `U` restricted to `PW_ω`.
///
/// `A = 0` (up to the relative rank tolerance) is a valid outcome meaning
/// that `U` is not a uniqueness set.
pub fn frame_bounds<T: Scalar>(
    dec: &SpectralDecomposition<T>,
    omega: T,
    u: &VertexSet,
    options: impl Into<FrameOptions<T>>,
) -> Result<SamplingFrame<T>> {
    let FrameOptions {
        normalization,
        rank_tol,
    } = options.into();
    if u.is_empty() {
        return Err(Error::InvalidParameter(
            "sampling set must be non-empty".into(),
        ));
    }
    if let Some(&v) = u.members().last() {
        if v >= dec.n() {
            return Err(Error::OutOfRange {
                vertex: v,
                n: dec.n(),
            });
        }
    }
    if omega < T::zero() {
        return Err(Error::ValueOutOfRange {
            value: omega.as_f64(),
            range: "[0, ∞)",
        });
    }
    let space = dec.pw_space(omega);
    let q = dec.eigenvectors();
    let basis = Matrix::from_fn(dec.n(), space.dim, |v, j| q[(v, space.indices[j])]);
    let weights: Vec<T> = u
        .iter()
        .map(|v| match normalization {
            FrameNormalization::PlainDelta => T::one(),
            FrameNormalization::DegreeNormalized => T::of_usize(dec.degrees()[v]).sqrt().recip(),
        })
        .collect();
    let analysis = Matrix::from_fn(u.len(), space.dim, |i, j| {
        weights[i] * basis[(u.members()[i], j)]
    });
    let (eigs, _) = symmetric_eigen(&analysis.gram())?;
    let upper = eigs.last().copied().unwrap_or(T::zero()).max(T::zero());
    let lower = eigs.first().copied().unwrap_or(T::zero()).max(T::zero());
    let mut frame = SamplingFrame {
        omega,
        u: u.clone(),
        normalization,
        band: space
            .indices
            .iter()
            .map(|&j| dec.eigenvalues()[j])
            .collect(),
        indices: space.indices,
        basis,
        analysis,
        weights,
        lower,
        upper,
        c_omega: None,
        dual: None,
        dual_defect: None,
        rank_tol,
        host: dec.host(),
    };
    if frame.is_frame() {
        frame.c_omega = Some(lower.sqrt().recip());
    }
    Ok(frame)
}

/// Fills the dual frame `Θ_u = F⁻¹ϑ_u` and checks the reconstruction identity
/// on every basis vector of `PW_ω`.
pub fn dual_frame<T: Scalar>(mut frame: SamplingFrame<T>) -> Result<SamplingFrame<T>> {
    frame.require_frame()?;
    let inverse = spd_inverse(&frame.frame_operator())?;
    let dual = frame.analysis.matmul(&inverse);
    frame.dual = Some(dual);

    let mut defect = T::zero();
    for j in 0..frame.dim() {
        let truth = frame.basis.column(j);
        let samples: Vec<T> = frame.u.iter().map(|v| truth[v]).collect();
        let rebuilt = synthesize_from_dual(&frame, &samples);
        defect = defect.max(distance(&rebuilt, &truth));
    }
    frame.dual_defect = Some(defect);
    if defect > T::of(DUAL_CHECK_TOL) {
        return Err(Error::NotAFrame {
            lower: frame.lower.as_f64(),
            upper: frame.upper.as_f64(),
        });
    }
    Ok(frame)
}

/// `Σ_u w_u f(u) Θ_u` in vertex space.
fn synthesize_from_dual<T: Scalar>(frame: &SamplingFrame<T>, samples: &[T]) -> Vec<T> {
    let dual = frame.dual.as_ref().expect("dual frame computed");
    let inner: Vec<T> = samples
        .iter()
        .zip(&frame.weights)
        .map(|(&s, &w)| s * w)
        .collect();
    frame.basis.mul_vec(&dual.tr_mul_vec(&inner))
}

/// Dual-frame reconstruction `f = Σ_u ⟨f, ϑ_u⟩ Θ_u` from raw samples `f(u)`.
///
/// Samples of a signal outside `PW_ω` produce the frame-consistent element
/// of `PW_ω` (the least-squares fit to the samples).
pub fn reconstruct_direct<T: Scalar>(frame: &SamplingFrame<T>, samples: &[T]) -> Result<Signal<T>> {
    frame.require_frame()?;
    frame.check_samples(samples)?;
    let values = match frame.dual {
        Some(_) => synthesize_from_dual(frame, samples),
        None => {
            let inverse = spd_inverse(&frame.frame_operator())?;
            frame
                .basis
                .mul_vec(&inverse.mul_vec(&frame.analysis_adjoint(samples)))
        }
    };
    Ok(Signal::from_parts(frame.host, values))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NeumannOptions<T> {
    /// Stop once both the relative step and the a-posteriori error estimate
    /// fall below this value.
    pub tol: T,
    pub max_iter: usize,
    /// Scale `1/c` of the iteration; any value `≥ B`. Defaults to `B`.
    pub upper: Option<T>,
}

impl<T: Scalar> Default for NeumannOptions<T> {
    fn default() -> Self {
        Self {
            tol: T::of(1e-10),
            max_iter: 10_000,
            upper: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReconstructionReport<T> {
    pub iterations: usize,
    /// `‖f_k − f_{k−1}‖ / ‖f_k‖` per iteration.
    pub residual_history: Vec<T>,
    /// `‖f_rec − f_true‖`, filled by the caller when the truth is known.
    pub final_error: Option<T>,
    pub converged: bool,
    /// Contraction factor `1 − A/B_upper` guaranteed by the frame bounds.
    pub contraction: T,
    /// Geometric mean of successive step ratios actually observed.
    pub observed_ratio: Option<T>,
}

/// Neumann-series inversion of the frame operator:
/// `f_0 = c·g`, `f_{k+1} = f_k + c(g − F f_k)` with `g = Σ_u ⟨f, ϑ_u⟩ϑ_u`
/// and `c = 1/B_upper`; converges linearly with ratio `1 − A/B_upper`.
pub fn reconstruct_neumann<T: Scalar>(
    frame: &SamplingFrame<T>,
    samples: &[T],
    options: &NeumannOptions<T>,
) -> Result<(Signal<T>, ReconstructionReport<T>)> {
    frame.require_frame()?;
    frame.check_samples(samples)?;
    let upper = options.upper.unwrap_or(frame.upper);
    if upper < frame.upper * (T::one() - T::of(1e3) * T::epsilon()) {
        return Err(Error::InvalidParameter(
            "Neumann scale must be at least the upper frame bound".into(),
        ));
    }
    let c = upper.recip();
    let rho = T::one() - c * frame.lower;
    let amplification = rho / (T::one() - rho);
    let op = frame.frame_operator();
    let g = frame.analysis_adjoint(samples);

    let mut x: Vec<T> = g.iter().map(|&v| c * v).collect();
    let mut history = Vec::new();
    let mut steps = Vec::new();
    let mut converged = false;
    for _ in 0..options.max_iter {
        let fx = op.mul_vec(&x);
        let step: Vec<T> = g.iter().zip(&fx).map(|(&gi, &fi)| c * (gi - fi)).collect();
        for (xi, si) in x.iter_mut().zip(&step) {
            *xi = *xi + *si;
        }
        let step_norm = norm(&step);
        let x_norm = norm(&x);
        let relative = if x_norm > T::zero() {
            step_norm / x_norm
        } else {
            step_norm
        };
        history.push(relative);
        steps.push(step_norm);
        if relative <= options.tol && amplification * relative <= options.tol {
            converged = true;
            break;
        }
    }
    let observed_ratio = observed_ratio(&steps);
    let report = ReconstructionReport {
        iterations: history.len(),
        residual_history: history,
        final_error: None,
        converged,
        contraction: rho,
        observed_ratio,
    };
    if !converged {
        return Err(Error::NoConvergence {
            iterations: report.iterations,
            residual: report
                .residual_history
                .last()
                .copied()
                .unwrap_or(T::zero())
                .as_f64(),
        });
    }
    Ok((frame.lift(&x), report))
}

/// Geometric mean of `s_{k+1}/s_k` over the recorded steps, ignoring the
/// tail once steps reach round-off.
fn observed_ratio<T: Scalar>(steps: &[T]) -> Option<T> {
    let first = *steps.first()?;
    if first <= T::zero() {
        return None;
    }
    let floor = first * T::of(1e3) * T::epsilon();
    let usable = steps.iter().take_while(|&&s| s > floor).count();
    if usable < 2 {
        return None;
    }
    let ratio = (steps[usable - 1] / first).ln() / T::of_usize(usable - 1);
    Some(ratio.exp())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DerivativeReconstruction<T> {
    #[serde(skip)]
    pub signal: Signal<T>,
    pub s: T,
    /// `‖(I+L)^s‖·‖(I+L)^{−s}‖` on `PW_ω`.
    pub condition_number: T,
    /// Frame bounds of the transformed analysis family.
    pub lower: T,
    pub upper: T,
}

/// Recovers `f ∈ PW_ω` from samples of `(I+L)^s f` on `U`, using the analysis
/// family `P_ω((I+L)^s δ_u)`.
pub fn reconstruct_derivative<T: Scalar>(
    frame: &SamplingFrame<T>,
    s: T,
    samples: &[T],
) -> Result<DerivativeReconstruction<T>> {
    frame.require_frame()?;
    frame.check_samples(samples)?;
    let scale: Vec<T> = frame
        .band
        .iter()
        .map(|&l| (T::one() + l.max(T::zero())).powf(s))
        .collect();
    let analysis = Matrix::from_fn(frame.u.len(), frame.dim(), |i, j| {
        frame.analysis[(i, j)] * scale[j]
    });
    let op = analysis.gram();
    let (eigs, _) = symmetric_eigen(&op)?;
    let upper = eigs.last().copied().unwrap_or(T::zero()).max(T::zero());
    let lower = eigs.first().copied().unwrap_or(T::zero()).max(T::zero());
    if !(upper > T::zero() && lower > frame.rank_tol * upper) {
        return Err(Error::NotAFrame {
            lower: lower.as_f64(),
            upper: upper.as_f64(),
        });
    }
    let inner: Vec<T> = samples
        .iter()
        .zip(&frame.weights)
        .map(|(&v, &w)| v * w)
        .collect();
    let coords = spd_inverse(&op)?.mul_vec(&analysis.tr_mul_vec(&inner));

    let lo = frame
        .band
        .iter()
        .copied()
        .fold(T::infinity(), T::min)
        .max(T::zero());
    let hi = frame.band.iter().copied().fold(T::zero(), T::max);
    let condition_number = ((T::one() + hi) / (T::one() + lo)).powf(s.abs());
    Ok(DerivativeReconstruction {
        signal: frame.lift(&coords),
        s,
        condition_number,
        lower,
        upper,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictionRank {
    pub rank: usize,
    pub set_size: usize,
    pub dim: usize,
    /// Restriction `PW_ω → L₂(S)` is onto (`rank = |S|`).
    pub surjective: bool,
}

/// Rank of the restriction of `PW_ω` to the coordinates in `S`.
pub fn restriction_rank<T: Scalar>(
    dec: &SpectralDecomposition<T>,
    omega: T,
    s: &VertexSet,
) -> Result<RestrictionRank> {
    if let Some(&v) = s.members().last() {
        if v >= dec.n() {
            return Err(Error::OutOfRange {
                vertex: v,
                n: dec.n(),
            });
        }
    }
    let space = dec.pw_space(omega);
    if s.is_empty() {
        return Ok(RestrictionRank {
            rank: 0,
            set_size: 0,
            dim: space.dim,
            surjective: true,
        });
    }
    let q = dec.eigenvectors();
    // columns are the rows of the restriction, so the Gram is |S| × |S|
    let block = Matrix::from_fn(space.dim, s.len(), |j, i| {
        q[(s.members()[i], space.indices[j])]
    });
    let (eigs, _) = symmetric_eigen(&block.gram())?;
    let rank = gram_rank(&eigs);
    Ok(RestrictionRank {
        rank,
        set_size: s.len(),
        dim: space.dim,
        surjective: rank == s.len(),
    })
}
