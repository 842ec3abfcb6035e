//! Poincaré constants of vertex sets: the exact value `Λ(S)` from the
//! restricted Laplacian, certified upper bounds through the doubled graph
//! Γ(S), closed forms for model sets and the structural Λ-set lemmas.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{
    boundary, cheeger_constant, closure, diameter, gamma_double, induced_subgraph,
    tree_level_ranges, volume, volume_in_induced, Graph, GraphKind, VertexId, VertexSet,
};
use crate::linalg::symmetric_eigen;
use crate::scalar::{norm, Scalar};
use crate::spectral::{laplacian_apply_raw, laplacian_matrix, Signal, SpectralDecomposition};

/// Gap kept below every strict threshold `ω < 1/Λ`.
pub const THRESHOLD_GUARD: f64 = 1e-9;

/// Number of random probes used for the embedding identities behind the Γ(S)
/// bound.
const GAMMA_PROBES: usize = 16;
const GAMMA_PROBE_SEED: u64 = 0x5eed_0f6a;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundMethod {
    GammaEigen,
    Cheeger,
    Diamvol,
    ClosureDiamvol,
    SingleVertex,
    Successive1d,
    TreeLevel,
    SparseLemma,
    WitnessLemma,
    Union,
}

/// One certified upper bound on `Λ(S)`. `value` is absent when the bound
/// could not be evaluated (disconnected Γ(S), size limits).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LambdaBound<T> {
    pub method: BoundMethod,
    pub value: Option<T>,
    pub valid: bool,
}

impl<T: Scalar> LambdaBound<T> {
    fn certified(method: BoundMethod, value: T) -> Self {
        Self {
            method,
            value: Some(value),
            valid: value.is_finite(),
        }
    }

    fn unavailable(method: BoundMethod) -> Self {
        Self {
            method,
            value: None,
            valid: false,
        }
    }
}

/// A vertex set together with its exact Poincaré constant and every upper
/// bound that was certified for it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LambdaCertificate<T> {
    pub set: VertexSet,
    pub lambda_exact: T,
    /// `1/Λ`: bandwidths strictly below it are removable.
    pub omega_star: T,
    pub bounds: Vec<LambdaBound<T>>,
}

impl<T: Scalar> LambdaCertificate<T> {
    /// Smallest valid certified bound, if any.
    pub fn best_bound(&self) -> Option<T> {
        self.bounds
            .iter()
            .filter(|b| b.valid)
            .filter_map(|b| b.value)
            .fold(None, |acc, v| Some(acc.map_or(v, |a: T| a.min(v))))
    }

    pub fn bound(&self, method: BoundMethod) -> Option<&LambdaBound<T>> {
        self.bounds.iter().find(|b| b.method == method)
    }
}

fn require_proper(g: &Graph, s: &VertexSet) -> Result<()> {
    s.check_in(g)?;
    if s.is_empty() {
        return Err(Error::InvalidParameter(
            "vertex set must be non-empty".into(),
        ));
    }
    Ok(())
}

/// Smallest singular value of the `n × |S|` column block `L[:, S]`, from the
/// eigenvalues of its Gram matrix, together with the Gram round-off level
/// below which the smallest eigenvalue carries no information.
fn restricted_gram_minimum<T: Scalar>(g: &Graph, s: &VertexSet) -> Result<(T, T)> {
    require_proper(g, s)?;
    let l = laplacian_matrix::<T>(g);
    let rows: Vec<usize> = (0..g.n()).collect();
    let gram = l.select(&rows, s.members()).gram();
    let (eigs, _) = symmetric_eigen(&gram)?;
    let top = eigs.last().copied().unwrap_or(T::zero());
    let noise = T::of_usize(64 * s.len()) * T::epsilon() * top;
    Ok((eigs[0], noise))
}

pub fn restricted_sigma_min<T: Scalar>(g: &Graph, s: &VertexSet) -> Result<T> {
    Ok(restricted_gram_minimum::<T>(g, s)?.0.max(T::zero()).sqrt())
}

/// Exact Poincaré constant `Λ(S) = 1/σ_min(L[:, S])`: the smallest `Λ` with
/// `‖φ‖ ≤ Λ‖Lφ‖` for every `φ` supported on `S`.
///
/// The restriction counts as singular when `σ_min` falls under the absolute
/// floor or when `σ_min²` is indistinguishable from Gram round-off.
pub fn lambda_exact<T: Scalar>(g: &Graph, s: &VertexSet) -> Result<T> {
    let (gram_min, noise) = restricted_gram_minimum::<T>(g, s)?;
    let sigma = gram_min.max(T::zero()).sqrt();
    if sigma < T::singular_floor() || gram_min <= noise {
        return Err(Error::SingularRestriction {
            sigma_min: sigma.as_f64(),
        });
    }
    Ok(sigma.recip())
}

/// Closed form for a single vertex:
/// `Λ(v) = (1 + (1/d(v)) Σ_{w∼v} 1/d(w))^{−1/2}`.
pub fn lambda_single_vertex<T: Scalar>(g: &Graph, v: VertexId) -> Result<T> {
    g.check_vertex(v)?;
    g.require_connected()?;
    if g.degree(v) == 0 {
        return Err(Error::InvalidParameter("vertex has no neighbours".into()));
    }
    let sum: T = g
        .neighbors(v)
        .iter()
        .map(|&w| T::of_usize(g.degree(w)).recip())
        .sum();
    Ok((T::one() + sum / T::of_usize(g.degree(v))).sqrt().recip())
}

/// `Ω_G = √(1 + 1/d(G))`: every `PW_ω` with `ω < Ω_G` has a non-trivial
/// uniqueness set.
pub fn omega_star_global<T: Scalar>(g: &Graph) -> Result<T> {
    g.require_connected()?;
    if g.max_degree() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok((T::one() + T::of_usize(g.max_degree()).recip()).sqrt())
}

/// Bound `1/λ₁(Γ(S))` together with the checks of the odd embedding
/// `φ ↦ F_φ` it rests on.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GammaBound<T> {
    pub value: T,
    /// Smallest positive eigenvalue of Γ(S).
    pub lambda1: T,
    pub gamma_vertices: usize,
    pub gamma_connected: bool,
    /// `‖F_φ‖ = √2‖φ‖` on every probe.
    pub norm_identity: bool,
    /// `‖L_Γ F_φ‖ ≤ √2‖L_G φ‖` on every probe.
    pub energy_inequality: bool,
}

/// Uniform random values on `S`, zero elsewhere.
pub fn random_supported<T: Scalar, R: Rng>(rng: &mut R, n: usize, s: &VertexSet) -> Vec<T> {
    let mut values = vec![T::zero(); n];
    for v in s.iter() {
        values[v] = T::of(rng.gen_range(-1.0..1.0));
    }
    values
}

pub fn lambda_via_gamma<T: Scalar>(g: &Graph, s: &VertexSet) -> Result<GammaBound<T>> {
    require_proper(g, s)?;
    let gamma = gamma_double(g, s)?;
    let lambda1 = crate::spectral::first_positive_eigenvalue::<T>(&gamma.graph)?;

    let tol = T::of(1e3) * T::epsilon();
    let sqrt2 = T::SQRT_2();
    let mut rng = ChaCha8Rng::seed_from_u64(GAMMA_PROBE_SEED);
    let (mut norm_identity, mut energy_inequality) = (true, true);
    for _ in 0..GAMMA_PROBES {
        let phi: Vec<T> = random_supported(&mut rng, g.n(), s);
        let mut lifted = vec![T::zero(); gamma.graph.n()];
        for (i, &v) in gamma.closure.vertices.iter().enumerate() {
            if !gamma.on_boundary[i] {
                lifted[gamma.map_copy1[i]] = phi[v];
                lifted[gamma.map_copy2[i]] = -phi[v];
            }
        }
        let (phi_norm, lifted_norm) = (norm(&phi), norm(&lifted));
        norm_identity &= (lifted_norm - sqrt2 * phi_norm).abs() <= tol * lifted_norm.max(T::one());
        let lg = norm(&laplacian_apply_raw(g, &phi));
        let lgamma = norm(&laplacian_apply_raw(&gamma.graph, &lifted));
        energy_inequality &= lgamma <= sqrt2 * lg + tol * lg.max(T::one());
    }

    Ok(GammaBound {
        value: lambda1.recip(),
        lambda1,
        gamma_vertices: gamma.graph.n(),
        gamma_connected: gamma.graph.is_connected(),
        norm_identity,
        energy_inequality,
    })
}

/// The Γ(S) bound family: `1/λ₁(Γ)`, `2/h²_Γ`, `D(Γ)·vol(Γ)` and
/// `2·D(S̄)·(vol S + vol_S̄ bS)`.
///
/// The Cheeger bound is reported without a value when Γ(S) has more than
/// `cheeger_limit` vertices; the isoperimetric bounds need a connected Γ(S)
/// (respectively S̄).
pub fn lambda_bounds<T: Scalar>(
    g: &Graph,
    s: &VertexSet,
    cheeger_limit: usize,
) -> Result<Vec<LambdaBound<T>>> {
    require_proper(g, s)?;
    let gamma = gamma_double(g, s)?;
    let via = lambda_via_gamma::<T>(g, s)?;
    let mut bounds = vec![LambdaBound {
        method: BoundMethod::GammaEigen,
        value: Some(via.value),
        valid: via.norm_identity && via.energy_inequality,
    }];

    let connected = gamma.graph.is_connected();
    bounds.push(if connected && gamma.graph.n() <= cheeger_limit {
        let h: T = cheeger_constant(&gamma.graph, cheeger_limit)?.value();
        LambdaBound::certified(BoundMethod::Cheeger, T::of(2.0) / (h * h))
    } else {
        LambdaBound::unavailable(BoundMethod::Cheeger)
    });
    bounds.push(if connected {
        let vol = volume(&gamma.graph, &VertexSet::all(&gamma.graph));
        LambdaBound::certified(
            BoundMethod::Diamvol,
            T::of_usize(diameter(&gamma.graph)? * vol),
        )
    } else {
        LambdaBound::unavailable(BoundMethod::Diamvol)
    });
    bounds.push(if gamma.closure.graph.is_connected() {
        let closure_set = VertexSet::new(gamma.closure.vertices.clone());
        let bs = boundary(g, s)?;
        let vol = volume(g, s) + volume_in_induced(g, &closure_set, &bs);
        let d = diameter(&gamma.closure.graph)?;
        LambdaBound::certified(BoundMethod::ClosureDiamvol, T::of_usize(2 * d * vol))
    } else {
        LambdaBound::unavailable(BoundMethod::ClosureDiamvol)
    });
    Ok(bounds)
}

/// `Λ = (1/2)·sin^{−2}(π/(2N+2))` for `N` successive vertices of the line.
pub fn lambda_closed_form_1d<T: Scalar>(n: usize) -> Result<T> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "block length must be at least 1".into(),
        ));
    }
    let s = (T::PI() / T::of_usize(2 * n + 2)).sin();
    Ok(T::of(0.5) / (s * s))
}

/// Largest removable block length on the line for a bandwidth `ω`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NyquistReport<T> {
    pub omega: T,
    /// `π/(2·arcsin√(ω/2)) − 1`
    pub bound: T,
    /// Largest `N` with `N < bound` (strict, with the threshold guard).
    pub strict: usize,
    /// Largest `N` with `N ≤ bound`.
    pub boundary: usize,
    /// Small-ω asymptote `π/√(2ω)`.
    pub asymptote: T,
}

pub fn nyquist_size_1d<T: Scalar>(omega: T) -> Result<NyquistReport<T>> {
    if !(omega > T::zero() && omega < T::of(2.0)) {
        return Err(Error::ValueOutOfRange {
            value: omega.as_f64(),
            range: "(0, 2)",
        });
    }
    let bound = T::PI() / (T::of(2.0) * (omega / T::of(2.0)).sqrt().asin()) - T::one();
    let guard = T::of(THRESHOLD_GUARD);
    let count = |x: T| x.max(T::zero()).to_usize().unwrap_or(0);
    Ok(NyquistReport {
        omega,
        bound,
        strict: count((bound - guard).ceil() - T::one()),
        boundary: count((bound + guard).floor()),
        asymptote: T::PI() / (T::of(2.0) * omega).sqrt(),
    })
}

/// Poincaré constant of a level set of the homogeneous tree of order `q+1`:
/// `(1 + q/(q+1)²)^{−1/2}`.
pub fn lambda_tree_level<T: Scalar>(q: usize) -> Result<T> {
    if q < 2 {
        return Err(Error::InvalidParameter(
            "tree branching q must be at least 2".into(),
        ));
    }
    let q = T::of_usize(q);
    Ok((T::one() + q / ((q + T::one()) * (q + T::one())))
        .sqrt()
        .recip())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TreeLevelReport<T> {
    pub q: usize,
    pub level: usize,
    pub lambda_exact: T,
    pub closed_form: T,
    pub holds: bool,
}

/// Checks the level-set constant on `tree(q, m + 2)`; two extra levels make
/// the truncation invisible to signals supported on level `m`.
pub fn tree_level_check<T: Scalar>(q: usize, level: usize) -> Result<TreeLevelReport<T>> {
    if level == 0 {
        return Err(Error::InvalidParameter(
            "tree level must be at least 1".into(),
        ));
    }
    let closed_form = lambda_tree_level::<T>(q)?;
    let g = Graph::generate(&GraphKind::Tree {
        q,
        depth: level + 2,
    })?;
    let s: VertexSet = tree_level_ranges(q, level + 2)[level].clone().collect();
    let exact = lambda_exact::<T>(&g, &s)?;
    Ok(TreeLevelReport {
        q,
        level,
        lambda_exact: exact,
        closed_form,
        holds: exact <= closed_form + T::of(THRESHOLD_GUARD),
    })
}

/// Constant granted by one of the combinatorial Λ-set lemmas.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct StructuralBound<T> {
    pub method: BoundMethod,
    pub value: T,
}

/// Every combinatorial Λ-set criterion whose hypotheses hold for `S`.
///
/// * `sparse_lemma` — no two vertices of `S` are adjacent: `Λ = 1`.
/// * `witness_lemma` — every `v ∈ S` has a boundary neighbour `u_v` whose
///   only neighbour in `S` is `v`. The witness rows of `Lφ` give
///   `‖Lφ‖² ≥ Σ_v |φ(v)|²/(d(v)d(u_v))`, so the constant returned is
///   `max(sup_S d(v), max_v min_{u_v} √(d(v)d(u_v)))`.
pub fn lambda_structural<T: Scalar>(g: &Graph, s: &VertexSet) -> Result<Vec<StructuralBound<T>>> {
    s.check_in(g)?;
    let mut found = Vec::new();
    if s.is_empty() || boundary(g, s)?.is_empty() {
        return Ok(found);
    }
    let mask = s.mask(g.n());
    if s.iter().all(|v| g.neighbors(v).iter().all(|&u| !mask[u])) {
        found.push(StructuralBound {
            method: BoundMethod::SparseLemma,
            value: T::one(),
        });
    }

    let witness_degree = |v: VertexId| {
        g.neighbors(v)
            .iter()
            .filter(|&&u| !mask[u])
            .filter(|&&u| g.neighbors(u).iter().filter(|&&w| mask[w]).count() == 1)
            .map(|&u| g.degree(u))
            .min()
    };
    let witnessed: Option<Vec<T>> = s
        .iter()
        .map(|v| witness_degree(v).map(|du| T::of_usize(g.degree(v) * du).sqrt()))
        .collect();
    if let Some(constants) = witnessed {
        let sup_degree = T::of_usize(s.iter().map(|v| g.degree(v)).max().unwrap_or(0));
        let value = constants.into_iter().fold(sup_degree, T::max);
        found.push(StructuralBound {
            method: BoundMethod::WitnessLemma,
            value,
        });
    }
    Ok(found)
}

/// Length of `S` when `S̄` induces a path whose two endpoints form `bS`;
/// Γ(S) is then the cycle on `2|S| + 2` vertices.
fn successive_block_len(g: &Graph, s: &VertexSet) -> Result<Option<usize>> {
    let bs = boundary(g, s)?;
    if bs.len() != 2 {
        return Ok(None);
    }
    let closure_set = closure(g, s)?;
    let sub = induced_subgraph(g, &closure_set)?;
    let path_like = sub.graph.is_connected()
        && sub.graph.edge_count() + 1 == sub.graph.n()
        && sub.graph.max_degree() <= 2
        && bs
            .iter()
            .all(|v| sub.local(v).is_some_and(|i| sub.graph.degree(i) == 1));
    Ok(path_like.then_some(s.len()))
}

/// Builds the full certificate for `S`: exact constant plus every bound whose
/// hypotheses hold.
pub fn certify<T: Scalar>(
    g: &Graph,
    s: &VertexSet,
    cheeger_limit: usize,
) -> Result<LambdaCertificate<T>> {
    let lambda = lambda_exact::<T>(g, s)?;
    let mut bounds = lambda_bounds::<T>(g, s, cheeger_limit)?;
    if s.len() == 1 {
        let v = s.members()[0];
        bounds.push(LambdaBound::certified(
            BoundMethod::SingleVertex,
            lambda_single_vertex(g, v)?,
        ));
    }
    if let Some(n) = successive_block_len(g, s)? {
        bounds.push(LambdaBound::certified(
            BoundMethod::Successive1d,
            lambda_closed_form_1d(n)?,
        ));
    }
    for b in lambda_structural::<T>(g, s)? {
        bounds.push(LambdaBound::certified(b.method, b.value));
    }
    Ok(LambdaCertificate {
        set: s.clone(),
        lambda_exact: lambda,
        omega_star: lambda.recip(),
        bounds,
    })
}

/// Certificate of a union of sets with pairwise disjoint closures:
/// `Λ = sup_j Λ_j`.
///
/// Because the pieces `φ_j` and their images `Lφ_j` are mutually orthogonal,
/// the exact constant of the union is the largest exact constant of the
/// parts, and every bound family carries over through the same supremum.
pub fn lambda_union<T: Scalar>(
    g: &Graph,
    certs: &[LambdaCertificate<T>],
) -> Result<LambdaCertificate<T>> {
    if certs.is_empty() {
        return Err(Error::InvalidParameter(
            "union needs at least one certificate".into(),
        ));
    }
    let closures = certs
        .iter()
        .map(|c| closure(g, &c.set))
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
    let set = certs
        .iter()
        .skip(1)
        .fold(certs[0].set.clone(), |acc, c| acc.union(&c.set));
    let lambda = certs.iter().map(|c| c.lambda_exact).fold(T::zero(), T::max);

    let mut bounds = Vec::new();
    for method in [
        BoundMethod::GammaEigen,
        BoundMethod::Cheeger,
        BoundMethod::Diamvol,
        BoundMethod::ClosureDiamvol,
    ] {
        let parts: Option<Vec<T>> = certs
            .iter()
            .map(|c| c.bound(method).filter(|b| b.valid).and_then(|b| b.value))
            .collect();
        bounds.push(match parts {
            Some(values) => {
                LambdaBound::certified(method, values.into_iter().fold(T::zero(), T::max))
            }
            None => LambdaBound::unavailable(method),
        });
    }
    let best: Option<Vec<T>> = certs.iter().map(LambdaCertificate::best_bound).collect();
    if let Some(values) = best {
        bounds.push(LambdaBound::certified(
            BoundMethod::Union,
            values.into_iter().fold(T::zero(), T::max),
        ));
    }
    Ok(LambdaCertificate {
        set,
        lambda_exact: lambda,
        omega_star: lambda.recip(),
        bounds,
    })
}

/// Worst observed ratio `‖L^t φ‖ / (Λ^k ‖L^{k+t} φ‖)` over random `φ`
/// supported on `S`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PowerReport<T> {
    pub t: T,
    pub k: u32,
    pub trials: usize,
    pub worst_ratio: T,
    pub holds: bool,
}

#[allow(clippy::too_many_arguments)]
pub fn power_inequality_check<T: Scalar>(
    g: &Graph,
    dec: &SpectralDecomposition<T>,
    s: &VertexSet,
    lambda: T,
    t: T,
    k: u32,
    trials: usize,
    seed: u64,
) -> Result<PowerReport<T>> {
    if k == 0 || !k.is_power_of_two() {
        return Err(Error::InvalidParameter(
            "power k must be a power of two".into(),
        ));
    }
    if t < T::zero() {
        return Err(Error::InvalidParameter(
            "exponent t must be non-negative".into(),
        ));
    }
    require_proper(g, s)?;
    if dec.host() != g.id() {
        return Err(Error::HostMismatch);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = lambda.powi(k as i32);
    let mut worst = T::zero();
    for _ in 0..trials {
        let phi = Signal::new(g, random_supported(&mut rng, g.n(), s))?;
        let lhs = dec.apply_power(t, &phi, T::zero())?.norm();
        let rhs = scale
            * dec
                .apply_power(t + T::of(k as f64), &phi, T::zero())?
                .norm();
        if rhs > T::zero() {
            worst = worst.max(lhs / rhs);
        } else if lhs > T::zero() {
            worst = T::infinity();
        }
    }
    Ok(PowerReport {
        t,
        k,
        trials,
        worst_ratio: worst,
        holds: worst <= T::one() + T::of(THRESHOLD_GUARD),
    })
}
