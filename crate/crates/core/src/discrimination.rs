//! Discriminating two equiprobable pure states with a projective measurement.
//!
//! Every problem is reduced to a canonical qubit living in the plane spanned
//! by the two hypothesis states: the first state becomes |0⟩ and the second
//! becomes `cos(α/2)|0⟩ − i·sin(α/2)|1⟩` up to a global phase, i.e. the
//! azimuth is rotated to 3π/2. For a qubit with the first state at |0⟩ this
//! is exactly the `R_z(3π/2 − β)` rotation. The entropy-optimal basis and the
//! ring of erasing bases are written down in that frame and mapped back.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use rand::rngs::StdRng;
use rand::SeedableRng;
use rand_distr::{Distribution, StandardNormal};

use crate::dist::OutcomeDistribution;
use crate::error::{Error, Result};
use crate::optimize::nelder_mead;
use crate::qstate::{
    bloch_rotation, dot, equatorial_pair, norm_sqr, Axis, BlochVector, ProjectiveBasis, PureState,
    I, ONE, ZERO,
};

/// Overlap moduli above `1 − DEGENERACY_TOL` are treated as parallel states.
pub const DEGENERACY_TOL: f64 = 1e-10;

/// Two hypothesis states prepared with probability 1/2 each.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscriminationProblem {
    phi1: PureState,
    phi2: PureState,
}

impl DiscriminationProblem {
    pub fn new(phi1: PureState, phi2: PureState) -> Result<Self> {
        if phi1.dim() != phi2.dim() {
            return Err(Error::DimensionMismatch {
                expected: phi1.dim(),
                found: phi2.dim(),
            });
        }
        Ok(Self { phi1, phi2 })
    }

    /// |0⟩ against cos(α/2)|0⟩ + e^{iβ} sin(α/2)|1⟩.
    pub fn qubit(alpha: f64, beta: f64) -> Self {
        Self {
            phi1: PureState::zero(),
            phi2: PureState::qubit(alpha, beta),
        }
    }

    pub fn phi1(&self) -> &PureState {
        &self.phi1
    }

    pub fn phi2(&self) -> &PureState {
        &self.phi2
    }

    pub fn dim(&self) -> usize {
        self.phi1.dim()
    }

    pub fn states(&self) -> [&PureState; 2] {
        [&self.phi1, &self.phi2]
    }

    /// ⟨φ₁|φ₂⟩
    pub fn overlap(&self) -> C64 {
        dot(self.phi1.amplitudes(), self.phi2.amplitudes())
    }

    pub fn frame(&self) -> PlaneFrame {
        PlaneFrame::new(self)
    }
}

/// Orthonormal frame `{first, second}` of the plane spanned by the hypothesis
/// states, plus an orthonormal completion of the full space.
///
/// In this frame `φ₁ = first` and
/// `φ₂ = e^{i·phase} (cos(α/2)·first − i·sin(α/2)·second)`.
#[derive(Clone, Debug)]
pub struct PlaneFrame {
    first: PureState,
    second: PureState,
    complement: Vec<PureState>,
    alpha: f64,
    phase: f64,
    degenerate: bool,
}

impl PlaneFrame {
    fn new(prob: &DiscriminationProblem) -> Self {
        let v1 = prob.phi1.amplitudes();
        let c = prob.overlap();
        let degenerate = c.norm() > 1.0 - DEGENERACY_TOL;
        let phase = if c.norm() > 0.0 { c.arg() } else { 0.0 };

        let (second, alpha) = if degenerate {
            (fallback_partner(v1), 0.0)
        } else {
            // two-vector Gram–Schmidt with one re-orthogonalization pass
            let mut r: Vec<C64> = prob
                .phi2
                .amplitudes()
                .iter()
                .zip(v1)
                .map(|(b, a)| b - c * a)
                .collect();
            let residual = r.iter().map(C64::norm_sqr).sum::<f64>().sqrt();
            let again = dot(v1, &r);
            r.iter_mut().zip(v1).for_each(|(x, a)| *x -= again * a);
            let n = norm_sqr(&r).sqrt();
            // second = i·e^{-i·phase}·r/|r| puts φ₂ at azimuth 3π/2
            let rot = I * C64::from_polar(1.0 / n, -phase);
            let w = r.into_iter().map(|x| x * rot).collect();
            (w, 2.0 * residual.atan2(c.norm()))
        };

        let complement = complete_basis(&[v1.to_vec(), second.clone()]);
        Self {
            first: prob.phi1.clone(),
            second: PureState::from_raw(second),
            complement,
            alpha,
            phase,
            degenerate,
        }
    }

    /// Angle α with |⟨φ₁|φ₂⟩| = cos(α/2).
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Global phase carried by φ₂ in the canonical frame (arg ⟨φ₁|φ₂⟩).
    pub fn phase(&self) -> f64 {
        self.phase
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn first(&self) -> &PureState {
        &self.first
    }

    pub fn second(&self) -> &PureState {
        &self.second
    }

    pub fn complement(&self) -> &[PureState] {
        &self.complement
    }

    /// `c₀·first + c₁·second`
    pub fn embed(&self, c: [C64; 2]) -> PureState {
        let amps = self
            .first
            .amplitudes()
            .iter()
            .zip(self.second.amplitudes())
            .map(|(a, b)| c[0] * a + c[1] * b)
            .collect();
        PureState::from_raw(amps)
    }

    /// Canonical coordinates of `s` projected onto the plane.
    pub fn coords(&self, s: &PureState) -> Result<[C64; 2]> {
        Ok([self.first.inner(s)?, self.second.inner(s)?])
    }

    /// Completes a pair of in-plane canonical vectors to a basis of the full space.
    pub(crate) fn basis_from_pair(&self, pair: [[C64; 2]; 2]) -> Result<ProjectiveBasis> {
        let mut vectors = vec![self.embed(pair[0]), self.embed(pair[1])];
        vectors.extend(self.complement.iter().cloned());
        ProjectiveBasis::new(vectors)
    }
}

/// A unit vector orthogonal to `v`.
fn fallback_partner(v: &[C64]) -> Vec<C64> {
    if v.len() == 2 {
        return vec![-v[1].conj(), v[0].conj()];
    }
    complete_basis(&[v.to_vec()])
        .into_iter()
        .next()
        .expect("dimension ≥ 3 has a nonempty complement")
        .into_amplitudes()
}

/// Extends orthonormal `known` vectors to a full basis with computational
/// vectors, greedily taking the one with the largest residual each time.
fn complete_basis(known: &[Vec<C64>]) -> Vec<PureState> {
    let dim = known[0].len();
    let mut frame: Vec<Vec<C64>> = known.to_vec();
    let mut out = Vec::with_capacity(dim - known.len());
    while frame.len() < dim {
        let candidate = (0..dim)
            .map(|k| {
                let mut e = vec![ZERO; dim];
                e[k] = ONE;
                for _ in 0..2 {
                    for f in &frame {
                        let p = dot(f, &e);
                        e.iter_mut().zip(f).for_each(|(x, y)| *x -= p * y);
                    }
                }
                e
            })
            .max_by(|a, b| norm_sqr(a).total_cmp(&norm_sqr(b)))
            .expect("dim > 0");
        let n = norm_sqr(&candidate).sqrt();
        let v: Vec<C64> = candidate.into_iter().map(|x| x / n).collect();
        frame.push(v.clone());
        out.push(PureState::from_raw(v));
    }
    out
}

/// Canonical-frame coordinates of the entropy-optimal pair:
/// `s₁ = cos((π+α)/4)|0⟩ − i sin((π+α)/4)|1⟩`,
/// `s₂ = cos((π−α)/4)|0⟩ + i sin((π−α)/4)|1⟩`.
pub fn canonical_symmetric_pair(alpha: f64) -> [[C64; 2]; 2] {
    let (s1, c1) = ((PI + alpha) / 4.0).sin_cos();
    let (s2, c2) = ((PI - alpha) / 4.0).sin_cos();
    [
        [C64::new(c1, 0.0), C64::new(0.0, -s1)],
        [C64::new(c2, 0.0), C64::new(0.0, s2)],
    ]
}

/// Canonical-frame coordinates of the erasing pair at ring angle `chi`:
/// the equatorial basis `(|0⟩ ± e^{iχ}|1⟩)/√2` rotated by `R_x(−(π−α)/2)`.
pub fn canonical_erasing_pair(alpha: f64, chi: f64) -> [[C64; 2]; 2] {
    let r = bloch_rotation(Axis::X, -(PI - alpha) / 2.0);
    let [plus, minus] = equatorial_pair(chi);
    [r.apply_pair(plus), r.apply_pair(minus)]
}

/// The basis minimizing H(P|M): two vectors in the span of the hypotheses,
/// placed symmetrically between them, completed by the orthogonal
/// complement of the span.
///
/// Parallel hypotheses have no unique plane: qubits fall back to the α → 0
/// limit of the canonical pair, larger dimensions report [`Error::Degenerate`].
pub fn symmetric_basis(prob: &DiscriminationProblem) -> Result<ProjectiveBasis> {
    let frame = prob.frame();
    if frame.is_degenerate() && prob.dim() > 2 {
        return Err(Error::Degenerate);
    }
    frame.basis_from_pair(canonical_symmetric_pair(frame.alpha()))
}

/// Joint distribution over (path hypothesis, measurement outcome).
pub fn path_joint_distribution(
    prob: &DiscriminationProblem,
    basis: &ProjectiveBasis,
) -> Result<OutcomeDistribution> {
    if basis.dim() != prob.dim() {
        return Err(Error::DimensionMismatch {
            expected: prob.dim(),
            found: basis.dim(),
        });
    }
    let mut probs = Vec::with_capacity(2 * basis.dim());
    for state in prob.states() {
        for b in basis.iter() {
            probs.push(0.5 * b.inner(state)?.norm_sqr());
        }
    }
    OutcomeDistribution::new(vec!["path", "measurement"], vec![2, basis.dim()], probs)
}

/// Average success probability L of the best guess given the outcome.
pub fn guess_success_probability(prob: &DiscriminationProblem, basis: &ProjectiveBasis) -> Result<f64> {
    let joint = path_joint_distribution(prob, basis)?;
    Ok((0..basis.dim())
        .map(|m| joint.get(&[0, m]).max(joint.get(&[1, m])))
        .sum())
}

/// D = 2L − 1
pub fn distinguishability(prob: &DiscriminationProblem, basis: &ProjectiveBasis) -> Result<f64> {
    Ok(2.0 * guess_success_probability(prob, basis)? - 1.0)
}

/// H(P|M) in bits.
pub fn path_conditional_entropy(prob: &DiscriminationProblem, basis: &ProjectiveBasis) -> Result<f64> {
    path_joint_distribution(prob, basis)?.conditional_entropy(&[0], &[1])
}

/// I(P:M) = H(P) − H(P|M) with H(P) = 1.
pub fn path_mutual_information(prob: &DiscriminationProblem, basis: &ProjectiveBasis) -> Result<f64> {
    Ok(1.0 - path_conditional_entropy(prob, basis)?)
}

/// A qubit basis unbiased to the symmetric basis, labelled by its ring angle.
#[derive(Clone, Debug)]
pub struct ErasingBasis {
    pub chi: f64,
    pub basis: ProjectiveBasis,
}

impl ErasingBasis {
    /// Largest deviation of `|⟨e±|s_k⟩|²` from 1/2 over the two in-plane
    /// vectors of each basis.
    pub fn unbiasedness_defect(&self, symmetric: &ProjectiveBasis) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for e in &self.basis.vectors()[..2] {
            for s in &symmetric.vectors()[..2] {
                worst = worst.max((e.fidelity(s)? - 0.5).abs());
            }
        }
        Ok(worst)
    }
}

/// Erasing basis at ring angle `chi`: `{e₊, e₋}` in the hypothesis plane,
/// followed by the orthogonal complement.
pub fn erasing_basis(prob: &DiscriminationProblem, chi: f64) -> Result<ErasingBasis> {
    let frame = prob.frame();
    Ok(ErasingBasis {
        chi,
        basis: frame.basis_from_pair(canonical_erasing_pair(frame.alpha(), chi))?,
    })
}

/// Best basis found by sampling, together with its H(P|M).
#[derive(Clone, Debug)]
pub struct BruteForceOptimum {
    pub basis: ProjectiveBasis,
    pub entropy: f64,
    pub evaluated: usize,
}

pub const BRUTE_FORCE_SEED: u64 = 0x5eed_e7a5;

/// Samples measurement bases to minimize H(P|M) without assuming the
/// symmetric construction.
pub fn brute_force_optimal_basis(prob: &DiscriminationProblem, n_samples: usize) -> Result<BruteForceOptimum> {
    brute_force_optimal_basis_seeded(prob, n_samples, BRUTE_FORCE_SEED)
}

/// Qubits: a Fibonacci grid of `n_samples` Bloch axes, the ten best refined
/// by Nelder–Mead. Larger dimensions: the same search over bases whose first
/// two vectors lie in the hypothesis plane, plus randomly drawn bases of the
/// whole space and random perturbations of the in-plane winner as
/// falsification probes.
pub fn brute_force_optimal_basis_seeded(
    prob: &DiscriminationProblem,
    n_samples: usize,
    seed: u64,
) -> Result<BruteForceOptimum> {
    if n_samples < 100 {
        return Err(Error::InvalidArgument(format!(
            "brute-force search needs at least 100 samples, got {n_samples}"
        )));
    }
    let frame = prob.frame();
    let sphere_basis = |axis: &BlochVector| -> Result<ProjectiveBasis> {
        if prob.dim() == 2 {
            ProjectiveBasis::from_bloch_axis(axis)
        } else {
            let up = PureState::from_bloch(axis)?;
            let down = PureState::from_bloch(&axis.antipode())?;
            frame.basis_from_pair([
                [up[0], up[1]],
                [down[0], down[1]],
            ])
        }
    };
    let score = |axis: &BlochVector| -> f64 {
        sphere_basis(axis)
            .and_then(|b| path_conditional_entropy(prob, &b))
            .unwrap_or(f64::INFINITY)
    };

    let mut evaluated = 0usize;
    let mut candidates: Vec<(f64, f64, f64)> = fibonacci_sphere(n_samples)
        .map(|(theta, azimuth)| {
            evaluated += 1;
            (score(&spherical(theta, azimuth)), theta, azimuth)
        })
        .collect();
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut best = (f64::INFINITY, 0.0, 0.0);
    for &(h, theta, azimuth) in candidates.iter().take(10) {
        let (x, v) = nelder_mead(
            |p: &[f64]| score(&spherical(p[0], p[1])),
            &[theta, azimuth],
            0.02,
            1e-16,
            2000,
        );
        evaluated += 1;
        let (v, t, a) = if v <= h { (v, x[0], x[1]) } else { (h, theta, azimuth) };
        if v < best.0 {
            best = (v, t, a);
        }
    }
    let mut basis = sphere_basis(&spherical(best.1, best.2))?;
    let mut entropy = best.0;

    if prob.dim() > 2 {
        let mut rng = StdRng::seed_from_u64(seed);
        let probes = (n_samples / 10).max(10);
        for k in 0..2 * probes {
            let candidate = if k % 2 == 0 {
                random_basis(prob.dim(), &mut rng, None)
            } else {
                let scale = 10f64.powi(-((k / 2 % 6) as i32) - 1);
                random_basis(prob.dim(), &mut rng, Some((&basis, scale)))
            };
            evaluated += 1;
            let h = path_conditional_entropy(prob, &candidate)?;
            if h < entropy {
                entropy = h;
                basis = candidate;
            }
        }
    }
    Ok(BruteForceOptimum {
        basis,
        entropy,
        evaluated,
    })
}

/// Polar and azimuthal angles of `n` near-uniform points on the sphere.
fn fibonacci_sphere(n: usize) -> impl Iterator<Item = (f64, f64)> {
    let golden_angle = PI * (3.0 - 5f64.sqrt());
    (0..n).map(move |k| {
        let z = 1.0 - (2.0 * k as f64 + 1.0) / n as f64;
        (z.clamp(-1.0, 1.0).acos(), (golden_angle * k as f64).rem_euclid(2.0 * PI))
    })
}

fn spherical(theta: f64, azimuth: f64) -> BlochVector {
    let (st, ct) = theta.sin_cos();
    let (sa, ca) = azimuth.sin_cos();
    BlochVector::new(st * ca, st * sa, ct)
}

/// Gram–Schmidt of complex Gaussian vectors, optionally added to `near`
/// with weight `scale`.
fn random_basis(dim: usize, rng: &mut StdRng, near: Option<(&ProjectiveBasis, f64)>) -> ProjectiveBasis {
    let mut vectors: Vec<Vec<C64>> = Vec::with_capacity(dim);
    for k in 0..dim {
        let mut v: Vec<C64> = (0..dim)
            .map(|_| {
                let re: f64 = StandardNormal.sample(rng);
                let im: f64 = StandardNormal.sample(rng);
                C64::new(re, im)
            })
            .collect();
        if let Some((base, scale)) = near {
            v = base[k]
                .amplitudes()
                .iter()
                .zip(&v)
                .map(|(b, n)| b + n * scale)
                .collect();
        }
        for _ in 0..2 {
            for f in &vectors {
                let p = dot(f, &v);
                v.iter_mut().zip(f).for_each(|(x, y)| *x -= p * y);
            }
        }
        let n = norm_sqr(&v).sqrt();
        vectors.push(v.into_iter().map(|x| x / n).collect());
    }
    ProjectiveBasis::new(vectors.into_iter().map(PureState::from_raw).collect())
        .expect("Gram–Schmidt output is orthonormal")
}

/// Bloch axis of the first vector of a qubit basis.
pub fn basis_axis(basis: &ProjectiveBasis) -> Result<BlochVector> {
    basis[0].to_bloch()
}

/// Angle between the measurement axes of two qubit bases, in `[0, π/2]`.
pub fn basis_axis_angle(a: &ProjectiveBasis, b: &ProjectiveBasis) -> Result<f64> {
    Ok(basis_axis(a)?.axis_angle_to(&basis_axis(b)?))
}

/// H(P|M) of the symmetric basis as a closed form in α:
/// `h₂((1 + sin(α/2))/2)`.
pub fn symmetric_entropy_closed_form(alpha: f64) -> f64 {
    crate::dist::binary_entropy((1.0 + (alpha / 2.0).sin()) / 2.0)
}
