//! Symmetric two-path interferometer whose lower arm imprints path
//! information on an ancilla.
//!
//! Before the second beamsplitter the state is
//! `(|u⟩⊗φ₁ + e^{i(φ+γ)}|l⟩⊗φ₂)/√2`; in the canonical qubit setting
//! `φ₁ = |0⟩` and `φ₂ = cos(α/2)|0⟩ + e^{iβ} sin(α/2)|1⟩`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64 as C64;

use crate::discrimination::{distinguishability, symmetric_basis, DiscriminationProblem};
use crate::dist::OutcomeDistribution;
use crate::error::{Error, Result};
use crate::optimize::{golden_section, wrap};
use crate::qstate::{dot, ProjectiveBasis, PureState, Unitary2, I, NORM_TOL, ONE};

const TAU: f64 = 2.0 * PI;

/// Interaction angles (α, β, γ) and the adjustable phase φ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InteractionParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub phase_phi: f64,
}

impl InteractionParams {
    /// α must lie in [0, π]; β and γ are wrapped into [0, 2π).
    pub fn new(alpha: f64, beta: f64, gamma: f64, phase_phi: f64) -> Result<Self> {
        if !(-1e-12..=PI + 1e-12).contains(&alpha) {
            return Err(Error::OutOfRange {
                name: "alpha",
                value: alpha,
                range: "[0, π]",
            });
        }
        for (name, v) in [("beta", beta), ("gamma", gamma), ("phi", phase_phi)] {
            if !v.is_finite() {
                return Err(Error::OutOfRange {
                    name,
                    value: v,
                    range: "finite",
                });
            }
        }
        Ok(Self {
            alpha: alpha.clamp(0.0, PI),
            beta: wrap(beta, 0.0, TAU),
            gamma: wrap(gamma, 0.0, TAU),
            phase_phi,
        })
    }

    pub fn with_phase(self, phase_phi: f64) -> Self {
        Self { phase_phi, ..self }
    }
}

/// The interferometer with everything fixed except the phase φ.
#[derive(Clone, Debug, PartialEq)]
pub struct Interferometer {
    phi1: PureState,
    phi2: PureState,
    gamma: f64,
}

impl Interferometer {
    /// Canonical qubit ancilla built from (α, β); γ enters the lower arm.
    pub fn from_params(p: &InteractionParams) -> Self {
        Self {
            phi1: PureState::zero(),
            phi2: PureState::qubit(p.alpha, p.beta),
            gamma: p.gamma,
        }
    }

    pub fn canonical(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        Ok(Self::from_params(&InteractionParams::new(alpha, beta, gamma, 0.0)?))
    }

    /// Arbitrary d-level ancilla: the upper arm leaves it in `phi1`, the
    /// lower arm in `phi2`, with extra lower-arm phase `gamma`.
    pub fn qudit(phi1: PureState, phi2: PureState, gamma: f64) -> Result<Self> {
        if phi1.dim() != phi2.dim() {
            return Err(Error::DimensionMismatch {
                expected: phi1.dim(),
                found: phi2.dim(),
            });
        }
        Ok(Self { phi1, phi2, gamma })
    }

    pub fn phi1(&self) -> &PureState {
        &self.phi1
    }

    pub fn phi2(&self) -> &PureState {
        &self.phi2
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn ancilla_dim(&self) -> usize {
        self.phi1.dim()
    }

    pub fn problem(&self) -> DiscriminationProblem {
        DiscriminationProblem::new(self.phi1.clone(), self.phi2.clone())
            .expect("dimensions checked on construction")
    }

    /// State just before the second beamsplitter at phase `phi`.
    pub fn joint_state(&self, phi: f64) -> JointState {
        let h = FRAC_1_SQRT_2;
        let lower = C64::from_polar(h, phi + self.gamma);
        let mut amps: Vec<C64> = self.phi1.amplitudes().iter().map(|a| a * h).collect();
        amps.extend(self.phi2.amplitudes().iter().map(|a| a * lower));
        JointState {
            dim: self.ancilla_dim(),
            amps,
        }
    }

    /// P(D₁), P(D₂) at phase `phi`.
    pub fn detector_distribution(&self, phi: f64, bs: &BeamSplitter) -> OutcomeDistribution {
        let out = apply_bs2(&self.joint_state(phi), bs);
        let p1 = out.row_norm_sqr(0);
        let p2 = out.row_norm_sqr(1);
        OutcomeDistribution::new(vec!["detector"], vec![2], vec![p1, p2])
            .expect("unitary evolution preserves the norm")
    }

    /// P(D₁) at phase `phi`.
    pub fn p_d1(&self, phi: f64, bs: &BeamSplitter) -> f64 {
        apply_bs2(&self.joint_state(phi), bs).row_norm_sqr(0)
    }

    /// Fringe visibility, |⟨φ₁|φ₂⟩| for a pure ancilla.
    pub fn visibility(&self) -> f64 {
        dot(self.phi1.amplitudes(), self.phi2.amplitudes()).norm().min(1.0)
    }

    /// Visibility measured from a dense φ scan of P(D₁) with golden-section
    /// refinement of the extrema.
    pub fn visibility_scan(&self, points: usize, bs: &BeamSplitter) -> f64 {
        let points = points.max(720);
        let step = TAU / points as f64;
        let samples: Vec<f64> = (0..points).map(|k| self.p_d1(step * k as f64, bs)).collect();
        let (k_min, _) = samples
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .expect("points > 0");
        let (k_max, _) = samples
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .expect("points > 0");
        let at = |k: usize| step * k as f64;
        let (_, p_min) = golden_section(|x| self.p_d1(x, bs), at(k_min) - step, at(k_min) + step, 1e-12);
        let (_, neg_max) = golden_section(|x| -self.p_d1(x, bs), at(k_max) - step, at(k_max) + step, 1e-12);
        let p_min = p_min.min(samples[k_min]);
        let p_max = (-neg_max).max(samples[k_max]);
        (p_max - p_min) / (p_max + p_min)
    }

    /// Distinguishability D = 2L − 1 with the symmetric basis.
    pub fn distinguishability(&self) -> f64 {
        let prob = self.problem();
        match symmetric_basis(&prob) {
            Ok(basis) => distinguishability(&prob, &basis).expect("dimensions agree"),
            // parallel states carry no path information
            Err(_) => 0.0,
        }
    }

    /// Visibility of the fringe P(D₁ | m, φ) for each outcome m of an
    /// ancilla measurement in `basis`.
    pub fn subensemble_visibility(&self, basis: &ProjectiveBasis, bs: &BeamSplitter) -> Result<Vec<Subensemble>> {
        if basis.dim() != self.ancilla_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.ancilla_dim(),
                found: basis.dim(),
            });
        }
        let t_upper = bs.matrix().m[0][0].norm();
        let t_lower = bs.matrix().m[0][1].norm();
        basis
            .iter()
            .map(|e| {
                let a = e.inner(&self.phi1)?.norm();
                let b = e.inner(&self.phi2)?.norm();
                let p_outcome = 0.5 * (a * a + b * b);
                if p_outcome <= EMPTY_TOL {
                    return Ok(Subensemble::Empty);
                }
                // P(D₁|m,φ) = c + A·cos(φ + const); V = A/c
                let mean = (t_upper * a).powi(2) + (t_lower * b).powi(2);
                let amplitude = 2.0 * t_upper * t_lower * a * b;
                Ok(Subensemble::Visible {
                    probability: p_outcome,
                    visibility: (amplitude / mean).min(1.0),
                })
            })
            .collect()
    }
}

/// Outcome probabilities at or below this are empty subensembles.
pub const EMPTY_TOL: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Subensemble {
    /// The outcome never occurs, so it sorts no detection events.
    Empty,
    Visible { probability: f64, visibility: f64 },
}

impl Subensemble {
    pub fn visibility(&self) -> Option<f64> {
        match self {
            Subensemble::Empty => None,
            Subensemble::Visible { visibility, .. } => Some(*visibility),
        }
    }
}

/// Path ⊗ ancilla amplitudes; row 0 is the upper path (or D₁ after the
/// second beamsplitter), row 1 the lower path (or D₂).
#[derive(Clone, Debug, PartialEq)]
pub struct JointState {
    dim: usize,
    amps: Vec<C64>,
}

impl JointState {
    pub fn from_rows(upper: &[C64], lower: &[C64]) -> Result<Self> {
        if upper.len() != lower.len() {
            return Err(Error::DimensionMismatch {
                expected: upper.len(),
                found: lower.len(),
            });
        }
        let mut amps = upper.to_vec();
        amps.extend_from_slice(lower);
        let js = Self {
            dim: upper.len(),
            amps,
        };
        let n = js.norm_sqr();
        if (n - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(n));
        }
        Ok(js)
    }

    pub fn ancilla_dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, r: usize) -> &[C64] {
        &self.amps[r * self.dim..(r + 1) * self.dim]
    }

    pub fn amplitude(&self, r: usize, k: usize) -> C64 {
        self.amps[r * self.dim + k]
    }

    pub fn row_norm_sqr(&self, r: usize) -> f64 {
        self.row(r).iter().map(C64::norm_sqr).sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(C64::norm_sqr).sum()
    }

    /// Ancilla state left behind in row `r`, if that row is populated.
    pub fn conditional_ancilla(&self, r: usize) -> Option<PureState> {
        PureState::normalized(self.row(r).to_vec()).ok()
    }
}

/// Builds the pre-BS₂ state. Without explicit ancilla states the canonical
/// qubit pair (|0⟩, |φ(α, β)⟩) is used.
pub fn build_joint_state(p: &InteractionParams, ancilla: Option<(&PureState, &PureState)>) -> Result<JointState> {
    let ifm = match ancilla {
        None => Interferometer::from_params(p),
        Some((phi1, phi2)) => Interferometer::qudit(phi1.clone(), phi2.clone(), p.gamma)?,
    };
    Ok(ifm.joint_state(p.phase_phi))
}

/// A symmetric beamsplitter acting on (upper, lower) path amplitudes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BeamSplitter {
    matrix: Unitary2,
}

impl BeamSplitter {
    /// Accepts any unitary whose entries all have modulus 1/√2.
    pub fn new(matrix: Unitary2) -> Result<Self> {
        if matrix.unitarity_defect() > NORM_TOL {
            return Err(Error::NotSymmetricSplitter);
        }
        let balanced = matrix
            .m
            .iter()
            .flatten()
            .all(|z| (z.norm() - FRAC_1_SQRT_2).abs() <= NORM_TOL);
        if !balanced {
            return Err(Error::NotSymmetricSplitter);
        }
        Ok(Self { matrix })
    }

    /// Reflection picks up a factor i, transmission none:
    /// `(u, l) ↦ ((u + i·l)/√2, (i·u + l)/√2)`.
    pub fn standard() -> Self {
        let h = FRAC_1_SQRT_2;
        Self {
            matrix: Unitary2::new([[ONE * h, I * h], [I * h, ONE * h]]),
        }
    }

    pub fn matrix(&self) -> &Unitary2 {
        &self.matrix
    }
}

impl Default for BeamSplitter {
    fn default() -> Self {
        Self::standard()
    }
}

/// Applies the second beamsplitter; rows become the D₁ and D₂ ports.
pub fn apply_bs2(js: &JointState, bs: &BeamSplitter) -> JointState {
    let m = &bs.matrix.m;
    let d = js.dim;
    let mut amps = Vec::with_capacity(2 * d);
    for row in m {
        for k in 0..d {
            amps.push(row[0] * js.amplitude(0, k) + row[1] * js.amplitude(1, k));
        }
    }
    JointState { dim: d, amps }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discrimination::erasing_basis;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    const B: f64 = 3.0 * FRAC_PI_2;

    fn ifm(alpha: f64) -> Interferometer {
        Interferometer::canonical(alpha, B, 0.0).unwrap()
    }

    #[test]
    fn params_validate_ranges() {
        assert!(InteractionParams::new(-0.1, 0.0, 0.0, 0.0).is_err());
        assert!(InteractionParams::new(PI + 0.1, 0.0, 0.0, 0.0).is_err());
        let p = InteractionParams::new(1.0, -FRAC_PI_2, 7.0, 0.0).unwrap();
        assert!((p.beta - B).abs() < 1e-15);
        assert!((p.gamma - (7.0 - TAU)).abs() < 1e-15);
    }

    #[test]
    fn product_state_at_zero_alpha() {
        let p = InteractionParams::new(0.0, 1.3, 0.0, 0.0).unwrap();
        let js = build_joint_state(&p, None).unwrap();
        let h = FRAC_1_SQRT_2;
        assert!((js.amplitude(0, 0) - C64::new(h, 0.0)).norm() < 1e-15);
        assert!((js.amplitude(1, 0) - C64::new(h, 0.0)).norm() < 1e-15);
        assert!(js.amplitude(0, 1).norm() < 1e-15 && js.amplitude(1, 1).norm() < 1e-15);
    }

    #[test]
    fn maximally_entangled_at_pi() {
        let p = InteractionParams::new(PI, B, 0.0, 0.0).unwrap();
        let js = build_joint_state(&p, None).unwrap();
        let h = FRAC_1_SQRT_2;
        assert!((js.amplitude(0, 0) - C64::new(h, 0.0)).norm() < 1e-15);
        assert!((js.amplitude(1, 1) - C64::new(0.0, -h)).norm() < 1e-15);
        assert!(js.amplitude(0, 1).norm() < 1e-15 && js.amplitude(1, 0).norm() < 1e-15);
    }

    #[test]
    fn explicit_ancilla_dimension_checked() {
        let p = InteractionParams::new(0.5, 0.0, 0.0, 0.0).unwrap();
        let a = PureState::zero();
        let b = PureState::basis_state(3, 0).unwrap();
        assert!(build_joint_state(&p, Some((&a, &b))).is_err());
    }

    #[test]
    fn beamsplitter_validation() {
        assert!(BeamSplitter::new(Unitary2::IDENTITY).is_err());
        let h = FRAC_1_SQRT_2;
        let hadamard = Unitary2::new([[ONE * h, ONE * h], [ONE * h, -ONE * h]]);
        assert!(BeamSplitter::new(hadamard).is_ok());
        assert!(BeamSplitter::new(*BeamSplitter::standard().matrix()).is_ok());
    }

    #[test]
    fn balanced_and_constructive_points() {
        let bs = BeamSplitter::standard();
        // α = 0: P(D₁) = (1 − sin φ)/2, balanced at φ = 0, bright at φ = 3π/2
        let i0 = ifm(0.0);
        assert!((i0.p_d1(0.0, &bs) - 0.5).abs() < 1e-15);
        assert!((i0.p_d1(3.0 * FRAC_PI_2, &bs) - 1.0).abs() < 1e-15);
        assert!(i0.p_d1(FRAC_PI_2, &bs).abs() < 1e-15);
    }

    #[test]
    fn which_path_kills_fringes() {
        let bs = BeamSplitter::standard();
        let i = ifm(PI);
        for k in 0..16 {
            let d = i.detector_distribution(0.4 * k as f64, &bs);
            assert!((d.probs()[0] - 0.5).abs() < 1e-15);
        }
        assert!(i.visibility() < 1e-15);
    }

    #[test]
    fn visibility_examples() {
        let bs = BeamSplitter::standard();
        assert!((ifm(0.0).visibility() - 1.0).abs() < 1e-15);
        assert!((ifm(FRAC_PI_2).visibility() - FRAC_PI_4.cos()).abs() < 1e-15);
        let v = ifm(3.0 * FRAC_PI_4).visibility();
        assert!((v - (3.0 * PI / 8.0).cos()).abs() < 1e-15);
        assert!((v - 0.382_683_432_365_09).abs() < 1e-13);
        for alpha in [0.0, 0.4, FRAC_PI_2, 2.2, 3.0 * FRAC_PI_4, PI] {
            let i = Interferometer::canonical(alpha, 0.7, 1.9).unwrap();
            assert!((i.visibility_scan(720, &bs) - i.visibility()).abs() < 1e-9);
        }
    }

    #[test]
    fn fringe_is_two_pi_periodic() {
        let bs = BeamSplitter::standard();
        let i = Interferometer::canonical(1.2, 0.3, 2.0).unwrap();
        for k in 0..20 {
            let phi = 0.31 * k as f64;
            assert!((i.p_d1(phi, &bs) - i.p_d1(phi + TAU, &bs)).abs() < 1e-12);
        }
    }

    #[test]
    fn subensembles() {
        let bs = BeamSplitter::standard();
        // product state: every populated subensemble is fully visible
        let i = ifm(0.0);
        let e = erasing_basis(&i.problem(), 0.9).unwrap();
        for s in i.subensemble_visibility(&e.basis, &bs).unwrap() {
            assert!((s.visibility().unwrap() - 1.0).abs() < 1e-12);
        }
        // measuring the which-path basis leaves no fringes
        let i = ifm(PI);
        let which = symmetric_basis(&i.problem()).unwrap();
        for s in i.subensemble_visibility(&which, &bs).unwrap() {
            assert!(s.visibility().unwrap() < 1e-15);
        }
        // an outcome orthogonal to both ancilla states is empty
        let i = ifm(0.0);
        let comp = ProjectiveBasis::computational(2).unwrap();
        let subs = i.subensemble_visibility(&comp, &bs).unwrap();
        assert_eq!(subs[1], Subensemble::Empty);
        assert!((subs[0].visibility().unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn subensemble_visibility_matches_conditional_scan() {
        let bs = BeamSplitter::standard();
        let i = Interferometer::canonical(2.1, 0.8, 0.4).unwrap();
        let comp = ProjectiveBasis::computational(2).unwrap();
        let subs = i.subensemble_visibility(&comp, &bs).unwrap();
        for (m, s) in subs.iter().enumerate() {
            let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
            for k in 0..4000 {
                let out = apply_bs2(&i.joint_state(TAU * k as f64 / 4000.0), &bs);
                let p1 = out.amplitude(0, m).norm_sqr();
                let p2 = out.amplitude(1, m).norm_sqr();
                let c = p1 / (p1 + p2);
                lo = lo.min(c);
                hi = hi.max(c);
            }
            let v = (hi - lo) / (hi + lo);
            assert!((v - s.visibility().unwrap()).abs() < 1e-6);
        }
    }

    #[test]
    fn duality_equality() {
        for k in 0..=32 {
            let i = Interferometer::canonical(PI * k as f64 / 32.0, 0.3 * k as f64, 0.0).unwrap();
            let (d, v) = (i.distinguishability(), i.visibility());
            assert!((d * d + v * v - 1.0).abs() < 1e-12);
        }
    }
}
