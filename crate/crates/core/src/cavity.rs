//! Atom–cavity reflection and the Michelson interferometer it tracks.
//!
//! A photon reflected off a one-sided cavity picks up the input–output
//! factor `(iΔ − κ/2)/(iΔ + κ/2)`. With the atom in |g₀⟩ the photon sees the
//! bare cavity; in the |g₁⟩/|e⟩ manifold it sees the dressed modes, which
//! are taken as far detuned. The relative reflection phase η makes the atom
//! a path marker in the horizontal arm of a Michelson interferometer.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64 as C64;

use crate::discrimination::basis_axis_angle;
use crate::error::{Error, Result};
use crate::games::{play_path_game, PhaseGame};
use crate::interferometer::{BeamSplitter, InteractionParams, Interferometer, JointState, Subensemble};
use crate::qstate::{ProjectiveBasis, PureState};

const TAU: f64 = 2.0 * PI;

/// |Δ_coupled|/κ at or above this is the strong-detuning regime.
pub const STRONG_DETUNING_RATIO: f64 = 10.0;

/// Photon and cavity frequencies in Hz, decay rate κ in rad/s.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CavityParams {
    pub f0: f64,
    pub f_uncoupled: f64,
    pub f_coupled: f64,
    pub kappa: f64,
}

impl CavityParams {
    pub fn new(f0: f64, f_uncoupled: f64, f_coupled: f64, kappa: f64) -> Result<Self> {
        check_kappa(kappa)?;
        for (name, v) in [("f0", f0), ("f_uncoupled", f_uncoupled), ("f_coupled", f_coupled)] {
            if !v.is_finite() {
                return Err(Error::OutOfRange {
                    name,
                    value: v,
                    range: "finite",
                });
            }
        }
        Ok(Self {
            f0,
            f_uncoupled,
            f_coupled,
            kappa,
        })
    }

    /// Δ = 2π(f_uncoupled − f₀), seen with the atom in |g₀⟩.
    pub fn detuning_uncoupled(&self) -> f64 {
        TAU * (self.f_uncoupled - self.f0)
    }

    /// Δ = 2π(f_coupled − f₀), seen with the atom in the coupled manifold.
    pub fn detuning_coupled(&self) -> f64 {
        TAU * (self.f_coupled - self.f0)
    }

    pub fn strong_detuning(&self) -> bool {
        self.detuning_coupled().abs() / self.kappa >= STRONG_DETUNING_RATIO
    }
}

fn check_kappa(kappa: f64) -> Result<()> {
    if !(kappa > 0.0 && kappa.is_finite()) {
        return Err(Error::OutOfRange {
            name: "kappa",
            value: kappa,
            range: "(0, ∞)",
        });
    }
    Ok(())
}

/// `(iΔ − κ/2)/(iΔ + κ/2)`
pub fn reflection_coefficient(delta: f64, kappa: f64) -> Result<C64> {
    check_kappa(kappa)?;
    let half = kappa / 2.0;
    Ok(C64::new(-half, delta) / C64::new(half, delta))
}

/// Argument of the reflection coefficient in (−π, π], evaluated as
/// `π − 2·atan(2Δ/κ)` so that Δ = 0 gives exactly π.
pub fn reflection_phase(delta: f64, kappa: f64) -> Result<f64> {
    check_kappa(kappa)?;
    Ok(wrap_pi(PI - 2.0 * (2.0 * delta / kappa).atan()))
}

/// Maps an angle into (−π, π].
pub fn wrap_pi(x: f64) -> f64 {
    let y = x.rem_euclid(TAU);
    if y > PI {
        y - TAU
    } else {
        y
    }
}

/// η = arg r(Δ_uncoupled) − arg r(Δ_coupled), wrapped into (−π, π].
pub fn conditional_phase_eta(cp: &CavityParams) -> f64 {
    let bare = reflection_phase(cp.detuning_uncoupled(), cp.kappa).expect("kappa validated");
    let dressed = reflection_phase(cp.detuning_coupled(), cp.kappa).expect("kappa validated");
    wrap_pi(bare - dressed)
}

/// Atom state after reflecting a photon, starting from (|g₁⟩ + |g₀⟩)/√2.
/// Amplitudes are ordered (g₀, g₁).
pub fn reflected_atom_state(cp: &CavityParams) -> PureState {
    let r_bare = reflection_coefficient(cp.detuning_uncoupled(), cp.kappa).expect("kappa validated");
    let r_dressed = reflection_coefficient(cp.detuning_coupled(), cp.kappa).expect("kappa validated");
    PureState::normalized(vec![r_bare * FRAC_1_SQRT_2, r_dressed * FRAC_1_SQRT_2])
        .expect("reflection has unit modulus")
}

/// (|g₁⟩ + e^{iη}|g₀⟩)/√2 with amplitudes ordered (g₀, g₁).
pub fn marked_atom_state(eta: f64) -> PureState {
    PureState::normalized(vec![C64::from_polar(FRAC_1_SQRT_2, eta), C64::new(FRAC_1_SQRT_2, 0.0)])
        .expect("unit norm")
}

/// The Michelson interferometer with conditional phase η ∈ (0, π].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MichelsonSetup {
    eta: f64,
}

impl MichelsonSetup {
    pub fn new(eta: f64) -> Result<Self> {
        if !(eta > 0.0 && eta <= PI) {
            return Err(Error::OutOfRange {
                name: "eta",
                value: eta,
                range: "(0, π]",
            });
        }
        Ok(Self { eta })
    }

    /// Uses |η| from the cavity model.
    pub fn from_cavity(cp: &CavityParams) -> Result<Self> {
        Self::new(conditional_phase_eta(cp).abs())
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// (α, β, γ) = (η, 3π/2, η/2)
    pub fn params(&self) -> InteractionParams {
        InteractionParams::new(self.eta, 1.5 * PI, self.eta / 2.0, 0.0).expect("η in range")
    }

    pub fn interferometer(&self) -> Interferometer {
        Interferometer::from_params(&self.params())
    }

    /// State before the beamsplitter's second pass, assembled directly from
    /// the vertical/horizontal arms with the ancilla in the {|u₊⟩, |u₋⟩}
    /// basis: `(|v⟩⊗|u₊⟩ + e^{iφ}|h⟩⊗|u⟩)/√2`.
    pub fn joint_state(&self, phi: f64) -> JointState {
        // |u⟩ = (|g₁⟩ + e^{iη}|g₀⟩)/√2 and |u±⟩ = (|g₁⟩ ± |g₀⟩)/√2
        let e = C64::from_polar(1.0, self.eta);
        let u = [(1.0 + e) / 2.0, (1.0 - e) / 2.0];
        let h = FRAC_1_SQRT_2;
        let lower = C64::from_polar(h, phi);
        let vertical = [C64::new(h, 0.0), C64::new(0.0, 0.0)];
        let horizontal = [u[0] * lower, u[1] * lower];
        JointState::from_rows(&vertical, &horizontal).expect("unit norm")
    }
}

/// (α, β, γ) = (η, 3π/2, η/2) for η ∈ (0, π].
pub fn michelson_to_canonical(eta: f64) -> Result<InteractionParams> {
    Ok(MichelsonSetup::new(eta)?.params())
}

/// The atom's energy basis {|g₀⟩, |g₁⟩} written in the {|u₊⟩, |u₋⟩} frame:
/// |g₀⟩ = (|u₊⟩ − |u₋⟩)/√2, |g₁⟩ = (|u₊⟩ + |u₋⟩)/√2.
pub fn energy_basis() -> ProjectiveBasis {
    let h = FRAC_1_SQRT_2;
    let g0 = PureState::new(vec![C64::new(h, 0.0), C64::new(-h, 0.0)]).expect("unit norm");
    let g1 = PureState::new(vec![C64::new(h, 0.0), C64::new(h, 0.0)]).expect("unit norm");
    ProjectiveBasis::new(vec![g0, g1]).expect("orthonormal")
}

/// Erasure analysis of one Michelson configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct MichelsonReport {
    pub eta: f64,
    pub params: InteractionParams,
    /// Result of the H(Φ|D) search; 0 when the fringe vanishes.
    pub phi0_search: f64,
    /// The H(Φ|D) objective was flat (η = π, no fringe).
    pub phi0_degenerate: bool,
    /// Offset the phase game is played at: the search result, or the
    /// balanced-fringe limit when the search is degenerate.
    pub phi0_tilde: f64,
    pub h_phase_given_d: f64,
    pub chi_star: f64,
    pub min_h_phase_given_d_me: f64,
    /// Angle between the Bloch axes of the χ* basis and {|g₀⟩, |g₁⟩}.
    pub energy_basis_angle: f64,
    pub visibility: f64,
    pub subensembles: Vec<Subensemble>,
    pub i_path_ms: f64,
    /// |max_χ E − I(P:M_s)|
    pub erasure_residual: f64,
}

pub fn analyze_michelson(setup: &MichelsonSetup) -> MichelsonReport {
    let ifm = setup.interferometer();
    let game = PhaseGame::new(&ifm);
    let bs = BeamSplitter::standard();

    let search = crate::optimize::minimize_periodic(
        |x| (game.p_d1(x) - 0.5).abs(),
        0.0,
        PI,
        crate::games::PHI0_GRID,
        crate::games::REFINE_TOL,
    );
    let phi0 = if search.flat { game.balanced_phi0() } else { search.x };
    let best = game.optimize_chi(phi0);
    let h_d = game.h_phase_given_d(phi0);
    let chi_basis = game.erasing_basis(best.chi);
    let path = play_path_game(&ifm);

    MichelsonReport {
        eta: setup.eta(),
        params: setup.params(),
        phi0_search: search.x,
        phi0_degenerate: search.flat,
        phi0_tilde: phi0,
        h_phase_given_d: h_d,
        chi_star: best.chi,
        min_h_phase_given_d_me: best.entropy,
        energy_basis_angle: basis_axis_angle(&chi_basis, &energy_basis()).expect("qubit bases"),
        visibility: ifm.visibility(),
        subensembles: ifm.subensemble_visibility(&chi_basis, &bs).expect("qubit basis"),
        i_path_ms: path.i_path_ms,
        erasure_residual: ((h_d - best.entropy) - path.i_path_ms).abs(),
    }
}
