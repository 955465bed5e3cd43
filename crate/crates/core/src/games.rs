//! Path- and phase-guessing games and the entropic erasure identity.
//!
//! The path game discriminates the two ancilla states with the symmetric
//! basis; its mutual information I(P:M_s) is the which-path information. In
//! the phase game one of `{φ₀, φ₀+π}` is applied at random and guessed from
//! the detector click, optionally helped by an erasing measurement of the
//! ancilla. The which-phase information gained by erasing is
//! `E = H(Φ|D) − H(Φ|D,M_e)`; at the phase offset maximizing H(Φ|D) the best
//! erasing basis gains exactly I(P:M_s).

use std::f64::consts::PI;

use crate::discrimination::{
    canonical_erasing_pair, path_conditional_entropy, symmetric_basis, DiscriminationProblem, PlaneFrame,
};
use crate::dist::OutcomeDistribution;
use crate::error::{Error, Result};
use crate::interferometer::{apply_bs2, BeamSplitter, Interferometer, JointState};
use crate::optimize::{minimize_periodic, simpson};
use crate::qstate::ProjectiveBasis;

pub use crate::dist::{conditional_entropy, shannon_entropy};

/// Grid size for the φ₀ scan.
pub const PHI0_GRID: usize = 1024;
/// Grid size for the χ scan.
pub const CHI_GRID: usize = 512;
/// Golden-section bracket width at termination.
pub const REFINE_TOL: f64 = 1e-10;
/// Default Simpson panel count for Ē.
pub const DEFAULT_PANELS: usize = 2048;

const PHASE: usize = 0;
const DETECTOR: usize = 1;
const ANCILLA: usize = 2;

/// Which erasing basis a phase game uses.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ChiChoice {
    Fixed(f64),
    /// Use the basis minimizing H(Φ|D,M_e).
    Scan,
}

#[derive(Clone, Debug)]
pub struct PhaseGameConfig {
    pub interferometer: Interferometer,
    /// Hypotheses are `{phi0, phi0 + π}`.
    pub phi0: f64,
    pub chi: ChiChoice,
}

/// Entropies of one round of the phase game.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseGameOutcome {
    pub phi0: f64,
    pub chi: f64,
    pub h_phase_given_d: f64,
    pub h_phase_given_d_me: f64,
    /// H(Φ|D) − H(Φ|D,M_e)
    pub e: f64,
}

/// A phase game bound to one interferometer. Holds the plane frame of the
/// ancilla states so erasing bases are cheap to generate.
#[derive(Clone, Debug)]
pub struct PhaseGame<'a> {
    ifm: &'a Interferometer,
    frame: PlaneFrame,
    bs: BeamSplitter,
}

impl<'a> PhaseGame<'a> {
    pub fn new(ifm: &'a Interferometer) -> Self {
        Self::with_beamsplitter(ifm, BeamSplitter::standard())
    }

    pub fn with_beamsplitter(ifm: &'a Interferometer, bs: BeamSplitter) -> Self {
        Self {
            ifm,
            frame: ifm.problem().frame(),
            bs,
        }
    }

    pub fn interferometer(&self) -> &Interferometer {
        self.ifm
    }

    pub fn erasing_basis(&self, chi: f64) -> ProjectiveBasis {
        self.frame
            .basis_from_pair(canonical_erasing_pair(self.frame.alpha(), chi))
            .expect("frame vectors are orthonormal")
    }

    /// P(Φ, D, M) for hypotheses `{phi0, phi0+π}` and ancilla measured in `basis`.
    pub fn joint(&self, phi0: f64, basis: &ProjectiveBasis) -> OutcomeDistribution {
        let d = self.ifm.ancilla_dim();
        let mut probs = Vec::with_capacity(4 * d);
        for shift in [0.0, PI] {
            let out = apply_bs2(&self.ifm.joint_state(phi0 + shift), &self.bs);
            for r in 0..2 {
                for e in basis.iter() {
                    let amp: num_complex::Complex64 = e
                        .amplitudes()
                        .iter()
                        .zip(out.row(r))
                        .map(|(x, y)| x.conj() * y)
                        .sum();
                    probs.push(0.5 * amp.norm_sqr());
                }
            }
        }
        OutcomeDistribution::new(vec!["phase", "detector", "ancilla"], vec![2, 2, d], probs)
            .expect("unitary evolution preserves the norm")
    }

    /// P(D₁ | φ₀)
    pub fn p_d1(&self, phi0: f64) -> f64 {
        self.ifm.p_d1(phi0, &self.bs)
    }

    /// H(Φ|D) at offset `phi0`.
    pub fn h_phase_given_d(&self, phi0: f64) -> f64 {
        // with hypotheses π apart P(D₁|φ₀+π) = 1 − P(D₁|φ₀), so H(Φ|D) = h₂(P(D₁|φ₀))
        crate::dist::binary_entropy(self.p_d1(phi0).clamp(0.0, 1.0))
    }

    /// H(Φ|D,M_e) with the erasing basis at ring angle `chi`.
    pub fn h_phase_given_d_me(&self, phi0: f64, chi: f64) -> f64 {
        self.h_phase_given_d_basis(phi0, &self.erasing_basis(chi))
    }

    pub fn h_phase_given_d_basis(&self, phi0: f64, basis: &ProjectiveBasis) -> f64 {
        self.joint(phi0, basis)
            .conditional_entropy(&[PHASE], &[DETECTOR, ANCILLA])
            .expect("axes are valid")
    }

    /// Which-phase information gained by erasing at (φ₀, χ).
    pub fn which_phase_information(&self, phi0: f64, chi: f64) -> f64 {
        self.outcome(phi0, chi).e
    }

    pub fn outcome(&self, phi0: f64, chi: f64) -> PhaseGameOutcome {
        self.outcome_with_basis(phi0, chi, &self.erasing_basis(chi))
    }

    fn outcome_with_basis(&self, phi0: f64, chi: f64, basis: &ProjectiveBasis) -> PhaseGameOutcome {
        let joint = self.joint(phi0, basis);
        let h_d = joint.conditional_entropy(&[PHASE], &[DETECTOR]).expect("axes are valid");
        let h_dm = joint
            .conditional_entropy(&[PHASE], &[DETECTOR, ANCILLA])
            .expect("axes are valid");
        PhaseGameOutcome {
            phi0,
            chi,
            h_phase_given_d: h_d,
            h_phase_given_d_me: h_dm,
            e: h_d - h_dm,
        }
    }

    /// The offset in [0, π) maximizing H(Φ|D).
    ///
    /// H(Φ|D) = h₂(P(D₁|φ₀)) is a decreasing function of |P(D₁|φ₀) − 1/2|,
    /// so the search minimizes that distance instead; the maximizer is the
    /// same and the objective has a sharp rather than flat extremum. When the
    /// fringe vanishes every offset is optimal and 0 is returned.
    pub fn find_phi0_tilde(&self) -> f64 {
        minimize_periodic(|x| (self.p_d1(x) - 0.5).abs(), 0.0, PI, PHI0_GRID, REFINE_TOL).x
    }

    /// Offset in [0, π) where the fringe P(D₁|φ₀) crosses 1/2, computed
    /// from the phase of ⟨φ₁|φ₂⟩ and the beamsplitter. Agrees with
    /// [`Self::find_phi0_tilde`] whenever the fringe is visible and
    /// extends continuously to orthogonal ancilla states, where the search
    /// objective is flat.
    pub fn balanced_phi0(&self) -> f64 {
        let m = &self.bs.matrix().m;
        let splitter = (m[0][0].conj() * m[0][1]).arg();
        let offset = std::f64::consts::FRAC_PI_2 - self.ifm.gamma() - self.frame.phase() - splitter;
        crate::optimize::wrap(offset, 0.0, PI)
    }

    /// χ in [0, π) minimizing H(Φ|D,M_e) at `phi0`.
    pub fn optimize_chi(&self, phi0: f64) -> ChiOptimum {
        let m = minimize_periodic(|chi| self.h_phase_given_d_me(phi0, chi), 0.0, PI, CHI_GRID, REFINE_TOL);
        ChiOptimum {
            chi: m.x,
            entropy: m.value,
            flat: m.flat,
        }
    }

    /// Ē = (1/π)∫₀^π E(φ₀, χ) dφ₀ by composite Simpson.
    pub fn average_e(&self, chi: f64, n_panels: usize) -> Result<AverageE> {
        if n_panels < 64 || !n_panels.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "panel count must be even and at least 64, got {n_panels}"
            )));
        }
        let basis = self.erasing_basis(chi);
        let e = |phi0: f64| self.outcome_with_basis(phi0, chi, &basis).e;
        let coarse = simpson(e, 0.0, PI, n_panels)? / PI;
        let fine = simpson(e, 0.0, PI, 2 * n_panels)? / PI;
        Ok(AverageE {
            chi,
            panels: n_panels,
            value: coarse,
            refined: fine,
            extrapolated: fine + (fine - coarse) / 15.0,
            converged: (fine - coarse).abs() <= AVERAGE_CONVERGENCE_TOL,
        })
    }
}

/// Simpson estimates at n and 2n panels closer than this count as converged.
pub const AVERAGE_CONVERGENCE_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChiOptimum {
    pub chi: f64,
    pub entropy: f64,
    /// The objective did not depend on χ; `chi` is the tie-break value 0.
    pub flat: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AverageE {
    pub chi: f64,
    pub panels: usize,
    /// Simpson estimate with `panels` panels.
    pub value: f64,
    /// Simpson estimate with `2·panels` panels.
    pub refined: f64,
    /// Richardson extrapolation of the two estimates.
    pub extrapolated: f64,
    pub converged: bool,
}

/// Path-game result.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PathGameReport {
    /// H(P|M_s)
    pub h_path_given_ms: f64,
    /// I(P:M_s) = 1 − H(P|M_s)
    pub i_path_ms: f64,
    pub distinguishability: f64,
    /// Detector statistics are identical under both hypotheses, so the
    /// click carries no path information.
    pub detector_uninformative: bool,
}

/// Plays the path game: one arm is blocked at random and the surviving one
/// is guessed from a symmetric-basis measurement of the ancilla.
pub fn play_path_game(ifm: &Interferometer) -> PathGameReport {
    play_path_game_with(ifm, &BeamSplitter::standard())
}

pub fn play_path_game_with(ifm: &Interferometer, bs: &BeamSplitter) -> PathGameReport {
    let prob: DiscriminationProblem = ifm.problem();
    let dim = ifm.ancilla_dim();
    // parallel qudit states: every basis is equally useless
    let basis = symmetric_basis(&prob)
        .or_else(|_| ProjectiveBasis::computational(dim))
        .expect("computational basis is valid");
    let h = path_conditional_entropy(&prob, &basis).expect("dimensions agree");
    let l = crate::discrimination::guess_success_probability(&prob, &basis).expect("dimensions agree");

    let zero_row = vec![num_complex::Complex64::new(0.0, 0.0); dim];
    let upper_only = JointState::from_rows(ifm.phi1().amplitudes(), &zero_row).expect("unit norm");
    let lower_only = JointState::from_rows(&zero_row, ifm.phi2().amplitudes()).expect("unit norm");
    let p_upper = apply_bs2(&upper_only, bs).row_norm_sqr(0);
    let p_lower = apply_bs2(&lower_only, bs).row_norm_sqr(0);

    PathGameReport {
        h_path_given_ms: h,
        i_path_ms: 1.0 - h,
        distinguishability: 2.0 * l - 1.0,
        detector_uninformative: (p_upper - p_lower).abs() < 1e-12,
    }
}

pub fn play_phase_game(cfg: &PhaseGameConfig) -> PhaseGameOutcome {
    let game = PhaseGame::new(&cfg.interferometer);
    let chi = match cfg.chi {
        ChiChoice::Fixed(chi) => chi,
        ChiChoice::Scan => game.optimize_chi(cfg.phi0).chi,
    };
    game.outcome(cfg.phi0, chi)
}

pub fn find_phi0_tilde(ifm: &Interferometer) -> f64 {
    PhaseGame::new(ifm).find_phi0_tilde()
}

pub fn optimize_chi(ifm: &Interferometer, phi0: f64) -> ChiOptimum {
    PhaseGame::new(ifm).optimize_chi(phi0)
}

pub fn average_e(ifm: &Interferometer, chi: f64, n_panels: usize) -> Result<AverageE> {
    PhaseGame::new(ifm).average_e(chi, n_panels)
}

/// Everything the two games report for one interferometer.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GameReport {
    pub phi0_tilde: f64,
    pub chi_star: f64,
    /// H(Φ̃|D)
    pub h_phase_given_d: f64,
    /// min over χ of H(Φ̃|D,M_e)
    pub h_phase_given_d_me: f64,
    /// H(Φ̃|D) − min over χ of H(Φ̃|D,M_e)
    pub e: f64,
    pub h_path_given_ms: f64,
    pub i_path_ms: f64,
    pub distinguishability: f64,
}

pub fn game_report(ifm: &Interferometer) -> GameReport {
    let game = PhaseGame::new(ifm);
    let path = play_path_game(ifm);
    let phi0 = game.find_phi0_tilde();
    let best = game.optimize_chi(phi0);
    let outcome = game.outcome(phi0, best.chi);
    GameReport {
        phi0_tilde: phi0,
        chi_star: best.chi,
        h_phase_given_d: outcome.h_phase_given_d,
        h_phase_given_d_me: outcome.h_phase_given_d_me,
        e: outcome.e,
        h_path_given_ms: path.h_path_given_ms,
        i_path_ms: path.i_path_ms,
        distinguishability: path.distinguishability,
    }
}

/// Comparison of the best which-phase gain with the erased which-path
/// information.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErasureCheck {
    pub report: GameReport,
    /// max over χ of H(Φ̃|D) − H(Φ̃|D,M_e)
    pub which_phase: f64,
    /// I(P:M_s)
    pub which_path: f64,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

pub fn verify_erasure_identity(ifm: &Interferometer, tol: f64) -> ErasureCheck {
    let report = game_report(ifm);
    let residual = (report.e - report.i_path_ms).abs();
    ErasureCheck {
        report,
        which_phase: report.e,
        which_path: report.i_path_ms,
        residual,
        tolerance: tol,
        passed: residual <= tol,
    }
}
