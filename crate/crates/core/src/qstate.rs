//! Pure-state algebra: amplitude vectors, projective bases, the Bloch sphere
//! and single-qubit rotations.
//!
//! Bloch convention: |0⟩ sits at +z, (|0⟩+|1⟩)/√2 at +x and (|0⟩+i|1⟩)/√2 at
//! +y. Rotations are `exp(-i·θ·σ/2)`, which turn Bloch vectors by `θ` about
//! the axis following the right-hand rule.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::ops::Index;

use num_complex::Complex64 as C64;

use crate::dist::OutcomeDistribution;
use crate::error::{Error, Result};

/// Tolerance on the squared norm of a state and on unitarity.
pub const NORM_TOL: f64 = 1e-12;
/// Tolerance on pairwise overlaps of basis vectors.
pub const ORTHO_TOL: f64 = 1e-10;

pub(crate) const I: C64 = C64 { re: 0.0, im: 1.0 };
pub(crate) const ONE: C64 = C64 { re: 1.0, im: 0.0 };
pub(crate) const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// A normalized vector of `d ≥ 2` complex amplitudes.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    amps: Vec<C64>,
}

impl PureState {
    /// Wraps `amps`, which must already have unit norm.
    pub fn new(amps: Vec<C64>) -> Result<Self> {
        if amps.len() < 2 {
            return Err(Error::DimensionTooSmall(amps.len()));
        }
        let n2 = norm_sqr(&amps);
        if (n2 - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(n2));
        }
        Ok(Self { amps })
    }

    /// Rescales `amps` to unit norm.
    pub fn normalized(mut amps: Vec<C64>) -> Result<Self> {
        if amps.len() < 2 {
            return Err(Error::DimensionTooSmall(amps.len()));
        }
        let n2 = norm_sqr(&amps);
        if !(n2.is_finite() && n2 > 0.0) {
            return Err(Error::NotNormalized(n2));
        }
        let inv = 1.0 / n2.sqrt();
        amps.iter_mut().for_each(|a| *a *= inv);
        Ok(Self { amps })
    }

    /// Computational basis vector |k⟩ in dimension `dim`.
    pub fn basis_state(dim: usize, k: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::DimensionTooSmall(dim));
        }
        if k >= dim {
            return Err(Error::InvalidArgument(format!(
                "basis index {k} out of range for dimension {dim}"
            )));
        }
        let mut amps = vec![ZERO; dim];
        amps[k] = ONE;
        Ok(Self { amps })
    }

    pub fn zero() -> Self {
        Self { amps: vec![ONE, ZERO] }
    }

    pub fn one() -> Self {
        Self { amps: vec![ZERO, ONE] }
    }

    /// Haar-random state: normalized complex Gaussian amplitudes.
    pub fn random<R: rand::Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<Self> {
        use rand_distr::{Distribution, StandardNormal};
        if dim < 2 {
            return Err(Error::DimensionTooSmall(dim));
        }
        loop {
            let amps: Vec<C64> = (0..dim)
                .map(|_| C64::new(StandardNormal.sample(rng), StandardNormal.sample(rng)))
                .collect();
            if norm_sqr(&amps) > 1e-300 {
                return Self::normalized(amps);
            }
        }
    }

    /// cos(α/2)|0⟩ + e^{iβ} sin(α/2)|1⟩
    pub fn qubit(alpha: f64, beta: f64) -> Self {
        let (s, c) = (alpha / 2.0).sin_cos();
        Self {
            amps: vec![C64::new(c, 0.0), C64::from_polar(s, beta)],
        }
    }

    /// Builds a state from unnormalized qubit amplitudes without the norm check;
    /// used internally where the construction is unitary by design.
    pub(crate) fn from_raw(amps: Vec<C64>) -> Self {
        debug_assert!((norm_sqr(&amps) - 1.0).abs() < 1e-9);
        Self { amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    /// ⟨self|other⟩, conjugating `self`.
    pub fn inner(&self, other: &PureState) -> Result<C64> {
        check_dims(self.dim(), other.dim())?;
        Ok(dot(&self.amps, &other.amps))
    }

    /// |⟨self|other⟩|², insensitive to global phase.
    pub fn fidelity(&self, other: &PureState) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// Multiplies every amplitude by `e^{i·phase}`.
    pub fn with_global_phase(&self, phase: f64) -> Self {
        let z = C64::from_polar(1.0, phase);
        Self {
            amps: self.amps.iter().map(|a| a * z).collect(),
        }
    }

    pub fn to_bloch(&self) -> Result<BlochVector> {
        if self.dim() != 2 {
            return Err(Error::NotQubit(self.dim()));
        }
        let (a, b) = (self.amps[0], self.amps[1]);
        let cross = a.conj() * b;
        Ok(BlochVector {
            x: 2.0 * cross.re,
            y: 2.0 * cross.im,
            z: a.norm_sqr() - b.norm_sqr(),
        })
    }

    pub fn from_bloch(v: &BlochVector) -> Result<Self> {
        let n = v.norm();
        if (n - 1.0).abs() > ORTHO_TOL {
            return Err(Error::NotUnitBloch(n));
        }
        let theta = (v.z / n).clamp(-1.0, 1.0).acos();
        let azimuth = v.y.atan2(v.x);
        Ok(Self::qubit(theta, azimuth))
    }
}

impl Index<usize> for PureState {
    type Output = C64;

    fn index(&self, i: usize) -> &C64 {
        &self.amps[i]
    }
}

/// ⟨a|b⟩
pub fn inner_product(a: &PureState, b: &PureState) -> Result<C64> {
    a.inner(b)
}

pub(crate) fn dot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub(crate) fn norm_sqr(a: &[C64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum()
}

fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// An orthonormal basis of `d` states in dimension `d`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectiveBasis {
    vectors: Vec<PureState>,
}

impl ProjectiveBasis {
    pub fn new(vectors: Vec<PureState>) -> Result<Self> {
        let dim = vectors.first().map(PureState::dim).unwrap_or(0);
        if vectors.len() != dim || dim < 2 {
            return Err(Error::IncompleteBasis {
                dim,
                found: vectors.len(),
            });
        }
        for (i, v) in vectors.iter().enumerate() {
            check_dims(dim, v.dim())?;
            for (j, w) in vectors.iter().enumerate().skip(i + 1) {
                let overlap = v.inner(w)?.norm();
                if overlap > ORTHO_TOL {
                    return Err(Error::NotOrthonormal { i, j, overlap });
                }
            }
        }
        Ok(Self { vectors })
    }

    pub fn computational(dim: usize) -> Result<Self> {
        (0..dim)
            .map(|k| PureState::basis_state(dim, k))
            .collect::<Result<Vec<_>>>()
            .and_then(Self::new)
    }

    /// The qubit basis {|n⟩, |−n⟩} along Bloch direction `axis`.
    pub fn from_bloch_axis(axis: &BlochVector) -> Result<Self> {
        let up = PureState::from_bloch(axis)?;
        let down = PureState::from_bloch(&axis.antipode())?;
        Self::new(vec![up, down])
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[PureState] {
        &self.vectors
    }

    pub fn iter(&self) -> std::slice::Iter<'_, PureState> {
        self.vectors.iter()
    }
}

impl Index<usize> for ProjectiveBasis {
    type Output = PureState;

    fn index(&self, i: usize) -> &PureState {
        &self.vectors[i]
    }
}

/// Born-rule outcome probabilities `|⟨b_i|s⟩|²`.
pub fn born_probabilities(s: &PureState, basis: &ProjectiveBasis) -> Result<OutcomeDistribution> {
    check_dims(basis.dim(), s.dim())?;
    let probs = basis
        .iter()
        .map(|b| b.inner(s).map(|z| z.norm_sqr()))
        .collect::<Result<Vec<_>>>()?;
    OutcomeDistribution::new(vec!["outcome"], vec![probs.len()], probs)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn dot(&self, other: &BlochVector) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn antipode(&self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }

    /// Angle between the two directions, in radians.
    pub fn angle_to(&self, other: &BlochVector) -> f64 {
        let cross = BlochVector::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        );
        cross.norm().atan2(self.dot(other))
    }

    /// Angle between the unoriented axes through `self` and `other`, in `[0, π/2]`.
    pub fn axis_angle_to(&self, other: &BlochVector) -> f64 {
        let a = self.angle_to(other);
        a.min(std::f64::consts::PI - a)
    }
}

impl fmt::Display for BlochVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:.6}, {:.6}, {:.6})", self.x, self.y, self.z)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// A 2×2 complex matrix acting on qubit amplitudes, stored row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Unitary2 {
    pub m: [[C64; 2]; 2],
}

impl Unitary2 {
    pub const IDENTITY: Unitary2 = Unitary2 {
        m: [[ONE, ZERO], [ZERO, ONE]],
    };

    pub fn new(m: [[C64; 2]; 2]) -> Self {
        Self { m }
    }

    pub fn apply(&self, s: &PureState) -> Result<PureState> {
        if s.dim() != 2 {
            return Err(Error::NotQubit(s.dim()));
        }
        let [a, b] = self.apply_pair([s[0], s[1]]);
        Ok(PureState { amps: vec![a, b] })
    }

    pub(crate) fn apply_pair(&self, v: [C64; 2]) -> [C64; 2] {
        [
            self.m[0][0] * v[0] + self.m[0][1] * v[1],
            self.m[1][0] * v[0] + self.m[1][1] * v[1],
        ]
    }

    pub fn mul(&self, rhs: &Unitary2) -> Unitary2 {
        let mut out = [[ZERO; 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, cell) in row.iter_mut().enumerate() {
                *cell = self.m[r][0] * rhs.m[0][c] + self.m[r][1] * rhs.m[1][c];
            }
        }
        Unitary2 { m: out }
    }

    pub fn adjoint(&self) -> Unitary2 {
        let m = &self.m;
        Unitary2 {
            m: [[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]],
        }
    }

    /// Largest entry of `|U†U − 1|`.
    pub fn unitarity_defect(&self) -> f64 {
        let p = self.adjoint().mul(self);
        let mut worst: f64 = 0.0;
        for r in 0..2 {
            for c in 0..2 {
                let target = if r == c { ONE } else { ZERO };
                worst = worst.max((p.m[r][c] - target).norm());
            }
        }
        worst
    }
}

/// `exp(-i·angle·σ_axis/2)`
pub fn bloch_rotation(axis: Axis, angle: f64) -> Unitary2 {
    let (s, c) = (angle / 2.0).sin_cos();
    let m = match axis {
        Axis::X => [[C64::new(c, 0.0), C64::new(0.0, -s)], [C64::new(0.0, -s), C64::new(c, 0.0)]],
        Axis::Y => [[C64::new(c, 0.0), C64::new(-s, 0.0)], [C64::new(s, 0.0), C64::new(c, 0.0)]],
        Axis::Z => [[C64::new(c, -s), ZERO], [ZERO, C64::new(c, s)]],
    };
    Unitary2 { m }
}

/// (|0⟩ + e^{iχ}|1⟩)/√2 and (|0⟩ − e^{iχ}|1⟩)/√2, the equatorial basis at azimuth χ.
pub fn equatorial_pair(chi: f64) -> [[C64; 2]; 2] {
    let h = C64::new(FRAC_1_SQRT_2, 0.0);
    let p = C64::from_polar(FRAC_1_SQRT_2, chi);
    [[h, p], [h, -p]]
}
