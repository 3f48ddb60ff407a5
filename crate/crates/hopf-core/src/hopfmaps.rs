//! The 0th–3rd non-compact Hopf maps, their patchwise inversion sections and
//! fiber bookkeeping.
//!
//! Every map has the form `x^a = ψ† W γ^a ψ` with the family's weight `W`
//! (identity when absent); component formulas are never expanded by hand.
//! Sections share one shape: with `p` the second-to-last coordinate, `x_L`
//! the last and `M(x)` a linear matrix function,
//!
//! ```text
//! upper: ψ̃ = ((1 + x_L)·1 ; p·1 + M) / √(2(1 + x_L))
//! lower: ψ̃′ = (p·1 − M ; (1 − x_L)·1) / √(2(1 − x_L)),   ψ̃′ = ψ̃ g
//! ```
//!
//! The level 1-II map only reaches the upper leaf `x³ ≥ 1`; its lower leaf is
//! covered by the conjugate representation `τ̃^i = −(τ^i)*`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gammarep::{self, build_family, charge_conjugation, FamilyName, Realization};
use crate::report::{max_residual, Check};
use crate::ringmat::{MetricForm, RMatrix};
use crate::scalar::{Real, Ring, UnitRing};
use crate::splitnum::SplitComplex;

/// `1 ± x_L` below this is outside the patch.
pub const EPS_PATCH: f64 = 1e-9;
/// Float tolerance for normalization preconditions.
pub const NORM_TOL: f64 = 1e-9;
/// Rejection threshold: accept a draw only if its weighted norm exceeds this
/// fraction of its Euclidean norm squared.
pub const EPS_NORM: f64 = 0.1;
pub const SAMPLE_CAP: usize = 1000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HopfError {
    #[error("spinor is not normalized: weighted norm {norm}")]
    Unnormalized { norm: f64 },
    #[error("spinor violates the Majorana condition (residual {residual:e})")]
    NotMajorana { residual: f64 },
    #[error("point is too close to the edge of the {patch} patch (1 ± x_last = {factor:e}); use the {other} patch")]
    PatchDegenerate { patch: Patch, other: Patch, factor: f64 },
    #[error("the {0} patch is not covered by this map")]
    PatchUnavailable(Patch),
    #[error("point is off the hyperboloid: η(x,x) = {value}, expected {expected}")]
    OffHyperboloid { value: f64, expected: i8 },
    #[error("expected {expected} components, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("level {level}-{realization} needs a ring whose unit squares to {need}")]
    WrongRing { level: u8, realization: Realization, need: i64 },
    #[error("level {0} does not exist (0..=3)")]
    BadLevel(u8),
    #[error("square root of {0} is not exact in this field")]
    InexactSqrt(f64),
    #[error("no acceptable draw within {0} attempts")]
    Sampling(usize),
    #[error("level {0} has no inversion section")]
    NoSection(u8),
    #[error("spinor has zero weighted norm")]
    NullNorm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Patch {
    Upper,
    Lower,
}

impl Patch {
    pub fn other(self) -> Patch {
        match self {
            Patch::Upper => Patch::Lower,
            Patch::Lower => Patch::Upper,
        }
    }
}

impl fmt::Display for Patch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Patch::Upper => "upper",
            Patch::Lower => "lower",
        })
    }
}

impl FromStr for Patch {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "upper" => Ok(Patch::Upper),
            "lower" => Ok(Patch::Lower),
            _ => Err(format!("patch must be upper or lower, got `{s}`")),
        }
    }
}

/// A (level, realization) pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MapCase {
    pub level: u8,
    pub realization: Realization,
}

impl fmt::Display for MapCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.level, self.realization)
    }
}

impl MapCase {
    pub const fn new(level: u8, realization: Realization) -> Self {
        MapCase { level, realization }
    }

    /// Levels 1–3 in both realizations.
    pub fn all() -> [MapCase; 6] {
        use Realization::*;
        [MapCase::new(1, I), MapCase::new(1, II), MapCase::new(2, I), MapCase::new(2, II), MapCase::new(3, I), MapCase::new(3, II)]
    }

    pub fn check(self) -> Result<Self, HopfError> {
        if self.level > 3 {
            Err(HopfError::BadLevel(self.level))
        } else {
            Ok(self)
        }
    }

    pub fn family(self) -> FamilyName {
        use Realization::*;
        match (self.level, self.realization) {
            (1, I) => FamilyName::SplitPauli,
            (1, II) => FamilyName::Tau,
            (2, I) => FamilyName::So32I,
            (2, II) => FamilyName::So32II,
            (3, I) => FamilyName::So54I,
            _ => FamilyName::So54II,
        }
    }

    pub fn unit_square(self) -> i64 {
        match self.realization {
            Realization::I => 1,
            Realization::II => -1,
        }
    }

    pub fn base_metric(self) -> MetricForm {
        match self.level {
            0 => MetricForm::new(&[1, -1]),
            1 if self.realization == Realization::I => MetricForm::new(&gammarep::SPLIT_PAULI_METRIC),
            1 => MetricForm::new(&gammarep::TAU_METRIC),
            2 if self.realization == Realization::I => MetricForm::new(&gammarep::SO32_I_METRIC),
            2 => MetricForm::new(&gammarep::SO32_II_METRIC),
            _ if self.realization == Realization::I => MetricForm::new(&gammarep::SO54_I_METRIC),
            _ => MetricForm::new(&gammarep::SO54_II_METRIC),
        }
    }

    /// Value of `η_ab x^a x^b` on the image.
    pub fn constraint(self) -> i8 {
        match (self.level, self.realization) {
            (0, _) => -1,
            (1, Realization::I) => 1,
            (1, Realization::II) => -1,
            (2, _) => -1,
            _ => 1,
        }
    }

    pub fn base_dim(self) -> usize {
        [2, 3, 5, 9][self.level as usize]
    }

    pub fn spinor_dim(self) -> usize {
        [2, 2, 4, 16][self.level as usize]
    }

    /// Columns of the matrix section: the fiber's dimension.
    pub fn fiber_dim(self) -> usize {
        [1, 1, 2, 8][self.level as usize]
    }

    /// Whether the lower patch of this map exists and is glued to the upper by a
    /// transition function.
    pub fn has_transition(self) -> bool {
        !(self.level == 1 && self.realization == Realization::II)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spinor<T> {
    pub level: u8,
    pub realization: Realization,
    pub comps: Vec<T>,
    /// Set on level 1-II lower-leaf spinors, which live in the conjugate
    /// representation.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub conjugate_rep: bool,
}

impl<T: UnitRing> Spinor<T> {
    pub fn new(case: MapCase, comps: Vec<T>) -> Self {
        Spinor { level: case.level, realization: case.realization, comps, conjugate_rep: false }
    }

    pub fn case(&self) -> MapCase {
        MapCase::new(self.level, self.realization)
    }

    pub fn column(&self) -> RMatrix<T> {
        RMatrix::column(self.comps.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasePoint {
    pub coords: Vec<f64>,
    pub metric: MetricForm,
    pub patch: Patch,
}

impl BasePoint {
    pub fn new(coords: Vec<f64>, metric: MetricForm) -> Self {
        let patch = if coords.last().copied().unwrap_or(0.0) >= 0.0 { Patch::Upper } else { Patch::Lower };
        BasePoint { coords, metric, patch }
    }

    pub fn on(case: MapCase, coords: Vec<f64>) -> Self {
        BasePoint::new(coords, case.base_metric())
    }

    pub fn with_patch(mut self, patch: Patch) -> Self {
        self.patch = patch;
        self
    }

    pub fn last(&self) -> f64 {
        *self.coords.last().expect("non-empty point")
    }

    pub fn quad(&self) -> f64 {
        self.metric.quad(&self.coords)
    }
}

// ---------------------------------------------------------------------------
// level 0

/// `(y¹, y²) = (2x¹x², (x¹)² + (x²)²)`, identifying `x` with `−x`.
pub fn project_level0<R: Real>(x: &[R; 2]) -> [R; 2] {
    let two = R::from_i64(2);
    [two * x[0].clone() * x[1].clone(), x[0].clone() * x[0].clone() + x[1].clone() * x[1].clone()]
}

/// A preimage of `y` under the level-0 map with `x² > 0`.
pub fn invert_level0(y: &[f64; 2]) -> Result<[f64; 2], HopfError> {
    let q = y[0] * y[0] - y[1] * y[1];
    if (q + 1.0).abs() > 1e-9 || y[1] < 1.0 {
        return Err(HopfError::OffHyperboloid { value: q, expected: -1 });
    }
    let x2 = ((y[1] + 1.0) / 2.0).sqrt();
    Ok([y[0] / (2.0 * x2), x2])
}

// ---------------------------------------------------------------------------
// maps, levels 1-3

/// Precomputed matrices for one (level, realization) over ring `T`.
#[derive(Clone, Debug)]
pub struct HopfMap<T> {
    pub case: MapCase,
    pub metric: MetricForm,
    /// `W γ^a`, one per base coordinate.
    pub kmat: Vec<RMatrix<T>>,
    /// Level 1-II lower leaf: `σ³ τ̃^i`.
    pub kmat_conj: Option<Vec<RMatrix<T>>>,
    /// Spinor-space weight `W`.
    pub weight: RMatrix<T>,
    /// Fiber weight `W0` with `ψ̃† W ψ̃ = W0`.
    pub fiber_weight: RMatrix<T>,
    /// `M(x) = Σ_k x^k · m[k]` over the first `base_dim − 2` coordinates.
    pub m: Vec<RMatrix<T>>,
    /// Majorana matrix: `Ψ = −B⁻¹Ψ*` (3-I) with `B⁻¹ = B`.
    pub majorana: Option<RMatrix<T>>,
}

impl<T: UnitRing> HopfMap<T> {
    pub fn new(case: MapCase) -> Result<Self, HopfError> {
        let case = case.check()?;
        if case.level == 0 {
            return Err(HopfError::NoSection(0));
        }
        if case.unit_square() != T::UNIT_SQUARE {
            return Err(HopfError::WrongRing { level: case.level, realization: case.realization, need: case.unit_square() });
        }
        let fam = build_family::<T>(case.family()).expect("ring checked above");
        let n = fam.size();
        let weight = fam.weight.clone().unwrap_or_else(|| RMatrix::identity(n));
        let kmat: Vec<RMatrix<T>> = fam.gammas.iter().map(|g| &weight * g).collect();
        let u = T::unit();
        let fd = case.fiber_dim();
        use Realization::*;
        let scalar = |t: T| RMatrix::from_vec(1, 1, vec![t]);
        let (m, fiber_weight, kmat_conj, majorana) = match (case.level, case.realization) {
            (1, I) => (vec![RMatrix::zeros(1, 1), scalar(-u)], RMatrix::identity(1), None, None),
            (1, II) => {
                let conj: Vec<_> = fam.gammas.iter().map(|t| &weight * &-t.conj()).collect();
                (vec![scalar(-u), RMatrix::zeros(1, 1)], RMatrix::identity(1), Some(conj), None)
            }
            (2, I) => {
                let sp = gammarep::pauli::<T>();
                let m = (0..3).map(|i| sp[i].scale_i(gammarep::SPLIT_PAULI_METRIC[i] as i64).times_unit()).collect();
                (m, RMatrix::identity(2), None, None)
            }
            (2, II) => {
                let t = gammarep::tau::<T>();
                let m = (0..3).map(|i| t[i].scale_i(gammarep::TAU_METRIC[i] as i64).scale(&-u.clone())).collect();
                (m, gammarep::pauli::<T>()[2].clone(), None, None)
            }
            (3, I) => {
                let g43 = build_family::<T>(FamilyName::So43I).expect("split ring");
                let m = (1..8).map(|i| g43.lowered(i).times_unit()).collect();
                let b = charge_conjugation::<T>(FamilyName::So54I).expect("split ring").c;
                (m, RMatrix::identity(8), None, Some(b))
            }
            _ => {
                let lam = gammarep::literal_lambda::<T>();
                let m = (1..8).map(|i| -lam[8 - i - 1].scale_i(gammarep::LAMBDA_METRIC[8 - i - 1] as i64)).collect();
                let s3 = RMatrix::block_diag(&RMatrix::identity(4), &-RMatrix::<T>::identity(4));
                (m, s3, None, None)
            }
        };
        debug_assert_eq!(fiber_weight.rows(), fd);
        Ok(HopfMap { case, metric: case.base_metric(), kmat, kmat_conj, weight, fiber_weight, m, majorana })
    }

    /// Weighted norm `ψ† W ψ` (real part; the imaginary part vanishes for a hermitian weight).
    pub fn norm(&self, comps: &[T]) -> T {
        let c = RMatrix::column(comps.to_vec());
        (&(&c.dagger() * &self.weight) * &c)[(0, 0)].clone()
    }

    /// `x^a = ψ† W γ^a ψ` without any precondition; `η(x, x) = c · norm²` holds identically.
    pub fn raw_project(&self, comps: &[T], conjugate_rep: bool) -> Vec<T::Re> {
        let c = RMatrix::column(comps.to_vec());
        let cd = c.dagger();
        let ks = if conjugate_rep { self.kmat_conj.as_ref().expect("conjugate rep only at level 1-II") } else { &self.kmat };
        ks.iter().map(|k| (&(&cd * k) * &c)[(0, 0)].re()).collect()
    }

    /// `Ψ + B Ψ*` residual (zero iff Majorana), level 3-I only.
    pub fn majorana_residual(&self, comps: &[T]) -> Option<f64> {
        let b = self.majorana.as_ref()?;
        let c = RMatrix::column(comps.to_vec());
        Some((&c + &(b * &c.conj())).max_abs())
    }

    pub fn project(&self, s: &Spinor<T>) -> Result<Vec<T::Re>, HopfError> {
        if s.case() != self.case {
            return Err(HopfError::WrongRing { level: s.level, realization: s.realization, need: self.case.unit_square() });
        }
        if s.comps.len() != self.case.spinor_dim() {
            return Err(HopfError::Dimension { expected: self.case.spinor_dim(), got: s.comps.len() });
        }
        let n = self.norm(&s.comps);
        if (n.clone() - T::one()).mag() > NORM_TOL {
            return Err(HopfError::Unnormalized { norm: n.re().to_f64() });
        }
        if let Some(r) = self.majorana_residual(&s.comps) {
            if r > NORM_TOL {
                return Err(HopfError::NotMajorana { residual: r });
            }
        }
        if self.case.level == 3 && self.case.realization == Realization::II {
            let imag = s.comps.iter().map(|c| c.im().mag()).fold(0.0, f64::max);
            if imag > NORM_TOL {
                return Err(HopfError::NotMajorana { residual: imag });
            }
        }
        Ok(self.raw_project(&s.comps, s.conjugate_rep))
    }

    /// `M(x)` from the first `base_dim − 2` coordinates.
    pub fn m_of(&self, x: &[T::Re]) -> RMatrix<T> {
        let fd = self.case.fiber_dim();
        self.m.iter().zip(x).fold(RMatrix::zeros(fd, fd), |acc, (m, xk)| &acc + &m.scale(&T::from_re(xk.clone())))
    }

    fn split_coords<'a>(&self, x: &'a [T::Re]) -> Result<(&'a T::Re, &'a T::Re), HopfError> {
        let d = self.case.base_dim();
        if x.len() != d {
            return Err(HopfError::Dimension { expected: d, got: x.len() });
        }
        let p_idx = if self.case.level == 1 {
            if self.case.realization == Realization::I {
                0
            } else {
                1
            }
        } else {
            d - 2
        };
        Ok((&x[p_idx], &x[d - 1]))
    }

    /// Matrix section `ψ̃(x)` on a patch; columns are orthonormal w.r.t. the weights.
    pub fn section(&self, x: &[T::Re], patch: Patch) -> Result<RMatrix<T>, HopfError> {
        let (p, xl) = self.split_coords(x)?;
        let one = T::Re::one();
        let factor = match patch {
            Patch::Upper => one.clone() + xl.clone(),
            Patch::Lower => one.clone() - xl.clone(),
        };
        if factor.to_f64() < EPS_PATCH {
            return Err(HopfError::PatchDegenerate { patch, other: patch.other(), factor: factor.to_f64() });
        }
        let two_f = T::Re::from_i64(2) * factor.clone();
        let root = two_f.sqrt_exact().ok_or_else(|| HopfError::InexactSqrt(two_f.to_f64()))?;
        let inv = T::from_re(root.recip());
        let fd = self.case.fiber_dim();
        let id = RMatrix::<T>::identity(fd);
        let m = self.m_of(x);
        let pm = id.scale(&T::from_re(p.clone()));
        let f = id.scale(&T::from_re(factor));
        let s = match patch {
            Patch::Upper => RMatrix::block(&[vec![Some(&f)], vec![Some(&(&pm + &m))]]),
            Patch::Lower if self.case.has_transition() => RMatrix::block(&[vec![Some(&(&pm - &m))], vec![Some(&f)]]),
            Patch::Lower => RMatrix::block(&[vec![Some(&f)], vec![Some(&-(&pm - &m))]]),
        };
        Ok(s.scale(&inv))
    }

    /// Exact directional derivative of [`section`](Self::section) along `t`.
    ///
    /// The unnormalized section is affine in `x`, so
    /// `dψ̃ = N(t)/√(2f) − ψ̃ df/(2f)` with `N` its linear part and `f = 1 ± x_L`.
    pub fn section_derivative(&self, x: &[T::Re], t: &[T::Re], patch: Patch) -> Result<RMatrix<T>, HopfError> {
        let s = self.section(x, patch)?;
        let (_, xl) = self.split_coords(x)?;
        let (tp, tl) = self.split_coords(t)?;
        let one = T::Re::one();
        let (factor, df) = match patch {
            Patch::Upper => (one + xl.clone(), tl.clone()),
            Patch::Lower => (one - xl.clone(), T::Re::zero() - tl.clone()),
        };
        let two_f = T::Re::from_i64(2) * factor.clone();
        let root = two_f.sqrt_exact().ok_or_else(|| HopfError::InexactSqrt(two_f.to_f64()))?;
        let fd = self.case.fiber_dim();
        let id = RMatrix::<T>::identity(fd);
        let m = self.m_of(t);
        let pm = id.scale(&T::from_re(tp.clone()));
        let f = id.scale(&T::from_re(df.clone()));
        let n = match patch {
            Patch::Upper => RMatrix::block(&[vec![Some(&f)], vec![Some(&(&pm + &m))]]),
            Patch::Lower if self.case.has_transition() => RMatrix::block(&[vec![Some(&(&pm - &m))], vec![Some(&f)]]),
            Patch::Lower => RMatrix::block(&[vec![Some(&f)], vec![Some(&-(&pm - &m))]]),
        };
        let k = df * two_f.recip();
        Ok(&n.scale(&T::from_re(root.recip())) - &s.scale(&T::from_re(k)))
    }

    /// `g = (p − M)/√(1 − x_L²)`, with `ψ̃_lower = ψ̃_upper · g`.
    pub fn transition(&self, x: &[T::Re]) -> Result<RMatrix<T>, HopfError> {
        if !self.case.has_transition() {
            return Err(HopfError::PatchUnavailable(Patch::Lower));
        }
        let (p, xl) = self.split_coords(x)?;
        let one = T::Re::one();
        let d = one - xl.clone() * xl.clone();
        if d.to_f64() < EPS_PATCH {
            return Err(HopfError::PatchDegenerate { patch: Patch::Upper, other: Patch::Lower, factor: d.to_f64() });
        }
        let root = d.sqrt_exact().ok_or_else(|| HopfError::InexactSqrt(d.to_f64()))?;
        let fd = self.case.fiber_dim();
        let pm = RMatrix::<T>::identity(fd).scale(&T::from_re(p.clone()));
        Ok((&pm - &self.m_of(x)).scale(&T::from_re(root.recip())))
    }

    /// Section times fiber.
    pub fn invert(&self, x: &[T::Re], patch: Patch, fiber: &[T]) -> Result<Spinor<T>, HopfError> {
        let q = self.metric.quad_exact(x);
        let c = T::Re::from_i64(self.case.constraint() as i64);
        if (q.clone() - c).to_f64().abs() > 1e-9 * (1.0 + x.iter().map(|v| v.to_f64().abs()).fold(0.0, f64::max)).powi(2) {
            return Err(HopfError::OffHyperboloid { value: q.to_f64(), expected: self.case.constraint() });
        }
        if fiber.len() != self.case.fiber_dim() {
            return Err(HopfError::Dimension { expected: self.case.fiber_dim(), got: fiber.len() });
        }
        let s = self.section(x, patch)?;
        let psi = &s * &RMatrix::column(fiber.to_vec());
        let mut sp = Spinor::new(self.case, psi.entries().to_vec());
        sp.conjugate_rep = patch == Patch::Lower && !self.case.has_transition();
        Ok(sp)
    }

    /// Recover the fiber from a spinor over `x`: `f = W0 ψ̃† W ψ`.
    pub fn fiber_of(&self, x: &[T::Re], patch: Patch, s: &Spinor<T>) -> Result<Vec<T>, HopfError> {
        let sec = self.section(x, patch)?;
        let f = &(&(&self.fiber_weight * &sec.dagger()) * &self.weight) * &s.column();
        Ok(f.entries().to_vec())
    }

    /// Default fiber: the first basis vector at levels 1–2 and 3-II, the
    /// Majorana `(ψ, jψ_c)/√2` built from `ψ = (1,0,0,0)` at level 3-I.
    pub fn default_fiber(&self) -> Vec<T> {
        let fd = self.case.fiber_dim();
        if self.case.level == 3 && self.case.realization == Realization::I {
            let mut psi = vec![T::zero(); 4];
            psi[0] = T::one();
            return majorana_fiber(&psi).expect("unit spinor has unit norm");
        }
        let mut f = vec![T::zero(); fd];
        f[0] = T::one();
        f
    }
}

/// Level 3-I fiber `Φ = (ψ, j ψ_c)/√2` with `ψ_c = bψ*`; requires `ψ†ψ = 1`.
pub fn majorana_fiber<T: UnitRing>(psi: &[T]) -> Result<Vec<T>, HopfError> {
    let b =
        charge_conjugation::<T>(FamilyName::So32I).map_err(|_| HopfError::WrongRing { level: 3, realization: Realization::I, need: 1 })?;
    let c = RMatrix::column(psi.to_vec());
    let n = (&c.dagger() * &c)[(0, 0)].clone();
    if n.is_zero() {
        return Err(HopfError::NullNorm);
    }
    if (n.clone() - T::one()).mag() > NORM_TOL {
        return Err(HopfError::Unnormalized { norm: n.re().to_f64() });
    }
    let pc = (&b.c * &c.conj()).times_unit();
    let two = T::Re::from_i64(2);
    let r = two.sqrt_exact().ok_or(HopfError::InexactSqrt(2.0))?.recip();
    Ok(c.entries().iter().chain(pc.entries()).map(|z| z.scale(&r)).collect())
}

// ---------------------------------------------------------------------------
// float sampling

pub type SplitF = SplitComplex<f64>;
pub type ComplexF = Complex<f64>;

fn gauss(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller on two uniforms
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

fn euclid<T: UnitRing<Re = f64>>(v: &[T]) -> f64 {
    v.iter().map(|z| z.re() * z.re() + z.im() * z.im()).sum()
}

fn draw<T: UnitRing<Re = f64>>(n: usize, real: bool, rng: &mut ChaCha8Rng) -> Vec<T> {
    (0..n).map(|_| T::new(gauss(rng), if real { 0.0 } else { gauss(rng) })).collect()
}

/// Normalized random spinor. Draws are rejected when the weighted norm is not
/// positive and well conditioned; level 3-I is assembled as `(U, jU_c, V, jV_c)`.
pub fn sample_normalized<T: UnitRing<Re = f64>>(case: MapCase, rng: &mut ChaCha8Rng) -> Result<Spinor<T>, HopfError> {
    let map = HopfMap::<T>::new(case)?;
    for _ in 0..SAMPLE_CAP {
        let comps: Vec<T> = if case.level == 3 && case.realization == Realization::I {
            let b = charge_conjugation::<T>(FamilyName::So32I).expect("split ring").c;
            let mut out = Vec::with_capacity(16);
            for _ in 0..2 {
                let u = RMatrix::column(draw::<T>(4, false, rng));
                let uc = (&b * &u.conj()).times_unit();
                out.extend(u.entries().iter().cloned());
                out.extend(uc.entries().iter().cloned());
            }
            out
        } else {
            let real = case.level == 3;
            draw(case.spinor_dim(), real, rng)
        };
        let n = map.norm(&comps).re();
        if n > EPS_NORM * euclid(&comps) {
            let s = 1.0 / n.sqrt();
            return Ok(Spinor::new(case, comps.iter().map(|z| z.scale(&s)).collect()));
        }
    }
    Err(HopfError::Sampling(SAMPLE_CAP))
}

pub fn sample_seeded<T: UnitRing<Re = f64>>(case: MapCase, seed: u64) -> Result<Spinor<T>, HopfError> {
    sample_normalized(case, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Normalized fiber for a level's section: a phase at level 1, a normalized
/// level-(n−1) spinor at levels 2–3.
pub fn sample_fiber<T: UnitRing<Re = f64>>(case: MapCase, rng: &mut ChaCha8Rng) -> Result<Vec<T>, HopfError> {
    match case.level {
        1 => {
            let t = rng.gen_range(-1.5..1.5);
            Ok(vec![if T::UNIT_SQUARE == 1 { T::new(f64::cosh(t), f64::sinh(t)) } else { T::new(f64::cos(t), f64::sin(t)) }])
        }
        2 => Ok(sample_normalized::<T>(MapCase::new(1, case.realization), rng)?.comps),
        3 if case.realization == Realization::I => {
            let psi = sample_normalized::<T>(MapCase::new(2, Realization::I), rng)?;
            majorana_fiber(&psi.comps)
        }
        _ => {
            let s3 = RMatrix::block_diag(&RMatrix::identity(4), &-RMatrix::<T>::identity(4));
            for _ in 0..SAMPLE_CAP {
                let v = draw::<T>(8, true, rng);
                let c = RMatrix::column(v.clone());
                let n = (&(&c.dagger() * &s3) * &c)[(0, 0)].re();
                if n > EPS_NORM * euclid(&v) {
                    return Ok(v.iter().map(|z| z.scale(&(1.0 / n.sqrt()))).collect());
                }
            }
            Err(HopfError::Sampling(SAMPLE_CAP))
        }
    }
}

/// Random point on the case's hyperboloid inside `patch`, with bounded
/// coordinates and the patch factor at least `margin`.
pub fn sample_base_point(case: MapCase, patch: Patch, margin: f64, rng: &mut ChaCha8Rng) -> Result<Vec<f64>, HopfError> {
    let metric = case.base_metric();
    let c = case.constraint() as f64;
    for _ in 0..SAMPLE_CAP * 10 {
        let x: Vec<f64> = (0..case.base_dim()).map(|_| gauss(rng)).collect();
        let q = metric.quad(&x);
        if q * c <= 0.1 * x.iter().map(|v| v * v).sum::<f64>() {
            continue;
        }
        let s = (c / q).sqrt();
        let x: Vec<f64> = x.iter().map(|v| v * s).collect();
        let xl = *x.last().expect("non-empty");
        let factor = match patch {
            Patch::Upper => 1.0 + xl,
            Patch::Lower => 1.0 - xl,
        };
        if factor >= margin && x.iter().all(|v| v.abs() < 8.0) {
            return Ok(x);
        }
    }
    Err(HopfError::Sampling(SAMPLE_CAP * 10))
}

/// Random point with `|x_L| ≤ 1 − margin`, where both patches apply.
pub fn sample_overlap_point(case: MapCase, margin: f64, rng: &mut ChaCha8Rng) -> Result<Vec<f64>, HopfError> {
    for _ in 0..SAMPLE_CAP {
        let x = sample_base_point(case, Patch::Upper, margin, rng)?;
        if 1.0 - x.last().expect("non-empty") >= margin {
            return Ok(x);
        }
    }
    Err(HopfError::Sampling(SAMPLE_CAP))
}

// ---------------------------------------------------------------------------
// hierarchical fiber check

/// The fiber of level n is a normalized level-(n−1) spinor: at level 2 the
/// fiber φ satisfies the level-1 normalization; at level 3-I the fiber
/// `Φ = (ψ, jψ_c)/√2` has `Φ†Φ = 1` and `Φ = dΦ*`.
pub fn hierarchical_fiber_check(level: u8, realization: Realization, seed: u64) -> Result<Vec<Check>, HopfError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let case = MapCase::new(level, realization);
    let mut out = Vec::new();
    match (level, realization) {
        (2, r) => {
            let res = if r == Realization::I {
                fiber_norm_residual::<SplitF>(case, &mut rng)?
            } else {
                fiber_norm_residual::<ComplexF>(case, &mut rng)?
            };
            out.push(Check::within(
                &format!("hopf.{case}.fiber_norm"),
                "fiber recovered from a level-2 spinor carries the level-1 normalization",
                res,
                1e-12,
                "ψ = ψ̃ φ, φ†φ = 1",
            ));
        }
        (3, Realization::I) => {
            let psi = sample_normalized::<SplitF>(MapCase::new(2, Realization::I), &mut rng)?;
            let phi = majorana_fiber(&psi.comps)?;
            let c = RMatrix::column(phi.clone());
            let n = (&c.dagger() * &c)[(0, 0)];
            let d = charge_conjugation::<SplitF>(FamilyName::So43I).expect("split").c;
            let maj = (&c - &(&d * &c.conj())).max_abs();
            out.push(Check::within("hopf.3-I.fiber_norm", "Φ = (ψ, jψ_c)/√2 has Φ†Φ = 1", (n - SplitF::one()).mag(), 1e-12, "Φ†Φ = 1"));
            out.push(Check::within("hopf.3-I.fiber_majorana", "Φ = d Φ*", maj, 1e-12, "Φ = d·Φ*"));
            let null = majorana_fiber(&[SplitF::new(1.0, 0.0), SplitF::new(0.0, 1.0), SplitF::zero(), SplitF::zero()]);
            out.push(Check::exact("hopf.3-I.fiber_null", "null ψ (ψ†ψ = 0) is rejected", null == Err(HopfError::NullNorm), "ψ†ψ ≠ 0"));
        }
        (3, Realization::II) => {
            let res = fiber_norm_residual::<ComplexF>(case, &mut rng)?;
            out.push(Check::within(
                "hopf.3-II.fiber_norm",
                "fiber recovered from a level-3 spinor has Φᵗ Σ³ Φ = 1",
                res,
                1e-12,
                "Ψ̃ᵗ K Ψ̃ = Σ³",
            ));
        }
        _ => return Err(HopfError::BadLevel(level)),
    }
    Ok(out)
}

fn fiber_norm_residual<T: UnitRing<Re = f64>>(case: MapCase, rng: &mut ChaCha8Rng) -> Result<f64, HopfError> {
    let map = HopfMap::<T>::new(case)?;
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let x = sample_base_point(case, Patch::Upper, 0.1, rng)?;
        let f = sample_fiber::<T>(case, rng)?;
        let s = map.invert(&x, Patch::Upper, &f)?;
        let back = map.fiber_of(&x, Patch::Upper, &s)?;
        let c = RMatrix::column(back.clone());
        let n = (&(&c.dagger() * &map.fiber_weight) * &c)[(0, 0)].re();
        let diff = back.iter().zip(&f).map(|(a, b)| (a.clone() - b.clone()).mag()).fold(0.0, f64::max);
        worst = max_residual([worst, (n - 1.0).abs(), diff]);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Rational};

    type SQ = SplitComplex<Rational>;

    fn sq(a: Rational) -> SQ {
        SQ::new(a, Rational::zero())
    }

    #[test]
    fn pole_spinor_projects_to_pole() {
        let m = HopfMap::<SQ>::new(MapCase::new(1, Realization::I)).unwrap();
        let s = Spinor::new(m.case, vec![sq(q(1, 1)), SQ::zero()]);
        assert_eq!(m.project(&s).unwrap(), vec![q(0, 1), q(0, 1), q(1, 1)]);
    }

    #[test]
    fn three_four_five_spinor() {
        let m = HopfMap::<SQ>::new(MapCase::new(1, Realization::I)).unwrap();
        let s = Spinor::new(m.case, vec![sq(q(3, 5)), sq(q(4, 5))]);
        let x = m.project(&s).unwrap();
        assert_eq!(x, vec![q(24, 25), q(0, 1), q(-7, 25)]);
        assert_eq!(m.metric.quad_exact(&x), q(1, 1));
    }

    #[test]
    fn level1_ii_hyperbolic_spinor() {
        let m = HopfMap::<ComplexF>::new(MapCase::new(1, Realization::II)).unwrap();
        let t: f64 = 0.7;
        let s = Spinor::new(m.case, vec![ComplexF::new(t.cosh(), 0.0), ComplexF::new(t.sinh(), 0.0)]);
        let x = m.project(&s).unwrap();
        let want = [0.0, (2.0 * t).sinh(), (2.0 * t).cosh()];
        for (a, b) in x.iter().zip(want) {
            assert!((a - b).abs() < 1e-12, "{x:?}");
        }
    }

    #[test]
    fn level2_pole() {
        let m = HopfMap::<SplitF>::new(MapCase::new(2, Realization::I)).unwrap();
        let mut c = vec![SplitF::zero(); 4];
        c[0] = SplitF::one();
        assert_eq!(m.project(&Spinor::new(m.case, c)).unwrap(), vec![0.0, 0.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn unnormalized_spinor_is_rejected() {
        let m = HopfMap::<SplitF>::new(MapCase::new(1, Realization::I)).unwrap();
        let s = Spinor::new(m.case, vec![SplitF::new(2.0, 0.0), SplitF::zero()]);
        assert_eq!(m.project(&s), Err(HopfError::Unnormalized { norm: 4.0 }));
    }

    #[test]
    fn pole_inversion() {
        let m = HopfMap::<SQ>::new(MapCase::new(1, Realization::I)).unwrap();
        let s = m.invert(&[q(0, 1), q(0, 1), q(1, 1)], Patch::Upper, &[SQ::one()]).unwrap();
        assert_eq!(s.comps, vec![SQ::one(), SQ::zero()]);
    }

    #[test]
    fn lower_patch_round_trip_is_exact() {
        let m = HopfMap::<SQ>::new(MapCase::new(1, Realization::I)).unwrap();
        let x = vec![q(24, 25), q(0, 1), q(-7, 25)];
        let s = m.invert(&x, Patch::Lower, &[SQ::one()]).unwrap();
        assert_eq!(m.project(&s).unwrap(), x);
    }

    #[test]
    fn level3_pole_section() {
        let m = HopfMap::<SplitF>::new(MapCase::new(3, Realization::I)).unwrap();
        let mut x = vec![0.0; 9];
        x[8] = 1.0;
        let s = m.section(&x, Patch::Upper).unwrap();
        let want = RMatrix::block(&[vec![Some(&RMatrix::identity(8))], vec![Some(&RMatrix::zeros(8, 8))]]);
        assert_eq!(s, want);
    }

    #[test]
    fn degenerate_patch_advises_other() {
        let m = HopfMap::<SplitF>::new(MapCase::new(1, Realization::I)).unwrap();
        let e = m.section(&[0.0, 0.0, -1.0], Patch::Upper).unwrap_err();
        assert!(matches!(e, HopfError::PatchDegenerate { other: Patch::Lower, .. }));
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_seeded::<SplitF>(MapCase::new(3, Realization::I), 9).unwrap();
        let b = sample_seeded::<SplitF>(MapCase::new(3, Realization::I), 9).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn level3_i_samples_are_majorana() {
        let m = HopfMap::<SplitF>::new(MapCase::new(3, Realization::I)).unwrap();
        let s = sample_seeded::<SplitF>(m.case, 4).unwrap();
        assert!(m.majorana_residual(&s.comps).unwrap() < 1e-12);
    }

    #[test]
    fn level0_antipodes_agree() {
        let x = [q(3, 4), q(5, 4)];
        let y = project_level0(&x);
        assert_eq!(y, project_level0(&[-x[0].clone(), -x[1].clone()]));
        assert_eq!(y[0].clone() * y[0].clone() - y[1].clone() * y[1].clone(), q(-1, 1));
    }

    #[test]
    fn hierarchical_checks_pass() {
        for (l, r) in [(2, Realization::I), (2, Realization::II), (3, Realization::I), (3, Realization::II)] {
            for c in hierarchical_fiber_check(l, r, 5).unwrap() {
                assert!(c.passed(), "{c:?}");
            }
        }
    }
}

// ---------------------------------------------------------------------------
// suite

fn rational_draw<T: UnitRing<Re = crate::scalar::Rational>>(n: usize, real: bool, rng: &mut ChaCha8Rng) -> Vec<T> {
    use crate::scalar::Rational;
    let mut r = || Rational::ratio(rng.gen_range(-9..=9), rng.gen_range(1..=6));
    (0..n)
        .map(|_| {
            let re = r();
            let im = if real { Rational::zero() } else { r() };
            T::new(re, im)
        })
        .collect()
}

/// Number of random rational spinors for which `η(x, x) ≠ c · norm²` exactly.
pub fn exact_constraint_failures<T: UnitRing<Re = crate::scalar::Rational>>(case: MapCase, samples: usize, seed: u64) -> usize {
    let map = HopfMap::<T>::new(case).expect("ring matches case");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = T::Re::from_i64(case.constraint() as i64);
    (0..samples)
        .filter(|_| {
            let comps: Vec<T> = if case.level == 3 && case.realization == Realization::I {
                let b = charge_conjugation::<T>(FamilyName::So32I).expect("split").c;
                let mut out = Vec::new();
                for _ in 0..2 {
                    let u = RMatrix::column(rational_draw::<T>(4, false, &mut rng));
                    out.extend(u.entries().iter().cloned());
                    out.extend((&b * &u.conj()).times_unit().entries().iter().cloned());
                }
                out
            } else {
                rational_draw(case.spinor_dim(), case.level == 3, &mut rng)
            };
            let n = map.norm(&comps).re();
            let x = map.raw_project(&comps, false);
            map.metric.quad_exact(&x) != c.clone() * n.clone() * n
        })
        .count()
}

fn float_constraint_residual<T: UnitRing<Re = f64>>(case: MapCase, samples: usize, rng: &mut ChaCha8Rng) -> Result<f64, HopfError> {
    let map = HopfMap::<T>::new(case)?;
    let c = case.constraint() as f64;
    let mut worst = 0.0;
    for _ in 0..samples {
        let s = sample_normalized::<T>(case, rng)?;
        let x = map.project(&s)?;
        worst = max_residual([worst, (map.metric.quad(&x) - c).abs()]);
    }
    Ok(worst)
}

fn round_trip_residual<T: UnitRing<Re = f64>>(case: MapCase, patch: Patch, points: usize, rng: &mut ChaCha8Rng) -> Result<f64, HopfError> {
    let map = HopfMap::<T>::new(case)?;
    let mut worst = 0.0;
    for _ in 0..points {
        let x = sample_base_point(case, patch, 0.05, rng)?;
        let f = sample_fiber::<T>(case, rng)?;
        let s = map.invert(&x, patch, &f)?;
        let y = map.project(&s)?;
        worst = max_residual(std::iter::once(worst).chain(x.iter().zip(&y).map(|(a, b)| (a - b).abs())));
    }
    Ok(worst)
}

/// Multiplying a level-1 spinor by a fiber phase (`e^{jϑ}` or `e^{iϑ}`) leaves its image unchanged.
fn fiber_invariance_residual<T: UnitRing<Re = f64>>(case: MapCase, rng: &mut ChaCha8Rng) -> Result<f64, HopfError> {
    let map = HopfMap::<T>::new(case)?;
    let mut worst = 0.0;
    for _ in 0..100 {
        let s = sample_normalized::<T>(case, rng)?;
        let t: f64 = rng.gen_range(-1.0..1.0);
        let ph = if T::UNIT_SQUARE == 1 { T::new(t.cosh(), t.sinh()) } else { T::new(t.cos(), t.sin()) };
        let rotated = Spinor::new(case, s.comps.iter().map(|z| ph.clone() * z.clone()).collect());
        let (x, y) = (map.project(&s)?, map.project(&rotated)?);
        worst = max_residual(std::iter::once(worst).chain(x.iter().zip(&y).map(|(a, b)| (a - b).abs())));
    }
    Ok(worst)
}

fn dispatch<A, B>(case: MapCase, split: A, complex: B) -> Result<f64, HopfError>
where
    A: FnOnce() -> Result<f64, HopfError>,
    B: FnOnce() -> Result<f64, HopfError>,
{
    match case.realization {
        Realization::I => split(),
        Realization::II => complex(),
    }
}

/// Constraint preservation (float and exact), level-0 identification, round
/// trips on both patches, fiber invariance and the hierarchical fiber checks.
pub fn hopf_suite(seed: u64, samples: usize, points: usize) -> Vec<Check> {
    use crate::scalar::Rational;
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fail = |id: String, e: HopfError| Check::exact(&id, e.to_string(), false, "");

    for case in MapCase::all() {
        let id = format!("hopf.{case}.constraint");
        let anchor = "η_ab x^a x^b = ±1";
        match dispatch(
            case,
            || float_constraint_residual::<SplitF>(case, samples, &mut rng.clone()),
            || float_constraint_residual::<ComplexF>(case, samples, &mut rng.clone()),
        ) {
            Ok(r) => out.push(Check::within(
                &id,
                format!("{samples} random normalized spinors land on η(x,x) = {}", case.constraint()),
                r,
                1e-12,
                anchor,
            )),
            Err(e) => out.push(fail(id, e)),
        }
        rng = ChaCha8Rng::seed_from_u64(rng.gen());

        let fails = match case.realization {
            Realization::I => exact_constraint_failures::<SplitComplex<Rational>>(case, 200, rng.gen()),
            Realization::II => exact_constraint_failures::<Complex<Rational>>(case, 200, rng.gen()),
        };
        out.push(Check::exact(
            &format!("hopf.{case}.constraint_exact"),
            format!("η(x,x) = {}·(ψ†Wψ)² on 200 random rational spinors ({fails} failures)", case.constraint()),
            fails == 0,
            anchor,
        ));

        for patch in [Patch::Upper, Patch::Lower] {
            let id = format!("hopf.{case}.round_trip.{patch}");
            match dispatch(
                case,
                || round_trip_residual::<SplitF>(case, patch, points, &mut rng.clone()),
                || round_trip_residual::<ComplexF>(case, patch, points, &mut rng.clone()),
            ) {
                Ok(r) => out.push(Check::within(&id, format!("project(invert(x)) = x at {points} points"), r, 1e-12, "x = ψ†Wγψ, ψ = ψ̃ φ")),
                Err(e) => out.push(fail(id, e)),
            }
            rng = ChaCha8Rng::seed_from_u64(rng.gen());
        }
    }

    for case in [MapCase::new(1, Realization::I), MapCase::new(1, Realization::II)] {
        let id = format!("hopf.{case}.fiber_invariance");
        match dispatch(
            case,
            || fiber_invariance_residual::<SplitF>(case, &mut rng.clone()),
            || fiber_invariance_residual::<ComplexF>(case, &mut rng.clone()),
        ) {
            Ok(r) => out.push(Check::within(&id, "projection invariant under the fiber phase", r, 1e-12, "φ → e^{uϑ} φ")),
            Err(e) => out.push(fail(id, e)),
        }
    }

    let mut ok = true;
    for _ in 0..200 {
        // rational points on x1² − x2² = −1 via x = ((t² − 1)/(2t), (t² + 1)/(2t))
        let t = Rational::ratio(rng.gen_range(1..40), rng.gen_range(1..40));
        let two_t = Rational::from_i64(2) * t.clone();
        let x = [(t.clone() * t.clone() - Rational::one()) / two_t.clone(), (t.clone() * t + Rational::one()) / two_t];
        let y = project_level0(&x);
        let y_anti = project_level0(&[-x[0].clone(), -x[1].clone()]);
        ok &= y == y_anti && y[0].clone() * y[0].clone() - y[1].clone() * y[1].clone() == -Rational::one();
    }
    out.push(Check::exact(
        "hopf.0.antipodal",
        "level-0 map lands on y1² − y2² = −1 and identifies ±x, 200 rational points",
        ok,
        "(y_1,y_2) = (2x_1x_2, x_1²+x_2²)",
    ));

    for (l, r) in [(2, Realization::I), (2, Realization::II), (3, Realization::I), (3, Realization::II)] {
        match hierarchical_fiber_check(l, r, rng.gen()) {
            Ok(cs) => out.extend(cs),
            Err(e) => out.push(fail(format!("hopf.{l}-{r}.hierarchy"), e)),
        }
    }
    out
}

#[cfg(test)]
mod suite_tests {
    use super::*;

    #[test]
    fn suite_passes() {
        for c in hopf_suite(11, 200, 50) {
            assert!(c.passed(), "{} {} {:?}", c.id, c.description, c.residual);
        }
    }
}
