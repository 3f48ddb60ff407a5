//! Grassmann algebra on four odd generators, the OSp(1|2) generators, and the
//! supersymmetric extension of the 1st map in both realizations.
//!
//! `θ¹, θ²` are generators 0 and 1; generators 2 and 3 are auxiliary and only
//! appear in the odd component `η` of random super spinors. `θεθ = θ¹θ² − θ²θ¹`.
//!
//! Odd derivatives: connections use the right derivative
//! (`A_α = −u χ‡ ∂^R_α χ`), curvatures the left one.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::gammarep::{self, levi_civita_lower, Realization};
use crate::gaugegeom::{GaugeModel, LightCone, EPS_NULL};
use crate::hopfmaps::{sample_base_point, ComplexF, HopfMap, MapCase, Patch, SplitF, EPS_PATCH, NORM_TOL};
use crate::report::{max_residual, Check};
use crate::ringmat::{MetricForm, RMatrix};
use crate::scalar::{Rational, Real, Ring, UnitRing};
use crate::splitnum::SplitComplex;

pub const NGEN: usize = 4;
const DIM: usize = 1 << NGEN;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SuperError {
    #[error("element has an odd part where an even one is required")]
    NotEven,
    #[error("element has an even part where an odd one is required")]
    NotOdd,
    #[error("body {0} is not real")]
    NonRealBody(String),
    #[error("body {0} must be positive")]
    NonPositiveBody(f64),
    #[error("square root of body {0} is not exact")]
    InexactSqrt(f64),
    #[error("super spinor is not normalized (norm body {0})")]
    Unnormalized(f64),
    #[error("patch {patch} degenerate: factor {factor}")]
    PatchDegenerate { patch: Patch, factor: f64 },
    #[error("{0} is not available in realization {1}")]
    Unavailable(&'static str, Realization),
    #[error("body lies on the light cone (r² = {0:e})")]
    LightCone(f64),
}

fn merge_negative(a: usize, b: usize) -> bool {
    let mut s = 0;
    for i in 0..NGEN {
        if a >> i & 1 == 1 {
            s += (b & ((1 << i) - 1)).count_ones();
        }
    }
    s % 2 == 1
}

fn grade(mask: usize) -> u32 {
    mask.count_ones()
}

// ---------------------------------------------------------------------------
// Grassmann elements

/// Element of the Grassmann algebra over `T`, indexed by generator bitmask.
#[derive(Clone, PartialEq)]
pub struct Grassmann<T> {
    coeffs: [T; DIM],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl<T: Ring> Grassmann<T> {
    pub fn zero() -> Self {
        Grassmann { coeffs: std::array::from_fn(|_| T::zero()) }
    }

    pub fn scalar(t: T) -> Self {
        let mut g = Self::zero();
        g.coeffs[0] = t;
        g
    }

    pub fn one() -> Self {
        Self::scalar(T::one())
    }

    /// Generator `k` (0-based).
    pub fn generator(k: usize) -> Self {
        assert!(k < NGEN, "generator index {k} out of range");
        let mut g = Self::zero();
        g.coeffs[1 << k] = T::one();
        g
    }

    pub fn from_coeffs(coeffs: [T; DIM]) -> Self {
        Grassmann { coeffs }
    }

    pub fn coeff(&self, mask: usize) -> &T {
        &self.coeffs[mask]
    }

    pub fn coeffs(&self) -> &[T; DIM] {
        &self.coeffs
    }

    pub fn body(&self) -> &T {
        &self.coeffs[0]
    }

    /// Everything except the body.
    pub fn soul(&self) -> Self {
        let mut g = self.clone();
        g.coeffs[0] = T::zero();
        g
    }

    fn filter(&self, keep: impl Fn(usize) -> bool) -> Self {
        let mut g = Self::zero();
        for (m, c) in self.coeffs.iter().enumerate() {
            if keep(m) {
                g.coeffs[m] = c.clone();
            }
        }
        g
    }

    pub fn even_part(&self) -> Self {
        self.filter(|m| grade(m) % 2 == 0)
    }

    pub fn odd_part(&self) -> Self {
        self.filter(|m| grade(m) % 2 == 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// `None` for the zero element and for mixed elements.
    pub fn parity(&self) -> Option<Parity> {
        let even = self.coeffs.iter().enumerate().any(|(m, c)| grade(m) % 2 == 0 && !c.is_zero());
        let odd = self.coeffs.iter().enumerate().any(|(m, c)| grade(m) % 2 == 1 && !c.is_zero());
        match (even, odd) {
            (true, false) => Some(Parity::Even),
            (false, true) => Some(Parity::Odd),
            _ => None,
        }
    }

    pub fn is_even(&self) -> bool {
        self.odd_part().is_zero()
    }

    pub fn is_odd(&self) -> bool {
        self.even_part().is_zero()
    }

    pub fn map(&self, f: impl Fn(&T) -> T) -> Self {
        Grassmann { coeffs: std::array::from_fn(|m| f(&self.coeffs[m])) }
    }

    /// Multiply every coefficient by `t` on the right.
    pub fn scale(&self, t: &T) -> Self {
        self.map(|c| c.clone() * t.clone())
    }

    pub fn mag(&self) -> f64 {
        self.coeffs.iter().map(|c| c.mag()).fold(0.0, f64::max)
    }

    /// Left derivative `∂/∂θ^k`.
    pub fn d_left(&self, k: usize) -> Self {
        self.derive(k, |m| (m & ((1 << k) - 1)).count_ones())
    }

    /// Right derivative; equals `(−1)^(|f|+1) ∂^L f` on homogeneous `f`.
    pub fn d_right(&self, k: usize) -> Self {
        self.derive(k, |m| (m >> (k + 1)).count_ones())
    }

    fn derive(&self, k: usize, hops: impl Fn(usize) -> u32) -> Self {
        let bit = 1 << k;
        let mut g = Self::zero();
        for (m, c) in self.coeffs.iter().enumerate() {
            if m & bit != 0 && !c.is_zero() {
                g.coeffs[m ^ bit] = if hops(m) % 2 == 1 { -c.clone() } else { c.clone() };
            }
        }
        g
    }
}

impl<T: UnitRing> Grassmann<T> {
    pub fn real(r: T::Re) -> Self {
        Self::scalar(T::from_re(r))
    }

    pub fn int(n: i64) -> Self {
        Self::scalar(T::from_i64(n))
    }

    pub fn scale_re(&self, r: &T::Re) -> Self {
        self.map(|c| c.scale(r))
    }

    pub fn conj(&self, cfg: &InvolutionConfig) -> Self {
        let mut out = Self::zero();
        for (m, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut gens: Vec<(i8, usize)> = (0..NGEN).filter(|i| m >> i & 1 == 1).map(|i| cfg.images[i]).collect();
            if cfg.mode == InvolutionMode::StandardII {
                gens.reverse();
            }
            let (mut mask, mut neg) = (0usize, false);
            for (s, k) in gens {
                let b = 1 << k;
                debug_assert!(mask & b == 0, "generator images form a permutation");
                neg ^= merge_negative(mask, b) ^ (s < 0);
                mask |= b;
            }
            let v = c.conj();
            out.coeffs[mask] = out.coeffs[mask].clone() + if neg { -v } else { v };
        }
        out
    }

    /// Real body required by the even-function expansions.
    fn real_body(&self) -> Result<T::Re, SuperError> {
        if !self.is_even() {
            return Err(SuperError::NotEven);
        }
        let b = self.body();
        if !b.im().is_zero() {
            return Err(SuperError::NonRealBody(format!("{b:?}")));
        }
        Ok(b.re())
    }

    /// `f(b + n) = f(b) + f′(b) n + f″(b)/2 n²`, exact because `n³ = 0`.
    fn expand(&self, f0: T::Re, f1: T::Re, f2_half: T::Re) -> Self {
        let n = self.soul();
        let n2 = &n * &n;
        let mut r = &n.scale_re(&f1) + &n2.scale_re(&f2_half);
        r.coeffs[0] = T::from_re(f0);
        r
    }

    pub fn recip(&self) -> Result<Self, SuperError> {
        let b = self.real_body()?;
        if b.is_zero() {
            return Err(SuperError::NonPositiveBody(0.0));
        }
        let r = b.recip();
        let r2 = r.clone() * r.clone();
        Ok(self.expand(r.clone(), -r2.clone(), r2 * r))
    }

    fn root(&self) -> Result<(T::Re, T::Re), SuperError> {
        let b = self.real_body()?;
        if b <= T::Re::zero() {
            return Err(SuperError::NonPositiveBody(b.to_f64()));
        }
        let s = b.sqrt_exact().ok_or_else(|| SuperError::InexactSqrt(b.to_f64()))?;
        Ok((b, s))
    }

    pub fn sqrt(&self) -> Result<Self, SuperError> {
        let (b, s) = self.root()?;
        let inv = s.recip();
        let eighth = T::Re::ratio(1, 8);
        Ok(self.expand(s, inv.clone() * T::Re::half(), -(eighth * inv * b.recip())))
    }

    pub fn inv_sqrt(&self) -> Result<Self, SuperError> {
        let (b, s) = self.root()?;
        let r = s.recip();
        let rb = r.clone() * b.recip();
        Ok(self.expand(r, -(rb.clone() * T::Re::half()), T::Re::ratio(3, 8) * rb * b.recip()))
    }

    /// `a / b` with the body computed by a single division.
    pub fn div(&self, b: &Self) -> Result<Self, SuperError> {
        let bb = b.real_body()?;
        let mut r = self * &b.recip()?;
        let a0 = self.body();
        r.coeffs[0] = T::new(a0.re() / bb.clone(), a0.im() / bb);
        Ok(r)
    }
}

impl<T: Ring> fmt::Debug for Grassmann<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| {
                let gens: String = (0..NGEN).filter(|i| m >> i & 1 == 1).map(|i| format!("θ{}", i + 1)).collect();
                if gens.is_empty() {
                    format!("{c:?}")
                } else {
                    format!("{c:?}·{gens}")
                }
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl<T: Ring> Add for &Grassmann<T> {
    type Output = Grassmann<T>;
    fn add(self, o: &Grassmann<T>) -> Grassmann<T> {
        Grassmann { coeffs: std::array::from_fn(|m| self.coeffs[m].clone() + o.coeffs[m].clone()) }
    }
}

impl<T: Ring> Sub for &Grassmann<T> {
    type Output = Grassmann<T>;
    fn sub(self, o: &Grassmann<T>) -> Grassmann<T> {
        Grassmann { coeffs: std::array::from_fn(|m| self.coeffs[m].clone() - o.coeffs[m].clone()) }
    }
}

impl<T: Ring> Neg for &Grassmann<T> {
    type Output = Grassmann<T>;
    fn neg(self) -> Grassmann<T> {
        self.map(|c| -c.clone())
    }
}

impl<T: Ring> Mul for &Grassmann<T> {
    type Output = Grassmann<T>;
    fn mul(self, o: &Grassmann<T>) -> Grassmann<T> {
        let mut r = Grassmann::<T>::zero();
        for (a, ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in o.coeffs.iter().enumerate() {
                if a & b != 0 || cb.is_zero() {
                    continue;
                }
                let p = ca.clone() * cb.clone();
                let m = a | b;
                r.coeffs[m] = if merge_negative(a, b) { r.coeffs[m].clone() - p } else { r.coeffs[m].clone() + p };
            }
        }
        r
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl<T: Ring> $tr for Grassmann<T> {
            type Output = Grassmann<T>;
            fn $f(self, o: Grassmann<T>) -> Grassmann<T> {
                (&self).$f(&o)
            }
        }
        impl<T: Ring> $tr<&Grassmann<T>> for Grassmann<T> {
            type Output = Grassmann<T>;
            fn $f(self, o: &Grassmann<T>) -> Grassmann<T> {
                (&self).$f(o)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl<T: Ring> Neg for Grassmann<T> {
    type Output = Grassmann<T>;
    fn neg(self) -> Grassmann<T> {
        -&self
    }
}

// ---------------------------------------------------------------------------
// involution

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InvolutionMode {
    /// Order-preserving; squares to −1 on odd generators.
    PseudoI,
    /// Order-reversing; squares to +1.
    StandardII,
}

/// Conjugation of generators: generator `k` maps to `images[k].0 · θ^{images[k].1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionConfig {
    pub mode: InvolutionMode,
    pub images: [(i8, usize); NGEN],
}

impl InvolutionConfig {
    /// `(θ¹)* = θ²`, `(θ²)* = −θ¹`, and likewise on the auxiliary pair.
    pub fn pseudo_i() -> Self {
        InvolutionConfig { mode: InvolutionMode::PseudoI, images: [(1, 1), (-1, 0), (1, 3), (-1, 2)] }
    }

    pub fn standard_ii() -> Self {
        InvolutionConfig { mode: InvolutionMode::StandardII, images: [(1, 1), (1, 0), (1, 3), (1, 2)] }
    }

    pub fn for_realization(r: Realization) -> Self {
        match r {
            Realization::I => Self::pseudo_i(),
            Realization::II => Self::standard_ii(),
        }
    }
}

pub fn realization_of<T: UnitRing>() -> Realization {
    if T::UNIT_SQUARE == 1 {
        Realization::I
    } else {
        Realization::II
    }
}

// ---------------------------------------------------------------------------
// OSp(1|2)

/// `l^i` (even) and `l^α` (odd) as 3×3 matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct OspGenerators<T> {
    pub realization: Realization,
    pub even: [RMatrix<T>; 3],
    pub odd: [RMatrix<T>; 2],
}

/// `ε_αβ` with `ε_12 = +1`.
pub const EPS2: [[i64; 2]; 2] = [[0, 1], [-1, 0]];

fn eps2<T: UnitRing>() -> RMatrix<T> {
    RMatrix::from_fn(2, 2, |r, c| T::from_i64(EPS2[r][c]))
}

/// Split Pauli matrices (I) or `τ^i = (iσ¹, iσ², σ³)` (II), upper index.
pub fn sigma_upper<T: UnitRing>() -> [RMatrix<T>; 3] {
    match realization_of::<T>() {
        Realization::I => gammarep::pauli::<T>(),
        Realization::II => gammarep::tau::<T>(),
    }
}

pub fn build_osp_generators<T: UnitRing>() -> OspGenerators<T> {
    let half = T::from_re(T::Re::half());
    let even = sigma_upper::<T>()
        .map(|s| RMatrix::from_fn(3, 3, |r, c| if r < 2 && c < 2 { s[(r, c)].clone() * half.clone() } else { T::zero() }));
    let odd = std::array::from_fn(|a| {
        RMatrix::from_fn(3, 3, |r, c| {
            let v = if c == 2 && r == a {
                1
            } else if r == 2 && c < 2 {
                -EPS2[c][a]
            } else {
                0
            };
            T::from_i64(v) * half.clone()
        })
    });
    OspGenerators { realization: realization_of::<T>(), even, odd }
}

fn osp_metric(r: Realization) -> MetricForm {
    MapCase::new(1, r).base_metric()
}

/// Residuals of the graded relations
/// `[l^i, l^j] = u ε^{ijk} η_kk l^k`, `[l^i, l^α] = ½ (s^i)_βα l^β`,
/// `{l^α, l^β} = ½ η_ii (εᵀ s^i)_{αβ} l^i` for II and `(ε s^i)_{αβ}` for I.
pub fn osp_relation_residuals<T: UnitRing>(g: &OspGenerators<T>) -> [f64; 3] {
    let m = osp_metric(g.realization);
    let s = sigma_upper::<T>();
    let e = eps2::<T>();
    let half = T::from_re(T::Re::half());
    let mut r = [0.0f64; 3];
    let zero = RMatrix::<T>::zeros(3, 3);
    for i in 0..3 {
        for j in 0..3 {
            let lhs = g.even[i].commutator(&g.even[j]).expect("square");
            let rhs = (0..3).fold(zero.clone(), |acc, k| {
                let c = gammarep::levi_civita_upper(&[i, j, k]) as i64 * m.get(k) as i64;
                &acc + &g.even[k].scale(&(T::unit() * T::from_i64(c)))
            });
            r[0] = r[0].max((&lhs - &rhs).max_abs());
        }
        for a in 0..2 {
            let lhs = g.even[i].commutator(&g.odd[a]).expect("square");
            let rhs = (0..2).fold(zero.clone(), |acc, b| &acc + &g.odd[b].scale(&(s[i][(b, a)].clone() * half.clone())));
            r[1] = r[1].max((&lhs - &rhs).max_abs());
        }
    }
    let es: Vec<RMatrix<T>> = (0..3)
        .map(|i| match g.realization {
            Realization::I => &e * &s[i],
            Realization::II => &e.transpose() * &s[i],
        })
        .collect();
    for a in 0..2 {
        for b in 0..2 {
            let lhs = g.odd[a].anticommutator(&g.odd[b]).expect("square");
            let rhs = (0..3).fold(zero.clone(), |acc, i| {
                &acc + &g.even[i].scale(&(es[i][(a, b)].clone() * half.clone() * T::from_i64(m.get(i) as i64)))
            });
            r[2] = r[2].max((&lhs - &rhs).max_abs());
        }
    }
    r
}

/// Realization II charge conjugation `𝓡`, the swap of the two even rows.
pub fn osp_charge_conjugation<T: UnitRing>() -> RMatrix<T> {
    RMatrix::from_ints(3, 3, &[0, 1, 0, 1, 0, 0, 0, 0, 1])
}

/// `‖𝓡ᵀ l^i 𝓡 + (l^i)*‖` and `‖𝓡ᵀ l^α 𝓡 − ε_αβ l^β‖`.
pub fn osp_conjugation_residuals<T: UnitRing>(g: &OspGenerators<T>) -> (f64, f64) {
    let r = osp_charge_conjugation::<T>();
    let rt = r.transpose();
    let even = g.even.iter().map(|l| (&(&(&rt * l) * &r) + &l.conj()).max_abs()).fold(0.0, f64::max);
    let odd = (0..2)
        .map(|a| {
            let want = (0..2).fold(RMatrix::zeros(3, 3), |acc, b| &acc + &g.odd[b].scale(&T::from_i64(EPS2[a][b])));
            (&(&(&rt * &g.odd[a]) * &r) - &want).max_abs()
        })
        .fold(0.0, f64::max);
    (even, odd)
}

// ---------------------------------------------------------------------------
// super spinors and the super map

/// `(u, v, η)` with `u, v` even and `η` odd.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperSpinor<T: Ring> {
    pub comps: [Grassmann<T>; 3],
}

impl<T: Ring> SuperSpinor<T> {
    pub fn new(u: Grassmann<T>, v: Grassmann<T>, eta: Grassmann<T>) -> Result<Self, SuperError> {
        if !u.is_even() || !v.is_even() {
            return Err(SuperError::NotEven);
        }
        if !eta.is_odd() {
            return Err(SuperError::NotOdd);
        }
        Ok(SuperSpinor { comps: [u, v, eta] })
    }
}

/// Super base point `(x^i, θ^α)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperPoint<T: Ring> {
    pub x: [Grassmann<T>; 3],
    pub theta: [Grassmann<T>; 2],
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuperConnection<T: Ring> {
    pub a: [Grassmann<T>; 3],
    pub alpha: [Grassmann<T>; 2],
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuperCurvature<T: Ring> {
    pub f: [[Grassmann<T>; 3]; 3],
    /// `F_iα`.
    pub f_mixed: [[Grassmann<T>; 2]; 3],
    pub f_odd: [[Grassmann<T>; 2]; 2],
}

pub fn theta_eps_theta<T: Ring>(th: &[Grassmann<T>; 2]) -> Grassmann<T> {
    &(&th[0] * &th[1]) - &(&th[1] * &th[0])
}

/// `θ¹, θ²` as the first two generators.
pub fn theta_generators<T: Ring>() -> [Grassmann<T>; 2] {
    [Grassmann::generator(0), Grassmann::generator(1)]
}

#[derive(Clone, Debug)]
pub struct SuperMap<T> {
    pub realization: Realization,
    pub cfg: InvolutionConfig,
    pub osp: OspGenerators<T>,
    pub metric: MetricForm,
}

impl<T: UnitRing> Default for SuperMap<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: UnitRing> SuperMap<T> {
    pub fn new() -> Self {
        let realization = realization_of::<T>();
        SuperMap {
            realization,
            cfg: InvolutionConfig::for_realization(realization),
            osp: build_osp_generators(),
            metric: osp_metric(realization),
        }
    }

    /// `+1` (I) or `−1` (II): sign of `θεθ` in the constraint and its value.
    pub fn sign(&self) -> i64 {
        match self.realization {
            Realization::I => 1,
            Realization::II => -1,
        }
    }

    /// `χ‡ = (u*, v*, −η*)` (I) or `χ†κ = (u*, −v*, −η*)` (II).
    pub fn weighted_adjoint(&self, chi: &SuperSpinor<T>) -> [Grassmann<T>; 3] {
        let [u, v, e] = &chi.comps;
        let v = v.conj(&self.cfg);
        [u.conj(&self.cfg), if self.realization == Realization::I { v } else { -v }, -e.conj(&self.cfg)]
    }

    pub fn norm(&self, chi: &SuperSpinor<T>) -> Grassmann<T> {
        let adj = self.weighted_adjoint(chi);
        adj.iter().zip(&chi.comps).fold(Grassmann::zero(), |acc, (a, c)| &acc + &(a * c))
    }

    fn bilinear(adj: &[Grassmann<T>; 3], m: &RMatrix<T>, chi: &SuperSpinor<T>) -> Grassmann<T> {
        let two = T::from_i64(2);
        let mut acc = Grassmann::zero();
        for a in 0..3 {
            for b in 0..3 {
                let c = &m[(a, b)];
                if !c.is_zero() {
                    acc = &acc + &(&adj[a].scale(&(c.clone() * two.clone())) * &chi.comps[b]);
                }
            }
        }
        acc
    }

    /// `x^i = 2 χ‡ l^i χ`, `θ^α = 2 χ‡ l^α χ` with the weighted adjoint; no normalization check.
    pub fn project_raw(&self, chi: &SuperSpinor<T>) -> SuperPoint<T> {
        let adj = self.weighted_adjoint(chi);
        SuperPoint {
            x: std::array::from_fn(|i| Self::bilinear(&adj, &self.osp.even[i], chi)),
            theta: std::array::from_fn(|a| Self::bilinear(&adj, &self.osp.odd[a], chi)),
        }
    }

    pub fn project(&self, chi: &SuperSpinor<T>) -> Result<SuperPoint<T>, SuperError> {
        let n = self.norm(chi);
        if (&n - &Grassmann::one()).mag() > NORM_TOL {
            return Err(SuperError::Unnormalized(n.body().re().to_f64()));
        }
        Ok(self.project_raw(chi))
    }

    /// `η_ij x^i x^j ± θεθ`; equals `±1` on the image and `±(χ‡χ)²` in general.
    pub fn constraint(&self, p: &SuperPoint<T>) -> Grassmann<T> {
        let q = (0..3).fold(Grassmann::zero(), |acc, i| &acc + &(&p.x[i] * &p.x[i]).scale(&T::from_i64(self.metric.get(i) as i64)));
        &q + &theta_eps_theta(&p.theta).scale(&T::from_i64(self.sign()))
    }

    fn patch_sign(patch: Patch) -> i64 {
        if patch == Patch::Upper {
            1
        } else {
            -1
        }
    }

    /// `1 ± x³`, rejected when its body is below `EPS_PATCH`.
    fn patch_factor(&self, x3: &Grassmann<T>, patch: Patch) -> Result<Grassmann<T>, SuperError> {
        let f = &Grassmann::one() + &x3.scale(&T::from_i64(Self::patch_sign(patch)));
        let b = f.body().re().to_f64();
        if b < EPS_PATCH {
            return Err(SuperError::PatchDegenerate { patch, factor: b });
        }
        Ok(f)
    }

    fn check_body(&self, x: &[Grassmann<T>; 3]) -> Result<(), SuperError> {
        if self.realization == Realization::I {
            let b: Vec<f64> = x.iter().map(|v| v.body().re().to_f64()).collect();
            let r2 = b[0] * b[0] - b[1] * b[1] + b[2] * b[2];
            if r2.abs() <= EPS_NULL {
                return Err(SuperError::LightCone(r2));
            }
        }
        Ok(())
    }

    /// `w = x¹ − j x²` (I) or `x² − i x¹` (II).
    fn w(&self, x: &[Grassmann<T>; 3]) -> Grassmann<T> {
        let (p, q) = match self.realization {
            Realization::I => (&x[0], &x[1]),
            Realization::II => (&x[1], &x[0]),
        };
        p - &q.scale(&T::unit())
    }

    fn w_bar(&self, x: &[Grassmann<T>; 3]) -> Grassmann<T> {
        &x[0] + &x[1].scale(&T::unit())
    }

    /// Section with unit fiber. Realization II covers the upper leaf only.
    pub fn invert(&self, p: &SuperPoint<T>, patch: Patch) -> Result<SuperSpinor<T>, SuperError> {
        if self.realization == Realization::II && patch == Patch::Lower {
            return Err(SuperError::Unavailable("lower-leaf super section", Realization::II));
        }
        self.check_body(&p.x)?;
        let f = self.patch_factor(&p.x[2], patch)?;
        let n = f.scale(&T::from_i64(2)).inv_sqrt()?;
        let quarter = T::from_re(T::Re::ratio(1, 4));
        let c = &(&f.recip()? * &theta_eps_theta(&p.theta)).scale(&quarter);
        let one = Grassmann::one();
        let [t1, t2] = &p.theta;
        let (u, v, e) = match patch {
            Patch::Upper => {
                let w = self.w(&p.x);
                let u = &(&n * &f) * &(&one - c);
                let v = &(&n * &w) * &(&one + c);
                let e = &n * &(&(&f * t1) + &(&w * t2));
                (u, v, e)
            }
            Patch::Lower => {
                let wb = self.w_bar(&p.x);
                let u = &(&n * &wb) * &(&one + c);
                let v = &(&n * &f) * &(&one - c);
                let e = &n * &(&(&wb * t1) + &(&f * t2));
                (u, v, e)
            }
        };
        Ok(SuperSpinor { comps: [u, v, e] })
    }

    fn eps3(&self, i: usize, j: usize, k: usize) -> T {
        T::from_i64(levi_civita_lower(&[i, j, k], &self.metric) as i64)
    }

    /// `Σ_j ε_ij3 x^j` (or `Σ_k ε_ijk x^k`) accumulated from zero.
    fn eps_contract(&self, i: usize, j: Option<usize>, x: &[Grassmann<T>; 3]) -> Grassmann<T> {
        (0..3).fold(Grassmann::zero(), |acc, k| match j {
            None => &acc + &x[k].scale(&self.eps3(i, k, 2)),
            Some(j) => &acc + &x[k].scale(&self.eps3(i, j, k)),
        })
    }

    fn sig_eps(&self) -> [RMatrix<T>; 3] {
        let e = eps2::<T>();
        sigma_upper::<T>().map(|s| &s * &e)
    }

    /// Odd contraction `Σ_i Σ_c η_ii x^i (sε)_{αc} θ^c` (I) or `(sε)_{cα}` (II).
    fn odd_contract(&self, x: &[Grassmann<T>; 3], th: &[Grassmann<T>; 2], alpha: usize) -> Grassmann<T> {
        let se = self.sig_eps();
        let mut acc = Grassmann::zero();
        for i in 0..3 {
            for c in 0..2 {
                let m = match self.realization {
                    Realization::I => se[i][(alpha, c)].clone(),
                    Realization::II => se[i][(c, alpha)].clone(),
                };
                if m.is_zero() {
                    continue;
                }
                acc = &acc + &(&x[i].scale(&(m * T::from_i64(self.metric.get(i) as i64))) * &th[c]);
            }
        }
        acc
    }

    /// `±u/2`: `+j/2` (I), `−i/2` (II).
    fn odd_prefactor(&self) -> T {
        T::unit() * T::from_re(T::Re::half()) * T::from_i64(self.sign())
    }

    pub fn connection(&self, p: &SuperPoint<T>, patch: Patch) -> Result<SuperConnection<T>, SuperError> {
        self.check_body(&p.x)?;
        let s = Self::patch_sign(patch);
        let d = self.patch_factor(&p.x[2], patch)?;
        let tt = theta_eps_theta(&p.theta);
        let d2 = d.scale(&T::from_i64(2));
        let two_plus = &Grassmann::int(2) + &p.x[2].scale(&T::from_i64(s));
        let corr = &Grassmann::one() + &(&(&two_plus * &d2.recip()?) * &tt);
        let sign = T::from_i64(s * self.sign());
        let a = std::array::from_fn(|i| {
            let num = self.eps_contract(i, None, &p.x).scale(&sign);
            num.div(&d2).map(|q| &q * &corr)
        });
        let [a0, a1, a2] = a;
        let pre = self.odd_prefactor();
        Ok(SuperConnection { a: [a0?, a1?, a2?], alpha: std::array::from_fn(|al| self.odd_contract(&p.x, &p.theta, al).scale(&pre)) })
    }

    /// Curvature; identical on both patches.
    pub fn curvature(&self, p: &SuperPoint<T>, patch: Patch) -> Result<SuperCurvature<T>, SuperError> {
        self.check_body(&p.x)?;
        self.patch_factor(&p.x[2], patch)?;
        let tt = theta_eps_theta(&p.theta);
        let three_half = T::from_re(T::Re::ratio(3, 2));
        let one = Grassmann::one();
        let plus = &one + &tt.scale(&three_half);
        let odd_fac = if self.realization == Realization::I { plus.clone() } else { &one - &tt.scale(&three_half) };
        let half = T::from_re(T::Re::half());
        let fsign = -T::from_i64(self.sign()) * half.clone();
        let f = std::array::from_fn(|i| std::array::from_fn(|j| &self.eps_contract(i, Some(j), &p.x).scale(&fsign) * &plus));
        let xl: Vec<Grassmann<T>> = (0..3).map(|i| p.x[i].scale(&T::from_i64(self.metric.get(i) as i64))).collect();
        let se = self.sig_eps();
        let pre = self.odd_prefactor();
        let f_mixed = std::array::from_fn(|i| {
            std::array::from_fn(|al| {
                let mut acc = Grassmann::zero();
                for k in 0..3 {
                    let mut fac = (&xl[i] * &xl[k]).scale(&T::from_i64(-3));
                    if i == k {
                        fac = &fac + &Grassmann::int(self.metric.get(i) as i64);
                    }
                    for c in 0..2 {
                        let m = match self.realization {
                            Realization::I => se[k][(al, c)].clone(),
                            Realization::II => se[k][(c, al)].clone(),
                        };
                        if !m.is_zero() {
                            acc = &acc + &(&p.theta[c].scale(&m) * &fac);
                        }
                    }
                }
                acc.scale(&pre)
            })
        });
        let opre = pre.clone() * T::from_i64(2);
        let f_odd = std::array::from_fn(|a| {
            std::array::from_fn(|b| {
                let s = (0..3).fold(Grassmann::zero(), |acc, i| &acc + &xl[i].scale(&se[i][(a, b)]));
                &s.scale(&opre) * &odd_fac
            })
        });
        Ok(SuperCurvature { f, f_mixed, f_odd })
    }

    /// `g = (x¹ + j x²)/√(1 − (x³)²) · (1 + θεθ/(2(1 − (x³)²)))`, Realization I only.
    pub fn transition(&self, p: &SuperPoint<T>) -> Result<Grassmann<T>, SuperError> {
        if self.realization == Realization::II {
            return Err(SuperError::Unavailable("super transition function", Realization::II));
        }
        self.check_body(&p.x)?;
        let d = &Grassmann::one() - &(&p.x[2] * &p.x[2]);
        let b = d.body().re().to_f64();
        if b < EPS_PATCH {
            return Err(SuperError::PatchDegenerate { patch: Patch::Upper, factor: b });
        }
        let corr = &Grassmann::one() + &(&d.scale(&T::from_i64(2)).recip()? * &theta_eps_theta(&p.theta));
        Ok(&(&self.w_bar(&p.x) * &d.inv_sqrt()?) * &corr)
    }

    /// Chart `(y¹, y², θ) ↦ x` with `x³` solved from the super constraint on the leaf/side `side`.
    pub fn chart(&self, y: [T::Re; 2], side: i64, th: &[Grassmann<T>; 2]) -> Result<SuperPoint<T>, SuperError> {
        let x1 = Grassmann::real(y[0].clone());
        let x2 = Grassmann::real(y[1].clone());
        let m = &self.metric;
        let c = T::Re::from_i64(self.sign());
        let rest = c
            - T::Re::from_i64(m.get(0) as i64) * y[0].clone() * y[0].clone()
            - T::Re::from_i64(m.get(1) as i64) * y[1].clone() * y[1].clone();
        let e3 = T::from_i64(m.get(2) as i64);
        let sq = &Grassmann::real(rest) - &theta_eps_theta(th).scale(&T::from_i64(self.sign()));
        let x3 = sq.scale(&e3).sqrt()?.scale(&T::from_i64(side));
        Ok(SuperPoint { x: [x1, x2, x3], theta: th.clone() })
    }
}

// ---------------------------------------------------------------------------
// exact samplers

fn rat(n: i64, d: i64) -> Rational {
    Rational::ratio(n, d)
}

fn rand_rat(rng: &mut ChaCha8Rng, lo: i64, hi: i64, den: i64) -> Rational {
    rat(rng.gen_range(lo..=hi), rng.gen_range(1..=den))
}

/// Rational body point with `2(1 ± x³)` and `1 − (x³)²` perfect squares (I),
/// or with `2(1 + x³)` a perfect square on the upper leaf (II).
pub fn rational_body(r: Realization, rng: &mut ChaCha8Rng) -> [Rational; 3] {
    let one = Rational::one();
    let two = rat(2, 1);
    loop {
        let m = rat(rng.gen_range(5..=40), rng.gen_range(2..=9));
        let k = rat(rng.gen_range(1..=9), rng.gen_range(1..=9)) * if rng.gen() { one.clone() } else { -one.clone() };
        let q = rat(rng.gen_range(1..=9), rng.gen_range(1..=9));
        match r {
            Realization::I => {
                let rr = (m.clone() * m.clone() - one.clone()) / (two.clone() * m.clone());
                if rr.is_zero() {
                    continue;
                }
                let den = one.clone() + rr.clone() * rr.clone();
                let mut x3 = (one.clone() - rr.clone() * rr.clone()) / den.clone();
                let s = two.clone() * rr / den;
                if rng.gen() {
                    x3 = -x3;
                }
                let s2 = s.clone() * s;
                let x1 = (s2.clone() / k.clone() + k.clone()) / two.clone();
                let x2 = (s2 / k.clone() - k) / two.clone();
                return [x1, x2, x3];
            }
            Realization::II => {
                let t = (m.clone() * m.clone() + one.clone()) / (two.clone() * m.clone());
                let c = (m.clone() * m.clone() - one.clone()) / (two.clone() * m);
                let x3 = two.clone() * t.clone() * t.clone() - one.clone();
                let den = one.clone() + q.clone() * q.clone();
                let x1 = two.clone() * t.clone() * c.clone() * (one.clone() - q.clone() * q.clone()) / den.clone();
                let x2 = two.clone() * t * c * two.clone() * q / den;
                return [x1, x2, x3];
            }
        }
    }
}

fn rand_coeff<T: UnitRing<Re = Rational>>(rng: &mut ChaCha8Rng) -> T {
    T::new(rand_rat(rng, -6, 6, 5), rand_rat(rng, -6, 6, 5))
}

/// Random homogeneous element with rational coefficients.
pub fn random_rational_element<T: UnitRing<Re = Rational>>(parity: Parity, rng: &mut ChaCha8Rng) -> Grassmann<T> {
    let want = if parity == Parity::Even { 0 } else { 1 };
    let mut g = Grassmann::zero();
    for m in 0..DIM {
        if grade(m) % 2 == want && rng.gen_bool(0.7) {
            g.coeffs[m] = rand_coeff(rng);
        }
    }
    g
}

// ---------------------------------------------------------------------------
// verification

/// Engine laws on random rational elements; returns failing law names.
pub fn engine_failures<T: UnitRing<Re = Rational>>(samples: usize, rng: &mut ChaCha8Rng) -> Vec<String> {
    let mut bad = Vec::new();
    let cfg = InvolutionConfig::for_realization(realization_of::<T>());
    let par = |rng: &mut ChaCha8Rng| if rng.gen() { Parity::Even } else { Parity::Odd };
    let mut note = |ok: bool, what: &str| {
        if !ok && !bad.iter().any(|b: &String| b == what) {
            bad.push(what.to_string());
        }
    };
    for _ in 0..samples {
        let (pa, pb, pc) = (par(rng), par(rng), par(rng));
        let a = random_rational_element::<T>(pa, rng);
        let b = random_rational_element::<T>(pb, rng);
        let c = random_rational_element::<T>(pc, rng);
        note(&(&a * &b) * &c == &a * &(&b * &c), "associativity");
        let ab = &a * &b;
        let expect = if (pa == Parity::Odd) ^ (pb == Parity::Odd) { Parity::Odd } else { Parity::Even };
        note(ab.is_zero() || ab.parity() == Some(expect), "parity");
        let sign = if pa == Parity::Odd && pb == Parity::Odd { -1 } else { 1 };
        note(ab == (&b * &a).scale(&T::from_i64(sign)), "graded commutativity");
        for k in 0..NGEN {
            let lhs = ab.d_left(k);
            let sa = if pa == Parity::Odd { -1 } else { 1 };
            let rhs = &(&a.d_left(k) * &b) + &(&a * &b.d_left(k)).scale(&T::from_i64(sa));
            note(lhs == rhs, "left Leibniz");
            let sb = if pb == Parity::Odd { -1 } else { 1 };
            let rhs = &(&a * &b.d_right(k)) + &(&a.d_right(k) * &b).scale(&T::from_i64(sb));
            note(ab.d_right(k) == rhs, "right Leibniz");
        }
        let conj_ab = ab.conj(&cfg);
        let want = match cfg.mode {
            InvolutionMode::PseudoI => &a.conj(&cfg) * &b.conj(&cfg),
            InvolutionMode::StandardII => &b.conj(&cfg) * &a.conj(&cfg),
        };
        note(conj_ab == want, "conjugation product rule");
        let twice = a.conj(&cfg).conj(&cfg);
        let want = if pa == Parity::Odd && cfg.mode == InvolutionMode::PseudoI { -&a } else { a.clone() };
        note(twice == want, "conjugation square");
    }
    for k in 0..NGEN {
        let g = Grassmann::<T>::generator(k);
        note((&g * &g).is_zero(), "nilpotent generators");
    }
    bad
}

/// `η(x, x) ± θεθ = ±N²` for random unnormalized rational super spinors.
pub fn exact_constraint_failures<T: UnitRing<Re = Rational>>(samples: usize, rng: &mut ChaCha8Rng) -> usize {
    let map = SuperMap::<T>::new();
    let mut fails = 0;
    for _ in 0..samples {
        let mut u = random_rational_element::<T>(Parity::Even, rng);
        u.coeffs[0] = rand_coeff(rng);
        let chi =
            SuperSpinor::new(u, random_rational_element(Parity::Even, rng), random_rational_element(Parity::Odd, rng)).expect("graded");
        let n = map.norm(&chi);
        let lhs = map.constraint(&map.project_raw(&chi));
        if lhs != (&n * &n).scale(&T::from_i64(map.sign())) {
            fails += 1;
        }
    }
    fails
}

/// Exact round trips at rational bodies with `θ = (θ¹, θ²)`; returns
/// `(round-trip failures, normalization failures, constraint failures)`.
pub fn exact_round_trip_failures<T: UnitRing<Re = Rational>>(samples: usize, rng: &mut ChaCha8Rng) -> Result<[usize; 3], SuperError> {
    let map = SuperMap::<T>::new();
    let th = theta_generators::<T>();
    let mut f = [0; 3];
    for _ in 0..samples {
        let b = rational_body(map.realization, rng);
        let side = if b[2] > Rational::zero() { 1 } else { -1 };
        let p = map.chart([b[0].clone(), b[1].clone()], side, &th)?;
        let patches: &[Patch] = if map.realization == Realization::I { &[Patch::Upper, Patch::Lower] } else { &[Patch::Upper] };
        for &patch in patches {
            let chi = map.invert(&p, patch)?;
            f[1] += (map.norm(&chi) != Grassmann::one()) as usize;
            let q = map.project_raw(&chi);
            f[0] += (q != p) as usize;
            f[2] += (map.constraint(&q) != Grassmann::int(map.sign())) as usize;
        }
    }
    Ok(f)
}

/// `g* g = 1` exactly at rational overlap bodies (Realization I).
pub fn exact_transition_failures(samples: usize, rng: &mut ChaCha8Rng) -> Result<usize, SuperError> {
    type S = SplitComplex<Rational>;
    let map = SuperMap::<S>::new();
    let th = theta_generators::<S>();
    let mut fails = 0;
    for _ in 0..samples {
        let b = rational_body(Realization::I, rng);
        let side = if b[2] > Rational::zero() { 1 } else { -1 };
        let p = map.chart([b[0].clone(), b[1].clone()], side, &th)?;
        let g = map.transition(&p)?;
        fails += (&g.conj(&map.cfg) * &g != Grassmann::one()) as usize;
        let up = map.invert(&p, Patch::Upper)?;
        let lo = map.invert(&p, Patch::Lower)?;
        fails += (0..3).filter(|&m| &up.comps[m] * &g != lo.comps[m]).count();
    }
    Ok(fails)
}

/// Float residuals of the section, pullback and gluing oracles.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SuperStats {
    pub round_trip: f64,
    pub connection_even: f64,
    pub connection_odd: f64,
    pub curvature: f64,
    pub gluing_even: f64,
    pub gluing_odd: f64,
    pub unitarity: f64,
    pub patch_independent_f: bool,
}

type ChartFn<'a, T> = dyn Fn([f64; 2]) -> Result<Grassmann<T>, SuperError> + 'a;

fn fd<T: UnitRing<Re = f64>>(f: &ChartFn<'_, T>, y: [f64; 2], a: usize, h: f64) -> Result<Grassmann<T>, SuperError> {
    let mut p = y;
    let mut m = y;
    p[a] += h;
    m[a] -= h;
    Ok((&f(p)? - &f(m)?).scale_re(&(0.5 / h)))
}

pub fn super_stats<T: UnitRing<Re = f64>>(points: usize, h: f64, seed: u64) -> Result<SuperStats, SuperError> {
    let map = &SuperMap::<T>::new();
    let th = theta_generators::<T>();
    let case = MapCase::new(1, map.realization);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut st = SuperStats { patch_independent_f: true, ..Default::default() };
    let mu = -T::unit();
    let mut n = 0;
    while n < points {
        let patch = if map.realization == Realization::I && n % 2 == 1 { Patch::Lower } else { Patch::Upper };
        let side_patch = if map.realization == Realization::II && n % 2 == 1 { Patch::Lower } else { patch };
        let b = sample_base_point(case, side_patch, 0.2, &mut rng).map_err(|_| SuperError::NonPositiveBody(0.0))?;
        if b[2].abs() < 0.3 || (map.realization == Realization::I && b[2].abs() > 0.85) {
            continue;
        }
        n += 1;
        let side = if b[2] > 0.0 { 1 } else { -1 };
        let y = [b[0], b[1]];
        let p = map.chart(y, side, &th)?;
        let th = &th;
        let pt = &|y: [f64; 2]| map.chart(y, side, th);
        // the lower leaf of II has closed forms only
        let has_section = !(map.realization == Realization::II && side < 0);
        let conn_patch = if map.realization == Realization::II && side < 0 { Patch::Lower } else { patch };
        if has_section {
            let chi = map.invert(&p, patch)?;
            let q = map.project(&chi)?;
            let rt = q.x.iter().chain(&q.theta).zip(p.x.iter().chain(&p.theta)).map(|(a, b)| (a - b).mag());
            st.round_trip = max_residual(std::iter::once(st.round_trip).chain(rt));
            let adj = map.weighted_adjoint(&chi);
            let con = map.connection(&p, patch)?;
            for a in 0..2 {
                let comp =
                    |m: usize| move |y: [f64; 2]| -> Result<Grassmann<T>, SuperError> { Ok(map.invert(&pt(y)?, patch)?.comps[m].clone()) };
                let mut acc = Grassmann::zero();
                for m in 0..3 {
                    acc = &acc + &(&adj[m] * &fd(&comp(m), y, a, h)?);
                }
                st.connection_even = max_residual([st.connection_even, (&acc.scale(&mu) - &con.a[a]).mag()]);
            }
            for al in 0..2 {
                let acc = (0..3).fold(Grassmann::zero(), |acc, m| &acc + &(&adj[m] * &chi.comps[m].d_right(al)));
                st.connection_odd = max_residual([st.connection_odd, (&acc.scale(&mu) - &con.alpha[al]).mag()]);
            }
        }
        // pullback of F to the chart (y¹, y², θ)
        let con = map.connection(&p, conn_patch)?;
        let f = map.curvature(&p, conn_patch)?;
        let a_of =
            |k: usize| move |y: [f64; 2]| -> Result<Grassmann<T>, SuperError> { Ok(map.connection(&pt(y)?, conn_patch)?.a[k].clone()) };
        let al_of =
            |k: usize| move |y: [f64; 2]| -> Result<Grassmann<T>, SuperError> { Ok(map.connection(&pt(y)?, conn_patch)?.alpha[k].clone()) };
        let x3_of = |y: [f64; 2]| -> Result<Grassmann<T>, SuperError> { Ok(pt(y)?.x[2].clone()) };
        let jac: Vec<[Grassmann<T>; 3]> = (0..2)
            .map(|a| {
                let d3 = fd(&x3_of, y, a, h)?;
                let e = |i: usize| if i == a { Grassmann::one() } else { Grassmann::zero() };
                Ok([e(0), e(1), d3])
            })
            .collect::<Result<_, SuperError>>()?;
        let lhs = &fd(&a_of(1), y, 0, h)? - &fd(&a_of(0), y, 1, h)?;
        let mut rhs = Grassmann::zero();
        for i in 0..3 {
            for j in 0..3 {
                rhs = &rhs + &(&(&jac[0][i] * &jac[1][j]) * &f.f[i][j]);
            }
        }
        st.curvature = max_residual([st.curvature, (&lhs - &rhs).mag()]);
        for a in 0..2 {
            for al in 0..2 {
                let lhs = &fd(&al_of(al), y, a, h)? - &con.a[a].d_left(al);
                let dx3 = p.x[2].d_left(al);
                let rhs = (0..3)
                    .fold(Grassmann::zero(), |acc, i| &(&acc + &(&jac[a][i] * &f.f_mixed[i][al])) + &(&(&jac[a][i] * &f.f[i][2]) * &dx3));
                st.curvature = max_residual([st.curvature, (&lhs - &rhs).mag()]);
            }
        }
        for al in 0..2 {
            for be in 0..2 {
                let lhs = &con.alpha[be].d_left(al) + &con.alpha[al].d_left(be);
                let rhs = &(&f.f_odd[al][be] + &(&p.x[2].d_left(al) * &f.f_mixed[2][be])) + &(&p.x[2].d_left(be) * &f.f_mixed[2][al]);
                st.curvature = max_residual([st.curvature, (&lhs - &rhs).mag()]);
            }
        }
        if map.realization == Realization::I {
            let other = if patch == Patch::Upper { Patch::Lower } else { Patch::Upper };
            st.patch_independent_f &= map.curvature(&p, other)? == f;
            let g = map.transition(&p)?;
            let gs = g.conj(&map.cfg);
            st.unitarity = max_residual([st.unitarity, (&(&gs * &g) - &Grassmann::one()).mag()]);
            let cu = map.connection(&p, Patch::Upper)?;
            let cl = map.connection(&p, Patch::Lower)?;
            let g_of = |y: [f64; 2]| map.transition(&pt(y)?);
            for a in 0..2 {
                let want = (&gs * &fd(&g_of, y, a, h)?).scale(&mu);
                st.gluing_even = max_residual([st.gluing_even, (&(&cl.a[a] - &cu.a[a]) - &want).mag()]);
            }
            for al in 0..2 {
                let want = (&gs * &g.d_right(al)).scale(&mu);
                st.gluing_odd = max_residual([st.gluing_odd, (&(&cl.alpha[al] - &cu.alpha[al]) - &want).mag()]);
            }
        }
    }
    Ok(st)
}

/// Max disagreement between θ = 0 super outputs and the bosonic 1st map;
/// compared with `==`, so any rounding difference counts.
pub fn reduction_mismatches<T: UnitRing<Re = f64>>(points: usize, seed: u64) -> Result<usize, SuperError> {
    let map = SuperMap::<T>::new();
    let case = MapCase::new(1, map.realization);
    let hopf = HopfMap::<T>::new(case).map_err(|_| SuperError::Unavailable("bosonic map", map.realization))?;
    let gauge = GaugeModel::<T>::new(case).map_err(|_| SuperError::Unavailable("bosonic gauge model", map.realization))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zero_th = [Grassmann::zero(), Grassmann::zero()];
    let mut bad = 0;
    let body_eq = |g: &Grassmann<T>, t: &T| g.soul().is_zero() && g.body() == t;
    for n in 0..points {
        let patch = if map.realization == Realization::I && n % 2 == 1 { Patch::Lower } else { Patch::Upper };
        let x = sample_base_point(case, patch, 0.2, &mut rng).map_err(|_| SuperError::NonPositiveBody(0.0))?;
        let p = SuperPoint { x: std::array::from_fn(|i| Grassmann::real(x[i])), theta: zero_th.clone() };
        let chi = map.invert(&p, patch)?;
        let sec = hopf.section(&x, patch).map_err(|_| SuperError::PatchDegenerate { patch, factor: 0.0 })?;
        bad += (0..2).filter(|&m| !body_eq(&chi.comps[m], &sec[(m, 0)])).count();
        bad += (!chi.comps[2].is_zero()) as usize;
        let comps: Vec<T> = chi.comps[..2].iter().map(|g| g.body().clone()).collect();
        let xb = hopf.raw_project(&comps, false);
        let q = map.project_raw(&chi);
        bad += (0..3).filter(|&i| !body_eq(&q.x[i], &T::from_re(xb[i]))).count();
        bad += q.theta.iter().filter(|t| !t.is_zero()).count();
        let con = map.connection(&p, patch)?;
        let a = gauge.connection_closed(&x, patch).map_err(|_| SuperError::PatchDegenerate { patch, factor: 0.0 })?;
        bad += (0..3).filter(|&i| !body_eq(&con.a[i], &a[i][(0, 0)])).count();
        bad += con.alpha.iter().filter(|t| !t.is_zero()).count();
        let f = map.curvature(&p, patch)?;
        let fb = gauge.curvature_closed(&x, patch).map_err(|_| SuperError::PatchDegenerate { patch, factor: 0.0 })?;
        for i in 0..3 {
            bad += (0..3).filter(|&j| !body_eq(&f.f[i][j], &fb[i][j][(0, 0)])).count();
        }
        if map.realization == Realization::I && x[2].abs() < 1.0 - 0.2 {
            let g = map.transition(&p)?;
            let gb = gauge.transition(&x).map_err(|_| SuperError::PatchDegenerate { patch, factor: 0.0 })?;
            bad += !body_eq(&g, &gb[(0, 0)]) as usize;
        }
    }
    Ok(bad)
}

fn run<T: UnitRing<Re = f64>>(seed: u64, points: usize) -> Result<(SuperStats, usize), SuperError> {
    Ok((super_stats::<T>(points, 1e-5, seed)?, reduction_mismatches::<T>(points, seed ^ 0x5eed)?))
}

pub fn super_suite(seed: u64, points: usize) -> Vec<Check> {
    type SQ = SplitComplex<Rational>;
    type CQ = num_complex::Complex<Rational>;
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let exact_n = 200;

    for (name, bad) in [("I", engine_failures::<SQ>(exact_n, &mut rng)), ("II", engine_failures::<CQ>(exact_n, &mut rng))] {
        out.push(
            Check::exact(
                &format!("super.engine.{name}"),
                format!("Grassmann engine laws on {exact_n} random rational triples"),
                bad.is_empty(),
                "g_a g_b = -g_b g_a",
            )
            .with_detail(bad.join(", ")),
        );
    }
    let ri = osp_relation_residuals(&build_osp_generators::<SQ>());
    let rii = osp_relation_residuals(&build_osp_generators::<CQ>());
    for (name, r) in [("I", ri), ("II", rii)] {
        out.push(
            Check::exact(
                &format!("super.osp.{name}"),
                "OSp(1|2) graded relations hold exactly",
                r == [0.0; 3],
                "{l^α, l^β} = ½(εσ^i)^{αβ} l_i",
            )
            .with_detail(format!("{r:?}")),
        );
    }
    let (even, odd) = osp_conjugation_residuals(&build_osp_generators::<CQ>());
    out.push(Check::exact("super.osp.II.charge_conjugation", "𝓡ᵀ l^i 𝓡 = -(l^i)*", even == 0.0, "𝓡 is the charge conjugation matrix"));
    out.push(
        Check::info(
            "super.osp.II.charge_conjugation_odd",
            "𝓡ᵀ l^α 𝓡 vs ε_αβ l^β (does not hold for the literal l^α)",
            "𝓡 is the charge conjugation matrix",
        )
        .with_detail(format!("residual {odd}")),
    );
    for (name, fails) in
        [("I", exact_constraint_failures::<SQ>(exact_n, &mut rng)), ("II", exact_constraint_failures::<CQ>(exact_n, &mut rng))]
    {
        out.push(Check::exact(
            &format!("super.constraint_exact.{name}"),
            format!("η(x,x) ± θεθ = ±(χ‡χ)² exactly on {exact_n} rational super spinors"),
            fails == 0,
            "η_ij x^i x^j + ε_αβ θ^α θ^β = 1",
        ));
    }
    for (name, res) in [("I", exact_round_trip_failures::<SQ>(50, &mut rng)), ("II", exact_round_trip_failures::<CQ>(50, &mut rng))] {
        match res {
            Ok([rt, norm, con]) => {
                out.push(Check::exact(
                    &format!("super.round_trip_exact.{name}"),
                    "project ∘ invert = id exactly at rational bodies",
                    rt == 0,
                    "x^i = 2χ‡l^iχ",
                ));
                out.push(Check::exact(
                    &format!("super.normalization_exact.{name}"),
                    "inverted super spinors are normalized exactly",
                    norm == 0,
                    "χ‡χ = 1",
                ));
                out.push(Check::exact(
                    &format!("super.constraint_image.{name}"),
                    "image satisfies the super constraint exactly",
                    con == 0,
                    "η_ij x^i x^j + ε_αβ θ^α θ^β = 1",
                ));
            }
            Err(e) => out.push(Check::exact(&format!("super.round_trip_exact.{name}"), e.to_string(), false, "")),
        }
    }
    match exact_transition_failures(50, &mut rng) {
        Ok(f) => {
            out.push(Check::exact("super.transition_exact.I", "g*g = 1 and lower section = upper section · g exactly", f == 0, "g*g = 1"))
        }
        Err(e) => out.push(Check::exact("super.transition_exact.I", e.to_string(), false, "")),
    }
    for r in [Realization::I, Realization::II] {
        let res = match r {
            Realization::I => run::<SplitF>(rng.gen(), points),
            Realization::II => run::<ComplexF>(rng.gen(), points),
        };
        let id = |s: &str| format!("super.{s}.{r}");
        let (st, mism) = match res {
            Ok(v) => v,
            Err(e) => {
                out.push(Check::exact(&id("run"), e.to_string(), false, ""));
                continue;
            }
        };
        out.push(Check::within(&id("round_trip"), "float round trip with θ generators", st.round_trip, 1e-12, "x^i = 2χ‡l^iχ"));
        out.push(Check::within(
            &id("connection_even"),
            "A_i vs -u χ‡ ∂_i χ (finite differences)",
            st.connection_even,
            1e-6,
            "A = -u χ‡ dχ",
        ));
        out.push(Check::within(
            &id("connection_odd"),
            "A_α vs -u χ‡ ∂_α χ (exact right derivative)",
            st.connection_odd,
            1e-12,
            "A_α = ½ j (x_i σ^i ε θ)_α",
        ));
        out.push(Check::within(&id("curvature"), "closed-form F pulled back to (y¹, y², θ) vs dA", st.curvature, 1e-6, "F = dA"));
        if r == Realization::I {
            out.push(Check::within(&id("gluing_even"), "A′_i - A_i = -j g* ∂_i g", st.gluing_even, 1e-6, "A′ = A - j g* dg"));
            out.push(Check::within(&id("gluing_odd"), "A′_α - A_α = -j g* ∂_α g (exact)", st.gluing_odd, 1e-12, "A′ = A - j g* dg"));
            out.push(Check::within(&id("unitarity"), "g*g = 1 at float overlap points", st.unitarity, 1e-12, "g*g = 1"));
            out.push(Check::exact(&id("abelian_f"), "F′ = F on both patches", st.patch_independent_f, "F′ = F"));
        }
        out.push(
            Check::exact(&id("theta_reduction"), "θ = 0 reproduces the bosonic 1st map (==, no tolerance)", mism == 0, "θ → 0")
                .with_detail(format!("{mism} mismatches")),
        );
    }
    let (c, _) = crate::gaugegeom::lightcone_probe(&[1.0, 1.0, 0.0]);
    let map = SuperMap::<SplitF>::new();
    let p = SuperPoint { x: [Grassmann::real(1.0), Grassmann::real(1.0), Grassmann::zero()], theta: theta_generators() };
    out.push(Check::exact(
        "super.lightcone.I",
        "light-cone body rejected by the Realization I super connection",
        c == LightCone::Null && matches!(map.connection(&p, Patch::Upper), Err(SuperError::LightCone(_))),
        "r² = 0",
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    type SQ = SplitComplex<Rational>;
    type CQ = num_complex::Complex<Rational>;
    type G = Grassmann<SQ>;

    #[test]
    fn anticommuting_generators() {
        let (a, b) = (G::generator(0), G::generator(1));
        let ab = &a * &b;
        assert_eq!(*ab.coeff(0b11), SQ::one());
        assert_eq!(&b * &a, -ab);
        assert!((&a * &a).is_zero());
    }

    #[test]
    fn pseudo_conjugation_squares_to_minus_one() {
        let cfg = InvolutionConfig::pseudo_i();
        let t1 = G::generator(0);
        assert_eq!(t1.conj(&cfg), G::generator(1));
        assert_eq!(t1.conj(&cfg).conj(&cfg), -t1);
    }

    #[test]
    fn left_derivative() {
        let (a, b) = (G::generator(0), G::generator(1));
        assert_eq!((&a * &b).d_left(0), b);
        assert_eq!((&a * &b).d_left(1), -a.clone());
        assert_eq!((&a * &b).d_right(1), a);
    }

    #[test]
    fn nilpotent_sqrt_is_exact() {
        let th = theta_generators::<SQ>();
        let x = &G::real(Rational::ratio(9, 4)) - &theta_eps_theta(&th);
        let s = x.sqrt().unwrap();
        assert_eq!(&s * &s, x);
        let r = x.inv_sqrt().unwrap();
        assert_eq!(&(&r * &r) * &x, G::one());
        assert_eq!(&x.recip().unwrap() * &x, G::one());
    }

    #[test]
    fn sqrt_needs_even_positive_body() {
        assert_eq!(G::generator(0).sqrt().unwrap_err(), SuperError::NotEven);
        assert!(matches!(G::real(Rational::ratio(-1, 1)).sqrt(), Err(SuperError::NonPositiveBody(_))));
        assert!(matches!(G::real(Rational::ratio(2, 1)).sqrt(), Err(SuperError::InexactSqrt(_))));
    }

    #[test]
    fn body_only_spinor_projects_to_pole() {
        let map = SuperMap::<SQ>::new();
        let chi = SuperSpinor::new(G::one(), G::zero(), G::zero()).unwrap();
        let p = map.project(&chi).unwrap();
        assert_eq!(p.x, [G::zero(), G::zero(), G::one()]);
        assert!(p.theta.iter().all(|t| t.is_zero()));
    }

    #[test]
    fn theta_one_formula() {
        let map = SuperMap::<SQ>::new();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let u = random_rational_element::<SQ>(Parity::Even, &mut rng);
        let v = random_rational_element::<SQ>(Parity::Even, &mut rng);
        let e = random_rational_element::<SQ>(Parity::Odd, &mut rng);
        let cfg = &map.cfg;
        let want = &(&u.conj(cfg) * &e) - &(&e.conj(cfg) * &v);
        let chi = SuperSpinor::new(u, v, e).unwrap();
        assert_eq!(map.project_raw(&chi).theta[0], want);
    }

    #[test]
    fn unnormalized_spinor_is_rejected() {
        let map = SuperMap::<SQ>::new();
        let chi = SuperSpinor::new(G::int(2), G::zero(), G::zero()).unwrap();
        assert!(matches!(map.project(&chi), Err(SuperError::Unnormalized(_))));
    }

    #[test]
    fn odd_connection_at_pole() {
        let map = SuperMap::<SplitF>::new();
        let th = theta_generators::<SplitF>();
        let p = SuperPoint { x: [Grassmann::zero(), Grassmann::zero(), Grassmann::one()], theta: th.clone() };
        let a = map.connection(&p, Patch::Upper).unwrap();
        let s3e = &gammarep::pauli::<SplitF>()[2] * &eps2::<SplitF>();
        for al in 0..2 {
            let want = (0..2).fold(Grassmann::zero(), |acc, c| &acc + &th[c].scale(&(s3e[(al, c)] * SplitF::new(0.0, 0.5))));
            assert_eq!(a.alpha[al], want);
        }
    }

    #[test]
    fn realization_ii_lower_leaf_has_no_section() {
        let map = SuperMap::<CQ>::new();
        let th = theta_generators::<CQ>();
        let p = map.chart([Rational::zero(), Rational::zero()], -1, &th).unwrap();
        assert!(matches!(map.invert(&p, Patch::Lower), Err(SuperError::Unavailable(..))));
        assert!(matches!(map.transition(&p), Err(SuperError::Unavailable(..))));
    }

    #[test]
    fn osp_relations_exact() {
        assert_eq!(osp_relation_residuals(&build_osp_generators::<SQ>()), [0.0; 3]);
        assert_eq!(osp_relation_residuals(&build_osp_generators::<CQ>()), [0.0; 3]);
    }

    #[test]
    fn suite_passes() {
        for c in super_suite(5, 20) {
            assert!(c.passed(), "{} {} {:?} {}", c.id, c.description, c.residual, c.detail);
        }
    }
}
