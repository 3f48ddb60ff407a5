//! Canonical connections, curvatures and transition functions of the Hopf
//! maps, in closed form and by finite differences of the inversion sections.
//!
//! Conventions, per (level, realization):
//!
//! | case | A (upper patch)                   | commutator term in F |
//! |------|-----------------------------------|----------------------|
//! | 1-I  | `ε_ij3 x^j / (2(1+x³))`           | none                 |
//! | 1-II | `−ε_ij3 x^j / (2(1+x³))`          | none                 |
//! | 2-I  | `−η_mni x^n σ^i / (2(1+x⁵))`      | `−j[A, A]`           |
//! | 2-II | `−η_mni x^n τ^i / (2(1+x⁵))`      | `+i[A, A]`           |
//! | 3-I  | `σ_MN x^N / (1+x⁹)`               | `−j[A, A]`           |
//! | 3-II | `σ_MN x^N / (1+x⁹)`               | `+i[A, A]`           |
//!
//! `ε` with lower indices carries `det η`, so `ε_123 = −1` for both
//! three-dimensional metrics. At levels 2–3, with `G_MN` the coefficient
//! table above and `c` the constraint value,
//! `F_MN = −c(x_M A_N − x_N A_M) − G_MN` and `F_ML = (1 + x_L) A_M`; the lower
//! patch uses the barred tables and `F′_ML = −(1 − x_L) A′_M`.
//!
//! The numeric connection is `W0 · (−u ψ̃† W dψ̃)` along tangent vectors
//! `t_k = e_k − (η_kk x^k / c) x`, with curves re-projected onto the hyperboloid.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::gammarep::{self, build_thooft, levi_civita_lower, Realization};
use crate::hopfmaps::{sample_base_point, sample_overlap_point, ComplexF, HopfError, HopfMap, MapCase, Patch, SplitF, EPS_PATCH};
use crate::report::{max_residual, Check};
use crate::ringmat::RMatrix;
use crate::scalar::UnitRing;

pub const DEFAULT_STEP: f64 = 1e-5;
pub const EPS_NULL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GaugeError {
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error("finite-difference step {0:e} is too small")]
    StepUnderflow(f64),
    #[error("point lies on the light cone (r² = {0:e})")]
    Null(f64),
    #[error("overlap point too close to the equator edge (|x_last| = {0})")]
    EquatorDegenerate(f64),
}

/// Lie-algebra valued connection and curvature at one point.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeSample<T> {
    pub point: Vec<f64>,
    pub patch: Patch,
    /// `A[a]`, one fiber-sized matrix per base coordinate.
    pub a: Vec<RMatrix<T>>,
    /// `F[a][b]`, antisymmetric.
    pub f: Vec<Vec<RMatrix<T>>>,
}

/// Closed forms and numeric oracles for one case over ring `T`.
#[derive(Clone, Debug)]
pub struct GaugeModel<T> {
    pub map: HopfMap<T>,
    /// `G_MN` for the upper patch and `Ḡ_MN` for the lower (levels 2–3).
    g_upper: Vec<Vec<RMatrix<T>>>,
    g_lower: Vec<Vec<RMatrix<T>>>,
    /// Coefficient `s` of `F = dA + s[A, A]`.
    pub commutator: T,
}

impl<T: UnitRing<Re = f64>> GaugeModel<T> {
    pub fn new(case: MapCase) -> Result<Self, GaugeError> {
        let map = HopfMap::<T>::new(case)?;
        let commutator = match case.level {
            1 => T::zero(),
            _ if case.realization == Realization::I => -T::unit(),
            _ => T::unit(),
        };
        let (g_upper, g_lower) = match case.level {
            2 => {
                let s = if case.realization == Realization::I { gammarep::pauli::<T>() } else { gammarep::tau::<T>() };
                let table = |bar| {
                    let t = build_thooft(case.realization, bar);
                    (0..4)
                        .map(|m| {
                            (0..4)
                                .map(|n| {
                                    (0..3).fold(RMatrix::zeros(2, 2), |acc, i| &acc + &s[i].scale(&T::from_re(-0.5 * t[m][n][i] as f64)))
                                })
                                .collect()
                        })
                        .collect()
                };
                (table(false), table(true))
            }
            3 => (gammarep::weyl_generators::<T>(false), gammarep::weyl_generators::<T>(true)),
            _ => (Vec::new(), Vec::new()),
        };
        Ok(GaugeModel { map, g_upper, g_lower, commutator })
    }

    pub fn case(&self) -> MapCase {
        self.map.case
    }

    fn dim(&self) -> usize {
        self.case().base_dim()
    }

    fn fd(&self) -> usize {
        self.case().fiber_dim()
    }

    fn patch_factor(&self, x: &[f64], patch: Patch) -> Result<f64, GaugeError> {
        let xl = *x.last().expect("non-empty point");
        let f = match patch {
            Patch::Upper => 1.0 + xl,
            Patch::Lower => 1.0 - xl,
        };
        if f < EPS_PATCH {
            return Err(HopfError::PatchDegenerate { patch, other: patch.other(), factor: f }.into());
        }
        Ok(f)
    }

    fn scalar(&self, v: f64) -> RMatrix<T> {
        RMatrix::from_vec(1, 1, vec![T::from_re(v)])
    }

    /// Closed-form `A_a`; the last component is always zero.
    pub fn connection_closed(&self, x: &[f64], patch: Patch) -> Result<Vec<RMatrix<T>>, GaugeError> {
        let d = self.dim();
        if x.len() != d {
            return Err(HopfError::Dimension { expected: d, got: x.len() }.into());
        }
        let den = self.patch_factor(x, patch)?;
        let case = self.case();
        if case.level == 1 {
            let sign = match (case.realization, patch) {
                (Realization::I, Patch::Upper) | (Realization::II, Patch::Lower) => 1.0,
                _ => -1.0,
            };
            let m = &self.map.metric;
            return Ok((0..3)
                .map(|i| {
                    let v: f64 = (0..3).map(|j| levi_civita_lower(&[i, j, 2], m) as f64 * x[j]).sum();
                    self.scalar(sign * v / (2.0 * den))
                })
                .collect());
        }
        let g = if patch == Patch::Upper { &self.g_upper } else { &self.g_lower };
        let fd = self.fd();
        let mut a: Vec<RMatrix<T>> =
            (0..d - 1).map(|m| (0..d - 1).fold(RMatrix::zeros(fd, fd), |acc, n| &acc + &g[m][n].scale(&T::from_re(x[n] / den)))).collect();
        a.push(RMatrix::zeros(fd, fd));
        Ok(a)
    }

    /// Closed-form `F_ab`.
    pub fn curvature_closed(&self, x: &[f64], patch: Patch) -> Result<Vec<Vec<RMatrix<T>>>, GaugeError> {
        let d = self.dim();
        let case = self.case();
        let fd = self.fd();
        let a = self.connection_closed(x, patch)?;
        let mut f = vec![vec![RMatrix::zeros(fd, fd); d]; d];
        if case.level == 1 {
            let sign = if case.realization == Realization::I { -0.5 } else { 0.5 };
            let m = &self.map.metric;
            for i in 0..3 {
                for j in 0..3 {
                    let v: f64 = (0..3).map(|k| levi_civita_lower(&[i, j, k], m) as f64 * x[k]).sum();
                    f[i][j] = self.scalar(sign * v);
                }
            }
            return Ok(f);
        }
        let xl = self.map.metric.lower(x);
        let c = case.constraint() as f64;
        let g = if patch == Patch::Upper { &self.g_upper } else { &self.g_lower };
        let last = x[d - 1];
        for m in 0..d - 1 {
            for n in 0..d - 1 {
                let t = &a[n].scale(&T::from_re(xl[m])) - &a[m].scale(&T::from_re(xl[n]));
                f[m][n] = &t.scale(&T::from_re(-c)) - &g[m][n];
            }
            let fm = match patch {
                Patch::Upper => a[m].scale(&T::from_re(1.0 + last)),
                Patch::Lower => a[m].scale(&T::from_re(-(1.0 - last))),
            };
            f[d - 1][m] = -&fm;
            f[m][d - 1] = fm;
        }
        Ok(f)
    }

    pub fn sample(&self, x: &[f64], patch: Patch) -> Result<GaugeSample<T>, GaugeError> {
        Ok(GaugeSample { point: x.to_vec(), patch, a: self.connection_closed(x, patch)?, f: self.curvature_closed(x, patch)? })
    }

    /// Tangent vectors `t_k = e_k − (η_kk x^k / c) x`, one per coordinate.
    pub fn tangents(&self, x: &[f64]) -> Vec<Vec<f64>> {
        let c = self.case().constraint() as f64;
        (0..x.len())
            .map(|k| {
                let s = self.map.metric.get(k) as f64 * x[k] / c;
                x.iter().enumerate().map(|(i, v)| if i == k { 1.0 } else { 0.0 } - s * v).collect()
            })
            .collect()
    }

    fn curve(&self, x: &[f64], t: &[f64], s: f64) -> Vec<f64> {
        let y: Vec<f64> = x.iter().zip(t).map(|(a, b)| a + s * b).collect();
        let q = self.map.metric.quad(&y);
        let r = (self.case().constraint() as f64 / q).sqrt();
        y.iter().map(|v| v * r).collect()
    }

    /// Central difference of `f` along the re-projected curve through `x` in direction `t`.
    pub fn derivative<F>(&self, x: &[f64], t: &[f64], h: f64, f: F) -> Result<RMatrix<T>, GaugeError>
    where
        F: Fn(&[f64]) -> Result<RMatrix<T>, GaugeError>,
    {
        if !(h > 1e-12) {
            return Err(GaugeError::StepUnderflow(h));
        }
        let p = f(&self.curve(x, t, h))?;
        let m = f(&self.curve(x, t, -h))?;
        Ok((&p - &m).scale(&T::from_re(0.5 / h)))
    }

    fn section_fn(&self, patch: Patch) -> impl Fn(&[f64]) -> Result<RMatrix<T>, GaugeError> + '_ {
        move |y: &[f64]| Ok(self.map.section(y, patch)?)
    }

    fn minus_u(&self) -> T {
        -T::unit()
    }

    /// `W0 · (−u ψ̃† W Dψ̃)` along `t`.
    pub fn connection_along(&self, x: &[f64], t: &[f64], patch: Patch, h: f64) -> Result<RMatrix<T>, GaugeError> {
        let s = self.map.section(x, patch)?;
        let ds = self.derivative(x, t, h, self.section_fn(patch))?;
        Ok((&self.map.fiber_weight * &(&(&s.dagger() * &self.map.weight) * &ds)).scale(&self.minus_u()))
    }

    /// Numeric connection along each tangent vector `t_k`.
    pub fn connection_numeric(&self, x: &[f64], patch: Patch, h: f64) -> Result<Vec<RMatrix<T>>, GaugeError> {
        self.tangents(x).iter().map(|t| self.connection_along(x, t, patch, h)).collect()
    }

    /// Closed-form connection contracted with `t`.
    pub fn contract_a(a: &[RMatrix<T>], t: &[f64]) -> RMatrix<T> {
        let n = a[0].rows();
        a.iter().zip(t).fold(RMatrix::zeros(n, n), |acc, (m, v)| &acc + &m.scale(&T::from_re(*v)))
    }

    pub fn contract_f(f: &[Vec<RMatrix<T>>], t1: &[f64], t2: &[f64]) -> RMatrix<T> {
        let n = f[0][0].rows();
        let mut acc = RMatrix::zeros(n, n);
        for (a, row) in f.iter().enumerate() {
            for (b, m) in row.iter().enumerate() {
                let c = t1[a] * t2[b];
                if c != 0.0 {
                    acc = &acc + &m.scale(&T::from_re(c));
                }
            }
        }
        acc
    }

    /// `F(t1, t2)` from `W0(−u)(D1ψ̃† W D2ψ̃ − D2ψ̃† W D1ψ̃) + s[A(t1), A(t2)]`.
    pub fn curvature_along(&self, x: &[f64], t1: &[f64], t2: &[f64], patch: Patch, h: f64) -> Result<RMatrix<T>, GaugeError> {
        let d1 = self.derivative(x, t1, h, self.section_fn(patch))?;
        let d2 = self.derivative(x, t2, h, self.section_fn(patch))?;
        let w = &self.map.weight;
        let da = &(&(&d1.dagger() * w) * &d2) - &(&(&d2.dagger() * w) * &d1);
        let da = (&self.map.fiber_weight * &da).scale(&self.minus_u());
        let a1 = self.connection_along(x, t1, patch, h)?;
        let a2 = self.connection_along(x, t2, patch, h)?;
        Ok(&da + &a1.commutator(&a2).expect("square").scale(&self.commutator))
    }

    /// Numeric `F(t_a, t_b)` for all tangent pairs.
    pub fn curvature_numeric(&self, x: &[f64], patch: Patch, h: f64) -> Result<Vec<Vec<RMatrix<T>>>, GaugeError> {
        let ts = self.tangents(x);
        ts.iter().map(|t1| ts.iter().map(|t2| self.curvature_along(x, t1, t2, patch, h)).collect()).collect()
    }

    /// Max difference between closed-form and numeric connections along all tangents.
    pub fn connection_residual(&self, x: &[f64], patch: Patch, h: f64) -> Result<f64, GaugeError> {
        let a = self.connection_closed(x, patch)?;
        let ts = self.tangents(x);
        let mut worst = 0.0;
        for t in &ts {
            let n = self.connection_along(x, t, patch, h)?;
            worst = max_residual([worst, (&Self::contract_a(&a, t) - &n).max_abs()]);
        }
        Ok(worst)
    }

    pub fn curvature_residual(&self, x: &[f64], patch: Patch, h: f64) -> Result<f64, GaugeError> {
        let f = self.curvature_closed(x, patch)?;
        let ts = self.tangents(x);
        let mut worst = 0.0;
        for (i, t1) in ts.iter().enumerate() {
            for t2 in &ts[i + 1..] {
                let n = self.curvature_along(x, t1, t2, patch, h)?;
                worst = max_residual([worst, (&Self::contract_f(&f, t1, t2) - &n).max_abs()]);
            }
        }
        Ok(worst)
    }

    pub fn transition(&self, x: &[f64]) -> Result<RMatrix<T>, GaugeError> {
        let xl = x.last().copied().unwrap_or(0.0);
        if xl.abs() >= 1.0 - EPS_PATCH {
            return Err(GaugeError::EquatorDegenerate(xl.abs()));
        }
        Ok(self.map.transition(x)?)
    }

    /// `‖g† W0 g − W0‖`.
    pub fn unitarity_residual(&self, x: &[f64]) -> Result<f64, GaugeError> {
        let g = self.transition(x)?;
        let w = &self.map.fiber_weight;
        Ok((&(&(&g.dagger() * w) * &g) - w).max_abs())
    }

    /// Residuals of `ψ̃′ = ψ̃ g`, `W0 A′ = g†(W0 A)g − u g† W0 dg` and `W0 F′ = g†(W0 F)g`.
    pub fn gluing_residuals(&self, x: &[f64], h: f64) -> Result<[f64; 3], GaugeError> {
        let g = self.transition(x)?;
        let gd = g.dagger();
        let w = &self.map.fiber_weight;
        let u = T::unit();
        let sec = (&self.map.section(x, Patch::Lower)? - &(&self.map.section(x, Patch::Upper)? * &g)).max_abs();
        let au = self.connection_closed(x, Patch::Upper)?;
        let al = self.connection_closed(x, Patch::Lower)?;
        let ts = self.tangents(x);
        let mut ra = 0.0;
        for t in &ts {
            let dg = self.derivative(x, t, h, |y| self.transition(y))?;
            let lhs = w * &Self::contract_a(&al, t);
            let rhs = &(&(&gd * &(w * &Self::contract_a(&au, t))) * &g) - &(&(&gd * w) * &dg).scale(&u);
            ra = max_residual([ra, (&lhs - &rhs).max_abs()]);
        }
        let fu = self.curvature_closed(x, Patch::Upper)?;
        let fl = self.curvature_closed(x, Patch::Lower)?;
        let mut rf = 0.0;
        for (i, t1) in ts.iter().enumerate() {
            for t2 in &ts[i + 1..] {
                let lhs = w * &Self::contract_f(&fl, t1, t2);
                let rhs = &(&gd * &(w * &Self::contract_f(&fu, t1, t2))) * &g;
                rf = max_residual([rf, (&lhs - &rhs).max_abs()]);
            }
        }
        Ok([sec, ra, rf])
    }

    /// Least-squares residual of decomposing every `A_a` (and `F_ab`) into the
    /// declared generator basis.
    pub fn span_residual(&self, x: &[f64], patch: Patch) -> Result<f64, GaugeError> {
        let basis = self.generator_basis();
        let a = self.connection_closed(x, patch)?;
        let f = self.curvature_closed(x, patch)?;
        let targets = a.iter().chain(f.iter().flatten());
        let mut worst = 0.0;
        if basis.is_empty() {
            // abelian: components must be real scalars
            for m in targets {
                worst = max_residual([worst, m[(0, 0)].im().abs()]);
            }
            return Ok(worst);
        }
        let flat = |m: &RMatrix<T>| m.entries().iter().flat_map(|z| [z.re(), z.im()]).collect::<Vec<f64>>();
        let cols: Vec<Vec<f64>> = basis.iter().map(flat).collect();
        let rows = cols[0].len();
        let b = DMatrix::from_fn(rows, cols.len(), |r, c| cols[c][r]);
        let svd = b.clone().svd(true, true);
        for m in targets {
            let y = DVector::from_vec(flat(m));
            let coef = svd.solve(&y, 1e-12).expect("svd with u and v");
            worst = max_residual([worst, (&b * coef - y).amax()]);
        }
        Ok(worst)
    }

    /// `σ^i` (2-I), `τ^i` (2-II), or the 28 upper-patch Weyl generators (level 3);
    /// empty at level 1.
    pub fn generator_basis(&self) -> Vec<RMatrix<T>> {
        match self.case().level {
            2 if self.case().realization == Realization::I => gammarep::pauli::<T>().to_vec(),
            2 => gammarep::tau::<T>().to_vec(),
            3 => {
                let mut v = Vec::new();
                for a in 0..8 {
                    for b in a + 1..8 {
                        v.push(self.g_upper[a][b].clone());
                    }
                }
                v
            }
            _ => Vec::new(),
        }
    }

    /// `−u Ψ† W dΨ` for the spinor section `Ψ = ψ̃ Φ` with a fixed fiber,
    /// using the exact section derivative.
    pub fn spinor_connection(&self, x: &[f64], fiber: &[T], patch: Patch) -> Result<Vec<T>, GaugeError> {
        let phi = RMatrix::column(fiber.to_vec());
        let p = &self.map.section(x, patch)? * &phi;
        self.tangents(x)
            .iter()
            .map(|t| {
                let dp = &self.map.section_derivative(x, t, patch)? * &phi;
                Ok((&(&p.dagger() * &self.map.weight) * &dp)[(0, 0)].clone() * self.minus_u())
            })
            .collect()
    }

    /// Max gap between the exact section derivative and the central difference.
    pub fn section_derivative_residual(&self, x: &[f64], patch: Patch, h: f64) -> Result<f64, GaugeError> {
        let mut worst = 0.0;
        for t in self.tangents(x) {
            let fd = self.derivative(x, &t, h, self.section_fn(patch))?;
            let ex = self.map.section_derivative(x, &t, patch)?;
            worst = max_residual([worst, (&fd - &ex).max_abs()]);
        }
        Ok(worst)
    }
}

// ---------------------------------------------------------------------------
// light cone

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LightCone {
    Timelike,
    Null,
    Spacelike,
}

/// Classify `r² = η_ij x^i x^j` under the level 1-I metric diag(+,−,+).
pub fn lightcone_probe(x: &[f64; 3]) -> (LightCone, f64) {
    let r2 = x[0] * x[0] - x[1] * x[1] + x[2] * x[2];
    let class = if r2.abs() <= EPS_NULL {
        LightCone::Null
    } else if r2 > 0.0 {
        LightCone::Spacelike
    } else {
        LightCone::Timelike
    };
    (class, r2)
}

/// `F_ij = −ε_ijk x^k / (2 r³)` off the unit hyperboloid (level 1-I, r² > 0).
pub fn curvature_radial(x: &[f64; 3]) -> Result<[[f64; 3]; 3], GaugeError> {
    let (class, r2) = lightcone_probe(x);
    match class {
        LightCone::Null => return Err(GaugeError::Null(r2)),
        LightCone::Timelike => return Err(GaugeError::Null(r2)),
        LightCone::Spacelike => {}
    }
    let r3 = r2.powf(1.5);
    let m = crate::ringmat::MetricForm::new(&gammarep::SPLIT_PAULI_METRIC);
    let mut f = [[0.0; 3]; 3];
    for (i, row) in f.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = -(0..3).map(|k| levi_civita_lower(&[i, j, k], &m) as f64 * x[k]).sum::<f64>() / (2.0 * r3);
        }
    }
    Ok(f)
}

// ---------------------------------------------------------------------------
// suite

/// Maximum residuals over sampled points.
#[derive(Clone, Debug, Default, Serialize)]
pub struct GaugeStats {
    pub connection: f64,
    pub curvature: f64,
    pub antisymmetry: f64,
    pub span: f64,
    pub pole: f64,
    pub unitarity: f64,
    pub section_relation: f64,
    pub gluing_a: f64,
    pub gluing_f: f64,
    pub abelian_f: f64,
    pub vanishing: f64,
    pub derivative: f64,
}

/// Runs every gauge oracle for one case over `points` random points per patch.
pub fn gauge_stats<T: UnitRing<Re = f64>>(case: MapCase, points: usize, h: f64, seed: u64) -> Result<GaugeStats, GaugeError> {
    let model = GaugeModel::<T>::new(case)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = GaugeStats::default();
    let d = case.base_dim();
    for patch in [Patch::Upper, Patch::Lower] {
        for _ in 0..points {
            let x = sample_base_point(case, patch, 0.2, &mut rng)?;
            s.connection = max_residual([s.connection, model.connection_residual(&x, patch, h)?]);
            s.curvature = max_residual([s.curvature, model.curvature_residual(&x, patch, h)?]);
            let f = model.curvature_closed(&x, patch)?;
            for a in 0..d {
                for b in 0..d {
                    s.antisymmetry = max_residual([s.antisymmetry, (&f[a][b] + &f[b][a]).max_abs()]);
                }
            }
            s.span = max_residual([s.span, model.span_residual(&x, patch)?]);
            s.derivative = max_residual([s.derivative, model.section_derivative_residual(&x, patch, h)?]);
        }
        // pole of the patch
        let mut pole = vec![0.0; d];
        let c = case.constraint() as f64;
        if c > 0.0 || case.level == 1 && case.realization == Realization::II {
            pole[d - 1] = if patch == Patch::Upper { 1.0 } else { -1.0 };
            let a = model.connection_closed(&pole, patch)?;
            let n = model.connection_numeric(&pole, patch, h)?;
            let worst = a.iter().chain(&n).map(|m| m.max_abs());
            s.pole = max_residual(std::iter::once(s.pole).chain(worst));
        }
    }
    if case.has_transition() {
        for _ in 0..points {
            let x = sample_overlap_point(case, 0.2, &mut rng)?;
            s.unitarity = max_residual([s.unitarity, model.unitarity_residual(&x)?]);
            let [sec, ga, gf] = model.gluing_residuals(&x, h)?;
            s.section_relation = max_residual([s.section_relation, sec]);
            s.gluing_a = max_residual([s.gluing_a, ga]);
            s.gluing_f = max_residual([s.gluing_f, gf]);
            if case.level == 1 {
                let fu = model.curvature_closed(&x, Patch::Upper)?;
                let fl = model.curvature_closed(&x, Patch::Lower)?;
                let exact = fu == fl;
                s.abelian_f = max_residual([s.abelian_f, if exact { 0.0 } else { f64::INFINITY }]);
            }
        }
    } else if case.level == 1 {
        // 1-II: disjoint leaves; F′ = F compared on mirrored points
        for _ in 0..points {
            let x = sample_base_point(case, Patch::Upper, 0.2, &mut rng)?;
            let fu = model.curvature_closed(&x, Patch::Upper)?;
            let xm: Vec<f64> = x.iter().map(|v| -v).collect();
            let fl = model.curvature_closed(&xm, Patch::Lower)?;
            let want: Vec<Vec<RMatrix<T>>> = fu.iter().map(|r| r.iter().map(|m| -m).collect()).collect();
            s.abelian_f = max_residual([s.abelian_f, if fl == want { 0.0 } else { f64::INFINITY }]);
        }
    }
    if case.level == 3 {
        for _ in 0..points.min(20) {
            let x = sample_base_point(case, Patch::Upper, 0.2, &mut rng)?;
            let f = crate::hopfmaps::sample_fiber::<T>(case, &mut rng)?;
            let a = model.spinor_connection(&x, &f, Patch::Upper)?;
            s.vanishing = max_residual(std::iter::once(s.vanishing).chain(a.iter().map(|z| z.mag())));
        }
    }
    Ok(s)
}

fn stats_for(case: MapCase, points: usize, h: f64, seed: u64) -> Result<GaugeStats, GaugeError> {
    match case.realization {
        Realization::I => gauge_stats::<SplitF>(case, points, h, seed),
        Realization::II => gauge_stats::<ComplexF>(case, points, h, seed),
    }
}

pub fn gauge_suite(seed: u64, points: usize) -> Vec<Check> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = DEFAULT_STEP;
    for case in MapCase::all() {
        let id = |s: &str| format!("gauge.{case}.{s}");
        let st = match stats_for(case, points, h, rng.gen()) {
            Ok(s) => s,
            Err(e) => {
                out.push(Check::exact(&id("run"), e.to_string(), false, ""));
                continue;
            }
        };
        out.push(Check::within(
            &id("connection"),
            format!("closed-form A vs -u ψ̃†W dψ̃ at {points} points per patch, h = {h:e}"),
            st.connection,
            1e-6,
            "A = -u ψ†W dψ",
        ));
        out.push(Check::within(&id("section_derivative"), "exact section derivative vs central difference", st.derivative, 1e-6, "dψ̃"));
        out.push(Check::within(&id("curvature"), "closed-form F vs numeric dA + s[A, A]", st.curvature, 1e-5, "F = dA + s[A, A]"));
        out.push(Check::within(&id("antisymmetry"), "F_ab = -F_ba", st.antisymmetry, 1e-15, "F_ab = -F_ba"));
        out.push(Check::within(&id("span"), "components lie in the declared generator span", st.span, 1e-10, "A_M ∈ span{σ}"));
        if case.constraint() > 0 || case.level == 1 && case.realization == Realization::II {
            out.push(Check::within(&id("pole"), "A vanishes at the poles (closed and numeric)", st.pole, 1e-9, "A = 0 at x_L = ±1"));
        }
        if case.has_transition() {
            out.push(Check::within(
                &id("unitarity"),
                "g† W0 g = W0 at overlap points",
                st.unitarity,
                1e-12,
                "g†g = 1 / g†σ³g = σ³ / g†Σ³g = Σ³",
            ));
            out.push(Check::within(&id("section_relation"), "lower section = upper section · g", st.section_relation, 1e-12, "ψ̃′ = ψ̃ g"));
            out.push(Check::within(&id("gluing_a"), "W0 A′ = g†(W0 A)g - u g† W0 dg", st.gluing_a, 1e-6, "A′ = g†Ag - u g†dg"));
            out.push(Check::within(&id("gluing_f"), "W0 F′ = g†(W0 F)g", st.gluing_f, 1e-6, "F′ = g†Fg"));
        }
        if case.level == 1 {
            out.push(Check::exact(&id("abelian_f"), "F′ = F exactly", st.abelian_f == 0.0, "F′_ij = F_ij"));
        }
        if case.level == 3 {
            out.push(Check::within(
                &id("majorana_vanishing"),
                "connection of the spinor section with a fixed Majorana fiber vanishes",
                st.vanishing,
                1e-12,
                "A = -u Ψ†W dΨ = 0",
            ));
        }
    }
    let (c, r2) = lightcone_probe(&[1.0, 1.0, 0.0]);
    out.push(Check::exact(
        "gauge.lightcone.null",
        format!("(1,1,0) classified null (r² = {r2})"),
        c == LightCone::Null,
        "r² = η_ij x^i x^j",
    ));
    let radial = (|| -> Result<f64, GaugeError> {
        let m = GaugeModel::<SplitF>::new(MapCase::new(1, Realization::I))?;
        let x = [0.3, 0.4, (1.0f64 + 0.16 - 0.09).sqrt()];
        let unit = m.curvature_closed(&x, Patch::Upper)?;
        let lam = 2.5;
        let fr = curvature_radial(&[x[0] * lam, x[1] * lam, x[2] * lam])?;
        let f1 = curvature_radial(&x)?;
        let mut worst = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((f1[i][j] - unit[i][j][(0, 0)].re()).abs());
                worst = worst.max((fr[i][j] * lam * lam - f1[i][j]).abs());
            }
        }
        Ok(worst)
    })();
    out.push(match radial {
        Ok(r) => Check::within(
            "gauge.radial",
            "F = -ε x/(2r³) matches the unit form at r = 1 and scales as r⁻²",
            r,
            1e-14,
            "F_ij = -ε_ijk x^k/(2r³)",
        ),
        Err(e) => Check::exact("gauge.radial", e.to_string(), false, ""),
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model1() -> GaugeModel<SplitF> {
        GaugeModel::new(MapCase::new(1, Realization::I)).unwrap()
    }

    #[test]
    fn pole_connection_vanishes() {
        let a = model1().connection_closed(&[0.0, 0.0, 1.0], Patch::Upper).unwrap();
        assert!(a.iter().all(|m| m.max_abs() == 0.0));
    }

    #[test]
    fn connection_at_unit_x1() {
        // ε_213 = +1 with the lowered convention, so A_2 = +1/2
        let a = model1().connection_closed(&[1.0, 0.0, 0.0], Patch::Upper).unwrap();
        assert_eq!(a[1][(0, 0)], SplitF::new(0.5, 0.0));
        assert_eq!(a[0][(0, 0)], SplitF::new(0.0, 0.0));
        assert_eq!(a[2][(0, 0)], SplitF::new(0.0, 0.0));
    }

    #[test]
    fn numeric_matches_closed_at_unit_x1() {
        let r = model1().connection_residual(&[1.0, 0.0, 0.0], Patch::Upper, 1e-5).unwrap();
        assert!(r < 1e-7, "{r}");
    }

    #[test]
    fn pole_curvature() {
        let f = model1().curvature_closed(&[0.0, 0.0, 1.0], Patch::Upper).unwrap();
        assert_eq!(f[0][1][(0, 0)].re, 0.5);
        assert_eq!(f[0][2][(0, 0)].re, 0.0);
        assert_eq!(f[1][2][(0, 0)].re, 0.0);
    }

    #[test]
    fn level2_pole_connection_vanishes() {
        let m = GaugeModel::<SplitF>::new(MapCase::new(2, Realization::I)).unwrap();
        let a = m.connection_closed(&[0.0, 0.0, 0.0, 0.0, 1.0], Patch::Upper).unwrap();
        assert!(a.iter().all(|m| m.max_abs() == 0.0));
    }

    #[test]
    fn lightcone_classes() {
        assert_eq!(lightcone_probe(&[1.0, 1.0, 0.0]).0, LightCone::Null);
        assert_eq!(lightcone_probe(&[0.0, 0.0, 1.0]), (LightCone::Spacelike, 1.0));
        // η(3, √8, 0) = 9 − 8 = 1: not null
        let (c, r2) = lightcone_probe(&[3.0, 8f64.sqrt(), 0.0]);
        assert!((r2 - 1.0).abs() < 1e-12);
        assert_eq!(c, LightCone::Spacelike);
        assert!(matches!(curvature_radial(&[1.0, 1.0, 0.0]), Err(GaugeError::Null(_))));
    }

    #[test]
    fn tiny_step_is_rejected() {
        let e = model1().connection_numeric(&[1.0, 0.0, 0.0], Patch::Upper, 0.0).unwrap_err();
        assert_eq!(e, GaugeError::StepUnderflow(0.0));
    }

    #[test]
    fn equator_transition_is_unimodular() {
        let m = model1();
        let x = [1.25, 0.75, 0.0];
        assert!(m.unitarity_residual(&x).unwrap() < 1e-15);
    }

    #[test]
    fn suite_passes() {
        for c in gauge_suite(3, 8) {
            assert!(c.passed(), "{} {} {:?}", c.id, c.description, c.residual);
        }
    }
}
