//! Gamma-matrix families, their generators, charge conjugations and split
//! 't Hooft symbols.
//!
//! Indices are 1-based at the API (`gamma(1)` is γ¹) and 0-based in storage.
//! Families are generic over the scalar ring: split-unit families need a ring
//! whose unit squares to +1, the others one whose unit squares to −1.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::report::Check;
use crate::ringmat::{MetricForm, RMatrix};
use crate::scalar::{Real, Ring, UnitRing};
use crate::splitnum::StructureTable;
use num_traits::Zero;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GammaError {
    #[error("family {family} needs a ring whose unit squares to {need}, got {got}")]
    RingMismatch { family: FamilyName, need: i64, got: i64 },
    #[error("unknown gamma family `{0}`")]
    UnknownFamily(String),
    #[error("family {0} has no charge conjugation matrix")]
    NoConjugation(FamilyName),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyName {
    #[serde(rename = "splitPauli")]
    SplitPauli,
    #[serde(rename = "tau")]
    Tau,
    #[serde(rename = "so32_I")]
    So32I,
    #[serde(rename = "so32_II")]
    So32II,
    #[serde(rename = "so43_I")]
    So43I,
    #[serde(rename = "so54_I")]
    So54I,
    #[serde(rename = "lambda_so43_II")]
    LambdaSo43II,
    #[serde(rename = "so54_II")]
    So54II,
}

impl FamilyName {
    pub const ALL: [FamilyName; 8] = [
        FamilyName::SplitPauli,
        FamilyName::Tau,
        FamilyName::So32I,
        FamilyName::So32II,
        FamilyName::So43I,
        FamilyName::So54I,
        FamilyName::LambdaSo43II,
        FamilyName::So54II,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyName::SplitPauli => "splitPauli",
            FamilyName::Tau => "tau",
            FamilyName::So32I => "so32_I",
            FamilyName::So32II => "so32_II",
            FamilyName::So43I => "so43_I",
            FamilyName::So54I => "so54_I",
            FamilyName::LambdaSo43II => "lambda_so43_II",
            FamilyName::So54II => "so54_II",
        }
    }

    /// `u²` for the unit appearing in the family's generators.
    pub fn unit_square(self) -> i64 {
        match self {
            FamilyName::SplitPauli | FamilyName::So32I | FamilyName::So43I | FamilyName::So54I => 1,
            _ => -1,
        }
    }
}

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyName {
    type Err = GammaError;
    fn from_str(s: &str) -> Result<Self, GammaError> {
        FamilyName::ALL.into_iter().find(|f| f.as_str() == s).ok_or_else(|| GammaError::UnknownFamily(s.to_string()))
    }
}

/// How the adjoint of each gamma relates to the family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Hermiticity {
    /// `(γ^a)† = γ^a`
    Hermitian,
    /// `(γ^a)† = −γ_a`
    MinusLoweredDagger,
    /// `(γ^a)ᵗ = γ_a`
    LoweredTranspose,
    /// `(γ^a)ᵗ = −γ_a`
    MinusLoweredTranspose,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GammaFamily<T> {
    pub name: FamilyName,
    pub gammas: Vec<RMatrix<T>>,
    pub metric: MetricForm,
    /// `{γ^a, γ^b} = sign · 2η^{ab}`.
    pub sign: i8,
    pub hermiticity: Hermiticity,
    pub weight: Option<RMatrix<T>>,
}

impl<T: UnitRing> GammaFamily<T> {
    /// `γ^a`, 1-based.
    pub fn gamma(&self, a: usize) -> &RMatrix<T> {
        &self.gammas[a - 1]
    }

    /// `γ_a = η_aa γ^a`, 1-based.
    pub fn lowered(&self, a: usize) -> RMatrix<T> {
        self.gammas[a - 1].scale_i(self.metric.get(a - 1) as i64)
    }

    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }

    pub fn size(&self) -> usize {
        self.gammas[0].rows()
    }

    /// `x_a γ^a` style contraction `Σ c_a γ^a` with real coefficients.
    pub fn contract(&self, c: &[T::Re]) -> RMatrix<T> {
        let n = self.size();
        self.gammas.iter().zip(c).fold(RMatrix::zeros(n, n), |acc, (g, x)| &acc + &g.scale(&T::from_re(x.clone())))
    }
}

// ---------------------------------------------------------------------------
// elementary matrices

fn ints<T: Ring>(n: usize, v: &[i64]) -> RMatrix<T> {
    RMatrix::from_ints(n, n, v)
}

fn eye<T: Ring>(n: usize) -> RMatrix<T> {
    RMatrix::identity(n)
}

/// Pauli triple with `u` in place of the imaginary unit:
/// `(σ¹, σ², σ³) = ([[0,1],[1,0]], u[[0,−1],[1,0]], diag(1,−1))`.
/// With `u = j` these are the split-Pauli matrices.
pub fn pauli<T: UnitRing>() -> [RMatrix<T>; 3] {
    [ints(2, &[0, 1, 1, 0]), ints::<T>(2, &[0, -1, 1, 0]).times_unit(), ints(2, &[1, 0, 0, -1])]
}

/// `(τ¹, τ², τ³) = (iσ¹, iσ², σ³)`.
pub fn tau<T: UnitRing>() -> [RMatrix<T>; 3] {
    let [s1, s2, s3] = pauli::<T>();
    [s1.times_unit(), s2.times_unit(), s3]
}

/// 4×4 grid of 2×2 blocks; `None` is zero.
fn grid4<T: Ring>(cells: [[Option<RMatrix<T>>; 4]; 4]) -> RMatrix<T> {
    let z = RMatrix::<T>::zeros(2, 2);
    let rows: Vec<Vec<Option<&RMatrix<T>>>> = cells.iter().map(|r| r.iter().map(|c| Some(c.as_ref().unwrap_or(&z))).collect()).collect();
    RMatrix::block(&rows)
}

/// The literal 8×8 λ^I (I = 1..7), block by block.
pub fn literal_lambda<T: UnitRing>() -> Vec<RMatrix<T>> {
    let one = || Some(eye::<T>(2));
    let is2 = || Some(ints::<T>(2, &[0, 1, -1, 0]));
    let s1 = || Some(ints::<T>(2, &[0, 1, 1, 0]));
    let s3 = || Some(ints::<T>(2, &[1, 0, 0, -1]));
    let n = |m: Option<RMatrix<T>>| m.map(|x| -x);
    vec![
        grid4([[n(is2()), None, None, None], [None, n(is2()), None, None], [None, None, is2(), None], [None, None, None, is2()]]),
        grid4([[None, n(s3()), None, None], [s3(), None, None, None], [None, None, None, s3()], [None, None, n(s3()), None]]),
        grid4([[None, n(s1()), None, None], [s1(), None, None, None], [None, None, None, s1()], [None, None, n(s1()), None]]),
        grid4([[None, None, n(one()), None], [None, None, None, n(one())], [n(one()), None, None, None], [None, n(one()), None, None]]),
        grid4([[None, None, n(is2()), None], [None, None, None, is2()], [is2(), None, None, None], [None, n(is2()), None, None]]),
        grid4([[None, None, None, n(one())], [None, None, one(), None], [None, one(), None, None], [n(one()), None, None, None]]),
        grid4([[None, None, None, n(is2())], [None, None, n(is2()), None], [None, is2(), None, None], [is2(), None, None, None]]),
    ]
}

/// `(λ^I)_{AB} = −f_{IAB}` from the split-octonion structure constants, with
/// `A, B ∈ 0..8` and `e_0 = 1`.
pub fn lambda_from_table<T: UnitRing>(st: &StructureTable) -> Vec<RMatrix<T>> {
    (1..8).map(|i| RMatrix::from_fn(8, 8, |a, b| T::from_i64(-st.f0(i, a, b) as i64))).collect()
}

fn offdiag_identity<T: Ring>(n: usize) -> RMatrix<T> {
    RMatrix::block_offdiag(&eye(n), &eye(n))
}

fn diag_pm<T: Ring>(n: usize) -> RMatrix<T> {
    RMatrix::block_diag(&eye(n), &-eye::<T>(n))
}

/// `[[0, u·g], [−u·g, 0]]`.
fn chiral_wrap<T: UnitRing>(g: &RMatrix<T>) -> RMatrix<T> {
    let ug = g.times_unit();
    RMatrix::block_offdiag(&ug, &-&ug)
}

fn so43_i_gammas<T: UnitRing>() -> Vec<RMatrix<T>> {
    let [s1, s2, s3] = pauli::<T>();
    let one = eye::<T>(2);
    let p = |m: &RMatrix<T>| Some(m.clone());
    let n = |m: &RMatrix<T>| Some(-m);
    vec![
        grid4([[None, None, None, p(&s2)], [None, None, n(&s2), None], [None, n(&s2), None, None], [p(&s2), None, None, None]]),
        grid4([[None, None, None, n(&s1)], [None, None, p(&s1), None], [None, p(&s1), None, None], [n(&s1), None, None, None]]),
        grid4([[None, None, None, n(&s3)], [None, None, p(&s3), None], [None, p(&s3), None, None], [n(&s3), None, None, None]]),
        grid4([[None, None, None, p(&one)], [None, None, p(&one), None], [None, n(&one), None, None], [n(&one), None, None, None]])
            .times_unit(),
        grid4([[None, None, p(&one), None], [None, None, None, n(&one)], [n(&one), None, None, None], [None, p(&one), None, None]])
            .times_unit(),
        grid4([[None, None, p(&one), None], [None, None, None, p(&one)], [p(&one), None, None, None], [None, p(&one), None, None]]),
        grid4([[p(&one), None, None, None], [None, p(&one), None, None], [None, None, n(&one), None], [None, None, None, n(&one)]]),
    ]
}

pub const SPLIT_PAULI_METRIC: [i8; 3] = [1, -1, 1];
pub const TAU_METRIC: [i8; 3] = [1, 1, -1];
pub const SO32_I_METRIC: [i8; 5] = [1, -1, 1, -1, -1];
pub const SO32_II_METRIC: [i8; 5] = [1, 1, -1, -1, -1];
pub const SO43_I_METRIC: [i8; 7] = [-1, 1, 1, -1, -1, 1, 1];
pub const SO54_I_METRIC: [i8; 9] = [1, -1, -1, 1, 1, -1, -1, 1, 1];
pub const LAMBDA_METRIC: [i8; 7] = [1, 1, 1, -1, -1, -1, -1];
pub const SO54_II_METRIC: [i8; 9] = [-1, -1, -1, -1, 1, 1, 1, 1, 1];

/// Build a family from its literal matrices.
pub fn build_family<T: UnitRing>(name: FamilyName) -> Result<GammaFamily<T>, GammaError> {
    if name.unit_square() != T::UNIT_SQUARE {
        return Err(GammaError::RingMismatch { family: name, need: name.unit_square(), got: T::UNIT_SQUARE });
    }
    let (gammas, metric, sign, hermiticity, weight): (Vec<RMatrix<T>>, &[i8], i8, Hermiticity, Option<RMatrix<T>>) = match name {
        FamilyName::SplitPauli => (pauli::<T>().to_vec(), &SPLIT_PAULI_METRIC, 1, Hermiticity::Hermitian, None),
        FamilyName::Tau => (tau::<T>().to_vec(), &TAU_METRIC, -1, Hermiticity::MinusLoweredDagger, Some(pauli::<T>()[2].clone())),
        FamilyName::So32I => {
            let mut g: Vec<_> = pauli::<T>().iter().map(chiral_wrap).collect();
            g.push(offdiag_identity(2));
            g.push(diag_pm(2));
            (g, &SO32_I_METRIC, -1, Hermiticity::Hermitian, None)
        }
        FamilyName::So32II => {
            let [s1, s2, s3] = pauli::<T>();
            let mut g: Vec<_> = tau::<T>().iter().map(|t| RMatrix::kron(t, &s2)).collect();
            g.push(RMatrix::kron(&eye(2), &s1));
            g.push(RMatrix::kron(&eye(2), &s3));
            let k = RMatrix::block_diag(&s3, &s3);
            (g, &SO32_II_METRIC, -1, Hermiticity::MinusLoweredDagger, Some(k))
        }
        FamilyName::So43I => (so43_i_gammas(), &SO43_I_METRIC, 1, Hermiticity::Hermitian, None),
        FamilyName::So54I => {
            let mut g: Vec<_> = so43_i_gammas::<T>().iter().map(chiral_wrap).collect();
            g.push(offdiag_identity(8));
            g.push(diag_pm(8));
            (g, &SO54_I_METRIC, 1, Hermiticity::Hermitian, None)
        }
        FamilyName::LambdaSo43II => (literal_lambda(), &LAMBDA_METRIC, -1, Hermiticity::MinusLoweredTranspose, None),
        FamilyName::So54II => {
            let lam = literal_lambda::<T>();
            let mut g: Vec<_> = (1..8)
                .map(|i| {
                    let l = &lam[8 - i - 1];
                    RMatrix::block_offdiag(l, &-l)
                })
                .collect();
            g.push(offdiag_identity(8));
            g.push(diag_pm(8));
            let s3 = diag_pm::<T>(4);
            let k = RMatrix::block_diag(&s3, &s3);
            (g, &SO54_II_METRIC, 1, Hermiticity::LoweredTranspose, Some(k))
        }
    };
    Ok(GammaFamily { name, gammas, metric: MetricForm::new(metric), sign, hermiticity, weight })
}

// ---------------------------------------------------------------------------
// checks

/// Every pairwise anticommutator against `sign · 2η^{ab}`; the detail names
/// each failing pair (1-based).
pub fn clifford_check<T: UnitRing>(f: &GammaFamily<T>) -> Check {
    let n = f.len();
    let id = eye::<T>(f.size());
    let mut failing = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let rhs = if a == b { id.scale_i(2 * f.sign as i64 * f.metric.get(a) as i64) } else { RMatrix::zeros(f.size(), f.size()) };
            if f.gammas[a].anticommutator(&f.gammas[b]).expect("square") != rhs {
                failing.push(format!("({},{})", a + 1, b + 1));
            }
        }
    }
    let pairs = n * n;
    Check::exact(
        &format!("{}.anticommutator", f.name),
        format!("{}/{} anticommutator pairs match", pairs - failing.len(), pairs),
        failing.is_empty(),
        if f.sign > 0 { "{γ^a, γ^b} = 2η^{ab}" } else { "{γ^a, γ^b} = -2η^{ab}" },
    )
    .with_family(f.name.as_str())
    .with_detail(failing.join(" "))
}

pub fn hermiticity_check<T: UnitRing>(f: &GammaFamily<T>) -> Check {
    let bad: Vec<String> = (1..=f.len())
        .filter(|&a| {
            let g = f.gamma(a);
            let low = f.lowered(a);
            match f.hermiticity {
                Hermiticity::Hermitian => g.dagger() != *g,
                Hermiticity::MinusLoweredDagger => g.dagger() != -low,
                Hermiticity::LoweredTranspose => g.transpose() != low,
                Hermiticity::MinusLoweredTranspose => g.transpose() != -low,
            }
        })
        .map(|a| a.to_string())
        .collect();
    let anchor = match f.hermiticity {
        Hermiticity::Hermitian => "(γ^a)† = γ^a",
        Hermiticity::MinusLoweredDagger => "(γ^a)† = -γ_a",
        Hermiticity::LoweredTranspose => "(Γ^A)^t = Γ_A",
        Hermiticity::MinusLoweredTranspose => "(λ^I)^t = -λ_I",
    };
    Check::exact(&format!("{}.hermiticity", f.name), format!("{anchor} for every member"), bad.is_empty(), anchor)
        .with_family(f.name.as_str())
        .with_detail(bad.join(","))
}

/// With a weight `w`, every `w·γ^a` is hermitian (or symmetric for real families).
pub fn weight_check<T: UnitRing>(f: &GammaFamily<T>) -> Option<Check> {
    let w = f.weight.as_ref()?;
    let ok = f.gammas.iter().all(|g| {
        let kg = w * g;
        kg.dagger() == kg
    });
    Some(
        Check::exact(&format!("{}.weighted_hermitian", f.name), "weight · γ^a hermitian for all a", ok, "k^a = k γ^a hermitian")
            .with_family(f.name.as_str()),
    )
}

/// λ built from the split-octonion structure constants equals the literal λ.
pub fn lambda_cross_check<T: UnitRing>() -> Check {
    let built = lambda_from_table::<T>(&StructureTable::split_octonion());
    let literal = literal_lambda::<T>();
    let bad: Vec<String> = (0..7).filter(|&i| built[i] != literal[i]).map(|i| format!("λ^{}", i + 1)).collect();
    Check::exact(
        "lambda_so43_II.from_table",
        "(λ^I)_AB = -f_IAB equals the literal matrices entrywise",
        bad.is_empty(),
        "(λ^I)_{AB} = -f_{IAB}",
    )
    .with_family("lambda_so43_II")
    .with_detail(bad.join(","))
}

// ---------------------------------------------------------------------------
// generators

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSet<T> {
    pub family: FamilyName,
    /// `sigmas[a][b] = σ^{ab}` (0-based storage, upper indices).
    pub sigmas: Vec<Vec<RMatrix<T>>>,
}

impl<T: UnitRing> GeneratorSet<T> {
    /// `σ^{ab}`, 1-based.
    pub fn upper(&self, a: usize, b: usize) -> &RMatrix<T> {
        &self.sigmas[a - 1][b - 1]
    }

    /// `σ_{ab}`, 1-based.
    pub fn lower(&self, metric: &MetricForm, a: usize, b: usize) -> RMatrix<T> {
        self.sigmas[a - 1][b - 1].scale_i((metric.get(a - 1) * metric.get(b - 1)) as i64)
    }
}

fn quarter_unit<T: UnitRing>() -> T {
    // −u/4
    T::new(T::Re::zero(), -T::Re::ratio(1, 4))
}

/// `σ^{ab} = −(u/4)[γ^a, γ^b]`.
pub fn build_generators<T: UnitRing>(name: FamilyName) -> Result<GeneratorSet<T>, GammaError> {
    let f = build_family::<T>(name)?;
    Ok(generators_of(&f))
}

pub fn generators_of<T: UnitRing>(f: &GammaFamily<T>) -> GeneratorSet<T> {
    let c = quarter_unit::<T>();
    let sigmas = f.gammas.iter().map(|a| f.gammas.iter().map(|b| a.commutator(b).expect("square").scale(&c)).collect()).collect();
    GeneratorSet { family: f.name, sigmas }
}

/// Printed SO(3,2) Realization II generator blocks, `σ^{ab}` with upper indices.
pub fn literal_so32_ii_generators<T: UnitRing>() -> Vec<Vec<RMatrix<T>>> {
    let t = tau::<T>();
    let half = T::from_re(T::Re::half());
    let mut s = vec![vec![RMatrix::<T>::zeros(4, 4); 5]; 5];
    let tl = |k: usize| t[k].scale_i(TAU_METRIC[k] as i64);
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            let k = 3 - i - j;
            let e = levi_civita_upper(&[i, j, k]);
            let blk = tl(k).scale(&half).scale_i(e as i64);
            s[i][j] = RMatrix::block_diag(&blk, &blk);
        }
        let ht = t[i].scale(&half);
        s[i][3] = RMatrix::block_diag(&-&ht, &ht);
        s[i][4] = RMatrix::block_offdiag(&ht, &ht);
        s[3][i] = -&s[i][3];
        s[4][i] = -&s[i][4];
    }
    let ih = T::new(T::Re::zero(), T::Re::half());
    s[3][4] = RMatrix::block_offdiag(&eye::<T>(2), &-eye::<T>(2)).scale(&ih);
    s[4][3] = -&s[3][4];
    s
}

/// The graded commutation law `[σ_ab, σ_cd] = −u(η_ac σ_bd − η_ad σ_bc + η_bd σ_ac − η_bc σ_ad)`
/// for the lowered generators; returns failing index quadruples (1-based).
pub fn generator_closure_failures<T: UnitRing>(f: &GammaFamily<T>) -> Vec<(usize, usize, usize, usize)> {
    let g = generators_of(f);
    let n = f.len();
    let low = |a: usize, b: usize| g.lower(&f.metric, a + 1, b + 1);
    let eta = |a: usize, b: usize| if a == b { f.metric.get(a) as i64 } else { 0 };
    let mu = -T::unit();
    let mut bad = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let lhs = low(a, b).commutator(&low(c, d)).expect("square");
                    let rhs = &(&(&low(b, d).scale_i(eta(a, c)) - &low(b, c).scale_i(eta(a, d))) + &low(a, c).scale_i(eta(b, d)))
                        - &low(a, d).scale_i(eta(b, c));
                    if lhs != rhs.scale(&mu) {
                        bad.push((a + 1, b + 1, c + 1, d + 1));
                    }
                }
            }
        }
    }
    bad
}

/// Weyl-sector generators `σ_MN` (M, N = 1..8, 0-based storage, lower indices)
/// of the level-3 maps. `bar` selects `σ̄_MN`, which flips the sign of `σ_{I8}`.
///
/// Realization I: `σ_IJ = −(j/4)[γ_I, γ_J]`, `σ_I8 = −½γ_I` with the 8×8 γ^I.
/// Realization II: `σ_IJ = −(i/4)[λ_{8−I}, λ_{8−J}]`, `σ_I8 = (i/2)λ_{8−I}`,
/// indices lowered with the λ metric at slot `8−I`.
pub fn weyl_generators<T: UnitRing>(bar: bool) -> Vec<Vec<RMatrix<T>>> {
    let (gl, s8): (Vec<RMatrix<T>>, T) = if T::UNIT_SQUARE == 1 {
        let g = so43_i_gammas::<T>();
        let gl = g.iter().enumerate().map(|(i, m)| m.scale_i(SO43_I_METRIC[i] as i64)).collect();
        (gl, T::from_re(-T::Re::half()))
    } else {
        let lam = literal_lambda::<T>();
        let gl = (1..8).map(|i| lam[8 - i - 1].scale_i(LAMBDA_METRIC[8 - i - 1] as i64)).collect();
        (gl, T::new(T::Re::zero(), T::Re::half()))
    };
    let s8 = if bar { -s8 } else { s8 };
    let c = quarter_unit::<T>();
    let mut s = vec![vec![RMatrix::<T>::zeros(8, 8); 8]; 8];
    for a in 0..7 {
        for b in 0..7 {
            s[a][b] = gl[a].commutator(&gl[b]).expect("square").scale(&c);
        }
        s[a][7] = gl[a].scale(&s8);
        s[7][a] = -&s[a][7];
    }
    s
}

// ---------------------------------------------------------------------------
// 't Hooft symbols and Levi-Civita

/// Permutation sign of distinct indices, 0 on a repeat.
pub fn perm_sign(ix: &[usize]) -> i8 {
    let mut s = 1i8;
    for a in 0..ix.len() {
        for b in a + 1..ix.len() {
            if ix[a] == ix[b] {
                return 0;
            }
            if ix[a] > ix[b] {
                s = -s;
            }
        }
    }
    s
}

/// `ε^{ijk}` with `ε^{123} = +1` (0-based arguments).
pub fn levi_civita_upper(ix: &[usize]) -> i8 {
    perm_sign(ix)
}

/// `ε_{ijk} = det(η) ε^{ijk}`; for both three-dimensional split metrics this is −ε^{ijk}.
pub fn levi_civita_lower(ix: &[usize], metric: &MetricForm) -> i8 {
    perm_sign(ix) * metric.determinant()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Realization {
    I,
    II,
}

impl fmt::Display for Realization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Realization::I => "I",
            Realization::II => "II",
        })
    }
}

impl FromStr for Realization {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "I" | "i" | "1" => Ok(Realization::I),
            "II" | "ii" | "2" => Ok(Realization::II),
            _ => Err(format!("realization must be I or II, got `{s}`")),
        }
    }
}

/// `eta[m][n][i]` for m, n ∈ 0..4 and i ∈ 0..3.
pub type THooft = [[[i8; 3]; 4]; 4];

/// Split 't Hooft symbols.
///
/// I: `η_mni = ε_mni − η_mi η_n4 + η_m4 η_ni` with η = diag(+,−,+,−) and the
/// lowered ε; the barred symbol flips the two η terms.
///
/// II: the table that makes the level-2 connection consistent with its
/// section is the negative of `ε_mni4 + η_mi η_n4 − η_ni η_m4` (ε_1234 = +1,
/// η = diag(+,+,−,−)); that negated table is what this returns, with the
/// barred version negated the same way.
pub fn build_thooft(variant: Realization, bar: bool) -> THooft {
    let mut t = [[[0i8; 3]; 4]; 4];
    let sb: i8 = if bar { -1 } else { 1 };
    match variant {
        Realization::I => {
            let e = [1i8, -1, 1, -1];
            let m3 = MetricForm::new(&SPLIT_PAULI_METRIC);
            let d = |a: usize, b: usize| if a == b { e[a] } else { 0 };
            for m in 0..4 {
                for n in 0..4 {
                    for i in 0..3 {
                        let eps = if m < 3 && n < 3 { levi_civita_lower(&[m, n, i], &m3) } else { 0 };
                        t[m][n][i] = eps + sb * (-d(m, i) * d(n, 3) + d(m, 3) * d(n, i));
                    }
                }
            }
        }
        Realization::II => {
            let e = [1i8, 1, -1, -1];
            let d = |a: usize, b: usize| if a == b { e[a] } else { 0 };
            for m in 0..4 {
                for n in 0..4 {
                    for i in 0..3 {
                        let eps = perm_sign(&[m, n, i, 3]);
                        t[m][n][i] = -(eps + sb * (d(m, i) * d(n, 3) - d(n, i) * d(m, 3)));
                    }
                }
            }
        }
    }
    t
}

// ---------------------------------------------------------------------------
// charge conjugation

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ConjForm {
    /// `C X C⁻¹`
    Similarity,
    /// `C† X C`
    Adjoint,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChargeConjugation<T> {
    pub family: FamilyName,
    pub label: &'static str,
    pub c: RMatrix<T>,
    pub form: ConjForm,
    /// `C γ_a C⁻¹ = vector_rule · γ_a*`
    pub vector_rule: i8,
    /// `C σ_ab C⁻¹ = generator_rule · σ_ab*`, when the family has generators.
    pub generator_rule: Option<i8>,
    /// `C⁻¹ = s·C`
    pub inverse_sign: i8,
    /// `Cᵗ = s·C`
    pub transpose_sign: i8,
    /// `C* = s·C`
    pub conj_sign: i8,
    /// `C*C = s·1`
    pub consistency: i8,
    /// The same matrix written in block form, for cross-checking.
    pub block_form: Option<RMatrix<T>>,
}

/// Charge-conjugation matrices, built from products of the family's gammas.
pub fn charge_conjugation<T: UnitRing>(family: FamilyName) -> Result<ChargeConjugation<T>, GammaError> {
    let f = build_family::<T>(family)?;
    let g = |a: usize| f.gamma(a).clone();
    let u = T::unit();
    let cc = |label, c, form, v, gen, inv, tr, cj, cons, block_form| ChargeConjugation {
        family,
        label,
        c,
        form,
        vector_rule: v,
        generator_rule: gen,
        inverse_sign: inv,
        transpose_sign: tr,
        conj_sign: cj,
        consistency: cons,
        block_form,
    };
    Ok(match family {
        FamilyName::SplitPauli => cc("sigma2", g(2), ConjForm::Similarity, -1, None, -1, -1, -1, 1, None),
        FamilyName::Tau => cc("sigma1", pauli::<T>()[0].clone(), ConjForm::Similarity, -1, None, 1, 1, 1, 1, None),
        FamilyName::So32I => {
            let b = (&g(1) * &g(3)).scale(&u);
            let s2 = pauli::<T>()[1].clone();
            let literal = -RMatrix::block_diag(&s2, &s2);
            cc("b", b, ConjForm::Similarity, 1, Some(-1), -1, -1, -1, 1, Some(literal))
        }
        FamilyName::So32II => {
            let r = -(&g(2) * &g(3));
            let s1 = pauli::<T>()[0].clone();
            let literal = RMatrix::block_diag(&s1, &s1);
            cc("r", r, ConjForm::Adjoint, 1, Some(-1), 1, 1, 1, 1, Some(literal))
        }
        FamilyName::So43I => {
            let d = -(&(&g(1) * &g(4)) * &g(5)).scale(&u);
            let b = charge_conjugation::<T>(FamilyName::So32I)?.c;
            let literal = RMatrix::block_offdiag(&-&b, &b).scale(&u);
            cc("d", d, ConjForm::Similarity, -1, Some(-1), 1, 1, 1, 1, Some(literal))
        }
        FamilyName::So54I => {
            let bb = &(&(&g(2) * &g(3)) * &g(6)) * &g(7);
            let d = charge_conjugation::<T>(FamilyName::So43I)?.c;
            let literal = -RMatrix::block_diag(&d, &d);
            cc("B", bb, ConjForm::Similarity, 1, Some(-1), 1, 1, 1, 1, Some(literal))
        }
        FamilyName::So54II => cc("identity", eye(16), ConjForm::Similarity, 1, Some(-1), 1, 1, 1, 1, None),
        FamilyName::LambdaSo43II => return Err(GammaError::NoConjugation(family)),
    })
}

pub const CONJUGATED_FAMILIES: [FamilyName; 7] = [
    FamilyName::SplitPauli,
    FamilyName::Tau,
    FamilyName::So32I,
    FamilyName::So32II,
    FamilyName::So43I,
    FamilyName::So54I,
    FamilyName::So54II,
];

/// Vector rule, generator rule, symmetry properties and consistency condition.
pub fn conjugation_check<T: UnitRing>(c: &ChargeConjugation<T>) -> Vec<Check> {
    let f = build_family::<T>(c.family).expect("family of a built conjugation");
    let n = f.size();
    let id = eye::<T>(n);
    let cinv = c.c.scale_i(c.inverse_sign as i64);
    let apply = |x: &RMatrix<T>| match c.form {
        ConjForm::Similarity => &(&c.c * x) * &cinv,
        ConjForm::Adjoint => &(&c.c.dagger() * x) * &c.c,
    };
    let fam = c.family.as_str();
    let mut out = Vec::new();
    let key = |s: &str| format!("{fam}.{}.{s}", c.label);

    out.push(
        Check::exact(&key("inverse"), format!("{}⁻¹ = {}{}", c.label, sgn(c.inverse_sign), c.label), &c.c * &cinv == id, "C⁻¹ = ±C")
            .with_family(fam),
    );
    out.push(
        Check::exact(
            &key("transpose"),
            format!("{}ᵗ = {}{}", c.label, sgn(c.transpose_sign), c.label),
            c.c.transpose() == c.c.scale_i(c.transpose_sign as i64),
            "Cᵗ = ±C",
        )
        .with_family(fam),
    );
    out.push(
        Check::exact(
            &key("conjugate"),
            format!("{}* = {}{}", c.label, sgn(c.conj_sign), c.label),
            c.c.conj() == c.c.scale_i(c.conj_sign as i64),
            "C* = ±C",
        )
        .with_family(fam),
    );
    out.push(
        Check::exact(
            &key("consistency"),
            format!("{0}*{0} = {1}1", c.label, sgn(c.consistency)),
            &c.c.conj() * &c.c == id.scale_i(c.consistency as i64),
            "C*C = ±1",
        )
        .with_family(fam),
    );

    let bad: Vec<String> = (1..=f.len())
        .filter(|&a| {
            let ga = f.lowered(a);
            apply(&ga) != ga.conj().scale_i(c.vector_rule as i64)
        })
        .map(|a| a.to_string())
        .collect();
    out.push(
        Check::exact(
            &key("vector_rule"),
            format!("{} γ_a {}⁻¹ = {}γ_a* for all {} a", c.label, c.label, sgn(c.vector_rule), f.len()),
            bad.is_empty(),
            "C γ_a C⁻¹ = ±γ_a*",
        )
        .with_family(fam)
        .with_detail(bad.join(",")),
    );

    if let Some(rule) = c.generator_rule {
        let gens = generators_of(&f);
        let mut bad = Vec::new();
        for a in 1..=f.len() {
            for b in 1..=f.len() {
                let s = gens.lower(&f.metric, a, b);
                if apply(&s) != s.conj().scale_i(rule as i64) {
                    bad.push(format!("({a},{b})"));
                }
            }
        }
        out.push(
            Check::exact(
                &key("generator_rule"),
                format!("{} σ_ab {}⁻¹ = {}σ_ab*", c.label, c.label, sgn(rule)),
                bad.is_empty(),
                "C σ_ab C⁻¹ = ±σ_ab*",
            )
            .with_family(fam)
            .with_detail(bad.join(" ")),
        );
    }

    if let Some(p) = &c.block_form {
        out.push(
            Check::exact(&key("block_form"), format!("{} equals its literal block form", c.label), *p == c.c, "block form")
                .with_family(fam),
        );
    }
    out
}

fn sgn(s: i8) -> &'static str {
    if s < 0 {
        "-"
    } else {
        ""
    }
}

// ---------------------------------------------------------------------------
// suite

/// Every family check on the exact backend. `corrupt` flips one entry of
/// so32_I's γ¹ to exercise the failure path.
pub fn gamma_suite(corrupt: bool) -> Vec<Check> {
    use crate::scalar::Rational;
    use crate::splitnum::SplitComplex;
    use num_complex::Complex;
    type J = SplitComplex<Rational>;
    type I = Complex<Rational>;

    let mut out = Vec::new();
    fn per_family<T: UnitRing>(out: &mut Vec<Check>, name: FamilyName, corrupt: bool) {
        let mut f = build_family::<T>(name).expect("ring matches family");
        if corrupt && name == FamilyName::So32I {
            let g = &mut f.gammas[0];
            g[(0, 3)] = g[(0, 3)].clone() + T::one();
        }
        out.push(clifford_check(&f));
        out.push(hermiticity_check(&f));
        out.extend(weight_check(&f));
        if name != FamilyName::LambdaSo43II {
            for c in conjugation_check(&charge_conjugation::<T>(name).expect("conjugated family")) {
                out.push(c);
            }
        }
    }
    for name in FamilyName::ALL {
        if name.unit_square() == 1 {
            per_family::<J>(&mut out, name, corrupt);
        } else {
            per_family::<I>(&mut out, name, corrupt);
        }
    }
    out.push(lambda_cross_check::<I>());

    let so54ii = generators_of(&build_family::<I>(FamilyName::So54II).expect("complex ring"));
    let imaginary = so54ii.sigmas.iter().flatten().all(|s| s.conj() == -s);
    out.push(
        Check::exact("so54_II.majorana", "Σ_AB* = -Σ_AB (purely imaginary generators)", imaginary, "Σ_AB* = -Σ_AB").with_family("so54_II"),
    );

    let built = generators_of(&build_family::<I>(FamilyName::So32II).expect("complex ring"));
    let literal = literal_so32_ii_generators::<I>();
    out.push(
        Check::exact(
            "so32_II.generators_literal",
            "σ^{ab} = -(i/4)[γ^a, γ^b] equals the literal blocks",
            built.sigmas == literal,
            "σ^{45} = (i/2)[[0,1],[-1,0]]",
        )
        .with_family("so32_II"),
    );
    for (name, fails) in [
        (FamilyName::So32II, generator_closure_failures(&build_family::<I>(FamilyName::So32II).expect("complex"))),
        (FamilyName::So32I, generator_closure_failures(&build_family::<J>(FamilyName::So32I).expect("split"))),
    ] {
        out.push(
            Check::exact(
                &format!("{name}.closure"),
                format!("[σ_ab, σ_cd] = -u(η_ac σ_bd - η_ad σ_bc + η_bd σ_ac - η_bc σ_ad), {} failures", fails.len()),
                fails.is_empty(),
                "[σ_ab, σ_cd] = -i(η_ac σ_bd - ...)",
            )
            .with_family(name.as_str()),
        );
    }

    let w = weyl_generators::<J>(false);
    let g43 = build_family::<J>(FamilyName::So43I).expect("split");
    let half = J::from_re(-Rational::half());
    let ok = (1..8).all(|i| w[i - 1][7] == g43.lowered(i).scale(&half) && w[7][i - 1] == -&w[i - 1][7]);
    out.push(Check::exact("so54_I.weyl", "σ_I8 = -σ_8I = -½γ_I", ok, "σ_{I8} = -½γ_I").with_family("so54_I"));

    let antisym = [Realization::I, Realization::II].iter().all(|&v| {
        [false, true].iter().all(|&bar| {
            let t = build_thooft(v, bar);
            (0..4).all(|m| (0..4).all(|n| (0..3).all(|i| t[m][n][i] == -t[n][m][i])))
        })
    });
    out.push(Check::exact("thooft.antisymmetry", "η_mni = -η_nmi for all four tables", antisym, "η_{mni} = -η_{nmi}"));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use crate::splitnum::SplitComplex;
    use num_complex::Complex;

    type J = SplitComplex<Rational>;
    type I = Complex<Rational>;

    #[test]
    fn split_pauli_metric() {
        let f = build_family::<J>(FamilyName::SplitPauli).unwrap();
        assert_eq!(f.metric.signature, vec![1, -1, 1]);
    }

    #[test]
    fn tau3_is_sigma3() {
        let f = build_family::<I>(FamilyName::Tau).unwrap();
        assert_eq!(*f.gamma(3), RMatrix::from_ints(2, 2, &[1, 0, 0, -1]));
    }

    #[test]
    fn wrong_ring_is_rejected() {
        assert!(matches!(build_family::<I>(FamilyName::So54I), Err(GammaError::RingMismatch { .. })));
    }

    #[test]
    fn every_family_is_clifford() {
        for c in gamma_suite(false) {
            assert!(c.passed(), "{} {} {}", c.id, c.description, c.detail);
        }
    }

    #[test]
    fn corrupted_family_names_failing_pair() {
        let checks = gamma_suite(true);
        let bad: Vec<_> = checks.iter().filter(|c| !c.passed()).collect();
        assert!(bad.iter().any(|c| c.id == "so32_I.anticommutator" && c.detail.contains("(1,1)")));
    }

    #[test]
    fn so32_ii_sigma45_block() {
        let g = build_generators::<I>(FamilyName::So32II).unwrap();
        let ih = I::new(Rational::zero(), Rational::half());
        let want = RMatrix::block_offdiag(&RMatrix::identity(2), &-RMatrix::<I>::identity(2)).scale(&ih);
        assert_eq!(*g.upper(4, 5), want);
    }

    #[test]
    fn b_conjugates_gammas() {
        let c = charge_conjugation::<J>(FamilyName::So32I).unwrap();
        let checks = conjugation_check(&c);
        assert!(checks.iter().all(|c| c.passed()));
    }

    #[test]
    fn big_b_squares_to_one() {
        let c = charge_conjugation::<J>(FamilyName::So54I).unwrap();
        assert_eq!(&c.c.conj() * &c.c, RMatrix::identity(16));
    }

    #[test]
    fn so32_i_gamma1_gamma3_product() {
        // b = jγ¹γ³ = −diag(σ², σ²), so γ¹γ³ = j·b with j² = 1
        let f = build_family::<J>(FamilyName::So32I).unwrap();
        let b = charge_conjugation::<J>(FamilyName::So32I).unwrap().c;
        assert_eq!(f.gamma(1) * f.gamma(3), b.times_unit());
    }

    #[test]
    fn thooft_values() {
        let t = build_thooft(Realization::I, false);
        assert_eq!(t[0][1][2], -1);
        assert_eq!(t[0][3][0], 1);
        assert_eq!(t[3][0][0], -1);
    }

    #[test]
    fn family_names_round_trip() {
        for f in FamilyName::ALL {
            assert_eq!(f.as_str().parse::<FamilyName>().unwrap(), f);
        }
    }
}
