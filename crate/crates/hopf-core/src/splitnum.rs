//! Split-complex numbers, split-quaternions and split-octonions.
//!
//! All three are generic over a [`Real`] coefficient field so that algebraic
//! identities can be checked exactly with rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rand::Rng as _;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::report::Check;
use crate::scalar::{Involutive, Rational, Real, Ring, UnitRing};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("cannot combine a {0} with a {1}")]
    Mixed(&'static str, &'static str),
}

// ---------------------------------------------------------------------------
// split-complex

/// `re + j·im` with `j² = +1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SplitComplex<R> {
    pub re: R,
    pub im: R,
}

impl<R> SplitComplex<R> {
    pub const fn new(re: R, im: R) -> Self {
        SplitComplex { re, im }
    }
}

impl<R: Real> SplitComplex<R> {
    pub fn j() -> Self {
        SplitComplex::new(R::zero(), R::one())
    }

    /// `z*z = re² − im²`, which may be negative or zero.
    pub fn qform(&self) -> R {
        self.re.clone() * self.re.clone() - self.im.clone() * self.im.clone()
    }

    /// Light-cone (idempotent) coordinates `(re + im, re − im)`; multiplication is
    /// componentwise in these.
    pub fn null_coords(&self) -> (R, R) {
        (self.re.clone() + self.im.clone(), self.re.clone() - self.im.clone())
    }

    pub fn from_null_coords(p: R, m: R) -> Self {
        let h = R::half();
        SplitComplex::new((p.clone() + m.clone()) * h.clone(), (p - m) * h)
    }
}

impl SplitComplex<f64> {
    /// `e^{jϑ} = cosh ϑ + j sinh ϑ`, an element of the non-compact 𝒰(1).
    pub fn exp_j(theta: f64) -> Self {
        SplitComplex::new(theta.cosh(), theta.sinh())
    }
}

impl<R: fmt::Debug> fmt::Debug for SplitComplex<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + j{:?})", self.re, self.im)
    }
}

impl<R: Real> Add for SplitComplex<R> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        SplitComplex::new(self.re + o.re, self.im + o.im)
    }
}

impl<R: Real> Sub for SplitComplex<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        SplitComplex::new(self.re - o.re, self.im - o.im)
    }
}

impl<R: Real> Neg for SplitComplex<R> {
    type Output = Self;
    fn neg(self) -> Self {
        SplitComplex::new(-self.re, -self.im)
    }
}

impl<R: Real> Mul for SplitComplex<R> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let re = self.re.clone() * o.re.clone() + self.im.clone() * o.im.clone();
        let im = self.re * o.im + self.im * o.re;
        SplitComplex::new(re, im)
    }
}

impl<R: Real> Zero for SplitComplex<R> {
    fn zero() -> Self {
        SplitComplex::new(R::zero(), R::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl<R: Real> One for SplitComplex<R> {
    fn one() -> Self {
        SplitComplex::new(R::one(), R::zero())
    }
}

impl<R: Real> Ring for SplitComplex<R> {
    fn from_i64(n: i64) -> Self {
        SplitComplex::new(R::from_i64(n), R::zero())
    }
    fn mag(&self) -> f64 {
        self.re.mag().max(self.im.mag())
    }
}

impl<R: Real> Involutive for SplitComplex<R> {
    fn conj(&self) -> Self {
        SplitComplex::new(self.re.clone(), -self.im.clone())
    }
}

impl<R: Real> UnitRing for SplitComplex<R> {
    type Re = R;
    const UNIT_SQUARE: i64 = 1;

    fn new(re: R, im: R) -> Self {
        SplitComplex::new(re, im)
    }
    fn re(&self) -> R {
        self.re.clone()
    }
    fn im(&self) -> R {
        self.im.clone()
    }
}

// ---------------------------------------------------------------------------
// split-quaternion

/// Signed basis product: `e_a e_b = sign · e_idx`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BasisProduct {
    pub coeff: i8,
    pub basis_index: usize,
}

const fn bp(coeff: i8, basis_index: usize) -> BasisProduct {
    BasisProduct { coeff, basis_index }
}

/// Products of `1, q1, q2, q3`: `q1² = −q2² = q3² = q1q2q3 = 1`, anticommuting.
pub const QUATERNION_TABLE: [[BasisProduct; 4]; 4] = [
    [bp(1, 0), bp(1, 1), bp(1, 2), bp(1, 3)],
    [bp(1, 1), bp(1, 0), bp(1, 3), bp(1, 2)],
    [bp(1, 2), bp(-1, 3), bp(-1, 0), bp(1, 1)],
    [bp(1, 3), bp(-1, 2), bp(-1, 1), bp(1, 0)],
];

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SplitQuaternion<R> {
    pub r: [R; 4],
}

// ---------------------------------------------------------------------------
// split-octonion

/// Split-octonion multiplication table, `OCTONION_TABLE[a][b] = e_a e_b`
/// (row = left factor), indices 0..8 with `e_0 = 1`.
pub const OCTONION_TABLE: [[BasisProduct; 8]; 8] = [
    [bp(1, 0), bp(1, 1), bp(1, 2), bp(1, 3), bp(1, 4), bp(1, 5), bp(1, 6), bp(1, 7)],
    [bp(1, 1), bp(-1, 0), bp(1, 3), bp(-1, 2), bp(-1, 5), bp(1, 4), bp(-1, 7), bp(1, 6)],
    [bp(1, 2), bp(-1, 3), bp(-1, 0), bp(1, 1), bp(-1, 6), bp(1, 7), bp(1, 4), bp(-1, 5)],
    [bp(1, 3), bp(1, 2), bp(-1, 1), bp(-1, 0), bp(-1, 7), bp(-1, 6), bp(1, 5), bp(1, 4)],
    [bp(1, 4), bp(1, 5), bp(1, 6), bp(1, 7), bp(1, 0), bp(1, 1), bp(1, 2), bp(1, 3)],
    [bp(1, 5), bp(-1, 4), bp(-1, 7), bp(1, 6), bp(-1, 1), bp(1, 0), bp(1, 3), bp(-1, 2)],
    [bp(1, 6), bp(1, 7), bp(-1, 4), bp(-1, 5), bp(-1, 2), bp(-1, 3), bp(1, 0), bp(1, 1)],
    [bp(1, 7), bp(-1, 6), bp(1, 5), bp(-1, 4), bp(-1, 3), bp(1, 2), bp(-1, 1), bp(1, 0)],
];

/// Seed triples `(I, J, K, f_IJK)` of the totally antisymmetric tensor with all
/// indices down; every other nonzero constant follows by cyclic permutation
/// and antisymmetry. The table coefficients `e_I e_J = c_IJ^K e_K` are
/// `c_IJ^K = η_KK f_IJK`, so e.g. `c_14^5 = −1` while `f_145 = +1`.
pub const OCTONION_SEEDS: [(usize, usize, usize, i8); 7] =
    [(1, 2, 3, 1), (1, 4, 5, 1), (1, 6, 7, 1), (2, 4, 6, 1), (5, 2, 7, 1), (3, 4, 7, 1), (3, 5, 6, 1)];

/// `η_IJ` of the imaginary units, indices 1..=7.
pub const OCTONION_METRIC: [i8; 7] = [1, 1, 1, -1, -1, -1, -1];

/// Structure constants `f_IJK` of the split-octonions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTable {
    /// Totally antisymmetric `f[I][J][K]` for 1-based `I, J, K` (index 0 unused).
    pub f: [[[i8; 8]; 8]; 8],
    /// Signature of the imaginary units.
    pub diag: [i8; 7],
    /// The 21 cyclic triples with their sign.
    pub triples: Vec<(usize, usize, usize, i8)>,
}

impl StructureTable {
    pub fn split_octonion() -> Self {
        let mut f = [[[0i8; 8]; 8]; 8];
        let mut triples = Vec::with_capacity(21);
        for &(a, b, c, s) in &OCTONION_SEEDS {
            for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                triples.push((x, y, z, s));
                f[x][y][z] = s;
                f[y][x][z] = -s;
                f[x][z][y] = -s;
                f[z][y][x] = -s;
                f[y][z][x] = s;
                f[z][x][y] = s;
            }
        }
        StructureTable { f, diag: OCTONION_METRIC, triples }
    }

    /// `e_a e_b` for `a, b ∈ 0..8` via `e_I e_J = −η_IJ + η_KK f_IJK e_K`.
    pub fn product(&self, a: usize, b: usize) -> BasisProduct {
        match (a, b) {
            (0, b) => bp(1, b),
            (a, 0) => bp(1, a),
            (a, b) if a == b => bp(-self.diag[a - 1], 0),
            (a, b) => {
                let k = (1..8).find(|&k| self.f[a][b][k] != 0).expect("octonion product has a unique target");
                bp(self.f[a][b][k] * self.diag[k - 1], k)
            }
        }
    }

    /// Coefficient of `e_K` in `e_I e_J` for `I, J, K ∈ 1..8`, the form in which
    /// constants are read off the multiplication table.
    pub fn mixed(&self, i: usize, j: usize, k: usize) -> i8 {
        self.f[i][j][k] * self.diag[k - 1]
    }

    /// `f_ABC` extended to index 0 (`e_0 = 1`), the coefficient of `e_C` in `e_A e_B`.
    pub fn f0(&self, a: usize, b: usize, c: usize) -> i8 {
        let p = self.product(a, b);
        if p.basis_index == c {
            p.coeff
        } else {
            0
        }
    }

    pub fn is_antisymmetric(&self) -> bool {
        for i in 1..8 {
            for j in 1..8 {
                for k in 1..8 {
                    let v = self.f[i][j][k];
                    if self.f[j][i][k] != -v || self.f[i][k][j] != -v || self.f[k][j][i] != -v {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SplitOctonion<R> {
    pub r: [R; 8],
}

// ---------------------------------------------------------------------------
// shared algebra plumbing

/// The three split algebras, seen uniformly through their basis tables.
pub trait SplitAlgebra: Involutive {
    type Coeff: Real;
    const NAME: &'static str;
    const DIM: usize;

    fn basis_names() -> Vec<&'static str>;
    fn basis_product(a: usize, b: usize) -> BasisProduct;
    /// Signature of the quadratic form on the basis.
    fn signature() -> Vec<i8>;
    fn from_coeffs(c: &[Self::Coeff]) -> Self;
    fn coeffs(&self) -> Vec<Self::Coeff>;

    fn basis(i: usize) -> Self {
        let mut c = vec![Self::Coeff::zero(); Self::DIM];
        c[i] = Self::Coeff::one();
        Self::from_coeffs(&c)
    }

    /// `a*a`, a real number with the algebra's split signature.
    fn qform(&self) -> Self::Coeff {
        let prod = self.conj() * self.clone();
        prod.coeffs()[0].clone()
    }
}

fn table_mul<R: Real>(a: &[R], b: &[R], prod: impl Fn(usize, usize) -> BasisProduct) -> Vec<R> {
    let n = a.len();
    let mut out = vec![R::zero(); n];
    for i in 0..n {
        if a[i].is_zero() {
            continue;
        }
        for k in 0..n {
            if b[k].is_zero() {
                continue;
            }
            let p = prod(i, k);
            let t = a[i].clone() * b[k].clone();
            if p.coeff > 0 {
                out[p.basis_index] = out[p.basis_index].clone() + t;
            } else {
                out[p.basis_index] = out[p.basis_index].clone() - t;
            }
        }
    }
    out
}

fn octonion_table() -> &'static StructureTable {
    use std::sync::OnceLock;
    static T: OnceLock<StructureTable> = OnceLock::new();
    T.get_or_init(StructureTable::split_octonion)
}

macro_rules! impl_table_algebra {
    ($ty:ident, $n:expr, $name:expr, $names:expr, $sig:expr, $prod:expr) => {
        impl<R: Real> $ty<R> {
            pub fn new(r: [R; $n]) -> Self {
                $ty { r }
            }
        }

        impl<R: fmt::Debug> fmt::Debug for $ty<R> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.debug_tuple(stringify!($ty)).field(&self.r).finish()
            }
        }

        impl<R: Real> Add for $ty<R> {
            type Output = Self;
            fn add(self, o: Self) -> Self {
                let mut r = self.r;
                for (x, y) in r.iter_mut().zip(o.r) {
                    *x = x.clone() + y;
                }
                $ty { r }
            }
        }

        impl<R: Real> Sub for $ty<R> {
            type Output = Self;
            fn sub(self, o: Self) -> Self {
                let mut r = self.r;
                for (x, y) in r.iter_mut().zip(o.r) {
                    *x = x.clone() - y;
                }
                $ty { r }
            }
        }

        impl<R: Real> Neg for $ty<R> {
            type Output = Self;
            fn neg(self) -> Self {
                $ty { r: self.r.map(|x| -x) }
            }
        }

        impl<R: Real> Mul for $ty<R> {
            type Output = Self;
            fn mul(self, o: Self) -> Self {
                let v = table_mul(&self.r, &o.r, $prod);
                Self::from_coeffs(&v)
            }
        }

        impl<R: Real> Zero for $ty<R> {
            fn zero() -> Self {
                $ty { r: std::array::from_fn(|_| R::zero()) }
            }
            fn is_zero(&self) -> bool {
                self.r.iter().all(|x| x.is_zero())
            }
        }

        impl<R: Real> One for $ty<R> {
            fn one() -> Self {
                Self::basis(0)
            }
        }

        impl<R: Real> Ring for $ty<R> {
            fn from_i64(n: i64) -> Self {
                let mut z = Self::zero();
                z.r[0] = R::from_i64(n);
                z
            }
            fn mag(&self) -> f64 {
                self.r.iter().map(|x| x.mag()).fold(0.0, f64::max)
            }
        }

        impl<R: Real> Involutive for $ty<R> {
            fn conj(&self) -> Self {
                let mut r = self.r.clone().map(|x| -x);
                r[0] = self.r[0].clone();
                $ty { r }
            }
        }

        impl<R: Real> SplitAlgebra for $ty<R> {
            type Coeff = R;
            const NAME: &'static str = $name;
            const DIM: usize = $n;

            fn basis_names() -> Vec<&'static str> {
                $names.to_vec()
            }
            fn basis_product(a: usize, b: usize) -> BasisProduct {
                ($prod)(a, b)
            }
            fn signature() -> Vec<i8> {
                $sig.to_vec()
            }
            fn from_coeffs(c: &[R]) -> Self {
                $ty { r: std::array::from_fn(|i| c[i].clone()) }
            }
            fn coeffs(&self) -> Vec<R> {
                self.r.to_vec()
            }
        }
    };
}

impl_table_algebra!(SplitQuaternion, 4, "split-quaternion", ["1", "q1", "q2", "q3"], [1i8, -1, 1, -1], |a: usize, b: usize| {
    QUATERNION_TABLE[a][b]
});

impl_table_algebra!(
    SplitOctonion,
    8,
    "split-octonion",
    ["1", "e1", "e2", "e3", "e4", "e5", "e6", "e7"],
    [1i8, 1, 1, 1, -1, -1, -1, -1],
    |a: usize, b: usize| octonion_table().product(a, b)
);

impl<R: Real> SplitAlgebra for SplitComplex<R> {
    type Coeff = R;
    const NAME: &'static str = "split-complex";
    const DIM: usize = 2;

    fn basis_names() -> Vec<&'static str> {
        vec!["1", "j"]
    }
    fn basis_product(a: usize, b: usize) -> BasisProduct {
        bp(1, a ^ b)
    }
    fn signature() -> Vec<i8> {
        vec![1, -1]
    }
    fn from_coeffs(c: &[R]) -> Self {
        SplitComplex::new(c[0].clone(), c[1].clone())
    }
    fn coeffs(&self) -> Vec<R> {
        vec![self.re.clone(), self.im.clone()]
    }
}

/// Runtime-tagged split scalar, for callers that pick the algebra dynamically.
#[derive(Clone, Debug, PartialEq)]
pub enum SplitScalar<R> {
    Complex(SplitComplex<R>),
    Quaternion(SplitQuaternion<R>),
    Octonion(SplitOctonion<R>),
}

impl<R: Real> SplitScalar<R> {
    pub fn algebra(&self) -> &'static str {
        match self {
            SplitScalar::Complex(_) => SplitComplex::<R>::NAME,
            SplitScalar::Quaternion(_) => SplitQuaternion::<R>::NAME,
            SplitScalar::Octonion(_) => SplitOctonion::<R>::NAME,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        use SplitScalar::*;
        match (self, other) {
            (Complex(a), Complex(b)) => Ok(Complex(a.clone() * b.clone())),
            (Quaternion(a), Quaternion(b)) => Ok(Quaternion(a.clone() * b.clone())),
            (Octonion(a), Octonion(b)) => Ok(Octonion(a.clone() * b.clone())),
            _ => Err(AlgebraError::Mixed(self.algebra(), other.algebra())),
        }
    }

    pub fn conj(&self) -> Self {
        match self {
            SplitScalar::Complex(a) => SplitScalar::Complex(a.conj()),
            SplitScalar::Quaternion(a) => SplitScalar::Quaternion(a.conj()),
            SplitScalar::Octonion(a) => SplitScalar::Octonion(a.conj()),
        }
    }

    pub fn qform(&self) -> R {
        match self {
            SplitScalar::Complex(a) => a.qform(),
            SplitScalar::Quaternion(a) => SplitAlgebra::qform(a),
            SplitScalar::Octonion(a) => SplitAlgebra::qform(a),
        }
    }
}

// ---------------------------------------------------------------------------
// multiplication tables and verification

/// Full multiplication table of an algebra, for export.
#[derive(Clone, Debug, Serialize)]
pub struct MultiplicationTable {
    pub algebra: &'static str,
    pub basis: Vec<&'static str>,
    pub table: Vec<Vec<BasisProduct>>,
}

pub fn multiplication_table<A: SplitAlgebra>() -> MultiplicationTable {
    let table = (0..A::DIM).map(|a| (0..A::DIM).map(|b| A::basis_product(a, b)).collect()).collect();
    MultiplicationTable { algebra: A::NAME, basis: A::basis_names(), table }
}

/// Random element with small rational coefficients `n/d`.
pub fn random_rational<A: SplitAlgebra<Coeff = Rational>>(rng: &mut ChaCha8Rng) -> A {
    let c: Vec<Rational> = (0..A::DIM)
        .map(|_| {
            let n = rng.gen_range(-12i64..=12);
            let d = rng.gen_range(1i64..=7);
            Rational::ratio(n, d)
        })
        .collect();
    A::from_coeffs(&c)
}

/// Number of pairs `(a, b)` for which `qform(ab) ≠ qform(a) qform(b)`, over
/// `samples` random rational pairs.
pub fn composition_failures<A: SplitAlgebra<Coeff = Rational>>(samples: usize, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .filter(|_| {
            let a: A = random_rational(&mut rng);
            let b: A = random_rational(&mut rng);
            (a.clone() * b.clone()).qform() != a.qform() * b.qform()
        })
        .count()
}

/// Checks every product of the octonion table against the structure
/// constants, antisymmetry of `f`, and the composition property on random
/// rational pairs of all three algebras.
pub fn verify_structure_table(samples: usize, seed: u64) -> Vec<Check> {
    let st = StructureTable::split_octonion();
    let mut checks = Vec::new();

    let mut failing = Vec::new();
    for a in 0..8 {
        for b in 0..8 {
            let lhs = SplitOctonion::<Rational>::basis(a) * SplitOctonion::basis(b);
            let t = OCTONION_TABLE[a][b];
            let mut want = SplitOctonion::<Rational>::zero();
            want.r[t.basis_index] = Rational::from_i64(t.coeff as i64);
            if lhs != want || st.product(a, b) != t {
                failing.push(format!("e{a}e{b}"));
            }
        }
    }
    checks.push(
        Check::exact(
            "octonion.table",
            format!("{}/64 products match the multiplication table", 64 - failing.len()),
            failing.is_empty(),
            "e_A e_B = f_ABC e_C",
        )
        .with_detail(failing.join(",")),
    );

    checks.push(Check::exact(
        "octonion.antisymmetry",
        "f_IJK totally antisymmetric with 21 cyclic triples",
        st.is_antisymmetric() && st.triples.len() == 21,
        "[e_I, e_J] = 2 f_IJK e_K",
    ));

    let seeds = [(1, 4, 5), (1, 6, 7), (2, 4, 6), (5, 2, 7), (3, 4, 7), (3, 5, 6), (1, 3, 2)];
    let ok = seeds.iter().all(|&(i, j, k)| st.mixed(i, j, k) == -1);
    checks.push(Check::exact(
        "octonion.mixed_signs",
        "table coefficients c_145 = c_167 = c_246 = c_527 = c_347 = c_356 = c_132 = -1",
        ok,
        "e_1 e_3 = -e_2",
    ));

    let fc = composition_failures::<SplitComplex<Rational>>(samples, seed);
    let fq = composition_failures::<SplitQuaternion<Rational>>(samples, seed.wrapping_add(1));
    let fo = composition_failures::<SplitOctonion<Rational>>(samples, seed.wrapping_add(2));
    for (name, fails) in [("complex", fc), ("quaternion", fq), ("octonion", fo)] {
        checks.push(Check::exact(
            &format!("composition.{name}"),
            format!("qform(ab) = qform(a) qform(b) on {samples} random rational pairs ({fails} failures)"),
            fails == 0,
            "o*o = oo* multiplicative",
        ));
    }
    checks
}

/// The split-quaternion relations `q1q2 = q3, q2q3 = q1, q3q1 = −q2` and the
/// defining squares, checked exactly.
pub fn quaternion_relations() -> Vec<(String, bool)> {
    type H = SplitQuaternion<Rational>;
    let q = |i: usize| H::basis(i);
    let one = H::one();
    vec![
        ("q1^2 = 1".into(), q(1) * q(1) == one),
        ("q2^2 = -1".into(), q(2) * q(2) == -one.clone()),
        ("q3^2 = 1".into(), q(3) * q(3) == one),
        ("q1q2q3 = 1".into(), q(1) * q(2) * q(3) == one),
        ("q1q2 = q3".into(), q(1) * q(2) == q(3)),
        ("q2q3 = q1".into(), q(2) * q(3) == q(1)),
        ("q3q1 = -q2".into(), q(3) * q(1) == -q(2)),
        ("q_i q_j = -q_j q_i".into(), (1..4).all(|i| (1..4).all(|j| i == j || q(i) * q(j) == -(q(j) * q(i))))),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    type O = SplitOctonion<Rational>;
    type H = SplitQuaternion<Rational>;

    #[test]
    fn split_unit_squares_to_one() {
        let j = SplitComplex::<Rational>::j();
        assert_eq!(j.clone() * j, SplitComplex::one());
    }

    #[test]
    fn conj_j_is_minus_j() {
        let j = SplitComplex::<Rational>::j();
        assert_eq!(j.conj(), -j);
    }

    #[test]
    fn qform_of_null_split_complex() {
        let z = SplitComplex::new(q(1, 1), q(1, 1));
        assert_eq!(z.qform(), q(0, 1));
    }

    #[test]
    fn q1_times_q2_is_q3() {
        assert_eq!(H::basis(1) * H::basis(2), H::basis(3));
    }

    #[test]
    fn conj_one_plus_q2() {
        let h = H::one() + H::basis(2);
        assert_eq!(h.conj(), H::one() - H::basis(2));
    }

    #[test]
    fn quaternion_qform_signature() {
        let h = H::new([q(2, 1), q(3, 1), q(5, 1), q(7, 1)]);
        assert_eq!(h.qform(), q(4 - 9 + 25 - 49, 1));
    }

    #[test]
    fn e1_times_e3_is_minus_e2() {
        assert_eq!(O::basis(1) * O::basis(3), -O::basis(2));
    }

    #[test]
    fn one_is_unit() {
        let x = O::new(std::array::from_fn(|i| q(i as i64 - 3, 2)));
        assert_eq!(O::one() * x.clone(), x.clone());
        assert_eq!(x.clone() * O::one(), x);
    }

    #[test]
    fn conj_of_e4e5() {
        let e = O::basis;
        assert_eq!(e(4) * e(5), e(1));
        assert_eq!((e(4) * e(5)).conj(), -e(1));
        assert_eq!((e(4) * e(5)).conj(), e(5).conj() * e(4).conj());
    }

    #[test]
    fn qform_e2_plus_2e5() {
        let o = O::basis(2) + O::basis(5) * O::from_i64(2);
        // oracle: (e2 + 2e5)*(e2 + 2e5) expanded by hand from the table
        let e = O::basis;
        let conj = -e(2) - e(5) * O::from_i64(2);
        let expanded = conj.clone() * e(2) + conj * e(5) * O::from_i64(2);
        assert_eq!(expanded.r[0], q(-3, 1));
        assert_eq!(o.qform(), q(-3, 1));
    }

    #[test]
    fn f145_is_minus_one() {
        let st = StructureTable::split_octonion();
        assert_eq!(st.mixed(1, 4, 5), -1);
        assert_eq!(st.f[1][4][5], 1);
    }

    #[test]
    fn octonions_are_not_associative() {
        let e = O::basis;
        assert_ne!((e(1) * e(2)) * e(4), e(1) * (e(2) * e(4)));
    }

    #[test]
    fn quaternion_basis_is_associative() {
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    let (x, y, z) = (H::basis(a), H::basis(b), H::basis(c));
                    assert_eq!((x.clone() * y.clone()) * z.clone(), x * (y * z));
                }
            }
        }
    }

    #[test]
    fn quaternion_relations_hold() {
        for (name, ok) in quaternion_relations() {
            assert!(ok, "{name}");
        }
    }

    #[test]
    fn full_table_matches() {
        let checks = verify_structure_table(50, 3);
        for c in checks {
            assert!(c.passed(), "{}: {}", c.id, c.description);
        }
    }

    #[test]
    fn mixed_algebras_rejected() {
        let a = SplitScalar::Complex(SplitComplex::new(q(1, 1), q(0, 1)));
        let b = SplitScalar::Quaternion(H::one());
        assert_eq!(a.mul(&b), Err(AlgebraError::Mixed("split-complex", "split-quaternion")));
    }

    #[test]
    fn null_coords_round_trip() {
        let z = SplitComplex::new(q(3, 2), q(-5, 7));
        let (p, m) = z.null_coords();
        assert_eq!(SplitComplex::from_null_coords(p, m), z);
    }
}
