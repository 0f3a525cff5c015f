//! `sl2`, its Verma modules `M_λ`, and the operators `Ω^{ij}` on weight
//! spaces of tensor powers `M_λ^{⊗n}`.
//!
//! Everything is computed on the finite graded pieces
//! `W_m = W[nλ - 2m]`, spanned by `F^{j_1}v_λ ⊗ … ⊗ F^{j_n}v_λ` with
//! `j_1 + … + j_n = m`. The scalar type is any [`Field`]: exact rationals for
//! algebraic identities, complex doubles for the KZ numerics.
//!
//! Normalization: `Ω` is the Casimir tensor of the Killing form,
//! `Ω = H⊗H/8 + (E⊗F + F⊗E)/4`. The trace form convention is four times
//! larger; rescale `h` accordingly when comparing with such sources.
//!
//! Operator matrices are indexed `[target][source]` and act on column
//! vectors of coordinates in a [`WeightBasis`].

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::ring::linalg::{self, Kernel};
use crate::ring::{Field, Matrix, Ring, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Sl2Error {
    #[error("legs must satisfy 1 <= i < j <= n, got i={i}, j={j}, n={n}")]
    LegRange { i: usize, j: usize, n: usize },
    #[error("need at least one tensor factor")]
    NoLegs,
    #[error("degenerate highest weight at m={m}: {}", degenerate_reason(*.excluded_weight, *.dim, *.expected))]
    Degenerate { m: usize, dim: usize, expected: usize, excluded_weight: bool },
    #[error(transparent)]
    Ring(#[from] RingError),
}

fn degenerate_reason(excluded_weight: bool, dim: usize, expected: usize) -> String {
    if excluded_weight {
        String::from("lambda is an integer in 0..=2m")
    } else {
        format!("nullspace has dimension {dim} instead of {expected}")
    }
}

/// Chevalley basis of `sl2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    H,
    E,
    F,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::H, Generator::E, Generator::F];

    /// Position in the ordered basis `(H, E, F)`.
    pub fn index(self) -> usize {
        match self {
            Generator::H => 0,
            Generator::E => 1,
            Generator::F => 2,
        }
    }

    /// Change of lowering degree: `E` lowers `m` by one, `F` raises it.
    pub fn degree_shift(self) -> isize {
        match self {
            Generator::H => 0,
            Generator::E => -1,
            Generator::F => 1,
        }
    }
}

/// `[x, y]` in coordinates `(H, E, F)`, from
/// `[H,E] = 2E`, `[H,F] = -2F`, `[E,F] = H`.
pub fn bracket(x: Generator, y: Generator) -> [i64; 3] {
    use Generator::*;
    match (x, y) {
        (H, E) => [0, 2, 0],
        (H, F) => [0, 0, -2],
        (E, F) => [1, 0, 0],
        (E, H) => [0, -2, 0],
        (F, H) => [0, 0, 2],
        (F, E) => [-1, 0, 0],
        _ => [0, 0, 0],
    }
}

/// Matrix of `ad x` in the basis `(H, E, F)`; column `b` holds `[x, I_b]`.
pub fn ad_matrix(x: Generator) -> [[i64; 3]; 3] {
    let mut m = [[0; 3]; 3];
    for y in Generator::ALL {
        let col = bracket(x, y);
        for (r, v) in col.iter().enumerate() {
            m[r][y.index()] = *v;
        }
    }
    m
}

/// Killing form `κ(x, y) = tr(ad x ∘ ad y)` on `(H, E, F)`.
pub fn killing_form() -> [[i64; 3]; 3] {
    let mut k = [[0; 3]; 3];
    for x in Generator::ALL {
        for y in Generator::ALL {
            let (a, b) = (ad_matrix(x), ad_matrix(y));
            k[x.index()][y.index()] = (0..3).map(|i| (0..3).map(|l| a[i][l] * b[l][i]).sum::<i64>()).sum();
        }
    }
    k
}

/// Coefficients of `Ω` on `H⊗H`, `E⊗F` and `F⊗E`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaCoefficients {
    pub hh: BigRational,
    pub ef: BigRational,
    pub fe: BigRational,
}

/// `Ω = Σ κ^{ab} I_a ⊗ I_b` with `κ^{ab}` the inverse Killing matrix.
pub fn omega_constant() -> OmegaCoefficients {
    let k = killing_form();
    let km = Matrix::from_fn(3, 3, |r, c| BigRational::from_integer(BigInt::from(k[r][c])));
    let inv = linalg::invert(&km).expect("the Killing form of sl2 is nondegenerate");
    let (h, e, f) = (Generator::H.index(), Generator::E.index(), Generator::F.index());
    OmegaCoefficients { hh: inv.get(h, h).clone(), ef: inv.get(e, f).clone(), fe: inv.get(f, e).clone() }
}

fn rational_scalar<T: Field>(q: &BigRational) -> T {
    let num = q.numer().to_i64().expect("small structure constant");
    let den = q.denom().to_i64().expect("small structure constant");
    T::from_ratio(num, den)
}

/// Highest weight `λ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Sl2Param<T> {
    pub lambda: T,
}

/// Distance below which a floating-point `λ` counts as an integer.
pub const GENERIC_TOLERANCE: f64 = 1e-9;

impl<T: Field> Sl2Param<T> {
    pub fn new(lambda: T) -> Self {
        Sl2Param { lambda }
    }

    /// `λ ∉ {0, 1, …, 2m}`.
    pub fn is_generic(&self, m: usize) -> bool {
        (0..=2 * m as i64).all(|k| {
            let d = self.lambda.minus(&T::from_i64(k));
            if T::EXACT {
                !d.is_zero()
            } else {
                d.magnitude() > GENERIC_TOLERANCE
            }
        })
    }

    fn weight(&self, j: usize) -> T {
        self.lambda.minus(&T::from_i64(2 * j as i64))
    }

    fn raising_coefficient(&self, j: usize) -> T {
        // j(λ - j + 1)
        let j = j as i64;
        T::from_i64(j).times(&self.lambda.minus(&T::from_i64(j - 1)))
    }
}

/// Action of a generator on `F^j v_λ`; `None` when the result is zero.
pub fn verma_act<T: Field>(g: Generator, j: usize, p: &Sl2Param<T>) -> Option<(usize, T)> {
    let (target, c) = match g {
        Generator::H => (j, p.weight(j)),
        Generator::E if j == 0 => return None,
        Generator::E => (j - 1, p.raising_coefficient(j)),
        Generator::F => (j + 1, T::one()),
    };
    (!c.is_zero()).then_some((target, c))
}

/// `x_1 x_2 … x_k · F^j v_λ` (rightmost acts first).
pub fn verma_apply_word<T: Field>(word: &[Generator], j: usize, p: &Sl2Param<T>) -> Option<(usize, T)> {
    let mut state = (j, T::one());
    for &g in word.iter().rev() {
        let (next, c) = verma_act(g, state.0, p)?;
        state = (next, state.1.times(&c));
    }
    Some(state)
}

/// `(λ² + 2λ)/8`.
pub fn casimir_eigenvalue<T: Field>(p: &Sl2Param<T>) -> T {
    let l = &p.lambda;
    l.times(l).plus(&T::from_i64(2).times(l)).times(&T::from_ratio(1, 8))
}

/// `C = H²/8 + (EF + FE)/4` applied to `F^j v_λ` term by term via
/// [`verma_act`]; returns the coefficient of `F^j v_λ` and whether every
/// other coefficient vanished.
pub fn casimir_on_verma<T: Field>(j: usize, p: &Sl2Param<T>) -> (T, bool) {
    use Generator::*;
    let omega = omega_constant();
    let terms: [(&[Generator], T); 3] = [
        (&[H, H], rational_scalar(&omega.hh)),
        (&[E, F], rational_scalar(&omega.ef)),
        (&[F, E], rational_scalar(&omega.fe)),
    ];
    let mut acc: BTreeMap<usize, T> = BTreeMap::new();
    for (word, coeff) in terms {
        if let Some((t, c)) = verma_apply_word(word, j, p) {
            let slot = acc.entry(t).or_insert_with(T::zero);
            *slot = slot.plus(&c.times(&coeff));
        }
    }
    let diag = acc.remove(&j).unwrap_or_else(T::zero);
    (diag, acc.values().all(|c| c.is_zero()))
}

/// `C(n, k)`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Ordered basis of `W_m` in `M_λ^{⊗n}`: compositions `(j_1, …, j_n)` of `m`
/// in ascending lexicographic order, leftmost leg most significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightBasis {
    n: usize,
    m: usize,
    indices: Vec<Vec<usize>>,
    lookup: BTreeMap<Vec<usize>, usize>,
}

fn compositions(n: usize, m: usize) -> Vec<Vec<usize>> {
    if n == 1 {
        return vec![vec![m]];
    }
    let mut out = Vec::new();
    for first in 0..=m {
        for mut rest in compositions(n - 1, m - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl WeightBasis {
    pub fn new(n: usize, m: usize) -> Result<Self, Sl2Error> {
        if n == 0 {
            return Err(Sl2Error::NoLegs);
        }
        let indices = compositions(n, m);
        let lookup = indices.iter().cloned().enumerate().map(|(k, j)| (j, k)).collect();
        Ok(WeightBasis { n, m, indices, lookup })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[Vec<usize>] {
        &self.indices
    }

    pub fn index_of(&self, j: &[usize]) -> Option<usize> {
        self.lookup.get(j).copied()
    }
}

/// `W_m` for `M_λ^{⊗n}`; the basis does not depend on `λ`.
pub fn weight_space_basis(n: usize, m: usize) -> Result<WeightBasis, Sl2Error> {
    WeightBasis::new(n, m)
}

/// `g` acting on leg `leg` (1-based) of one basis multi-index.
pub fn leg_act<T: Field>(g: Generator, leg: usize, j: &[usize], p: &Sl2Param<T>) -> Option<(Vec<usize>, T)> {
    let (t, c) = verma_act(g, j[leg - 1], p)?;
    let mut out = j.to_vec();
    out[leg - 1] = t;
    Some((out, c))
}

/// Leibniz action `Δ^n(g) = Σ_k g_k` on a vector of `W_m`. Returns the
/// target basis and coordinates, or `None` for `E` on `W_0`, whose image is
/// the zero vector.
pub fn tensor_act<T: Field>(
    g: Generator,
    basis: &WeightBasis,
    v: &[T],
    p: &Sl2Param<T>,
) -> Option<(WeightBasis, Vec<T>)> {
    let target_m = basis.m.checked_add_signed(g.degree_shift())?;
    let target = WeightBasis::new(basis.n, target_m).ok()?;
    let mut out = vec![T::zero(); target.len()];
    for (src, x) in basis.indices.iter().zip(v) {
        if x.is_zero() {
            continue;
        }
        for leg in 1..=basis.n {
            if let Some((t, c)) = leg_act(g, leg, src, p) {
                let k = target.index_of(&t).expect("degree bookkeeping");
                out[k] = out[k].plus(&c.times(x));
            }
        }
    }
    Some((target, out))
}

fn operator_from<T: Field>(n: usize, m: usize, g: Generator, legs: &[usize], p: &Sl2Param<T>) -> Option<Matrix<T>> {
    let target_m = m.checked_add_signed(g.degree_shift())?;
    let src = WeightBasis::new(n, m).ok()?;
    let dst = WeightBasis::new(n, target_m).ok()?;
    let mut out: Matrix<T> = Matrix::zeros(dst.len(), src.len());
    for (c, j) in src.indices.iter().enumerate() {
        for &leg in legs {
            if let Some((t, coeff)) = leg_act(g, leg, j, p) {
                let r = dst.index_of(&t).expect("degree bookkeeping");
                let v = out.get(r, c).plus(&coeff);
                out.set(r, c, v);
            }
        }
    }
    Some(out)
}

/// Matrix `W_m → W_{m + shift(g)}` of `g` acting on one leg, or `None` when
/// the target degree is negative.
pub fn leg_operator<T: Field>(n: usize, m: usize, g: Generator, leg: usize, p: &Sl2Param<T>) -> Option<Matrix<T>> {
    assert!(1 <= leg && leg <= n, "leg out of range");
    operator_from(n, m, g, &[leg], p)
}

/// Matrix `W_m → W_{m + shift(g)}` of the diagonal action `Δ^n(g)`.
pub fn total_operator<T: Field>(n: usize, m: usize, g: Generator, p: &Sl2Param<T>) -> Option<Matrix<T>> {
    let legs: Vec<usize> = (1..=n).collect();
    operator_from(n, m, g, &legs, p)
}

/// `Ω^{ij}` on `W_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct OmegaMatrix<T> {
    pub i: usize,
    pub j: usize,
    pub block: Matrix<T>,
}

pub fn omega_matrix<T: Field>(
    n: usize,
    i: usize,
    j: usize,
    p: &Sl2Param<T>,
    m: usize,
) -> Result<OmegaMatrix<T>, Sl2Error> {
    if !(1 <= i && i < j && j <= n) {
        return Err(Sl2Error::LegRange { i, j, n });
    }
    let omega = omega_constant();
    let (hh, ef, fe): (T, T, T) = (rational_scalar(&omega.hh), rational_scalar(&omega.ef), rational_scalar(&omega.fe));
    let basis = WeightBasis::new(n, m)?;
    let mut block: Matrix<T> = Matrix::zeros(basis.len(), basis.len());
    let mut add = |r: usize, c: usize, v: T| {
        let x = block.get(r, c).plus(&v);
        block.set(r, c, x);
    };
    for (c, jj) in basis.indices.iter().enumerate() {
        let (a, b) = (jj[i - 1], jj[j - 1]);
        add(c, c, hh.times(&p.weight(a)).times(&p.weight(b)));
        // E on leg i after F on leg j
        if a > 0 {
            let mut t = jj.clone();
            t[i - 1] -= 1;
            t[j - 1] += 1;
            add(basis.index_of(&t).unwrap(), c, ef.times(&p.raising_coefficient(a)));
        }
        // F on leg i after E on leg j
        if b > 0 {
            let mut t = jj.clone();
            t[i - 1] += 1;
            t[j - 1] -= 1;
            add(basis.index_of(&t).unwrap(), c, fe.times(&p.raising_coefficient(b)));
        }
    }
    Ok(OmegaMatrix { i, j, block })
}

/// All `Ω^{ij}`, `i < j`, in the order `(1,2), (1,3), …, (n-1,n)`.
pub fn omega_matrices<T: Field>(n: usize, p: &Sl2Param<T>, m: usize) -> Result<Vec<OmegaMatrix<T>>, Sl2Error> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            out.push(omega_matrix(n, i, j, p, m)?);
        }
    }
    Ok(out)
}

/// Operator `P_{i,i+1}` swapping legs `i` and `i+1` of a weight space.
pub fn swap_legs<T: Ring>(basis: &WeightBasis, i: usize) -> Matrix<T> {
    assert!(1 <= i && i < basis.n, "swap index out of range");
    let mut out = Matrix::zeros(basis.len(), basis.len());
    for (c, j) in basis.indices.iter().enumerate() {
        let mut t = j.clone();
        t.swap(i - 1, i);
        out.set(basis.index_of(&t).unwrap(), c, T::one());
    }
    out
}

/// `dim N_m` for generic `λ`: `C(m+n-1, n-1) - C(m+n-2, n-1)` for `m ≥ 1`.
pub fn generic_null_dim(n: usize, m: usize) -> usize {
    let w = binomial(m + n - 1, n - 1);
    if m == 0 {
        w
    } else {
        w - binomial(m + n - 2, n - 1)
    }
}

/// `N_m = W_m ∩ ker E`.
#[derive(Debug, Clone)]
pub struct Nullspace<T> {
    pub basis: WeightBasis,
    pub kernel: Kernel<T>,
    pub generic_dim: usize,
    pub generic_lambda: bool,
}

impl<T: Field> Nullspace<T> {
    pub fn dim(&self) -> usize {
        self.kernel.dim()
    }

    /// The rank of `E` dropped below its generic value, or `λ` is one of
    /// the excluded integers.
    pub fn degenerate(&self) -> bool {
        !self.generic_lambda || self.dim() != self.generic_dim
    }

    pub fn require_generic(self) -> Result<Self, Sl2Error> {
        if self.degenerate() {
            Err(Sl2Error::Degenerate {
                m: self.basis.m,
                dim: self.dim(),
                expected: self.generic_dim,
                excluded_weight: !self.generic_lambda,
            })
        } else {
            Ok(self)
        }
    }
}

/// Kernel of `Δ^n(E): W_m → W_{m-1}`, computed by Gaussian elimination.
pub fn nullspace_basis<T: Field>(n: usize, p: &Sl2Param<T>, m: usize) -> Result<Nullspace<T>, Sl2Error> {
    let basis = WeightBasis::new(n, m)?;
    let e = total_operator(n, m, Generator::E, p).unwrap_or_else(|| Matrix::zeros(1, basis.len()));
    Ok(Nullspace {
        kernel: linalg::kernel(&e),
        generic_dim: generic_null_dim(n, m),
        generic_lambda: p.is_generic(m),
        basis,
    })
}

fn vanishes<T: Ring>(m: &Matrix<T>, scale: f64) -> bool {
    if T::EXACT {
        m.is_zero()
    } else {
        m.max_abs() <= linalg::NUMERIC_ZERO * scale.max(1.0)
    }
}

fn lookup<T>(all: &[OmegaMatrix<T>], a: usize, b: usize) -> &Matrix<T> {
    let (i, j) = if a < b { (a, b) } else { (b, a) };
    &all.iter().find(|o| o.i == i && o.j == j).expect("pair present").block
}

/// Kohno-Drinfeld relations on `W_m`: `[Ω^{ij}, Ω^{kl}] = 0` for disjoint
/// pairs and `[Ω^{ij}, Ω^{ik} + Ω^{jk}] = 0` for distinct `i, j, k`.
pub fn kd_relation_check<T: Field>(n: usize, p: &Sl2Param<T>, m: usize) -> Result<bool, Sl2Error> {
    let all = omega_matrices(n, p, m)?;
    let biggest = all.iter().map(|o| o.block.max_abs()).fold(0.0, f64::max);
    let scale = biggest * biggest;
    for a in &all {
        for b in &all {
            let disjoint = a.i != b.i && a.i != b.j && a.j != b.i && a.j != b.j;
            if disjoint && !vanishes(&a.block.commutator(&b.block)?, scale) {
                return Ok(false);
            }
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                if i == j || j == k || i == k {
                    continue;
                }
                let sum = lookup(&all, i, k).checked_add(lookup(&all, j, k))?;
                if !vanishes(&lookup(&all, i, j).commutator(&sum)?, scale) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `Σ_{i<j} Ω^{ij}` commutes with every `Ω^{kl}`.
pub fn total_omega_central_check<T: Field>(n: usize, p: &Sl2Param<T>, m: usize) -> Result<bool, Sl2Error> {
    let all = omega_matrices(n, p, m)?;
    let Some(first) = all.first() else {
        return Ok(true);
    };
    let mut total = Matrix::zeros(first.block.rows(), first.block.cols());
    for o in &all {
        total = total.checked_add(&o.block)?;
    }
    let scale = total.max_abs() * total.max_abs();
    for o in &all {
        if !vanishes(&total.commutator(&o.block)?, scale) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Ω^{ij}` intertwines `Δ^n(x)` for `x ∈ {H, E, F}` between adjacent graded
/// pieces, and maps `N_m` into itself.
pub fn equivariance_check<T: Field>(n: usize, p: &Sl2Param<T>, m: usize) -> Result<bool, Sl2Error> {
    if n < 2 {
        return Ok(true);
    }
    let here = omega_matrices(n, p, m)?;
    let up = omega_matrices(n, p, m + 1)?;
    let down = if m > 0 { Some(omega_matrices(n, p, m - 1)?) } else { None };
    let h = total_operator(n, m, Generator::H, p).unwrap();
    let f = total_operator(n, m, Generator::F, p).unwrap();
    let e = total_operator(n, m, Generator::E, p);
    let null = nullspace_basis(n, p, m)?;
    let scale = here.iter().map(|o| o.block.max_abs()).fold(0.0, f64::max) * (f.max_abs() + h.max_abs() + 1.0);
    for (k, o) in here.iter().enumerate() {
        if !vanishes(&o.block.commutator(&h)?, scale) {
            return Ok(false);
        }
        let df = up[k].block.checked_mul(&f)?.checked_sub(&f.checked_mul(&o.block)?)?;
        if !vanishes(&df, scale) {
            return Ok(false);
        }
        if let (Some(e), Some(down)) = (&e, &down) {
            let de = down[k].block.checked_mul(e)?.checked_sub(&e.checked_mul(&o.block)?)?;
            if !vanishes(&de, scale) {
                return Ok(false);
            }
        }
        if null.dim() > 0 {
            let leak = null.kernel.leakage(&o.block)?;
            let ok = if T::EXACT { leak == 0.0 } else { leak <= linalg::NUMERIC_ZERO * scale.max(1.0) };
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Casimir operator `H²/8 + (EF + FE)/4` on `W_m`, either for the diagonal
/// action (`leg = None`) or for a single leg.
pub fn casimir_operator<T: Field>(n: usize, m: usize, leg: Option<usize>, p: &Sl2Param<T>) -> Matrix<T> {
    let op = |m: usize, g: Generator| match leg {
        Some(l) => leg_operator(n, m, g, l, p),
        None => total_operator(n, m, g, p),
    };
    let omega = omega_constant();
    let h = op(m, Generator::H).unwrap();
    let mut c = (&h * &h).scale(&rational_scalar(&omega.hh));
    // E F: W_m → W_{m+1} → W_m
    let ef = &op(m + 1, Generator::E).unwrap() * &op(m, Generator::F).unwrap();
    c = &c + &ef.scale(&rational_scalar(&omega.ef));
    if m > 0 {
        let fe = &op(m - 1, Generator::F).unwrap() * &op(m, Generator::E).unwrap();
        c = &c + &fe.scale(&rational_scalar(&omega.fe));
    }
    c
}

/// `Δ^n(C) - Σ_k C_k = 2 Σ_{i<j} Ω^{ij}` on `W_m`.
pub fn coproduct_casimir_check<T: Field>(n: usize, p: &Sl2Param<T>, m: usize) -> Result<bool, Sl2Error> {
    let mut lhs = casimir_operator(n, m, None, p);
    for leg in 1..=n {
        lhs = lhs.checked_sub(&casimir_operator(n, m, Some(leg), p))?;
    }
    let mut rhs = Matrix::zeros(lhs.rows(), lhs.cols());
    for o in omega_matrices(n, p, m)? {
        rhs = rhs.checked_add(&o.block.scale(&T::from_i64(2)))?;
    }
    let scale = rhs.max_abs();
    Ok(vanishes(&lhs.checked_sub(&rhs)?, scale))
}
