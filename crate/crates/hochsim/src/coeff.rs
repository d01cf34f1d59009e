//! Exact coefficient rings and the integer linear algebra that turns
//! differential matrices into cohomology groups.
//!
//! Everything here is exact: arbitrary-precision integers, canonical residues
//! mod m, reduced fractions. No floating point anywhere.

use std::cmp::min;
use std::fmt;

use num::bigint::{BigInt, Sign};
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};
use rand::Rng;
use serde::Serialize;

use crate::Error;

/// The coefficient ring k. Elements of `Mod(m)` are canonical residues in
/// `[0, m)`; rationals are kept in lowest terms with positive denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ring {
    Integers,
    Mod(u64),
    Rationals,
}

/// An exact scalar in some ambient [`Ring`]. `Int` carries both integers and
/// canonical residues; `Rat` is only produced by [`Ring::Rationals`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Int(BigInt),
    Rat(BigRational),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Int(v) => v.is_zero(),
            Scalar::Rat(v) => v.is_zero(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(v) => write!(f, "{v}"),
            Scalar::Rat(v) => write!(f, "{v}"),
        }
    }
}

impl Ring {
    /// Smart constructor for ℤ/m; rejects m < 2.
    pub fn modular(m: u64) -> Result<Ring, Error> {
        if m < 2 {
            Err(Error::BadModulus(m))
        } else {
            Ok(Ring::Mod(m))
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Ring::Rationals => Scalar::Rat(BigRational::zero()),
            _ => Scalar::Int(BigInt::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Ring::Rationals => Scalar::Rat(BigRational::one()),
            _ => Scalar::Int(BigInt::one()),
        }
    }

    pub fn from_int(&self, v: i64) -> Scalar {
        self.normalize(Scalar::Int(BigInt::from(v)))
    }

    pub fn normalize(&self, s: Scalar) -> Scalar {
        match (self, s) {
            (Ring::Mod(m), Scalar::Int(v)) => {
                let m = BigInt::from(*m);
                Scalar::Int(v.mod_floor(&m))
            }
            (Ring::Rationals, Scalar::Int(v)) => Scalar::Rat(BigRational::from_integer(v)),
            (_, s) => s,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.normalize(match (a, b) {
            (Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(x + y),
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            _ => panic!("mixed scalar variants"),
        })
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        self.normalize(match a {
            Scalar::Int(x) => Scalar::Int(-x),
            Scalar::Rat(x) => Scalar::Rat(-x),
        })
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.normalize(match (a, b) {
            (Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(x * y),
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            _ => panic!("mixed scalar variants"),
        })
    }

    /// Multiply by an integer sign/coefficient, e.g. (-1)^i factors.
    pub fn mul_int(&self, a: &Scalar, c: i64) -> Scalar {
        self.mul(a, &self.from_int(c))
    }

    pub fn is_idempotent(&self, a: &Scalar) -> bool {
        self.mul(a, a) == *a
    }

    /// Canonical integer lift: residues and integers as-is, rationals only
    /// when the denominator is 1. Differential matrices are assembled from
    /// structure constants, which always lift.
    pub fn lift(&self, a: &Scalar) -> BigInt {
        match a {
            Scalar::Int(v) => v.clone(),
            Scalar::Rat(v) => {
                assert!(v.denom().is_one(), "non-integer scalar in a differential");
                v.numer().clone()
            }
        }
    }

    /// Solve λ·a = x for λ, if possible. Used by the autopoietic predicate.
    pub fn divide_exact(&self, x: &Scalar, a: &Scalar) -> Option<Scalar> {
        if a.is_zero() {
            return if x.is_zero() { Some(self.zero()) } else { None };
        }
        match (self, x, a) {
            (Ring::Integers, Scalar::Int(x), Scalar::Int(a)) => {
                let (q, r) = x.div_rem(a);
                if r.is_zero() {
                    Some(Scalar::Int(q))
                } else {
                    None
                }
            }
            (Ring::Rationals, Scalar::Rat(x), Scalar::Rat(a)) => Some(Scalar::Rat(x / a)),
            (Ring::Mod(m), Scalar::Int(x), Scalar::Int(a)) => {
                // λ·a ≡ x (mod m) solvable iff gcd(a, m) | x
                let m_big = BigInt::from(*m);
                let e = a.extended_gcd(&m_big);
                let (q, r) = x.div_rem(&e.gcd);
                if !r.is_zero() {
                    return None;
                }
                Some(self.normalize(Scalar::Int(e.x * q)))
            }
            _ => panic!("mixed scalar variants"),
        }
    }

    /// Small random scalar, used by the randomized identity checks.
    pub fn random<R: Rng>(&self, rng: &mut R) -> Scalar {
        match self {
            Ring::Integers => Scalar::Int(BigInt::from(rng.gen_range(-9i64..=9))),
            Ring::Mod(m) => Scalar::Int(BigInt::from(rng.gen_range(0..*m))),
            Ring::Rationals => {
                let n = BigInt::from(rng.gen_range(-9i64..=9));
                let d = BigInt::from(rng.gen_range(1i64..=4));
                Scalar::Rat(BigRational::new(n, d))
            }
        }
    }
}

/// Dense matrix over ℤ, the carrier of every differential in the artifact.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = IntMat::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, v) in row.iter().enumerate() {
                m.data[i * c + j] = BigInt::from(*v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &BigInt) {
        let e = &mut self.data[r * self.cols + c];
        *e += v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "matrix shapes not composable");
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let e = &mut out.data[i * other.cols + j];
                        *e += a * b;
                    }
                }
            }
        }
        out
    }

    /// [self | other] side by side.
    pub fn hstack(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.rows, other.rows);
        let mut out = IntMat::zero(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i * out.cols + j] = self.get(i, j).clone();
            }
            for j in 0..other.cols {
                out.data[i * out.cols + self.cols + j] = other.get(i, j).clone();
            }
        }
        out
    }

    /// First `n` rows as a matrix.
    pub fn top_rows(&self, n: usize) -> IntMat {
        assert!(n <= self.rows);
        IntMat { rows: n, cols: self.cols, data: self.data[..n * self.cols].to_vec() }
    }

    /// Columns `from..` as a matrix.
    pub fn columns_from(&self, from: usize) -> IntMat {
        assert!(from <= self.cols);
        let c = self.cols - from;
        let mut out = IntMat::zero(self.rows, c);
        for i in 0..self.rows {
            for j in 0..c {
                out.data[i * c + j] = self.get(i, from + j).clone();
            }
        }
        out
    }

    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> IntMat {
        assert_eq!(row_perm.len(), self.rows);
        assert_eq!(col_perm.len(), self.cols);
        let mut out = IntMat::zero(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i * self.cols + j] = self.get(row_perm[i], col_perm[j]).clone();
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += c * row[src]; skips zero entries of the source row.
    fn row_axpy(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = self.data[src * self.cols + j].clone();
            if !s.is_zero() {
                self.data[dst * self.cols + j] += c * s;
            }
        }
    }

    /// col[dst] += c * col[src].
    fn col_axpy(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = self.data[i * self.cols + src].clone();
            if !s.is_zero() {
                self.data[i * self.cols + dst] += c * s;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let e = &mut self.data[r * self.cols + j];
            *e = -std::mem::take(e);
        }
    }
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Smith normal form U·A·V = S with U, V unimodular and S diagonal with a
/// divisibility chain d₁ | d₂ | …, zeros last.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMat,
    pub s: IntMat,
    pub v: IntMat,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..min(self.s.rows, self.s.cols)).map(|i| self.s.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

pub fn smith_normal_form(a: &IntMat) -> SmithForm {
    let (s, u, v) = smith_reduce(a.clone(), true);
    SmithForm { u: u.unwrap(), s, v: v.unwrap() }
}

/// Diagonal of the Smith form without transform bookkeeping.
pub fn smith_diagonal(a: &IntMat) -> Vec<BigInt> {
    let (s, _, _) = smith_reduce(a.clone(), false);
    (0..min(s.rows, s.cols)).map(|i| s.get(i, i).clone()).collect()
}

/// Rank of an integer matrix (over ℤ, equivalently over ℚ).
pub fn rank(a: &IntMat) -> usize {
    smith_diagonal(a).iter().filter(|d| !d.is_zero()).count()
}

/// Basis of ker(A) as the columns of an integer matrix. The basis is
/// primitive: it extends to a basis of the ambient lattice.
pub fn kernel_basis(a: &IntMat) -> IntMat {
    let snf = smith_normal_form(a);
    snf.v.columns_from(snf.rank())
}

fn smith_reduce(mut s: IntMat, track: bool) -> (IntMat, Option<IntMat>, Option<IntMat>) {
    let (rows, cols) = (s.rows, s.cols);
    let mut u = if track { Some(IntMat::identity(rows)) } else { None };
    let mut v = if track { Some(IntMat::identity(cols)) } else { None };
    let mut k = 0;
    while k < min(rows, cols) {
        // pivot: minimal nonzero |entry| in the trailing block
        let Some((pi, pj)) = pivot_min_abs(&s, k) else { break };
        s.swap_rows(k, pi);
        s.swap_cols(k, pj);
        if let Some(u) = u.as_mut() {
            u.swap_rows(k, pi);
        }
        if let Some(v) = v.as_mut() {
            v.swap_cols(k, pj);
        }
        loop {
            // clear column k by Euclidean descent
            let mut again = true;
            while again {
                again = false;
                for i in k + 1..rows {
                    if s.get(i, k).is_zero() {
                        continue;
                    }
                    let q = -(s.get(i, k) / s.get(k, k));
                    s.row_axpy(i, k, &q);
                    if let Some(u) = u.as_mut() {
                        u.row_axpy(i, k, &q);
                    }
                    if !s.get(i, k).is_zero() {
                        // remainder is strictly smaller: promote it to pivot
                        s.swap_rows(i, k);
                        if let Some(u) = u.as_mut() {
                            u.swap_rows(i, k);
                        }
                        again = true;
                    }
                }
            }
            // clear row k
            let mut col_dirty = false;
            let mut again = true;
            while again {
                again = false;
                for j in k + 1..cols {
                    if s.get(k, j).is_zero() {
                        continue;
                    }
                    let q = -(s.get(k, j) / s.get(k, k));
                    s.col_axpy(j, k, &q);
                    if let Some(v) = v.as_mut() {
                        v.col_axpy(j, k, &q);
                    }
                    if !s.get(k, j).is_zero() {
                        s.swap_cols(j, k);
                        if let Some(v) = v.as_mut() {
                            v.swap_cols(j, k);
                        }
                        again = true;
                        col_dirty = true;
                    }
                }
            }
            // column swaps above can reintroduce entries below the pivot
            if !col_dirty || (k + 1..rows).all(|i| s.get(i, k).is_zero()) {
                break;
            }
        }
        // enforce the divisibility chain: d_k must divide the trailing block
        if let Some((i, _)) = find_nondivisible(&s, k) {
            let one = BigInt::one();
            s.row_axpy(k, i, &one);
            if let Some(u) = u.as_mut() {
                u.row_axpy(k, i, &one);
            }
            continue; // redo position k with the contaminated row
        }
        if s.get(k, k).sign() == Sign::Minus {
            s.negate_row(k);
            if let Some(u) = u.as_mut() {
                u.negate_row(k);
            }
        }
        k += 1;
    }
    (s, u, v)
}

fn pivot_min_abs(s: &IntMat, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    let mut best_abs: Option<BigInt> = None;
    for i in k..s.rows {
        for j in k..s.cols {
            let e = s.get(i, j);
            if e.is_zero() {
                continue;
            }
            let a = e.abs();
            if best_abs.as_ref().map_or(true, |b| a < *b) {
                if a.is_one() {
                    return Some((i, j));
                }
                best_abs = Some(a);
                best = Some((i, j));
            }
        }
    }
    best
}

fn find_nondivisible(s: &IntMat, k: usize) -> Option<(usize, usize)> {
    let d = s.get(k, k);
    for i in k + 1..s.rows {
        for j in k + 1..s.cols {
            if !s.get(i, j).mod_floor(d).is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

/// Rank of the mod-p reduction, p prime. Gaussian elimination over GF(p).
pub fn rank_mod_p(a: &IntMat, p: u64) -> usize {
    let pb = BigInt::from(p);
    let to_res = |v: &BigInt| -> u64 {
        let r = v.mod_floor(&pb);
        let (_, digits) = r.to_u64_digits();
        *digits.first().unwrap_or(&0)
    };
    let mut m: Vec<Vec<u64>> =
        (0..a.rows).map(|i| (0..a.cols).map(|j| to_res(a.get(i, j))).collect()).collect();
    let (rows, cols) = (a.rows, a.cols);
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        let Some(piv) = (row..rows).find(|&i| m[i][col] != 0) else { continue };
        m.swap(row, piv);
        let inv = mod_inverse(m[row][col], p);
        for j in col..cols {
            m[row][j] = mulmod(m[row][j], inv, p);
        }
        for i in 0..rows {
            if i != row && m[i][col] != 0 {
                let f = m[i][col];
                for j in col..cols {
                    let t = mulmod(f, m[row][j], p);
                    m[i][j] = (m[i][j] + p - t) % p;
                }
            }
        }
        row += 1;
        rank += 1;
        if row == rows {
            break;
        }
    }
    rank
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // extended Euclid; p prime and a != 0 mod p
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "not invertible");
    t.rem_euclid(p as i128) as u64
}

pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    if m % 2 == 0 {
        return m == 2;
    }
    let mut d = 3;
    while d * d <= m {
        if m % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Free rank plus invariant-factor torsion, the output currency of every
/// cohomology computation in the crate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyGroup {
    #[serde(rename = "free")]
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl CohomologyGroup {
    pub fn free(rank: usize) -> Self {
        CohomologyGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Multiset of prime-power components. Canonical form for comparing
    /// direct sums, where concatenated invariant factors would not be.
    pub fn primary_components(&self) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        for &d in &self.torsion {
            let mut d = d;
            let mut p = 2;
            while p * p <= d {
                if d % p == 0 {
                    let mut e = 0;
                    while d % p == 0 {
                        d /= p;
                        e += 1;
                    }
                    out.push((p, e));
                }
                p += 1;
            }
            if d > 1 {
                out.push((d, 1));
            }
        }
        out.sort_unstable();
        out
    }
}

impl fmt::Display for CohomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// ker(d_out)/im(d_in) at the middle of C^{n-1} → C^n → C^{n+1}.
///
/// Over ℤ the free rank comes from Smith ranks and the torsion from the
/// invariant factors of d_in. Over ℚ and ℤ/p (p prime) only ranks are needed.
/// Over composite ℤ/m the quotient lattice is computed explicitly from the
/// integer lifts, with m·Identity appended to d_in as relations.
pub fn cohomology_at(d_in: &IntMat, d_out: &IntMat, ring: Ring) -> Result<CohomologyGroup, Error> {
    if d_out.cols() != d_in.rows() {
        return Err(Error::ShapeMismatch(format!(
            "d_out is {}x{} but d_in has {} rows",
            d_out.rows(),
            d_out.cols(),
            d_in.rows()
        )));
    }
    check_composition_zero(d_in, d_out, ring)?;
    let c = d_in.rows();
    if c == 0 {
        return Ok(CohomologyGroup::free(0));
    }
    match ring {
        Ring::Integers => {
            let diag = smith_diagonal(d_in);
            let rank_in = diag.iter().filter(|d| !d.is_zero()).count();
            let rank_out = rank(d_out);
            let torsion = torsion_from_diagonal(&diag);
            Ok(CohomologyGroup { free_rank: c - rank_in - rank_out, torsion })
        }
        Ring::Rationals => {
            Ok(CohomologyGroup::free(c - rank(d_in) - rank(d_out)))
        }
        Ring::Mod(m) if is_prime(m) => {
            Ok(CohomologyGroup::free(c - rank_mod_p(d_in, m) - rank_mod_p(d_out, m)))
        }
        Ring::Mod(m) => cohomology_mod_composite(d_in, d_out, m),
    }
}

fn check_composition_zero(d_in: &IntMat, d_out: &IntMat, ring: Ring) -> Result<(), Error> {
    let prod = d_out.mul(d_in);
    for i in 0..prod.rows() {
        for j in 0..prod.cols() {
            let e = prod.get(i, j);
            let zero = match ring {
                Ring::Mod(m) => e.mod_floor(&BigInt::from(m)).is_zero(),
                _ => e.is_zero(),
            };
            if !zero {
                return Err(Error::CompositionNonzero { row: i, col: j });
            }
        }
    }
    Ok(())
}

fn torsion_from_diagonal(diag: &[BigInt]) -> Vec<u64> {
    diag.iter()
        .filter(|d| !d.is_zero() && !d.is_one())
        .map(|d| u64::try_from(d).expect("invariant factor exceeds u64"))
        .collect()
}

/// H over ℤ/m for composite m. With K = {x : d_out·x ≡ 0 mod m} and
/// S = im(d_in) + m·ℤ^c, the group is K/S; both are computed as explicit
/// lattices and the quotient read off a final Smith form.
fn cohomology_mod_composite(
    d_in: &IntMat,
    d_out: &IntMat,
    m: u64,
) -> Result<CohomologyGroup, Error> {
    let c = d_in.rows();
    let r = d_out.rows();
    let m_big = BigInt::from(m);

    // K from the kernel of [d_out | m·I_r]; the projection to the first c
    // coordinates is injective on that kernel, so columns form a basis of K.
    let mut scaled_id = IntMat::zero(r, r);
    for i in 0..r {
        scaled_id.set(i, i, m_big.clone());
    }
    let ext = d_out.hstack(&scaled_id);
    let ker = kernel_basis(&ext);
    let k_mat = ker.top_rows(c);
    assert_eq!(k_mat.cols(), c, "mod-m kernel must have full rank");

    // Solve K·X = [d_in | m·I_c]; the solution is integral since the target
    // columns lie in K.
    let mut rel_id = IntMat::zero(c, c);
    for i in 0..c {
        rel_id.set(i, i, m_big.clone());
    }
    let target = d_in.hstack(&rel_id);
    let snf_k = smith_normal_form(&k_mat);
    let mut w = snf_k.u.mul(&target);
    for i in 0..c {
        let d = snf_k.s.get(i, i).clone();
        assert!(!d.is_zero(), "mod-m kernel basis is singular");
        for j in 0..w.cols() {
            let (q, rem) = w.get(i, j).div_rem(&d);
            assert!(rem.is_zero(), "subgroup generator outside the kernel lattice");
            w.set(i, j, q);
        }
    }
    let x = snf_k.v.mul(&w);
    let diag = smith_diagonal(&x);
    let rank_x = diag.iter().filter(|d| !d.is_zero()).count();
    debug_assert_eq!(rank_x, c, "quotient by m·ℤ^c cannot have free part");
    Ok(CohomologyGroup { free_rank: 0, torsion: torsion_from_diagonal(&diag) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    #[test]
    fn snf_identity() {
        let a = IntMat::identity(2);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.s, IntMat::identity(2));
        assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.s);
    }

    #[test]
    fn snf_zero_1x1() {
        let a = IntMat::from_rows(&[vec![0]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.s, a);
    }

    #[test]
    fn snf_2x2_hand_reduced() {
        // d1 = gcd of entries = 2, d1*d2 = |det| = 8
        let a = IntMat::from_rows(&[vec![2, 4], vec![6, 8]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
        assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.s);
    }

    #[test]
    fn snf_empty_matrices() {
        for (r, c) in [(0, 0), (0, 3), (3, 0)] {
            let a = IntMat::zero(r, c);
            let snf = smith_normal_form(&a);
            assert_eq!(snf.s.rows(), r);
            assert_eq!(snf.s.cols(), c);
            assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.s);
        }
    }

    fn arb_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-9i64..=9, c), r)
        })
    }

    proptest! {
        #[test]
        fn snf_factorization_and_chain(rows in arb_matrix()) {
            let a = IntMat::from_rows(&rows);
            let snf = smith_normal_form(&a);
            prop_assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.s.clone());
            let diag = snf.diagonal();
            // divisibility chain, nonnegative, zeros last
            for w in diag.windows(2) {
                if w[0].is_zero() {
                    prop_assert!(w[1].is_zero());
                } else {
                    prop_assert!(w[1].mod_floor(&w[0]).is_zero());
                }
                prop_assert!(w[0].sign() != Sign::Minus);
            }
            // off-diagonal zero
            for i in 0..snf.s.rows() {
                for j in 0..snf.s.cols() {
                    if i != j {
                        prop_assert!(snf.s.get(i, j).is_zero());
                    }
                }
            }
        }

        #[test]
        fn snf_transforms_are_unimodular(rows in arb_matrix()) {
            // |det| = 1 exactly when the Smith form is the identity
            let a = IntMat::from_rows(&rows);
            let snf = smith_normal_form(&a);
            prop_assert!(smith_diagonal(&snf.u).iter().all(num::One::is_one));
            prop_assert!(smith_diagonal(&snf.v).iter().all(num::One::is_one));
        }

        #[test]
        fn kernel_basis_spans_kernel(rows in arb_matrix()) {
            let a = IntMat::from_rows(&rows);
            let k = kernel_basis(&a);
            prop_assert_eq!(k.cols(), a.cols() - rank(&a));
            prop_assert!(a.mul(&k).is_zero());
        }

        #[test]
        fn snf_invariant_under_permutation(rows in arb_matrix(), seed in 0u64..1000) {
            let a = IntMat::from_rows(&rows);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut rp: Vec<usize> = (0..a.rows()).collect();
            let mut cp: Vec<usize> = (0..a.cols()).collect();
            rp.shuffle(&mut rng);
            cp.shuffle(&mut rng);
            let b = a.permuted(&rp, &cp);
            prop_assert_eq!(smith_diagonal(&a), smith_diagonal(&b));
        }

        #[test]
        fn rank_agrees_with_mod_p_for_large_p(rows in arb_matrix()) {
            // entries are in [-9, 9], so minors are far below this prime
            let a = IntMat::from_rows(&rows);
            let r = rank(&a);
            prop_assert!(rank_mod_p(&a, 1_000_003) <= r);
        }
    }

    #[test]
    fn cohomology_examples_over_z() {
        // ker(×2)/0 = 0
        let d_in = IntMat::zero(1, 0);
        let d_out = IntMat::from_rows(&[vec![2]]);
        let h = cohomology_at(&d_in, &d_out, Ring::Integers).unwrap();
        assert_eq!(h, CohomologyGroup::free(0));

        // Z/im(×2) = Z/2
        let d_in = IntMat::from_rows(&[vec![2]]);
        let d_out = IntMat::zero(0, 1);
        let h = cohomology_at(&d_in, &d_out, Ring::Integers).unwrap();
        assert_eq!(h, CohomologyGroup { free_rank: 0, torsion: vec![2] });
        let d_out_square = IntMat::from_rows(&[vec![0]]);
        let h2 = cohomology_at(&d_in, &d_out_square, Ring::Integers).unwrap();
        assert_eq!(h, h2);

        // both maps zero on Z^3
        let d_in = IntMat::zero(3, 0);
        let d_out = IntMat::zero(0, 3);
        let h = cohomology_at(&d_in, &d_out, Ring::Integers).unwrap();
        assert_eq!(h, CohomologyGroup::free(3));
    }

    #[test]
    fn cohomology_free_rank_matches_rationals() {
        let d_in = IntMat::from_rows(&[vec![2, 0], vec![0, 0], vec![0, 3]]);
        let d_out = IntMat::zero(0, 3);
        let hz = cohomology_at(&d_in, &d_out, Ring::Integers).unwrap();
        let hq = cohomology_at(&d_in, &d_out, Ring::Rationals).unwrap();
        assert_eq!(hz.free_rank, hq.free_rank);
        // im{2e1, 3e3} gives Z/2 + Z/3 + Z, whose invariant-factor chain is [6]
        assert_eq!(hz.torsion, vec![6]);
        assert!(hq.torsion.is_empty());
    }

    #[test]
    fn cohomology_composition_checked() {
        let d_in = IntMat::from_rows(&[vec![1]]);
        let d_out = IntMat::from_rows(&[vec![1]]);
        match cohomology_at(&d_in, &d_out, Ring::Integers) {
            Err(Error::CompositionNonzero { .. }) => {}
            other => panic!("expected CompositionNonzero, got {other:?}"),
        }
        // ... but 2·2 = 4 ≡ 0 mod 4 is a valid complex over Z/4
        assert!(cohomology_at(&d_in, &d_out, Ring::Mod(4)).is_err());
        let two_in = IntMat::from_rows(&[vec![2]]);
        let two_out = IntMat::from_rows(&[vec![2]]);
        assert!(cohomology_at(&two_in, &two_out, Ring::Mod(4)).is_ok());
    }

    #[test]
    fn cohomology_mod_composite_lattice() {
        // Z/4 --2--> Z/4 --2--> Z/4 has H = ker(2)/im(2) = 0 in the middle
        let a = IntMat::from_rows(&[vec![2]]);
        let h = cohomology_at(&a, &a, Ring::Mod(4)).unwrap();
        assert!(h.is_trivial(), "{h:?}");

        // Z/4 --2--> Z/4 --0--> 0 has H = (Z/4)/2(Z/4) = Z/2
        let d_out = IntMat::zero(0, 1);
        let h = cohomology_at(&a, &d_out, Ring::Mod(4)).unwrap();
        assert_eq!(h, CohomologyGroup { free_rank: 0, torsion: vec![2] });

        // zero maps on (Z/6)^2
        let d_in = IntMat::zero(2, 0);
        let d_out = IntMat::zero(0, 2);
        let h = cohomology_at(&d_in, &d_out, Ring::Mod(6)).unwrap();
        assert_eq!(h, CohomologyGroup { free_rank: 0, torsion: vec![6, 6] });
    }

    #[test]
    fn cohomology_mod_prime_is_dimension() {
        let d_in = IntMat::from_rows(&[vec![2]]);
        let d_out = IntMat::zero(0, 1);
        // ×2 is zero mod 2, so H = Z/2 as a 1-dimensional vector space
        let h = cohomology_at(&d_in, &d_out, Ring::Mod(2)).unwrap();
        assert_eq!(h, CohomologyGroup::free(1));
        // ... and invertible mod 3
        let h = cohomology_at(&d_in, &d_out, Ring::Mod(3)).unwrap();
        assert_eq!(h, CohomologyGroup::free(0));
    }

    #[test]
    fn scalar_arithmetic_canonical() {
        let zm = Ring::Mod(5);
        let a = zm.from_int(-3);
        assert_eq!(a, zm.from_int(2));
        assert_eq!(zm.mul(&a, &zm.from_int(3)), zm.from_int(1));

        let q = Ring::Rationals;
        let half = match q.from_int(1) {
            Scalar::Rat(r) => Scalar::Rat(r / BigRational::from_integer(BigInt::from(2))),
            _ => unreachable!(),
        };
        assert_eq!(q.add(&half, &half), q.one());
    }

    #[test]
    fn divide_exact_cases() {
        let z = Ring::Integers;
        assert_eq!(z.divide_exact(&z.from_int(6), &z.from_int(3)), Some(z.from_int(2)));
        assert_eq!(z.divide_exact(&z.from_int(5), &z.from_int(3)), None);
        assert_eq!(z.divide_exact(&z.from_int(0), &z.from_int(0)), Some(z.from_int(0)));
        assert_eq!(z.divide_exact(&z.from_int(1), &z.from_int(0)), None);

        let z6 = Ring::Mod(6);
        // 3λ ≡ 3 has a solution mod 6
        let lam = z6.divide_exact(&z6.from_int(3), &z6.from_int(3)).unwrap();
        assert_eq!(z6.mul(&lam, &z6.from_int(3)), z6.from_int(3));
        // 3λ ≡ 2 does not
        assert_eq!(z6.divide_exact(&z6.from_int(2), &z6.from_int(3)), None);
    }

    #[test]
    fn modulus_validation() {
        assert!(Ring::modular(1).is_err());
        assert!(Ring::modular(2).is_ok());
    }

    #[test]
    fn primary_components_split_factors() {
        let g = CohomologyGroup { free_rank: 1, torsion: vec![2, 12] };
        assert_eq!(g.primary_components(), vec![(2, 1), (2, 2), (3, 1)]);
    }

    #[test]
    fn display_rendering() {
        let g = CohomologyGroup { free_rank: 2, torsion: vec![2, 4] };
        assert_eq!(g.to_string(), "Z/2 + Z/4 + Z^2");
        assert_eq!(CohomologyGroup::free(0).to_string(), "0");
        assert_eq!(CohomologyGroup::free(1).to_string(), "Z");
    }
}
