//! Hochschild cochains on a based algebra: the coboundary, the cochain-level
//! products, the autopoietic/non-autopoietic splitting, and the differential
//! matrices of the Full, AP, NP and E-relative complexes.

use std::collections::HashMap;

use num::{BigInt, Zero};
use rand::Rng;

use crate::algebra::{AlgebraKind, AmalgamCategory, BasedAlgebra};
use crate::coeff::{IntMat, Scalar};
use crate::Error;

pub fn tuple_rank(dim: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &x| acc * dim + x)
}

pub fn tuple_unrank(dim: usize, n: usize, mut r: usize) -> Vec<usize> {
    let mut t = vec![0; n];
    for k in (0..n).rev() {
        t[k] = r % dim;
        r /= dim;
    }
    t
}

pub fn tuple_count(dim: usize, n: usize) -> usize {
    dim.pow(n as u32)
}

/// Chain products φ_{t₁}·…·φ_{tₙ} for every basis n-tuple, with the ranks of
/// the tuples whose product does not vanish. Degree 0 has the single empty
/// tuple, whose "product" is the unit and which carries the one AP slot.
pub struct TupleTable {
    pub degree: usize,
    pub dim: usize,
    pub products: Vec<Option<(Scalar, usize)>>,
    pub nonzero: Vec<usize>,
    pub position: Vec<Option<usize>>,
}

impl TupleTable {
    pub fn build(alg: &BasedAlgebra, n: usize) -> Self {
        let dim = alg.dim();
        let count = tuple_count(dim, n);
        let mut products = Vec::with_capacity(count);
        if n == 0 {
            products.push(None);
        } else {
            for r in 0..count {
                let t = tuple_unrank(dim, n, r);
                products.push(alg.multiply_chain(&t));
            }
        }
        let mut nonzero = Vec::new();
        let mut position = vec![None; count];
        for (r, p) in products.iter().enumerate() {
            if n == 0 || p.is_some() {
                position[r] = Some(nonzero.len());
                nonzero.push(r);
            }
        }
        TupleTable { degree: n, dim, products, nonzero, position }
    }

    pub fn ap_dim(&self) -> usize {
        self.nonzero.len()
    }
}

/// Degree-n map from basis n-tuples to coefficient vectors; degree 0 stores
/// the single vector f(1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HochschildCochain {
    pub degree: usize,
    pub values: Vec<Vec<Scalar>>,
}

impl HochschildCochain {
    pub fn zero(alg: &BasedAlgebra, degree: usize) -> Self {
        let count = tuple_count(alg.dim(), degree);
        HochschildCochain {
            degree,
            values: vec![vec![alg.ring.zero(); alg.dim()]; count],
        }
    }

    pub fn random<R: Rng>(alg: &BasedAlgebra, degree: usize, rng: &mut R) -> Self {
        let count = tuple_count(alg.dim(), degree);
        HochschildCochain {
            degree,
            values: (0..count)
                .map(|_| (0..alg.dim()).map(|_| alg.ring.random(rng)).collect())
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().flatten().all(Scalar::is_zero)
    }

    /// The identity map A → A as a degree-1 cochain.
    pub fn identity_map(alg: &BasedAlgebra) -> Self {
        let mut f = HochschildCochain::zero(alg, 1);
        for b in 0..alg.dim() {
            f.values[b][b] = alg.ring.one();
        }
        f
    }
}

pub fn hc_add(alg: &BasedAlgebra, a: &HochschildCochain, b: &HochschildCochain) -> HochschildCochain {
    assert_eq!(a.degree, b.degree);
    HochschildCochain {
        degree: a.degree,
        values: a
            .values
            .iter()
            .zip(&b.values)
            .map(|(u, v)| u.iter().zip(v).map(|(x, y)| alg.ring.add(x, y)).collect())
            .collect(),
    }
}

pub fn hc_sub(alg: &BasedAlgebra, a: &HochschildCochain, b: &HochschildCochain) -> HochschildCochain {
    assert_eq!(a.degree, b.degree);
    HochschildCochain {
        degree: a.degree,
        values: a
            .values
            .iter()
            .zip(&b.values)
            .map(|(u, v)| u.iter().zip(v).map(|(x, y)| alg.ring.sub(x, y)).collect())
            .collect(),
    }
}

/// The Hochschild coboundary. In degree 0 this is (δf)(a) = a·f(1) − f(1)·a;
/// in general the left action, the alternating inner merges and the right
/// action with sign (−1)^{n+1}.
pub fn delta(alg: &BasedAlgebra, f: &HochschildCochain) -> HochschildCochain {
    let n = f.degree;
    let dim = alg.dim();
    let ring = alg.ring;
    let count = tuple_count(dim, n + 1);
    let mut values = Vec::with_capacity(count);
    for r in 0..count {
        let t = tuple_unrank(dim, n + 1, r);
        let mut out = vec![ring.zero(); dim];
        let tail = tuple_rank(dim, &t[1..]);
        alg.act_left(t[0], &f.values[tail], &ring.one(), &mut out);
        for i in 1..=n {
            if let Some((mu, m)) = alg.product(t[i - 1], t[i]) {
                let mut merged = t[..i - 1].to_vec();
                merged.push(m);
                merged.extend_from_slice(&t[i + 1..]);
                let scale = ring.mul_int(&mu, if i % 2 == 0 { 1 } else { -1 });
                let src = &f.values[tuple_rank(dim, &merged)];
                for (b, v) in src.iter().enumerate() {
                    if !v.is_zero() {
                        out[b] = ring.add(&out[b], &ring.mul(&scale, v));
                    }
                }
            }
        }
        let head = tuple_rank(dim, &t[..n]);
        let sign = ring.from_int(if (n + 1) % 2 == 0 { 1 } else { -1 });
        alg.act_right(&f.values[head], t[n], &sign, &mut out);
        values.push(out);
    }
    HochschildCochain { degree: n + 1, values }
}

/// Gerstenhaber product: pointwise algebra product of the two evaluations.
/// Degree-0 operands act as constants.
pub fn gerstenhaber(
    alg: &BasedAlgebra,
    f: &HochschildCochain,
    g: &HochschildCochain,
) -> HochschildCochain {
    let dim = alg.dim();
    let (p, q) = (f.degree, g.degree);
    let count = tuple_count(dim, p + q);
    let values = (0..count)
        .map(|r| {
            let t = tuple_unrank(dim, p + q, r);
            let u = &f.values[tuple_rank(dim, &t[..p])];
            let v = &g.values[tuple_rank(dim, &t[p..])];
            alg.vector_mul(u, v)
        })
        .collect();
    HochschildCochain { degree: p + q, values }
}

/// Substitute g into the j-th slot of f, extending linearly over the basis
/// expansion of g's value.
pub fn partial_composition(
    alg: &BasedAlgebra,
    f: &HochschildCochain,
    g: &HochschildCochain,
    j: usize,
) -> Result<HochschildCochain, Error> {
    let (p, q) = (f.degree, g.degree);
    if p == 0 {
        return Err(Error::DegreeZeroOperand);
    }
    if j >= p {
        return Err(Error::IndexOutOfRange { slot: j, degree: p });
    }
    let dim = alg.dim();
    let ring = alg.ring;
    let count = tuple_count(dim, p + q - 1);
    let values = (0..count)
        .map(|r| {
            let t = tuple_unrank(dim, p + q - 1, r);
            let gv = &g.values[tuple_rank(dim, &t[j..j + q])];
            let mut out = vec![ring.zero(); dim];
            for (b, c) in gv.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut args = t[..j].to_vec();
                args.push(b);
                args.extend_from_slice(&t[j + q..]);
                let fv = &f.values[tuple_rank(dim, &args)];
                for (m, w) in fv.iter().enumerate() {
                    if !w.is_zero() {
                        out[m] = ring.add(&out[m], &ring.mul(c, w));
                    }
                }
            }
            out
        })
        .collect();
    Ok(HochschildCochain { degree: p + q - 1, values })
}

/// f ∘ g = Σ_j (−1)^{(p−1−j)(q−1)} f ∘_j g.
pub fn pre_lie(
    alg: &BasedAlgebra,
    f: &HochschildCochain,
    g: &HochschildCochain,
) -> Result<HochschildCochain, Error> {
    let (p, q) = (f.degree, g.degree);
    if p == 0 {
        return Err(Error::DegreeZeroOperand);
    }
    let mut acc = HochschildCochain::zero(alg, p + q - 1);
    for j in 0..p {
        let term = partial_composition(alg, f, g, j)?;
        let sign = if ((p - 1 - j) * (q.max(1) - 1)) % 2 == 0 { 1 } else { -1 };
        let scaled = HochschildCochain {
            degree: term.degree,
            values: term
                .values
                .iter()
                .map(|v| v.iter().map(|x| alg.ring.mul_int(x, sign)).collect())
                .collect(),
        };
        acc = hc_add(alg, &acc, &scaled);
    }
    Ok(acc)
}

/// Scalar table of an autopoietic cochain: one λ per nonvanishing tuple
/// product, aligned with [`TupleTable::nonzero`]. Degree 0 stores the single
/// strict value λ, embedded as λ·e.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct APCochain {
    pub degree: usize,
    pub lambdas: Vec<Scalar>,
    pub strict: bool,
}

impl APCochain {
    pub fn zero(table: &TupleTable, ring: crate::coeff::Ring) -> Self {
        APCochain {
            degree: table.degree,
            lambdas: vec![ring.zero(); table.ap_dim()],
            strict: true,
        }
    }

    pub fn random<R: Rng>(table: &TupleTable, ring: crate::coeff::Ring, rng: &mut R) -> Self {
        APCochain {
            degree: table.degree,
            lambdas: (0..table.ap_dim()).map(|_| ring.random(rng)).collect(),
            strict: true,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.lambdas.iter().all(Scalar::is_zero)
    }
}

/// f(φ₁ ⊗ … ⊗ φₙ) = λ·(φ₁φ₂…φₙ) as a full Hochschild cochain.
pub fn embed_ap(alg: &BasedAlgebra, table: &TupleTable, ap: &APCochain) -> HochschildCochain {
    assert_eq!(table.degree, ap.degree);
    let ring = alg.ring;
    let mut f = HochschildCochain::zero(alg, ap.degree);
    if ap.degree == 0 {
        let lam = &ap.lambdas[0];
        f.values[0] = alg.unit_vector().iter().map(|c| ring.mul(lam, c)).collect();
        return f;
    }
    for (pos, &r) in table.nonzero.iter().enumerate() {
        let (mu, m) = table.products[r].clone().expect("nonzero rank has a product");
        f.values[r][m] = ring.mul(&ap.lambdas[pos], &mu);
    }
    f
}

/// Split f = embed(ap) + np, with λ the coefficient of the tuple product in
/// f's value. At degree 0 the anchor is the head of the unit's support (the
/// group identity for group rings).
pub fn ap_split(
    alg: &BasedAlgebra,
    table: &TupleTable,
    f: &HochschildCochain,
) -> (APCochain, HochschildCochain) {
    assert_eq!(table.degree, f.degree);
    let lambdas = if f.degree == 0 {
        let h0 = alg.unit_support_head();
        debug_assert_eq!(alg.unit_vector()[h0], alg.ring.one());
        vec![f.values[0][h0].clone()]
    } else {
        table
            .nonzero
            .iter()
            .map(|&r| {
                let (_, m) = table.products[r].clone().unwrap();
                f.values[r][m].clone()
            })
            .collect()
    };
    let ap = APCochain { degree: f.degree, lambdas, strict: true };
    let np = hc_sub(alg, f, &embed_ap(alg, table, &ap));
    (ap, np)
}

/// f(φ₁ ⊗ … ⊗ φₙ) = λ·(φ₁…φₙ) for some λ on every tuple; zero-product tuples
/// force f to vanish. Degree 0 uses the strict condition f(1) ∈ k·e.
pub fn is_autopoietic(alg: &BasedAlgebra, table: &TupleTable, f: &HochschildCochain) -> bool {
    assert_eq!(table.degree, f.degree);
    let ring = alg.ring;
    if f.degree == 0 {
        let h0 = alg.unit_support_head();
        let lam = &f.values[0][h0];
        let expected: Vec<Scalar> =
            alg.unit_vector().iter().map(|c| ring.mul(lam, c)).collect();
        return f.values[0] == expected;
    }
    for (r, prod) in table.products.iter().enumerate() {
        match prod {
            None => {
                if !f.values[r].iter().all(Scalar::is_zero) {
                    return false;
                }
            }
            Some((mu, m)) => {
                for (b, v) in f.values[r].iter().enumerate() {
                    if b != *m && !v.is_zero() {
                        return false;
                    }
                }
                if ring.divide_exact(&f.values[r][*m], mu).is_none() {
                    return false;
                }
            }
        }
    }
    true
}

/// The coefficient of the tuple product in f's value vanishes everywhere;
/// zero-product tuples are unconstrained. Degree 0: the coefficient at the
/// unit-support head vanishes.
pub fn is_non_autopoietic(alg: &BasedAlgebra, table: &TupleTable, f: &HochschildCochain) -> bool {
    assert_eq!(table.degree, f.degree);
    if f.degree == 0 {
        return f.values[0][alg.unit_support_head()].is_zero();
    }
    table.products.iter().enumerate().all(|(r, prod)| match prod {
        None => true,
        Some((_, m)) => f.values[r][*m].is_zero(),
    })
}

/// Cochain complex variants.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Full,
    Ap,
    Np,
    RelativeE,
}

impl Variant {
    pub fn parse(s: &str) -> Result<Self, Error> {
        match s {
            "full" => Ok(Variant::Full),
            "ap" => Ok(Variant::Ap),
            "np" => Ok(Variant::Np),
            "relative" => Ok(Variant::RelativeE),
            other => Err(Error::InvalidInput(format!("unknown variant '{other}'"))),
        }
    }
}

/// Matrix of δ : Hom(A^{⊗n}, A) → Hom(A^{⊗(n+1)}, A) in the tuple bases,
/// column (t, β) ↦ rows (s, m). Lexicographic tuple order throughout.
pub fn full_delta_matrix(alg: &BasedAlgebra, n: usize) -> IntMat {
    let dim = alg.dim();
    let ring = alg.ring;
    let rows = tuple_count(dim, n + 1) * dim;
    let cols = tuple_count(dim, n) * dim;
    let mut mat = IntMat::zero(rows, cols);
    for r in 0..tuple_count(dim, n + 1) {
        let t = tuple_unrank(dim, n + 1, r);
        let tail = tuple_rank(dim, &t[1..]);
        for b in 0..dim {
            if let Some((mu, m)) = alg.product(t[0], b) {
                mat.add_at(r * dim + m, tail * dim + b, &ring.lift(&mu));
            }
        }
        for i in 1..=n {
            if let Some((mu, m)) = alg.product(t[i - 1], t[i]) {
                let mut merged = t[..i - 1].to_vec();
                merged.push(m);
                merged.extend_from_slice(&t[i + 1..]);
                let col_base = tuple_rank(dim, &merged) * dim;
                let mut v = ring.lift(&mu);
                if i % 2 == 1 {
                    v = -v;
                }
                for b in 0..dim {
                    mat.add_at(r * dim + b, col_base + b, &v);
                }
            }
        }
        let head = tuple_rank(dim, &t[..n]);
        for b in 0..dim {
            if let Some((mu, m)) = alg.product(b, t[n]) {
                let mut v = ring.lift(&mu);
                if (n + 1) % 2 == 1 {
                    v = -v;
                }
                mat.add_at(r * dim + m, head * dim + b, &v);
            }
        }
    }
    mat
}

/// Matrix of δ restricted to the autopoietic subcomplex, in the λ bases.
/// δ vanishes out of degree 0 since a·λe = λe·a.
pub fn ap_delta_matrix(alg: &BasedAlgebra, from: &TupleTable, to: &TupleTable) -> IntMat {
    assert_eq!(to.degree, from.degree + 1);
    let n = from.degree;
    let ring = alg.ring;
    let mut mat = IntMat::zero(to.ap_dim(), from.ap_dim());
    if n == 0 {
        return mat;
    }
    let dim = alg.dim();
    for (row, &r) in to.nonzero.iter().enumerate() {
        let t = tuple_unrank(dim, n + 1, r);
        let tail = from.position[tuple_rank(dim, &t[1..])]
            .expect("faces of a nonvanishing tuple do not vanish");
        mat.add_at(row, tail, &BigInt::from(1));
        for i in 1..=n {
            let (mu, m) = alg.product(t[i - 1], t[i]).expect("inner product of a nonvanishing tuple");
            let mut merged = t[..i - 1].to_vec();
            merged.push(m);
            merged.extend_from_slice(&t[i + 1..]);
            let col = from.position[tuple_rank(dim, &merged)].unwrap();
            let mut v = ring.lift(&mu);
            if i % 2 == 1 {
                v = -v;
            }
            mat.add_at(row, col, &v);
        }
        let head = from.position[tuple_rank(dim, &t[..n])].unwrap();
        let sign = if (n + 1) % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
        mat.add_at(row, head, &sign);
    }
    mat
}

/// Coordinates of the non-autopoietic subspace in degree n: all pairs
/// (tuple, β) except β = index of the tuple product; zero-product tuples keep
/// every coordinate. Degree 0 excludes the unit-support head.
pub struct NpIndex {
    pub degree: usize,
    excluded: Vec<Option<usize>>,
    offsets: Vec<usize>,
    pub total: usize,
    dim: usize,
}

impl NpIndex {
    pub fn build(alg: &BasedAlgebra, table: &TupleTable) -> Self {
        let n = table.degree;
        let dim = alg.dim();
        let count = tuple_count(dim, n);
        let mut excluded = Vec::with_capacity(count);
        if n == 0 {
            excluded.push(Some(alg.unit_support_head()));
        } else {
            for r in 0..count {
                excluded.push(table.products[r].as_ref().map(|(_, m)| *m));
            }
        }
        let mut offsets = Vec::with_capacity(count);
        let mut total = 0;
        for e in &excluded {
            offsets.push(total);
            total += if e.is_some() { dim - 1 } else { dim };
        }
        NpIndex { degree: n, excluded, offsets, total, dim }
    }

    pub fn coord(&self, rank: usize, beta: usize) -> Option<usize> {
        match self.excluded[rank] {
            Some(m) if beta == m => None,
            Some(m) if beta > m => Some(self.offsets[rank] + beta - 1),
            _ => Some(self.offsets[rank] + beta),
        }
    }

    pub fn decode(&self, coord: usize) -> (usize, usize) {
        let rank = match self.offsets.binary_search(&coord) {
            Ok(mut r) => {
                // offsets can repeat only if some tuple had zero coordinates,
                // which cannot happen since dim >= 1
                while r + 1 < self.offsets.len() && self.offsets[r + 1] == coord {
                    r += 1;
                }
                r
            }
            Err(r) => r - 1,
        };
        let local = coord - self.offsets[rank];
        let beta = match self.excluded[rank] {
            Some(m) if local >= m => local + 1,
            _ => local,
        };
        (rank, beta)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// Matrix of δ restricted to the non-autopoietic subcomplex. Fails with
/// NotSubcomplex if some image has a nonzero autopoietic component; for group
/// rings, poset algebras and amalgams it never does.
pub fn np_delta_matrix(
    alg: &BasedAlgebra,
    from_table: &TupleTable,
    to_table: &TupleTable,
) -> Result<IntMat, Error> {
    let n = from_table.degree;
    let dim = alg.dim();
    let from = NpIndex::build(alg, from_table);
    let to = NpIndex::build(alg, to_table);
    // full differential restricted to NP columns
    let full = full_delta_matrix(alg, n);
    let mut mat = IntMat::zero(to.total, from.total);
    for col in 0..from.total {
        let (rank, beta) = from.decode(col);
        let full_col = rank * dim + beta;
        for r in 0..tuple_count(dim, n + 1) {
            for b in 0..dim {
                let v = full.get(r * dim + b, full_col);
                if v.is_zero() {
                    continue;
                }
                match to.coord(r, b) {
                    Some(row) => mat.add_at(row, col, v),
                    None => return Err(Error::NotSubcomplex),
                }
            }
        }
    }
    Ok(mat)
}

/// Basis of the E-relative cochain space C^n for an amalgam: composable
/// morphism n-tuples, each carrying the morphisms Mor(dom, cod) as targets.
/// Degree 0 is `Σ_i Hom(k_i, k[G_i])`, indexed by objects and their loops.
pub struct RelativeSpace {
    pub degree: usize,
    pub tuples: Vec<Vec<usize>>,
    pub targets: Vec<Vec<usize>>,
    offsets: Vec<usize>,
    pub total: usize,
    lookup: HashMap<Vec<usize>, usize>,
}

pub fn composable_tuples(cat: &AmalgamCategory, n: usize) -> Vec<Vec<usize>> {
    assert!(n >= 1);
    let mut out: Vec<Vec<usize>> = (0..cat.morphism_count()).map(|m| vec![m]).collect();
    for _ in 1..n {
        let mut next = Vec::new();
        for t in &out {
            let cod = cat.morphism(*t.last().unwrap()).cod;
            for m in 0..cat.morphism_count() {
                if cat.morphism(m).dom == cod {
                    let mut t2 = t.clone();
                    t2.push(m);
                    next.push(t2);
                }
            }
        }
        out = next;
    }
    out.sort();
    out
}

impl RelativeSpace {
    pub fn build(cat: &AmalgamCategory, n: usize) -> Self {
        let tuples: Vec<Vec<usize>> = if n == 0 {
            (0..cat.objects()).map(|i| vec![i]).collect()
        } else {
            composable_tuples(cat, n)
        };
        let targets: Vec<Vec<usize>> = tuples
            .iter()
            .map(|t| {
                if n == 0 {
                    cat.mor_between(t[0], t[0])
                } else {
                    let dom = cat.morphism(t[0]).dom;
                    let cod = cat.morphism(*t.last().unwrap()).cod;
                    cat.mor_between(dom, cod)
                }
            })
            .collect();
        let mut offsets = Vec::with_capacity(tuples.len());
        let mut total = 0;
        for t in &targets {
            offsets.push(total);
            total += t.len();
        }
        let lookup = tuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        RelativeSpace { degree: n, tuples, targets, offsets, total, lookup }
    }

    pub fn tuple_index(&self, t: &[usize]) -> usize {
        *self.lookup.get(t).expect("tuple must be composable and stored")
    }

    pub fn coord(&self, tuple_idx: usize, target: usize) -> usize {
        let local = self.targets[tuple_idx]
            .iter()
            .position(|&w| w == target)
            .expect("target must be a morphism between the endpoints");
        self.offsets[tuple_idx] + local
    }
}

/// Cochain on the E-relative complex: per composable tuple, a value in
/// k[Mor(i₁, i_{n+1})].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeCochain {
    pub degree: usize,
    pub values: Vec<Vec<Scalar>>,
}

impl RelativeCochain {
    pub fn zero(space: &RelativeSpace, ring: crate::coeff::Ring) -> Self {
        RelativeCochain {
            degree: space.degree,
            values: space.targets.iter().map(|t| vec![ring.zero(); t.len()]).collect(),
        }
    }

    pub fn random<R: Rng>(space: &RelativeSpace, ring: crate::coeff::Ring, rng: &mut R) -> Self {
        RelativeCochain {
            degree: space.degree,
            values: space
                .targets
                .iter()
                .map(|t| (0..t.len()).map(|_| ring.random(rng)).collect())
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().flatten().all(Scalar::is_zero)
    }
}

/// E-relative coboundary: the same three-part formula evaluated on composable
/// tuples; in degree 0, (δf)(α) = α·f(cod α) − f(dom α)·α.
pub fn relative_delta(
    cat: &AmalgamCategory,
    ring: crate::coeff::Ring,
    from: &RelativeSpace,
    to: &RelativeSpace,
    f: &RelativeCochain,
) -> RelativeCochain {
    assert_eq!(from.degree, f.degree);
    assert_eq!(to.degree, f.degree + 1);
    let n = f.degree;
    let mut out = RelativeCochain::zero(to, ring);
    for (s_idx, s) in to.tuples.iter().enumerate() {
        let acc = &mut out.values[s_idx];
        // left: compose s[0] into the values at the tail
        let tail_idx = if n == 0 {
            from.tuple_index(&[cat.morphism(s[0]).cod])
        } else {
            from.tuple_index(&s[1..])
        };
        for (local, v) in f.values[tail_idx].iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let w = from.targets[tail_idx][local];
            let composed = cat.compose(s[0], w).expect("codomains line up");
            let c = to.coord(s_idx, composed) - to_offset(to, s_idx);
            acc[c] = ring.add(&acc[c], v);
        }
        // inner merges
        for j in 1..=n {
            let merged_m = cat.compose(s[j - 1], s[j]).expect("composable tuple");
            let mut merged = s[..j - 1].to_vec();
            merged.push(merged_m);
            merged.extend_from_slice(&s[j + 1..]);
            let idx = from.tuple_index(&merged);
            let sign = if j % 2 == 0 { 1 } else { -1 };
            for (local, v) in f.values[idx].iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                // same endpoints, same target list
                acc[local] = ring.add(&acc[local], &ring.mul_int(v, sign));
            }
        }
        // right: compose the values at the head with the last morphism
        let head_idx = if n == 0 {
            from.tuple_index(&[cat.morphism(s[n]).dom])
        } else {
            from.tuple_index(&s[..n])
        };
        let sign = if (n + 1) % 2 == 0 { 1 } else { -1 };
        for (local, v) in f.values[head_idx].iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let w = from.targets[head_idx][local];
            let composed = cat.compose(w, s[n]).expect("domains line up");
            let c = to.coord(s_idx, composed) - to_offset(to, s_idx);
            acc[c] = ring.add(&acc[c], &ring.mul_int(v, sign));
        }
    }
    out
}

fn to_offset(space: &RelativeSpace, tuple_idx: usize) -> usize {
    space.offsets[tuple_idx]
}

/// Matrix of the E-relative coboundary C^n → C^{n+1}.
pub fn relative_delta_matrix(
    cat: &AmalgamCategory,
    ring: crate::coeff::Ring,
    from: &RelativeSpace,
    to: &RelativeSpace,
) -> IntMat {
    let n = from.degree;
    let mut mat = IntMat::zero(to.total, from.total);
    let one = BigInt::from(1);
    let neg = BigInt::from(-1);
    for (s_idx, s) in to.tuples.iter().enumerate() {
        let tail_idx = if n == 0 {
            from.tuple_index(&[cat.morphism(s[0]).cod])
        } else {
            from.tuple_index(&s[1..])
        };
        for (local, &w) in from.targets[tail_idx].iter().enumerate() {
            let composed = cat.compose(s[0], w).expect("codomains line up");
            mat.add_at(to.coord(s_idx, composed), from.offsets[tail_idx] + local, &one);
        }
        for j in 1..=n {
            let merged_m = cat.compose(s[j - 1], s[j]).expect("composable tuple");
            let mut merged = s[..j - 1].to_vec();
            merged.push(merged_m);
            merged.extend_from_slice(&s[j + 1..]);
            let idx = from.tuple_index(&merged);
            let v = if j % 2 == 0 { &one } else { &neg };
            for local in 0..from.targets[idx].len() {
                mat.add_at(to.offsets[s_idx] + local, from.offsets[idx] + local, v);
            }
        }
        let head_idx = if n == 0 {
            from.tuple_index(&[cat.morphism(s[n]).dom])
        } else {
            from.tuple_index(&s[..n])
        };
        let v = if (n + 1) % 2 == 0 { &one } else { &neg };
        for (local, &w) in from.targets[head_idx].iter().enumerate() {
            let composed = cat.compose(w, s[n]).expect("domains line up");
            mat.add_at(to.coord(s_idx, composed), from.offsets[head_idx] + local, v);
        }
    }
    let _ = ring;
    mat
}

fn amalgam_view(alg: &BasedAlgebra) -> Result<AmalgamCategory, Error> {
    match &alg.kind {
        AlgebraKind::Amalgam(c) => Ok(c.clone()),
        AlgebraKind::Poset(p) => Ok(AmalgamCategory::from_poset(p.clone())),
        AlgebraKind::GroupRing(g) => Ok(AmalgamCategory::single_object(g.clone())),
        AlgebraKind::General => Err(Error::NotAmalgam),
    }
}

/// Differential matrices δ_0, …, δ_{degrees-1} of the chosen complex variant.
pub fn build_complex(
    alg: &BasedAlgebra,
    variant: Variant,
    degrees: usize,
) -> Result<Vec<IntMat>, Error> {
    match variant {
        Variant::Full => Ok((0..degrees).map(|n| full_delta_matrix(alg, n)).collect()),
        Variant::Ap => {
            let tables: Vec<TupleTable> =
                (0..=degrees).map(|n| TupleTable::build(alg, n)).collect();
            Ok((0..degrees).map(|n| ap_delta_matrix(alg, &tables[n], &tables[n + 1])).collect())
        }
        Variant::Np => {
            let tables: Vec<TupleTable> =
                (0..=degrees).map(|n| TupleTable::build(alg, n)).collect();
            (0..degrees).map(|n| np_delta_matrix(alg, &tables[n], &tables[n + 1])).collect()
        }
        Variant::RelativeE => {
            let cat = amalgam_view(alg)?;
            let spaces: Vec<RelativeSpace> =
                (0..=degrees).map(|n| RelativeSpace::build(&cat, n)).collect();
            Ok((0..degrees)
                .map(|n| relative_delta_matrix(&cat, alg.ring, &spaces[n], &spaces[n + 1]))
                .collect())
        }
    }
}

/// Cochain-space dimension for a variant at one degree.
pub fn variant_dimension(alg: &BasedAlgebra, variant: Variant, n: usize) -> Result<usize, Error> {
    match variant {
        Variant::Full => Ok(tuple_count(alg.dim(), n) * alg.dim()),
        Variant::Ap => Ok(TupleTable::build(alg, n).ap_dim()),
        Variant::Np => {
            let table = TupleTable::build(alg, n);
            Ok(NpIndex::build(alg, &table).total)
        }
        Variant::RelativeE => {
            let cat = amalgam_view(alg)?;
            Ok(RelativeSpace::build(&cat, n).total)
        }
    }
}

/// b′φ + φb′ = identity on `k[C]^{⊗_E(n+1)}`, as an exact matrix identity.
pub fn verify_contracting_homotopy(cat: &AmalgamCategory, n: usize) -> bool {
    let bprime = |m: usize| -> IntMat {
        // V_{m+1} → V_m
        let from = composable_tuples(cat, m + 1);
        let to = composable_tuples(cat, m);
        let lookup: HashMap<&[usize], usize> =
            to.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
        let mut mat = IntMat::zero(to.len(), from.len());
        for (col, t) in from.iter().enumerate() {
            for i in 0..m {
                let merged_m = cat.compose(t[i], t[i + 1]).expect("composable");
                let mut merged = t[..i].to_vec();
                merged.push(merged_m);
                merged.extend_from_slice(&t[i + 2..]);
                let row = lookup[merged.as_slice()];
                let v = if i % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
                mat.add_at(row, col, &v);
            }
        }
        mat
    };
    let phi = |m: usize| -> IntMat {
        // V_m → V_{m+1}, prepend the identity loop at the first domain
        let from = composable_tuples(cat, m);
        let to = composable_tuples(cat, m + 1);
        let lookup: HashMap<&[usize], usize> =
            to.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
        let mut mat = IntMat::zero(to.len(), from.len());
        for (col, t) in from.iter().enumerate() {
            let dom = cat.morphism(t[0]).dom;
            let mut ext = vec![cat.identity_loop(dom)];
            ext.extend_from_slice(t);
            mat.add_at(lookup[ext.as_slice()], col, &BigInt::from(1));
        }
        mat
    };
    let m = n + 1;
    let dim = composable_tuples(cat, m).len();
    let identity = IntMat::identity(dim);
    if m == 1 {
        return bprime(1).mul(&phi(1)) == identity;
    }
    let first = bprime(m).mul(&phi(m));
    let second = phi(m - 1).mul(&bprime(m - 1));
    let mut sum = IntMat::zero(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            sum.set(i, j, first.get(i, j) + second.get(i, j));
        }
    }
    sum == identity
}
