//! Truncated simplicial sets (bar construction, cyclic bar construction,
//! nerve of an amalgam category), simplicial cochains, the coboundary, the
//! cup product and Steenrod's cup-i products.
//!
//! Cochain operations are written against [`FaceComplex`], which also covers
//! the weighted bar construction of an algebra where a face can vanish or
//! carry a structure constant.

use std::collections::HashMap;

use num::BigInt;
use rand::Rng;

use crate::algebra::{AmalgamCategory, FiniteGroup};
use crate::coeff::{IntMat, Ring, Scalar};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SliceKind {
    Bar { order: usize },
    CyclicBar { order: usize },
    CyclicBarUnit { order: usize },
    Nerve { objects: usize, morphisms: usize },
}

/// A simplicial set stored through degree `max_degree`: simplex lists plus
/// face and degeneracy index maps.
#[derive(Clone, Debug)]
pub struct SimplicialSlice {
    pub kind: SliceKind,
    max_degree: usize,
    simplices: Vec<Vec<Vec<usize>>>,
    lookup: Vec<HashMap<Vec<usize>, usize>>,
    /// faces[n][i][idx] for 1 ≤ n ≤ N, 0 ≤ i ≤ n
    faces: Vec<Vec<Vec<usize>>>,
    /// degeneracies[n][i][idx] for 0 ≤ n < N, 0 ≤ i ≤ n
    degeneracies: Vec<Vec<Vec<usize>>>,
}

impl SimplicialSlice {
    fn build(
        kind: SliceKind,
        max_degree: usize,
        simplices: Vec<Vec<Vec<usize>>>,
        face_fn: impl Fn(usize, usize, &[usize]) -> Vec<usize>,
        degen_fn: impl Fn(usize, usize, &[usize]) -> Vec<usize>,
    ) -> Self {
        let lookup: Vec<HashMap<Vec<usize>, usize>> = simplices
            .iter()
            .map(|list| list.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        let mut faces = vec![Vec::new(); max_degree + 1];
        for n in 1..=max_degree {
            let mut maps = Vec::with_capacity(n + 1);
            for i in 0..=n {
                let map: Vec<usize> = simplices[n]
                    .iter()
                    .map(|s| {
                        let img = face_fn(n, i, s);
                        *lookup[n - 1]
                            .get(&img)
                            .expect("face image must be a stored simplex")
                    })
                    .collect();
                maps.push(map);
            }
            faces[n] = maps;
        }
        let mut degeneracies = vec![Vec::new(); max_degree];
        for n in 0..max_degree {
            let mut maps = Vec::with_capacity(n + 1);
            for i in 0..=n {
                let map: Vec<usize> = simplices[n]
                    .iter()
                    .map(|s| {
                        let img = degen_fn(n, i, s);
                        *lookup[n + 1]
                            .get(&img)
                            .expect("degeneracy image must be a stored simplex")
                    })
                    .collect();
                maps.push(map);
            }
            degeneracies[n] = maps;
        }
        SimplicialSlice { kind, max_degree, simplices, lookup, faces, degeneracies }
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn size(&self, n: usize) -> usize {
        self.simplices[n].len()
    }

    pub fn simplex(&self, n: usize, idx: usize) -> &[usize] {
        &self.simplices[n][idx]
    }

    pub fn index_of(&self, n: usize, simplex: &[usize]) -> Option<usize> {
        self.lookup[n].get(simplex).copied()
    }

    pub fn face(&self, n: usize, i: usize, idx: usize) -> usize {
        self.faces[n][i][idx]
    }

    pub fn degeneracy(&self, n: usize, i: usize, idx: usize) -> usize {
        self.degeneracies[n][i][idx]
    }

    /// d_i d_j = d_{j-1} d_i (i < j) and the degeneracy identities, checked
    /// exhaustively on every stored degree.
    pub fn verify_simplicial_identities(&self) -> bool {
        let nd = self.max_degree;
        for n in 2..=nd {
            for j in 1..=n {
                for i in 0..j {
                    for idx in 0..self.size(n) {
                        let a = self.face(n - 1, i, self.face(n, j, idx));
                        let b = self.face(n - 1, j - 1, self.face(n, i, idx));
                        if a != b {
                            return false;
                        }
                    }
                }
            }
        }
        // s_i s_j = s_{j+1} s_i for i <= j
        for n in 0..nd.saturating_sub(1) {
            for j in 0..=n {
                for i in 0..=j {
                    for idx in 0..self.size(n) {
                        let a = self.degeneracy(n + 1, i, self.degeneracy(n, j, idx));
                        let b = self.degeneracy(n + 1, j + 1, self.degeneracy(n, i, idx));
                        if a != b {
                            return false;
                        }
                    }
                }
            }
        }
        // mixed identities
        for n in 0..nd {
            for j in 0..=n {
                for idx in 0..self.size(n) {
                    let s = self.degeneracy(n, j, idx);
                    if self.face(n + 1, j, s) != idx || self.face(n + 1, j + 1, s) != idx {
                        return false;
                    }
                    for i in 0..j {
                        if n >= 1
                            && self.face(n + 1, i, s)
                                != self.degeneracy(n - 1, j - 1, self.face(n, i, idx))
                        {
                            return false;
                        }
                    }
                    for i in j + 2..=n + 1 {
                        if n >= 1
                            && self.face(n + 1, i, s)
                                != self.degeneracy(n - 1, j, self.face(n, i - 1, idx))
                        {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn complex(&self, ring: Ring) -> SliceComplex<'_> {
        SliceComplex { slice: self, ring }
    }
}

fn all_tuples(order: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * order);
        for t in &out {
            for g in 0..order {
                let mut t2 = t.clone();
                t2.push(g);
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

/// The bar construction B_n(G) = G^n with merge faces and identity-inserting
/// degeneracies. Simplices of degree n are the lexicographically ordered
/// n-tuples of element indices.
pub fn bar(g: &FiniteGroup, max_degree: usize) -> SimplicialSlice {
    let simplices: Vec<Vec<Vec<usize>>> =
        (0..=max_degree).map(|n| all_tuples(g.order(), n)).collect();
    let g1 = g.clone();
    let g2 = g.clone();
    SimplicialSlice::build(
        SliceKind::Bar { order: g.order() },
        max_degree,
        simplices,
        move |n, i, t| {
            if i == 0 {
                t[1..].to_vec()
            } else if i == n {
                t[..n - 1].to_vec()
            } else {
                let mut out = t[..i - 1].to_vec();
                out.push(g1.mul(t[i - 1], t[i]));
                out.extend_from_slice(&t[i + 1..]);
                out
            }
        },
        move |_n, i, t| {
            let mut out = t.to_vec();
            out.insert(i, g2.identity());
            out
        },
    )
}

/// The cyclic bar construction N^cy_n(G) = G^{n+1}, with the wrap-around face
/// d_n(g_0, …, g_n) = (g_n g_0, g_1, …, g_{n-1}).
pub fn cyclic_bar(g: &FiniteGroup, max_degree: usize) -> SimplicialSlice {
    cyclic_bar_impl(g, max_degree, false)
}

/// The subcomplex of tuples with g_0 g_1 … g_n = e. Closure under all faces
/// and degeneracies is checked during construction.
pub fn cyclic_bar_unit(g: &FiniteGroup, max_degree: usize) -> SimplicialSlice {
    cyclic_bar_impl(g, max_degree, true)
}

fn cyclic_bar_impl(g: &FiniteGroup, max_degree: usize, unit_only: bool) -> SimplicialSlice {
    let product = |t: &[usize]| t.iter().fold(g.identity(), |acc, &x| g.mul(acc, x));
    let simplices: Vec<Vec<Vec<usize>>> = (0..=max_degree)
        .map(|n| {
            all_tuples(g.order(), n + 1)
                .into_iter()
                .filter(|t| !unit_only || product(t) == g.identity())
                .collect()
        })
        .collect();
    let kind = if unit_only {
        SliceKind::CyclicBarUnit { order: g.order() }
    } else {
        SliceKind::CyclicBar { order: g.order() }
    };
    let g1 = g.clone();
    let g2 = g.clone();
    SimplicialSlice::build(
        kind,
        max_degree,
        simplices,
        move |n, i, t| {
            if i < n {
                let mut out = t[..i].to_vec();
                out.push(g1.mul(t[i], t[i + 1]));
                out.extend_from_slice(&t[i + 2..]);
                out
            } else {
                let mut out = vec![g1.mul(t[n], t[0])];
                out.extend_from_slice(&t[1..n]);
                out
            }
        },
        move |_n, i, t| {
            let mut out = t.to_vec();
            out.insert(i + 1, g2.identity());
            out
        },
    )
}

/// The nerve of an amalgam category: B_0 = objects, B_n = composable
/// morphism n-tuples, with composition faces and identity degeneracies.
pub fn nerve(cat: &AmalgamCategory, max_degree: usize) -> SimplicialSlice {
    let mut simplices: Vec<Vec<Vec<usize>>> = Vec::with_capacity(max_degree + 1);
    simplices.push((0..cat.objects()).map(|i| vec![i]).collect());
    if max_degree >= 1 {
        simplices.push((0..cat.morphism_count()).map(|m| vec![m]).collect());
    }
    for n in 2..=max_degree {
        let prev = &simplices[n - 1];
        let mut next = Vec::new();
        for t in prev {
            let last_cod = cat.morphism(*t.last().unwrap()).cod;
            for m in 0..cat.morphism_count() {
                if cat.morphism(m).dom == last_cod {
                    let mut t2 = t.clone();
                    t2.push(m);
                    next.push(t2);
                }
            }
        }
        next.sort();
        simplices.push(next);
    }
    let c1 = cat.clone();
    let c2 = cat.clone();
    SimplicialSlice::build(
        SliceKind::Nerve { objects: cat.objects(), morphisms: cat.morphism_count() },
        max_degree,
        simplices,
        move |n, i, t| {
            if n == 1 {
                let m = c1.morphism(t[0]);
                return vec![if i == 0 { m.cod } else { m.dom }];
            }
            if i == 0 {
                t[1..].to_vec()
            } else if i == n {
                t[..n - 1].to_vec()
            } else {
                let mut out = t[..i - 1].to_vec();
                out.push(c1.compose(t[i - 1], t[i]).expect("nerve tuples are composable"));
                out.extend_from_slice(&t[i + 1..]);
                out
            }
        },
        move |n, i, t| {
            if n == 0 {
                return vec![c2.identity_loop(t[0])];
            }
            let obj =
                if i == 0 { c2.morphism(t[0]).dom } else { c2.morphism(t[i - 1]).cod };
            let mut out = t.to_vec();
            out.insert(i, c2.identity_loop(obj));
            out
        },
    )
}

/// ι : B_n(G) → N^cy_n(G, e), (g_1, …, g_n) ↦ ((g_1…g_n)^{-1}, g_1, …, g_n),
/// as index maps per degree.
pub fn iota_map(g: &FiniteGroup, bar: &SimplicialSlice, unit: &SimplicialSlice) -> Vec<Vec<usize>> {
    assert_eq!(bar.kind, SliceKind::Bar { order: g.order() }, "iota needs a bar slice");
    assert!(
        matches!(unit.kind, SliceKind::CyclicBarUnit { order } if order == g.order()),
        "iota lands in the unit cyclic bar"
    );
    let degrees = bar.max_degree().min(unit.max_degree());
    (0..=degrees)
        .map(|n| {
            (0..bar.size(n))
                .map(|idx| {
                    let t = bar.simplex(n, idx);
                    let prod = t.iter().fold(g.identity(), |acc, &x| g.mul(acc, x));
                    let mut img = vec![g.inverse(prod)];
                    img.extend_from_slice(t);
                    unit.index_of(n, &img).expect("iota image satisfies the unit condition")
                })
                .collect()
        })
        .collect()
}

/// π : N^cy_n(G, e) → B_n(G), (g_0, g_1, …, g_n) ↦ (g_1, …, g_n).
pub fn pi_map(g: &FiniteGroup, unit: &SimplicialSlice, bar: &SimplicialSlice) -> Vec<Vec<usize>> {
    assert!(matches!(unit.kind, SliceKind::CyclicBarUnit { order } if order == g.order()));
    assert_eq!(bar.kind, SliceKind::Bar { order: g.order() });
    let degrees = bar.max_degree().min(unit.max_degree());
    (0..=degrees)
        .map(|n| {
            (0..unit.size(n))
                .map(|idx| {
                    let t = unit.simplex(n, idx);
                    bar.index_of(n, &t[1..]).expect("projection drops the first coordinate")
                })
                .collect()
        })
        .collect()
}

/// Does a degree-wise index map commute with all face maps?
pub fn map_commutes_with_faces(
    src: &SimplicialSlice,
    dst: &SimplicialSlice,
    map: &[Vec<usize>],
) -> bool {
    for n in 1..map.len() {
        for idx in 0..src.size(n) {
            for i in 0..=n {
                if dst.face(n, i, map[n][idx]) != map[n - 1][src.face(n, i, idx)] {
                    return false;
                }
            }
        }
    }
    true
}

/// Anything with graded cells and weighted face maps: simplicial slices
/// (weights all 1) and the bar construction of a based algebra, where inner
/// faces carry structure constants and may vanish.
pub trait FaceComplex {
    fn ring(&self) -> Ring;
    fn size(&self, n: usize) -> usize;
    fn face(&self, n: usize, i: usize, idx: usize) -> Option<(Scalar, usize)>;
}

pub struct SliceComplex<'a> {
    slice: &'a SimplicialSlice,
    ring: Ring,
}

impl FaceComplex for SliceComplex<'_> {
    fn ring(&self) -> Ring {
        self.ring
    }

    fn size(&self, n: usize) -> usize {
        self.slice.size(n)
    }

    fn face(&self, n: usize, i: usize, idx: usize) -> Option<(Scalar, usize)> {
        Some((self.ring.one(), self.slice.face(n, i, idx)))
    }
}

/// Scalar-valued cochain on degree n of a [`FaceComplex`]: one value per cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialCochain {
    pub degree: usize,
    pub values: Vec<Scalar>,
}

impl SimplicialCochain {
    pub fn zero<C: FaceComplex>(c: &C, degree: usize) -> Self {
        SimplicialCochain { degree, values: vec![c.ring().zero(); c.size(degree)] }
    }

    pub fn random<C: FaceComplex, R: Rng>(c: &C, degree: usize, rng: &mut R) -> Self {
        let ring = c.ring();
        SimplicialCochain {
            degree,
            values: (0..c.size(degree)).map(|_| ring.random(rng)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Scalar::is_zero)
    }
}

/// (d*α)(σ) = Σ (−1)^i α(d_i σ).
pub fn coboundary<C: FaceComplex>(c: &C, alpha: &SimplicialCochain) -> SimplicialCochain {
    let ring = c.ring();
    let n = alpha.degree + 1;
    let values = (0..c.size(n))
        .map(|idx| {
            let mut acc = ring.zero();
            for i in 0..=n {
                if let Some((coef, t)) = c.face(n, i, idx) {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    let term = ring.mul_int(&ring.mul(&coef, &alpha.values[t]), sign);
                    acc = ring.add(&acc, &term);
                }
            }
            acc
        })
        .collect();
    SimplicialCochain { degree: n, values }
}

/// Matrix of d* : C^n → C^{n+1} in the cell bases.
pub fn coboundary_matrix<C: FaceComplex>(c: &C, n: usize) -> IntMat {
    let ring = c.ring();
    let mut m = IntMat::zero(c.size(n + 1), c.size(n));
    for idx in 0..c.size(n + 1) {
        for i in 0..=n + 1 {
            if let Some((coef, t)) = c.face(n + 1, i, idx) {
                let mut v = ring.lift(&coef);
                if i % 2 == 1 {
                    v = -v;
                }
                m.add_at(idx, t, &v);
            }
        }
    }
    m
}

/// Restriction of a cell to a sorted vertex subset: the iterated face map
/// deleting the complementary vertices in decreasing order. Returns the
/// accumulated coefficient, or None when a weighted face vanishes.
fn restrict<C: FaceComplex>(
    c: &C,
    n: usize,
    idx: usize,
    keep: &[usize],
) -> Option<(Scalar, usize)> {
    let ring = c.ring();
    let mut coeff = ring.one();
    let mut cur = idx;
    let mut deg = n;
    for v in (0..=n).rev() {
        if keep.binary_search(&v).is_ok() {
            continue;
        }
        let (f, next) = c.face(deg, v, cur)?;
        coeff = ring.mul(&coeff, &f);
        if coeff.is_zero() {
            return None;
        }
        cur = next;
        deg -= 1;
    }
    Some((coeff, cur))
}

/// (α ∪ β)(σ) = α(front_p σ)·β(back_q σ), front and back faces computed by
/// the iterated last/first face maps.
pub fn cup<C: FaceComplex>(
    c: &C,
    alpha: &SimplicialCochain,
    beta: &SimplicialCochain,
) -> SimplicialCochain {
    let ring = c.ring();
    let (p, q) = (alpha.degree, beta.degree);
    let n = p + q;
    let front: Vec<usize> = (0..=p).collect();
    let back: Vec<usize> = (p..=n).collect();
    let values = (0..c.size(n))
        .map(|idx| {
            let (Some((ca, a)), Some((cb, b))) =
                (restrict(c, n, idx, &front), restrict(c, n, idx, &back))
            else {
                return ring.zero();
            };
            let v = ring.mul(&alpha.values[a], &beta.values[b]);
            ring.mul(&ring.mul(&ca, &cb), &v)
        })
        .collect();
    SimplicialCochain { degree: n, values }
}

/// Steenrod-type cup-i products. ∪_0 is the cup product; ∪_1 is the cup-one
/// product with terms
///   A_j = α((d_{j+1} … d_{j+q-1}) σ),
///   B_j = β((d_0 … d_{j-1} d_{j+q+1} … d_{p+q-1}) σ)
/// and signs (−1)^{(p−1−j)(q−1)}, satisfying
///   d*(α ∪_1 β) = d*α ∪_1 β + (−1)^{p−1} α ∪_1 d*β + (−1)^p [α ∪ β − (−1)^{pq} β ∪ α]
/// exactly over any coefficient ring.
///
/// For i ≥ 2 no bilinear cochain operation extends this cup-one to the
/// analogous coboundary identity with bracket signs (−1)^{(i−1)(p+q+1)} and
/// (−1)^{pq}: exact linear algebra over the full span of natural operations
/// yields contradictions already in bidegrees (2,1) and (1,2). Those arities
/// return [`Error::UnsupportedArity`].
pub fn cup_i<C: FaceComplex>(
    c: &C,
    alpha: &SimplicialCochain,
    beta: &SimplicialCochain,
    i: usize,
) -> Result<SimplicialCochain, Error> {
    let (p, q) = (alpha.degree, beta.degree);
    match i {
        0 => Ok(cup(c, alpha, beta)),
        1 => {
            let ring = c.ring();
            if p == 0 || q == 0 {
                // the cup-one face strings need at least one slot per factor
                let n = (p + q).saturating_sub(1);
                return Ok(SimplicialCochain {
                    degree: n,
                    values: vec![ring.zero(); c.size(n)],
                });
            }
            let n = p + q - 1;
            let mut values = vec![ring.zero(); c.size(n)];
            for j in 0..p {
                // α reads [0..j] ∪ [j+q..n], β reads the window [j..j+q]
                let mut keep_a: Vec<usize> = (0..=j).collect();
                keep_a.extend(j + q..=n);
                let keep_b: Vec<usize> = (j..=j + q).collect();
                let sign = if ((p - 1 - j) * (q - 1)) % 2 == 0 { 1 } else { -1 };
                for (idx, acc) in values.iter_mut().enumerate() {
                    let (Some((ca, ai)), Some((cb, bi))) =
                        (restrict(c, n, idx, &keep_a), restrict(c, n, idx, &keep_b))
                    else {
                        continue;
                    };
                    let term = ring.mul(
                        &ring.mul(&ca, &cb),
                        &ring.mul(&alpha.values[ai], &beta.values[bi]),
                    );
                    *acc = ring.add(acc, &ring.mul_int(&term, sign));
                }
            }
            Ok(SimplicialCochain { degree: n, values })
        }
        _ => Err(Error::UnsupportedArity { i }),
    }
}

/// Scale/add helpers for cochain identity checks.
pub fn cochain_add<C: FaceComplex>(
    c: &C,
    a: &SimplicialCochain,
    b: &SimplicialCochain,
) -> SimplicialCochain {
    assert_eq!(a.degree, b.degree);
    let ring = c.ring();
    SimplicialCochain {
        degree: a.degree,
        values: a.values.iter().zip(&b.values).map(|(x, y)| ring.add(x, y)).collect(),
    }
}

pub fn cochain_scale<C: FaceComplex>(c: &C, a: &SimplicialCochain, k: i64) -> SimplicialCochain {
    let ring = c.ring();
    SimplicialCochain {
        degree: a.degree,
        values: a.values.iter().map(|x| ring.mul_int(x, k)).collect(),
    }
}

/// Pull a cochain back along a degree-wise index map (dual of the map).
pub fn pullback(map_degree_n: &[usize], target: &SimplicialCochain) -> SimplicialCochain {
    SimplicialCochain {
        degree: target.degree,
        values: map_degree_n.iter().map(|&t| target.values[t].clone()).collect(),
    }
}

pub fn num_sign(i: usize) -> BigInt {
    if i % 2 == 0 {
        BigInt::from(1)
    } else {
        BigInt::from(-1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::cohomology_at;
    use rand::SeedableRng;

    fn z2() -> FiniteGroup {
        FiniteGroup::cyclic(2)
    }

    #[test]
    fn bar_counts_and_faces() {
        let b = bar(&z2(), 2);
        assert_eq!(b.size(0), 1);
        assert_eq!(b.size(1), 2);
        assert_eq!(b.size(2), 4);
        // d_1(g1, g2) = (g1 g2), d_0(g1, g2) = (g2)
        let idx = b.index_of(2, &[1, 1]).unwrap();
        assert_eq!(b.simplex(1, b.face(2, 1, idx)), &[0]);
        assert_eq!(b.simplex(1, b.face(2, 0, idx)), &[1]);
        assert!(b.verify_simplicial_identities());
    }

    #[test]
    fn cyclic_bar_and_unit_subcomplex() {
        let c = cyclic_bar(&z2(), 3);
        assert_eq!(c.size(1), 4);
        assert!(c.verify_simplicial_identities());
        // b(g0 ⊗ g1) = g0g1 − g1g0: the two faces of a 1-simplex
        let g = FiniteGroup::cyclic(3);
        let cy = cyclic_bar(&g, 2);
        let idx = cy.index_of(1, &[1, 2]).unwrap();
        assert_eq!(cy.simplex(0, cy.face(1, 0, idx)), &[g.mul(1, 2)]);
        assert_eq!(cy.simplex(0, cy.face(1, 1, idx)), &[g.mul(2, 1)]);

        let u = cyclic_bar_unit(&z2(), 3);
        assert_eq!(u.size(1), 2);
        assert_eq!(u.simplex(1, 0), &[0, 0]);
        assert_eq!(u.simplex(1, 1), &[1, 1]);
        assert!(u.verify_simplicial_identities());
    }

    #[test]
    fn nerve_counts_chain_poset() {
        let cat = AmalgamCategory::from_poset(crate::algebra::FinitePoset::chain(2));
        let n = nerve(&cat, 2);
        assert_eq!(n.size(0), 2);
        assert_eq!(n.size(1), 3);
        // composable pairs including degenerate identities
        assert_eq!(n.size(2), 4);
        assert!(n.verify_simplicial_identities());
        // d_1(e01) = 0, d_0(e01) = 1
        let e01 = cat.mor_between(0, 1)[0];
        assert_eq!(n.simplex(0, n.face(1, 1, e01)), &[0]);
        assert_eq!(n.simplex(0, n.face(1, 0, e01)), &[1]);
    }

    #[test]
    fn nerve_of_one_object_group_is_bar() {
        let g = z2();
        let cat = AmalgamCategory::single_object(g.clone());
        let n = nerve(&cat, 3);
        let b = bar(&g, 3);
        for deg in 0..=3 {
            if deg == 0 {
                assert_eq!(n.size(0), 1);
                continue;
            }
            assert_eq!(n.size(deg), b.size(deg));
            for idx in 0..n.size(deg) {
                assert_eq!(n.simplex(deg, idx), b.simplex(deg, idx));
                for i in 0..=deg {
                    assert_eq!(n.face(deg, i, idx), b.face(deg, i, idx));
                }
            }
        }
    }

    #[test]
    fn iota_pi_are_simplicial_and_inverse() {
        for order in [2, 3] {
            let g = FiniteGroup::cyclic(order);
            let b = bar(&g, 3);
            let u = cyclic_bar_unit(&g, 3);
            let i = iota_map(&g, &b, &u);
            let p = pi_map(&g, &u, &b);
            assert!(map_commutes_with_faces(&b, &u, &i));
            assert!(map_commutes_with_faces(&u, &b, &p));
            for n in 0..=3 {
                for idx in 0..b.size(n) {
                    assert_eq!(p[n][i[n][idx]], idx, "pi after iota is the identity");
                }
            }
        }
        // spot values in Z/2: iota(x) = (x, x), pi(x, x) = (x)
        let g = z2();
        let b = bar(&g, 1);
        let u = cyclic_bar_unit(&g, 1);
        let i = iota_map(&g, &b, &u);
        let x = b.index_of(1, &[1]).unwrap();
        assert_eq!(u.simplex(1, i[1][x]), &[1, 1]);
        let p = pi_map(&g, &u, &b);
        assert_eq!(b.simplex(1, p[1][u.index_of(1, &[1, 1]).unwrap()]), &[1]);
    }

    #[test]
    fn coboundary_hand_values() {
        let b = bar(&z2(), 2);
        let c = b.complex(Ring::Integers);
        // constant 1 on B_0 dies: (d*1)(g) = 1 - 1 = 0
        let one = SimplicialCochain { degree: 0, values: vec![Ring::Integers.one()] };
        assert!(coboundary(&c, &one).is_zero());
        // indicator of (x): (d*α)(x, x) = α(x) − α(e) + α(x) = 2
        let x = b.index_of(1, &[1]).unwrap();
        let mut alpha = SimplicialCochain::zero(&c, 1);
        alpha.values[x] = Ring::Integers.one();
        let d = coboundary(&c, &alpha);
        let xx = b.index_of(2, &[1, 1]).unwrap();
        assert_eq!(d.values[xx], Ring::Integers.from_int(2));
    }

    #[test]
    fn coboundary_squares_to_zero_on_random_cochains() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let g = FiniteGroup::cyclic(3);
        for slice in [bar(&g, 4), cyclic_bar(&g, 4), cyclic_bar_unit(&g, 4)] {
            let c = slice.complex(Ring::Integers);
            for n in 0..=2 {
                let a = SimplicialCochain::random(&c, n, &mut rng);
                assert!(coboundary(&c, &coboundary(&c, &a)).is_zero());
            }
        }
    }

    #[test]
    fn coboundary_matrix_matches_evaluation() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let g = z2();
        let slice = cyclic_bar(&g, 3);
        let c = slice.complex(Ring::Integers);
        for n in 0..=2 {
            let m = coboundary_matrix(&c, n);
            let a = SimplicialCochain::random(&c, n, &mut rng);
            let d = coboundary(&c, &a);
            for row in 0..m.rows() {
                let mut acc = BigInt::from(0);
                for col in 0..m.cols() {
                    acc += m.get(row, col) * Ring::Integers.lift(&a.values[col]);
                }
                assert_eq!(acc, Ring::Integers.lift(&d.values[row]));
            }
        }
    }

    #[test]
    fn cup_hand_values_and_unit() {
        let b = bar(&z2(), 3);
        let c = b.complex(Ring::Integers);
        let x = b.index_of(1, &[1]).unwrap();
        let mut alpha = SimplicialCochain::zero(&c, 1);
        alpha.values[x] = Ring::Integers.one();
        let prod = cup(&c, &alpha, &alpha);
        for idx in 0..b.size(2) {
            let expected = if b.simplex(2, idx) == [1, 1] { 1 } else { 0 };
            assert_eq!(prod.values[idx], Ring::Integers.from_int(expected));
        }
        // constant 1 in degree 0 is a unit
        let one = SimplicialCochain { degree: 0, values: vec![Ring::Integers.one(); b.size(0)] };
        assert_eq!(cup(&c, &one, &alpha), alpha);
        assert_eq!(cup(&c, &alpha, &one), alpha);
    }

    #[test]
    fn cup_is_associative_on_random_cochains() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        let g = z2();
        let slice = bar(&g, 4);
        let c = slice.complex(Ring::Integers);
        for (p, q, r) in [(1, 1, 1), (1, 2, 1), (0, 2, 2)] {
            let a = SimplicialCochain::random(&c, p, &mut rng);
            let b_ = SimplicialCochain::random(&c, q, &mut rng);
            let d = SimplicialCochain::random(&c, r, &mut rng);
            assert_eq!(cup(&c, &cup(&c, &a, &b_), &d), cup(&c, &a, &cup(&c, &b_, &d)));
        }
    }

    #[test]
    fn cup_leibniz_rule() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let g = FiniteGroup::cyclic(3);
        let slice = bar(&g, 4);
        let c = slice.complex(Ring::Integers);
        for (p, q) in [(0, 1), (1, 1), (1, 2), (2, 1)] {
            let a = SimplicialCochain::random(&c, p, &mut rng);
            let b_ = SimplicialCochain::random(&c, q, &mut rng);
            let lhs = coboundary(&c, &cup(&c, &a, &b_));
            let rhs = cochain_add(
                &c,
                &cup(&c, &coboundary(&c, &a), &b_),
                &cochain_scale(&c, &cup(&c, &a, &coboundary(&c, &b_)), if p % 2 == 0 { 1 } else { -1 }),
            );
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn cup_one_diagonal_in_matching_degree() {
        // (α ∪_1 β)(φ) = α(φ)β(φ) for p = q = 1
        let b = bar(&z2(), 2);
        let c = b.complex(Ring::Integers);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(19);
        let alpha = SimplicialCochain::random(&c, 1, &mut rng);
        let beta = SimplicialCochain::random(&c, 1, &mut rng);
        let prod = cup_i(&c, &alpha, &beta, 1).unwrap();
        for idx in 0..b.size(1) {
            assert_eq!(
                prod.values[idx],
                Ring::Integers.mul(&alpha.values[idx], &beta.values[idx])
            );
        }
    }

    #[test]
    fn cup_i_boundary_cases() {
        let b = bar(&z2(), 3);
        let c = b.complex(Ring::Integers);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        let alpha = SimplicialCochain::random(&c, 1, &mut rng);
        let beta = SimplicialCochain::random(&c, 2, &mut rng);
        // degree-0 factors leave no overlap window for cup-one
        let scalar = SimplicialCochain::random(&c, 0, &mut rng);
        assert!(cup_i(&c, &scalar, &beta, 1).unwrap().is_zero());
        assert!(cup_i(&c, &alpha, &scalar, 1).unwrap().is_zero());
        // arities past the supported range are a contract error
        assert!(matches!(cup_i(&c, &alpha, &beta, 2), Err(Error::UnsupportedArity { i: 2 })));
        assert!(matches!(cup_i(&c, &alpha, &beta, 3), Err(Error::UnsupportedArity { i: 3 })));
    }

    #[test]
    fn cup_one_coboundary_identity_exact() {
        // d*(α∪₁β) = d*α∪₁β + (−1)^{p−1}α∪₁d*β + (−1)^p[α∪β − (−1)^{pq}β∪α]
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(29);
        for order in [2usize, 3] {
            let g = FiniteGroup::cyclic(order);
            let slice = bar(&g, 5);
            let c = slice.complex(Ring::Integers);
            for (p, q) in [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (1, 3)] {
                let a = SimplicialCochain::random(&c, p, &mut rng);
                let b = SimplicialCochain::random(&c, q, &mut rng);
                let lhs = coboundary(&c, &cup_i(&c, &a, &b, 1).unwrap());
                let mut rhs = cup_i(&c, &coboundary(&c, &a), &b, 1).unwrap();
                rhs = cochain_add(
                    &c,
                    &rhs,
                    &cochain_scale(
                        &c,
                        &cup_i(&c, &a, &coboundary(&c, &b), 1).unwrap(),
                        if (p + 1) % 2 == 0 { 1 } else { -1 },
                    ),
                );
                let bracket = cochain_add(
                    &c,
                    &cup(&c, &a, &b),
                    &cochain_scale(&c, &cup(&c, &b, &a), if (p * q) % 2 == 0 { -1 } else { 1 }),
                );
                rhs = cochain_add(
                    &c,
                    &rhs,
                    &cochain_scale(&c, &bracket, if p % 2 == 0 { 1 } else { -1 }),
                );
                assert_eq!(lhs, rhs, "cup-one identity at (p,q) = ({p},{q})");
            }
        }
    }

    #[test]
    fn cup_one_commutator_of_cocycles_is_graded() {
        // for cocycles the identity reduces to
        // d*(α∪₁β) = (−1)^p(α∪β − (−1)^{pq}β∪α)
        let g = z2();
        let slice = bar(&g, 5);
        let c = slice.complex(Ring::Integers);
        // the classical nontrivial 2-cocycle: 1 on (x, x), 0 elsewhere
        let mut f = SimplicialCochain::zero(&c, 2);
        f.values[slice.index_of(2, &[1, 1]).unwrap()] = Ring::Integers.one();
        assert!(coboundary(&c, &f).is_zero(), "f is a cocycle");
        let lhs = coboundary(&c, &cup_i(&c, &f, &f, 1).unwrap());
        let rhs = cochain_add(
            &c,
            &cup(&c, &f, &f),
            &cochain_scale(&c, &cup(&c, &f, &f), -1),
        );
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn bar_cohomology_of_z2_is_classical() {
        // H^*(BZ/2; Z) = Z, 0, Z/2, 0, Z/2
        let slice = bar(&z2(), 5);
        let c = slice.complex(Ring::Integers);
        let mats: Vec<IntMat> = (0..5).map(|n| coboundary_matrix(&c, n)).collect();
        let expected = [(1, vec![]), (0, vec![]), (0, vec![2]), (0, vec![]), (0, vec![2])];
        for n in 0..5 {
            let d_in = if n == 0 {
                IntMat::zero(c.size(0), 0)
            } else {
                mats[n - 1].clone()
            };
            let h = cohomology_at(&d_in, &mats[n], Ring::Integers).unwrap();
            assert_eq!(h.free_rank, expected[n].0, "degree {n}");
            assert_eq!(h.torsion, expected[n].1, "degree {n}");
        }
    }
}
