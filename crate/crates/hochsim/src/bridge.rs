//! Comparison maps between the Hochschild and simplicial worlds: the
//! Frobenius pairing on group rings, Φ into cochains on the cyclic bar
//! construction, the Ψ/Φ pair between scalar tables on A^{⊗n} and autopoietic
//! cochains, the nerve-level Ψ for amalgams, and the pulled-back cup-i
//! products on AP cochains.

use crate::algebra::{AmalgamCategory, BasedAlgebra};
use crate::coeff::Scalar;
use crate::hochschild::{
    tuple_count, tuple_rank, tuple_unrank, APCochain, HochschildCochain, RelativeCochain,
    RelativeSpace, TupleTable,
};
use crate::simplicial::{cup_i, FaceComplex, SimplicialCochain, SimplicialSlice, SliceKind};
use crate::Error;

/// The bar construction of a based algebra as a weighted face complex:
/// A^{⊗n} in degree n, outer faces drop a factor, inner faces merge with the
/// structure constant and vanish on zero products. The two faces A → k exist
/// only when ε(basis) = 1 is multiplicative, i.e. when every basis product
/// is nonvanishing with scalar 1 (group rings); otherwise degree 1 has no
/// faces and d* out of degree 0 is zero.
pub struct AlgebraBar<'a> {
    pub alg: &'a BasedAlgebra,
    augmented: bool,
}

impl<'a> AlgebraBar<'a> {
    pub fn new(alg: &'a BasedAlgebra) -> Self {
        let dim = alg.dim();
        let one = alg.ring.one();
        let augmented = (0..dim).all(|a| {
            (0..dim).all(|b| matches!(alg.product(a, b), Some((mu, _)) if mu == one))
        });
        AlgebraBar { alg, augmented }
    }

    /// Whether ε(basis) = 1 is multiplicative. When it is not, the dual
    /// complex satisfies d*² = 0 and the product identities only on tuples
    /// with nonvanishing product; the comparison maps kill the rest.
    pub fn augmented(&self) -> bool {
        self.augmented
    }
}

impl FaceComplex for AlgebraBar<'_> {
    fn ring(&self) -> crate::coeff::Ring {
        self.alg.ring
    }

    fn size(&self, n: usize) -> usize {
        tuple_count(self.alg.dim(), n)
    }

    fn face(&self, n: usize, i: usize, idx: usize) -> Option<(Scalar, usize)> {
        let dim = self.alg.dim();
        let one = self.alg.ring.one();
        if n == 1 {
            return self.augmented.then_some((one, 0));
        }
        if i == 0 {
            return Some((one, idx % tuple_count(dim, n - 1)));
        }
        if i == n {
            return Some((one, idx / dim));
        }
        let t = tuple_unrank(dim, n, idx);
        let (mu, m) = self.alg.product(t[i - 1], t[i])?;
        let mut merged = t[..i - 1].to_vec();
        merged.push(m);
        merged.extend_from_slice(&t[i + 1..]);
        Some((mu, tuple_rank(dim, &merged)))
    }
}

/// ⟨z, w⟩ = Σ_g z_g w_{g⁻¹}, the Frobenius pairing of a group ring.
pub fn frobenius(alg: &BasedAlgebra, z: &[Scalar], w: &[Scalar]) -> Result<Scalar, Error> {
    let group = alg.group().ok_or(Error::NotGroupRing)?;
    let ring = alg.ring;
    let mut acc = ring.zero();
    for (g, zg) in z.iter().enumerate() {
        if zg.is_zero() {
            continue;
        }
        let wh = &w[group.inverse(g)];
        if !wh.is_zero() {
            acc = ring.add(&acc, &ring.mul(zg, wh));
        }
    }
    Ok(acc)
}

/// Φ_n(f)(g_0 ⊗ … ⊗ g_n) = ⟨g_0, f(g_1 ⊗ … ⊗ g_n)⟩ as a cochain on the
/// cyclic bar construction.
pub fn phi_n(
    alg: &BasedAlgebra,
    slice: &SimplicialSlice,
    f: &HochschildCochain,
) -> Result<SimplicialCochain, Error> {
    let group = alg.group().ok_or(Error::NotGroupRing)?;
    match slice.kind {
        SliceKind::CyclicBar { order } | SliceKind::CyclicBarUnit { order }
            if order == group.order() => {}
        _ => return Err(Error::SliceMismatch),
    }
    let n = f.degree;
    let dim = alg.dim();
    let values = (0..slice.size(n))
        .map(|idx| {
            let t = slice.simplex(n, idx);
            let rest = tuple_rank(dim, &t[1..]);
            f.values[rest][group.inverse(t[0])].clone()
        })
        .collect();
    Ok(SimplicialCochain { degree: n, values })
}

/// Ψ(α)(φ₁ ⊗ … ⊗ φₙ) = α(φ₁ ⊗ … ⊗ φₙ)·(φ₁φ₂…φₙ). Needs idempotent
/// structure constants; α is a scalar table on A^{⊗n} (a cochain over
/// [`AlgebraBar`]).
pub fn psi(
    alg: &BasedAlgebra,
    table: &TupleTable,
    alpha: &SimplicialCochain,
) -> Result<APCochain, Error> {
    if !alg.idempotent_flag {
        return Err(Error::NotIdempotent);
    }
    assert_eq!(table.degree, alpha.degree);
    let lambdas = table.nonzero.iter().map(|&r| alpha.values[r].clone()).collect();
    Ok(APCochain { degree: alpha.degree, lambdas, strict: true })
}

/// Ψ entered from a simplicial cochain on bar(G); for a group ring the
/// degree-n simplices of bar(G) are exactly the basis n-tuples.
pub fn psi_from_bar_slice(
    alg: &BasedAlgebra,
    slice: &SimplicialSlice,
    alpha: &SimplicialCochain,
) -> Result<APCochain, Error> {
    let group = alg.group().ok_or(Error::NotGroupRing)?;
    if slice.kind != (SliceKind::Bar { order: group.order() }) {
        return Err(Error::SliceMismatch);
    }
    let table = TupleTable::build(alg, alpha.degree);
    psi(alg, &table, alpha)
}

/// Φ(f) = the λ-table on tuples with nonvanishing product, zero elsewhere.
pub fn phi_general(alg: &BasedAlgebra, table: &TupleTable, f: &APCochain) -> SimplicialCochain {
    assert_eq!(table.degree, f.degree);
    let ring = alg.ring;
    let mut values = vec![ring.zero(); tuple_count(alg.dim(), f.degree)];
    for (pos, &r) in table.nonzero.iter().enumerate() {
        values[r] = f.lambdas[pos].clone();
    }
    SimplicialCochain { degree: f.degree, values }
}

/// f ∪_i g on autopoietic cochains, defined by pull-back:
/// Ψ(Φ(f) ∪_i Φ(g)).
pub fn cup_i_on_ap(
    alg: &BasedAlgebra,
    f: &APCochain,
    g: &APCochain,
    i: usize,
) -> Result<APCochain, Error> {
    if !alg.idempotent_flag {
        return Err(Error::NotIdempotent);
    }
    let bar = AlgebraBar::new(alg);
    let tf = TupleTable::build(alg, f.degree);
    let tg = TupleTable::build(alg, g.degree);
    let fa = phi_general(alg, &tf, f);
    let ga = phi_general(alg, &tg, g);
    let prod = cup_i(&bar, &fa, &ga, i)?;
    let t_out = TupleTable::build(alg, prod.degree);
    psi(alg, &t_out, &prod)
}

/// Nerve-level Ψ : B^n → C^n. Degree 0 sends γ to γ(i)·e_{ii}; in positive
/// degree a nerve simplex is a composable tuple and the value is γ times the
/// product morphism.
pub fn psi_nerve(
    cat: &AmalgamCategory,
    ring: crate::coeff::Ring,
    slice: &SimplicialSlice,
    space: &RelativeSpace,
    gamma: &SimplicialCochain,
) -> Result<RelativeCochain, Error> {
    match slice.kind {
        SliceKind::Nerve { objects, morphisms }
            if objects == cat.objects() && morphisms == cat.morphism_count() => {}
        _ => return Err(Error::SliceMismatch),
    }
    assert_eq!(space.degree, gamma.degree);
    let n = gamma.degree;
    let mut out = RelativeCochain::zero(space, ring);
    for idx in 0..slice.size(n) {
        let t = slice.simplex(n, idx);
        let tuple_idx = space.tuple_index(t);
        let target = if n == 0 {
            cat.identity_loop(t[0])
        } else {
            t[1..].iter().fold(t[0], |acc, &m| cat.compose(acc, m).expect("composable"))
        };
        let local = space.targets[tuple_idx]
            .iter()
            .position(|&w| w == target)
            .expect("product morphism lies between the endpoints");
        out.values[tuple_idx][local] = gamma.values[idx].clone();
    }
    Ok(out)
}

/// AP over the full tensor powers → AP over the E-relative powers. For
/// amalgams the nonvanishing-product tuples are exactly the composable ones,
/// so this is a relabelling; degree 0 sends the strict λ to λ·e_{ii} at every
/// object.
pub fn ap_to_relative(
    alg: &BasedAlgebra,
    cat: &AmalgamCategory,
    table: &TupleTable,
    space: &RelativeSpace,
    f: &APCochain,
) -> RelativeCochain {
    assert_eq!(table.degree, f.degree);
    assert_eq!(space.degree, f.degree);
    let ring = alg.ring;
    let mut out = RelativeCochain::zero(space, ring);
    if f.degree == 0 {
        for i in 0..cat.objects() {
            let local = space.targets[i]
                .iter()
                .position(|&w| w == cat.identity_loop(i))
                .unwrap();
            out.values[i][local] = f.lambdas[0].clone();
        }
        return out;
    }
    for (pos, &r) in table.nonzero.iter().enumerate() {
        let t = tuple_unrank(alg.dim(), f.degree, r);
        let tuple_idx = space.tuple_index(&t);
        let (_, m) = table.products[r].clone().unwrap();
        let local = space.targets[tuple_idx].iter().position(|&w| w == m).unwrap();
        out.values[tuple_idx][local] = f.lambdas[pos].clone();
    }
    out
}

/// Inverse of [`ap_to_relative`] in positive degree: extracts λ from the
/// coefficient of the product morphism; None when the relative cochain is not
/// autopoietic (some off-product coefficient is nonzero).
pub fn relative_to_ap(
    alg: &BasedAlgebra,
    cat: &AmalgamCategory,
    table: &TupleTable,
    space: &RelativeSpace,
    rc: &RelativeCochain,
) -> Option<APCochain> {
    assert_eq!(space.degree, rc.degree);
    assert!(rc.degree >= 1, "degree 0 of the relative complex is per-object");
    let mut lambdas = Vec::with_capacity(table.nonzero.len());
    for &r in &table.nonzero {
        let t = tuple_unrank(alg.dim(), rc.degree, r);
        let tuple_idx = space.tuple_index(&t);
        let (_, m) = table.products[r].clone().unwrap();
        let mut lambda = alg.ring.zero();
        for (local, v) in rc.values[tuple_idx].iter().enumerate() {
            let w = space.targets[tuple_idx][local];
            if w == m {
                lambda = v.clone();
            } else if !v.is_zero() {
                return None;
            }
        }
        lambdas.push(lambda);
    }
    let _ = cat;
    Some(APCochain { degree: rc.degree, lambdas, strict: true })
}

/// Extension by zero of a relative cochain to a full Hochschild cochain:
/// non-composable tuples carry zero.
pub fn relative_to_full(
    alg: &BasedAlgebra,
    space: &RelativeSpace,
    rc: &RelativeCochain,
) -> HochschildCochain {
    assert!(rc.degree >= 1);
    let mut out = HochschildCochain::zero(alg, rc.degree);
    for (tuple_idx, t) in space.tuples.iter().enumerate() {
        let r = tuple_rank(alg.dim(), t);
        for (local, v) in rc.values[tuple_idx].iter().enumerate() {
            out.values[r][space.targets[tuple_idx][local]] = v.clone();
        }
    }
    out
}
