//! Assembles complexes, computes cohomology tables, and runs the headline
//! verifications: the AP/classifying-space isomorphism, the AP ⊕ NP
//! splitting, the amalgam decomposition, and the randomized cochain-level
//! identity checks.

use num::{BigInt, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{group_ring, AmalgamCategory, BasedAlgebra, FiniteGroup};
use crate::bridge::{
    cup_i_on_ap, phi_general, psi, AlgebraBar,
};
use crate::coeff::{cohomology_at, CohomologyGroup, IntMat, Ring};
use crate::hochschild::{
    ap_split, build_complex, delta, embed_ap, gerstenhaber, is_autopoietic,
    is_non_autopoietic, pre_lie, variant_dimension, APCochain, HochschildCochain, TupleTable,
    Variant,
};
use crate::simplicial::{
    bar, coboundary, coboundary_matrix, cochain_add, cochain_scale, cup, cup_i, nerve,
    FaceComplex, SimplicialCochain, SimplicialSlice,
};
use crate::Error;

/// Reported degrees may not exceed this cap unless an explicit cell budget
/// is supplied.
pub fn degree_cap(dim: usize) -> usize {
    match dim {
        0..=4 => 4,
        5..=8 => 3,
        9..=16 => 2,
        _ => 1,
    }
}

fn check_guard(
    alg: &BasedAlgebra,
    variant: Variant,
    max_degree: usize,
    cell_budget: Option<usize>,
) -> Result<(), Error> {
    if max_degree == 0 {
        return Ok(());
    }
    match cell_budget {
        None => {
            let cap = degree_cap(alg.dim());
            if max_degree - 1 > cap {
                return Err(Error::DegreeCapExceeded {
                    requested: max_degree - 1,
                    cap,
                    dim: alg.dim(),
                });
            }
            Ok(())
        }
        Some(budget) => {
            let mut needed = 0usize;
            let mut dims = Vec::with_capacity(max_degree + 1);
            for n in 0..=max_degree {
                dims.push(variant_dimension(alg, variant, n)?);
            }
            for n in 0..max_degree {
                needed = needed.saturating_add(dims[n] * dims[n + 1]);
            }
            if needed > budget {
                Err(Error::BudgetExceeded { needed, budget })
            } else {
                Ok(())
            }
        }
    }
}

fn cohomology_from_matrices(
    mats: &[IntMat],
    ring: Ring,
) -> Result<Vec<CohomologyGroup>, Error> {
    let mut out = Vec::with_capacity(mats.len());
    for n in 0..mats.len() {
        let d_out = &mats[n];
        let zero_in;
        let d_in = if n == 0 {
            zero_in = IntMat::zero(d_out.cols(), 0);
            &zero_in
        } else {
            &mats[n - 1]
        };
        out.push(cohomology_at(d_in, d_out, ring)?);
    }
    Ok(out)
}

/// Hochschild cohomology of the chosen complex variant in degrees
/// 0..max_degree-1. The last degree needs the outgoing differential, so the
/// complex is built one step further.
pub fn hochschild_cohomology(
    alg: &BasedAlgebra,
    variant: Variant,
    max_degree: usize,
    cell_budget: Option<usize>,
) -> Result<Vec<CohomologyGroup>, Error> {
    check_guard(alg, variant, max_degree, cell_budget)?;
    if max_degree == 0 {
        return Ok(Vec::new());
    }
    let mats = build_complex(alg, variant, max_degree)?;
    cohomology_from_matrices(&mats, alg.ring)
}

/// Simplicial cohomology of a stored slice in degrees 0..max_degree-1.
pub fn simplicial_cohomology(
    slice: &SimplicialSlice,
    ring: Ring,
    max_degree: usize,
) -> Result<Vec<CohomologyGroup>, Error> {
    if max_degree == 0 {
        return Ok(Vec::new());
    }
    if slice.max_degree() < max_degree {
        return Err(Error::InvalidInput(format!(
            "slice stores degrees up to {}, need {}",
            slice.max_degree(),
            max_degree
        )));
    }
    let c = slice.complex(ring);
    let mats: Vec<IntMat> = (0..max_degree).map(|n| coboundary_matrix(&c, n)).collect();
    cohomology_from_matrices(&mats, ring)
}

/// Direct sum in the invariant-factor normal form.
pub fn direct_sum(a: &CohomologyGroup, b: &CohomologyGroup) -> CohomologyGroup {
    let mut primaries = a.primary_components();
    primaries.extend(b.primary_components());
    normal_form(a.free_rank + b.free_rank, primaries)
}

fn normal_form(free_rank: usize, primaries: Vec<(u64, u32)>) -> CohomologyGroup {
    use std::collections::BTreeMap;
    let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for (p, e) in primaries {
        by_prime.entry(p).or_default().push(e);
    }
    let depth = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut factors = vec![1u64; depth];
    for (p, mut exps) in by_prime {
        exps.sort_unstable_by(|a, b| b.cmp(a));
        for (k, e) in exps.into_iter().enumerate() {
            factors[k] = factors[k].checked_mul(p.pow(e)).expect("factor overflow");
        }
    }
    factors.reverse();
    CohomologyGroup { free_rank, torsion: factors }
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeComparison {
    pub degree: usize,
    pub lhs: CohomologyGroup,
    pub rhs: CohomologyGroup,
    #[serde(rename = "match")]
    pub is_match: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub trials: usize,
    pub failures: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedTable {
    pub name: String,
    pub groups: Vec<CohomologyGroup>,
}

/// Verification report; serializable, deterministic for fixed inputs/seed.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub check: String,
    pub inputs: serde_json::Value,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub per_degree: Vec<DegreeComparison>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub identities: Vec<IdentityCheck>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub tables: Vec<NamedTable>,
    pub pass: bool,
}

fn compare_tables(lhs: &[CohomologyGroup], rhs: &[CohomologyGroup]) -> Vec<DegreeComparison> {
    lhs.iter()
        .zip(rhs)
        .enumerate()
        .map(|(degree, (l, r))| DegreeComparison {
            degree,
            lhs: l.clone(),
            rhs: r.clone(),
            is_match: l == r,
        })
        .collect()
}

/// Invariant factors of `H^n(AP(k[G]^{⊗*}))` against `H^n(BG; k)` computed from
/// the bar complex, degree by degree.
pub fn verify_ap_iso(g: &FiniteGroup, ring: Ring, max_degree: usize) -> Result<Report, Error> {
    let alg = group_ring(g, ring);
    let lhs = hochschild_cohomology(&alg, Variant::Ap, max_degree, None)?;
    let slice = bar(g, max_degree);
    let rhs = simplicial_cohomology(&slice, ring, max_degree)?;
    let per_degree = compare_tables(&lhs, &rhs);
    let pass = per_degree.iter().all(|d| d.is_match);
    Ok(Report {
        check: "ap_iso".into(),
        inputs: serde_json::json!({
            "group_order": g.order(),
            "ring": ring_label(ring),
            "max_degree": max_degree,
        }),
        per_degree,
        identities: Vec::new(),
        tables: vec![
            NamedTable { name: "ap_complex".into(), groups: lhs },
            NamedTable { name: "bar_complex".into(), groups: rhs },
        ],
        pass,
    })
}

/// H^n(Full) against H^n(AP) ⊕ H^n(NP), plus the cochain-level dimension
/// identity dim AP + dim NP = dim Full.
pub fn verify_splitting(g: &FiniteGroup, ring: Ring, max_degree: usize) -> Result<Report, Error> {
    let alg = group_ring(g, ring);
    let full = hochschild_cohomology(&alg, Variant::Full, max_degree, None)?;
    let ap = hochschild_cohomology(&alg, Variant::Ap, max_degree, None)?;
    let np = hochschild_cohomology(&alg, Variant::Np, max_degree, None)?;
    let summed: Vec<CohomologyGroup> =
        ap.iter().zip(&np).map(|(a, b)| direct_sum(a, b)).collect();
    let mut per_degree = compare_tables(&full, &summed);
    let mut dims_ok = true;
    for n in 0..=max_degree {
        let a = variant_dimension(&alg, Variant::Ap, n)?;
        let b = variant_dimension(&alg, Variant::Np, n)?;
        let f = variant_dimension(&alg, Variant::Full, n)?;
        if a + b != f {
            dims_ok = false;
        }
    }
    let pass = dims_ok && per_degree.iter().all(|d| d.is_match);
    if !dims_ok {
        per_degree.clear();
    }
    Ok(Report {
        check: "splitting".into(),
        inputs: serde_json::json!({
            "group_order": g.order(),
            "ring": ring_label(ring),
            "max_degree": max_degree,
        }),
        per_degree,
        identities: vec![IdentityCheck {
            name: "cochain_dimensions_ap_plus_np".into(),
            trials: max_degree + 1,
            failures: if dims_ok { 0 } else { 1 },
            pass: dims_ok,
        }],
        tables: vec![
            NamedTable { name: "full".into(), groups: full },
            NamedTable { name: "ap".into(), groups: ap },
            NamedTable { name: "np".into(), groups: np },
        ],
        pass,
    })
}

/// HH^* of the E-relative complex of `k[C]` against
/// `H^*(nerve) ⊕ Σ_i H^*(NP(k[G_i]))`.
pub fn verify_amalgam_theorem(
    cat: &AmalgamCategory,
    ring: Ring,
    max_degree: usize,
) -> Result<Report, Error> {
    let alg = crate::algebra::amalgam_algebra(cat, ring);
    let lhs = hochschild_cohomology(&alg, Variant::RelativeE, max_degree, None)?;
    let slice = nerve(cat, max_degree);
    let nerve_groups = simplicial_cohomology(&slice, ring, max_degree)?;
    let mut tables = vec![
        NamedTable { name: "relative_hochschild".into(), groups: lhs.clone() },
        NamedTable { name: "nerve".into(), groups: nerve_groups.clone() },
    ];
    let mut rhs = nerve_groups;
    for i in 0..cat.objects() {
        let g_alg = group_ring(cat.group(i), ring);
        let np = hochschild_cohomology(&g_alg, Variant::Np, max_degree, None)?;
        rhs = rhs.iter().zip(&np).map(|(a, b)| direct_sum(a, b)).collect();
        tables.push(NamedTable { name: format!("np_object_{i}"), groups: np });
    }
    let per_degree = compare_tables(&lhs, &rhs);
    let pass = per_degree.iter().all(|d| d.is_match);
    Ok(Report {
        check: "amalgam_theorem".into(),
        inputs: serde_json::json!({
            "objects": cat.objects(),
            "group_orders": (0..cat.objects()).map(|i| cat.group(i).order()).collect::<Vec<_>>(),
            "ring": ring_label(ring),
            "max_degree": max_degree,
        }),
        per_degree,
        identities: Vec::new(),
        tables,
        pass,
    })
}

pub fn ring_label(ring: Ring) -> String {
    match ring {
        Ring::Integers => "Z".into(),
        Ring::Mod(m) => format!("Z/{m}"),
        Ring::Rationals => "Q".into(),
    }
}

/// Randomized exact checks of the cochain-level structure: coboundaries
/// square to zero, AP closure under the products, the Ψ/Φ diagrams, the
/// DG-algebra and cup-one/pre-Lie comparisons, and the cup-i coboundary
/// identity on its supported range (∪_0 = ∪, ∪_1; higher arities must
/// report UnsupportedArity). Deterministic for a fixed seed.
pub fn verify_einfty_identities(
    alg: &BasedAlgebra,
    trials: usize,
    seed: u64,
    max_degree: usize,
) -> Result<Report, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ring = alg.ring;
    let bar_c = AlgebraBar::new(alg);
    let tables: Vec<TupleTable> =
        (0..=max_degree.min(3) * 2 + 1).map(|n| TupleTable::build(alg, n)).collect();
    let is_group = alg.group().is_some();
    let mut checks: Vec<IdentityCheck> = Vec::new();
    let mut record = |name: &str, trials: usize, failures: usize| {
        checks.push(IdentityCheck {
            name: name.into(),
            trials,
            failures,
            pass: failures == 0,
        });
    };

    // δ² = 0
    let mut fail = 0;
    for _ in 0..trials {
        let n = pick_degree(&mut rng, max_degree);
        let f = HochschildCochain::random(alg, n, &mut rng);
        if !delta(alg, &delta(alg, &f)).is_zero() {
            fail += 1;
        }
    }
    record("delta_squared_zero", trials, fail);

    // d*² = 0 on scalar tables; off composable support the dual of the bar
    // construction is only a complex for augmented algebras, so the check is
    // restricted to nonvanishing-product tuples otherwise
    let augmented = bar_c.augmented();
    let mut fail = 0;
    for _ in 0..trials {
        let n = pick_degree(&mut rng, max_degree);
        let a = SimplicialCochain::random(&bar_c, n, &mut rng);
        let dd = coboundary(&bar_c, &coboundary(&bar_c, &a));
        let ok = if augmented {
            dd.is_zero()
        } else {
            tables[n + 2].nonzero.iter().all(|&r| dd.values[r].is_zero())
        };
        if !ok {
            fail += 1;
        }
    }
    record(
        if augmented { "coboundary_squared_zero" } else { "coboundary_squared_zero_on_support" },
        trials,
        fail,
    );

    // AP closure under δ, the Gerstenhaber product and the pre-Lie product
    let mut fail = [0usize; 3];
    for _ in 0..trials {
        let p = pick_degree(&mut rng, max_degree).max(1);
        let q = pick_degree(&mut rng, max_degree).max(1);
        let f = APCochain::random(&tables[p], ring, &mut rng);
        let g = APCochain::random(&tables[q], ring, &mut rng);
        let ef = embed_ap(alg, &tables[p], &f);
        let eg = embed_ap(alg, &tables[q], &g);
        if !is_autopoietic(alg, &tables[p + 1], &delta(alg, &ef)) {
            fail[0] += 1;
        }
        if !is_autopoietic(alg, &tables[p + q], &gerstenhaber(alg, &ef, &eg)) {
            fail[1] += 1;
        }
        if !is_autopoietic(alg, &tables[p + q - 1], &pre_lie(alg, &ef, &eg)?) {
            fail[2] += 1;
        }
    }
    record("ap_closed_under_delta", trials, fail[0]);
    record("ap_closed_under_gerstenhaber", trials, fail[1]);
    record("ap_closed_under_pre_lie", trials, fail[2]);

    // NP closure under δ (group rings; the degree-0 condition needs one object)
    if is_group {
        let mut fail = 0;
        for _ in 0..trials {
            let n = pick_degree(&mut rng, max_degree);
            let f = HochschildCochain::random(alg, n, &mut rng);
            let (_, np) = ap_split(alg, &tables[n], &f);
            if !is_non_autopoietic(alg, &tables[n + 1], &delta(alg, &np)) {
                fail += 1;
            }
        }
        record("np_closed_under_delta", trials, fail);
    }

    // Ψ∘Φ = 1 on AP; Φ∘Ψ = 1 (the latter needs total products)
    let mut fail = [0usize; 2];
    for _ in 0..trials {
        let n = pick_degree(&mut rng, max_degree);
        let f = APCochain::random(&tables[n], ring, &mut rng);
        if psi(alg, &tables[n], &phi_general(alg, &tables[n], &f))? != f {
            fail[0] += 1;
        }
        if is_group {
            let a = SimplicialCochain::random(&bar_c, n, &mut rng);
            if phi_general(alg, &tables[n], &psi(alg, &tables[n], &a)?) != a {
                fail[1] += 1;
            }
        }
    }
    record("psi_phi_identity_on_ap", trials, fail[0]);
    if is_group {
        record("phi_psi_identity", trials, fail[1]);
    }

    // Ψ∘d* = δ∘Ψ everywhere; Φ∘δ = d*∘Φ on nonvanishing tuple products
    let mut fail = [0usize; 2];
    for _ in 0..trials {
        let n = pick_degree(&mut rng, max_degree);
        let a = SimplicialCochain::random(&bar_c, n, &mut rng);
        let lhs = psi(alg, &tables[n + 1], &coboundary(&bar_c, &a))?;
        let rhs = delta(alg, &embed_ap(alg, &tables[n], &psi(alg, &tables[n], &a)?));
        if embed_ap(alg, &tables[n + 1], &lhs) != rhs {
            fail[0] += 1;
        }
        let f = APCochain::random(&tables[n], ring, &mut rng);
        let (d_ap, rest) = ap_split(alg, &tables[n + 1], &delta(alg, &embed_ap(alg, &tables[n], &f)));
        if !rest.is_zero() {
            fail[1] += 1;
        }
        let lhs2 = phi_general(alg, &tables[n + 1], &d_ap);
        let rhs2 = coboundary(&bar_c, &phi_general(alg, &tables[n], &f));
        for &r in &tables[n + 1].nonzero {
            if lhs2.values[r] != rhs2.values[r] {
                fail[1] += 1;
                break;
            }
        }
        if is_group && lhs2 != rhs2 {
            fail[1] += 1;
        }
    }
    record("psi_commutes_with_coboundary", trials, fail[0]);
    record("phi_commutes_with_coboundary", trials, fail[1]);

    // Ψ(α ∪ β) = Ψα ·_G Ψβ and Ψ(α ∪₁ β) = Ψα ∘ Ψβ
    let mut fail = [0usize; 2];
    for _ in 0..trials {
        let p = pick_degree(&mut rng, max_degree).max(1);
        let q = pick_degree(&mut rng, max_degree).max(1);
        let a = SimplicialCochain::random(&bar_c, p, &mut rng);
        let b = SimplicialCochain::random(&bar_c, q, &mut rng);
        let pa = embed_ap(alg, &tables[p], &psi(alg, &tables[p], &a)?);
        let pb = embed_ap(alg, &tables[q], &psi(alg, &tables[q], &b)?);
        let lhs = embed_ap(alg, &tables[p + q], &psi(alg, &tables[p + q], &cup(&bar_c, &a, &b))?);
        if lhs != gerstenhaber(alg, &pa, &pb) {
            fail[0] += 1;
        }
        let lhs1 = embed_ap(
            alg,
            &tables[p + q - 1],
            &psi(alg, &tables[p + q - 1], &cup_i(&bar_c, &a, &b, 1)?)?,
        );
        if lhs1 != pre_lie(alg, &pa, &pb)? {
            fail[1] += 1;
        }
    }
    record("psi_takes_cup_to_gerstenhaber", trials, fail[0]);
    record("psi_takes_cup_one_to_pre_lie", trials, fail[1]);

    // cup-i coboundary identity on the supported range, with ∪_0 = ∪
    let mut fail = 0;
    for _ in 0..trials {
        let p = pick_degree(&mut rng, max_degree).max(1);
        let q = pick_degree(&mut rng, max_degree).max(1);
        let a = SimplicialCochain::random(&bar_c, p, &mut rng);
        let b = SimplicialCochain::random(&bar_c, q, &mut rng);
        let support = if augmented { None } else { Some(&tables[p + q]) };
        if !cup_one_identity_holds(&bar_c, &a, &b, support) {
            fail += 1;
        }
    }
    record(
        if augmented { "cup_one_coboundary_identity" } else { "cup_one_coboundary_identity_on_support" },
        trials,
        fail,
    );
    // the convention does not extend past ∪₁; the contract is a loud error
    let a = SimplicialCochain::random(&bar_c, 1, &mut rng);
    let b = SimplicialCochain::random(&bar_c, 1, &mut rng);
    let mut fail = 0;
    for i in 2..=3 {
        if !matches!(cup_i(&bar_c, &a, &b, i), Err(Error::UnsupportedArity { .. })) {
            fail += 1;
        }
        if !matches!(
            cup_i_on_ap(
                alg,
                &APCochain::random(&tables[1], ring, &mut rng),
                &APCochain::random(&tables[1], ring, &mut rng),
                i
            ),
            Err(Error::UnsupportedArity { .. })
        ) {
            fail += 1;
        }
    }
    record("cup_i_unsupported_arity_contract", 4, fail);

    // cup-i on AP agrees with Gerstenhaber (i = 0) and pre-Lie (i = 1)
    let mut fail = 0;
    for _ in 0..trials {
        let p = pick_degree(&mut rng, max_degree).max(1);
        let q = pick_degree(&mut rng, max_degree).max(1);
        let f = APCochain::random(&tables[p], ring, &mut rng);
        let g = APCochain::random(&tables[q], ring, &mut rng);
        let ef = embed_ap(alg, &tables[p], &f);
        let eg = embed_ap(alg, &tables[q], &g);
        let c0 = cup_i_on_ap(alg, &f, &g, 0)?;
        if embed_ap(alg, &tables[p + q], &c0) != gerstenhaber(alg, &ef, &eg) {
            fail += 1;
        }
        let c1 = cup_i_on_ap(alg, &f, &g, 1)?;
        if embed_ap(alg, &tables[p + q - 1], &c1) != pre_lie(alg, &ef, &eg)? {
            fail += 1;
        }
    }
    record("cup_i_on_ap_low_arities", trials, fail);

    let pass = checks.iter().all(|c| c.pass);
    Ok(Report {
        check: "einfty_identities".into(),
        inputs: serde_json::json!({
            "dim": alg.dim(),
            "ring": ring_label(ring),
            "trials": trials,
            "seed": seed,
            "max_degree": max_degree,
        }),
        per_degree: Vec::new(),
        identities: checks,
        tables: Vec::new(),
        pass,
    })
}

fn pick_degree<R: rand::Rng>(rng: &mut R, max_degree: usize) -> usize {
    rng.gen_range(0..=max_degree.min(3))
}

fn cup_one_identity_holds<C: FaceComplex>(
    c: &C,
    a: &SimplicialCochain,
    b: &SimplicialCochain,
    support: Option<&TupleTable>,
) -> bool {
    let (p, q) = (a.degree, b.degree);
    let lhs = coboundary(c, &cup_i(c, a, b, 1).expect("cup-one in range"));
    let mut rhs = cup_i(c, &coboundary(c, a), b, 1).expect("in range");
    rhs = cochain_add(
        c,
        &rhs,
        &cochain_scale(
            c,
            &cup_i(c, a, &coboundary(c, b), 1).expect("in range"),
            if (p + 1) % 2 == 0 { 1 } else { -1 },
        ),
    );
    let bracket = cochain_add(
        c,
        &cup(c, a, b),
        &cochain_scale(c, &cup(c, b, a), if (p * q) % 2 == 0 { -1 } else { 1 }),
    );
    rhs = cochain_add(c, &rhs, &cochain_scale(c, &bracket, if p % 2 == 0 { 1 } else { -1 }));
    match support {
        None => lhs == rhs,
        Some(table) => table.nonzero.iter().all(|&r| lhs.values[r] == rhs.values[r]),
    }
}

/// b′φ + φb′ = 1 for the amalgam's E-relative bar resolution, re-exported at
/// the engine level for the verification suites.
pub fn verify_contracting_homotopy(cat: &AmalgamCategory, n: usize) -> bool {
    crate::hochschild::verify_contracting_homotopy(cat, n)
}

/// Exhaustive associativity re-check used by the structural sanity suite.
pub fn associativity_holds(alg: &BasedAlgebra) -> bool {
    let dim = alg.dim();
    for a in 0..dim {
        for b in 0..dim {
            for c in 0..dim {
                let left = alg
                    .product(a, b)
                    .and_then(|(mu, m)| {
                        alg.product(m, c).map(|(nu, k)| (alg.ring.mul(&mu, &nu), k))
                    })
                    .filter(|(s, _)| !s.is_zero());
                let right = alg
                    .product(b, c)
                    .and_then(|(mu, m)| {
                        alg.product(a, m).map(|(nu, k)| (alg.ring.mul(&mu, &nu), k))
                    })
                    .filter(|(s, _)| !s.is_zero());
                if left != right {
                    return false;
                }
            }
        }
    }
    true
}

/// Random composable morphism chains must collapse to the unique morphism
/// between their endpoints with scalar 1.
pub fn unique_morphism_collapse(cat: &AmalgamCategory, trials: usize, seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alg = crate::algebra::amalgam_algebra(cat, Ring::Integers);
    for _ in 0..trials {
        // random composable chain of length 1..=5
        let len = rand::Rng::gen_range(&mut rng, 1..=5usize);
        let start = rand::Rng::gen_range(&mut rng, 0..alg.dim());
        let mut chain = vec![start];
        for _ in 1..len {
            let cod = cat.morphism(*chain.last().unwrap()).cod;
            let options: Vec<usize> = (0..alg.dim())
                .filter(|&m| cat.morphism(m).dom == cod)
                .collect();
            chain.push(options[rand::Rng::gen_range(&mut rng, 0..options.len())]);
        }
        let dom = cat.morphism(chain[0]).dom;
        let cod = cat.morphism(*chain.last().unwrap()).cod;
        let product = alg.multiply_chain(&chain).expect("composable chains never vanish");
        if dom != cod {
            let unique = cat.mor_between(dom, cod);
            if product != (Ring::Integers.one(), unique[0]) || unique.len() != 1 {
                return false;
            }
        } else if product.0 != Ring::Integers.one() {
            return false;
        }
    }
    true
}

/// Composition of consecutive differentials, for the structural suite.
pub fn differentials_compose_to_zero(mats: &[IntMat], ring: Ring) -> bool {
    for w in mats.windows(2) {
        let prod = w[1].mul(&w[0]);
        for i in 0..prod.rows() {
            for j in 0..prod.cols() {
                let e = prod.get(i, j);
                let zero = match ring {
                    Ring::Mod(m) => e.mod_floor_is_zero(m),
                    _ => e.is_zero(),
                };
                if !zero {
                    return false;
                }
            }
        }
    }
    true
}

trait ModFloorZero {
    fn mod_floor_is_zero(&self, m: u64) -> bool;
}

impl ModFloorZero for BigInt {
    fn mod_floor_is_zero(&self, m: u64) -> bool {
        use num::Integer;
        self.mod_floor(&BigInt::from(m)).is_zero()
    }
}
