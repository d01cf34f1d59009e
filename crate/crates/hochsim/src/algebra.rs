//! Algebras with a distinguished monomial basis and scalar structure
//! constants: group rings, poset algebras and the category algebras of
//! group/poset amalgams.

use crate::coeff::{Ring, Scalar};
use crate::Error;

/// Finite group given by an explicit multiplication table.
/// `table[g][h]` is the index of the product gh.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    pub fn from_table(table: &[Vec<usize>], identity: usize) -> Result<Self, Error> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidInput("group table is empty".into()));
        }
        if identity >= n {
            return Err(Error::InvalidInput("identity index out of range".into()));
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in table {
            if row.len() != n {
                return Err(Error::InvalidInput("group table is not square".into()));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::InvalidInput("group table entry out of range".into()));
                }
                flat.push(v);
            }
        }
        let mul = |g: usize, h: usize| flat[g * n + h];
        for g in 0..n {
            if mul(identity, g) != g || mul(g, identity) != g {
                return Err(Error::InvalidInput("identity law fails".into()));
            }
        }
        for g in 0..n {
            for h in 0..n {
                for k in 0..n {
                    if mul(mul(g, h), k) != mul(g, mul(h, k)) {
                        return Err(Error::InvalidInput(format!(
                            "group table not associative at ({g}, {h}, {k})"
                        )));
                    }
                }
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for g in 0..n {
            match (0..n).find(|&h| mul(g, h) == identity && mul(h, g) == identity) {
                Some(h) => inverse[g] = h,
                None => return Err(Error::InvalidInput(format!("element {g} has no inverse"))),
            }
        }
        Ok(FiniteGroup { order: n, table: flat, identity, inverse })
    }

    /// Cyclic group of order n; index i is the i-th power of the generator.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let table: Vec<Vec<usize>> =
            (0..n).map(|g| (0..n).map(|h| (g + h) % n).collect()).collect();
        FiniteGroup::from_table(&table, 0).expect("cyclic table is a group")
    }

    pub fn trivial() -> Self {
        FiniteGroup::cyclic(1)
    }

    /// Direct product; the pair (g, h) gets index g·|H| + h.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let n = a.order * b.order;
        let table: Vec<Vec<usize>> = (0..n)
            .map(|x| {
                let (g1, h1) = (x / b.order, x % b.order);
                (0..n)
                    .map(|y| {
                        let (g2, h2) = (y / b.order, y % b.order);
                        a.mul(g1, g2) * b.order + b.mul(h1, h2)
                    })
                    .collect()
            })
            .collect();
        FiniteGroup::from_table(&table, a.identity * b.order + b.identity)
            .expect("product table is a group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g * self.order + h]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }
}

/// Finite poset as a reflexive, antisymmetric, transitive relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    size: usize,
    leq: Vec<bool>,
}

impl FinitePoset {
    /// Builds the reflexive-transitive closure of the given relations and
    /// rejects cycles (antisymmetry failures).
    pub fn from_relations(size: usize, relations: &[(usize, usize)]) -> Result<Self, Error> {
        if size == 0 {
            return Err(Error::InvalidInput("poset must have at least one element".into()));
        }
        let mut leq = vec![false; size * size];
        for i in 0..size {
            leq[i * size + i] = true;
        }
        for &(i, j) in relations {
            if i >= size || j >= size {
                return Err(Error::InvalidInput(format!("relation ({i}, {j}) out of range")));
            }
            leq[i * size + j] = true;
        }
        for k in 0..size {
            for i in 0..size {
                if leq[i * size + k] {
                    for j in 0..size {
                        if leq[k * size + j] {
                            leq[i * size + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..size {
            for j in 0..size {
                if i != j && leq[i * size + j] && leq[j * size + i] {
                    return Err(Error::InvalidInput(format!(
                        "relation contains a cycle through {i} and {j}"
                    )));
                }
            }
        }
        Ok(FinitePoset { size, leq })
    }

    /// Total order 0 ≺ 1 ≺ … ≺ n-1.
    pub fn chain(n: usize) -> Self {
        let rels: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        FinitePoset::from_relations(n, &rels).expect("chain is a poset")
    }

    pub fn antichain(n: usize) -> Self {
        FinitePoset::from_relations(n, &[]).expect("antichain is a poset")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.size + j]
    }
}

/// A morphism of an amalgam category: a loop g ∈ G_i at object i, or the
/// unique strict morphism i → j for i ≺ j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub dom: usize,
    pub cod: usize,
    /// Group element index for loops; None for the strict morphisms.
    pub element: Option<usize>,
}

/// Category built from a finite poset with a group of endomorphisms at each
/// object and a unique morphism along each strict relation.
#[derive(Clone, Debug)]
pub struct AmalgamCategory {
    poset: FinitePoset,
    groups: Vec<FiniteGroup>,
    morphisms: Vec<Morphism>,
    loop_offset: Vec<usize>,
    strict: Vec<Vec<Option<usize>>>,
}

impl AmalgamCategory {
    pub fn new(poset: FinitePoset, groups: Vec<FiniteGroup>) -> Result<Self, Error> {
        if groups.len() != poset.size() {
            return Err(Error::InvalidInput(format!(
                "amalgam needs one group per object: {} objects, {} groups",
                poset.size(),
                groups.len()
            )));
        }
        let n = poset.size();
        let mut morphisms = Vec::new();
        let mut loop_offset = Vec::with_capacity(n);
        for (i, g) in groups.iter().enumerate() {
            loop_offset.push(morphisms.len());
            for k in 0..g.order() {
                morphisms.push(Morphism { dom: i, cod: i, element: Some(k) });
            }
        }
        let mut strict = vec![vec![None; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i != j && poset.leq(i, j) {
                    strict[i][j] = Some(morphisms.len());
                    morphisms.push(Morphism { dom: i, cod: j, element: None });
                }
            }
        }
        Ok(AmalgamCategory { poset, groups, morphisms, loop_offset, strict })
    }

    pub fn from_poset(poset: FinitePoset) -> Self {
        let groups = vec![FiniteGroup::trivial(); poset.size()];
        AmalgamCategory::new(poset, groups).expect("poset promotes to an amalgam")
    }

    pub fn single_object(group: FiniteGroup) -> Self {
        AmalgamCategory::new(FinitePoset::chain(1), vec![group])
            .expect("one-object amalgam is valid")
    }

    pub fn objects(&self) -> usize {
        self.poset.size()
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn group(&self, i: usize) -> &FiniteGroup {
        &self.groups[i]
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn morphism(&self, idx: usize) -> &Morphism {
        &self.morphisms[idx]
    }

    pub fn identity_loop(&self, i: usize) -> usize {
        self.loop_offset[i] + self.groups[i].identity()
    }

    pub fn loop_index(&self, i: usize, element: usize) -> usize {
        self.loop_offset[i] + element
    }

    /// All morphisms i → j, in basis order.
    pub fn mor_between(&self, i: usize, j: usize) -> Vec<usize> {
        if i == j {
            (0..self.groups[i].order()).map(|k| self.loop_index(i, k)).collect()
        } else {
            self.strict[i][j].into_iter().collect()
        }
    }

    /// Left-to-right composition; None when codomain and domain mismatch.
    pub fn compose(&self, a: usize, b: usize) -> Option<usize> {
        let (ma, mb) = (&self.morphisms[a], &self.morphisms[b]);
        if ma.cod != mb.dom {
            return None;
        }
        Some(match (ma.element, mb.element) {
            (Some(g), Some(h)) => self.loop_index(ma.dom, self.groups[ma.dom].mul(g, h)),
            // group elements are absorbed by the strict morphisms
            (Some(_), None) | (None, Some(_)) | (None, None) => {
                self.strict[ma.dom][mb.cod].expect("strict morphism exists by transitivity")
            }
        })
    }

    fn label(&self, idx: usize) -> String {
        let m = &self.morphisms[idx];
        match m.element {
            Some(k) if k == self.groups[m.dom].identity() => format!("e({},{})", m.dom, m.cod),
            Some(k) => format!("g{}({})", k, m.dom),
            None => format!("e({},{})", m.dom, m.cod),
        }
    }
}

/// What a based algebra was built from. Downstream operations use this to
/// reach group inverses, poset structure or morphism endpoints.
#[derive(Clone, Debug)]
pub enum AlgebraKind {
    GroupRing(FiniteGroup),
    Poset(FinitePoset),
    Amalgam(AmalgamCategory),
    General,
}

/// Free k-module with basis φ_0, …, φ_{dim-1} and products
/// φ_α·φ_β = μ_{α,β}·φ_m. The product table stores None for zero products
/// and nonzero μ otherwise.
#[derive(Clone, Debug)]
pub struct BasedAlgebra {
    pub ring: Ring,
    dim: usize,
    product: Vec<Option<(Scalar, usize)>>,
    unit: Vec<Scalar>,
    labels: Vec<String>,
    pub idempotent_flag: bool,
    pub kind: AlgebraKind,
}

impl BasedAlgebra {
    /// General constructor; validates associativity and the unit law and
    /// computes the idempotent flag.
    pub fn from_parts(
        ring: Ring,
        dim: usize,
        mut product: Vec<Option<(Scalar, usize)>>,
        unit: Vec<Scalar>,
        labels: Vec<String>,
        kind: AlgebraKind,
    ) -> Result<Self, Error> {
        assert_eq!(product.len(), dim * dim);
        assert_eq!(unit.len(), dim);
        assert_eq!(labels.len(), dim);
        for entry in product.iter_mut() {
            if let Some((mu, _)) = entry {
                if mu.is_zero() {
                    *entry = None;
                }
            }
        }
        let idempotent_flag = product
            .iter()
            .flatten()
            .all(|(mu, _)| ring.is_idempotent(mu));
        let alg = BasedAlgebra { ring, dim, product, unit, labels, idempotent_flag, kind };
        alg.check_associative()?;
        alg.check_unit()?;
        Ok(alg)
    }

    fn check_associative(&self) -> Result<(), Error> {
        for a in 0..self.dim {
            for b in 0..self.dim {
                for c in 0..self.dim {
                    let left = self
                        .mul_scaled(self.product(a, b), c, false);
                    let right = self.mul_scaled(self.product(b, c), a, true);
                    if left != right {
                        return Err(Error::InvalidInput(format!(
                            "structure constants not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    // (μ·φ_m)·φ_c, or φ_c·(μ·φ_m) when `from_left`
    fn mul_scaled(
        &self,
        part: Option<(Scalar, usize)>,
        c: usize,
        from_left: bool,
    ) -> Option<(Scalar, usize)> {
        let (mu, m) = part?;
        let next = if from_left { self.product(c, m) } else { self.product(m, c) }?;
        let scalar = self.ring.mul(&mu, &next.0);
        if scalar.is_zero() {
            None
        } else {
            Some((scalar, next.1))
        }
    }

    fn check_unit(&self) -> Result<(), Error> {
        for b in 0..self.dim {
            let mut basis = vec![self.ring.zero(); self.dim];
            basis[b] = self.ring.one();
            if self.vector_mul(&self.unit, &basis) != basis
                || self.vector_mul(&basis, &self.unit) != basis
            {
                return Err(Error::InvalidInput(format!(
                    "unit vector is not a two-sided identity at basis element {b}"
                )));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self, idx: usize) -> &str {
        &self.labels[idx]
    }

    pub fn unit_vector(&self) -> &[Scalar] {
        &self.unit
    }

    /// First basis index in the support of the unit. For group rings this is
    /// the group identity; it anchors the degree-0 splitting convention.
    pub fn unit_support_head(&self) -> usize {
        self.unit
            .iter()
            .position(|c| !c.is_zero())
            .expect("unit vector cannot be zero")
    }

    pub fn product(&self, a: usize, b: usize) -> Option<(Scalar, usize)> {
        self.product[a * self.dim + b].clone()
    }

    /// Left-to-right product φ_{i₁}·φ_{i₂}·…·φ_{iₙ}; None when any
    /// intermediate product vanishes.
    pub fn multiply_chain(&self, indices: &[usize]) -> Option<(Scalar, usize)> {
        let (&first, rest) = indices.split_first().expect("chain must be nonempty");
        let mut acc = (self.ring.one(), first);
        for &i in rest {
            let (mu, m) = self.product(acc.1, i)?;
            let scalar = self.ring.mul(&acc.0, &mu);
            if scalar.is_zero() {
                return None;
            }
            acc = (scalar, m);
        }
        Some(acc)
    }

    /// Product of two coefficient vectors.
    pub fn vector_mul(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.ring.zero(); self.dim];
        for (a, ca) in u.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in v.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                if let Some((mu, m)) = self.product(a, b) {
                    let term = self.ring.mul(&self.ring.mul(ca, cb), &mu);
                    out[m] = self.ring.add(&out[m], &term);
                }
            }
        }
        out
    }

    /// φ_a · v for a basis element a, accumulated into `out` with a scale.
    pub fn act_left(&self, a: usize, v: &[Scalar], scale: &Scalar, out: &mut [Scalar]) {
        for (b, cb) in v.iter().enumerate() {
            if cb.is_zero() {
                continue;
            }
            if let Some((mu, m)) = self.product(a, b) {
                let term = self.ring.mul(&self.ring.mul(scale, cb), &mu);
                out[m] = self.ring.add(&out[m], &term);
            }
        }
    }

    /// v · φ_a, accumulated into `out` with a scale.
    pub fn act_right(&self, v: &[Scalar], a: usize, scale: &Scalar, out: &mut [Scalar]) {
        for (b, cb) in v.iter().enumerate() {
            if cb.is_zero() {
                continue;
            }
            if let Some((mu, m)) = self.product(b, a) {
                let term = self.ring.mul(&self.ring.mul(scale, cb), &mu);
                out[m] = self.ring.add(&out[m], &term);
            }
        }
    }

    pub fn group(&self) -> Option<&FiniteGroup> {
        match &self.kind {
            AlgebraKind::GroupRing(g) => Some(g),
            _ => None,
        }
    }

    pub fn amalgam(&self) -> Option<&AmalgamCategory> {
        match &self.kind {
            AlgebraKind::Amalgam(c) => Some(c),
            _ => None,
        }
    }
}

/// The group ring `k[G]`: totally defined products with μ = 1.
pub fn group_ring(g: &FiniteGroup, ring: Ring) -> BasedAlgebra {
    let n = g.order();
    let mut product = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            product.push(Some((ring.one(), g.mul(a, b))));
        }
    }
    let mut unit = vec![ring.zero(); n];
    unit[g.identity()] = ring.one();
    let labels = (0..n)
        .map(|i| if i == g.identity() { "e".to_string() } else { format!("g{i}") })
        .collect();
    BasedAlgebra::from_parts(ring, n, product, unit, labels, AlgebraKind::GroupRing(g.clone()))
        .expect("group ring is associative and unital")
}

/// The poset algebra: basis e_{ij} for i ≼ j with e_{ij}e_{kl} = e_{il} when
/// j = k and zero otherwise.
pub fn poset_algebra(p: &FinitePoset, ring: Ring) -> BasedAlgebra {
    let n = p.size();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if p.leq(i, j) {
                pairs.push((i, j));
            }
        }
    }
    let dim = pairs.len();
    let index_of = |i: usize, j: usize| pairs.iter().position(|&q| q == (i, j));
    let mut product = Vec::with_capacity(dim * dim);
    for &(i, j) in &pairs {
        for &(k, l) in &pairs {
            product.push(if j == k {
                Some((ring.one(), index_of(i, l).expect("closed under composition")))
            } else {
                None
            });
        }
    }
    let mut unit = vec![ring.zero(); dim];
    for i in 0..n {
        unit[index_of(i, i).unwrap()] = ring.one();
    }
    let labels = pairs.iter().map(|&(i, j)| format!("e({i},{j})")).collect();
    BasedAlgebra::from_parts(ring, dim, product, unit, labels, AlgebraKind::Poset(p.clone()))
        .expect("poset algebra is associative and unital")
}

/// The category algebra `k[C]` of an amalgam: basis all morphisms, products by
/// composition with absorption of group elements into the strict morphisms.
pub fn amalgam_algebra(c: &AmalgamCategory, ring: Ring) -> BasedAlgebra {
    let dim = c.morphism_count();
    let mut product = Vec::with_capacity(dim * dim);
    for a in 0..dim {
        for b in 0..dim {
            product.push(c.compose(a, b).map(|m| (ring.one(), m)));
        }
    }
    let mut unit = vec![ring.zero(); dim];
    for i in 0..c.objects() {
        unit[c.identity_loop(i)] = ring.one();
    }
    let labels = (0..dim).map(|idx| c.label(idx)).collect();
    BasedAlgebra::from_parts(ring, dim, product, unit, labels, AlgebraKind::Amalgam(c.clone()))
        .expect("amalgam algebra is associative and unital")
}
