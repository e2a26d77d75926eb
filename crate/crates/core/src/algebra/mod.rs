//! Finite-dimensional algebras given by structure constants over F_p.
//!
//! Every basis element is block-homogeneous: it lies in `e_u A e_v` for a
//! unique pair of vertices. A right module element `m = m e_u` times a basis
//! element of `e_u A e_v` lands in `M e_v`, so such an element "points" from
//! `u` to `v`.

mod constructions;
mod quiver;
pub(crate) mod radical;

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock, Weak};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{FpMatrix, PrimeField, Subspace};

pub use constructions::{
    a3_relation_algebra, linear_path_algebra, matrix_unit_algebra, s3_algebra,
    selfinjective_nakayama, semisimple_algebra, tensor_with_shape, triangular_matrix_algebra,
    truncated_polynomial, ShapeKind,
};
pub use quiver::{bound_quiver_algebra, Arrow, Quiver, Relation, RelationSet, DEFAULT_PATH_CUTOFF};

/// Sparse vector: (index, nonzero coefficient).
pub type Sparse = Vec<(usize, u32)>;

/// A homogeneous algebra element used as a generator of the algebra
/// (together with the vertex idempotents).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub label: String,
    pub source: usize,
    pub target: usize,
    pub element: Vec<u32>,
}

/// A product of generators, stored as a tree: each non-trivial word extends
/// its parent by one generator.
#[derive(Clone, Debug)]
pub struct Word {
    pub source: usize,
    pub target: usize,
    pub parent: Option<(usize, usize)>,
    pub element: Vec<u32>,
}

/// `word * generator` written in the word basis.
#[derive(Clone, Debug)]
pub(crate) struct WordRelation {
    pub word: usize,
    pub generator: usize,
    pub combination: Sparse,
}

#[derive(Clone, Debug)]
pub struct Presentation {
    pub generators: Vec<Generator>,
    pub words: Vec<Word>,
    /// basis element `b` = sum of coefficient * word
    pub basis_in_words: Vec<Sparse>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RadicalBackend {
    ArrowIdeal,
    Tensor,
    Structural,
    Generic,
}

/// How an algebra was produced; used for spec-file round trips and for the
/// quiver-representation views of tensor algebras.
#[derive(Clone, Debug)]
pub enum Origin {
    BoundQuiver {
        quiver: Quiver,
        relations: RelationSet,
        /// basis element -> (source vertex, arrow indices)
        paths: Vec<(usize, Vec<usize>)>,
    },
    MatrixUnits {
        size: usize,
        positions: Vec<(usize, usize)>,
    },
    /// basis index = shape_index * dim(base) + base_index,
    /// vertex index = shape_vertex * vertices(base) + base_vertex
    Tensor {
        base: Arc<StructAlgebra>,
        shape: Arc<StructAlgebra>,
        kind: ShapeKind,
    },
    Endomorphism,
    Quotient,
    Opposite,
    Generic,
}

/// Raw structure-constant data.
#[derive(Clone, Debug)]
pub struct AlgebraData {
    pub name: String,
    pub field: PrimeField,
    pub basis_labels: Vec<String>,
    pub vertex_labels: Vec<String>,
    /// basis index of each vertex idempotent
    pub idempotents: Vec<usize>,
    /// `table[i * dim + j]` = e_i * e_j
    pub table: Vec<Sparse>,
}

#[derive(Clone, Debug)]
pub(crate) struct Core {
    pub field: PrimeField,
    pub dim: usize,
    pub nv: usize,
    pub table: Vec<Sparse>,
    pub idempotents: Vec<usize>,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub blocks: Vec<Vec<usize>>,
    pub block_pos: Vec<usize>,
}

impl Core {
    fn new(
        field: PrimeField,
        mut table: Vec<Sparse>,
        idempotents: Vec<usize>,
        labels: &[String],
    ) -> Result<Core> {
        let dim = labels.len();
        for entry in table.iter_mut() {
            *entry = normalize_sparse(field, std::mem::take(entry));
        }
        let nv = idempotents.len();
        if table.len() != dim * dim {
            return Err(Error::InvalidAlgebra(format!(
                "table has {} entries for dimension {}",
                table.len(),
                dim
            )));
        }
        for (k, &e) in idempotents.iter().enumerate() {
            if e >= dim || idempotents[..k].contains(&e) {
                return Err(Error::InvalidAlgebra(format!("bad idempotent index {e}")));
            }
        }
        for entry in &table {
            for &(k, c) in entry {
                if k >= dim || c == 0 || c >= field.p() {
                    return Err(Error::InvalidAlgebra("malformed structure constant".into()));
                }
            }
        }
        let product = |i: usize, j: usize| &table[i * dim + j];
        let mut left = vec![usize::MAX; dim];
        let mut right = vec![usize::MAX; dim];
        for b in 0..dim {
            for (v, &e) in idempotents.iter().enumerate() {
                let l = product(e, b);
                if l.as_slice() == [(b, 1)] {
                    if left[b] != usize::MAX {
                        return Err(Error::InvalidAlgebra(format!(
                            "{} has two left vertices",
                            labels[b]
                        )));
                    }
                    left[b] = v;
                } else if !l.is_empty() {
                    return Err(Error::InvalidAlgebra(format!(
                        "{} is not homogeneous for the idempotents",
                        labels[b]
                    )));
                }
                let r = product(b, e);
                if r.as_slice() == [(b, 1)] {
                    if right[b] != usize::MAX {
                        return Err(Error::InvalidAlgebra(format!(
                            "{} has two right vertices",
                            labels[b]
                        )));
                    }
                    right[b] = v;
                } else if !r.is_empty() {
                    return Err(Error::InvalidAlgebra(format!(
                        "{} is not homogeneous for the idempotents",
                        labels[b]
                    )));
                }
            }
            if left[b] == usize::MAX || right[b] == usize::MAX {
                return Err(Error::InvalidAlgebra(format!(
                    "idempotents do not sum to the unit on {}",
                    labels[b]
                )));
            }
        }
        for (v, &e) in idempotents.iter().enumerate() {
            if left[e] != v || right[e] != v {
                return Err(Error::InvalidAlgebra(
                    "idempotents are not orthogonal".into(),
                ));
            }
        }
        let mut blocks = vec![Vec::new(); nv * nv];
        let mut block_pos = vec![0; dim];
        for b in 0..dim {
            let blk = &mut blocks[left[b] * nv + right[b]];
            block_pos[b] = blk.len();
            blk.push(b);
        }
        for i in 0..dim {
            for j in 0..dim {
                let entry = product(i, j);
                if right[i] != left[j] {
                    if !entry.is_empty() {
                        return Err(Error::InvalidAlgebra(format!(
                            "{} * {} should vanish",
                            labels[i], labels[j]
                        )));
                    }
                    continue;
                }
                if entry
                    .iter()
                    .any(|&(k, _)| left[k] != left[i] || right[k] != right[j])
                {
                    return Err(Error::InvalidAlgebra(format!(
                        "{} * {} leaves its block",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        Ok(Core {
            field,
            dim,
            nv,
            table,
            idempotents,
            left,
            right,
            blocks,
            block_pos,
        })
    }

    pub fn product(&self, i: usize, j: usize) -> &Sparse {
        &self.table[i * self.dim + j]
    }

    pub fn unit_vector(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut out = vec![0u32; self.dim];
        let bnz: Vec<usize> = (0..self.dim).filter(|&j| b[j] != 0).collect();
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for &j in &bnz {
                if self.right[i] != self.left[j] {
                    continue;
                }
                let c = f.mul(ai, b[j]);
                for &(k, s) in self.product(i, j) {
                    out[k] = f.add(out[k], f.mul(c, s));
                }
            }
        }
        out
    }

    /// Block (left vertex, right vertex) of a nonzero homogeneous vector.
    pub fn block_of(&self, v: &[u32]) -> Option<(usize, usize)> {
        let i = v.iter().position(|&x| x != 0)?;
        Some((self.left[i], self.right[i]))
    }

    fn check_associative(&self, labels: &[String]) -> Result<()> {
        let f = self.field;
        let n = self.dim;
        let mut lhs = vec![0u32; n];
        let mut rhs = vec![0u32; n];
        for i in 0..n {
            for j in 0..n {
                if self.right[i] != self.left[j] {
                    continue;
                }
                let ij = self.product(i, j);
                for k in 0..n {
                    if self.right[j] != self.left[k] {
                        continue;
                    }
                    lhs.iter_mut().for_each(|x| *x = 0);
                    rhs.iter_mut().for_each(|x| *x = 0);
                    for &(l, c) in ij {
                        for &(m, d) in self.product(l, k) {
                            lhs[m] = f.add(lhs[m], f.mul(c, d));
                        }
                    }
                    for &(l, c) in self.product(j, k) {
                        for &(m, d) in self.product(i, l) {
                            rhs[m] = f.add(rhs[m], f.mul(c, d));
                        }
                    }
                    if lhs != rhs {
                        return Err(Error::InvalidAlgebra(format!(
                            "associativity fails on ({}, {}, {})",
                            labels[i], labels[j], labels[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A finite-dimensional basic algebra over F_p with a complete set of
/// primitive orthogonal idempotents.
pub struct StructAlgebra {
    name: String,
    basis_labels: Vec<String>,
    vertex_labels: Vec<String>,
    core: Core,
    radical: Vec<Vec<u32>>,
    radical_backend: RadicalBackend,
    presentation: Presentation,
    origin: Origin,
    fingerprint: u64,
    relations: OnceLock<Vec<WordRelation>>,
    opposite: OnceLock<Arc<StructAlgebra>>,
    opposite_of: OnceLock<Weak<StructAlgebra>>,
}

impl fmt::Debug for StructAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StructAlgebra")
            .field("name", &self.name)
            .field("p", &self.core.field.p())
            .field("dim", &self.core.dim)
            .field("vertices", &self.vertex_labels)
            .finish()
    }
}

impl StructAlgebra {
    /// Builds an algebra from raw structure constants, using the generic
    /// radical backend and generators read off from rad / rad^2.
    pub fn from_data(data: AlgebraData) -> Result<Arc<StructAlgebra>> {
        Self::build(data, None, None, Origin::Generic)
    }

    pub(crate) fn build(
        data: AlgebraData,
        radical: Option<(Vec<Vec<u32>>, RadicalBackend)>,
        generators: Option<Vec<Generator>>,
        origin: Origin,
    ) -> Result<Arc<StructAlgebra>> {
        let AlgebraData {
            name,
            field,
            basis_labels,
            vertex_labels,
            idempotents,
            table,
        } = data;
        if vertex_labels.len() != idempotents.len() {
            return Err(Error::InvalidAlgebra(
                "one label per vertex expected".into(),
            ));
        }
        let core = Core::new(field, table, idempotents, &basis_labels)?;
        core.check_associative(&basis_labels)?;
        let (radical, radical_backend) = match radical {
            Some(r) => r,
            None => (radical::generic_radical(&core)?, RadicalBackend::Generic),
        };
        let generators = match generators {
            Some(g) => g,
            None => radical::generators_from_radical(&core, &radical, &basis_labels),
        };
        let presentation = build_presentation(&core, generators)?;
        let fingerprint = fingerprint(&core, &presentation.generators);
        Ok(Arc::new(StructAlgebra {
            name,
            basis_labels,
            vertex_labels,
            core,
            radical,
            radical_backend,
            presentation,
            origin,
            fingerprint,
            relations: OnceLock::new(),
            opposite: OnceLock::new(),
            opposite_of: OnceLock::new(),
        }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn field(&self) -> PrimeField {
        self.core.field
    }

    pub fn dim(&self) -> usize {
        self.core.dim
    }

    pub fn num_vertices(&self) -> usize {
        self.core.nv
    }

    pub fn basis_label(&self, i: usize) -> &str {
        &self.basis_labels[i]
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.vertex_labels[v]
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertex_labels
    }

    /// Basis index of the idempotent at vertex `v`.
    pub fn idempotent(&self, v: usize) -> usize {
        self.core.idempotents[v]
    }

    pub fn idempotents(&self) -> &[usize] {
        &self.core.idempotents
    }

    /// Left vertex `u` of a basis element in `e_u A e_v`.
    pub fn source(&self, b: usize) -> usize {
        self.core.left[b]
    }

    /// Right vertex `v` of a basis element in `e_u A e_v`.
    pub fn target(&self, b: usize) -> usize {
        self.core.right[b]
    }

    /// Basis elements of `e_u A e_v`.
    pub fn block(&self, u: usize, v: usize) -> &[usize] {
        &self.core.blocks[u * self.core.nv + v]
    }

    pub fn block_position(&self, b: usize) -> usize {
        self.core.block_pos[b]
    }

    pub fn product(&self, i: usize, j: usize) -> &Sparse {
        self.core.product(i, j)
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        self.core.mul(a, b)
    }

    pub fn unit_vector(&self, i: usize) -> Vec<u32> {
        self.core.unit_vector(i)
    }

    pub fn unit(&self) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        for &e in self.idempotents() {
            v[e] = 1;
        }
        v
    }

    /// Basis of the Jacobson radical (block-homogeneous vectors).
    pub fn radical(&self) -> &[Vec<u32>] {
        &self.radical
    }

    pub fn radical_backend(&self) -> RadicalBackend {
        self.radical_backend
    }

    /// The radical recomputed by the generic backend, for cross-checks.
    pub fn generic_radical(&self) -> Result<Vec<Vec<u32>>> {
        radical::generic_radical(&self.core)
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn generators(&self) -> &[Generator] {
        &self.presentation.generators
    }

    pub fn words(&self) -> &[Word] {
        &self.presentation.words
    }

    pub fn origin(&self) -> &Origin {
        &self.origin
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub(crate) fn word_relations(&self) -> &[WordRelation] {
        self.relations.get_or_init(|| {
            let pres = &self.presentation;
            let mut extended = std::collections::HashSet::new();
            for w in &pres.words {
                if let Some(pg) = w.parent {
                    extended.insert(pg);
                }
            }
            let mut out = Vec::new();
            for (wi, w) in pres.words.iter().enumerate() {
                for (gi, g) in pres.generators.iter().enumerate() {
                    if g.source != w.target || extended.contains(&(wi, gi)) {
                        continue;
                    }
                    let prod = self.mul(&w.element, &g.element);
                    out.push(WordRelation {
                        word: wi,
                        generator: gi,
                        combination: self.in_words(&prod),
                    });
                }
            }
            out
        })
    }

    /// Expresses an element in the word basis.
    pub fn in_words(&self, v: &[u32]) -> Sparse {
        let f = self.field();
        let mut acc = vec![0u32; self.presentation.words.len()];
        for (b, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for &(w, d) in &self.presentation.basis_in_words[b] {
                acc[w] = f.add(acc[w], f.mul(c, d));
            }
        }
        acc.into_iter()
            .enumerate()
            .filter(|&(_, c)| c != 0)
            .collect()
    }

    /// Same algebra (pointer equality or identical structure and generators).
    pub fn same_as(&self, other: &StructAlgebra) -> bool {
        std::ptr::eq(self, other)
            || (self.fingerprint == other.fingerprint
                && self.core.field == other.core.field
                && self.core.idempotents == other.core.idempotents
                && self.core.table == other.core.table
                && self.presentation.generators.len() == other.presentation.generators.len()
                && self
                    .presentation
                    .generators
                    .iter()
                    .zip(&other.presentation.generators)
                    .all(|(a, b)| {
                        a.source == b.source && a.target == b.target && a.element == b.element
                    }))
    }

    /// Structure constants, idempotents and labels all coincide.
    pub fn identical(&self, other: &StructAlgebra) -> bool {
        self.same_as(other)
            && self.name == other.name
            && self.basis_labels == other.basis_labels
            && self.vertex_labels == other.vertex_labels
    }

    pub fn is_semisimple(&self) -> bool {
        self.radical.is_empty()
    }

    /// The opposite algebra, cached so that taking it twice returns `self`.
    pub fn opposite(self: &Arc<Self>) -> Arc<StructAlgebra> {
        if let Some(back) = self.opposite_of.get().and_then(Weak::upgrade) {
            return back;
        }
        self.opposite
            .get_or_init(|| {
                let op = self.build_opposite();
                let _ = op.opposite_of.set(Arc::downgrade(self));
                op
            })
            .clone()
    }

    fn build_opposite(&self) -> Arc<StructAlgebra> {
        let n = self.dim();
        let mut table = vec![Vec::new(); n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = self.core.product(j, i).clone();
            }
        }
        let name = match self.name.strip_suffix("^op") {
            Some(base) => base.to_string(),
            None => format!("{}^op", self.name),
        };
        let generators = self
            .presentation
            .generators
            .iter()
            .map(|g| Generator {
                label: g.label.clone(),
                source: g.target,
                target: g.source,
                element: g.element.clone(),
            })
            .collect();
        let data = AlgebraData {
            name,
            field: self.field(),
            basis_labels: self.basis_labels.clone(),
            vertex_labels: self.vertex_labels.clone(),
            idempotents: self.core.idempotents.clone(),
            table,
        };
        StructAlgebra::build(
            data,
            Some((self.radical.clone(), self.radical_backend)),
            Some(generators),
            Origin::Opposite,
        )
        .expect("the opposite of a valid algebra is valid")
    }

    /// Basis of the product of two homogeneous subspaces.
    pub fn product_space(&self, a: &[Vec<u32>], b: &[Vec<u32>]) -> Vec<Vec<u32>> {
        let mut s = Subspace::new(self.field(), self.dim());
        for x in a {
            for y in b {
                s.insert(&self.mul(x, y));
            }
        }
        s.basis().to_vec()
    }

    /// Smallest `L` with rad^L = 0.
    pub fn loewy_length(&self) -> usize {
        if self.dim() == 0 {
            return 0;
        }
        let mut power = self.radical.clone();
        let mut l = 1;
        while !power.is_empty() {
            power = self.product_space(&power, &self.radical);
            l += 1;
        }
        l
    }

    /// Matrix of right multiplication by `a` on the algebra (column convention:
    /// column `i` holds `e_i * a`).
    pub fn right_multiplication(&self, a: &[u32]) -> FpMatrix {
        let n = self.dim();
        let cols: Vec<Vec<u32>> = (0..n).map(|i| self.mul(&self.unit_vector(i), a)).collect();
        FpMatrix::from_columns(self.field(), n, &cols)
    }
}

/// Sorts by index, merges duplicates and drops zeros.
pub(crate) fn normalize_sparse(field: PrimeField, mut v: Sparse) -> Sparse {
    v.sort_unstable_by_key(|&(k, _)| k);
    let mut out: Sparse = Vec::with_capacity(v.len());
    for (k, c) in v {
        let c = c % field.p();
        match out.last_mut() {
            Some(last) if last.0 == k => last.1 = field.add(last.1, c),
            _ => out.push((k, c)),
        }
    }
    out.retain(|&(_, c)| c != 0);
    out
}

/// A quotient `A / I` by a homogeneous two-sided ideal, with the projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: Arc<StructAlgebra>,
    /// basis indices of `A` that survive as the quotient basis
    pub kept_basis: Vec<usize>,
    /// vertices of `A` whose idempotent survives
    pub kept_vertices: Vec<usize>,
    order: Vec<usize>,
    ideal: Subspace,
}

impl Quotient {
    /// Image of an element of `A` in the quotient basis.
    pub fn project(&self, v: &[u32]) -> Vec<u32> {
        let permuted: Vec<u32> = self.order.iter().map(|&i| v[i]).collect();
        let reduced = self.ideal.reduce(&permuted);
        let mut back = vec![0u32; v.len()];
        for (k, &i) in self.order.iter().enumerate() {
            back[i] = reduced[k];
        }
        self.kept_basis.iter().map(|&b| back[b]).collect()
    }
}

impl StructAlgebra {
    /// Quotient by the two-sided ideal spanned by `ideal` (homogeneous
    /// vectors). Vertices whose idempotent lies in the ideal disappear.
    pub fn quotient(self: &Arc<Self>, ideal: &[Vec<u32>], name: &str) -> Result<Quotient> {
        let n = self.dim();
        let f = self.field();
        let is_idem: Vec<bool> = (0..n).map(|i| self.idempotents().contains(&i)).collect();
        // eliminate on non-idempotent coordinates first so surviving
        // idempotents stay basis elements of the quotient
        let order: Vec<usize> = (0..n)
            .filter(|&i| !is_idem[i])
            .chain((0..n).filter(|&i| is_idem[i]))
            .collect();
        let mut sub = Subspace::new(f, n);
        for v in ideal {
            let permuted: Vec<u32> = order.iter().map(|&i| v[i]).collect();
            sub.insert(&permuted);
        }
        let mut kept_basis: Vec<usize> = sub
            .complement_coordinates()
            .iter()
            .map(|&k| order[k])
            .collect();
        kept_basis.sort_unstable();
        let kept_vertices: Vec<usize> = (0..self.num_vertices())
            .filter(|&v| kept_basis.contains(&self.idempotent(v)))
            .collect();
        let mut quotient = Quotient {
            algebra: self.clone(),
            kept_basis,
            kept_vertices,
            order,
            ideal: sub,
        };
        let m = quotient.kept_basis.len();
        let mut table = vec![Vec::new(); m * m];
        for (x, &i) in quotient.kept_basis.iter().enumerate() {
            for (y, &j) in quotient.kept_basis.iter().enumerate() {
                if self.target(i) != self.source(j) {
                    continue;
                }
                let prod = self.mul(&self.unit_vector(i), &self.unit_vector(j));
                let img = quotient.project(&prod);
                table[x * m + y] = img
                    .iter()
                    .enumerate()
                    .filter(|&(_, &c)| c != 0)
                    .map(|(k, &c)| (k, c))
                    .collect();
            }
        }
        let data = AlgebraData {
            name: name.to_string(),
            field: f,
            basis_labels: quotient
                .kept_basis
                .iter()
                .map(|&b| self.basis_labels[b].clone())
                .collect(),
            vertex_labels: quotient
                .kept_vertices
                .iter()
                .map(|&v| self.vertex_labels[v].clone())
                .collect(),
            idempotents: quotient
                .kept_vertices
                .iter()
                .map(|&v| {
                    quotient
                        .kept_basis
                        .iter()
                        .position(|&b| b == self.idempotent(v))
                        .unwrap()
                })
                .collect(),
            table,
        };
        quotient.algebra = StructAlgebra::build(data, None, None, Origin::Quotient)?;
        Ok(quotient)
    }
}

fn fingerprint(core: &Core, generators: &[Generator]) -> u64 {
    let mut h = DefaultHasher::new();
    core.field.p().hash(&mut h);
    core.idempotents.hash(&mut h);
    core.table.hash(&mut h);
    for g in generators {
        (g.source, g.target, &g.element).hash(&mut h);
    }
    h.finish()
}

fn build_presentation(core: &Core, generators: Vec<Generator>) -> Result<Presentation> {
    let n = core.dim;
    let nv = core.nv;
    for g in &generators {
        if g.element.len() != n {
            return Err(Error::InvalidAlgebra(format!(
                "generator {} has wrong length",
                g.label
            )));
        }
        let ok = g
            .element
            .iter()
            .enumerate()
            .all(|(i, &c)| c == 0 || (core.left[i] == g.source && core.right[i] == g.target));
        if !ok || g.source >= nv || g.target >= nv {
            return Err(Error::InvalidAlgebra(format!(
                "generator {} is not homogeneous",
                g.label
            )));
        }
    }
    let mut spans: Vec<Subspace> = (0..nv * nv).map(|_| Subspace::new(core.field, n)).collect();
    let mut words: Vec<Word> = Vec::new();
    for u in 0..nv {
        let start = words.len();
        let e = core.unit_vector(core.idempotents[u]);
        spans[u * nv + u].insert(&e);
        words.push(Word {
            source: u,
            target: u,
            parent: None,
            element: e,
        });
        let mut next = start;
        while next < words.len() {
            let (wt, welem) = (words[next].target, words[next].element.clone());
            for (gi, g) in generators.iter().enumerate() {
                if g.source != wt {
                    continue;
                }
                let prod = core.mul(&welem, &g.element);
                if spans[u * nv + g.target].insert(&prod) {
                    words.push(Word {
                        source: u,
                        target: g.target,
                        parent: Some((next, gi)),
                        element: prod,
                    });
                }
            }
            next += 1;
        }
    }
    if words.len() != n {
        return Err(Error::InvalidAlgebra(format!(
            "generators span {} of {} dimensions",
            words.len(),
            n
        )));
    }
    let mut basis_in_words = vec![Vec::new(); n];
    for u in 0..nv {
        for v in 0..nv {
            let blk = &core.blocks[u * nv + v];
            if blk.is_empty() {
                continue;
            }
            let ws: Vec<usize> = (0..n)
                .filter(|&w| words[w].source == u && words[w].target == v)
                .collect();
            let m = blk.len();
            let mat = FpMatrix::from_fn(core.field, m, m, |r, c| words[ws[r]].element[blk[c]]);
            let inv = mat
                .invert()
                .ok_or_else(|| Error::InvalidAlgebra("word basis is singular".into()))?;
            for (k, &b) in blk.iter().enumerate() {
                basis_in_words[b] = (0..m)
                    .filter(|&r| inv.get(k, r) != 0)
                    .map(|r| (ws[r], inv.get(k, r)))
                    .collect();
            }
        }
    }
    Ok(Presentation {
        generators,
        words,
        basis_in_words,
    })
}

/// A linear map between algebras given on basis elements (column `i` is the
/// image of basis element `i`).
#[derive(Clone, Debug)]
pub struct AlgebraMorphism {
    pub source: Arc<StructAlgebra>,
    pub target: Arc<StructAlgebra>,
    pub matrix: FpMatrix,
}

impl AlgebraMorphism {
    /// Multiplicative and unital on basis elements.
    pub fn is_homomorphism(&self) -> bool {
        let (a, b) = (&self.source, &self.target);
        if self.matrix.rows() != b.dim() || self.matrix.cols() != a.dim() {
            return false;
        }
        let image = |v: &[u32]| self.matrix.mul_vec(v);
        if image(&a.unit()) != b.unit() {
            return false;
        }
        let cols: Vec<Vec<u32>> = (0..a.dim()).map(|i| self.matrix.column(i)).collect();
        (0..a.dim()).all(|i| {
            (0..a.dim()).all(|j| {
                let lhs = image(&a.mul(&a.unit_vector(i), &a.unit_vector(j)));
                lhs == b.mul(&cols[i], &cols[j])
            })
        })
    }

    pub fn is_isomorphism(&self) -> bool {
        self.matrix.is_invertible() && self.is_homomorphism()
    }
}

/// Searches for an isomorphism that permutes basis elements (and vertices).
/// Meant as a small-instance oracle: the search is exhaustive.
pub fn find_relabeling(a: &Arc<StructAlgebra>, b: &Arc<StructAlgebra>) -> Option<AlgebraMorphism> {
    if a.dim() != b.dim() || a.num_vertices() != b.num_vertices() || a.field() != b.field() {
        return None;
    }
    let nv = a.num_vertices();
    let mut perm: Vec<usize> = (0..nv).collect();
    loop {
        if let Some(m) = relabel_with_vertices(a, b, &perm) {
            return Some(m);
        }
        if !next_permutation(&mut perm) {
            return None;
        }
    }
}

fn relabel_with_vertices(
    a: &Arc<StructAlgebra>,
    b: &Arc<StructAlgebra>,
    pi: &[usize],
) -> Option<AlgebraMorphism> {
    let nv = a.num_vertices();
    for u in 0..nv {
        for v in 0..nv {
            if a.block(u, v).len() != b.block(pi[u], pi[v]).len() {
                return None;
            }
        }
    }
    let n = a.dim();
    let mut sigma = vec![usize::MAX; n];
    for v in 0..nv {
        sigma[a.idempotent(v)] = b.idempotent(pi[v]);
    }
    let free: Vec<usize> = (0..n).filter(|&i| sigma[i] == usize::MAX).collect();
    let mut used = vec![false; n];
    for &s in sigma.iter().filter(|&&s| s != usize::MAX) {
        used[s] = true;
    }
    fn consistent(a: &StructAlgebra, b: &StructAlgebra, sigma: &[usize]) -> bool {
        let n = a.dim();
        for i in 0..n {
            if sigma[i] == usize::MAX {
                continue;
            }
            for j in 0..n {
                if sigma[j] == usize::MAX {
                    continue;
                }
                let pa = a.product(i, j);
                if pa.iter().any(|&(k, _)| sigma[k] == usize::MAX) {
                    continue;
                }
                let mut mapped: Vec<(usize, u32)> =
                    pa.iter().map(|&(k, c)| (sigma[k], c)).collect();
                mapped.sort_unstable();
                if &mapped != b.product(sigma[i], sigma[j]) {
                    return false;
                }
            }
        }
        true
    }
    fn search(
        a: &StructAlgebra,
        b: &StructAlgebra,
        pi: &[usize],
        free: &[usize],
        sigma: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let Some((&i, rest)) = free.split_first() else {
            return consistent(a, b, sigma);
        };
        let (u, v) = (pi[a.source(i)], pi[a.target(i)]);
        for &cand in b.block(u, v) {
            if used[cand] {
                continue;
            }
            sigma[i] = cand;
            used[cand] = true;
            if consistent(a, b, sigma) && search(a, b, pi, rest, sigma, used) {
                return true;
            }
            used[cand] = false;
            sigma[i] = usize::MAX;
        }
        false
    }
    if !search(a, b, pi, &free, &mut sigma, &mut used) {
        return None;
    }
    let matrix = FpMatrix::from_fn(a.field(), n, n, |r, c| u32::from(sigma[c] == r));
    Some(AlgebraMorphism {
        source: a.clone(),
        target: b.clone(),
        matrix,
    })
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests;
