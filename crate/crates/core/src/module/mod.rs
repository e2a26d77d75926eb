//! Right modules over a [`StructAlgebra`].
//!
//! A module is stored as a vector space `M = ⊕_v M e_v` together with the
//! action of each algebra generator `g ∈ e_u A e_v` as a matrix
//! `M e_u -> M e_v` (column convention: the matrix has `dim M e_v` rows).
//! Actions of arbitrary algebra elements are derived through the word basis.

mod catalog;
mod decompose;
mod endomorphism;
mod ext;
mod hom;
mod ops;
mod projective;
pub mod rep;

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::algebra::StructAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{FpMatrix, PrimeField};

pub use catalog::Catalog;
pub use decompose::{
    decompose, drop_projective_summands, endomorphism_radical, is_indecomposable, is_isomorphic,
    is_stably_isomorphic, isomorphism_between_indecomposables, match_summands, Decomposition,
};
pub use endomorphism::{
    endomorphism_algebra, stable_endomorphism_algebra, EndomorphismAlgebra, HomBasis,
    StableEndomorphismAlgebra,
};
pub use ext::{ext1, Ext1Space};
pub use hom::{extend_along, factor_through, hom_dimension, hom_space};
pub use ops::{
    codiagonal, cokernel, descend, diagonal, direct_sum, image, kernel, restrict_to, submodule,
    DirectSum,
};
pub use projective::{
    ar_translate, ar_translate_inverse, dual, injective_module, is_injective, is_projective,
    minimal_presentation, projective_cover, projective_maps, projective_module, radical_submodule,
    regular_module, simple_module, stable_hom_dimension, syzygy, syzygy_sequence, top, transpose,
    Presentation, ProjectiveCover, ProjectiveSum,
};

struct ModuleData {
    algebra: Arc<StructAlgebra>,
    dims: Vec<usize>,
    offsets: Vec<usize>,
    gens: Vec<FpMatrix>,
    word_actions: OnceLock<Vec<FpMatrix>>,
    basis_actions: OnceLock<Vec<FpMatrix>>,
    indecomposable: OnceLock<bool>,
}

/// A finite-dimensional right module. Cheap to clone.
#[derive(Clone)]
pub struct Module(Arc<ModuleData>);

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module{:?} over {}", self.dims(), self.algebra().name())
    }
}

impl Module {
    /// Builds a module from per-vertex dimensions and generator actions,
    /// checking every defining relation of the algebra.
    pub fn new(
        algebra: Arc<StructAlgebra>,
        dims: Vec<usize>,
        gens: Vec<FpMatrix>,
    ) -> Result<Module> {
        let m = Module::new_unchecked(algebra, dims, gens)?;
        m.validate()?;
        Ok(m)
    }

    /// Shape checks only; used by constructions that are modules by design.
    pub(crate) fn new_unchecked(
        algebra: Arc<StructAlgebra>,
        dims: Vec<usize>,
        gens: Vec<FpMatrix>,
    ) -> Result<Module> {
        if dims.len() != algebra.num_vertices() {
            return Err(Error::InvalidModule(format!(
                "{} vertex dimensions for {} vertices",
                dims.len(),
                algebra.num_vertices()
            )));
        }
        if gens.len() != algebra.generators().len() {
            return Err(Error::InvalidModule(format!(
                "{} generator actions for {} generators",
                gens.len(),
                algebra.generators().len()
            )));
        }
        for (g, m) in algebra.generators().iter().zip(&gens) {
            if m.rows() != dims[g.target] || m.cols() != dims[g.source] {
                return Err(Error::InvalidModule(format!(
                    "action of {} should be {}x{}, got {}x{}",
                    g.label,
                    dims[g.target],
                    dims[g.source],
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != algebra.field() {
                return Err(Error::InvalidModule("matrix over the wrong field".into()));
            }
        }
        let mut offsets = Vec::with_capacity(dims.len());
        let mut acc = 0;
        for &d in &dims {
            offsets.push(acc);
            acc += d;
        }
        Ok(Module(Arc::new(ModuleData {
            algebra,
            dims,
            offsets,
            gens,
            word_actions: OnceLock::new(),
            basis_actions: OnceLock::new(),
            indecomposable: OnceLock::new(),
        })))
    }

    fn validate(&self) -> Result<()> {
        let alg = self.algebra();
        let words = self.word_actions();
        for rel in alg.word_relations() {
            let w = &alg.words()[rel.word];
            let g = &alg.generators()[rel.generator];
            let lhs = self.gen(rel.generator).mul(&words[rel.word]);
            let mut rhs =
                FpMatrix::zeros(self.field(), self.dims()[g.target], self.dims()[w.source]);
            for &(w2, c) in &rel.combination {
                rhs.add_scaled(&words[w2], c);
            }
            if lhs != rhs {
                return Err(Error::InvalidModule(format!(
                    "relation violated for word {} times generator {}",
                    rel.word, g.label
                )));
            }
        }
        Ok(())
    }

    pub fn zero(algebra: &Arc<StructAlgebra>) -> Module {
        Module::with_dims_zero_action(algebra, vec![0; algebra.num_vertices()])
    }

    /// Semisimple module with the given dimension vector.
    pub fn with_dims_zero_action(algebra: &Arc<StructAlgebra>, dims: Vec<usize>) -> Module {
        let f = algebra.field();
        let gens = algebra
            .generators()
            .iter()
            .map(|g| FpMatrix::zeros(f, dims[g.target], dims[g.source]))
            .collect();
        Module::new_unchecked(algebra.clone(), dims, gens).expect("shapes match")
    }

    pub fn algebra(&self) -> &Arc<StructAlgebra> {
        &self.0.algebra
    }

    pub fn field(&self) -> PrimeField {
        self.0.algebra.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.0.dims
    }

    pub fn dim(&self) -> usize {
        self.0.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Start of the vertex-`v` block in the total basis.
    pub fn offset(&self, v: usize) -> usize {
        self.0.offsets[v]
    }

    pub fn generator_actions(&self) -> &[FpMatrix] {
        &self.0.gens
    }

    pub fn gen(&self, g: usize) -> &FpMatrix {
        &self.0.gens[g]
    }

    /// Action matrices of every word of the algebra presentation.
    pub fn word_actions(&self) -> &[FpMatrix] {
        self.0.word_actions.get_or_init(|| {
            let alg = self.algebra();
            let mut out: Vec<FpMatrix> = Vec::with_capacity(alg.words().len());
            for w in alg.words() {
                let m = match w.parent {
                    None => FpMatrix::identity(self.field(), self.dims()[w.source]),
                    Some((pw, g)) => self.gen(g).mul(&out[pw]),
                };
                out.push(m);
            }
            out
        })
    }

    /// Action of each basis element `b ∈ e_u A e_v` as a map `M e_u -> M e_v`.
    pub fn basis_block_actions(&self) -> &[FpMatrix] {
        self.0.basis_actions.get_or_init(|| {
            let alg = self.algebra();
            let f = self.field();
            let words = self.word_actions();
            (0..alg.dim())
                .map(|b| {
                    let (u, v) = (alg.source(b), alg.target(b));
                    let mut out = FpMatrix::zeros(f, self.dims()[v], self.dims()[u]);
                    for &(w, c) in &alg.presentation().basis_in_words[b] {
                        out.add_scaled(&words[w], c);
                    }
                    out
                })
                .collect()
        })
    }

    /// Action of the `e_u A e_v` component of `element` as a map `M e_u -> M e_v`.
    pub fn block_action(&self, element: &[u32], u: usize, v: usize) -> FpMatrix {
        let alg = self.algebra();
        let mut out = FpMatrix::zeros(self.field(), self.dims()[v], self.dims()[u]);
        let actions = self.basis_block_actions();
        for &b in alg.block(u, v) {
            if element[b] != 0 {
                out.add_scaled(&actions[b], element[b]);
            }
        }
        out
    }

    /// Full `dim x dim` matrix of `m -> m * element`.
    pub fn action(&self, element: &[u32]) -> FpMatrix {
        let alg = self.algebra();
        let n = self.dim();
        let nv = alg.num_vertices();
        let mut out = FpMatrix::zeros(self.field(), n, n);
        for u in 0..nv {
            for v in 0..nv {
                if alg.block(u, v).iter().any(|&b| element[b] != 0) {
                    out.paste(
                        self.offset(v),
                        self.offset(u),
                        &self.block_action(element, u, v),
                    );
                }
            }
        }
        out
    }

    pub fn basis_action(&self, b: usize) -> FpMatrix {
        self.action(&self.algebra().unit_vector(b))
    }

    pub(crate) fn cached_indecomposable(&self) -> &OnceLock<bool> {
        &self.0.indecomposable
    }

    /// Same underlying data (pointer equality).
    pub fn ptr_eq(&self, other: &Module) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// Identical dimensions and matrices (not an isomorphism test).
    pub fn same_data(&self, other: &Module) -> bool {
        self.algebra().same_as(other.algebra())
            && self.dims() == other.dims()
            && self.0.gens == other.0.gens
    }

    pub(crate) fn check_same_algebra(&self, other: &Module) -> Result<()> {
        if self.algebra().same_as(other.algebra()) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    /// The module with the same data viewed over an identical algebra object.
    pub fn rebase(&self, algebra: &Arc<StructAlgebra>) -> Result<Module> {
        if !self.algebra().same_as(algebra) {
            return Err(Error::AlgebraMismatch);
        }
        Module::new_unchecked(algebra.clone(), self.dims().to_vec(), self.0.gens.clone())
    }

    /// Applies a change of basis `x -> t_v x` at every vertex.
    pub fn transport(&self, t: &[FpMatrix]) -> Result<(Module, ModuleMap)> {
        let inv: Vec<FpMatrix> = t
            .iter()
            .map(|m| {
                m.invert()
                    .ok_or_else(|| Error::Shape("change of basis is singular".into()))
            })
            .collect::<Result<_>>()?;
        let gens = self
            .algebra()
            .generators()
            .iter()
            .enumerate()
            .map(|(gi, g)| t[g.target].mul(self.gen(gi)).mul(&inv[g.source]))
            .collect();
        let n = Module::new_unchecked(self.algebra().clone(), self.dims().to_vec(), gens)?;
        let iso = ModuleMap::new_unchecked(self.clone(), n.clone(), t.to_vec());
        Ok((n, iso))
    }
}

/// A module homomorphism stored as one matrix per vertex.
#[derive(Clone)]
pub struct ModuleMap {
    source: Module,
    target: Module,
    blocks: Vec<FpMatrix>,
}

impl fmt::Debug for ModuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ModuleMap {:?} -> {:?}",
            self.source.dims(),
            self.target.dims()
        )
    }
}

impl ModuleMap {
    /// Checks shapes and the intertwining relations.
    pub fn new(source: Module, target: Module, blocks: Vec<FpMatrix>) -> Result<ModuleMap> {
        source.check_same_algebra(&target)?;
        let nv = source.dims().len();
        if blocks.len() != nv {
            return Err(Error::Shape("one block per vertex expected".into()));
        }
        for v in 0..nv {
            if blocks[v].rows() != target.dims()[v] || blocks[v].cols() != source.dims()[v] {
                return Err(Error::Shape(format!("block {v} has the wrong shape")));
            }
        }
        let map = ModuleMap {
            source,
            target,
            blocks,
        };
        if !map.is_homomorphism() {
            return Err(Error::InvalidModule(
                "map does not commute with the action".into(),
            ));
        }
        Ok(map)
    }

    pub(crate) fn new_unchecked(
        source: Module,
        target: Module,
        blocks: Vec<FpMatrix>,
    ) -> ModuleMap {
        debug_assert_eq!(blocks.len(), source.dims().len());
        ModuleMap {
            source,
            target,
            blocks,
        }
    }

    pub fn zero(source: &Module, target: &Module) -> ModuleMap {
        let f = source.field();
        let blocks = (0..source.dims().len())
            .map(|v| FpMatrix::zeros(f, target.dims()[v], source.dims()[v]))
            .collect();
        ModuleMap::new_unchecked(source.clone(), target.clone(), blocks)
    }

    pub fn identity(m: &Module) -> ModuleMap {
        let f = m.field();
        let blocks = m.dims().iter().map(|&d| FpMatrix::identity(f, d)).collect();
        ModuleMap::new_unchecked(m.clone(), m.clone(), blocks)
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn blocks(&self) -> &[FpMatrix] {
        &self.blocks
    }

    pub fn block(&self, v: usize) -> &FpMatrix {
        &self.blocks[v]
    }

    pub fn is_homomorphism(&self) -> bool {
        let alg = self.source.algebra();
        alg.generators().iter().enumerate().all(|(gi, g)| {
            self.blocks[g.target].mul(self.source.gen(gi))
                == self.target.gen(gi).mul(&self.blocks[g.source])
        })
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ModuleMap) -> ModuleMap {
        let blocks = self
            .blocks
            .iter()
            .zip(&first.blocks)
            .map(|(a, b)| a.mul(b))
            .collect();
        ModuleMap::new_unchecked(first.source.clone(), self.target.clone(), blocks)
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a.add(b))
            .collect();
        ModuleMap::new_unchecked(self.source.clone(), self.target.clone(), blocks)
    }

    pub fn scale(&self, c: u32) -> ModuleMap {
        let blocks = self.blocks.iter().map(|a| a.scale(c)).collect();
        ModuleMap::new_unchecked(self.source.clone(), self.target.clone(), blocks)
    }

    pub fn sub(&self, other: &ModuleMap) -> ModuleMap {
        self.add(&other.scale(self.source.field().neg(1)))
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(|b| b.rank()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_zero())
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.dims() == self.target.dims() && self.is_injective()
    }

    /// Concatenation of all block entries (used to coordinatize Hom spaces).
    pub fn flatten(&self) -> Vec<u32> {
        self.blocks
            .iter()
            .flat_map(|b| b.data().iter().copied())
            .collect()
    }

    pub fn from_flat(source: &Module, target: &Module, v: &[u32]) -> ModuleMap {
        let f = source.field();
        let mut blocks = Vec::with_capacity(source.dims().len());
        let mut at = 0;
        for (&r, &c) in target.dims().iter().zip(source.dims()) {
            blocks
                .push(FpMatrix::new(f, r, c, v[at..at + r * c].to_vec()).expect("length matches"));
            at += r * c;
        }
        ModuleMap::new_unchecked(source.clone(), target.clone(), blocks)
    }

    /// Full block-diagonal matrix.
    pub fn matrix(&self) -> FpMatrix {
        FpMatrix::block_diag(self.source.field(), &self.blocks)
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Option<ModuleMap> {
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.invert())
            .collect::<Option<Vec<_>>>()?;
        Some(ModuleMap::new_unchecked(
            self.target.clone(),
            self.source.clone(),
            blocks,
        ))
    }
}

/// `0 -> A --f--> B --g--> C -> 0`.
#[derive(Clone, Debug)]
pub struct ShortExactSeq {
    pub f: ModuleMap,
    pub g: ModuleMap,
}

impl ShortExactSeq {
    /// Checks injectivity of `f`, surjectivity of `g` and exactness in the middle.
    pub fn new(f: ModuleMap, g: ModuleMap) -> Result<ShortExactSeq> {
        let s = ShortExactSeq { f, g };
        if !s.is_exact() {
            return Err(Error::InvalidModule("sequence is not short exact".into()));
        }
        Ok(s)
    }

    pub fn is_exact(&self) -> bool {
        let (f, g) = (&self.f, &self.g);
        f.target().dims() == g.source().dims()
            && f.is_injective()
            && g.is_surjective()
            && g.compose(f).is_zero()
            && f.target().dim() == f.source().dim() + g.target().dim()
    }

    pub fn left(&self) -> &Module {
        self.f.source()
    }

    pub fn middle(&self) -> &Module {
        self.f.target()
    }

    pub fn right(&self) -> &Module {
        self.g.target()
    }
}

#[cfg(test)]
mod tests;
