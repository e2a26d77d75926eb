//! Projective and injective modules, covers, syzygies, duality and the
//! Auslander-Reiten translate.

use std::sync::Arc;

use super::ops::{cokernel, direct_sum, kernel, submodule, DirectSum};
use super::{Module, ModuleMap};
use crate::algebra::StructAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{FpMatrix, Subspace};

/// `e_v A`: at vertex `w` its basis is `block(v, w)`.
pub fn projective_module(algebra: &Arc<StructAlgebra>, v: usize) -> Module {
    let f = algebra.field();
    let nv = algebra.num_vertices();
    let dims: Vec<usize> = (0..nv).map(|w| algebra.block(v, w).len()).collect();
    let gens = algebra
        .generators()
        .iter()
        .map(|g| {
            let src = algebra.block(v, g.source);
            let dst = algebra.block(v, g.target);
            let cols: Vec<Vec<u32>> = src
                .iter()
                .map(|&b| {
                    let prod = algebra.mul(&algebra.unit_vector(b), &g.element);
                    dst.iter().map(|&c| prod[c]).collect()
                })
                .collect();
            FpMatrix::from_columns(f, dst.len(), &cols)
        })
        .collect();
    Module::new_unchecked(algebra.clone(), dims, gens).expect("shapes match")
}

/// `A_A`.
pub fn regular_module(algebra: &Arc<StructAlgebra>) -> Module {
    let parts: Vec<Module> = (0..algebra.num_vertices())
        .map(|v| projective_module(algebra, v))
        .collect();
    direct_sum(algebra, &parts).module
}

/// `D(A e_v)`, the injective envelope of the simple at `v`.
pub fn injective_module(algebra: &Arc<StructAlgebra>, v: usize) -> Module {
    dual(&projective_module(&algebra.opposite(), v))
}

/// The simple top of `e_v A`.
pub fn simple_module(algebra: &Arc<StructAlgebra>, v: usize) -> Module {
    top(&projective_module(algebra, v)).0
}

/// `Hom_k(M, k)`, a module over the opposite algebra.
pub fn dual(m: &Module) -> Module {
    let op = m.algebra().opposite();
    let gens = m
        .generator_actions()
        .iter()
        .map(|g| g.transpose())
        .collect();
    Module::new_unchecked(op, m.dims().to_vec(), gens).expect("shapes match")
}

/// A direct sum of indecomposable projectives `⊕ e_{t_i} A`.
#[derive(Clone, Debug)]
pub struct ProjectiveSum {
    pub tops: Vec<usize>,
    pub sum: DirectSum,
}

impl ProjectiveSum {
    pub fn new(algebra: &Arc<StructAlgebra>, tops: Vec<usize>) -> ProjectiveSum {
        let parts: Vec<Module> = tops
            .iter()
            .map(|&v| projective_module(algebra, v))
            .collect();
        ProjectiveSum {
            sum: direct_sum(algebra, &parts),
            tops,
        }
    }

    pub fn module(&self) -> &Module {
        &self.sum.module
    }

    pub fn algebra(&self) -> &Arc<StructAlgebra> {
        self.sum.module.algebra()
    }

    /// Vector at vertex `x` whose summand-`s` component is the element `elements[s]`
    /// (which should lie in `e_{t_s} A e_x`).
    pub fn vector_at(&self, x: usize, elements: &[Vec<u32>]) -> Vec<u32> {
        let alg = self.algebra();
        let mut out = Vec::with_capacity(self.module().dims()[x]);
        for (s, &t) in self.tops.iter().enumerate() {
            out.extend(alg.block(t, x).iter().map(|&b| elements[s][b]));
        }
        out
    }

    /// Inverse of [`ProjectiveSum::vector_at`]: one algebra element per summand.
    pub fn elements_at(&self, x: usize, vector: &[u32]) -> Vec<Vec<u32>> {
        let alg = self.algebra();
        let mut at = 0;
        self.tops
            .iter()
            .map(|&t| {
                let mut e = vec![0u32; alg.dim()];
                for &b in alg.block(t, x) {
                    e[b] = vector[at];
                    at += 1;
                }
                e
            })
            .collect()
    }

    /// The generator `e_{t_s}` of summand `s`, as a vector at vertex `t_s`.
    pub fn generator(&self, s: usize) -> Vec<u32> {
        let alg = self.algebra();
        let t = self.tops[s];
        let mut elements = vec![vec![0u32; alg.dim()]; self.tops.len()];
        elements[s] = alg.unit_vector(alg.idempotent(t));
        self.vector_at(t, &elements)
    }

    /// The map sending the generator of summand `s` to `images[s] ∈ M e_{t_s}`.
    pub fn map_to(&self, m: &Module, images: &[Vec<u32>]) -> ModuleMap {
        let alg = self.algebra();
        let f = alg.field();
        let actions = m.basis_block_actions();
        let blocks = (0..alg.num_vertices())
            .map(|w| {
                let mut cols = Vec::with_capacity(self.module().dims()[w]);
                for (s, &t) in self.tops.iter().enumerate() {
                    for &b in alg.block(t, w) {
                        cols.push(actions[b].mul_vec(&images[s]));
                    }
                }
                FpMatrix::from_columns(f, m.dims()[w], &cols)
            })
            .collect();
        ModuleMap::new_unchecked(self.module().clone(), m.clone(), blocks)
    }

    /// Images of the summand generators under `map`.
    pub fn images_of(&self, map: &ModuleMap) -> Vec<Vec<u32>> {
        (0..self.tops.len())
            .map(|s| map.block(self.tops[s]).mul_vec(&self.generator(s)))
            .collect()
    }
}

/// Which generators lie in the radical.
fn radical_generators(algebra: &StructAlgebra) -> Vec<bool> {
    let rad = Subspace::spanned_by(algebra.field(), algebra.dim(), algebra.radical());
    algebra
        .generators()
        .iter()
        .map(|g| rad.contains(&g.element))
        .collect()
}

/// `M rad A` with its inclusion.
pub fn radical_submodule(m: &Module) -> (Module, ModuleMap) {
    let alg = m.algebra();
    let f = m.field();
    let in_rad = radical_generators(alg);
    let mut spans: Vec<Subspace> = m.dims().iter().map(|&d| Subspace::new(f, d)).collect();
    for (gi, g) in alg.generators().iter().enumerate() {
        if in_rad[gi] {
            for c in m.gen(gi).image_basis() {
                spans[g.target].insert(&c);
            }
        }
    }
    // close under the corner generators that are not radical
    loop {
        let mut grew = false;
        for (gi, g) in alg.generators().iter().enumerate() {
            if in_rad[gi] {
                continue;
            }
            let images: Vec<Vec<u32>> = spans[g.source]
                .basis()
                .iter()
                .map(|x| m.gen(gi).mul_vec(x))
                .collect();
            for y in images {
                grew |= spans[g.target].insert(&y);
            }
        }
        if !grew {
            break;
        }
    }
    let vs: Vec<Vec<Vec<u32>>> = spans.iter().map(|s| s.basis().to_vec()).collect();
    submodule(m, &vs).expect("radical is a submodule")
}

/// `M / M rad A` with the projection.
pub fn top(m: &Module) -> (Module, ModuleMap) {
    let (_, incl) = radical_submodule(m);
    cokernel(&incl)
}

/// A projective cover `P -> M`.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub projective: ProjectiveSum,
    pub map: ModuleMap,
}

pub fn projective_cover(m: &Module) -> ProjectiveCover {
    let alg = m.algebra();
    let f = m.field();
    let (_, incl) = radical_submodule(m);
    let actions = m.basis_block_actions();
    let mut tops = Vec::new();
    let mut images = Vec::new();
    for v in 0..alg.num_vertices() {
        let d = m.dims()[v];
        let mut span = Subspace::new(f, d);
        for c in incl.block(v).image_basis() {
            span.insert(&c);
        }
        for c in 0..d {
            let mut e = vec![0u32; d];
            e[c] = 1;
            if span.contains(&e) {
                continue;
            }
            for &b in alg.block(v, v) {
                span.insert(&actions[b].mul_vec(&e));
            }
            tops.push(v);
            images.push(e);
        }
    }
    let projective = ProjectiveSum::new(alg, tops);
    let map = projective.map_to(m, &images);
    ProjectiveCover { projective, map }
}

pub fn is_projective(m: &Module) -> bool {
    projective_cover(m).projective.module().dim() == m.dim()
}

pub fn is_injective(m: &Module) -> bool {
    is_projective(&dual(m))
}

/// `Ω M` with its inclusion into the projective cover.
pub fn syzygy_sequence(m: &Module) -> (Module, ModuleMap, ProjectiveCover) {
    let cover = projective_cover(m);
    let (k, incl) = kernel(&cover.map);
    (k, incl, cover)
}

/// A minimal projective presentation `P1 --d--> P0 --cover--> M -> 0`.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub p1: ProjectiveSum,
    pub p0: ProjectiveSum,
    pub d: ModuleMap,
    pub cover: ModuleMap,
}

/// `Ω^d M`.
pub fn syzygy(m: &Module, d: usize) -> Module {
    let mut cur = m.clone();
    for _ in 0..d {
        if cur.is_zero() {
            break;
        }
        cur = syzygy_sequence(&cur).0;
    }
    cur
}

pub fn minimal_presentation(m: &Module) -> Presentation {
    let (k, incl, cover0) = syzygy_sequence(m);
    let cover1 = projective_cover(&k);
    Presentation {
        d: incl.compose(&cover1.map),
        p1: cover1.projective,
        p0: cover0.projective,
        cover: cover0.map,
    }
}

/// `Tr M`, a module over the opposite algebra, computed as the cokernel of
/// `Hom_A(d, A)` for a minimal presentation `d`.
pub fn transpose(m: &Module) -> Module {
    let alg = m.algebra();
    let op = alg.opposite();
    let pres = minimal_presentation(m);
    // a[j][i] ∈ e_{v_i} A e_{w_j}: component i of d(generator j)
    let a: Vec<Vec<Vec<u32>>> = pres
        .p1
        .images_of(&pres.d)
        .iter()
        .zip(&pres.p1.tops)
        .map(|(img, &w)| pres.p0.elements_at(w, img))
        .collect();
    let p0_dual = ProjectiveSum::new(&op, pres.p0.tops.clone());
    let p1_dual = ProjectiveSum::new(&op, pres.p1.tops.clone());
    let images: Vec<Vec<u32>> = pres
        .p0
        .tops
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let elements: Vec<Vec<u32>> = a.iter().map(|row| row[i].clone()).collect();
            p1_dual.vector_at(v, &elements)
        })
        .collect();
    let d_dual = p0_dual.map_to(p1_dual.module(), &images);
    cokernel(&d_dual).0
}

/// `τ M = D Tr M`. The zero module maps to zero.
pub fn ar_translate(m: &Module) -> Result<Module> {
    if !m.is_zero() && is_projective(m) {
        return Err(Error::ProjectiveInput);
    }
    Ok(dual(&transpose(m)))
}

/// `τ⁻¹ M = Tr D M`.
pub fn ar_translate_inverse(m: &Module) -> Result<Module> {
    if !m.is_zero() && is_injective(m) {
        return Err(Error::InjectiveInput);
    }
    Ok(transpose(&dual(m)))
}

/// A basis of the maps `X -> Y` factoring through a projective module; they
/// are exactly those factoring through the projective cover of `Y`.
pub fn projective_maps(x: &Module, y: &Module) -> Vec<ModuleMap> {
    let cover = projective_cover(y);
    let len: usize = x.dims().iter().zip(y.dims()).map(|(a, b)| a * b).sum();
    let mut span = Subspace::new(x.field(), len);
    let mut out = Vec::new();
    for l in super::hom::hom_space(x, cover.projective.module()) {
        let h = cover.map.compose(&l);
        if span.insert(&h.flatten()) {
            out.push(h);
        }
    }
    out
}

/// `dim Hom(X, Y) - dim P(X, Y)`.
pub fn stable_hom_dimension(x: &Module, y: &Module) -> usize {
    super::hom::hom_dimension(x, y) - projective_maps(x, y).len()
}
