//! `End_A(⊕ G_i)` for pairwise non-isomorphic indecomposables `G_i`, and the
//! functor `Hom_A(⊕ G_i, -)` into its right modules.
//!
//! Vertex `i` corresponds to `G_i`; the block `e_i Γ e_j` is `Hom(G_j, G_i)`
//! and multiplication is composition, so `Hom(E, M)` is a right module by
//! precomposition with `Hom(E, M) e_i = Hom(G_i, M)`.

use std::sync::Arc;

use super::decompose::endomorphism_radical;
use super::hom::hom_space;
use super::projective::projective_maps;
use super::{Module, ModuleMap};
use crate::algebra::{AlgebraData, Origin, Quotient, RadicalBackend, StructAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{Coordinates, FpMatrix, Subspace};

/// A basis of `Hom(X, Y)` with coordinates.
#[derive(Clone, Debug)]
pub struct HomBasis {
    pub maps: Vec<ModuleMap>,
    coords: Option<Coordinates>,
}

impl HomBasis {
    pub fn new(source: &Module, target: &Module, maps: Vec<ModuleMap>) -> HomBasis {
        let len: usize = source
            .dims()
            .iter()
            .zip(target.dims())
            .map(|(a, b)| a * b)
            .sum();
        let flat: Vec<Vec<u32>> = maps.iter().map(|m| m.flatten()).collect();
        let coords = if maps.is_empty() {
            None
        } else {
            Some(Coordinates::new(source.field(), len, &flat).expect("basis is independent"))
        };
        HomBasis { maps, coords }
    }

    pub fn compute(source: &Module, target: &Module) -> HomBasis {
        HomBasis::new(source, target, hom_space(source, target))
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn coordinates(&self, h: &ModuleMap) -> Vec<u32> {
        match &self.coords {
            None => Vec::new(),
            Some(c) => c
                .coordinates(&h.flatten())
                .expect("map lies in the Hom space"),
        }
    }

    pub fn combine(&self, coeffs: &[u32], source: &Module, target: &Module) -> ModuleMap {
        let mut acc = ModuleMap::zero(source, target);
        for (m, &c) in self.maps.iter().zip(coeffs) {
            if c != 0 {
                acc = acc.add(&m.scale(c));
            }
        }
        acc
    }
}

/// `Γ = End(⊕ G_i)` with the bookkeeping needed to move between
/// `Γ`-elements and maps.
#[derive(Clone, Debug)]
pub struct EndomorphismAlgebra {
    pub algebra: Arc<StructAlgebra>,
    pub summands: Vec<Module>,
    /// `homs[i][j]` is the chosen basis of `Hom(G_j, G_i)` (block `(i, j)`)
    homs: Vec<Vec<HomBasis>>,
    /// first basis index of block `(i, j)`
    block_start: Vec<Vec<usize>>,
}

/// Builds `End(⊕ G_i)`. The summands must be indecomposable and pairwise
/// non-isomorphic; the basis of each `End(G_i)` starts with the identity,
/// followed by a residue complement and then a radical basis.
pub fn endomorphism_algebra(name: &str, summands: &[Module]) -> Result<EndomorphismAlgebra> {
    let n = summands.len();
    if n == 0 {
        return Err(Error::InvalidAlgebra("no summands".into()));
    }
    let base = summands[0].algebra().clone();
    for s in summands {
        s.check_same_algebra(&summands[0])?;
        if s.is_zero() {
            return Err(Error::ZeroModule);
        }
    }
    let field = base.field();
    // local endomorphism rings, identity first
    let mut radicals = Vec::with_capacity(n);
    let mut homs: Vec<Vec<HomBasis>> = Vec::with_capacity(n);
    for i in 0..n {
        let rad = endomorphism_radical(&summands[i]).map_err(|_| Error::DecomposableSummand(i))?;
        radicals.push(rad.len());
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            if i == j {
                let g = &summands[i];
                let id = ModuleMap::identity(g);
                let len = id.flatten().len();
                let mut span = Subspace::new(field, len);
                span.insert(&id.flatten());
                for r in &rad {
                    span.insert(&r.flatten());
                }
                let mut maps = vec![id];
                for h in hom_space(g, g) {
                    if span.insert(&h.flatten()) {
                        maps.push(h);
                    }
                }
                maps.extend(rad.iter().cloned());
                row.push(HomBasis::new(g, g, maps));
            } else {
                row.push(HomBasis::compute(&summands[j], &summands[i]));
            }
        }
        homs.push(row);
    }
    for i in 0..n {
        for j in 0..i {
            if homs[i][j].maps.iter().any(|h| h.is_isomorphism()) {
                return Err(Error::DuplicateSummand(i));
            }
        }
    }
    let mut block_start = vec![vec![0usize; n]; n];
    let mut dim = 0;
    let mut labels = Vec::new();
    for i in 0..n {
        for j in 0..n {
            block_start[i][j] = dim;
            for k in 0..homs[i][j].len() {
                labels.push(if i == j && k == 0 {
                    format!("1_{i}")
                } else {
                    format!("h{i}_{j}_{k}")
                });
            }
            dim += homs[i][j].len();
        }
    }
    // structure constants: (i,j,a) * (j,l,b) = coordinates of a ∘ b in Hom(G_l, G_i)
    let entries: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let rows = crate::par::map(&entries, |&(i, j)| {
        let mut out = Vec::new();
        for l in 0..n {
            for (a, ha) in homs[i][j].maps.iter().enumerate() {
                for (b, hb) in homs[j][l].maps.iter().enumerate() {
                    let c = homs[i][l].coordinates(&ha.compose(hb));
                    let sparse: Vec<(usize, u32)> = c
                        .iter()
                        .enumerate()
                        .filter(|&(_, &x)| x != 0)
                        .map(|(k, &x)| (block_start[i][l] + k, x))
                        .collect();
                    out.push((block_start[i][j] + a, block_start[j][l] + b, sparse));
                }
            }
        }
        out
    });
    let mut table = vec![Vec::new(); dim * dim];
    for row in rows {
        for (x, y, s) in row {
            table[x * dim + y] = s;
        }
    }
    let mut radical = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let len = homs[i][j].len();
            let skip = if i == j { len - radicals[i] } else { 0 };
            for k in skip..len {
                let mut v = vec![0u32; dim];
                v[block_start[i][j] + k] = 1;
                radical.push(v);
            }
        }
    }
    let data = AlgebraData {
        name: name.to_string(),
        field,
        basis_labels: labels,
        vertex_labels: (0..n).map(|i| format!("G{i}")).collect(),
        idempotents: (0..n).map(|i| block_start[i][i]).collect(),
        table,
    };
    let algebra = StructAlgebra::build(
        data,
        Some((radical, RadicalBackend::Structural)),
        None,
        Origin::Endomorphism,
    )?;
    Ok(EndomorphismAlgebra {
        algebra,
        summands: summands.to_vec(),
        homs,
        block_start,
    })
}

impl EndomorphismAlgebra {
    pub fn num_summands(&self) -> usize {
        self.summands.len()
    }

    /// Basis of `Hom(G_j, G_i)`.
    pub fn hom_basis(&self, i: usize, j: usize) -> &HomBasis {
        &self.homs[i][j]
    }

    /// The map `G_j -> G_i` of the `(i, j)` component of a Γ-element.
    pub fn element_map(&self, element: &[u32], i: usize, j: usize) -> ModuleMap {
        let start = self.block_start[i][j];
        let coeffs = &element[start..start + self.homs[i][j].len()];
        self.homs[i][j].combine(coeffs, &self.summands[j], &self.summands[i])
    }

    /// The Γ-element of a map `G_j -> G_i`.
    pub fn element_of(&self, map: &ModuleMap, i: usize, j: usize) -> Vec<u32> {
        let mut v = vec![0u32; self.algebra.dim()];
        let start = self.block_start[i][j];
        for (k, c) in self.homs[i][j].coordinates(map).into_iter().enumerate() {
            v[start + k] = c;
        }
        v
    }

    /// `Hom(E, M)` as a right Γ-module, with the chosen basis of each
    /// `Hom(G_i, M)`.
    pub fn hom_functor(&self, m: &Module) -> Result<(Module, Vec<HomBasis>)> {
        m.check_same_algebra(&self.summands[0])?;
        let bases: Vec<HomBasis> = crate::par::map(&self.summands, |g| HomBasis::compute(g, m));
        let f = m.field();
        let dims: Vec<usize> = bases.iter().map(|b| b.len()).collect();
        let gens = self
            .algebra
            .generators()
            .iter()
            .map(|g| {
                // g ∈ e_u Γ e_v is a map G_v -> G_u; φ ∈ Hom(G_u, M) goes to φ ∘ g
                let gamma = self.element_map(&g.element, g.source, g.target);
                let cols: Vec<Vec<u32>> = bases[g.source]
                    .maps
                    .iter()
                    .map(|phi| bases[g.target].coordinates(&phi.compose(&gamma)))
                    .collect();
                FpMatrix::from_columns(f, dims[g.target], &cols)
            })
            .collect();
        let module = Module::new_unchecked(self.algebra.clone(), dims, gens)?;
        Ok((module, bases))
    }

    /// The Γ-map `Hom(E, M) -> Hom(E, N)` induced by `f: M -> N`.
    pub fn hom_functor_map(
        &self,
        f: &ModuleMap,
        source: (&Module, &[HomBasis]),
        target: (&Module, &[HomBasis]),
    ) -> ModuleMap {
        let field = f.source().field();
        let blocks = (0..self.num_summands())
            .map(|i| {
                let cols: Vec<Vec<u32>> = source.1[i]
                    .maps
                    .iter()
                    .map(|phi| target.1[i].coordinates(&f.compose(phi)))
                    .collect();
                FpMatrix::from_columns(field, target.1[i].len(), &cols)
            })
            .collect();
        ModuleMap::new_unchecked(source.0.clone(), target.0.clone(), blocks)
    }

    /// `Γ / Γ e Γ` for the idempotent `e` of the listed vertices.
    pub fn quotient_by_vertices(
        &self,
        vertices: &[usize],
        name: &str,
    ) -> Result<crate::algebra::Quotient> {
        let a = &self.algebra;
        let through: Vec<Vec<u32>> = vertices
            .iter()
            .flat_map(|&p| {
                (0..a.num_vertices())
                    .flat_map(move |i| a.block(i, p).iter().map(|&b| a.unit_vector(b)))
            })
            .collect();
        let from: Vec<Vec<u32>> = vertices
            .iter()
            .flat_map(|&p| {
                (0..a.num_vertices())
                    .flat_map(move |j| a.block(p, j).iter().map(|&b| a.unit_vector(b)))
            })
            .collect();
        let ideal = a.product_space(&through, &from);
        a.quotient(&ideal, name)
    }
}

/// `Γ` together with its quotient by the ideal of maps that factor through
/// projective modules.
#[derive(Clone, Debug)]
pub struct StableEndomorphismAlgebra {
    pub full: EndomorphismAlgebra,
    pub quotient: Quotient,
}

pub fn stable_endomorphism_algebra(
    name: &str,
    summands: &[Module],
) -> Result<StableEndomorphismAlgebra> {
    let full = endomorphism_algebra(&format!("{name}~"), summands)?;
    let n = summands.len();
    let mut ideal = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for h in projective_maps(&summands[j], &summands[i]) {
                ideal.push(full.element_of(&h, i, j));
            }
        }
    }
    let quotient = full.algebra.quotient(&ideal, name)?;
    Ok(StableEndomorphismAlgebra { full, quotient })
}
