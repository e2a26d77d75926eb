//! Modules over `base ⊗ shape` viewed as representations of the shape by
//! base-modules and base-module maps.

use std::sync::Arc;

use super::{Module, ModuleMap};
use crate::algebra::{Origin, ShapeKind, StructAlgebra};
use crate::error::{Error, Result};
use crate::linalg::FpMatrix;

/// One base-module per shape vertex and one base-map per shape generator
/// (`maps[k]` goes from `components[arrows[k].0]` to `components[arrows[k].1]`).
#[derive(Clone, Debug)]
pub struct QuiverRep {
    pub kind: ShapeKind,
    pub components: Vec<Module>,
    pub arrows: Vec<(usize, usize)>,
    pub maps: Vec<ModuleMap>,
}

/// Shape vertices along the chain of a linear shape, starting at the source.
/// For `S3` the order is source, sink, source.
pub fn chain_order(kind: ShapeKind) -> Vec<usize> {
    match kind {
        ShapeKind::Triangular(n) => (0..n).rev().collect(),
        ShapeKind::A3 => vec![2, 1, 0],
        ShapeKind::S3 => vec![1, 0, 2],
    }
}

fn tensor_parts(
    algebra: &StructAlgebra,
) -> Result<(&Arc<StructAlgebra>, &Arc<StructAlgebra>, ShapeKind)> {
    match algebra.origin() {
        Origin::Tensor { base, shape, kind } => Ok((base, shape, *kind)),
        _ => Err(Error::InvalidAlgebra(format!(
            "{} is not a shape tensor algebra",
            algebra.name()
        ))),
    }
}

impl QuiverRep {
    /// Shape arrows in generator order, for building representations.
    pub fn shape_arrows(
        kind: ShapeKind,
        field: crate::linalg::PrimeField,
    ) -> Result<Vec<(usize, usize)>> {
        let shape = kind.shape_algebra(field)?;
        Ok(shape
            .generators()
            .iter()
            .map(|g| (g.source, g.target))
            .collect())
    }

    /// Builds a representation, checking that all maps are base-module maps
    /// between the right components.
    pub fn new(
        kind: ShapeKind,
        components: Vec<Module>,
        maps: Vec<ModuleMap>,
    ) -> Result<QuiverRep> {
        let base = components
            .first()
            .ok_or_else(|| Error::InvalidModule("representation without components".into()))?
            .algebra()
            .clone();
        let arrows = QuiverRep::shape_arrows(kind, base.field())?;
        if components.len() != kind.size() || maps.len() != arrows.len() {
            return Err(Error::InvalidModule(
                "wrong number of components or maps".into(),
            ));
        }
        for (&(s, t), f) in arrows.iter().zip(&maps) {
            if f.source().dims() != components[s].dims()
                || f.target().dims() != components[t].dims()
            {
                return Err(Error::InvalidModule(
                    "map between the wrong components".into(),
                ));
            }
            if !f.is_homomorphism() {
                return Err(Error::InvalidModule("arrow map is not a module map".into()));
            }
        }
        Ok(QuiverRep {
            kind,
            components,
            arrows,
            maps,
        })
    }

    /// The module over `tensor` (which must be `base ⊗ kind`). Relations of
    /// the shape, such as a vanishing composite, are checked here.
    pub fn to_module(&self, tensor: &Arc<StructAlgebra>) -> Result<Module> {
        let (base, shape, kind) = tensor_parts(tensor)?;
        if kind != self.kind {
            return Err(Error::AlgebraMismatch);
        }
        let na = base.num_vertices();
        let ns = shape.num_vertices();
        let ng = base.generators().len();
        let mut dims = Vec::with_capacity(ns * na);
        for s in 0..ns {
            dims.extend_from_slice(self.components[s].dims());
        }
        let mut gens = Vec::with_capacity(tensor.generators().len());
        for s in 0..ns {
            for gi in 0..ng {
                gens.push(self.components[s].gen(gi).clone());
            }
        }
        for (k, _) in shape.generators().iter().enumerate() {
            for u in 0..na {
                gens.push(self.maps[k].block(u).clone());
            }
        }
        Module::new(tensor.clone(), dims, gens)
    }

    /// Reads a module over `base ⊗ shape` as a representation.
    pub fn from_module(m: &Module) -> Result<QuiverRep> {
        let (base, shape, kind) = tensor_parts(m.algebra())?;
        let na = base.num_vertices();
        let ns = shape.num_vertices();
        let ng = base.generators().len();
        let components: Vec<Module> = (0..ns)
            .map(|s| {
                let dims = m.dims()[s * na..(s + 1) * na].to_vec();
                let gens = (0..ng).map(|gi| m.gen(s * ng + gi).clone()).collect();
                Module::new_unchecked(base.clone(), dims, gens)
            })
            .collect::<Result<_>>()?;
        let mut arrows = Vec::new();
        let mut maps = Vec::new();
        for (k, g) in shape.generators().iter().enumerate() {
            let blocks: Vec<FpMatrix> = (0..na)
                .map(|u| m.gen(ns * ng + k * na + u).clone())
                .collect();
            arrows.push((g.source, g.target));
            maps.push(ModuleMap::new_unchecked(
                components[g.source].clone(),
                components[g.target].clone(),
                blocks,
            ));
        }
        Ok(QuiverRep {
            kind,
            components,
            arrows,
            maps,
        })
    }

    /// Components along [`chain_order`].
    pub fn chain(&self) -> Vec<&Module> {
        chain_order(self.kind)
            .into_iter()
            .map(|s| &self.components[s])
            .collect()
    }

    /// The map from shape vertex `s` to shape vertex `t`, if it is an arrow.
    pub fn map_between(&self, s: usize, t: usize) -> Option<&ModuleMap> {
        self.arrows
            .iter()
            .position(|&a| a == (s, t))
            .map(|k| &self.maps[k])
    }
}

/// Shape-wise pieces of a map between modules over `base ⊗ shape`.
pub fn component_maps(f: &ModuleMap) -> Result<Vec<ModuleMap>> {
    let x = QuiverRep::from_module(f.source())?;
    let y = QuiverRep::from_module(f.target())?;
    let na = x.components[0].dims().len();
    Ok((0..x.components.len())
        .map(|s| {
            let blocks = (0..na).map(|u| f.block(s * na + u).clone()).collect();
            ModuleMap::new_unchecked(x.components[s].clone(), y.components[s].clone(), blocks)
        })
        .collect())
}

/// Assembles component maps into a map of modules over `base ⊗ shape`.
pub fn assemble_map(source: &Module, target: &Module, parts: &[ModuleMap]) -> Result<ModuleMap> {
    let blocks = parts
        .iter()
        .flat_map(|p| p.blocks().iter().cloned())
        .collect();
    ModuleMap::new(source.clone(), target.clone(), blocks)
}
