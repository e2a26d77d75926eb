//! `Ext^1_A(C, A)` through the syzygy sequence `0 -> Ω C -> P0 -> C -> 0`:
//! classes are maps `Ω C -> A` modulo those extending to `P0`.

use super::hom::hom_space;
use super::ops::{cokernel, descend, diagonal, direct_sum, restrict_to};
use super::projective::{syzygy_sequence, ProjectiveCover};
use super::{Module, ModuleMap, ShortExactSeq};
use crate::error::{Error, Result};
use crate::linalg::{Coordinates, FpMatrix, Subspace};

#[derive(Clone, Debug)]
pub struct Ext1Space {
    c: Module,
    a: Module,
    cover: ProjectiveCover,
    omega: Module,
    incl: ModuleMap,
    reps: Vec<ModuleMap>,
    image_dim: usize,
    coords: Option<Coordinates>,
}

/// Computes `Ext^1(C, A)` with explicit representatives.
pub fn ext1(c: &Module, a: &Module) -> Ext1Space {
    assert!(
        c.algebra().same_as(a.algebra()),
        "modules over different algebras"
    );
    let f = c.field();
    let (omega, incl, cover) = syzygy_sequence(c);
    let homs = hom_space(&omega, a);
    let len: usize = omega.dims().iter().zip(a.dims()).map(|(x, y)| x * y).sum();
    // maps Ω C -> A that extend to P0: restrictions of Hom(P0, A)
    let p0 = &cover.projective;
    let mut image = Subspace::new(f, len);
    for (s, &t) in p0.tops.iter().enumerate() {
        for k in 0..a.dims()[t] {
            let mut images = vec![Vec::new(); p0.tops.len()];
            for (s2, &t2) in p0.tops.iter().enumerate() {
                images[s2] = vec![0u32; a.dims()[t2]];
            }
            images[s][k] = 1;
            let phi = p0.map_to(a, &images);
            image.insert(&phi.compose(&incl).flatten());
        }
    }
    let image_dim = image.dim();
    let mut span = image.clone();
    let mut reps = Vec::new();
    for h in homs {
        if span.insert(&h.flatten()) {
            reps.push(h);
        }
    }
    let coords = if len == 0 {
        None
    } else {
        let mut basis: Vec<Vec<u32>> = image.basis().to_vec();
        basis.extend(reps.iter().map(|r| r.flatten()));
        Coordinates::new(f, len, &basis)
    };
    Ext1Space {
        c: c.clone(),
        a: a.clone(),
        cover,
        omega,
        incl,
        reps,
        image_dim,
        coords,
    }
}

impl Ext1Space {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn left(&self) -> &Module {
        &self.a
    }

    pub fn right(&self) -> &Module {
        &self.c
    }

    pub fn syzygy(&self) -> (&Module, &ModuleMap) {
        (&self.omega, &self.incl)
    }

    pub fn representatives(&self) -> &[ModuleMap] {
        &self.reps
    }

    /// Class of a map `Ω C -> A` in the representative basis.
    pub fn class_of(&self, h: &ModuleMap) -> Vec<u32> {
        match &self.coords {
            None => Vec::new(),
            Some(co) => {
                let c = co
                    .coordinates(&h.flatten())
                    .expect("h is a homomorphism from the syzygy");
                c[self.image_dim..].to_vec()
            }
        }
    }

    /// The map `Ω C -> A` representing a class.
    pub fn representative(&self, class: &[u32]) -> ModuleMap {
        let mut acc = ModuleMap::zero(&self.omega, &self.a);
        for (r, &c) in self.reps.iter().zip(class) {
            if c != 0 {
                acc = acc.add(&r.scale(c));
            }
        }
        acc
    }

    /// Matrix of `ξ -> α ξ` for an endomorphism `α` of `A`.
    pub fn left_action(&self, alpha: &ModuleMap) -> FpMatrix {
        let cols: Vec<Vec<u32>> = self
            .reps
            .iter()
            .map(|h| self.class_of(&alpha.compose(h)))
            .collect();
        FpMatrix::from_columns(self.c.field(), self.dim(), &cols)
    }

    /// Restriction to `Ω C` of a lift of `β: C -> C` along the cover.
    pub fn syzygy_endomorphism(&self, beta: &ModuleMap) -> ModuleMap {
        let p0 = &self.cover.projective;
        let cover = &self.cover.map;
        let images: Vec<Vec<u32>> = p0
            .tops
            .iter()
            .enumerate()
            .map(|(s, &t)| {
                let y = beta
                    .block(t)
                    .mul_vec(&cover.block(t).mul_vec(&p0.generator(s)));
                cover.block(t).solve(&y).expect("cover is surjective")
            })
            .collect();
        let lift = p0.map_to(p0.module(), &images);
        restrict_to(&self.incl, &lift.compose(&self.incl)).expect("lift preserves the syzygy")
    }

    /// Matrix of `ξ -> ξ β` for an endomorphism `β` of `C`.
    pub fn right_action(&self, beta: &ModuleMap) -> FpMatrix {
        let beta_k = self.syzygy_endomorphism(beta);
        let cols: Vec<Vec<u32>> = self
            .reps
            .iter()
            .map(|h| self.class_of(&h.compose(&beta_k)))
            .collect();
        FpMatrix::from_columns(self.c.field(), self.dim(), &cols)
    }

    /// The extension `0 -> A -> B -> C -> 0` of a class, as the pushout of
    /// the syzygy sequence along the representative.
    pub fn realize(&self, class: &[u32]) -> Result<ShortExactSeq> {
        if class.len() != self.dim() {
            return Err(Error::Shape(format!(
                "class needs {} coordinates",
                self.dim()
            )));
        }
        let alg = self.c.algebra();
        let h = self.representative(class);
        let p0 = self.cover.projective.module();
        let sum = direct_sum(alg, &[self.a.clone(), p0.clone()]);
        let neg = self.incl.scale(self.c.field().neg(1));
        let into_sum = diagonal(&sum, &[h, neg], &self.omega);
        let (b, q) = cokernel(&into_sum);
        let f = q.compose(&sum.injections[0]);
        let to_c = self.cover.map.compose(&sum.projections[1]);
        let g = descend(&q, &to_c)
            .ok_or_else(|| Error::InvalidModule("pushout map does not descend".into()))?;
        debug_assert!(b.dim() == self.a.dim() + self.c.dim());
        ShortExactSeq::new(f, g)
    }
}
