//! Krull-Schmidt decomposition by Fitting splitting, and isomorphism tests.

use super::hom::hom_space;
use super::ops::{direct_sum, submodule};
use super::projective::is_projective;
use super::{Module, ModuleMap};
use crate::algebra::radical::{Locality, RingView};
use crate::error::{Error, Result};
use crate::linalg::{minimal_polynomial, Coordinates, FpMatrix, Poly};

/// `M ≅ ⊕ M_i` with `Σ inclusions[i] ∘ projections[i] = id`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<Module>,
    pub inclusions: Vec<ModuleMap>,
    pub projections: Vec<ModuleMap>,
}

/// `End(M)` as a ring in the coordinates of a Hom basis.
struct EndRing {
    basis: Vec<ModuleMap>,
    table: Vec<Vec<Vec<u32>>>,
    one: Vec<u32>,
}

impl EndRing {
    fn new(m: &Module, basis: Vec<ModuleMap>) -> EndRing {
        let f = m.field();
        let flat: Vec<Vec<u32>> = basis.iter().map(|e| e.flatten()).collect();
        let len = ModuleMap::identity(m).flatten().len();
        let coords = Coordinates::new(f, len, &flat).expect("Hom basis is independent");
        let table = crate::par::map_range(basis.len(), |i| {
            basis
                .iter()
                .map(|b| {
                    coords
                        .coordinates(&basis[i].compose(b).flatten())
                        .expect("End is closed")
                })
                .collect()
        });
        let one = coords
            .coordinates(&ModuleMap::identity(m).flatten())
            .expect("identity");
        EndRing { basis, table, one }
    }

    fn mul(&self, field: crate::linalg::PrimeField, x: &[u32], y: &[u32]) -> Vec<u32> {
        let r = self.basis.len();
        let mut out = vec![0u32; r];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let ab = field.mul(a, b);
                for (o, &t) in out.iter_mut().zip(&self.table[i][j]) {
                    *o = field.add(*o, field.mul(ab, t));
                }
            }
        }
        out
    }

    fn element(&self, m: &Module, x: &[u32]) -> ModuleMap {
        let mut acc = ModuleMap::zero(m, m);
        for (e, &c) in self.basis.iter().zip(x) {
            if c != 0 {
                acc = acc.add(&e.scale(c));
            }
        }
        acc
    }

    fn analyze(&self, m: &Module) -> Result<Locality> {
        let f = m.field();
        let mul = |x: &[u32], y: &[u32]| self.mul(f, x, y);
        let ring = RingView {
            field: f,
            dim: self.basis.len(),
            one: self.one.clone(),
            mul: &mul,
        };
        ring.analyze(crate::seed::seed() ^ (m.dim() as u64) << 8)
    }
}

fn map_minpoly(e: &ModuleMap) -> Poly {
    let f = e.source().field();
    e.blocks()
        .iter()
        .filter(|b| b.rows() > 0)
        .map(minimal_polynomial)
        .fold(Poly::one(f), |acc, p| acc.lcm(&p))
}

/// An endomorphism whose minimal polynomial splits as `u v` with coprime
/// non-constant factors, or `None` when `M` is indecomposable.
fn find_split(m: &Module) -> Result<Option<(ModuleMap, Poly, Poly)>> {
    if m.cached_indecomposable().get() == Some(&true) {
        return Ok(None);
    }
    let basis = hom_space(m, m);
    let mut rng = crate::seed::rng(m.dim() as u64);
    if basis.len() <= 1 {
        let _ = m.cached_indecomposable().set(true);
        return Ok(None);
    }
    for e in &basis {
        if let Some((u, v)) = map_minpoly(e).coprime_split(&mut rng) {
            return Ok(Some((e.clone(), u, v)));
        }
    }
    let ring = EndRing::new(m, basis);
    match ring.analyze(m)? {
        Locality::Local(_) => {
            let _ = m.cached_indecomposable().set(true);
            Ok(None)
        }
        Locality::Split(x) => {
            let e = ring.element(m, &x);
            let (u, v) = map_minpoly(&e).coprime_split(&mut rng).ok_or_else(|| {
                Error::Decomposition("split element has a primary minimal polynomial".into())
            })?;
            Ok(Some((e, u, v)))
        }
    }
}

fn kernel_of_poly(e: &ModuleMap, p: &Poly) -> (Module, ModuleMap) {
    let spans: Vec<Vec<Vec<u32>>> = e
        .blocks()
        .iter()
        .map(|b| p.eval_matrix(b).kernel_basis())
        .collect();
    submodule(e.source(), &spans).expect("Fitting components are submodules")
}

pub fn is_indecomposable(m: &Module) -> bool {
    if m.is_zero() {
        return false;
    }
    matches!(find_split(m), Ok(None))
}

/// Decomposes `M` into indecomposable summands.
pub fn decompose(m: &Module) -> Result<Decomposition> {
    if m.is_zero() {
        return Ok(Decomposition {
            summands: Vec::new(),
            inclusions: Vec::new(),
            projections: Vec::new(),
        });
    }
    let Some((e, u, v)) = find_split(m)? else {
        return Ok(Decomposition {
            summands: vec![m.clone()],
            inclusions: vec![ModuleMap::identity(m)],
            projections: vec![ModuleMap::identity(m)],
        });
    };
    let (m1, i1) = kernel_of_poly(&e, &u);
    let (m2, i2) = kernel_of_poly(&e, &v);
    if m1.dim() + m2.dim() != m.dim() || m1.is_zero() || m2.is_zero() {
        return Err(Error::Decomposition(
            "Fitting components do not split the module".into(),
        ));
    }
    // projections from the inverse of [i1 i2]
    let f = m.field();
    let mut p1 = Vec::new();
    let mut p2 = Vec::new();
    for w in 0..m.dims().len() {
        let joined = i1.block(w).hstack(i2.block(w));
        let inv = if joined.rows() == 0 {
            FpMatrix::zeros(f, 0, 0)
        } else {
            joined
                .invert()
                .ok_or_else(|| Error::Decomposition("components are not complementary".into()))?
        };
        let d1 = m1.dims()[w];
        p1.push(inv.submatrix(0..d1, 0..inv.cols()));
        p2.push(inv.submatrix(d1..inv.rows(), 0..inv.cols()));
    }
    let p1 = ModuleMap::new_unchecked(m.clone(), m1.clone(), p1);
    let p2 = ModuleMap::new_unchecked(m.clone(), m2.clone(), p2);
    let mut out = Decomposition {
        summands: Vec::new(),
        inclusions: Vec::new(),
        projections: Vec::new(),
    };
    for (part, incl, proj) in [(m1, i1, p1), (m2, i2, p2)] {
        let sub = decompose(&part)?;
        for ((s, i), p) in sub
            .summands
            .into_iter()
            .zip(sub.inclusions)
            .zip(sub.projections)
        {
            out.summands.push(s);
            out.inclusions.push(incl.compose(&i));
            out.projections.push(p.compose(&proj));
        }
    }
    Ok(out)
}

/// Radical of `End(M)` for indecomposable `M`, as endomorphisms.
pub fn endomorphism_radical(m: &Module) -> Result<Vec<ModuleMap>> {
    let basis = hom_space(m, m);
    if basis.len() <= 1 {
        return Ok(Vec::new());
    }
    let ring = EndRing::new(m, basis);
    match ring.analyze(m)? {
        Locality::Local(rad) => Ok(rad.iter().map(|x| ring.element(m, x)).collect()),
        Locality::Split(_) => Err(Error::Decomposition("module is decomposable".into())),
    }
}

fn indecomposables_isomorphic(m: &Module, n: &Module) -> bool {
    isomorphism_between_indecomposables(m, n).is_some()
}

/// An isomorphism between indecomposables, if there is one. The non-invertible
/// maps form a proper subspace, so some basis element is invertible.
pub fn isomorphism_between_indecomposables(m: &Module, n: &Module) -> Option<ModuleMap> {
    if m.dims() != n.dims() {
        return None;
    }
    hom_space(m, n).into_iter().find(|h| h.is_isomorphism())
}

/// Matches two lists of indecomposables up to isomorphism and order.
pub fn match_summands(xs: &[Module], ys: &[Module]) -> bool {
    if xs.len() != ys.len() {
        return false;
    }
    let mut used = vec![false; ys.len()];
    'outer: for x in xs {
        for (j, y) in ys.iter().enumerate() {
            if !used[j] && indecomposables_isomorphic(x, y) {
                used[j] = true;
                continue 'outer;
            }
        }
        return false;
    }
    true
}

pub fn is_isomorphic(m: &Module, n: &Module) -> Result<bool> {
    m.check_same_algebra(n)?;
    if m.dims() != n.dims() {
        return Ok(false);
    }
    if m.is_zero() {
        return Ok(true);
    }
    if is_indecomposable(m) {
        return Ok(is_indecomposable(n) && indecomposables_isomorphic(m, n));
    }
    let dm = decompose(m)?;
    let dn = decompose(n)?;
    Ok(match_summands(&dm.summands, &dn.summands))
}

/// `M` without its projective summands.
pub fn drop_projective_summands(m: &Module) -> Result<Module> {
    let d = decompose(m)?;
    let kept: Vec<Module> = d
        .summands
        .into_iter()
        .filter(|s| !is_projective(s))
        .collect();
    Ok(direct_sum(m.algebra(), &kept).module)
}

/// Isomorphism after discarding projective summands.
pub fn is_stably_isomorphic(m: &Module, n: &Module) -> Result<bool> {
    let a = decompose(m)?;
    let b = decompose(n)?;
    let xs: Vec<Module> = a
        .summands
        .into_iter()
        .filter(|s| !is_projective(s))
        .collect();
    let ys: Vec<Module> = b
        .summands
        .into_iter()
        .filter(|s| !is_projective(s))
        .collect();
    Ok(match_summands(&xs, &ys))
}
