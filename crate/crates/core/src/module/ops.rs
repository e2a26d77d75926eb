use super::{Module, ModuleMap};
use crate::error::{Error, Result};
use crate::linalg::{FpMatrix, Subspace};

/// The submodule spanned at each vertex by the given vectors, with its
/// inclusion. The vectors at a vertex need not be independent.
pub fn submodule(m: &Module, spans: &[Vec<Vec<u32>>]) -> Result<(Module, ModuleMap)> {
    let f = m.field();
    let incl: Vec<FpMatrix> = spans
        .iter()
        .zip(m.dims())
        .map(|(vs, &d)| {
            let basis = Subspace::spanned_by(f, d, vs);
            FpMatrix::from_columns(f, d, basis.basis())
        })
        .collect();
    let dims: Vec<usize> = incl.iter().map(|i| i.cols()).collect();
    let mut gens = Vec::with_capacity(m.algebra().generators().len());
    for (gi, g) in m.algebra().generators().iter().enumerate() {
        let image = m.gen(gi).mul(&incl[g.source]);
        let x = incl[g.target].solve_matrix(&image).ok_or_else(|| {
            Error::InvalidModule(format!("subspace not closed under {}", g.label))
        })?;
        gens.push(x);
    }
    let sub = Module::new_unchecked(m.algebra().clone(), dims, gens)?;
    let map = ModuleMap::new_unchecked(sub.clone(), m.clone(), incl);
    Ok((sub, map))
}

pub fn kernel(f: &ModuleMap) -> (Module, ModuleMap) {
    let spans: Vec<Vec<Vec<u32>>> = f.blocks().iter().map(|b| b.kernel_basis()).collect();
    submodule(f.source(), &spans).expect("kernels are submodules")
}

/// The image as a submodule of the target.
pub fn image(f: &ModuleMap) -> (Module, ModuleMap) {
    let spans: Vec<Vec<Vec<u32>>> = f.blocks().iter().map(|b| b.image_basis()).collect();
    submodule(f.target(), &spans).expect("images are submodules")
}

/// `N / im f` with the projection. The quotient basis at each vertex is the
/// set of standard basis vectors outside the pivots of the image.
pub fn cokernel(f: &ModuleMap) -> (Module, ModuleMap) {
    let n = f.target();
    let field = n.field();
    let mut proj = Vec::new();
    let mut sections = Vec::new();
    for (v, b) in f.blocks().iter().enumerate() {
        let d = n.dims()[v];
        let sub = Subspace::spanned_by(field, d, &b.image_basis());
        let comp = sub.complement_coordinates();
        let mut p = FpMatrix::zeros(field, comp.len(), d);
        for j in 0..d {
            let mut e = vec![0u32; d];
            e[j] = 1;
            let r = sub.reduce(&e);
            for (i, &c) in comp.iter().enumerate() {
                p.set(i, j, r[c]);
            }
        }
        let mut s = FpMatrix::zeros(field, d, comp.len());
        for (i, &c) in comp.iter().enumerate() {
            s.set(c, i, 1);
        }
        proj.push(p);
        sections.push(s);
    }
    let gens = n
        .algebra()
        .generators()
        .iter()
        .enumerate()
        .map(|(gi, g)| proj[g.target].mul(n.gen(gi)).mul(&sections[g.source]))
        .collect();
    let dims = proj.iter().map(|p| p.rows()).collect();
    let q = Module::new_unchecked(n.algebra().clone(), dims, gens).expect("shapes match");
    let map = ModuleMap::new_unchecked(n.clone(), q.clone(), proj);
    (q, map)
}

/// A direct sum with its canonical injections and projections.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: Module,
    pub injections: Vec<ModuleMap>,
    pub projections: Vec<ModuleMap>,
}

pub fn direct_sum(
    algebra: &std::sync::Arc<crate::algebra::StructAlgebra>,
    parts: &[Module],
) -> DirectSum {
    let field = algebra.field();
    let nv = algebra.num_vertices();
    let dims: Vec<usize> = (0..nv)
        .map(|v| parts.iter().map(|m| m.dims()[v]).sum())
        .collect();
    let gens = algebra
        .generators()
        .iter()
        .enumerate()
        .map(|(gi, _)| {
            let blocks: Vec<FpMatrix> = parts.iter().map(|m| m.gen(gi).clone()).collect();
            FpMatrix::block_diag(field, &blocks)
        })
        .collect();
    let module = Module::new_unchecked(algebra.clone(), dims.clone(), gens).expect("shapes match");
    let mut injections = Vec::with_capacity(parts.len());
    let mut projections = Vec::with_capacity(parts.len());
    let mut at = vec![0usize; nv];
    for m in parts {
        let mut inj = Vec::with_capacity(nv);
        let mut pr = Vec::with_capacity(nv);
        for v in 0..nv {
            let mut i = FpMatrix::zeros(field, dims[v], m.dims()[v]);
            let mut p = FpMatrix::zeros(field, m.dims()[v], dims[v]);
            for k in 0..m.dims()[v] {
                i.set(at[v] + k, k, 1);
                p.set(k, at[v] + k, 1);
            }
            at[v] += m.dims()[v];
            inj.push(i);
            pr.push(p);
        }
        injections.push(ModuleMap::new_unchecked(m.clone(), module.clone(), inj));
        projections.push(ModuleMap::new_unchecked(module.clone(), m.clone(), pr));
    }
    DirectSum {
        module,
        injections,
        projections,
    }
}

/// The map `⊕ M_i -> N` assembled from maps `M_i -> N`.
pub fn codiagonal(sum: &DirectSum, maps: &[ModuleMap], target: &Module) -> ModuleMap {
    let mut acc = ModuleMap::zero(&sum.module, target);
    for (m, p) in maps.iter().zip(&sum.projections) {
        acc = acc.add(&m.compose(p));
    }
    acc
}

/// The map `M -> ⊕ N_i` assembled from maps `M -> N_i`.
pub fn diagonal(sum: &DirectSum, maps: &[ModuleMap], source: &Module) -> ModuleMap {
    let mut acc = ModuleMap::zero(source, &sum.module);
    for (m, i) in maps.iter().zip(&sum.injections) {
        acc = acc.add(&i.compose(m));
    }
    acc
}

/// For a surjection `q: N -> Q` and `r: N -> X` vanishing on `ker q`, the
/// unique map `Q -> X` with `(Q -> X) ∘ q = r`.
pub fn descend(q: &ModuleMap, r: &ModuleMap) -> Option<ModuleMap> {
    let blocks = q
        .blocks()
        .iter()
        .zip(r.blocks())
        .map(|(qv, rv)| {
            let x = qv.transpose().solve_matrix(&rv.transpose())?;
            Some(x.transpose())
        })
        .collect::<Option<Vec<_>>>()?;
    Some(ModuleMap::new_unchecked(
        q.target().clone(),
        r.target().clone(),
        blocks,
    ))
}

/// For an injection `i: K -> N` and `r: X -> N` with image inside `im i`,
/// the unique map `X -> K` with `i ∘ (X -> K) = r`.
pub fn restrict_to(i: &ModuleMap, r: &ModuleMap) -> Option<ModuleMap> {
    let blocks = i
        .blocks()
        .iter()
        .zip(r.blocks())
        .map(|(iv, rv)| iv.solve_matrix(rv))
        .collect::<Option<Vec<_>>>()?;
    Some(ModuleMap::new_unchecked(
        r.source().clone(),
        i.source().clone(),
        blocks,
    ))
}
