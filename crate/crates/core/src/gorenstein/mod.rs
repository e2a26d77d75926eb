//! Gorenstein projective modules over Gorenstein algebras: the Gorenstein
//! dimension, GP inventories, local criteria for representations, relative
//! almost split sequences and syzygy orbits.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{ShapeKind, StructAlgebra};
use crate::ar::{
    almost_split_ending_at, certify_almost_split, socle_classes, splits, AlmostSplitSeq, ArQuiver,
    KnitLimits,
};
use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::module::rep::{chain_order, QuiverRep};
use crate::module::{
    codiagonal, cokernel, decompose, descend, diagonal, direct_sum, dual, endomorphism_radical,
    ext1, extend_along, hom_space, image, is_isomorphic, is_projective, kernel, projective_module,
    radical_submodule, regular_module, syzygy, syzygy_sequence, transpose, Catalog, Module,
    ModuleMap, ShortExactSeq,
};

#[cfg(test)]
mod tests;

#[derive(Clone, Debug, Serialize)]
pub struct GorensteinProfile {
    pub algebra: String,
    /// injective dimension of the regular right module
    pub right: Option<usize>,
    /// injective dimension of the regular left module
    pub left: Option<usize>,
    pub gdim: Option<usize>,
    pub self_injective: bool,
}

/// Length of the minimal projective resolution, if it stops within `cutoff` steps.
pub fn projective_dimension(m: &Module, cutoff: usize) -> Option<usize> {
    let mut cur = m.clone();
    for n in 0..=cutoff {
        if cur.is_zero() || is_projective(&cur) {
            return Some(n);
        }
        cur = syzygy_sequence(&cur).0;
    }
    None
}

/// Injective dimensions of `A` on both sides, read off as projective
/// dimensions of the duals `D(A_A)` and `D(_A A)`.
pub fn gorenstein_profile(a: &Arc<StructAlgebra>, cutoff: usize) -> Result<GorensteinProfile> {
    let op = a.opposite();
    let d_right = dual(&regular_module(a));
    let d_left = dual(&regular_module(&op));
    let (right, left) = rayon_pair(
        || projective_dimension(&d_right, cutoff),
        || projective_dimension(&d_left, cutoff),
    );
    let (Some(r), Some(l)) = (right, left) else {
        return Err(Error::CutoffExceeded(format!(
            "injective dimension of {} exceeds {cutoff} on some side",
            a.name()
        )));
    };
    let self_injective = r == 0 && is_isomorphic(&d_left, &regular_module(a))?;
    Ok(GorensteinProfile {
        algebra: a.name().to_string(),
        right,
        left,
        gdim: (r == l).then_some(r),
        self_injective,
    })
}

fn rayon_pair<A: Send, B: Send>(
    fa: impl FnOnce() -> A + Send,
    fb: impl FnOnce() -> B + Send,
) -> (A, B) {
    #[cfg(feature = "parallel")]
    {
        if crate::par::is_parallel() {
            return rayon::join(fa, fb);
        }
    }
    (fa(), fb())
}

fn known_gdim(profile: &GorensteinProfile) -> Result<usize> {
    profile.gdim.ok_or_else(|| {
        Error::IncompleteInput(format!(
            "Gorenstein dimension of {} is unknown",
            profile.algebra
        ))
    })
}

/// Indecomposable projectives of an algebra with the radical maps between them.
struct Projectives {
    modules: Vec<Module>,
    /// `rad[w][v]`: radical maps `P_w -> P_v`
    rad: Vec<Vec<Vec<ModuleMap>>>,
}

impl Projectives {
    fn new(a: &Arc<StructAlgebra>) -> Result<Projectives> {
        let nv = a.num_vertices();
        let modules: Vec<Module> = (0..nv).map(|v| projective_module(a, v)).collect();
        let rad = (0..nv)
            .map(|w| {
                (0..nv)
                    .map(|v| {
                        if w == v {
                            endomorphism_radical(&modules[v])
                        } else {
                            Ok(hom_space(&modules[w], &modules[v]))
                        }
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Projectives { modules, rad })
    }

    /// Minimal left `add(A)`-approximation `M -> Q`: maps `M -> P_v` that are
    /// independent modulo radical maps composed with maps into projectives.
    fn left_approximation(&self, m: &Module) -> (Module, ModuleMap) {
        let nv = self.modules.len();
        let homs: Vec<Vec<ModuleMap>> = (0..nv).map(|v| hom_space(m, &self.modules[v])).collect();
        let mut chosen = Vec::new();
        let mut parts = Vec::new();
        for v in 0..nv {
            let len: usize = m
                .dims()
                .iter()
                .zip(self.modules[v].dims())
                .map(|(x, y)| x * y)
                .sum();
            let mut span = Subspace::new(m.field(), len);
            for w in 0..nv {
                for r in &self.rad[w][v] {
                    for h in &homs[w] {
                        span.insert(&r.compose(h).flatten());
                    }
                }
            }
            for h in &homs[v] {
                if span.insert(&h.flatten()) {
                    chosen.push(h.clone());
                    parts.push(self.modules[v].clone());
                }
            }
        }
        let sum = direct_sum(m.algebra(), &parts);
        let map = diagonal(&sum, &chosen, m);
        (sum.module, map)
    }
}

/// Minimal left `add(A)`-approximation of `M`.
pub fn left_projective_approximation(m: &Module) -> Result<(Module, ModuleMap)> {
    Ok(Projectives::new(m.algebra())?.left_approximation(m))
}

/// A right Gorenstein projective approximation `G -> M` over an algebra of
/// Gorenstein dimension `d`, built by coresolving `Ω^d M` inside the GP
/// modules and comparing with the projective resolution of `M`. The
/// projective cover of `M` is added so the map is onto.
pub fn right_gp_approximation(m: &Module, d: usize) -> Result<(Module, ModuleMap)> {
    right_approx(&Projectives::new(m.algebra())?, m, d)
}

fn right_approx(proj: &Projectives, m: &Module, d: usize) -> Result<(Module, ModuleMap)> {
    if d == 0 || m.is_zero() {
        return Ok((m.clone(), ModuleMap::identity(m)));
    }
    let (k, incl, cover) = syzygy_sequence(m);
    if k.is_zero() {
        return Ok((m.clone(), ModuleMap::identity(m)));
    }
    let (gk, phi) = right_approx(proj, &k, d - 1)?;
    let (_, iota) = proj.left_approximation(&gk);
    let psi = extend_along(&incl.compose(&phi), &iota)
        .ok_or_else(|| Error::IncompleteInput("map into a projective does not extend".into()))?;
    let (g, pi) = cokernel(&iota);
    let theta = descend(&pi, &cover.map.compose(&psi))
        .ok_or_else(|| Error::InvalidModule("comparison map does not descend".into()))?;
    let p = cover.projective.module().clone();
    let sum = direct_sum(m.algebra(), &[g, p]);
    let map = codiagonal(&sum, &[theta, cover.map.clone()], m);
    Ok((sum.module, map))
}

/// Whether `Ext^i(M, A) = 0` for `1 <= i <= bound`, by dimension shifting
/// along syzygies. Stops early once a syzygy repeats.
pub fn ext_vanishes_on_projectives(m: &Module, bound: usize) -> Result<bool> {
    let alg = m.algebra();
    let projectives: Vec<Module> = (0..alg.num_vertices())
        .map(|v| projective_module(alg, v))
        .collect();
    let mut seen = Catalog::new();
    let mut cur = m.clone();
    for _ in 0..bound {
        let parts: Vec<Module> = decompose(&cur)?
            .summands
            .into_iter()
            .filter(|s| !is_projective(s))
            .collect();
        if parts.is_empty() {
            return Ok(true);
        }
        if parts.len() == 1 {
            if seen.find(&parts[0]).is_some() {
                return Ok(true);
            }
            seen.insert(parts[0].clone());
        }
        cur = direct_sum(alg, &parts).module;
        if projectives.iter().any(|p| ext1(&cur, p).dim() > 0) {
            return Ok(false);
        }
        cur = syzygy_sequence(&cur).0;
    }
    Ok(true)
}

/// `Hom_A(G, A)` over the opposite algebra, computed as `Ω² Tr G` for
/// indecomposable non-projective `G` and as the dual projective otherwise.
pub fn star(g: &Module) -> Module {
    if is_projective(g) {
        let op = g.algebra().opposite();
        let d = decompose(g).expect("projectives decompose");
        let parts: Vec<Module> = d
            .summands
            .iter()
            .map(|p| projective_module(&op, crate::module::projective_cover(p).projective.tops[0]))
            .collect();
        return direct_sum(&op, &parts).module;
    }
    syzygy(&transpose(g), 2)
}

#[derive(Clone, Debug)]
pub struct GpInventory {
    pub algebra: Arc<StructAlgebra>,
    pub gdim: usize,
    pub catalog: Catalog,
    pub projective: Vec<bool>,
    /// finite and complete: no cutoff was hit
    pub cm_finite: bool,
    pub cutoff_hit: bool,
    /// outcome of the Ext-vanishing cross-check, when one was run
    pub ext_check: Option<bool>,
}

impl GpInventory {
    fn seeded(a: &Arc<StructAlgebra>, gdim: usize) -> GpInventory {
        let mut inv = GpInventory {
            algebra: a.clone(),
            gdim,
            catalog: Catalog::new(),
            projective: Vec::new(),
            cm_finite: false,
            cutoff_hit: false,
            ext_check: None,
        };
        for v in 0..a.num_vertices() {
            inv.catalog.insert(projective_module(a, v));
            inv.projective.push(true);
        }
        inv
    }

    fn add(&mut self, m: Module, limits: KnitLimits) -> Option<usize> {
        if let Some(i) = self.catalog.find(&m) {
            return Some(i);
        }
        if m.dim() > limits.max_dim || self.catalog.len() >= limits.max_modules {
            self.cutoff_hit = true;
            return None;
        }
        let p = is_projective(&m);
        let (i, _) = self.catalog.insert(m);
        self.projective.push(p);
        Some(i)
    }

    pub fn len(&self) -> usize {
        self.catalog.len()
    }

    pub fn is_empty(&self) -> bool {
        self.catalog.is_empty()
    }

    pub fn modules(&self) -> &[Module] {
        self.catalog.modules()
    }

    pub fn get(&self, i: usize) -> &Module {
        self.catalog.get(i)
    }

    pub fn find(&self, m: &Module) -> Option<usize> {
        self.catalog.find(m)
    }

    pub fn non_projective(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.projective[i]).collect()
    }

    /// Whether every indecomposable summand of `m` is listed.
    pub fn contains(&self, m: &Module) -> bool {
        match decompose(m) {
            Ok(d) => d.summands.iter().all(|s| self.find(s).is_some()),
            Err(_) => false,
        }
    }

    /// The representation generator: the direct sum of all listed modules.
    pub fn generator(&self) -> Module {
        direct_sum(&self.algebra, self.modules()).module
    }

    /// Runs the bounded Ext-vanishing detector (`i <= dim A`) on every member
    /// and on every module of `others`, expecting agreement with membership.
    pub fn ext_cross_check(&self, others: &[Module]) -> Result<bool> {
        let bound = self.algebra.dim();
        let members = crate::par::map(self.modules(), |g| ext_vanishes_on_projectives(g, bound));
        for r in members {
            if !r? {
                return Ok(false);
            }
        }
        let outside = crate::par::map(others, |x| -> Result<bool> {
            let member = self.find(x).is_some();
            Ok(member || !ext_vanishes_on_projectives(x, bound)?)
        });
        for r in outside {
            if !r? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `G*` of every member is GP over the opposite algebra.
    pub fn duality_check(&self) -> Result<bool> {
        let d = self.gdim;
        let results = crate::par::map(self.modules(), |g| ext_vanishes_on_projectives(&star(g), d));
        for r in results {
            if !r? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn report(&self) -> Result<GpReport> {
        let orbits = if self.cm_finite {
            Some(omega_orbits(self)?)
        } else {
            None
        };
        let modules = (0..self.len())
            .map(|i| {
                let m = self.get(i);
                let (orbit, l) = match &orbits {
                    Some(o) => (o.orbit_of[i], o.length[i]),
                    None => (None, None),
                };
                GpEntry {
                    index: i,
                    dims: m.dims().to_vec(),
                    dim: m.dim(),
                    projective: self.projective[i],
                    orbit,
                    l,
                }
            })
            .collect();
        Ok(GpReport {
            algebra: self.algebra.name().to_string(),
            prime: self.algebra.field().p(),
            gdim: self.gdim,
            cm_finite: self.cm_finite,
            cutoff_hit: self.cutoff_hit,
            count: self.len(),
            modules,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GpEntry {
    pub index: usize,
    pub dims: Vec<usize>,
    pub dim: usize,
    pub projective: bool,
    pub orbit: Option<usize>,
    pub l: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GpReport {
    pub algebra: String,
    pub prime: u32,
    pub gdim: usize,
    pub cm_finite: bool,
    pub cutoff_hit: bool,
    pub count: usize,
    pub modules: Vec<GpEntry>,
}

/// GP indecomposables as the projectives together with the non-projective
/// summands of `Ω^d X` for every `X` in a complete Auslander-Reiten quiver.
/// The result is cross-checked against bounded Ext-vanishing on all of `arq`.
pub fn gp_inventory(arq: &ArQuiver, profile: &GorensteinProfile) -> Result<GpInventory> {
    if !arq.complete {
        return Err(Error::IncompleteInput(
            "the Auslander-Reiten quiver is not complete".into(),
        ));
    }
    let d = known_gdim(profile)?;
    let mut inv = GpInventory::seeded(&arq.algebra, d);
    let unlimited = KnitLimits {
        max_modules: usize::MAX,
        max_dim: usize::MAX,
    };
    let parts = crate::par::map(arq.modules(), |x| decompose(&syzygy(x, d)));
    for p in parts {
        for s in p?.summands {
            if !is_projective(&s) {
                inv.add(s, unlimited);
            }
        }
    }
    inv.cm_finite = true;
    inv.ext_check = Some(inv.ext_cross_check(arq.modules())?);
    Ok(inv)
}

/// Enumerates GP indecomposables without knowing all modules: starting from
/// the projectives, adds the summands of the source of the minimal right
/// almost split map in the GP category of every listed module, obtained as a
/// right GP approximation of the ambient sink map. A closed finite list is
/// all of the GP modules, by the Harada-Sai bound on chains of non-isomorphisms.
pub fn knit_gp(
    a: &Arc<StructAlgebra>,
    profile: &GorensteinProfile,
    limits: KnitLimits,
) -> Result<GpInventory> {
    let d = known_gdim(profile)?;
    let proj = Projectives::new(a)?;
    let mut inv = GpInventory::seeded(a, d);
    let mut done = 0;
    while done < inv.len() && !inv.cutoff_hit {
        let frontier: Vec<Module> = inv.modules()[done..].to_vec();
        let flags: Vec<bool> = inv.projective[done..].to_vec();
        done = inv.len();
        let snapshot = &inv.catalog;
        let steps = crate::par::map_range(frontier.len(), |k| {
            sink_source_summands(&proj, &frontier[k], flags[k], d, snapshot)
        });
        for step in steps {
            for s in step? {
                inv.add(s, limits);
            }
        }
    }
    inv.cm_finite = !inv.cutoff_hit;
    Ok(inv)
}

/// Indecomposable summands of a right almost split map ending at `c` inside
/// the GP modules (not necessarily minimal).
fn sink_source_summands(
    proj: &Projectives,
    c: &Module,
    projective: bool,
    d: usize,
    known: &Catalog,
) -> Result<Vec<Module>> {
    let source = if projective {
        radical_submodule(c).0
    } else {
        almost_split_ending_at(c)?.seq.middle().clone()
    };
    let mut out = Vec::new();
    for s in decompose(&source)?.summands {
        if known.find(&s).is_some() {
            out.push(s);
            continue;
        }
        let (g, _) = right_approx(proj, &s, d)?;
        out.extend(decompose(&g)?.summands);
    }
    Ok(out)
}

/// Whether every indecomposable summand of `m` is GP according to `inv`.
pub fn is_gp(m: &Module, inv: &GpInventory) -> bool {
    m.is_zero() || inv.contains(m)
}

fn quotient_is_gp(f: &ModuleMap, inv: &GpInventory) -> bool {
    is_gp(&cokernel(f).0, inv)
}

/// The monomorphism criterion for representations of a linear quiver: every
/// vertex module is GP and every structure map along the chain is injective
/// with GP cokernel.
pub fn gp_local_check_linear_quiver(x: &QuiverRep, inv: &GpInventory) -> bool {
    let ShapeKind::Triangular(_) = x.kind else {
        return false;
    };
    let order = chain_order(x.kind);
    if !x.components.iter().all(|c| is_gp(c, inv)) {
        return false;
    }
    order.windows(2).all(|w| match x.map_between(w[0], w[1]) {
        Some(f) => f.is_injective() && quotient_is_gp(f, inv),
        None => false,
    })
}

/// The criterion for `X_1 -f1-> X_2 -f2-> X_3` with `f2 f1 = 0`: `f1` is
/// injective, `Ker f2 = Im f1`, and `X_1, X_2, X_3, X_2/Im f1, X_3/Im f2` are GP.
pub fn gp_local_check_a3_relation(x: &QuiverRep, inv: &GpInventory) -> bool {
    if x.kind != ShapeKind::A3 {
        return false;
    }
    let order = chain_order(x.kind);
    let (Some(f1), Some(f2)) = (
        x.map_between(order[0], order[1]),
        x.map_between(order[1], order[2]),
    ) else {
        return false;
    };
    if !f1.is_injective() || !f2.compose(f1).is_zero() {
        return false;
    }
    // Ker f2 = Im f1 as subspaces of X_2, given Im f1 ⊆ Ker f2
    if kernel(f2).0.dim() != image(f1).0.dim() {
        return false;
    }
    x.components.iter().all(|c| is_gp(c, inv)) && quotient_is_gp(f1, inv) && quotient_is_gp(f2, inv)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Route {
    /// pushout of the ambient sequence along a minimal left approximation
    Approximation,
    /// search over socle classes of `Ext^1(C, A)` with `A` in the inventory
    BruteForce,
}

#[derive(Clone, Debug)]
pub struct RelativeAlmostSplit {
    pub seq: AlmostSplitSeq,
    pub route: Route,
}

/// Pushout of `0 -> A -f-> B -g-> C -> 0` along `a: A -> X`.
pub fn pushout(seq: &ShortExactSeq, a: &ModuleMap) -> Result<ShortExactSeq> {
    let alg = seq.left().algebra();
    let x = a.target();
    let c = seq.right();
    let sum = direct_sum(alg, &[x.clone(), seq.middle().clone()]);
    let neg = seq.f.scale(c.field().neg(1));
    let (e, pi) = cokernel(&diagonal(&sum, &[a.clone(), neg], seq.left()));
    let f = pi.compose(&sum.injections[0]);
    let onto = codiagonal(&sum, &[ModuleMap::zero(x, c), seq.g.clone()], c);
    let g = descend(&pi, &onto)
        .ok_or_else(|| Error::InvalidModule("pushout map does not descend".into()))?;
    debug_assert_eq!(e.dim(), x.dim() + c.dim());
    ShortExactSeq::new(f, g)
}

fn flat_len(x: &Module, y: &Module) -> usize {
    x.dims().iter().zip(y.dims()).map(|(a, b)| a * b).sum()
}

/// Drops summands of the source of `g` whose component factors through the
/// remaining ones; the result is right minimal.
pub fn right_minimal_version(g: &ModuleMap) -> Result<ModuleMap> {
    let d = decompose(g.source())?;
    let parts: Vec<ModuleMap> = d.inclusions.iter().map(|i| g.compose(i)).collect();
    let mut kept: Vec<usize> = (0..parts.len()).collect();
    for i in 0..parts.len() {
        let mut span = Subspace::new(g.target().field(), flat_len(&d.summands[i], g.target()));
        for &j in kept.iter().filter(|&&j| j != i) {
            for l in hom_space(&d.summands[i], &d.summands[j]) {
                span.insert(&parts[j].compose(&l).flatten());
            }
        }
        if span.contains(&parts[i].flatten()) {
            kept.retain(|&j| j != i);
        }
    }
    let summands: Vec<Module> = kept.iter().map(|&j| d.summands[j].clone()).collect();
    let maps: Vec<ModuleMap> = kept.iter().map(|&j| parts[j].clone()).collect();
    let sum = direct_sum(g.source().algebra(), &summands);
    Ok(codiagonal(&sum, &maps, g.target()))
}

/// Minimal left `add(inv)`-approximation of `m`: the universal map into copies
/// of the listed modules, thinned greedily while every map into a listed
/// module still factors.
pub fn left_gp_approximation(m: &Module, inv: &GpInventory) -> (Module, ModuleMap) {
    let n = inv.len();
    let targets = inv.modules();
    let to_targets: Vec<Vec<ModuleMap>> = crate::par::map(targets, |g| hom_space(m, g));
    let between: Vec<Vec<Vec<ModuleMap>>> = crate::par::map_range(n, |j| {
        (0..n)
            .map(|t| hom_space(&targets[j], &targets[t]))
            .collect()
    });
    let candidates: Vec<(usize, ModuleMap)> = to_targets
        .iter()
        .enumerate()
        .flat_map(|(j, hs)| hs.iter().map(move |h| (j, h.clone())))
        .collect();
    // composites[c][t]: maps m -> G_t through candidate c
    let composites: Vec<Vec<Vec<Vec<u32>>>> = candidates
        .iter()
        .map(|(j, h)| {
            (0..n)
                .map(|t| {
                    between[*j][t]
                        .iter()
                        .map(|l| l.compose(h).flatten())
                        .collect()
                })
                .collect()
        })
        .collect();
    let approximates = |kept: &[bool]| -> bool {
        (0..n).all(|t| {
            let mut span = Subspace::new(m.field(), flat_len(m, &targets[t]));
            for (c, &k) in kept.iter().enumerate() {
                if k {
                    for v in &composites[c][t] {
                        span.insert(v);
                    }
                }
            }
            span.dim() == to_targets[t].len()
        })
    };
    let mut kept = vec![true; candidates.len()];
    for c in 0..candidates.len() {
        kept[c] = false;
        if !approximates(&kept) {
            kept[c] = true;
        }
    }
    let chosen: Vec<&(usize, ModuleMap)> = candidates
        .iter()
        .zip(&kept)
        .filter(|(_, &k)| k)
        .map(|(c, _)| c)
        .collect();
    let parts: Vec<Module> = chosen.iter().map(|(j, _)| targets[*j].clone()).collect();
    let maps: Vec<ModuleMap> = chosen.iter().map(|(_, h)| h.clone()).collect();
    let sum = direct_sum(m.algebra(), &parts);
    let map = diagonal(&sum, &maps, m);
    (sum.module, map)
}

/// The almost split sequence ending at a non-projective GP indecomposable
/// inside the GP modules. The pushout route is tried first; if its result
/// does not certify, socle classes of `Ext^1(C, A)` are searched.
pub fn relative_almost_split_in_gp(c: &Module, inv: &GpInventory) -> Result<RelativeAlmostSplit> {
    if !inv.cm_finite {
        return Err(Error::IncompleteInput("GP inventory is not finite".into()));
    }
    if is_projective(c) {
        return Err(Error::ProjectiveInput);
    }
    if inv.find(c).is_none() {
        return Err(Error::Unknown("module is not in the GP inventory".into()));
    }
    if let Ok(seq) = approximation_route(c, inv) {
        if certify_almost_split(&seq, inv.modules()) {
            return Ok(RelativeAlmostSplit {
                seq: AlmostSplitSeq {
                    seq,
                    certified: true,
                },
                route: Route::Approximation,
            });
        }
    }
    let seq = brute_force_route(c, inv)?;
    Ok(RelativeAlmostSplit {
        seq: AlmostSplitSeq {
            seq,
            certified: true,
        },
        route: Route::BruteForce,
    })
}

fn approximation_route(c: &Module, inv: &GpInventory) -> Result<ShortExactSeq> {
    let ambient = almost_split_ending_at(c)?;
    let (_, a) = left_gp_approximation(ambient.seq.left(), inv);
    let pushed = pushout(&ambient.seq, &a)?;
    let g = right_minimal_version(&pushed.g)?;
    let (_, f) = kernel(&g);
    ShortExactSeq::new(f, g)
}

/// Tries every two-sided socle class of `Ext^1(C, A)` for `A` in the
/// inventory and returns the first one that certifies.
pub fn brute_force_route(c: &Module, inv: &GpInventory) -> Result<ShortExactSeq> {
    for a in inv.non_projective() {
        let a = inv.get(a);
        let ext = ext1(c, a);
        if ext.dim() == 0 {
            continue;
        }
        for class in socle_classes(&ext, c, a)? {
            let seq = ext.realize(&class)?;
            if splits(&seq) || !inv.contains(seq.middle()) {
                continue;
            }
            if certify_almost_split(&seq, inv.modules()) {
                return Ok(seq);
            }
        }
    }
    Err(Error::CertificationFailed(
        "no socle class certifies".into(),
    ))
}

#[derive(Clone, Debug, Serialize)]
pub struct OmegaOrbits {
    /// inventory index of the stable syzygy of each non-projective member
    pub omega: Vec<Option<usize>>,
    pub orbits: Vec<Vec<usize>>,
    pub orbit_of: Vec<Option<usize>>,
    /// least `n > 0` with `Ω^n G ≅ G` stably
    pub length: Vec<Option<usize>>,
}

/// Partitions the non-projective GP indecomposables into stable syzygy orbits.
pub fn omega_orbits(inv: &GpInventory) -> Result<OmegaOrbits> {
    let n = inv.len();
    let steps = crate::par::map_range(n, |i| -> Result<Option<usize>> {
        if inv.projective[i] {
            return Ok(None);
        }
        let parts: Vec<Module> = decompose(&syzygy_sequence(inv.get(i)).0)?
            .summands
            .into_iter()
            .filter(|s| !is_projective(s))
            .collect();
        match parts.as_slice() {
            [] => Err(Error::NonPeriodic(format!(
                "the syzygy of member {i} is projective"
            ))),
            [s] => inv.find(s).map(Some).ok_or_else(|| {
                Error::NonPeriodic(format!("the syzygy of member {i} is not listed"))
            }),
            _ => Err(Error::NonPeriodic(format!(
                "the syzygy of member {i} is decomposable"
            ))),
        }
    });
    let omega = steps.into_iter().collect::<Result<Vec<_>>>()?;
    let mut length = vec![None; n];
    for i in 0..n {
        if omega[i].is_none() {
            continue;
        }
        let mut cur = i;
        for k in 1..=n {
            cur = omega[cur].expect("syzygies stay non-projective");
            if cur == i {
                length[i] = Some(k);
                break;
            }
        }
        if length[i].is_none() {
            return Err(Error::NonPeriodic(format!("member {i} never returns")));
        }
    }
    let mut orbit_of = vec![None; n];
    let mut orbits = Vec::new();
    for i in 0..n {
        if omega[i].is_none() || orbit_of[i].is_some() {
            continue;
        }
        let id = orbits.len();
        let mut orbit = vec![i];
        orbit_of[i] = Some(id);
        let mut cur = omega[i].expect("non-projective");
        while cur != i {
            orbit_of[cur] = Some(id);
            orbit.push(cur);
            cur = omega[cur].expect("non-projective");
        }
        orbits.push(orbit);
    }
    Ok(OmegaOrbits {
        omega,
        orbits,
        orbit_of,
        length,
    })
}
