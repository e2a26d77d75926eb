//! Almost split sequences and Auslander-Reiten quivers.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::StructAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{FpMatrix, Subspace};
use crate::module::{
    ar_translate, ar_translate_inverse, decompose, endomorphism_radical, ext1, factor_through,
    hom_space, is_indecomposable, is_injective, is_projective, isomorphism_between_indecomposables,
    projective_module, radical_submodule, Catalog, Module, ModuleMap, ShortExactSeq,
};

#[cfg(test)]
mod tests;

#[derive(Clone, Debug)]
pub struct AlmostSplitSeq {
    pub seq: ShortExactSeq,
    pub certified: bool,
}

/// The almost split sequence `0 -> τC -> B -> C -> 0`, realized from a class
/// in the socle of `Ext^1(C, τC)` on both sides.
pub fn almost_split_ending_at(c: &Module) -> Result<AlmostSplitSeq> {
    if c.is_zero() {
        return Err(Error::ZeroModule);
    }
    if is_projective(c) {
        return Err(Error::ProjectiveInput);
    }
    if !is_indecomposable(c) {
        return Err(Error::Decomposition("end term is decomposable".into()));
    }
    let a = ar_translate(c)?;
    let ext = ext1(c, &a);
    let n = ext.dim();
    if n == 0 {
        return Err(Error::CertificationFailed("Ext^1(C, τC) vanishes".into()));
    }
    let socle = socle_classes(&ext, c, &a)?;
    let class = socle
        .first()
        .ok_or_else(|| Error::CertificationFailed("socle of Ext^1 is zero".into()))?;
    let seq = ext.realize(class)?;
    if splits(&seq) {
        return Err(Error::CertificationFailed(
            "realized extension splits".into(),
        ));
    }
    Ok(AlmostSplitSeq {
        seq,
        certified: false,
    })
}

/// The almost split sequence starting at a non-injective indecomposable.
pub fn almost_split_starting_at(a: &Module) -> Result<AlmostSplitSeq> {
    if !a.is_zero() && is_injective(a) {
        return Err(Error::InjectiveInput);
    }
    almost_split_ending_at(&ar_translate_inverse(a)?)
}

/// Classes of `Ext^1(C, A)` killed by `rad End(C)` and `rad End(A)`, for
/// indecomposable `C` and `A`.
pub fn socle_classes(
    ext: &crate::module::Ext1Space,
    c: &Module,
    a: &Module,
) -> Result<Vec<Vec<u32>>> {
    let n = ext.dim();
    let rad_c = endomorphism_radical(c)?;
    let rad_a = endomorphism_radical(a)?;
    let mut conditions = FpMatrix::zeros(c.field(), 0, n);
    for r in &rad_c {
        conditions = conditions.vstack(&ext.right_action(r));
    }
    for r in &rad_a {
        conditions = conditions.vstack(&ext.left_action(r));
    }
    Ok(if conditions.rows() == 0 {
        (0..n).map(|i| unit(n, i)).collect()
    } else {
        conditions.kernel_basis()
    })
}

fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0u32; n];
    v[i] = 1;
    v
}

/// Whether `g` has a section.
pub fn splits(seq: &ShortExactSeq) -> bool {
    factor_through(&ModuleMap::identity(seq.right()), &seq.g).is_some()
}

/// Maps `U -> C` that are not split epimorphisms, for indecomposable `U`
/// and `C`: all of them unless `U ≅ C`, else `rad End(C) ∘ φ`.
fn radical_maps_into(u: &Module, c: &Module, rad_c: &[ModuleMap]) -> Vec<ModuleMap> {
    match isomorphism_between_indecomposables(u, c) {
        Some(phi) => rad_c.iter().map(|r| r.compose(&phi)).collect(),
        None => hom_space(u, c),
    }
}

fn radical_maps_from(a: &Module, u: &Module, rad_a: &[ModuleMap]) -> Vec<ModuleMap> {
    match isomorphism_between_indecomposables(a, u) {
        Some(phi) => rad_a.iter().map(|r| phi.compose(r)).collect(),
        None => hom_space(a, u),
    }
}

fn span_of(
    maps: impl Iterator<Item = ModuleMap>,
    len: usize,
    field: crate::linalg::PrimeField,
) -> Subspace {
    let mut s = Subspace::new(field, len);
    for m in maps {
        s.insert(&m.flatten());
    }
    s
}

/// Checks the defining property of an almost split sequence against a
/// complete list of indecomposables of the ambient category: the sequence
/// does not split, its end terms are indecomposable, every non-retraction
/// `U -> C` lifts through `g` and every non-section `A -> U` extends along `f`.
pub fn certify_almost_split(seq: &ShortExactSeq, universe: &[Module]) -> bool {
    let (a, b, c) = (seq.left(), seq.middle(), seq.right());
    if !seq.is_exact() || !is_indecomposable(a) || !is_indecomposable(c) || splits(seq) {
        return false;
    }
    let (Ok(rad_c), Ok(rad_a)) = (endomorphism_radical(c), endomorphism_radical(a)) else {
        return false;
    };
    let field = c.field();
    crate::par::all(universe, |u| {
        let len_in: usize = u.dims().iter().zip(c.dims()).map(|(x, y)| x * y).sum();
        let lifted = span_of(
            hom_space(u, b).iter().map(|l| seq.g.compose(l)),
            len_in,
            field,
        );
        let right = radical_maps_into(u, c, &rad_c)
            .iter()
            .all(|h| lifted.contains(&h.flatten()));
        let len_out: usize = a.dims().iter().zip(u.dims()).map(|(x, y)| x * y).sum();
        let extended = span_of(
            hom_space(b, u).iter().map(|l| l.compose(&seq.f)),
            len_out,
            field,
        );
        let left = radical_maps_from(a, u, &rad_a)
            .iter()
            .all(|h| extended.contains(&h.flatten()));
        right && left
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KnitLimits {
    pub max_modules: usize,
    pub max_dim: usize,
}

impl Default for KnitLimits {
    fn default() -> Self {
        KnitLimits {
            max_modules: 200,
            max_dim: 60,
        }
    }
}

/// The Auslander-Reiten quiver found by knitting from the projectives.
#[derive(Clone, Debug)]
pub struct ArQuiver {
    pub algebra: Arc<StructAlgebra>,
    pub catalog: Catalog,
    pub projective: Vec<bool>,
    pub injective: Vec<bool>,
    /// irreducible maps `(from, to) -> multiplicity`
    pub arrows: BTreeMap<(usize, usize), usize>,
    /// `tau[c]` is the index of `τC`
    pub tau: Vec<Option<usize>>,
    /// almost split sequence ending at each non-projective vertex
    pub sequences: Vec<Option<AlmostSplitSeq>>,
    /// arrows whose multiplicity was recorded differently by two sequences
    pub conflicts: Vec<(usize, usize)>,
    pub complete: bool,
    pub cutoff_hit: bool,
}

enum Step {
    Injective,
    Sequence {
        end: Module,
        seq: AlmostSplitSeq,
        middle: Vec<Module>,
    },
}

fn almost_split_step(x: &Module) -> Result<Step> {
    if is_injective(x) {
        return Ok(Step::Injective);
    }
    let seq = almost_split_starting_at(x)?;
    let middle = decompose(seq.seq.middle())?.summands;
    Ok(Step::Sequence {
        end: seq.seq.right().clone(),
        seq,
        middle,
    })
}

impl ArQuiver {
    fn new(algebra: &Arc<StructAlgebra>) -> ArQuiver {
        ArQuiver {
            algebra: algebra.clone(),
            catalog: Catalog::new(),
            projective: Vec::new(),
            injective: Vec::new(),
            arrows: BTreeMap::new(),
            tau: Vec::new(),
            sequences: Vec::new(),
            conflicts: Vec::new(),
            complete: false,
            cutoff_hit: false,
        }
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

    pub fn find(&self, m: &Module) -> Option<usize> {
        self.catalog.find(m)
    }

    /// Adds an indecomposable; `None` when a limit forbids it.
    fn add(&mut self, m: Module, limits: KnitLimits) -> Option<usize> {
        if let Some(i) = self.catalog.find(&m) {
            return Some(i);
        }
        if m.dim() > limits.max_dim || self.catalog.len() >= limits.max_modules {
            self.cutoff_hit = true;
            return None;
        }
        self.projective.push(is_projective(&m));
        self.injective.push(is_injective(&m));
        self.tau.push(None);
        self.sequences.push(None);
        Some(self.catalog.insert(m).0)
    }

    fn record(&mut self, counts: BTreeMap<(usize, usize), usize>) {
        for (key, mult) in counts {
            match self.arrows.get(&key) {
                Some(&old) if old != mult => self.conflicts.push(key),
                _ => {
                    self.arrows.insert(key, mult);
                }
            }
        }
    }

    pub fn arrows_into(&self, v: usize) -> usize {
        self.arrows
            .iter()
            .filter(|(&(_, t), _)| t == v)
            .map(|(_, &m)| m)
            .sum()
    }

    pub fn arrows_out_of(&self, v: usize) -> usize {
        self.arrows
            .iter()
            .filter(|(&(s, _), _)| s == v)
            .map(|(_, &m)| m)
            .sum()
    }

    /// For every non-projective `C`, the arrows into `C` and out of `τC`
    /// agree with multiplicity, and no arrow was recorded inconsistently.
    pub fn mesh_holds(&self) -> bool {
        if !self.conflicts.is_empty() {
            return false;
        }
        (0..self.len()).all(|c| match self.tau[c] {
            Some(t) => self.arrows_into(c) == self.arrows_out_of(t),
            None => self.projective[c],
        })
    }

    /// Certifies every recorded sequence against the knitted modules.
    pub fn certify_all(&mut self) -> bool {
        let universe = self.catalog.modules().to_vec();
        let mut ok = true;
        for s in self.sequences.iter_mut().flatten() {
            s.certified = certify_almost_split(&s.seq, &universe);
            ok &= s.certified;
        }
        ok
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph ar {\n  rankdir=LR;\n");
        for (i, m) in self.modules().iter().enumerate() {
            let dims: Vec<String> = m.dims().iter().map(|d| d.to_string()).collect();
            let shape = match (self.projective[i], self.injective[i]) {
                (true, true) => "doubleoctagon",
                (true, false) => "box",
                (false, true) => "octagon",
                (false, false) => "ellipse",
            };
            let _ = writeln!(out, "  m{i} [label=\"{}\", shape={shape}];", dims.join(" "));
        }
        for (&(s, t), &mult) in &self.arrows {
            if mult == 1 {
                let _ = writeln!(out, "  m{s} -> m{t};");
            } else {
                let _ = writeln!(out, "  m{s} -> m{t} [label=\"{mult}\"];");
            }
        }
        for (c, t) in self.tau.iter().enumerate() {
            if let Some(t) = t {
                let _ = writeln!(out, "  m{c} -> m{t} [style=dashed, constraint=false];");
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn report(&self) -> ArReport {
        ArReport {
            algebra: self.algebra.name().to_string(),
            prime: self.algebra.field().p(),
            complete: self.complete,
            cutoff_hit: self.cutoff_hit,
            mesh: self.complete && self.mesh_holds(),
            modules: self
                .modules()
                .iter()
                .enumerate()
                .map(|(i, m)| ModuleEntry {
                    index: i,
                    dims: m.dims().to_vec(),
                    dim: m.dim(),
                    projective: self.projective[i],
                    injective: self.injective[i],
                    tau: self.tau[i],
                })
                .collect(),
            arrows: self
                .arrows
                .iter()
                .map(|(&(from, to), &multiplicity)| ArrowEntry {
                    from,
                    to,
                    multiplicity,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ModuleEntry {
    pub index: usize,
    pub dims: Vec<usize>,
    pub dim: usize,
    pub projective: bool,
    pub injective: bool,
    pub tau: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ArrowEntry {
    pub from: usize,
    pub to: usize,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ArReport {
    pub algebra: String,
    pub prime: u32,
    pub complete: bool,
    pub cutoff_hit: bool,
    pub mesh: bool,
    pub modules: Vec<ModuleEntry>,
    pub arrows: Vec<ArrowEntry>,
}

fn count_into(counts: &mut BTreeMap<(usize, usize), usize>, key: (usize, usize)) {
    *counts.entry(key).or_insert(0) += 1;
}

/// Knits the Auslander-Reiten quiver starting from the indecomposable
/// projectives `e_i A` (in vertex order). Each frontier is processed in
/// parallel and merged in discovery order.
pub fn knit(algebra: &Arc<StructAlgebra>, limits: KnitLimits) -> Result<ArQuiver> {
    let mut arq = ArQuiver::new(algebra);
    for v in 0..algebra.num_vertices() {
        arq.add(projective_module(algebra, v), limits);
    }
    // arrows into projectives come from the summands of their radicals
    let radicals = crate::par::map_range(arq.len(), |p| {
        decompose(&radical_submodule(arq.catalog.get(p)).0)
    });
    for (p, rad) in radicals.into_iter().enumerate() {
        let mut counts = BTreeMap::new();
        for y in rad?.summands {
            if let Some(i) = arq.add(y, limits) {
                count_into(&mut counts, (i, p));
            }
        }
        arq.record(counts);
    }
    let mut done = 0;
    while done < arq.len() && !arq.cutoff_hit {
        let frontier: Vec<Module> = arq.modules()[done..].to_vec();
        let start = done;
        done = arq.len();
        let steps = crate::par::map(&frontier, almost_split_step);
        for (k, step) in steps.into_iter().enumerate() {
            let x = start + k;
            let Step::Sequence { end, seq, middle } = step? else {
                continue;
            };
            let Some(c) = arq.add(end, limits) else {
                continue;
            };
            let mut counts = BTreeMap::new();
            for y in middle {
                if let Some(i) = arq.add(y, limits) {
                    count_into(&mut counts, (x, i));
                    count_into(&mut counts, (i, c));
                }
            }
            arq.record(counts);
            arq.tau[c] = Some(x);
            arq.sequences[c] = Some(seq);
        }
        if done == arq.len() {
            // close under τ for vertices that only appeared as middle terms
            let missing: Vec<usize> = (0..arq.len())
                .filter(|&c| !arq.projective[c] && arq.tau[c].is_none())
                .collect();
            for c in missing {
                let t = ar_translate(arq.catalog.get(c))?;
                arq.add(t, limits);
            }
        }
    }
    arq.complete =
        !arq.cutoff_hit && (0..arq.len()).all(|c| arq.projective[c] || arq.tau[c].is_some());
    Ok(arq)
}

/// A τ-orbit inside a knitted quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauOrbit {
    /// smallest `n > 0` with `τ^n M ≅ M`, if the orbit returns
    pub period: Option<usize>,
    pub orbit: Vec<usize>,
}

pub fn tau_orbit(m: &Module, arq: &ArQuiver) -> Result<TauOrbit> {
    let start = arq
        .find(m)
        .ok_or_else(|| Error::Unknown("module is not in the quiver".into()))?;
    if arq.projective[start] {
        return Err(Error::ProjectiveInput);
    }
    let mut orbit = vec![start];
    let mut cur = start;
    while let Some(next) = arq.tau[cur] {
        if next == start {
            return Ok(TauOrbit {
                period: Some(orbit.len()),
                orbit,
            });
        }
        if orbit.contains(&next) || orbit.len() > arq.len() {
            break;
        }
        orbit.push(next);
        cur = next;
    }
    Ok(TauOrbit {
        period: None,
        orbit,
    })
}
