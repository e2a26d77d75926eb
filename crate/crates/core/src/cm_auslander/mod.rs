//! Cohen-Macaulay Auslander algebras `Γ = End(E)` of CM-finite algebras, the
//! functors between `Γ`-modules, modules and representations, and the
//! checks built on them.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{tensor_with_shape, ShapeKind, StructAlgebra};
use crate::ar::{certify_almost_split, KnitLimits};
use crate::error::{Error, Result};
use crate::gorenstein::{
    gorenstein_profile, is_gp, knit_gp, relative_almost_split_in_gp, GpInventory,
    RelativeAlmostSplit, Route,
};
use crate::module::rep::{chain_order, component_maps, QuiverRep};
use crate::module::{
    cokernel, decompose, descend, direct_sum, endomorphism_algebra, ext1, factor_through,
    is_indecomposable, is_isomorphic, is_projective, is_stably_isomorphic, kernel,
    minimal_presentation, projective_module, radical_submodule, regular_module,
    stable_endomorphism_algebra, syzygy, syzygy_sequence, EndomorphismAlgebra, HomBasis, Module,
    ModuleMap, Presentation, ShortExactSeq, StableEndomorphismAlgebra,
};


#[derive(Clone, Debug)]
pub struct CmAuslander {
    pub inventory: GpInventory,
    pub gamma: EndomorphismAlgebra,
    /// vertices of `Γ` belonging to projective summands of `E`; their sum is
    /// the idempotent `e`
    pub projective_vertices: Vec<usize>,
}

pub fn cm_auslander_algebra(inv: &GpInventory) -> Result<CmAuslander> {
    if !inv.cm_finite {
        return Err(Error::NotCmFinite);
    }
    let gamma = endomorphism_algebra(&format!("Aus({})", inv.algebra.name()), inv.modules())?;
    let projective_vertices = (0..inv.len()).filter(|&i| inv.projective[i]).collect();
    Ok(CmAuslander {
        inventory: inv.clone(),
        gamma,
        projective_vertices,
    })
}

/// `Γ'`: `End(E)` modulo the maps factoring through projective modules.
pub fn stable_cm_auslander_algebra(inv: &GpInventory) -> Result<StableEndomorphismAlgebra> {
    if !inv.cm_finite {
        return Err(Error::NotCmFinite);
    }
    stable_endomorphism_algebra(&format!("sAus({})", inv.algebra.name()), inv.modules())
}

/// A `Γ`-module with its minimal projective presentation decoded into maps
/// of GP modules: `0 -> (-, C) -> (-, B) -> (-, A) -> F -> 0`.
#[derive(Clone, Debug)]
pub struct FunctorModule {
    pub module: Module,
    pub presentation: Presentation,
    pub a: Module,
    pub b: Module,
    pub c: Module,
    /// `B -> A`
    pub g: ModuleMap,
    /// `C -> B`, the kernel of `g`
    pub f: ModuleMap,
}

impl CmAuslander {
    pub fn algebra(&self) -> &Arc<StructAlgebra> {
        &self.gamma.algebra
    }

    pub fn base(&self) -> &Arc<StructAlgebra> {
        &self.inventory.algebra
    }

    fn summand_sum(&self, tops: &[usize]) -> crate::module::DirectSum {
        let parts: Vec<Module> = tops
            .iter()
            .map(|&i| self.inventory.get(i).clone())
            .collect();
        direct_sum(self.base(), &parts)
    }

    /// Decodes a `Γ`-module through Yoneda.
    pub fn functor(&self, m: &Module) -> Result<FunctorModule> {
        if !m.algebra().same_as(self.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        let pres = minimal_presentation(m);
        let a_sum = self.summand_sum(&pres.p0.tops);
        let b_sum = self.summand_sum(&pres.p1.tops);
        let mut g = ModuleMap::zero(&b_sum.module, &a_sum.module);
        for (t, img) in pres.p1.images_of(&pres.d).iter().enumerate() {
            let j = pres.p1.tops[t];
            for (s, e) in pres.p0.elements_at(j, img).iter().enumerate() {
                let h = self.gamma.element_map(e, pres.p0.tops[s], j);
                g = g.add(
                    &a_sum.injections[s]
                        .compose(&h)
                        .compose(&b_sum.projections[t]),
                );
            }
        }
        let (c, f) = kernel(&g);
        Ok(FunctorModule {
            module: m.clone(),
            presentation: pres,
            a: a_sum.module,
            b: b_sum.module,
            c,
            g,
            f,
        })
    }

    /// `Hom(E, M)` with `Γ` acting by precomposition.
    pub fn hom_functor(&self, m: &Module) -> Result<(Module, Vec<HomBasis>)> {
        self.gamma.hom_functor(m)
    }

    /// The functor `Hom(-, M)` restricted to the GP modules.
    pub fn theta_rho(&self, m: &Module) -> Result<FunctorModule> {
        self.functor(&self.hom_functor(m)?.0)
    }

    /// `coker(Hom(E, u))` for a map `u` of `Λ`-modules, with its quotient map.
    fn cokernel_functor(&self, u: &ModuleMap) -> Result<(Module, ModuleMap, Vec<HomBasis>)> {
        let (s, sb) = self.hom_functor(u.source())?;
        let (t, tb) = self.hom_functor(u.target())?;
        let hu = self.gamma.hom_functor_map(u, (&s, &sb), (&t, &tb));
        let (q, pi) = cokernel(&hu);
        Ok((q, pi, tb))
    }

    /// `Ψ(X) = coker(Hom(E, X_2) -> Hom(E, X_3))` for a left exact triple of
    /// GP modules `0 -> X_1 -> X_2 -> X_3`.
    pub fn psi(&self, x: &QuiverRep) -> Result<FunctorModule> {
        let (_, f2) = self.left_exact_gp(x)?;
        let (q, _, _) = self.cokernel_functor(f2)?;
        self.functor(&q)
    }

    /// `Ψ(σ)` for a map `σ: X -> Y` of modules over the `A_3` tensor algebra.
    pub fn psi_map(&self, sigma: &ModuleMap) -> Result<ModuleMap> {
        let x = QuiverRep::from_module(sigma.source())?;
        let y = QuiverRep::from_module(sigma.target())?;
        let (_, fx) = self.left_exact_gp(&x)?;
        let (_, fy) = self.left_exact_gp(&y)?;
        let order = chain_order(ShapeKind::A3);
        let s3 = &component_maps(sigma)?[order[2]];
        let (_, px, bx) = self.cokernel_functor(fx)?;
        let (_, py, by) = self.cokernel_functor(fy)?;
        let (x3, y3) = (px.source().clone(), py.source().clone());
        let h = self.gamma.hom_functor_map(s3, (&x3, &bx), (&y3, &by));
        descend(&px, &py.compose(&h))
            .ok_or_else(|| Error::InvalidModule("induced map does not descend".into()))
    }

    /// The maps of `A_3`-representations that `Ψ` kills: those whose last
    /// component factors through the second map of the target.
    pub fn psi_kills(&self, sigma: &ModuleMap) -> Result<bool> {
        let y = QuiverRep::from_module(sigma.target())?;
        let order = chain_order(ShapeKind::A3);
        let s3 = &component_maps(sigma)?[order[2]];
        let f2 = y
            .map_between(order[1], order[2])
            .ok_or_else(|| Error::InvalidModule("missing arrow".into()))?;
        Ok(factor_through(s3, f2).is_some())
    }

    /// The two maps of a left exact triple of GP modules.
    pub fn left_exact_gp<'a>(&self, x: &'a QuiverRep) -> Result<(&'a ModuleMap, &'a ModuleMap)> {
        if x.kind != ShapeKind::A3 {
            return Err(Error::NotLeftExactGp(
                "not a representation of the A_3 shape".into(),
            ));
        }
        let order = chain_order(ShapeKind::A3);
        let f1 = x.map_between(order[0], order[1]).expect("A_3 arrow");
        let f2 = x.map_between(order[1], order[2]).expect("A_3 arrow");
        if !f1.is_injective() || kernel(f2).0.dim() != f1.rank() || !f2.compose(f1).is_zero() {
            return Err(Error::NotLeftExactGp(
                "0 -> X_1 -> X_2 -> X_3 is not left exact".into(),
            ));
        }
        if !x.components.iter().all(|c| is_gp(c, &self.inventory)) {
            return Err(Error::NotLeftExactGp(
                "a term is not Gorenstein projective".into(),
            ));
        }
        Ok((f1, f2))
    }

    /// The representation `C_F -> B_F -> A_F` read off a presentation.
    pub fn presentation_rep(&self, f: &FunctorModule) -> Result<QuiverRep> {
        let order = chain_order(ShapeKind::A3);
        let mut components = vec![Module::zero(self.base()); 3];
        components[order[0]] = f.c.clone();
        components[order[1]] = f.b.clone();
        components[order[2]] = f.a.clone();
        let arrows = QuiverRep::shape_arrows(ShapeKind::A3, self.base().field())?;
        let maps = arrows
            .iter()
            .map(|&(s, t)| {
                if (s, t) == (order[0], order[1]) {
                    Ok(f.f.clone())
                } else if (s, t) == (order[1], order[2]) {
                    Ok(f.g.clone())
                } else {
                    Err(Error::InvalidModule("unexpected arrow".into()))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        QuiverRep::new(ShapeKind::A3, components, maps)
    }

    /// `Ext^1_Γ(F, eΓ)` and `Ext^2_Γ(F, eΓ)` both vanish.
    pub fn ext_criterion(&self, f: &FunctorModule) -> (bool, bool) {
        let omega = syzygy_sequence(&f.module).0;
        let mut one = true;
        let mut two = true;
        for &p in &self.projective_vertices {
            let q = projective_module(self.algebra(), p);
            one &= ext1(&f.module, &q).dim() == 0;
            two &= ext1(&omega, &q).dim() == 0;
        }
        (one, two)
    }
}

/// `ϑ(F)`: the cokernel of the decoded map `B_F -> A_F`.
pub fn theta(f: &FunctorModule) -> Module {
    cokernel(&f.g).0
}

/// Whether `ϑ(F)` is Gorenstein projective.
pub fn theta_inverse_gprj_membership(f: &FunctorModule, cma: &CmAuslander) -> bool {
    is_gp(&theta(f), &cma.inventory)
}

/// The image under `Ψ` of the relative almost split sequence ending at the
/// representation decoded from `G`.
#[derive(Clone, Debug)]
pub struct EtaTransfer {
    pub seq: ShortExactSeq,
    pub relative: RelativeAlmostSplit,
    /// `Y_i ≅ Z_i ⊕ (X_G)_i` at every vertex
    pub rows_split: bool,
    pub certified: bool,
}

/// Transfers the relative almost split sequence ending at `X_G` over the
/// `A_3` tensor algebra to a sequence `0 -> F -> H -> G -> 0` of `Γ`-modules,
/// certified against `universe` (indecomposable members of `ϑ^{-1}(Gprj)`).
pub fn eta_transfer(
    g: &FunctorModule,
    cma: &CmAuslander,
    a3_inv: &GpInventory,
    universe: &[Module],
) -> Result<EtaTransfer> {
    if is_projective(&g.module) {
        return Err(Error::ProjectiveFunctor);
    }
    if !theta_inverse_gprj_membership(g, cma) {
        return Err(Error::NotInSubcategory);
    }
    let rep = cma.presentation_rep(g)?;
    let x = rep.to_module(&a3_inv.algebra)?;
    if !is_indecomposable(&x) {
        return Err(Error::Decomposition(
            "the decoded representation is decomposable".into(),
        ));
    }
    let relative = relative_almost_split_in_gp(&x, a3_inv)?;
    let seq = &relative.seq.seq;
    let (zr, yr) = (
        QuiverRep::from_module(seq.left())?,
        QuiverRep::from_module(seq.middle())?,
    );
    let xr = QuiverRep::from_module(seq.right())?;
    let mut rows_split = true;
    for s in 0..3 {
        let sum = direct_sum(
            cma.base(),
            &[zr.components[s].clone(), xr.components[s].clone()],
        )
        .module;
        rows_split &= is_isomorphic(&yr.components[s], &sum)?;
    }
    let f = cma.psi_map(&seq.f)?;
    let h = cma.psi_map(&seq.g)?;
    if f.source().is_zero() {
        return Err(Error::CertificationFailed(
            "the transferred left term is zero".into(),
        ));
    }
    if !is_isomorphic(h.target(), &g.module)? {
        return Err(Error::CertificationFailed("Ψ(X_G) is not G".into()));
    }
    let eta = ShortExactSeq::new(f, h)?;
    let certified = certify_almost_split(&eta, universe);
    Ok(EtaTransfer {
        seq: eta,
        relative,
        rows_split,
        certified,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct OmegaGWitness {
    pub index: usize,
    pub dims: Vec<usize>,
    pub left_dims: Vec<usize>,
    pub middle_dims: Vec<usize>,
    pub middle_projective: bool,
    pub left_is_syzygy: bool,
    pub route: Route,
    pub certified: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OmegaGCertificate {
    pub algebra: String,
    pub gdim: usize,
    pub verdict: bool,
    pub witnesses: Vec<OmegaGWitness>,
    /// first witness whose middle term is not projective
    pub counterexample: Option<usize>,
    /// the `J(A) ⊕ A` generator criterion, checked when `gdim <= 1`
    pub generator_criterion: Option<bool>,
    /// `rad P -> P` is right almost split in Gprj for every projective `P`
    pub radical_inclusions_gp: bool,
}

impl OmegaGCertificate {
    /// Both criteria agree whenever the second one applies.
    pub fn routes_agree(&self) -> bool {
        self.generator_criterion.is_none_or(|g| g == self.verdict)
    }
}

/// Builds the GP inventory and certifies it.
pub fn omega_g_certify(a: &Arc<StructAlgebra>, limits: KnitLimits) -> Result<OmegaGCertificate> {
    let profile = gorenstein_profile(a, 2 * a.dim() + 2)?;
    let inv = knit_gp(a, &profile, limits)?;
    omega_g_certify_inventory(&inv)
}

/// Every relative almost split sequence ending at a non-projective GP
/// indecomposable has a projective middle term and left term `Ω G`.
pub fn omega_g_certify_inventory(inv: &GpInventory) -> Result<OmegaGCertificate> {
    if !inv.cm_finite {
        return Err(Error::NotCmFinite);
    }
    let targets = inv.non_projective();
    let results = crate::par::map(&targets, |&i| -> Result<OmegaGWitness> {
        let c = inv.get(i);
        let rel = relative_almost_split_in_gp(c, inv)?;
        let seq = &rel.seq.seq;
        Ok(OmegaGWitness {
            index: i,
            dims: c.dims().to_vec(),
            left_dims: seq.left().dims().to_vec(),
            middle_dims: seq.middle().dims().to_vec(),
            middle_projective: is_projective(seq.middle()),
            left_is_syzygy: is_isomorphic(seq.left(), &syzygy(c, 1))?,
            route: rel.route,
            certified: rel.seq.certified,
        })
    });
    let witnesses = results.into_iter().collect::<Result<Vec<_>>>()?;
    let counterexample = witnesses.iter().position(|w| !w.middle_projective);
    let verdict = witnesses
        .iter()
        .all(|w| w.middle_projective && w.left_is_syzygy && w.certified);
    let a = &inv.algebra;
    let generator_criterion = if inv.gdim <= 1 {
        let reg = regular_module(a);
        let j = radical_submodule(&reg).0;
        let sum = direct_sum(a, &[j, reg]).module;
        let summands = decompose(&sum)?.summands;
        let all_gp = summands.iter().all(|s| inv.find(s).is_some());
        let covered = inv.modules().iter().all(|g| {
            summands
                .iter()
                .any(|s| crate::module::isomorphism_between_indecomposables(s, g).is_some())
        });
        Some(all_gp && covered)
    } else {
        None
    };
    let radical_inclusions_gp =
        (0..a.num_vertices()).all(|v| is_gp(&radical_submodule(&projective_module(a, v)).0, inv));
    Ok(OmegaGCertificate {
        algebra: a.name().to_string(),
        gdim: inv.gdim,
        verdict,
        witnesses,
        counterexample,
        generator_criterion,
        radical_inclusions_gp,
    })
}

/// For GP indecomposables `A`, `C` with `C` non-projective: a non-zero
/// `Ext^1(C, A)` forces `A ≅ Ω C`, and realized extensions of basis classes
/// have projective middle terms.
pub fn ext_rigidity_check(inv: &GpInventory) -> Result<bool> {
    let pairs: Vec<(usize, usize)> = inv
        .non_projective()
        .into_iter()
        .flat_map(|c| (0..inv.len()).map(move |a| (c, a)))
        .collect();
    let results = crate::par::map(&pairs, |&(c, a)| -> Result<bool> {
        let (cm, am) = (inv.get(c), inv.get(a));
        let ext = ext1(cm, am);
        if ext.dim() == 0 {
            return Ok(true);
        }
        if !is_isomorphic(am, &syzygy(cm, 1))? {
            return Ok(false);
        }
        for k in 0..ext.dim() {
            let mut class = vec![0; ext.dim()];
            class[k] = 1;
            if !is_projective(ext.realize(&class)?.middle()) {
                return Ok(false);
            }
        }
        Ok(true)
    });
    for r in results {
        if !r? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For every non-projective GP indecomposable, the left term of the relative
/// almost split sequence is `Ω G`, also after dropping projective summands.
pub fn tau_g_is_omega_check(inv: &GpInventory, cert: &OmegaGCertificate) -> Result<bool> {
    if !cert.verdict {
        return Err(Error::CertificationRequired);
    }
    let targets = inv.non_projective();
    let results = crate::par::map(&targets, |&i| -> Result<bool> {
        let c = inv.get(i);
        let rel = relative_almost_split_in_gp(c, inv)?;
        let omega = syzygy(c, 1);
        let tau_g = rel.seq.seq.left();
        Ok(is_isomorphic(tau_g, &omega)? && is_stably_isomorphic(tau_g, &omega)?)
    });
    for r in results {
        if !r? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One interval normal form: `G` on positions `i..=j` (1-based along the
/// chain) and, when `j < n`, the projective cover `P` of `G'` after it,
/// glued by `G = Ω G' -> P`.
#[derive(Clone, Debug, Serialize)]
pub struct YForm {
    pub g: usize,
    pub g_prime: Option<usize>,
    pub i: usize,
    pub j: usize,
    /// index of the matching GP indecomposable over the path algebra
    pub matched: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct YReport {
    pub algebra: String,
    pub n: usize,
    pub gp_count: usize,
    pub forms: Vec<YForm>,
    /// the forms hit every GP indecomposable exactly once
    pub bijective: bool,
}

/// Lists the interval normal forms over `Λ A_n` and matches them against the
/// GP inventory of the triangular matrix algebra `T_n(Λ)`.
pub fn y_interval_classification(
    inv: &GpInventory,
    cert: &OmegaGCertificate,
    n: usize,
    limits: KnitLimits,
) -> Result<YReport> {
    if !cert.verdict {
        return Err(Error::CertificationRequired);
    }
    let base = &inv.algebra;
    let kind = ShapeKind::Triangular(n);
    let tn = tensor_with_shape(base, kind)?;
    let profile = gorenstein_profile(&tn, 2 * tn.dim() + 2)?;
    let big = knit_gp(&tn, &profile, limits)?;
    if !big.cm_finite {
        return Err(Error::CutoffExceeded(format!(
            "GP inventory of {} is not finite",
            tn.name()
        )));
    }
    let mut specs: Vec<(usize, Option<usize>, usize, usize)> = Vec::new();
    for i in 1..=n {
        for g in 0..inv.len() {
            specs.push((g, None, i, n));
        }
        for j in i..n {
            for gp in inv.non_projective() {
                specs.push((usize::MAX, Some(gp), i, j));
            }
        }
    }
    let built = crate::par::map(&specs, |&(g, gp, i, j)| -> Result<(usize, Option<usize>)> {
        let m = interval_module(inv, &tn, kind, g, gp, i, j)?;
        let g_index = match gp {
            None => g,
            Some(gp) => inv
                .find(&syzygy(inv.get(gp), 1))
                .ok_or_else(|| Error::NonPeriodic("Ω G' is not listed".into()))?,
        };
        Ok((g_index, big.find(&m)))
    });
    let mut forms = Vec::with_capacity(specs.len());
    for (&(_, gp, i, j), r) in specs.iter().zip(built) {
        let (g, matched) = r?;
        forms.push(YForm {
            g,
            g_prime: gp,
            i,
            j,
            matched,
        });
    }
    let mut hits = vec![0usize; big.len()];
    for f in &forms {
        if let Some(k) = f.matched {
            hits[k] += 1;
        }
    }
    let bijective = forms.iter().all(|f| f.matched.is_some()) && hits.iter().all(|&h| h == 1);
    Ok(YReport {
        algebra: base.name().to_string(),
        n,
        gp_count: big.len(),
        forms,
        bijective,
    })
}

fn interval_module(
    inv: &GpInventory,
    tn: &Arc<StructAlgebra>,
    kind: ShapeKind,
    g: usize,
    g_prime: Option<usize>,
    i: usize,
    j: usize,
) -> Result<Module> {
    let base = &inv.algebra;
    let n = kind.size();
    let zero = Module::zero(base);
    // positions 1..=n along the chain
    let (gm, glue): (Module, Option<ModuleMap>) = match g_prime {
        None => (inv.get(g).clone(), None),
        Some(gp) => {
            let (k, incl, _) = syzygy_sequence(inv.get(gp));
            (k, Some(incl))
        }
    };
    let p = glue.as_ref().map(|l| l.target().clone());
    let at = |pos: usize| -> Module {
        if pos < i {
            zero.clone()
        } else if pos <= j {
            gm.clone()
        } else {
            p.clone().expect("tail needs the projective")
        }
    };
    let step = |pos: usize| -> ModuleMap {
        let (s, t) = (at(pos), at(pos + 1));
        if pos < i || (pos > j && glue.is_none()) {
            ModuleMap::zero(&s, &t)
        } else if pos == j {
            glue.clone().expect("glue map")
        } else {
            ModuleMap::identity(&s)
        }
    };
    let order = chain_order(kind);
    let mut components = vec![zero.clone(); n];
    for pos in 1..=n {
        components[order[pos - 1]] = at(pos);
    }
    let arrows = QuiverRep::shape_arrows(kind, base.field())?;
    let maps = arrows
        .iter()
        .map(|&(s, t)| {
            let pos = order.iter().position(|&v| v == s).expect("vertex on chain") + 1;
            if order.get(pos) != Some(&t) {
                return Err(Error::InvalidModule("shape arrow off the chain".into()));
            }
            Ok(step(pos))
        })
        .collect::<Result<Vec<_>>>()?;
    QuiverRep::new(kind, components, maps)?.to_module(tn)
}

#[derive(Clone, Debug, Serialize)]
pub struct FinitenessTransfer {
    pub algebra: String,
    pub base_modules: usize,
    pub base_complete: bool,
    pub gamma_modules: usize,
    pub gamma_complete: bool,
}

impl FinitenessTransfer {
    pub fn agrees(&self) -> bool {
        self.base_complete == self.gamma_complete
    }
}

/// Knits both `Λ` and its CM Auslander algebra under the same limits. An
/// experiment, not a proof: a cutoff on one side is only evidence.
pub fn finiteness_transfer(inv: &GpInventory, limits: KnitLimits) -> Result<FinitenessTransfer> {
    let cma = cm_auslander_algebra(inv)?;
    let base = crate::ar::knit(&inv.algebra, limits)?;
    let gamma = crate::ar::knit(cma.algebra(), limits)?;
    Ok(FinitenessTransfer {
        algebra: inv.algebra.name().to_string(),
        base_modules: base.len(),
        base_complete: base.complete,
        gamma_modules: gamma.len(),
        gamma_complete: gamma.complete,
    })
}
