use super::{Module, ModuleMap};
use crate::linalg::FpMatrix;

/// Layout of the unknowns `f_v` (row-major) of a map `M -> N`.
struct HomLayout {
    offsets: Vec<usize>,
    total: usize,
}

impl HomLayout {
    fn new(m: &Module, n: &Module) -> HomLayout {
        let mut offsets = Vec::with_capacity(m.dims().len());
        let mut total = 0;
        for (&dm, &dn) in m.dims().iter().zip(n.dims()) {
            offsets.push(total);
            total += dm * dn;
        }
        HomLayout { offsets, total }
    }
}

/// The linear conditions `f_v G^M_g = G^N_g f_u` as a matrix on the unknowns.
fn hom_equations(m: &Module, n: &Module, layout: &HomLayout) -> FpMatrix {
    let f = m.field();
    let alg = m.algebra();
    let rows: usize = alg
        .generators()
        .iter()
        .map(|g| n.dims()[g.target] * m.dims()[g.source])
        .sum();
    let mut eq = FpMatrix::zeros(f, rows, layout.total);
    let mut r0 = 0;
    for (gi, g) in alg.generators().iter().enumerate() {
        let (u, v) = (g.source, g.target);
        let (dmu, dmv, dnu, dnv) = (m.dims()[u], m.dims()[v], n.dims()[u], n.dims()[v]);
        let gm = m.gen(gi);
        let gn = n.gen(gi);
        for i in 0..dnv {
            for k in 0..dmu {
                let row = r0 + i * dmu + k;
                // sum_j f_v(i, j) G^M(j, k)
                for j in 0..dmv {
                    let c = gm.get(j, k);
                    if c != 0 {
                        let col = layout.offsets[v] + i * dmv + j;
                        eq.set(row, col, f.add(eq.get(row, col), c));
                    }
                }
                // - sum_l G^N(i, l) f_u(l, k)
                for l in 0..dnu {
                    let c = gn.get(i, l);
                    if c != 0 {
                        let col = layout.offsets[u] + l * dmu + k;
                        eq.set(row, col, f.sub(eq.get(row, col), c));
                    }
                }
            }
        }
        r0 += dnv * dmu;
    }
    eq
}

/// A basis of `Hom_A(M, N)`.
pub fn hom_space(m: &Module, n: &Module) -> Vec<ModuleMap> {
    assert!(
        m.algebra().same_as(n.algebra()),
        "modules over different algebras"
    );
    let layout = HomLayout::new(m, n);
    if layout.total == 0 {
        return Vec::new();
    }
    let eq = hom_equations(m, n, &layout);
    let kernel = if eq.rows() == 0 {
        (0..layout.total)
            .map(|i| {
                let mut v = vec![0u32; layout.total];
                v[i] = 1;
                v
            })
            .collect()
    } else {
        eq.kernel_basis()
    };
    kernel
        .iter()
        .map(|v| ModuleMap::from_flat(m, n, v))
        .collect()
}

pub fn hom_dimension(m: &Module, n: &Module) -> usize {
    let layout = HomLayout::new(m, n);
    if layout.total == 0 {
        return 0;
    }
    let eq = hom_equations(m, n, &layout);
    layout.total - eq.rank()
}

/// Solves `sum c_i maps_i = goal` over the flattened maps.
fn solve_combination(maps: &[ModuleMap], goal: &ModuleMap) -> Option<Vec<u32>> {
    let f = goal.source().field();
    let len = goal.flatten().len();
    if maps.is_empty() {
        return goal.is_zero().then(Vec::new);
    }
    let cols: Vec<Vec<u32>> = maps.iter().map(|m| m.flatten()).collect();
    FpMatrix::from_columns(f, len, &cols).solve(&goal.flatten())
}

fn combine(maps: &[ModuleMap], coeffs: &[u32], source: &Module, target: &Module) -> ModuleMap {
    let mut acc = ModuleMap::zero(source, target);
    for (m, &c) in maps.iter().zip(coeffs) {
        if c != 0 {
            acc = acc.add(&m.scale(c));
        }
    }
    acc
}

/// A map `l: X -> B` with `g ∘ l = h`, for `h: X -> C` and `g: B -> C`.
pub fn factor_through(h: &ModuleMap, g: &ModuleMap) -> Option<ModuleMap> {
    let basis = hom_space(h.source(), g.source());
    let images: Vec<ModuleMap> = basis.iter().map(|l| g.compose(l)).collect();
    let c = solve_combination(&images, h)?;
    Some(combine(&basis, &c, h.source(), g.source()))
}

/// A map `l: B -> C` with `l ∘ f = h`, for `h: X -> C` and `f: X -> B`.
pub fn extend_along(h: &ModuleMap, f: &ModuleMap) -> Option<ModuleMap> {
    let basis = hom_space(f.target(), h.target());
    let images: Vec<ModuleMap> = basis.iter().map(|l| l.compose(f)).collect();
    let c = solve_combination(&images, h)?;
    Some(combine(&basis, &c, f.target(), h.target()))
}
