use std::sync::{Arc, OnceLock};

use cmaus_core::algebra::{
    find_relabeling, linear_path_algebra, selfinjective_nakayama, tensor_with_shape,
    truncated_polynomial, ShapeKind, StructAlgebra,
};
use cmaus_core::ar::{knit, KnitLimits};
use cmaus_core::claims::gentle_algebra;
use cmaus_core::linalg::{FpMatrix, PrimeField};
use cmaus_core::module::{
    ar_translate, ar_translate_inverse, decompose, direct_sum, drop_projective_summands, dual,
    hom_dimension, is_injective, is_isomorphic, is_projective, match_summands, syzygy, top, Module,
};
use proptest::prelude::*;

const PRIMES: [u32; 3] = [2, 3, 5];

fn field(i: usize) -> PrimeField {
    PrimeField::new(PRIMES[i]).unwrap()
}

fn matrix(f: PrimeField, rows: usize, cols: usize, entries: &[u32]) -> FpMatrix {
    let data = entries
        .iter()
        .take(rows * cols)
        .map(|&x| x % f.p())
        .collect();
    FpMatrix::new(f, rows, cols, data).unwrap()
}

fn entries() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(any::<u32>(), 64)
}

/// Indecomposables of four small algebras, knitted once per prime.
fn pools(p: usize) -> &'static [Vec<Module>] {
    static POOLS: [OnceLock<Vec<Vec<Module>>>; 2] = [OnceLock::new(), OnceLock::new()];
    POOLS[p].get_or_init(|| {
        let f = field(p);
        let limits = KnitLimits {
            max_modules: 40,
            max_dim: 12,
        };
        [
            linear_path_algebra(f, 3).unwrap(),
            truncated_polynomial(f, 3).unwrap(),
            selfinjective_nakayama(f, 2, 2).unwrap(),
            gentle_algebra(f).unwrap(),
        ]
        .iter()
        .map(|a| knit(a, limits).unwrap().modules().to_vec())
        .collect()
    })
}

/// A direct sum of chosen indecomposables, moved into another basis.
fn scrambled(parts: &[Module], entries: &[u32]) -> Module {
    let a = parts[0].algebra().clone();
    let f = a.field();
    let sum = direct_sum(&a, parts).module;
    let mut next = entries.iter().copied().cycle();
    let t: Vec<FpMatrix> = sum
        .dims()
        .iter()
        .map(|&d| {
            // unitriangular, hence invertible
            let mut m = FpMatrix::identity(f, d);
            for i in 0..d {
                for j in i + 1..d {
                    m.set(i, j, next.next().unwrap() % f.p());
                }
            }
            let mut l = FpMatrix::identity(f, d);
            for i in 0..d {
                for j in 0..i {
                    l.set(i, j, next.next().unwrap() % f.p());
                }
            }
            l.mul(&m)
        })
        .collect();
    sum.transport(&t).unwrap().0
}

fn pick(p: usize, algebra: usize, picks: &[usize]) -> Vec<Module> {
    let pool = &pools(p)[algebra];
    picks
        .iter()
        .map(|&i| pool[i % pool.len()].clone())
        .collect()
}

fn module_input() -> impl Strategy<Value = (usize, usize, Vec<usize>, Vec<u32>)> {
    (
        0..2usize,
        0..4usize,
        prop::collection::vec(any::<usize>(), 1..=3),
        entries(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn rank_matches_transpose_and_nullity(p in 0..3usize, r in 1..8usize, c in 1..8usize, e in entries()) {
        let a = matrix(field(p), r, c, &e);
        let rank = a.rank();
        prop_assert_eq!(rank, a.transpose().rank());
        prop_assert!(rank <= r.min(c));
        prop_assert_eq!(rank + a.kernel_basis().len(), c);
        prop_assert_eq!(a.data().len(), r * c);
    }

    #[test]
    fn solve_recovers_an_image_point(p in 0..3usize, r in 1..8usize, c in 1..8usize, e in entries(), x in prop::collection::vec(any::<u32>(), 8)) {
        let f = field(p);
        let a = matrix(f, r, c, &e);
        let x: Vec<u32> = x[..c].iter().map(|v| v % f.p()).collect();
        let b = a.mul_vec(&x);
        let y = a.solve(&b);
        prop_assert!(y.is_some());
        prop_assert_eq!(a.mul_vec(&y.unwrap()), b);
    }

    #[test]
    fn products_do_not_raise_rank(p in 0..3usize, r in 1..7usize, c in 1..7usize, k in 1..7usize, e in entries(), g in entries()) {
        let f = field(p);
        let a = matrix(f, r, c, &e);
        let b = matrix(f, c, k, &g);
        prop_assert!(a.mul(&b).rank() <= a.rank().min(b.rank()));
        if let Some(inv) = a.invert() {
            prop_assert!(a.mul(&inv).is_identity());
        } else {
            prop_assert!(r != c || a.rank() < r);
        }
    }

    #[test]
    fn nonzero_elements_are_units(p in 0..3usize, a in any::<u32>()) {
        let f = field(p);
        let a = a % f.p();
        prop_assume!(a != 0);
        prop_assert_eq!(f.mul(a, f.inv(a)), 1);
    }

    #[test]
    fn duality_reverses_hom((p, alg, picks, e) in module_input(), others in prop::collection::vec(any::<usize>(), 1..=3)) {
        let m = scrambled(&pick(p, alg, &picks), &e);
        let a = m.algebra().clone();
        let n = direct_sum(&a, &pick(p, alg, &others)).module;
        prop_assert_eq!(hom_dimension(&m, &n), hom_dimension(&dual(&n), &dual(&m)));
        let dd = dual(&dual(&m));
        prop_assert_eq!(dd.dims(), m.dims());
    }

    #[test]
    fn decompose_then_resum((p, alg, picks, e) in module_input()) {
        let parts = pick(p, alg, &picks);
        let m = scrambled(&parts, &e);
        let d = decompose(&m).unwrap();
        prop_assert!(match_summands(&d.summands, &parts));
        prop_assert_eq!(d.summands.iter().map(Module::dim).sum::<usize>(), m.dim());
        let resum = direct_sum(m.algebra(), &d.summands).module;
        prop_assert!(is_isomorphic(&resum, &m).unwrap());
    }

    #[test]
    fn syzygy_is_additive_and_minimal((p, alg, picks, e) in module_input()) {
        let parts = pick(p, alg, &picks);
        let m = scrambled(&parts, &e);
        let omega = syzygy(&m, 1);
        // minimal cover: Ω(M) sits in the radical of the cover, so dim P = dim M + dim Ω(M)
        // with P the sum of the covers of the parts
        let cover: usize = parts.iter().map(|x| x.dim() + syzygy(x, 1).dim()).sum();
        prop_assert_eq!(m.dim() + omega.dim(), cover);
        let tops: Vec<Module> = parts.iter().map(|x| top(x).0).collect();
        let (t, summed) = (top(&m).0, direct_sum(m.algebra(), &tops).module);
        prop_assert_eq!(t.dims(), summed.dims());
        let pieces: Vec<Module> = parts.iter().map(|x| syzygy(x, 1)).filter(|x| !x.is_zero()).collect();
        if pieces.is_empty() {
            prop_assert!(omega.is_zero());
        } else {
            let sum = direct_sum(m.algebra(), &pieces).module;
            prop_assert!(is_isomorphic(&sum, &omega).unwrap());
        }
    }

    #[test]
    fn tau_inverse_undoes_tau((p, alg, picks, _) in module_input()) {
        let m = pick(p, alg, &picks[..1]).remove(0);
        prop_assume!(!is_projective(&m) && !is_injective(&m));
        let back = ar_translate_inverse(&ar_translate(&m).unwrap()).unwrap();
        prop_assert!(is_isomorphic(&back, &m).unwrap());
    }

    #[test]
    fn stable_summands_are_not_projective((p, alg, picks, e) in module_input()) {
        let m = scrambled(&pick(p, alg, &picks), &e);
        let s = drop_projective_summands(&m).unwrap();
        prop_assert!(decompose(&s).unwrap().summands.iter().all(|x| !is_projective(x)));
    }
}

fn bases(f: PrimeField) -> Vec<Arc<StructAlgebra>> {
    vec![
        truncated_polynomial(f, 2).unwrap(),
        truncated_polynomial(f, 3).unwrap(),
        linear_path_algebra(f, 2).unwrap(),
        selfinjective_nakayama(f, 2, 2).unwrap(),
    ]
}

#[test]
fn triangular_dimensions() {
    for i in 0..PRIMES.len() {
        for base in bases(field(i)) {
            for n in 1..=3 {
                let t = tensor_with_shape(&base, ShapeKind::Triangular(n)).unwrap();
                assert_eq!(
                    t.dim(),
                    base.dim() * n * (n + 1) / 2,
                    "{} n = {n}",
                    base.name()
                );
            }
        }
    }
}

#[test]
fn opposite_is_an_involution() {
    for i in 0..PRIMES.len() {
        let f = field(i);
        for a in bases(f).into_iter().chain([gentle_algebra(f).unwrap()]) {
            let back = a.opposite().opposite();
            assert_eq!(back.dim(), a.dim());
            assert!(find_relabeling(&a, &back).is_some(), "{}", a.name());
        }
    }
}

#[test]
fn mesh_counts_on_complete_quivers() {
    for i in 0..PRIMES.len() {
        let f = field(i);
        let mut algebras = bases(f);
        algebras.push(linear_path_algebra(f, 4).unwrap());
        algebras.push(selfinjective_nakayama(f, 3, 2).unwrap());
        algebras.push(
            tensor_with_shape(
                &truncated_polynomial(f, 2).unwrap(),
                ShapeKind::Triangular(2),
            )
            .unwrap(),
        );
        for a in &algebras {
            let arq = knit(a, KnitLimits::default()).unwrap();
            assert!(arq.report().complete, "{}", a.name());
            assert!(arq.mesh_holds(), "{}", a.name());
        }
    }
}

#[test]
fn selfinjective_projectives_are_injective() {
    let f = field(1);
    for a in [
        selfinjective_nakayama(f, 2, 2).unwrap(),
        selfinjective_nakayama(f, 3, 2).unwrap(),
        truncated_polynomial(f, 3).unwrap(),
    ] {
        let arq = knit(&a, KnitLimits::default()).unwrap();
        for m in arq.modules() {
            assert_eq!(is_projective(m), is_injective(m), "{}", a.name());
        }
    }
}
