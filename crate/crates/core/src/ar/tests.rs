use super::*;
use crate::algebra::{
    bound_quiver_algebra, linear_path_algebra, truncated_polynomial, Quiver, RelationSet,
};
use crate::linalg::PrimeField;
use crate::module::{direct_sum, endomorphism_algebra, simple_module, Catalog};

fn f2() -> PrimeField {
    PrimeField::binary()
}

fn small() -> KnitLimits {
    KnitLimits {
        max_modules: 60,
        max_dim: 30,
    }
}

/// Indecomposable `k[x]/(x^n)`-modules found by running over every
/// nilpotent matrix with `X^n = 0` of size at most `max_dim` over F_2.
fn enumerate_truncated(n: usize, max_dim: usize) -> usize {
    let alg = truncated_polynomial(f2(), n).unwrap();
    let mut found = Catalog::new();
    for d in 1..=max_dim {
        for bits in 0u64..(1 << (d * d)) {
            let data: Vec<u32> = (0..d * d).map(|k| ((bits >> k) & 1) as u32).collect();
            let x = FpMatrix::new(f2(), d, d, data).unwrap();
            let Ok(m) = Module::new(alg.clone(), vec![d], vec![x]) else {
                continue;
            };
            if is_indecomposable(&m) {
                found.insert(m);
            }
        }
    }
    found.len()
}

/// Indecomposable representations of `1 -> 2` with dimensions at most 2.
fn enumerate_a2() -> usize {
    let alg = linear_path_algebra(f2(), 2).unwrap();
    let mut found = Catalog::new();
    for a in 0..=2usize {
        for b in 0..=2usize {
            for bits in 0u32..(1 << (a * b)) {
                let data: Vec<u32> = (0..a * b).map(|k| (bits >> k) & 1).collect();
                let m = Module::new(
                    alg.clone(),
                    vec![a, b],
                    vec![FpMatrix::new(f2(), b, a, data).unwrap()],
                )
                .unwrap();
                if is_indecomposable(&m) {
                    found.insert(m);
                }
            }
        }
    }
    found.len()
}

#[test]
fn almost_split_sequence_over_a2() {
    let alg = linear_path_algebra(f2(), 2).unwrap();
    let s = simple_module(&alg, 0);
    assert_eq!(s.dims(), &[1, 0]);
    let ass = almost_split_ending_at(&s).unwrap();
    assert_eq!(ass.seq.left().dims(), &[0, 1]);
    assert!(is_projective(ass.seq.middle()));
    assert_eq!(ass.seq.middle().dims(), &[1, 1]);
    let universe = knit(&alg, small()).unwrap().modules().to_vec();
    assert!(certify_almost_split(&ass.seq, &universe));
    assert!(matches!(
        almost_split_ending_at(&projective_module(&alg, 0)),
        Err(Error::ProjectiveInput)
    ));
}

#[test]
fn almost_split_sequence_over_dual_numbers() {
    let alg = truncated_polynomial(f2(), 2).unwrap();
    let s = simple_module(&alg, 0);
    let ass = almost_split_ending_at(&s).unwrap();
    assert_eq!(ass.seq.left().dim(), 1);
    assert!(is_projective(ass.seq.middle()));
    let seq = &ass.seq;
    assert_eq!(seq.middle().dim(), seq.left().dim() + seq.right().dim());
    assert!(certify_almost_split(
        seq,
        &[s.clone(), projective_module(&alg, 0)]
    ));
}

#[test]
fn split_sequences_are_rejected() {
    let alg = linear_path_algebra(f2(), 2).unwrap();
    let (s1, s2) = (simple_module(&alg, 0), simple_module(&alg, 1));
    let sum = direct_sum(&alg, &[s2.clone(), s1.clone()]);
    let seq = ShortExactSeq::new(sum.injections[0].clone(), sum.projections[1].clone()).unwrap();
    let universe = knit(&alg, small()).unwrap().modules().to_vec();
    assert!(!certify_almost_split(&seq, &universe));
}

#[test]
fn knitting_counts_match_enumeration() {
    let a3 = truncated_polynomial(f2(), 3).unwrap();
    let arq = knit(&a3, small()).unwrap();
    assert!(arq.complete && !arq.cutoff_hit);
    assert_eq!(arq.len(), 3);
    assert_eq!(enumerate_truncated(3, 3), 3);

    let a2 = linear_path_algebra(f2(), 2).unwrap();
    let arq = knit(&a2, small()).unwrap();
    assert!(arq.complete);
    assert_eq!(arq.len(), enumerate_a2());
    assert_eq!(arq.len(), 3);
}

#[test]
fn linear_quivers_have_triangular_counts() {
    for p in [2, 3] {
        let f = PrimeField::new(p).unwrap();
        for n in 1..=4 {
            let mut arq = knit(&linear_path_algebra(f, n).unwrap(), small()).unwrap();
            assert!(arq.complete);
            assert_eq!(arq.len(), n * (n + 1) / 2);
            assert!(arq.mesh_holds());
            assert!(arq.certify_all());
        }
    }
}

#[test]
fn mesh_and_certification_on_nakayama() {
    let f = PrimeField::new(3).unwrap();
    let alg = crate::algebra::selfinjective_nakayama(f, 2, 3).unwrap();
    let mut arq = knit(&alg, small()).unwrap();
    assert!(arq.complete);
    // uniserials of length 1..3 at each of the two tops
    assert_eq!(arq.len(), 6);
    assert!(arq.mesh_holds());
    assert!(arq.certify_all());
    // self-injective: projective and injective vertices coincide
    assert_eq!(arq.projective, arq.injective);
}

#[test]
fn tau_orbits() {
    let alg = truncated_polynomial(f2(), 2).unwrap();
    let arq = knit(&alg, small()).unwrap();
    let s = simple_module(&alg, 0);
    assert_eq!(tau_orbit(&s, &arq).unwrap().period, Some(1));
    assert!(matches!(
        tau_orbit(&projective_module(&alg, 0), &arq),
        Err(Error::ProjectiveInput)
    ));

    let a2 = linear_path_algebra(f2(), 2).unwrap();
    let arq = knit(&a2, small()).unwrap();
    // τ S_1 = S_2 is projective, so the orbit does not return
    assert_eq!(
        tau_orbit(&simple_module(&a2, 0), &arq).unwrap().period,
        None
    );
}

#[test]
fn tau_orbits_in_the_auslander_algebra_of_dual_numbers() {
    let alg = truncated_polynomial(f2(), 2).unwrap();
    let gs = vec![projective_module(&alg, 0), simple_module(&alg, 0)];
    let gamma = endomorphism_algebra("Aus", &gs).unwrap();
    let mut arq = knit(&gamma.algebra, small()).unwrap();
    // Nakayama with Kupisch series (3, 2): five uniserials
    assert!(arq.complete);
    assert_eq!(arq.len(), 5);
    assert!(arq.mesh_holds());
    assert!(arq.certify_all());
    for (i, m) in arq.modules().iter().enumerate() {
        if arq.projective[i] {
            continue;
        }
        let orbit = tau_orbit(m, &arq).unwrap();
        if arq.injective[i] {
            // τ of the injective non-projective module is projective
            assert_eq!(orbit.period, None);
            assert!(arq.projective[arq.tau[i].unwrap()]);
        } else {
            // the two simples are swapped by τ
            assert_eq!(m.dim(), 1);
            assert_eq!(orbit.period, Some(2));
        }
    }
}

#[test]
fn kronecker_hits_the_cutoff() {
    let q = Quiver::from_names(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]).unwrap();
    let alg = bound_quiver_algebra("K", &q, &RelationSet::default(), f2(), 30).unwrap();
    let limits = KnitLimits {
        max_modules: 12,
        max_dim: 60,
    };
    let arq = knit(&alg, limits).unwrap();
    assert!(arq.cutoff_hit);
    assert!(!arq.complete);
    assert!(arq.len() <= 12);
}

#[test]
fn knitting_is_deterministic_across_execution_modes() {
    let alg = crate::algebra::selfinjective_nakayama(f2(), 3, 2).unwrap();
    let a = serde_json::to_string(&knit(&alg, small()).unwrap().report()).unwrap();
    crate::par::set_sequential(true);
    let b = serde_json::to_string(&knit(&alg, small()).unwrap().report()).unwrap();
    crate::par::set_sequential(false);
    assert_eq!(a, b);
}

#[test]
fn dot_export_marks_tau() {
    let alg = linear_path_algebra(f2(), 3).unwrap();
    let arq = knit(&alg, small()).unwrap();
    let dot = arq.to_dot();
    assert!(dot.starts_with("digraph"));
    assert_eq!(
        dot.matches("style=dashed").count(),
        arq.tau.iter().flatten().count()
    );
    assert_eq!(arq.tau.iter().flatten().count(), 3);
}
