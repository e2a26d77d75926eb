//! Generic radical backend for basic algebras, and generators read off from
//! rad / rad^2.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Core, Generator};
use crate::error::{Error, Result};
use crate::linalg::{minimal_polynomial, FpMatrix, Poly, PrimeField, Subspace};

/// Radical of a basic algebra: every off-diagonal block plus the radical of
/// each local corner `e_v A e_v`.
pub(crate) fn generic_radical(core: &Core) -> Result<Vec<Vec<u32>>> {
    let nv = core.nv;
    let mut out = Vec::new();
    for u in 0..nv {
        for v in 0..nv {
            let blk = &core.blocks[u * nv + v];
            if u == v {
                for r in local_radical(core, v)? {
                    let mut full = vec![0u32; core.dim];
                    for (k, &b) in blk.iter().enumerate() {
                        full[b] = r[k];
                    }
                    out.push(full);
                }
            } else {
                out.extend(blk.iter().map(|&b| core.unit_vector(b)));
            }
        }
    }
    Ok(out)
}

/// Outcome of analysing a finite-dimensional ring with a given identity.
pub(crate) enum Locality {
    /// The ring is local; the radical in ring coordinates.
    Local(Vec<Vec<u32>>),
    /// An element whose minimal polynomial has two coprime factors.
    Split(Vec<u32>),
}

/// A finite-dimensional ring given by a multiplication on coordinate vectors.
pub(crate) struct RingView<'a> {
    pub field: PrimeField,
    pub dim: usize,
    pub one: Vec<u32>,
    pub mul: &'a dyn Fn(&[u32], &[u32]) -> Vec<u32>,
}

impl RingView<'_> {
    fn unit(&self, k: usize) -> Vec<u32> {
        let mut v = vec![0u32; self.dim];
        v[k] = 1;
        v
    }

    fn eval(&self, poly: &Poly, x: &[u32]) -> Vec<u32> {
        let f = self.field;
        let mut acc = vec![0u32; self.dim];
        for &c in poly.coeffs().iter().rev() {
            acc = (self.mul)(&acc, x);
            for (a, &o) in acc.iter_mut().zip(&self.one) {
                *a = f.add(*a, f.mul(c, o));
            }
        }
        acc
    }

    fn close_ideal(&self, ideal: &mut Subspace) {
        loop {
            let mut grew = false;
            let current = ideal.basis().to_vec();
            for y in &current {
                for k in 0..self.dim {
                    let e = self.unit(k);
                    grew |= ideal.insert(&(self.mul)(y, &e));
                    grew |= ideal.insert(&(self.mul)(&e, y));
                }
            }
            if !grew {
                return;
            }
        }
    }

    fn is_nilpotent(&self, ideal: &Subspace) -> bool {
        let mut power = ideal.clone();
        while power.dim() > 0 {
            let mut next = Subspace::new(self.field, self.dim);
            for a in power.basis() {
                for b in ideal.basis() {
                    next.insert(&(self.mul)(a, b));
                }
            }
            if next.dim() == power.dim() {
                return false;
            }
            power = next;
        }
        true
    }

    /// Decides whether the ring is local. Nilpotent parts of minimal
    /// polynomials grow a nilpotent ideal `I`; the ring is certified local
    /// once some element generates `R / I` as a field.
    pub(crate) fn analyze(&self, seed: u64) -> Result<Locality> {
        let field = self.field;
        let r = self.dim;
        let mut ideal = Subspace::new(field, r);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut candidates: Vec<Vec<u32>> = (0..r).map(|k| self.unit(k)).collect();
        for _ in 0..32 {
            candidates.push((0..r).map(|_| rng.gen_range(0..field.p())).collect());
        }
        'restart: loop {
            let quotient = ideal.complement_coordinates();
            let q = quotient.len();
            if q == 0 {
                return Err(Error::InvalidAlgebra("the identity is nilpotent".into()));
            }
            if q == 1 {
                return Ok(Locality::Local(ideal.basis().to_vec()));
            }
            for x in &candidates {
                let cols: Vec<Vec<u32>> = quotient
                    .iter()
                    .map(|&c| {
                        let y = ideal.reduce(&(self.mul)(x, &self.unit(c)));
                        quotient.iter().map(|&d| y[d]).collect()
                    })
                    .collect();
                let mu = minimal_polynomial(&FpMatrix::from_columns(field, q, &cols));
                let kernel = mu.squarefree_kernel();
                if kernel != mu {
                    // a nilpotent element lies in the radical only when its
                    // two-sided ideal is nilpotent (not so in matrix rings)
                    let mut grown = ideal.clone();
                    grown.insert(&self.eval(&kernel, x));
                    self.close_ideal(&mut grown);
                    if self.is_nilpotent(&grown) {
                        ideal = grown;
                        continue 'restart;
                    }
                }
                if mu.coprime_split(&mut rng).is_some() {
                    return Ok(Locality::Split(x.clone()));
                }
                if mu.degree() == Some(q) {
                    return Ok(Locality::Local(ideal.basis().to_vec()));
                }
            }
            return Err(Error::CertificationFailed(
                "could not decide whether the ring is local".into(),
            ));
        }
    }
}

/// Radical of the corner at `v` in corner coordinates. Fails if the corner
/// is not local (the idempotent is not primitive).
fn local_radical(core: &Core, v: usize) -> Result<Vec<Vec<u32>>> {
    let idx = &core.blocks[v * core.nv + v];
    let embed = |x: &[u32]| {
        let mut full = vec![0u32; core.dim];
        for (k, &b) in idx.iter().enumerate() {
            full[b] = x[k];
        }
        full
    };
    let mul = |x: &[u32], y: &[u32]| -> Vec<u32> {
        let full = core.mul(&embed(x), &embed(y));
        idx.iter().map(|&b| full[b]).collect()
    };
    let mut one = vec![0u32; idx.len()];
    one[core.block_pos[core.idempotents[v]]] = 1;
    let ring = RingView {
        field: core.field,
        dim: idx.len(),
        one,
        mul: &mul,
    };
    match ring.analyze(0x5eed ^ v as u64) {
        Ok(Locality::Local(rad)) => Ok(rad),
        Ok(Locality::Split(_)) | Err(Error::InvalidAlgebra(_)) => Err(Error::InvalidAlgebra(
            format!("idempotent at vertex {v} is not primitive"),
        )),
        Err(_) => Err(Error::InvalidAlgebra(format!(
            "could not certify the corner at vertex {v} as local"
        ))),
    }
}

/// Generators: a complement of rad^2 in rad per block, plus elements
/// completing `k e_v + rad` to the whole corner when the residue field is
/// larger than F_p.
pub(crate) fn generators_from_radical(
    core: &Core,
    radical: &[Vec<u32>],
    labels: &[String],
) -> Vec<Generator> {
    let nv = core.nv;
    let mut by_block: Vec<Vec<&Vec<u32>>> = vec![Vec::new(); nv * nv];
    for r in radical {
        if let Some((u, v)) = core.block_of(r) {
            by_block[u * nv + v].push(r);
        }
    }
    let label_of = |x: &[u32], fallback: String| -> String {
        let nz: Vec<usize> = (0..x.len()).filter(|&i| x[i] != 0).collect();
        match nz.as_slice() {
            [i] if x[*i] == 1 => labels[*i].clone(),
            _ => fallback,
        }
    };
    let mut gens = Vec::new();
    for u in 0..nv {
        for v in 0..nv {
            let mut square = Subspace::new(core.field, core.dim);
            for w in 0..nv {
                for a in &by_block[u * nv + w] {
                    for b in &by_block[w * nv + v] {
                        square.insert(&core.mul(a, b));
                    }
                }
            }
            for r in &by_block[u * nv + v] {
                if square.insert(r) {
                    let label = label_of(r, format!("g{}", gens.len()));
                    gens.push(Generator {
                        label,
                        source: u,
                        target: v,
                        element: (*r).clone(),
                    });
                }
            }
        }
    }
    for v in 0..nv {
        let mut span = Subspace::new(core.field, core.dim);
        span.insert(&core.unit_vector(core.idempotents[v]));
        for r in &by_block[v * nv + v] {
            span.insert(r);
        }
        for &b in &core.blocks[v * nv + v] {
            let x = core.unit_vector(b);
            if span.insert(&x) {
                gens.push(Generator {
                    label: labels[b].clone(),
                    source: v,
                    target: v,
                    element: x,
                });
            }
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    // M_2(F_p): nilpotent matrix units generate the whole ring, so they must
    // not be mistaken for radical elements
    fn matrix_ring(p: u32) -> Result<Locality> {
        let f = PrimeField::new(p).unwrap();
        let mul = |x: &[u32], y: &[u32]| -> Vec<u32> {
            let mut out = vec![0u32; 4];
            for i in 0..2 {
                for j in 0..2 {
                    for k in 0..2 {
                        out[2 * i + j] = f.add(out[2 * i + j], f.mul(x[2 * i + k], y[2 * k + j]));
                    }
                }
            }
            out
        };
        let ring = RingView {
            field: f,
            dim: 4,
            one: vec![1, 0, 0, 1],
            mul: &mul,
        };
        ring.analyze(7)
    }

    #[test]
    fn full_matrix_rings_split() {
        for p in [2, 3, 5] {
            assert!(matches!(matrix_ring(p), Ok(Locality::Split(_))), "p = {p}");
        }
    }
}
