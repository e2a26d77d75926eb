//! Univariate polynomials over F_p (coefficients low degree first), with the
//! pieces of factorization that module decomposition needs: minimal
//! polynomials, squarefree kernels and coprime splittings.

use rand::Rng;

use super::field::PrimeField;
use super::matrix::FpMatrix;
use super::subspace::Subspace;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: PrimeField,
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn new(field: PrimeField, mut coeffs: Vec<u32>) -> Self {
        let p = field.p();
        coeffs.iter_mut().for_each(|c| *c %= p);
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: PrimeField) -> Self {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: PrimeField) -> Self {
        Poly::new(field, vec![1])
    }

    /// The monomial t.
    pub fn t(field: PrimeField) -> Self {
        Poly::new(field, vec![0, 1])
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    fn lead(&self) -> u32 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.lead());
        self.scale(inv)
    }

    pub fn scale(&self, c: u32) -> Poly {
        let f = self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                f.add(
                    *self.coeffs.get(i).unwrap_or(&0),
                    *other.coeffs.get(i).unwrap_or(&0),
                )
            })
            .collect();
        Poly::new(f, c)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(self.field.neg(1)))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let f = self.field;
        let mut c = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, c)
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let f = self.field;
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() < d.coeffs.len() {
            return (Poly::zero(f), self.clone());
        }
        let inv = f.inv(d.lead());
        let mut r = self.coeffs.clone();
        let mut q = vec![0u32; r.len() - dd];
        for k in (0..q.len()).rev() {
            let a = f.mul(r[k + dd], inv);
            q[k] = a;
            if a == 0 {
                continue;
            }
            for (j, &b) in d.coeffs.iter().enumerate() {
                r[k + j] = f.sub(r[k + j], f.mul(a, b));
            }
        }
        r.truncate(dd);
        (Poly::new(f, q), Poly::new(f, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        let f = self.field;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &a)| f.mul(a, (i as u64 % f.p() as u64) as u32))
            .collect();
        Poly::new(f, c)
    }

    pub fn mul_mod(&self, other: &Poly, m: &Poly) -> Poly {
        self.mul(other).rem(m)
    }

    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, m);
            }
        }
        acc
    }

    /// Evaluates at a square matrix by Horner's rule.
    pub fn eval_matrix(&self, a: &FpMatrix) -> FpMatrix {
        let f = self.field;
        let n = a.rows();
        let mut acc = FpMatrix::zeros(f, n, n);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(a);
            if c != 0 {
                for i in 0..n {
                    let v = f.add(acc.get(i, i), c);
                    acc.set(i, i, v);
                }
            }
        }
        acc
    }

    /// Least common multiple (monic).
    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let g = self.gcd(other);
        self.mul(other).div_rem(&g).0.monic()
    }

    /// Product of the distinct monic irreducible factors.
    pub fn squarefree_kernel(&self) -> Poly {
        let f = self.field;
        let s = self.monic();
        if s.is_constant() {
            return Poly::one(f);
        }
        let ds = s.derivative();
        if ds.is_zero() {
            return p_th_root(&s).squarefree_kernel();
        }
        let c = s.gcd(&ds);
        let w = s.div_rem(&c).0.monic();
        // strip from c every factor already in w; what is left has all
        // multiplicities divisible by p
        let mut u = c;
        loop {
            let g = u.gcd(&w);
            if g.is_constant() {
                break;
            }
            u = u.div_rem(&g).0;
        }
        let rest = if u.is_constant() {
            Poly::one(f)
        } else {
            p_th_root(&u.monic()).squarefree_kernel()
        };
        w.mul(&rest).monic()
    }

    /// Splits `self` as `u * v` with `gcd(u, v) = 1` and neither constant, if
    /// the polynomial has at least two distinct irreducible factors.
    pub fn coprime_split<R: Rng>(&self, rng: &mut R) -> Option<(Poly, Poly)> {
        let m = self.monic();
        let k = m.squarefree_kernel();
        let factor = split_squarefree(&k, rng)?;
        let n = m.degree().unwrap_or(0) as u64;
        let u = m.gcd(&factor.pow_mod(n.max(1), &m));
        let u = if u.is_constant() { m.gcd(&factor) } else { u };
        let v = m.div_rem(&u).0.monic();
        if u.is_constant() || v.is_constant() {
            return None;
        }
        debug_assert!(u.gcd(&v).is_constant());
        Some((u, v))
    }
}

/// `s(t) = h(t^p)` implies `s = h^p` over F_p; returns `h`.
fn p_th_root(s: &Poly) -> Poly {
    let p = s.field.p() as usize;
    let c = s.coeffs.iter().step_by(p).copied().collect();
    Poly::new(s.field, c)
}

/// For a squarefree monic `k` with at least two irreducible factors, returns a
/// proper nontrivial factor.
fn split_squarefree<R: Rng>(k: &Poly, rng: &mut R) -> Option<Poly> {
    let f = k.field;
    let n = k.degree()?;
    if n < 2 {
        return None;
    }
    // distinct degree: gcd(k, t^{p^d} - t)
    let t = Poly::t(f);
    let rest = k.clone();
    let mut frob = t.clone();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        frob = frob.pow_mod(f.p() as u64, &rest);
        let g = rest.gcd(&frob.sub(&t));
        if !g.is_constant() {
            if g.degree() != rest.degree() {
                return Some(g);
            }
            // every factor of rest has degree d
            return equal_degree_split(&rest, d, rng);
        }
        d += 1;
        frob = frob.rem(&rest);
    }
    // rest is irreducible; k had a factor split off earlier only if rest != k
    None
}

/// Cantor-Zassenhaus splitting of a product of distinct degree-`d` irreducibles.
fn equal_degree_split<R: Rng>(g: &Poly, d: usize, rng: &mut R) -> Option<Poly> {
    let f = g.field;
    let n = g.degree()?;
    if n <= d {
        return None;
    }
    let p = f.p() as u64;
    for _ in 0..256 {
        let a = Poly::new(f, (0..n).map(|_| rng.gen_range(0..f.p())).collect());
        if a.is_constant() {
            continue;
        }
        let h = a.gcd(g);
        if !h.is_constant() && h.degree() != g.degree() {
            return Some(h);
        }
        let b = if p == 2 {
            // trace map a + a^2 + ... + a^{2^{d-1}}
            let mut acc = a.rem(g);
            let mut cur = acc.clone();
            for _ in 1..d {
                cur = cur.mul_mod(&cur, g);
                acc = acc.add(&cur);
            }
            acc
        } else {
            // a^{(p^d - 1)/2} = (a^{1 + p + ... + p^{d-1}})^{(p-1)/2}
            let mut norm = Poly::one(f);
            let mut cur = a.rem(g);
            for i in 0..d {
                if i > 0 {
                    cur = cur.pow_mod(p, g);
                }
                norm = norm.mul_mod(&cur, g);
            }
            norm.pow_mod((p - 1) / 2, g).sub(&Poly::one(f))
        };
        let h = g.gcd(&b);
        if !h.is_constant() && h.degree() != g.degree() {
            return Some(h);
        }
    }
    None
}

/// Minimal polynomial of a square matrix (monic), via Krylov sequences of
/// standard basis vectors not already covered.
pub fn minimal_polynomial(a: &FpMatrix) -> Poly {
    let f = a.field();
    let n = a.rows();
    assert!(a.is_square());
    let mut covered = Subspace::new(f, n);
    let mut mu = Poly::one(f);
    for k in 0..n {
        let mut e = vec![0u32; n];
        e[k] = 1;
        if covered.contains(&e) {
            continue;
        }
        let local = vector_minimal_polynomial(a, &e, &mut covered);
        mu = mu.lcm(&local);
    }
    mu
}

/// Minimal polynomial of `v` relative to `a`; the Krylov vectors are added to `covered`.
fn vector_minimal_polynomial(a: &FpMatrix, v: &[u32], covered: &mut Subspace) -> Poly {
    let f = a.field();
    let n = a.rows();
    // Track the Krylov basis together with its expression in powers of a.
    let mut krylov = Subspace::new(f, n + n + 1);
    let mut cur = v.to_vec();
    for deg in 0..=n {
        let mut row = cur.clone();
        row.extend((0..=n).map(|j| u32::from(j == deg)));
        let mut reduced = row.clone();
        krylov.reduce_in_place(&mut reduced);
        if reduced[..n].iter().all(|&x| x == 0) {
            // reduced tail encodes a polynomial killing v
            return Poly::new(f, reduced[n..].to_vec()).monic();
        }
        krylov.insert(&row);
        covered.insert(&cur);
        cur = a.mul_vec(&cur);
    }
    unreachable!("Krylov sequence longer than the dimension")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fp(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn poly(p: u32, c: &[u32]) -> Poly {
        Poly::new(fp(p), c.to_vec())
    }

    #[test]
    fn division_and_gcd() {
        // (t^2 - 1) = (t - 1)(t + 1) over F_5
        let a = poly(5, &[4, 0, 1]);
        let b = poly(5, &[4, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, poly(5, &[1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&poly(5, &[1, 1])), poly(5, &[1, 1]));
    }

    #[test]
    fn squarefree_kernel_handles_pth_powers() {
        // t^2 over F_2 has derivative 0
        assert_eq!(poly(2, &[0, 0, 1]).squarefree_kernel(), poly(2, &[0, 1]));
        // (t+1)^3 t over F_3
        let f = poly(3, &[1, 1]);
        let g = f.mul(&f).mul(&f).mul(&poly(3, &[0, 1]));
        assert_eq!(g.squarefree_kernel(), f.mul(&poly(3, &[0, 1])));
    }

    #[test]
    fn coprime_split_finds_factors() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        // t^2 (t + 1) over F_2
        let g = poly(2, &[0, 0, 1, 1]);
        let (u, v) = g.coprime_split(&mut rng).unwrap();
        assert_eq!(u.mul(&v), g);
        // irreducible power does not split
        let h = poly(2, &[1, 1, 1]);
        assert!(h.mul(&h).coprime_split(&mut rng).is_none());
        // product of two distinct quadratics over F_3: (t^2+1)(t^2+t+2)
        let a = poly(3, &[1, 0, 1]);
        let b = poly(3, &[2, 1, 1]);
        let (u, v) = a.mul(&b).coprime_split(&mut rng).unwrap();
        assert_eq!(u.mul(&v), a.mul(&b));
        assert_eq!(u.degree(), Some(2));
    }

    #[test]
    fn minimal_polynomial_examples() {
        let f = fp(3);
        let id = FpMatrix::identity(f, 3);
        assert_eq!(minimal_polynomial(&id), poly(3, &[2, 1]));
        let nil = FpMatrix::from_rows(f, &[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]).unwrap();
        assert_eq!(minimal_polynomial(&nil), poly(3, &[0, 0, 0, 1]));
        let diag = FpMatrix::from_rows(f, &[vec![1, 0], vec![0, 2]]).unwrap();
        // (t-1)(t-2) = t^2 - 3t + 2 = t^2 + 2
        assert_eq!(minimal_polynomial(&diag), poly(3, &[2, 0, 1]));
        assert!(minimal_polynomial(&diag).eval_matrix(&diag).is_zero());
    }
}
