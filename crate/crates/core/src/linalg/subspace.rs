use super::field::PrimeField;

/// A subspace of F_p^n kept as fully reduced echelon rows. Supports
/// incremental insertion, membership and reduction modulo the subspace.
#[derive(Clone, Debug)]
pub struct Subspace {
    field: PrimeField,
    ambient: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(field: PrimeField, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn spanned_by<'a>(
        field: PrimeField,
        ambient: usize,
        vectors: impl IntoIterator<Item = &'a Vec<u32>>,
    ) -> Self {
        let mut s = Subspace::new(field, ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` modulo the subspace in place.
    pub fn reduce_in_place(&self, v: &mut [u32]) {
        let f = self.field;
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let a = v[pc];
            if a == 0 {
                continue;
            }
            let factor = f.neg(a);
            for (x, &r) in v.iter_mut().zip(row).skip(pc) {
                if r != 0 {
                    *x = f.add(*x, f.mul(factor, r));
                }
            }
        }
    }

    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let mut w = v.to_vec();
        self.reduce_in_place(&mut w);
        w
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Inserts `v`; returns `true` when it enlarged the subspace.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        debug_assert_eq!(v.len(), self.ambient);
        let mut w = self.reduce(v);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let f = self.field;
        let inv = f.inv(w[pc]);
        for x in w.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let a = row[pc];
            if a == 0 {
                continue;
            }
            let factor = f.neg(a);
            for (x, &r) in row.iter_mut().zip(&w).skip(pc) {
                if r != 0 {
                    *x = f.add(*x, f.mul(factor, r));
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < pc);
        self.pivots.insert(at, pc);
        self.rows.insert(at, w);
        true
    }

    /// Coordinates of `v` with respect to the echelon rows, if `v` lies in the span.
    pub fn echelon_coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        let c: Vec<u32> = self.pivots.iter().map(|&pc| v[pc]).collect();
        let f = self.field;
        let mut w = v.to_vec();
        for (row, &a) in self.rows.iter().zip(&c) {
            if a == 0 {
                continue;
            }
            for (x, &r) in w.iter_mut().zip(row) {
                if r != 0 {
                    *x = f.sub(*x, f.mul(a, r));
                }
            }
        }
        w.iter().all(|&x| x == 0).then_some(c)
    }

    /// Indices (into the standard basis) of a complement: the non-pivot columns.
    pub fn complement_coordinates(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }
}

/// Expresses vectors in a fixed list of linearly independent vectors.
#[derive(Clone, Debug)]
pub struct Coordinates {
    field: PrimeField,
    ambient: usize,
    /// reduced rows of the basis matrix
    reduced: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    /// reduced row k = sum_j transform[k][j] * basis_j
    transform: Vec<Vec<u32>>,
}

impl Coordinates {
    /// Returns `None` if the vectors are linearly dependent.
    pub fn new(field: PrimeField, ambient: usize, basis: &[Vec<u32>]) -> Option<Self> {
        let k = basis.len();
        let mut rows: Vec<Vec<u32>> = basis
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let mut r = b.clone();
                r.extend((0..k).map(|j| u32::from(i == j)));
                r
            })
            .collect();
        let width = ambient + k;
        let mut pivots = Vec::new();
        let f = field;
        let mut r = 0;
        for c in 0..ambient {
            if r == k {
                break;
            }
            let Some(found) = (r..k).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, found);
            let inv = f.inv(rows[r][c]);
            for x in rows[r].iter_mut() {
                *x = f.mul(*x, inv);
            }
            let prow = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == r || row[c] == 0 {
                    continue;
                }
                let factor = f.neg(row[c]);
                for t in c..width {
                    if prow[t] != 0 {
                        row[t] = f.add(row[t], f.mul(factor, prow[t]));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        if r < k {
            return None;
        }
        let (reduced, transform) = rows
            .into_iter()
            .map(|mut row| {
                let t = row.split_off(ambient);
                (row, t)
            })
            .unzip();
        Some(Coordinates {
            field,
            ambient,
            reduced,
            pivots,
            transform,
        })
    }

    pub fn dim(&self) -> usize {
        self.reduced.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Coefficients `c` with `v = sum c_j basis_j`, or `None` if `v` is outside the span.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        let f = self.field;
        let mut w = v.to_vec();
        let mut cr = Vec::with_capacity(self.pivots.len());
        for (row, &pc) in self.reduced.iter().zip(&self.pivots) {
            let a = w[pc];
            cr.push(a);
            if a == 0 {
                continue;
            }
            for (x, &r) in w.iter_mut().zip(row) {
                if r != 0 {
                    *x = f.sub(*x, f.mul(a, r));
                }
            }
        }
        if w.iter().any(|&x| x != 0) {
            return None;
        }
        let k = self.reduced.len();
        let mut out = vec![0u32; k];
        for (a, t) in cr.iter().zip(&self.transform) {
            if *a == 0 {
                continue;
            }
            for (o, &tv) in out.iter_mut().zip(t) {
                *o = f.add(*o, f.mul(*a, tv));
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insertion_and_membership() {
        let f = PrimeField::new(3).unwrap();
        let mut s = Subspace::new(f, 3);
        assert!(s.insert(&[1, 2, 0]));
        assert!(s.insert(&[0, 1, 1]));
        assert!(!s.insert(&[1, 0, 1])); // (1,2,0) + (0,1,1)
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[2, 1, 0]));
        assert!(!s.contains(&[0, 0, 1]));
    }

    #[test]
    fn coordinates_round_trip() {
        let f = PrimeField::new(5).unwrap();
        let basis = vec![vec![1, 2, 0, 4], vec![0, 1, 3, 3]];
        let c = Coordinates::new(f, 4, &basis).unwrap();
        // 2*b0 + 3*b1
        let v: Vec<u32> = (0..4)
            .map(|i| f.add(f.mul(2, basis[0][i]), f.mul(3, basis[1][i])))
            .collect();
        assert_eq!(c.coordinates(&v), Some(vec![2, 3]));
        assert_eq!(c.coordinates(&[0, 0, 0, 1]), None);
        assert!(Coordinates::new(f, 4, &[basis[0].clone(), basis[0].clone()]).is_none());
    }
}
