//! Named algebras and the tensor-style constructions T_n, A_3 and S_3.

use std::sync::Arc;

use super::quiver::{
    bound_quiver_algebra, Arrow, Quiver, Relation, RelationSet, DEFAULT_PATH_CUTOFF,
};
use super::{AlgebraData, Generator, Origin, RadicalBackend, StructAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{PrimeField, Subspace};

/// k[x]/(x^n).
pub fn truncated_polynomial(field: PrimeField, n: usize) -> Result<Arc<StructAlgebra>> {
    selfinjective_nakayama(field, 1, n)
}

/// The self-injective Nakayama algebra A(n, t): the oriented cycle on `n`
/// vertices modulo all paths of length `t`.
pub fn selfinjective_nakayama(field: PrimeField, n: usize, t: usize) -> Result<Arc<StructAlgebra>> {
    if n == 0 {
        return Err(Error::InvalidQuiver(
            "a cycle needs at least one vertex".into(),
        ));
    }
    if t < 2 {
        if t == 1 {
            return semisimple_algebra(field, n);
        }
        return Err(Error::InadmissibleRelation(
            "Loewy length must be positive".into(),
        ));
    }
    let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let arrows: Vec<Arrow> = (0..n)
        .map(|i| Arrow {
            label: if n == 1 {
                "x".to_string()
            } else {
                format!("a{}", i + 1)
            },
            source: i,
            target: (i + 1) % n,
        })
        .collect();
    let q = Quiver::new(vertices, arrows)?;
    let relations = (0..n)
        .map(|start| Relation::monomial((0..t).map(|k| (start + k) % n).collect()))
        .collect();
    let name = if n == 1 {
        format!("k[x]/(x^{t})")
    } else {
        format!("A({n},{t})")
    };
    bound_quiver_algebra(
        &name,
        &q,
        &RelationSet::new(relations),
        field,
        DEFAULT_PATH_CUTOFF,
    )
}

/// Path algebra of 1 -> 2 -> ... -> n.
pub fn linear_path_algebra(field: PrimeField, n: usize) -> Result<Arc<StructAlgebra>> {
    let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let arrows = (0..n.saturating_sub(1))
        .map(|i| Arrow {
            label: format!("a{}", i + 1),
            source: i,
            target: i + 1,
        })
        .collect();
    let q = Quiver::new(vertices, arrows)?;
    bound_quiver_algebra(
        &format!("kA{n}"),
        &q,
        &RelationSet::default(),
        field,
        DEFAULT_PATH_CUTOFF,
    )
}

/// k x ... x k.
pub fn semisimple_algebra(field: PrimeField, n: usize) -> Result<Arc<StructAlgebra>> {
    let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let q = Quiver::new(vertices, Vec::new())?;
    bound_quiver_algebra(
        &format!("k^{n}"),
        &q,
        &RelationSet::default(),
        field,
        DEFAULT_PATH_CUTOFF,
    )
}

fn unit_label(size: usize, i: usize, j: usize) -> String {
    if size > 9 {
        format!("E{i},{j}")
    } else {
        format!("E{i}{j}")
    }
}

/// Algebra spanned by the matrix units at `positions` (1-based); a product
/// landing outside the positions is zero. Every diagonal position must occur.
pub fn matrix_unit_algebra(
    field: PrimeField,
    name: &str,
    size: usize,
    positions: &[(usize, usize)],
) -> Result<Arc<StructAlgebra>> {
    let dim = positions.len();
    let index = |i: usize, j: usize| positions.iter().position(|&p| p == (i, j));
    let mut idempotents = Vec::new();
    for i in 1..=size {
        idempotents.push(
            index(i, i)
                .ok_or_else(|| Error::InvalidAlgebra(format!("missing diagonal unit {i}")))?,
        );
    }
    if positions
        .iter()
        .any(|&(i, j)| i == 0 || j == 0 || i > size || j > size)
    {
        return Err(Error::InvalidAlgebra("matrix unit out of range".into()));
    }
    let mut table = vec![Vec::new(); dim * dim];
    for (x, &(i, j)) in positions.iter().enumerate() {
        for (y, &(k, l)) in positions.iter().enumerate() {
            if j == k {
                if let Some(z) = index(i, l) {
                    table[x * dim + y] = vec![(z, 1)];
                }
            }
        }
    }
    let radical: Vec<Vec<u32>> = positions
        .iter()
        .enumerate()
        .filter(|(_, &(i, j))| i != j)
        .map(|(x, _)| {
            let mut v = vec![0u32; dim];
            v[x] = 1;
            v
        })
        .collect();
    let generators = positions
        .iter()
        .enumerate()
        .filter(|&(_, &(i, j))| {
            i != j
                && !(1..=size)
                    .any(|k| k != i && k != j && index(i, k).is_some() && index(k, j).is_some())
        })
        .map(|(x, &(i, j))| {
            let mut element = vec![0u32; dim];
            element[x] = 1;
            Generator {
                label: unit_label(size, i, j),
                source: i - 1,
                target: j - 1,
                element,
            }
        })
        .collect();
    let data = AlgebraData {
        name: name.to_string(),
        field,
        basis_labels: positions
            .iter()
            .map(|&(i, j)| unit_label(size, i, j))
            .collect(),
        vertex_labels: (1..=size).map(|i| i.to_string()).collect(),
        idempotents,
        table,
    };
    StructAlgebra::build(
        data,
        Some((radical, RadicalBackend::ArrowIdeal)),
        Some(generators),
        Origin::MatrixUnits {
            size,
            positions: positions.to_vec(),
        },
    )
}

/// Matrix shapes tensored with a base algebra. Matrix unit `E_ij` lies in
/// `e_i A e_j`, so it maps the `i`-th component of a representation to the
/// `j`-th one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ShapeKind {
    /// lower triangular n x n matrices
    Triangular(usize),
    /// lower triangular 3 x 3 matrices with zero (3,1) entry
    A3,
    /// shape [[*,0,0],[*,*,0],[*,0,*]]
    S3,
}

impl ShapeKind {
    pub fn size(self) -> usize {
        match self {
            ShapeKind::Triangular(n) => n,
            ShapeKind::A3 | ShapeKind::S3 => 3,
        }
    }

    pub fn positions(self) -> Vec<(usize, usize)> {
        match self {
            ShapeKind::Triangular(n) => {
                (1..=n).flat_map(|i| (1..=i).map(move |j| (i, j))).collect()
            }
            ShapeKind::A3 => vec![(1, 1), (2, 1), (2, 2), (3, 2), (3, 3)],
            ShapeKind::S3 => vec![(1, 1), (2, 1), (2, 2), (3, 1), (3, 3)],
        }
    }

    pub fn prefix(self) -> String {
        match self {
            ShapeKind::Triangular(n) => format!("T{n}"),
            ShapeKind::A3 => "A3".into(),
            ShapeKind::S3 => "S3".into(),
        }
    }

    pub fn shape_algebra(self, field: PrimeField) -> Result<Arc<StructAlgebra>> {
        matrix_unit_algebra(field, &self.prefix(), self.size(), &self.positions())
    }
}

/// T_n(base): lower triangular n x n matrices over `base`.
pub fn triangular_matrix_algebra(
    base: &Arc<StructAlgebra>,
    n: usize,
) -> Result<Arc<StructAlgebra>> {
    if n == 0 {
        return Err(Error::InvalidAlgebra("T_n needs n >= 1".into()));
    }
    tensor_with_shape(base, ShapeKind::Triangular(n))
}

/// A_3(base) = base tensored with kA_3 modulo the length-two path.
pub fn a3_relation_algebra(base: &Arc<StructAlgebra>) -> Result<Arc<StructAlgebra>> {
    tensor_with_shape(base, ShapeKind::A3)
}

/// S_3(base).
pub fn s3_algebra(base: &Arc<StructAlgebra>) -> Result<Arc<StructAlgebra>> {
    tensor_with_shape(base, ShapeKind::S3)
}

/// `base` tensored with a matrix-unit shape.
pub fn tensor_with_shape(base: &Arc<StructAlgebra>, kind: ShapeKind) -> Result<Arc<StructAlgebra>> {
    let field = base.field();
    let shape = kind.shape_algebra(field)?;
    let (da, db) = (base.dim(), shape.dim());
    let (na, nb) = (base.num_vertices(), shape.num_vertices());
    let dim = da * db;
    let idx = |s: usize, a: usize| s * da + a;
    let mut table = vec![Vec::new(); dim * dim];
    for s in 0..db {
        for t in 0..db {
            let st = shape.product(s, t);
            if st.is_empty() {
                continue;
            }
            for a in 0..da {
                for b in 0..da {
                    let ab = base.product(a, b);
                    if ab.is_empty() {
                        continue;
                    }
                    let entry = &mut table[idx(s, a) * dim + idx(t, b)];
                    for &(u, c) in st {
                        for &(k, d) in ab {
                            entry.push((idx(u, k), field.mul(c, d)));
                        }
                    }
                }
            }
        }
    }
    let basis_labels = (0..db)
        .flat_map(|s| (0..da).map(move |a| (s, a)))
        .map(|(s, a)| format!("{}|{}", base.basis_label(a), shape.basis_label(s)))
        .collect();
    let vertex_labels = (0..nb)
        .flat_map(|v| (0..na).map(move |u| (v, u)))
        .map(|(v, u)| format!("{}|{}", base.vertex_label(u), shape.vertex_label(v)))
        .collect();
    let idempotents = (0..nb)
        .flat_map(|v| (0..na).map(move |u| (v, u)))
        .map(|(v, u)| idx(shape.idempotent(v), base.idempotent(u)))
        .collect();
    let mut rad = Subspace::new(field, dim);
    for r in base.radical() {
        for s in 0..db {
            let mut v = vec![0u32; dim];
            for (a, &c) in r.iter().enumerate() {
                v[idx(s, a)] = c;
            }
            rad.insert(&v);
        }
    }
    for r in shape.radical() {
        for a in 0..da {
            let mut v = vec![0u32; dim];
            for (s, &c) in r.iter().enumerate() {
                v[idx(s, a)] = c;
            }
            rad.insert(&v);
        }
    }
    let mut generators = Vec::new();
    for v in 0..nb {
        for g in base.generators() {
            let mut element = vec![0u32; dim];
            for (a, &c) in g.element.iter().enumerate() {
                element[idx(shape.idempotent(v), a)] = c;
            }
            generators.push(Generator {
                label: format!("{}|{}", g.label, shape.vertex_label(v)),
                source: v * na + g.source,
                target: v * na + g.target,
                element,
            });
        }
    }
    for g in shape.generators() {
        for u in 0..na {
            let mut element = vec![0u32; dim];
            for (s, &c) in g.element.iter().enumerate() {
                element[idx(s, base.idempotent(u))] = c;
            }
            generators.push(Generator {
                label: format!("{}|{}", base.vertex_label(u), g.label),
                source: g.source * na + u,
                target: g.target * na + u,
                element,
            });
        }
    }
    let data = AlgebraData {
        name: format!("{}({})", kind.prefix(), base.name()),
        field,
        basis_labels,
        vertex_labels,
        idempotents,
        table,
    };
    StructAlgebra::build(
        data,
        Some((rad.basis().to_vec(), RadicalBackend::Tensor)),
        Some(generators),
        Origin::Tensor {
            base: base.clone(),
            shape,
            kind,
        },
    )
}
