//! Quivers with homogeneous relations and their bound path algebras.

use std::collections::HashMap;
use std::sync::Arc;

use super::{AlgebraData, Generator, Origin, RadicalBackend, StructAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{PrimeField, Subspace};

pub const DEFAULT_PATH_CUTOFF: usize = 30;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Quiver> {
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::InvalidQuiver(format!("duplicate vertex {v}")));
            }
        }
        for (i, a) in arrows.iter().enumerate() {
            if a.source >= vertices.len() || a.target >= vertices.len() {
                return Err(Error::InvalidQuiver(format!(
                    "arrow {} has a missing endpoint",
                    a.label
                )));
            }
            if arrows[..i].iter().any(|b| b.label == a.label) || a.label.is_empty() {
                return Err(Error::InvalidQuiver(format!(
                    "arrow label {:?} is not unique",
                    a.label
                )));
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    /// Builds a quiver from vertex names and `(label, source, target)` names.
    pub fn from_names(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Quiver> {
        let vs: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let find = |name: &str| {
            vs.iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::InvalidQuiver(format!("unknown vertex {name}")))
        };
        let arrows = arrows
            .iter()
            .map(|&(l, s, t)| {
                Ok(Arrow {
                    label: l.to_string(),
                    source: find(s)?,
                    target: find(t)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Quiver::new(vs, arrows)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    fn single_char_labels(&self) -> bool {
        self.arrows.iter().all(|a| a.label.chars().count() == 1)
    }

    /// Parses a path word. Arrows are separated by `*`; when every label is a
    /// single character they may also be juxtaposed. `x^3` repeats an arrow.
    pub fn parse_path(&self, word: &str) -> Result<Vec<usize>> {
        let word = word.trim();
        let pieces: Vec<String> = if word.contains('*') {
            word.split('*').map(|s| s.trim().to_string()).collect()
        } else if self.single_char_labels() {
            let mut out: Vec<String> = Vec::new();
            let chars: Vec<char> = word.chars().collect();
            let mut i = 0;
            while i < chars.len() {
                let mut tok = chars[i].to_string();
                i += 1;
                if i < chars.len() && chars[i] == '^' {
                    let start = i;
                    i += 1;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    tok.extend(&chars[start..i]);
                }
                out.push(tok);
            }
            out
        } else {
            vec![word.to_string()]
        };
        let mut path = Vec::new();
        for piece in pieces {
            let (label, times) = match piece.split_once('^') {
                Some((l, e)) => (
                    l.to_string(),
                    e.parse::<usize>().map_err(|_| {
                        Error::InadmissibleRelation(format!("bad exponent in {piece}"))
                    })?,
                ),
                None => (piece.clone(), 1),
            };
            let a = self
                .arrow_index(&label)
                .ok_or_else(|| Error::InadmissibleRelation(format!("unknown arrow {label}")))?;
            path.extend(std::iter::repeat(a).take(times));
        }
        if path.is_empty() {
            return Err(Error::InadmissibleRelation("empty path".into()));
        }
        for w in path.windows(2) {
            if self.arrows[w[0]].target != self.arrows[w[1]].source {
                return Err(Error::InadmissibleRelation(format!(
                    "{word} is not composable"
                )));
            }
        }
        Ok(path)
    }

    /// Writes a path in the form accepted by [`Quiver::parse_path`].
    pub fn path_word(&self, path: &[usize]) -> String {
        let labels: Vec<&str> = path
            .iter()
            .map(|&a| self.arrows[a].label.as_str())
            .collect();
        if self.single_char_labels() {
            labels.concat()
        } else {
            labels.join("*")
        }
    }
}

/// A linear combination of parallel paths of one common length >= 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(u32, Vec<usize>)>,
}

impl Relation {
    pub fn monomial(path: Vec<usize>) -> Relation {
        Relation {
            terms: vec![(1, path)],
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationSet {
    pub relations: Vec<Relation>,
}

impl RelationSet {
    pub fn new(relations: Vec<Relation>) -> Self {
        RelationSet { relations }
    }

    /// Zero relations given by path words.
    pub fn monomial_words(q: &Quiver, words: &[&str]) -> Result<RelationSet> {
        let relations = words
            .iter()
            .map(|w| q.parse_path(w).map(Relation::monomial))
            .collect::<Result<Vec<_>>>()?;
        Ok(RelationSet { relations })
    }

    fn validate(&self, q: &Quiver, field: PrimeField) -> Result<()> {
        for rel in &self.relations {
            let Some((_, first)) = rel.terms.first() else {
                return Err(Error::InadmissibleRelation("empty relation".into()));
            };
            if first.len() < 2 {
                return Err(Error::InadmissibleRelation(format!(
                    "{} has length < 2",
                    q.path_word(first)
                )));
            }
            let len = first.len();
            let src = q.arrows[first[0]].source;
            let dst = q.arrows[*first.last().unwrap()].target;
            for (c, path) in &rel.terms {
                let word = q.path_word(path);
                if path.len() < 2 {
                    return Err(Error::InadmissibleRelation(format!(
                        "{word} has length < 2"
                    )));
                }
                if path.len() != len {
                    return Err(Error::InadmissibleRelation(format!(
                        "{word}: terms of one relation must have equal length"
                    )));
                }
                if c % field.p() == 0 {
                    return Err(Error::InadmissibleRelation(format!(
                        "{word} has a zero coefficient"
                    )));
                }
                if path
                    .windows(2)
                    .any(|w| q.arrows[w[0]].target != q.arrows[w[1]].source)
                {
                    return Err(Error::InadmissibleRelation(format!(
                        "{word} is not composable"
                    )));
                }
                if q.arrows[path[0]].source != src || q.arrows[*path.last().unwrap()].target != dst
                {
                    return Err(Error::InadmissibleRelation(format!(
                        "{word} is not parallel to the others"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Graded normal forms: level `l` holds a basis of paths of length `l`
/// modulo the relation ideal, and `step` rewrites (basis path, arrow) into
/// the next level.
struct Levels {
    basis: Vec<Vec<(usize, Vec<usize>)>>,
    step: Vec<HashMap<(usize, usize), Vec<(usize, u32)>>>,
}

impl Levels {
    /// Normal form at level `path.len()` of a path starting at `source`.
    fn normal_form(
        &self,
        q: &Quiver,
        field: PrimeField,
        source: usize,
        path: &[usize],
    ) -> Vec<(usize, u32)> {
        let mut cur = vec![(source, 1u32)];
        for (l, &a) in path.iter().enumerate() {
            if l + 1 >= self.basis.len() {
                return Vec::new();
            }
            let mut acc: HashMap<usize, u32> = HashMap::new();
            for &(b, c) in &cur {
                let (bsrc, bpath) = &self.basis[l][b];
                let end = bpath.last().map_or(*bsrc, |&x| q.arrows[x].target);
                if end != q.arrows[a].source {
                    continue;
                }
                if let Some(nf) = self.step[l + 1].get(&(b, a)) {
                    for &(k, d) in nf {
                        let e = acc.entry(k).or_insert(0);
                        *e = field.add(*e, field.mul(c, d));
                    }
                }
            }
            cur = acc.into_iter().filter(|&(_, c)| c != 0).collect();
            cur.sort_unstable();
            if cur.is_empty() {
                return cur;
            }
        }
        cur
    }
}

/// The path algebra of `q` over F_p modulo the ideal generated by `rel`.
/// Relations must be homogeneous in path length.
pub fn bound_quiver_algebra(
    name: &str,
    q: &Quiver,
    rel: &RelationSet,
    field: PrimeField,
    cutoff: usize,
) -> Result<Arc<StructAlgebra>> {
    rel.validate(q, field)?;
    let nv = q.vertices.len();
    let mut levels = Levels {
        basis: vec![(0..nv).map(|v| (v, Vec::new())).collect()],
        step: vec![HashMap::new()],
    };
    let end_of = |src: usize, path: &[usize]| path.last().map_or(src, |&a| q.arrows[a].target);
    let mut l = 1;
    loop {
        let prev = &levels.basis[l - 1];
        let mut candidates: Vec<(usize, usize)> = Vec::new();
        for (b, (src, path)) in prev.iter().enumerate() {
            let end = end_of(*src, path);
            for (a, arrow) in q.arrows.iter().enumerate() {
                if arrow.source == end {
                    candidates.push((b, a));
                }
            }
        }
        if candidates.is_empty() {
            break;
        }
        if l > cutoff {
            return Err(Error::InfiniteDimensional { cutoff });
        }
        let cand_index: HashMap<(usize, usize), usize> = candidates
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, i))
            .collect();
        let nc = candidates.len();
        // expresses a length-l path in candidate coordinates
        let in_candidates = |src: usize, path: &[usize]| -> Vec<u32> {
            let mut v = vec![0u32; nc];
            let (head, last) = path.split_at(path.len() - 1);
            for (b, c) in levels.normal_form(q, field, src, head) {
                if let Some(&i) = cand_index.get(&(b, last[0])) {
                    v[i] = field.add(v[i], c);
                }
            }
            v
        };
        let mut relations = Subspace::new(field, nc);
        for r in &rel.relations {
            let d = r.terms[0].1.len();
            if d > l {
                continue;
            }
            let rsrc = q.arrows[r.terms[0].1[0]].source;
            let rdst = q.arrows[*r.terms[0].1.last().unwrap()].target;
            for i in 0..=(l - d) {
                let j = l - d - i;
                if i >= levels.basis.len() || j >= levels.basis.len() {
                    continue;
                }
                for (psrc, ppath) in &levels.basis[i] {
                    if end_of(*psrc, ppath) != rsrc {
                        continue;
                    }
                    for (qsrc, qpath) in &levels.basis[j] {
                        if *qsrc != rdst {
                            continue;
                        }
                        let mut v = vec![0u32; nc];
                        for (c, term) in &r.terms {
                            let mut full = ppath.clone();
                            full.extend_from_slice(term);
                            full.extend_from_slice(qpath);
                            let t = in_candidates(*psrc, &full);
                            for (x, y) in v.iter_mut().zip(t) {
                                *x = field.add(*x, field.mul(*c, y));
                            }
                        }
                        relations.insert(&v);
                    }
                }
            }
        }
        let survivors = relations.complement_coordinates();
        let position: HashMap<usize, usize> =
            survivors.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let mut step = HashMap::new();
        for (i, &cand) in candidates.iter().enumerate() {
            let mut unit = vec![0u32; nc];
            unit[i] = 1;
            let reduced = relations.reduce(&unit);
            let nf: Vec<(usize, u32)> = reduced
                .iter()
                .enumerate()
                .filter(|&(_, &c)| c != 0)
                .map(|(k, &c)| (position[&k], c))
                .collect();
            step.insert(cand, nf);
        }
        let basis: Vec<(usize, Vec<usize>)> = survivors
            .iter()
            .map(|&k| {
                let (b, a) = candidates[k];
                let (src, path) = &levels.basis[l - 1][b];
                let mut p = path.clone();
                p.push(a);
                (*src, p)
            })
            .collect();
        if basis.is_empty() {
            break;
        }
        levels.basis.push(basis);
        levels.step.push(step);
        l += 1;
    }

    let mut offsets = Vec::new();
    let mut paths: Vec<(usize, Vec<usize>)> = Vec::new();
    for lev in &levels.basis {
        offsets.push(paths.len());
        paths.extend(lev.iter().cloned());
    }
    let dim = paths.len();
    let mut table = vec![Vec::new(); dim * dim];
    for x in 0..dim {
        let (xs, xp) = &paths[x];
        let xe = end_of(*xs, xp);
        for y in 0..dim {
            let (ys, yp) = &paths[y];
            if *ys != xe {
                continue;
            }
            let mut full = xp.clone();
            full.extend_from_slice(yp);
            let total = full.len();
            if total >= levels.basis.len() {
                continue;
            }
            let nf = levels.normal_form(q, field, *xs, &full);
            table[x * dim + y] = nf
                .into_iter()
                .map(|(k, c)| (offsets[total] + k, c))
                .collect();
        }
    }
    let basis_labels: Vec<String> = paths
        .iter()
        .map(|(s, p)| {
            if p.is_empty() {
                format!("e{}", q.vertices[*s])
            } else {
                q.path_word(p)
            }
        })
        .collect();
    let radical: Vec<Vec<u32>> = (nv..dim)
        .map(|i| {
            let mut v = vec![0u32; dim];
            v[i] = 1;
            v
        })
        .collect();
    let generators: Vec<Generator> = q
        .arrows
        .iter()
        .enumerate()
        .map(|(a, arrow)| {
            let idx = paths
                .iter()
                .position(|(s, p)| *s == arrow.source && p.as_slice() == [a])
                .expect("arrows survive admissible relations");
            let mut element = vec![0u32; dim];
            element[idx] = 1;
            Generator {
                label: arrow.label.clone(),
                source: arrow.source,
                target: arrow.target,
                element,
            }
        })
        .collect();
    let data = AlgebraData {
        name: name.to_string(),
        field,
        basis_labels,
        vertex_labels: q.vertices.clone(),
        idempotents: (0..nv).collect(),
        table,
    };
    StructAlgebra::build(
        data,
        Some((radical, RadicalBackend::ArrowIdeal)),
        Some(generators),
        Origin::BoundQuiver {
            quiver: q.clone(),
            relations: rel.clone(),
            paths,
        },
    )
}
