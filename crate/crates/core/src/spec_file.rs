//! Plain-text algebra and module definitions.
//!
//! ```text
//! # Kronecker quiver with a commutativity-style relation
//! algebra K
//!   prime 3
//!   vertices 1 2
//!   arrow a 1 2
//!   arrow b 2 1
//!   arrow c 1 2
//!   relation a*b - 2 c*b
//!   relation b*a
//!   relation b*c
//! end
//! algebra TK = T(3) of K
//! module S over K
//!   dims 1 1
//!   action a : 1
//! end
//! ```
//!
//! Module actions are keyed by generator label (arrow labels for bound
//! quivers); an omitted action is zero. Matrix rows are separated by `;`.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{
    bound_quiver_algebra, linear_path_algebra, selfinjective_nakayama, tensor_with_shape,
    truncated_polynomial, Origin, Quiver, Relation, RelationSet, ShapeKind, StructAlgebra,
    DEFAULT_PATH_CUTOFF,
};
use crate::error::{Error, Result};
use crate::linalg::{FpMatrix, PrimeField};
use crate::module::Module;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverDef {
    pub prime: Option<u32>,
    pub cutoff: Option<usize>,
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, String, String)>,
    /// each relation is a list of (coefficient, path word)
    pub relations: Vec<Vec<(i64, String)>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraDef {
    Quiver(QuiverDef),
    Derived { kind: ShapeKind, base: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleDef {
    pub over: String,
    pub dims: Vec<usize>,
    pub actions: Vec<(String, Vec<Vec<i64>>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Algebra { name: String, def: AlgebraDef },
    Module { name: String, def: ModuleDef },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpecFile {
    pub items: Vec<Item>,
    /// source line of each item, for error reporting
    lines: Vec<usize>,
}

/// Algebras and modules built from a spec file.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub algebras: Vec<(String, Arc<StructAlgebra>)>,
    pub modules: Vec<(String, Module)>,
}

impl Workspace {
    pub fn algebra(&self, name: &str) -> Result<&Arc<StructAlgebra>> {
        self.algebras
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, a)| a)
            .ok_or_else(|| Error::Unknown(name.to_string()))
    }

    pub fn module(&self, name: &str) -> Result<&Module> {
        self.modules
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m)
            .ok_or_else(|| Error::Unknown(name.to_string()))
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_shape(directive: &str) -> Option<ShapeKind> {
    match directive {
        "A3" => Some(ShapeKind::A3),
        "S3" => Some(ShapeKind::S3),
        _ => {
            let n = directive
                .strip_prefix("T(")?
                .strip_suffix(')')?
                .parse()
                .ok()?;
            Some(ShapeKind::Triangular(n))
        }
    }
}

fn shape_directive(kind: ShapeKind) -> String {
    match kind {
        ShapeKind::Triangular(n) => format!("T({n})"),
        ShapeKind::A3 => "A3".into(),
        ShapeKind::S3 => "S3".into(),
    }
}

/// `T(3) of G`, `A3 of G` or `S3 of G`.
fn parse_directive(text: &str, line: usize) -> Result<AlgebraDef> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    match toks.as_slice() {
        [shape, "of", base] => {
            let kind = parse_shape(shape)
                .ok_or_else(|| parse_err(line, format!("unknown construction {shape}")))?;
            if kind == ShapeKind::Triangular(0) {
                return Err(parse_err(line, "T(n) needs n >= 1"));
            }
            Ok(AlgebraDef::Derived {
                kind,
                base: base.to_string(),
            })
        }
        _ => Err(parse_err(
            line,
            format!("expected `<construction> of <name>`, found {text:?}"),
        )),
    }
}

fn parse_relation(text: &str, line: usize) -> Result<Vec<(i64, String)>> {
    let mut terms = Vec::new();
    let mut sign = 1i64;
    let mut coeff: Option<i64> = None;
    let mut expect_term = true;
    for tok in text.split_whitespace() {
        match tok {
            "+" | "-" => {
                if expect_term && !terms.is_empty() {
                    return Err(parse_err(line, "dangling operator in relation"));
                }
                if tok == "-" {
                    sign = -sign;
                }
                expect_term = true;
            }
            _ => {
                if let Ok(c) = tok.parse::<i64>() {
                    if coeff.is_some() {
                        return Err(parse_err(line, "two coefficients in a row"));
                    }
                    coeff = Some(c);
                } else {
                    if !expect_term {
                        return Err(parse_err(line, format!("missing operator before {tok}")));
                    }
                    terms.push((sign * coeff.unwrap_or(1), tok.to_string()));
                    sign = 1;
                    coeff = None;
                    expect_term = false;
                }
            }
        }
    }
    if terms.is_empty() || expect_term || coeff.is_some() {
        return Err(parse_err(line, "relation must end with a path"));
    }
    Ok(terms)
}

fn parse_matrix(text: &str, line: usize) -> Result<Vec<Vec<i64>>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(';')
        .map(|row| {
            row.split_whitespace()
                .map(|x| {
                    x.parse::<i64>()
                        .map_err(|_| parse_err(line, format!("bad matrix entry {x}")))
                })
                .collect()
        })
        .collect()
}

fn strip_comment(raw: &str) -> &str {
    raw.split('#').next().unwrap_or("").trim()
}

impl SpecFile {
    pub fn parse(text: &str) -> Result<SpecFile> {
        let mut out = SpecFile::default();
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, strip_comment(l)))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        let mut i = 0;
        while i < lines.len() {
            let (ln, l) = lines[i];
            let (head, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
            match head {
                "algebra" => {
                    if let Some((name, directive)) = rest.split_once('=') {
                        let name = single_name(name, ln)?;
                        out.push(
                            ln,
                            Item::Algebra {
                                name,
                                def: parse_directive(directive, ln)?,
                            },
                        );
                        i += 1;
                        continue;
                    }
                    let name = single_name(rest, ln)?;
                    let (def, next) = parse_quiver_block(&lines, i + 1, ln)?;
                    out.push(ln, Item::Algebra { name, def });
                    i = next;
                }
                "module" => {
                    let toks: Vec<&str> = rest.split_whitespace().collect();
                    let [name, "over", over] = toks.as_slice() else {
                        return Err(parse_err(ln, "expected `module <name> over <algebra>`"));
                    };
                    let (def, next) = parse_module_block(&lines, i + 1, ln, over)?;
                    out.push(
                        ln,
                        Item::Module {
                            name: name.to_string(),
                            def,
                        },
                    );
                    i = next;
                }
                _ => {
                    return Err(parse_err(
                        ln,
                        format!("expected `algebra` or `module`, found {head:?}"),
                    ))
                }
            }
        }
        for (k, item) in out.items.iter().enumerate() {
            if out.items[..k].iter().any(|o| o.name() == item.name()) {
                return Err(parse_err(
                    out.lines[k],
                    format!("{} is defined twice", item.name()),
                ));
            }
        }
        Ok(out)
    }

    fn push(&mut self, line: usize, item: Item) {
        self.items.push(item);
        self.lines.push(line);
    }

    /// Builds every item in order. `prime` overrides the primes in the file;
    /// without either the field is F_2.
    pub fn resolve(&self, prime: Option<PrimeField>) -> Result<Workspace> {
        let mut ws = Workspace::default();
        for (item, &line) in self.items.iter().zip(&self.lines) {
            let at = |e: Error| match e {
                Error::Parse { .. } => e,
                other => parse_err(line, other.to_string()),
            };
            match item {
                Item::Algebra { name, def } => {
                    let alg = build_algebra(name, def, prime, &ws).map_err(at)?;
                    ws.algebras.push((name.clone(), alg));
                }
                Item::Module { name, def } => {
                    let alg = ws.algebra(&def.over).map_err(at)?.clone();
                    let m = build_module(&alg, def).map_err(at)?;
                    ws.modules.push((name.clone(), m));
                }
            }
        }
        Ok(ws)
    }

    /// Definitions reproducing `algebra` (and, for constructions, its base).
    pub fn from_algebra(algebra: &StructAlgebra) -> Result<SpecFile> {
        let mut out = SpecFile::default();
        add_algebra(&mut out, algebra)?;
        Ok(out)
    }

    /// Appends a module literal over an algebra already in the file.
    pub fn add_module(&mut self, name: &str, over: &str, m: &Module) {
        let gens = m.algebra().generators();
        let actions = gens
            .iter()
            .zip(m.generator_actions())
            .filter(|(_, a)| !a.is_zero())
            .map(|(g, a)| {
                let rows = (0..a.rows())
                    .map(|r| a.row(r).iter().map(|&x| x as i64).collect())
                    .collect();
                (g.label.clone(), rows)
            })
            .collect();
        let line = self.lines.last().map_or(1, |l| l + 1);
        self.push(
            line,
            Item::Module {
                name: name.to_string(),
                def: ModuleDef {
                    over: over.to_string(),
                    dims: m.dims().to_vec(),
                    actions,
                },
            },
        );
    }
}

impl Item {
    pub fn name(&self) -> &str {
        match self {
            Item::Algebra { name, .. } | Item::Module { name, .. } => name,
        }
    }
}

fn single_name(text: &str, line: usize) -> Result<String> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    match toks.as_slice() {
        [name] => Ok(name.to_string()),
        _ => Err(parse_err(
            line,
            format!("expected a single name, found {:?}", text.trim()),
        )),
    }
}

fn parse_quiver_block(
    lines: &[(usize, &str)],
    mut i: usize,
    open: usize,
) -> Result<(AlgebraDef, usize)> {
    let mut def = QuiverDef {
        prime: None,
        cutoff: None,
        vertices: Vec::new(),
        arrows: Vec::new(),
        relations: Vec::new(),
    };
    let mut seen_vertices = false;
    while i < lines.len() {
        let (ln, l) = lines[i];
        i += 1;
        let (key, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        let toks: Vec<&str> = rest.split_whitespace().collect();
        match key {
            "end" => {
                if !seen_vertices {
                    return Err(parse_err(open, "algebra block without `vertices`"));
                }
                return Ok((AlgebraDef::Quiver(def), i));
            }
            "prime" => {
                let [p] = toks.as_slice() else {
                    return Err(parse_err(ln, "expected `prime <p>`"));
                };
                def.prime = Some(
                    p.parse()
                        .map_err(|_| parse_err(ln, format!("bad prime {p}")))?,
                );
            }
            "cutoff" => {
                let [c] = toks.as_slice() else {
                    return Err(parse_err(ln, "expected `cutoff <n>`"));
                };
                def.cutoff = Some(
                    c.parse()
                        .map_err(|_| parse_err(ln, format!("bad cutoff {c}")))?,
                );
            }
            "vertices" => {
                if seen_vertices {
                    return Err(parse_err(ln, "vertices given twice"));
                }
                seen_vertices = true;
                def.vertices = toks.iter().map(|s| s.to_string()).collect();
            }
            "arrow" => {
                let [label, src, dst] = toks.as_slice() else {
                    return Err(parse_err(ln, "expected `arrow <label> <source> <target>`"));
                };
                for v in [src, dst] {
                    if seen_vertices && !def.vertices.iter().any(|w| w == v) {
                        return Err(parse_err(ln, format!("unknown vertex {v}")));
                    }
                }
                def.arrows
                    .push((label.to_string(), src.to_string(), dst.to_string()));
            }
            "relation" => def.relations.push(parse_relation(rest, ln)?),
            _ => return Err(parse_err(ln, format!("unknown field {key:?}"))),
        }
    }
    Err(parse_err(open, "algebra block is missing `end`"))
}

fn parse_module_block(
    lines: &[(usize, &str)],
    mut i: usize,
    open: usize,
    over: &str,
) -> Result<(ModuleDef, usize)> {
    let mut def = ModuleDef {
        over: over.to_string(),
        dims: Vec::new(),
        actions: Vec::new(),
    };
    let mut seen_dims = false;
    while i < lines.len() {
        let (ln, l) = lines[i];
        i += 1;
        let (key, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        match key {
            "end" => {
                if !seen_dims {
                    return Err(parse_err(open, "module block without `dims`"));
                }
                return Ok((def, i));
            }
            "dims" => {
                seen_dims = true;
                def.dims = rest
                    .split_whitespace()
                    .map(|d| {
                        d.parse()
                            .map_err(|_| parse_err(ln, format!("bad dimension {d}")))
                    })
                    .collect::<Result<_>>()?;
            }
            "action" => {
                let (label, mat) = rest
                    .split_once(':')
                    .ok_or_else(|| parse_err(ln, "expected `action <generator> : <rows>`"))?;
                let label = single_name(label, ln)?;
                if def.actions.iter().any(|(l, _)| *l == label) {
                    return Err(parse_err(ln, format!("action {label} given twice")));
                }
                def.actions.push((label, parse_matrix(mat, ln)?));
            }
            _ => return Err(parse_err(ln, format!("unknown field {key:?}"))),
        }
    }
    Err(parse_err(open, "module block is missing `end`"))
}

fn build_algebra(
    name: &str,
    def: &AlgebraDef,
    prime: Option<PrimeField>,
    ws: &Workspace,
) -> Result<Arc<StructAlgebra>> {
    match def {
        AlgebraDef::Derived { kind, base } => tensor_with_shape(ws.algebra(base)?, *kind),
        AlgebraDef::Quiver(q) => {
            let field = match (prime, q.prime) {
                (Some(f), _) => f,
                (None, Some(p)) => PrimeField::new(p)?,
                (None, None) => PrimeField::binary(),
            };
            let vs: Vec<&str> = q.vertices.iter().map(|s| s.as_str()).collect();
            let arrows: Vec<(&str, &str, &str)> = q
                .arrows
                .iter()
                .map(|(a, s, t)| (a.as_str(), s.as_str(), t.as_str()))
                .collect();
            let quiver = Quiver::from_names(&vs, &arrows)?;
            let relations = q
                .relations
                .iter()
                .map(|terms| {
                    let terms = terms
                        .iter()
                        .map(|(c, w)| Ok((field.reduce(*c), quiver.parse_path(w)?)))
                        .collect::<Result<_>>()?;
                    Ok(Relation { terms })
                })
                .collect::<Result<Vec<_>>>()?;
            bound_quiver_algebra(
                name,
                &quiver,
                &RelationSet::new(relations),
                field,
                q.cutoff.unwrap_or(DEFAULT_PATH_CUTOFF),
            )
        }
    }
}

fn build_module(alg: &Arc<StructAlgebra>, def: &ModuleDef) -> Result<Module> {
    let f = alg.field();
    if def.dims.len() != alg.num_vertices() {
        return Err(Error::InvalidModule(format!(
            "{} dimensions for {} vertices",
            def.dims.len(),
            alg.num_vertices()
        )));
    }
    let gens = alg.generators();
    for (label, _) in &def.actions {
        if gens.iter().filter(|g| g.label == *label).count() != 1 {
            return Err(Error::Unknown(format!("generator {label}")));
        }
    }
    let actions = gens
        .iter()
        .map(|g| {
            let (rows, cols) = (def.dims[g.target], def.dims[g.source]);
            match def.actions.iter().find(|(l, _)| *l == g.label) {
                None => Ok(FpMatrix::zeros(f, rows, cols)),
                Some((_, m)) if m.is_empty() => Ok(FpMatrix::zeros(f, rows, cols)),
                Some((_, m)) => {
                    let mat = FpMatrix::from_rows(f, m)?;
                    if mat.rows() != rows || mat.cols() != cols {
                        return Err(Error::Shape(format!(
                            "action {} must be {rows}x{cols}, found {}x{}",
                            g.label,
                            mat.rows(),
                            mat.cols()
                        )));
                    }
                    Ok(mat)
                }
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Module::new(alg.clone(), def.dims.clone(), actions)
}

fn add_algebra(out: &mut SpecFile, alg: &StructAlgebra) -> Result<()> {
    if out.items.iter().any(|i| i.name() == alg.name()) {
        return Ok(());
    }
    let def = match alg.origin() {
        Origin::BoundQuiver {
            quiver, relations, ..
        } => {
            let p = alg.field().p();
            AlgebraDef::Quiver(QuiverDef {
                prime: Some(p),
                cutoff: None,
                vertices: quiver.vertices().to_vec(),
                arrows: quiver
                    .arrows()
                    .iter()
                    .map(|a| {
                        (
                            a.label.clone(),
                            quiver.vertices()[a.source].clone(),
                            quiver.vertices()[a.target].clone(),
                        )
                    })
                    .collect(),
                relations: relations
                    .relations
                    .iter()
                    .map(|r| {
                        r.terms
                            .iter()
                            .map(|(c, path)| (signed(*c, p), quiver.path_word(path)))
                            .collect()
                    })
                    .collect(),
            })
        }
        Origin::Tensor { base, kind, .. } => {
            add_algebra(out, base)?;
            AlgebraDef::Derived {
                kind: *kind,
                base: base.name().to_string(),
            }
        }
        _ => {
            return Err(Error::InvalidAlgebra(format!(
                "{} has no spec-file form",
                alg.name()
            )))
        }
    };
    let line = out.lines.last().map_or(1, |l| l + 1);
    out.push(
        line,
        Item::Algebra {
            name: alg.name().to_string(),
            def,
        },
    );
    Ok(())
}

/// `p - 1` prints as `-1`.
fn signed(c: u32, p: u32) -> i64 {
    if c == p - 1 && p > 2 {
        -1
    } else {
        c as i64
    }
}

impl fmt::Display for SpecFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            match item {
                Item::Algebra {
                    name,
                    def: AlgebraDef::Derived { kind, base },
                } => writeln!(f, "algebra {name} = {} of {base}", shape_directive(*kind))?,
                Item::Algebra {
                    name,
                    def: AlgebraDef::Quiver(q),
                } => {
                    writeln!(f, "algebra {name}")?;
                    if let Some(p) = q.prime {
                        writeln!(f, "  prime {p}")?;
                    }
                    if let Some(c) = q.cutoff {
                        writeln!(f, "  cutoff {c}")?;
                    }
                    writeln!(f, "  vertices {}", q.vertices.join(" "))?;
                    for (a, s, t) in &q.arrows {
                        writeln!(f, "  arrow {a} {s} {t}")?;
                    }
                    for rel in &q.relations {
                        write!(f, "  relation")?;
                        for (k, (c, w)) in rel.iter().enumerate() {
                            let (op, mag) = if *c < 0 { ("-", -c) } else { ("+", *c) };
                            if k > 0 {
                                write!(f, " {op}")?;
                            } else if *c < 0 {
                                write!(f, " -")?;
                            }
                            if mag == 1 {
                                write!(f, " {w}")?;
                            } else {
                                write!(f, " {mag} {w}")?;
                            }
                        }
                        writeln!(f)?;
                    }
                    writeln!(f, "end")?;
                }
                Item::Module { name, def } => {
                    writeln!(f, "module {name} over {}", def.over)?;
                    let dims: Vec<String> = def.dims.iter().map(|d| d.to_string()).collect();
                    writeln!(f, "  dims {}", dims.join(" "))?;
                    for (label, rows) in &def.actions {
                        let rows: Vec<String> = rows
                            .iter()
                            .map(|r| {
                                r.iter()
                                    .map(|x| x.to_string())
                                    .collect::<Vec<_>>()
                                    .join(" ")
                            })
                            .collect();
                        writeln!(f, "  action {label} : {}", rows.join(" ; "))?;
                    }
                    writeln!(f, "end")?;
                }
            }
        }
        Ok(())
    }
}

/// Algebras addressable by name without a spec file: `k`, `k[x]/(x^n)`,
/// `A(n,t)`, `kA<n>` and the constructions `T<n>(..)`, `A3(..)`, `S3(..)`
/// around any of these.
pub fn named_algebra(name: &str, field: PrimeField) -> Result<Arc<StructAlgebra>> {
    let unknown = || Error::Unknown(name.to_string());
    let name = name.trim();
    for (prefix, kind) in [("A3(", ShapeKind::A3), ("S3(", ShapeKind::S3)] {
        if let Some(inner) = name.strip_prefix(prefix).and_then(|s| s.strip_suffix(')')) {
            return tensor_with_shape(&named_algebra(inner, field)?, kind);
        }
    }
    if let Some(rest) = name.strip_prefix('T') {
        if let Some(open) = rest.find('(') {
            if let (Ok(n), Some(inner)) = (
                rest[..open].parse::<usize>(),
                rest[open + 1..].strip_suffix(')'),
            ) {
                if n == 0 {
                    return Err(Error::InvalidAlgebra("T_n needs n >= 1".into()));
                }
                return tensor_with_shape(&named_algebra(inner, field)?, ShapeKind::Triangular(n));
            }
        }
    }
    if name == "k" {
        return linear_path_algebra(field, 1);
    }
    if let Some(n) = name
        .strip_prefix("k[x]/(x^")
        .and_then(|s| s.strip_suffix(')'))
    {
        return truncated_polynomial(field, n.parse().map_err(|_| unknown())?);
    }
    if let Some(args) = name.strip_prefix("A(").and_then(|s| s.strip_suffix(')')) {
        let (n, t) = args.split_once(',').ok_or_else(unknown)?;
        let n = n.trim().parse().map_err(|_| unknown())?;
        let t = t.trim().parse().map_err(|_| unknown())?;
        return selfinjective_nakayama(field, n, t);
    }
    if let Some(n) = name.strip_prefix("kA") {
        return linear_path_algebra(field, n.parse().map_err(|_| unknown())?);
    }
    Err(unknown())
}
