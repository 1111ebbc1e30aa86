//! Plain-text certificate bundle: one directory, one file per component.
//!
//! Every array is written with an explicit leading count and rationals use
//! the `[-]num[/den]` syntax. Loading checks shapes and that the manifest
//! counts match the files, but none of the semantic invariants; those are
//! the verifier's job.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::Path;

use crate::certificate::{
    BoundednessWitness, CertificateBundle, DimensionWitness, LexGraph, LexLabel, MorphismWitness, VertGraph,
};
use crate::error::{Error, Result};
use crate::exactnum::{parse_rat, Rat, RatMatrix, RatVector};
use crate::graphcore::{GraphStruct, LabeledGraph};
use crate::polytope::{Basis, HPolytope, PertPoint};

pub const FORMAT_VERSION: u32 = 1;

pub const FILES: [&str; 12] = [
    "polytope.poly",
    "g_lex.txt",
    "lbl_lex.txt",
    "g_vert.txt",
    "lbl_vert.txt",
    "morph.txt",
    "morph_inv.txt",
    "edge_inv.txt",
    "dim.txt",
    "bounded.txt",
    "start.txt",
    "manifest.txt",
];

fn bundle_err(file: &str, line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Invalid(format!("{file}:{line}: {msg}"))
}

/// Whitespace tokens of a file, each tagged with its line number.
struct Tokens<'a> {
    file: &'a str,
    toks: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Tokens<'a> {
    fn new(file: &'a str, text: &'a str) -> Self {
        let toks = text
            .lines()
            .enumerate()
            .flat_map(|(i, l)| l.split_whitespace().map(move |t| (i + 1, t)))
            .collect();
        Tokens { file, toks, pos: 0 }
    }

    fn line(&self) -> usize {
        self.toks
            .get(self.pos)
            .or(self.toks.last())
            .map_or(1, |t| t.0)
    }

    fn next_str(&mut self) -> Result<&'a str> {
        let t = self
            .toks
            .get(self.pos)
            .ok_or_else(|| bundle_err(self.file, self.line(), "unexpected end of file"))?;
        self.pos += 1;
        Ok(t.1)
    }

    fn usize(&mut self) -> Result<usize> {
        let line = self.line();
        let t = self.next_str()?;
        t.parse().map_err(|_| bundle_err(self.file, line, format!("expected an index, found {t:?}")))
    }

    fn rat(&mut self) -> Result<Rat> {
        let line = self.line();
        let t = self.next_str()?;
        parse_rat(t).map_err(|e| bundle_err(self.file, line, e))
    }

    fn rats(&mut self, k: usize) -> Result<Vec<Rat>> {
        (0..k).map(|_| self.rat()).collect()
    }

    fn usizes(&mut self, k: usize) -> Result<Vec<usize>> {
        (0..k).map(|_| self.usize()).collect()
    }

    fn expect_word(&mut self, word: &str) -> Result<()> {
        let line = self.line();
        let t = self.next_str()?;
        if t != word {
            return Err(bundle_err(self.file, line, format!("expected {word:?}, found {t:?}")));
        }
        Ok(())
    }

    fn finish(&self) -> Result<()> {
        if self.pos != self.toks.len() {
            return Err(bundle_err(self.file, self.toks[self.pos].0, "trailing data"));
        }
        Ok(())
    }
}

/// Caps preallocation from counts read out of untrusted files.
fn cap(k: usize) -> usize {
    k.min(1 << 16)
}

fn write_graph(g: &GraphStruct) -> String {
    let mut s = format!("{}\n", g.vertex_count());
    for list in &g.adj {
        write!(s, "{}", list.len()).unwrap();
        for v in list {
            write!(s, " {v}").unwrap();
        }
        s.push('\n');
    }
    s
}

fn read_graph(t: &mut Tokens) -> Result<GraphStruct> {
    let v = t.usize()?;
    let mut adj = Vec::with_capacity(cap(v));
    for _ in 0..v {
        let deg = t.usize()?;
        adj.push(t.usizes(deg)?);
    }
    t.finish()?;
    Ok(GraphStruct::new(adj))
}

fn write_rats<'a>(s: &mut String, vals: impl IntoIterator<Item = &'a Rat>) {
    let mut first = true;
    for x in vals {
        if !first {
            s.push(' ');
        }
        first = false;
        write!(s, "{x}").unwrap();
    }
    s.push('\n');
}

fn write_usizes(s: &mut String, vals: &[usize]) {
    writeln!(s, "{}", vals.len()).unwrap();
    let parts: Vec<String> = vals.iter().map(usize::to_string).collect();
    writeln!(s, "{}", parts.join(" ")).unwrap();
}

fn read_usizes(t: &mut Tokens) -> Result<Vec<usize>> {
    let k = t.usize()?;
    let v = t.usizes(k)?;
    t.finish()?;
    Ok(v)
}

fn write_lex_labels(labels: &[LexLabel], n: usize, m: usize) -> String {
    let mut s = format!("{} {n} {m}\n", labels.len());
    for l in labels {
        write!(s, "{}", l.basis.len()).unwrap();
        for i in l.basis.indices() {
            write!(s, " {i}").unwrap();
        }
        s.push('\n');
        let x = l.point.matrix();
        writeln!(s, "{} {}", x.rows(), x.cols()).unwrap();
        for r in 0..x.rows() {
            write_rats(&mut s, x.row(r));
        }
    }
    s
}

fn read_lex_labels(t: &mut Tokens) -> Result<Vec<LexLabel>> {
    let count = t.usize()?;
    let _n = t.usize()?;
    let _m = t.usize()?;
    let mut out = Vec::with_capacity(cap(count));
    for _ in 0..count {
        let k = t.usize()?;
        let basis = Basis::from_raw(t.usizes(k)?);
        let rows = t.usize()?;
        let cols = t.usize()?;
        let data = t.rats(rows.saturating_mul(cols))?;
        let x = RatMatrix::from_vec(rows, cols, data)?;
        out.push(LexLabel {
            basis,
            point: PertPoint(x),
        });
    }
    t.finish()?;
    Ok(out)
}

fn write_vert_labels(labels: &[RatVector], n: usize) -> String {
    let mut s = format!("{} {n}\n", labels.len());
    for l in labels {
        write_rats(&mut s, l.iter());
    }
    s
}

fn read_vert_labels(t: &mut Tokens) -> Result<Vec<RatVector>> {
    let count = t.usize()?;
    let n = t.usize()?;
    let out = (0..count).map(|_| t.rats(n).map(RatVector)).collect::<Result<_>>()?;
    t.finish()?;
    Ok(out)
}

fn write_edge_inv(e: &[(usize, usize)]) -> String {
    let mut s = format!("{}\n", e.len());
    for (i, j) in e {
        writeln!(s, "{i} {j}").unwrap();
    }
    s
}

fn read_edge_inv(t: &mut Tokens) -> Result<Vec<(usize, usize)>> {
    let k = t.usize()?;
    let out = (0..k).map(|_| Ok((t.usize()?, t.usize()?))).collect::<Result<_>>()?;
    t.finish()?;
    Ok(out)
}

fn write_dim(d: &DimensionWitness) -> String {
    let mut s = format!("{}\n", d.origin);
    write_usizes(&mut s, &d.map_lbl);
    writeln!(s, "{} {}", d.inv_lbl.rows(), d.inv_lbl.cols()).unwrap();
    for r in 0..d.inv_lbl.rows() {
        write_rats(&mut s, d.inv_lbl.row(r));
    }
    s
}

fn read_dim(t: &mut Tokens) -> Result<DimensionWitness> {
    let origin = t.usize()?;
    let k = t.usize()?;
    let map_lbl = t.usizes(k)?;
    let rows = t.usize()?;
    let cols = t.usize()?;
    let inv_lbl = RatMatrix::from_vec(rows, cols, t.rats(rows.saturating_mul(cols))?)?;
    t.finish()?;
    Ok(DimensionWitness { origin, map_lbl, inv_lbl })
}

fn write_bounded(b: &BoundednessWitness, m: usize) -> String {
    let mut s = format!("{} {m}\n", b.combos.len());
    for (slot, y) in b.combos.iter().enumerate() {
        write!(s, "{} {} ", slot / 2, if slot % 2 == 0 { '+' } else { '-' }).unwrap();
        write_rats(&mut s, y.iter());
    }
    writeln!(s, "K {}", b.bound).unwrap();
    s
}

fn read_bounded(t: &mut Tokens) -> Result<BoundednessWitness> {
    let count = t.usize()?;
    let m = t.usize()?;
    let mut combos = Vec::with_capacity(cap(count));
    for slot in 0..count {
        let line = t.line();
        let coord = t.usize()?;
        let sign = t.next_str()?;
        let want = if slot % 2 == 0 { "+" } else { "-" };
        if coord != slot / 2 || sign != want {
            return Err(bundle_err(t.file, line, format!("expected combination \"{} {want}\"", slot / 2)));
        }
        combos.push(RatVector(t.rats(m)?));
    }
    t.expect_word("K")?;
    let bound = t.rat()?;
    t.finish()?;
    Ok(BoundednessWitness { combos, bound })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Manifest {
    pub format_version: u32,
    pub m: usize,
    pub n: usize,
    pub lex_vertices: usize,
    pub lex_edges: usize,
    pub vertices: usize,
    pub edges: usize,
}

impl Manifest {
    pub fn of(c: &CertificateBundle) -> Self {
        Manifest {
            format_version: FORMAT_VERSION,
            m: c.polytope.m(),
            n: c.polytope.n(),
            lex_vertices: c.lexgraph.structure.vertex_count(),
            lex_edges: c.lexgraph.structure.edge_count(),
            vertices: c.vertgraph.structure.vertex_count(),
            edges: c.vertgraph.structure.edge_count(),
        }
    }

    fn render(&self) -> String {
        format!(
            "format_version={}\nm={}\nn={}\nlex_vertices={}\nlex_edges={}\nvertices={}\nedges={}\n",
            self.format_version, self.m, self.n, self.lex_vertices, self.lex_edges, self.vertices, self.edges
        )
    }

    fn parse(text: &str) -> Result<Self> {
        let get = |key: &str| -> Result<usize> {
            text.lines()
                .enumerate()
                .find_map(|(i, l)| l.trim().strip_prefix(key)?.strip_prefix('=').map(|v| (i + 1, v)))
                .ok_or_else(|| bundle_err("manifest.txt", 1, format!("missing key {key}")))
                .and_then(|(ln, v)| {
                    v.trim()
                        .parse()
                        .map_err(|_| bundle_err("manifest.txt", ln, format!("bad value for {key}")))
                })
        };
        Ok(Manifest {
            format_version: get("format_version")? as u32,
            m: get("m")?,
            n: get("n")?,
            lex_vertices: get("lex_vertices")?,
            lex_edges: get("lex_edges")?,
            vertices: get("vertices")?,
            edges: get("edges")?,
        })
    }
}

/// Writes every bundle file into `dir`, creating it if needed.
pub fn write_bundle(c: &CertificateBundle, dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let (m, n) = (c.polytope.m(), c.polytope.n());
    let mut start = String::new();
    writeln!(start, "{} {}", c.start, c.eccentricity).unwrap();
    let mut morph = String::new();
    write_usizes(&mut morph, &c.morphism.morph);
    let mut morph_inv = String::new();
    write_usizes(&mut morph_inv, &c.morphism.morph_inv);
    let contents = [
        ("polytope.poly", c.polytope.to_poly_string()),
        ("g_lex.txt", write_graph(&c.lexgraph.structure)),
        ("lbl_lex.txt", write_lex_labels(&c.lexgraph.labels, n, m)),
        ("g_vert.txt", write_graph(&c.vertgraph.structure)),
        ("lbl_vert.txt", write_vert_labels(&c.vertgraph.labels, n)),
        ("morph.txt", morph),
        ("morph_inv.txt", morph_inv),
        ("edge_inv.txt", write_edge_inv(&c.morphism.edge_inv)),
        ("dim.txt", write_dim(&c.dimension)),
        ("bounded.txt", write_bounded(&c.boundedness, m)),
        ("start.txt", start),
        ("manifest.txt", Manifest::of(c).render()),
    ];
    for (name, text) in contents {
        let path = dir.join(name);
        let mut f = fs::File::create(&path).map_err(|e| Error::io(&path, e))?;
        f.write_all(text.as_bytes()).map_err(|e| Error::io(&path, e))?;
    }
    Ok(())
}

fn read(dir: &Path, name: &str) -> Result<String> {
    let path = dir.join(name);
    fs::read_to_string(&path).map_err(|e| Error::io(&path, e))
}

fn parse_with<T>(dir: &Path, name: &str, f: impl FnOnce(&mut Tokens) -> Result<T>) -> Result<T> {
    let text = read(dir, name)?;
    let mut t = Tokens::new(name, &text);
    f(&mut t)
}

/// Reads a bundle directory. Fails on missing files, malformed syntax or a
/// manifest that disagrees with the file contents.
pub fn load_bundle(dir: &Path) -> Result<CertificateBundle> {
    let polytope = HPolytope::parse_poly(&read(dir, "polytope.poly")?).map_err(|e| match e {
        Error::Parse { line, msg } => bundle_err("polytope.poly", line, msg),
        other => other,
    })?;
    let g_lex = parse_with(dir, "g_lex.txt", read_graph)?;
    let lbl_lex = parse_with(dir, "lbl_lex.txt", read_lex_labels)?;
    let g_vert = parse_with(dir, "g_vert.txt", read_graph)?;
    let lbl_vert = parse_with(dir, "lbl_vert.txt", read_vert_labels)?;
    let morph = parse_with(dir, "morph.txt", read_usizes)?;
    let morph_inv = parse_with(dir, "morph_inv.txt", read_usizes)?;
    let edge_inv = parse_with(dir, "edge_inv.txt", read_edge_inv)?;
    let dimension = parse_with(dir, "dim.txt", read_dim)?;
    let boundedness = parse_with(dir, "bounded.txt", read_bounded)?;
    let (start, eccentricity) = parse_with(dir, "start.txt", |t| {
        let s = (t.usize()?, t.usize()?);
        t.finish()?;
        Ok(s)
    })?;
    let manifest = Manifest::parse(&read(dir, "manifest.txt")?)?;

    let lexgraph: LexGraph = LabeledGraph {
        structure: g_lex,
        labels: lbl_lex,
    };
    let vertgraph: VertGraph = LabeledGraph {
        structure: g_vert,
        labels: lbl_vert,
    };
    let bundle = CertificateBundle {
        polytope,
        lexgraph,
        vertgraph,
        morphism: MorphismWitness {
            morph,
            morph_inv,
            edge_inv,
        },
        dimension,
        boundedness,
        start,
        eccentricity,
    };
    if manifest.format_version != FORMAT_VERSION {
        return Err(bundle_err(
            "manifest.txt",
            1,
            format!("unsupported format version {}", manifest.format_version),
        ));
    }
    let actual = Manifest::of(&bundle);
    if actual != manifest {
        return Err(bundle_err(
            "manifest.txt",
            1,
            format!("counts do not match file contents (manifest {manifest:?}, files {actual:?})"),
        ));
    }
    if bundle.lexgraph.labels.len() != manifest.lex_vertices || bundle.vertgraph.labels.len() != manifest.vertices {
        return Err(bundle_err("manifest.txt", 1, "label count does not match vertex count"));
    }
    Ok(bundle)
}
