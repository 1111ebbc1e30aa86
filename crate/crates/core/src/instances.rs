//! Generators for the standard benchmark families and ingestion of lrs-style
//! H-representations.

use std::path::{Path, PathBuf};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactnum::{parse_rat, rat_int, Rat, RatMatrix, RatVector};
use crate::polytope::{Basis, HPolytope};

/// Largest cross-polytope dimension accepted; it has `2^n` rows.
pub const MAX_CROSS_DIM: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InstanceSpec {
    Cube { n: usize },
    Cross { n: usize },
    CyclicPolar { n: usize, p: usize },
    File { path: PathBuf },
}

/// A polytope plus an initial lex-feasible basis when one is known
/// analytically.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub polytope: HPolytope,
    pub initial_basis: Option<Basis>,
}

impl InstanceSpec {
    pub fn build(&self) -> Result<Instance> {
        match *self {
            InstanceSpec::Cube { n } => {
                let polytope = gen_cube(n)?;
                Ok(Instance {
                    name: format!("cube_{n}"),
                    polytope,
                    initial_basis: Some(cube_initial_basis(n)),
                })
            }
            InstanceSpec::Cross { n } => Ok(Instance {
                name: format!("cross_{n}"),
                polytope: gen_cross(n)?,
                initial_basis: None,
            }),
            InstanceSpec::CyclicPolar { n, p } => Ok(Instance {
                name: format!("cyclic_{p}_{n}"),
                polytope: gen_cyclic_polar(n, p)?,
                initial_basis: None,
            }),
            InstanceSpec::File { ref path } => Ok(Instance {
                name: path
                    .file_stem()
                    .map_or_else(|| "file".to_string(), |s| s.to_string_lossy().into_owned()),
                polytope: load_polytope(path)?,
                initial_basis: None,
            }),
        }
    }
}

/// `x_i ≥ −1` (row `2i`) and `−x_i ≥ −1` (row `2i+1`).
pub fn gen_cube(n: usize) -> Result<HPolytope> {
    if n == 0 {
        return Err(Error::Invalid("cube dimension must be >= 1".into()));
    }
    let mut a = RatMatrix::zeros(2 * n, n);
    for i in 0..n {
        a[(2 * i, i)] = rat_int(1);
        a[(2 * i + 1, i)] = rat_int(-1);
    }
    HPolytope::new(a, RatVector(vec![rat_int(-1); 2 * n]))
}

/// The rows `x_i ≥ −1`, which meet at the vertex `(−1, …, −1)`.
pub fn cube_initial_basis(n: usize) -> Basis {
    Basis::from_raw((0..n).map(|i| 2 * i).collect())
}

/// `Σ ±x_i ≥ −1` over all sign patterns; bit `j` of the row index set means
/// the coefficient of `x_j` is `−1`.
pub fn gen_cross(n: usize) -> Result<HPolytope> {
    if n == 0 {
        return Err(Error::Invalid("cross-polytope dimension must be >= 1".into()));
    }
    if n > MAX_CROSS_DIM {
        return Err(Error::Invalid(format!(
            "cross-polytope of dimension {n} has 2^{n} rows (limit is {MAX_CROSS_DIM})"
        )));
    }
    let m = 1usize << n;
    let mut a = RatMatrix::zeros(m, n);
    for k in 0..m {
        for j in 0..n {
            a[(k, j)] = rat_int(if k >> j & 1 == 1 { -1 } else { 1 });
        }
    }
    HPolytope::new(a, RatVector(vec![rat_int(-1); m]))
}

/// Polar of the cyclic polytope with nodes `t_i = i` (`i = 1..=p`): rows
/// `⟨c̄ − cⁱ, x⟩ ≥ −1` with `cⁱ = (t_i, t_i², …, t_iⁿ)` and `c̄` their mean.
pub fn gen_cyclic_polar(n: usize, p: usize) -> Result<HPolytope> {
    if n < 2 || p <= n {
        return Err(Error::Invalid(format!("cyclic polar needs p > n >= 2 (got n={n}, p={p})")));
    }
    let moments: Vec<Vec<Rat>> = (1..=p as i64)
        .map(|t| {
            let mut row = Vec::with_capacity(n);
            let mut pow = rat_int(1);
            for _ in 0..n {
                pow *= rat_int(t);
                row.push(pow.clone());
            }
            row
        })
        .collect();
    let mut mean = vec![Rat::zero(); n];
    for row in &moments {
        for (s, x) in mean.iter_mut().zip(row) {
            *s += x;
        }
    }
    let count = rat_int(p as i64);
    for s in &mut mean {
        *s /= &count;
    }
    let rows = moments
        .into_iter()
        .map(|c| mean.iter().zip(c).map(|(cb, ci)| cb - ci).collect())
        .collect();
    HPolytope::new(RatMatrix::from_rows(rows)?, RatVector(vec![rat_int(-1); p]))
}

/// Parses the lrs H-format. Each data row `b' a'_1 … a'_n` encodes
/// `b' + ⟨a', x⟩ ≥ 0`, i.e. `A = a'` and `b = −b'`.
pub fn parse_ine(text: &str) -> Result<HPolytope> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let mut begin_line = None;
    for (ln, line) in lines.by_ref() {
        if line.is_empty() || line.starts_with('*') {
            continue;
        }
        if line.eq_ignore_ascii_case("V-representation") {
            return Err(Error::parse(ln, "V-representation input is not supported"));
        }
        if line.eq_ignore_ascii_case("H-representation") {
            continue;
        }
        if line.starts_with("linearity") {
            return Err(Error::parse(ln, "equality rows (linearity) are not supported"));
        }
        if line == "begin" {
            begin_line = Some(ln);
            break;
        }
    }
    let begin = begin_line.ok_or_else(|| Error::parse(text.lines().count().max(1), "missing \"begin\""))?;
    let (hline, header) = lines
        .by_ref()
        .find(|(_, l)| !l.is_empty() && !l.starts_with('*'))
        .ok_or_else(|| Error::parse(begin + 1, "missing size line after \"begin\""))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() < 2 {
        return Err(Error::parse(hline, "size line must be \"m n+1 [rational|integer]\""));
    }
    let m: usize = toks[0].parse().map_err(|_| Error::parse(hline, "bad row count"))?;
    let cols: usize = toks[1].parse().map_err(|_| Error::parse(hline, "bad column count"))?;
    if cols < 2 {
        return Err(Error::parse(hline, "need at least one variable"));
    }
    if let Some(kind) = toks.get(2) {
        if !matches!(*kind, "rational" | "integer") {
            return Err(Error::parse(hline, format!("unsupported number type {kind:?}")));
        }
    }
    let mut tokens: Vec<(usize, &str)> = Vec::with_capacity(m * cols);
    let mut end_seen = false;
    for (ln, line) in lines {
        if line.starts_with('*') {
            continue;
        }
        if line == "end" {
            end_seen = true;
            break;
        }
        tokens.extend(line.split_whitespace().map(|t| (ln, t)));
    }
    if !end_seen {
        return Err(Error::parse(text.lines().count(), "missing \"end\" (truncated file?)"));
    }
    if tokens.len() != m * cols {
        let ln = tokens.last().map_or(hline, |t| t.0);
        return Err(Error::parse(ln, format!("expected {} numbers, found {}", m * cols, tokens.len())));
    }
    let vals: Vec<Rat> = tokens
        .iter()
        .map(|&(ln, t)| parse_rat(t).map_err(|e| Error::parse(ln, e.to_string())))
        .collect::<Result<_>>()?;
    let mut a = Vec::with_capacity(m);
    let mut b = Vec::with_capacity(m);
    for row in vals.chunks(cols) {
        b.push(-row[0].clone());
        a.push(row[1..].to_vec());
    }
    HPolytope::new(RatMatrix::from_rows(a)?, RatVector(b)).map_err(|e| Error::parse(hline, e.to_string()))
}

pub fn to_ine_string(p: &HPolytope, name: &str) -> String {
    use std::fmt::Write as _;
    let mut s = format!("{name}\nH-representation\nbegin\n{} {} rational\n", p.m(), p.n() + 1);
    for i in 0..p.m() {
        write!(s, "{}", -p.b()[i].clone()).unwrap();
        for x in p.a().row(i) {
            write!(s, " {x}").unwrap();
        }
        s.push('\n');
    }
    s.push_str("end\n");
    s
}

pub fn load_ine(path: &Path) -> Result<HPolytope> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_ine(&text)
}

/// Loads either format, choosing by extension (`.ine` for lrs, anything else
/// for the native format).
pub fn load_polytope(path: &Path) -> Result<HPolytope> {
    if path.extension().is_some_and(|e| e == "ine") {
        return load_ine(path);
    }
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    HPolytope::parse_poly(&text)
}

/// Vertex count of the polar cyclic polytope from the Upper Bound Theorem.
pub fn upper_bound_vertex_count(n: u64, p: u64) -> u128 {
    fn binom(n: u64, k: u64) -> u128 {
        if k > n {
            return 0;
        }
        (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
    }
    binom(p - n.div_ceil(2), n / 2) + binom(p - 1 - (n - 1).div_ceil(2), (n - 1) / 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat_frac;

    #[test]
    fn cube_shapes() {
        let c = gen_cube(3).unwrap();
        assert_eq!((c.m(), c.n()), (6, 3));
        assert!(c.contains(&[rat_int(1), rat_int(-1), rat_frac(1, 2)]));
        assert!(!c.contains(&[rat_int(2), rat_int(0), rat_int(0)]));
        assert_eq!(cube_initial_basis(3).indices(), &[0, 2, 4]);
        assert!(gen_cube(0).is_err());
    }

    #[test]
    fn cross_matches_reference_system() {
        let c = gen_cross(3).unwrap();
        let expect = HPolytope::from_int_rows(
            &[
                &[1, 1, 1],
                &[-1, 1, 1],
                &[1, -1, 1],
                &[-1, -1, 1],
                &[1, 1, -1],
                &[-1, 1, -1],
                &[1, -1, -1],
                &[-1, -1, -1],
            ],
            &[-1; 8],
        );
        assert_eq!(c, expect);
        assert!(gen_cross(21).is_err());
        assert_eq!(gen_cross(MAX_CROSS_DIM).map(|p| p.m()).ok(), Some(1 << MAX_CROSS_DIM));
    }

    #[test]
    fn cyclic_rows_nonzero() {
        let c = gen_cyclic_polar(6, 12).unwrap();
        assert_eq!((c.m(), c.n()), (12, 6));
        for i in 0..c.m() {
            assert!(c.a().row(i).iter().any(|x| !x.is_zero()));
        }
        // columns sum to zero since c̄ is the mean
        for j in 0..6 {
            let s: Rat = (0..12).map(|i| c.a()[(i, j)].clone()).sum();
            assert!(s.is_zero());
        }
        assert!(gen_cyclic_polar(6, 6).is_err());
        assert!(gen_cyclic_polar(1, 4).is_err());
    }

    #[test]
    fn upper_bound_formula() {
        assert_eq!(upper_bound_vertex_count(6, 12), 112);
        // 3-dimensional simple polytope with p facets has 2p - 4 vertices
        for p in 4..10 {
            assert_eq!(upper_bound_vertex_count(3, p), 2 * p as u128 - 4);
        }
        // polygons
        assert_eq!(upper_bound_vertex_count(2, 7), 7);
    }

    #[test]
    fn ine_round_trip() {
        let c = gen_cube(2).unwrap();
        let text = to_ine_string(&c, "cube_2");
        assert_eq!(parse_ine(&text).unwrap(), c);
        let lrs = "cube\nH-representation\nbegin\n4 3 integer\n1 1 0\n1 -1 0\n1 0 1\n1 0 -1\nend\n";
        assert_eq!(parse_ine(lrs).unwrap(), c);
    }

    #[test]
    fn ine_errors() {
        let truncated = "H-representation\nbegin\n4 3 rational\n1 1 0\n1 -1 0\n";
        assert!(matches!(parse_ine(truncated), Err(Error::Parse { .. })));
        let short = "H-representation\nbegin\n2 3 rational\n1 1 0\n1 -1\nend\n";
        let err = parse_ine(short).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 5, .. }), "{err}");
        let bad = "H-representation\nbegin\n1 2 rational\n1 q\nend\n";
        assert!(matches!(parse_ine(bad), Err(Error::Parse { line: 4, .. })));
        assert!(parse_ine("V-representation\nbegin\n").is_err());
        assert!(parse_ine("H-representation\nlinearity 1 1\nbegin\n").is_err());
        assert!(parse_ine("").is_err());
    }
}
