//! Trusted re-checking of a certificate bundle.
//!
//! Every check here only reads the bundle and uses elementary exact
//! arithmetic, graph traversal and comparisons. No prover code is called.
//! Stages run in a fixed order and the first failure is reported with its
//! stage and a diagnostic.

use std::fmt;
use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::certificate::CertificateBundle;
use crate::exactnum::{dot, mat_mul, Rat, RatMatrix};
use crate::graphcore::{bfs_eccentricity, diameter, validate_graph, GraphStruct};
use crate::polytope::{bases_adjacent, is_lex_feasible, perturb, HPolytope, PerturbedRhs};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stage {
    WellFormed,
    EnumAlgo,
    ImgGraph,
    Bounded,
    DimFull,
    Diameter,
    Hirsch,
}

impl Stage {
    pub const CERTIFICATE_STAGES: [Stage; 6] = [
        Stage::WellFormed,
        Stage::EnumAlgo,
        Stage::ImgGraph,
        Stage::Bounded,
        Stage::DimFull,
        Stage::Diameter,
    ];
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::WellFormed => "WellFormed",
            Stage::EnumAlgo => "EnumAlgo",
            Stage::ImgGraph => "ImgGraph",
            Stage::Bounded => "Bounded",
            Stage::DimFull => "DimFull",
            Stage::Diameter => "Diameter",
            Stage::Hirsch => "Hirsch",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Numbers {
    pub lex_vertices: usize,
    pub vertices: usize,
    pub edges: usize,
    /// Eccentricity of the start vertex (a lower bound on the diameter).
    pub diameter_bound: Option<usize>,
    pub m: usize,
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub passed: bool,
    pub stage: Stage,
    pub detail: String,
    pub numbers: Numbers,
}

impl Verdict {
    /// True when every certificate stage passed, whatever the Hirsch outcome.
    pub fn certified(&self) -> bool {
        self.stage == Stage::Hirsch
    }

    /// key=value summary, one pair per line.
    pub fn summary(&self) -> String {
        let n = &self.numbers;
        let mut s = format!(
            "passed={}\nstage={}\ncertified={}\nm={}\nn={}\nlex_vertices={}\nvertices={}\nedges={}\n",
            self.passed,
            self.stage,
            self.certified(),
            n.m,
            n.n,
            n.lex_vertices,
            n.vertices,
            n.edges
        );
        if let Some(d) = n.diameter_bound {
            s.push_str(&format!("diameter_lower_bound={d}\nhirsch_bound={}\n", n.m as i64 - n.n as i64));
        }
        s.push_str(&format!("detail={}\n", self.detail));
        s
    }
}

#[derive(Clone, Debug)]
pub struct StageOutcome {
    pub stage: Stage,
    pub result: Result<(), String>,
    pub elapsed: Duration,
}

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Sizes, index ranges and sortedness of every array in the bundle.
pub fn verify_well_formed(c: &CertificateBundle) -> Check {
    let p = &c.polytope;
    let (m, n) = (p.m(), p.n());
    ensure(p.a().rows() == m && p.a().cols() == n && p.b().len() == m, || {
        "polytope arrays have inconsistent sizes".into()
    })?;

    validate_graph(&c.lexgraph).map_err(|e| format!("lex graph: {e}"))?;
    for (v, label) in c.lexgraph.labels.iter().enumerate() {
        ensure(label.basis.is_strictly_sorted(), || format!("lex vertex {v}: basis not strictly increasing"))?;
        let idx = label.basis.indices();
        ensure(idx.iter().all(|&i| i < m), || format!("lex vertex {v}: basis index out of range"))?;
        let x = label.point.matrix();
        ensure(x.rows() == n && x.cols() == 1 + m, || {
            format!("lex vertex {v}: point is {}x{}, expected {n}x{}", x.rows(), x.cols(), 1 + m)
        })?;
    }

    validate_graph(&c.vertgraph).map_err(|e| format!("vertex graph: {e}"))?;
    ensure(c.vertgraph.labels.iter().all(|l| l.len() == n), || {
        "vertex graph: label with wrong dimension".into()
    })?;

    let lex_v = c.lexgraph.vertex_count();
    let vert_v = c.vertgraph.vertex_count();
    let w = &c.morphism;
    ensure(w.morph.len() == lex_v, || format!("morph has {} entries for {lex_v} lex vertices", w.morph.len()))?;
    ensure(w.morph_inv.len() == vert_v, || {
        format!("morph_inv has {} entries for {vert_v} vertices", w.morph_inv.len())
    })?;
    ensure(w.morph_inv.iter().all(|&i| i < lex_v), || "morph_inv index out of range".into())?;
    ensure(w.edge_inv.iter().all(|&(i, j)| i < lex_v && j < lex_v), || {
        "edge_inv index out of range".into()
    })?;

    let d = &c.dimension;
    ensure(d.map_lbl.len() == n, || format!("map_lbl has {} entries, expected {n}", d.map_lbl.len()))?;
    ensure(d.origin < vert_v && d.map_lbl.iter().all(|&i| i < vert_v), || {
        "dimension witness index out of range".into()
    })?;
    ensure(d.inv_lbl.rows() == n && d.inv_lbl.cols() == n, || "inv_lbl is not n x n".into())?;

    let bw = &c.boundedness;
    ensure(bw.combos.len() == 2 * n, || format!("{} boundedness combinations, expected {}", bw.combos.len(), 2 * n))?;
    ensure(bw.combos.iter().all(|y| y.len() == m), || "boundedness combination of wrong length".into())?;

    ensure(c.start < vert_v, || format!("start vertex {} out of range", c.start))
}

/// Certifies that `glex` is the lex-graph: nonempty, and every vertex
/// `(I, X)` has `|I| = n`, `A_I·X = b̃_I`, `A·X ≥lex b̃`, exactly `n`
/// neighbors, all adjacent as bases.
pub fn enum_algo(p: &HPolytope, bt: &PerturbedRhs, glex: &crate::certificate::LexGraph) -> Check {
    ensure(glex.vertex_count() > 0, || "graph is empty".into())?;
    let n = p.n();
    let first_failure = (0..glex.vertex_count())
        .into_par_iter()
        .filter_map(|u| {
            let label = &glex.labels[u];
            let fail = |what: &str| Some(format!("vertex {u} ({}): {what}", label.basis));
            if label.basis.len() != n {
                return fail("card_verification");
            }
            let a_i = p.a().select_rows(label.basis.indices());
            let lhs = mat_mul(&a_i, label.point.matrix());
            if lhs.ok().as_ref() != Some(&bt.matrix().select_rows(label.basis.indices())) {
                return fail("bas_verification");
            }
            if !is_lex_feasible(p, bt, &label.point) {
                return fail("feas_verification");
            }
            let nb = glex.structure.neighbors(u);
            if nb.len() != n {
                return fail("reg_verification");
            }
            if !nb.iter().all(|&v| bases_adjacent(&label.basis, &glex.labels[v].basis)) {
                return fail("subset_verification");
            }
            None
        })
        .find_first(|_| true);
    match first_failure {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

/// Checks that the vertex graph is the image of the lex-graph under
/// `(I, X) ↦ X[:, 0]`, using the morphism witnesses.
pub fn img_lex_graph(c: &CertificateBundle) -> Check {
    let glex = &c.lexgraph;
    let gvert = &c.vertgraph;
    let w = &c.morphism;
    let vert_v = gvert.vertex_count();
    // (b) range
    if let Some(i) = w.morph.iter().position(|&v| v >= vert_v) {
        return Err(format!("(b) morph[{i}] out of range"));
    }
    // (a) labels agree with π
    let bad = (0..glex.vertex_count()).into_par_iter().find_first(|&i| {
        let x = glex.labels[i].point.matrix();
        let target = &gvert.labels[w.morph[i]];
        (0..x.rows()).any(|r| x[(r, 0)] != target[r])
    });
    if let Some(i) = bad {
        return Err(format!("(a) label of lex vertex {i} does not project onto vertex {}", w.morph[i]));
    }
    // (c) surjectivity through the right inverse
    if let Some(v) = (0..vert_v).find(|&v| w.morph[w.morph_inv[v]] != v) {
        return Err(format!("(c) morph[morph_inv[{v}]] != {v}"));
    }
    // (d) lex edges map to vertex edges or collapse
    for (i, j) in glex.structure.edges() {
        let (u, v) = (w.morph[i], w.morph[j]);
        if u != v && !gvert.structure.has_edge(u, v) {
            return Err(format!("(d) lex edge {i}-{j} maps to non-edge {u}-{v}"));
        }
    }
    // (e) every vertex edge has a lex preimage
    let vedges = gvert.structure.edges();
    if vedges.len() != w.edge_inv.len() {
        return Err(format!("(e) {} vertex edges but {} edge_inv entries", vedges.len(), w.edge_inv.len()));
    }
    for (&(u, v), &(i, j)) in vedges.iter().zip(&w.edge_inv) {
        if !glex.structure.has_edge(i, j) || w.morph[i] != u || w.morph[j] != v {
            return Err(format!("(e) vertex edge {u}-{v} has no valid preimage ({i}, {j})"));
        }
    }
    Ok(())
}

/// Checks `y ≥ 0` and `yᵀA = ±e_i` for each combination, and that the
/// implied bounds `|yᵀb|` do not exceed `K`.
pub fn bounded_po_test(c: &CertificateBundle) -> Check {
    let p = &c.polytope;
    let (m, n) = (p.m(), p.n());
    let bw = &c.boundedness;
    ensure(!bw.bound.is_negative(), || "K is negative".into())?;
    for (slot, y) in bw.combos.iter().enumerate() {
        let (coord, sign) = (slot / 2, if slot % 2 == 0 { '+' } else { '-' });
        if y.iter().any(Signed::is_negative) {
            return Err(format!("coordinate {coord} ({sign}): negative multiplier"));
        }
        let mut combo = vec![Rat::zero(); n];
        for k in (0..m).filter(|&k| !y[k].is_zero()) {
            for (acc, a) in combo.iter_mut().zip(p.a().row(k)) {
                *acc += &y[k] * a;
            }
        }
        for (i, v) in combo.iter().enumerate() {
            let want = if i != coord {
                v.is_zero()
            } else if sign == '+' {
                *v == Rat::from_integer(1.into())
            } else {
                *v == Rat::from_integer((-1).into())
            };
            if !want {
                return Err(format!("coordinate {coord} ({sign}): yᵀA is not {sign}e_{coord}"));
            }
        }
        let implied = dot(y.as_slice(), p.b().as_slice());
        if implied.abs() > bw.bound {
            return Err(format!("coordinate {coord} ({sign}): bound {implied} exceeds K = {}", bw.bound));
        }
    }
    Ok(())
}

/// Checks `inv_lbl · [v¹ − v⁰ … vⁿ − v⁰] = Id_n`.
pub fn dim_full_test(c: &CertificateBundle) -> Check {
    let d = &c.dimension;
    let n = c.polytope.n();
    let labels = &c.vertgraph.labels;
    let v0 = &labels[d.origin];
    let mut m = RatMatrix::zeros(n, n);
    for (k, &v) in d.map_lbl.iter().enumerate() {
        for r in 0..n {
            m[(r, k)] = &labels[v][r] - &v0[r];
        }
    }
    let prod = mat_mul(&d.inv_lbl, &m).map_err(|e| e.to_string())?;
    ensure(prod == RatMatrix::identity(n), || "inv_lbl · M != Id".into())
}

/// Eccentricity of the start vertex, which must match the claimed value.
pub fn diameter_lower_bound(c: &CertificateBundle) -> Result<usize, String> {
    let e = bfs_eccentricity(&c.vertgraph.structure, c.start).map_err(|e| e.to_string())?;
    if e != c.eccentricity {
        return Err(format!(
            "eccentricity of vertex {} is {e}, certificate claims {}",
            c.start, c.eccentricity
        ));
    }
    Ok(e)
}

/// All-source exact diameter; separate from certification.
pub fn exact_diameter(g: &GraphStruct) -> Result<usize, String> {
    diameter(g).map_err(|e| e.to_string())
}

fn timed(stage: Stage, f: impl FnOnce() -> Check) -> StageOutcome {
    let t = Instant::now();
    let result = f();
    StageOutcome {
        stage,
        result,
        elapsed: t.elapsed(),
    }
}

/// Runs the certificate stages in order, stopping after the first failure.
pub fn run_stages(c: &CertificateBundle) -> (Vec<StageOutcome>, Numbers) {
    let mut numbers = Numbers {
        m: c.polytope.m(),
        n: c.polytope.n(),
        ..Numbers::default()
    };
    let mut out = Vec::new();
    let push = |o: StageOutcome, out: &mut Vec<StageOutcome>| {
        let ok = o.result.is_ok();
        out.push(o);
        ok
    };
    if !push(timed(Stage::WellFormed, || verify_well_formed(c)), &mut out) {
        return (out, numbers);
    }
    numbers.lex_vertices = c.lexgraph.vertex_count();
    numbers.vertices = c.vertgraph.vertex_count();
    numbers.edges = c.vertgraph.structure.edge_count();
    let bt = perturb(&c.polytope);
    if !push(timed(Stage::EnumAlgo, || enum_algo(&c.polytope, &bt, &c.lexgraph)), &mut out) {
        return (out, numbers);
    }
    if !push(timed(Stage::ImgGraph, || img_lex_graph(c)), &mut out) {
        return (out, numbers);
    }
    if !push(timed(Stage::Bounded, || bounded_po_test(c)), &mut out) {
        return (out, numbers);
    }
    if !push(timed(Stage::DimFull, || dim_full_test(c)), &mut out) {
        return (out, numbers);
    }
    let mut bound = None;
    push(
        timed(Stage::Diameter, || {
            bound = Some(diameter_lower_bound(c)?);
            Ok(())
        }),
        &mut out,
    );
    numbers.diameter_bound = bound;
    (out, numbers)
}

fn verdict_from(outcomes: &[StageOutcome], numbers: Numbers) -> Option<Verdict> {
    outcomes.iter().find_map(|o| {
        o.result.as_ref().err().map(|e| Verdict {
            passed: false,
            stage: o.stage,
            detail: e.clone(),
            numbers: numbers.clone(),
        })
    })
}

/// Full certification followed by the Hirsch comparison. `passed` is true
/// iff the certified diameter lower bound exceeds `m − n`; since `m` bounds
/// the facet count from above and the dimension is certified to be `n`, that
/// refutes the Hirsch bound for this polytope.
pub fn hirsch_audit(c: &CertificateBundle) -> Verdict {
    let (outcomes, numbers) = run_stages(c);
    hirsch_from_outcomes(&outcomes, numbers)
}

pub fn hirsch_from_outcomes(outcomes: &[StageOutcome], numbers: Numbers) -> Verdict {
    if let Some(v) = verdict_from(outcomes, numbers.clone()) {
        return v;
    }
    let d = numbers.diameter_bound.expect("diameter stage passed");
    let hirsch = numbers.m as i64 - numbers.n as i64;
    let violated = d as i64 > hirsch;
    let detail = if violated {
        format!("counterexample confirmed: diameter >= {d} > {hirsch} = m - n")
    } else {
        format!("Hirsch holds here: diameter lower bound {d} <= {hirsch} = m - n")
    };
    Verdict {
        passed: violated,
        stage: Stage::Hirsch,
        detail,
        numbers,
    }
}
