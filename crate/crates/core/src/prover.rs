//! Untrusted certificate generation: lex-graph enumeration by pivoting, the
//! quotient onto the vertex graph, and all auxiliary witnesses.
//!
//! Nothing produced here is trusted; [`crate::verifier`] re-checks every
//! piece.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::certificate::{
    BoundednessWitness, CertificateBundle, DimensionWitness, LexGraph, LexLabel, MorphismWitness, VertGraph,
};
use crate::error::{Error, Result};
use crate::exactnum::{dot, mat_inverse, rank, Rat, RatMatrix, RatVector};
use crate::graphcore::{eccentricities, GraphStruct, LabeledGraph};
use crate::polytope::{is_lex_feasible, pert_basic_point, perturb, Basis, HPolytope, PertPoint, PerturbedRhs};

/// Iterator over the `n`-subsets of `0..m` in colexicographic order.
pub struct Colex {
    current: Option<Vec<usize>>,
    m: usize,
}

impl Colex {
    pub fn new(m: usize, n: usize) -> Self {
        Colex {
            current: (n <= m).then(|| (0..n).collect()),
            m,
        }
    }
}

impl Iterator for Colex {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let mut c = out.clone();
        let n = c.len();
        let mut i = 0;
        while i < n {
            let limit = if i + 1 < n { c[i + 1] } else { self.m };
            if c[i] + 1 < limit {
                c[i] += 1;
                for (k, x) in c.iter_mut().enumerate().take(i) {
                    *x = k;
                }
                self.current = Some(c);
                break;
            }
            i += 1;
        }
        Some(out)
    }
}

/// Computes `X^I` and checks lex-feasibility; `None` for singular or
/// infeasible bases.
pub fn lex_feasible_point(p: &HPolytope, bt: &PerturbedRhs, basis: &Basis) -> Result<Option<PertPoint>> {
    Ok(pert_basic_point(p, bt, basis)?.filter(|x| is_lex_feasible(p, bt, x)))
}

/// A nonzero vector orthogonal to every row in `rows`, if one exists.
fn null_vector(rows: &[&[Rat]], n: usize) -> Option<Vec<Rat>> {
    let mut m: Vec<Vec<Rat>> = rows.iter().map(|r| r.to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(k) = (r..m.len()).find(|&k| !m[k][c].is_zero()) else {
            continue;
        };
        m.swap(r, k);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (k, row) in m.iter_mut().enumerate() {
            if k != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free = (0..n).find(|c| !pivots.contains(c))?;
    let mut d = vec![Rat::zero(); n];
    d[free] = Rat::one();
    for (row, &c) in pivots.iter().enumerate() {
        d[c] = -m[row][free].clone();
    }
    Some(d)
}

/// Ray shooting in the perturbed space from a feasible point `x0`: move
/// along directions orthogonal to the rows made tight so far until the
/// lex-first blocking row is hit, `n` times. Every intermediate perturbed
/// point stays lex-feasible, so the final tight set is a lex-feasible basis.
pub fn shoot_initial_basis(p: &HPolytope, bt: &PerturbedRhs, x0: &[Rat]) -> Result<Basis> {
    let (m, n) = (p.m(), p.n());
    if x0.len() != n || !p.contains(x0) {
        return Err(Error::Invalid("starting point is not in the polytope".into()));
    }
    // slack[j] = A_j·X − b̃_j for X = [x0 | 0]
    let mut slack: Vec<Vec<Rat>> = (0..m)
        .map(|j| {
            let mut s = vec![Rat::zero(); 1 + m];
            s[0] = dot(p.a().row(j), x0) - &p.b()[j];
            s[1 + j] = Rat::one();
            s
        })
        .collect();
    let mut tight: Vec<usize> = Vec::with_capacity(n);
    while tight.len() < n {
        let rows: Vec<&[Rat]> = tight.iter().map(|&j| p.a().row(j)).collect();
        let mut d = null_vector(&rows, n).ok_or(Error::NotFullDimensional)?;
        let mut ad: Vec<Rat> = (0..m).map(|j| dot(p.a().row(j), &d)).collect();
        if ad.iter().all(|v| !v.is_negative()) {
            d.iter_mut().for_each(|x| *x = -x.clone());
            ad.iter_mut().for_each(|x| *x = -x.clone());
        }
        let mut best: Option<(usize, Vec<Rat>)> = None;
        for j in (0..m).filter(|&j| ad[j].is_negative()) {
            let alpha = -ad[j].clone();
            let ratio: Vec<Rat> = slack[j].iter().map(|s| s / &alpha).collect();
            if best.as_ref().is_none_or(|(_, r)| ratio < *r) {
                best = Some((j, ratio));
            }
        }
        let (hit, step) = best.ok_or_else(|| Error::Invalid("unbounded ray from the starting point".into()))?;
        for (j, s) in slack.iter_mut().enumerate() {
            if ad[j].is_zero() {
                continue;
            }
            for (x, r) in s.iter_mut().zip(&step) {
                *x += &ad[j] * r;
            }
        }
        tight.push(hit);
    }
    let basis = Basis::new(tight)?;
    lex_feasible_point(p, bt, &basis)?.ok_or(Error::NoFeasibleBasis)?;
    Ok(basis)
}

/// Ray shooting from the origin when it is feasible, otherwise the first
/// lex-feasible basis in colex order.
pub fn find_initial_basis(p: &HPolytope, bt: &PerturbedRhs) -> Result<Basis> {
    let origin = vec![Rat::zero(); p.n()];
    if p.contains(&origin) {
        if let Ok(b) = shoot_initial_basis(p, bt, &origin) {
            return Ok(b);
        }
    }
    colex_initial_basis(p, bt)
}

/// First lex-feasible basis in colex order.
pub fn colex_initial_basis(p: &HPolytope, bt: &PerturbedRhs) -> Result<Basis> {
    for s in Colex::new(p.m(), p.n()) {
        let basis = Basis::from_raw(s);
        if lex_feasible_point(p, bt, &basis)?.is_some() {
            return Ok(basis);
        }
    }
    Err(Error::NoFeasibleBasis)
}

/// Reference neighbor computation: for each leaving row, try every entering
/// row and keep the lex-feasible results. Exactly one must survive.
pub fn basis_neighbors_bruteforce(p: &HPolytope, bt: &PerturbedRhs, basis: &Basis) -> Result<Vec<Basis>> {
    let mut out = Vec::with_capacity(p.n());
    for &leaving in basis.indices() {
        let mut found = Vec::new();
        for entering in (0..p.m()).filter(|&j| !basis.contains(j)) {
            let cand = basis.pivot(leaving, entering);
            if lex_feasible_point(p, bt, &cand)?.is_some() {
                found.push(cand);
            }
        }
        if found.len() != 1 {
            return Err(Error::RegularityViolation {
                basis: basis.indices().to_vec(),
                leaving,
                candidates: found.len(),
            });
        }
        out.extend(found);
    }
    out.sort();
    Ok(out)
}

/// Sparse lexicographic vector: `(column, value)` pairs with increasing
/// columns; absent columns are zero.
type SparseLex = Vec<(usize, Rat)>;

fn cmp_sparse(a: &SparseLex, b: &SparseLex) -> Ordering {
    let zero = Rat::zero();
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(usize::MAX, |e| e.0);
        let cb = b.get(j).map_or(usize::MAX, |e| e.0);
        let (va, vb) = match ca.cmp(&cb) {
            Ordering::Less => {
                i += 1;
                (&a[i - 1].1, &zero)
            }
            Ordering::Greater => {
                j += 1;
                (&zero, &b[j - 1].1)
            }
            Ordering::Equal => {
                i += 1;
                j += 1;
                (&a[i - 1].1, &b[j - 1].1)
            }
        };
        match va.cmp(vb) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    Ordering::Equal
}

/// Neighbors via the lexicographic minimum-ratio test.
///
/// Leaving row `I_k` moves `X` along `d = A_I⁻¹ e_k = −X[:, 1+I_k]`. For a
/// row `j ∉ I` the lex slack is `s_j = A_j X − b̃_j` and its rate is
/// `A_j d`; the entering row is the lex-smallest `s_j / (−A_j d)` over rows
/// with negative rate. `x` must be `X^I`.
pub fn basis_neighbors(p: &HPolytope, bt: &PerturbedRhs, basis: &Basis, x: &PertPoint) -> Result<Vec<Basis>> {
    let n = p.n();
    let idx = basis.indices();
    let x = x.matrix();
    let unperturbed = x.column(0);
    // columns of A_I⁻¹, negated
    let cols: Vec<Vec<Rat>> = idx.iter().map(|&r| x.column(1 + r)).collect();
    let outside: Vec<usize> = (0..p.m()).filter(|&j| !basis.contains(j)).collect();
    // slack0[j] = A_j x − b_j;  q[j][c] = A_j · X[:, 1+I_c]
    let rows: Vec<(Rat, Vec<Rat>)> = outside
        .iter()
        .map(|&j| {
            let a = p.a().row(j);
            let slack0 = dot(a, &unperturbed) - &bt.row(j)[0];
            let q = cols.iter().map(|c| dot(a, c)).collect();
            (slack0, q)
        })
        .collect();

    let mut out = Vec::with_capacity(n);
    for (k, &leaving) in idx.iter().enumerate() {
        // rate of row j is A_j d = −q[j][k]; candidates have rate < 0
        let cands: Vec<usize> = (0..outside.len()).filter(|&t| rows[t].1[k].is_positive()).collect();
        if cands.is_empty() {
            return Err(Error::RegularityViolation {
                basis: idx.to_vec(),
                leaving,
                candidates: 0,
            });
        }
        let ratio0 = |t: usize| &rows[t].0 / &rows[t].1[k];
        let mut best = ratio0(cands[0]);
        let mut ties = vec![cands[0]];
        for &t in &cands[1..] {
            let r = ratio0(t);
            match r.cmp(&best) {
                Ordering::Less => {
                    best = r;
                    ties.clear();
                    ties.push(t);
                }
                Ordering::Equal => ties.push(t),
                Ordering::Greater => {}
            }
        }
        let entering = if ties.len() == 1 {
            outside[ties[0]]
        } else {
            let full = |t: usize| -> SparseLex {
                let (slack0, q) = &rows[t];
                let denom = &q[k];
                let j = outside[t];
                let mut v: SparseLex = Vec::with_capacity(n + 2);
                v.push((0, slack0 / denom));
                let mut pushed_j = false;
                for (c, &r) in idx.iter().enumerate() {
                    if !pushed_j && j < r {
                        v.push((1 + j, denom.recip()));
                        pushed_j = true;
                    }
                    if !q[c].is_zero() {
                        v.push((1 + r, &q[c] / denom));
                    }
                }
                if !pushed_j {
                    v.push((1 + j, denom.recip()));
                }
                v
            };
            let mut scored: Vec<(SparseLex, usize)> = ties.iter().map(|&t| (full(t), t)).collect();
            scored.sort_by(|a, b| cmp_sparse(&a.0, &b.0));
            if cmp_sparse(&scored[0].0, &scored[1].0) == Ordering::Equal {
                return Err(Error::RegularityViolation {
                    basis: idx.to_vec(),
                    leaving,
                    candidates: 2,
                });
            }
            outside[scored[0].1]
        };
        out.push(basis.pivot(leaving, entering));
    }
    out.sort();
    Ok(out)
}

/// `X^{I'}` for `I' = I − {leaving} + {entering}` from `X = X^I` by a
/// rank-one update: `X' = X − X[:, 1+leaving] ⊗ s_j / q`, where `s_j` is the
/// lex slack of the entering row and `q = A_j · X[:, 1+leaving]`.
pub fn pivot_point(p: &HPolytope, bt: &PerturbedRhs, x: &PertPoint, leaving: usize, entering: usize) -> Option<PertPoint> {
    let x = x.matrix();
    let (n, cols) = (x.rows(), x.cols());
    let a = p.a().row(entering);
    let d: Vec<Rat> = (0..n).map(|r| x[(r, 1 + leaving)].clone()).collect();
    let q = dot(a, &d);
    if q.is_zero() {
        return None;
    }
    let b = bt.row(entering);
    let mut out = x.clone();
    for c in 0..cols {
        let col: Vec<Rat> = (0..n).map(|r| x[(r, c)].clone()).collect();
        let slack = dot(a, &col) - &b[c];
        if slack.is_zero() {
            continue;
        }
        let f = slack / &q;
        for (r, dr) in d.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            out[(r, c)] -= dr * &f;
        }
    }
    Some(PertPoint(out))
}

/// Which neighbor routine the enumeration uses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PivotMode {
    #[default]
    LexRatio,
    BruteForce,
}

/// Breadth-first closure of the pivot relation from `initial`, with labels
/// sorted by basis and adjacency remapped accordingly.
pub fn enumerate_lex_graph(p: &HPolytope, bt: &PerturbedRhs, initial: &Basis) -> Result<LexGraph> {
    enumerate_lex_graph_with(p, bt, initial, PivotMode::LexRatio)
}

pub fn enumerate_lex_graph_with(
    p: &HPolytope,
    bt: &PerturbedRhs,
    initial: &Basis,
    mode: PivotMode,
) -> Result<LexGraph> {
    if !initial.valid_for(p) {
        return Err(Error::Invalid(format!("initial basis {initial} is not a sorted {}-subset", p.n())));
    }
    if lex_feasible_point(p, bt, initial)?.is_none() {
        return Err(Error::Invalid(format!("initial basis {initial} is not lex-feasible")));
    }
    let mut index: HashMap<Basis, usize> = HashMap::new();
    let mut bases = vec![initial.clone()];
    let mut points: Vec<Option<PertPoint>> = vec![None];
    // BFS parent of each discovered basis, for the rank-one point update
    let mut parent: Vec<Option<usize>> = vec![None];
    let mut neighbors: Vec<Vec<Basis>> = vec![Vec::new()];
    index.insert(initial.clone(), 0);
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let expanded: Vec<(usize, PertPoint, Vec<Basis>)> = frontier
            .par_iter()
            .map(|&v| {
                let basis = &bases[v];
                let singular = || Error::Invalid(format!("pivoting reached singular basis {basis}"));
                let x = match parent[v] {
                    Some(u) => {
                        let from = &bases[u];
                        let leaving = from.indices().iter().find(|&&i| !basis.contains(i)).copied();
                        let entering = basis.indices().iter().find(|&&i| !from.contains(i)).copied();
                        let px = points[u].as_ref().expect("parent expanded first");
                        match (leaving, entering) {
                            (Some(l), Some(e)) => pivot_point(p, bt, px, l, e).ok_or_else(singular)?,
                            _ => return Err(singular()),
                        }
                    }
                    None => pert_basic_point(p, bt, basis)?.ok_or_else(singular)?,
                };
                let nb = match mode {
                    PivotMode::LexRatio => basis_neighbors(p, bt, basis, &x)?,
                    PivotMode::BruteForce => basis_neighbors_bruteforce(p, bt, basis)?,
                };
                Ok((v, x, nb))
            })
            .collect::<Result<_>>()?;
        let mut next = Vec::new();
        for (v, x, nb) in expanded {
            points[v] = Some(x);
            for b in &nb {
                if !index.contains_key(b) {
                    index.insert(b.clone(), bases.len());
                    next.push(bases.len());
                    bases.push(b.clone());
                    points.push(None);
                    parent.push(Some(v));
                    neighbors.push(Vec::new());
                }
            }
            neighbors[v] = nb;
        }
        frontier = next;
    }

    let mut order: Vec<usize> = (0..bases.len()).collect();
    order.sort_by(|&a, &b| bases[a].cmp(&bases[b]));
    let mut rank_of = vec![0; bases.len()];
    for (new, &old) in order.iter().enumerate() {
        rank_of[old] = new;
    }
    let adj: Vec<Vec<usize>> = order
        .iter()
        .map(|&old| {
            let mut l: Vec<usize> = neighbors[old].iter().map(|b| rank_of[index[b]]).collect();
            l.sort_unstable();
            l
        })
        .collect();
    let labels: Vec<LexLabel> = order
        .iter()
        .map(|&old| LexLabel {
            basis: bases[old].clone(),
            point: points[old].clone().expect("every discovered basis is expanded"),
        })
        .collect();
    let graph = LabeledGraph {
        structure: GraphStruct::new(adj),
        labels,
    };
    graph
        .structure
        .validate()
        .map_err(|e| Error::Invalid(format!("pivot relation is not symmetric: {e}")))?;
    Ok(graph)
}

/// Image of the lex-graph under `(I, X) ↦ X[:, 0]`, with the witnesses the
/// verifier needs to confirm it.
pub fn quotient_to_vertex_graph(glex: &LexGraph) -> (VertGraph, MorphismWitness) {
    let images: Vec<RatVector> = glex.labels.iter().map(|l| l.point.unperturbed()).collect();
    let mut labels = images.clone();
    labels.sort();
    labels.dedup();
    let morph: Vec<usize> = images
        .iter()
        .map(|v| labels.binary_search(v).expect("image present"))
        .collect();
    let mut morph_inv = vec![usize::MAX; labels.len()];
    for (i, &v) in morph.iter().enumerate().rev() {
        morph_inv[v] = i;
    }
    let mut preimage: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    for (i, j) in glex.structure.edges() {
        let (u, v) = (morph[i], morph[j]);
        if u == v {
            continue;
        }
        let key = if u < v { (u, v) } else { (v, u) };
        let lex = if u < v { (i, j) } else { (j, i) };
        preimage.entry(key).or_insert(lex);
    }
    let mut vedges: Vec<(usize, usize)> = preimage.keys().copied().collect();
    vedges.sort_unstable();
    let edge_inv = vedges.iter().map(|e| preimage[e]).collect();
    let structure = GraphStruct::from_edges(labels.len(), &vedges);
    (
        LabeledGraph { structure, labels },
        MorphismWitness {
            morph,
            morph_inv,
            edge_inv,
        },
    )
}

/// Picks `origin = 0` and greedily adds vertices whose offsets from it are
/// linearly independent, then inverts `M = [v¹ − v⁰ … vⁿ − v⁰]`.
pub fn make_dimension_witness(gvert: &VertGraph, n: usize) -> Result<DimensionWitness> {
    let origin = 0;
    let v0 = gvert.labels.first().ok_or(Error::NotFullDimensional)?;
    let mut chosen = Vec::with_capacity(n);
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(n);
    for (v, label) in gvert.labels.iter().enumerate().skip(1) {
        if chosen.len() == n {
            break;
        }
        if label.len() != n {
            return Err(Error::DimensionMismatch(format!("vertex {v} has {} coordinates", label.len())));
        }
        let diff: Vec<Rat> = label.iter().zip(v0.iter()).map(|(a, b)| a - b).collect();
        rows.push(diff);
        let trial = RatMatrix::from_rows(rows.clone())?;
        if rank(&trial) == rows.len() {
            chosen.push(v);
        } else {
            rows.pop();
        }
    }
    if chosen.len() < n {
        return Err(Error::NotFullDimensional);
    }
    // rows hold the offsets; M has them as columns
    let m = RatMatrix::from_rows(rows)?.transpose();
    let inv_lbl = mat_inverse(&m)?.ok_or(Error::NotFullDimensional)?;
    Ok(DimensionWitness {
        origin,
        map_lbl: chosen,
        inv_lbl,
    })
}

fn bound_of(p: &HPolytope, combos: &[RatVector]) -> Rat {
    combos
        .iter()
        .map(|y| dot(y.as_slice(), p.b().as_slice()).abs())
        .max()
        .unwrap_or_else(Rat::zero)
}

/// Finds `y ≥ 0` with `yᵀA = ±e_i` for every coordinate by scanning row
/// subsets `J` and solving `A_Jᵀ y_J = ±e_i`.
pub fn make_boundedness_witness(p: &HPolytope) -> Result<BoundednessWitness> {
    let n = p.n();
    let mut found: Vec<Option<RatVector>> = vec![None; 2 * n];
    for s in Colex::new(p.m(), n) {
        let a_j = p.a().select_rows(&s);
        let Some(inv) = mat_inverse(&a_j.transpose())? else {
            continue;
        };
        for i in 0..n {
            let col = inv.column(i);
            for (slot, sign) in [(2 * i, 1), (2 * i + 1, -1)] {
                if found[slot].is_some() {
                    continue;
                }
                let ok = col.iter().all(|v| if sign > 0 { !v.is_negative() } else { !v.is_positive() });
                if ok {
                    let mut y = vec![Rat::zero(); p.m()];
                    for (k, &row) in s.iter().enumerate() {
                        y[row] = if sign > 0 { col[k].clone() } else { -col[k].clone() };
                    }
                    found[slot] = Some(RatVector(y));
                }
            }
        }
        if found.iter().all(Option::is_some) {
            break;
        }
    }
    collect_boundedness(p, found)
}

fn collect_boundedness(p: &HPolytope, found: Vec<Option<RatVector>>) -> Result<BoundednessWitness> {
    let mut combos = Vec::with_capacity(found.len());
    for (slot, y) in found.into_iter().enumerate() {
        combos.push(y.ok_or(Error::UnboundednessSuspected {
            coord: slot / 2,
            sign: if slot % 2 == 0 { '+' } else { '-' },
        })?);
    }
    let bound = bound_of(p, &combos);
    Ok(BoundednessWitness { combos, bound })
}

/// Same certificate, read off the lex-feasible bases already enumerated: for
/// label `(I, X)` the columns `1+I` of `X` form `−A_I⁻¹`, so the candidate
/// multipliers for `±e_i` are `∓` row `i` of that block. Minimising `±x_i`
/// by the lex-simplex method ends at one of these bases with `y ≥ 0`.
pub fn boundedness_from_lex_graph(p: &HPolytope, glex: &LexGraph) -> Result<BoundednessWitness> {
    let n = p.n();
    let mut found: Vec<Option<RatVector>> = vec![None; 2 * n];
    for label in &glex.labels {
        let idx = label.basis.indices();
        let x = label.point.matrix();
        for i in 0..n {
            let neg_inv_row: Vec<&Rat> = idx.iter().map(|&r| &x[(i, 1 + r)]).collect();
            for (slot, positive) in [(2 * i, true), (2 * i + 1, false)] {
                if found[slot].is_some() {
                    continue;
                }
                // y_k = −(±1)·X[i, 1+I_k]
                let ok = neg_inv_row
                    .iter()
                    .all(|v| if positive { !v.is_positive() } else { !v.is_negative() });
                if ok {
                    let mut y = vec![Rat::zero(); p.m()];
                    for (k, &row) in idx.iter().enumerate() {
                        y[row] = if positive {
                            -neg_inv_row[k].clone()
                        } else {
                            neg_inv_row[k].clone()
                        };
                    }
                    found[slot] = Some(RatVector(y));
                }
            }
        }
        if found.iter().all(Option::is_some) {
            break;
        }
    }
    if found.iter().any(Option::is_none) {
        return make_boundedness_witness(p);
    }
    collect_boundedness(p, found)
}

/// Vertex of maximum eccentricity, smallest index on ties, with its
/// eccentricity.
pub fn pick_diameter_start(gvert: &GraphStruct) -> Result<(usize, usize)> {
    let ecc = eccentricities(gvert)?;
    let mut best = (0, *ecc.first().ok_or(Error::Disconnected)?);
    for (v, &e) in ecc.iter().enumerate() {
        if e > best.1 {
            best = (v, e);
        }
    }
    Ok(best)
}

#[derive(Clone, Debug, Default)]
pub struct ProverOptions {
    pub initial_basis: Option<Basis>,
    pub pivot: PivotMode,
}

/// Runs the whole pipeline and assembles a certificate bundle.
pub fn prove(p: &HPolytope, opts: &ProverOptions) -> Result<CertificateBundle> {
    let bt = perturb(p);
    let initial = match &opts.initial_basis {
        Some(b) => b.clone(),
        None => find_initial_basis(p, &bt)?,
    };
    let lexgraph = enumerate_lex_graph_with(p, &bt, &initial, opts.pivot)?;
    let (vertgraph, morphism) = quotient_to_vertex_graph(&lexgraph);
    let dimension = make_dimension_witness(&vertgraph, p.n())?;
    let boundedness = boundedness_from_lex_graph(p, &lexgraph)?;
    let (start, eccentricity) = pick_diameter_start(&vertgraph.structure)?;
    Ok(CertificateBundle {
        polytope: p.clone(),
        lexgraph,
        vertgraph,
        morphism,
        dimension,
        boundedness,
        start,
        eccentricity,
    })
}
