//! Targeted corruptions of a valid certificate bundle, each paired with the
//! verifier stage that must reject it. Used to measure verifier soundness.

use num_traits::{One, Signed, Zero};

use crate::certificate::CertificateBundle;
use crate::exactnum::{rat_frac, rat_int, Rat};
use crate::graphcore::GraphStruct;
use crate::polytope::Basis;
use crate::verifier::Stage;

pub struct Mutation {
    pub name: &'static str,
    pub expected: Stage,
    /// `None` when the bundle is too small for this operator.
    pub apply: fn(&CertificateBundle) -> Option<CertificateBundle>,
}

fn remove_edge(g: &mut GraphStruct, u: usize, v: usize) {
    g.adj[u].retain(|&x| x != v);
    g.adj[v].retain(|&x| x != u);
}

fn insert_edge(g: &mut GraphStruct, u: usize, v: usize) {
    for (a, b) in [(u, v), (v, u)] {
        let pos = g.adj[a].binary_search(&b).unwrap_err();
        g.adj[a].insert(pos, b);
    }
}

fn non_neighbor(g: &GraphStruct, u: usize) -> Option<usize> {
    (0..g.vertex_count()).find(|&w| w != u && !g.has_edge(u, w))
}

fn drop_lex_edge(c: &CertificateBundle) -> Option<CertificateBundle> {
    let mut m = c.clone();
    let v = *c.lexgraph.structure.neighbors(0).first()?;
    remove_edge(&mut m.lexgraph.structure, 0, v);
    Some(m)
}

fn add_lex_edge(c: &CertificateBundle) -> Option<CertificateBundle> {
    let mut m = c.clone();
    let w = non_neighbor(&c.lexgraph.structure, 0)?;
    insert_edge(&mut m.lexgraph.structure, 0, w);
    Some(m)
}

fn swap_lex_points(c: &CertificateBundle) -> Option<CertificateBundle> {
    if c.lexgraph.labels.len() < 2 {
        return None;
    }
    let mut m = c.clone();
    let (a, b) = m.lexgraph.labels.split_at_mut(1);
    std::mem::swap(&mut a[0].point, &mut b[0].point);
    Some(m)
}

fn corrupt_x_entry(c: &CertificateBundle) -> Option<CertificateBundle> {
    let mut m = c.clone();
    let x = &mut m.lexgraph.labels.first_mut()?.point.0;
    x[(0, 0)] += rat_frac(1, 7);
    Some(m)
}

fn unsort_adjacency(c: &CertificateBundle) -> Option<CertificateBundle> {
    let mut m = c.clone();
    let list = &mut m.lexgraph.structure.adj[0];
    if list.len() < 2 {
        return None;
    }
    list.swap(0, 1);
    Some(m)
}

fn unsort_basis(c: &CertificateBundle) -> Option<CertificateBundle> {
    let mut m = c.clone();
    let mut idx = c.lexgraph.labels.first()?.basis.indices().to_vec();
    if idx.len() < 2 {
        return None;
    }
    idx.swap(0, 1);
    m.lexgraph.labels[0].basis = Basis::from_raw(idx);
    Some(m)
}

fn redirect_morph(c: &CertificateBundle) -> Option<CertificateBundle> {
    let v = c.vertgraph.vertex_count();
    if v < 2 {
        return None;
    }
    let mut m = c.clone();
    m.morphism.morph[0] = (m.morphism.morph[0] + 1) % v;
    Some(m)
}

fn redirect_edge_inv(c: &CertificateBundle) -> Option<CertificateBundle> {
    if c.morphism.edge_inv.len() < 2 {
        return None;
    }
    let mut m = c.clone();
    m.morphism.edge_inv[0] = m.morphism.edge_inv[1];
    Some(m)
}

fn add_vertex_edge(c: &CertificateBundle) -> Option<CertificateBundle> {
    let g = &c.vertgraph.structure;
    let (u, w) = (0..g.vertex_count()).find_map(|u| non_neighbor(g, u).map(|w| (u, w)))?;
    let mut m = c.clone();
    insert_edge(&mut m.vertgraph.structure, u, w);
    Some(m)
}

fn corrupt_vertex_label(c: &CertificateBundle) -> Option<CertificateBundle> {
    let mut m = c.clone();
    // The last label is the largest, so bumping its first entry keeps order.
    let last = m.vertgraph.labels.last_mut()?;
    last.0[0] += Rat::one();
    Some(m)
}

fn shrink_bound(c: &CertificateBundle) -> Option<CertificateBundle> {
    let mut m = c.clone();
    let k = &mut m.boundedness.bound;
    *k = if k.is_positive() { &*k * rat_frac(1, 2) } else { rat_int(-1) };
    Some(m)
}

fn negative_multiplier(c: &CertificateBundle) -> Option<CertificateBundle> {
    let mut m = c.clone();
    let y = m.boundedness.combos.first_mut()?;
    let k = y.iter().position(Zero::is_zero).unwrap_or(0);
    y.0[k] = rat_int(-1);
    Some(m)
}

fn wrong_combination(c: &CertificateBundle) -> Option<CertificateBundle> {
    let mut m = c.clone();
    let y = m.boundedness.combos.first_mut()?;
    y.0[0] += Rat::one();
    Some(m)
}

fn swap_map_lbl(c: &CertificateBundle) -> Option<CertificateBundle> {
    if c.dimension.map_lbl.len() < 2 {
        return None;
    }
    let mut m = c.clone();
    m.dimension.map_lbl.swap(0, 1);
    Some(m)
}

fn corrupt_inv_lbl(c: &CertificateBundle) -> Option<CertificateBundle> {
    let mut m = c.clone();
    m.dimension.inv_lbl[(0, 0)] += Rat::one();
    Some(m)
}

fn start_out_of_range(c: &CertificateBundle) -> Option<CertificateBundle> {
    let mut m = c.clone();
    m.start = c.vertgraph.vertex_count();
    Some(m)
}

fn inflate_eccentricity(c: &CertificateBundle) -> Option<CertificateBundle> {
    let mut m = c.clone();
    m.eccentricity += 1;
    Some(m)
}

/// Removes lex vertex 0 and shifts every index, so the bundle stays well
/// formed and only the enumeration check can notice.
fn delete_lex_vertex(c: &CertificateBundle) -> Option<CertificateBundle> {
    if c.lexgraph.vertex_count() < 2 {
        return None;
    }
    let mut m = c.clone();
    let shift = |i: usize| i.saturating_sub(1);
    let g = &mut m.lexgraph;
    g.labels.remove(0);
    g.structure.adj.remove(0);
    for list in &mut g.structure.adj {
        list.retain(|&v| v != 0);
        list.iter_mut().for_each(|v| *v -= 1);
    }
    m.morphism.morph.remove(0);
    m.morphism.morph_inv.iter_mut().for_each(|i| *i = shift(*i));
    m.morphism.edge_inv.iter_mut().for_each(|(i, j)| (*i, *j) = (shift(*i), shift(*j)));
    Some(m)
}

type Operator = fn(&CertificateBundle) -> Option<CertificateBundle>;

pub fn mutations() -> Vec<Mutation> {
    use Stage::*;
    let table: [(&'static str, Stage, Operator); 18] = [
        ("drop lex edge", EnumAlgo, drop_lex_edge),
        ("add lex edge", EnumAlgo, add_lex_edge),
        ("swap lex points", EnumAlgo, swap_lex_points),
        ("corrupt X entry", EnumAlgo, corrupt_x_entry),
        ("delete lex vertex", EnumAlgo, delete_lex_vertex),
        ("unsort adjacency", WellFormed, unsort_adjacency),
        ("unsort basis", WellFormed, unsort_basis),
        ("start out of range", WellFormed, start_out_of_range),
        ("redirect morph", ImgGraph, redirect_morph),
        ("redirect edge_inv", ImgGraph, redirect_edge_inv),
        ("add vertex edge", ImgGraph, add_vertex_edge),
        ("corrupt vertex label", ImgGraph, corrupt_vertex_label),
        ("shrink K", Bounded, shrink_bound),
        ("negative multiplier", Bounded, negative_multiplier),
        ("wrong combination", Bounded, wrong_combination),
        ("swap map_lbl", DimFull, swap_map_lbl),
        ("corrupt inv_lbl", DimFull, corrupt_inv_lbl),
        ("inflate eccentricity", Diameter, inflate_eccentricity),
    ];
    table
        .into_iter()
        .map(|(name, expected, apply)| Mutation { name, expected, apply })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::gen_cube;
    use crate::prover::{prove, ProverOptions};
    use crate::verifier::hirsch_audit;

    #[test]
    fn each_mutant_fails_at_its_stage() {
        let c = prove(&gen_cube(3).unwrap(), &ProverOptions::default()).unwrap();
        assert!(hirsch_audit(&c).certified());
        for mu in mutations() {
            let bad = (mu.apply)(&c).expect(mu.name);
            assert_ne!(bad, c, "{}", mu.name);
            let v = hirsch_audit(&bad);
            assert_eq!(v.stage, mu.expected, "{}: {}", mu.name, v.detail);
        }
    }

    #[test]
    fn too_small_bundles_are_skipped() {
        let c = prove(&gen_cube(1).unwrap(), &ProverOptions::default()).unwrap();
        let skipped: Vec<_> = mutations().into_iter().filter(|m| (m.apply)(&c).is_none()).map(|m| m.name).collect();
        assert!(skipped.contains(&"swap map_lbl"));
        assert!(skipped.contains(&"unsort basis"));
    }
}
