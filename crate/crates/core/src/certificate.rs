//! Certificate data exchanged between the untrusted prover and the verifier.
//! Nothing here computes; these are plain containers.

use crate::exactnum::{Rat, RatMatrix, RatVector};
use crate::graphcore::LabeledGraph;
use crate::polytope::{Basis, HPolytope, PertPoint};

/// Label of a lex-graph vertex. Ordered by basis first, then by point.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LexLabel {
    pub basis: Basis,
    pub point: PertPoint,
}

pub type LexGraph = LabeledGraph<LexLabel>;
pub type VertGraph = LabeledGraph<RatVector>;

/// Witnesses that the vertex graph is the image of the lex-graph under
/// `(I, X) ↦ X[:, 0]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MorphismWitness {
    /// lex vertex → vertex-graph vertex
    pub morph: Vec<usize>,
    /// vertex-graph vertex → one lex preimage
    pub morph_inv: Vec<usize>,
    /// For the vertex-graph edges `(u, v)`, `u < v`, in sorted order: a lex
    /// edge `(i, j)` with `morph[i] = u` and `morph[j] = v`.
    pub edge_inv: Vec<(usize, usize)>,
}

/// `n + 1` affinely independent vertices (`origin` and `map_lbl`) and the
/// inverse of `[v¹ − v⁰ … vⁿ − v⁰]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionWitness {
    pub origin: usize,
    pub map_lbl: Vec<usize>,
    pub inv_lbl: RatMatrix,
}

/// For each coordinate `i` and sign `s`, a nonnegative `y` with
/// `yᵀA = s·e_i`; entry `2i` holds `s = +1`, entry `2i + 1` holds `s = −1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundednessWitness {
    pub combos: Vec<RatVector>,
    pub bound: Rat,
}

impl BoundednessWitness {
    pub fn combo(&self, coord: usize, positive: bool) -> &RatVector {
        &self.combos[2 * coord + usize::from(!positive)]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateBundle {
    pub polytope: HPolytope,
    pub lexgraph: LexGraph,
    pub vertgraph: VertGraph,
    pub morphism: MorphismWitness,
    pub dimension: DimensionWitness,
    pub boundedness: BoundednessWitness,
    /// Vertex-graph index whose eccentricity bounds the diameter from below.
    pub start: usize,
    /// The eccentricity of `start` claimed by the prover.
    pub eccentricity: usize,
}
