//! Inequality systems `A·x ≥ b`, their symbolic perturbation, bases and
//! basic points.
//!
//! The perturbation replaces each `b_i` by the polynomial `b_i − ε^(i+1)`,
//! encoded as row `i` of the `m × (1+m)` matrix `[b | −Id_m]`. Perturbed
//! points are `n × (1+m)` matrices whose rows are compared lexicographically;
//! ε is never given a numeric value.

use std::cmp::Ordering;
use std::fmt::Write as _;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{dot, mat_mul, parse_rat, solve_exact, Rat, RatMatrix, RatVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolytope {
    a: RatMatrix,
    b: RatVector,
}

impl HPolytope {
    pub fn new(a: RatMatrix, b: RatVector) -> Result<Self> {
        if a.rows() == 0 || a.cols() == 0 {
            return Err(Error::Invalid("polytope needs m >= 1 and n >= 1".into()));
        }
        if a.rows() != b.len() {
            return Err(Error::DimensionMismatch(format!(
                "A has {} rows but b has {} entries",
                a.rows(),
                b.len()
            )));
        }
        Ok(HPolytope { a, b })
    }

    pub fn from_int_rows(rows: &[&[i64]], b: &[i64]) -> Self {
        Self::new(RatMatrix::from_int_rows(rows), RatVector::from_ints(b)).expect("well-shaped system")
    }

    /// Number of inequalities.
    pub fn m(&self) -> usize {
        self.a.rows()
    }

    /// Ambient dimension.
    pub fn n(&self) -> usize {
        self.a.cols()
    }

    pub fn a(&self) -> &RatMatrix {
        &self.a
    }

    pub fn b(&self) -> &RatVector {
        &self.b
    }

    /// Classical feasibility `A·x ≥ b`.
    pub fn contains(&self, x: &[Rat]) -> bool {
        x.len() == self.n() && (0..self.m()).all(|i| dot(self.a.row(i), x) >= self.b[i])
    }

    /// Parses the native text format: a header `m n`, then `m` lines of
    /// `a_i0 … a_i(n-1) b_i`.
    pub fn parse_poly(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "empty file"))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::parse(hline, format!("bad header token {t:?}"))))
            .collect::<Result<_>>()?;
        let [m, n] = dims[..] else {
            return Err(Error::parse(hline, "header must be \"m n\""));
        };
        let mut rows = Vec::with_capacity(m);
        let mut b = Vec::with_capacity(m);
        for k in 0..m {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| Error::parse(hline + k + 1, format!("expected {m} rows, found {k}")))?;
            let mut vals: Vec<Rat> = line
                .split_whitespace()
                .map(|t| parse_rat(t).map_err(|e| Error::parse(ln, e.to_string())))
                .collect::<Result<_>>()?;
            if vals.len() != n + 1 {
                return Err(Error::parse(ln, format!("expected {} values, found {}", n + 1, vals.len())));
            }
            b.push(vals.pop().expect("n+1 >= 1"));
            rows.push(vals);
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::parse(ln, "trailing data after last row"));
        }
        Self::new(RatMatrix::from_rows(rows)?, RatVector(b))
            .map_err(|e| Error::parse(hline, e.to_string()))
    }

    pub fn to_poly_string(&self) -> String {
        let mut s = format!("{} {}\n", self.m(), self.n());
        for i in 0..self.m() {
            for x in self.a.row(i) {
                write!(s, "{x} ").unwrap();
            }
            writeln!(s, "{}", self.b[i]).unwrap();
        }
        s
    }
}

/// The perturbed right-hand side `[b | −Id_m]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerturbedRhs(RatMatrix);

impl PerturbedRhs {
    pub fn matrix(&self) -> &RatMatrix {
        &self.0
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        self.0.row(i)
    }
}

pub fn perturb(p: &HPolytope) -> PerturbedRhs {
    let m = p.m();
    let mut bt = RatMatrix::zeros(m, 1 + m);
    for i in 0..m {
        bt[(i, 0)] = p.b[i].clone();
        bt[(i, 1 + i)] = -Rat::one();
    }
    PerturbedRhs(bt)
}

/// A sorted set of `n` distinct row indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Basis(Vec<usize>);

impl Basis {
    /// Builds a basis from arbitrary-order indices; rejects duplicates.
    pub fn new(mut idx: Vec<usize>) -> Result<Self> {
        idx.sort_unstable();
        if idx.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invalid(format!("repeated index in basis {idx:?}")));
        }
        Ok(Basis(idx))
    }

    /// Wraps an index array without sorting; used for data read from
    /// certificates, whose sortedness is checked separately.
    pub fn from_raw(idx: Vec<usize>) -> Self {
        Basis(idx)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_strictly_sorted(&self) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1])
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    /// Size of the intersection of two sorted index arrays, in linear time.
    pub fn intersection_len(&self, other: &Basis) -> usize {
        let (mut i, mut j, mut count) = (0, 0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    count += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        count
    }

    /// `self ∖ {leaving} ∪ {entering}`, kept sorted.
    pub fn pivot(&self, leaving: usize, entering: usize) -> Basis {
        let mut idx: Vec<usize> = self.0.iter().copied().filter(|&i| i != leaving).collect();
        let pos = idx.partition_point(|&i| i < entering);
        idx.insert(pos, entering);
        Basis(idx)
    }

    pub fn valid_for(&self, p: &HPolytope) -> bool {
        self.len() == p.n() && self.is_strictly_sorted() && self.0.iter().all(|&i| i < p.m())
    }
}

impl std::fmt::Display for Basis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

fn check_basis(p: &HPolytope, basis: &Basis) -> Result<()> {
    if !basis.valid_for(p) {
        return Err(Error::Invalid(format!(
            "{basis} is not a sorted {}-subset of 0..{}",
            p.n(),
            p.m()
        )));
    }
    Ok(())
}

/// Perturbed basic point: an `n × (1+m)` matrix whose column 0 is the
/// unperturbed point and whose column `1+k` holds the ε^(k+1) coefficients.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PertPoint(pub RatMatrix);

impl PertPoint {
    pub fn matrix(&self) -> &RatMatrix {
        &self.0
    }

    /// π(X): the value at ε = 0.
    pub fn unperturbed(&self) -> RatVector {
        RatVector(self.0.column(0))
    }
}

/// Solves `A_I·x = b_I`; `Ok(None)` when `A_I` is singular.
pub fn basic_point(p: &HPolytope, basis: &Basis) -> Result<Option<RatVector>> {
    check_basis(p, basis)?;
    let a_i = p.a.select_rows(basis.indices());
    let b_i = RatMatrix::from_vec(p.n(), 1, basis.indices().iter().map(|&i| p.b[i].clone()).collect())?;
    Ok(solve_exact(&a_i, &b_i)?.map(|x| RatVector(x.column(0))))
}

/// Solves `A_I·X = b̃_I`; `Ok(None)` when `A_I` is singular.
pub fn pert_basic_point(p: &HPolytope, bt: &PerturbedRhs, basis: &Basis) -> Result<Option<PertPoint>> {
    check_basis(p, basis)?;
    let a_i = p.a.select_rows(basis.indices());
    let Some(inv) = solve_exact(&a_i, &RatMatrix::identity(p.n()))? else {
        return Ok(None);
    };
    let rhs = bt.0.select_rows(basis.indices());
    Ok(Some(PertPoint(mat_mul(&inv, &rhs)?)))
}

/// Column indices where `x` has a nonzero entry.
pub(crate) fn nonzero_columns(x: &RatMatrix) -> Vec<usize> {
    (0..x.cols()).filter(|&k| (0..x.rows()).any(|l| !x[(l, k)].is_zero())).collect()
}

/// Compares row `i` of `A·X` with row `i` of `b̃` lexicographically without
/// materialising the product. `support` lists the nonzero columns of `X`.
pub(crate) fn lex_cmp_row(p: &HPolytope, bt: &PerturbedRhs, x: &RatMatrix, support: &[usize], i: usize) -> Ordering {
    let a_row = p.a.row(i);
    let b_row = bt.row(i);
    let zero = Rat::zero();
    let mut next = support.iter().copied().peekable();
    for k in 0..b_row.len() {
        let lhs = if next.peek() == Some(&k) {
            next.next();
            let mut acc = Rat::zero();
            for (l, a) in a_row.iter().enumerate() {
                let xv = &x[(l, k)];
                if !a.is_zero() && !xv.is_zero() {
                    acc += a * xv;
                }
            }
            acc
        } else {
            zero.clone()
        };
        match lhs.cmp(&b_row[k]) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    Ordering::Equal
}

/// `A·X ≥lex b̃` row by row. Shape mismatches are infeasible.
pub fn is_lex_feasible(p: &HPolytope, bt: &PerturbedRhs, x: &PertPoint) -> bool {
    let x = &x.0;
    if x.rows() != p.n() || x.cols() != 1 + p.m() {
        return false;
    }
    let support = nonzero_columns(x);
    (0..p.m()).all(|i| lex_cmp_row(p, bt, x, &support, i) != Ordering::Less)
}

/// Two bases are adjacent when they share exactly `n − 1` indices.
pub fn bases_adjacent(i: &Basis, j: &Basis) -> bool {
    i.len() == j.len() && !i.is_empty() && i.intersection_len(j) == i.len() - 1
}

/// Checks `A_I·Y = −Id_n` where `Y` is the set of columns `1+i` (`i ∈ I`) of
/// `X`. When `A_I·X = b̃_I` this always holds, so `X` itself proves that `A_I`
/// is nonsingular.
pub fn nonsingularity_witness(p: &HPolytope, basis: &Basis, x: &PertPoint) -> bool {
    if !basis.valid_for(p) || x.0.rows() != p.n() || x.0.cols() != 1 + p.m() {
        return false;
    }
    let cols: Vec<usize> = basis.indices().iter().map(|&i| 1 + i).collect();
    let y = x.0.select_cols(&cols);
    let a_i = p.a.select_rows(basis.indices());
    let prod = mat_mul(&a_i, &y).expect("shapes checked");
    prod == RatMatrix::identity(p.n()).scaled(&-Rat::one())
}
