//! Exact rational scalars, dense vectors and matrices, and the lexicographic
//! order used to compare symbolically perturbed rows.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Index, IndexMut};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rat = BigRational;

pub fn rat_normalize(num: BigInt, den: BigInt) -> Result<Rat> {
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(Rat::new(num, den))
}

pub fn rat_int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn rat_frac(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `[+-]digits[/digits]`. The denominator must be positive.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::Invalid(format!("malformed rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = num.strip_prefix(['+', '-']).unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = match den {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            BigInt::from_str(d).map_err(|_| bad())?
        }
    };
    rat_normalize(num, den)
}

/// Σ aᵢ·bᵢ, skipping zero terms.
pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatVector(pub Vec<Rat>);

impl RatVector {
    pub fn zeros(len: usize) -> Self {
        RatVector(vec![Rat::zero(); len])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        RatVector(v.iter().map(|&x| rat_int(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Rat] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rat> {
        self.0.iter()
    }
}

impl Index<usize> for RatVector {
    type Output = Rat;
    fn index(&self, i: usize) -> &Rat {
        &self.0[i]
    }
}

impl From<Vec<Rat>> for RatVector {
    fn from(v: Vec<Rat>) -> Self {
        RatVector(v)
    }
}

impl fmt::Display for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// Lexicographic comparison of two equal-length rows. A row (α₀,…,αₘ) stands
/// for the polynomial Σ αₖ εᵏ with 0 < ε ≪ 1, so the first differing
/// coefficient decides.
pub fn lex_compare(u: &[Rat], v: &[Rat]) -> Result<Ordering> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch(format!(
            "lex_compare on lengths {} and {}",
            u.len(),
            v.len()
        )));
    }
    Ok(lex_cmp_unchecked(u, v))
}

pub(crate) fn lex_cmp_unchecked(u: &[Rat], v: &[Rat]) -> Ordering {
    for (a, b) in u.iter().zip(v) {
        match a.cmp(b) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    Ordering::Equal
}

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rat>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(RatMatrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::from_vec(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat_int(x)).collect())
                .collect(),
        )
        .expect("rectangular integer rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Rat] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn entries(&self) -> &[Rat] {
        &self.data
    }

    pub fn entries_mut(&mut self) -> &mut [Rat] {
        &mut self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Rows selected by `idx`, in the given order.
    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        RatMatrix {
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.rows);
        for i in 0..self.rows {
            for &j in idx {
                data.push(self[(i, j)].clone());
            }
        }
        RatMatrix {
            rows: self.rows,
            cols: idx.len(),
            data,
        }
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    /// Returns `self` with every entry multiplied by `s`.
    pub fn scaled(&self, s: &Rat) -> Self {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub fn mat_mul(m: &RatMatrix, n: &RatMatrix) -> Result<RatMatrix> {
    if m.cols != n.rows {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} times {}x{}",
            m.rows, m.cols, n.rows, n.cols
        )));
    }
    let mut out = RatMatrix::zeros(m.rows, n.cols);
    for i in 0..m.rows {
        for (k, a) in m.row(i).iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in n.row(k).iter().enumerate() {
                if !b.is_zero() {
                    out[(i, j)] += a * b;
                }
            }
        }
    }
    Ok(out)
}

/// Pivot selection for Gaussian elimination. All checks downstream are exact,
/// so the rule only affects intermediate sizes, never the result.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PivotRule {
    #[default]
    FirstNonzero,
    LastNonzero,
}

/// Solves `M·X = B` for square `M`. `Ok(None)` means `M` is singular.
pub fn solve_exact(m: &RatMatrix, b: &RatMatrix) -> Result<Option<RatMatrix>> {
    solve_exact_with(m, b, PivotRule::FirstNonzero)
}

pub fn solve_exact_with(m: &RatMatrix, b: &RatMatrix, rule: PivotRule) -> Result<Option<RatMatrix>> {
    if m.rows != m.cols {
        return Err(Error::DimensionMismatch(format!(
            "solve on non-square {}x{} matrix",
            m.rows, m.cols
        )));
    }
    if b.rows != m.rows {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} system with {}-row right-hand side",
            m.rows, m.cols, b.rows
        )));
    }
    let n = m.rows;
    let k = b.cols;
    let w = n + k;
    // Augmented [M | B], reduced in place to [Id | X].
    let mut aug: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut row = Vec::with_capacity(w);
            row.extend_from_slice(m.row(i));
            row.extend_from_slice(b.row(i));
            row
        })
        .collect();
    for col in 0..n {
        let candidates = col..n;
        let pivot = match rule {
            PivotRule::FirstNonzero => candidates.clone().find(|&r| !aug[r][col].is_zero()),
            PivotRule::LastNonzero => candidates.clone().rev().find(|&r| !aug[r][col].is_zero()),
        };
        let Some(p) = pivot else {
            return Ok(None);
        };
        aug.swap(col, p);
        let inv = aug[col][col].recip();
        for x in aug[col][col..].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let pivot_row = aug[col].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
    }
    let data = aug.into_iter().flat_map(|row| row.into_iter().skip(n)).collect();
    Ok(Some(RatMatrix { rows: n, cols: k, data }))
}

pub fn mat_inverse(m: &RatMatrix) -> Result<Option<RatMatrix>> {
    solve_exact(m, &RatMatrix::identity(m.rows))
}

/// Rank via row echelon form.
pub fn rank(m: &RatMatrix) -> usize {
    let mut rows: Vec<Vec<Rat>> = (0..m.rows).map(|i| m.row(i).to_vec()).collect();
    let mut r = 0;
    for col in 0..m.cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot_row = rows[r].clone();
        for row in rows.iter_mut().skip(r + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &pivot_row[col];
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &factor * p;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

pub fn is_nonnegative(x: &Rat) -> bool {
    !x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rat {
        rat_frac(n, d)
    }

    #[test]
    fn normalize_reduces_and_fixes_sign() {
        let a = rat_normalize(2.into(), 4.into()).unwrap();
        assert_eq!((a.numer().clone(), a.denom().clone()), (1.into(), 2.into()));
        let b = rat_normalize(3.into(), (-6).into()).unwrap();
        assert_eq!((b.numer().clone(), b.denom().clone()), ((-1).into(), 2.into()));
        let c = rat_normalize(0.into(), 7.into()).unwrap();
        assert_eq!((c.numer().clone(), c.denom().clone()), (0.into(), 1.into()));
        assert_eq!(rat_normalize(1.into(), 0.into()), Err(Error::ZeroDenominator));
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rat("-7/3").unwrap(), r(-7, 3));
        assert_eq!(parse_rat("5").unwrap(), r(5, 1));
        assert_eq!(parse_rat("+4/6").unwrap(), r(2, 3));
        for bad in ["", "-", "1/", "/2", "1/-2", "1.5", "a", "1/0"] {
            assert!(parse_rat(bad).is_err(), "{bad:?}");
        }
        assert_eq!(r(-7, 3).to_string(), "-7/3");
        assert_eq!(r(10, 2).to_string(), "5");
    }

    #[test]
    fn lex_compare_examples() {
        let v = |x: &[i64]| RatVector::from_ints(x);
        assert_eq!(lex_compare(v(&[1, 0, 0]).as_slice(), v(&[1, 0, 0]).as_slice()).unwrap(), Ordering::Equal);
        assert_eq!(lex_compare(v(&[1, -1, 0]).as_slice(), v(&[1, 0, -5]).as_slice()).unwrap(), Ordering::Less);
        assert_eq!(lex_compare(v(&[0, 0, 1]).as_slice(), v(&[0, 0, 0]).as_slice()).unwrap(), Ordering::Greater);
        assert!(lex_compare(v(&[1]).as_slice(), v(&[1, 2]).as_slice()).is_err());
    }

    #[test]
    fn mat_mul_examples() {
        let m = RatMatrix::from_int_rows(&[&[1, 2], &[3, 4]]);
        assert_eq!(mat_mul(&RatMatrix::identity(2), &m).unwrap(), m);
        let ones = RatMatrix::from_int_rows(&[&[1], &[1]]);
        assert_eq!(mat_mul(&m, &ones).unwrap(), RatMatrix::from_int_rows(&[&[3], &[7]]));
        assert!(mat_mul(&ones, &ones).is_err());
    }

    #[test]
    fn solve_examples() {
        let b = RatMatrix::from_int_rows(&[&[1, 2], &[3, 4], &[5, 6]]);
        assert_eq!(solve_exact(&RatMatrix::identity(3), &b).unwrap(), Some(b));
        let d = RatMatrix::from_int_rows(&[&[2, 0], &[0, 4]]);
        let expect = RatMatrix::from_rows(vec![vec![r(1, 2), r(0, 1)], vec![r(0, 1), r(1, 4)]]).unwrap();
        assert_eq!(solve_exact(&d, &RatMatrix::identity(2)).unwrap(), Some(expect));
        let s = RatMatrix::from_int_rows(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve_exact(&s, &RatMatrix::identity(2)).unwrap(), None);
        assert!(solve_exact(&RatMatrix::zeros(2, 3), &RatMatrix::zeros(2, 1)).is_err());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(mat_inverse(&RatMatrix::identity(4)).unwrap(), Some(RatMatrix::identity(4)));
        let swap = RatMatrix::from_int_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(mat_inverse(&swap).unwrap(), Some(swap));
        assert_eq!(mat_inverse(&RatMatrix::from_int_rows(&[&[1, 2], &[2, 4]])).unwrap(), None);
    }

    #[test]
    fn rank_counts_independent_rows() {
        assert_eq!(rank(&RatMatrix::identity(3)), 3);
        assert_eq!(rank(&RatMatrix::from_int_rows(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 0]])), 2);
        assert_eq!(rank(&RatMatrix::zeros(2, 2)), 0);
    }

    fn small_rat() -> impl Strategy<Value = Rat> {
        (-9i64..=9, 1i64..=5).prop_map(|(n, d)| r(n, d))
    }

    fn square(n: usize) -> impl Strategy<Value = RatMatrix> {
        proptest::collection::vec(small_rat(), n * n).prop_map(move |v| RatMatrix::from_vec(n, n, v).unwrap())
    }

    proptest! {
        #[test]
        fn field_laws(a in small_rat(), b in small_rat(), c in small_rat()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
            prop_assert!((&a + (-&a)).is_zero());
        }

        #[test]
        fn canonical_form(n in -1000i64..1000, d in 1i64..1000) {
            let x = r(n, d);
            prop_assert!(x.denom() > &BigInt::zero());
            prop_assert!(num_integer::Integer::gcd(x.numer(), x.denom()).is_one());
        }

        #[test]
        fn lex_is_total_order(u in proptest::collection::vec(small_rat(), 3),
                              v in proptest::collection::vec(small_rat(), 3),
                              w in proptest::collection::vec(small_rat(), 3)) {
            let uv = lex_compare(&u, &v).unwrap();
            prop_assert_eq!(uv.reverse(), lex_compare(&v, &u).unwrap());
            if uv != Ordering::Greater && lex_compare(&v, &w).unwrap() != Ordering::Greater {
                prop_assert_ne!(lex_compare(&u, &w).unwrap(), Ordering::Greater);
            }
            prop_assert_eq!(lex_compare(&u[..1], &v[..1]).unwrap(), u[0].cmp(&v[0]));
        }

        #[test]
        fn mul_associates(m in square(4), n in square(4), p in square(4)) {
            let left = mat_mul(&mat_mul(&m, &n).unwrap(), &p).unwrap();
            let right = mat_mul(&m, &mat_mul(&n, &p).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn solve_satisfies_system(m in square(4), b in proptest::collection::vec(small_rat(), 8)) {
            let b = RatMatrix::from_vec(4, 2, b).unwrap();
            let first = solve_exact_with(&m, &b, PivotRule::FirstNonzero).unwrap();
            let last = solve_exact_with(&m, &b, PivotRule::LastNonzero).unwrap();
            prop_assert_eq!(&first, &last);
            match first {
                Some(x) => prop_assert_eq!(mat_mul(&m, &x).unwrap(), b),
                None => prop_assert!(rank(&m) < 4),
            }
        }

        #[test]
        fn inverse_is_two_sided(m in square(5)) {
            if let Some(inv) = mat_inverse(&m).unwrap() {
                prop_assert_eq!(mat_mul(&m, &inv).unwrap(), RatMatrix::identity(5));
                prop_assert_eq!(mat_mul(&inv, &m).unwrap(), RatMatrix::identity(5));
            } else {
                prop_assert!(rank(&m) < 5);
            }
        }
    }
}
