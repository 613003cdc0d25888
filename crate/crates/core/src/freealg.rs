//! Free algebra over the coefficient ring, dense matrices over both rings,
//! Kronecker products and relation canonicalization.

use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::scalar::{CkScalar, DualValue, JSignature};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Family {
    T,
    TTilde,
    U,
    A,
    L,
    LTilde,
    LDiagPlus,
    LDiagMinus,
}

impl Family {
    fn prefix(self) -> &'static str {
        match self {
            Family::T => "t",
            Family::TTilde => "t~",
            Family::U => "u",
            Family::A => "a",
            Family::L => "l",
            Family::LTilde => "l~",
            Family::LDiagPlus => "l+",
            Family::LDiagMinus => "l-",
        }
    }

    pub fn is_functional(self) -> bool {
        matches!(
            self,
            Family::L | Family::LTilde | Family::LDiagPlus | Family::LDiagMinus
        )
    }

    /// The functional family dual to a symplectic generator family.
    pub fn dual(self) -> Family {
        match self {
            Family::T => Family::L,
            Family::TTilde => Family::LTilde,
            Family::L => Family::T,
            Family::LTilde => Family::TTilde,
            f => f,
        }
    }
}

/// A generator `t_ik`, `t̃_ik`, `u_ik`, `a_ik` or a functional `l_ik`, `l̃_ik`, `l^{(±)}_kk`.
///
/// `slot` separates several symbols that are first met in the same matrix
/// entry; it is 0 whenever the entry index alone identifies the symbol.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Symbol {
    pub family: Family,
    pub row: u8,
    pub col: u8,
    pub slot: u8,
}

impl Symbol {
    pub fn new(family: Family, row: usize, col: usize) -> Self {
        Symbol {
            family,
            row: row as u8,
            col: col as u8,
            slot: 0,
        }
    }

    pub fn with_slot(mut self, slot: u8) -> Self {
        self.slot = slot;
        self
    }

    pub fn parse(s: &str) -> Result<Symbol> {
        let bad = || Error::Parse(format!("bad symbol `{s}`"));
        let (body, slot) = match s.split_once('.') {
            Some((b, k)) => (b, k.parse::<u8>().map_err(|_| bad())?),
            None => (s, 0),
        };
        let families = [
            Family::TTilde,
            Family::LTilde,
            Family::LDiagPlus,
            Family::LDiagMinus,
            Family::T,
            Family::U,
            Family::A,
            Family::L,
        ];
        for fam in families {
            if let Some(idx) = body.strip_prefix(fam.prefix()) {
                let digits: Vec<u32> = idx
                    .chars()
                    .map(|c| c.to_digit(10))
                    .collect::<Option<_>>()
                    .ok_or_else(bad)?;
                if digits.len() != 2 {
                    return Err(bad());
                }
                return Ok(Symbol {
                    family: fam,
                    row: digits[0] as u8,
                    col: digits[1] as u8,
                    slot,
                });
            }
        }
        Err(bad())
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.family.prefix(), self.row, self.col)?;
        if self.slot > 0 {
            write!(f, ".{}", self.slot)?;
        }
        Ok(())
    }
}

pub type Word = SmallVec<[Symbol; 4]>;

pub fn word_to_string(w: &Word) -> String {
    if w.is_empty() {
        "1".to_string()
    } else {
        w.iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join("·")
    }
}

/// Noncommutative polynomial: a finite sum of scalar-weighted words.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NcPoly {
    rank: usize,
    terms: BTreeMap<Word, CkScalar>,
}

impl NcPoly {
    pub fn zero(rank: usize) -> Self {
        NcPoly {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(CkScalar::one(rank))
    }

    pub fn constant(c: CkScalar) -> Self {
        Self::monomial(c, Word::new())
    }

    pub fn symbol(rank: usize, s: Symbol) -> Self {
        Self::monomial(CkScalar::one(rank), smallvec::smallvec![s])
    }

    pub fn monomial(c: CkScalar, w: Word) -> Self {
        let mut p = NcPoly::zero(c.rank());
        p.add_term(w, c);
        p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &CkScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Word) -> CkScalar {
        self.terms
            .get(w)
            .cloned()
            .unwrap_or_else(|| CkScalar::zero(self.rank))
    }

    pub fn leading(&self) -> Option<(&Word, &CkScalar)> {
        self.terms.iter().next()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.terms.keys().flat_map(|w| w.iter().copied())
    }

    pub fn add_term(&mut self, w: Word, c: CkScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_rank(&self, o: &NcPoly) -> Result<()> {
        if self.rank == o.rank {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "polynomial ranks {} and {}",
                self.rank, o.rank
            )))
        }
    }

    pub fn checked_add(&self, o: &NcPoly) -> Result<NcPoly> {
        self.check_rank(o)?;
        let mut out = self.clone();
        for (w, c) in &o.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, o: &NcPoly) -> Result<NcPoly> {
        self.check_rank(o)?;
        let mut out = NcPoly::zero(self.rank);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &o.terms {
                let mut w = w1.clone();
                w.extend(w2.iter().copied());
                out.add_term(w, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn add(&self, o: &NcPoly) -> NcPoly {
        self.checked_add(o).expect("polynomial rank mismatch")
    }

    pub fn sub(&self, o: &NcPoly) -> NcPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &NcPoly) -> NcPoly {
        self.checked_mul(o).expect("polynomial rank mismatch")
    }

    pub fn neg(&self) -> NcPoly {
        NcPoly {
            rank: self.rank,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &CkScalar) -> NcPoly {
        let mut out = NcPoly::zero(self.rank);
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    /// Applies `f` to every coefficient, recombining equal words.
    pub fn try_map_coeffs(
        &self,
        mut f: impl FnMut(&CkScalar) -> Result<CkScalar>,
    ) -> Result<NcPoly> {
        let mut out = NcPoly::zero(self.rank);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c)?);
        }
        Ok(out)
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(&CkScalar) -> CkScalar) -> NcPoly {
        self.try_map_coeffs(|c| Ok(f(c))).expect("infallible")
    }

    /// Replaces symbols through `f`; symbols mapped to `None` are kept.
    pub fn substitute(&self, f: &impl Fn(Symbol) -> Option<NcPoly>) -> NcPoly {
        let mut out = NcPoly::zero(self.rank);
        for (w, c) in &self.terms {
            let mut acc = NcPoly::constant(c.clone());
            for &s in w {
                let image = f(s).unwrap_or_else(|| NcPoly::symbol(self.rank, s));
                acc = acc.mul(&image);
                if acc.is_zero() {
                    break;
                }
            }
            out = out.add(&acc);
        }
        out
    }

    /// Splits the polynomial by the `j` exponent vector of its coefficients.
    pub fn split_by_j(&self) -> Vec<NcPoly> {
        let mut parts: BTreeMap<SmallVec<[i32; 6]>, NcPoly> = BTreeMap::new();
        for (w, c) in &self.terms {
            for (jexp, part) in c.split_by_j() {
                parts
                    .entry(jexp)
                    .or_insert_with(|| NcPoly::zero(self.rank))
                    .add_term(w.clone(), part);
            }
        }
        parts.into_values().collect()
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{}", word_to_string(w))?;
            } else {
                write!(f, "({c})·{}", word_to_string(w))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Minimal ring interface shared by matrix entry types.
pub trait RingElem: Clone + PartialEq {
    fn zero_of_rank(rank: usize) -> Self;
    fn one_of_rank(rank: usize) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_elem(&self, o: &Self) -> Self;
    fn mul_elem(&self, o: &Self) -> Self;
    fn neg_elem(&self) -> Self;
}

impl RingElem for CkScalar {
    fn zero_of_rank(rank: usize) -> Self {
        CkScalar::zero(rank)
    }
    fn one_of_rank(rank: usize) -> Self {
        CkScalar::one(rank)
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_elem(&self, o: &Self) -> Self {
        self + o
    }
    fn mul_elem(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_elem(&self) -> Self {
        -self
    }
}

impl RingElem for NcPoly {
    fn zero_of_rank(rank: usize) -> Self {
        NcPoly::zero(rank)
    }
    fn one_of_rank(rank: usize) -> Self {
        NcPoly::one(rank)
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_elem(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn mul_elem(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn neg_elem(&self) -> Self {
        self.neg()
    }
}

impl RingElem for DualValue {
    fn zero_of_rank(rank: usize) -> Self {
        DualValue::zero(rank)
    }
    fn one_of_rank(rank: usize) -> Self {
        DualValue::scalar(rank, num_complex::Complex64::new(1.0, 0.0))
    }
    fn is_zero_elem(&self) -> bool {
        self.norm() == 0.0
    }
    fn add_elem(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn mul_elem(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn neg_elem(&self) -> Self {
        self.scale(num_complex::Complex64::new(-1.0, 0.0))
    }
}

/// Dense row-major matrix; indices are zero-based in the API.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    rank: usize,
    data: Vec<T>,
}

pub type RingMatrix = Matrix<CkScalar>;
pub type AlgMatrix = Matrix<NcPoly>;
pub type NumMatrix = Matrix<DualValue>;

impl<T: RingElem> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize, rank: usize) -> Self {
        Matrix {
            rows,
            cols,
            rank,
            data: vec![T::zero_of_rank(rank); rows * cols],
        }
    }

    pub fn identity(n: usize, rank: usize) -> Self {
        let mut m = Self::zeros(n, n, rank);
        for i in 0..n {
            m.data[i * n + i] = T::one_of_rank(rank);
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        rank: usize,
        mut f: impl FnMut(usize, usize) -> T,
    ) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Matrix {
            rows,
            cols,
            rank,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: T) {
        self.data[i * self.cols + j] = x;
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.data
            .iter()
            .enumerate()
            .map(move |(k, x)| (k / self.cols, k % self.cols, x))
    }

    pub fn map<U: RingElem>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            rank: self.rank,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<U: RingElem>(&self, f: impl FnMut(&T) -> Result<U>) -> Result<Matrix<U>> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            rank: self.rank,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero_elem())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows, self.rank)
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Self::zeros(self.rows, o.cols, self.rank);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero_elem() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero_elem() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].add_elem(&a.mul_elem(b));
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.checked_mul(o).expect("matrix dimension mismatch")
    }

    fn check_same_shape(&self, o: &Self) -> Result<()> {
        if self.rows == o.rows && self.cols == o.cols {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )))
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        self.check_same_shape(o)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            rank: self.rank,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.add_elem(b))
                .collect(),
        })
    }

    pub fn add(&self, o: &Self) -> Self {
        self.checked_add(o).expect("matrix dimension mismatch")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.checked_add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.neg_elem())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, self.rank, |i, j| {
            self.get(j, i).clone()
        })
    }

    /// `kron(A, B)[(i,j),(k,l)] = A[i,k]·B[j,l]` with row-major pair flattening.
    pub fn kron(&self, o: &Self) -> Self {
        let (br, bc) = (o.rows, o.cols);
        Self::from_fn(self.rows * br, self.cols * bc, self.rank, |r, c| {
            let a = self.get(r / br, c / bc);
            if a.is_zero_elem() {
                return T::zero_of_rank(self.rank);
            }
            a.mul_elem(o.get(r % br, c % bc))
        })
    }

    /// `M ⊗ I`.
    pub fn embed_left(&self) -> Self {
        self.kron(&Self::identity(self.rows, self.rank))
    }

    /// `I ⊗ M`.
    pub fn embed_right(&self) -> Self {
        Self::identity(self.rows, self.rank).kron(self)
    }

    /// The flip `P(u ⊗ w) = w ⊗ u` on `C^n ⊗ C^n`.
    pub fn flip(n: usize, rank: usize) -> Self {
        let mut p = Self::zeros(n * n, n * n, rank);
        for a in 0..n {
            for b in 0..n {
                p.set(a * n + b, b * n + a, T::one_of_rank(rank));
            }
        }
        p
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.entries().all(|(i, j, x)| j <= i || x.is_zero_elem())
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.entries().all(|(i, j, x)| j >= i || x.is_zero_elem())
    }

    /// Positions where `self` and `o` differ.
    pub fn diff_positions(&self, o: &Self) -> Vec<(usize, usize)> {
        self.entries()
            .filter(|(i, j, x)| *x != o.get(*i, *j))
            .map(|(i, j, _)| (i, j))
            .collect()
    }
}

impl RingMatrix {
    pub fn scale(&self, c: &CkScalar) -> RingMatrix {
        self.map(|x| x * c)
    }

    pub fn lift(&self) -> AlgMatrix {
        self.map(|x| NcPoly::constant(x.clone()))
    }

    /// Exact inverse of a triangular matrix whose diagonal entries are unit monomials.
    pub fn tri_inverse(&self) -> Result<RingMatrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} is not square",
                self.rows, self.cols
            )));
        }
        if self.is_lower_triangular() {
            self.lower_inverse()
        } else if self.is_upper_triangular() {
            Ok(self.transpose().lower_inverse()?.transpose())
        } else {
            Err(Error::NotTriangular)
        }
    }

    fn lower_inverse(&self) -> Result<RingMatrix> {
        let n = self.rows;
        let diag_inv = (0..n)
            .map(|i| self.get(i, i).inverse())
            .collect::<Result<Vec<_>>>()?;
        let mut x = RingMatrix::zeros(n, n, self.rank);
        for j in 0..n {
            x.set(j, j, diag_inv[j].clone());
            for i in j + 1..n {
                let mut acc = CkScalar::zero(self.rank);
                for k in j..i {
                    let m = self.get(i, k);
                    if m.is_zero() || x.get(k, j).is_zero() {
                        continue;
                    }
                    acc = &acc + &(m * x.get(k, j));
                }
                x.set(i, j, -(&diag_inv[i] * &acc));
            }
        }
        Ok(x)
    }

    /// Determinant by expansion over column subsets.
    pub fn determinant(&self) -> Result<CkScalar> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} is not square",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        // memo[mask] = signed sum over placements of rows popcount(mask).. into the unused columns
        let mut memo: Vec<Option<CkScalar>> = vec![None; 1 << n];
        fn go(m: &RingMatrix, mask: usize, memo: &mut Vec<Option<CkScalar>>) -> CkScalar {
            let n = m.rows;
            if mask == (1 << n) - 1 {
                return CkScalar::one(m.rank);
            }
            if let Some(v) = &memo[mask] {
                return v.clone();
            }
            let row = mask.count_ones() as usize;
            let mut acc = CkScalar::zero(m.rank);
            for c in 0..n {
                if mask & (1 << c) != 0 || m.get(row, c).is_zero() {
                    continue;
                }
                let sub = go(m, mask | (1 << c), memo);
                if sub.is_zero() {
                    continue;
                }
                let inversions = (mask >> (c + 1)).count_ones();
                let term = m.get(row, c) * &sub;
                acc = if inversions % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            memo[mask] = Some(acc.clone());
            acc
        }
        Ok(go(self, 0, &mut memo))
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> RingMatrix {
        let n = self.rows;
        RingMatrix::from_fn(n - 1, n - 1, self.rank, |i, j| {
            let r = if i < skip_row { i } else { i + 1 };
            let c = if j < skip_col { j } else { j + 1 };
            self.get(r, c).clone()
        })
    }

    /// Inverse through the adjugate; the determinant must be a unit monomial.
    pub fn adjugate_inverse(&self) -> Result<RingMatrix> {
        let det_inv = self.determinant()?.inverse()?;
        let n = self.rows;
        let mut out = RingMatrix::zeros(n, n, self.rank);
        for i in 0..n {
            for j in 0..n {
                let cof = self.minor(i, j).determinant()?;
                let cof = if (i + j) % 2 == 0 { cof } else { -cof };
                out.set(j, i, &cof * &det_inv);
            }
        }
        Ok(out)
    }

    /// Gauss-Jordan inverse; every pivot met must be a unit monomial.
    pub fn unit_pivot_inverse(&self) -> Result<RingMatrix> {
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RingMatrix::identity(n, self.rank);
        for col in 0..n {
            let pivot_row = (col..n)
                .find(|&r| a.get(r, col).inverse().is_ok())
                .ok_or_else(|| Error::NotAUnit(format!("no unit pivot in column {}", col + 1)))?;
            for k in 0..n {
                a.data.swap(col * n + k, pivot_row * n + k);
                inv.data.swap(col * n + k, pivot_row * n + k);
            }
            let p_inv = a.get(col, col).inverse()?;
            for k in 0..n {
                let x = a.get(col, k) * &p_inv;
                a.set(col, k, x);
                let y = inv.get(col, k) * &p_inv;
                inv.set(col, k, y);
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                for k in 0..n {
                    let x = a.get(r, k) - &(&f * a.get(col, k));
                    a.set(r, k, x);
                    let y = inv.get(r, k) - &(&f * inv.get(col, k));
                    inv.set(r, k, y);
                }
            }
        }
        Ok(inv)
    }

    pub fn specialize(&self, sig: &JSignature) -> Result<RingMatrix> {
        self.try_map(|x| x.specialize(sig))
    }
}

impl AlgMatrix {
    pub fn scalar_mul_left(m: &RingMatrix, g: &AlgMatrix) -> Result<AlgMatrix> {
        m.lift().checked_mul(g)
    }

    pub fn substitute(&self, f: &impl Fn(Symbol) -> Option<NcPoly>) -> AlgMatrix {
        self.map(|p| p.substitute(f))
    }
}

impl<T: RingElem + fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<T: RingElem + fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// One polynomial understood as `= 0`, with a provenance label.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Relation {
    pub label: String,
    pub poly: NcPoly,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RelationSet {
    pub relations: Vec<Relation>,
}

/// Which coefficients may be divided out when normalizing a relation.
#[derive(Clone, Debug)]
pub enum UnitRule {
    /// Formal ring: a single monomial free of `v` and of the `j`'s, so that
    /// normalization commutes with every specialization.
    Formal,
    /// Specialized ring: a single monomial free of `v` and of nilpotents.
    Specialized(JSignature),
}

impl UnitRule {
    fn unit_inverse(&self, c: &CkScalar) -> Option<CkScalar> {
        match self {
            UnitRule::Formal => c
                .leading()
                .filter(|(m, _)| !m.has_j())
                .and_then(|_| c.inverse().ok()),
            UnitRule::Specialized(sig) => sig.is_unit(c).then(|| c.inverse().ok()).flatten(),
        }
    }
}

impl RelationSet {
    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn polys(&self) -> impl Iterator<Item = &NcPoly> {
        self.relations.iter().map(|r| &r.poly)
    }

    pub fn contains_poly(&self, p: &NcPoly) -> bool {
        self.polys().any(|q| q == p)
    }
}

/// Normalizes one relation so its least word has coefficient 1 when that
/// coefficient is a unit.
pub fn normalize_relation(p: &NcPoly, rule: &UnitRule) -> NcPoly {
    match p.leading().and_then(|(_, c)| rule.unit_inverse(c)) {
        Some(inv) => p.scale(&inv),
        None => p.clone(),
    }
}

/// Drops zeros, normalizes, sorts and deduplicates.
pub fn canonicalize_relations(
    rs: impl IntoIterator<Item = Relation>,
    rule: &UnitRule,
) -> RelationSet {
    let mut v: Vec<Relation> = rs
        .into_iter()
        .filter(|r| !r.poly.is_zero())
        .map(|r| Relation {
            poly: normalize_relation(&r.poly, rule),
            label: r.label,
        })
        .collect();
    v.sort_by(|a, b| a.poly.cmp(&b.poly).then_with(|| a.label.cmp(&b.label)));
    v.dedup_by(|a, b| a.poly == b.poly);
    RelationSet { relations: v }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::BaseScalar;

    fn t(i: usize, j: usize) -> NcPoly {
        NcPoly::symbol(2, Symbol::new(Family::T, i, j))
    }

    #[test]
    fn free_products() {
        assert_ne!(t(1, 1).mul(&t(1, 2)), t(1, 2).mul(&t(1, 1)));
        assert_eq!(t(1, 1).mul(&NcPoly::one(2)), t(1, 1));
        let lhs = t(1, 1).add(&t(2, 2)).mul(&t(1, 1));
        let rhs = t(1, 1).mul(&t(1, 1)).add(&t(2, 2).mul(&t(1, 1)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn kron_and_flip() {
        let i3 = RingMatrix::identity(3, 2);
        assert!(i3.kron(&i3).is_identity());
        let p = RingMatrix::flip(3, 2);
        assert!(p.mul(&p).is_identity());
    }

    #[test]
    fn tri_inverse_cases() {
        assert!(RingMatrix::identity(9, 2)
            .tri_inverse()
            .unwrap()
            .is_identity());
        let dense = RingMatrix::from_fn(2, 2, 2, |_, _| CkScalar::one(2));
        assert_eq!(dense.tri_inverse(), Err(Error::NotTriangular));
        let mut m = RingMatrix::identity(2, 2);
        m.set(0, 0, &CkScalar::one(2) + &CkScalar::v(2));
        assert!(matches!(m.tri_inverse(), Err(Error::NotAUnit(_))));
    }

    #[test]
    fn canonicalization() {
        let r = 2;
        let comm = t(1, 1).mul(&t(1, 2)).sub(&t(1, 2).mul(&t(1, 1)));
        let rel = |p: NcPoly| Relation {
            label: "x".into(),
            poly: p,
        };
        let set = canonicalize_relations(
            vec![rel(NcPoly::zero(r)), rel(comm.clone()), rel(comm.clone())],
            &UnitRule::Formal,
        );
        assert_eq!(set.len(), 1);
        let two = CkScalar::constant(r, BaseScalar::from_int(2));
        let set = canonicalize_relations(vec![rel(comm.scale(&two))], &UnitRule::Formal);
        assert_eq!(set.relations[0].poly, comm);
        let set =
            canonicalize_relations(vec![rel(comm.clone()), rel(comm.neg())], &UnitRule::Formal);
        assert_eq!(set.len(), 1);
        assert_eq!(set.relations[0].poly, comm);
    }

    #[test]
    fn symbol_names_round_trip() {
        for s in [
            "t12", "t~31", "u22", "a13", "l21", "l~12", "l+11", "l-33", "t12.2",
        ] {
            assert_eq!(Symbol::parse(s).unwrap().to_string(), s);
        }
    }
}
