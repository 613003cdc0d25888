//! Exact coefficient ring.
//!
//! [`BaseScalar`] is an element of the number field Q(i, √2). [`CkScalar`] is a
//! finite Laurent combination of monomials `E^a · v^b · ∏ j_k^{c_k}` with
//! base-field coefficients, where `E` stands for `e^{Jv/2}` and `J = ∏ j_k`.
//! Inside the formal ring `E`, `v` and the `j_k` are independent commuting
//! symbols; the relation between `E` and `Jv` is only used by
//! [`CkScalar::specialize`] and [`CkScalar::eval_numeric`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Rational = BigRational;
type GaussQ = Complex<Rational>;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `x + y·√2` with `x, y` Gaussian rationals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BaseScalar {
    re: Rational,
    im: Rational,
    re_sqrt2: Rational,
    im_sqrt2: Rational,
}

impl BaseScalar {
    pub fn new(re: Rational, im: Rational, re_sqrt2: Rational, im_sqrt2: Rational) -> Self {
        BaseScalar {
            re,
            im,
            re_sqrt2,
            im_sqrt2,
        }
    }

    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    pub fn from_rational(q: Rational) -> Self {
        BaseScalar {
            re: q,
            im: Rational::zero(),
            re_sqrt2: Rational::zero(),
            im_sqrt2: Rational::zero(),
        }
    }

    pub fn i() -> Self {
        BaseScalar {
            im: Rational::one(),
            ..Self::zero()
        }
    }

    pub fn sqrt2() -> Self {
        BaseScalar {
            re_sqrt2: Rational::one(),
            ..Self::zero()
        }
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i32) -> Self {
        match k.rem_euclid(4) {
            0 => Self::one(),
            1 => Self::i(),
            2 => Self::from_int(-1),
            _ => -Self::i(),
        }
    }

    pub fn parts(&self) -> [&Rational; 4] {
        [&self.re, &self.im, &self.re_sqrt2, &self.im_sqrt2]
    }

    pub fn is_zero(&self) -> bool {
        self.parts().iter().all(|p| p.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero() && self.re_sqrt2.is_zero() && self.im_sqrt2.is_zero()
    }

    fn split(&self) -> (GaussQ, GaussQ) {
        (
            Complex::new(self.re.clone(), self.im.clone()),
            Complex::new(self.re_sqrt2.clone(), self.im_sqrt2.clone()),
        )
    }

    fn join(x: GaussQ, y: GaussQ) -> Self {
        BaseScalar {
            re: x.re,
            im: x.im,
            re_sqrt2: y.re,
            im_sqrt2: y.im,
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        BaseScalar {
            re: &self.re * q,
            im: &self.im * q,
            re_sqrt2: &self.re_sqrt2 * q,
            im_sqrt2: &self.im_sqrt2 * q,
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // (x + y√2)^{-1} = (x − y√2) / (x² − 2y²); the norm is nonzero since √2 ∉ Q(i).
        let (x, y) = self.split();
        let two = GaussQ::new(rat(2, 1), Rational::zero());
        let norm = &x * &x - &two * &y * &y;
        let den = &norm.re * &norm.re + &norm.im * &norm.im;
        let norm_inv = Complex::new(&norm.re / &den, -&norm.im / &den);
        Ok(Self::join(&x * &norm_inv, -(&y * &norm_inv)))
    }

    pub fn conj(&self) -> Self {
        BaseScalar {
            re: self.re.clone(),
            im: -&self.im,
            re_sqrt2: self.re_sqrt2.clone(),
            im_sqrt2: -&self.im_sqrt2,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        let s2 = std::f64::consts::SQRT_2;
        let f = |q: &Rational| q.to_f64().unwrap_or(f64::NAN);
        Complex64::new(
            f(&self.re) + s2 * f(&self.re_sqrt2),
            f(&self.im) + s2 * f(&self.im_sqrt2),
        )
    }

    /// The unit `±1` or `±i` when the value lies on the real or imaginary axis.
    pub fn axis_phase(&self) -> Option<Self> {
        let real_zero = self.re.is_zero() && self.re_sqrt2.is_zero();
        let imag_zero = self.im.is_zero() && self.im_sqrt2.is_zero();
        // sign of a + b√2
        let sign = |a: &Rational, b: &Rational| {
            if b.is_zero() || (!a.is_zero() && a.is_positive() == b.is_positive()) {
                if a.is_zero() {
                    b.signum()
                } else {
                    a.signum()
                }
            } else if a.is_zero() || &(b * b) * rat(2, 1) > a * a {
                b.signum()
            } else {
                a.signum()
            }
        };
        match (real_zero, imag_zero) {
            (true, true) => None,
            (false, true) => Some(Self::from_rational(sign(&self.re, &self.re_sqrt2))),
            (true, false) => Some(Self::i().scale(&sign(&self.im, &self.im_sqrt2))),
            (false, false) => None,
        }
    }
}

impl Add for &BaseScalar {
    type Output = BaseScalar;
    fn add(self, o: &BaseScalar) -> BaseScalar {
        BaseScalar {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
            re_sqrt2: &self.re_sqrt2 + &o.re_sqrt2,
            im_sqrt2: &self.im_sqrt2 + &o.im_sqrt2,
        }
    }
}

impl Sub for &BaseScalar {
    type Output = BaseScalar;
    fn sub(self, o: &BaseScalar) -> BaseScalar {
        self + &(-o)
    }
}

impl Mul for &BaseScalar {
    type Output = BaseScalar;
    fn mul(self, o: &BaseScalar) -> BaseScalar {
        let (x, y) = self.split();
        let (u, w) = o.split();
        let two = GaussQ::new(rat(2, 1), Rational::zero());
        BaseScalar::join(&x * &u + &two * &y * &w, &x * &w + &y * &u)
    }
}

impl Neg for &BaseScalar {
    type Output = BaseScalar;
    fn neg(self) -> BaseScalar {
        BaseScalar {
            re: -&self.re,
            im: -&self.im,
            re_sqrt2: -&self.re_sqrt2,
            im_sqrt2: -&self.im_sqrt2,
        }
    }
}

impl Neg for BaseScalar {
    type Output = BaseScalar;
    fn neg(self) -> BaseScalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($t:ty, $tr:ident, $m:ident) => {
        impl $tr for $t {
            type Output = $t;
            fn $m(self, o: $t) -> $t {
                (&self).$m(&o)
            }
        }
        impl $tr<&$t> for $t {
            type Output = $t;
            fn $m(self, o: &$t) -> $t {
                (&self).$m(o)
            }
        }
    };
}

forward_owned!(BaseScalar, Add, add);
forward_owned!(BaseScalar, Sub, sub);
forward_owned!(BaseScalar, Mul, mul);

fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for BaseScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let units = ["", "i", "√2", "i√2"];
        let mut parts = Vec::new();
        for (q, u) in self.parts().into_iter().zip(units) {
            if q.is_zero() {
                continue;
            }
            let body = match (u.is_empty(), q.abs().is_one()) {
                (true, _) => fmt_rational(&q.abs()),
                (false, true) => u.to_string(),
                (false, false) => format!("{}·{}", fmt_rational(&q.abs()), u),
            };
            parts.push((q.is_negative(), body));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        for (k, (neg, body)) in parts.iter().enumerate() {
            match (k, neg) {
                (0, true) => write!(f, "−{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " − {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BaseScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// Exponent vector of `E^e · v^v · ∏ j_k^{j[k]}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial {
    pub e: i32,
    pub v: u32,
    pub j: SmallVec<[i32; 6]>,
}

impl Monomial {
    pub fn one(rank: usize) -> Self {
        Monomial {
            e: 0,
            v: 0,
            j: SmallVec::from_elem(0, rank),
        }
    }

    pub fn is_one(&self) -> bool {
        self.e == 0 && self.v == 0 && self.j.iter().all(|&c| c == 0)
    }

    fn mul(&self, o: &Monomial) -> Monomial {
        Monomial {
            e: self.e + o.e,
            v: self.v + o.v,
            j: self.j.iter().zip(&o.j).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn has_j(&self) -> bool {
        self.j.iter().any(|&c| c != 0)
    }
}

/// Value a contraction parameter `j_k` takes under specialization.
#[derive(
    Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, serde::Serialize, serde::Deserialize,
)]
pub enum JValue {
    One,
    Nilpotent,
    Imaginary,
}

impl JValue {
    pub fn token(self) -> &'static str {
        match self {
            JValue::One => "1",
            JValue::Nilpotent => "iota",
            JValue::Imaginary => "i",
        }
    }

    pub fn parse(tok: &str) -> Result<JValue> {
        match tok.trim() {
            "1" => Ok(JValue::One),
            "iota" | "ι" => Ok(JValue::Nilpotent),
            "i" => Ok(JValue::Imaginary),
            other => Err(Error::Parse(format!(
                "unknown j token `{other}` (expected 1, iota or i)"
            ))),
        }
    }
}

/// Assignment of each `j_1 … j_{N−1}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct JSignature(Vec<JValue>);

impl JSignature {
    pub fn new(values: Vec<JValue>) -> Self {
        JSignature(values)
    }

    pub fn all(rank: usize, value: JValue) -> Self {
        JSignature(vec![value; rank])
    }

    /// Parses comma separated tokens, e.g. `iota,1`.
    pub fn parse(s: &str) -> Result<Self> {
        s.split(',')
            .map(JValue::parse)
            .collect::<Result<Vec<_>>>()
            .map(JSignature)
    }

    pub fn values(&self) -> &[JValue] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn has_nilpotent(&self) -> bool {
        self.0.contains(&JValue::Nilpotent)
    }

    pub fn tokens(&self) -> String {
        self.0
            .iter()
            .map(|v| v.token())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Every signature with values from `choices`, in lexicographic order.
    pub fn enumerate(rank: usize, choices: &[JValue]) -> Vec<JSignature> {
        let mut out = vec![Vec::new()];
        for _ in 0..rank {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    choices.iter().map(move |&c| {
                        let mut p = prefix.clone();
                        p.push(c);
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(JSignature).collect()
    }

    /// Drops every term carrying `ι_k^2` or a higher power; used after
    /// multiplying already specialized scalars.
    pub fn truncate(&self, x: &CkScalar) -> CkScalar {
        let terms = x
            .terms
            .iter()
            .filter(|(m, _)| {
                self.0
                    .iter()
                    .zip(&m.j)
                    .all(|(s, &c)| *s != JValue::Nilpotent || c <= 1)
            })
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        CkScalar {
            rank: x.rank,
            terms,
        }
    }

    pub fn mul(&self, x: &CkScalar, y: &CkScalar) -> CkScalar {
        self.truncate(&(x * y))
    }

    /// Whether a specialized scalar is invertible: a single monomial free of nilpotents.
    pub fn is_unit(&self, x: &CkScalar) -> bool {
        x.terms.len() == 1
            && x.terms
                .keys()
                .all(|m| m.v == 0 && m.j.iter().all(|&c| c == 0))
    }
}

impl fmt::Display for JSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.tokens())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HyperKind {
    Exp,
    Cosh,
    Sinh,
}

/// Element of the formal coefficient ring; `rank` is the number of `j`'s (N−1).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CkScalar {
    rank: usize,
    terms: BTreeMap<Monomial, BaseScalar>,
}

impl CkScalar {
    pub fn zero(rank: usize) -> Self {
        CkScalar {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, BaseScalar::one())
    }

    pub fn constant(rank: usize, c: BaseScalar) -> Self {
        Self::term(c, Monomial::one(rank))
    }

    pub fn from_int(rank: usize, n: i64) -> Self {
        Self::constant(rank, BaseScalar::from_int(n))
    }

    pub fn term(c: BaseScalar, m: Monomial) -> Self {
        let rank = m.j.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        CkScalar { rank, terms }
    }

    /// `E^k`.
    pub fn e_pow(rank: usize, k: i32) -> Self {
        Self::term(
            BaseScalar::one(),
            Monomial {
                e: k,
                ..Monomial::one(rank)
            },
        )
    }

    pub fn v(rank: usize) -> Self {
        Self::term(
            BaseScalar::one(),
            Monomial {
                v: 1,
                ..Monomial::one(rank)
            },
        )
    }

    /// `j_k^{power}` with `k` one-based.
    pub fn j_pow(rank: usize, k: usize, power: i32) -> Self {
        let mut m = Monomial::one(rank);
        m.j[k - 1] = power;
        Self::term(BaseScalar::one(), m)
    }

    /// `J^{power} = ∏ j_k^{power}`.
    pub fn big_j_pow(rank: usize, power: i32) -> Self {
        Self::term(
            BaseScalar::one(),
            Monomial {
                j: SmallVec::from_elem(power, rank),
                ..Monomial::one(rank)
            },
        )
    }

    /// Exponential, cosh or sinh of `halfSteps · Jv/2`.
    pub fn hyper(kind: HyperKind, half_steps: i32, rank: usize) -> Self {
        let up = Self::e_pow(rank, half_steps);
        let down = Self::e_pow(rank, -half_steps);
        let half = BaseScalar::from_rational(rat(1, 2));
        match kind {
            HyperKind::Exp => up,
            HyperKind::Cosh => (&up + &down).scale(&half),
            HyperKind::Sinh => (&up - &down).scale(&half),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BaseScalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading(&self) -> Option<(&Monomial, &BaseScalar)> {
        self.terms.iter().next()
    }

    /// Coefficient of the monomial `1`.
    pub fn constant_part(&self) -> BaseScalar {
        self.terms
            .get(&Monomial::one(self.rank))
            .cloned()
            .unwrap_or_else(BaseScalar::zero)
    }

    pub fn as_constant(&self) -> Option<BaseScalar> {
        match self.terms.len() {
            0 => Some(BaseScalar::zero()),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(m, _)| m.is_one())
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn from_terms(rank: usize, it: impl IntoIterator<Item = (Monomial, BaseScalar)>) -> Self {
        let mut out = CkScalar::zero(rank);
        for (m, c) in it {
            out.add_term(m, c);
        }
        out
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: BaseScalar) {
        debug_assert_eq!(m.j.len(), self.rank);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    fn check_rank(&self, o: &CkScalar) -> Result<()> {
        if self.rank == o.rank {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "scalar ranks {} and {}",
                self.rank, o.rank
            )))
        }
    }

    pub fn checked_add(&self, o: &CkScalar) -> Result<CkScalar> {
        self.check_rank(o)?;
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, o: &CkScalar) -> Result<CkScalar> {
        self.check_rank(o)?;
        let mut out = CkScalar::zero(self.rank);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BaseScalar) -> CkScalar {
        if c.is_zero() {
            return CkScalar::zero(self.rank);
        }
        CkScalar {
            rank: self.rank,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> CkScalar {
        CkScalar {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(k, x)| (k.mul(m), x.clone()))
                .collect(),
        }
    }

    /// Inverse of a single-monomial scalar.
    pub fn inverse(&self) -> Result<CkScalar> {
        if self.terms.len() != 1 {
            return Err(Error::NotAUnit(self.to_string()));
        }
        let (m, c) = self.terms.iter().next().expect("one term");
        if m.v != 0 {
            return Err(Error::NotAUnit(self.to_string()));
        }
        let inv_m = Monomial {
            e: -m.e,
            v: 0,
            j: m.j.iter().map(|c| -c).collect(),
        };
        Ok(CkScalar::term(c.inv()?, inv_m))
    }

    pub fn pow(&self, n: u32) -> CkScalar {
        (0..n).fold(CkScalar::one(self.rank), |acc, _| &acc * self)
    }

    /// Substitutes `v = 0` (hence `E = 1`).
    pub fn at_v_zero(&self) -> CkScalar {
        CkScalar::from_terms(
            self.rank,
            self.terms
                .iter()
                .filter(|(m, _)| m.v == 0)
                .map(|(m, c)| (Monomial { e: 0, ..m.clone() }, c.clone())),
        )
    }

    /// Replaces every `j_k` by one (`J = 1`); `E` and `v` stay formal.
    pub fn with_unit_j(&self) -> CkScalar {
        CkScalar::from_terms(
            self.rank,
            self.terms.iter().map(|(m, c)| {
                (
                    Monomial {
                        j: SmallVec::from_elem(0, self.rank),
                        ..m.clone()
                    },
                    c.clone(),
                )
            }),
        )
    }

    /// Groups the terms by their `j` exponent vector.
    pub fn split_by_j(&self) -> BTreeMap<SmallVec<[i32; 6]>, CkScalar> {
        let mut out: BTreeMap<SmallVec<[i32; 6]>, CkScalar> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.j.clone())
                .or_insert_with(|| CkScalar::zero(self.rank))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// Substitutes the contraction parameters.
    ///
    /// `one` and `imaginary` parameters are replaced by `1` and `i`. Nilpotent
    /// parameters stay as square-zero symbols `ι_k` (kept in the `j` slot with
    /// exponent 0 or 1). When `J` is nilpotent, `E^a = e^{aJv/2}` is expanded as
    /// its Taylor series in `Jv`; every order that can still survive the
    /// nilpotency truncation is kept, so formal `j_k^{-1}` factors cancel before
    /// the truncation happens.
    pub fn specialize(&self, sig: &JSignature) -> Result<CkScalar> {
        if sig.rank() != self.rank {
            return Err(Error::DimensionMismatch(format!(
                "signature of length {} for scalar of rank {}",
                sig.rank(),
                self.rank
            )));
        }
        let j_nilpotent = sig.has_nilpotent();
        let vals = sig.values();
        let mut out = CkScalar::zero(self.rank);
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut base = Monomial {
                e: m.e,
                v: m.v,
                j: SmallVec::from_elem(0, self.rank),
            };
            for (k, (&val, &exp)) in vals.iter().zip(&m.j).enumerate() {
                match val {
                    JValue::One => {}
                    JValue::Imaginary => coeff = &coeff * &BaseScalar::i_pow(exp),
                    JValue::Nilpotent => base.j[k] = exp,
                }
            }
            if !j_nilpotent || m.e == 0 {
                out.add_term(base, coeff);
                continue;
            }
            // E^a = Σ_n (a v J / 2)^n / n!
            base.e = 0;
            let max_exp = vals
                .iter()
                .zip(&base.j)
                .filter(|(v, _)| **v == JValue::Nilpotent)
                .map(|(_, &e)| e)
                .max()
                .unwrap_or(0);
            if max_exp > 1 {
                continue;
            }
            let imag_count = vals.iter().filter(|v| **v == JValue::Imaginary).count() as i32;
            let order = (1 - max_exp) as u32;
            let mut factor = Rational::one();
            for n in 0..=order {
                if n > 0 {
                    factor = factor * rat(m.e as i64, 2) / rat(n as i64, 1);
                }
                let mut mono = base.clone();
                mono.v += n;
                for (k, v) in vals.iter().enumerate() {
                    if *v == JValue::Nilpotent {
                        mono.j[k] += n as i32;
                    }
                }
                let c = (&coeff * &BaseScalar::i_pow(imag_count * n as i32)).scale(&factor);
                out.add_term(mono, c);
            }
        }
        let out = sig.truncate(&out);
        for m in out.terms.keys() {
            if let Some(k) = m.j.iter().position(|&c| c < 0) {
                return Err(Error::NegativeNilpotentPower {
                    index: k + 1,
                    value: self.to_string(),
                });
            }
        }
        Ok(out)
    }

    /// Numeric value at `v = v0` under `sig`, as dual-number components.
    pub fn eval_numeric(&self, sig: &JSignature, v0: Complex64) -> Result<DualValue> {
        let s = self.specialize(sig)?;
        Ok(eval_specialized(&s, sig, v0))
    }
}

/// Numeric value of an already specialized scalar.
pub fn eval_specialized(s: &CkScalar, sig: &JSignature, v0: Complex64) -> DualValue {
    let vals = sig.values();
    let j_num: Complex64 = vals
        .iter()
        .map(|v| {
            if *v == JValue::Imaginary {
                Complex64::i()
            } else {
                Complex64::new(1.0, 0.0)
            }
        })
        .product();
    let mut out = DualValue::zero(sig.rank());
    for (m, c) in s.terms() {
        let mut val = c.to_complex() * v0.powu(m.v);
        if m.e != 0 {
            val *= (j_num * v0 * (m.e as f64) / 2.0).exp();
        }
        let mask = vals
            .iter()
            .zip(&m.j)
            .enumerate()
            .filter(|(_, (v, &e))| **v == JValue::Nilpotent && e == 1)
            .fold(0usize, |acc, (k, _)| acc | (1 << k));
        out.comps[mask] += val;
    }
    out
}

impl Add for &CkScalar {
    type Output = CkScalar;
    fn add(self, o: &CkScalar) -> CkScalar {
        self.checked_add(o).expect("scalar rank mismatch")
    }
}

impl Sub for &CkScalar {
    type Output = CkScalar;
    fn sub(self, o: &CkScalar) -> CkScalar {
        self.checked_add(&-o).expect("scalar rank mismatch")
    }
}

impl Mul for &CkScalar {
    type Output = CkScalar;
    fn mul(self, o: &CkScalar) -> CkScalar {
        self.checked_mul(o).expect("scalar rank mismatch")
    }
}

impl Neg for &CkScalar {
    type Output = CkScalar;
    fn neg(self) -> CkScalar {
        CkScalar {
            rank: self.rank,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for CkScalar {
    type Output = CkScalar;
    fn neg(self) -> CkScalar {
        -&self
    }
}

forward_owned!(CkScalar, Add, add);
forward_owned!(CkScalar, Sub, sub);
forward_owned!(CkScalar, Mul, mul);

fn fmt_monomial(m: &Monomial) -> String {
    let mut parts = Vec::new();
    if m.e != 0 {
        parts.push(format!("E^{}", m.e));
    }
    if m.v != 0 {
        parts.push(format!("v^{}", m.v));
    }
    for (k, &c) in m.j.iter().enumerate() {
        if c != 0 {
            parts.push(format!("j{}^{}", k + 1, c));
        }
    }
    parts.join(" ")
}

impl fmt::Display for CkScalar {
    /// Terms render as `coeff·E^a v^b j1^c1 …`, e.g. `1/2·E^2 − 1/2·E^-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono = fmt_monomial(m);
            let (neg, mag) = match c.axis_phase() {
                Some(p) if p == BaseScalar::from_int(-1) || p == -BaseScalar::i() => (true, -c),
                _ => (false, c.clone()),
            };
            let multi = mag.parts().iter().filter(|p| !p.is_zero()).count() > 1;
            let coeff = if multi {
                format!("({mag})")
            } else {
                mag.to_string()
            };
            let body = match (mono.is_empty(), mag.is_one()) {
                (true, _) => coeff,
                (false, true) => mono,
                (false, false) => format!("{coeff}·{mono}"),
            };
            match (k, neg) {
                (0, true) => write!(f, "−{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " − {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CkScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// Numeric element of the dual algebra: component `mask` multiplies `∏_{k∈mask} ι_k`.
#[derive(Clone, PartialEq, Debug)]
pub struct DualValue {
    rank: usize,
    comps: Vec<Complex64>,
}

impl DualValue {
    pub fn zero(rank: usize) -> Self {
        DualValue {
            rank,
            comps: vec![Complex64::new(0.0, 0.0); 1 << rank],
        }
    }

    pub fn scalar(rank: usize, z: Complex64) -> Self {
        let mut d = Self::zero(rank);
        d.comps[0] = z;
        d
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn component(&self, mask: usize) -> Complex64 {
        self.comps[mask]
    }

    pub fn set_component(&mut self, mask: usize, z: Complex64) {
        self.comps[mask] = z;
    }

    pub fn scalar_part(&self) -> Complex64 {
        self.comps[0]
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        self.comps.iter().copied().enumerate()
    }

    pub fn add(&self, o: &DualValue) -> DualValue {
        DualValue {
            rank: self.rank,
            comps: self
                .comps
                .iter()
                .zip(&o.comps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, o: &DualValue) -> DualValue {
        DualValue {
            rank: self.rank,
            comps: self
                .comps
                .iter()
                .zip(&o.comps)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, z: Complex64) -> DualValue {
        DualValue {
            rank: self.rank,
            comps: self.comps.iter().map(|a| a * z).collect(),
        }
    }

    /// Product with `ι_k^2 = 0`: components whose index sets overlap vanish.
    pub fn mul(&self, o: &DualValue) -> DualValue {
        let mut out = DualValue::zero(self.rank);
        for (a, x) in self.comps.iter().enumerate() {
            if *x == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (b, y) in o.comps.iter().enumerate() {
                if a & b == 0 {
                    out.comps[a | b] += x * y;
                }
            }
        }
        out
    }

    pub fn norm(&self) -> f64 {
        self.comps.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `|self − o| ≤ tol · max(1, |o|)` componentwise.
    pub fn approx_eq(&self, o: &DualValue, tol: f64) -> bool {
        let scale = self.norm().max(o.norm()).max(1.0);
        self.sub(o).norm() <= tol * scale
    }
}

impl fmt::Display for DualValue {
    /// `a₀ + Σ a_S ι_S`, e.g. `0 + (2+0i)·ι1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = |z: Complex64| format!("({}{:+}i)", z.re, z.im);
        write!(f, "{}", c(self.comps[0]))?;
        for (mask, z) in self.comps.iter().enumerate().skip(1) {
            if z.norm() == 0.0 {
                continue;
            }
            let label: Vec<String> = (0..self.rank)
                .filter(|k| mask & (1 << k) != 0)
                .map(|k| format!("ι{}", k + 1))
                .collect();
            write!(f, " + {}·{}", c(*z), label.join(""))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(s: &str) -> JSignature {
        JSignature::parse(s).unwrap()
    }

    #[test]
    fn field_relations() {
        assert_eq!(BaseScalar::i() * BaseScalar::i(), BaseScalar::from_int(-1));
        assert_eq!(
            BaseScalar::sqrt2() * BaseScalar::sqrt2(),
            BaseScalar::from_int(2)
        );
        assert!((BaseScalar::sqrt2().inv().unwrap() * BaseScalar::sqrt2()).is_one());
        assert!(matches!(
            BaseScalar::zero().inv(),
            Err(Error::DivisionByZero)
        ));
        let x = BaseScalar::new(rat(1, 3), rat(-2, 1), rat(5, 7), rat(1, 1));
        assert!((x.inv().unwrap() * &x).is_one());
    }

    #[test]
    fn ring_monomials() {
        let r = 2;
        assert!((CkScalar::e_pow(r, 1) * CkScalar::e_pow(r, -1)).is_one());
        assert!((CkScalar::j_pow(r, 1, 1) * CkScalar::j_pow(r, 1, -1)).is_one());
        let d = &CkScalar::e_pow(r, 2) - &CkScalar::e_pow(r, -2);
        let half = d.scale(&BaseScalar::from_rational(rat(1, 2)));
        assert_eq!(half * CkScalar::from_int(r, 2), d);
        assert!(matches!(
            CkScalar::one(2).checked_add(&CkScalar::one(3)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn hyperbolic_encoding() {
        let r = 2;
        let half = BaseScalar::from_rational(rat(1, 2));
        assert_eq!(
            CkScalar::hyper(HyperKind::Sinh, 2, r),
            (&CkScalar::e_pow(r, 2) - &CkScalar::e_pow(r, -2)).scale(&half)
        );
        assert_eq!(
            CkScalar::hyper(HyperKind::Cosh, 4, r),
            (&CkScalar::e_pow(r, 4) + &CkScalar::e_pow(r, -4)).scale(&half)
        );
        // q^{ρ1} q^{ρ3} = 1 for N = 3
        let prod = CkScalar::hyper(HyperKind::Exp, 1, r) * CkScalar::hyper(HyperKind::Exp, -1, r);
        assert!(prod.is_one());
    }

    #[test]
    fn specialize_examples() {
        let r = 2;
        let sinh = CkScalar::hyper(HyperKind::Sinh, 2, r);
        let s = sinh.specialize(&sig("iota,1")).unwrap();
        assert_eq!(s, CkScalar::j_pow(r, 1, 1) * CkScalar::v(r));

        let s = (CkScalar::j_pow(r, 1, -1) * &sinh)
            .specialize(&sig("iota,1"))
            .unwrap();
        assert_eq!(s, CkScalar::v(r));

        let err = CkScalar::j_pow(r, 1, -1).specialize(&sig("iota,1"));
        assert!(matches!(
            err,
            Err(Error::NegativeNilpotentPower { index: 1, .. })
        ));

        // j1^{-2} sinh^2 Jv needs the second Taylor order of each factor.
        let x = CkScalar::j_pow(r, 1, -2) * (&sinh * &sinh);
        let s = x.specialize(&sig("iota,1")).unwrap();
        assert_eq!(s, CkScalar::v(r) * CkScalar::v(r));

        // imaginary parameters contribute powers of i
        let s = CkScalar::j_pow(r, 2, 3).specialize(&sig("1,i")).unwrap();
        assert_eq!(s, CkScalar::constant(r, -BaseScalar::i()));
    }

    #[test]
    fn inverse_examples() {
        let r = 2;
        assert_eq!(
            CkScalar::e_pow(r, 2).inverse().unwrap(),
            CkScalar::e_pow(r, -2)
        );
        let x = CkScalar::j_pow(r, 1, 1).scale(&BaseScalar::from_rational(rat(1, 2)));
        assert_eq!(
            x.inverse().unwrap(),
            CkScalar::j_pow(r, 1, -1).scale(&BaseScalar::from_int(2))
        );
        let y = &CkScalar::one(r) + &CkScalar::v(r);
        assert!(matches!(y.inverse(), Err(Error::NotAUnit(_))));
    }

    #[test]
    fn numeric_examples() {
        let r = 2;
        let sinh = CkScalar::hyper(HyperKind::Sinh, 2, r);
        let z = sinh
            .eval_numeric(&sig("1,1"), Complex64::new(0.0, 0.0))
            .unwrap();
        assert!(z.norm() < 1e-15);
        let e = CkScalar::hyper(HyperKind::Exp, 2, r)
            .eval_numeric(&sig("1,1"), Complex64::new(1.0, 0.0))
            .unwrap();
        assert!((e.scalar_part() - Complex64::new(std::f64::consts::E, 0.0)).norm() < 1e-14);
        let d = sinh
            .eval_numeric(&sig("iota,1"), Complex64::new(2.0, 0.0))
            .unwrap();
        assert!(d.scalar_part().norm() < 1e-15);
        assert!((d.component(1) - Complex64::new(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn display_format() {
        let r = 2;
        let s = CkScalar::hyper(HyperKind::Sinh, 2, r);
        assert_eq!(s.to_string(), "1/2·E^2 − 1/2·E^-2");
        assert_eq!(CkScalar::zero(r).to_string(), "0");
    }

    #[test]
    fn dual_nilpotency() {
        let mut a = DualValue::zero(2);
        a.set_component(1, Complex64::new(3.0, 0.0));
        let sq = a.mul(&a);
        assert_eq!(sq.norm(), 0.0);
    }
}
