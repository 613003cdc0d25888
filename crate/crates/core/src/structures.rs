//! Structural matrices of the orthogonal quantum group in symplectic and
//! Cartesian bases, with formal contraction parameters.
//!
//! Index conventions: the API is zero-based; a pair `(a, b)` of `N`-indices
//! is flattened to `a·N + b`.

use std::collections::BTreeMap;

use num_traits::Zero;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::freealg::{AlgMatrix, Family, NcPoly, RingMatrix, Symbol};
use crate::scalar::{BaseScalar, CkScalar, HyperKind, JSignature, Monomial};

pub const MIN_DIM: usize = 3;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Symplectic,
    Cartesian,
}

impl Basis {
    pub fn name(self) -> &'static str {
        match self {
            Basis::Symplectic => "symplectic",
            Basis::Cartesian => "cartesian",
        }
    }
}

fn check_dim(n: usize) -> Result<()> {
    if n < MIN_DIM {
        Err(Error::BadDimension(n))
    } else {
        Ok(())
    }
}

/// `2ρ_k`, i.e. ρ in half steps.
pub fn rho(n: usize) -> Result<Vec<i32>> {
    check_dim(n)?;
    let half = (n / 2) as i32;
    Ok((0..n as i32)
        .map(|k| {
            if n % 2 == 1 {
                match k.cmp(&half) {
                    std::cmp::Ordering::Less => 2 * (half - k) - 1,
                    std::cmp::Ordering::Equal => 0,
                    std::cmp::Ordering::Greater => -(2 * (k - half) - 1),
                }
            } else if k < half {
                2 * (half - 1 - k)
            } else {
                -2 * (k - half)
            }
        })
        .collect())
}

/// Antidiagonal ones.
pub fn c0_matrix(n: usize) -> Result<RingMatrix> {
    check_dim(n)?;
    let r = n - 1;
    Ok(RingMatrix::from_fn(n, n, r, |i, k| {
        if i + k == n - 1 {
            CkScalar::one(r)
        } else {
            CkScalar::zero(r)
        }
    }))
}

/// `C = C₀ q^ρ`, i.e. `C_{ik} = δ_{i'k} E^{2ρ_k}`.
pub fn c_q(n: usize) -> Result<RingMatrix> {
    let h = rho(n)?;
    let r = n - 1;
    Ok(RingMatrix::from_fn(n, n, r, |i, k| {
        if i + k == n - 1 {
            CkScalar::e_pow(r, h[k])
        } else {
            CkScalar::zero(r)
        }
    }))
}

/// The similarity matrix taking the symplectic basis to the Cartesian one.
pub fn d_matrix(n: usize) -> Result<RingMatrix> {
    check_dim(n)?;
    let r = n - 1;
    let m = n / 2;
    let inv_sqrt2 = BaseScalar::sqrt2().inv()?;
    let i = BaseScalar::i();
    let mut d = RingMatrix::zeros(n, n, r);
    let put = |d: &mut RingMatrix, a: usize, b: usize, c: BaseScalar| {
        d.set(a, b, CkScalar::constant(r, &c * &inv_sqrt2))
    };
    for k in 0..m {
        let low = n - 1 - k;
        put(&mut d, k, k, BaseScalar::one());
        put(&mut d, k, low, BaseScalar::one());
        put(&mut d, low, k, i.clone());
        put(&mut d, low, low, -&i);
    }
    if n % 2 == 1 {
        d.set(m, m, CkScalar::one(r));
    }
    Ok(d)
}

/// `C′ = D C Dᵗ`.
pub fn c_prime(n: usize) -> Result<RingMatrix> {
    let d = d_matrix(n)?;
    Ok(d.mul(&c_q(n)?).mul(&d.transpose()))
}

/// Closed block form of `C′`: `cosh(zρ̃)` blocks on the diagonal and
/// `±i sinh(zρ̃)` blocks on the antidiagonal, with `1` in the middle for odd N.
pub fn c_prime_closed(n: usize) -> Result<RingMatrix> {
    let h = rho(n)?;
    let r = n - 1;
    let m = n / 2;
    let i = CkScalar::constant(r, BaseScalar::i());
    let mut c = RingMatrix::zeros(n, n, r);
    for k in 0..m {
        let low = n - 1 - k;
        let ch = CkScalar::hyper(HyperKind::Cosh, h[k], r);
        let sh = CkScalar::hyper(HyperKind::Sinh, h[k], r);
        c.set(k, k, ch.clone());
        c.set(low, low, ch);
        c.set(k, low, &i * &sh);
        c.set(low, k, -(&i * &sh));
    }
    if n % 2 == 1 {
        c.set(m, m, CkScalar::one(r));
    }
    Ok(c)
}

/// The lower triangular orthogonal R-matrix with `q = E²`:
/// `Σ q^{δ_ik − δ_ik′} e_ii⊗e_kk + (q − q⁻¹) Σ_{i>k} (e_ik⊗e_ki − q^{ρ_i−ρ_k} e_ik⊗e_i′k′)`.
pub fn r_q(n: usize) -> Result<RingMatrix> {
    let h = rho(n)?;
    let r = n - 1;
    let idx = |a: usize, b: usize| a * n + b;
    let prime = |a: usize| n - 1 - a;
    let mut m = RingMatrix::zeros(n * n, n * n, r);
    for i in 0..n {
        for k in 0..n {
            let e = 2 * ((i == k) as i32 - (i == prime(k)) as i32);
            m.set(idx(i, k), idx(i, k), CkScalar::e_pow(r, e));
        }
    }
    let q_minus = &CkScalar::e_pow(r, 2) - &CkScalar::e_pow(r, -2);
    for i in 0..n {
        for k in 0..i {
            let (row, col) = (idx(i, k), idx(k, i));
            let x = m.get(row, col) + &q_minus;
            m.set(row, col, x);
            let (row, col) = (idx(i, prime(i)), idx(k, prime(k)));
            let x = m.get(row, col) - &(&q_minus * &CkScalar::e_pow(r, h[i] - h[k]));
            m.set(row, col, x);
        }
    }
    Ok(m)
}

/// `(D⊗D) M (D⊗D)⁻¹`.
pub fn cartesian_conjugate(m: &RingMatrix, n: usize) -> Result<RingMatrix> {
    if m.rows() != n * n || m.cols() != n * n {
        return Err(Error::DimensionMismatch(format!(
            "expected {0}x{0}, got {1}x{2}",
            n * n,
            m.rows(),
            m.cols()
        )));
    }
    let d = d_matrix(n)?;
    let d_inv = d.unit_pivot_inverse()?;
    Ok(d.kron(&d).mul(m).mul(&d_inv.kron(&d_inv)))
}

/// `R_v(j) = R_q(z → Jv)`. `E` already denotes `e^{Jv/2}`, so this is the identity.
pub fn deform_to_j(m: &RingMatrix) -> RingMatrix {
    m.clone()
}

/// `J_{μν} = ∏_{r=μ}^{ν−1} j_r` for the unordered pair, zero-based.
pub fn j_prefactor(rank: usize, a: usize, b: usize) -> Monomial {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    let mut m = Monomial::one(rank);
    for r in lo..hi {
        m.j[r] = 1;
    }
    m
}

/// `(J̃_{ik} x_{ik})` with fresh symbols of `family`.
pub fn cartesian_generators(n: usize, family: Family) -> Result<AlgMatrix> {
    check_dim(n)?;
    let r = n - 1;
    Ok(AlgMatrix::from_fn(n, n, r, |i, k| {
        NcPoly::monomial(
            CkScalar::term(BaseScalar::one(), j_prefactor(r, i, k)),
            smallvec::smallvec![Symbol::new(family, i + 1, k + 1)],
        )
    }))
}

/// One summand `coeff · jmono · symbol` of a generating-matrix entry.
#[derive(Clone, Debug, PartialEq)]
pub struct Component {
    pub symbol: Symbol,
    pub coeff: BaseScalar,
    pub jmono: Monomial,
}

/// Splits an entry whose words are single symbols with monomial coefficients.
pub fn components(p: &NcPoly) -> Vec<Component> {
    p.terms()
        .map(|(w, c)| {
            assert!(
                w.len() == 1 && c.num_terms() == 1,
                "entry is not linear with monomial coefficients"
            );
            let (m, b) = c.leading().expect("nonzero");
            Component {
                symbol: w[0],
                coeff: b.clone(),
                jmono: m.clone(),
            }
        })
        .collect()
}

/// Symplectic generating matrix `T(j) = D⁻¹ U(j) D` rewritten in symplectic symbols.
#[derive(Clone, Debug)]
pub struct SymplecticGenerators {
    pub matrix: AlgMatrix,
    /// Each symplectic symbol as a combination of the Cartesian `u_ik`.
    pub definitions: BTreeMap<Symbol, NcPoly>,
}

/// Rewrites `D⁻¹ U(j) D`. Within an entry, terms sharing a `j`-monomial form one
/// linear combination of `u`'s; equal combinations (up to a constant) across
/// entries get the same symbol, named after the entry where it first occurs:
/// `t` when the combination enters with a real coefficient, `t̃` when with an
/// imaginary one.
pub fn symplectic_generators(n: usize) -> Result<SymplecticGenerators> {
    let r = n - 1;
    let d = d_matrix(n)?;
    let d_inv = d.unit_pivot_inverse()?;
    let raw = d_inv
        .lift()
        .mul(&cartesian_generators(n, Family::U)?)
        .mul(&d.lift());

    // normalized combination (leading coefficient 1) -> (symbol, scale μ with symbol = μ·key)
    let mut registry: BTreeMap<Vec<(Symbol, BaseScalar)>, (Symbol, BaseScalar)> = BTreeMap::new();
    let mut definitions = BTreeMap::new();
    let mut matrix = AlgMatrix::zeros(n, n, r);
    for row in 0..n {
        for col in 0..n {
            let mut groups: BTreeMap<SmallVec<[i32; 6]>, Vec<(Symbol, BaseScalar)>> =
                BTreeMap::new();
            for c in components(raw.get(row, col)) {
                groups
                    .entry(c.jmono.j.clone())
                    .or_default()
                    .push((c.symbol, c.coeff));
            }
            let mut entry = NcPoly::zero(r);
            for (jexp, combo) in groups {
                let lead = combo[0].1.clone();
                let lead_inv = lead.inv()?;
                let key: Vec<(Symbol, BaseScalar)> =
                    combo.iter().map(|(s, c)| (*s, c * &lead_inv)).collect();
                let (sym, mu) = match registry.get(&key) {
                    Some(found) => found.clone(),
                    None => {
                        let phase = lead.axis_phase().unwrap_or_else(BaseScalar::one);
                        let family = if phase.parts()[1].is_zero() {
                            Family::T
                        } else {
                            Family::TTilde
                        };
                        let base = Symbol::new(family, row + 1, col + 1);
                        let slot = definitions
                            .keys()
                            .filter(|s: &&Symbol| Symbol { slot: 0, ..**s } == base)
                            .count();
                        let sym = base.with_slot(slot as u8);
                        let mu = &lead * &phase.inv()?;
                        let mut def = NcPoly::zero(r);
                        for (s, c) in &key {
                            def.add_term(smallvec::smallvec![*s], CkScalar::constant(r, c * &mu));
                        }
                        definitions.insert(sym, def);
                        registry.insert(key, (sym, mu.clone()));
                        (sym, mu)
                    }
                };
                let coeff = &lead * &mu.inv()?;
                let mono = Monomial {
                    j: jexp,
                    ..Monomial::one(r)
                };
                entry.add_term(smallvec::smallvec![sym], CkScalar::term(coeff, mono));
            }
            matrix.set(row, col, entry);
        }
    }
    Ok(SymplecticGenerators {
        matrix,
        definitions,
    })
}

fn invert_monomial(m: &Monomial) -> Monomial {
    Monomial {
        e: -m.e,
        v: m.v,
        j: m.j.iter().map(|c| -c).collect(),
    }
}

/// `L^{(+)}` (upper) and `L^{(−)}` (lower): off-diagonal entries copy the
/// matching `T(j)` entry with `t → l`, `t̃ → l̃` and every `j`-prefactor
/// inverted; diagonal entries are the independent symbols `l^{(±)}_kk`.
pub fn l_matrices(t: &AlgMatrix) -> (AlgMatrix, AlgMatrix) {
    let n = t.rows();
    let r = t.rank();
    let entry = |i: usize, k: usize| {
        let mut p = NcPoly::zero(r);
        for c in components(t.get(i, k)) {
            let sym = Symbol {
                family: c.symbol.family.dual(),
                ..c.symbol
            };
            p.add_term(
                smallvec::smallvec![sym],
                CkScalar::term(c.coeff, invert_monomial(&c.jmono)),
            );
        }
        p
    };
    let diag = |fam: Family, k: usize| NcPoly::symbol(r, Symbol::new(fam, k + 1, k + 1));
    let plus = AlgMatrix::from_fn(n, n, r, |i, k| match i.cmp(&k) {
        std::cmp::Ordering::Less => entry(i, k),
        std::cmp::Ordering::Equal => diag(Family::LDiagPlus, i),
        std::cmp::Ordering::Greater => NcPoly::zero(r),
    });
    let minus = AlgMatrix::from_fn(n, n, r, |i, k| match i.cmp(&k) {
        std::cmp::Ordering::Greater => entry(i, k),
        std::cmp::Ordering::Equal => diag(Family::LDiagMinus, i),
        std::cmp::Ordering::Less => NcPoly::zero(r),
    });
    (plus, minus)
}

/// Every structural matrix for one dimension and basis, formal in the `j`'s.
#[derive(Clone, Debug)]
pub struct StructureBundle {
    pub n: usize,
    pub basis: Basis,
    /// `2ρ`.
    pub rho: Vec<i32>,
    pub c0: RingMatrix,
    /// `C(j)`.
    pub c: RingMatrix,
    pub d: RingMatrix,
    pub d_inv: RingMatrix,
    /// `C′(j)`.
    pub c_prime: RingMatrix,
    pub c_prime_inv: RingMatrix,
    pub flip: RingMatrix,
    /// Symplectic `R_v(j)`, lower triangular.
    pub r_v: RingMatrix,
    /// `R̃_v(j) = (D⊗D) R_v(j) (D⊗D)⁻¹`.
    pub r_tilde: RingMatrix,
    /// `P R_v(j) P`.
    pub r_plus: RingMatrix,
    /// `R_v(j)⁻¹`.
    pub r_minus: RingMatrix,
    /// `T(j)` in the symplectic basis, `U(j)` in the Cartesian one.
    pub generators: AlgMatrix,
    /// Symplectic symbols in terms of `u_ik` (empty in the Cartesian basis).
    pub symbol_definitions: BTreeMap<Symbol, NcPoly>,
    /// Classical `A(j)` (Cartesian) or `B(j) = D⁻¹ A(j) D` (symplectic).
    pub classical: AlgMatrix,
    /// `L^{(±)}(j)`, symplectic basis only.
    pub l_plus: Option<AlgMatrix>,
    pub l_minus: Option<AlgMatrix>,
}

impl StructureBundle {
    pub fn new(n: usize, basis: Basis) -> Result<Self> {
        let rho = rho(n)?;
        let r = n - 1;
        let d = d_matrix(n)?;
        let d_inv = d.unit_pivot_inverse()?;
        let c = deform_to_j(&c_q(n)?);
        let c_prime = deform_to_j(&d.mul(&c).mul(&d.transpose()));
        let c_prime_inv = c_prime.adjugate_inverse()?;
        let r_v = deform_to_j(&r_q(n)?);
        let r_tilde = d.kron(&d).mul(&r_v).mul(&d_inv.kron(&d_inv));
        let flip = RingMatrix::flip(n, r);
        let r_plus = flip.mul(&r_v).mul(&flip);
        let r_minus = r_v.tri_inverse()?;
        let a = cartesian_generators(n, Family::A)?;
        let (generators, symbol_definitions, classical, l_plus, l_minus) = match basis {
            Basis::Cartesian => (
                cartesian_generators(n, Family::U)?,
                BTreeMap::new(),
                a,
                None,
                None,
            ),
            Basis::Symplectic => {
                let sg = symplectic_generators(n)?;
                let b = d_inv.lift().mul(&a).mul(&d.lift());
                let (lp, lm) = l_matrices(&sg.matrix);
                (sg.matrix, sg.definitions, b, Some(lp), Some(lm))
            }
        };
        Ok(StructureBundle {
            n,
            basis,
            rho,
            c0: c0_matrix(n)?,
            c,
            d,
            d_inv,
            c_prime,
            c_prime_inv,
            flip,
            r_v,
            r_tilde,
            r_plus,
            r_minus,
            generators,
            symbol_definitions,
            classical,
            l_plus,
            l_minus,
        })
    }

    pub fn rank(&self) -> usize {
        self.n - 1
    }

    /// R-matrix of the quantum group in this basis.
    pub fn r_matrix(&self) -> &RingMatrix {
        match self.basis {
            Basis::Symplectic => &self.r_v,
            Basis::Cartesian => &self.r_tilde,
        }
    }

    /// Metric of the quantum orthogonality relations: `C(j)` or `C′(j)`.
    pub fn metric(&self) -> &RingMatrix {
        match self.basis {
            Basis::Symplectic => &self.c,
            Basis::Cartesian => &self.c_prime,
        }
    }

    pub fn metric_inv(&self) -> Result<RingMatrix> {
        match self.basis {
            // C(j) is an involution
            Basis::Symplectic => Ok(self.c.clone()),
            Basis::Cartesian => Ok(self.c_prime_inv.clone()),
        }
    }

    /// Metric of the classical orthogonality relations: `C₀` or `I`.
    pub fn classical_metric(&self) -> RingMatrix {
        match self.basis {
            Basis::Symplectic => self.c0.clone(),
            Basis::Cartesian => RingMatrix::identity(self.n, self.rank()),
        }
    }

    pub fn ring_matrices(&self) -> Vec<(&'static str, &RingMatrix)> {
        vec![
            ("C0", &self.c0),
            ("C", &self.c),
            ("D", &self.d),
            ("Dinv", &self.d_inv),
            ("Cprime", &self.c_prime),
            ("CprimeInv", &self.c_prime_inv),
            ("Rv", &self.r_v),
            ("Rtilde", &self.r_tilde),
            ("Rplus", &self.r_plus),
            ("Rminus", &self.r_minus),
        ]
    }

    pub fn generator_matrices(&self) -> Vec<(&'static str, &AlgMatrix)> {
        let mut v = vec![
            ("generators", &self.generators),
            ("classical", &self.classical),
        ];
        if let (Some(lp), Some(lm)) = (&self.l_plus, &self.l_minus) {
            v.push(("Lplus", lp));
            v.push(("Lminus", lm));
        }
        v
    }

    /// Specializes every structural and generating matrix whose entries are
    /// defined for nilpotent parameters (all but `L^{(±)}`).
    pub fn check_specializable(&self, sig: &JSignature) -> Result<()> {
        for (_, m) in self.ring_matrices() {
            m.specialize(sig)?;
        }
        for (name, m) in self.generator_matrices() {
            if name.starts_with('L') {
                continue;
            }
            for (_, _, p) in m.entries() {
                p.try_map_coeffs(|c| c.specialize(sig))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_values() {
        assert_eq!(rho(3).unwrap(), vec![1, 0, -1]);
        assert_eq!(rho(4).unwrap(), vec![2, 0, 0, -2]);
        assert_eq!(rho(5).unwrap(), vec![3, 1, 0, -1, -3]);
        assert_eq!(rho(6).unwrap(), vec![4, 2, 0, 0, -2, -4]);
        assert_eq!(rho(2), Err(Error::BadDimension(2)));
    }

    #[test]
    fn c0_is_involution() {
        for n in 3..=6 {
            let c0 = c0_matrix(n).unwrap();
            assert!(c0.mul(&c0).is_identity());
        }
        let c4 = c0_matrix(4).unwrap();
        assert!(c4.get(0, 3).is_one());
        assert!(c4.get(0, 0).is_zero());
    }

    #[test]
    fn c_entries() {
        let c = c_q(3).unwrap();
        assert_eq!(*c.get(0, 2), CkScalar::e_pow(2, -1));
        assert!(c.get(1, 1).is_one());
        assert_eq!(*c.get(2, 0), CkScalar::e_pow(2, 1));
        assert!(c.map(|x| x.at_v_zero()) == c0_matrix(3).unwrap());
        let c4 = c_q(4).unwrap();
        assert_eq!(*c4.get(0, 3), CkScalar::e_pow(3, -2));
        assert!(c4.get(1, 2).is_one());
    }

    #[test]
    fn d_matrix_contract() {
        for n in 3..=6 {
            let d = d_matrix(n).unwrap();
            let c0 = c0_matrix(n).unwrap();
            assert!(d.mul(&c0).mul(&d.transpose()).is_identity(), "N={n}");
            assert!(d.mul(&d.unit_pivot_inverse().unwrap()).is_identity());
        }
    }

    #[test]
    fn c_prime_closed_form() {
        for n in 3..=6 {
            assert_eq!(c_prime(n).unwrap(), c_prime_closed(n).unwrap(), "N={n}");
            assert!(c_prime(n).unwrap().map(|x| x.at_v_zero()).is_identity());
        }
    }

    #[test]
    fn r_q_basics() {
        let r = r_q(3).unwrap();
        assert!(r.is_lower_triangular());
        let sinh2 = &CkScalar::e_pow(2, 2) - &CkScalar::e_pow(2, -2);
        assert_eq!(*r.get(3, 1), sinh2);
        assert!(r.map(|x| x.at_v_zero()).is_identity());
        assert!(r.mul(&r.tri_inverse().unwrap()).is_identity());
    }

    #[test]
    fn conjugation() {
        let i9 = RingMatrix::identity(9, 2);
        assert!(cartesian_conjugate(&i9, 3).unwrap().is_identity());
        let rq = r_q(3).unwrap();
        let rt = cartesian_conjugate(&rq, 3).unwrap();
        assert!(!rt.is_lower_triangular());
        let d = d_matrix(3).unwrap();
        let di = d.unit_pivot_inverse().unwrap();
        assert_eq!(di.kron(&di).mul(&rt).mul(&d.kron(&d)), rq);
        assert!(cartesian_conjugate(&RingMatrix::identity(4, 2), 3).is_err());
    }

    #[test]
    fn symplectic_definitions_reproduce_conjugate() {
        for n in 3..=5 {
            let sg = symplectic_generators(n).unwrap();
            let d = d_matrix(n).unwrap();
            let raw = d
                .unit_pivot_inverse()
                .unwrap()
                .lift()
                .mul(&cartesian_generators(n, Family::U).unwrap())
                .mul(&d.lift());
            let back = sg.matrix.substitute(&|s| sg.definitions.get(&s).cloned());
            assert_eq!(back, raw, "N={n}");
            assert_eq!(sg.definitions.len(), n * n);
        }
    }
}
